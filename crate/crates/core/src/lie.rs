//! Lie algebras given by structure constants.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A bracket `[e_i, e_j] = Σ c e_k` as `(i, j, [(k, c)])`.
pub type BracketTerms = (usize, usize, Vec<(usize, Scalar)>);

/// Sparse list of `(k, c)` terms, `k` 0-based, meaning `Σ c e_{k+1}`.
pub type Terms = Vec<(usize, Scalar)>;

/// A finite-dimensional Lie algebra `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
///
/// Only `i < j` is supplied; the opposite order is filled in by antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `table[i * dim + j]`, 0-based, sparse and sorted by `k`.
    table: Vec<Terms>,
}

/// Result of [`LieAlgebra::jacobi_defect`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDefect {
    /// Largest absolute coefficient of any Jacobiator of basis vectors.
    pub residual: Scalar,
    /// A 1-based basis triple attaining it, absent when the residual is 0.
    pub witness: Option<(usize, usize, usize)>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            table: vec![Vec::new(); dim * dim],
        }
    }

    /// Builds an algebra from 1-based entries `(i, j, [(k, c)])` with `i < j`.
    /// Repeated pairs are summed. Jacobi is not checked here; see
    /// [`LieAlgebra::validate`].
    pub fn from_brackets<I>(dim: usize, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Scalar)>)>,
    {
        let mut alg = LieAlgebra::abelian(dim);
        for (i, j, out) in entries {
            for idx in [i, j] {
                if idx == 0 || idx > dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if i >= j {
                return Err(Error::UnorderedBracket { i, j });
            }
            let mut v = vec![Scalar::zero(); dim];
            for (k, c) in out {
                if k == 0 || k > dim {
                    return Err(Error::IndexOutOfRange { index: k, dim });
                }
                v[k - 1] += &c;
            }
            let cur = alg.dense(i - 1, j - 1);
            let sum: Vec<Scalar> = cur.iter().zip(&v).map(|(a, b)| a + b).collect();
            alg.set_pair(i - 1, j - 1, &sum);
        }
        Ok(alg)
    }

    fn set_pair(&mut self, i: usize, j: usize, v: &[Scalar]) {
        let n = self.dim;
        self.table[i * n + j] = to_terms(v);
        self.table[j * n + i] = to_terms(&v.iter().map(|x| -x).collect::<Vec<_>>());
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sparse `[e_{i+1}, e_{j+1}]`, 0-based.
    #[inline]
    pub fn terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    fn dense(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        for (k, c) in self.terms(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// `c^k_{ij}`, 1-based.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.terms(i - 1, j - 1)
            .iter()
            .find(|(kk, _)| *kk == k - 1)
            .map_or_else(Scalar::zero, |(_, c)| c.clone())
    }

    /// Nonzero brackets as 1-based `(i, j, [(k, c)])` with `i < j`, in
    /// lexicographic order.
    pub fn brackets(&self) -> Vec<BracketTerms> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let t = self.terms(i, j);
                if !t.is_empty() {
                    out.push((
                        i + 1,
                        j + 1,
                        t.iter().map(|(k, c)| (k + 1, c.clone())).collect(),
                    ));
                }
            }
        }
        out
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let t = self.terms(i, j);
                if t.is_empty() {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in t {
                    out[*k] += &(&f * c);
                }
            }
        }
        out
    }

    /// `ad(e_{i+1})` as a matrix, 0-based.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.terms(i, j) {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m.add_scaled(xi, &self.ad_basis(i));
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// `tr ad X = 0` for all `X`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_basis(i).trace().is_zero())
    }

    /// Worst Jacobiator `[[x,y],z] + [[y,z],x] + [[z,x],y]` over basis triples.
    pub fn jacobi_defect(&self) -> JacobiDefect {
        let n = self.dim;
        let mut best = JacobiDefect {
            residual: Scalar::zero(),
            witness: None,
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![Scalar::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, cm) in self.terms(a, b) {
                            for (p, cp) in self.terms(*m, c) {
                                acc[*p] += &(cm * cp);
                            }
                        }
                    }
                    if let Some(r) = acc.iter().map(Scalar::abs).max() {
                        if r > best.residual {
                            best = JacobiDefect {
                                residual: r,
                                witness: Some((i + 1, j + 1, k + 1)),
                            };
                        }
                    }
                }
            }
        }
        best
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self.jacobi_defect().witness {
            None => Ok(()),
            Some((i, j, k)) => Err(Error::JacobiViolation { i, j, k }),
        }
    }
}

fn to_terms(v: &[Scalar]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// Standard basis vector `e_{i+1}` of length `n`, 0-based.
pub fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}
