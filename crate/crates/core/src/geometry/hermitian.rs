use alloc::vec::Vec;

use crate::error::Error;
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Values `B(e_i, e_j)` of a vector-valued bilinear map, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearTable {
    dim: usize,
    entries: Vec<Vec<Scalar>>,
}

impl BilinearTable {
    pub(crate) fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        BilinearTable { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.iter().all(Scalar::is_zero))
    }

    /// First nonzero basis pair, 1-based.
    pub fn witness(&self) -> Option<(usize, usize)> {
        let n = self.dim;
        (0..n * n)
            .find(|&p| self.entries[p].iter().any(|x| !x.is_zero()))
            .map(|p| (p / n + 1, p % n + 1))
    }
}

fn column(m: &Matrix, j: usize) -> Vec<Scalar> {
    m.column(j)
}

/// Nijenhuis tensor `N(X,Y) = J([X,Y] − [JX,JY]) − ([JX,Y] + [X,JY])`.
pub fn nijenhuis(j: &Matrix, g: &LieAlgebra) -> Result<BilinearTable, Error> {
    let n = g.dim();
    if j.rows() != n || !j.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.rows(),
        });
    }
    if (j * j) != (-&Matrix::identity(n)) {
        return Err(Error::NotAlmostComplex { alpha: 0 });
    }
    let je: Vec<Vec<Scalar>> = (0..n).map(|i| column(j, i)).collect();
    let e = |i: usize| crate::lie::basis_vector(n, i);
    Ok(BilinearTable::from_fn(n, |a, b| {
        let xy = g.bracket(&e(a), &e(b));
        let jxjy = g.bracket(&je[a], &je[b]);
        let inner: Vec<Scalar> = xy.iter().zip(&jxjy).map(|(p, q)| p - q).collect();
        let mut out = j.mul_vec(&inner);
        let t1 = g.bracket(&je[a], &e(b));
        let t2 = g.bracket(&e(a), &je[b]);
        for ((o, p), q) in out.iter_mut().zip(&t1).zip(&t2) {
            *o -= &(p + q);
        }
        out
    }))
}

pub(crate) fn quaternion_relations(j1: &Matrix, j2: &Matrix, j3: &Matrix) -> Result<(), Error> {
    if &(j1 * j2) != j3 {
        return Err(Error::QuaternionRelation("J1 J2 != J3".into()));
    }
    if (j2 * j1) != (-j3) {
        return Err(Error::QuaternionRelation("J2 J1 != -J3".into()));
    }
    Ok(())
}

/// Checks `J_α² = −id`, `J₁J₂ = −J₂J₁ = J₃` and integrability of each `J_α`.
pub fn check_hypercomplex(
    j1: &Matrix,
    j2: &Matrix,
    j3: &Matrix,
    g: &LieAlgebra,
) -> Result<(), Error> {
    let n = g.dim();
    let minus_id = -&Matrix::identity(n);
    for (a, j) in [j1, j2, j3].into_iter().enumerate() {
        if j.rows() != n || !j.is_square() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: j.rows(),
            });
        }
        if (j * j) != minus_id {
            return Err(Error::NotAlmostComplex { alpha: a + 1 });
        }
    }
    quaternion_relations(j1, j2, j3)?;
    for (a, j) in [j1, j2, j3].into_iter().enumerate() {
        if let Some((i, k)) = nijenhuis(j, g)?.witness() {
            return Err(Error::NotIntegrable {
                alpha: a + 1,
                i,
                j: k,
            });
        }
    }
    Ok(())
}

/// First `(alpha, i, j)` with `[J_α e_i, J_α e_j] != [e_i, e_j]`, 1-based.
pub fn abelian_witness(js: &[Matrix], g: &LieAlgebra) -> Option<(usize, usize, usize)> {
    let n = g.dim();
    for (a, j) in js.iter().enumerate() {
        let je: Vec<Vec<Scalar>> = (0..n).map(|i| column(j, i)).collect();
        for p in 0..n {
            for q in p + 1..n {
                let lhs = g.bracket(&je[p], &je[q]);
                let rhs = g.bracket(
                    &crate::lie::basis_vector(n, p),
                    &crate::lie::basis_vector(n, q),
                );
                if lhs != rhs {
                    return Some((a + 1, p + 1, q + 1));
                }
            }
        }
    }
    None
}

/// `[J_α X, J_α Y] = [X, Y]` for all `X, Y` and `α`.
pub fn is_abelian_hypercomplex(j1: &Matrix, j2: &Matrix, j3: &Matrix, g: &LieAlgebra) -> bool {
    abelian_witness(&[j1.clone(), j2.clone(), j3.clone()], g).is_none()
}
