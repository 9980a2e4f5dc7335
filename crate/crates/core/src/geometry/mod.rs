//! Metrics, (hyper)complex structures, connections and the classification
//! pipeline.

use alloc::vec::Vec;

use crate::error::Error;
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

mod classify;
mod connection;
mod hermitian;

pub use classify::{
    classify, hkt_check, lee_form, omega_power, sigma_form, HktCertificate, Report,
};
pub use connection::{
    bismut, check_sp_homomorphism, curvature, flatness_witness, infinitesimal_holonomy, is_flat,
    levi_civita, obata, torsion, torsion_3form,
};
pub use hermitian::{
    abelian_witness, check_hypercomplex, is_abelian_hypercomplex, nijenhuis, BilinearTable,
};

/// A positive-definite inner product, stored with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    gram: Matrix,
    inverse: Matrix,
}

impl Metric {
    /// Validates symmetry and positivity (all leading principal minors > 0).
    pub fn new(gram: Matrix) -> Result<Self, Error> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        let n = gram.rows();
        for i in 0..n {
            for j in i + 1..n {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(Error::MetricNotSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        for (k, m) in gram.leading_principal_minors()?.iter().enumerate() {
            if !m.is_positive() {
                return Err(Error::MetricNotPositive { order: k + 1 });
            }
        }
        let inverse = gram.inverse()?;
        Ok(Metric { gram, inverse })
    }

    pub fn euclidean(n: usize) -> Self {
        Metric {
            gram: Matrix::identity(n),
            inverse: Matrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `g ⊕ h` with the summands orthogonal.
    pub fn direct_sum(&self, other: &Metric) -> Metric {
        Metric {
            gram: Matrix::block_diag(&self.gram, &other.gram),
            inverse: Matrix::block_diag(&self.inverse, &other.inverse),
        }
    }

    /// `g(AX, Y) + g(X, AY) = 0` for all `X, Y`.
    pub fn is_skew(&self, a: &Matrix) -> bool {
        let ga = &self.gram * a;
        (&ga + &ga.transpose()).is_zero()
    }

    /// First basis pair where `g(AX, AY) != g(X, Y)`, 1-based.
    pub fn invariance_witness(&self, a: &Matrix) -> Option<(usize, usize)> {
        let m = &(&a.transpose() * &self.gram) * a;
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| m.get(i, j) != self.gram.get(i, j))
            .map(|(i, j)| (i + 1, j + 1))
    }
}

/// Zero, one or three almost complex structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexStructure {
    None,
    Single(Matrix),
    Triple([Matrix; 3]),
}

impl ComplexStructure {
    /// A triple with `J3 = J1 J2`.
    pub fn triple_from(j1: Matrix, j2: Matrix) -> Self {
        let j3 = &j1 * &j2;
        ComplexStructure::Triple([j1, j2, j3])
    }

    pub fn as_slice(&self) -> &[Matrix] {
        match self {
            ComplexStructure::None => &[],
            ComplexStructure::Single(j) => core::slice::from_ref(j),
            ComplexStructure::Triple(js) => js,
        }
    }

    pub fn first(&self) -> Option<&Matrix> {
        self.as_slice().first()
    }
}

/// A left-invariant connection: `maps[i] = ∇_{e_{i+1}}`, whose column `j` is
/// `∇_{e_{i+1}} e_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    maps: Vec<Matrix>,
}

impl Connection {
    pub fn new(maps: Vec<Matrix>) -> Result<Self, Error> {
        let n = maps.len();
        for m in &maps {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        Ok(Connection { maps })
    }

    pub fn zero(n: usize) -> Self {
        Connection {
            maps: (0..n).map(|_| Matrix::zeros(n, n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// `∇_{e_{i+1}}`, 0-based.
    pub fn get(&self, i: usize) -> &Matrix {
        &self.maps[i]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `∇_X = Σ x_i ∇_{e_i}`.
    pub fn along(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m.add_scaled(xi, &self.maps[i]);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// First `(i, alpha)` with `[∇_{e_i}, J_alpha] != 0`, 1-based.
    pub fn complex_witness(&self, js: &[Matrix]) -> Option<(usize, usize)> {
        for (i, d) in self.maps.iter().enumerate() {
            for (a, j) in js.iter().enumerate() {
                if !d.commutator(j).is_zero() {
                    return Some((i + 1, a + 1));
                }
            }
        }
        None
    }

    /// First `i` with `∇_{e_i}` not `g`-skew, 1-based.
    pub fn skew_witness(&self, g: &Metric) -> Option<usize> {
        self.maps.iter().position(|d| !g.is_skew(d)).map(|i| i + 1)
    }
}

/// A Lie algebra with optional metric and (hyper)complex structure.
///
/// Construction checks Jacobi, `J_α² = −id`, the quaternion relations and
/// metric compatibility. Integrability is a property, checked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomStructure {
    algebra: LieAlgebra,
    metric: Option<Metric>,
    complex: ComplexStructure,
}

impl GeomStructure {
    pub fn new(
        algebra: LieAlgebra,
        metric: Option<Metric>,
        complex: ComplexStructure,
    ) -> Result<Self, Error> {
        algebra.validate()?;
        let n = algebra.dim();
        if let Some(g) = &metric {
            if g.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.dim(),
                });
            }
        }
        let js = complex.as_slice();
        for (a, j) in js.iter().enumerate() {
            let alpha = if js.len() == 1 { 0 } else { a + 1 };
            if j.rows() != n || j.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: j.rows(),
                });
            }
            if (j * j) != (-&Matrix::identity(n)) {
                return Err(Error::NotAlmostComplex { alpha });
            }
            if let Some(g) = &metric {
                if let Some((i, k)) = g.invariance_witness(j) {
                    return Err(Error::NotCompatible { alpha, i, j: k });
                }
            }
        }
        if let ComplexStructure::Triple([j1, j2, j3]) = &complex {
            hermitian::quaternion_relations(j1, j2, j3)?;
        }
        Ok(GeomStructure {
            algebra,
            metric,
            complex,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn metric(&self) -> Option<&Metric> {
        self.metric.as_ref()
    }

    pub fn require_metric(&self) -> Result<&Metric, Error> {
        self.metric.as_ref().ok_or(Error::MissingMetric)
    }

    pub fn complex(&self) -> &ComplexStructure {
        &self.complex
    }

    pub fn complex_structures(&self) -> &[Matrix] {
        self.complex.as_slice()
    }

    /// `J_alpha`, 1-based; `alpha = 1` also selects a single structure.
    pub fn j(&self, alpha: usize) -> Result<&Matrix, Error> {
        self.complex
            .as_slice()
            .get(alpha.wrapping_sub(1))
            .ok_or(Error::MissingComplexStructure)
    }

    pub fn is_triple(&self) -> bool {
        matches!(self.complex, ComplexStructure::Triple(_))
    }

    /// Same algebra and complex structures with another metric.
    pub fn with_metric(&self, metric: Metric) -> Result<Self, Error> {
        GeomStructure::new(self.algebra.clone(), Some(metric), self.complex.clone())
    }

    /// `ω_α(X, Y) = g(J_α X, Y)` for every structure present.
    pub fn kaehler_forms(&self) -> Result<Vec<crate::forms::KForm>, Error> {
        let g = self.require_metric()?;
        Ok(self
            .complex_structures()
            .iter()
            .map(|j| {
                // ω_{ab} = g(J e_a, e_b) = (Jᵀ g)_{ab}
                let w = &j.transpose() * g.gram();
                crate::forms::KForm::from_basis_values(self.dim(), 2, |k| w.get(k[0], k[1]).clone())
            })
            .collect())
    }
}
