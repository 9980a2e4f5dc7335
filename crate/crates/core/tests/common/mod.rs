#![allow(dead_code)]

use std::sync::OnceLock;

use hkt_core::catalog::{self, CatalogEntry, BUILTIN_NAMES};
use hkt_core::forms::subsets;
use hkt_core::geometry::{ComplexStructure, GeomStructure, Metric};
use hkt_core::lie::basis_vector;
use hkt_core::{KForm, LieAlgebra, Matrix, Scalar};
use proptest::prelude::*;

pub fn builtins() -> &'static [CatalogEntry] {
    static ALL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ALL.get_or_init(|| {
        BUILTIN_NAMES
            .iter()
            .map(|n| catalog::builtin(n).unwrap_or_else(|e| panic!("{n}: {e}")))
            .collect()
    })
}

pub fn entry(name: &str) -> &'static CatalogEntry {
    builtins().iter().find(|e| e.name == name).expect("builtin")
}

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

/// `a + b√2` with small integer parts.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, -3i64..=3, 1i64..=3).prop_map(|(a, b, d)| Scalar::quad(a, d, b, 1))
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

/// A form from a coefficient stream, cycling through it; roughly half the
/// monomials are dropped so that sparse forms occur too.
pub fn form_from(dim: usize, degree: usize, coeffs: &[(i64, i64)]) -> KForm {
    KForm::from_basis_values(dim, degree, {
        let mut it = coeffs.iter().cycle();
        move |_| match it.next() {
            Some(&(a, b)) if (a + b) % 2 == 0 => Scalar::quad(a, 1, b, 2),
            _ => Scalar::zero(),
        }
    })
}

pub fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, -2i64..=2), 1..24)
}

/// `[e_a, e_b]` as a coordinate vector, 0-based.
pub fn bracket(alg: &LieAlgebra, a: usize, b: usize) -> Vec<Scalar> {
    let n = alg.dim();
    alg.bracket(&basis_vector(n, a), &basis_vector(n, b))
}

/// Every 0-based increasing index tuple of the given length.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// `Σ_α J_αᵀ P J_α + P` for `P = MᵀM + I`: a metric compatible with every
/// `J_α` of a quaternionic triple.
pub fn compatible_metric(js: &[Matrix], m: &Matrix) -> Metric {
    let n = m.rows();
    let p = &(&m.transpose() * m) + &Matrix::identity(n);
    let mut g = p.clone();
    for j in js {
        g = &g + &(&(&j.transpose() * &p) * j);
    }
    Metric::new(g).expect("positive definite")
}

pub fn with_metric(s: &GeomStructure, g: Metric) -> GeomStructure {
    GeomStructure::new(s.algebra().clone(), Some(g), s.complex().clone()).expect("compatible")
}

pub fn int_matrix() -> impl Fn(usize) -> BoxedStrategy<Matrix> {
    |n| {
        prop::collection::vec(-2i64..=2, n * n)
            .prop_map(move |v| Matrix::from_fn(n, n, |r, c| Scalar::from_int(v[r * n + c])))
            .boxed()
    }
}

pub fn standard_r4() -> GeomStructure {
    let [l1, l2, _] = hkt_core::constructions::left_mult(1);
    GeomStructure::new(
        LieAlgebra::abelian(4),
        Some(Metric::euclidean(4)),
        ComplexStructure::triple_from(l1, l2),
    )
    .expect("standard triple")
}
