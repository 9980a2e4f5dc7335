//! Tangent algebras `T_D 𝔤`, quaternionic extensions `T_ρ 𝔤`, the
//! Kähler-to-HKT double, and their iterations.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geometry::{
    hkt_check, is_flat, nijenhuis, torsion, ComplexStructure, Connection, GeomStructure, Metric,
};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Left multiplication by `i, j, k` on `ℍ^q ≅ ℝ^{4q}`.
///
/// Each quaternion block uses the real basis `(1, i, j, k)`, so on one block
/// `L_1 = i·`, `L_2 = j·`, `L_3 = k·` act by
///
/// ```text
/// L1: e1 ↦ e2, e2 ↦ −e1, e3 ↦ e4, e4 ↦ −e3
/// L2: e1 ↦ e3, e2 ↦ −e4, e3 ↦ −e1, e4 ↦ e2
/// L3: e1 ↦ e4, e2 ↦ e3, e3 ↦ −e2, e4 ↦ −e1
/// ```
///
/// and `L_1 L_2 = L_3`.
pub fn left_mult(q: usize) -> [Matrix; 3] {
    // (source, target, sign) per block, 0-based
    const L: [[(usize, usize, i64); 4]; 3] = [
        [(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)],
        [(0, 2, 1), (1, 3, -1), (2, 0, -1), (3, 1, 1)],
        [(0, 3, 1), (1, 2, 1), (2, 1, -1), (3, 0, -1)],
    ];
    L.map(|table| {
        let mut m = Matrix::zeros(4 * q, 4 * q);
        for b in 0..q {
            for (src, dst, s) in table {
                m.set(4 * b + dst, 4 * b + src, Scalar::from_int(s));
            }
        }
        m
    })
}

/// A representation `ρ: 𝔤 → 𝔤𝔩(q, ℍ)` given by one `4q × 4q` matrix per
/// basis direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatRep {
    q: usize,
    matrices: Vec<Matrix>,
}

impl QuatRep {
    pub fn new(q: usize, matrices: Vec<Matrix>) -> Result<Self, Error> {
        for m in &matrices {
            if m.rows() != 4 * q || m.cols() != 4 * q {
                return Err(Error::DimensionMismatch {
                    expected: 4 * q,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        Ok(QuatRep { q, matrices })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Checks `[ρ(X), L_α] = 0` and `ρ([X, Y]) = [ρ(X), ρ(Y)]`.
    pub fn validate(&self, alg: &LieAlgebra) -> Result<(), Error> {
        let n = alg.dim();
        if self.matrices.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.matrices.len(),
            });
        }
        let ls = left_mult(self.q);
        for (i, m) in self.matrices.iter().enumerate() {
            for (a, l) in ls.iter().enumerate() {
                if !m.commutator(l).is_zero() {
                    return Err(Error::NotQuaternionic {
                        i: i + 1,
                        alpha: a + 1,
                    });
                }
            }
        }
        check_homomorphism(&self.matrices, alg)
    }

    /// Whether every `ρ(X)` is skew for the standard inner product.
    pub fn is_unitary(&self) -> bool {
        self.matrices.iter().all(|m| (m + &m.transpose()).is_zero())
    }
}

fn check_homomorphism(maps: &[Matrix], alg: &LieAlgebra) -> Result<(), Error> {
    let n = alg.dim();
    for i in 0..n {
        for j in i + 1..n {
            let mut lhs = maps[i].commutator(&maps[j]);
            for (k, c) in alg.terms(i, j) {
                lhs.add_scaled(&-c, &maps[*k]);
            }
            if !lhs.is_zero() {
                return Err(Error::NotHomomorphism { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

/// `𝔤 ⋉_ρ ℝ^m` with `[(X, V), (Y, W)] = ([X, Y], ρ(X)W − ρ(Y)V)`; the base
/// occupies `e_1 … e_n` and the fiber `e_{n+1} … e_{n+m}`.
pub fn semidirect(alg: &LieAlgebra, rep: &[Matrix]) -> Result<LieAlgebra, Error> {
    let n = alg.dim();
    let m = rep.first().map_or(0, Matrix::rows);
    let mut entries = Vec::new();
    for (i, j, out) in alg.brackets() {
        entries.push((i, j, out));
    }
    for (i, r) in rep.iter().enumerate() {
        for b in 0..m {
            let out: Vec<(usize, Scalar)> = (0..m)
                .filter(|&a| !r.get(a, b).is_zero())
                .map(|a| (n + a + 1, r.get(a, b).clone()))
                .collect();
            if !out.is_empty() {
                entries.push((i + 1, n + b + 1, out));
            }
        }
    }
    let out = LieAlgebra::from_brackets(n + m, entries)?;
    out.validate()?;
    Ok(out)
}

fn require_triple(s: &GeomStructure) -> Result<[Matrix; 3], Error> {
    match s.complex() {
        ComplexStructure::Triple(js) => Ok(js.clone()),
        _ => Err(Error::MissingComplexStructure),
    }
}

fn check_flat_complex(s: &GeomStructure, d: &Connection) -> Result<(), Error> {
    let n = s.dim();
    if d.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.dim(),
        });
    }
    if let Some((i, j)) = crate::geometry::flatness_witness(d, s.algebra()) {
        return Err(Error::NotFlat { i, j });
    }
    if let Some((i, alpha)) = d.complex_witness(s.complex_structures()) {
        return Err(Error::NotComplexConnection { i, alpha });
    }
    Ok(())
}

/// `T_D 𝔤` with `J̃_α = J_α ⊕ J_α` and `g̃ = g ⊕ g`. Requires `D` flat with
/// `DJ_α = 0`.
///
/// The swapped form `J̃_2(X_1, X_2) = (J_2 X_2, J_2 X_1)` is not used: its
/// Nijenhuis tensor on `(X_1, 0), (Y_1, 0)` is the torsion of `D`, so it is
/// integrable only for torsion-free `D`.
pub fn tangent_algebra(s: &GeomStructure, d: &Connection) -> Result<GeomStructure, Error> {
    let [j1, j2, _] = require_triple(s)?;
    let g = s.require_metric()?;
    check_flat_complex(s, d)?;
    let alg = semidirect(s.algebra(), d.maps())?;
    let t1 = Matrix::block_diag(&j1, &j1);
    let t2 = Matrix::block_diag(&j2, &j2);
    GeomStructure::new(
        alg,
        Some(g.direct_sum(g)),
        ComplexStructure::triple_from(t1, t2),
    )
}

/// `T_ρ 𝔤` with `J̃_α = J_α ⊕ L_α` and `g ⊕ (standard)`.
pub fn rho_extension(s: &GeomStructure, r: &QuatRep) -> Result<GeomStructure, Error> {
    let [j1, j2, _] = require_triple(s)?;
    let g = s.require_metric()?;
    r.validate(s.algebra())?;
    let alg = semidirect(s.algebra(), r.matrices())?;
    let [l1, l2, _] = left_mult(r.q());
    let metric = g.direct_sum(&Metric::euclidean(4 * r.q()));
    GeomStructure::new(
        alg,
        Some(metric),
        ComplexStructure::triple_from(Matrix::block_diag(&j1, &l1), Matrix::block_diag(&j2, &l2)),
    )
}

/// Doubles a Hermitian `(𝔤, J, g)` along a flat torsion-free complex `D`:
/// `J_1 = J ⊕ (−J)`, `J_2(X_1, X_2) = (X_2, −X_1)`, `J_3 = J_1 J_2`.
///
/// The output is HKT exactly when `(J, g)` is Kähler; this is re-checked on
/// every call and a mismatch is an [`Error::Internal`].
pub fn kaehler_to_hkt(h: &GeomStructure, d: &Connection) -> Result<GeomStructure, Error> {
    let j = match h.complex() {
        ComplexStructure::Single(j) => j.clone(),
        _ => return Err(Error::MissingComplexStructure),
    };
    let g = h.require_metric()?;
    let alg = h.algebra();
    let n = alg.dim();
    if d.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.dim(),
        });
    }
    if let Some((a, b)) = crate::geometry::flatness_witness(d, alg) {
        return Err(Error::NotFlat { i: a, j: b });
    }
    if let Some((a, b)) = torsion(d, alg).witness() {
        return Err(Error::NotTorsionFree { i: a, j: b });
    }
    if let Some((i, alpha)) = d.complex_witness(core::slice::from_ref(&j)) {
        return Err(Error::NotComplexConnection { i, alpha });
    }
    let out_alg = semidirect(alg, d.maps())?;
    let id = Matrix::identity(n);
    let z = Matrix::zeros(n, n);
    let j1 = Matrix::block_diag(&j, &-&j);
    let j2 = Matrix::from_blocks(&z, &id, &-&id, &z);
    let out = GeomStructure::new(
        out_alg,
        Some(g.direct_sum(g)),
        ComplexStructure::triple_from(j1, j2),
    )?;
    let kahler =
        nijenhuis(&j, alg)?.is_zero() && h.kaehler_forms()?[0].ce_differential(alg).is_zero();
    let hkt = hkt_check(&out)?.hkt();
    if hkt != kahler {
        return Err(Error::Internal(format!(
            "doubled structure HKT = {hkt} but base Kähler = {kahler}"
        )));
    }
    Ok(out)
}

/// `D̃_{(X_1, X_2)} = D_{X_1} ⊕ D_{X_1}`: the connection used to iterate the
/// tangent construction.
pub fn lift_connection(d: &Connection) -> Connection {
    let n = d.dim();
    let z = Matrix::zeros(2 * n, 2 * n);
    let maps = (0..2 * n)
        .map(|i| {
            if i < n {
                Matrix::block_diag(d.get(i), d.get(i))
            } else {
                z.clone()
            }
        })
        .collect();
    Connection::new(maps).expect("square blocks")
}

/// `D̃_{(X, V)} = 0 ⊕ ρ(X)` on `T_ρ 𝔤`, the analogue of [`lift_connection`]
/// for a quaternionic extension. It is flat, complex and, when `ρ` is
/// unitary, skew.
pub fn rho_lift_connection(base_dim: usize, r: &QuatRep) -> Connection {
    let m = 4 * r.q();
    let total = base_dim + m;
    let zb = Matrix::zeros(base_dim, base_dim);
    let maps = (0..total)
        .map(|i| {
            if i < base_dim {
                Matrix::block_diag(&zb, &r.matrices()[i])
            } else {
                Matrix::zeros(total, total)
            }
        })
        .collect();
    Connection::new(maps).expect("square blocks")
}

/// The block connection `(X_1, X_2) ↦ A_{X_1} ⊕ B_{X_1}` on `T_D 𝔤`, e.g. the
/// expected Obata connection `(∇^O_{X_1} Y_1, D_{X_1} Y_2)` of a tangent lift.
pub fn block_connection(a: &Connection, b: &Connection) -> Connection {
    let n = a.dim();
    assert_eq!(n, b.dim());
    let maps = (0..2 * n)
        .map(|i| {
            if i < n {
                Matrix::block_diag(a.get(i), b.get(i))
            } else {
                Matrix::zeros(2 * n, 2 * n)
            }
        })
        .collect();
    Connection::new(maps).expect("square blocks")
}

/// Applies the tangent construction to `ts = T_D 𝔤` again, along
/// [`lift_connection`] of the original `D`. Flatness and complexity of the
/// lifted connection are re-verified rather than assumed.
pub fn iterate_tangent(ts: &GeomStructure, d: &Connection) -> Result<GeomStructure, Error> {
    if ts.dim() != 2 * d.dim() {
        return Err(Error::DimensionMismatch {
            expected: 2 * d.dim(),
            found: ts.dim(),
        });
    }
    let lifted = lift_connection(d);
    if !is_flat(&lifted, ts.algebra()) {
        return Err(Error::Internal("lifted connection is not flat".into()));
    }
    tangent_algebra(ts, &lifted)
}

/// Tangent construction on `T_ρ 𝔤` along [`rho_lift_connection`].
pub fn iterate_rho(
    tr: &GeomStructure,
    base_dim: usize,
    r: &QuatRep,
) -> Result<GeomStructure, Error> {
    tangent_algebra(tr, &rho_lift_connection(base_dim, r))
}
