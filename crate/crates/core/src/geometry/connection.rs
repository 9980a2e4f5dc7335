use alloc::format;
use alloc::vec::Vec;

use super::hermitian::{nijenhuis, BilinearTable};
use super::{Connection, GeomStructure, Metric};
use crate::error::Error;
use crate::forms::KForm;
use crate::lie::{basis_vector, LieAlgebra};
use crate::linalg::{span_closure, ClosureRule, Matrix, SparseSystem};
use crate::scalar::Scalar;

/// Dense `L[a][b][c]`, flattened, 0-based.
struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    data.push(f(a, b, c));
                }
            }
        }
        Tensor3 { n, data }
    }

    #[inline]
    fn get(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.data[(a * self.n + b) * self.n + c]
    }
}

/// `g([X_a, X_b], e_c)` for the given vectors `X`.
fn lowered_brackets(alg: &LieAlgebra, g: &Metric, xs: &[Vec<Scalar>]) -> Tensor3 {
    let n = alg.dim();
    let mut br: Vec<Vec<Scalar>> = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            br.push(g.gram().mul_vec(&alg.bracket(&xs[a], &xs[b])));
        }
    }
    Tensor3::from_fn(n, |a, b, c| br[a * n + b][c].clone())
}

/// Raises the last slot of `L(a, b, ·)` into `∇_{e_a} e_b`.
fn raise(n: usize, g: &Metric, lowered: impl Fn(usize, usize, usize) -> Scalar) -> Connection {
    let maps = (0..n)
        .map(|a| {
            let mut m = Matrix::zeros(n, n);
            for b in 0..n {
                let low: Vec<Scalar> = (0..n).map(|c| lowered(a, b, c)).collect();
                m.set_column(b, &g.inverse().mul_vec(&low));
            }
            m
        })
        .collect();
    Connection { maps }
}

/// Levi-Civita connection from
/// `2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)`.
pub fn levi_civita(s: &GeomStructure) -> Result<Connection, Error> {
    let g = s.require_metric()?;
    let alg = s.algebra();
    let n = alg.dim();
    let e: Vec<Vec<Scalar>> = (0..n).map(|i| basis_vector(n, i)).collect();
    let l = lowered_brackets(alg, g, &e);
    let half = Scalar::frac(1, 2);
    let conn = raise(n, g, |x, y, z| {
        &half * &(&(l.get(x, y, z) - l.get(y, z, x)) + l.get(z, x, y))
    });
    if let Some((i, j)) = torsion(&conn, alg).witness() {
        return Err(Error::Internal(format!(
            "Levi-Civita torsion at ({i}, {j})"
        )));
    }
    if let Some(i) = conn.skew_witness(g) {
        return Err(Error::Internal(format!(
            "Levi-Civita not metric along e{i}"
        )));
    }
    Ok(conn)
}

/// Bismut connection of `(J_alpha, g)`:
/// `g(∇_X Y, Z) = ½{g([X,Y] − [JX,JY], Z) − g([Y,Z] + [JY,JZ], X) + g([Z,X] − [JZ,JX], Y)}`.
///
/// `∇g = 0`, `∇J = 0` and total skewness of the torsion are asserted.
pub fn bismut(s: &GeomStructure, alpha: usize) -> Result<Connection, Error> {
    let g = s.require_metric()?;
    let j = s.j(alpha)?;
    let alg = s.algebra();
    let n = alg.dim();
    if let Some((i, k)) = nijenhuis(j, alg)?.witness() {
        return Err(Error::NotIntegrable { alpha, i, j: k });
    }
    let e: Vec<Vec<Scalar>> = (0..n).map(|i| basis_vector(n, i)).collect();
    let je: Vec<Vec<Scalar>> = (0..n).map(|i| j.column(i)).collect();
    let l = lowered_brackets(alg, g, &e);
    let lj = lowered_brackets(alg, g, &je);
    let half = Scalar::frac(1, 2);
    let conn = raise(n, g, |x, y, z| {
        let p = l.get(x, y, z) - lj.get(x, y, z);
        let q = l.get(y, z, x) + lj.get(y, z, x);
        let r = l.get(z, x, y) - lj.get(z, x, y);
        &half * &(&(&p - &q) + &r)
    });
    if let Some(i) = conn.skew_witness(g) {
        return Err(Error::Internal(format!(
            "Bismut connection not metric along e{i}"
        )));
    }
    if let Some((i, _)) = conn.complex_witness(core::slice::from_ref(j)) {
        return Err(Error::Internal(format!(
            "Bismut connection does not preserve J along e{i}"
        )));
    }
    torsion_3form(&conn, alg, g)?;
    Ok(conn)
}

/// `T(X, Y) = ∇_X Y − ∇_Y X − [X, Y]` on basis pairs.
pub fn torsion(c: &Connection, alg: &LieAlgebra) -> BilinearTable {
    let n = alg.dim();
    BilinearTable::from_fn(n, |i, j| {
        let mut v: Vec<Scalar> = c
            .get(i)
            .column(j)
            .iter()
            .zip(c.get(j).column(i))
            .map(|(a, b)| a - &b)
            .collect();
        for (k, ck) in alg.terms(i, j) {
            v[*k] -= ck;
        }
        v
    })
}

/// The torsion 3-form `c(X, Y, Z) = −g(X, T(Y, Z))`.
///
/// With this sign `c = −dω_α(J_α·, J_α·, J_α·)` for the Bismut connection of
/// `(J_α, g)`. Fails with [`Error::TorsionNotSkew`] when the lowered torsion
/// is not totally antisymmetric, which is a legitimate outcome for a generic
/// connection.
pub fn torsion_3form(c: &Connection, alg: &LieAlgebra, g: &Metric) -> Result<KForm, Error> {
    let n = alg.dim();
    let t = torsion(c, alg);
    let low = Tensor3::from_fn(n, |x, y, z| -g.inner(&basis_vector(n, x), t.get(y, z)));
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if low.get(x, y, z) != &-low.get(y, x, z) {
                    return Err(Error::TorsionNotSkew {
                        i: x + 1,
                        j: y + 1,
                        k: z + 1,
                    });
                }
            }
        }
    }
    Ok(KForm::from_basis_values(n, 3, |k| {
        low.get(k[0], k[1], k[2]).clone()
    }))
}

/// `R(e_i, e_j) = [∇_i, ∇_j] − ∇_{[e_i, e_j]}`, stored at `i * n + j`.
pub fn curvature(c: &Connection, alg: &LieAlgebra) -> Vec<Matrix> {
    let n = alg.dim();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut r = c.get(i).commutator(c.get(j));
            for (k, ck) in alg.terms(i, j) {
                r.add_scaled(&-ck, c.get(*k));
            }
            out.push(r);
        }
    }
    out
}

/// First basis pair with nonzero curvature, 1-based; `None` when flat.
pub fn flatness_witness(c: &Connection, alg: &LieAlgebra) -> Option<(usize, usize)> {
    let n = alg.dim();
    curvature(c, alg)
        .iter()
        .position(|r| !r.is_zero())
        .map(|p| (p / n + 1, p % n + 1))
}

pub fn is_flat(c: &Connection, alg: &LieAlgebra) -> bool {
    flatness_witness(c, alg).is_none()
}

/// Infinitesimal holonomy algebra: the span of all `R(e_i, e_j)`, closed
/// under `A ↦ [∇_{e_z}, A]` and commutators.
///
/// Covariant derivatives `(∇_Z R)(X, Y) = [∇_Z, R(X,Y)] − R(∇_Z X, Y) − R(X, ∇_Z Y)`
/// differ from `[∇_Z, R(X,Y)]` by curvature values, so this closure contains
/// every iterated covariant derivative and nothing more.
pub fn infinitesimal_holonomy(c: &Connection, alg: &LieAlgebra) -> Result<Vec<Matrix>, Error> {
    let n = alg.dim();
    let curv = curvature(c, alg);
    let gens: Vec<Matrix> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| curv[i * n + j].clone())
        .filter(|r| !r.is_zero())
        .collect();
    let rule = ClosureRule {
        operators: c.maps().to_vec(),
        commutators: true,
    };
    span_closure(&gens, &rule)
}

/// Unique torsion-free connection with `∇J_α = 0` for the triple, found by
/// exact linear solve over the Christoffel symbols.
pub fn obata(s: &GeomStructure) -> Result<Connection, Error> {
    let js = s.complex_structures();
    if js.len() != 3 {
        return Err(Error::MissingComplexStructure);
    }
    let alg = s.algebra();
    let n = alg.dim();
    // unknown Γ(i, j, k): component k of ∇_{e_i} e_j
    let var = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let mut sys = SparseSystem::new(n * n * n);
    for i in 0..n {
        for j in i + 1..n {
            let br = alg.terms(i, j);
            for k in 0..n {
                let rhs = br
                    .iter()
                    .find(|t| t.0 == k)
                    .map_or_else(Scalar::zero, |t| t.1.clone());
                sys.push(
                    [
                        (var(i, j, k), Scalar::one()),
                        (var(j, i, k), Scalar::from_int(-1)),
                    ],
                    rhs,
                );
            }
        }
    }
    // J3 = J1 J2 makes its equations redundant
    for j in &js[..2] {
        let nz: Vec<Vec<(usize, Scalar)>> = (0..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| !j.get(r, c).is_zero())
                    .map(|c| (c, j.get(r, c).clone()))
                    .collect()
            })
            .collect();
        let nz_cols: Vec<Vec<(usize, Scalar)>> = (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&r| !j.get(r, c).is_zero())
                    .map(|r| (r, j.get(r, c).clone()))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for a in 0..n {
                for b in 0..n {
                    // (Γ_i J)_{ab} − (J Γ_i)_{ab}, with (Γ_i)_{am} = Γ(i, m, a)
                    let mut terms = Vec::new();
                    for (m, v) in &nz_cols[b] {
                        terms.push((var(i, *m, a), v.clone()));
                    }
                    for (m, v) in &nz[a] {
                        terms.push((var(i, b, *m), -v));
                    }
                    sys.push(terms, Scalar::zero());
                }
            }
        }
    }
    let red = sys.solve()?;
    let x = match red.particular {
        Some(x) if red.kernel.is_empty() => x,
        p => {
            return Err(Error::ObataNotUnique {
                nullity: red.kernel.len(),
                consistent: p.is_some(),
            })
        }
    };
    let maps = (0..n)
        .map(|i| Matrix::from_fn(n, n, |k, j| x[var(i, j, k)].clone()))
        .collect();
    let conn = Connection { maps };
    if let Some((i, j)) = torsion(&conn, alg).witness() {
        return Err(Error::Internal(format!("Obata torsion at ({i}, {j})")));
    }
    if let Some((i, a)) = conn.complex_witness(js) {
        return Err(Error::Internal(format!(
            "Obata connection moves J{a} along e{i}"
        )));
    }
    Ok(conn)
}

/// Checks that `D` takes values in `sp(n)`: every `D_X` is `g`-skew and
/// commutes with each `J_α`, and `D` is a homomorphism. All violations are
/// returned; an empty list means success.
pub fn check_sp_homomorphism(d: &Connection, s: &GeomStructure) -> Result<Vec<Error>, Error> {
    let g = s.require_metric()?;
    let alg = s.algebra();
    let n = alg.dim();
    if d.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.dim(),
        });
    }
    let mut out = Vec::new();
    for i in 0..n {
        if !g.is_skew(d.get(i)) {
            out.push(Error::NotSkew { i: i + 1 });
        }
    }
    for (i, m) in d.maps().iter().enumerate() {
        for (a, j) in s.complex_structures().iter().enumerate() {
            if !m.commutator(j).is_zero() {
                out.push(Error::NotComplexConnection {
                    i: i + 1,
                    alpha: a + 1,
                });
            }
        }
    }
    let curv = curvature(d, alg);
    for i in 0..n {
        for j in i + 1..n {
            if !curv[i * n + j].is_zero() {
                out.push(Error::NotHomomorphism { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(out)
}
