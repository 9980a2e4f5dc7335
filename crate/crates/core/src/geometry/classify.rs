use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::connection::{bismut, torsion_3form};
use super::hermitian::{abelian_witness, nijenhuis};
use super::GeomStructure;
use crate::error::Error;
use crate::forms::KForm;
use crate::lie::basis_vector;
use crate::scalar::Scalar;

/// Outcome of both HKT tests; they are independent and must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HktCertificate {
    /// `H_α(X,Y,Z) = g([J_αX,J_αY],Z) + cyclic` is the same for every `α`.
    pub route_a: bool,
    /// `σ_α = dω_α(J_α·, J_α·, J_α·)` is the same for every `α`.
    pub route_b: bool,
}

impl HktCertificate {
    pub fn hkt(&self) -> bool {
        self.route_a && self.route_b
    }
}

/// `σ_α(X, Y, Z) = dω_α(J_α X, J_α Y, J_α Z)`.
pub fn sigma_form(s: &GeomStructure, alpha: usize) -> Result<KForm, Error> {
    let j = s.j(alpha)?;
    let omega = s.kaehler_forms()?.swap_remove(alpha - 1);
    Ok(omega.ce_differential(s.algebra()).pullback(j))
}

fn route_a_forms(s: &GeomStructure) -> Result<Vec<KForm>, Error> {
    let g = s.require_metric()?;
    let alg = s.algebra();
    let n = alg.dim();
    s.complex_structures()
        .iter()
        .map(|j| {
            let je: Vec<Vec<Scalar>> = (0..n).map(|i| j.column(i)).collect();
            let h = |a: usize, b: usize, c: usize| {
                g.inner(&alg.bracket(&je[a], &je[b]), &basis_vector(n, c))
            };
            Ok(KForm::from_basis_values(n, 3, |k| {
                let (a, b, c) = (k[0], k[1], k[2]);
                &(&h(a, b, c) + &h(b, c, a)) + &h(c, a, b)
            }))
        })
        .collect()
}

/// Decides HKT for a hyper-Hermitian structure by two independent routes.
/// A disagreement is reported as [`Error::Internal`].
pub fn hkt_check(s: &GeomStructure) -> Result<HktCertificate, Error> {
    if !s.is_triple() {
        return Err(Error::MissingComplexStructure);
    }
    let a = route_a_forms(s)?;
    let route_a = a[0] == a[1] && a[1] == a[2];
    let sig: Vec<KForm> = (1..=3)
        .map(|alpha| sigma_form(s, alpha))
        .collect::<Result<_, _>>()?;
    let route_b = sig[0] == sig[1] && sig[1] == sig[2];
    if route_a != route_b {
        return Err(Error::Internal(format!(
            "HKT routes disagree: condition on brackets {route_a}, condition on dω {route_b}"
        )));
    }
    Ok(HktCertificate { route_a, route_b })
}

/// Lee form `θ(v) = −½ Σ_{i,j} g^{ij} c(J_α v, e_i, J_α e_j)`.
pub fn lee_form(s: &GeomStructure, c: &KForm, alpha: usize) -> Result<KForm, Error> {
    let g = s.require_metric()?;
    let j = s.j(alpha)?;
    let n = s.dim();
    // θ_k = −½ Σ C[a,i,b] J[a][k] K[b][i] with K = J g⁻¹
    let k_mat = j * g.inverse();
    let mut theta = vec![Scalar::zero(); n];
    for (key, v) in c.raw_terms() {
        let (x, y, z) = (key[0], key[1], key[2]);
        let perms = [
            (x, y, z, false),
            (y, z, x, false),
            (z, x, y, false),
            (y, x, z, true),
            (x, z, y, true),
            (z, y, x, true),
        ];
        for (a, i, b, odd) in perms {
            let kb = k_mat.get(b, i);
            if kb.is_zero() {
                continue;
            }
            let w = if odd { -(v * kb) } else { v * kb };
            for (kk, t) in theta.iter_mut().enumerate() {
                let ja = j.get(a, kk);
                if !ja.is_zero() {
                    *t += &(&w * ja);
                }
            }
        }
    }
    let half = Scalar::frac(-1, 2);
    Ok(KForm::one_form(
        &theta.iter().map(|t| t * &half).collect::<Vec<_>>(),
    ))
}

/// `ω^k`, with `ω^0 = 1`.
pub fn omega_power(omega: &KForm, k: usize) -> KForm {
    let mut p = KForm::constant(omega.dim(), Scalar::one());
    for _ in 0..k {
        p = p.wedge(omega);
    }
    p
}

/// Every classification flag and exact artifact of a structure. Flags that do
/// not apply (no metric, no complex structure, ...) are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Report {
    pub dim: usize,
    pub complex_integrable: Vec<bool>,
    pub hypercomplex: Option<bool>,
    pub abelian_hypercomplex: Option<bool>,
    pub hermitian: Option<bool>,
    pub kahler: Option<bool>,
    pub hyper_hermitian: Option<bool>,
    pub hkt: Option<bool>,
    pub strong: Option<bool>,
    pub weak: Option<bool>,
    pub balanced: Option<bool>,
    pub conformally_balanced: Option<bool>,
    pub hyper_kahler: Option<bool>,
    pub torsion_coclosed: Option<bool>,
    /// `d(ω_1^{m−1}) = 0` with `m = dim/2`; a diagnostic independent of `θ`.
    pub omega_power_closed: Option<bool>,
    pub omega: Vec<KForm>,
    pub c: Option<KForm>,
    pub dc: Option<KForm>,
    pub theta: Option<KForm>,
    pub dtheta: Option<KForm>,
    pub dstar_c: Option<KForm>,
}

/// Runs the whole pipeline. The torsion artifacts use the Bismut connection
/// of `J_1`.
pub fn classify(s: &GeomStructure) -> Result<Report, Error> {
    let alg = s.algebra();
    let js = s.complex_structures();
    let mut r = Report {
        dim: s.dim(),
        ..Report::default()
    };
    r.complex_integrable = js
        .iter()
        .map(|j| nijenhuis(j, alg).map(|t| t.is_zero()))
        .collect::<Result<_, _>>()?;
    let integrable = !js.is_empty() && r.complex_integrable.iter().all(|b| *b);
    if s.is_triple() {
        r.hypercomplex = Some(integrable);
        r.abelian_hypercomplex = Some(integrable && abelian_witness(js, alg).is_none());
    }
    let Some(g) = s.metric() else {
        return Ok(r);
    };
    if js.is_empty() {
        return Ok(r);
    }
    r.omega = s.kaehler_forms()?;
    r.hermitian = Some(r.complex_integrable[0]);
    r.kahler = Some(integrable && r.omega.iter().all(|w| w.ce_differential(alg).is_zero()));
    if s.is_triple() {
        r.hyper_hermitian = Some(integrable);
        r.hkt = Some(integrable && hkt_check(s)?.hkt());
    }
    if !r.complex_integrable[0] {
        return Ok(r);
    }
    let c = torsion_3form(&bismut(s, 1)?, alg, g)?;
    let dc = c.ce_differential(alg);
    let theta = lee_form(s, &c, 1)?;
    let dtheta = theta.ce_differential(alg);
    let dstar_c = c.codifferential(alg, g.inverse())?;
    if let Some(h) = r.hkt {
        r.strong = Some(h && dc.is_zero());
        r.weak = Some(h && !dc.is_zero());
        r.hyper_kahler = Some(h && c.is_zero());
    }
    r.balanced = Some(theta.is_zero());
    r.omega_power_closed = Some(
        omega_power(&r.omega[0], s.dim() / 2 - 1)
            .ce_differential(alg)
            .is_zero(),
    );
    r.conformally_balanced = Some(dtheta.is_zero());
    r.torsion_coclosed = Some(dstar_c.is_zero());
    r.c = Some(c);
    r.dc = Some(dc);
    r.theta = Some(theta);
    r.dtheta = Some(dtheta);
    r.dstar_c = Some(dstar_c);
    Ok(r)
}
