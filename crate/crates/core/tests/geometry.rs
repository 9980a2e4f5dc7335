mod common;

use common::*;
use hkt_core::catalog::{alg4_jprime, alg4_published_obata};
use hkt_core::geometry::{
    bismut, check_hypercomplex, check_sp_homomorphism, classify, curvature, hkt_check,
    infinitesimal_holonomy, is_abelian_hypercomplex, is_flat, lee_form, levi_civita, nijenhuis,
    obata, sigma_form, torsion, torsion_3form, ComplexStructure, Connection, GeomStructure, Metric,
};
use hkt_core::lie::basis_vector;
use hkt_core::{Error, KForm, LieAlgebra, Matrix, Scalar};
use proptest::prelude::*;

fn col(m: &Matrix, i: usize) -> Vec<Scalar> {
    m.column(i)
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `N(e_i, e_j)` straight from the definition.
fn nijenhuis_oracle(j: &Matrix, alg: &LieAlgebra, a: usize, b: usize) -> Vec<Scalar> {
    let n = alg.dim();
    let (x, y) = (basis_vector(n, a), basis_vector(n, b));
    let (jx, jy) = (col(j, a), col(j, b));
    let inner = sub(&alg.bracket(&x, &y), &alg.bracket(&jx, &jy));
    sub(
        &j.mul_vec(&inner),
        &add(&alg.bracket(&jx, &y), &alg.bracket(&x, &jy)),
    )
}

fn assert_nijenhuis_matches(j: &Matrix, alg: &LieAlgebra) -> bool {
    let t = nijenhuis(j, alg).unwrap();
    let mut zero = true;
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let v = nijenhuis_oracle(j, alg, a, b);
            zero &= v.iter().all(Scalar::is_zero);
            assert_eq!(t.get(a, b), &v[..], "N(e{}, e{})", a + 1, b + 1);
        }
    }
    assert_eq!(t.is_zero(), zero);
    zero
}

/// `T(e_a, e_b) = ∇_a e_b − ∇_b e_a − [e_a, e_b]`, computed independently.
fn torsion_free(c: &Connection, alg: &LieAlgebra) -> bool {
    let n = alg.dim();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let t = sub(
                &sub(&col(c.get(a), b), &col(c.get(b), a)),
                &bracket(alg, a, b),
            );
            t.iter().all(Scalar::is_zero)
        })
    })
}

fn metric_connection(c: &Connection, g: &Metric) -> bool {
    let n = g.dim();
    (0..n).all(|a| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let l = g.inner(&col(c.get(a), y), &basis_vector(n, z));
                let r = g.inner(&basis_vector(n, y), &col(c.get(a), z));
                (&l + &r).is_zero()
            })
        })
    })
}

fn parallel(c: &Connection, j: &Matrix) -> bool {
    c.maps().iter().all(|d| (d * j) == (j * d))
}

/// `g(X, T(Y, Z))` on basis triples, from first principles.
fn lowered_torsion(
    c: &Connection,
    alg: &LieAlgebra,
    g: &Metric,
    x: usize,
    y: usize,
    z: usize,
) -> Scalar {
    let n = alg.dim();
    let t = sub(
        &sub(&col(c.get(y), z), &col(c.get(z), y)),
        &bracket(alg, y, z),
    );
    g.inner(&basis_vector(n, x), &t)
}

fn triples() -> impl Iterator<Item = &'static hkt_core::catalog::CatalogEntry> {
    builtins().iter().filter(|e| e.structure.is_triple())
}

#[test]
fn nijenhuis_of_aff_c_vanishes_and_a_sign_flip_breaks_it() {
    let s = &entry("aff_C").structure;
    let j1 = s.j(1).unwrap();
    assert_eq!(
        col(j1, 0),
        basis_vector(4, 3).iter().map(|x| -x).collect::<Vec<_>>()
    );
    assert_eq!(col(j1, 1), basis_vector(4, 2));
    assert!(assert_nijenhuis_matches(j1, s.algebra()));
    let mut broken = j1.clone();
    broken.set(3, 0, s_(1));
    broken.set(0, 3, s_(-1));
    assert!(!assert_nijenhuis_matches(&broken, s.algebra()));
    assert!(nijenhuis(&broken, s.algebra()).unwrap().witness().is_some());
}

fn s_(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[test]
fn nijenhuis_on_abelian_algebra_vanishes() {
    let r4 = standard_r4();
    for j in r4.complex_structures() {
        assert!(assert_nijenhuis_matches(j, r4.algebra()));
    }
}

#[test]
fn every_catalog_complex_structure_matches_the_nijenhuis_oracle() {
    for e in builtins() {
        for j in e.structure.complex_structures() {
            assert!(
                assert_nijenhuis_matches(j, e.structure.algebra()),
                "{}",
                e.name
            );
        }
    }
}

#[test]
fn check_hypercomplex_rejects_a_repeated_structure() {
    let s = &entry("aff_C").structure;
    let j = s.j(1).unwrap();
    assert!(matches!(
        check_hypercomplex(j, j, j, s.algebra()),
        Err(Error::QuaternionRelation(_))
    ));
    let [a, b, c] = [s.j(1).unwrap(), s.j(2).unwrap(), s.j(3).unwrap()];
    assert_eq!(check_hypercomplex(a, b, c, s.algebra()), Ok(()));
}

#[test]
fn abelian_hypercomplex_examples() {
    let abelian = |name: &str| {
        let s = &entry(name).structure;
        let [a, b, c] = [s.j(1).unwrap(), s.j(2).unwrap(), s.j(3).unwrap()];
        is_abelian_hypercomplex(a, b, c, s.algebra())
    };
    assert!(abelian("aff_C"));
    assert!(abelian("heis8"));
    assert!(!abelian("heis8_rho12"));
    let r4 = standard_r4();
    let [a, b, c] = [r4.j(1).unwrap(), r4.j(2).unwrap(), r4.j(3).unwrap()];
    assert!(is_abelian_hypercomplex(a, b, c, r4.algebra()));
}

#[test]
fn levi_civita_of_sp1_u1() {
    let s = &entry("sp1_u1").structure;
    let lc = levi_civita(s).unwrap();
    // ∇_{e1} e2 = ½ e3 and cyclically
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let mut expected = vec![Scalar::zero(); 4];
        expected[c] = q(1, 2);
        assert_eq!(col(lc.get(a), b), expected);
    }
    // R(e1, e2) = [∇_1, ∇_2] − ∇_{e3}, the round S³ factor is curved
    let r12 = &lc.get(0).commutator(lc.get(1)) - lc.get(2);
    assert!(!r12.is_zero());
    assert!(!is_flat(&lc, s.algebra()));
    assert_eq!(curvature(&lc, s.algebra())[1], r12);
}

#[test]
fn levi_civita_is_torsion_free_and_metric_everywhere() {
    for e in builtins() {
        let s = &e.structure;
        let lc = levi_civita(s).unwrap();
        assert!(torsion_free(&lc, s.algebra()), "{}", e.name);
        assert!(metric_connection(&lc, s.metric().unwrap()), "{}", e.name);
        assert!(torsion(&lc, s.algebra()).is_zero());
    }
    let r4 = standard_r4();
    assert!(levi_civita(&r4).unwrap().is_zero());
}

#[test]
fn bismut_defining_properties_hold_everywhere() {
    for e in builtins() {
        let s = &e.structure;
        let g = s.metric().unwrap();
        let alg = s.algebra();
        let n = s.dim();
        for alpha in 1..=s.complex_structures().len() {
            let b = bismut(s, alpha).unwrap();
            assert!(metric_connection(&b, g), "{} alpha {alpha}", e.name);
            assert!(
                parallel(&b, s.j(alpha).unwrap()),
                "{} alpha {alpha}",
                e.name
            );
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let v = lowered_torsion(&b, alg, g, x, y, z);
                        assert_eq!(v, -lowered_torsion(&b, alg, g, y, x, z), "{}", e.name);
                        assert_eq!(v, -lowered_torsion(&b, alg, g, x, z, y), "{}", e.name);
                    }
                }
            }
        }
    }
}

#[test]
fn bismut_of_sp1_u1_vanishes() {
    let s = &entry("sp1_u1").structure;
    for alpha in 1..=3 {
        assert!(bismut(s, alpha).unwrap().is_zero());
    }
    assert!(bismut(&standard_r4(), 1).unwrap().is_zero());
}

#[test]
fn hkt_iff_the_three_bismut_connections_coincide() {
    for e in triples() {
        let s = &e.structure;
        let same = bismut(s, 1).unwrap() == bismut(s, 2).unwrap()
            && bismut(s, 2).unwrap() == bismut(s, 3).unwrap();
        let cert = hkt_check(s).unwrap();
        assert_eq!(cert.route_a, cert.route_b, "{}", e.name);
        assert_eq!(cert.hkt(), same, "{}", e.name);
    }
}

#[test]
fn torsion_form_is_minus_sigma_on_hkt_entries() {
    for e in triples() {
        let s = &e.structure;
        if !hkt_check(s).unwrap().hkt() {
            continue;
        }
        let c = torsion_3form(&bismut(s, 1).unwrap(), s.algebra(), s.metric().unwrap()).unwrap();
        for alpha in 1..=3 {
            assert_eq!(
                c,
                -&sigma_form(s, alpha).unwrap(),
                "{} alpha {alpha}",
                e.name
            );
        }
    }
}

/// `θ(v) = −½ Σ_i c(J v, f_i, J f_i)` over an orthonormal basis `f_i = e_i/√g_ii`.
fn lee_oracle(s: &GeomStructure, c: &KForm, alpha: usize) -> Option<KForm> {
    let g = s.metric()?.gram();
    let n = s.dim();
    if (0..n).any(|i| (0..n).any(|k| i != k && !g.get(i, k).is_zero())) {
        return None;
    }
    let j = s.j(alpha).unwrap();
    let theta: Vec<Scalar> = (0..n)
        .map(|v| {
            let mut acc = Scalar::zero();
            for i in 0..n {
                let t = c
                    .evaluate(&[col(j, v), basis_vector(n, i), col(j, i)])
                    .unwrap();
                acc += &(&t * &g.get(i, i).try_inv().unwrap());
            }
            &acc * &q(-1, 2)
        })
        .collect();
    Some(KForm::one_form(&theta))
}

#[test]
fn lee_form_matches_the_orthonormal_formula() {
    let mut checked = 0;
    for e in builtins() {
        let s = &e.structure;
        let c = torsion_3form(&bismut(s, 1).unwrap(), s.algebra(), s.metric().unwrap()).unwrap();
        if let Some(expected) = lee_oracle(s, &c, 1) {
            assert_eq!(lee_form(s, &c, 1).unwrap(), expected, "{}", e.name);
            checked += 1;
        }
        if s.is_triple() && hkt_check(s).unwrap().hkt() {
            let t1 = lee_form(s, &c, 1).unwrap();
            assert_eq!(lee_form(s, &c, 2).unwrap(), t1, "{}", e.name);
            assert_eq!(lee_form(s, &c, 3).unwrap(), t1, "{}", e.name);
        }
    }
    assert!(checked >= 8, "only {checked} diagonal metrics");
}

#[test]
fn obata_is_unique_torsion_free_and_parallel() {
    for e in triples() {
        let s = &e.structure;
        let o = obata(s).unwrap();
        assert!(torsion_free(&o, s.algebra()), "{}", e.name);
        for j in s.complex_structures() {
            assert!(parallel(&o, j), "{}", e.name);
        }
    }
    assert!(obata(&standard_r4()).unwrap().is_zero());
}

#[test]
fn obata_of_alg4_is_the_published_one() {
    let s = &entry("alg4").structure;
    let o = obata(s).unwrap();
    assert_eq!(o, alg4_published_obata());
    let hol = infinitesimal_holonomy(&o, s.algebra()).unwrap();
    assert_eq!(hol.len(), 3);
    let span =
        hkt_core::span_closure(&alg4_jprime(), &hkt_core::ClosureRule::linear_span()).unwrap();
    let joint = {
        let mut all = hol.clone();
        all.extend(alg4_jprime());
        hkt_core::span_closure(&all, &hkt_core::ClosureRule::linear_span()).unwrap()
    };
    assert_eq!(span.len(), 3);
    assert_eq!(joint.len(), 3);
}

#[test]
fn flat_connections_have_trivial_holonomy() {
    let s = &entry("sp1_u1").structure;
    let d = entry("sp1_u1").connection("D").unwrap();
    assert!(is_flat(d, s.algebra()));
    assert!(infinitesimal_holonomy(d, s.algebra()).unwrap().is_empty());
    let z = Connection::zero(4);
    assert!(is_flat(&z, s.algebra()));
    assert!(infinitesimal_holonomy(&z, s.algebra()).unwrap().is_empty());
}

#[test]
fn sp_homomorphism_examples() {
    for name in ["sp1_u1", "aff_C"] {
        let e = entry(name);
        let v = check_sp_homomorphism(e.connection("D").unwrap(), &e.structure).unwrap();
        assert!(v.is_empty(), "{name}: {v:?}");
    }
    let s = &entry("sp1_u1").structure;
    let id = Connection::new(vec![Matrix::identity(4); 4]).unwrap();
    let v = check_sp_homomorphism(&id, s).unwrap();
    assert!(
        v.iter().any(|e| matches!(e, Error::NotSkew { .. })),
        "{v:?}"
    );
    assert!(
        v.iter().any(|e| matches!(e, Error::NotHomomorphism { .. })),
        "{v:?}"
    );
    assert!(!is_flat(&id, s.algebra()));
}

#[test]
fn classification_respects_its_implications() {
    for e in builtins() {
        let r = classify(&e.structure).unwrap();
        let dc_zero = r.dc.as_ref().map(KForm::is_zero);
        if let Some(h) = r.hkt {
            assert_eq!(r.strong, Some(h && dc_zero == Some(true)), "{}", e.name);
            assert_eq!(r.weak, Some(h && dc_zero == Some(false)), "{}", e.name);
        }
        if r.hyper_kahler == Some(true) {
            assert_eq!(r.strong, Some(true));
            assert!(r.c.as_ref().unwrap().is_zero());
        }
        if r.balanced == Some(true) {
            assert_eq!(r.conformally_balanced, Some(true), "{}", e.name);
        }
        if r.hermitian == Some(true) {
            // balanced θ = 0 and closed ω^{m−1} agree for Hermitian metrics
            assert_eq!(r.balanced, r.omega_power_closed, "{}", e.name);
        }
    }
}

#[test]
fn flat_standard_quaternions_are_hyper_kaehler() {
    let r = classify(&standard_r4()).unwrap();
    assert_eq!(r.hyper_kahler, Some(true));
    assert_eq!(r.kahler, Some(true));
    assert_eq!(r.balanced, Some(true));
}

#[test]
fn rescaling_heis8_on_a_quaternionic_line_keeps_it_hkt() {
    let s = &entry("heis8").structure;
    let g = Matrix::diagonal(&[s_(2), s_(2), s_(2), s_(2), s_(1), s_(1), s_(1), s_(1)]);
    let t = with_metric(s, Metric::new(g).unwrap());
    let cert = hkt_check(&t).unwrap();
    assert!(cert.route_a && cert.route_b);
    // rescaling e1 alone is not compatible with J1 e1 = e2
    let g1 = Matrix::diagonal(&[s_(2), s_(1), s_(1), s_(1), s_(1), s_(1), s_(1), s_(1)]);
    let bad = GeomStructure::new(
        s.algebra().clone(),
        Some(Metric::new(g1).unwrap()),
        s.complex().clone(),
    );
    assert!(matches!(bad, Err(Error::NotCompatible { .. })));
}

#[test]
fn metric_must_be_positive_definite() {
    let g = Matrix::diagonal(&[s_(1), s_(-1)]);
    assert_eq!(Metric::new(g), Err(Error::MetricNotPositive { order: 2 }));
    let j = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
    let h = GeomStructure::new(
        LieAlgebra::abelian(2),
        Some(Metric::euclidean(2)),
        ComplexStructure::Single(j),
    );
    assert!(h.is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn routes_agree_on_random_compatible_metrics(i in 0usize..11, m in prop::collection::vec(-2i64..=2, 64)) {
        let e = &builtins()[i];
        prop_assume!(e.structure.is_triple() && e.structure.dim() <= 8);
        let n = e.structure.dim();
        let mm = Matrix::from_fn(n, n, |r, c| s_(m[(r * n + c) % m.len()]));
        let s = with_metric(&e.structure, compatible_metric(e.structure.complex_structures(), &mm));
        let cert = hkt_check(&s).unwrap();
        prop_assert_eq!(cert.route_a, cert.route_b);
        let same = bismut(&s, 1).unwrap() == bismut(&s, 2).unwrap() && bismut(&s, 1).unwrap() == bismut(&s, 3).unwrap();
        prop_assert_eq!(cert.hkt(), same);
    }
}
