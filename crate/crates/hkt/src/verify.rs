//! The acceptance table: every published value the engine must reproduce,
//! plus the structural theorems run as property suites.
//!
//! Each criterion is a list of [`Check`]s. A check records what was expected
//! (with its citation), what was computed, and whether they are equal.
//! Comparisons are exact.

use std::fmt;

use hkt_core::catalog::{self, CatalogEntry, ExpectedValue, Provenance};
use hkt_core::constructions::{block_connection, kaehler_to_hkt, rho_extension, tangent_algebra};
use hkt_core::geometry::{
    bismut, check_sp_homomorphism, classify, hkt_check, infinitesimal_holonomy, is_flat, nijenhuis,
    obata, torsion, Connection, GeomStructure, Metric, Report,
};
use hkt_core::{span_closure, ClosureRule, Error, KForm, LieAlgebra, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::render;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub citation: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "ok  " } else { "FAIL" };
        write!(
            f,
            "  [{mark}] {}: expected {}; computed {}",
            self.label, self.expected, self.computed
        )?;
        if !self.citation.is_empty() {
            write!(f, "\n         cite: {}", self.citation)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Excluded,
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// The one-line summary printed per criterion.
    pub fn summary(&self) -> String {
        let word = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Excluded => "EXCLUDED",
        };
        let passed = self.checks.iter().filter(|c| c.pass).count();
        format!(
            "{} {word} {} ({passed}/{} checks)",
            self.id,
            self.title,
            self.checks.len()
        )
    }
}

type Runner = fn() -> Result<Vec<Check>, Error>;

struct Row {
    id: &'static str,
    title: &'static str,
    /// Catalog entries the criterion is about; `--case` filters on these.
    cases: &'static [&'static str],
    run: Runner,
}

const TABLE: [Row; 8] = [
    Row {
        id: "AC1",
        title: "R + e(2) Kaehler double: torsion, Lee form, classification",
        cases: &["e2_tangent", "e2_central"],
        run: ac1,
    },
    Row {
        id: "AC2",
        title: "SU(2,1) solvable Kaehler double: torsion, Lee form, classification",
        cases: &["su21_tangent", "su21_solv"],
        run: ac2,
    },
    Row {
        id: "AC3",
        title: "tangent algebra of sp(1) + u(1): structure constants, strong HKT, flat Obata",
        cases: &["sp1u1_tangent", "sp1_u1"],
        run: ac3,
    },
    Row {
        id: "AC4",
        title: "algebra (4): Obata connection, infinitesimal holonomy, not balanced",
        cases: &["alg4"],
        run: ac4,
    },
    Row {
        id: "AC5",
        title: "8-dim balanced HKT and its 12-dim quaternionic extension",
        cases: &["heis8", "heis8_rho12"],
        run: ac5,
    },
    Row {
        id: "AC6",
        title: "aff(C) at (1,0,0,1): homomorphism into sp(n), weak HKT lift",
        cases: &["aff_C"],
        run: ac6,
    },
    Row {
        id: "AC7",
        title: "theorem equivalences as property suites",
        cases: &[],
        run: ac7,
    },
    Row {
        id: "AC8",
        title: "group-level claims excluded; algebra-level surrogates stand in",
        cases: &[],
        run: ac8,
    },
];

#[derive(Debug, thiserror::Error)]
#[error("unknown case {0:?}; expected a criterion id (AC1..AC8) or a built-in name")]
pub struct UnknownCase(pub String);

/// Runs the table, optionally restricted to one criterion id or one catalog
/// entry. Output order is the table order.
pub fn run(case: Option<&str>) -> Result<Vec<Criterion>, UnknownCase> {
    let selected: Vec<&Row> = match case {
        None => TABLE.iter().collect(),
        Some(c) => {
            if !TABLE.iter().any(|s| s.id == c) && !catalog::BUILTIN_NAMES.contains(&c) {
                return Err(UnknownCase(c.to_string()));
            }
            TABLE
                .iter()
                .filter(|s| s.id == c || s.cases.contains(&c))
                .collect()
        }
    };
    Ok(selected.into_iter().map(run_one).collect())
}

fn run_one(row: &Row) -> Criterion {
    let checks = (row.run)().unwrap_or_else(|e| {
        vec![Check {
            label: "evaluation".into(),
            citation: String::new(),
            expected: "no error".into(),
            computed: format!("error: {e}"),
            pass: false,
        }]
    });
    let status = if row.id == "AC8" {
        Status::Excluded
    } else if checks.iter().all(|c| c.pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    Criterion {
        id: row.id,
        title: row.title,
        status,
        checks,
    }
}

// ------------------------------------------------------------------ helpers

fn check(
    label: impl Into<String>,
    citation: &str,
    expected: impl fmt::Display,
    computed: impl fmt::Display,
    pass: bool,
) -> Check {
    Check {
        label: label.into(),
        citation: citation.to_string(),
        expected: expected.to_string(),
        computed: computed.to_string(),
        pass,
    }
}

fn eq_check<T: PartialEq + fmt::Display>(
    label: impl Into<String>,
    citation: &str,
    expected: T,
    computed: T,
) -> Check {
    let pass = expected == computed;
    check(label, citation, &expected, &computed, pass)
}

fn flag_str(b: Option<bool>) -> String {
    b.map_or_else(|| "n/a".into(), |b| b.to_string())
}

fn builtin(name: &str) -> Result<CatalogEntry, Error> {
    catalog::builtin(name)
}

fn connection<'a>(e: &'a CatalogEntry, name: &str) -> Result<&'a Connection, Error> {
    e.connection(name)
        .ok_or_else(|| Error::Internal(format!("{} has no connection {name}", e.name)))
}

/// Checks every stored expectation of `entry` against `report`.
fn expectations(entry: &CatalogEntry, report: &Report) -> Vec<Check> {
    entry
        .expected
        .iter()
        .map(|x| {
            let label = format!("{} {}", entry.name, x.key);
            let cite = match x.provenance {
                Provenance::Published => format!("\"{}\"", x.citation),
                p => format!("({}) {}", p.as_str(), x.citation),
            };
            match &x.value {
                ExpectedValue::Flag(b) => {
                    let got = render::flag(report, &x.key).flatten();
                    check(label, &cite, b, flag_str(got), got == Some(*b))
                }
                ExpectedValue::Form(f) => match render::form(report, &x.key) {
                    Some(got) => check(label, &cite, f, got, got == f),
                    None => check(label, &cite, f, "n/a", false),
                },
            }
        })
        .collect()
}

fn same_structure(
    label: &str,
    citation: &str,
    literal: &GeomStructure,
    built: &GeomStructure,
) -> Check {
    let pass = literal == built;
    let computed = if pass {
        "identical".to_string()
    } else {
        describe_difference(literal, built)
    };
    check(
        label,
        citation,
        "identical to the catalog literal",
        computed,
        pass,
    )
}

fn describe_difference(a: &GeomStructure, b: &GeomStructure) -> String {
    if a.dim() != b.dim() {
        return format!("dimension {} vs {}", a.dim(), b.dim());
    }
    if let Some((i, j, k, x, y)) = first_constant_difference(a.algebra(), b.algebra()) {
        return format!("c^{k}_{{{i}{j}}}: literal {x}, built {y}");
    }
    if a.complex() != b.complex() {
        return "complex structures differ".into();
    }
    "metrics differ".into()
}

fn first_constant_difference(
    a: &LieAlgebra,
    b: &LieAlgebra,
) -> Option<(usize, usize, usize, Scalar, Scalar)> {
    constant_differences(a, b).into_iter().next()
}

fn constant_differences(
    a: &LieAlgebra,
    b: &LieAlgebra,
) -> Vec<(usize, usize, usize, Scalar, Scalar)> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                let (x, y) = (a.structure_constant(i, j, k), b.structure_constant(i, j, k));
                if x != y {
                    out.push((i, j, k, x, y));
                }
            }
        }
    }
    out
}

fn flag_check(
    label: impl Into<String>,
    citation: &str,
    expected: bool,
    got: Option<bool>,
) -> Check {
    check(
        label,
        citation,
        expected,
        flag_str(got),
        got == Some(expected),
    )
}

// ------------------------------------------------------------------ criteria

fn kaehler_double_case(base: &str, conn: &str, lit: &str, cite: &str) -> Result<Vec<Check>, Error> {
    let b = builtin(base)?;
    let d = connection(&b, conn)?;
    let built = kaehler_to_hkt(&b.structure, d)?;
    let literal = builtin(lit)?;
    let mut out = vec![same_structure(
        &format!("kaehler-double of {base} along {conn}"),
        cite,
        &literal.structure,
        &built,
    )];
    let rb = classify(&b.structure)?;
    out.extend(expectations(&b, &rb));
    let r = classify(&built)?;
    out.extend(expectations(&literal, &r));
    Ok(out)
}

fn ac1() -> Result<Vec<Check>, Error> {
    kaehler_double_case(
        "e2_central",
        "D",
        "e2_tangent",
        "bracket [(X1,X2),(Y1,Y2)] = ([X1,Y1], D_X1 Y2 - D_Y1 X2) expanded by hand",
    )
}

fn ac2() -> Result<Vec<Check>, Error> {
    let mut out = kaehler_double_case(
        "su21_solv",
        "D_complex",
        "su21_tangent",
        "printed D with the two entries that anticommute with J reflected",
    )?;
    let b = builtin("su21_solv")?;
    let printed = connection(&b, "D")?;
    let res = kaehler_to_hkt(&b.structure, printed);
    let got = match &res {
        Err(e @ Error::NotComplexConnection { .. }) => format!("rejected: {e}"),
        Err(e) => format!("rejected for another reason: {e}"),
        Ok(_) => "accepted".into(),
    };
    out.push(check(
        "printed D violates DJ = 0",
        "(computed) D_e1 e1 = -1/2 e4 while J e1 = e2, J e3 = -e4",
        "rejected as not complex",
        &got,
        matches!(res, Err(Error::NotComplexConnection { .. })),
    ));
    Ok(out)
}

fn ac3() -> Result<Vec<Check>, Error> {
    let base = builtin("sp1_u1")?;
    let d = connection(&base, "D")?;
    let t = tangent_algebra(&base.structure, d)?;
    let mut out = Vec::new();

    let printed = LieAlgebra::from_brackets(
        8,
        catalog::sp1u1_tangent_printed()
            .into_iter()
            .map(|(i, j, k, c)| (i, j, vec![(k, c)])),
    )?;
    let diffs = constant_differences(&printed, t.algebra());
    let computed = if diffs.is_empty() {
        "all displayed constants reproduced".to_string()
    } else {
        diffs
            .iter()
            .map(|(i, j, k, x, y)| format!("c^{k}_{{{i}{j}}} printed {x}, computed {y}"))
            .collect::<Vec<_>>()
            .join("; ")
    };
    out.push(check(
        "tangent_algebra(sp1_u1, D) vs displayed structure equations",
        "\"[e_1, e_8] = - [e_2, e_7] = [e_3, e_6] = - 1/2 e_5\" and companions",
        "all displayed constants reproduced",
        computed,
        diffs.is_empty(),
    ));
    let jd = printed.jacobi_defect();
    out.push(check(
        "displayed structure equations satisfy Jacobi",
        "(computed) Jacobi on (e1, e2, e7) forces [e3, e7] = 1/2 e8",
        "Jacobi holds",
        match jd.witness {
            None => "Jacobi holds".to_string(),
            Some((i, j, k)) => format!("fails on (e{i}, e{j}, e{k})"),
        },
        jd.witness.is_none(),
    ));
    let literal = builtin("sp1u1_tangent")?;
    out.push(same_structure(
        "tangent_algebra(sp1_u1, D) vs catalog entry",
        "(computed) display with [e3, e7] = 1/2 e8",
        &literal.structure,
        &t,
    ));
    let r = classify(&t)?;
    out.extend(expectations(&literal, &r));
    let zero = (1..=3).all(|a| {
        bismut(&base.structure, a)
            .map(|b| b.is_zero())
            .unwrap_or(false)
    });
    out.push(check(
        "base Bismut connection",
        "\"in this case it is identically zero\"",
        "identically zero",
        if zero { "identically zero" } else { "nonzero" },
        zero,
    ));
    let o = obata(&t)?;
    let flat = is_flat(&o, t.algebra());
    out.push(check(
        "Obata connection of the lift",
        "\"strong HKT structure with flat Obata connection\"",
        "flat",
        if flat { "flat" } else { "curved" },
        flat,
    ));
    Ok(out)
}

fn ac4() -> Result<Vec<Check>, Error> {
    let e = builtin("alg4")?;
    let s = &e.structure;
    let o = obata(s)?;
    let published = catalog::alg4_published_obata();
    let mut out = Vec::new();
    let names = ["3/4 id", "-(sqrt2/4) J'_2", "(sqrt2/4) J'_3", "1/4 J'_1"];
    for (i, name) in names.iter().enumerate() {
        let pass = o.get(i) == published.get(i);
        out.push(check(
            format!("Obata nabla_e{}", i + 1),
            "\"\\nabla^O_{e_1} =\\frac34 \\, \\text{id}, \\quad \\nabla^O_{e_2} =-\\frac{\\sqrt{2}}4 \\, J_2'\" and companions",
            name,
            if pass { name.to_string() } else { format!("{:?}", o.get(i)) },
            pass,
        ));
    }
    let hol = infinitesimal_holonomy(&o, s.algebra())?;
    let jp = span_closure(&catalog::alg4_jprime(), &ClosureRule::linear_span())?;
    out.push(check(
        "infinitesimal holonomy",
        "\"\\frak{hol} ( \\nabla ^O)=\\text{span} \\{ J_{\\alpha}' \\}\"",
        "span{J'_1, J'_2, J'_3}, dimension 3",
        format!(
            "dimension {}{}",
            hol.len(),
            if hol == jp {
                ", equal to span{J'_a}"
            } else {
                ", not span{J'_a}"
            }
        ),
        hol == jp && hol.len() == 3,
    ));
    let d = connection(&e, "D")?;
    let t = tangent_algebra(s, d)?;
    let ot = obata(&t)?;
    let block = block_connection(&o, d);
    out.push(check(
        "Obata connection of the lift",
        "\"(\\nabla^O_{X_1} Y_1, D_{X_1} Y_2)\"",
        "equal to the block formula",
        if ot == block { "equal" } else { "different" },
        ot == block,
    ));
    let holt = infinitesimal_holonomy(&ot, t.algebra())?;
    out.push(eq_check(
        "holonomy dimension of the lift",
        "\"\\frak{hol} (\\tilde \\nabla ^O)=\\frak{sl}(1, \\Bbb H )\"",
        hol.len(),
        holt.len(),
    ));
    let r = classify(s)?;
    out.extend(expectations(&e, &r));
    let rt = classify(&t)?;
    let weak = "\"The induced hyper-Hermitian structure  $(\\{ {\\tilde J}_{\\alpha} \\}, \\tilde g )$ on the tangent Lie algebra is weak HKT\"";
    out.push(flag_check("tangent lift hkt", weak, true, rt.hkt));
    out.push(flag_check("tangent lift weak", weak, true, rt.weak));
    out.push(flag_check(
        "tangent lift balanced",
        "\"we observe that $g$ (hence $\\tilde g$) is not balanced\"",
        false,
        rt.balanced,
    ));
    Ok(out)
}

fn ac5() -> Result<Vec<Check>, Error> {
    let base = builtin("heis8")?;
    let mut out = expectations(&base, &classify(&base.structure)?);
    let rho = base
        .quat_rep("rho1")
        .ok_or_else(|| Error::Internal("heis8 has no rho1".into()))?;
    let built = rho_extension(&base.structure, rho)?;
    let literal = builtin("heis8_rho12")?;
    out.push(same_structure(
        "rho_extension(heis8, rho1)",
        "bracket ([X,Y], rho(X)W - rho(Y)V) with f1..f4 = e9..e12",
        &literal.structure,
        &built,
    ));
    out.extend(expectations(&literal, &classify(&built)?));
    Ok(out)
}

fn ac6() -> Result<Vec<Check>, Error> {
    let e = builtin("aff_C")?;
    let s = &e.structure;
    let d = connection(&e, "D")?;
    let viol = check_sp_homomorphism(d, s)?;
    let mut out = vec![check(
        "D is a homomorphism into sp(n)",
        "\"D_{e_3} = a_1 J'_1 + a_2 J'_2 + a_3 J'_3, \\qquad D_{e_4} = bD_{e_3}\"",
        "no violations",
        if viol.is_empty() {
            "no violations".to_string()
        } else {
            viol.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        },
        viol.is_empty(),
    )];
    let rb = classify(s)?;
    out.extend(expectations(&e, &rb));
    let t = tangent_algebra(s, d)?;
    let r = classify(&t)?;
    let cite = "\"is weak HKT on $T_{D} \\, {\\mathfrak {aff}} ({\\Bbb C})$ and the hypercomplex structure $\\{ {\\tilde J}_{\\alpha} \\}$ is not abelian\"";
    out.push(flag_check("lift hkt", cite, true, r.hkt));
    out.push(flag_check("lift weak", cite, true, r.weak));
    out.push(flag_check(
        "lift abelian",
        cite,
        false,
        r.abelian_hypercomplex,
    ));
    out.push(flag_check(
        "base abelian",
        cite,
        true,
        rb.abelian_hypercomplex,
    ));
    Ok(out)
}

fn ac8() -> Result<Vec<Check>, Error> {
    Ok(vec![check(
        "lattices, compact quotients, SL(n,H) holonomy as a group",
        "\"it was shown that it admits a compact quotient\"",
        "not verifiable on the Lie algebra level",
        "excluded; see AC4 (holonomy dimension) and AC5 (balanced flag)",
        true,
    )])
}

// ------------------------------------------------------------------ AC7

/// `(entry, connection)` pairs on which the tangent construction applies.
pub fn admissible_pairs() -> Result<Vec<(CatalogEntry, Connection)>, Error> {
    let mut out = Vec::new();
    for name in ["sp1_u1", "aff_C", "alg3", "alg4"] {
        let e = builtin(name)?;
        let d = connection(&e, "D")?.clone();
        out.push((e, d));
    }
    let h = builtin("heis8")?;
    let z = Connection::zero(h.structure.dim());
    out.push((h, z));
    Ok(out)
}

/// Index (0-based) of a basis vector whose dual vanishes on `[g, g]`.
fn direction_off_derived(alg: &LieAlgebra) -> Option<usize> {
    let n = alg.dim();
    (0..n).find(|&k| (0..n).all(|i| (0..n).all(|j| alg.terms(i, j).iter().all(|t| t.0 != k))))
}

fn is_skew_connection(d: &Connection, g: &Metric) -> bool {
    d.skew_witness(g).is_none()
}

/// A random metric compatible with the triple: the average of `qᵀ P q` over
/// `q ∈ {1, J1, J2, J3}` for a random positive definite `P`.
pub fn random_compatible_metric(js: &[Matrix], rng: &mut impl Rng) -> Result<Metric, Error> {
    let n = js[0].rows();
    let m = Matrix::from_fn(n, n, |_, _| Scalar::from_int(rng.gen_range(-2..=2)));
    let p = &(&m.transpose() * &m) + &Matrix::identity(n);
    let mut g = p.clone();
    for j in js {
        g = &g + &(&(&j.transpose() * &p) * j);
    }
    Metric::new(g)
}

fn ac7() -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    ac7_routes(&mut out)?;
    ac7_tangent(&mut out)?;
    ac7_kaehler(&mut out)?;
    ac7_lifts(&mut out)?;
    ac7_basics(&mut out)?;
    Ok(out)
}

fn ac7_routes(out: &mut Vec<Check>) -> Result<(), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x484b54);
    let (mut agree, mut total, mut hkt_true) = (0, 0, 0);
    let mut bad = Vec::new();
    for name in catalog::BUILTIN_NAMES {
        let e = builtin(name)?;
        if !e.structure.is_triple() {
            continue;
        }
        let js = e.structure.complex_structures().to_vec();
        let dim = e.structure.dim();
        // random metrics are cheap to test only in small dimension
        let samples = if dim <= 8 { 4 } else { 1 };
        let mut metrics = vec![e.structure.metric().cloned().expect("catalog metric")];
        for _ in 0..samples {
            metrics.push(random_compatible_metric(&js, &mut rng)?);
        }
        for g in metrics {
            let s = e.structure.with_metric(g)?;
            total += 1;
            match hkt_check(&s) {
                Ok(c) => {
                    agree += 1;
                    hkt_true += usize::from(c.hkt());
                }
                Err(err) => bad.push(format!("{name}: {err}")),
            }
        }
    }
    out.push(check(
        "(a) HKT route A <=> route B",
        "(definitional) bracket condition vs J_1 d omega_1 = J_2 d omega_2 = J_3 d omega_3",
        format!("{total} agreements"),
        format!(
            "{agree} agreements ({hkt_true} HKT, {} not){}",
            agree - hkt_true,
            if bad.is_empty() {
                String::new()
            } else {
                format!("; {}", bad.join("; "))
            }
        ),
        agree == total && hkt_true > 0 && hkt_true < total,
    ));
    Ok(())
}

fn ac7_tangent(out: &mut Vec<Check>) -> Result<(), Error> {
    let cite = "\"is  HKT if and only if $({\\mathfrak g}, \\{ J_{\\alpha} \\} ,\\, g)$ is HKT  and  $D g =0$\"";
    for (e, d) in admissible_pairs()? {
        let s = &e.structure;
        let g = s.require_metric()?;
        let base = classify(s)?.hkt == Some(true);
        let t = tangent_algebra(s, &d)?;
        let lift = classify(&t)?.hkt == Some(true);
        let skew = is_skew_connection(&d, g);
        out.push(check(
            format!("(b) {}: lift HKT <=> base HKT and Dg = 0", e.name),
            cite,
            format!("{}", base && skew),
            format!("{lift} (base {base}, Dg = 0 {skew})"),
            lift == (base && skew),
        ));
        let Some(k) = direction_off_derived(s.algebra()) else {
            continue;
        };
        let mut maps = d.maps().to_vec();
        maps[k] = &maps[k] + &Matrix::identity(s.dim());
        let dt = Connection::new(maps)?;
        let t2 = tangent_algebra(s, &dt)?;
        let lift2 = classify(&t2)?.hkt == Some(true);
        let skew2 = is_skew_connection(&dt, g);
        out.push(check(
            format!("(b) {}: D_e{} + id breaks Dg = 0", e.name, k + 1),
            cite,
            "lift not HKT",
            format!("lift HKT {lift2}, Dg = 0 {skew2}"),
            !lift2 && !skew2,
        ));
    }
    Ok(())
}

/// A metric on the `R + e(2)` entry compatible with `J` but not Kaehler.
///
/// Diagonal perturbations `diag(a, a, b, b)` are all Kaehler there (the
/// search below confirms it), so the witness mixes the two complex lines.
pub fn e2_non_kaehler_metric() -> Result<(usize, Metric), Error> {
    let e = builtin("e2_central")?;
    let s = &e.structure;
    let mut diagonal_non_kaehler = 0;
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                for d in 1..=3 {
                    let g = Matrix::diagonal(&[a, b, c, d].map(Scalar::from_int));
                    let Ok(m) = Metric::new(g) else { continue };
                    let Ok(h) = s.with_metric(m) else { continue };
                    let w = &h.kaehler_forms()?[0];
                    if !w.ce_differential(h.algebra()).is_zero() {
                        diagonal_non_kaehler += 1;
                    }
                }
            }
        }
    }
    let half = Scalar::frac(1, 2);
    let mut g = Matrix::identity(4);
    for (r, c) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        g.set(r, c, half.clone());
    }
    Ok((diagonal_non_kaehler, Metric::new(g)?))
}

fn ac7_kaehler(out: &mut Vec<Check>) -> Result<(), Error> {
    let cite = "\"hyper-Hermitian Lie algebra is HKT if and only if $({\\mathfrak g}, J,\\, g)$ is K\\\"ahler\"";
    for (base, conn) in [("e2_central", "D"), ("su21_solv", "D_complex")] {
        let e = builtin(base)?;
        let t = kaehler_to_hkt(&e.structure, connection(&e, conn)?)?;
        let k = classify(&e.structure)?.kahler;
        let h = classify(&t)?.hkt;
        out.push(check(
            format!("(c) {base}: double HKT <=> Kaehler"),
            cite,
            flag_str(k),
            flag_str(h),
            h == k && k.is_some(),
        ));
    }
    let (diag, g) = e2_non_kaehler_metric()?;
    let e = builtin("e2_central")?;
    let s = e.structure.with_metric(g)?;
    let k = classify(&s)?.kahler;
    let t = kaehler_to_hkt(&s, connection(&e, "D")?)?;
    let h = classify(&t)?.hkt;
    out.push(check(
        "(c) e2_central with a Hermitian non-Kaehler metric",
        cite,
        "base not Kaehler, double not HKT",
        format!(
            "base Kaehler {}, double HKT {} ({diag} diagonal candidates non-Kaehler)",
            flag_str(k),
            flag_str(h)
        ),
        k == Some(false) && h == Some(false),
    ));
    Ok(())
}

fn lift_pairs() -> Result<Vec<(String, GeomStructure, GeomStructure)>, Error> {
    let mut out = Vec::new();
    for (e, d) in admissible_pairs()? {
        let t = tangent_algebra(&e.structure, &d)?;
        out.push((format!("T_D {}", e.name), e.structure, t));
    }
    let h = builtin("heis8")?;
    let rho = h.quat_rep("rho1").expect("catalog rep").clone();
    let t = rho_extension(&h.structure, &rho)?;
    out.push(("T_rho heis8".into(), h.structure, t));
    Ok(out)
}

fn ac7_lifts(out: &mut Vec<Check>) -> Result<(), Error> {
    let pres = "\"is strong  (respectively  weak, hyper-K\\\"ahler, balanced) if and only if\"";
    for (label, base, lift) in lift_pairs()? {
        let rb = classify(&base)?;
        let rl = classify(&lift)?;
        let show = |r: &Report| {
            format!(
                "strong {} weak {} hyper_kahler {} balanced {}",
                flag_str(r.strong),
                flag_str(r.weak),
                flag_str(r.hyper_kahler),
                flag_str(r.balanced)
            )
        };
        let same = (rb.strong, rb.weak, rb.hyper_kahler, rb.balanced)
            == (rl.strong, rl.weak, rl.hyper_kahler, rl.balanced);
        out.push(check(
            format!("(d) {label}: flags preserved"),
            pres,
            show(&rb),
            show(&rl),
            same,
        ));
        let n = lift.dim();
        let emb = |f: &Option<KForm>| f.as_ref().map(|f| f.embed(n));
        let ok = emb(&rb.c) == rl.c && emb(&rb.dc) == rl.dc && emb(&rb.theta) == rl.theta;
        out.push(check(
            format!("(e) {label}: c~, dc~, theta~ are the base forms on the first summand"),
            "\"\\tilde c ((X_1, X_2), (Y_1, Y_2), (Z_1, Z_2)) = c (X_1, Y_1, Z_1)\", \"\\tilde \\theta=\\theta \\circ p\"",
            "entrywise equal",
            if ok { "entrywise equal".into() } else { format!("c~ = {:?}", rl.c) },
            ok,
        ));
    }
    Ok(())
}

fn ac7_basics(out: &mut Vec<Check>) -> Result<(), Error> {
    let (mut d2_bad, mut monomials) = (Vec::new(), 0usize);
    let (mut bismut_bad, mut bismut_n) = (Vec::new(), 0usize);
    let (mut obata_bad, mut obata_n) = (Vec::new(), 0usize);
    for name in catalog::BUILTIN_NAMES {
        let e = builtin(name)?;
        let s = &e.structure;
        let alg = s.algebra();
        let n = s.dim();
        let top = if n <= 8 { n } else { 3 };
        for k in 0..=top {
            for idx in hkt_core::forms::subsets(n, k) {
                let one: Vec<usize> = idx.iter().map(|i| i + 1).collect();
                let f = KForm::monomial(n, &one, Scalar::one())?;
                monomials += 1;
                if !f.ce_differential(alg).ce_differential(alg).is_zero() {
                    d2_bad.push(format!("{name} e^{one:?}"));
                }
            }
        }
        let g = s.metric();
        for (a, j) in s.complex_structures().iter().enumerate() {
            if !nijenhuis(j, alg)?.is_zero() || g.is_none() {
                continue;
            }
            bismut_n += 1;
            // bismut() itself rejects a result that is not metric, not
            // J-parallel or whose torsion is not a 3-form
            match bismut(s, a + 1) {
                Ok(b) => {
                    if b.skew_witness(g.expect("checked")).is_some()
                        || b.complex_witness(std::slice::from_ref(j)).is_some()
                    {
                        bismut_bad.push(format!("{name} J{}", a + 1));
                    }
                }
                Err(err) => bismut_bad.push(format!("{name} J{}: {err}", a + 1)),
            }
        }
        if s.is_triple() {
            obata_n += 1;
            match obata(s) {
                Ok(o) => {
                    if torsion(&o, alg).witness().is_some()
                        || o.complex_witness(s.complex_structures()).is_some()
                    {
                        obata_bad.push(name.to_string());
                    }
                }
                Err(err) => obata_bad.push(format!("{name}: {err}")),
            }
        }
    }
    let join = |v: &[String]| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.join(", ")
        }
    };
    out.push(check(
        "(f) d^2 = 0 on basis monomials of every catalog entry",
        "(definitional)",
        format!("0 failures of {monomials}"),
        format!("failures: {}", join(&d2_bad)),
        d2_bad.is_empty(),
    ));
    out.push(check(
        "(f) Bismut connection: metric, J-parallel, skew torsion",
        "(definitional) Bismut formula",
        format!("{bismut_n} connections valid"),
        format!("failures: {}", join(&bismut_bad)),
        bismut_bad.is_empty(),
    ));
    out.push(check(
        "(f) Obata connection unique, torsion-free, parallelizes the triple",
        "(definitional)",
        format!("{obata_n} unique solutions"),
        format!("failures: {}", join(&obata_bad)),
        obata_bad.is_empty(),
    ));
    Ok(())
}
