//! Built-in structures, encoded literally from their published presentation.
//!
//! Constructed entries (`*_tangent`, `heis8_rho12`) are written out by hand
//! rather than computed, so comparing them with the output of
//! [`crate::constructions`] is a genuine check.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::{lift_connection, QuatRep};
use crate::error::Error;
use crate::forms::KForm;
use crate::geometry::{ComplexStructure, Connection, GeomStructure, Metric};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Stated in the source publication; the citation quotes it.
    Published,
    /// Immediate from the definitions.
    Definitional,
    /// Not stated in the source; established by an independent computation.
    Computed,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Definitional => "definitional",
            Provenance::Computed => "computed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "published" => Some(Provenance::Published),
            "definitional" => Some(Provenance::Definitional),
            "computed" => Some(Provenance::Computed),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedValue {
    Flag(bool),
    Form(KForm),
}

/// One expected property of an entry, e.g. `c = 2*e^{256}` or `hkt = true`.
/// `key` is a [`crate::geometry::Report`] field name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub key: String,
    pub value: ExpectedValue,
    pub provenance: Provenance,
    pub citation: String,
}

/// How a constructed entry relates to another entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    Tangent,
    Rho,
    KaehlerDouble,
    Iterate,
}

impl ConstructionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionKind::Tangent => "tangent",
            ConstructionKind::Rho => "rho",
            ConstructionKind::KaehlerDouble => "kaehler-double",
            ConstructionKind::Iterate => "iterate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "tangent" => Some(ConstructionKind::Tangent),
            "rho" => Some(ConstructionKind::Rho),
            "kaehler-double" => Some(ConstructionKind::KaehlerDouble),
            "iterate" => Some(ConstructionKind::Iterate),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Origin {
    pub kind: ConstructionKind,
    pub base: String,
    /// Name of the connection or representation in the base entry.
    pub using: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub structure: GeomStructure,
    pub connections: Vec<(String, Connection)>,
    pub quat_reps: Vec<(String, QuatRep)>,
    pub parameters: Vec<(String, Scalar)>,
    pub origin: Option<Origin>,
    pub expected: Vec<Expectation>,
}

impl CatalogEntry {
    pub fn connection(&self, name: &str) -> Option<&Connection> {
        self.connections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }

    pub fn quat_rep(&self, name: &str) -> Option<&QuatRep> {
        self.quat_reps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
    }

    pub fn expectation(&self, key: &str) -> Option<&Expectation> {
        self.expected.iter().find(|e| e.key == key)
    }
}

pub const BUILTIN_NAMES: [&str; 11] = [
    "sp1_u1",
    "aff_C",
    "alg3",
    "alg4",
    "heis8",
    "heis8_rho12",
    "sp1u1_tangent",
    "e2_central",
    "e2_tangent",
    "su21_solv",
    "su21_tangent",
];

pub fn builtin(name: &str) -> Result<CatalogEntry, Error> {
    match name {
        "sp1_u1" => sp1_u1(),
        "aff_C" => aff_c(),
        "alg3" => alg3(),
        "alg4" => alg4(),
        "heis8" => heis8(),
        "heis8_rho12" => heis8_rho12(),
        "sp1u1_tangent" => sp1u1_tangent(),
        "e2_central" => e2_central(),
        "e2_tangent" => e2_tangent(),
        "su21_solv" => su21_solv(),
        "su21_tangent" => su21_tangent(),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn frac(p: i64, q: i64) -> Scalar {
    Scalar::frac(p, q)
}

/// `(1/2)·√2`-style coefficient `(p/q)√2`.
fn root2(p: i64, q: i64) -> Scalar {
    Scalar::quad(0, 1, p, q)
}

/// Endomorphism from 1-based images: `(src, dst, c)` adds `c e_dst` to the
/// image of `e_src`.
fn endo(n: usize, images: &[(usize, usize, Scalar)]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (src, dst, c) in images {
        m.set(dst - 1, src - 1, c.clone());
    }
    m
}

/// Complex structure from `J e_a = c e_b`, completed by `J e_b = −c⁻¹ e_a`.
fn cplx(n: usize, pairs: &[(usize, usize, Scalar)]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (a, b, c) in pairs {
        m.set(b - 1, a - 1, c.clone());
        m.set(a - 1, b - 1, -&c.try_inv().expect("nonzero coefficient"));
    }
    m
}

type Bracket = (usize, usize, Vec<(usize, Scalar)>);

fn br(i: usize, j: usize, out: &[(usize, Scalar)]) -> Bracket {
    (i, j, out.to_vec())
}

fn conn(maps: Vec<Matrix>) -> Connection {
    Connection::new(maps).expect("catalog connection has square blocks")
}

fn flag(key: &str, v: bool, p: Provenance, cite: &str) -> Expectation {
    Expectation {
        key: key.to_string(),
        value: ExpectedValue::Flag(v),
        provenance: p,
        citation: cite.to_string(),
    }
}

fn form(
    key: &str,
    dim: usize,
    text: &str,
    degree: usize,
    p: Provenance,
    cite: &str,
) -> Expectation {
    Expectation {
        key: key.to_string(),
        value: ExpectedValue::Form(KForm::parse(text, dim, degree).expect("catalog form literal")),
        provenance: p,
        citation: cite.to_string(),
    }
}

fn entry(name: &str, structure: GeomStructure) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        structure,
        connections: Vec::new(),
        quat_reps: Vec::new(),
        parameters: Vec::new(),
        origin: None,
        expected: Vec::new(),
    }
}

fn origin(kind: ConstructionKind, base: &str, using: &str) -> Option<Origin> {
    Some(Origin {
        kind,
        base: base.to_string(),
        using: using.to_string(),
    })
}

use Provenance::{Computed, Published};

// ---------------------------------------------------------------- sp(1) ⊕ u(1)

fn sp1_u1_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        [
            br(1, 2, &[(3, int(1))]),
            br(2, 3, &[(1, int(1))]),
            br(1, 3, &[(2, int(-1))]),
        ],
    )
    .expect("literal brackets")
}

fn sp1_u1_triple() -> (Matrix, Matrix) {
    let j1 = cplx(4, &[(1, 4, int(-1)), (2, 3, int(1))]);
    let j2 = cplx(4, &[(1, 3, int(-1)), (2, 4, int(-1))]);
    (j1, j2)
}

/// `J'_1, J'_2, J'_3` spanning the commutant of the triple on `sp(1) ⊕ u(1)`
/// modulo the identity.
pub fn sp1_u1_jprime() -> [Matrix; 3] {
    [
        cplx(4, &[(1, 4, int(1)), (2, 3, int(1))]),
        cplx(4, &[(1, 3, int(-1)), (2, 4, int(1))]),
        cplx(4, &[(1, 2, int(1)), (3, 4, int(1))]),
    ]
}

/// `D_{e_i} = ½ J'_i` for `i ≤ 3`, `D_{e_4} = 0`.
pub fn sp1_u1_projection() -> Connection {
    let h = frac(1, 2);
    let [a, b, c] = sp1_u1_jprime();
    conn(vec![
        a.scale(&h),
        b.scale(&h),
        c.scale(&h),
        Matrix::zeros(4, 4),
    ])
}

fn sp1_u1() -> Result<CatalogEntry, Error> {
    let (j1, j2) = sp1_u1_triple();
    let s = GeomStructure::new(
        sp1_u1_algebra(),
        Some(Metric::euclidean(4)),
        ComplexStructure::triple_from(j1, j2),
    )?;
    let mut e = entry("sp1_u1", s);
    e.connections.push(("D".into(), sp1_u1_projection()));
    let cite = "It follows by [GP] that ({J_alpha}, g) is strong HKT";
    e.expected = vec![
        flag("hkt", true, Published, cite),
        flag("strong", true, Published, cite),
    ];
    Ok(e)
}

/// The eight-dimensional structure equations exactly as printed, as
/// `(i, j, k, c)` meaning `[e_i, e_j] = c e_k`. The entry `[e3, e7]` carries
/// the printed sign; it violates Jacobi on `(e1, e2, e7)`, which forces
/// `[e3, e7] = ½ e8`.
pub fn sp1u1_tangent_printed() -> Vec<(usize, usize, usize, Scalar)> {
    let h = frac(1, 2);
    let mh = frac(-1, 2);
    vec![
        (1, 2, 3, int(1)),
        (2, 3, 1, int(1)),
        (1, 3, 2, int(-1)),
        // [e1,e8] = -[e2,e7] = [e3,e6] = -1/2 e5
        (1, 8, 5, mh.clone()),
        (2, 7, 5, h.clone()),
        (3, 6, 5, mh.clone()),
        // [e1,e7] = [e2,e8] = -[e3,e5] = -1/2 e6
        (1, 7, 6, mh.clone()),
        (2, 8, 6, mh.clone()),
        (3, 5, 6, h.clone()),
        // [e1,e6] = -[e2,e5] = -[e3,e8] = 1/2 e7
        (1, 6, 7, h.clone()),
        (2, 5, 7, mh.clone()),
        (3, 8, 7, mh.clone()),
        // [e1,e5] = [e2,e6] = -[e3,e7] = 1/2 e8
        (1, 5, 8, h.clone()),
        (2, 6, 8, h),
        (3, 7, 8, mh),
    ]
}

fn sp1u1_tangent() -> Result<CatalogEntry, Error> {
    let brackets = sp1u1_tangent_printed().into_iter().map(|(i, j, k, c)| {
        // printed sign of [e3, e7] corrected; see sp1u1_tangent_printed
        let c = if (i, j) == (3, 7) { -c } else { c };
        (i, j, vec![(k, c)])
    });
    let alg = LieAlgebra::from_brackets(8, brackets)?;
    let (j1, j2) = sp1_u1_triple();
    let s = GeomStructure::new(
        alg,
        Some(Metric::euclidean(8)),
        ComplexStructure::triple_from(Matrix::block_diag(&j1, &j1), Matrix::block_diag(&j2, &j2)),
    )?;
    let mut e = entry("sp1u1_tangent", s);
    e.connections
        .push(("D_lift".into(), lift_connection(&sp1_u1_projection())));
    e.origin = origin(ConstructionKind::Tangent, "sp1_u1", "D");
    let cite = "give a left-invariant strong HKT structure";
    e.expected = vec![
        flag("hkt", true, Published, cite),
        flag("strong", true, Published, cite),
        form("dc", 8, "0", 4, Published, cite),
    ];
    Ok(e)
}

// ---------------------------------------------------------------- aff(C), (3), (4)

/// `J_1 e_1 = −e_4, J_1 e_2 = e_3, J_2 e_1 = e_2, J_2 e_3 = −e_4`.
fn standard_4d_triple() -> (Matrix, Matrix) {
    (
        cplx(4, &[(1, 4, int(-1)), (2, 3, int(1))]),
        cplx(4, &[(1, 2, int(1)), (3, 4, int(-1))]),
    )
}

/// The endomorphisms `J'_α` used for `aff(C)` and algebra (3).
pub fn aff_c_jprime() -> [Matrix; 3] {
    [
        cplx(4, &[(1, 4, int(1)), (2, 3, int(1))]),
        cplx(4, &[(1, 2, int(-1)), (3, 4, int(-1))]),
        cplx(4, &[(1, 3, int(-1)), (2, 4, int(1))]),
    ]
}

/// The endomorphisms `J'_α` used for algebra (4).
pub fn alg4_jprime() -> [Matrix; 3] {
    [
        cplx(4, &[(1, 4, int(-1)), (2, 3, int(-1))]),
        cplx(4, &[(1, 2, root2(-1, 2)), (4, 3, root2(1, 2))]),
        cplx(4, &[(1, 3, root2(1, 2)), (4, 2, root2(1, 2))]),
    ]
}

fn combo(jp: &[Matrix; 3], a: [&Scalar; 3]) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    for (j, c) in jp.iter().zip(a) {
        m.add_scaled(c, j);
    }
    m
}

/// `D_{e_1} = D_{e_2} = 0`, `D_{e_3} = Σ a_α J'_α`, `D_{e_4} = b D_{e_3}`.
pub fn aff_c_family(a1: &Scalar, a2: &Scalar, a3: &Scalar, b: &Scalar) -> Connection {
    let d3 = combo(&aff_c_jprime(), [a1, a2, a3]);
    let d4 = d3.scale(b);
    conn(vec![Matrix::zeros(4, 4), Matrix::zeros(4, 4), d3, d4])
}

/// `D_{e_1} = Σ a_α J'_α`, all other directions zero.
pub fn first_direction_family(
    jp: &[Matrix; 3],
    a1: &Scalar,
    a2: &Scalar,
    a3: &Scalar,
) -> Connection {
    let z = Matrix::zeros(4, 4);
    conn(vec![combo(jp, [a1, a2, a3]), z.clone(), z.clone(), z])
}

fn params(names: &[&str], values: &[i64]) -> Vec<(String, Scalar)> {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| (n.to_string(), int(*v)))
        .collect()
}

fn aff_c() -> Result<CatalogEntry, Error> {
    let alg = LieAlgebra::from_brackets(
        4,
        [
            br(1, 3, &[(1, int(1))]),
            br(2, 4, &[(1, int(-1))]),
            br(2, 3, &[(2, int(1))]),
            br(1, 4, &[(2, int(1))]),
        ],
    )?;
    let (j1, j2) = standard_4d_triple();
    let s = GeomStructure::new(
        alg,
        Some(Metric::euclidean(4)),
        ComplexStructure::triple_from(j1, j2),
    )?;
    let mut e = entry("aff_C", s);
    e.parameters = params(&["a1", "a2", "a3", "b"], &[1, 0, 0, 1]);
    e.connections
        .push(("D".into(), aff_c_family(&int(1), &int(0), &int(0), &int(1))));
    e.expected = vec![
        flag(
            "hkt",
            true,
            Published,
            "defines a weak HKT structure on aff(C)",
        ),
        flag(
            "weak",
            true,
            Published,
            "defines a weak HKT structure on aff(C)",
        ),
        flag(
            "abelian_hypercomplex",
            true,
            Published,
            "any hypercomplex structure on aff(C) is abelian",
        ),
    ];
    Ok(e)
}

fn alg3() -> Result<CatalogEntry, Error> {
    let alg = LieAlgebra::from_brackets(
        4,
        [
            br(1, 2, &[(2, int(1))]),
            br(1, 3, &[(3, int(1))]),
            br(1, 4, &[(4, int(1))]),
        ],
    )?;
    let (j1, j2) = standard_4d_triple();
    let s = GeomStructure::new(
        alg,
        Some(Metric::euclidean(4)),
        ComplexStructure::triple_from(j1, j2),
    )?;
    let mut e = entry("alg3", s);
    e.parameters = params(&["a1", "a2", "a3"], &[1, 0, 0]);
    e.connections.push((
        "D".into(),
        first_direction_family(&aff_c_jprime(), &int(1), &int(0), &int(0)),
    ));
    let cite = "For the Lie algebra (3) we can consider the weak HKT structure";
    e.expected = vec![
        flag("hkt", true, Published, cite),
        flag("weak", true, Published, cite),
    ];
    Ok(e)
}

/// The Obata connection of algebra (4) as published:
/// `∇_{e1} = ¾ id, ∇_{e2} = −(√2/4) J'_2, ∇_{e3} = (√2/4) J'_3, ∇_{e4} = ¼ J'_1`.
pub fn alg4_published_obata() -> Connection {
    let [p1, p2, p3] = alg4_jprime();
    conn(vec![
        Matrix::scalar_multiple(4, &frac(3, 4)),
        p2.scale(&root2(-1, 4)),
        p3.scale(&root2(1, 4)),
        p1.scale(&frac(1, 4)),
    ])
}

fn alg4() -> Result<CatalogEntry, Error> {
    let alg = LieAlgebra::from_brackets(
        4,
        [
            br(1, 2, &[(2, frac(1, 2))]),
            br(1, 3, &[(3, frac(1, 2))]),
            br(2, 3, &[(4, int(1))]),
            br(1, 4, &[(4, int(1))]),
        ],
    )?;
    let j1 = cplx(4, &[(1, 4, int(1)), (2, 3, int(-1))]);
    let j2 = cplx(4, &[(1, 2, root2(1, 2)), (4, 3, root2(1, 2))]);
    let g = Metric::new(Matrix::diagonal(&[int(1), int(2), int(2), int(1)]))?;
    let s = GeomStructure::new(alg, Some(g), ComplexStructure::triple_from(j1, j2))?;
    let mut e = entry("alg4", s);
    e.parameters = params(&["a1", "a2", "a3"], &[1, 0, 0]);
    e.connections.push((
        "D".into(),
        first_direction_family(&alg4_jprime(), &int(1), &int(0), &int(0)),
    ));
    e.connections.push(("obata".into(), alg4_published_obata()));
    e.expected = vec![
        flag(
            "hkt",
            true,
            Computed,
            "the tangent lift is stated weak HKT and D is skew, so the base is HKT by the lift theorem",
        ),
        flag("balanced", false, Published, "we observe that g (hence g~) is not balanced"),
    ];
    Ok(e)
}

// ---------------------------------------------------------------- Heisenberg type

fn heis8_brackets() -> Vec<Bracket> {
    vec![
        br(5, 6, &[(2, int(1))]),
        br(5, 7, &[(3, int(1))]),
        br(5, 8, &[(4, int(1))]),
        br(6, 7, &[(4, int(-1))]),
        br(6, 8, &[(3, int(1))]),
        br(7, 8, &[(2, int(-1))]),
    ]
}

/// Sparse `(row, col, value)` entries.
type Entries = Vec<(usize, usize, Scalar)>;

fn heis8_pairs() -> (Entries, Entries) {
    (
        vec![
            (1, 2, int(1)),
            (3, 4, int(1)),
            (5, 6, int(1)),
            (7, 8, int(1)),
        ],
        vec![
            (1, 3, int(1)),
            (2, 4, int(-1)),
            (5, 7, int(1)),
            (6, 8, int(-1)),
        ],
    )
}

/// `ρ(e_1)` as printed; `ρ(e_k) = 0` for `k ≥ 2`.
pub fn heis8_rho() -> QuatRep {
    let r1 = Matrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    let mut ms = vec![r1];
    ms.extend((1..8).map(|_| Matrix::zeros(4, 4)));
    QuatRep::new(1, ms).expect("4x4 blocks")
}

fn heis8() -> Result<CatalogEntry, Error> {
    let alg = LieAlgebra::from_brackets(8, heis8_brackets())?;
    let (p1, p2) = heis8_pairs();
    let s = GeomStructure::new(
        alg,
        Some(Metric::euclidean(8)),
        ComplexStructure::triple_from(cplx(8, &p1), cplx(8, &p2)),
    )?;
    let mut e = entry("heis8", s);
    e.quat_reps.push(("rho1".into(), heis8_rho()));
    e.expected = vec![
        flag("hkt", true, Published, "is an HKT Lie algebra"),
        flag(
            "abelian_hypercomplex",
            true,
            Published,
            "{J_alpha} is an abelian hypercomplex structure",
        ),
        flag("balanced", true, Published, "implies that g is balanced"),
        form("theta", 8, "0", 1, Published, "implies that g is balanced"),
    ];
    Ok(e)
}

fn heis8_rho12() -> Result<CatalogEntry, Error> {
    let mut brackets = heis8_brackets();
    // [e1, f] = ρ(e1) f with f1..f4 = e9..e12
    brackets.push(br(1, 9, &[(10, int(1))]));
    brackets.push(br(1, 10, &[(9, int(-1))]));
    brackets.push(br(1, 11, &[(12, int(-1))]));
    brackets.push(br(1, 12, &[(11, int(1))]));
    let alg = LieAlgebra::from_brackets(12, brackets)?;
    let (mut p1, mut p2) = heis8_pairs();
    p1.extend([(9, 10, int(1)), (11, 12, int(1))]);
    p2.extend([(9, 11, int(1)), (10, 12, int(-1))]);
    let s = GeomStructure::new(
        alg,
        Some(Metric::euclidean(12)),
        ComplexStructure::triple_from(cplx(12, &p1), cplx(12, &p2)),
    )?;
    let mut e = entry("heis8_rho12", s);
    e.origin = origin(ConstructionKind::Rho, "heis8", "rho1");
    let cite = "is a 12-dimensional balanced HKT Lie algebra";
    e.expected = vec![
        flag("hkt", true, Published, cite),
        flag("balanced", true, Published, cite),
        flag(
            "abelian_hypercomplex",
            false,
            Published,
            "{J~_alpha} is not abelian on T_rho g",
        ),
        flag(
            "weak",
            true,
            Computed,
            "base is weak (abelian hypercomplex) and the lift preserves strong/weak",
        ),
    ];
    Ok(e)
}

// ---------------------------------------------------------------- Kähler doubles

fn double_triple(j: &Matrix) -> (Matrix, Matrix) {
    let n = j.rows();
    let id = Matrix::identity(n);
    let z = Matrix::zeros(n, n);
    (
        Matrix::block_diag(j, &-j),
        Matrix::from_blocks(&z, &id, &-&id, &z),
    )
}

/// Flat torsion-free complex connection on `R ⊕ e(2)`.
pub fn e2_connection() -> Connection {
    let d1 = Matrix::diagonal(&[int(1), int(1), int(0), int(0)]);
    let d2 = Matrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    conn(vec![d1, d2, Matrix::zeros(4, 4), Matrix::zeros(4, 4)])
}

fn e2_j() -> Matrix {
    cplx(4, &[(1, 2, int(1)), (3, 4, int(1))])
}

fn e2_central() -> Result<CatalogEntry, Error> {
    let alg = LieAlgebra::from_brackets(4, [br(2, 3, &[(4, int(1))]), br(2, 4, &[(3, int(-1))])])?;
    let s = GeomStructure::new(
        alg,
        Some(Metric::euclidean(4)),
        ComplexStructure::Single(e2_j()),
    )?;
    let mut e = entry("e2_central", s);
    e.connections.push(("D".into(), e2_connection()));
    e.expected = vec![flag(
        "kahler",
        true,
        Published,
        "It turns out that (g, J, g) is Kaehler",
    )];
    Ok(e)
}

fn e2_tangent() -> Result<CatalogEntry, Error> {
    // [(X1,X2),(Y1,Y2)] = ([X1,Y1], D_X1 Y2 - D_Y1 X2) written out
    let alg = LieAlgebra::from_brackets(
        8,
        [
            br(2, 3, &[(4, int(1))]),
            br(2, 4, &[(3, int(-1))]),
            br(1, 5, &[(5, int(1))]),
            br(1, 6, &[(6, int(1))]),
            br(2, 5, &[(6, int(1))]),
            br(2, 6, &[(5, int(-1))]),
            br(2, 7, &[(8, int(1))]),
            br(2, 8, &[(7, int(-1))]),
        ],
    )?;
    // J1 e1 = e2, J1 e3 = e4, J1 e5 = -e6, J1 e7 = -e8; J2 e_i = -e_{i+4}
    let j1 = cplx(
        8,
        &[
            (1, 2, int(1)),
            (3, 4, int(1)),
            (5, 6, int(-1)),
            (7, 8, int(-1)),
        ],
    );
    let j2 = cplx(
        8,
        &[
            (1, 5, int(-1)),
            (2, 6, int(-1)),
            (3, 7, int(-1)),
            (4, 8, int(-1)),
        ],
    );
    let s = GeomStructure::new(
        alg,
        Some(Metric::euclidean(8)),
        ComplexStructure::triple_from(j1, j2),
    )?;
    let mut e = entry("e2_tangent", s);
    e.origin = origin(ConstructionKind::KaehlerDouble, "e2_central", "D");
    e.expected = vec![
        form(
            "omega1",
            8,
            "e^{12} + e^{34} - e^{56} - e^{78}",
            2,
            Published,
            "omega_1 = e^{12}+e^{34}-e^{56}-e^{78}",
        ),
        form(
            "c",
            8,
            "2*e^{256}",
            3,
            Published,
            "c=-J_1 d\\omega _1=2\\, e^{256}",
        ),
        form("dc", 8, "-4*e^{1256}", 4, Published, "dc = - 4\\, e^{1256}"),
        form(
            "theta",
            8,
            "2*e^{1}",
            1,
            Published,
            "the Lee form theta= 2e^1 is closed",
        ),
        form(
            "dtheta",
            8,
            "0",
            2,
            Published,
            "the Lee form theta= 2e^1 is closed",
        ),
        form(
            "dstar_c",
            8,
            "0",
            2,
            Published,
            "It turns out that c is co-closed",
        ),
        flag(
            "hkt",
            true,
            Published,
            "implies that (T_D g, {J_alpha}, g~) is HKT",
        ),
        flag("weak", true, Published, "hence c is not closed"),
        flag(
            "balanced",
            false,
            Published,
            "the metric g~ is not balanced",
        ),
        flag(
            "conformally_balanced",
            true,
            Published,
            "g~ is conformally balanced",
        ),
        flag(
            "torsion_coclosed",
            true,
            Published,
            "It turns out that c is co-closed",
        ),
    ];
    Ok(e)
}

/// The connection on the SU(2,1) solvable model exactly as printed.
pub fn su21_connection_printed() -> Connection {
    su21_connection(frac(-1, 2))
}

/// The printed connection with `D_{e1} e_1` and `D_{e2} e_2` reflected so that
/// it commutes with `J`; see the catalog notes in the README.
pub fn su21_connection_complex() -> Connection {
    su21_connection(frac(1, 2))
}

fn su21_connection(corner: Scalar) -> Connection {
    let d1 = endo(4, &[(2, 3, frac(1, 2)), (1, 4, corner.clone())]);
    let d2 = endo(4, &[(1, 3, frac(-1, 2)), (2, 4, corner)]);
    let d4 = Matrix::diagonal(&[frac(1, 2), frac(1, 2), int(1), int(1)]);
    conn(vec![d1, d2, Matrix::zeros(4, 4), d4])
}

fn su21_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        [
            br(1, 4, &[(1, frac(-1, 2))]),
            br(2, 4, &[(2, frac(-1, 2))]),
            br(1, 2, &[(3, int(1))]),
            br(3, 4, &[(3, int(-1))]),
        ],
    )
    .expect("literal brackets")
}

fn su21_j() -> Matrix {
    cplx(4, &[(1, 2, int(1)), (3, 4, int(-1))])
}

fn su21_solv() -> Result<CatalogEntry, Error> {
    let s = GeomStructure::new(
        su21_algebra(),
        Some(Metric::euclidean(4)),
        ComplexStructure::Single(su21_j()),
    )?;
    let mut e = entry("su21_solv", s);
    e.connections.push(("D".into(), su21_connection_printed()));
    e.connections
        .push(("D_complex".into(), su21_connection_complex()));
    e.expected = vec![flag(
        "kahler",
        true,
        Published,
        "(g, J, g) is Kaehler non-flat",
    )];
    Ok(e)
}

fn su21_tangent() -> Result<CatalogEntry, Error> {
    let mut brackets: Vec<Bracket> = su21_algebra().brackets();
    // [e_i, e_{4+m}] = D_{e_i} e_m shifted into the second copy
    let d = su21_connection_complex();
    for i in 0..4 {
        for m in 0..4 {
            let col = d.get(i).column(m);
            let out: Vec<(usize, Scalar)> = col
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(a, c)| (a + 5, c))
                .collect();
            if !out.is_empty() {
                brackets.push((i + 1, m + 5, out));
            }
        }
    }
    let alg = LieAlgebra::from_brackets(8, brackets)?;
    let (j1, j2) = double_triple(&su21_j());
    let s = GeomStructure::new(
        alg,
        Some(Metric::euclidean(8)),
        ComplexStructure::triple_from(j1, j2),
    )?;
    let mut e = entry("su21_tangent", s);
    e.origin = origin(ConstructionKind::KaehlerDouble, "su21_solv", "D_complex");
    let c_cite = "c=-J_1 d\\omega _1=- \\frac12 \\, e^{268} - \\frac12 \\, e^{158} + 2 \\, e^{378} + \\frac12 \\, e^{167} - \\frac12 \\, e^{257} - e^{356}";
    e.expected = vec![
        form(
            "omega1",
            8,
            "e^{12} - e^{34} - e^{56} + e^{78}",
            2,
            Published,
            "omega_1 = e^{12}-e^{34}-e^{56}+e^{78}",
        ),
        form(
            "c",
            8,
            "-1/2*e^{268} - 1/2*e^{158} + 2*e^{378} + 1/2*e^{167} - 1/2*e^{257} - e^{356}",
            3,
            Published,
            c_cite,
        ),
        form(
            "theta",
            8,
            "-3*e^{4}",
            1,
            Published,
            "the Lee form theta = -3e^4 is closed",
        ),
        form(
            "dtheta",
            8,
            "0",
            2,
            Published,
            "the Lee form theta = -3e^4 is closed",
        ),
        flag(
            "hkt",
            true,
            Published,
            "implies that (T_D g, {J_alpha}, g~) is HKT",
        ),
        flag(
            "weak",
            true,
            Published,
            "c is not closed (hence the HKT structure is weak)",
        ),
        flag(
            "balanced",
            false,
            Published,
            "the metric g~ is not balanced",
        ),
    ];
    Ok(e)
}

/// Builds a structure with the same data on another triple; used by tests
/// that need a structure and its Kähler forms side by side.
pub fn kaehler_double_triple(j: &Matrix) -> (Matrix, Matrix) {
    double_triple(j)
}
