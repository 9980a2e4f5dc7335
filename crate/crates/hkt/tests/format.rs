use hkt::format::{self, FormatError, LoadError, RawEntry};
use hkt_core::catalog::{
    self, CatalogEntry, Expectation, ExpectedValue, Provenance, BUILTIN_NAMES,
};
use hkt_core::geometry::{GeomStructure, Metric};
use hkt_core::{Error, Matrix, Scalar};
use proptest::prelude::*;

fn builtin(name: &str) -> CatalogEntry {
    catalog::builtin(name).unwrap()
}

const TRUNCATED: &str = r#"{
  "name": "truncated",
  "dim": 3,
  "scalars": "Q(sqrt2)",
  "brackets": [
    {"i": 1, "j": 2, "out": [{"k": 3, "c": "1"}]},
    {"i": 2, "j": 3, "out": [{"k": 2, "c": "1"}]}
  ]
}
"#;

#[test]
fn every_builtin_round_trips() {
    for name in BUILTIN_NAMES {
        let e = builtin(name);
        let text = format::serialize(&e);
        let back = format::parse(&text).unwrap_or_else(|err| panic!("{name}: {err}"));
        assert_eq!(back, e, "{name}");
        assert_eq!(format::serialize(&back), text, "{name} is not byte-stable");
    }
}

#[test]
fn sp1_u1_serializes_its_connection_and_parameters() {
    let text = format::serialize(&builtin("sp1_u1"));
    assert!(text.contains("\"scalars\": \"Q(sqrt2)\""));
    assert!(text.contains("\"name\": \"D\""));
    let aff = format::serialize(&builtin("aff_C"));
    assert!(aff.contains("\"a1\""));
}

#[test]
fn j3_is_derived_when_absent() {
    let e = builtin("aff_C");
    let raw = RawEntry::from_entry(&e);
    assert!(raw.complex.as_ref().unwrap().j3.is_none());
    assert_eq!(
        raw.build().unwrap().structure.j(3).unwrap(),
        e.structure.j(3).unwrap()
    );
}

#[test]
fn truncated_bracket_parses_then_fails_jacobi() {
    let raw = format::parse_raw(TRUNCATED).unwrap();
    let d = raw.decode().unwrap();
    let defect = d.algebra.jacobi_defect();
    assert_eq!(defect.witness, Some((1, 2, 3)));
    assert_eq!(defect.residual, Scalar::one());
    assert!(matches!(
        format::parse(TRUNCATED),
        Err(LoadError::Semantic(Error::JacobiViolation {
            i: 1,
            j: 2,
            k: 3
        }))
    ));
}

#[test]
fn syntax_errors_carry_a_position() {
    match format::parse_raw("") {
        Err(FormatError::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 0)),
        other => panic!("{other:?}"),
    }
    let bad = TRUNCATED.replace("\"c\": \"1\"}]},", "\"c\": \"1/0\"}]},");
    match format::parse_raw(&bad) {
        Err(FormatError::Syntax { line, message, .. }) => {
            assert_eq!(line, 6);
            assert!(message.contains("1/0"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    let unknown = TRUNCATED.replace("\"dim\"", "\"dimension\"");
    assert!(matches!(
        format::parse_raw(&unknown),
        Err(FormatError::Syntax { .. })
    ));
}

#[test]
fn semantic_errors_are_reported_separately() {
    let mut raw = RawEntry::from_entry(&builtin("aff_C"));
    let mut neg = raw.clone();
    neg.metric.as_mut().unwrap()[0][0] = format::Lit(Scalar::from_int(-1));
    assert!(matches!(
        neg.build(),
        Err(LoadError::Semantic(Error::MetricNotPositive { order: 1 }))
    ));
    let cx = raw.complex.as_mut().unwrap();
    cx.j1 = cx
        .j1
        .iter()
        .map(|r| r.iter().map(|_| format::Lit(Scalar::zero())).collect())
        .collect();
    assert!(matches!(
        raw.build(),
        Err(LoadError::Semantic(Error::NotAlmostComplex { .. }))
    ));
}

#[test]
fn wrong_matrix_shape_is_a_field_error() {
    let mut raw = RawEntry::from_entry(&builtin("sp1_u1"));
    raw.connections[0].matrices.pop();
    match raw.build() {
        Err(LoadError::Format(FormatError::Field { path, .. })) => {
            assert!(path.contains("connections"), "{path}")
        }
        other => panic!("{other:?}"),
    }
}

fn entry_strategy() -> impl Strategy<Value = CatalogEntry> {
    let names = prop::sample::select(BUILTIN_NAMES.to_vec());
    (
        names,
        prop::collection::vec(-2i64..=2, 144),
        "[a-z][a-z0-9_]{0,12}",
        any::<bool>(),
        -5i64..=5,
    )
        .prop_map(|(name, m, label, flag, p)| {
            let mut e = builtin(name);
            let s = &e.structure;
            let n = s.dim();
            let mm = Matrix::from_fn(n, n, |r, c| Scalar::from_int(m[(r * n + c) % m.len()]));
            let base = &(&mm.transpose() * &mm) + &Matrix::identity(n);
            let mut g = base.clone();
            for j in s.complex_structures() {
                g = &g + &(&(&j.transpose() * &base) * j);
            }
            e.structure = GeomStructure::new(
                s.algebra().clone(),
                Some(Metric::new(g).unwrap()),
                s.complex().clone(),
            )
            .unwrap();
            e.name = label;
            e.parameters.push(("t".into(), Scalar::quad(p, 3, 1, 2)));
            e.expected.push(Expectation {
                key: "hkt".into(),
                value: ExpectedValue::Flag(flag),
                provenance: Provenance::Computed,
                citation: "random".into(),
            });
            e
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_entries_round_trip(e in entry_strategy()) {
        let text = format::serialize(&e);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(format::serialize(&back), text);
        prop_assert_eq!(back, e);
    }
}
