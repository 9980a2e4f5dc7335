mod common;

use common::*;
use hkt_core::{linear_solve, LinearSolution, Matrix, Scalar};
use proptest::prelude::*;

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Scalar::zero());
    }

    #[test]
    fn inverse_is_exact(a in nonzero_scalar()) {
        let inv = a.try_inv().unwrap();
        prop_assert_eq!(&a * &inv, Scalar::one());
        prop_assert_eq!(a.checked_div(&a).unwrap(), Scalar::one());
    }

    #[test]
    fn conjugation_is_multiplicative(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert!((&a * &a.conjugate()).is_rational());
    }

    #[test]
    fn order_agrees_with_floating_point(a in scalar(), b in scalar()) {
        // the literals are small, so a gap below 1e-9 means equality
        let gap = a.to_f64() - b.to_f64();
        if gap.abs() > 1e-9 {
            prop_assert_eq!(a < b, gap < 0.0);
        } else {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn literals_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn solve_recovers_the_solution(n in 1usize..=6, entries in prop::collection::vec(scalar(), 36), x in prop::collection::vec(scalar(), 6)) {
        let a = Matrix::from_fn(n, n, |r, c| {
            let v = &entries[r * 6 + c];
            // diagonal dominance keeps most draws invertible
            if r == c { v + &Scalar::from_int(20) } else { v.clone() }
        });
        prop_assume!(!a.determinant().unwrap().is_zero());
        let x = &x[..n];
        let b = a.mul_vec(x);
        prop_assert_eq!(linear_solve(&a, &b).unwrap(), LinearSolution::Unique(x.to_vec()));
        prop_assert_eq!(&a * &a.inverse().unwrap(), Matrix::identity(n));
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in 1usize..=5, cols in 1usize..=6, entries in prop::collection::vec(-2i64..=2, 30)) {
        let a = Matrix::from_fn(rows, cols, |r, c| Scalar::from_int(entries[r * 6 + c]));
        let kernel = a.nullspace();
        prop_assert_eq!(kernel.len() + a.rank(), cols);
        for v in kernel {
            prop_assert!(a.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }
}

#[test]
fn half_sqrt2_literals() {
    let x: Scalar = "0+1/2*sqrt2".parse().unwrap();
    assert_eq!(&x * &x, q(1, 2));
    let y: Scalar = "1-1/4*sqrt2".parse().unwrap();
    assert_eq!(y, Scalar::quad(1, 1, -1, 4));
    assert!("1/0".parse::<Scalar>().is_err());
}
