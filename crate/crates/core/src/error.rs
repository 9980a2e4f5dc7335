use alloc::string::String;
use core::fmt;

/// Errors reported by the core crate. Basis indices in witnesses are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    ScalarSyntax(String),
    FormSyntax(String),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    IndexOutOfRange {
        index: usize,
        dim: usize,
    },
    /// A bracket entry `[e_i, e_j]` with `i >= j`.
    UnorderedBracket {
        i: usize,
        j: usize,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    Singular,
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
    },
    MetricNotSymmetric {
        i: usize,
        j: usize,
    },
    /// The leading principal minor of the given order is not positive.
    MetricNotPositive {
        order: usize,
    },
    MissingMetric,
    MissingComplexStructure,
    /// `J_alpha^2 != -id` (alpha is 1-based, 0 for a single structure).
    NotAlmostComplex {
        alpha: usize,
    },
    /// The quaternion relation `J_1 J_2 = -J_2 J_1 = J_3` fails.
    QuaternionRelation(String),
    /// Nijenhuis tensor of `J_alpha` is nonzero on `(e_i, e_j)`.
    NotIntegrable {
        alpha: usize,
        i: usize,
        j: usize,
    },
    /// `g(J_alpha e_i, J_alpha e_j) != g(e_i, e_j)`.
    NotCompatible {
        alpha: usize,
        i: usize,
        j: usize,
    },
    NotFlat {
        i: usize,
        j: usize,
    },
    NotTorsionFree {
        i: usize,
        j: usize,
    },
    /// `D_{e_i}` does not commute with `J_alpha`.
    NotComplexConnection {
        i: usize,
        alpha: usize,
    },
    NotSkew {
        i: usize,
    },
    /// `g(X, T(Y, Z))` is not totally antisymmetric on `(e_i, e_j, e_k)`.
    TorsionNotSkew {
        i: usize,
        j: usize,
        k: usize,
    },
    /// Representation matrix `rho(e_i)` does not commute with left multiplication `L_alpha`.
    NotQuaternionic {
        i: usize,
        alpha: usize,
    },
    NotHomomorphism {
        i: usize,
        j: usize,
    },
    /// The Obata system has no solution or more than one.
    ObataNotUnique {
        nullity: usize,
        consistent: bool,
    },
    UnknownBuiltin(String),
    /// A post-hoc identity that holds on valid input failed.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            DivisionByZero => f.write_str("division by zero"),
            ScalarSyntax(s) => write!(f, "malformed scalar literal `{s}`"),
            FormSyntax(s) => write!(f, "malformed form `{s}`"),
            DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range 1..={dim}")
            }
            UnorderedBracket { i, j } => write!(f, "bracket [e{i}, e{j}] must have i < j"),
            NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Singular => f.write_str("matrix is singular"),
            JacobiViolation { i, j, k } => {
                write!(f, "Jacobi identity fails on (e{i}, e{j}, e{k})")
            }
            MetricNotSymmetric { i, j } => write!(f, "metric is not symmetric at ({i}, {j})"),
            MetricNotPositive { order } => {
                write!(
                    f,
                    "metric not positive definite: leading minor of order {order} <= 0"
                )
            }
            MissingMetric => f.write_str("structure has no metric"),
            MissingComplexStructure => f.write_str("structure has no complex structure"),
            NotAlmostComplex { alpha } => write!(f, "J{alpha}^2 != -id"),
            QuaternionRelation(s) => write!(f, "quaternion relation fails: {s}"),
            NotIntegrable { alpha, i, j } => {
                write!(f, "Nijenhuis tensor of J{alpha} nonzero on (e{i}, e{j})")
            }
            NotCompatible { alpha, i, j } => {
                write!(f, "metric not J{alpha}-invariant on (e{i}, e{j})")
            }
            NotFlat { i, j } => write!(f, "connection curvature nonzero on (e{i}, e{j})"),
            NotTorsionFree { i, j } => write!(f, "connection torsion nonzero on (e{i}, e{j})"),
            NotComplexConnection { i, alpha } => {
                write!(f, "D_e{i} does not commute with J{alpha}")
            }
            NotSkew { i } => write!(f, "D_e{i} is not skew-symmetric for the metric"),
            TorsionNotSkew { i, j, k } => {
                write!(f, "lowered torsion not totally skew on (e{i}, e{j}, e{k})")
            }
            NotQuaternionic { i, alpha } => {
                write!(f, "rho(e{i}) does not commute with L{alpha}")
            }
            NotHomomorphism { i, j } => {
                write!(f, "map is not a homomorphism on (e{i}, e{j})")
            }
            ObataNotUnique {
                nullity,
                consistent,
            } => {
                if *consistent {
                    write!(f, "Obata system has a {nullity}-dimensional solution space")
                } else {
                    f.write_str("Obata system is inconsistent")
                }
            }
            UnknownBuiltin(s) => write!(f, "no built-in structure named {s:?}"),
            Internal(s) => write!(f, "internal consistency check failed: {s}"),
        }
    }
}
