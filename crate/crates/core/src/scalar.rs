//! Exact arithmetic in the quadratic field ℚ(√2).
//!
//! Every coefficient in the crate is a [`Scalar`] `a + b√2` with arbitrary
//! precision rational `a`, `b`. There is no rounding anywhere; equality is
//! structural and the field axioms hold exactly.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An element `rat + sqrt2 * √2` of ℚ(√2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rat: BigRational,
    sqrt2: BigRational,
}

impl Scalar {
    pub fn new(rat: BigRational, sqrt2: BigRational) -> Self {
        Scalar { rat, sqrt2 }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            rat: BigRational::from_integer(BigInt::from(n)),
            sqrt2: BigRational::zero(),
        }
    }

    /// `num / den` as a rational scalar.
    ///
    /// Panics if `den == 0`; use [`Scalar::from_str`] for untrusted input.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator in Scalar::frac");
        Scalar {
            rat: BigRational::new(BigInt::from(num), BigInt::from(den)),
            sqrt2: BigRational::zero(),
        }
    }

    /// `(a_num/a_den) + (b_num/b_den)·√2`.
    pub fn quad(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        assert!(a_den != 0 && b_den != 0, "zero denominator in Scalar::quad");
        Scalar {
            rat: BigRational::new(BigInt::from(a_num), BigInt::from(a_den)),
            sqrt2: BigRational::new(BigInt::from(b_num), BigInt::from(b_den)),
        }
    }

    pub fn sqrt2() -> Self {
        Scalar {
            rat: BigRational::zero(),
            sqrt2: BigRational::one(),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.sqrt2
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sqrt2.is_zero() && self.rat.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt2.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        Scalar {
            rat: self.rat.clone(),
            sqrt2: -self.sqrt2.clone(),
        }
    }

    /// Field norm `a² − 2b²`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.rat * &self.rat - two * &self.sqrt2 * &self.sqrt2
    }

    /// Sign of the real number `a + b√2`, decided exactly.
    pub fn signum(&self) -> Ordering {
        let a = self.rat.signum();
        let b = self.sqrt2.signum();
        let sa = sign_of(&a);
        let sb = sign_of(&b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with 2b²
            (sa, _) => {
                let lhs = &self.rat * &self.rat;
                let rhs = BigRational::from_integer(BigInt::from(2)) * &self.sqrt2 * &self.sqrt2;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse `b̄ / N(b)`.
    pub fn try_inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar {
            rat: &self.rat / &n,
            sqrt2: -(&self.sqrt2 / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, Error> {
        Ok(self * &rhs.try_inv()?)
    }

    /// Lossy decimal approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.sqrt2.to_f64().unwrap_or(f64::NAN);
        a + b * core::f64::consts::SQRT_2
    }
}

fn sign_of(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar {
            rat: r,
            sqrt2: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat + &rhs.rat,
            sqrt2: &self.sqrt2 + &rhs.sqrt2,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat - &rhs.rat,
            sqrt2: &self.sqrt2 - &rhs.sqrt2,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        match (self.sqrt2.is_zero(), rhs.sqrt2.is_zero()) {
            (true, true) => Scalar {
                rat: &self.rat * &rhs.rat,
                sqrt2: BigRational::zero(),
            },
            (true, false) => Scalar {
                rat: &self.rat * &rhs.rat,
                sqrt2: &self.rat * &rhs.sqrt2,
            },
            (false, true) => Scalar {
                rat: &self.rat * &rhs.rat,
                sqrt2: &self.sqrt2 * &rhs.rat,
            },
            (false, false) => {
                let two = BigRational::from_integer(BigInt::from(2));
                Scalar {
                    rat: &self.rat * &rhs.rat + two * &self.sqrt2 * &rhs.sqrt2,
                    sqrt2: &self.rat * &rhs.sqrt2 + &self.sqrt2 * &rhs.rat,
                }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        self.rat += &rhs.rat;
        self.sqrt2 += &rhs.sqrt2;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        self.rat -= &rhs.rat;
        self.sqrt2 -= &rhs.sqrt2;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -self.rat,
            sqrt2: -self.sqrt2,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical literal: `p`, `p/q`, `a+b*sqrt2` or `a-b*sqrt2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt2.is_zero() {
            return f.write_str(&fmt_rat(&self.rat));
        }
        let sign = if self.sqrt2.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt2",
            fmt_rat(&self.rat),
            sign,
            fmt_rat(&self.sqrt2.abs())
        )
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str, full: &str) -> Result<BigRational, Error> {
    let bad = || Error::ScalarSyntax(full.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
    let (p, q) = match body.split_once('/') {
        Some((p, q)) => (p, q),
        None => (body, "1"),
    };
    if !digits(p) || !digits(q) {
        return Err(bad());
    }
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::ScalarSyntax(alloc::format!(
            "{full} (zero denominator)"
        )));
    }
    let r = BigRational::new(p, q);
    Ok(if neg { -r } else { r })
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `<rat>`, `<rat>+<rat>*sqrt2` or `<rat>-<rat>*sqrt2`.
    fn from_str(text: &str) -> Result<Self, Error> {
        let s = text.trim();
        if let Some(head) = s.strip_suffix("*sqrt2") {
            // split at the last '+' or '-' that is not the leading sign
            let idx = head
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .last()
                .ok_or_else(|| Error::ScalarSyntax(text.to_string()))?;
            let (a, rest) = head.split_at(idx);
            let neg = rest.starts_with('-');
            let b = &rest[1..];
            if b.starts_with('-') || b.starts_with('+') {
                return Err(Error::ScalarSyntax(text.to_string()));
            }
            let a = parse_rat(a, text)?;
            let b = parse_rat(b, text)?;
            Ok(Scalar::new(a, if neg { -b } else { b }))
        } else {
            Ok(Scalar::from(parse_rat(s, text)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn unit_times_conjugate_is_minus_one() {
        let u = s("1+1*sqrt2");
        let v = s("1-1*sqrt2");
        assert_eq!(&u * &v, Scalar::from_int(-1));
    }

    #[test]
    fn half_sqrt2_squared_is_half() {
        let h = s("0+1/2*sqrt2");
        assert_eq!(&h * &h, Scalar::frac(1, 2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(Error::DivisionByZero)
        );
        assert!(Scalar::zero().try_inv().is_err());
    }

    #[test]
    fn division_uses_conjugate() {
        // (3 + √2)(1 − √2) / (1 − 2) = (1 − 2√2) / (−1)
        let q = s("3+1*sqrt2").checked_div(&s("1+1*sqrt2")).unwrap();
        assert_eq!(q, s("-1+2*sqrt2"));
    }

    #[test]
    fn literals_round_trip_canonically() {
        for lit in ["1/2", "-3/4", "0+1/2*sqrt2", "0", "-7", "5/3-2/7*sqrt2"] {
            assert_eq!(s(lit).to_string(), lit);
        }
        assert_eq!(s("2/4").to_string(), "1/2");
        assert_eq!(s("3+0*sqrt2").to_string(), "3");
    }

    #[test]
    fn malformed_literals_are_rejected() {
        for lit in [
            "1/0",
            "",
            "abc",
            "1/",
            "/2",
            "1+sqrt2",
            "1*sqrt2",
            "--1",
            "1+-2*sqrt2",
            "0.5",
        ] {
            assert!(lit.parse::<Scalar>().is_err(), "accepted {lit:?}");
        }
    }

    #[test]
    fn sign_is_exact_near_cancellation() {
        // 99/70 is a convergent of √2 from above; 99/70 − √2 > 0
        assert!(s("99/70-1*sqrt2").is_positive());
        // 140/99 < √2
        assert_eq!(s("140/99-1*sqrt2").signum(), Ordering::Less);
        assert!(s("-1/2+1*sqrt2").is_positive());
        assert_eq!(Scalar::zero().signum(), Ordering::Equal);
    }
}
