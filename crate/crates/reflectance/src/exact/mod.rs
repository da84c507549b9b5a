//! Exact rational and polynomial arithmetic.
//!
//! Every probability, density coefficient and expectation in this crate is a
//! [`Rat`], an arbitrary-precision rational kept in canonical form. Nothing
//! in the exact layer ever rounds; floating point appears only in the Monte
//! Carlo module and in display approximations.

mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use poly::Poly;

/// Errors from exact arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("beta function arguments must be positive integers (got a={a}, b={b})")]
    BetaArgZero { a: u64, b: u64 },
}

/// Errors from parsing a rational string.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("decimal literals are not supported; write an exact rational such as \"1/2\"")]
    DecimalLiteral,
    #[error("invalid integer part {0:?}")]
    InvalidInteger(String),
    #[error("denominator is zero")]
    ZeroDenominator,
}

/// An arbitrary-precision rational in canonical form: `gcd(|num|, den) = 1`,
/// `den > 0`, and zero is `0/1`.
///
/// Canonicalization is eager, so equality is structural. Values are immutable
/// and freely shareable across threads.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// Builds `num/den`, canonicalized. Fails on a zero denominator.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    /// Convenience constructor for literal ratios.
    ///
    /// Panics on a zero denominator; use [`Rat::new`] for checked
    /// construction from untrusted input.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "Rat::ratio denominator must be nonzero");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Integer power; exponent 0 yields 1 even for zero base.
    pub fn pow(&self, exp: u32) -> Self {
        Rat(self.0.pow(exp as i32))
    }

    /// Checked division: `self / rhs`, failing when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    /// Nearest-double approximation, for display and for the Monte Carlo
    /// layer. Never feeds back into exact verdicts.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    /// Canonical form: `"num/den"`, or plain `"num"` when the value is an
    /// integer (no `/1` suffix).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Parses `"num"` or `"num/den"`. Decimal literals are rejected so that
    /// inexact inputs cannot slip into the exact layer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRatError::Empty);
        }
        if s.contains(['.', 'e', 'E']) {
            return Err(ParseRatError::DecimalLiteral);
        }
        let parse_int = |part: &str| {
            BigInt::from_str(part).map_err(|_| ParseRatError::InvalidInteger(part.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Rat(BigRational::from_integer(parse_int(s)?))),
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(ParseRatError::ZeroDenominator);
                }
                Ok(Rat(BigRational::new(num, den)))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(&self.0 $op rhs.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

macro_rules! rat_div {
    ($lhs:ty, $rhs:ty) => {
        impl Div<$rhs> for $lhs {
            type Output = Rat;
            fn div(self, rhs: $rhs) -> Rat {
                assert!(!rhs.is_zero(), "Rat division by zero");
                Rat(&self.0 / &rhs.0)
            }
        }
    };
}

rat_div!(Rat, Rat);
rat_div!(&Rat, &Rat);
rat_div!(Rat, &Rat);
rat_div!(&Rat, Rat);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// Exact binomial coefficient `C(n, k)`.
///
/// Returns zero when `k > n` (the usual combinatorial convention).
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut result = BigInt::one();
    for i in 1..=k {
        result = result * BigInt::from(n - k + i) / BigInt::from(i);
    }
    result
}

/// Exact factorial `n!`.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exact beta function for positive integer arguments:
/// `B(a, b) = (a-1)! (b-1)! / (a+b-1)!`.
pub fn beta_fn(a: u64, b: u64) -> Result<Rat, ExactError> {
    if a == 0 || b == 0 {
        return Err(ExactError::BetaArgZero { a, b });
    }
    Ok(Rat(BigRational::new(
        factorial(a - 1) * factorial(b - 1),
        factorial(a + b - 1),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::ratio(n, d)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
        // 16/3 * 12/7 = 192/21, canonically 64/7
        assert_eq!(r(16, 3) * r(12, 7), r(64, 7));
        assert_eq!(r(3, 10) + r(4, 10) + r(3, 10), Rat::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            r(1, 2).checked_div(&Rat::zero()),
            Err(ExactError::DivisionByZero)
        );
        assert!(Rat::new(BigInt::from(1), BigInt::from(0)).is_err());
    }

    #[test]
    fn canonical_display() {
        assert_eq!(r(192, 21).to_string(), "64/7");
        assert_eq!(r(-4, -8).to_string(), "1/2");
        assert_eq!(r(3, -4).to_string(), "-3/4");
        assert_eq!(r(6, 3).to_string(), "2"); // integers drop the /1
        assert_eq!(Rat::zero().to_string(), "0");
    }

    #[test]
    fn parse_round_trip_and_rejections() {
        assert_eq!("213/266".parse::<Rat>().unwrap(), r(213, 266));
        assert_eq!("-5".parse::<Rat>().unwrap(), Rat::from_int(-5));
        assert_eq!("192/213".parse::<Rat>().unwrap(), r(64, 71));
        assert_eq!("0.5".parse::<Rat>(), Err(ParseRatError::DecimalLiteral));
        assert_eq!("1e3".parse::<Rat>(), Err(ParseRatError::DecimalLiteral));
        assert_eq!("1/0".parse::<Rat>(), Err(ParseRatError::ZeroDenominator));
        assert_eq!("".parse::<Rat>(), Err(ParseRatError::Empty));
        assert!(matches!(
            "x/2".parse::<Rat>(),
            Err(ParseRatError::InvalidInteger(_))
        ));
    }

    #[test]
    fn serde_uses_canonical_strings() {
        let v = serde_json::to_string(&r(192, 21)).unwrap();
        assert_eq!(v, "\"64/7\"");
        let back: Rat = serde_json::from_str("\"213/266\"").unwrap();
        assert_eq!(back, r(213, 266));
        assert!(serde_json::from_str::<Rat>("\"0.8\"").is_err());
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(2, 1), BigInt::from(2));
        assert_eq!(binom(5, 5), BigInt::one());
        assert_eq!(binom(3, 7), BigInt::zero());
        // frozen from the Pascal-recurrence oracle below
        assert_eq!(
            binom(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn binom_matches_pascal_recurrence() {
        // independent oracle: Pascal's triangle row by row
        let mut row = vec![BigInt::one()];
        for n in 1..=30u64 {
            let mut next = vec![BigInt::one()];
            for k in 1..n as usize {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(BigInt::one());
            row = next;
            for (k, expected) in row.iter().enumerate() {
                assert_eq!(&binom(n, k as u64), expected, "C({n},{k})");
            }
        }
    }

    #[test]
    fn beta_fn_examples() {
        assert_eq!(beta_fn(1, 1).unwrap(), Rat::one());
        assert_eq!(beta_fn(2, 2).unwrap(), r(1, 6)); // 1!·1!/3!
        assert_eq!(beta_fn(6, 1).unwrap(), r(1, 6)); // 5!·0!/6!
        assert_eq!(
            beta_fn(0, 3),
            Err(ExactError::BetaArgZero { a: 0, b: 3 })
        );
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rat::ratio(n, d))
    }

    proptest! {
        #[test]
        fn add_is_associative(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn mul_distributes_over_add(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn canonical_after_ops(a in arb_rat(), b in arb_rat()) {
            use num_integer::Integer;
            let s = &a * &b;
            prop_assert!(s.denom().is_positive() || s.denom().is_one());
            prop_assert!(s.numer().gcd(s.denom()).is_one() || s.is_zero());
            if s.is_zero() {
                prop_assert!(s.denom().is_one());
            }
        }

        #[test]
        fn display_parse_round_trip(a in arb_rat()) {
            let back: Rat = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
