//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Every identity in this crate is checked over these types. Floating point
//! only enters through [`Rat::to_f64`], which the eigenvalue code in
//! `racah` and `bi_poly` uses to build its float matrices.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{BiError, Result};

/// Exact rational number in canonical form (reduced, positive denominator).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `n/d` in canonical form.
    pub fn new(n: i64, d: i64) -> Result<Rat> {
        if d == 0 {
            return Err(BiError::InvalidScalar(format!("zero denominator in {n}/{d}")));
        }
        Ok(Rat(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    /// Same as [`Rat::new`] for callers that have already excluded `d == 0`.
    pub fn frac(n: i64, d: i64) -> Rat {
        Rat::new(n, d).expect("nonzero denominator")
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(n: BigInt, d: BigInt) -> Result<Rat> {
        if d.is_zero() {
            return Err(BiError::InvalidScalar("zero denominator".into()));
        }
        Ok(Rat(BigRational::new(n, d)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn half() -> Rat {
        Rat::frac(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
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

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(BiError::InvalidScalar("reciprocal of zero".into()));
        }
        Ok(Rat(self.0.recip()))
    }

    /// Integer power; `(-1)^n` style signs are the main use.
    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(-1)^n` as a rational.
    pub fn sign_pow(n: usize) -> Rat {
        if n % 2 == 0 {
            Rat::one()
        } else {
            Rat::int(-1)
        }
    }

    /// Round-to-nearest conversion; the only path from exact to float.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Value as a nonnegative integer, if it is one.
    pub fn to_usize(&self) -> Option<usize> {
        if self.is_integer() && !self.is_negative() {
            self.0.numer().to_usize()
        } else {
            None
        }
    }
}

impl fmt::Display for Rat {
    /// Always `p/q`, so `0` prints as `0/1` and `3` as `3/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = BiError;

    /// Accepts `p/q` or a bare integer. Decimals are rejected.
    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let bad = || BiError::Parse(format!("expected an integer or p/q rational, got {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rat::from_big(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(n)))
            }
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(&self.0 $op rhs.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

// Division by zero panics like integer division; fallible callers use `recip`.
rat_binop!(Div, div, /);

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

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |a, b| a * b)
    }
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GRat {
    pub re: Rat,
    pub im: Rat,
}

impl GRat {
    pub fn new(re: Rat, im: Rat) -> GRat {
        GRat { re, im }
    }

    pub fn real(re: Rat) -> GRat {
        GRat { re, im: Rat::zero() }
    }

    pub fn zero() -> GRat {
        GRat::default()
    }

    pub fn one() -> GRat {
        GRat::real(Rat::one())
    }

    pub fn i() -> GRat {
        GRat::new(Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> GRat {
        GRat::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, r: &Rat) -> GRat {
        GRat::new(&self.re * r, &self.im * r)
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> GRat {
        GRat::new(-&self.im, self.re.clone())
    }
}

impl From<Rat> for GRat {
    fn from(r: Rat) -> GRat {
        GRat::real(r)
    }
}

impl fmt::Display for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})i", self.im),
            (false, false) => write!(f, "{} + ({})i", self.re, self.im),
        }
    }
}

impl fmt::Debug for GRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&GRat> for &GRat {
    type Output = GRat;
    fn add(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GRat> for &GRat {
    type Output = GRat;
    fn sub(self, rhs: &GRat) -> GRat {
        GRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GRat> for &GRat {
    type Output = GRat;
    fn mul(self, rhs: &GRat) -> GRat {
        grat_mul(self, rhs)
    }
}

impl Neg for &GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        GRat::new(-&self.re, -&self.im)
    }
}

impl Neg for GRat {
    type Output = GRat;
    fn neg(self) -> GRat {
        -&self
    }
}

impl AddAssign<&GRat> for GRat {
    fn add_assign(&mut self, rhs: &GRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

/// Canonical constructor; fails on a zero denominator.
pub fn rat_make(n: i64, d: i64) -> Result<Rat> {
    Rat::new(n, d)
}

/// Complex product with reduced components.
pub fn grat_mul(a: &GRat, b: &GRat) -> GRat {
    if a.im.is_zero() && b.im.is_zero() {
        return GRat::real(&a.re * &b.re);
    }
    GRat::new(
        &a.re * &b.re - &a.im * &b.im,
        &a.re * &b.im + &a.im * &b.re,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::frac(n, d)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(rat_make(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(rat_make(3, -6).unwrap().to_string(), "-1/2");
        let z = rat_make(0, 7).unwrap();
        assert_eq!(z.to_string(), "0/1");
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(rat_make(1, 0), Err(BiError::InvalidScalar(_))));
        assert!("3/0".parse::<Rat>().is_err());
    }

    #[test]
    fn parse_accepts_fractions_and_integers_only() {
        assert_eq!("-8/13".parse::<Rat>().unwrap(), r(-8, 13));
        assert_eq!("6/-4".parse::<Rat>().unwrap(), r(-3, 2));
        assert_eq!(" 7 ".parse::<Rat>().unwrap(), Rat::int(7));
        assert!("0.5".parse::<Rat>().is_err());
        assert!("1e3".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn gaussian_products() {
        let i = GRat::i();
        assert_eq!(grat_mul(&i, &i), GRat::real(Rat::int(-1)));
        let a = GRat::new(Rat::one(), Rat::one());
        let b = GRat::new(Rat::one(), Rat::int(-1));
        assert_eq!(grat_mul(&a, &b), GRat::real(Rat::int(2)));
        let half = GRat::real(r(1, 2));
        assert_eq!(grat_mul(&half, &i), GRat::new(Rat::zero(), r(1, 2)));
    }

    #[test]
    fn serde_string_form() {
        let v = serde_json::to_string(&r(-8, 13)).unwrap();
        assert_eq!(v, "\"-8/13\"");
        let g = GRat::new(r(1, 2), r(-1, 3));
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"re":"1/2","im":"-1/3"}"#);
        let back: GRat = serde_json::from_str(r#"{"re":"2/4","im":"0"}"#).unwrap();
        assert_eq!(back, GRat::real(r(1, 2)));
    }

    #[test]
    fn float_conversion_rounds() {
        assert_eq!(r(1, 3).to_f64(), 1.0 / 3.0);
        assert_eq!(r(-8, 13).to_f64(), -8.0 / 13.0);
    }
}
