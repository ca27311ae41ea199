//! Exact coefficient fields.
//!
//! Every algebra in this crate is generic over a [`Coefficient`] field with a
//! conjugation. Two exact instances ship: [`GaussRational`] (the default,
//! elements `a + bi` with `a, b` arbitrary-precision rationals) and plain
//! [`BigRational`] for real-only computations.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// An exact field with an involutive conjugation.
pub trait Coefficient:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn conj(&self) -> Self;

    /// Builds `re + im·i`; `None` when the field has no such element.
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self>;

    fn to_parts(&self) -> (BigRational, BigRational);

    fn from_i64(n: i64) -> Self {
        Self::from_parts(BigRational::from_integer(n.into()), BigRational::zero())
            .expect("every field contains the integers")
    }

    /// Canonical text form, e.g. `3`, `-1/2`, `(2+1i)`.
    fn canonical(&self) -> String {
        let (re, im) = self.to_parts();
        format_parts(&re, &im)
    }

    /// True for real values strictly below zero, used by the printer.
    fn is_negative_real(&self) -> bool {
        let (re, im) = self.to_parts();
        im.is_zero() && re.is_negative()
    }
}

fn format_parts(re: &BigRational, im: &BigRational) -> String {
    if im.is_zero() {
        return re.to_string();
    }
    let sign = if im.is_negative() { '-' } else { '+' };
    format!("({}{}{}i)", re, sign, im.abs())
}

/// Parses the canonical scalar encoding (`p`, `p/q`, `(a+bi)`, `(a-bi)`).
pub fn parse_parts(text: &str) -> Result<(BigRational, BigRational), AlgebraError> {
    let t = text.trim();
    let bad = || AlgebraError::Parse {
        line: 1,
        column: 1,
        message: format!("malformed scalar `{t}`"),
    };
    if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let inner = inner.trim();
        let body = inner.strip_suffix('i').ok_or_else(bad)?;
        // split at the sign that separates real and imaginary part
        let pos = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let re = parse_rational(&body[..pos]).ok_or_else(bad)?;
        let im = parse_rational(&body[pos..]).ok_or_else(bad)?;
        Ok((re, im))
    } else {
        Ok((parse_rational(t).ok_or_else(bad)?, BigRational::zero()))
    }
}

pub(crate) fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim().trim_start_matches('+').trim();
    if t.is_empty() {
        return None;
    }
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => BigInt::from_str(t).ok().map(BigRational::from_integer),
    }
}

/// Gaussian rational `re + im·i`, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational(Complex<BigRational>);

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational(Complex::new(re, im))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl FromStr for GaussRational {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (re, im) = parse_parts(s)?;
        Ok(Self::new(re, im))
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational(Complex::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational(Complex::one())
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational(-self.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for GaussRational {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                GaussRational($tr::$m(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a GaussRational> for &'a GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: &'a GaussRational) -> GaussRational {
                GaussRational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $atr for GaussRational {
            fn $am(&mut self, rhs: Self) {
                *self = GaussRational($tr::$m(&self.0, &rhs.0));
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Div for GaussRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero scalar");
        GaussRational(self.0 / rhs.0)
    }
}

impl Coefficient for GaussRational {
    fn conj(&self) -> Self {
        GaussRational(self.0.conj())
    }
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self> {
        Some(Self::new(re, im))
    }
    fn to_parts(&self) -> (BigRational, BigRational) {
        (self.0.re.clone(), self.0.im.clone())
    }
}

impl Coefficient for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_parts(re: BigRational, im: BigRational) -> Option<Self> {
        im.is_zero().then_some(re)
    }
    fn to_parts(&self) -> (BigRational, BigRational) {
        (self.clone(), BigRational::zero())
    }
}
