//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Every scalar in the crate lives in `Q(i)`. Values are kept in canonical
//! form (reduced fractions with positive denominators) so equality is
//! structural and printing is deterministic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;

/// Canonical big rational. `num_rational` keeps it reduced with a positive
/// denominator after every operation.
pub type BigRat = BigRational;

/// Builds the rational `num/den`. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

/// A complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    re: BigRat,
    im: BigRat,
}

impl GaussRat {
    pub fn new(re: BigRat, im: BigRat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRat::zero(), BigRat::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(BigRat::one(), BigRat::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(BigRat::zero(), BigRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(BigRat::from_integer(n.into()), BigRat::zero())
    }

    pub fn real(q: BigRat) -> Self {
        GaussRat::new(q, BigRat::zero())
    }

    pub fn imag(q: BigRat) -> Self {
        GaussRat::new(BigRat::zero(), q)
    }

    /// `(a/b) + (c/d) i` from machine integers.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussRat::new(rat(a, b), rat(c, d))
    }

    pub fn re(&self) -> &BigRat {
        &self.re
    }

    pub fn im(&self) -> &BigRat {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2`, a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, q: &BigRat) -> Self {
        GaussRat::new(&self.re * q, &self.im * q)
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i32) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = GaussRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_rat(q: &BigRat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_imag(q: &BigRat) -> String {
    if q.is_one() {
        "i".to_string()
    } else if (-q).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", fmt_rat(q))
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => f.write_str(&fmt_rat(&self.re)),
            (true, false) => f.write_str(&fmt_imag(&self.im)),
            (false, false) => {
                let im = fmt_imag(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", fmt_rat(&self.re), im)
                } else {
                    write!(f, "{}+{}", fmt_rat(&self.re), im)
                }
            }
        }
    }
}

fn parse_rat(s: &str) -> Result<BigRat, ArithError> {
    let bad = || ArithError::Parse(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    if d.is_negative() {
        return Err(bad());
    }
    Ok(BigRat::new(n, d))
}

impl FromStr for GaussRat {
    type Err = ArithError;

    /// Accepts `a/b`, `a/b*i`, `i`, `-i`, `a/b+c/d*i`, `a/b-c/d*i` and
    /// `a/b+-c/d*i`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(ArithError::Parse(s.to_string()));
        }
        // split into signed terms; a sign directly after another sign belongs
        // to the numerator of the next term
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for c in src.chars() {
            if (c == '+' || c == '-') && !cur.is_empty() && !matches!(prev, Some('+' | '-')) {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
            prev = Some(c);
        }
        terms.push(cur);

        let mut re: Option<BigRat> = None;
        let mut im: Option<BigRat> = None;
        for term in terms {
            let mut body = term.as_str();
            let mut negative = false;
            loop {
                if let Some(rest) = body.strip_prefix('+') {
                    body = rest;
                } else if let Some(rest) = body.strip_prefix('-') {
                    negative = !negative;
                    body = rest;
                } else {
                    break;
                }
            }
            let (value, imaginary) = if body == "i" {
                (BigRat::one(), true)
            } else if let Some(coef) = body.strip_suffix("*i") {
                (parse_rat(coef)?, true)
            } else {
                (parse_rat(body)?, false)
            };
            let value = if negative { -value } else { value };
            let slot = if imaginary { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(ArithError::Parse(s.to_string()));
            }
            *slot = Some(value);
        }
        Ok(GaussRat::new(
            re.unwrap_or_else(BigRat::zero),
            im.unwrap_or_else(BigRat::zero),
        ))
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &'a GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &'a GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &'a GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &'a GaussRat) -> GaussRat {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<BigRat> for GaussRat {
    fn from(q: BigRat) -> Self {
        GaussRat::real(q)
    }
}
