//! Exact Gaussian-rational scalars.
//!
//! A [`Scalar`] is a complex number `re + im*i` whose parts are
//! arbitrary-precision rationals. All arithmetic is exact; equality is
//! decidable and canonical because `num_rational` keeps every ratio in
//! lowest terms with a positive denominator.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact element of the field of Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// Exact rational `num / den`. Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
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

    /// The real part, provided the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&BigRational> {
        if self.is_real() {
            Some(&self.re)
        } else {
            None
        }
    }

    /// Compare two scalars as real numbers. `None` if either has an
    /// imaginary part.
    pub fn real_cmp(&self, other: &Scalar) -> Option<Ordering> {
        match (self.as_real(), other.as_real()) {
            (Some(a), Some(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero scalar");
        Scalar::new(&self.re / &n, -&self.im / &n)
    }

    /// Exact square root in the Gaussian rationals, if one exists.
    ///
    /// The returned root is canonical: positive real part, or (for purely
    /// imaginary roots) positive imaginary part.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.im.is_zero() {
            if self.re.is_negative() {
                let r = rational_sqrt(&-self.re.clone())?;
                Some(Scalar::new(BigRational::zero(), r))
            } else {
                let r = rational_sqrt(&self.re)?;
                Some(Scalar::from_rational(r))
            }
        } else {
            // For re + im*i = (p + q*i)^2: p^2 = (re + n)/2 with
            // n = |re + im*i|, and q = im / (2p).
            let n = rational_sqrt(&self.norm_sqr())?;
            let two = BigRational::from_integer(BigInt::from(2));
            let p = rational_sqrt(&((&self.re + &n) / &two))?;
            if p.is_zero() {
                return None;
            }
            let q = &self.im / &(&two * &p);
            Some(Scalar::new(p, q))
        }
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    // Field division is multiplication by the inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical literal form: `p/q`, `r/si`, or `p/q+r/si`, with
    /// denominators omitted when 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", fmt_rational(&self.im))
        } else if self.im.is_negative() {
            write!(
                f,
                "{}-{}i",
                fmt_rational(&self.re),
                fmt_rational(&-self.im.clone())
            )
        } else {
            write!(f, "{}+{}i", fmt_rational(&self.re), fmt_rational(&self.im))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str, orig: &str) -> Result<BigRational> {
    let err = |msg: &str| Error::ScalarParse(orig.to_string(), msg.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    // Coefficients written without digits mean 1, as in "i" or "3-i".
    let num = match num_str {
        "" | "+" => BigInt::one(),
        "-" => -BigInt::one(),
        _ => BigInt::from_str(num_str).map_err(|_| err("bad numerator"))?,
    };
    let den = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if d.starts_with('+') || d.starts_with('-') {
                return Err(err("signed denominator"));
            }
            BigInt::from_str(d).map_err(|_| err("bad denominator"))?
        }
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let orig = s;
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::ScalarParse(orig.to_string(), "empty".to_string()));
        }
        if let Some(body) = s.strip_suffix('i') {
            // Split "re±imi" at the first interior sign; everything before
            // belongs to the real part.
            let split = body
                .char_indices()
                .skip(1)
                .find(|&(_, c)| c == '+' || c == '-')
                .map(|(idx, _)| idx);
            match split {
                Some(idx) => {
                    let re = parse_rational(&body[..idx], orig)?;
                    let im = parse_rational(&body[idx..], orig)?;
                    Ok(Scalar::new(re, im))
                }
                None => Ok(Scalar::new(
                    BigRational::zero(),
                    parse_rational(body, orig)?,
                )),
            }
        } else {
            Ok(Scalar::from_rational(parse_rational(s, orig)?))
        }
    }
}
