//! Univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored lowest degree first; the zero polynomial is the
//! empty coefficient vector, and the leading coefficient is otherwise
//! nonzero. Provides the characteristic polynomial (Faddeev-LeVerrier) and
//! Yun's square-free factorization, both exact.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    /// Builds a polynomial from coefficients, lowest degree first.
    /// Trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        coeffs[degree] = c;
        UniPoly::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn scale(&self, by: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * by).collect())
    }

    /// Splits into `(leading, monic)` with `self == leading * monic`.
    /// Panics on the zero polynomial.
    pub fn into_monic(&self) -> (Scalar, UniPoly) {
        let lead = self
            .leading()
            .expect("zero polynomial has no monic form")
            .clone();
        (lead.clone(), self.scale(&lead.inv()))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(c);
        }
        Ok(acc)
    }

    /// Euclidean division, `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let Some(ddeg) = divisor.degree() else {
            return Err(Error::PolyDivisionByZero);
        };
        let lead_inv = divisor.leading().unwrap().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![Scalar::zero(); qlen];
        for k in (0..qlen).rev() {
            let factor = &rem[k + ddeg] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&factor * dc);
            }
            quot[k] = factor;
        }
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd_monic(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.into_monic().1
        }
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - m)`, monic of degree `rows(m)`,
/// computed by the Faddeev-LeVerrier recurrence. Exact: the only divisions
/// are by the integers `1..=n`.
pub fn char_poly(m: &Matrix) -> Result<UniPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut aux = Matrix::identity(n);
    for k in 1..=n {
        aux = m * &aux;
        let c = -&(&aux.trace() / &Scalar::from_int(k as i64));
        if k < n {
            aux = &aux + &Matrix::identity(n).scale(&c);
        }
        coeffs[n - k] = c;
    }
    Ok(UniPoly::new(coeffs))
}

/// A square-free decomposition `unit * prod factor_i ^ multiplicity_i`
/// with monic, pairwise coprime, square-free factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeFactorization {
    pub unit: Scalar,
    pub factors: Vec<(UniPoly, usize)>,
}

impl SquareFreeFactorization {
    /// Multiplies the decomposition back out.
    pub fn reconstruct(&self) -> UniPoly {
        let mut out = UniPoly::constant(self.unit.clone());
        for (factor, mult) in &self.factors {
            for _ in 0..*mult {
                out = &out * factor;
            }
        }
        out
    }

    pub fn all_multiplicities_even(&self) -> bool {
        self.factors.iter().all(|(_, m)| m % 2 == 0)
    }
}

/// Yun's square-free factorization over the exact field.
pub fn square_free(p: &UniPoly) -> Result<SquareFreeFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (unit, f) = p.into_monic();
    let mut factors = Vec::new();
    if f.degree() == Some(0) {
        return Ok(SquareFreeFactorization { unit, factors });
    }
    let df = f.derivative();
    let a0 = UniPoly::gcd_monic(&f, &df);
    let mut b = f.div_rem(&a0)?.0;
    let c = df.div_rem(&a0)?.0;
    let mut d = &c - &b.derivative();
    let mut mult = 1;
    while b.degree().is_some_and(|d| d > 0) {
        let a = UniPoly::gcd_monic(&b, &d);
        if a.degree().is_some_and(|d| d > 0) {
            factors.push((a.clone(), mult));
        }
        b = b.div_rem(&a)?.0;
        let c = d.div_rem(&a)?.0;
        d = &c - &b.derivative();
        mult += 1;
    }
    Ok(SquareFreeFactorization { unit, factors })
}

/// True iff `p` is the square of a polynomial over the Gaussian rationals:
/// every square-free multiplicity is even and the leading coefficient is a
/// square in the field.
pub fn is_perfect_square(p: &UniPoly) -> Result<bool> {
    Ok(square_root(p)?.is_some())
}

/// The polynomial square root when `p` is a perfect square.
pub fn square_root(p: &UniPoly) -> Result<Option<UniPoly>> {
    let decomposition = square_free(p)?;
    let Some(unit_root) = decomposition.unit.sqrt() else {
        return Ok(None);
    };
    if !decomposition.all_multiplicities_even() {
        return Ok(None);
    }
    let mut root = UniPoly::constant(unit_root);
    for (factor, mult) in &decomposition.factors {
        for _ in 0..mult / 2 {
            root = &root * factor;
        }
    }
    Ok(Some(root))
}

/// The unique polynomial of degree `< points.len()` through the given
/// `(x, y)` pairs. The nodes must be pairwise distinct.
pub fn lagrange_interpolate(points: &[(Scalar, Scalar)]) -> Result<UniPoly> {
    for (a, (x, _)) in points.iter().enumerate() {
        for (y, _) in points.iter().skip(a + 1) {
            if x == y {
                return Err(Error::RepeatedInterpolationNode);
            }
        }
    }
    let mut out = UniPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::one();
        let mut denom = Scalar::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = &basis * &UniPoly::new(vec![-xj, Scalar::one()]);
            denom = &denom * &(xi - xj);
        }
        out = &out + &basis.scale(&(yi / &denom));
    }
    Ok(out)
}
