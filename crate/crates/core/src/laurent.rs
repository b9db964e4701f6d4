//! Truncated Laurent series in `z` over the rationals.
//!
//! A series carries its own correctness window: every coefficient of an
//! exponent below `precision` is exact, everything at or above it is unknown.
//! `precision == None` marks an exact (finite) series such as a pole part.
//! Truncation therefore never happens silently; arithmetic propagates the
//! window and consumers that need a coefficient outside of it get
//! [`Error::PrecisionUnderflow`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{factorial, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    valuation: i64,
    coeffs: Vec<Rational>,
    precision: Option<i64>,
}

fn min_precision(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl LaurentSeries {
    /// Builds `sum coeffs[i] z^(valuation + i)` known up to `precision`.
    /// Coefficients at or beyond the precision are discarded.
    pub fn new(valuation: i64, coeffs: Vec<Rational>, precision: Option<i64>) -> Self {
        let mut s = LaurentSeries {
            valuation,
            coeffs,
            precision,
        };
        s.normalize();
        s
    }

    pub fn exact(valuation: i64, coeffs: Vec<Rational>) -> Self {
        Self::new(valuation, coeffs, None)
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new(), None)
    }

    /// Zero known only below `precision`.
    pub fn zero_to(precision: i64) -> Self {
        Self::new(precision, Vec::new(), Some(precision))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::exact(0, vec![c])
    }

    pub fn monomial(c: Rational, exponent: i64) -> Self {
        Self::exact(exponent, vec![c])
    }

    fn normalize(&mut self) {
        if let Some(p) = self.precision {
            let keep = (p - self.valuation).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            // the lowest exponent that could still be nonzero
            self.valuation = self.precision.unwrap_or(0);
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// True if all known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.is_exact()
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    pub fn coeff(&self, exponent: i64) -> Result<Rational> {
        if let Some(p) = self.precision {
            if exponent >= p {
                return Err(Error::PrecisionUnderflow {
                    needed: exponent,
                    have: p,
                });
            }
        }
        Ok(self.coeff_unchecked(exponent))
    }

    fn coeff_unchecked(&self, exponent: i64) -> Rational {
        let idx = exponent - self.valuation;
        if idx < 0 {
            return Rational::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Lowers the precision to at most `precision`.
    pub fn truncated(&self, precision: i64) -> Self {
        Self::new(
            self.valuation,
            self.coeffs.clone(),
            min_precision(self.precision, Some(precision)),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return match self.precision {
                None => Self::zero(),
                Some(p) => Self::zero_to(p),
            };
        }
        Self::new(
            self.valuation,
            self.coeffs.iter().map(|a| a * c).collect(),
            self.precision,
        )
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(self.valuation + i as i64)))
            .collect();
        Self::new(self.valuation - 1, coeffs, self.precision.map(|p| p - 1))
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// The projection onto strictly negative powers of `z`. The result is an
    /// exact series.
    pub fn pole_part(&self) -> Result<Self> {
        if let Some(p) = self.precision {
            if p < 0 {
                return Err(Error::PrecisionUnderflow {
                    needed: -1,
                    have: p,
                });
            }
        }
        let coeffs = self
            .terms()
            .filter(|(e, _)| *e < 0)
            .map(|(e, c)| (e, c.clone()))
            .collect::<Vec<_>>();
        Ok(Self::from_terms(coeffs, None))
    }

    /// The complementary projection `id - pole_part`: exponents `>= 0`.
    pub fn regular_part(&self) -> Result<Self> {
        if let Some(p) = self.precision {
            if p < 0 {
                return Err(Error::PrecisionUnderflow {
                    needed: -1,
                    have: p,
                });
            }
        }
        let terms = self
            .terms()
            .filter(|(e, _)| *e >= 0)
            .map(|(e, c)| (e, c.clone()))
            .collect::<Vec<_>>();
        Ok(Self::from_terms(terms, self.precision))
    }

    pub fn has_pole(&self) -> bool {
        !self.is_zero() && self.valuation < 0
    }

    /// Value at `z = 0` of a series without poles.
    pub fn constant_term(&self) -> Result<Rational> {
        if self.has_pole() {
            return Err(Error::UnexpectedPole {
                valuation: self.valuation,
            });
        }
        self.coeff(0)
    }

    fn from_terms(terms: Vec<(i64, Rational)>, precision: Option<i64>) -> Self {
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return match precision {
                None => Self::zero(),
                Some(p) => Self::zero_to(p),
            };
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::new(lo, coeffs, precision)
    }

    /// Multiplicative inverse. Needs a nonzero leading coefficient and a
    /// finite precision (the inverse of a non-monomial is infinite).
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let Some(p) = self.precision else {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(self.coeffs[0].recip(), -self.valuation));
            }
            return Err(Error::NotInvertible);
        };
        let rel = (p - self.valuation) as usize;
        let lead_inv = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(rel);
        for n in 0..rel {
            if n == 0 {
                out.push(lead_inv.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for j in 1..=n.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[j] * &out[n - j];
            }
            out.push(-acc * &lead_inv);
        }
        let v = -self.valuation;
        Ok(Self::new(v, out, Some(v + rel as i64)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Coefficient-wise agreement on the exponents both series know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let lo = self.valuation.min(other.valuation);
        let hi = match min_precision(self.precision, other.precision) {
            Some(p) => p,
            None => {
                let top = |s: &Self| s.valuation + s.coeffs.len() as i64;
                top(self).max(top(other))
            }
        };
        (lo..hi).all(|e| self.coeff_unchecked(e) == other.coeff_unchecked(e))
    }

    /// `e^z` known below `precision`.
    pub fn exp(precision: i64) -> Self {
        let n = precision.max(0) as u64;
        let coeffs = (0..n)
            .map(|j| Rational::new(BigInt::one(), factorial(j)))
            .collect();
        Self::new(0, coeffs, Some(precision))
    }

    /// `x(z) = e^z / (1 - e^z) = -1/z - 1/2 - z/12 + ...`, correct through
    /// `z^(precision - 1)`.
    pub fn x(precision: i64) -> Self {
        assert!(precision >= 0, "x(z) precision must be non-negative");
        let numer = Self::exp(precision + 1);
        let denom = &Self::one() - &Self::exp(precision + 2);
        numer
            .checked_div(&denom)
            .expect("1 - e^z has a nonzero linear coefficient")
            .truncated(precision)
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let precision = min_precision(self.precision, rhs.precision);
        let lo = self.valuation.min(rhs.valuation);
        let mut hi = (self.valuation + self.coeffs.len() as i64)
            .max(rhs.valuation + rhs.coeffs.len() as i64);
        if let Some(p) = precision {
            hi = hi.min(p);
        }
        let coeffs = (lo..hi.max(lo))
            .map(|e| self.coeff_unchecked(e) + rhs.coeff_unchecked(e))
            .collect();
        LaurentSeries::new(lo, coeffs, precision)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return LaurentSeries::zero();
        }
        let precision = min_precision(
            self.precision.map(|p| p + rhs.valuation),
            rhs.precision.map(|p| p + self.valuation),
        );
        let valuation = self.valuation + rhs.valuation;
        let full = self.coeffs.len() + rhs.coeffs.len();
        let len = match precision {
            Some(p) => ((p - valuation).max(0) as usize).min(full),
            None => full,
        };
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        LaurentSeries::new(valuation, coeffs, precision)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*z^{}", c.abs(), e)?;
        }
        match self.precision {
            Some(p) if first => write!(f, "O(z^{p})"),
            Some(p) => write!(f, " + O(z^{p})"),
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
