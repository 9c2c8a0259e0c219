//! Truncated Laurent series `sum_{k>=v} c_k u^k + O(u^N)` in one tagged
//! variable.
//!
//! Precision is absolute: coefficients are known for exponents `< N`.
//! Operations never extend precision; binary operations take the pessimistic
//! minimum of what the operands certify.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// The formal variable of a series. `T` is the base parameter, `S` the
/// microlocal variable. They never mix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Var {
    T,
    S,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::T => 't',
            Var::S => 's',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    var: Var,
    /// Valuation when nonzero; equals `precision` for the zero series.
    valuation: i64,
    /// `coeffs[0]` is the coefficient of `u^valuation` and is nonzero unless
    /// the list is empty.
    coeffs: Vec<Rational>,
    precision: i64,
}

impl TruncatedSeries {
    pub fn zero(var: Var, precision: i64) -> Self {
        TruncatedSeries { var, valuation: precision, coeffs: Vec::new(), precision }
    }

    pub fn one(var: Var, precision: i64) -> Self {
        Self::monomial(var, Rational::one(), 0, precision)
    }

    /// `c * u^k + O(u^precision)`.
    pub fn monomial(var: Var, c: Rational, k: i64, precision: i64) -> Self {
        Self::from_coeffs(var, k, vec![c], precision)
    }

    pub fn constant(var: Var, c: Rational, precision: i64) -> Self {
        Self::monomial(var, c, 0, precision)
    }

    /// Series with `coeffs[i]` at exponent `start + i`, truncated to `precision`.
    pub fn from_coeffs(var: Var, start: i64, coeffs: Vec<Rational>, precision: i64) -> Self {
        let mut s = TruncatedSeries { var, valuation: start, coeffs, precision };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let keep = (self.precision - self.valuation).max(0) as usize;
        if self.coeffs.len() > keep {
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.valuation = self.precision;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.valuation += i as i64;
                while self.coeffs.last().is_some_and(Zero::is_zero) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation, or `None` for the zero series (whose order is only known to
    /// be at least the precision).
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.valuation)
        }
    }

    /// Lower bound on the order: the valuation, or the precision when zero.
    pub fn order_bound(&self) -> i64 {
        self.valuation
    }

    /// Coefficient of `u^k`; `None` when `k` is at or beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k >= self.precision {
            return None;
        }
        if k < self.valuation {
            return Some(Rational::zero());
        }
        Some(self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (v + i as i64, c))
    }

    /// Dense coefficient list starting at the valuation, as serialized.
    pub fn dense_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Lowers the precision to `precision` (no-op if already lower).
    pub fn truncate(&self, precision: i64) -> Self {
        let p = precision.min(self.precision);
        Self::from_coeffs(self.var, self.valuation, self.coeffs.clone(), p)
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncatedSeries {
            var: self.var,
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var, self.precision);
        }
        TruncatedSeries {
            var: self.var,
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            precision: self.precision,
        }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            Err(Error::MixedVariable(self.var.symbol(), other.var.symbol()))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let precision = self.precision.min(other.precision);
        let start = self.valuation.min(other.valuation);
        if start >= precision {
            return Ok(Self::zero(self.var, precision));
        }
        let len = (precision - start) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        for s in [self, other] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let k = s.valuation + i as i64 - start;
                if (k as usize) < len {
                    coeffs[k as usize] += c;
                }
            }
        }
        Ok(Self::from_coeffs(self.var, start, coeffs, precision))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Exact convolution; precision `min(N_a + v_b, N_b + v_a)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let precision = (self.precision + other.valuation).min(other.precision + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var, precision));
        }
        let start = self.valuation + other.valuation;
        let len = (precision - start).max(0) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self::from_coeffs(self.var, start, coeffs, precision))
    }

    /// Multiplicative inverse. Relative precision is preserved, so the result
    /// has valuation `-v` and precision `N - 2v`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let v = self.valuation;
        let len = (self.precision - v) as usize;
        let c0_inv = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        out.push(c0_inv.clone());
        for k in 1..len {
            let mut acc = Rational::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out.push(-(acc * &c0_inv));
        }
        Ok(Self::from_coeffs(self.var, -v, out, self.precision - 2 * v))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.invert()?)
    }

    /// Term-wise derivative; precision drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer((self.valuation + i as i64).into()))
            .collect();
        Self::from_coeffs(self.var, self.valuation - 1, coeffs, self.precision - 1)
    }

    /// True when both series agree on every coefficient that both know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.var != other.var {
            return false;
        }
        let p = self.precision.min(other.precision);
        self.truncate(p) == other.truncate(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $fallible:ident) => {
        impl $tr for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$fallible(rhs).expect("series variables must match")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            var: self.var,
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.var.symbol();
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "{u}")?;
                    } else {
                        write!(f, "{u}^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "O({u}^{})", self.precision)
        } else {
            write!(f, " + O({u}^{})", self.precision)
        }
    }
}
