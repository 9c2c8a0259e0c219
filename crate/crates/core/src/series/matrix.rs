//! Dense matrices over the rationals and over truncated series.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::truncated::{TruncatedSeries, Var};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Rational {
        self.diagonal().into_iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &QMatrix) -> QMatrix {
        self.add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::NotInvertible)?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let p = a.get(col, col).recip();
            for j in 0..n {
                a.data[col * n + j] *= &p;
                inv.data[col * n + j] *= &p;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let da = a.get(col, j) * &factor;
                    let di = inv.get(col, j) * &factor;
                    a.data[r * n + j] -= da;
                    inv.data[r * n + j] -= di;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix of truncated series, all in the same variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesMatrix {
    rows: usize,
    cols: usize,
    var: Var,
    entries: Vec<TruncatedSeries>,
}

impl SeriesMatrix {
    pub fn zeros(var: Var, rows: usize, cols: usize, precision: i64) -> Self {
        SeriesMatrix { rows, cols, var, entries: vec![TruncatedSeries::zero(var, precision); rows * cols] }
    }

    pub fn identity(var: Var, n: usize, precision: i64) -> Self {
        let mut m = Self::zeros(var, n, n, precision);
        for i in 0..n {
            m.set(i, i, TruncatedSeries::one(var, precision));
        }
        m
    }

    pub fn diag(var: Var, entries: Vec<TruncatedSeries>) -> Self {
        let n = entries.len();
        let prec = entries.iter().map(TruncatedSeries::precision).min().unwrap_or(0);
        let mut m = Self::zeros(var, n, n, prec);
        for (i, e) in entries.into_iter().enumerate() {
            assert_eq!(e.var(), var);
            m.set(i, i, e);
        }
        m
    }

    pub fn from_fn<F>(var: Var, rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> TruncatedSeries,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.var(), var, "entry variable");
                entries.push(e);
            }
        }
        SeriesMatrix { rows, cols, var, entries }
    }

    /// Builds from columns (each column a vector of series).
    pub fn from_columns(var: Var, columns: &[Vec<TruncatedSeries>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        Self::from_fn(var, rows, cols, |i, j| columns[j][i].clone())
    }

    /// Constant matrix `m` embedded at the given precision.
    pub fn from_rational(var: Var, m: &QMatrix, precision: i64) -> Self {
        Self::from_fn(var, m.rows(), m.cols(), |i, j| {
            TruncatedSeries::constant(var, m.get(i, j).clone(), precision)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TruncatedSeries) {
        assert_eq!(v.var(), self.var, "entry variable");
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<TruncatedSeries> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[TruncatedSeries] {
        &self.entries
    }

    pub fn min_precision(&self) -> i64 {
        self.entries.iter().map(TruncatedSeries::precision).min().unwrap_or(i64::MAX)
    }

    /// Smallest order bound over all entries.
    pub fn min_valuation(&self) -> Option<i64> {
        self.entries.iter().filter_map(TruncatedSeries::valuation).min()
    }

    pub fn truncate(&self, precision: i64) -> Self {
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            var: self.var,
            entries: self.entries.iter().map(|e| e.truncate(precision)).collect(),
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            var: self.var,
            entries: self.entries.iter().map(|e| e.shift(k)).collect(),
        }
    }

    /// Coefficient matrix of `u^k`. `None` if some entry is not known there.
    pub fn coefficient(&self, k: i64) -> Option<QMatrix> {
        let mut m = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).coeff(k)?);
            }
        }
        Some(m)
    }

    pub fn derivative(&self) -> Self {
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            var: self.var,
            entries: self.entries.iter().map(TruncatedSeries::derivative).collect(),
        }
    }

    fn check_var(&self, other: &SeriesMatrix) -> Result<()> {
        if self.var != other.var {
            return Err(Error::MixedVariable(self.var.symbol(), other.var.symbol()));
        }
        Ok(())
    }

    pub fn try_mul(&self, rhs: &SeriesMatrix) -> Result<SeriesMatrix> {
        self.check_var(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: Option<TruncatedSeries> = None;
                for k in 0..self.cols {
                    let p = self.get(i, k).try_mul(rhs.get(k, j))?;
                    acc = Some(match acc {
                        None => p,
                        Some(a) => a.try_add(&p)?,
                    });
                }
                entries.push(acc.unwrap_or_else(|| TruncatedSeries::zero(self.var, i64::MAX / 4)));
            }
        }
        Ok(SeriesMatrix { rows: self.rows, cols: rhs.cols, var: self.var, entries })
    }

    pub fn try_add(&self, rhs: &SeriesMatrix) -> Result<SeriesMatrix> {
        self.check_var(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: rhs.rows * rhs.cols });
        }
        let entries =
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(SeriesMatrix { rows: self.rows, cols: self.cols, var: self.var, entries })
    }

    pub fn try_sub(&self, rhs: &SeriesMatrix) -> Result<SeriesMatrix> {
        self.try_add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> SeriesMatrix {
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            var: self.var,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let col = SeriesMatrix::from_columns(self.var, &[v.to_vec()]);
        Ok(self.try_mul(&col)?.column(0))
    }

    /// Inverse over the Laurent series field by Gauss-Jordan elimination with
    /// minimal-valuation pivots.
    pub fn inverse(&self) -> Result<SeriesMatrix> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let prec = self.min_precision();
        let mut a = self.clone();
        let mut inv = SeriesMatrix::identity(self.var, n, prec);
        for col in 0..n {
            let piv = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| a.get(r, col).order_bound())
                .ok_or(Error::NotInvertible)?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let p = a.get(col, col).invert()?;
            for j in 0..n {
                let x = a.get(col, j) * &p;
                a.set(col, j, x);
                let y = inv.get(col, j) * &p;
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(r, j) - &(a.get(col, j) * &factor);
                    a.set(r, j, x);
                    let y = inv.get(r, j) - &(inv.get(col, j) * &factor);
                    inv.set(r, j, y);
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by valuation-pivoted elimination; the precision of the
    /// result reflects the precision lost to pivot division.
    pub fn determinant(&self) -> Result<TruncatedSeries> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = TruncatedSeries::one(self.var, a.min_precision());
        for col in 0..n {
            let piv = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| a.get(r, col).order_bound());
            let Some(piv) = piv else {
                // column vanishes to the known precision
                let p = (col..n).map(|r| a.get(r, col).precision()).min().unwrap_or(0);
                return Ok(TruncatedSeries::zero(self.var, det.order_bound() + p));
            };
            if piv != col {
                a.swap_rows(col, piv);
                det = -&det;
            }
            let pivot = a.get(col, col).clone();
            det = &det * &pivot;
            let p_inv = pivot.invert()?;
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) * &p_inv;
                for j in col..n {
                    let x = a.get(r, j) - &(a.get(col, j) * &factor);
                    a.set(r, j, x);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl fmt::Display for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
