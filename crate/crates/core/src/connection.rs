//! Formal meromorphic connections over `K = Q((t))`.
//!
//! A connection is stored by its matrix `P` in a basis `e_j`, meaning
//! `d/dt e_j = sum_i P_ij e_i`. Lattices are `R`-spans of column vectors with
//! `R = Q[[t]]`, kept in a canonical lower-triangular Hermite form.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{eigenvalues, QMatrix, Rational, RootSplit, SeriesMatrix, TruncatedSeries, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalMeromorphicConnection {
    labels: Vec<String>,
    matrix: SeriesMatrix,
}

impl FormalMeromorphicConnection {
    pub fn new(labels: Vec<String>, matrix: SeriesMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::NonSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if labels.len() != matrix.rows() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: labels.len() });
        }
        if matrix.var() != Var::T {
            return Err(Error::MixedVariable(Var::T.symbol(), matrix.var().symbol()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidArgument("basis labels must be distinct".into()));
        }
        Ok(FormalMeromorphicConnection { labels, matrix })
    }

    /// The rank-one connection `d/dt` on `K` itself.
    pub fn trivial(precision: i64) -> Self {
        Self::new(vec!["1".into()], SeriesMatrix::zeros(Var::T, 1, 1, precision)).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &SeriesMatrix {
        &self.matrix
    }

    pub fn precision(&self) -> i64 {
        self.matrix.min_precision()
    }

    /// `v' + P v`.
    pub fn apply(&self, v: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        let pv = self.matrix.mul_vec(v)?;
        v.iter().zip(pv).map(|(a, b)| a.derivative().try_add(&b)).collect()
    }

    /// `t d/dt`.
    pub fn apply_euler(&self, v: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        Ok(self.apply(v)?.iter().map(|c| c.shift(1)).collect())
    }

    /// Connection in the basis given by the columns of `g`:
    /// `G^-1 P G + G^-1 G'`.
    pub fn gauge(&self, g: &SeriesMatrix) -> Result<Self> {
        let g_inv = g.inverse()?;
        let conj = g_inv.try_mul(&self.matrix)?.try_mul(g)?;
        let matrix = conj.try_add(&g_inv.try_mul(&g.derivative())?)?;
        Self::new(self.labels.clone(), matrix)
    }

    /// Iterates `L_(k+1) = L_k + t d/dt (L_k)` from `start`.
    ///
    /// The verdict is `Regular` once two consecutive lattices coincide,
    /// `Irregular` once the smallest valuation in the lattice has dropped on
    /// `dim` consecutive steps, and `Inconclusive` when `max_steps` or the
    /// available precision runs out first.
    pub fn saturate(&self, start: &Lattice, max_steps: usize) -> Saturation {
        let mut lattice = start.clone();
        let mut drops = 0;
        for step in 0..=max_steps {
            let next = match self.saturation_step(&lattice) {
                Ok(next) => next,
                Err(_) => return Saturation { lattice, verdict: Verdict::Inconclusive, steps: step },
            };
            if next.index_exponent() == lattice.index_exponent() {
                return Saturation { lattice, verdict: Verdict::Regular, steps: step };
            }
            if next.min_valuation() < lattice.min_valuation() {
                drops += 1;
            } else {
                drops = 0;
            }
            lattice = next;
            if drops >= self.dim() {
                return Saturation { lattice, verdict: Verdict::Irregular, steps: step + 1 };
            }
        }
        Saturation { lattice, verdict: Verdict::Inconclusive, steps: max_steps }
    }

    fn saturation_step(&self, lattice: &Lattice) -> Result<Lattice> {
        let mut columns = lattice.generators.clone();
        for b in &lattice.generators {
            columns.push(self.apply_euler(b)?);
        }
        Lattice::span(self.dim(), columns)
    }

    /// Matrix of `t d/dt` on `L / tL` in the generators of `L`.
    pub fn residue(&self, lattice: &Lattice) -> Result<QMatrix> {
        let n = self.dim();
        let mut res = QMatrix::zeros(n, n);
        for (j, b) in lattice.generators.iter().enumerate() {
            let w = self.apply_euler(b)?;
            let coords = lattice.solve(&w)?;
            for (i, c) in coords.iter().enumerate() {
                if c.order_bound() < 0 {
                    return Err(Error::NotSaturated);
                }
                let c0 = c.coeff(0).ok_or_else(|| Error::InvalidArgument("precision exhausted in residue".into()))?;
                res.set(i, j, c0);
            }
        }
        Ok(res)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Irregular,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Regular => "regular",
            Verdict::Irregular => "irregular",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub lattice: Lattice,
    pub verdict: Verdict,
    /// Number of enlargement steps taken.
    pub steps: usize,
}

/// An `R`-lattice in `K^n`, stored in canonical form: generator `j` has
/// coordinate `j` equal to `t^(v_j)`, zeros above it, and the entries below
/// reduced modulo the pivot powers of their rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    generators: Vec<Vec<TruncatedSeries>>,
    pivots: Vec<i64>,
}

impl Lattice {
    /// `R^n` at precision `precision`.
    pub fn standard(n: usize, precision: i64) -> Self {
        let generators = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        if i == j {
                            TruncatedSeries::one(Var::T, precision)
                        } else {
                            TruncatedSeries::zero(Var::T, precision)
                        }
                    })
                    .collect()
            })
            .collect();
        Lattice { generators, pivots: vec![0; n] }
    }

    /// `R`-span of the given vectors, which must have full rank.
    pub fn span(n: usize, mut columns: Vec<Vec<TruncatedSeries>>) -> Result<Self> {
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: columns.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0) });
        }
        let mut pivots = Vec::with_capacity(n);
        for row in 0..n {
            let best = (row..columns.len())
                .filter(|&j| !columns[j][row].is_zero())
                .min_by_key(|&j| columns[j][row].order_bound())
                .ok_or(Error::NotInvertible)?;
            columns.swap(row, best);
            let v = columns[row][row].order_bound();
            let unit_inv = columns[row][row].shift(-v).invert()?;
            let pivot: Vec<TruncatedSeries> = columns[row].iter().map(|c| c * &unit_inv).collect();
            for col in columns.iter_mut().skip(row + 1) {
                if col[row].is_zero() {
                    continue;
                }
                let q = col[row].shift(-v);
                for (x, p) in col.iter_mut().zip(&pivot) {
                    *x = &*x - &(&q * p);
                }
            }
            columns[row] = pivot;
            // the exact pivot entry makes the form canonical
            columns[row][row] = TruncatedSeries::monomial(Var::T, Rational::one(), v, columns[row][row].precision());
            pivots.push(v);
        }
        columns.truncate(n);
        let mut lattice = Lattice { generators: columns, pivots };
        lattice.reduce_below_pivots();
        Ok(lattice)
    }

    fn reduce_below_pivots(&mut self) {
        let n = self.pivots.len();
        for row in 1..n {
            let v = self.pivots[row];
            let pivot = self.generators[row].clone();
            for j in 0..row {
                let entry = &self.generators[j][row];
                // R-multiple of the pivot column that clears powers >= v
                let high: Vec<(i64, Rational)> = entry.terms().filter(|(k, _)| *k >= v).map(|(k, c)| (k, c.clone())).collect();
                if high.is_empty() {
                    continue;
                }
                let prec = entry.precision() - v;
                let mut q = TruncatedSeries::zero(Var::T, prec);
                for (k, c) in high {
                    q = &q + &TruncatedSeries::monomial(Var::T, c, k - v, prec);
                }
                let col = &mut self.generators[j];
                for (x, p) in col.iter_mut().zip(&pivot) {
                    *x = &*x - &(&q * p);
                }
            }
        }
    }

    pub fn generators(&self) -> &[Vec<TruncatedSeries>] {
        &self.generators
    }

    pub fn pivots(&self) -> &[i64] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Sum of pivot valuations: `[R^n : L] = t^(index_exponent)` when `L`
    /// lies inside `R^n`.
    pub fn index_exponent(&self) -> i64 {
        self.pivots.iter().sum()
    }

    /// Smallest valuation over all nonzero generator entries.
    pub fn min_valuation(&self) -> i64 {
        self.generators.iter().flatten().filter_map(TruncatedSeries::valuation).min().unwrap_or(0)
    }

    /// True when the canonical forms agree on every known coefficient.
    pub fn agrees_with(&self, other: &Lattice) -> bool {
        self.pivots == other.pivots
            && self.generators.iter().flatten().zip(other.generators.iter().flatten()).all(|(a, b)| a.agrees_with(b))
    }

    /// Coordinates of `w` in the generators, by forward substitution.
    pub fn solve(&self, w: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        let n = self.dim();
        if w.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: w.len() });
        }
        let mut coords: Vec<TruncatedSeries> = Vec::with_capacity(n);
        for (i, (wi, pivot)) in w.iter().zip(&self.pivots).enumerate() {
            let mut acc = wi.clone();
            for (j, c) in coords.iter().enumerate() {
                acc = &acc - &(&self.generators[j][i] * c);
            }
            coords.push(acc.shift(-pivot));
        }
        Ok(coords)
    }
}

/// Eigenvalues of a residue matrix split into rational roots and the
/// remaining irreducible factor.
pub fn residue_eigenvalues(res: &QMatrix) -> Result<RootSplit> {
    eigenvalues(res)
}

/// Rotation numbers `(-rho) mod 1` of the rational residue eigenvalues, as a
/// sorted multiset. The monodromy eigenvalue is `exp(2 pi i r)` for rotation
/// number `r`, i.e. `exp(-2 pi i rho)`.
pub fn monodromy_rotation_numbers(res: &QMatrix) -> Result<Vec<Rational>> {
    let split = residue_eigenvalues(res)?;
    let mut out: Vec<Rational> = split.flat().iter().map(|rho| crate::series::rational::frac(&-rho)).collect();
    out.sort();
    Ok(out)
}

/// Sorted rational eigenvalues with multiplicity.
pub fn sorted_rational_eigenvalues(res: &QMatrix) -> Result<Vec<Rational>> {
    let mut out = residue_eigenvalues(res)?.flat();
    out.sort();
    Ok(out)
}

/// `diag(c_i / t)` over `Q((t))`.
pub fn diagonal_simple_pole(labels: Vec<String>, residues: &[Rational], precision: i64) -> Result<FormalMeromorphicConnection> {
    let entries = residues
        .iter()
        .map(|c| {
            if c.is_zero() {
                TruncatedSeries::zero(Var::T, precision)
            } else {
                TruncatedSeries::monomial(Var::T, c.clone(), -1, precision)
            }
        })
        .collect();
    FormalMeromorphicConnection::new(labels, SeriesMatrix::diag(Var::T, entries))
}
