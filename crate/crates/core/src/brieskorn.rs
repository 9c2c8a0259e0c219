//! Brieskorn lattice computations.
//!
//! Top-form classes are written in the basis `m_i dx` indexed by the
//! standard monomials, with coefficients in `Q[[s]]` where `s` acts as the
//! inverse of `d/dt`. The basic relation is `[df ^ eta] = s [d eta]`, and `t`
//! acts as multiplication by `f`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::connection::{diagonal_simple_pole, FormalMeromorphicConnection};
use crate::error::{Error, Result};
use crate::forms::{df_wedge, integrate_top_wrt, PolyForm};
use crate::local::{jacobian_std_basis, report_from_basis, SingularityReport, StandardBasis};
use crate::series::{eigenvalues, Monomial, MultiPoly, QMatrix, Rational, SeriesMatrix, TruncatedSeries, Var};

/// `f` together with its certified standard basis and Milnor algebra basis.
#[derive(Clone, Debug)]
pub struct LocalContext {
    basis: StandardBasis,
    report: Arc<SingularityReport>,
}

impl LocalContext {
    pub fn new(f: &MultiPoly, degree_bound: u32) -> Result<Self> {
        let basis = jacobian_std_basis(f, degree_bound)?;
        let report = Arc::new(report_from_basis(&basis)?);
        Ok(LocalContext { basis, report })
    }

    /// Context whose degree bound is large enough for reductions to
    /// `s`-precision `precision`; see [`working_degree`].
    pub fn for_precision(f: &MultiPoly, degree_bound: u32, precision: i64) -> Result<Self> {
        let base = Self::new(f, degree_bound)?;
        let target = working_degree(&base, precision);
        if target == degree_bound {
            return Ok(base);
        }
        let wide = Self::new(f, target)?;
        if wide.report.basis_monomials != base.report.basis_monomials {
            return Err(Error::UnstableTruncation(format!(
                "Milnor algebra basis changes between degree bounds {degree_bound} and {target}"
            )));
        }
        Ok(wide)
    }

    pub fn f(&self) -> &MultiPoly {
        self.basis.f()
    }

    pub fn basis(&self) -> &StandardBasis {
        &self.basis
    }

    pub fn report(&self) -> &SingularityReport {
        &self.report
    }

    pub fn mu(&self) -> usize {
        self.report.mu
    }

    pub fn degree_bound(&self) -> u32 {
        self.basis.degree_bound()
    }

    /// The basis form `m_i dx`.
    pub fn basis_form(&self, i: usize) -> PolyForm {
        let f = self.f();
        PolyForm::top(MultiPoly::term(f.vars().clone(), self.report.basis_monomials[i].clone(), Rational::one()))
    }
}

/// Degree bound for reductions to `s`-precision `N`.
///
/// Each step of the reduction loop may lower the degree of the iterate by up
/// to `deg f`, so terms dropped above degree `D` can reach the standard
/// monomials after roughly `(D - top) / deg f` steps, where `top` is the
/// largest degree of a basis monomial. The bound `deg f * (N + 1) + top`
/// keeps them beyond `s^N`.
pub fn working_degree(ctx: &LocalContext, precision: i64) -> u32 {
    let top = ctx.report.basis_monomials.iter().map(Monomial::degree).max().unwrap_or(0);
    let steps = u32::try_from(precision.max(0)).unwrap_or(u32::MAX).saturating_add(1);
    ctx.degree_bound().max(ctx.f().total_degree().saturating_mul(steps).saturating_add(top))
}

/// Coordinates of a class in the basis `m_i dx`, as series in `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrieskornElement {
    coords: Vec<TruncatedSeries>,
    basis_ref: Arc<SingularityReport>,
}

impl BrieskornElement {
    pub fn new(coords: Vec<TruncatedSeries>, basis_ref: Arc<SingularityReport>) -> Result<Self> {
        if coords.len() != basis_ref.mu {
            return Err(Error::DimensionMismatch { expected: basis_ref.mu, found: coords.len() });
        }
        if let Some(c) = coords.iter().find(|c| c.var() != Var::S) {
            return Err(Error::MixedVariable(Var::S.symbol(), c.var().symbol()));
        }
        Ok(BrieskornElement { coords, basis_ref })
    }

    pub fn zero(ctx: &LocalContext, precision: i64) -> Self {
        BrieskornElement { coords: vec![TruncatedSeries::zero(Var::S, precision); ctx.mu()], basis_ref: ctx.report.clone() }
    }

    pub fn coords(&self) -> &[TruncatedSeries] {
        &self.coords
    }

    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.basis_ref.basis_monomials
    }

    pub fn precision(&self) -> i64 {
        self.coords.iter().map(TruncatedSeries::precision).min().unwrap_or(i64::MAX)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(TruncatedSeries::is_zero)
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|c| c.shift(k))
    }

    pub fn truncate(&self, precision: i64) -> Self {
        self.map(|c| c.truncate(precision))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(BrieskornElement { coords, basis_ref: self.basis_ref.clone() })
    }

    fn map(&self, f: impl Fn(&TruncatedSeries) -> TruncatedSeries) -> Self {
        BrieskornElement { coords: self.coords.iter().map(f).collect(), basis_ref: self.basis_ref.clone() }
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.basis_ref.basis_monomials != other.basis_ref.basis_monomials {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }
}

/// The matrix of `t` in the basis `m_j dx`: column `j` is the class of
/// `f m_j dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMatrix {
    matrix: SeriesMatrix,
    f: MultiPoly,
    basis_ref: Arc<SingularityReport>,
}

impl TMatrix {
    pub fn matrix(&self) -> &SeriesMatrix {
        &self.matrix
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.basis_ref.basis_monomials
    }

    pub fn precision(&self) -> i64 {
        self.matrix.min_precision()
    }

    pub fn determinant(&self) -> Result<TruncatedSeries> {
        self.matrix.determinant()
    }
}

/// Reduction of a top form, with the degree-truncation error made explicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub element: BrieskornElement,
    /// `tails[k]` is the part of the `k`-th iterate dropped above the degree
    /// bound; the true class is `element + sum_k s^(k+1) [tails[k] dx]`.
    pub tails: Vec<MultiPoly>,
}

impl Reduction {
    pub fn is_exact(&self) -> bool {
        self.tails.iter().all(MultiPoly::is_zero)
    }
}

/// Class of `omega` modulo `s^precision`.
pub fn reduce_to_basis(omega: &PolyForm, ctx: &LocalContext, precision: i64) -> Result<BrieskornElement> {
    Ok(reduce_with_tails(omega, ctx, precision)?.element)
}

pub fn reduce_with_tails(omega: &PolyForm, ctx: &LocalContext, precision: i64) -> Result<Reduction> {
    let mu = ctx.mu();
    let mut g = omega.top_coefficient().ok_or(Error::BasisMismatch)?;
    if g.vars() != ctx.f().vars() {
        return Err(Error::BasisMismatch);
    }
    let steps = precision.max(0) as usize;
    let mut dense = vec![vec![Rational::zero(); steps]; mu];
    let mut tails = Vec::new();
    for k in 0..steps {
        if g.is_zero() {
            break;
        }
        let division = ctx.basis.divide(&g)?;
        for (row, c) in dense.iter_mut().zip(ctx.report.coordinates(&division.remainder)?) {
            row[k] = c;
        }
        tails.push(division.tail);
        // [sum a_j f_j dx] = [df ^ eta] = s [d eta] with d eta = (sum_j da_j/dx_j) dx
        g = division
            .jacobian_quotients
            .iter()
            .enumerate()
            .fold(MultiPoly::zero(g.vars().clone()), |acc, (j, a)| &acc + &a.partial(j));
    }
    let coords = dense.into_iter().map(|c| TruncatedSeries::from_coeffs(Var::S, 0, c, precision)).collect();
    Ok(Reduction { element: BrieskornElement { coords, basis_ref: ctx.report.clone() }, tails })
}

/// `reduce_to_basis(df ^ eta)` for the primitive `eta` of `omega` taken in
/// `x_var`; equals `s` times the class of `omega`.
pub fn reduce_primitive(omega: &PolyForm, var: usize, ctx: &LocalContext, precision: i64) -> Result<BrieskornElement> {
    let eta = integrate_top_wrt(omega, var);
    reduce_to_basis(&df_wedge(ctx.f(), &eta)?, ctx, precision)
}

pub fn t_matrix(ctx: &LocalContext, precision: i64) -> Result<TMatrix> {
    let columns = (0..ctx.mu())
        .map(|j| {
            let omega = ctx.basis_form(j).mul_poly(ctx.f());
            Ok(reduce_to_basis(&omega, ctx, precision)?.coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TMatrix {
        matrix: SeriesMatrix::from_columns(Var::S, &columns),
        f: ctx.f().clone(),
        basis_ref: ctx.report.clone(),
    })
}

/// `t` acting on coordinates: `T(s) c(s) + s^2 c'(s)`, at precision `N - 1`.
pub fn microlocal_apply(t: &TMatrix, c: &BrieskornElement) -> Result<BrieskornElement> {
    if t.basis_ref.basis_monomials != c.basis_ref.basis_monomials {
        return Err(Error::BasisMismatch);
    }
    let precision = c.precision() - 1;
    let tc = t.matrix.mul_vec(&c.coords)?;
    let coords = tc
        .iter()
        .zip(&c.coords)
        .map(|(a, ci)| Ok(a.try_add(&ci.derivative().shift(2))?.truncate(precision)))
        .collect::<Result<_>>()?;
    Ok(BrieskornElement { coords, basis_ref: c.basis_ref.clone() })
}

/// Labels `m_i*dx` for connection bases.
pub fn basis_labels(ctx: &LocalContext) -> Vec<String> {
    let f = ctx.f();
    let dx: Vec<String> = f.vars().iter().map(|v| format!("d{v}")).collect();
    ctx.report
        .basis_monomials
        .iter()
        .map(|m| {
            if m.degree() == 0 {
                return dx.join("^");
            }
            let mono = MultiPoly::term(f.vars().clone(), m.clone(), Rational::one());
            format!("{mono}*{}", dx.join("^"))
        })
        .collect()
}

/// The exact connection `diag((alpha_i - 1) / t)` for quasi-homogeneous `f`.
pub fn gm_connection_qh(ctx: &LocalContext, precision_t: i64) -> Result<FormalMeromorphicConnection> {
    let alphas = ctx.report.exponents().ok_or(Error::NotQuasiHomogeneous)?;
    let residues: Vec<Rational> = alphas.iter().map(|a| a - Rational::one()).collect();
    diagonal_simple_pole(basis_labels(ctx), &residues, precision_t)
}

/// First two `s`-coefficients of `T(s)` and what can be read off them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralData {
    pub a0: QMatrix,
    pub a1: QMatrix,
    pub nilpotent_a0: bool,
    /// Eigenvalues of `A1`, sorted, present only when `A0 = 0` and all of
    /// them are rational.
    pub exponents: Option<Vec<Rational>>,
}

pub fn spectral_first_order(t: &TMatrix) -> Result<SpectralData> {
    let missing = || Error::InvalidArgument("T(s) precision below 2".into());
    let a0 = t.matrix.coefficient(0).ok_or_else(missing)?;
    let a1 = t.matrix.coefficient(1).ok_or_else(missing)?;
    let nilpotent_a0 = a0.pow(a0.rows() as u32)?.is_zero();
    let exponents = if a0.is_zero() {
        let split = eigenvalues(&a1)?;
        split.all_rational().then(|| {
            let mut e = split.flat();
            e.sort();
            e
        })
    } else {
        None
    };
    Ok(SpectralData { a0, a1, nilpotent_a0, exponents })
}

/// A nonzero piece of the relative cohomology over `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyPiece {
    pub degree: usize,
    pub dimension: usize,
}

/// Degrees and `K`-dimensions of the nonzero relative cohomology pieces:
/// the rank-one trivial piece in degree 0 and the Brieskorn lattice piece of
/// rank `mu` in degree `n`. The rank in degree `n` is read from `T(s)`,
/// which must have nonzero determinant.
pub fn cohomology_ranks(ctx: &LocalContext, t: &TMatrix) -> Result<Vec<CohomologyPiece>> {
    let n = ctx.f().nvars() - 1;
    let det = t.determinant()?;
    let rank = if det.is_zero() { 0 } else { t.matrix.rows() };
    let top = CohomologyPiece { degree: n, dimension: rank };
    if n == 0 {
        // in one variable the two pieces share degree 0
        return Ok(vec![CohomologyPiece { degree: 0, dimension: 1 + rank }]);
    }
    Ok(vec![CohomologyPiece { degree: 0, dimension: 1 }, top])
}

/// The connection on the degree-0 piece.
pub fn degree_zero_connection(precision_t: i64) -> FormalMeromorphicConnection {
    FormalMeromorphicConnection::trivial(precision_t)
}
