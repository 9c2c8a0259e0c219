//! Polynomial differential forms in `x_0..x_n`.
//!
//! The volume form is `dx_0 ^ ... ^ dx_n`, and `dxhat_j` denotes the `n`-form
//! with `dx_j` omitted. With this orientation
//! `df ^ dxhat_j = (-1)^j (df/dx_j) dx_0 ^ ... ^ dx_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::local::{Division, StandardBasis};
use crate::series::{MultiPoly, Rational, Vars};

/// A `p`-form `sum_I g_I dx_I` over strictly increasing index tuples `I`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyForm {
    vars: Vars,
    degree: usize,
    components: BTreeMap<Vec<usize>, MultiPoly>,
}

fn sign(negative: bool) -> Rational {
    if negative {
        -Rational::one()
    } else {
        Rational::one()
    }
}

impl PolyForm {
    pub fn zero(vars: Vars, degree: usize) -> Self {
        assert!(degree <= vars.len(), "form degree above ambient dimension");
        PolyForm { vars, degree, components: BTreeMap::new() }
    }

    /// `g` as a 0-form.
    pub fn function(g: MultiPoly) -> Self {
        let mut w = Self::zero(g.vars().clone(), 0);
        w.insert(Vec::new(), g);
        w
    }

    /// `g dx_0 ^ ... ^ dx_n`.
    pub fn top(g: MultiPoly) -> Self {
        let n1 = g.nvars();
        let mut w = Self::zero(g.vars().clone(), n1);
        w.insert((0..n1).collect(), g);
        w
    }

    /// `g dx_I`; `indices` must be strictly increasing.
    pub fn monomial_form(g: MultiPoly, indices: Vec<usize>) -> Self {
        assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must increase");
        assert!(indices.last().is_none_or(|&i| i < g.nvars()), "index out of range");
        let mut w = Self::zero(g.vars().clone(), indices.len());
        w.insert(indices, g);
        w
    }

    /// `g dxhat_j`.
    pub fn hat(g: MultiPoly, j: usize) -> Self {
        let idx = (0..g.nvars()).filter(|&i| i != j).collect();
        Self::monomial_form(g, idx)
    }

    /// `sum_i g_i dx_i`.
    pub fn one_form(gs: Vec<MultiPoly>) -> Self {
        let vars = gs[0].vars().clone();
        let mut w = Self::zero(vars, 1);
        for (i, g) in gs.into_iter().enumerate() {
            w.insert(vec![i], g);
        }
        w
    }

    fn insert(&mut self, idx: Vec<usize>, g: MultiPoly) {
        if g.is_zero() {
            return;
        }
        match self.components.get_mut(&idx) {
            Some(existing) => {
                let sum = &*existing + &g;
                if sum.is_zero() {
                    self.components.remove(&idx);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.components.insert(idx, g);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of variables, `n + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiPoly)> {
        self.components.iter()
    }

    pub fn component(&self, idx: &[usize]) -> MultiPoly {
        self.components.get(idx).cloned().unwrap_or_else(|| MultiPoly::zero(self.vars.clone()))
    }

    /// Coefficient `g` of a top form `g dx_0 ^ ... ^ dx_n`.
    pub fn top_coefficient(&self) -> Option<MultiPoly> {
        if self.degree != self.ambient_dim() {
            return None;
        }
        Some(self.component(&(0..self.degree).collect::<Vec<_>>()))
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.degree, other.degree, "form degrees differ");
        let mut out = self.clone();
        for (idx, g) in &other.components {
            out.insert(idx.clone(), g.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyForm {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> PolyForm {
        let mut out = PolyForm::zero(self.vars.clone(), self.degree);
        for (idx, g) in &self.components {
            out.insert(idx.clone(), g.scale(c));
        }
        out
    }

    /// Multiplication by a function.
    pub fn mul_poly(&self, h: &MultiPoly) -> PolyForm {
        let mut out = PolyForm::zero(self.vars.clone(), self.degree);
        for (idx, g) in &self.components {
            out.insert(idx.clone(), g * h);
        }
        out
    }

    pub fn exterior_d(&self) -> Result<PolyForm> {
        if self.degree >= self.ambient_dim() {
            return Err(Error::TopDegree);
        }
        let mut out = PolyForm::zero(self.vars.clone(), self.degree + 1);
        for (idx, g) in &self.components {
            for i in 0..self.ambient_dim() {
                if idx.contains(&i) {
                    continue;
                }
                let dg = g.partial(i);
                if dg.is_zero() {
                    continue;
                }
                // moving dx_i past the indices smaller than i
                let pos = idx.iter().filter(|&&k| k < i).count();
                let mut new_idx = idx.clone();
                new_idx.insert(pos, i);
                out.insert(new_idx, dg.scale(&sign(pos % 2 == 1)));
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm> {
        let deg = self.degree + other.degree;
        if deg > self.ambient_dim() {
            return Err(Error::DegreeOverflow(deg, self.ambient_dim()));
        }
        let mut out = PolyForm::zero(self.vars.clone(), deg);
        for (a, g) in &self.components {
            for (b, h) in &other.components {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let inversions: usize = a.iter().map(|i| b.iter().filter(|&&j| j < *i).count()).sum();
                let mut idx: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                idx.sort_unstable();
                out.insert(idx, (g * h).scale(&sign(inversions % 2 == 1)));
            }
        }
        Ok(out)
    }
}

/// The 1-form `df`.
pub fn differential(f: &MultiPoly) -> PolyForm {
    PolyForm::function(f.clone()).exterior_d().expect("0-form in at least one variable")
}

/// `df ^ omega`.
pub fn df_wedge(f: &MultiPoly, omega: &PolyForm) -> Result<PolyForm> {
    differential(f).wedge(omega)
}

/// Primitive of a top form, integrating in `x_0`: `(int g dx_0) dx_1 ^ ... ^ dx_n`.
pub fn integrate_top(omega: &PolyForm) -> PolyForm {
    integrate_top_wrt(omega, 0)
}

/// Primitive of a top form integrating in `x_i`:
/// `(-1)^i (int g dx_i) dxhat_i`, so that `d(eta) = omega`.
pub fn integrate_top_wrt(omega: &PolyForm, i: usize) -> PolyForm {
    let g = omega.top_coefficient().expect("top-degree form expected");
    PolyForm::hat(g.integrate(i).scale(&sign(i % 2 == 1)), i)
}

/// Gelfand-Leray division of a top form by `df`.
///
/// `omega = df ^ eta + remainder dx + tail dx`, where `remainder` is supported
/// on standard monomials and `tail` collects terms above the certified degree
/// bound (it lies in the maximal ideal power `m^(D+1)`, hence in the Jacobian
/// ideal of the local ring). When the remainder vanishes, `eta` is the
/// Gelfand-Leray form `omega / df` modulo that truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GelfandLeray {
    pub eta: PolyForm,
    pub remainder: MultiPoly,
    pub tail: MultiPoly,
}

pub fn divide_by_df(f: &MultiPoly, omega: &PolyForm, basis: &StandardBasis) -> Result<GelfandLeray> {
    if basis.f() != f {
        return Err(Error::BasisMismatch);
    }
    let g = omega.top_coefficient().ok_or(Error::BasisMismatch)?;
    let division = basis.divide(&g)?;
    Ok(gelfand_leray_from(&division, f.vars()))
}

pub(crate) fn gelfand_leray_from(division: &Division, vars: &Vars) -> GelfandLeray {
    let mut eta = PolyForm::zero(vars.clone(), vars.len() - 1);
    for (j, a) in division.jacobian_quotients.iter().enumerate() {
        eta = eta.add(&PolyForm::hat(a.scale(&sign(j % 2 == 1)), j));
    }
    GelfandLeray { eta, remainder: division.remainder.clone(), tail: division.tail.clone() }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(idx, g)| {
                if idx.is_empty() {
                    format!("({g})")
                } else {
                    let d: Vec<String> = idx.iter().map(|&i| format!("d{}", self.vars[i])).collect();
                    format!("({g}) {}", d.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
