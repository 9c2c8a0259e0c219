//! Standard bases of Jacobian ideals in the local ring at the origin.
//!
//! Everything is computed modulo `m^(D+1)`, where `m` is the maximal ideal and
//! `D` the degree bound. In that quotient the local order is a well order, so
//! Buchberger completion with truncated S-polynomials terminates. When no
//! standard monomial reaches degree `D`, Nakayama gives `m^D` inside the
//! Jacobian ideal and the truncated answer is the true one.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{Monomial, MultiPoly, Rational};

/// Negative-degree reverse lexicographic order.
///
/// `compare(a, b) == Greater` means `a` is the larger monomial, so the
/// constant monomial is the maximum and `x^2 > x*y > y^2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LocalOrder;

impl LocalOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        // `Monomial`'s own `Ord` lists the locally largest monomial first.
        b.cmp(a)
    }

    pub fn leading<'a>(&self, p: &'a MultiPoly) -> Option<(&'a Monomial, &'a Rational)> {
        p.leading_term()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Generator {
    poly: MultiPoly,
    lead: Monomial,
    lead_coeff: Rational,
    ecart: u32,
    /// Expression of `poly` in the Jacobian partials, modulo `m^(D+1)`.
    cofactors: Vec<MultiPoly>,
}

impl Generator {
    fn new(poly: MultiPoly, cofactors: Vec<MultiPoly>) -> Self {
        let (lead, lead_coeff) = poly.leading_term().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero generator");
        let ecart = poly.ecart();
        Generator { poly, lead, lead_coeff, ecart, cofactors }
    }
}

/// A standard basis of the Jacobian ideal of `f`, certified up to degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    f: MultiPoly,
    partials: Vec<MultiPoly>,
    generators: Vec<Generator>,
    degree_bound: u32,
}

/// Result of dividing `g` by a standard basis.
///
/// The identity `g = sum_j jacobian_quotients[j] * df/dx_j + remainder + tail`
/// holds exactly. `remainder` is supported on standard monomials, the
/// quotients have degree at most `D`, and `tail` lies in `m^(D+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<MultiPoly>,
    pub jacobian_quotients: Vec<MultiPoly>,
    pub remainder: MultiPoly,
    pub tail: MultiPoly,
}

impl StandardBasis {
    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    /// The Jacobian partials `df/dx_0, ..., df/dx_n`, zero ones included.
    pub fn partials(&self) -> &[MultiPoly] {
        &self.partials
    }

    pub fn generators(&self) -> impl Iterator<Item = &MultiPoly> {
        self.generators.iter().map(|g| &g.poly)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| g.lead.clone()).collect()
    }

    /// Cofactors of generator `i` with respect to the partials.
    pub fn cofactors(&self, i: usize) -> &[MultiPoly] {
        &self.generators[i].cofactors
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.generators.iter().any(|g| g.lead.divides(m))
    }

    /// All standard monomials of degree at most `D`, in ascending
    /// lexicographic order of exponent vectors.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let n = self.f.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        self.collect_standard(0, 0, &mut exps, &mut out);
        out
    }

    fn collect_standard(&self, i: usize, used: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == exps.len() {
            let m = Monomial::new(exps.clone());
            if self.is_standard(&m) {
                out.push(m);
            }
            return;
        }
        for e in 0..=(self.degree_bound - used) {
            exps[i] = e;
            // standard monomials form an order ideal, so a nonstandard prefix ends the run
            let prefix = Monomial::new(exps.iter().enumerate().map(|(k, &x)| if k <= i { x } else { 0 }).collect());
            if !self.is_standard(&prefix) {
                break;
            }
            self.collect_standard(i + 1, used + e, exps, out);
        }
        exps[i] = 0;
    }

    /// Truncated division of `g` by the generators.
    pub fn divide(&self, g: &MultiPoly) -> Result<Division> {
        let found = g.total_degree();
        if found > self.degree_bound {
            return Err(Error::DegreeBoundExceeded { bound: self.degree_bound, found });
        }
        let (quotients, remainder) = self.reduce(g);
        let vars = self.f.vars().clone();
        let mut jacobian_quotients = vec![MultiPoly::zero(vars.clone()); self.partials.len()];
        for (q, gen) in quotients.iter().zip(&self.generators) {
            if q.is_zero() {
                continue;
            }
            for (a, c) in jacobian_quotients.iter_mut().zip(&gen.cofactors) {
                *a = &*a + &(q * c).truncate(self.degree_bound);
            }
        }
        let mut tail = g - &remainder;
        for (a, p) in jacobian_quotients.iter().zip(&self.partials) {
            tail = &tail - &(a * p);
        }
        debug_assert!(tail.order().is_none_or(|o| o > self.degree_bound));
        Ok(Division { quotients, jacobian_quotients, remainder, tail })
    }

    /// Full reduction of `g` modulo `m^(D+1)`; returns per-generator
    /// quotients and the remainder.
    fn reduce(&self, g: &MultiPoly) -> (Vec<MultiPoly>, MultiPoly) {
        let vars = self.f.vars().clone();
        let bound = self.degree_bound;
        let mut h = g.truncate(bound);
        let mut quotients = vec![MultiPoly::zero(vars.clone()); self.generators.len()];
        let mut remainder = MultiPoly::zero(vars);
        while let Some((m, c)) = h.pop_leading() {
            let reducer = self
                .generators
                .iter()
                .enumerate()
                .filter(|(_, gen)| gen.lead.divides(&m))
                .min_by_key(|(_, gen)| gen.ecart);
            match reducer {
                None => remainder.add_term(m, c),
                Some((i, gen)) => {
                    let shift = gen.lead.quotient(&m).expect("divisible");
                    let coef = &c / &gen.lead_coeff;
                    // the leading term cancels against the popped one
                    h.add_term(m, c);
                    h.add_scaled_shifted(&gen.poly, &shift, &-coef.clone(), Some(bound), None);
                    quotients[i].add_term(shift, coef);
                }
            }
        }
        (quotients, remainder)
    }
}

/// Division of `g` in the local ring: quotients per generator and the
/// remainder on standard monomials.
pub fn mora_normal_form(g: &MultiPoly, basis: &StandardBasis) -> Result<(Vec<MultiPoly>, MultiPoly)> {
    let division = basis.divide(g)?;
    Ok((division.quotients, division.remainder))
}

fn check_singular(f: &MultiPoly) -> Result<()> {
    for (m, c) in f.terms() {
        if m.degree() <= 1 && !c.is_zero() {
            let what = if m.degree() == 0 { "nonzero constant term" } else { "nonzero linear part" };
            return Err(Error::NotSingular(what.to_string()));
        }
    }
    Ok(())
}

/// Standard basis of `(df/dx_0, ..., df/dx_n)` certified to degree `D`.
pub fn jacobian_std_basis(f: &MultiPoly, degree_bound: u32) -> Result<StandardBasis> {
    check_singular(f)?;
    let vars = f.vars().clone();
    let n = f.nvars();
    let partials: Vec<MultiPoly> = (0..n).map(|i| f.partial(i)).collect();
    let mut basis = StandardBasis { f: f.clone(), partials: partials.clone(), generators: Vec::new(), degree_bound };

    let unit = |j: usize| -> Vec<MultiPoly> {
        (0..n).map(|k| if k == j { MultiPoly::one(vars.clone()) } else { MultiPoly::zero(vars.clone()) }).collect()
    };
    let mut pending: Vec<(MultiPoly, Vec<MultiPoly>)> =
        partials.iter().enumerate().map(|(j, p)| (p.truncate(degree_bound), unit(j))).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    loop {
        for (poly, cof) in pending.drain(..) {
            if let Some(gen) = basis.reduced_generator(poly, cof) {
                let idx = basis.generators.len();
                basis.generators.push(gen);
                pairs.extend((0..idx).map(|i| (i, idx)));
            }
        }
        let Some((i, j)) = pairs.pop() else { break };
        if let Some(spoly) = basis.s_polynomial(i, j) {
            pending.push(spoly);
        }
    }
    Ok(basis)
}

impl StandardBasis {
    fn s_polynomial(&self, i: usize, j: usize) -> Option<(MultiPoly, Vec<MultiPoly>)> {
        let (gi, gj) = (&self.generators[i], &self.generators[j]);
        let lcm = gi.lead.lcm(&gj.lead);
        if lcm.degree() > self.degree_bound {
            return None;
        }
        let vars = self.f.vars().clone();
        let bound = self.degree_bound;
        let si = gi.lead.quotient(&lcm).expect("lcm");
        let sj = gj.lead.quotient(&lcm).expect("lcm");
        let ci = Rational::one() / &gi.lead_coeff;
        let cj = -(Rational::one() / &gj.lead_coeff);
        let mut s = MultiPoly::zero(vars.clone());
        s.add_scaled_shifted(&gi.poly, &si, &ci, Some(bound), None);
        s.add_scaled_shifted(&gj.poly, &sj, &cj, Some(bound), None);
        let cof = gi
            .cofactors
            .iter()
            .zip(&gj.cofactors)
            .map(|(a, b)| {
                let mut c = MultiPoly::zero(vars.clone());
                c.add_scaled_shifted(a, &si, &ci, Some(bound), None);
                c.add_scaled_shifted(b, &sj, &cj, Some(bound), None);
                c
            })
            .collect();
        Some((s, cof))
    }

    /// Reduces a candidate against the current generators; returns a new
    /// generator if something survives.
    fn reduced_generator(&self, poly: MultiPoly, cofactors: Vec<MultiPoly>) -> Option<Generator> {
        let (quotients, remainder) = self.reduce(&poly);
        if remainder.is_zero() {
            return None;
        }
        let mut cof = cofactors;
        for (q, gen) in quotients.iter().zip(&self.generators) {
            if q.is_zero() {
                continue;
            }
            for (c, gc) in cof.iter_mut().zip(&gen.cofactors) {
                *c = (&*c - &(q * gc)).truncate(self.degree_bound);
            }
        }
        Some(Generator::new(remainder, cof))
    }
}

/// Milnor number and monomial basis of the Milnor algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub mu: usize,
    pub basis_monomials: Vec<Monomial>,
    pub weights: Option<Vec<Rational>>,
}

impl SingularityReport {
    /// Position of each basis monomial.
    pub fn index(&self) -> BTreeMap<Monomial, usize> {
        self.basis_monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
    }

    /// Coordinates of a polynomial supported on standard monomials.
    pub fn coordinates(&self, r: &MultiPoly) -> Result<Vec<Rational>> {
        let index = self.index();
        let mut coords = vec![Rational::zero(); self.mu];
        for (m, c) in r.terms() {
            let i = *index.get(m).ok_or(Error::BasisMismatch)?;
            coords[i] = c.clone();
        }
        Ok(coords)
    }

    /// Weighted degrees `sum_k (e_k + 1) w_k` of the basis forms `m_i dx`,
    /// present only for quasi-homogeneous input.
    pub fn exponents(&self) -> Option<Vec<Rational>> {
        let w = self.weights.as_ref()?;
        Some(
            self.basis_monomials
                .iter()
                .map(|m| m.exps().iter().zip(w).map(|(&e, wk)| wk * Rational::from_integer((e + 1).into())).sum())
                .collect(),
        )
    }
}

/// Default degree bound `max(10, 3 deg f)`.
pub fn default_degree_bound(f: &MultiPoly) -> u32 {
    10.max(3 * f.total_degree())
}

pub fn milnor_number(f: &MultiPoly, degree_bound: u32) -> Result<SingularityReport> {
    let basis = jacobian_std_basis(f, degree_bound)?;
    report_from_basis(&basis)
}

pub(crate) fn report_from_basis(basis: &StandardBasis) -> Result<SingularityReport> {
    let basis_monomials = basis.standard_monomials();
    if basis_monomials.iter().any(|m| m.degree() >= basis.degree_bound()) {
        return Err(Error::NonIsolated(basis.degree_bound()));
    }
    Ok(SingularityReport {
        mu: basis_monomials.len(),
        basis_monomials,
        weights: quasihomogeneous_weights(basis.f()),
    })
}

/// Weights `w` with `sum_i e_i w_i = 1` on every exponent vector of `f`,
/// provided the solution is unique and lies in `(0, 1/2]`.
pub fn quasihomogeneous_weights(f: &MultiPoly) -> Option<Vec<Rational>> {
    let n = f.nvars();
    let mut rows: Vec<Vec<Rational>> = f
        .terms()
        .map(|(m, _)| {
            let mut row: Vec<Rational> = m.exps().iter().map(|&e| Rational::from_integer(e.into())).collect();
            row.push(Rational::one());
            row
        })
        .collect();
    if rows.is_empty() {
        return None;
    }
    // Gauss-Jordan on the augmented system
    let mut pivot_row = 0;
    for col in 0..n {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = Rational::one() / &rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let weights: Vec<Rational> = rows[..n].iter().map(|row| row[n].clone()).collect();
    let half = Rational::new(1.into(), 2.into());
    if weights.iter().any(|w| *w <= Rational::zero() || *w > half) {
        return None;
    }
    let euler = (0..n).fold(MultiPoly::zero(f.vars().clone()), |acc, i| {
        &acc + &(&MultiPoly::var(f.vars().clone(), i) * &f.partial(i)).scale(&weights[i])
    });
    assert_eq!(&euler, f, "Euler identity must hold for quasi-homogeneous weights");
    Some(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat, vars, Vars};

    fn xy() -> Vars {
        vars(&["x", "y"])
    }

    fn p(terms: &[(i64, u32, u32)]) -> MultiPoly {
        MultiPoly::from_terms(xy(), terms.iter().map(|&(c, a, b)| (Monomial::new(vec![a, b]), int(c))))
    }

    fn m(a: u32, b: u32) -> Monomial {
        Monomial::new(vec![a, b])
    }

    #[test]
    fn order_is_local() {
        let o = LocalOrder;
        assert_eq!(o.compare(&m(0, 0), &m(1, 0)), Ordering::Greater);
        assert_eq!(o.compare(&m(2, 0), &m(1, 1)), Ordering::Greater);
        assert_eq!(o.compare(&m(1, 1), &m(0, 2)), Ordering::Greater);
        assert_eq!(o.compare(&m(0, 3), &m(2, 2)), Ordering::Greater);
    }

    #[test]
    fn cusp_basis_is_the_partials() {
        let f = p(&[(1, 2, 0), (1, 0, 3)]);
        let g = jacobian_std_basis(&f, 10).unwrap();
        let gens: Vec<_> = g.generators().cloned().collect();
        assert_eq!(gens, vec![p(&[(2, 1, 0)]), p(&[(3, 0, 2)])]);
        assert_eq!(g.leading_terms(), vec![m(1, 0), m(0, 2)]);
    }

    #[test]
    fn morse_basis() {
        let f = p(&[(1, 2, 0), (1, 0, 2)]);
        let g = jacobian_std_basis(&f, 10).unwrap();
        assert_eq!(g.generators().cloned().collect::<Vec<_>>(), vec![p(&[(2, 1, 0)]), p(&[(2, 0, 1)])]);
    }

    #[test]
    fn cusp_normal_forms() {
        let f = p(&[(1, 2, 0), (1, 0, 3)]);
        let g = jacobian_std_basis(&f, 10).unwrap();
        let (q, r) = mora_normal_form(&p(&[(1, 3, 0)]), &g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q[0], MultiPoly::term(xy(), m(2, 0), rat(1, 2)));
        let (q, r) = mora_normal_form(&p(&[(1, 0, 1)]), &g).unwrap();
        assert_eq!(r, p(&[(1, 0, 1)]));
        assert!(q.iter().all(MultiPoly::is_zero));
        let (q, r) = mora_normal_form(&MultiPoly::zero(xy()), &g).unwrap();
        assert!(r.is_zero() && q.iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn degree_bound_is_enforced() {
        let f = p(&[(1, 2, 0), (1, 0, 3)]);
        let g = jacobian_std_basis(&f, 10).unwrap();
        assert_eq!(g.divide(&p(&[(1, 11, 0)])), Err(Error::DegreeBoundExceeded { bound: 10, found: 11 }));
    }

    #[test]
    fn smooth_points_are_rejected() {
        assert!(matches!(jacobian_std_basis(&p(&[(1, 1, 0), (1, 0, 3)]), 10), Err(Error::NotSingular(_))));
        assert!(matches!(jacobian_std_basis(&p(&[(1, 0, 0), (1, 2, 0)]), 10), Err(Error::NotSingular(_))));
    }

    #[test]
    fn milnor_numbers() {
        let report = milnor_number(&p(&[(1, 2, 0), (1, 0, 3)]), 10).unwrap();
        assert_eq!(report.mu, 2);
        assert_eq!(report.basis_monomials, vec![m(0, 0), m(0, 1)]);
        let report = milnor_number(&p(&[(1, 3, 0), (1, 0, 4)]), 12).unwrap();
        assert_eq!(report.basis_monomials, vec![m(0, 0), m(0, 1), m(0, 2), m(1, 0), m(1, 1), m(1, 2)]);
        let t55 = p(&[(1, 5, 0), (1, 0, 5), (1, 2, 2)]);
        assert_eq!(milnor_number(&t55, 15).unwrap().mu, 11);
    }

    #[test]
    fn t55_basis_carries_completions() {
        let t55 = p(&[(1, 5, 0), (1, 0, 5), (1, 2, 2)]);
        let g = jacobian_std_basis(&t55, 15).unwrap();
        let gens: Vec<_> = g.generators().cloned().collect();
        assert_eq!(gens[0], p(&[(5, 4, 0), (2, 1, 2)]));
        assert_eq!(gens[1], p(&[(5, 0, 4), (2, 2, 1)]));
        assert!(gens.len() > 2);
    }

    #[test]
    fn non_isolated_is_reported() {
        let f = p(&[(1, 2, 2)]);
        assert_eq!(milnor_number(&f, 12), Err(Error::NonIsolated(12)));
    }

    #[test]
    fn weights() {
        assert_eq!(quasihomogeneous_weights(&p(&[(1, 2, 0), (1, 0, 3)])), Some(vec![rat(1, 2), rat(1, 3)]));
        assert_eq!(quasihomogeneous_weights(&p(&[(1, 2, 0), (1, 0, 2)])), Some(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(quasihomogeneous_weights(&p(&[(1, 5, 0), (1, 0, 5), (1, 2, 2)])), None);
        // underdetermined
        assert_eq!(quasihomogeneous_weights(&p(&[(1, 2, 2)])), None);
    }

    #[test]
    fn exponents_of_cusp() {
        let report = milnor_number(&p(&[(1, 2, 0), (1, 0, 3)]), 10).unwrap();
        assert_eq!(report.exponents(), Some(vec![rat(5, 6), rat(7, 6)]));
    }
}
