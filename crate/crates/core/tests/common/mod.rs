//! Fixtures, random generators and brute-force oracles shared by the
//! integration tests.

#![allow(dead_code)]

use gaussmanin::forms::PolyForm;
use gaussmanin::series::{int, rat, vars, Monomial, MultiPoly, Rational, TruncatedSeries, Var, Vars};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn xy() -> Vars {
    vars(&["x", "y"])
}

/// `sum c * x^a * y^b`.
pub fn poly2(terms: &[(i64, u32, u32)]) -> MultiPoly {
    MultiPoly::from_terms(xy(), terms.iter().map(|&(c, a, b)| (Monomial::new(vec![a, b]), int(c))))
}

pub fn cusp() -> MultiPoly {
    poly2(&[(1, 2, 0), (1, 0, 3)])
}

pub fn node() -> MultiPoly {
    poly2(&[(1, 2, 0), (1, 0, 2)])
}

pub fn e6() -> MultiPoly {
    poly2(&[(1, 3, 0), (1, 0, 4)])
}

pub fn a2_one_var() -> MultiPoly {
    MultiPoly::term(vars(&["x"]), Monomial::new(vec![3]), int(1))
}

pub fn t55() -> MultiPoly {
    poly2(&[(1, 5, 0), (1, 0, 5), (1, 2, 2)])
}

/// Quasi-homogeneous fixtures with their weights, solved by hand.
pub fn qh_fixtures() -> Vec<(&'static str, MultiPoly, Vec<Rational>)> {
    vec![
        ("x^2+y^3", cusp(), vec![rat(1, 2), rat(1, 3)]),
        ("x^2+y^2", node(), vec![rat(1, 2), rat(1, 2)]),
        ("x^3+y^4", e6(), vec![rat(1, 3), rat(1, 4)]),
        ("x^3", a2_one_var(), vec![rat(1, 3)]),
    ]
}

pub fn all_fixtures() -> Vec<(&'static str, MultiPoly)> {
    let mut v: Vec<_> = qh_fixtures().into_iter().map(|(n, f, _)| (n, f)).collect();
    v.push(("x^5+y^5+x^2*y^2", t55()));
    v
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_poly<R: Rng>(rng: &mut R, vs: &Vars, max_degree: u32, max_terms: usize) -> MultiPoly {
    let n = vs.len();
    let mut p = MultiPoly::zero(vs.clone());
    for _ in 0..rng.gen_range(0..=max_terms) {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_degree);
        for e in exps.iter_mut() {
            let take = rng.gen_range(0..=budget);
            *e = take;
            budget -= take;
        }
        p.add_term(Monomial::new(exps), small_rational(rng));
    }
    p
}

pub fn random_form<R: Rng>(rng: &mut R, vs: &Vars, degree: usize, max_degree: u32) -> PolyForm {
    let n = vs.len();
    let mut w = PolyForm::zero(vs.clone(), degree);
    for idx in subsets(n, degree) {
        if rng.gen_bool(0.7) {
            w = w.add(&PolyForm::monomial_form(random_poly(rng, vs, max_degree, 3), idx));
        }
    }
    w
}

/// Strictly increasing `k`-subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

pub fn random_series<R: Rng>(rng: &mut R, var: Var, start: i64, precision: i64) -> TruncatedSeries {
    let coeffs = (start..precision).map(|_| if rng.gen_bool(0.3) { Rational::zero() } else { small_rational(rng) }).collect();
    TruncatedSeries::from_coeffs(var, start, coeffs, precision)
}

/// Monomials of degree at most `bound` in `n` variables.
pub fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == n {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, bound, &mut Vec::new(), &mut out);
    out
}

/// Dense linear algebra on the vector space of polynomials of degree at
/// most `K`, spanned modulo `m^(K+1)` by `m * df/dx_j`. Shares no code with
/// the standard-basis engine.
pub struct JacobianSpan {
    monomials: Vec<Monomial>,
    /// Row echelon basis, each row with its pivot column.
    rows: Vec<(usize, Vec<Rational>)>,
}

impl JacobianSpan {
    pub fn new(f: &MultiPoly, bound: u32) -> Self {
        let n = f.nvars();
        let monomials = monomials_up_to(n, bound);
        let mut span = JacobianSpan { monomials: monomials.clone(), rows: Vec::new() };
        for j in 0..n {
            let fj = f.partial(j);
            for m in &monomials {
                let g = fj.mul_term(m, &int(1)).truncate(bound);
                let v = span.vector(&g);
                span.insert(v);
            }
        }
        span
    }

    fn vector(&self, g: &MultiPoly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.monomials.len()];
        for (m, c) in g.terms() {
            if let Some(i) = self.monomials.iter().position(|x| x == m) {
                v[i] = c.clone();
            }
        }
        v
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &c * b;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Rational>) {
        let v = self.reduce(v);
        if let Some(p) = v.iter().position(|c| !c.is_zero()) {
            let inv = v[p].recip();
            let v: Vec<Rational> = v.iter().map(|c| c * &inv).collect();
            for (_, row) in self.rows.iter_mut() {
                if !row[p].is_zero() {
                    let c = row[p].clone();
                    for (a, b) in row.iter_mut().zip(&v) {
                        *a -= &c * b;
                    }
                }
            }
            self.rows.push((p, v));
        }
    }

    /// `dim k[x] / (J + m^(K+1))`.
    pub fn quotient_dimension(&self) -> usize {
        self.monomials.len() - self.rows.len()
    }

    /// Membership of `g` (truncated at `K`) in `J + m^(K+1)`.
    pub fn contains(&self, g: &MultiPoly) -> bool {
        let bound = self.monomials.iter().map(Monomial::degree).max().unwrap_or(0);
        self.reduce(self.vector(&g.truncate(bound))).iter().all(Rational::is_zero)
    }
}

/// Milnor number by brute force: the quotient dimension once it stops
/// changing between consecutive bounds.
pub fn brute_force_mu(f: &MultiPoly, max_bound: u32) -> Option<usize> {
    let mut prev = None;
    for k in 1..=max_bound {
        let d = JacobianSpan::new(f, k).quotient_dimension();
        if prev == Some(d) {
            return Some(d);
        }
        prev = Some(d);
    }
    None
}
