//! Characteristic polynomials and exact rational root extraction.
//!
//! Rational roots are found without floating point: Sturm sequences isolate
//! each real root of the square-free parts in a rational interval, the
//! interval is shrunk until it holds at most one rational whose denominator
//! divides the leading coefficient, and the simplest rational in it is tested
//! exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::QMatrix;
use super::poly::{vars, MultiPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Name of the indeterminate of characteristic polynomials.
pub const LAMBDA: &str = "lambda";

/// Monic `det(lambda*I - m)` by the Faddeev-LeVerrier recursion.
pub fn char_poly(m: &QMatrix) -> Result<MultiPoly> {
    Ok(MultiPoly::from_univariate(vars(&[LAMBDA]), &char_poly_coeffs(m)?))
}

/// Coefficients of the characteristic polynomial, lowest degree first.
pub fn char_poly_coeffs(m: &QMatrix) -> Result<Vec<Rational>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = QMatrix::zeros(n, n);
    for k in 1..=n {
        mk = m.mul(&mk)?.add(&QMatrix::identity(n).scale(&c[n - k + 1]));
        let tr = m.mul(&mk)?.trace();
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    Ok(c)
}

/// Rational roots (with multiplicity) and the cofactor carrying no rational
/// roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    /// Distinct rational roots in increasing order with their multiplicities.
    pub roots: Vec<(Rational, usize)>,
    /// `p / prod (lambda - r)^m`, monic.
    pub cofactor: MultiPoly,
}

impl RootSplit {
    /// Roots repeated according to multiplicity, increasing.
    pub fn flat(&self) -> Vec<Rational> {
        self.roots.iter().flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m)).collect()
    }

    pub fn all_rational(&self) -> bool {
        self.cofactor.total_degree() == 0
    }
}

pub fn rational_roots(p: &MultiPoly) -> RootSplit {
    let coeffs = trim(p.univariate_coeffs());
    let names = p.vars().clone();
    if coeffs.is_empty() {
        return RootSplit { roots: Vec::new(), cofactor: p.clone() };
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    for (factor, mult) in square_free(&coeffs) {
        for r in square_free_rational_roots(&factor) {
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let mut rest = monic(&coeffs);
    for (r, m) in &roots {
        for _ in 0..*m {
            let (q, rem) = div_rem(&rest, &[-r.clone(), Rational::one()]);
            debug_assert!(rem.is_empty());
            rest = q;
        }
    }
    RootSplit { roots, cofactor: MultiPoly::from_univariate(names, &rest) }
}

/// Eigenvalues of a rational matrix split into rational ones and the rest.
pub fn eigenvalues(m: &QMatrix) -> Result<RootSplit> {
    Ok(rational_roots(&char_poly(m)?))
}

/// Evaluates `p(m)` for a univariate `p` (Horner).
pub fn eval_at_matrix(p: &MultiPoly, m: &QMatrix) -> Result<QMatrix> {
    let c = p.univariate_coeffs();
    let n = m.rows();
    let mut acc = QMatrix::zeros(n, n);
    for a in c.iter().rev() {
        acc = acc.mul(m)?.add(&QMatrix::identity(n).scale(a));
    }
    Ok(acc)
}

// ---- dense univariate helpers (lowest degree first) ----

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn monic(p: &[Rational]) -> Vec<Rational> {
    let lc = p.last().expect("nonzero polynomial").clone();
    p.iter().map(|c| c / &lc).collect()
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(BigInt::from(k))).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    let lb = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a)
    }
}

/// Yun's square-free decomposition: pairs `(factor, multiplicity)`.
fn square_free(p: &[Rational]) -> Vec<(Vec<Rational>, usize)> {
    let p = monic(p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let c = gcd(&p, &dp);
    let mut w = div_rem(&p, &c).0;
    let mut y = div_rem(&dp, &c).0;
    let mut z = sub(&y, &derivative(&w));
    let mut out = Vec::new();
    let mut i = 1;
    while w.len() > 1 {
        let g = gcd(&w, &z);
        if g.len() > 1 {
            out.push((g.clone(), i));
        }
        w = div_rem(&w, &g).0;
        y = div_rem(&z, &g).0;
        z = sub(&y, &derivative(&w));
        i += 1;
    }
    out
}

/// Absolute value of the leading coefficient after scaling to a primitive
/// integer polynomial. Bounds denominators of rational roots.
fn denominator_bound(p: &[Rational]) -> BigInt {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (ints.last().unwrap() / g).abs()
}

fn sturm_sequence(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut seq = vec![p.to_vec(), derivative(p)];
    loop {
        let n = seq.len();
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Vec<Rational>], x: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = eval(p, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Rational roots of a square-free polynomial.
fn square_free_rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p = monic(p);
    let mut found = Vec::new();
    'restart: loop {
        if p.len() <= 1 {
            return found;
        }
        let bound = {
            let lc = p.last().unwrap();
            let m = p[..p.len() - 1].iter().map(|c| (c / lc).abs()).max().unwrap_or_else(Rational::zero);
            m + Rational::one()
        };
        let seq = sturm_sequence(&p);
        let denom = denominator_bound(&p);
        let width_goal = Rational::new(BigInt::one(), &denom * &denom);
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let count = sign_changes(&seq, &a) - sign_changes(&seq, &b);
            if count == 0 {
                continue;
            }
            let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
            if eval(&p, &mid).is_zero() {
                found.push(mid.clone());
                p = div_rem(&p, &[-mid, Rational::one()]).0;
                continue 'restart;
            }
            if count > 1 {
                stack.push((a, mid.clone()));
                stack.push((mid, b));
                continue;
            }
            // single simple root in (a, b): shrink by sign changes
            let (mut a, mut b) = (a, b);
            let sa = eval(&p, &a).is_positive();
            while &b - &a >= width_goal {
                let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
                let v = eval(&p, &mid);
                if v.is_zero() {
                    found.push(mid.clone());
                    p = div_rem(&p, &[-mid, Rational::one()]).0;
                    continue 'restart;
                }
                if v.is_positive() == sa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let cand = simplest_between(&a, &b);
            if eval(&p, &cand).is_zero() {
                found.push(cand.clone());
                p = div_rem(&p, &[-cand, Rational::one()]).0;
                continue 'restart;
            }
        }
        return found;
    }
}

/// The rational of smallest denominator in the open interval `(a, b)`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a < b);
    let fa = a.floor();
    let one = Rational::one();
    if &fa + &one < *b {
        // an integer lies strictly inside; prefer the one nearest zero
        let lo = &fa + &one;
        let hi = b.ceil() - &one;
        if lo.is_positive() {
            return lo;
        }
        if hi.is_negative() {
            return hi;
        }
        return Rational::zero();
    }
    let x = a - &fa;
    let y = b - &fa;
    if x.is_zero() {
        let k = (y.recip()).floor() + &one;
        return fa + k.recip();
    }
    fa + simplest_between(&y.recip(), &x.recip()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::{int, rat};

    #[test]
    fn diag_char_poly() {
        let m = QMatrix::diag(&[rat(-1, 6), rat(1, 6)]);
        let c = char_poly_coeffs(&m).unwrap();
        // (l + 1/6)(l - 1/6) = l^2 - 1/36
        assert_eq!(c, vec![rat(-1, 36), int(0), int(1)]);
        let split = eigenvalues(&m).unwrap();
        assert_eq!(split.flat(), vec![rat(-1, 6), rat(1, 6)]);
        assert!(split.all_rational());
    }

    #[test]
    fn zero_and_nilpotent() {
        let z = QMatrix::zeros(1, 1);
        assert_eq!(char_poly_coeffs(&z).unwrap(), vec![int(0), int(1)]);
        assert_eq!(eigenvalues(&z).unwrap().flat(), vec![int(0)]);

        let n = QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        assert_eq!(char_poly_coeffs(&n).unwrap(), vec![int(0), int(0), int(1)]);
        assert_eq!(eigenvalues(&n).unwrap().roots, vec![(int(0), 2)]);
    }

    #[test]
    fn non_square_rejected() {
        assert_eq!(char_poly(&QMatrix::zeros(2, 3)), Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn irrational_cofactor_kept() {
        // (l^2 - 2)(l - 3/4)^2
        let p = mul(&mul(&[int(-2), int(0), int(1)], &[rat(-3, 4), int(1)]), &[rat(-3, 4), int(1)]);
        let split = rational_roots(&MultiPoly::from_univariate(vars(&[LAMBDA]), &p));
        assert_eq!(split.roots, vec![(rat(3, 4), 2)]);
        assert_eq!(split.cofactor.univariate_coeffs(), vec![int(-2), int(0), int(1)]);
    }

    #[test]
    fn many_close_roots() {
        let roots = [rat(7, 12), rat(5, 6), rat(13, 12), rat(11, 12), rat(7, 6), rat(17, 12)];
        let mut p = vec![int(1)];
        for r in &roots {
            p = mul(&p, &[-r.clone(), int(1)]);
        }
        let split = rational_roots(&MultiPoly::from_univariate(vars(&[LAMBDA]), &p));
        let mut want = roots.to_vec();
        want.sort();
        assert_eq!(split.flat(), want);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(3, 4)), rat(1, 2));
        assert_eq!(simplest_between(&rat(-5, 2), &rat(-1, 3)), int(-1));
        assert_eq!(simplest_between(&rat(2, 7), &rat(3, 10)), rat(5, 17));
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
}
