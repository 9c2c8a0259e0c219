//! Exact rationals backed by `num-rational`.

use num_bigint::BigInt;
use num_traits::Zero;

pub type Rational = num_rational::BigRational;

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Canonical text form: `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_on_construction() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&rat(0, 5)), "0");
    }

    #[test]
    fn text_round_trip() {
        for q in [rat(5, 6), rat(-1, 6), int(3), rat(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn fractional_part_is_in_unit_interval() {
        assert_eq!(frac(&rat(-1, 6)), rat(5, 6));
        assert_eq!(frac(&rat(7, 6)), rat(1, 6));
        assert_eq!(frac(&int(-2)), int(0));
    }
}
