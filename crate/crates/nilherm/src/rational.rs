//! Exact rational scalars.
//!
//! Every number in this crate is an arbitrary-precision rational; there is no
//! floating point anywhere. Rationals serialize as `"p/q"` (or `"p"` when the
//! denominator is 1), which is what `BigRational`'s `Display`/`FromStr` already
//! do.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| Error::Parse {
        position: 0,
        message: format!("invalid rational {s:?}: {e}"),
    })
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// `Some(sqrt)` when `r` is a perfect square of a rational, else `None`.
///
/// Used when normalizing square roots of -I inside commutants; exact
/// arithmetic cannot take general square roots, so constructions that would
/// need one report an error instead.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num = r.numer().magnitude().sqrt();
    let den = r.denom().magnitude().sqrt();
    let cand = Rational::new(BigInt::from(num), BigInt::from(den));
    if &(cand.clone() * cand.clone()) == r {
        Some(cand)
    } else {
        None
    }
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(ratio(3, 6).to_string(), "1/2");
        assert_eq!(rat(7).to_string(), "7");
        assert_eq!(ratio(-2, 4).to_string(), "-1/2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "5", "-3", "2/7", "-11/4"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn sqrt_detects_perfect_squares() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(1)), Some(rat(1)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
    }
}
