//! Exact rational arithmetic for ACNPP, paper influence, and the
//! evaluation metrics.
//!
//! Influence values are means of fractions whose denominators can grow
//! past any fixed-width integer, so everything is backed by big-integer
//! rationals. Comparisons are exact; the decimal form is a display
//! convenience only.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(numer: u64, denom: u64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders `5/2` for non-integers and plain `5` for integers.
pub fn format_frac(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the output of [`format_frac`].
pub fn parse_frac(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.trim().parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        for r in [rat(5, 2), rat_int(7), rat_zero(), rat(1, 3)] {
            assert_eq!(parse_frac(&format_frac(&r)).unwrap(), r);
        }
    }

    #[test]
    fn integer_rendering_has_no_denominator() {
        assert_eq!(format_frac(&rat(4, 2)), "2");
        assert_eq!(format_frac(&rat(5, 2)), "5/2");
        assert_eq!(format_frac(&rat_zero()), "0");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse_frac("1/0").is_none());
    }
}
