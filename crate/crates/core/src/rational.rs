//! Exact rational scalars and helpers shared by every module.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses `p/q` or an integer. Rejects anything else, including `1//2` and decimals.
pub fn parse_rat(token: &str) -> Option<Rat> {
    let valid = |s: &str| {
        let s = s.strip_prefix(['-', '+']).unwrap_or(s);
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    };
    match token.split_once('/') {
        Some((p, q)) => {
            if !valid(p) || !q.bytes().all(|b| b.is_ascii_digit()) || q.is_empty() {
                return None;
            }
            let q = BigInt::from_str(q).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(BigInt::from_str(p.trim_start_matches('+')).ok()?, q))
        }
        None => {
            if !valid(token) {
                return None;
            }
            Some(Rat::from_integer(BigInt::from_str(token.trim_start_matches('+')).ok()?))
        }
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Integer value of `x`, if it is one and fits in an `i64`.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rat("3"), Some(rat(3)));
        assert_eq!(parse_rat("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rat("+4/2"), Some(rat(2)));
    }

    #[test]
    fn rejects_malformed_tokens() {
        for bad in ["1//2", "1/", "/2", "1/0", "1.5", "", "-", "a", "1/-2"] {
            assert_eq!(parse_rat(bad), None, "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for x in [ratio(-7, 3), rat(0), rat(12), ratio(5, 10)] {
            assert_eq!(parse_rat(&x.to_string()), Some(x));
        }
    }
}
