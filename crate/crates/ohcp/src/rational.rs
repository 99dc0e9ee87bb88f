//! Small helpers around arbitrary-precision rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `n` or `n/d` with optional sign.
pub fn parse(token: &str) -> Option<Q> {
    let t = token.trim();
    if t.is_empty() {
        return None;
    }
    match t.split_once('/') {
        None => t.parse::<BigInt>().ok().map(Q::from_integer),
        Some((n, d)) => {
            let n = n.parse::<BigInt>().ok()?;
            let d = d.parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
    }
}

/// Exact text form, `p/q` or `p` for integers.
pub fn fmt(x: &Q) -> String {
    x.to_string()
}

pub fn is_integral_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3"), Some(int(3)));
        assert_eq!(parse("-1/2"), Some(frac(-1, 2)));
        assert_eq!(parse("4/8"), Some(frac(1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn format_round_trip() {
        for s in ["0", "7", "-3/4", "1/20"] {
            assert_eq!(fmt(&parse(s).unwrap()), s);
        }
    }
}
