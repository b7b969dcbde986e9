//! "p/q" rendering and parsing for exact rationals, shared by the CLI and
//! all JSON output.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Render a rational as `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p`, `p/q`, or a plain decimal integer string.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d: BigInt = den
        .trim()
        .parse()
        .map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

/// Smallest integer >= x.
pub fn ceil_to_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// ceil(x) as usize; x must be non-negative and small.
pub fn ceil_usize(x: &Rational) -> usize {
    let c = ceil_to_int(x);
    assert!(!c.is_negative(), "ceil of negative rational requested");
    let (_, digits) = c.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0] as usize,
        _ => panic!("rational too large for usize"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, ratio};

    #[test]
    fn roundtrip() {
        for s in ["5/2", "-3/7", "4", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil_usize(&ratio(7, 2)), 4);
        assert_eq!(ceil_usize(&int(3)), 3);
        assert_eq!(ceil_usize(&ratio(0, 5)), 0);
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
    }
}
