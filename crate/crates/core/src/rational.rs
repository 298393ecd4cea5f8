//! Exact rational scalars and their canonical string form.
//!
//! Rationals serialize as `"p/q"` in lowest terms, or `"p"` when `q = 1`.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad(s))?;
            if d.is_zero() {
                return Err(Error::input(format!("zero denominator in rational {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(t.parse().map_err(|_| bad(s))?),
    };
    Ok(parsed)
}

fn bad(s: &str) -> Error {
    Error::input(format!("cannot parse rational {s:?}"))
}

/// Canonical string: lowest terms, positive denominator, no `/1`.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format).collect()
}

pub fn parse_vec<S: AsRef<str>>(v: &[S]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse(s.as_ref())).collect()
}

/// `r^e` for any integer exponent; `r` must be nonzero when `e < 0`.
pub fn pow(r: &Rational, e: i64) -> Rational {
    let base = if e < 0 { r.recip() } else { r.clone() };
    num::pow(base, e.unsigned_abs() as usize)
}

pub fn to_bigint(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    use num::Integer;
    v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scale a vector to coprime integers with the first nonzero entry positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    use num::Integer;
    let first = v.iter().find(|x| !x.is_zero())?;
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    Some(ints.into_iter().map(|x| x / &g * &sign).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format(&frac(6, -4)), "-3/2");
        assert_eq!(format(&frac(4, 2)), "2");
        assert_eq!(format(&zero()), "0");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow(&int(2), -2), frac(1, 4));
        assert_eq!(pow(&frac(2, 3), 0), one());
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![frac(-1, 2), int(1), zero()];
        let p = primitive_integer_vector(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(0)]);
        assert!(primitive_integer_vector(&[zero()]).is_none());
    }
}
