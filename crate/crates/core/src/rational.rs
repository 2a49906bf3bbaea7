//! Exact rationals, their string form, and the seeded positive sampler.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::Error;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `"p/q"`, always with an explicit denominator.
pub fn to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Schema(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Ratio of two small integers in `1..=9`.
pub fn random_positive<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let p: i64 = rng.gen_range(1..=9);
    let q: i64 = rng.gen_range(1..=9);
    frac(p, q)
}

/// Zero with probability 1/4, otherwise [`random_positive`].
pub fn random_nonnegative<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    if rng.gen_range(0..4) == 0 {
        Rational::zero()
    } else {
        random_positive(rng)
    }
}

pub fn random_positive_vec<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| random_positive(rng)).collect()
}

pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        let r = frac(-6, 4);
        assert_eq!(to_string(&r), "-3/2");
        assert_eq!(parse("-3/2").unwrap(), r);
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(to_string(&int(7)), "7/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
