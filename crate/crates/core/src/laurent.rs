//! Finite Laurent polynomials in one variable `s` over the rationals, and
//! leading terms of matrices of them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::{Mat, QMat};
use crate::rational::Rational;

/// `Σ coeffs[k] s^(low + k)`, trimmed so both ends are nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<Rational>,
}

pub type LaurentMatrix = Mat<Laurent>;

impl Laurent {
    pub fn monomial(c: Rational, exp: i64) -> Self {
        Laurent { low: exp, coeffs: vec![c] }.trimmed()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        let k = exp - self.low;
        if k < 0 {
            return Rational::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_else(Rational::zero)
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        if self.coeffs.is_empty() {
            return if sign { other.clone() } else { -other.clone() };
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let coeffs = (low..high)
            .map(|e| if sign { self.coeff(e) + other.coeff(e) } else { self.coeff(e) - other.coeff(e) })
            .collect();
        Laurent { low, coeffs }.trimmed()
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})s^{}", self.low + k as i64))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Laurent {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, true)
    }
}

impl Sub for Laurent {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, false)
    }
}

impl Neg for Laurent {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for Laurent {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent { low: self.low + rhs.low, coeffs }.trimmed()
    }
}

pub fn lift(m: &QMat) -> LaurentMatrix {
    m.map(|x| Laurent::constant(x.clone()))
}

/// The limit at `s = 0` of `s^{-v} M(s)`, where `v` is the least valuation
/// among the entries. `None` for the zero matrix.
pub fn leading_term(m: &LaurentMatrix) -> Option<QMat> {
    let v = m.entries().filter_map(Laurent::valuation).min()?;
    Some(m.map(|x| x.coeff(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn arithmetic() {
        let a = Laurent::monomial(int(2), -1) + Laurent::constant(int(3));
        let b = Laurent::monomial(int(1), 1) - Laurent::constant(int(1));
        let p = a.clone() * b;
        // (2/s + 3)(s - 1) = 2 + 3s - 2/s - 3 = -2/s - 1 + 3s
        assert_eq!(p.valuation(), Some(-1));
        assert_eq!(p.coeff(-1), int(-2));
        assert_eq!(p.coeff(0), int(-1));
        assert_eq!(p.coeff(1), int(3));
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn leading_term_of_a_curve() {
        let mut m = LaurentMatrix::identity(2);
        m[(1, 1)] = Laurent::monomial(int(1), 1);
        assert_eq!(leading_term(&m).unwrap(), QMat::diagonal(&[int(1), int(0)]));
        let c = m.compound(2);
        assert_eq!(leading_term(&c).unwrap(), QMat::identity(1));
    }
}
