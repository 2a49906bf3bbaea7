//! Forward-mode dual numbers over the rationals.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::Field;
use crate::rational::Rational;

/// A value with its gradient; an empty gradient stands for zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual {
    pub val: Rational,
    pub grad: Vec<Rational>,
}

impl Dual {
    pub fn constant(val: Rational) -> Self {
        Dual { val, grad: Vec::new() }
    }

    /// The `k`-th of `len` independent variables, at `val`.
    pub fn variable(val: Rational, k: usize, len: usize) -> Self {
        let mut grad = vec![Rational::zero(); len];
        grad[k] = Rational::one();
        Dual { val, grad }
    }

    pub fn partial(&self, k: usize) -> Rational {
        self.grad.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    fn zip(a: &[Rational], b: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Vec<Rational> {
        let zero = Rational::zero();
        (0..a.len().max(b.len())).map(|k| f(a.get(k).unwrap_or(&zero), b.get(k).unwrap_or(&zero))).collect()
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Self::constant(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.grad.iter().all(Zero::is_zero)
    }
}

impl One for Dual {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual { val: self.val + rhs.val, grad: Self::zip(&self.grad, &rhs.grad, |x, y| x + y) }
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual { val: self.val - rhs.val, grad: Self::zip(&self.grad, &rhs.grad, |x, y| x - y) }
    }
}

impl Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { val: -self.val, grad: self.grad.into_iter().map(|g| -g).collect() }
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let grad = Self::zip(&self.grad, &rhs.grad, |x, y| &self.val * y + &rhs.val * x);
        Dual { val: self.val * rhs.val, grad }
    }
}

impl Field for Dual {
    fn inv(&self) -> Self {
        let r = self.val.recip();
        let scale = -(&r * &r);
        Dual { val: r, grad: self.grad.iter().map(|g| g * &scale).collect() }
    }
}
