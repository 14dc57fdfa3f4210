//! Probabilities that stay exact rationals as long as every input is one.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul};

use num_rational::Rational64;

/// Floating probabilities at or below this magnitude count as zero.
pub const ZERO_TOLERANCE: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probability {
    Exact(Rational64),
    Approx(f64),
}

impl Probability {
    pub const ZERO: Probability = Probability::Exact(Rational64::new_raw(0, 1));
    pub const ONE: Probability = Probability::Exact(Rational64::new_raw(1, 1));

    pub fn to_f64(self) -> f64 {
        match self {
            Probability::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Probability::Approx(x) => x,
        }
    }

    pub fn as_rational(self) -> Option<Rational64> {
        match self {
            Probability::Exact(r) => Some(r),
            Probability::Approx(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Probability::Exact(_))
    }

    pub fn is_zero(self) -> bool {
        match self {
            Probability::Exact(r) => *r.numer() == 0,
            Probability::Approx(x) => x.abs() <= ZERO_TOLERANCE,
        }
    }

    /// `self / rhs`, or `None` when `rhs` is zero.
    pub fn checked_div(self, rhs: Probability) -> Option<Probability> {
        if rhs.is_zero() {
            return None;
        }
        Some(self / rhs)
    }

    /// Exact value, or the closest fraction with denominator at most
    /// `max_denominator` that lies within `tolerance`.
    pub fn fraction(self, max_denominator: i64, tolerance: f64) -> Option<Rational64> {
        match self {
            Probability::Exact(r) => Some(r),
            Probability::Approx(x) => nearest_fraction(x, max_denominator, tolerance),
        }
    }
}

/// Continued-fraction convergents of `x`, stopping at the first within
/// `tolerance`.
fn nearest_fraction(x: f64, max_denominator: i64, tolerance: f64) -> Option<Rational64> {
    if !x.is_finite() {
        return None;
    }
    let (mut h_prev, mut h) = (1i64, x.floor() as i64);
    let (mut k_prev, mut k) = (0i64, 1i64);
    let mut rest = x - x.floor();
    loop {
        if (h as f64 / k as f64 - x).abs() <= tolerance {
            return Some(Rational64::new(h, k));
        }
        if rest.abs() < f64::EPSILON {
            return None;
        }
        let inv = 1.0 / rest;
        let a = inv.floor() as i64;
        rest = inv - inv.floor();
        let (h_next, k_next) = (a.checked_mul(h)? + h_prev, a.checked_mul(k)? + k_prev);
        if k_next > max_denominator {
            return None;
        }
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probability::Exact(r) => write!(f, "{r}"),
            Probability::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl From<Rational64> for Probability {
    fn from(r: Rational64) -> Self {
        Probability::Exact(r)
    }
}

impl From<f64> for Probability {
    fn from(x: f64) -> Self {
        Probability::Approx(x)
    }
}

macro_rules! arithmetic {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Probability {
            type Output = Probability;

            fn $method(self, rhs: Probability) -> Probability {
                match (self, rhs) {
                    (Probability::Exact(a), Probability::Exact(b)) => Probability::Exact(a $op b),
                    (a, b) => Probability::Approx(a.to_f64() $op b.to_f64()),
                }
            }
        }
    };
}

arithmetic!(Add, add, +);
arithmetic!(Mul, mul, *);
arithmetic!(Div, div, /);

impl Sum for Probability {
    fn sum<I: Iterator<Item = Probability>>(iter: I) -> Self {
        iter.fold(Probability::ZERO, Add::add)
    }
}
