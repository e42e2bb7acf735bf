//! Q(s) with s² = 2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Coeff;
use super::rational::{fmt_q, Q};

/// `p + q·s` where `s² = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub p: Q,
    pub q: Q,
}

impl QuadExt {
    pub fn new(p: Q, q: Q) -> Self {
        QuadExt { p, q }
    }

    pub fn rational(p: Q) -> Self {
        QuadExt { p, q: Q::zero() }
    }

    /// The generator s = √2.
    pub fn sqrt2() -> Self {
        QuadExt { p: Q::zero(), q: Q::one() }
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { p: self.p.clone(), q: -self.q.clone() }
    }

    /// p² − 2q², the product with the conjugate.
    pub fn norm(&self) -> Q {
        &self.p * &self.p - Q::from_integer(2.into()) * &self.q * &self.q
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadExt { p: c.p / &n, q: c.q / n })
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.q.is_zero().then_some(&self.p)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        QuadExt { p: self.p + o.p, q: self.q + o.q }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        QuadExt { p: self.p - o.p, q: self.q - o.q }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        let two = Q::from_integer(2.into());
        QuadExt {
            p: &self.p * &o.p + two * &self.q * &o.q,
            q: &self.p * &o.q + &self.q * &o.p,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { p: -self.p, q: -self.q }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(Q::one())
    }
}

impl Coeff for QuadExt {
    fn from_int(k: i64) -> Self {
        QuadExt::rational(Q::from_integer(k.into()))
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*s", fmt_q(&self.p), fmt_q(&self.q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{q, q_frac};

    fn s() -> QuadExt {
        QuadExt::sqrt2()
    }

    #[test]
    fn s_squared_is_two() {
        assert_eq!(s() * s(), QuadExt::rational(q(2)));
    }

    #[test]
    fn one_plus_s_times_one_minus_s() {
        let one = QuadExt::one();
        assert_eq!((one.clone() + s()) * (one - s()), QuadExt::rational(q(-1)));
    }

    #[test]
    fn inverse_of_s() {
        let inv = s().inverse().unwrap();
        assert_eq!(inv, QuadExt::new(q(0), q_frac(1, 2)));
        assert_eq!(inv * s(), QuadExt::one());
        assert!(QuadExt::zero().inverse().is_none());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let a = QuadExt::new(q(3), q_frac(-1, 2));
        let b = QuadExt::new(q_frac(2, 3), q(5));
        let ab = a.clone() * b.clone();
        assert_eq!(ab.conjugate(), a.conjugate() * b.conjugate());
        assert_eq!(a.norm() * b.norm(), ab.norm());
    }
}
