use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat_to_string, Rat, Ring};
use crate::error::{Error, Result};

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rat) -> Self {
        Self { re, im: Rat::zero() }
    }

    pub fn i() -> Self {
        Self { re: Rat::zero(), im: Rat::one() }
    }

    pub fn conjugate(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Degenerate("inverting zero".into()));
        }
        Ok(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    /// The real part, provided the imaginary part is exactly zero.
    pub fn real_part_only(&self) -> Result<Rat> {
        if !self.im.is_zero() {
            return Err(Error::Internal(format!("expected a real value, got {self}")));
        }
        Ok(self.re.clone())
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.pow_u(exp)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", rat_to_string(&self.re), rat_to_string(&self.im))
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

impl Ring for GaussRat {
    fn zero_like(&self) -> Self {
        GaussRat::real(Rat::zero())
    }
    fn one_like(&self) -> Self {
        GaussRat::real(Rat::one())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn int_like(&self, k: i64) -> Self {
        GaussRat::real(super::rat(k))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{frac, rat};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn powers_of_i_cycle() {
        let i = GaussRat::i();
        assert_eq!(i.pow(2), GaussRat::real(rat(-1)));
        assert_eq!(i.pow(4), GaussRat::real(rat(1)));
        assert_eq!(i.pow(3), GaussRat::new(rat(0), rat(-1)));
        assert!(i.real_part_only().is_err());
    }

    fn arb_g() -> impl Strategy<Value = GaussRat> {
        ((-20i64..20, 1i64..6), (-20i64..20, 1i64..6))
            .prop_map(|((a, b), (c, d))| GaussRat::new(frac(a, b), frac(c, d)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_g(), y in arb_g(), z in arb_g()) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            if x.norm() != Rat::zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), x.one_like());
            }
            prop_assert_eq!((&x * &x.conjugate()).real_part_only().unwrap(), x.norm());
        }
    }
}
