use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat_sqrt_exact, rat_to_string, Rat, Ring};
use crate::error::{Error, Result};

/// `a + b·√d` with rational `a`, `b`, `d`.
///
/// Every value carries its radicand; binary operations panic if the radicands
/// differ, since that is always a programming error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    d: Rat,
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        Self { a, b, d }
    }

    pub fn from_rat(a: Rat, d: &Rat) -> Self {
        Self { a, b: Rat::zero(), d: d.clone() }
    }

    /// `√d` itself.
    pub fn sqrt_d(d: &Rat) -> Self {
        Self { a: Rat::zero(), b: Rat::one(), d: d.clone() }
    }

    pub fn radicand(&self) -> &Rat {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// `a² − b²d`, the product with the conjugate.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && (self.b.is_zero() || self.d.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational part, provided the radical part is exactly zero.
    pub fn rational_part_only(&self) -> Result<Rat> {
        if !self.b.is_zero() {
            return Err(Error::Internal(format!("expected a rational value, got {self}")));
        }
        Ok(self.a.clone())
    }

    /// The rational value, also resolving perfect-square radicands.
    pub fn rational_value(&self) -> Result<Rat> {
        if self.b.is_zero() {
            return Ok(self.a.clone());
        }
        match rat_sqrt_exact(&self.d) {
            Some(s) => Ok(&self.a + &self.b * s),
            None => Err(Error::Internal(format!("expected a rational value, got {self}"))),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Degenerate(format!("inverting {self}, whose norm is zero")));
        }
        Ok(Self { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self { a: &self.a * c, b: &self.b * c, d: self.d.clone() }
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.pow_u(exp)
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixing quadratic extensions with different radicands");
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", rat_to_string(&self.a), rat_to_string(&self.b), rat_to_string(&self.d))
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.same_field(rhs);
        QuadExt { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d.clone() }
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.same_field(rhs);
        QuadExt { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d.clone() }
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.same_field(rhs);
        QuadExt {
            a: &self.a * &rhs.a + &self.b * &rhs.b * &self.d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

impl Ring for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt::from_rat(Rat::zero(), &self.d)
    }
    fn one_like(&self) -> Self {
        QuadExt::from_rat(Rat::one(), &self.d)
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
        QuadExt::from_rat(super::rat(k), &self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{frac, rat};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn norm_example() {
        let d = rat(13);
        let x = QuadExt::new(rat(1), rat(1), d.clone());
        let p = &x * &x.conjugate();
        assert_eq!(p.rational_part_only().unwrap(), rat(-12));
    }

    #[test]
    fn conjugate_flips_radical() {
        let x = QuadExt::new(frac(1, 2), rat(3), rat(7));
        assert_eq!(x.conjugate(), QuadExt::new(frac(1, 2), rat(-3), rat(7)));
    }

    #[test]
    fn vieta_on_eigenvalues() {
        // t = 2: eigenvalues (t/2)(1 + t² ± √d) with d = t⁴ − 2t² + 5
        let t = rat(2);
        let d = &t * &t * &t * &t - rat(2) * &t * &t + rat(5);
        assert_eq!(d, rat(13));
        let half_t = &t / rat(2);
        let base = QuadExt::from_rat(rat(1) + &t * &t, &d);
        let s = QuadExt::sqrt_d(&d);
        let l1 = (&base + &s).scale(&half_t);
        let l2 = (&base - &s).scale(&half_t);
        assert_eq!((&l1 * &l2).rational_part_only().unwrap(), rat(12));
        assert_eq!((&l1 + &l2).rational_part_only().unwrap(), rat(10));
    }

    #[test]
    fn radical_part_guard() {
        assert!(QuadExt::sqrt_d(&rat(2)).rational_part_only().is_err());
        assert_eq!(QuadExt::sqrt_d(&rat(9)).rational_value().unwrap(), rat(3));
        assert!(QuadExt::new(rat(3), rat(-1), rat(9)).inv().is_err());
    }

    #[test]
    #[should_panic(expected = "different radicands")]
    fn mixing_fields_panics() {
        let _ = &QuadExt::sqrt_d(&rat(2)) + &QuadExt::sqrt_d(&rat(3));
    }

    fn arb_q(d: i64) -> impl Strategy<Value = QuadExt> {
        ((-20i64..20, 1i64..6), (-20i64..20, 1i64..6))
            .prop_map(move |((a, b), (c, e))| QuadExt::new(frac(a, b), frac(c, e), rat(d)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_q(13), y in arb_q(13), z in arb_q(13)) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), x.one_like());
                prop_assert_eq!(x.checked_div(&x).unwrap(), x.one_like());
            }
        }

        #[test]
        fn symmetric_sums_are_rational(u in arb_q(13), l in arb_q(13), h in 0u64..7) {
            let s = &(&u * &l.pow(h)) + &(&u.conjugate() * &l.conjugate().pow(h));
            prop_assert!(s.is_rational());
        }
    }
}
