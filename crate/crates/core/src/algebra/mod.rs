//! Exact arithmetic: rationals, sparse polynomials, quadratic extensions,
//! Gaussian rationals and interpolation.

mod gauss;
mod interp;
mod poly;
mod quad;

pub use gauss::GaussRat;
pub use interp::{lagrange_interpolate, newton_coefficients};
pub use poly::Poly;
pub use quad::QuadExt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7/2"` or a plain decimal such as `"0.25"`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    let bad = || Error::Usage(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, dec)) = s.split_once('.') {
        if dec.is_empty() || !dec.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let whole: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let frac_part: BigInt = dec.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), dec.len());
        let v = Rat::new(whole * &scale + frac_part, scale);
        return Ok(if neg { -v } else { v });
    }
    s.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad())
}

/// Canonical decimal text: an integer, or `num/den`.
pub fn rat_to_string(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer power with a signed exponent. Errors on `0^(-k)`.
pub fn rat_powi(base: &Rat, exp: i64) -> Result<Rat> {
    if exp >= 0 {
        return Ok(num_traits::pow(base.clone(), exp as usize));
    }
    if base.is_zero() {
        return Err(Error::Degenerate("zero raised to a negative power".into()));
    }
    Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
}

/// Checked division of rationals.
pub fn rat_div(a: &Rat, b: &Rat, what: &str) -> Result<Rat> {
    if b.is_zero() {
        return Err(Error::Degenerate(format!("{what} is zero")));
    }
    Ok(a / b)
}

/// The exact square root of a rational, if it exists.
pub fn rat_sqrt_exact(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rat::new(n, d))
}

/// The minimal commutative-ring interface the closed forms are written
/// against, so the same formula can be evaluated at a rational point or
/// expanded symbolically.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    fn int_like(&self, k: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        // small constants only
        for _ in 0..k.unsigned_abs() {
            acc = acc.plus(&one);
        }
        if k < 0 {
            self.zero_like().minus(&acc)
        } else {
            acc
        }
    }

    fn pow_u(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    fn product<'a>(&self, items: impl IntoIterator<Item = &'a Self>) -> Self
    where
        Self: 'a,
    {
        items.into_iter().fold(self.one_like(), |acc, x| acc.times(x))
    }
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
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
        rat(k)
    }
}
