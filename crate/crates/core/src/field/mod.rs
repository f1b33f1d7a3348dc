//! Exact coefficient fields and arbitrary-precision floats.
//!
//! Every q-expansion and polynomial in this crate is generic over a [`Field`]:
//! either plain rationals ([`Rat`]) or a small cyclotomic extension
//! ([`CycloNumber`], conductors 1, 3, 4). The numeric period checks use
//! [`BigFloat`]/[`BigComplex`] with explicit working precision.

pub mod complex;
pub mod cyclo;
pub mod real;

pub use complex::BigComplex;
pub use cyclo::CycloNumber;
pub use real::BigFloat;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational, kept in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
}

/// The coefficient-field interface shared by series and polynomial arithmetic.
///
/// Implementations must be exact: equal values have identical representations.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `DivisionByZero` on zero.
    fn inv(&self) -> Result<Self, FieldError>;
    /// Embed a rational scalar.
    fn from_rat(r: &Rat) -> Self;

    fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }
    fn from_i64(n: i64) -> Self {
        Self::from_rat(&rat_int(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Truncated convolution out[m] = sum_{i+j=m} a[i] b[j] for m < out_len.
    /// The dense-series multiplication kernel; overridable so a field can
    /// batch its normalization work.
    fn convolution(a: &[Self], b: &[Self], out_len: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); out_len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() || i >= out_len {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if i + j >= out_len {
                    break;
                }
                if !y.is_zero() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
        }
        out
    }
}

impl Field for Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, FieldError> {
        if num_traits::Zero::is_zero(self) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    /// Clear denominators and convolve over the integers, normalizing once
    /// per output coefficient instead of once per product. Falls back to the
    /// generic kernel when the common denominators get large.
    fn convolution(a: &[Self], b: &[Self], out_len: usize) -> Vec<Self> {
        let (Some(da), Some(db)) = (common_denominator(a), common_denominator(b)) else {
            return naive_convolution(a, b, out_len);
        };
        let na: Vec<BigInt> = a.iter().map(|r| scaled_numer(r, &da)).collect();
        let nb: Vec<BigInt> = b.iter().map(|r| scaled_numer(r, &db)).collect();
        let mut out = vec![BigInt::from(0); out_len];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() || i >= out_len {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if i + j >= out_len {
                    break;
                }
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        out.into_iter().map(|n| Rat::new(n, den.clone())).collect()
    }
}

fn naive_convolution(a: &[Rat], b: &[Rat], out_len: usize) -> Vec<Rat> {
    let mut out = vec![<Rat as Field>::zero(); out_len];
    for (i, x) in a.iter().enumerate() {
        if num_traits::Zero::is_zero(x) || i >= out_len {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= out_len {
                break;
            }
            if !num_traits::Zero::is_zero(y) {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// lcm of the denominators, or None when it grows past the fast-path bound.
fn common_denominator(v: &[Rat]) -> Option<BigInt> {
    use num_integer::Integer;
    let mut lcm = BigInt::from(1);
    for r in v {
        let d = r.denom();
        if !d.is_one() {
            lcm = lcm.lcm(d);
            if lcm.bits() > 4096 {
                return None;
            }
        }
    }
    Some(lcm)
}

fn scaled_numer(r: &Rat, den: &BigInt) -> BigInt {
    // den is a multiple of r.denom(), so this is exact
    r.numer() * (den / r.denom())
}

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical decimal-string form, `"num/den"` (plain `"num"` when den = 1).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"num/den"` or `"num"`.
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d: BigInt = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(n, d))
}

/// Floor of a rational.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// True if `r` is an integer n-th power and returns its n-th root when so.
pub fn rat_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    if r.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root_n = int_nth_root(r.numer(), n)?;
    let root_d = int_nth_root(r.denom(), n)?;
    Some(Rat::new(root_n, root_d))
}

fn int_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    let neg = v.is_negative();
    let mag = v.abs();
    let root = mag.nth_root(n);
    if num_traits::pow(root.clone(), n as usize) != mag {
        return None;
    }
    Some(if neg { -root } else { root })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_ops_are_exact() {
        // 1/3 + 1/6 = 1/2
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
        assert_eq!(Field::div(&rat(1, 2), &rat(3, 4)).unwrap(), rat(2, 3));
        assert_eq!(Field::inv(&rat(0, 1)), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn canonical_form_is_unique() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(-1, 2), rat(1, -2));
        assert_eq!(rat_to_string(&rat(-3, 6)), "-1/2");
        assert_eq!(rat_to_string(&rat(4, 2)), "2");
    }

    #[test]
    fn string_round_trip() {
        for s in ["0", "5", "-7/3", "22/7"] {
            assert_eq!(rat_to_string(&rat_from_str(s).unwrap()), s);
        }
        assert!(rat_from_str("1/0").is_err());
    }

    #[test]
    fn nth_roots() {
        assert_eq!(rat_nth_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(rat_nth_root(&rat(2, 1), 2), None);
        assert_eq!(rat_nth_root(&rat(-8, 1), 3), Some(rat_int(-2)));
        assert_eq!(rat_nth_root(&rat(-4, 1), 2), None);
    }
}
