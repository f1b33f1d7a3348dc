//! Arbitrary-precision complex numbers for the numeric periods module.

use super::real::BigFloat;
use super::Rat;
use std::fmt;

/// Complex value whose parts share one working precision.
#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        let prec = re.precision().max(im.precision());
        BigComplex { re: re.with_precision(prec), im: im.with_precision(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.precision();
        BigComplex { re, im: BigFloat::zero(prec) }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        Self::from_real(BigFloat::from_rat(r, prec))
    }

    pub fn from_rat_pair(re: &Rat, im: &Rat, prec: u32) -> Self {
        BigComplex { re: BigFloat::from_rat(re, prec), im: BigFloat::from_rat(im, prec) }
    }

    pub fn i(prec: u32) -> Self {
        BigComplex { re: BigFloat::zero(prec), im: BigFloat::from_i64(1, prec) }
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        BigComplex { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        BigComplex { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn mul_real(&self, k: &BigFloat) -> Self {
        BigComplex { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn div(&self, other: &Self) -> Self {
        let norm = other.re.mul(&other.re).add(&other.im.mul(&other.im));
        assert!(!norm.is_zero(), "complex division by zero");
        let conj = BigComplex { re: other.re.clone(), im: other.im.neg() };
        let num = self.mul(&conj);
        BigComplex { re: num.re.div(&norm), im: num.im.div(&norm) }
    }

    pub fn abs(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    /// Upper bound 2^k on |self| (max over the parts, plus one).
    pub fn magnitude_exponent(&self) -> i64 {
        self.re
            .magnitude_exponent()
            .max(self.im.magnitude_exponent())
            .saturating_add(1)
    }

    /// Hexfloat pair form for bit-exact round-trip: `re im @prec`.
    pub fn to_hex_string(&self) -> String {
        format!("{} {} @{}", self.re.to_hex_string(), self.im.to_hex_string(), self.precision())
    }

    pub fn from_hex_string(s: &str) -> Result<Self, String> {
        let (pair, prec) = s.rsplit_once('@').ok_or("missing @precision suffix")?;
        let prec: u32 = prec.trim().parse().map_err(|_| "bad precision")?;
        let mut parts = pair.split_whitespace();
        let re = BigFloat::from_hex_string(parts.next().ok_or("missing real part")?, prec)?;
        let im = BigFloat::from_hex_string(parts.next().ok_or("missing imaginary part")?, prec)?;
        Ok(BigComplex { re, im })
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, self.im.neg())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn complex_arithmetic() {
        let p = 128;
        let a = BigComplex::from_rat_pair(&rat(1, 2), &rat(3, 1), p);
        let b = BigComplex::from_rat_pair(&rat(-2, 1), &rat(1, 4), p);
        let ab = a.mul(&b);
        // (1/2 + 3i)(-2 + i/4) = (-1 - 3/4) + (1/8 - 6) i
        let expect = BigComplex::from_rat_pair(&rat(-7, 4), &rat(-47, 8), p);
        assert!(ab.sub(&expect).abs().magnitude_exponent() < -120);
        let q = ab.div(&b);
        assert!(q.sub(&a).abs().magnitude_exponent() < -118);
    }

    #[test]
    fn abs_of_unit() {
        let p = 128;
        let z = BigComplex::from_rat_pair(&rat(3, 5), &rat(4, 5), p);
        let one = BigFloat::from_i64(1, p);
        assert!(z.abs().sub(&one).magnitude_exponent() < -120);
    }

    #[test]
    fn hex_pair_round_trip() {
        let z = BigComplex::from_rat_pair(&rat(22, 7), &rat(-355, 113), 96);
        let s = z.to_hex_string();
        let back = BigComplex::from_hex_string(&s).unwrap();
        assert_eq!(back.to_hex_string(), s);
    }
}
