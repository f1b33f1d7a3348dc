//! Small cyclotomic extensions of Q in the power basis of Q[x]/Phi_n(x).
//!
//! Only the conductors that actually occur are supported: n = 1 (plain
//! rationals), n = 3 (zeta_3, the Ohyama system) and n = 4 (i, the period
//! matrix). Products are reduced modulo the cyclotomic polynomial
//! Phi_3 = x^2 + x + 1, Phi_4 = x^2 + 1.

use super::{rat_to_string, Field, FieldError, Rat};
use std::fmt;

/// Element of Q(zeta_n) for n in {1, 3, 4}, coordinates in the power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloNumber {
    conductor: u32,
    /// Length phi(n): 1 coordinate for n = 1, two for n = 3, 4.
    coords: Vec<Rat>,
}

impl CycloNumber {
    pub fn rational(r: Rat) -> Self {
        CycloNumber { conductor: 1, coords: vec![r] }
    }

    /// zeta_n itself; panics unless n is a supported conductor > 1.
    pub fn zeta(n: u32) -> Self {
        assert!(n == 3 || n == 4, "unsupported conductor {n}");
        CycloNumber {
            conductor: n,
            coords: vec![Field::zero(), Field::one()],
        }
    }

    pub fn new(conductor: u32, coords: Vec<Rat>) -> Result<Self, FieldError> {
        match conductor {
            1 if coords.len() == 1 => Ok(CycloNumber { conductor, coords }),
            3 | 4 if coords.len() == 2 => {
                Ok(CycloNumber { conductor, coords }.normalized())
            }
            _ => Err(FieldError::ConductorMismatch(conductor, coords.len() as u32)),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Conductor-1 values embed as plain rationals.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.conductor == 1 {
            return Some(self.coords[0].clone());
        }
        if self.coords[1].is_zero() {
            return Some(self.coords[0].clone());
        }
        None
    }

    fn normalized(self) -> Self {
        if self.conductor != 1 && self.coords[1].is_zero() {
            CycloNumber::rational(self.coords.into_iter().next().unwrap())
        } else {
            self
        }
    }

    fn promote(&self, conductor: u32) -> Self {
        if self.conductor == conductor {
            return self.clone();
        }
        debug_assert_eq!(self.conductor, 1);
        CycloNumber {
            conductor,
            coords: vec![self.coords[0].clone(), Field::zero()],
        }
    }

    /// Common conductor of two operands, or `ConductorMismatch`.
    fn join(&self, other: &Self) -> Result<u32, FieldError> {
        match (self.conductor, other.conductor) {
            (a, b) if a == b => Ok(a),
            (1, b) => Ok(b),
            (a, 1) => Ok(a),
            (a, b) => Err(FieldError::ConductorMismatch(a, b)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        let n = self.join(other)?;
        let (a, b) = (self.promote(n), other.promote(n));
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x + y)
            .collect();
        CycloNumber { conductor: n, coords }.normalized_ok()
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_add(&other.negated())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let n = self.join(other)?;
        let (a, b) = (self.promote(n), other.promote(n));
        if n == 1 {
            return Ok(CycloNumber::rational(&a.coords[0] * &b.coords[0]));
        }
        // (a0 + a1 z)(b0 + b1 z) = a0 b0 + (a0 b1 + a1 b0) z + a1 b1 z^2,
        // then z^2 = -1 (n = 4) or z^2 = -1 - z (n = 3).
        let c0 = &a.coords[0] * &b.coords[0];
        let c1 = &a.coords[0] * &b.coords[1] + &a.coords[1] * &b.coords[0];
        let c2 = &a.coords[1] * &b.coords[1];
        let coords = match n {
            4 => vec![c0 - &c2, c1],
            3 => vec![c0 - &c2, c1 - &c2],
            _ => unreachable!(),
        };
        CycloNumber { conductor: n, coords }.normalized_ok()
    }

    pub fn try_inv(&self) -> Result<Self, FieldError> {
        if Field::is_zero(self) {
            return Err(FieldError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(CycloNumber::rational(self.coords[0].recip()));
        }
        // Conjugate trick over the quadratic minimal polynomial.
        let (a, b) = (&self.coords[0], &self.coords[1]);
        let (conj, norm) = match self.conductor {
            // conj(a + b i) = a - b i, norm = a^2 + b^2
            4 => (vec![a.clone(), -b], a * a + b * b),
            // conj(a + b z) = (a - b) - b z, norm = a^2 - a b + b^2
            3 => (vec![a - b, -b], a * a - a * b + b * b),
            _ => unreachable!(),
        };
        let inv_norm = norm.recip();
        CycloNumber {
            conductor: self.conductor,
            coords: conj.into_iter().map(|c| c * &inv_norm).collect(),
        }
        .normalized_ok()
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_mul(&other.try_inv()?)
    }

    fn negated(&self) -> Self {
        CycloNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    fn normalized_ok(self) -> Result<Self, FieldError> {
        Ok(self.normalized())
    }

    /// Complex embedding with zeta_n = exp(2 pi i / n), for numeric cross-checks.
    pub fn embed_f64(&self) -> (f64, f64) {
        let c0 = rat_f64(&self.coords[0]);
        if self.conductor == 1 {
            return (c0, 0.0);
        }
        let c1 = rat_f64(&self.coords[1]);
        let theta = 2.0 * std::f64::consts::PI / self.conductor as f64;
        (c0 + c1 * theta.cos(), c1 * theta.sin())
    }
}

fn rat_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Field for CycloNumber {
    fn zero() -> Self {
        CycloNumber::rational(Field::zero())
    }
    fn one() -> Self {
        CycloNumber::rational(Field::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("conductor mismatch")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("conductor mismatch")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("conductor mismatch")
    }
    fn neg(&self) -> Self {
        self.negated()
    }
    fn inv(&self) -> Result<Self, FieldError> {
        self.try_inv()
    }
    fn from_rat(r: &Rat) -> Self {
        CycloNumber::rational(r.clone())
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", rat_to_string(&self.coords[0]));
        }
        let sym = if self.conductor == 4 { "i".to_string() } else { format!("z{}", self.conductor) };
        let (a, b) = (&self.coords[0], &self.coords[1]);
        if b.is_zero() {
            return write!(f, "{}", rat_to_string(a));
        }
        if a.is_zero() {
            return write!(f, "{}*{}", rat_to_string(b), sym);
        }
        use num_traits::Signed;
        if b.is_negative() {
            write!(f, "{} - {}*{}", rat_to_string(a), rat_to_string(&-b), sym)
        } else {
            write!(f, "{} + {}*{}", rat_to_string(a), rat_to_string(b), sym)
        }
    }
}
