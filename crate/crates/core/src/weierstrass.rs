//! Local z-expansion of the Weierstrass coordinates on y^2 = 4x^3 - t2 x - t3
//! (the t1 = 0 chart) and the geometric Eisenstein forms G_{2k+2}.
//!
//! x = 1/z^2 + sum_{k>=1} g_{2k+2} z^(2k) and y = dx/dz; the coefficients are
//! determined one at a time by matching the curve equation order by order.
//! The classical closed recursion (c2 = t2/20, c3 = t3/28, c_k =
//! 3/((2k+1)(k-3)) sum c_m c_(k-m)) is kept only as a cross-check oracle.

use crate::eisenstein::QuasiModularPoly;
use crate::field::{rat, rat_int, Rat};
use crate::poly::{ParamPoly, Var};

/// Laurent series in z with polynomial coefficients in Q[t2, t3];
/// `coeffs[i]` is the coefficient of z^(min + i).
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentZSeries {
    pub min: i64,
    pub coeffs: Vec<ParamPoly<Rat>>,
}

impl LaurentZSeries {
    fn zero() -> Self {
        LaurentZSeries { min: 0, coeffs: Vec::new() }
    }

    pub fn coeff(&self, k: i64) -> ParamPoly<Rat> {
        if k < self.min || k - self.min >= self.coeffs.len() as i64 {
            ParamPoly::zero()
        } else {
            self.coeffs[(k - self.min) as usize].clone()
        }
    }

    fn set(&mut self, k: i64, v: ParamPoly<Rat>) {
        if self.coeffs.is_empty() {
            self.min = k;
            self.coeffs.push(v);
            return;
        }
        while k < self.min {
            self.coeffs.insert(0, ParamPoly::zero());
            self.min -= 1;
        }
        while k - self.min >= self.coeffs.len() as i64 {
            self.coeffs.push(ParamPoly::zero());
        }
        self.coeffs[(k - self.min) as usize] = v;
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.coeffs.iter().enumerate() {
            let k = other.min + i as i64;
            out.set(k, out.coeff(k).add(c));
        }
        out
    }

    fn scale(&self, k: &Rat) -> Self {
        LaurentZSeries {
            min: self.min,
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// Product truncated to exponents <= cap.
    fn mul_capped(&self, other: &Self, cap: i64) -> Self {
        let mut out = LaurentZSeries::zero();
        out.min = self.min + other.min;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ka = self.min + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let kb = other.min + j as i64;
                if ka + kb > cap {
                    break;
                }
                if !b.is_zero() {
                    out.set(ka + kb, out.coeff(ka + kb).add(&a.mul(b)));
                }
            }
        }
        out
    }

    /// d/dz.
    pub fn derive_z(&self) -> Self {
        let mut out = LaurentZSeries::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.min + i as i64;
            if k != 0 && !c.is_zero() {
                out.set(k - 1, c.scale(&rat_int(k)));
            }
        }
        out
    }

    /// Even exponents only (with the odd slots zero).
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| (self.min + i as i64) % 2 == 0 || c.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| (self.min + i as i64) % 2 != 0 || c.is_zero())
    }
}

/// Residual y^2 - 4x^3 + t2 x + t3 truncated to z-exponents <= cap.
pub fn curve_residual(x: &LaurentZSeries, y: &LaurentZSeries, cap: i64) -> LaurentZSeries {
    let t2 = ParamPoly::<Rat>::var(Var::T2);
    let t3 = ParamPoly::<Rat>::var(Var::T3);
    let y2 = y.mul_capped(y, cap);
    let x3 = x.mul_capped(x, cap + 2).mul_capped(x, cap);
    let mut res = y2.add(&x3.scale(&rat_int(-4)));
    res = res.add(&x.scale_poly(&t2));
    let mut t3s = LaurentZSeries::zero();
    t3s.set(0, t3);
    res.add(&t3s)
}

impl LaurentZSeries {
    fn scale_poly(&self, p: &ParamPoly<Rat>) -> Self {
        LaurentZSeries {
            min: self.min,
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }
}

/// x and y = dx/dz with coefficients g4, g6, ..., g_{2K+2} determined by
/// matching y^2 = 4x^3 - t2 x - t3 order by order.
pub fn weierstrass_expansion(coefficients: usize) -> (LaurentZSeries, LaurentZSeries) {
    assert!(coefficients >= 2);
    let mut x = LaurentZSeries::zero();
    x.set(-2, ParamPoly::one());
    for k in 1..=coefficients as i64 {
        // the unknown g_{2k+2} enters the z^(2k-4) coefficient of the
        // residual linearly with weight -(8k + 12)
        let y = x.derive_z();
        let res = curve_residual(&x, &y, 2 * k - 4);
        let c = res.coeff(2 * k - 4);
        let g = c.scale(&rat(1, 8 * k + 12));
        x.set(2 * k, g);
    }
    let y = x.derive_z();
    (x, y)
}

/// g0 and g2 vanish: the first correction to 1/z^2 is g4 z^2.
pub fn low_coefficients_vanish() -> bool {
    let (x, _) = weierstrass_expansion(2);
    x.coeff(-1).is_zero() && x.coeff(0).is_zero() && x.coeff(1).is_zero()
}

/// The Eisenstein modular form G_{2k+2} = g_{2k+2}, a homogeneous polynomial
/// of weight 2k+2 in Q[t2, t3] with differential order 0.
pub fn eisenstein_modular(k: usize) -> QuasiModularPoly {
    assert!(k >= 1);
    let (x, _) = weierstrass_expansion(k.max(2));
    let g = x.coeff(2 * k as i64);
    let qm = QuasiModularPoly::new(g);
    debug_assert_eq!(qm.diff_order, 0);
    qm
}

/// The classical closed recursion for the same coefficients, used as a
/// cross-check: x = 1/z^2 + sum_{k>=2} c_k z^(2k-2), c_2 = t2/20,
/// c_3 = t3/28, c_k = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} c_m c_{k-m}.
pub fn coefficients_by_recursion(count: usize) -> Vec<ParamPoly<Rat>> {
    let mut c: Vec<ParamPoly<Rat>> = vec![ParamPoly::zero(); count.max(4)];
    c[2] = ParamPoly::var(Var::T2).scale(&rat(1, 20));
    c[3] = ParamPoly::var(Var::T3).scale(&rat(1, 28));
    for k in 4..count.max(4) {
        let mut sum = ParamPoly::zero();
        for m in 2..=(k - 2) {
            sum = sum.add(&c[m].mul(&c[k - m]));
        }
        let factor = rat(3, (2 * k as i64 + 1) * (k as i64 - 3));
        c[k] = sum.scale(&factor);
    }
    c.truncate(count);
    c
}
