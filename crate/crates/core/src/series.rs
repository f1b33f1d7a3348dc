//! Truncated Puiseux series in q: the carrier for every q-expansion here.
//!
//! A series stores dense coefficients for exponents k/d with k in
//! `min_num..=trunc_num` and a fixed lattice denominator d dividing 72
//! (enough for q^(1/2), q^(1/8), q^(1/24) and q^(1/72) as needed by theta
//! constants and eta quotients). Exponents below `min_num` are exactly zero;
//! exponents above `trunc_num` are unknown.
//!
//! Truncation bookkeeping is pessimistic-exact: every operation records the
//! largest order to which its result is provably correct (for a product,
//! min(N_a + k0_b, N_b + k0_a) after lattice alignment), and comparisons only
//! look at orders both sides know. That prevents silent wrong-coefficient
//! bugs in long oracle chains like reversion followed by composition.

use crate::field::{rat_from_str, rat_nth_root, rat_to_string, Field, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeriesError {
    #[error("division by a series with no invertible leading coefficient")]
    NonUnitDivisor,
    #[error("invalid valuation: {0}")]
    InvalidValuation(&'static str),
    #[error("series is not revertible (needs c1*q + O(q^2), c1 != 0)")]
    NotRevertible,
    #[error("leading coefficient is not an n-th power in the field")]
    RootObstruction,
}

/// Marker for the derivation D = q d/dq acting exponent-wise: q^e -> e q^e.
pub struct SeriesDerivation;

impl SeriesDerivation {
    pub fn apply<F: Field>(&self, f: &PuiseuxSeries<F>) -> PuiseuxSeries<F> {
        f.derive()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxSeries<F: Field> {
    lattice: u32,
    min_num: i64,
    trunc_num: i64,
    coeffs: Vec<F>,
}

impl<F: Field> PuiseuxSeries<F> {
    pub fn new(lattice: u32, min_num: i64, trunc_num: i64, coeffs: Vec<F>) -> Self {
        assert!(lattice >= 1 && 72 % lattice == 0, "lattice must divide 72");
        assert!(trunc_num >= min_num, "truncation below min exponent");
        assert_eq!(coeffs.len() as i64, trunc_num - min_num + 1);
        PuiseuxSeries { lattice, min_num, trunc_num, coeffs }
    }

    /// The zero series, valid through q^(trunc_num/lattice).
    pub fn zero(lattice: u32, trunc_num: i64) -> Self {
        let len = (trunc_num + 1).max(1);
        let min_num = trunc_num + 1 - len;
        Self::new(lattice, min_num.min(0), trunc_num, vec![F::zero(); (trunc_num - min_num.min(0) + 1) as usize])
    }

    /// Constant series on the integer lattice, valid through order `trunc`.
    pub fn constant(value: F, trunc: i64) -> Self {
        let mut coeffs = vec![F::zero(); (trunc + 1).max(1) as usize];
        coeffs[0] = value;
        Self::new(1, 0, trunc.max(0), coeffs)
    }

    pub fn one(trunc: i64) -> Self {
        Self::constant(F::one(), trunc)
    }

    /// c * q^(num/lattice), valid through exponent trunc_num/lattice.
    pub fn monomial(lattice: u32, num: i64, coeff: F, trunc_num: i64) -> Self {
        assert!(trunc_num >= num);
        let min = num.min(0);
        let mut coeffs = vec![F::zero(); (trunc_num - min + 1) as usize];
        coeffs[(num - min) as usize] = coeff;
        Self::new(lattice, min, trunc_num, coeffs)
    }

    pub fn lattice(&self) -> u32 {
        self.lattice
    }

    pub fn min_exponent_num(&self) -> i64 {
        self.min_num
    }

    pub fn truncation_num(&self) -> i64 {
        self.trunc_num
    }

    /// Valid order as a rational exponent.
    pub fn truncation_exponent(&self) -> Rat {
        Rat::new(BigInt::from(self.trunc_num), BigInt::from(self.lattice))
    }

    /// Coefficient of q^(num/den); None when outside the valid range or off
    /// the lattice (off-lattice exponents inside range are exactly zero).
    pub fn coeff(&self, num: i64, den: u32) -> Option<F> {
        let d = self.lattice as i64;
        let scaled = num * d;
        if !scaled.is_multiple_of(&(den as i64)) {
            // off-lattice: zero when below the truncation boundary
            let e = Rat::new(BigInt::from(num), BigInt::from(den));
            return if e <= self.truncation_exponent() { Some(F::zero()) } else { None };
        }
        let k = scaled / den as i64;
        if k > self.trunc_num {
            None
        } else if k < self.min_num {
            Some(F::zero())
        } else {
            Some(self.coeffs[(k - self.min_num) as usize].clone())
        }
    }

    /// Coefficient of q^n on the integer lattice.
    pub fn coeff_q(&self, n: i64) -> F {
        self.coeff(n, 1)
            .unwrap_or_else(|| panic!("coefficient q^{n} beyond valid order"))
    }

    /// Index of the first nonzero stored coefficient.
    pub fn valuation_num(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.min_num + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-express on a finer lattice (new = lattice * m); lossless.
    pub fn refine_lattice(&self, new_lattice: u32) -> Self {
        assert!(new_lattice.is_multiple_of(self.lattice), "can only refine to a multiple");
        let m = (new_lattice / self.lattice) as i64;
        if m == 1 {
            return self.clone();
        }
        let min = self.min_num * m;
        // Exponents strictly below (trunc+1)/d are known; on the finer lattice
        // that means numerators through trunc*m + m - 1.
        let trunc = self.trunc_num * m + m - 1;
        let mut coeffs = vec![F::zero(); (trunc - min + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Self::new(new_lattice, min, trunc, coeffs)
    }

    /// Drop to the coarsest lattice that carries all nonzero coefficients.
    pub fn reduce_lattice(&self) -> Self {
        let d = self.lattice as i64;
        let mut g = 0i64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(self.min_num + i as i64));
            }
        }
        let factor = if g == 0 { d } else { g.gcd(&d) };
        if factor <= 1 {
            return self.clone();
        }
        let new_d = (d / factor) as u32;
        let min = self.min_num.div_euclid(factor);
        let trunc = self.trunc_num.div_euclid(factor);
        let mut coeffs = vec![F::zero(); (trunc - min + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let k = self.min_num + i as i64;
                coeffs[(k / factor - min) as usize] = c.clone();
            }
        }
        Self::new(new_d, min, trunc, coeffs)
    }

    /// Raise `min_num` past stored zero coefficients. The dropped
    /// coefficients are known-zero, so no information is lost and product
    /// truncation bounds improve.
    pub fn strip_leading_zeros(&self) -> Self {
        match self.valuation_num() {
            Some(v) if v > self.min_num => {
                let skip = (v - self.min_num) as usize;
                Self::new(self.lattice, v, self.trunc_num, self.coeffs[skip..].to_vec())
            }
            Some(_) => self.clone(),
            // all-zero: keep a single coefficient at the truncation order
            None => Self::new(self.lattice, self.trunc_num, self.trunc_num, vec![F::zero()]),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = (self.lattice as i64).lcm(&(other.lattice as i64)) as u32;
        (self.refine_lattice(l), other.refine_lattice(l))
    }

    /// Forget knowledge above numerator `trunc_num` (no-op if already shorter).
    pub fn truncate(&self, trunc_num: i64) -> Self {
        if trunc_num >= self.trunc_num {
            return self.clone();
        }
        if trunc_num < self.min_num {
            // everything below the stored range is known zero
            return Self::new(self.lattice, trunc_num, trunc_num, vec![F::zero()]);
        }
        let mut s = self.clone();
        s.coeffs.truncate((trunc_num - s.min_num + 1) as usize);
        s.trunc_num = trunc_num;
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let min = a.min_num.min(b.min_num);
        let trunc = a.trunc_num.min(b.trunc_num);
        let mut coeffs = vec![F::zero(); (trunc - min + 1) as usize];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let idx = min + k as i64;
            let x = a.get(idx);
            let y = b.get(idx);
            *slot = x.add(&y);
        }
        Self::new(a.lattice, min, trunc, coeffs)
    }

    fn get(&self, k: i64) -> F {
        if k < self.min_num || k > self.trunc_num {
            F::zero()
        } else {
            self.coeffs[(k - self.min_num) as usize].clone()
        }
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = c.neg();
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = c.mul(k);
        }
        s
    }

    pub fn scale_rat(&self, k: &Rat) -> Self {
        self.scale(&F::from_rat(k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let min = a.min_num + b.min_num;
        let trunc = (a.trunc_num + b.min_num).min(b.trunc_num + a.min_num);
        let out_len = (trunc - min + 1) as usize;
        let coeffs = F::convolution(&a.coeffs, &b.coeffs, out_len);
        Self::new(a.lattice, min, trunc, coeffs)
    }

    /// Substitute q -> q^m for a positive integer m (exponent dilation).
    pub fn dilate_exponents(&self, m: u32) -> Self {
        assert!(m >= 1);
        if m == 1 {
            return self.clone();
        }
        let m = m as i64;
        let min = self.min_num * m;
        // exponents strictly below (trunc+1)/d map to strictly below
        // (trunc+1) m / d, so the gap indices are known zeros
        let trunc = self.trunc_num * m + m - 1;
        let mut coeffs = vec![F::zero(); (trunc - min + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Self::new(self.lattice, min, trunc, coeffs)
    }

    /// Substitute q -> r q for a nonzero rational r: the coefficient of
    /// q^(k/d) picks up r^(k/d)... only integer lattices are supported, where
    /// the factor is r^k.
    pub fn rescale_variable(&self, r: &Rat) -> Self {
        assert_eq!(self.lattice, 1, "rescaling needs the integer lattice");
        let mut s = self.clone();
        let r_inv = r.recip();
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            let k = self.min_num + i as i64;
            let factor = if k >= 0 {
                num_traits::pow(r.clone(), k as usize)
            } else {
                num_traits::pow(r_inv.clone(), (-k) as usize)
            };
            *c = c.mul(&F::from_rat(&factor));
        }
        s
    }

    /// Multiply by q^(num/den).
    pub fn mul_q_power(&self, num: i64, den: u32) -> Self {
        let l = (self.lattice as i64).lcm(&(den as i64)) as u32;
        let s = self.refine_lattice(l);
        let shift = num * (l / den) as i64;
        Self::new(l, s.min_num + shift, s.trunc_num + shift, s.coeffs)
    }

    /// Integer power by repeated squaring (negative powers via inverse).
    pub fn pow_i64(&self, n: i64) -> Result<Self, SeriesError> {
        if n < 0 {
            return self.inverse()?.pow_i64(-n);
        }
        if n == 0 {
            return Ok(Self::one(self.trunc_num.max(0) / self.lattice as i64));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = n as u64;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        Ok(result.unwrap())
    }

    /// D = q d/dq: the coefficient of q^e becomes e times itself.
    pub fn derive(&self) -> Self {
        let d = self.lattice as i64;
        let mut s = self.clone();
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            let k = self.min_num + i as i64;
            *c = c.mul(&F::from_rat(&Rat::new(BigInt::from(k), BigInt::from(d))));
        }
        s
    }

    /// Multiplicative inverse; valuation shifts are applied automatically.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let v = self.valuation_num().ok_or(SeriesError::NonUnitDivisor)?;
        let lead = self.get(v);
        let lead_inv = lead.inv().map_err(|_| SeriesError::NonUnitDivisor)?;
        let rel_order = (self.trunc_num - v) as usize;
        // u = self / (lead q^v), u_0 = 1; invert u by the triangular recursion.
        let u: Vec<F> = (0..=rel_order)
            .map(|i| self.get(v + i as i64).mul(&lead_inv))
            .collect();
        let mut inv_rel = vec![F::zero(); rel_order + 1];
        inv_rel[0] = F::one();
        for m in 1..=rel_order {
            let mut acc = F::zero();
            for i in 1..=m {
                if !u[i].is_zero() {
                    acc = acc.add(&u[i].mul(&inv_rel[m - i]));
                }
            }
            inv_rel[m] = acc.neg();
        }
        let coeffs: Vec<F> = inv_rel.into_iter().map(|c| c.mul(&lead_inv)).collect();
        Ok(Self::new(self.lattice, -v, self.trunc_num - 2 * v, coeffs))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.strip_leading_zeros().mul(&other.inverse()?))
    }

    /// exp of a series with strictly positive valuation.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.coeffs.iter().enumerate().any(|(i, c)| self.min_num + (i as i64) <= 0 && !c.is_zero()) {
            return Err(SeriesError::InvalidValuation("exp needs positive valuation"));
        }
        if self.trunc_num < 0 {
            return Err(SeriesError::InvalidValuation("exp needs order >= 0"));
        }
        let n = self.trunc_num;
        let d = self.lattice as i64;
        let mut out = vec![F::zero(); n as usize + 1];
        out[0] = F::one();
        // k E_k = sum_{j=1}^{k} j f_j E_{k-j}
        for k in 1..=n {
            let mut acc = F::zero();
            for j in 1..=k {
                let fj = self.get(j);
                if !fj.is_zero() {
                    let scaled = fj.mul(&F::from_rat(&Rat::new(BigInt::from(j), BigInt::from(d))));
                    acc = acc.add(&scaled.mul(&out[(k - j) as usize]));
                }
            }
            out[k as usize] = acc.mul(&F::from_rat(&Rat::new(BigInt::from(d), BigInt::from(k))));
        }
        Ok(Self::new(self.lattice, 0, n, out))
    }

    /// log of a series with constant term 1 (nothing nonzero below q^0).
    pub fn log(&self) -> Result<Self, SeriesError> {
        let ok_lead = self.get(0).is_one()
            && self
                .coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| self.min_num + (i as i64) >= 0 || c.is_zero());
        if !ok_lead {
            return Err(SeriesError::InvalidValuation("log needs constant term 1"));
        }
        let g = self.derive().div(self)?;
        // Integrate: L_k = g_k / (k/d), L_0 = 0.
        let d = self.lattice as i64;
        let n = g.trunc_num;
        let mut out = vec![F::zero(); n.max(0) as usize + 1];
        for k in 1..=n {
            let gk = g.get(k);
            if !gk.is_zero() {
                out[k as usize] = gk.mul(&F::from_rat(&Rat::new(BigInt::from(d), BigInt::from(k))));
            }
        }
        Ok(Self::new(self.lattice, 0, n.max(0), out))
    }

    /// Logarithmic derivative D(f)/f; works for any unit-leading series.
    pub fn log_deriv(&self) -> Result<Self, SeriesError> {
        self.derive().div(self)
    }

    /// (1 + w)^alpha for a series with leading coefficient 1 at exponent 0.
    pub fn pow_ratio(&self, alpha: &Rat) -> Result<Self, SeriesError> {
        if !self.get(0).is_one()
            || self
                .coeffs
                .iter()
                .enumerate()
                .any(|(i, c)| self.min_num + (i as i64) < 0 && !c.is_zero())
        {
            return Err(SeriesError::InvalidValuation("pow_ratio needs leading 1 at q^0"));
        }
        let n = self.trunc_num;
        let mut out = vec![F::zero(); n.max(0) as usize + 1];
        out[0] = F::one();
        // k P_k = sum_{j=1}^{k} (alpha j - (k - j)) f_j P_{k-j}
        for k in 1..=n {
            let mut acc = F::zero();
            for j in 1..=k {
                let fj = self.get(j);
                if !fj.is_zero() {
                    let weight = alpha * Rat::from_integer(BigInt::from(j))
                        - Rat::from_integer(BigInt::from(k - j));
                    acc = acc.add(&fj.mul(&out[(k - j) as usize]).mul(&F::from_rat(&weight)));
                }
            }
            out[k as usize] = acc.mul(&F::from_rat(&Rat::new(BigInt::from(1), BigInt::from(k))));
        }
        Ok(Self::new(self.lattice, 0, n.max(0), out))
    }

    /// Composition f(g) by Horner; f on the integer lattice with only
    /// non-negative exponents, g with strictly positive valuation. The result
    /// is valid through min(N_g, (N_f + 1) v - 1) where v = val(g): the first
    /// unknown contribution is f_{N_f+1} g^(N_f+1).
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        if self.lattice != 1 {
            return Err(SeriesError::InvalidValuation("compose needs integer-lattice outer series"));
        }
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| self.min_num + (i as i64) < 0 && !c.is_zero())
        {
            return Err(SeriesError::InvalidValuation("compose needs outer series without poles"));
        }
        if g.coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| g.min_num + (i as i64) <= 0 && !c.is_zero())
        {
            return Err(SeriesError::InvalidValuation("compose needs inner series with positive valuation"));
        }
        let v = g.valuation_num().unwrap_or(g.trunc_num + 1);
        let bound = g.trunc_num.min((self.trunc_num + 1) * v - 1);
        let const_order = g.trunc_num / g.lattice as i64;
        // Horner all the way down to the constant term (coefficients below
        // the stored minimum are zero)
        let mut acc = Self::constant(self.get(self.trunc_num), const_order);
        let mut k = self.trunc_num - 1;
        while k >= 0 {
            acc = acc.mul(g).add(&Self::constant(self.get(k), const_order));
            k -= 1;
        }
        Ok(acc.refine_lattice(g.lattice).truncate(bound))
    }

    /// Functional inverse: the unique h with self(h(q)) = q, for
    /// self = c1 q + O(q^2), c1 != 0, on the integer lattice.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if self.lattice != 1 {
            return Err(SeriesError::NotRevertible);
        }
        if !self.get(0).is_zero() || self.coeffs.iter().enumerate().any(|(i, c)| self.min_num + (i as i64) < 0 && !c.is_zero()) {
            return Err(SeriesError::NotRevertible);
        }
        let c1 = self.get(1);
        let c1_inv = c1.inv().map_err(|_| SeriesError::NotRevertible)?;
        let target = self.trunc_num;
        if target < 1 {
            return Err(SeriesError::NotRevertible);
        }
        // Newton iteration, doubling the trusted order each round:
        // h <- h - (f(h) - q) / f'(h), with f'(q) = df/dq = D(f)/q.
        let mut h = Self::monomial(1, 1, c1_inv, 1);
        let mut trusted: i64 = 1;
        let fprime = self.derive().mul_q_power(-1, 1); // df/dq
        while trusted < target {
            let step = (2 * trusted).min(target);
            let f_t = self.truncate(step);
            let fp_t = fprime.truncate(step - 1);
            let h_pad = h.pad_to(step);
            let q = Self::monomial(1, 1, F::one(), step);
            // f(h) agrees with q through the trusted order, so the residual's
            // stored leading zeros are real and stripping them keeps the
            // quotient valid through `step`.
            let residual = f_t.compose(&h_pad)?.sub(&q).strip_leading_zeros();
            let denom = fp_t.compose(&h_pad)?;
            let update = residual.mul(&denom.inverse()?);
            h = h_pad.sub(&update).truncate(step);
            trusted = step;
        }
        Ok(h)
    }

    /// Extend the valid order, asserting the new coefficients are zero-known;
    /// used internally where the tail is genuinely known (monomials, exact
    /// polynomials).
    fn pad_to(&self, trunc_num: i64) -> Self {
        if trunc_num <= self.trunc_num {
            return self.truncate(trunc_num);
        }
        let mut s = self.clone();
        s.coeffs
            .extend(std::iter::repeat_n(F::zero(), (trunc_num - s.trunc_num) as usize));
        s.trunc_num = trunc_num;
        s
    }

    /// Equality up to the smaller valid order of the two series.
    pub fn eq_to_common_order(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }

    /// First exponent (as a reduced rational) where the series disagree,
    /// within the common valid range.
    pub fn first_mismatch(&self, other: &Self) -> Option<(Rat, F, F)> {
        let (a, b) = self.aligned(other);
        let lo = a.min_num.min(b.min_num);
        let hi = a.trunc_num.min(b.trunc_num);
        for k in lo..=hi {
            let x = a.get(k);
            let y = b.get(k);
            if x != y {
                return Some((Rat::new(BigInt::from(k), BigInt::from(a.lattice)), x, y));
            }
        }
        None
    }

    /// Human-readable form like `2*q^(1/8) + 2*q^(9/8)`.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let d = self.lattice as i64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.min_num + i as i64;
            let cs = format!("{c}");
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let e = Rat::new(BigInt::from(k), BigInt::from(d));
            out.push_str(&term_string(&mag, &e));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn term_string(mag: &str, e: &Rat) -> String {
    use num_traits::{One, Zero};
    if Zero::is_zero(e) {
        return mag.to_string();
    }
    let q = if e.is_integer() {
        if e.numer().is_one() {
            "q".to_string()
        } else {
            format!("q^{}", e.numer())
        }
    } else {
        format!("q^({}/{})", e.numer(), e.denom())
    };
    if mag == "1" {
        q
    } else {
        format!("{mag}*{q}")
    }
}

impl<F: Field> fmt::Display for PuiseuxSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Canonical line-oriented file format for rational series.
#[derive(Serialize, Deserialize)]
struct SeriesDto {
    d: u32,
    k0: i64,
    #[serde(rename = "N")]
    n: i64,
    coeffs: Vec<String>,
}

impl PuiseuxSeries<Rat> {
    pub fn to_json(&self) -> String {
        let dto = SeriesDto {
            d: self.lattice,
            k0: self.min_num,
            n: self.trunc_num,
            coeffs: self.coeffs.iter().map(rat_to_string).collect(),
        };
        serde_json::to_string(&dto).expect("series serialization")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let dto: SeriesDto = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if dto.n < dto.k0 {
            return Err("truncation below min exponent".into());
        }
        if dto.d == 0 || 72 % dto.d != 0 {
            return Err("lattice must divide 72".into());
        }
        if dto.coeffs.len() as i64 != dto.n - dto.k0 + 1 {
            return Err("coefficient count does not match exponent range".into());
        }
        let coeffs = dto
            .coeffs
            .iter()
            .map(|s| rat_from_str(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(dto.d, dto.k0, dto.n, coeffs))
    }

    /// n-th root of a series whose leading coefficient is an n-th power.
    /// The result lives on the refined lattice d*n (which must divide 72).
    pub fn nth_root(&self, n: u32) -> Result<Self, SeriesError> {
        assert!(n >= 1);
        let v = self.valuation_num().ok_or(SeriesError::NonUnitDivisor)?;
        let lead = self.get(v);
        let root_lead = rat_nth_root(&lead, n).ok_or(SeriesError::RootObstruction)?;
        let out_lattice = self.lattice * n;
        assert!(72 % out_lattice == 0, "root lattice must divide 72");
        // Strip q^v and the leading coefficient, take (1+w)^(1/n), restore.
        let unit = self
            .mul_q_power(-v, self.lattice)
            .scale(&lead.inv().map_err(|_| SeriesError::NonUnitDivisor)?);
        let root_unit = unit.pow_ratio(&Rat::new(BigInt::from(1), BigInt::from(n)))?;
        Ok(root_unit
            .scale(&root_lead)
            .refine_lattice(out_lattice)
            .mul_q_power(v, out_lattice))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    fn qs(lattice: u32, min: i64, coeffs: &[i64]) -> PuiseuxSeries<Rat> {
        PuiseuxSeries::new(
            lattice,
            min,
            min + coeffs.len() as i64 - 1,
            coeffs.iter().map(|&c| rat_int(c)).collect(),
        )
    }

    #[test]
    fn difference_of_squares() {
        let a = qs(1, 0, &[1, 1, 0, 0]); // 1 + q
        let b = qs(1, 0, &[1, -1, 0, 0]); // 1 - q
        let p = a.mul(&b);
        assert_eq!(p.coeff_q(0), rat_int(1));
        assert_eq!(p.coeff_q(1), rat_int(0));
        assert_eq!(p.coeff_q(2), rat_int(-1));
    }

    #[test]
    fn geometric_series() {
        let b = qs(1, 0, &[1, -1, 0, 0]); // 1 - q, valid through q^3
        let inv = b.inverse().unwrap();
        for k in 0..=3 {
            assert_eq!(inv.coeff_q(k), rat_int(1));
        }
    }

    #[test]
    fn fractional_exponent_product() {
        // q^(1/8) * q^(1/2) = q^(5/8) on lattice 8
        let a = PuiseuxSeries::monomial(8, 1, rat_int(1), 16);
        let b = PuiseuxSeries::monomial(2, 1, rat_int(1), 4);
        let p = a.mul(&b);
        assert_eq!(p.lattice(), 8);
        assert_eq!(p.coeff(5, 8), Some(rat_int(1)));
    }

    #[test]
    fn derive_rules() {
        // D(q^(1/8)) = (1/8) q^(1/8)
        let a = PuiseuxSeries::monomial(8, 1, rat_int(1), 16);
        assert_eq!(a.derive().coeff(1, 8), Some(rat(1, 8)));
        // D(1 + 3q^2) = 6q^2
        let b = qs(1, 0, &[1, 0, 3]);
        let db = b.derive();
        assert_eq!(db.coeff_q(0), rat_int(0));
        assert_eq!(db.coeff_q(2), rat_int(6));
    }

    #[test]
    fn exp_and_log() {
        let q = PuiseuxSeries::monomial(1, 1, rat_int(1), 3);
        let e = q.exp().unwrap();
        assert_eq!(e.coeff_q(0), rat_int(1));
        assert_eq!(e.coeff_q(1), rat_int(1));
        assert_eq!(e.coeff_q(2), rat(1, 2));
        assert_eq!(e.coeff_q(3), rat(1, 6));
        let zero = PuiseuxSeries::<Rat>::zero(1, 5);
        assert_eq!(zero.exp().unwrap().coeff_q(0), rat_int(1));

        let one_plus_q = qs(1, 0, &[1, 1, 0, 0]);
        let l = one_plus_q.log().unwrap();
        assert_eq!(l.coeff_q(1), rat_int(1));
        assert_eq!(l.coeff_q(2), rat(-1, 2));
        assert_eq!(l.coeff_q(3), rat(1, 3));

        // round trips
        assert!(e.log().unwrap().eq_to_common_order(&q));
        assert!(l.exp().unwrap().eq_to_common_order(&one_plus_q));
        assert!(qs(1, 0, &[2, 1]).exp().is_err());
        assert!(qs(1, 0, &[2, 1]).log().is_err());
    }

    #[test]
    fn revert_examples() {
        // revert(tau) = q
        let t = PuiseuxSeries::monomial(1, 1, rat_int(1), 4);
        let r = t.revert().unwrap();
        assert_eq!(r.coeff_q(1), rat_int(1));
        assert_eq!(r.coeff_q(2), rat_int(0));
        // revert(tau - tau^2) = q + q^2 + 2q^3 + 5 q^4  (Catalan numbers)
        let f = qs(1, 0, &[0, 1, -1, 0, 0]);
        let h = f.revert().unwrap();
        assert_eq!(h.coeff_q(1), rat_int(1));
        assert_eq!(h.coeff_q(2), rat_int(1));
        assert_eq!(h.coeff_q(3), rat_int(2));
        assert_eq!(h.coeff_q(4), rat_int(5));
        // defining property f(revert(f)) = q
        let back = f.compose(&h).unwrap();
        let q = PuiseuxSeries::monomial(1, 1, rat_int(1), back.truncation_num());
        assert!(back.eq_to_common_order(&q));
        assert!(qs(1, 0, &[1, 1]).revert().is_err());
        assert!(qs(1, 0, &[0, 0, 1]).revert().is_err());
    }

    #[test]
    fn nth_root_examples() {
        let one = PuiseuxSeries::<Rat>::one(5);
        assert!(one.nth_root(3).unwrap().eq_to_common_order(&one));
        // ((1+q)^3)^(1/3) = 1 + q
        let f = qs(1, 0, &[1, 1, 0, 0, 0]).pow_i64(3).unwrap();
        let r = f.nth_root(3).unwrap();
        assert_eq!(r.coeff_q(0), rat_int(1));
        assert_eq!(r.coeff_q(1), rat_int(1));
        assert_eq!(r.coeff_q(2), rat_int(0));
        // cube root of q^(3/8) is q^(1/8), reported on lattice 24
        let m = PuiseuxSeries::monomial(8, 3, rat_int(1), 10);
        let r = m.nth_root(3).unwrap();
        assert_eq!(r.lattice(), 24);
        assert_eq!(r.coeff(1, 8), Some(rat_int(1)));
        // obstruction: leading coefficient 2 is not a cube
        let g = qs(1, 0, &[2, 1]);
        assert_eq!(g.nth_root(3), Err(SeriesError::RootObstruction));
    }

    #[test]
    fn division_and_valuation_shift() {
        // q^2 / q = q
        let a = PuiseuxSeries::monomial(1, 2, rat_int(3), 6);
        let b = PuiseuxSeries::monomial(1, 1, rat_int(1), 6);
        let q = a.div(&b).unwrap();
        assert_eq!(q.coeff_q(1), rat_int(3));
        let zero = PuiseuxSeries::<Rat>::zero(1, 4);
        assert_eq!(a.div(&zero), Err(SeriesError::NonUnitDivisor));
    }

    #[test]
    fn truncation_bookkeeping_is_pessimistic() {
        // (q^0 valid to 2) * (q valid to 3): product valid to min(2+1, 3+0) = 3
        let a = qs(1, 0, &[1, 1, 1]);
        let b = qs(1, 1, &[1, 1, 1]);
        let p = a.mul(&b);
        assert_eq!(p.truncation_num(), 3);
        assert!(p.coeff(4, 1).is_none());
    }

    #[test]
    fn lattice_round_trip_is_lossless() {
        let a = qs(8, -3, &[2, 0, 0, 1, 0, 5]);
        let fine = a.refine_lattice(24);
        let back = fine.reduce_lattice();
        assert!(back.eq_to_common_order(&a));
        assert_eq!(back.lattice(), 8);
    }

    #[test]
    fn json_round_trip() {
        let a = qs(8, 1, &[2, 0, 0, 0, 0, 0, 0, 0, 2]);
        let s = a.to_json();
        let b = PuiseuxSeries::from_json(&s).unwrap();
        assert!(a.eq_to_common_order(&b));
        assert_eq!(b.to_json(), s);
    }

    #[test]
    fn pretty_format() {
        let a = qs(8, 1, &[2, 0, 0, 0, 0, 0, 0, 0, 2]);
        assert_eq!(a.pretty(), "2*q^(1/8) + 2*q^(9/8)");
        let b = qs(1, 0, &[1, -24, -72]);
        assert_eq!(b.pretty(), "1 - 24*q - 72*q^2");
        let j = qs(1, -1, &[1, 744]);
        assert_eq!(j.pretty(), "q^-1 + 744");
    }

    #[test]
    fn leibniz_rule() {
        let f = qs(1, 0, &[3, 1, -2, 5]);
        let g = qs(1, 0, &[1, 4, 0, -1]);
        let lhs = f.mul(&g).derive();
        let rhs = f.derive().mul(&g).add(&f.mul(&g.derive()));
        assert!(lhs.eq_to_common_order(&rhs));
    }
}
