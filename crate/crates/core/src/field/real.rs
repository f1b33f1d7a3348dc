//! Arbitrary-precision binary floating point with explicit precision tracking.
//!
//! A value is sign * mantissa * 2^exponent with the mantissa normalized to
//! exactly `prec` bits. All operations round to nearest (ties to even) at the
//! larger operand precision, so precision is never silently reduced below the
//! configured value. No interval arithmetic; numeric checks use tolerance
//! margins instead.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

use super::Rat;

#[derive(Debug, Clone)]
pub struct BigFloat {
    sign: i8,
    mantissa: BigUint,
    exponent: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { sign: 0, mantissa: BigUint::zero(), exponent: 0, prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(v)), prec)
    }

    /// Round a rational to `prec` bits.
    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        assert!(prec >= 2, "precision too small");
        if r.is_zero() {
            return Self::zero(prec);
        }
        let sign = if r.is_negative() { -1 } else { 1 };
        let num = r.numer().magnitude().clone();
        let den = r.denom().magnitude().clone();
        // Scale so the integer quotient carries prec + 2 significant bits.
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (q, rem) = if shift >= 0 {
            (num << shift as u64).div_rem(&den)
        } else {
            num.div_rem(&(den << (-shift) as u64))
        };
        Self::round_new(sign, q, -shift, !rem.is_zero(), prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign < 0
    }

    /// Construct from raw parts, rounding `mantissa * 2^exponent` to `prec`
    /// bits; `sticky` records discarded low bits from an earlier step.
    fn round_new(sign: i8, mantissa: BigUint, exponent: i64, sticky: bool, prec: u32) -> Self {
        if mantissa.is_zero() {
            // A sticky remainder below an exact zero cannot round away from zero.
            return Self::zero(prec);
        }
        let bits = mantissa.bits() as i64;
        let target = prec as i64;
        if bits <= target {
            if sticky {
                // Materialize the sticky bit two guard positions down, then round.
                let m = (mantissa << 2u32) | BigUint::one();
                return Self::round_new(sign, m, exponent - 2, false, prec);
            }
            let shift = (target - bits) as u64;
            return BigFloat { sign, mantissa: mantissa << shift, exponent: exponent - shift as i64, prec };
        }
        let drop = (bits - target) as u64;
        let kept = &mantissa >> drop;
        let round_bit = ((&mantissa >> (drop - 1)) & BigUint::one()) == BigUint::one();
        let low_mask_nonzero = {
            let mask = (BigUint::one() << (drop - 1)) - BigUint::one();
            (&mantissa & mask) != BigUint::zero()
        };
        let sticky_all = sticky || low_mask_nonzero;
        let mut kept = kept;
        if round_bit && (sticky_all || kept.is_odd()) {
            kept += BigUint::one();
            if kept.bits() as i64 > target {
                kept >>= 1u32;
                return BigFloat { sign, mantissa: kept, exponent: exponent + drop as i64 + 1, prec };
            }
        }
        BigFloat { sign, mantissa: kept, exponent: exponent + drop as i64, prec }
    }

    /// Re-round to a (usually lower) precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        if self.is_zero() {
            return Self::zero(prec);
        }
        Self::round_new(self.sign, self.mantissa.clone(), self.exponent, false, prec)
    }

    fn join_prec(&self, other: &Self) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        if r.sign != 0 {
            r.sign = 1;
        }
        r
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.join_prec(other);
        if self.is_zero() {
            return other.with_precision(prec);
        }
        if other.is_zero() {
            return self.with_precision(prec);
        }
        // Align exponents exactly; magnitudes here stay modest.
        let (a, b) = (self, other);
        let e = a.exponent.min(b.exponent);
        let ma = BigInt::from_biguint(
            if a.sign > 0 { num_bigint::Sign::Plus } else { num_bigint::Sign::Minus },
            a.mantissa.clone() << (a.exponent - e) as u64,
        );
        let mb = BigInt::from_biguint(
            if b.sign > 0 { num_bigint::Sign::Plus } else { num_bigint::Sign::Minus },
            b.mantissa.clone() << (b.exponent - e) as u64,
        );
        let sum = ma + mb;
        if sum.is_zero() {
            return Self::zero(prec);
        }
        let sign = if sum.is_negative() { -1 } else { 1 };
        Self::round_new(sign, sum.magnitude().clone(), e, false, prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.join_prec(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        Self::round_new(
            self.sign * other.sign,
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
            false,
            prec,
        )
    }

    pub fn div(&self, other: &Self) -> Self {
        let prec = self.join_prec(other);
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = prec as u64 + 2 + other.mantissa.bits();
        let scaled = &self.mantissa << shift;
        let (q, rem) = scaled.div_rem(&other.mantissa);
        Self::round_new(
            self.sign * other.sign,
            q,
            self.exponent - other.exponent - shift as i64,
            !rem.is_zero(),
            prec,
        )
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&BigFloat::from_i64(k, self.prec))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&BigFloat::from_i64(k, self.prec))
    }

    /// Square root by integer sqrt on a widened mantissa; rounds to nearest.
    pub fn sqrt(&self) -> Self {
        assert!(self.sign >= 0, "sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        // Widen so the integer root carries prec + 3 bits, keeping exponent even.
        let mut extra = 2 * (prec as i64 + 3) - self.mantissa.bits() as i64;
        if extra < 0 {
            extra = 0;
        }
        if (self.exponent - extra) % 2 != 0 {
            extra += 1;
        }
        let widened = &self.mantissa << extra as u64;
        let root = widened.sqrt();
        let exact = (&root * &root) == widened;
        Self::round_new(1, root, (self.exponent - extra) / 2, !exact, prec)
    }

    /// Natural logarithm: x = m * 2^k with m near 1, then 2 atanh((m-1)/(m+1)).
    pub fn ln(&self) -> Self {
        assert!(self.sign > 0, "ln of non-positive value");
        let prec = self.prec;
        let work = prec + 32;
        let x = self.with_precision(work);
        // Normalize to m in [sqrt(1/2), sqrt(2)).
        let mut k = x.exponent + x.mantissa.bits() as i64; // x ~ 2^k
        let mut m = BigFloat {
            sign: 1,
            mantissa: x.mantissa.clone(),
            exponent: -(x.mantissa.bits() as i64),
            prec: work,
        }; // m in [1/2, 1)
        let sqrt_half = BigFloat::from_rat(&Rat::new(BigInt::one(), BigInt::from(2)), work).sqrt();
        if m.cmp_abs(&sqrt_half) == Ordering::Less {
            m = m.mul(&BigFloat::from_i64(2, work));
            k -= 1;
        }
        let one = BigFloat::from_i64(1, work);
        let t = m.sub(&one).div(&m.add(&one));
        let atanh = atanh_series(&t, work);
        let ln2 = ln2(work);
        ln2.mul(&BigFloat::from_i64(k, work))
            .add(&atanh.mul(&BigFloat::from_i64(2, work)))
            .with_precision(prec)
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().sub(&other.abs()).sign_cmp()
    }

    fn sign_cmp(&self) -> Ordering {
        match self.sign {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.sub(other).sign_cmp()
    }

    /// Nearest f64, for display and coarse cross-checks.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let top = if bits > 64 {
            (&self.mantissa >> (bits - 64)).to_u64().unwrap()
        } else {
            self.mantissa.to_u64().unwrap() << (64 - bits)
        };
        let exp = self.exponent + bits as i64 - 64;
        self.sign as f64 * top as f64 * (exp as f64).exp2()
    }

    /// `digits` significant decimal digits, round-half-up on the last digit.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        // |v| = mantissa * 2^exponent; decimal exponent of the leading digit:
        let log10 = (self.mantissa.bits() as i64 + self.exponent) as f64 * std::f64::consts::LN_2
            / std::f64::consts::LN_10;
        let mut dec_exp = log10.floor() as i64;
        loop {
            // scaled = |v| * 10^(digits-1-dec_exp), rounded to integer
            let k = digits as i64 - 1 - dec_exp;
            let mut num = BigInt::from_biguint(num_bigint::Sign::Plus, self.mantissa.clone());
            let mut den = BigInt::one();
            if k >= 0 {
                num *= BigInt::from(10u32).pow(k as u32);
            } else {
                den *= BigInt::from(10u32).pow((-k) as u32);
            }
            if self.exponent >= 0 {
                num <<= self.exponent as u64;
            } else {
                den <<= (-self.exponent) as u64;
            }
            let scaled: BigInt = (&num + &den / 2) / &den;
            let s = scaled.to_string();
            if s.len() > digits {
                dec_exp += 1;
                continue;
            }
            if s.len() < digits {
                dec_exp -= 1;
                continue;
            }
            let sign = if self.sign < 0 { "-" } else { "" };
            return if dec_exp >= 0 && (dec_exp as usize) < digits {
                let split = dec_exp as usize + 1;
                format!("{sign}{}.{}", &s[..split], &s[split..])
            } else {
                format!("{sign}0.{s}e{}", dec_exp + 1)
            };
        }
    }

    /// Bit-exact hexfloat form `[-]0x<mantissa>p<exponent>`.
    pub fn to_hex_string(&self) -> String {
        if self.is_zero() {
            return "0x0p0".into();
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        format!("{sign}0x{}p{}", self.mantissa.to_str_radix(16), self.exponent)
    }

    pub fn from_hex_string(s: &str, prec: u32) -> Result<Self, String> {
        let s = s.trim();
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1i8, r),
            None => (1i8, s),
        };
        let rest = rest.strip_prefix("0x").ok_or("missing 0x prefix")?;
        let (mant, exp) = rest.split_once('p').ok_or("missing p exponent")?;
        let mantissa = BigUint::parse_bytes(mant.as_bytes(), 16).ok_or("bad hex mantissa")?;
        let exponent: i64 = exp.parse().map_err(|_| "bad exponent")?;
        if mantissa.is_zero() {
            return Ok(Self::zero(prec));
        }
        Ok(Self::round_new(sign, mantissa, exponent, false, prec))
    }

    /// Upper bound 2^k with |self| <= 2^k; i64::MIN for zero.
    pub fn magnitude_exponent(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.exponent + self.mantissa.bits() as i64
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        write!(f, "{}", self.to_decimal_string(digits.max(6)))
    }
}

fn atanh_series(t: &BigFloat, prec: u32) -> BigFloat {
    // atanh(t) = sum t^(2j+1)/(2j+1), |t| < 1/2 here.
    let t2 = t.mul(t);
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut j: i64 = 1;
    loop {
        term = term.mul(&t2);
        let next = term.div_i64(2 * j + 1);
        if next.is_zero() || next.magnitude_exponent() < sum.magnitude_exponent() - prec as i64 - 8 {
            break;
        }
        sum = sum.add(&next);
        j += 1;
        assert!(j < 10_000, "atanh series did not converge");
    }
    sum
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> BigFloat {
    let third = BigFloat::from_rat(&Rat::new(BigInt::one(), BigInt::from(3)), prec + 16);
    atanh_series(&third, prec + 16)
        .mul(&BigFloat::from_i64(2, prec + 16))
        .with_precision(prec)
}

/// pi via Machin's formula, the atan series summed in exact rationals.
pub fn pi(prec: u32) -> BigFloat {
    let guard = prec + 24;
    let a = atan_inv_rational(5, guard);
    let b = atan_inv_rational(239, guard);
    let pi_rat = Rat::from_integer(BigInt::from(16)) * a - Rat::from_integer(BigInt::from(4)) * b;
    BigFloat::from_rat(&pi_rat, prec)
}

/// atan(1/m) as an exact partial sum with tail below 2^-bits.
fn atan_inv_rational(m: i64, bits: u32) -> Rat {
    let m2 = BigInt::from(m * m);
    let mut power = BigInt::from(m); // m^(2j+1)
    let mut sum = Rat::new(BigInt::one(), power.clone());
    let mut j: i64 = 1;
    loop {
        power *= &m2;
        let term = Rat::new(BigInt::one(), &power * BigInt::from(2 * j + 1));
        if term < Rat::new(BigInt::one(), BigInt::one() << bits as u64) {
            break;
        }
        if j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        j += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_from_str};

    fn close_to_rat(x: &BigFloat, r: &Rat, tol_exp: i64) -> bool {
        let rf = BigFloat::from_rat(r, x.precision() + 8);
        x.sub(&rf).magnitude_exponent() < tol_exp
    }

    #[test]
    fn arithmetic_basics() {
        let p = 128;
        let a = BigFloat::from_rat(&rat(1, 3), p);
        let b = BigFloat::from_rat(&rat(1, 6), p);
        let half = a.add(&b);
        assert!(close_to_rat(&half, &rat(1, 2), -120));
        let prod = a.mul(&b);
        assert!(close_to_rat(&prod, &rat(1, 18), -120));
        let q = a.div(&b);
        assert!(close_to_rat(&q, &rat(2, 1), -118));
    }

    #[test]
    fn pi_matches_reference_digits() {
        // 40-digit published value of pi
        let reference =
            rat_from_str("31415926535897932384626433832795028841971/10000000000000000000000000000000000000000")
                .unwrap();
        let p64 = pi(64);
        assert!(close_to_rat(&p64, &reference, -60), "pi at 64 bits");
        let p128 = pi(128);
        assert!(close_to_rat(&p128, &reference, -124), "pi at 128 bits");
        // precision monotonicity: higher precision rounds down to lower
        assert_eq!(p128.with_precision(64).to_hex_string(), p64.to_hex_string());
    }

    #[test]
    fn pi_over_sqrt3() {
        // pi/sqrt(3) = 1.81379936423421785...
        let p = pi(128);
        let s3 = BigFloat::from_i64(3, 128).sqrt();
        let v = p.div(&s3);
        let reference = rat_from_str("181379936423421785059/100000000000000000000").unwrap();
        assert!(close_to_rat(&v, &reference, -66));
        assert!((v.to_f64() - 1.8137993642342178).abs() < 1e-14);
    }

    #[test]
    fn sqrt_and_ln() {
        let p = 192;
        let two = BigFloat::from_i64(2, p);
        let r = two.sqrt();
        assert!(close_to_rat(&r.mul(&r), &rat(2, 1), -(p as i64) + 8));
        // ln(432) = ln(2^4 * 27) = 4 ln 2 + 3 ln 3
        let v432 = BigFloat::from_i64(432, p).ln();
        let ln2v = ln2(p);
        let ln3 = BigFloat::from_i64(3, p).ln();
        let combo = ln2v.mul_i64(4).add(&ln3.mul_i64(3));
        assert!(v432.sub(&combo).magnitude_exponent() < -(p as i64) + 16);
        assert!((v432.to_f64() - 432f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hex_round_trip() {
        let v = pi(96).div(&BigFloat::from_i64(-7, 96));
        let s = v.to_hex_string();
        let back = BigFloat::from_hex_string(&s, 96).unwrap();
        assert_eq!(back.to_hex_string(), s);
        assert_eq!(back.cmp_value(&v), Ordering::Equal);
    }

    #[test]
    fn decimal_string_shape() {
        let v = BigFloat::from_rat(&rat(355, 113), 64);
        let s = v.to_decimal_string(8);
        assert!(s.starts_with("3.141592"), "{s}");
    }
}
