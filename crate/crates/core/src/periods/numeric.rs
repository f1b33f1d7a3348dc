//! High-precision numeric checks on the hypergeometric periods: the
//! Legendre relation, the a = 1/432 limit, and samples of the Schwarz map.
//!
//! 2F1 is evaluated by direct summation on |z| <= 0.95 with the geometric
//! tail bound |first omitted term| * |z|/(1 - |z|) (valid here because the
//! term ratios (a+n)(b+n)/((c+n)(n+1)) have modulus at most 1 for the
//! parameter families in use). The only evaluation near z = 1 -- the a-limit
//! -- goes through the classical c = a + b logarithmic connection series
//! instead.

use super::{HypergeomParams, PeriodsError};
use crate::field::real::{ln2, pi};
use crate::field::{rat, rat_int, BigComplex, BigFloat, Rat};
use num_traits::Signed;

/// A numeric hypergeometric value with its certified tail bound.
#[derive(Debug, Clone)]
pub struct HypergeomValue {
    pub value: BigComplex,
    pub tail_bound: BigFloat,
}

/// F(a, b, c | z) by direct summation; requires |z| <= 0.95.
pub fn hypergeom_value(
    params: &HypergeomParams,
    z: &BigComplex,
    prec: u32,
) -> Result<HypergeomValue, PeriodsError> {
    let work = prec + 32;
    let zabs = z.abs().with_precision(work);
    let limit = BigFloat::from_rat(&rat(95, 100), work);
    if zabs.cmp_value(&limit) == std::cmp::Ordering::Greater {
        return Err(PeriodsError::OutOfDomain);
    }
    // geometric tail factor |z|/(1-|z|)
    let one = BigFloat::from_i64(1, work);
    let tail_factor = zabs.div(&one.sub(&zabs).max_with_eps());
    let mut term = BigComplex::from_rat(&rat_int(1), work);
    let mut sum = term.clone();
    let eps_exp = -(prec as i64) - 16;
    for n in 0..200_000i64 {
        let ratio = params.step(n);
        debug_assert!(
            ratio.abs() <= rat_int(1),
            "tail bound needs |ratio| <= 1, got {ratio} at n = {n}"
        );
        term = term.mul(z).mul_real(&BigFloat::from_rat(&ratio, work));
        if term.is_zero() {
            return Ok(HypergeomValue { value: sum, tail_bound: BigFloat::zero(prec) });
        }
        sum = sum.add(&term);
        let bound = term.abs().mul(&tail_factor);
        if bound.magnitude_exponent() < sum.magnitude_exponent() + eps_exp {
            return Ok(HypergeomValue {
                value: BigComplex::new(sum.re.with_precision(prec), sum.im.with_precision(prec)),
                tail_bound: bound.with_precision(prec),
            });
        }
    }
    Err(PeriodsError::ConvergenceFailure)
}

trait MaxEps {
    fn max_with_eps(&self) -> BigFloat;
}

impl MaxEps for BigFloat {
    // guard against 1 - |z| = 0 in the tail factor (|z| <= 0.95 anyway)
    fn max_with_eps(&self) -> BigFloat {
        if self.is_zero() || self.is_negative() {
            BigFloat::from_rat(&rat(1, 20), self.precision())
        } else {
            self.clone()
        }
    }
}

/// The numeric period matrix of y^2 = 4x^3 - 12x + 4 psi in the bases
/// (delta_1, delta_2) x (dx/y, x dx/y), from the closed hypergeometric form:
///
///   Y = [  (pi i/s3) Fa((2-psi)/4)     (pi/s3) Fa((2+psi)/4)
///          (pi i/s3) Fb((2-psi)/4)    -(pi/s3) Fb((2+psi)/4) ]
///
/// with Fa = F(1/6,5/6,1|.), Fb = F(-1/6,7/6,1|.), s3 = sqrt(3). The branch
/// of the delta_1 column is the Schwarz-map branch (Im of the period ratio
/// positive).
pub struct PeriodMatrixNumeric {
    pub entries: [[BigComplex; 2]; 2],
}

pub fn period_matrix(psi: &Rat, prec: u32) -> Result<PeriodMatrixNumeric, PeriodsError> {
    let work = prec + 32;
    let tau_plus = (psi + rat_int(2)) / rat_int(4);
    let tau_minus = (rat_int(2) - psi) / rat_int(4);
    let fa = HypergeomParams::first_kind();
    let fb = HypergeomParams::second_kind();
    let eval = |p: &HypergeomParams, t: &Rat| -> Result<BigComplex, PeriodsError> {
        Ok(hypergeom_value(p, &BigComplex::from_rat(t, work), work)?.value)
    };
    let scale = pi(work).div(&BigFloat::from_i64(3, work).sqrt());
    let i = BigComplex::i(work);
    let re = |v: BigComplex| v.mul_real(&scale);
    let entries = [
        [
            re(eval(&fa, &tau_minus)?).mul(&i),
            re(eval(&fa, &tau_plus)?),
        ],
        [
            re(eval(&fb, &tau_minus)?).mul(&i),
            re(eval(&fb, &tau_plus)?).neg(),
        ],
    ];
    Ok(PeriodMatrixNumeric { entries })
}

#[derive(Debug)]
pub struct LegendreReport {
    /// |LHS - 2 pi i| for the intersection-normalized basis
    pub deviation: BigFloat,
    /// Im(integral_1(dx/y) / integral_2(dx/y)) > 0 in the Schwarz labeling
    pub im_positive: bool,
}

/// The Legendre relation at rational psi in (-2, 2):
/// int_1(dx/y) int_2(x dx/y) - int_2(dx/y) int_1(x dx/y) = 2 pi i for an
/// oriented basis with intersection number +1. With the Schwarz-branch
/// labeling of the columns the pairing of the printed (delta_1, delta_2) is
/// -1, so the normalized product is Y12 Y21 - Y11 Y22.
pub fn legendre_check(psi: &Rat, prec: u32) -> Result<LegendreReport, PeriodsError> {
    let work = prec + 32;
    let y = period_matrix(psi, work)?.entries;
    let lhs = y[0][1].mul(&y[1][0]).sub(&y[0][0].mul(&y[1][1]));
    let two_pi_i = BigComplex::new(BigFloat::zero(work), pi(work).mul_i64(2));
    let deviation = lhs.sub(&two_pi_i).abs().with_precision(prec);
    let ratio = y[0][0].div(&y[0][1]);
    Ok(LegendreReport { deviation, im_positive: !ratio.im.is_negative() && !ratio.im.is_zero() })
}

/// F(1/6, 5/6, 1 | 1 - t) for small rational t > 0 through the c = a + b
/// logarithmic connection series: (1/2pi) sum C_n (ln 432 + s_n - ln t) t^n
/// with C_n = (1/6)_n (5/6)_n/(n!)^2 and rational shifts s_n
/// (s_0 = 0, s_{n+1} = s_n + 2/(n+1) - 1/(n+1/6) - 1/(n+5/6)).
pub fn hypergeom_first_kind_near_one(t: &Rat, prec: u32) -> BigFloat {
    assert!(t.is_positive() && *t < rat(1, 2), "needs 0 < t < 1/2");
    let work = prec + 32;
    let ln432 = BigFloat::from_i64(432, work).ln();
    let ln_t = ln_rat(t, work);
    let params = HypergeomParams::first_kind();
    let t_f = BigFloat::from_rat(t, work);
    let mut c_n = rat_int(1);
    let mut s_n = rat_int(0);
    let mut t_pow = BigFloat::from_i64(1, work);
    let mut sum = BigFloat::zero(work);
    for n in 0..10_000i64 {
        let bracket = ln432
            .add(&BigFloat::from_rat(&s_n, work))
            .sub(&ln_t);
        let term = BigFloat::from_rat(&c_n, work).mul(&t_pow).mul(&bracket);
        sum = sum.add(&term);
        if !term.is_zero() && term.magnitude_exponent() < sum.magnitude_exponent() - work as i64 {
            break;
        }
        c_n *= params.step(n);
        s_n += rat(2, n + 1) - (rat_int(n) + rat(1, 6)).recip() - (rat_int(n) + rat(5, 6)).recip();
        t_pow = t_pow.mul(&t_f);
    }
    sum.div(&pi(work).mul_i64(2)).with_precision(prec)
}

/// Natural log of a positive rational.
pub fn ln_rat(r: &Rat, prec: u32) -> BigFloat {
    assert!(r.is_positive());
    BigFloat::from_rat(r, prec + 32).ln().with_precision(prec)
}

#[derive(Debug)]
pub struct AConstSample {
    pub tau: Rat,
    /// limit estimate: the imaginary part of
    /// [int_1(dx/y) - (ln tau / 2 pi i) int_2(dx/y)] / int_2(dx/y)
    pub estimate: BigFloat,
    /// |estimate - ln(432)/(2 pi)|
    pub deviation: BigFloat,
}

/// Estimate ln(1/a) from the logarithmic degeneration of the periods at
/// tau -> 0: the normalized combination tends to i ln(432)/(2 pi), i.e.
/// a = exp(-2 pi Im(limit)) = 1/432.
pub fn a_constant_check(prec: u32) -> Result<Vec<AConstSample>, PeriodsError> {
    assert!(prec >= 128);
    let work = prec + 32;
    let target = BigFloat::from_i64(432, work).ln().div(&pi(work).mul_i64(2));
    let mut out = Vec::new();
    for k in [4u32, 6, 8] {
        let tau = rat(1, 10i64.pow(k));
        // int_1 dx/y = i (pi/s3) Fa(1 - tau), int_2 dx/y = (pi/s3) Fa(tau):
        // the pi/s3 factors cancel in the ratio
        let f1 = hypergeom_first_kind_near_one(&tau, work);
        let f2 = hypergeom_value(
            &HypergeomParams::first_kind(),
            &BigComplex::from_rat(&tau, work),
            work,
        )?
        .value
        .re;
        // Im{ [i f1 - (ln tau/2 pi i) f2] / f2 } = (f1 + f2 ln tau/(2 pi)) / f2
        let ln_tau = ln_rat(&tau, work);
        let estimate = f1
            .add(&f2.mul(&ln_tau).div(&pi(work).mul_i64(2)))
            .div(&f2);
        let deviation = estimate.sub(&target).abs().with_precision(prec);
        out.push(AConstSample {
            tau,
            estimate: estimate.with_precision(prec),
            deviation,
        });
    }
    Ok(out)
}

/// a_0 = pi/sqrt(3), the first-kind period at the psi = -2 degeneration.
pub fn a0_value(prec: u32) -> BigFloat {
    pi(prec + 16).div(&BigFloat::from_i64(3, prec + 16).sqrt()).with_precision(prec)
}

/// The Schwarz map p(tau) = i F(1/6,5/6,1|1-tau)/F(1/6,5/6,1|tau); both
/// arguments must lie in the summation domain.
pub fn schwarz_map(tau: &BigComplex, prec: u32) -> Result<BigComplex, PeriodsError> {
    let work = prec + 32;
    let one = BigComplex::from_rat(&rat_int(1), work);
    let tc = BigComplex::new(tau.re.with_precision(work), tau.im.with_precision(work));
    let params = HypergeomParams::first_kind();
    let num = hypergeom_value(&params, &one.sub(&tc), work)?.value;
    let den = hypergeom_value(&params, &tc, work)?.value;
    let p = num.div(&den).mul(&BigComplex::i(work));
    Ok(BigComplex::new(p.re.with_precision(prec), p.im.with_precision(prec)))
}

/// A labeled boundary sample of the fundamental domain.
pub struct BoundaryPoint {
    pub segment: &'static str,
    pub tau: Option<(Rat, Rat)>,
    pub z: BigComplex,
}

/// Sample the boundary of the classical fundamental domain: the unit arc is
/// the Schwarz image of the line Re(tau) = 1/2, and the vertical edges
/// Re(z) = +-1/2 (the analytic continuation to negative real tau) are
/// emitted parametrically from the corner at height sqrt(3)/2.
pub fn boundary_points(samples: u32, prec: u32) -> Result<Vec<BoundaryPoint>, PeriodsError> {
    assert!(samples >= 2);
    let mut out = Vec::new();
    for k in 0..=samples as i64 {
        // tau = 1/2 + i x, x in [-3/4, 3/4]
        let x = rat(3 * (2 * k - samples as i64), 2 * samples as i64) / rat_int(2);
        let tau = BigComplex::from_rat_pair(&rat(1, 2), &x, prec);
        let z = schwarz_map(&tau, prec)?;
        out.push(BoundaryPoint { segment: "arc", tau: Some((rat(1, 2), x)), z });
    }
    let corner = BigFloat::from_i64(3, prec).sqrt().div_i64(2);
    for k in 0..=samples as i64 {
        let h = corner.add(&BigFloat::from_rat(&rat(2 * k, samples as i64), prec));
        for sign in [-1i64, 1] {
            let z = BigComplex::new(
                BigFloat::from_rat(&rat(sign, 2), prec),
                h.clone(),
            );
            out.push(BoundaryPoint { segment: "vertical", tau: None, z });
        }
    }
    Ok(out)
}

/// ln 2 re-export for the CLI's precision self-description.
pub fn ln2_value(prec: u32) -> BigFloat {
    ln2(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_small(v: &BigFloat, exp: i64) {
        assert!(
            v.magnitude_exponent() < exp,
            "|value| = 2^{} not below 2^{exp}",
            v.magnitude_exponent()
        );
    }

    #[test]
    fn hypergeom_matches_f64() {
        // F(1/6,5/6;1;1/2) ~ 1.0984118... (checked against a double-precision
        // direct summation)
        let v = hypergeom_value(
            &HypergeomParams::first_kind(),
            &BigComplex::from_rat(&rat(1, 2), 128),
            128,
        )
        .unwrap();
        let got = v.value.re.to_f64();
        let mut sum = 0.0f64;
        let mut term = 1.0f64;
        for n in 0..200 {
            sum += term;
            let nn = n as f64;
            term *= 0.5 * (nn + 1.0 / 6.0) * (nn + 5.0 / 6.0) / ((nn + 1.0) * (nn + 1.0));
        }
        assert!((got - sum).abs() < 1e-12, "{got} vs {sum}");
        assert!(v.tail_bound.magnitude_exponent() < -120);
    }

    #[test]
    fn domain_is_enforced() {
        let z = BigComplex::from_rat(&rat(99, 100), 64);
        assert_eq!(
            hypergeom_value(&HypergeomParams::first_kind(), &z, 64).unwrap_err(),
            PeriodsError::OutOfDomain
        );
    }

    #[test]
    fn legendre_at_zero_and_one() {
        for psi in [rat_int(0), rat_int(1)] {
            let report = legendre_check(&psi, 256).unwrap();
            // 10^-50 is about 2^-166
            assert_small(&report.deviation, -166);
            assert!(report.im_positive);
        }
    }

    #[test]
    fn legendre_deviation_shrinks_with_precision() {
        let lo = legendre_check(&rat_int(0), 128).unwrap().deviation;
        let hi = legendre_check(&rat_int(0), 256).unwrap().deviation;
        // at least 10 orders of magnitude (2^33 ~ 10^10)
        assert!(hi.magnitude_exponent() + 33 < lo.magnitude_exponent());
    }

    #[test]
    fn near_one_series_is_consistent_with_direct_summation() {
        // at t = 1/4 both evaluation routes are available
        let t = rat(1, 4);
        let via_log = hypergeom_first_kind_near_one(&t, 192);
        let direct = hypergeom_value(
            &HypergeomParams::first_kind(),
            &BigComplex::from_rat(&(rat_int(1) - &t), 192),
            192,
        )
        .unwrap()
        .value
        .re;
        assert_small(&via_log.sub(&direct), -180);
    }

    #[test]
    fn a_constant_limit() {
        let samples = a_constant_check(128).unwrap();
        // ln(432)/(2 pi) ~ 0.96574; 4+ digits at tau = 1e-6
        let dev4 = &samples[0].deviation;
        let dev6 = &samples[1].deviation;
        let dev8 = &samples[2].deviation;
        assert!(dev6.to_f64() < 1e-4, "tau=1e-6 deviation {}", dev6.to_f64());
        // monotone convergence
        assert!(dev6.cmp_value(dev4) == std::cmp::Ordering::Less);
        assert!(dev8.cmp_value(dev6) == std::cmp::Ordering::Less);
        assert!((samples[1].estimate.to_f64() - 432f64.ln() / (2.0 * std::f64::consts::PI)).abs() < 1e-4);
    }

    #[test]
    fn schwarz_map_values() {
        // p(1/2) = i exactly (the two hypergeometric arguments coincide)
        let p = schwarz_map(&BigComplex::from_rat(&rat(1, 2), 192), 192).unwrap();
        assert_small(&p.re, -180);
        assert_small(&p.im.sub(&BigFloat::from_i64(1, 192)), -180);
        // |p(1/2 + 0.2 i)| = 1 within 10^-30 (2^-100)
        let tau = BigComplex::from_rat_pair(&rat(1, 2), &rat(1, 5), 256);
        let p = schwarz_map(&tau, 256).unwrap();
        let dev = p.abs().sub(&BigFloat::from_i64(1, 256));
        assert_small(&dev, -100);
        // Im p(1/4) > 0
        let p = schwarz_map(&BigComplex::from_rat(&rat(1, 4), 128), 128).unwrap();
        assert!(!p.im.is_negative() && !p.im.is_zero());
    }

    #[test]
    fn boundary_sampling() {
        let pts = boundary_points(8, 96).unwrap();
        assert!(pts.len() > 16);
        for p in pts.iter().filter(|p| p.segment == "arc") {
            let dev = p.z.abs().sub(&BigFloat::from_i64(1, 96));
            assert_small(&dev, -80);
        }
        for p in pts.iter().filter(|p| p.segment == "vertical") {
            assert!((p.z.re.to_f64().abs() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn a0_is_pi_over_sqrt3() {
        let v = a0_value(128);
        assert!((v.to_f64() - std::f64::consts::PI / 3f64.sqrt()).abs() < 1e-14);
    }
}
