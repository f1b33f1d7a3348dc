//! Hypergeometric periods of the family y^2 = 4x^3 - 12x + 4 psi: exact
//! Picard-Fuchs checks, the f_n recursion, the q(tau) map and its reversion
//! (the period-side oracle for the Eisenstein series), and numeric checks.
//!
//! Exact series here use the variable tau = (psi + 2)/4 which sends the
//! degenerate fibers to tau = 0, 1; q-expansions come from reverting
//! q = (1/432) tau exp(f/F).

pub mod numeric;

use crate::field::{rat, rat_int, Rat};
use crate::series::PuiseuxSeries;
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PeriodsError {
    #[error("hypergeometric parameter c must not be a nonpositive integer")]
    BadC,
    #[error("argument outside the summation domain |z| <= 0.95")]
    OutOfDomain,
    #[error("series did not converge within the iteration cap")]
    ConvergenceFailure,
}

/// Parameters of the Gauss hypergeometric function F(a, b, c | z).
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeomParams {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl HypergeomParams {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self, PeriodsError> {
        if c.is_integer() && !c.numer().is_positive() {
            return Err(PeriodsError::BadC);
        }
        Ok(HypergeomParams { a, b, c })
    }

    /// F(1/6, 5/6, 1 | .): the first-kind period up to pi/sqrt(3).
    pub fn first_kind() -> Self {
        HypergeomParams { a: rat(1, 6), b: rat(5, 6), c: rat_int(1) }
    }

    /// F(-1/6, 7/6, 1 | .): the second-kind period up to -pi/sqrt(3).
    pub fn second_kind() -> Self {
        HypergeomParams { a: rat(-1, 6), b: rat(7, 6), c: rat_int(1) }
    }

    /// Successive term ratios t_{n+1}/t_n = (a+n)(b+n)/((c+n)(n+1)).
    pub fn step(&self, n: i64) -> Rat {
        let nn = rat_int(n);
        ((&self.a + &nn) * (&self.b + &nn)) / ((&self.c + &nn) * rat_int(n + 1))
    }
}

/// Exact series of F(a, b, c | tau) through tau^order.
pub fn hypergeom_series(params: &HypergeomParams, order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 0);
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    let mut term = rat_int(1);
    coeffs.push(term.clone());
    for n in 0..order {
        term *= params.step(n);
        coeffs.push(term.clone());
    }
    PuiseuxSeries::new(1, 0, order, coeffs)
}

/// Which Picard-Fuchs equation: the first kind is
/// (5/36) I + 2 psi I' + (psi^2 - 4) I'' = 0 for I = F(1/6,5/6,1|(psi+2)/4);
/// the second kind replaces 5/36 by -7/36 and F by F(-1/6,7/6,1|.).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PicardFuchsKind {
    FirstKind,
    SecondKind,
}

/// Residual of the Picard-Fuchs equation on the hypergeometric solution,
/// as a series in tau (zero through tau^(order) when the identity holds).
pub fn picard_fuchs_residual(kind: PicardFuchsKind, order: i64) -> PuiseuxSeries<Rat> {
    let (lambda, params) = match kind {
        PicardFuchsKind::FirstKind => (rat(5, 36), HypergeomParams::first_kind()),
        PicardFuchsKind::SecondKind => (rat(-7, 36), HypergeomParams::second_kind()),
    };
    let f = hypergeom_series(&params, order + 2);
    residual_of(&f, &lambda).truncate(order)
}

/// lambda I + 2 psi I' + (psi^2 - 4) I'' with psi = 4 tau - 2 and
/// derivatives taken in psi (d/dpsi = (1/4) d/dtau).
fn residual_of(f: &PuiseuxSeries<Rat>, lambda: &Rat) -> PuiseuxSeries<Rat> {
    let order = f.truncation_num();
    let d_tau = |s: &PuiseuxSeries<Rat>| s.derive().mul_q_power(-1, 1); // d/dtau
    let fp = d_tau(f).scale(&rat(1, 4));
    let fpp = d_tau(&d_tau(f)).scale(&rat(1, 16));
    // psi = 4 tau - 2 and psi^2 - 4 = 16 tau^2 - 16 tau as series
    let tau = PuiseuxSeries::monomial(1, 1, rat_int(1), order);
    let psi = tau.scale(&rat_int(4)).sub(&PuiseuxSeries::one(order).scale(&rat_int(2)));
    let psi2m4 = psi.mul(&psi).sub(&PuiseuxSeries::one(order).scale(&rat_int(4)));
    f.scale(lambda)
        .add(&psi.mul(&fp).scale(&rat_int(2)))
        .add(&psi2m4.mul(&fpp))
}

/// Residual with one coefficient of the solution perturbed, as a sensitivity
/// control: the result must be nonzero at (or near) the tweaked order.
pub fn perturbed_residual(order: i64, tweak_at: i64) -> PuiseuxSeries<Rat> {
    let f = hypergeom_series(&HypergeomParams::first_kind(), order + 2);
    let bump = PuiseuxSeries::monomial(1, tweak_at, rat(1, 7), order + 2);
    residual_of(&f.add(&bump), &rat(5, 36)).truncate(order)
}

/// The f_n recursion for the logarithmic companion solution
/// F(tau) ln(tau) + f(tau) of the hypergeometric equation
/// tau(1-tau) u'' + (1-2tau) u' - (5/36) u = 0: matching coefficients in
/// L[f] = F - 2(1-tau) F' gives
///
///   (n+1)^2 f_{n+1} = (n+1/6)(n+5/6) f_n + (2n+1) C_n - 2(n+1) C_{n+1}
///
/// with C_n = (1/6)_n (5/6)_n/(n!)^2 and f_0 = 0. (The shifts carry plus
/// signs: the minus signs sometimes quoted reproduce f_1 = 13/18 but break
/// every later coefficient against the q-expansion oracles.)
pub fn f_recursion(order: usize) -> Vec<Rat> {
    let params = HypergeomParams::first_kind();
    let mut out = Vec::with_capacity(order + 1);
    out.push(rat_int(0));
    let mut c_n = rat_int(1);
    for n in 0..order as i64 {
        let c_next = &c_n * params.step(n);
        let np1sq = rat_int((n + 1) * (n + 1));
        let fac = (rat_int(n) + rat(1, 6)) * (rat_int(n) + rat(5, 6)) / &np1sq;
        let f_next = fac * &out[n as usize]
            + &c_n * rat_int(2 * n + 1) / &np1sq
            - rat(2, n + 1) * &c_next;
        out.push(f_next);
        c_n = c_next;
    }
    out
}

/// f(tau) = sum f_n tau^n as a series.
pub fn f_series(order: i64) -> PuiseuxSeries<Rat> {
    let coeffs = f_recursion(order as usize);
    PuiseuxSeries::new(1, 0, order, coeffs)
}

/// The local Torelli coordinate q(tau) = (1/432) tau exp(f(tau)/F(tau)),
/// an invertible map at tau = 0 with leading coefficient 1/432.
pub fn qtau_map(order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 1);
    qtau_map_scaled(order).rescale_variable(&rat(1, 432))
}

/// q as a series in the scaled variable tau~ = tau/432; the coefficients of
/// this form stay small, which keeps reversion and composition cheap.
fn qtau_map_scaled(order: i64) -> PuiseuxSeries<Rat> {
    let scale = rat_int(432);
    let f = f_series(order).rescale_variable(&scale);
    let big_f = hypergeom_series(&HypergeomParams::first_kind(), order).rescale_variable(&scale);
    let exp = f
        .div(&big_f)
        .expect("F is a unit")
        .exp()
        .expect("f/F has positive valuation");
    exp.mul_q_power(1, 1)
}

/// E2, E4, E6 through q^order by composing the hypergeometric period
/// parametrization with the reversion of q(tau):
/// E2 = F(-1/6,7/6,1|tau) F(1/6,5/6,1|tau), E4 = F(1/6,5/6,1|tau)^4,
/// E6 = (1 - 2 tau) F(1/6,5/6,1|tau)^6, tau = tau(q).
pub fn eisenstein_via_periods(order: i64) -> [PuiseuxSeries<Rat>; 3] {
    assert!(order >= 1);
    let n = order + 1;
    let scale = rat_int(432);
    let tau_scaled_of_q = qtau_map_scaled(n).revert().expect("leading coefficient 1");
    let fa = hypergeom_series(&HypergeomParams::first_kind(), n)
        .rescale_variable(&scale)
        .compose(&tau_scaled_of_q)
        .expect("composition at positive valuation");
    let fb = hypergeom_series(&HypergeomParams::second_kind(), n)
        .rescale_variable(&scale)
        .compose(&tau_scaled_of_q)
        .expect("composition at positive valuation");
    let e2 = fb.mul(&fa);
    let fa2 = fa.mul(&fa);
    let e4 = fa2.mul(&fa2);
    // 1 - 2 tau = 1 - 864 tau~
    let one_minus_2tau = PuiseuxSeries::one(n).sub(&tau_scaled_of_q.scale(&rat_int(864)));
    let e6 = one_minus_2tau.mul(&e4).mul(&fa2);
    [e2.truncate(order), e4.truncate(order), e6.truncate(order)]
}
