//! Cross-module oracle agreements: independent routes to the same objects
//! must coincide exactly.

use qmforms::eisenstein::{eisenstein_divisor, ring_derivation, QuasiModularPoly};
use qmforms::field::{rat, rat_int, Rat};
use qmforms::fraction::ParamOneForm;
use qmforms::gaussmanin::ramanujan_field;
use qmforms::poly::{parse_poly, ParamPoly, Var};
use qmforms::series::PuiseuxSeries;
use qmforms::theta::{theta_constant, ThetaKind};

#[test]
fn ring_derivation_agrees_with_connection_pairing() {
    // dt_i paired with the field solved from the connection equals the
    // image of t_i under the ring derivation
    let r = ramanujan_field().unwrap();
    for (i, v) in [Var::T1, Var::T2, Var::T3].into_iter().enumerate() {
        let paired = ParamOneForm::<Rat>::dt(i).pair(&r);
        let derived = ring_derivation(&QuasiModularPoly::new(ParamPoly::var(v)));
        assert!(paired.eq(&qmforms::fraction::ParamFraction::from_poly(derived.p)));
    }
}

#[test]
fn theta_route_to_e2_matches_divisor_sums() {
    // 8 D log(theta2 theta3 theta4) = E2 pins the same series as the
    // divisor-sum construction
    let order = 40;
    let dlog_sum = [ThetaKind::Theta2, ThetaKind::Theta3, ThetaKind::Theta4]
        .into_iter()
        .map(|k| theta_constant(k, order + 1).log_deriv().unwrap())
        .fold(PuiseuxSeries::<Rat>::zero(1, order), |acc, s| acc.add(&s));
    let e2 = eisenstein_divisor(1, order as usize);
    assert!(dlog_sum.scale(&rat_int(8)).eq_to_common_order(&e2));
}

#[test]
fn recursion_state_scaling_freedom() {
    // solving with c = 2 rescales q: t_{i,n} picks up 2^n
    let mut standard = qmforms::eisenstein::RamanujanState::standard();
    let mut scaled = qmforms::eisenstein::RamanujanState::new(rat(1, 12), rat_int(2));
    let [t1, _, _] = standard.series(8);
    let [s1, _, _] = scaled.series(8);
    for n in 0..=8i64 {
        let factor = num_traits::pow(rat_int(2), n as usize);
        assert_eq!(s1.coeff_q(n), t1.coeff_q(n) * factor, "q^{n}");
    }
}

#[test]
fn geometric_eisenstein_forms_close_under_the_ring() {
    // G4 and G6 generate the even-weight forms: G8 = 3 G4^2 / (weight
    // bookkeeping); concretely g8 = c4 = c2^2/3
    let g4 = qmforms::weierstrass::eisenstein_modular(1);
    let g8 = qmforms::weierstrass::eisenstein_modular(3);
    let expect = g4.p.mul(&g4.p).scale(&rat(1, 3));
    assert_eq!(g8.p, expect);
    assert_eq!(parse_poly("t2^2/1200").unwrap(), g8.p);
}
