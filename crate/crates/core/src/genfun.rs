//! The classical generating functions living in (the algebraic closure of)
//! the Eisenstein ring: the j-function, Ramanujan tau, Dijkgraaf's F_g for
//! covers of elliptic curves, the Yau-Zaslow and Bryan-Leung counts on K3,
//! and the conductor-11 modularity eta product.

use crate::eisenstein::{divisor_sums, eisenstein_divisor};
use crate::field::{rat, rat_int, Rat};
use crate::series::PuiseuxSeries;
use crate::theta::euler_product;

/// E4^3 - E6^2 to order n (= 1728 Delta).
fn e4cubed_minus_e6squared(n: i64) -> PuiseuxSeries<Rat> {
    let e4 = eisenstein_divisor(2, n as usize);
    let e6 = eisenstein_divisor(3, n as usize);
    e4.pow_i64(3).unwrap().sub(&e6.pow_i64(2).unwrap())
}

/// j = 1728 E4^3 / (E4^3 - E6^2), a Laurent series starting at q^-1.
pub fn j_function(order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 0);
    let n = order + 2;
    let e4 = eisenstein_divisor(2, n as usize);
    let num = e4.pow_i64(3).unwrap().scale(&rat_int(1728));
    num.div(&e4cubed_minus_e6squared(n))
        .expect("denominator has valuation 1")
        .truncate(order)
}

/// tau(1..=n) via (E4^3 - E6^2)/1728.
pub fn tau(n: usize) -> Vec<Rat> {
    let series = e4cubed_minus_e6squared(n as i64).scale(&rat(1, 1728));
    (1..=n as i64).map(|k| series.coeff_q(k)).collect()
}

/// tau(1..=n) via the eta product q prod (1-q^k)^24 -- the independent
/// pipeline for the same numbers.
pub fn tau_by_eta_product(n: usize) -> Vec<Rat> {
    let series = euler_product(n as i64)
        .pow_i64(24)
        .unwrap()
        .mul_q_power(1, 1);
    (1..=n as i64).map(|k| series.coeff_q(k)).collect()
}

/// Dijkgraaf's genus-g generating function of simply-ramified covers:
/// F_2 = (10 E2^3 - 6 E2 E4 - 4 E6)/103680 and
/// F_3 = (-6 E2^6 + 15 E2^4 E4 - 12 E2^2 E4^2 + 7 E4^3 + 4 E2^3 E6
///        - 12 E2 E4 E6 + 4 E6^2)/35831808.
pub fn dijkgraaf_f(genus: u32, order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 1);
    let n = order as usize;
    let e2 = eisenstein_divisor(1, n);
    let e4 = eisenstein_divisor(2, n);
    let e6 = eisenstein_divisor(3, n);
    let p = |s: &PuiseuxSeries<Rat>, k: i64| s.pow_i64(k).unwrap();
    match genus {
        2 => p(&e2, 3)
            .scale(&rat_int(10))
            .sub(&e2.mul(&e4).scale(&rat_int(6)))
            .sub(&e6.scale(&rat_int(4)))
            .scale(&rat(1, 103680)),
        3 => {
            // the E2^2 E4^2 term keeps every summand of weight 12
            let sum = p(&e2, 6)
                .scale(&rat_int(-6))
                .add(&p(&e2, 4).mul(&e4).scale(&rat_int(15)))
                .sub(&p(&e2, 2).mul(&p(&e4, 2)).scale(&rat_int(12)))
                .add(&p(&e4, 3).scale(&rat_int(7)))
                .add(&p(&e2, 3).mul(&e6).scale(&rat_int(4)))
                .sub(&e2.mul(&e4).mul(&e6).scale(&rat_int(12)))
                .add(&p(&e6, 2).scale(&rat_int(4)));
            sum.scale(&rat(1, 35831808))
        }
        _ => panic!("only genus 2 and 3 have closed formulas here"),
    }
}

/// The cover counts N_{g,d} = [q^d] F_g for d = 1..=order.
pub fn cover_counts(genus: u32, order: i64) -> Vec<Rat> {
    let f = dijkgraaf_f(genus, order);
    (1..=order).map(|d| f.coeff_q(d)).collect()
}

/// Check q dF_1/dq = -(1/24) E2 coefficientwise: the positive-degree part of
/// -E2/24 must equal sum_d (sum_{i|d} i) q^d, and the constant term is
/// N_{1,0} = -1/24.
pub fn f1_check(order: i64) -> bool {
    assert!(order >= 1);
    let lhs = eisenstein_divisor(1, order as usize).scale(&rat(-1, 24));
    if lhs.coeff_q(0) != rat(-1, 24) {
        return false;
    }
    let sigma = divisor_sums(1, order as usize);
    (1..=order).all(|d| lhs.coeff_q(d) == Rat::from_integer(sigma[d as usize].clone()))
}

/// Yau-Zaslow rational-curve counts: sum N_n(0) q^n = 1728 q/(E4^3 - E6^2),
/// which also equals prod (1-q^n)^-24.
pub fn yau_zaslow(order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 0);
    let n = order + 2;
    let q = PuiseuxSeries::monomial(1, 1, rat_int(1728), n);
    q.div(&e4cubed_minus_e6squared(n))
        .expect("denominator has valuation 1")
        .truncate(order)
}

/// Bryan-Leung genus-g counts: (-(1/24) dE2)^g * 1728 q/(E4^3 - E6^2),
/// reported after dividing by q^g. The derivative is read as q d/dq, the
/// unique convention reproducing the listed coefficients; see
/// [`BRYAN_LEUNG_CONVENTION`].
pub fn bryan_leung(genus: u32, order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 0);
    let n = order + 2 + genus as i64;
    // -(1/24) q dE2/dq = sum n sigma_1(n) q^n; shifted by q^-1 per factor
    let factor = eisenstein_divisor(1, n as usize)
        .derive()
        .scale(&rat(-1, 24))
        .mul_q_power(-1, 1);
    let mut acc = yau_zaslow(n);
    for _ in 0..genus {
        acc = acc.mul(&factor);
    }
    acc.truncate(order)
}

pub const BRYAN_LEUNG_CONVENTION: &str =
    "dE2/dq read as q d/dq E2; the resulting series is divided by q^g";

/// The weight-2 conductor-11 newform as an eta product:
/// eta(q)^2 eta(q^11)^2 = q prod (1-q^n)^2 (1-q^(11n))^2.
pub fn modularity_eta_product(order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 1);
    let p1 = euler_product(order).pow_i64(2).unwrap();
    let p11 = euler_product(order)
        .dilate_exponents(11)
        .truncate(order)
        .pow_i64(2)
        .unwrap();
    // the eta prefactors contribute q^(2/24) q^(22/24) = q
    p1.mul(&p11).mul_q_power(1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_coefficients() {
        let j = j_function(3);
        assert_eq!(j.coeff_q(-1), rat_int(1));
        assert_eq!(j.coeff_q(0), rat_int(744));
        assert_eq!(j.coeff_q(1), rat_int(196884));
        assert_eq!(j.coeff_q(2), rat_int(21493760));
        assert_eq!(j.coeff_q(3), rat_int(864299970));
    }

    #[test]
    fn j_times_delta_is_e4_cubed() {
        let n = 20;
        let j = j_function(n);
        let lhs = j.mul(&e4cubed_minus_e6squared(n + 1));
        let rhs = eisenstein_divisor(2, n as usize + 1)
            .pow_i64(3)
            .unwrap()
            .scale(&rat_int(1728));
        assert!(lhs.eq_to_common_order(&rhs));
    }

    #[test]
    fn tau_values_and_oracle_agreement() {
        let t = tau(10);
        let expect: [i64; 10] = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920];
        for (i, v) in expect.into_iter().enumerate() {
            assert_eq!(t[i], rat_int(v), "tau({})", i + 1);
        }
        assert_eq!(tau_by_eta_product(10), t);
    }

    #[test]
    fn dijkgraaf_counts() {
        let f2 = dijkgraaf_f(2, 3);
        assert_eq!(f2.coeff_q(0), rat_int(0));
        assert_eq!(f2.coeff_q(1), rat_int(0)); // N_{2,1} = 0
        assert_eq!(f2.coeff_q(2), rat_int(1)); // N_{2,2} = 1
        let f3 = dijkgraaf_f(3, 3);
        assert_eq!(f3.coeff_q(0), rat_int(0));
        assert_eq!(f3.coeff_q(1), rat_int(0)); // no genus-3 covers of degree 1
    }

    #[test]
    fn f1_identity() {
        assert!(f1_check(20));
    }

    #[test]
    fn yau_zaslow_counts() {
        let yz = yau_zaslow(6);
        let expect: [i64; 7] = [1, 24, 324, 3200, 25650, 176256, 1073720];
        for (n, v) in expect.into_iter().enumerate() {
            assert_eq!(yz.coeff_q(n as i64), rat_int(v), "N_{n}(0)");
        }
        // agreement with prod (1-q^n)^-24
        let inv = euler_product(6).pow_i64(-24).unwrap();
        assert!(yz.eq_to_common_order(&inv));
        // and the product identity yz * prod(1-q^n)^24 = 1
        let check = yau_zaslow(10).mul(&euler_product(10).pow_i64(24).unwrap());
        assert!(check.eq_to_common_order(&PuiseuxSeries::one(10)));
    }

    #[test]
    fn bryan_leung_counts() {
        let g1 = bryan_leung(1, 3);
        for (n, v) in [1, 30, 480, 5460].into_iter().enumerate() {
            assert_eq!(g1.coeff_q(n as i64), rat_int(v), "g=1 n={n}");
        }
        let g2 = bryan_leung(2, 3);
        for (n, v) in [1, 36, 672, 8728].into_iter().enumerate() {
            assert_eq!(g2.coeff_q(n as i64), rat_int(v), "g=2 n={n}");
        }
        // g = 0 degenerates to Yau-Zaslow
        assert!(bryan_leung(0, 5).eq_to_common_order(&yau_zaslow(5)));
    }

    #[test]
    fn conductor_11_eta_product() {
        let f = modularity_eta_product(13);
        let expect = [
            (1, 1),
            (2, -2),
            (3, -1),
            (4, 2),
            (5, 1),
            (6, 2),
            (7, -2),
            (8, 0),
            (9, -2),
            (10, -2),
            (11, 1),
            (12, -2),
            (13, 4),
        ];
        for (n, v) in expect {
            assert_eq!(f.coeff_q(n), rat_int(v), "coefficient q^{n}");
        }
    }
}
