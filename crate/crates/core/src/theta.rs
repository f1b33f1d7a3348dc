//! Theta constants, the Dedekind eta function, the Halphen solution by
//! normalized logarithmic derivatives, and the theta-Eisenstein identities
//! as exact series checks.
//!
//! All z-derivatives are replaced by D = q d/dq with the 2 pi i factors
//! absorbed into rational normalization constants, derived once from
//! a_k = ((2 pi i)/12, 12 ((2 pi i)/12)^2, 8 ((2 pi i)/12)^3): identity (i)
//! compares against E2/12, (ii) against E4/12, (iii) against E6/216.

use crate::eisenstein::eisenstein_divisor;
use crate::field::{rat, rat_int, CycloNumber, Field, Rat};
use crate::series::PuiseuxSeries;

/// Which theta constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    Theta2,
    Theta3,
    Theta4,
}

/// A theta constant together with its series.
pub struct ThetaSeries {
    pub which: ThetaKind,
    pub series: PuiseuxSeries<Rat>,
}

/// theta2 = sum q^((1/2)(n+1/2)^2) = 2 q^(1/8) sum q^(n(n+1)/2)  (lattice 8),
/// theta3 = sum q^(n^2/2), theta4 with alternating signs (lattice 2);
/// exact through q^order (all lattice exponents below order+1).
pub fn theta_constant(which: ThetaKind, order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 1);
    match which {
        ThetaKind::Theta2 => {
            let d = 8;
            let trunc = (order + 1) * d as i64 - 1;
            let mut coeffs = vec![rat_int(0); (trunc + 1) as usize];
            let mut n: i64 = 0;
            loop {
                let e = (2 * n + 1) * (2 * n + 1); // exponent numerator on lattice 8
                if e > trunc {
                    break;
                }
                coeffs[e as usize] = rat_int(2);
                n += 1;
            }
            PuiseuxSeries::new(d, 0, trunc, coeffs)
        }
        ThetaKind::Theta3 | ThetaKind::Theta4 => {
            let d = 2;
            let trunc = (order + 1) * d as i64 - 1;
            let mut coeffs = vec![rat_int(0); (trunc + 1) as usize];
            coeffs[0] = rat_int(1);
            let mut n: i64 = 1;
            loop {
                let e = n * n; // exponent numerator on lattice 2
                if e > trunc {
                    break;
                }
                let sign = if which == ThetaKind::Theta4 && n % 2 == 1 {
                    rat_int(-2)
                } else {
                    rat_int(2)
                };
                coeffs[e as usize] = sign;
                n += 1;
            }
            PuiseuxSeries::new(d, 0, trunc, coeffs)
        }
    }
}

/// Euler product prod_{n=1}^{order} (1 - q^n), exact through q^order.
pub fn euler_product(order: i64) -> PuiseuxSeries<Rat> {
    assert!(order >= 1);
    let mut acc = PuiseuxSeries::<Rat>::one(order);
    for n in 1..=order {
        let factor = PuiseuxSeries::one(order).sub(&PuiseuxSeries::monomial(1, n, rat_int(1), order));
        acc = acc.mul(&factor);
    }
    acc
}

/// eta = q^(1/24) prod (1 - q^n) on lattice 24.
pub fn dedekind_eta(order: i64) -> PuiseuxSeries<Rat> {
    let p = euler_product(order + 1);
    let prefactor = PuiseuxSeries::monomial(24, 1, rat_int(1), (order + 1) * 24);
    p.refine_lattice(24).mul(&prefactor)
}

/// The normalized Halphen solution (u1, u2, u3) = 2 D(log theta) for
/// (theta4, theta2, theta3), with D = q d/dq. In the z-derivative convention
/// of the differential system these are the solutions divided by 2 pi i.
///
/// u2 lands on the integer lattice (the fractional leading exponent of
/// theta2 only contributes the constant 1/4); u1 and u3 have genuine
/// q^(1/2) terms, swapped by q^(1/2) -> -q^(1/2). Their half-integer parts
/// cancel in every symmetric combination that equals a level-one form.
pub fn halphen_solution(order: i64) -> [PuiseuxSeries<Rat>; 3] {
    assert!(order >= 2);
    let two = rat_int(2);
    let u = |kind| {
        theta_constant(kind, order + 1)
            .log_deriv()
            .expect("theta constants are units up to a monomial")
            .scale(&two)
            .reduce_lattice()
    };
    let out = [u(ThetaKind::Theta4), u(ThetaKind::Theta2), u(ThetaKind::Theta3)];
    for s in &out {
        assert!(s.lattice() <= 2, "log-derivative stays on the q^(1/2) lattice");
    }
    out
}

/// Residuals of the Darboux-Halphen system D(u1) = u1(u2+u3) - u2u3 and its
/// cyclic companions.
pub fn halphen_residuals(u: &[PuiseuxSeries<Rat>; 3]) -> [PuiseuxSeries<Rat>; 3] {
    let rhs = |a: &PuiseuxSeries<Rat>, b: &PuiseuxSeries<Rat>, c: &PuiseuxSeries<Rat>| {
        a.mul(&b.add(c)).sub(&b.mul(c))
    };
    [
        u[0].derive().sub(&rhs(&u[0], &u[1], &u[2])),
        u[1].derive().sub(&rhs(&u[1], &u[2], &u[0])),
        u[2].derive().sub(&rhs(&u[2], &u[0], &u[1])),
    ]
}

/// First failing coefficient of an identity check, if any.
pub type SeriesMismatch = Option<(Rat, Rat, Rat)>;

#[derive(Debug)]
pub struct ThetaEisensteinReport {
    /// (2/3) D log(theta2 theta3 theta4) = E2/12
    pub identity_e2: SeriesMismatch,
    /// 16 sum_{i<j} L_i L_j = -E4/12
    pub identity_e4: SeriesMismatch,
    /// 32 L1 L2 L3 = -E6/216
    pub identity_e6: SeriesMismatch,
}

impl ThetaEisensteinReport {
    pub fn passed(&self) -> bool {
        self.identity_e2.is_none() && self.identity_e4.is_none() && self.identity_e6.is_none()
    }
}

/// The three theta-Eisenstein identities, exact to q^order. L_i is the
/// normalized logarithmic derivative of (theta2 theta3 theta4)^(1/3)/theta_i;
/// cube roots are avoided by linearity of D log. The 2 pi i normalization
/// reduces the right-hand sides to E2/12, -E4/12 and -E6/216: the signs of
/// the last two are forced (L_2 + L_3 + L_4 = 0 by construction, so the
/// second symmetric function is -(1/2) sum L_i^2 < 0 while E4 has positive
/// leading coefficient).
pub fn theta_eisenstein_identities(order: i64) -> ThetaEisensteinReport {
    assert!(order >= 4);
    let dlog = |kind| {
        theta_constant(kind, order + 1)
            .log_deriv()
            .expect("theta constants are units up to a monomial")
            .reduce_lattice()
    };
    let d2 = dlog(ThetaKind::Theta2);
    let d3 = dlog(ThetaKind::Theta3);
    let d4 = dlog(ThetaKind::Theta4);
    let sum = d2.add(&d3).add(&d4);
    let e2 = eisenstein_divisor(1, order as usize);
    let e4 = eisenstein_divisor(2, order as usize);
    let e6 = eisenstein_divisor(3, order as usize);

    let lhs_e2 = sum.scale(&rat(2, 3));
    let identity_e2 = lhs_e2.first_mismatch(&e2.scale(&rat(1, 12)));

    let third = rat(1, 3);
    let l: Vec<PuiseuxSeries<Rat>> = [&d2, &d3, &d4]
        .iter()
        .map(|d| sum.scale(&third).sub(d))
        .collect();
    let sym2 = l[0]
        .mul(&l[1])
        .add(&l[0].mul(&l[2]))
        .add(&l[1].mul(&l[2]));
    let identity_e4 = sym2
        .scale(&rat_int(16))
        .first_mismatch(&e4.scale(&rat(-1, 12)));
    let prod = l[0].mul(&l[1]).mul(&l[2]);
    let identity_e6 = prod
        .scale(&rat_int(32))
        .first_mismatch(&e6.scale(&rat(-1, 216)));

    ThetaEisensteinReport { identity_e2, identity_e4, identity_e6 }
}

/// (E4^3 - E6^2)/1728 = q prod (1-q^n)^24, exact to q^order.
pub fn delta_product_check(order: i64) -> SeriesMismatch {
    assert!(order >= 1);
    let e4 = eisenstein_divisor(2, order as usize);
    let e6 = eisenstein_divisor(3, order as usize);
    let lhs = e4
        .pow_i64(3)
        .unwrap()
        .sub(&e6.pow_i64(2).unwrap())
        .scale(&rat(1, 1728));
    let rhs = euler_product(order)
        .pow_i64(24)
        .unwrap()
        .mul_q_power(1, 1);
    lhs.first_mismatch(&rhs)
}

/// Report for the Ohyama eta-quotient solution (the optional stretch check).
#[derive(Debug)]
pub struct OhyamaSeriesReport {
    /// constant terms of the normalized quadruple (W, X, Y, Z)
    pub constants: [CycloNumber; 4],
    /// first mismatch of each of the four sum equations
    pub equations: [Option<(Rat, CycloNumber, CycloNumber)>; 4],
    /// first nonzero coefficient of F(W, X, Y, Z)
    pub quadric: Option<(Rat, CycloNumber, CycloNumber)>,
}

impl OhyamaSeriesReport {
    pub fn passed(&self) -> bool {
        self.equations.iter().all(|e| e.is_none()) && self.quadric.is_none()
    }
}

/// Build the 2 pi i-normalized eta quotients
///   W = (3 log eta(z/3) - log eta(z))' / (2 pi i), and likewise
///   X (3z), Y ((z+2)/3), Z ((z+1)/3),
/// realized on the q^(1/3) lattice with zeta_3 twists, and check the four
/// sum equations plus F = 0 through q^order.
pub fn ohyama_eta_series(order: i64) -> OhyamaSeriesReport {
    assert!(order >= 1);
    type S = PuiseuxSeries<CycloNumber>;
    let zeta = CycloNumber::zeta(3);
    let trunc = (order + 2) * 3; // numerators on lattice 3
    let one = S::new(3, 0, trunc, {
        let mut v = vec![CycloNumber::zero(); (trunc + 1) as usize];
        v[0] = CycloNumber::one();
        v
    });
    // prod over n >= 1 of (1 - zeta^(k n) q^(n s / 3)) for step s in {1, 3, 9}
    let twisted_product = |k: u32, step: i64| -> S {
        let mut acc = one.clone();
        let mut n: i64 = 1;
        while n * step <= trunc {
            let mut tw = CycloNumber::one();
            for _ in 0..(k as i64 * n).rem_euclid(3) {
                tw = tw.mul(&zeta);
            }
            let factor = one.sub(&S::monomial(3, n * step, tw, trunc));
            acc = acc.mul(&factor);
            n += 1;
        }
        acc
    };
    let dlog = |s: &S| s.log_deriv().expect("unit product").clone();
    // normalized log-derivatives: (log eta(arg))' / (2 pi i)
    let eta_z = dlog(&twisted_product(0, 3)); // + 1/24
    let eta_z3 = |k: u32| dlog(&twisted_product(k, 1)); // + 1/72
    let eta_3z = dlog(&twisted_product(0, 9)); // + 1/8
    let c = |r: Rat| {
        let mut v = vec![CycloNumber::zero(); (trunc + 1) as usize];
        v[0] = CycloNumber::from_rat(&r);
        S::new(3, 0, trunc, v)
    };
    // t = 3 (const + core) - (1/24 + eta_z); the 1/72 constants triple to 1/24
    let three = CycloNumber::from_rat(&rat_int(3));
    let w = eta_z3(0).scale(&three).sub(&eta_z);
    let x = c(rat(3, 8) - rat(1, 24)).add(&eta_3z.scale(&three)).sub(&eta_z);
    let y = eta_z3(2).scale(&three).sub(&eta_z);
    let z = eta_z3(1).scale(&three).sub(&eta_z);
    let t = [w, x, y, z];
    let constants = [
        t[0].coeff_q(0),
        t[1].coeff_q(0),
        t[2].coeff_q(0),
        t[3].coeff_q(0),
    ];
    let eq = |a: usize, b: usize, cc: usize| -> Option<(Rat, CycloNumber, CycloNumber)> {
        let lhs = t[a].add(&t[b]).add(&t[cc]).derive();
        let rhs = t[a]
            .mul(&t[b])
            .add(&t[b].mul(&t[cc]))
            .add(&t[cc].mul(&t[a]));
        lhs.first_mismatch(&rhs)
    };
    let equations = [eq(0, 1, 2), eq(0, 2, 3), eq(0, 1, 3), eq(1, 2, 3)];
    let z1 = &zeta;
    let z2 = zeta.mul(&zeta);
    let f = t[1]
        .mul(&t[3])
        .add(&t[2].mul(&t[0]))
        .scale(&z2)
        .add(&t[1].mul(&t[0]).add(&t[2].mul(&t[3])).scale(z1))
        .add(&t[1].mul(&t[2]).add(&t[3].mul(&t[0])));
    let zero = S::new(3, 0, trunc, vec![CycloNumber::zero(); (trunc + 1) as usize]);
    let quadric = f.first_mismatch(&zero);
    OhyamaSeriesReport { constants, equations, quadric }
}
