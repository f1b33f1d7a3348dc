//! q-expansions of E2, E4, E6 by the Ramanujan recursion and by divisor
//! sums, the quasi-modular polynomial ring with its derivation, and the
//! two-parameter group action on the moduli coordinates.
//!
//! Normalization: b = 1/12, c = 1, so the derivation is exactly q d/dq,
//! every coefficient is rational, and 12 t1 = E2, 12 t2 = E4... in the sense
//! t_k = a_k E_{2k} with (a_1, a_2, a_3) = (b, 12 b^2, 8 b^3).

use crate::field::{rat, rat_int, Field, Rat};
use crate::fraction::VectorFieldT;
use crate::linalg::solve_square;
use crate::poly::{ParamPoly, Var};
use crate::series::PuiseuxSeries;
use num_bigint::BigInt;

/// State of the power-series solution of the Ramanujan system
/// t1' = t1^2 - t2/12, t2' = 4 t1 t2 - 6 t3, t3' = 6 t1 t3 - t2^2/3 with
/// derivation a q d/dq, a = 12 b.
pub struct RamanujanState {
    b: Rat,
    c: Rat,
    /// coefficient rows: coeffs[n] = (t1_n, t2_n, t3_n)
    coeffs: Vec<[Rat; 3]>,
}

impl RamanujanState {
    pub fn new(b: Rat, c: Rat) -> Self {
        assert!(!Field::is_zero(&b), "b must be nonzero");
        RamanujanState { b, c, coeffs: Vec::new() }
    }

    /// Default normalization b = 1/12 (a = 1, derivation q d/dq), c = 1.
    pub fn standard() -> Self {
        Self::new(rat(1, 12), rat_int(1))
    }

    /// Linearization matrix of the right-hand side at the constant solution.
    pub fn matrix(&self) -> [[Rat; 3]; 3] {
        let b = &self.b;
        [
            [rat_int(2) * b, rat(-1, 12), rat_int(0)],
            [rat_int(48) * b * b, rat_int(4) * b, rat_int(-6)],
            [rat_int(48) * b * b * b, rat_int(-8) * b * b, rat_int(6) * b],
        ]
    }

    /// Coefficients through q^n, computed recursively:
    /// (t1_0, t2_0, t3_0) = (b, 12 b^2, 8 b^3), the n = 1 row is the
    /// eigenvector c (-24 b, 240*12 b^2, -504*8 b^3) of M for the eigenvalue
    /// a = 12 b, and for n > 1 the linear system (12 n b I - M) t_n =
    /// (quadratic convolution) has a unique solution.
    pub fn solve(&mut self, n: usize) {
        if self.coeffs.is_empty() {
            let b = &self.b;
            self.coeffs.push([
                b.clone(),
                rat_int(12) * b * b,
                rat_int(8) * b * b * b,
            ]);
        }
        if self.coeffs.len() == 1 && n >= 1 {
            let b = &self.b;
            let c = &self.c;
            self.coeffs.push([
                rat_int(-24) * b * c,
                rat_int(240) * rat_int(12) * b * b * c,
                rat_int(-504) * rat_int(8) * b * b * b * c,
            ]);
        }
        let m = self.matrix();
        let a = rat_int(12) * &self.b;
        while self.coeffs.len() <= n {
            let k = self.coeffs.len(); // next order
            // convolution of the nonlinear part over 1..k-1
            let mut rhs = [rat_int(0), rat_int(0), rat_int(0)];
            for i in 1..k {
                let u = &self.coeffs[i];
                let v = &self.coeffs[k - i];
                rhs[0] = rhs[0].clone() + &u[0] * &v[0];
                rhs[1] = rhs[1].clone() + rat_int(4) * &u[0] * &v[1];
                rhs[2] =
                    rhs[2].clone() + rat_int(6) * &u[0] * &v[2] - rat(1, 3) * &u[1] * &v[1];
            }
            // (a k I - M) t_k = rhs
            let mut sys: Vec<Vec<Rat>> = (0..3)
                .map(|r| (0..3).map(|cidx| -m[r][cidx].clone()).collect())
                .collect();
            for (r, row) in sys.iter_mut().enumerate() {
                row[r] = row[r].clone() + &a * rat_int(k as i64);
            }
            let sol = solve_square(&sys, &rhs).expect("recursion matrix invertible for n > 1");
            self.coeffs.push([sol[0].clone(), sol[1].clone(), sol[2].clone()]);
        }
    }

    pub fn series(&mut self, n: usize) -> [PuiseuxSeries<Rat>; 3] {
        self.solve(n);
        let make = |idx: usize, state: &Self| {
            PuiseuxSeries::new(
                1,
                0,
                n as i64,
                state.coeffs[..=n].iter().map(|row| row[idx].clone()).collect(),
            )
        };
        [make(0, self), make(1, self), make(2, self)]
    }
}

/// (t1, t2, t3) as q-series to order n in the standard normalization
/// b = 1/12, c = 1: t_k = a_k E_{2k} with (a_1, a_2, a_3) =
/// (1/12, 1/12, 1/216).
pub fn solve_ramanujan(n: usize) -> [PuiseuxSeries<Rat>; 3] {
    RamanujanState::standard().series(n)
}

/// E2, E4, E6 to order n via the Ramanujan recursion: E_{2k} = t_k / a_k.
pub fn eisenstein_by_recursion(n: usize) -> [PuiseuxSeries<Rat>; 3] {
    let [t1, t2, t3] = solve_ramanujan(n);
    [
        t1.scale_rat(&rat_int(12)),
        t2.scale_rat(&rat_int(12)),
        t3.scale_rat(&rat_int(216)),
    ]
}

/// sigma_k(n) = sum of d^k over divisors d of n, for n = 1..=limit.
pub fn divisor_sums(power: u32, limit: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); limit + 1];
    for d in 1..=limit {
        let dk = num_traits::pow(BigInt::from(d), power as usize);
        let mut m = d;
        while m <= limit {
            out[m] += &dk;
            m += d;
        }
    }
    out
}

/// E_k(q) = 1 + b_k sum_n sigma_{2k-1}(n) q^n with (b_1, b_2, b_3) =
/// (-24, 240, -504); k in {1, 2, 3}.
pub fn eisenstein_divisor(k: u32, n: usize) -> PuiseuxSeries<Rat> {
    assert!((1..=3).contains(&k), "only E2, E4, E6 are defined here");
    let bk = match k {
        1 => rat_int(-24),
        2 => rat_int(240),
        _ => rat_int(-504),
    };
    let sums = divisor_sums(2 * k - 1, n);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(rat_int(1));
    for (_, s) in sums.iter().enumerate().skip(1) {
        coeffs.push(&bk * Rat::from_integer(s.clone()));
    }
    PuiseuxSeries::new(1, 0, n as i64, coeffs)
}

/// A quasi-modular form as a polynomial in Q[t1, t2, t3] with its weight and
/// differential order (the t1-degree).
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiModularPoly {
    pub p: ParamPoly<Rat>,
    pub weight: u64,
    pub diff_order: u16,
}

impl QuasiModularPoly {
    /// Wrap a homogeneous polynomial; panics when not weight-homogeneous.
    pub fn new(p: ParamPoly<Rat>) -> Self {
        let ws = p.weight_set();
        assert!(ws.len() <= 1, "not weight-homogeneous: weights {ws:?}");
        let weight = ws.into_iter().next().unwrap_or(0);
        let diff_order = p.degree_in(Var::T1);
        QuasiModularPoly { p, weight, diff_order }
    }
}

/// Derivation of the quasi-modular ring: t -> dt(R) = sum (dt/dt_i) R_i with
/// R the Ramanujan vector field. Raises weight by 2 and the differential
/// order by at most 1.
pub fn ring_derivation(f: &QuasiModularPoly) -> QuasiModularPoly {
    let r = crate::gaussmanin::ramanujan_field_closed_form();
    let image = r.apply(&f.p);
    let out = QuasiModularPoly::new(image);
    debug_assert!(out.p.is_zero() || out.weight == f.weight + 2);
    debug_assert!(out.diff_order <= f.diff_order + 1);
    out
}

pub use crate::gaussmanin::ramanujan_field_closed_form as ramanujan_vector_field;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ActionError {
    #[error("the scaling parameter k must be nonzero")]
    ZeroScale,
}

/// Action of g = [[k, k'], [0, k^-1]] on the moduli coordinates:
/// t . g = (t1 k^-2 + k' k^-1, t2 k^-4, t3 k^-6).
pub fn group_action<F: Field>(t: &[F; 3], k: &F, kp: &F) -> Result<[F; 3], ActionError> {
    let k_inv = k.inv().map_err(|_| ActionError::ZeroScale)?;
    let k2 = k_inv.mul(&k_inv);
    let k4 = k2.mul(&k2);
    let k6 = k4.mul(&k2);
    Ok([
        t[0].mul(&k2).add(&kp.mul(&k_inv)),
        t[1].mul(&k4),
        t[2].mul(&k6),
    ])
}

/// Group law of the upper-triangular matrices [[k, k'], [0, k^-1]].
pub fn group_law<F: Field>(g1: &(F, F), g2: &(F, F)) -> Result<(F, F), ActionError> {
    let (k1, kp1) = g1;
    let (k2, kp2) = g2;
    let k2_inv = k2.inv().map_err(|_| ActionError::ZeroScale)?;
    Ok((k1.mul(k2), k1.mul(kp2).add(&kp1.mul(&k2_inv))))
}

/// Evaluate a polynomial at a parameter point.
pub fn eval_at<F: Field>(p: &ParamPoly<F>, t: &[F; 3]) -> F {
    let mut values = std::collections::BTreeMap::new();
    values.insert(Var::T1, t[0].clone());
    values.insert(Var::T2, t[1].clone());
    values.insert(Var::T3, t[2].clone());
    values.insert(Var::T4, F::zero());
    values.insert(Var::X, F::zero());
    p.eval(&values)
}

/// Residual of the Ramanujan system on a candidate solution triple, with
/// derivation q d/dq: returns the three series t_i' - rhs_i.
pub fn ramanujan_residuals(t: &[PuiseuxSeries<Rat>; 3]) -> [PuiseuxSeries<Rat>; 3] {
    let field: VectorFieldT<Rat> = crate::gaussmanin::ramanujan_field_closed_form();
    let rhs = |i: usize| series_eval_poly(field.component(i), t);
    [
        t[0].derive().sub(&rhs(0)),
        t[1].derive().sub(&rhs(1)),
        t[2].derive().sub(&rhs(2)),
    ]
}

/// Evaluate a polynomial in t1, t2, t3 on series arguments.
pub fn series_eval_poly(p: &ParamPoly<Rat>, t: &[PuiseuxSeries<Rat>; 3]) -> PuiseuxSeries<Rat> {
    let order = t.iter().map(|s| s.truncation_num()).min().unwrap_or(0);
    let mut acc = PuiseuxSeries::<Rat>::zero(1, order);
    for (m, c) in p.terms() {
        assert_eq!(m.exponent(Var::T4), 0);
        assert_eq!(m.exponent(Var::X), 0);
        let mut term = PuiseuxSeries::constant(c.clone(), order);
        for (i, var) in [Var::T1, Var::T2, Var::T3].into_iter().enumerate() {
            for _ in 0..m.exponent(var) {
                term = term.mul(&t[i]);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn recursion_initial_values() {
        let [t1, _, _] = solve_ramanujan(2);
        // 12 t1 = E2 = 1 - 24 q - 72 q^2 ...
        assert_eq!(t1.coeff_q(0) * rat_int(12), rat_int(1));
        assert_eq!(t1.coeff_q(1) * rat_int(12), rat_int(-24));
    }

    #[test]
    fn recursion_matches_divisor_sums() {
        let n = 40;
        let [e2, e4, e6] = eisenstein_by_recursion(n);
        assert!(e2.eq_to_common_order(&eisenstein_divisor(1, n)));
        assert!(e4.eq_to_common_order(&eisenstein_divisor(2, n)));
        assert!(e6.eq_to_common_order(&eisenstein_divisor(3, n)));
    }

    #[test]
    fn divisor_series_values() {
        let e2 = eisenstein_divisor(1, 4);
        for (n, v) in [(0, 1), (1, -24), (2, -72), (3, -96), (4, -168)] {
            assert_eq!(e2.coeff_q(n), rat_int(v));
        }
        let e4 = eisenstein_divisor(2, 2);
        assert_eq!(e4.coeff_q(1), rat_int(240));
        assert_eq!(e4.coeff_q(2), rat_int(2160)); // 240 sigma_3(2) = 240 * 9
        let e6 = eisenstein_divisor(3, 2);
        assert_eq!(e6.coeff_q(2), rat_int(-16632)); // -504 sigma_5(2) = -504 * 33
    }

    #[test]
    fn ode_residual_vanishes() {
        let t = solve_ramanujan(30);
        for r in ramanujan_residuals(&t) {
            assert!(r.is_zero(), "nonzero residual {r}");
        }
    }

    #[test]
    fn derivation_on_generators() {
        let t1 = QuasiModularPoly::new(parse_poly("t1").unwrap());
        let d = ring_derivation(&t1);
        assert_eq!(d.p, parse_poly("t1^2 - t2/12").unwrap());
        assert_eq!(d.weight, 4);
        // Delta -> 12 t1 Delta
        let delta = QuasiModularPoly::new(parse_poly("27*t3^2 - t2^3").unwrap());
        let dd = ring_derivation(&delta);
        assert_eq!(dd.p, parse_poly("12*t1*(27*t3^2 - t2^3)").unwrap());
        assert_eq!(dd.weight, 14);
        // constants die
        let c = QuasiModularPoly::new(parse_poly("7").unwrap());
        assert!(ring_derivation(&c).p.is_zero());
    }

    #[test]
    fn derivation_leibniz_and_weight() {
        let f = QuasiModularPoly::new(parse_poly("t1*t2").unwrap());
        let g = QuasiModularPoly::new(parse_poly("t3").unwrap());
        let fg = QuasiModularPoly::new(f.p.mul(&g.p));
        let lhs = ring_derivation(&fg).p;
        let rhs = ring_derivation(&f).p.mul(&g.p).add(&f.p.mul(&ring_derivation(&g).p));
        assert_eq!(lhs, rhs);
        assert_eq!(ring_derivation(&fg).weight, fg.weight + 2);
    }

    #[test]
    fn group_action_examples() {
        let t = [rat_int(3), rat_int(16), rat_int(5)];
        // identity
        let same = group_action(&t, &rat_int(1), &rat_int(0)).unwrap();
        assert_eq!(same, t);
        // t2 component with k = 2, k' = 0: 16 * 2^-4 = 1
        let acted = group_action(&t, &rat_int(2), &rat_int(0)).unwrap();
        assert_eq!(acted[1], rat_int(1));
        assert_eq!(
            group_action(&t, &rat_int(0), &rat_int(1)),
            Err(ActionError::ZeroScale)
        );
    }

    #[test]
    fn action_property_under_group_law() {
        let t = [rat(1, 2), rat_int(-3), rat(7, 5)];
        let g1 = (rat_int(2), rat(1, 3));
        let g2 = (rat(-1, 2), rat_int(4));
        let lhs = group_action(&group_action(&t, &g1.0, &g1.1).unwrap(), &g2.0, &g2.1).unwrap();
        let g12 = group_law(&g1, &g2).unwrap();
        let rhs = group_action(&t, &g12.0, &g12.1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_equivariance_of_delta() {
        // Delta(t.g) = k^-12 Delta(t)
        let delta = parse_poly("27*t3^2 - t2^3").unwrap();
        let t = [rat(2, 3), rat_int(5), rat(-7, 2)];
        for (k, kp) in [(rat_int(2), rat_int(0)), (rat(3, 4), rat(1, 5))] {
            let acted = group_action(&t, &k, &kp).unwrap();
            let lhs = eval_at(&delta, &acted);
            let k12 = num_traits::pow(k.clone(), 12);
            let rhs = eval_at(&delta, &t) / k12;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quasi_modular_expansion_coefficients() {
        // f(t.g) = k^-m sum_i binom(n,i) k'^i k^i f_i(t) for sample forms;
        // checked at random rational group elements.
        struct Case {
            f: &'static str,
            weight: i64,
            parts: Vec<&'static str>, // f_0, f_1, ..., f_n
        }
        let cases = [
            Case { f: "t1", weight: 2, parts: vec!["t1", "1"] },
            Case { f: "t1^2", weight: 4, parts: vec!["t1^2", "t1", "1"] },
            Case { f: "27*t3^2 - t2^3", weight: 12, parts: vec!["27*t3^2 - t2^3"] },
            Case { f: "t1*t2", weight: 6, parts: vec!["t1*t2", "t2"] },
        ];
        let t = [rat(1, 3), rat_int(2), rat(-5, 4)];
        for case in &cases {
            let f = parse_poly(case.f).unwrap();
            for (k, kp) in [(rat_int(2), rat(3, 2)), (rat(-1, 3), rat(2, 7))] {
                let acted = group_action(&t, &k, &kp).unwrap();
                let lhs = eval_at(&f, &acted);
                let n = case.parts.len() - 1;
                let mut sum = rat_int(0);
                for (i, part) in case.parts.iter().enumerate() {
                    let binom = rat_int(crate::curves::binomial(n as i64, i as i64));
                    let fi = eval_at(&parse_poly(part).unwrap(), &t);
                    sum = sum
                        + binom
                            * num_traits::pow(kp.clone(), i)
                            * num_traits::pow(k.clone(), i)
                            * fi;
                }
                let k_m = num_traits::pow(k.clone(), case.weight as usize);
                assert_eq!(lhs, sum / k_m, "form {} at k={k}", case.f);
            }
        }
    }
}
