//! Identity checks behind a common trait, registered by name and selected at
//! runtime (`verify <name>` in the CLI, or `verify all` for the whole
//! registry). Every check reports the first mismatching coefficient on
//! failure rather than a bare boolean.

use crate::field::{rat_to_string, Rat};
use crate::series::PuiseuxSeries;
use std::fmt;

#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// series truncation order
    pub order: i64,
    /// working precision for numeric checks
    pub precision_bits: u32,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { order: 30, precision_bits: 256 }
    }
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    /// where the first disagreement happens (an exponent or a description)
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckReport { name, passed: true, detail, mismatch: None }
    }

    fn fail(name: &'static str, detail: String, mismatch: Mismatch) -> Self {
        CheckReport { name, passed: false, detail, mismatch: Some(mismatch) }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "ok   {}: {}", self.name, self.detail)
        } else {
            write!(f, "FAIL {}: {}", self.name, self.detail)?;
            if let Some(m) = &self.mismatch {
                write!(f, " (first mismatch at {}: {} vs {})", m.location, m.lhs, m.rhs)?;
            }
            Ok(())
        }
    }
}

/// One registered identity check.
pub trait Check {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, cfg: &CheckConfig) -> CheckReport;
}

/// All registered checks, in the order they are reported by `verify all`.
pub fn registry() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(RamanujanCheck),
        Box::new(HalphenCheck),
        Box::new(ThetaEisensteinCheck),
        Box::new(DeltaProductCheck),
        Box::new(PicardFuchsCheck),
        Box::new(OhyamaCheck),
        Box::new(DerhamCheck),
        Box::new(GaussManinCheck),
        Box::new(Gamma2Check),
        Box::new(WeierstrassCheck),
    ]
}

pub fn find(name: &str) -> Option<Box<dyn Check>> {
    registry().into_iter().find(|c| c.name() == name)
}

fn series_mismatch(
    context: &str,
    lhs: &PuiseuxSeries<Rat>,
    rhs: &PuiseuxSeries<Rat>,
) -> Option<Mismatch> {
    lhs.first_mismatch(rhs).map(|(e, a, b)| Mismatch {
        location: format!("{context}, exponent {e}"),
        lhs: rat_to_string(&a),
        rhs: rat_to_string(&b),
    })
}

struct RamanujanCheck;

impl Check for RamanujanCheck {
    fn name(&self) -> &'static str {
        "ramanujan"
    }

    fn description(&self) -> &'static str {
        "E2, E4, E6 agree between the ODE recursion, divisor sums and the period map"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let n = cfg.order;
        let by_recursion = crate::eisenstein::eisenstein_by_recursion(n as usize);
        let by_divisors: Vec<_> = (1..=3)
            .map(|k| crate::eisenstein::eisenstein_divisor(k, n as usize))
            .collect();
        let by_periods = crate::periods::eisenstein_via_periods(n);
        for (k, name) in ["E2", "E4", "E6"].iter().enumerate() {
            if let Some(m) =
                series_mismatch(&format!("{name} recursion vs divisor sums"), &by_recursion[k], &by_divisors[k])
            {
                return CheckReport::fail(self.name(), format!("order {n}"), m);
            }
            if let Some(m) =
                series_mismatch(&format!("{name} divisor sums vs period map"), &by_divisors[k], &by_periods[k])
            {
                return CheckReport::fail(self.name(), format!("order {n}"), m);
            }
        }
        CheckReport::pass(self.name(), format!("three-way agreement to order {n}"))
    }
}

struct HalphenCheck;

impl Check for HalphenCheck {
    fn name(&self) -> &'static str {
        "halphen"
    }

    fn description(&self) -> &'static str {
        "theta log-derivatives solve the Darboux-Halphen system"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let u = crate::theta::halphen_solution(cfg.order);
        for (i, r) in crate::theta::halphen_residuals(&u).into_iter().enumerate() {
            if !r.is_zero() {
                let zero = PuiseuxSeries::zero(r.lattice(), r.truncation_num());
                let m = series_mismatch(&format!("equation {}", i + 1), &r, &zero).unwrap();
                return CheckReport::fail(self.name(), format!("order {}", cfg.order), m);
            }
        }
        CheckReport::pass(
            self.name(),
            format!("zero residuals for all three equations to order {}", cfg.order),
        )
    }
}

struct ThetaEisensteinCheck;

impl Check for ThetaEisensteinCheck {
    fn name(&self) -> &'static str {
        "theta-eisenstein"
    }

    fn description(&self) -> &'static str {
        "the three theta-product identities for E2, E4, E6"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let order = cfg.order.max(4);
        let report = crate::theta::theta_eisenstein_identities(order);
        for (label, m) in [
            ("E2 identity", &report.identity_e2),
            ("E4 identity", &report.identity_e4),
            ("E6 identity", &report.identity_e6),
        ] {
            if let Some((e, a, b)) = m {
                return CheckReport::fail(
                    self.name(),
                    format!("order {order}"),
                    Mismatch {
                        location: format!("{label}, exponent {e}"),
                        lhs: rat_to_string(a),
                        rhs: rat_to_string(b),
                    },
                );
            }
        }
        CheckReport::pass(self.name(), format!("all three identities to order {order}"))
    }
}

struct DeltaProductCheck;

impl Check for DeltaProductCheck {
    fn name(&self) -> &'static str {
        "delta-product"
    }

    fn description(&self) -> &'static str {
        "(E4^3 - E6^2)/1728 equals the eta product q prod (1-q^n)^24"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        match crate::theta::delta_product_check(cfg.order) {
            None => CheckReport::pass(self.name(), format!("exact match to order {}", cfg.order)),
            Some((e, a, b)) => CheckReport::fail(
                self.name(),
                format!("order {}", cfg.order),
                Mismatch {
                    location: format!("exponent {e}"),
                    lhs: rat_to_string(&a),
                    rhs: rat_to_string(&b),
                },
            ),
        }
    }
}

struct PicardFuchsCheck;

impl Check for PicardFuchsCheck {
    fn name(&self) -> &'static str {
        "picard-fuchs"
    }

    fn description(&self) -> &'static str {
        "both period ODEs annihilate their hypergeometric solutions"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        use crate::periods::{picard_fuchs_residual, PicardFuchsKind};
        let order = cfg.order.max(2);
        for kind in [PicardFuchsKind::FirstKind, PicardFuchsKind::SecondKind] {
            let r = picard_fuchs_residual(kind, order);
            if !r.is_zero() {
                let zero = PuiseuxSeries::zero(1, r.truncation_num());
                let m = series_mismatch(&format!("{kind:?}"), &r, &zero).unwrap();
                return CheckReport::fail(self.name(), format!("order {order}"), m);
            }
        }
        // f_1 = 13/18 is pinned alongside the residuals
        let f = crate::periods::f_recursion(1);
        if f[1] != crate::field::rat(13, 18) {
            return CheckReport::fail(
                self.name(),
                "f recursion".into(),
                Mismatch {
                    location: "f_1".into(),
                    lhs: rat_to_string(&f[1]),
                    rhs: "13/18".into(),
                },
            );
        }
        CheckReport::pass(self.name(), format!("zero residuals to order {order}, f_1 = 13/18"))
    }
}

struct OhyamaCheck;

impl Check for OhyamaCheck {
    fn name(&self) -> &'static str {
        "ohyama"
    }

    fn description(&self) -> &'static str {
        "the eta-quotient solution of the Gamma(3) system (optional stretch)"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let order = cfg.order.min(24); // lattice-3 series get wide quickly
        let report = crate::theta::ohyama_eta_series(order);
        for (i, e) in report.equations.iter().enumerate() {
            if let Some((ex, a, b)) = e {
                return CheckReport::fail(
                    self.name(),
                    format!("order {order}"),
                    Mismatch {
                        location: format!("equation {}, exponent {ex}", i + 1),
                        lhs: format!("{a}"),
                        rhs: format!("{b}"),
                    },
                );
            }
        }
        if let Some((ex, a, b)) = &report.quadric {
            return CheckReport::fail(
                self.name(),
                format!("order {order}"),
                Mismatch {
                    location: format!("F(W,X,Y,Z), exponent {ex}"),
                    lhs: format!("{a}"),
                    rhs: format!("{b}"),
                },
            );
        }
        CheckReport::pass(
            self.name(),
            format!("four equations and F = 0 to order {order}"),
        )
    }
}

struct DerhamCheck;

impl Check for DerhamCheck {
    fn name(&self) -> &'static str {
        "derham"
    }

    fn description(&self) -> &'static str {
        "the five reduction identities x^2 dx/y ... x^5 dx/y"
    }

    fn run(&self, _cfg: &CheckConfig) -> CheckReport {
        use crate::poly::{parse_poly, ParamPoly, Var};
        let fam = crate::derham::CurveFamily::<Rat>::new();
        let expected = [
            ("x^2", "2*t1", "-t1^2 + t2/12"),
            ("x^3", "3*t1^2 + 3*t2/20", "-2*t1^3 + t1*t2/10 + t3/10"),
            (
                "x^4",
                "4*t1^3 + 3*t1*t2/5 + t3/7",
                "-3*t1^4 - t1^2*t2/10 + 9*t1*t3/35 + 5*t2^2/336",
            ),
            (
                "x^5",
                "5*t1^4 + 3*t1^2*t2/2 + 5*t1*t3/7 + 7*t2^2/240",
                "-4*t1^5 - 2*t1^3*t2/3 + 2*t1^2*t3/7 + 19*t1*t2^2/420 + t2*t3/30",
            ),
        ];
        for (n, (input, beta_s, alpha_s)) in expected.into_iter().enumerate() {
            let (alpha, beta) = fam.reduce_poly(&ParamPoly::var(Var::X).pow(n as u32 + 2));
            let beta_ref = parse_poly(beta_s).unwrap();
            let alpha_ref = parse_poly(alpha_s).unwrap();
            if beta != beta_ref || alpha != alpha_ref {
                return CheckReport::fail(
                    self.name(),
                    "reduction exercise".into(),
                    Mismatch {
                        location: input.to_string(),
                        lhs: format!("({alpha}, {beta})"),
                        rhs: format!("({alpha_ref}, {beta_ref})"),
                    },
                );
            }
        }
        CheckReport::pass(self.name(), "all five identities hold exactly".into())
    }
}

struct GaussManinCheck;

impl Check for GaussManinCheck {
    fn name(&self) -> &'static str {
        "gauss-manin"
    }

    fn description(&self) -> &'static str {
        "connection matrices and derived vector fields match the closed forms"
    }

    fn run(&self, _cfg: &CheckConfig) -> CheckReport {
        use crate::gaussmanin as gm;
        let fail = |what: &str| {
            CheckReport::fail(
                "gauss-manin",
                what.into(),
                Mismatch {
                    location: what.into(),
                    lhs: "computed".into(),
                    rhs: "closed form".into(),
                },
            )
        };
        if !gm::gm_matrix().eq(&gm::gm_matrix_closed_form()) {
            return fail("Gauss-Manin matrix");
        }
        if !gm::halphen_matrix().eq(&gm::halphen_matrix_closed_form()) {
            return fail("pulled-back matrix");
        }
        match gm::ramanujan_field() {
            Ok(r) if r == gm::ramanujan_field_closed_form() => {}
            _ => return fail("Ramanujan vector field"),
        }
        match gm::halphen_field() {
            Ok(h) if h == gm::halphen_field_closed_form() => {}
            _ => return fail("Halphen vector field"),
        }
        CheckReport::pass(
            self.name(),
            "matrix, pullback and both vector fields match".into(),
        )
    }
}

struct Gamma2Check;

impl Check for Gamma2Check {
    fn name(&self) -> &'static str {
        "gamma2"
    }

    fn description(&self) -> &'static str {
        "each s_i is a root of the inner cubic of the Gamma(2) minimal polynomial"
    }

    fn run(&self, _cfg: &CheckConfig) -> CheckReport {
        if crate::gaussmanin::gamma2_minimal_poly_check() {
            CheckReport::pass(self.name(), "the substituted cubic vanishes for s1, s2, s3".into())
        } else {
            CheckReport::fail(
                self.name(),
                "minimal polynomial".into(),
                Mismatch {
                    location: "inner cubic".into(),
                    lhs: "nonzero".into(),
                    rhs: "0".into(),
                },
            )
        }
    }
}

struct WeierstrassCheck;

impl Check for WeierstrassCheck {
    fn name(&self) -> &'static str {
        "weierstrass"
    }

    fn description(&self) -> &'static str {
        "the z-expansion solves the curve equation and matches the recursion"
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        use crate::weierstrass as w;
        let k = (cfg.order.clamp(3, 16)) as usize;
        let (x, y) = w::weierstrass_expansion(k);
        let res = w::curve_residual(&x, &y, 2 * k as i64 - 4);
        for e in -6..=(2 * k as i64 - 4) {
            if !res.coeff(e).is_zero() {
                return CheckReport::fail(
                    self.name(),
                    format!("K = {k}"),
                    Mismatch {
                        location: format!("z^{e}"),
                        lhs: format!("{}", res.coeff(e)),
                        rhs: "0".into(),
                    },
                );
            }
        }
        let c = w::coefficients_by_recursion(k + 1);
        for m in 2..=k {
            if x.coeff(2 * m as i64 - 2) != c[m] {
                return CheckReport::fail(
                    self.name(),
                    format!("K = {k}"),
                    Mismatch {
                        location: format!("g_{}", 2 * m),
                        lhs: format!("{}", x.coeff(2 * m as i64 - 2)),
                        rhs: format!("{}", c[m]),
                    },
                );
            }
        }
        CheckReport::pass(self.name(), format!("residual zero and recursion match, K = {k}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_findable() {
        let names: Vec<_> = registry().iter().map(|c| c.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        for n in names {
            assert!(find(n).is_some());
        }
        assert!(find("no-such-check").is_none());
    }

    #[test]
    fn fast_checks_pass() {
        let cfg = CheckConfig { order: 10, precision_bits: 128 };
        for name in ["derham", "gamma2", "weierstrass", "delta-product", "picard-fuchs"] {
            let report = find(name).unwrap().run(&cfg);
            assert!(report.passed, "{report}");
        }
    }
}
