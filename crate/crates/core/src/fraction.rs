//! Rational functions with catalog denominators, differential 1-forms on the
//! parameter space, and polynomial vector fields.

use crate::field::{Field, Rat};
use crate::poly::{ParamPoly, Var};
use std::collections::BTreeMap;
use std::fmt;

/// The fixed catalog of irreducible denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CatalogFactor {
    /// Delta = 27 t3^2 - t2^3
    Delta,
    /// t1 - t2
    T1T2,
    /// t2 - t3
    T2T3,
    /// t1 - t3
    T1T3,
}

pub const CATALOG: [CatalogFactor; 4] = [
    CatalogFactor::Delta,
    CatalogFactor::T1T2,
    CatalogFactor::T2T3,
    CatalogFactor::T1T3,
];

impl CatalogFactor {
    pub fn poly<F: Field>(self) -> ParamPoly<F> {
        let t = ParamPoly::<F>::var;
        match self {
            CatalogFactor::Delta => t(Var::T3)
                .pow(2)
                .scale(&F::from_i64(27))
                .sub(&t(Var::T2).pow(3)),
            CatalogFactor::T1T2 => t(Var::T1).sub(&t(Var::T2)),
            CatalogFactor::T2T3 => t(Var::T2).sub(&t(Var::T3)),
            CatalogFactor::T1T3 => t(Var::T1).sub(&t(Var::T3)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CatalogFactor::Delta => "Delta",
            CatalogFactor::T1T2 => "(t1-t2)",
            CatalogFactor::T2T3 => "(t2-t3)",
            CatalogFactor::T1T3 => "(t1-t3)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FractionError {
    #[error("denominator does not factor over the catalog: {0}")]
    OutsideCatalog(String),
    #[error("division would introduce a non-catalog denominator")]
    NonCatalogDivision,
}

/// numerator / product of catalog factors. Equality is decided by clearing
/// denominators (an equivalence relation consistent with the arithmetic);
/// the normal form only cancels exact catalog divisors of the numerator
/// (no general GCD).
#[derive(Debug, Clone)]
pub struct ParamFraction<F: Field> {
    num: ParamPoly<F>,
    den: BTreeMap<CatalogFactor, u32>,
}

impl<F: Field> ParamFraction<F> {
    pub fn from_poly(num: ParamPoly<F>) -> Self {
        ParamFraction { num, den: BTreeMap::new() }
    }

    pub fn new(num: ParamPoly<F>, den: BTreeMap<CatalogFactor, u32>) -> Self {
        ParamFraction { num, den }.normalized()
    }

    pub fn zero() -> Self {
        Self::from_poly(ParamPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }

    pub fn over_factor(num: ParamPoly<F>, factor: CatalogFactor, power: u32) -> Self {
        let mut den = BTreeMap::new();
        den.insert(factor, power);
        Self::new(num, den)
    }

    pub fn numerator(&self) -> &ParamPoly<F> {
        &self.num
    }

    pub fn denominator_factors(&self) -> &BTreeMap<CatalogFactor, u32> {
        &self.den
    }

    pub fn denominator_poly(&self) -> ParamPoly<F> {
        let mut p = ParamPoly::one();
        for (&f, &e) in &self.den {
            p = p.mul(&f.poly().pow(e));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancel catalog factors that exactly divide the numerator.
    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let factors: Vec<CatalogFactor> = self.den.keys().copied().collect();
        for f in factors {
            let fp: ParamPoly<F> = f.poly();
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                match self.num.exact_div(&fp) {
                    Some(q) => {
                        self.num = q;
                        let e = self.den.get_mut(&f).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// The fraction as a plain polynomial when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&ParamPoly<F>> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        ParamFraction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, k: &F) -> Self {
        ParamFraction { num: self.num.scale(k), den: self.den.clone() }.normalized()
    }

    pub fn scale_rat(&self, k: &Rat) -> Self {
        self.scale(&F::from_rat(k))
    }

    pub fn mul_poly(&self, p: &ParamPoly<F>) -> Self {
        ParamFraction { num: self.num.mul(p), den: self.den.clone() }.normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (&f, &e) in &other.den {
            *den.entry(f).or_insert(0) += e;
        }
        ParamFraction { num: self.num.mul(&other.num), den }.normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        // common denominator: per-factor maximum power
        let mut den = self.den.clone();
        for (&f, &e) in &other.den {
            let slot = den.entry(f).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |side: &Self| -> ParamPoly<F> {
            let mut p = side.num.clone();
            for (&f, &e) in &den {
                let have = side.den.get(&f).copied().unwrap_or(0);
                if e > have {
                    p = p.mul(&f.poly().pow(e - have));
                }
            }
            p
        };
        ParamFraction { num: lift(self).add(&lift(other)), den }.normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Divide by a catalog factor (multiply the denominator).
    pub fn div_factor(&self, factor: CatalogFactor, power: u32) -> Self {
        let mut den = self.den.clone();
        *den.entry(factor).or_insert(0) += power;
        ParamFraction { num: self.num.clone(), den }.normalized()
    }


    /// Substitute the parameter variables; every substituted catalog factor
    /// must itself factor as constant * catalog monomials.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<Var, ParamPoly<F>>,
    ) -> Result<Self, FractionError> {
        let mut num = self.num.substitute(bindings);
        let mut den: BTreeMap<CatalogFactor, u32> = BTreeMap::new();
        for (&f, &e) in &self.den {
            let image = f.poly().substitute(bindings);
            let (constant, factors) = factor_into_catalog(&image)?;
            let cinv = constant
                .inv()
                .map_err(|_| FractionError::OutsideCatalog("zero constant".into()))?;
            for _ in 0..e {
                num = num.scale(&cinv);
            }
            for (cf, ce) in factors {
                *den.entry(cf).or_insert(0) += ce * e;
            }
        }
        Ok(ParamFraction { num, den }.normalized())
    }
}

/// Write `p` as constant * product of catalog factors.
pub fn factor_into_catalog<F: Field>(
    p: &ParamPoly<F>,
) -> Result<(F, BTreeMap<CatalogFactor, u32>), FractionError> {
    let mut rest = p.clone();
    let mut factors = BTreeMap::new();
    if rest.is_zero() {
        return Err(FractionError::OutsideCatalog("zero polynomial".into()));
    }
    loop {
        let mut progressed = false;
        for f in CATALOG {
            while let Some(q) = rest.exact_div(&f.poly()) {
                rest = q;
                *factors.entry(f).or_insert(0) += 1;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    if !rest.is_constant() {
        return Err(FractionError::OutsideCatalog(format!("{rest}")));
    }
    Ok((rest.constant_part(), factors))
}

impl<F: Field> PartialEq for ParamFraction<F> {
    /// Cross-multiplication equality.
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.denominator_poly()) == other.num.mul(&self.denominator_poly())
    }
}

impl<F: Field> fmt::Display for ParamFraction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den = self
            .den
            .iter()
            .map(|(&fac, &e)| {
                if e == 1 {
                    fac.name().to_string()
                } else {
                    format!("{}^{}", fac.name(), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*");
        write!(f, "({}) / {}", self.num, den)
    }
}

/// Differential 1-form c1 dt1 + c2 dt2 + c3 dt3 with fraction coefficients;
/// equality is componentwise cross-multiplication.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamOneForm<F: Field> {
    pub coeffs: [ParamFraction<F>; 3],
}

impl<F: Field> ParamOneForm<F> {
    pub fn zero() -> Self {
        ParamOneForm {
            coeffs: [ParamFraction::zero(), ParamFraction::zero(), ParamFraction::zero()],
        }
    }

    pub fn dt(i: usize) -> Self {
        let mut form = Self::zero();
        form.coeffs[i] = ParamFraction::one();
        form
    }

    pub fn from_coeffs(c1: ParamFraction<F>, c2: ParamFraction<F>, c3: ParamFraction<F>) -> Self {
        ParamOneForm { coeffs: [c1, c2, c3] }
    }

    pub fn add(&self, other: &Self) -> Self {
        ParamOneForm {
            coeffs: [
                self.coeffs[0].add(&other.coeffs[0]),
                self.coeffs[1].add(&other.coeffs[1]),
                self.coeffs[2].add(&other.coeffs[2]),
            ],
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ParamOneForm {
            coeffs: [
                self.coeffs[0].sub(&other.coeffs[0]),
                self.coeffs[1].sub(&other.coeffs[1]),
                self.coeffs[2].sub(&other.coeffs[2]),
            ],
        }
    }

    pub fn neg(&self) -> Self {
        ParamOneForm {
            coeffs: [self.coeffs[0].neg(), self.coeffs[1].neg(), self.coeffs[2].neg()],
        }
    }

    pub fn scale_fraction(&self, k: &ParamFraction<F>) -> Self {
        ParamOneForm {
            coeffs: [
                self.coeffs[0].mul(k),
                self.coeffs[1].mul(k),
                self.coeffs[2].mul(k),
            ],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Pairing <dt_i, d/dt_j> = delta_ij extended linearly.
    pub fn pair(&self, field: &VectorFieldT<F>) -> ParamFraction<F> {
        let mut acc = ParamFraction::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_poly(field.component(i)));
            }
        }
        acc
    }

    /// Pull back along t_i -> bindings(t_i): substitutes the coefficients and
    /// applies the chain rule dt_i -> sum_j (d binding_i / d t_j) dt_j.
    pub fn pullback(
        &self,
        bindings: &BTreeMap<Var, ParamPoly<F>>,
    ) -> Result<Self, FractionError> {
        let mut out = Self::zero();
        let tvars = [Var::T1, Var::T2, Var::T3];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c_sub = c.substitute(bindings)?;
            let image_i = bindings
                .get(&tvars[i])
                .cloned()
                .unwrap_or_else(|| ParamPoly::var(tvars[i]));
            for (j, tj) in tvars.iter().enumerate() {
                let dj = image_i.partial(*tj);
                if !dj.is_zero() {
                    out.coeffs[j] = out.coeffs[j].add(&c_sub.mul_poly(&dj));
                }
            }
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Display for ParamOneForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["dt1", "dt2", "dt3"];
        let mut first = true;
        for (c, n) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "[{c}] {n}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exterior derivative of a catalog fraction.
pub fn total_differential<F: Field>(f: &ParamFraction<F>) -> ParamOneForm<F> {
    let tvars = [Var::T1, Var::T2, Var::T3];
    let mut coeffs: Vec<ParamFraction<F>> = Vec::with_capacity(3);
    for tj in tvars {
        // d(num/den) = (d num)/den - num * sum_i e_i (d f_i) / (f_i den)
        let mut c = ParamFraction {
            num: f.num.partial(tj),
            den: f.den.clone(),
        }
        .normalized();
        for (&fac, &e) in &f.den {
            let dfac = fac.poly::<F>().partial(tj);
            if dfac.is_zero() {
                continue;
            }
            let mut den = f.den.clone();
            *den.entry(fac).or_insert(0) += 1;
            let term = ParamFraction {
                num: f.num.mul(&dfac).scale(&F::from_i64(e as i64)),
                den,
            }
            .normalized();
            c = c.sub(&term);
        }
        coeffs.push(c);
    }
    ParamOneForm {
        coeffs: [coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()],
    }
}

/// Polynomial vector field sum R_i d/dt_i (three or four components).
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldT<F: Field> {
    comps: Vec<ParamPoly<F>>,
}

impl<F: Field> VectorFieldT<F> {
    pub fn new(comps: Vec<ParamPoly<F>>) -> Self {
        assert!(comps.len() == 3 || comps.len() == 4);
        VectorFieldT { comps }
    }

    pub fn component(&self, i: usize) -> &ParamPoly<F> {
        &self.comps[i]
    }

    pub fn components(&self) -> &[ParamPoly<F>] {
        &self.comps
    }

    /// Apply the field as a derivation to a polynomial: sum_i (dp/dt_i) R_i.
    pub fn apply(&self, p: &ParamPoly<F>) -> ParamPoly<F> {
        let tvars = [Var::T1, Var::T2, Var::T3, Var::T4];
        let mut out = ParamPoly::zero();
        for (i, r) in self.comps.iter().enumerate() {
            out = out.add(&p.partial(tvars[i]).mul(r));
        }
        out
    }
}

impl<F: Field> fmt::Display for VectorFieldT<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["d/dt1", "d/dt2", "d/dt3", "d/dt4"];
        let parts: Vec<String> = self
            .comps
            .iter()
            .zip(names)
            .map(|(p, n)| format!("({p}) {n}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_int;
    use crate::poly::parse_poly;

    fn delta() -> ParamPoly<Rat> {
        CatalogFactor::Delta.poly()
    }

    #[test]
    fn differential_of_delta() {
        let d = total_differential(&ParamFraction::from_poly(delta()));
        assert!(d.coeffs[0].is_zero());
        assert!(d.coeffs[1].eq(&ParamFraction::from_poly(parse_poly("-3*t2^2").unwrap())));
        assert!(d.coeffs[2].eq(&ParamFraction::from_poly(parse_poly("54*t3").unwrap())));
        // d(constant) = 0
        let dc = total_differential(&ParamFraction::<Rat>::one());
        assert!(dc.is_zero());
    }

    #[test]
    fn differential_of_inverse_delta() {
        // d(1/Delta) = -(1/Delta^2) dDelta
        let inv = ParamFraction::<Rat>::over_factor(ParamPoly::one(), CatalogFactor::Delta, 1);
        let d = total_differential(&inv);
        let expect2 = ParamFraction::over_factor(
            parse_poly("3*t2^2").unwrap(),
            CatalogFactor::Delta,
            2,
        );
        let expect3 = ParamFraction::over_factor(
            parse_poly("-54*t3").unwrap(),
            CatalogFactor::Delta,
            2,
        );
        assert!(d.coeffs[1].eq(&expect2));
        assert!(d.coeffs[2].eq(&expect3));
    }

    #[test]
    fn leibniz_on_fractions() {
        let f = ParamFraction::over_factor(parse_poly("t1*t3 + t2").unwrap(), CatalogFactor::Delta, 1);
        let g = ParamFraction::over_factor(parse_poly("t2 - 5*t1^2").unwrap(), CatalogFactor::T1T2, 2);
        let lhs = total_differential(&f.mul(&g));
        let rhs = total_differential(&f)
            .scale_fraction(&g)
            .add(&total_differential(&g).scale_fraction(&f));
        assert!(lhs.eq(&rhs));
    }

    #[test]
    fn cross_multiplication_equality() {
        // t2/Delta == (t2 (t1-t2)) / (Delta (t1-t2))
        let a = ParamFraction::over_factor(parse_poly("t2").unwrap(), CatalogFactor::Delta, 1);
        let mut den = BTreeMap::new();
        den.insert(CatalogFactor::Delta, 1);
        den.insert(CatalogFactor::T1T2, 1);
        let b = ParamFraction {
            num: parse_poly("t2*t1 - t2^2").unwrap(),
            den,
        };
        assert!(a.eq(&b));
        // and normalization cancels the common factor
        assert!(b.clone().normalized().denominator_factors().len() == 1);
    }

    #[test]
    fn catalog_factorization() {
        // -16 (t1-t2)^2 (t1-t3)^2 (t2-t3)^2 factors over the catalog
        let p = parse_poly("(t1-t2)^2 * (t1-t3)^2 * (t2-t3)^2 * 16").unwrap().neg();
        let (c, fs) = factor_into_catalog(&p).unwrap();
        assert_eq!(c, rat_int(-16));
        assert_eq!(fs.get(&CatalogFactor::T1T2), Some(&2));
        assert_eq!(fs.get(&CatalogFactor::T2T3), Some(&2));
        assert_eq!(fs.get(&CatalogFactor::T1T3), Some(&2));
        assert!(factor_into_catalog(&parse_poly("t1 + t2").unwrap()).is_err());
    }

    #[test]
    fn pairing_with_vector_field() {
        // <dt1, R> for a sample field picks the first component
        let field = VectorFieldT::new(vec![
            parse_poly("t1^2 - t2/12").unwrap(),
            parse_poly("4*t1*t2 - 6*t3").unwrap(),
            parse_poly("6*t1*t3 - t2^2/3").unwrap(),
        ]);
        let dt1 = ParamOneForm::<Rat>::dt(0);
        assert!(dt1
            .pair(&field)
            .eq(&ParamFraction::from_poly(parse_poly("t1^2 - t2/12").unwrap())));
        let zero = ParamOneForm::<Rat>::zero();
        assert!(zero.pair(&field).is_zero());
    }

    use crate::field::Rat;
}
