//! Multivariate polynomials and rational functions in the parameter
//! variables t1..t4 (plus the curve variable x) over an exact field.
//!
//! Denominators of rational functions are restricted to a fixed catalog of
//! irreducibles known from the geometry: the discriminant Delta = 27 t3^2 -
//! t2^3 and the pairwise differences (t1-t2), (t2-t3), (t1-t3). Equality of
//! fractions is decided by clearing denominators, never by GCD extraction;
//! the only polynomial division performed is exact division by catalog
//! factors.

use crate::field::{Field, Rat};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T1 = 0,
    T2 = 1,
    T3 = 2,
    T4 = 3,
    X = 4,
}

pub const VARS: [Var; 5] = [Var::T1, Var::T2, Var::T3, Var::T4, Var::X];

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T1 => "t1",
            Var::T2 => "t2",
            Var::T3 => "t3",
            Var::T4 => "t4",
            Var::X => "x",
        }
    }

    /// Quasi-modular weight: deg(t_i) = 2i, deg(x) = 2.
    pub fn weight(self) -> u64 {
        match self {
            Var::T1 => 2,
            Var::T2 => 4,
            Var::T3 => 6,
            Var::T4 => 8,
            Var::X => 2,
        }
    }
}

/// Exponent vector in the order t1, t2, t3, t4, x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v as usize] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .zip(VARS)
            .map(|(&e, v)| e as u64 * v.weight())
            .sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = [0; 5];
        for i in 0..5 {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Self) -> Self {
        let mut e = [0; 5];
        for i in 0..5 {
            e[i] = self.0[i] - other.0[i];
        }
        Monomial(e)
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v as usize]
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents with
    /// t1 < t2 < t3 < t4 < x.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with canonical graded-lex term order and no stored
/// zero coefficients, so equal polynomials have identical representations.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPoly<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> ParamPoly<F> {
    pub fn zero() -> Self {
        ParamPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        ParamPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn constant_part(&self) -> F {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    fn insert_add(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul(k))).collect(),
        }
    }

    pub fn scale_rat(&self, k: &Rat) -> Self {
        self.scale(&F::from_rat(k))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut em = *m;
            em.0[v as usize] -= 1;
            out.insert_add(em, c.mul(&F::from_i64(e as i64)));
        }
        out
    }

    /// Ring homomorphism: replace each bound variable by a polynomial.
    pub fn substitute(&self, bindings: &BTreeMap<Var, ParamPoly<F>>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for v in VARS {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                match bindings.get(&v) {
                    Some(p) => term = term.mul(&p.pow(e as u32)),
                    None => term = term.mul(&Self::var(v).pow(e as u32)),
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, values: &BTreeMap<Var, F>) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in VARS {
                let e = m.exponent(v);
                for _ in 0..e {
                    t = t.mul(
                        values
                            .get(&v)
                            .unwrap_or_else(|| panic!("unbound variable {}", v.name())),
                    );
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Set of weights of the homogeneous components (deg t_i = 2i, deg x = 2);
    /// the polynomial is homogeneous iff this is a singleton.
    pub fn weight_set(&self) -> std::collections::BTreeSet<u64> {
        self.terms.keys().map(|m| m.weight()).collect()
    }

    pub fn is_homogeneous_of_weight(&self, w: u64) -> bool {
        let ws = self.weight_set();
        ws.len() <= 1 && ws.iter().next().is_none_or(|&v| v == w)
    }

    /// View as a polynomial in x: coefficient polynomials indexed by x-power.
    pub fn x_coefficients(&self) -> Vec<ParamPoly<F>> {
        let deg = self.degree_in(Var::X) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(Var::X) as usize;
            let mut rest = *m;
            rest.0[Var::X as usize] = 0;
            out[e].insert_add(rest, c.clone());
        }
        out
    }

    pub fn from_x_coefficients(coeffs: &[ParamPoly<F>]) -> Self {
        let mut out = Self::zero();
        for (e, p) in coeffs.iter().enumerate() {
            let xe = Self::var(Var::X).pow(e as u32);
            out = out.add(&p.mul(&xe));
        }
        out
    }

    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// Exact division: Some(q) with self = q * divisor, or None when not
    /// exactly divisible. Single-divisor multivariate division; any leading
    /// term that the divisor's leading term cannot cancel makes the division
    /// inexact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (dm, dc) = divisor.leading()?;
        let dm = *dm;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        loop {
            let Some((rm, rc)) = rem.leading() else {
                return Some(quot);
            };
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = rc.mul(&dc_inv);
            let t = Self::term(qm, qc);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
    }
}

impl<F: Field> fmt::Display for ParamPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let cs = format!("{c}");
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = monomial_string(m);
            match (mono.as_str(), mag.as_str()) {
                ("", _) => write!(f, "{mag}")?,
                (_, "1") => write!(f, "{mono}")?,
                _ => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn monomial_string(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in VARS {
        let e = m.exponent(v);
        if e == 1 {
            parts.push(v.name().to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", v.name(), e));
        }
    }
    parts.join("*")
}

/// Parse a polynomial expression over the rationals: sums and products of
/// integer constants, `t1..t4`, `x`, powers with `^`, division by constants,
/// and parentheses.
pub fn parse_poly(input: &str) -> Result<ParamPoly<Rat>, String> {
    let mut p = Parser { chars: input.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(format!("unexpected input at position {}", p.pos));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ParamPoly<Rat>, String> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op) = self.peek() {
            match op {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ParamPoly<Rat>, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err("can only divide by a nonzero constant".into());
                    }
                    acc = acc.scale(&d.constant_part().recip());
                }
                // implicit multiplication: `2x`, `t1 x`, `3(x+1)`
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ParamPoly<Rat>, String> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err("expected integer exponent after ^".into());
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "bad exponent")?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ParamPoly<Rat>, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err("missing closing parenthesis".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: i64 = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| "bad integer")?;
                Ok(ParamPoly::constant(crate::field::rat_int(n)))
            }
            Some('t') => {
                self.pos += 1;
                let d = self.chars.get(self.pos).copied().ok_or("dangling t")?;
                self.pos += 1;
                let v = match d {
                    '1' => Var::T1,
                    '2' => Var::T2,
                    '3' => Var::T3,
                    '4' => Var::T4,
                    _ => return Err(format!("unknown variable t{d}")),
                };
                Ok(ParamPoly::var(v))
            }
            Some('x') => {
                self.pos += 1;
                Ok(ParamPoly::var(Var::X))
            }
            Some('y') => Err("the curve variable y is not allowed here; reduce C(x) dx/y".into()),
            Some(c) => Err(format!("unexpected character {c:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    fn t(v: Var) -> ParamPoly<Rat> {
        ParamPoly::var(v)
    }

    #[test]
    fn ring_identities() {
        let t1 = t(Var::T1);
        let t2 = t(Var::T2);
        // (t1+t2)^2 - t1^2 - 2 t1 t2 - t2^2 = 0
        let lhs = t1
            .add(&t2)
            .pow(2)
            .sub(&t1.pow(2))
            .sub(&t1.mul(&t2).scale_rat(&rat_int(2)))
            .sub(&t2.pow(2));
        assert!(lhs.is_zero());
    }

    #[test]
    fn substitution_is_identity_on_identity() {
        let p = parse_poly("t1^2*x - 2*t3/3 + t2*x^2").unwrap();
        let empty = BTreeMap::new();
        assert_eq!(p.substitute(&empty), p);
    }

    #[test]
    fn substitute_is_homomorphism() {
        let p = parse_poly("t1*t2 + x").unwrap();
        let q = parse_poly("t2 - x^2").unwrap();
        let mut b = BTreeMap::new();
        b.insert(Var::T2, parse_poly("t1 + 1").unwrap());
        b.insert(Var::X, parse_poly("t3^2").unwrap());
        let lhs = p.mul(&q).substitute(&b);
        let rhs = p.substitute(&b).mul(&q.substitute(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weights() {
        let delta = parse_poly("27*t3^2 - t2^3").unwrap();
        assert!(delta.is_homogeneous_of_weight(12));
        let r1 = parse_poly("t1^2 - t2/12").unwrap();
        assert!(r1.is_homogeneous_of_weight(4));
        let mixed = parse_poly("t1 + t2").unwrap();
        let ws: Vec<u64> = mixed.weight_set().into_iter().collect();
        assert_eq!(ws, vec![2, 4]);
    }

    #[test]
    fn display_is_canonical() {
        let p = parse_poly("x^2*2 + 1/3 - t1*x").unwrap();
        let q = parse_poly("1/3 + 2*x^2 - x*t1").unwrap();
        assert_eq!(p, q);
        assert_eq!(format!("{p}"), format!("{q}"));
        assert_eq!(format!("{}", parse_poly("27*t3^2").unwrap()), "27*t3^2");
    }

    #[test]
    fn exact_division() {
        let a = parse_poly("t1^2 - t2^2").unwrap();
        let b = parse_poly("t1 - t2").unwrap();
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, parse_poly("t1 + t2").unwrap());
        assert!(a.exact_div(&parse_poly("t1 - t3").unwrap()).is_none());
        // division by a constant
        let c = parse_poly("3").unwrap();
        assert_eq!(a.exact_div(&c).unwrap(), a.scale(&rat(1, 3)));
    }

    #[test]
    fn partial_derivatives() {
        let delta = parse_poly("27*t3^2 - t2^3").unwrap();
        assert_eq!(delta.partial(Var::T2), parse_poly("-3*t2^2").unwrap());
        assert_eq!(delta.partial(Var::T3), parse_poly("54*t3").unwrap());
        assert!(delta.partial(Var::T1).is_zero());
    }

    #[test]
    fn x_coefficient_round_trip() {
        let p = parse_poly("4*x^3 - t2*x - t3 + t1*x^3").unwrap();
        let cs = p.x_coefficients();
        assert_eq!(cs.len(), 4);
        assert_eq!(ParamPoly::from_x_coefficients(&cs), p);
    }

    #[test]
    fn parser_errors() {
        assert!(parse_poly("t5").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("(x").is_err());
        assert!(parse_poly("x / t1").is_err());
    }
}
