//! Sparse trivariate polynomials and rational functions with factored
//! denominators over the cyclotomic scalars.
//!
//! Denominators are never expanded unless an operation requires it: they are
//! multisets of univariate factors (each in a single variable, constant term
//! 1), so addition merges factor multisets by lcm and series extraction
//! inverts one univariate factor at a time. There is no general multivariate
//! gcd; cancellation only ever divides the numerator by a denominator factor
//! when that division is exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclotomic, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    U,
    W,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::U => "u",
            Var::W => "w",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Monomial exponent triple. The `Ord` instance is graded lexicographic with
/// t > u > w, the canonical term order for printing and iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exp3 {
    pub t: u32,
    pub u: u32,
    pub w: u32,
}

impl Exp3 {
    pub const ZERO: Exp3 = Exp3 { t: 0, u: 0, w: 0 };

    pub fn new(t: u32, u: u32, w: u32) -> Self {
        Exp3 { t, u, w }
    }

    pub fn total(&self) -> u32 {
        self.t + self.u + self.w
    }

    pub fn get(&self, v: Var) -> u32 {
        match v {
            Var::T => self.t,
            Var::U => self.u,
            Var::W => self.w,
        }
    }

    pub fn with(&self, v: Var, e: u32) -> Self {
        let mut out = *self;
        match v {
            Var::T => out.t = e,
            Var::U => out.u = e,
            Var::W => out.w = e,
        }
        out
    }

    fn mul(&self, other: &Exp3) -> Exp3 {
        Exp3 {
            t: self.t + other.t,
            u: self.u + other.u,
            w: self.w + other.w,
        }
    }
}

impl Ord for Exp3 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), self.t, self.u, self.w).cmp(&(other.total(), other.t, other.u, other.w))
    }
}

impl PartialOrd for Exp3 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in t, u, w. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exp3, Cyclotomic>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(Exp3::ZERO, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Exp3::ZERO.with(v, 1), Cyclotomic::one())
    }

    pub fn monomial(e: Exp3, c: Cyclotomic) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(e, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp3) -> Cyclotomic {
        self.terms.get(e).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn add_term(&mut self, e: Exp3, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let mut out = MultiPoly::default();
        for (e, x) in self.terms() {
            out.add_term(*e, x.mul(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = MultiPoly::default();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea.mul(eb), ca.mul(cb));
            }
        }
        out
    }

    /// Product with every term above total degree `cap` dropped.
    pub fn mul_truncated(&self, rhs: &Self, cap: u32) -> Self {
        let mut out = MultiPoly::default();
        for (ea, ca) in self.terms() {
            if ea.total() > cap {
                continue;
            }
            for (eb, cb) in rhs.terms() {
                let e = ea.mul(eb);
                if e.total() <= cap {
                    out.add_term(e, ca.mul(cb));
                }
            }
        }
        out
    }

    pub fn truncate_total(&self, cap: u32) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total() <= cap)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e.get(v)).max().unwrap_or(0)
    }

    /// Substitute an exact value for one variable.
    pub fn specialize(&self, v: Var, value: &Cyclotomic) -> Self {
        let mut powers: Vec<Cyclotomic> = vec![Cyclotomic::one()];
        let mut out = MultiPoly::default();
        for (e, c) in self.terms() {
            let k = e.get(v) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            out.add_term(e.with(v, 0), c.mul(&powers[k]));
        }
        out
    }

    /// Rename a variable; the target variable must not occur.
    pub fn rename_var(&self, from: Var, to: Var) -> Self {
        let mut out = MultiPoly::default();
        for (e, c) in self.terms() {
            assert_eq!(e.get(to), 0, "rename target already in use");
            let k = e.get(from);
            out.add_term(e.with(from, 0).with(to, k), c.clone());
        }
        out
    }

    /// Exact division by a univariate polynomial, treating `self` as a
    /// polynomial in that variable with coefficients in the other two.
    /// Returns None when the division leaves a remainder.
    pub fn div_exact_univar(&self, divisor: &UniPoly) -> Option<Self> {
        let d = divisor.degree();
        if d == 0 {
            let inv = divisor.coeffs[0].inv().ok()?;
            return Some(self.scale(&inv));
        }
        let v = divisor.var;
        let lead_inv = divisor.coeffs[d].inv().ok()?;
        let mut rows: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in self.terms() {
            rows.entry(e.get(v))
                .or_default()
                .add_term(e.with(v, 0), c.clone());
        }
        rows.retain(|_, p| !p.is_zero());
        let mut quotient = MultiPoly::default();
        while let Some((&top, _)) = rows.last_key_value() {
            if top < d as u32 {
                return None;
            }
            let q_row = rows.remove(&top).unwrap().scale(&lead_inv);
            let q_deg = top - d as u32;
            for (k, dk) in divisor.coeffs.iter().enumerate().take(d) {
                if dk.is_zero() {
                    continue;
                }
                let delta = q_row.scale(dk);
                let slot = rows.entry(q_deg + k as u32).or_default();
                *slot = slot.sub(&delta);
                if slot.is_zero() {
                    rows.remove(&(q_deg + k as u32));
                }
            }
            for (e, c) in q_row.terms() {
                quotient.add_term(e.with(v, q_deg), c.clone());
            }
        }
        Some(quotient)
    }

    /// Apply complex conjugation to every coefficient.
    pub fn conjugate_coeffs(&self) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.conjugate()))
                .collect(),
        }
    }

    /// All coefficients as rationals; None if any coefficient fails.
    pub fn rational_coeffs(&self) -> Option<Vec<(Exp3, Rational)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.as_rational().map(|r| (*e, r)))
            .collect()
    }

    /// View as univariate in `v`; None if another variable occurs.
    pub fn as_univariate(&self, v: Var) -> Option<UniPoly> {
        let mut coeffs = vec![Cyclotomic::zero(); self.degree_in(v) as usize + 1];
        for (e, c) in self.terms() {
            if e.with(v, 0) != Exp3::ZERO {
                return None;
            }
            coeffs[e.get(v) as usize] = c.clone();
        }
        Some(UniPoly::new(v, coeffs))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading terms first.
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = {
                let mut parts = Vec::new();
                for (v, k) in [(Var::T, e.t), (Var::U, e.u), (Var::W, e.w)] {
                    if k == 1 {
                        parts.push(v.name().to_string());
                    } else if k > 1 {
                        parts.push(format!("{}^{}", v.name(), k));
                    }
                }
                parts.join("*")
            };
            let (sign, body) = coeff_text(c);
            if idx == 0 {
                if sign {
                    write!(f, "-")?;
                }
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Split a coefficient into (is_negative, magnitude text). Values that are
/// not plain rationals print parenthesized and unsigned.
fn coeff_text(c: &Cyclotomic) -> (bool, String) {
    match c.as_rational() {
        Some(r) => {
            use num_traits::Signed;
            if r.is_negative() {
                (true, (-r).to_string())
            } else {
                (false, r.to_string())
            }
        }
        None => (false, format!("({})", c.descend())),
    }
}

/// Dense univariate polynomial in one of the three series variables.
#[derive(Debug, Clone)]
pub struct UniPoly {
    pub var: Var,
    /// Ascending degree; trailing zeros trimmed; never empty.
    pub coeffs: Vec<Cyclotomic>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Cyclotomic::zero());
        }
        UniPoly { var, coeffs }
    }

    /// Build from (degree, coefficient) pairs of integers.
    pub fn from_int_terms(var: Var, terms: &[(u32, i64)]) -> Self {
        let top = terms.iter().map(|&(d, _)| d).max().unwrap_or(0);
        let mut coeffs = vec![Cyclotomic::zero(); top as usize + 1];
        for &(d, c) in terms {
            coeffs[d as usize] = coeffs[d as usize].add(&Cyclotomic::integer(c));
        }
        UniPoly::new(var, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn to_multipoly(&self) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (k, c) in self.coeffs.iter().enumerate() {
            out.add_term(Exp3::ZERO.with(self.var, k as u32), c.clone());
        }
        out
    }

    /// Lexicographic sort/identity key; requires coefficients in canonical
    /// (descended) form, which `DenFactor::new` guarantees.
    fn key(&self) -> (u8, usize, String) {
        let var_rank = match self.var {
            Var::T => 0u8,
            Var::U => 1,
            Var::W => 2,
        };
        let body = self
            .coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        (var_rank, self.degree(), body)
    }

    /// Exact quotient by (1 - root*x); None when x = 1/root is not a root.
    pub fn deflate_linear(&self, root: &Cyclotomic) -> Option<UniPoly> {
        // p = (1 - root*x) q  =>  q_0 = p_0, q_k = p_k + root*q_{k-1},
        // and the final carry p_d + root*q_{d-1} must vanish.
        let d = self.degree();
        if d == 0 {
            return None;
        }
        let mut q: Vec<Cyclotomic> = Vec::with_capacity(d);
        for k in 0..d {
            let qk = match q.last() {
                None => self.coeffs[0].clone(),
                Some(prev) => self.coeffs[k].add(&prev.mul(root)),
            };
            q.push(qk);
        }
        let last = q.last().unwrap();
        if self.coeffs[d].add(&last.mul(root)).is_zero() {
            Some(UniPoly::new(self.var, q))
        } else {
            None
        }
    }

    pub fn conjugate_coeffs(&self) -> UniPoly {
        UniPoly::new(
            self.var,
            self.coeffs.iter().map(|c| c.conjugate()).collect(),
        )
    }

    /// Truncated coefficients of 1/self, requiring constant term 1.
    pub fn inverse_series(&self, n: usize) -> Vec<Cyclotomic> {
        assert!(self.coeffs[0].is_one(), "inverse series needs unit constant");
        let mut out = Vec::with_capacity(n + 1);
        out.push(Cyclotomic::one());
        for k in 1..=n {
            let mut acc = Cyclotomic::zero();
            for i in 1..=k.min(self.degree()) {
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out.push(acc.neg());
        }
        out
    }
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var
            && self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl Eq for UniPoly {}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multipoly())
    }
}

/// One denominator factor: univariate, constant term 1, coefficients stored
/// in descended canonical form so the identity key is stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenFactor(UniPoly);

impl DenFactor {
    pub fn new(p: UniPoly) -> Result<Self> {
        if !p.coeffs[0].is_one() {
            return Err(Error::Internal(format!(
                "denominator factor must have constant term 1, got {}",
                p.coeffs[0]
            )));
        }
        if p.is_constant() {
            return Err(Error::Internal("constant denominator factor".into()));
        }
        Ok(DenFactor(UniPoly::new(
            p.var,
            p.coeffs.iter().map(|c| c.descend()).collect(),
        )))
    }

    /// (1 - root * var)
    pub fn linear(var: Var, root: &Cyclotomic) -> Self {
        DenFactor::new(UniPoly::new(
            var,
            vec![Cyclotomic::one(), root.neg()],
        ))
        .unwrap()
    }

    pub fn poly(&self) -> &UniPoly {
        &self.0
    }

    pub fn key(&self) -> (u8, usize, String) {
        self.0.key()
    }

    pub fn conjugate(&self) -> DenFactor {
        DenFactor::new(self.0.conjugate_coeffs()).unwrap()
    }
}

impl fmt::Display for DenFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// Multiset of denominator factors, kept sorted by factor key.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredDen {
    factors: Vec<(DenFactor, u32)>,
}

impl FactoredDen {
    pub fn one() -> Self {
        FactoredDen::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(DenFactor, u32)] {
        &self.factors
    }

    pub fn push(&mut self, f: DenFactor, mult: u32) {
        if mult == 0 {
            return;
        }
        match self
            .factors
            .binary_search_by(|(g, _)| g.key().cmp(&f.key()))
        {
            Ok(i) => self.factors[i].1 += mult,
            Err(i) => self.factors.insert(i, (f, mult)),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (f, m) in &rhs.factors {
            out.push(f.clone(), *m);
        }
        out
    }

    /// Factor-wise least common multiple (max multiplicity per factor).
    pub fn lcm(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (f, m) in &rhs.factors {
            match out
                .factors
                .binary_search_by(|(g, _)| g.key().cmp(&f.key()))
            {
                Ok(i) => out.factors[i].1 = out.factors[i].1.max(*m),
                Err(i) => out.factors.insert(i, (f.clone(), *m)),
            }
        }
        out
    }

    /// The multiset difference self / sub; sub must divide self.
    pub fn quotient(&self, sub: &Self) -> Self {
        let mut out = self.clone();
        for (f, m) in &sub.factors {
            let i = out
                .factors
                .binary_search_by(|(g, _)| g.key().cmp(&f.key()))
                .expect("quotient of non-divisor");
            assert!(out.factors[i].1 >= *m, "quotient of non-divisor");
            out.factors[i].1 -= m;
        }
        out.factors.retain(|(_, m)| *m > 0);
        out
    }

    pub fn expand(&self) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for (f, m) in &self.factors {
            let fp = f.poly().to_multipoly();
            for _ in 0..*m {
                acc = acc.mul(&fp);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.factors
            .iter()
            .map(|(f, m)| f.poly().degree() as u32 * m)
            .sum()
    }
}

impl fmt::Display for FactoredDen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (fac, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{fac}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Rational function numerator / product of denominator factors.
#[derive(Debug, Clone)]
pub struct RatFun {
    pub num: MultiPoly,
    pub den: FactoredDen,
}

impl RatFun {
    pub fn from_poly(num: MultiPoly) -> Self {
        RatFun {
            num,
            den: FactoredDen::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn new(num: MultiPoly, den: FactoredDen) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        RatFun { num, den }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let den = self.den.lcm(&rhs.den);
        let a = self.num.mul(&den.quotient(&self.den).expand());
        let b = rhs.num.mul(&den.quotient(&rhs.den).expand());
        RatFun::new(a.add(&b), den).cancel()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RatFun::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).cancel()
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        RatFun::new(self.num.scale(c), self.den.clone())
    }

    /// Greedy exact cancellation: repeatedly divide the numerator by any
    /// denominator factor that divides it exactly. Factor valuations are
    /// independent, so the end state does not depend on the order tried.
    pub fn cancel(&self) -> Self {
        if self.num.is_zero() {
            return RatFun::zero();
        }
        let mut num = self.num.clone();
        let mut factors = self.den.factors().to_vec();
        for (f, mult) in factors.iter_mut() {
            while *mult > 0 {
                match num.div_exact_univar(f.poly()) {
                    Some(q) => {
                        num = q;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
        }
        let mut den = FactoredDen::one();
        for (f, m) in factors {
            den.push(f, m);
        }
        RatFun { num, den }
    }

    /// Exact equality as rational functions, by cross-multiplication.
    pub fn equal(&self, rhs: &Self) -> bool {
        let lhs = self.num.mul(&rhs.den.expand());
        let r = rhs.num.mul(&self.den.expand());
        lhs == r
    }

    /// Series coefficients of all monomials with total degree <= n.
    pub fn series_coeffs(&self, n: u32) -> BTreeMap<Exp3, Cyclotomic> {
        let mut acc = self.num.truncate_total(n);
        for (f, m) in self.den.factors() {
            let inv = UniPoly::new(f.poly().var, f.poly().inverse_series(n as usize));
            let inv_poly = inv.to_multipoly();
            for _ in 0..*m {
                acc = acc.mul_truncated(&inv_poly, n);
            }
        }
        acc.terms.into_iter().collect()
    }

    /// Substitute an exact rational value for a variable. Denominator factors
    /// in that variable evaluate to scalars and fold into the numerator; a
    /// vanishing scalar is a pole and errors out.
    pub fn specialize(&self, v: Var, value: &Rational) -> Result<Self> {
        let val = Cyclotomic::from_rational(value.clone());
        let mut num = self.num.specialize(v, &val);
        let mut den = FactoredDen::one();
        for (f, m) in self.den.factors() {
            if f.poly().var == v {
                let s = f.poly().eval(&val);
                if s.is_zero() {
                    return Err(Error::Arithmetic(format!(
                        "specialization {v}={value} hits a pole of {f}"
                    )));
                }
                let inv = s.inv()?;
                for _ in 0..*m {
                    num = num.scale(&inv);
                }
            } else {
                den.push(f.clone(), *m);
            }
        }
        Ok(RatFun::new(num, den))
    }

    pub fn rename_var(&self, from: Var, to: Var) -> Self {
        let mut den = FactoredDen::one();
        for (f, m) in self.den.factors() {
            let p = f.poly();
            let var = if p.var == from { to } else { p.var };
            den.push(
                DenFactor::new(UniPoly::new(var, p.coeffs.clone())).unwrap(),
                *m,
            );
        }
        RatFun::new(self.num.rename_var(from, to), den)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / [{}]", self.num, self.den)
        }
    }
}
