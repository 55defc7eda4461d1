//! Sparse differential polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::ring::{Base, RingConfig, DiffVariable};

/// A product of differential variables, stored as `(variable, exponent)` pairs
/// in strictly descending variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(DiffVariable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_factors(mut factors: Vec<(DiffVariable, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(DiffVariable, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn factors(&self) -> impl Iterator<Item = &(DiffVariable, u32)> {
        self.0.iter()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn highest(&self) -> Option<&DiffVariable> {
        self.0.first().map(|(v, _)| v)
    }

    pub fn degree_of(&self, v: &DiffVariable) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            let pos = out.iter().position(|(w, _)| w == v)?;
            if out[pos].1 < *e {
                return None;
            }
            out[pos].1 -= e;
        }
        out.retain(|(_, e)| *e > 0);
        Some(Monomial(out))
    }

    /// Remove every power of `v`, returning the exponent removed.
    fn without(&self, v: &DiffVariable) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, f)| {
                if w == v {
                    e = *f;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (Monomial(rest), e)
    }

    /// Split into (parameter part, unknown part).
    pub fn split(&self) -> (Monomial, Monomial) {
        let (u, p): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(v, _)| v.base().is_unknown());
        (Monomial(p), Monomial(u))
    }

    fn map_bases(&self, f: &impl Fn(Base) -> Result<Base>) -> Result<Monomial> {
        let factors = self
            .0
            .iter()
            .map(|(v, e)| Ok((v.with_base(f(v.base())?), *e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_factors(factors))
    }

    /// Ordering used for printing: highest variable, then total degree, then lex.
    pub fn display_cmp(&self, other: &Monomial) -> Ordering {
        self.highest()
            .cmp(&other.highest())
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| self.cmp(other))
    }
}

// Lexicographic order induced by the variable order; a monomial order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            let c = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which ring operation [`arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Leader decomposition `f = Σ I_j·u^j` of a non-constant polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderDecomposition {
    pub leader: DiffVariable,
    pub degree: u32,
    pub initial: DiffPolynomial,
    pub separant: DiffPolynomial,
    /// `I_0..I_d`.
    pub coefficients: Vec<DiffPolynomial>,
}

#[derive(Clone, Debug)]
pub struct DiffPolynomial {
    ring: Arc<RingConfig>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PartialEq for DiffPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for DiffPolynomial {}

fn same_ring(a: &Arc<RingConfig>, b: &Arc<RingConfig>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl DiffPolynomial {
    pub fn zero(ring: &Arc<RingConfig>) -> Self {
        DiffPolynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<RingConfig>, c: Coeff) -> Self {
        Self::from_factors(ring, c, vec![])
    }

    pub fn one(ring: &Arc<RingConfig>) -> Self {
        Self::constant(ring, Coeff::one(ring.field()))
    }

    pub fn from_int(ring: &Arc<RingConfig>, n: i64) -> Self {
        Self::constant(ring, Coeff::from_integer(ring.field(), &BigInt::from(n)))
    }

    pub fn from_factors(ring: &Arc<RingConfig>, c: Coeff, factors: Vec<(DiffVariable, u32)>) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::from_factors(factors), c);
        }
        p
    }

    pub fn variable(ring: &Arc<RingConfig>, v: DiffVariable) -> Self {
        assert_eq!(v.exponents().len(), ring.n_derivations());
        Self::from_factors(ring, Coeff::one(ring.field()), vec![(v, 1)])
    }

    /// The base unknown `y_{j+1}`.
    pub fn unknown(ring: &Arc<RingConfig>, j: usize) -> Self {
        Self::variable(ring, DiffVariable::unknown(j, vec![0; ring.n_derivations()]))
    }

    /// The base parameter `u_{i+1}`.
    pub fn param(ring: &Arc<RingConfig>, i: usize) -> Self {
        Self::variable(ring, DiffVariable::new(Base::Param(i), vec![0; ring.n_derivations()]))
    }

    pub fn ring(&self) -> &Arc<RingConfig> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no differential unknown occurs (an element of the coefficient ring).
    pub fn is_constant(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.highest().is_none_or(|v| !v.base().is_unknown()))
    }

    /// The coefficient when the polynomial is a field element (no variables at all).
    pub fn as_scalar(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero(self.ring.field())),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MismatchedRing)
        }
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        DiffPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.mul(c));
        }
        out
    }

    fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m2, c2) in &self.terms {
            out.add_term(m.mul(m2), c.mul(c2));
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Apply `∂_i`, `1 ≤ i ≤ N`.
    pub fn derive(&self, i: usize) -> Result<Self> {
        let n = self.ring.n_derivations();
        if i == 0 || i > n {
            return Err(Error::DerivationOutOfRange { index: i, n });
        }
        Ok(self.derive0(i - 1))
    }

    pub(crate) fn derive0(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if let Some(dc) = c.derive(i) {
                out.add_term(m.clone(), dc);
            }
            for (k, (v, e)) in m.0.iter().enumerate() {
                let mut factors = m.0.clone();
                if *e == 1 {
                    factors.remove(k);
                } else {
                    factors[k].1 -= 1;
                }
                factors.push((v.derived(i), 1));
                out.add_term(Monomial::from_factors(factors), c.scale_int(*e));
            }
        }
        out
    }

    /// Apply the derivative operator `θ = ∂_1^{t_1}…∂_N^{t_N}`.
    pub fn apply_theta(&self, theta: &[u32]) -> Self {
        let mut p = self.clone();
        for (i, &t) in theta.iter().enumerate() {
            for _ in 0..t {
                p = p.derive0(i);
            }
        }
        p
    }

    /// All differential unknowns occurring, in descending rank.
    pub fn unknowns(&self) -> Vec<DiffVariable> {
        let set: BTreeSet<&DiffVariable> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v))
            .filter(|v| v.base().is_unknown())
            .collect();
        set.into_iter().rev().cloned().collect()
    }

    /// All variables (parameters and unknowns) occurring.
    pub fn variables(&self) -> BTreeSet<DiffVariable> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn leader(&self) -> Result<DiffVariable> {
        self.terms
            .keys()
            .filter_map(|m| m.highest())
            .max()
            .filter(|v| v.base().is_unknown())
            .cloned()
            .ok_or(Error::ConstantPolynomial)
    }

    pub fn degree_in(&self, v: &DiffVariable) -> u32 {
        self.terms.keys().map(|m| m.degree_of(v)).max().unwrap_or(0)
    }

    /// Coefficients `c_0..c_d` with `self = Σ c_k·v^k`.
    pub fn coefficients_in(&self, v: &DiffVariable) -> Vec<DiffPolynomial> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(&self.ring); d + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Coefficient of `v^k`.
    pub fn coefficient_of(&self, v: &DiffVariable, k: u32) -> DiffPolynomial {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            if e == k {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// `self·v^k`.
    pub fn mul_var_pow(&self, v: &DiffVariable, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let m = Monomial::from_factors(vec![(v.clone(), k)]);
        self.mul_term(&m, &Coeff::one(self.ring.field()))
    }

    pub fn initial_separant(&self) -> Result<LeaderDecomposition> {
        let leader = self.leader()?;
        let coefficients = self.coefficients_in(&leader);
        let degree = (coefficients.len() - 1) as u32;
        let initial = coefficients[degree as usize].clone();
        let mut separant = Self::zero(&self.ring);
        for (j, c) in coefficients.iter().enumerate().skip(1) {
            let term = c.mul_var_pow(&leader, j as u32 - 1).scale(&Coeff::one(self.ring.field()).scale_int(j as u32));
            separant = separant.add(&term)?;
        }
        Ok(LeaderDecomposition {
            leader,
            degree,
            initial,
            separant,
            coefficients,
        })
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d` in the polynomial ring, or `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading_term()?;
        let dc_inv = dc.inv().ok()?;
        let mut r = self.clone();
        let mut q = Self::zero(&self.ring);
        while let Some((rm, rc)) = r.leading_term() {
            let m = rm.div(dm)?;
            let c = rc.mul(&dc_inv);
            r = r.sub(&d.mul_term(&m, &c)).ok()?;
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Group terms by their unknown part: `self = Σ_M c_M·M` with `c_M` free of unknowns.
    pub fn unknown_coefficients(&self) -> BTreeMap<Monomial, DiffPolynomial> {
        let mut out: BTreeMap<Monomial, DiffPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (p, u) = m.split();
            out.entry(u)
                .or_insert_with(|| Self::zero(&self.ring))
                .add_term(p, c.clone());
        }
        out
    }

    /// Re-express the polynomial in another ring by renaming base variables.
    pub fn map_bases(&self, ring: &Arc<RingConfig>, f: impl Fn(Base) -> Result<Base>) -> Result<Self> {
        if ring.n_derivations() != self.ring.n_derivations() || ring.field() != self.ring.field() {
            return Err(Error::MismatchedRing);
        }
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            out.add_term(m.map_bases(&f)?, c.clone());
        }
        Ok(out)
    }

    /// Terms sorted for display, highest first.
    pub fn display_terms(&self) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.display_cmp(a.0));
        v
    }

    /// Total order on polynomials by their printed term sequence; used for tie-breaking.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

/// Add, subtract or multiply two polynomials of the same ring.
pub fn arith(p: &DiffPolynomial, q: &DiffPolynomial, kind: ArithKind) -> Result<DiffPolynomial> {
    match kind {
        ArithKind::Add => p.add(q),
        ArithKind::Sub => p.sub(q),
        ArithKind::Mul => p.mul(q),
    }
}

/// `H_A = Π S_f·I_f`.
pub fn h_product(members: &[DiffPolynomial]) -> Result<DiffPolynomial> {
    let ring = members.first().ok_or(Error::EmptyInput)?.ring().clone();
    let mut acc = DiffPolynomial::one(&ring);
    for f in members {
        let d = f.initial_separant()?;
        acc = acc.mul(&d.separant)?.mul(&d.initial)?;
    }
    Ok(acc)
}

pub(crate) fn fmt_variable(ring: &RingConfig, v: &DiffVariable) -> String {
    let name = ring.base_name(v.base());
    if ring.n_derivations() == 1 {
        return format!("{name}{}", "'".repeat(v.exponents()[0] as usize));
    }
    let mut s = name.to_string();
    for (i, &e) in v.exponents().iter().enumerate().rev() {
        s = match e {
            0 => s,
            1 => format!("d{}({s})", i + 1),
            _ => format!("d{}^{e}({s})", i + 1),
        };
    }
    s
}

pub(crate) fn fmt_monomial(ring: &RingConfig, m: &Monomial) -> String {
    m.factors()
        .map(|(v, e)| {
            let s = fmt_variable(ring, v);
            if *e == 1 {
                s
            } else {
                format!("{s}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.display_terms().into_iter().enumerate() {
            let (neg, text, unit) = c.render(self.ring.field());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(&self.ring, m);
            if mono.is_empty() {
                out.push_str(&text);
            } else if unit {
                out.push_str(&mono);
            } else {
                out.push_str(&text);
                out.push('*');
                out.push_str(&mono);
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CoefficientField;

    fn ring1() -> Arc<RingConfig> {
        Arc::new(RingConfig::rational(1, &["y"]).unwrap())
    }

    fn y(r: &Arc<RingConfig>, k: u32) -> DiffPolynomial {
        DiffPolynomial::variable(r, DiffVariable::unknown(0, vec![k]))
    }

    #[test]
    fn additive_inverse() {
        let r = ring1();
        let p = y(&r, 0).add(&DiffPolynomial::one(&r)).unwrap();
        let s = arith(&p, &y(&r, 0).neg(), ArithKind::Add).unwrap();
        assert_eq!(s, DiffPolynomial::one(&r));
    }

    #[test]
    fn monomial_product() {
        let r = ring1();
        let p = arith(&y(&r, 1), &y(&r, 1), ArithKind::Mul).unwrap();
        assert_eq!(p.to_string(), "y'^2");
    }

    #[test]
    fn mismatched_rings() {
        let a = ring1();
        let b = Arc::new(RingConfig::rational(1, &["z"]).unwrap());
        assert_eq!(y(&a, 0).add(&DiffPolynomial::unknown(&b, 0)), Err(Error::MismatchedRing));
    }

    #[test]
    fn freshmans_dream_f3() {
        let r = Arc::new(RingConfig::new(1, vec!["y".into()], vec![], CoefficientField::PrimeField(3)).unwrap());
        let p = y(&r, 0).add(&DiffPolynomial::one(&r)).unwrap().pow(3);
        let expected = y(&r, 0).pow(3).add(&DiffPolynomial::one(&r)).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn derive_examples() {
        let r = ring1();
        assert_eq!(y(&r, 0).derive(1).unwrap(), y(&r, 1));
        let d = y(&r, 0).pow(2).derive(1).unwrap();
        assert_eq!(d.to_string(), "2*y'*y");
        assert_eq!(y(&r, 0).derive(2), Err(Error::DerivationOutOfRange { index: 2, n: 1 }));
        let f5 = Arc::new(RingConfig::new(1, vec!["y".into()], vec![], CoefficientField::PrimeField(5)).unwrap());
        assert!(y(&f5, 0).pow(5).derive(1).unwrap().is_zero());
    }

    #[test]
    fn derive_undefined_when_n_is_zero() {
        let r = Arc::new(RingConfig::rational(0, &["x"]).unwrap());
        assert!(DiffPolynomial::unknown(&r, 0).derive(1).is_err());
    }

    #[test]
    fn leader_and_decomposition() {
        let r = ring1();
        let f = y(&r, 1).pow(2).sub(&y(&r, 0).scale(&Coeff::Rational(num_rational::BigRational::from_integer(4.into())))).unwrap();
        assert_eq!(f.leader().unwrap(), DiffVariable::unknown(0, vec![1]));
        let d = f.initial_separant().unwrap();
        assert_eq!(d.degree, 2);
        assert_eq!(d.initial, DiffPolynomial::one(&r));
        assert_eq!(d.separant.to_string(), "2*y'");
        assert_eq!(DiffPolynomial::from_int(&r, 7).leader(), Err(Error::ConstantPolynomial));

        let g = y(&r, 0).mul(&y(&r, 2).pow(3)).unwrap().add(&y(&r, 1)).unwrap();
        let d = g.initial_separant().unwrap();
        assert_eq!((d.initial.to_string(), d.separant.to_string(), d.degree), ("y".into(), "3*y''^2*y".into(), 3));

        let h = y(&r, 1).sub(&y(&r, 0)).unwrap();
        let d = h.initial_separant().unwrap();
        assert!(d.initial == DiffPolynomial::one(&r) && d.separant == DiffPolynomial::one(&r) && d.degree == 1);
    }

    #[test]
    fn leader_two_derivations() {
        let r = Arc::new(RingConfig::rational(2, &["y1", "y2"]).unwrap());
        let d1y1 = DiffPolynomial::variable(&r, DiffVariable::unknown(0, vec![1, 0]));
        let d2y2 = DiffPolynomial::variable(&r, DiffVariable::unknown(1, vec![0, 1]));
        let f = d1y1.mul(&d2y2).unwrap().add(&DiffPolynomial::unknown(&r, 0)).unwrap();
        assert_eq!(f.leader().unwrap(), DiffVariable::unknown(1, vec![0, 1]));
        assert_eq!(f.to_string(), "d2(y2)*d1(y1) + y1");
    }

    #[test]
    fn h_product_examples() {
        let r = ring1();
        let f = y(&r, 1).pow(2).sub(&y(&r, 0).scale(&Coeff::Rational(num_rational::BigRational::from_integer(4.into())))).unwrap();
        let g = y(&r, 1).sub(&y(&r, 0)).unwrap();
        let g2 = y(&r, 2).sub(&y(&r, 0)).unwrap();
        assert_eq!(h_product(std::slice::from_ref(&f)).unwrap().to_string(), "2*y'");
        assert_eq!(h_product(&[g]).unwrap(), DiffPolynomial::one(&r));
        assert_eq!(h_product(&[f, g2]).unwrap().to_string(), "2*y'");
        assert_eq!(h_product(&[DiffPolynomial::one(&r)]), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn parameters_are_constants() {
        let r = Arc::new(RingConfig::new(1, vec!["y".into()], vec!["u".into()], CoefficientField::Rationals).unwrap());
        let u = DiffPolynomial::param(&r, 0);
        assert!(u.is_constant());
        assert_eq!(u.leader(), Err(Error::ConstantPolynomial));
        let f = u.mul(&y(&r, 1)).unwrap().sub(&DiffPolynomial::one(&r)).unwrap();
        let d = f.initial_separant().unwrap();
        assert_eq!(d.initial, u);
        assert_eq!(f.to_string(), "y'*u - 1");
        assert_eq!(f.derive(1).unwrap().to_string(), "y''*u + y'*u'");
    }

    #[test]
    fn exact_division() {
        let r = ring1();
        let a = y(&r, 1).add(&y(&r, 0)).unwrap();
        let b = y(&r, 1).sub(&y(&r, 0)).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(y(&r, 0).div_exact(&y(&r, 1)), None);
    }
}
