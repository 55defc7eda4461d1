//! Ordinary sparse multivariate polynomials over ℚ.
//!
//! These back the numerators and denominators of [`crate::funcfield::RationalFunction`].
//! Terms are kept in graded lexicographic order, which is also the order used to
//! pick leading terms during exact division and normalization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Exponents(vec![0; nvars]), c);
        }
        p
    }

    /// The variable `t_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Exponents(e), BigRational::one())
    }

    pub fn monomial(exps: Exponents, c: BigRational) -> Self {
        let nvars = exps.0.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Exponents(e), c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.total() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::total).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = Exponents(e1.0.iter().zip(&e2.0).map(|(a, b)| a + b).collect());
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to `t_{var+1}`.
    pub fn derive(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[var] -= 1;
            out.add_term(ne, c * BigRational::from_integer(k.into()));
        }
        out
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((re, rc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if !de.divides(&re) {
                return None;
            }
            let e = Exponents(re.0.iter().zip(&de.0).map(|(a, b)| a - b).collect());
            let t = Self::monomial(e, rc / &dc);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `t_{var+1}`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let k = e.0[var] as usize;
            let mut ne = e.clone();
            ne.0[var] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    fn shift(&self, var: usize, k: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.clone();
                    ne.0[var] += k;
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    fn coefficient_of(&self, var: usize, k: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.0[var] == k {
                let mut ne = e.clone();
                ne.0[var] = 0;
                out.add_term(ne, c.clone());
            }
        }
        out
    }

    /// Pseudo-remainder of `self` by `d` in `t_{var+1}`.
    fn prem(&self, d: &Self, var: usize) -> Self {
        let n = d.degree_in(var);
        let lcd = d.coefficient_of(var, n);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= n {
            let k = r.degree_in(var);
            let lcr = r.coefficient_of(var, k);
            r = r.mul(&lcd).sub(&lcr.shift(var, k - n).mul(d));
        }
        r
    }

    /// Greatest common divisor, normalized to leading coefficient 1 (zero when both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        gcd_from(self, other, 0).monic()
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl std::fmt::Display + 'a {
        MPolyDisplay { p: self, names }
    }
}

fn content(a: &MPoly, var: usize) -> MPoly {
    let mut g: Option<MPoly> = None;
    for c in a.coefficients_in(var).into_iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.monic(),
            Some(g) => gcd_from(&g, &c, var + 1).monic(),
        });
        if g.as_ref().is_some_and(|g| g.is_one()) {
            break;
        }
    }
    g.unwrap_or_else(|| MPoly::one(a.nvars))
}

fn primitive_part(a: &MPoly, var: usize) -> MPoly {
    let c = content(a, var);
    a.div_exact(&c).expect("content divides polynomial")
}

// a, b nonzero and free of variables below `var`.
fn gcd_from(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let n = a.nvars;
    if var >= n {
        return MPoly::one(n);
    }
    if a.degree_in(var) == 0 && b.degree_in(var) == 0 {
        return gcd_from(a, b, var + 1);
    }
    let ca = content(a, var);
    let cb = content(b, var);
    let c = gcd_from(&ca, &cb, var + 1);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.is_zero() {
            break;
        }
        if q.degree_in(var) == 0 {
            p = MPoly::one(n);
            break;
        }
        let r = p.prem(&q, var);
        p = q;
        q = if r.is_zero() { r } else { primitive_part(&r, var).monic() };
    }
    c.mul(&p)
}

struct MPolyDisplay<'a> {
    p: &'a MPoly,
    names: &'a [String],
}

impl std::fmt::Display for MPolyDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.p.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            for (v, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&self.names[v]);
                if k > 1 {
                    let _ = write!(mono, "^{k}");
                }
            }
            write_signed_term(&mut out, i == 0, c, &mono);
        }
        f.write_str(&out)
    }
}

/// Append `c*mono` to `out` with the sign folded into the separator.
pub(crate) fn write_signed_term(out: &mut String, first: bool, c: &BigRational, mono: &str) {
    let neg = c.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    if mono.is_empty() {
        out.push_str(&fmt_rational(&a));
    } else if a.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&fmt_rational(&a));
        out.push('*');
        out.push_str(mono);
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn t(nvars: usize, i: usize) -> MPoly {
        MPoly::var(nvars, i)
    }

    #[test]
    fn exact_division_and_failure() {
        let x = t(2, 0);
        let y = t(2, 1);
        let a = x.add(&y).mul(&x.sub(&y));
        assert_eq!(a.div_exact(&x.add(&y)), Some(x.sub(&y)));
        assert_eq!(a.div_exact(&x), None);
    }

    #[test]
    fn gcd_univariate() {
        let x = t(1, 0);
        let one = MPoly::one(1);
        let a = x.sub(&one).mul(&x.add(&one));
        let b = x.sub(&one).mul(&x.scale(&q(3)));
        assert_eq!(a.gcd(&b), x.sub(&one));
    }

    #[test]
    fn gcd_bivariate_with_content() {
        let x = t(2, 0);
        let y = t(2, 1);
        let common = x.mul(&y).add(&MPoly::one(2));
        let a = common.mul(&y).mul(&x.add(&y));
        let b = common.mul(&y.pow(2)).mul(&x.sub(&y)).scale(&q(-4));
        assert_eq!(a.gcd(&b), common.mul(&y).monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let x = t(2, 0);
        let y = t(2, 1);
        assert!(x.add(&y).gcd(&x.sub(&y)).is_one());
    }

    #[test]
    fn display_orders_descending() {
        let names = vec!["t1".to_string(), "t2".to_string()];
        let x = t(2, 0);
        let y = t(2, 1);
        let p = x.pow(2).sub(&y.scale(&BigRational::new(3.into(), 2.into()))).sub(&MPoly::one(2));
        assert_eq!(p.display_with(&names).to_string(), "t1^2 - 3/2*t2 - 1");
    }
}
