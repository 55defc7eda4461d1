use super::{full_reduce, AutoreducedSet};
use crate::error::Result;
use crate::poly::DiffPolynomial;
use crate::ring::DiffVariable;

/// One Δ-polynomial examined by [`coherence_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPair {
    pub first: usize,
    pub second: usize,
    pub common_derivative: DiffVariable,
    pub delta: DiffPolynomial,
    pub remainder: DiffPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub coherent: bool,
    pub pairs: Vec<DeltaPair>,
}

impl CoherenceReport {
    pub fn first_failure(&self) -> Option<&DeltaPair> {
        self.pairs.iter().find(|p| !p.remainder.is_zero())
    }
}

/// Least common derivative of two leaders on the same base unknown, when it is a
/// proper derivative of both.
fn common_derivative(a: &DiffVariable, b: &DiffVariable) -> Option<DiffVariable> {
    if a.base() != b.base() {
        return None;
    }
    let lcd: Vec<u32> = a
        .exponents()
        .iter()
        .zip(b.exponents())
        .map(|(x, y)| *x.max(y))
        .collect();
    let v = DiffVariable::new(a.base(), lcd);
    (v != *a && v != *b).then_some(v)
}

/// Rosenfeld coherence: every Δ-polynomial `S_g·θ(f) − S_f·θ'(g)` must fully reduce to 0.
pub fn coherence_check(a: &AutoreducedSet) -> Result<CoherenceReport> {
    a.ring().require_char_zero()?;
    let members = a.members();
    let mut pairs = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (f, g) = (&members[i], &members[j]);
            let Some(v) = common_derivative(&f.leader, &g.leader) else {
                continue;
            };
            let tf = v.derivative_of(&f.leader).expect("common derivative");
            let tg = v.derivative_of(&g.leader).expect("common derivative");
            let delta = g
                .separant
                .mul(&f.poly.apply_theta(&tf))?
                .sub(&f.separant.mul(&g.poly.apply_theta(&tg))?)?;
            let remainder = full_reduce(&delta, a)?.remainder;
            pairs.push(DeltaPair {
                first: i,
                second: j,
                common_derivative: v,
                delta,
                remainder,
            });
        }
    }
    Ok(CoherenceReport {
        coherent: pairs.iter().all(|p| p.remainder.is_zero()),
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::parse::parse_expression;
    use crate::ring::RingConfig;

    fn set(n: usize, vars: &[&str], src: &[&str]) -> AutoreducedSet {
        let r = Arc::new(RingConfig::rational(n, vars).unwrap());
        let p = src.iter().map(|s| parse_expression(s, &r).unwrap()).collect();
        AutoreducedSet::new(&r, p).unwrap()
    }

    #[test]
    fn ordinary_case_is_vacuous() {
        let rep = coherence_check(&set(1, &["y"], &["(y')^2 - 4*y"])).unwrap();
        assert!(rep.coherent);
        assert!(rep.pairs.is_empty());
        let rep = coherence_check(&set(1, &["y", "z"], &["y' - z", "z'' + y"])).unwrap();
        assert!(rep.coherent && rep.pairs.is_empty());
    }

    #[test]
    fn commuting_first_derivatives() {
        let rep = coherence_check(&set(2, &["y"], &["d1(y)", "d2(y)"])).unwrap();
        assert!(rep.coherent);
        assert_eq!(rep.pairs.len(), 1);
        assert!(rep.pairs[0].delta.is_zero());
        assert_eq!(rep.pairs[0].common_derivative, DiffVariable::unknown(0, vec![1, 1]));
    }

    #[test]
    fn exponential_system_is_coherent() {
        let rep = coherence_check(&set(2, &["y"], &["d1(y) - y", "d2(y) - y"])).unwrap();
        assert!(rep.coherent);
        let p = &rep.pairs[0];
        assert!(!p.delta.is_zero());
        assert!(p.remainder.is_zero());
    }

    #[test]
    fn incoherent_system_is_reported() {
        // d2 y = 1 gives d1 d2 y = 0, while d1 y = y gives d2 d1 y = 1.
        let rep = coherence_check(&set(2, &["y"], &["d1(y) - y", "d2(y) - 1"])).unwrap();
        assert!(!rep.coherent);
        assert!(rep.first_failure().is_some());
    }
}
