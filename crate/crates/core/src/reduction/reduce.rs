use std::collections::BTreeMap;

use serde::Serialize;

use super::{AutoreducedSet, Member};
use crate::error::Result;
use crate::poly::DiffPolynomial;
use crate::ring::DiffVariable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FactorKind {
    Initial,
    Separant,
}

/// One `I_f` or `S_f` factor of a certificate multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplierFactor {
    pub member_index: usize,
    pub kind: FactorKind,
}

/// Witness of `multiplier · g = Σ q_{f,θ}·θ(f) + remainder`.
///
/// The multiplier is the literal product of the `S_f`/`I_f` factors used, so it
/// divides a power of `H_A`; `m` counts those factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub factors: Vec<MultiplierFactor>,
    pub multiplier: DiffPolynomial,
    /// Keyed by (member index, θ exponents).
    pub quotients: BTreeMap<(usize, Vec<u32>), DiffPolynomial>,
    pub remainder: DiffPolynomial,
}

#[derive(Serialize)]
struct QuotientRecord {
    member_index: usize,
    theta: Vec<u32>,
    q: String,
}

#[derive(Serialize)]
struct CertificateRecord {
    m: usize,
    multiplier: String,
    quotients: Vec<QuotientRecord>,
    remainder: String,
}

impl ReductionCertificate {
    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// Re-expand the identity exactly.
    pub fn verify(&self, g: &DiffPolynomial, a: &AutoreducedSet) -> bool {
        let Ok(mut lhs) = self.multiplier.mul(g) else {
            return false;
        };
        for ((i, theta), q) in &self.quotients {
            let Some(m) = a.members().get(*i) else {
                return false;
            };
            let Ok(t) = q.mul(&m.poly.apply_theta(theta)) else {
                return false;
            };
            lhs = lhs.sub(&t).expect("same ring");
        }
        lhs == self.remainder
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rec = CertificateRecord {
            m: self.m(),
            multiplier: self.multiplier.to_string(),
            quotients: self
                .quotients
                .iter()
                .map(|((i, theta), q)| QuotientRecord {
                    member_index: *i,
                    theta: theta.clone(),
                    q: q.to_string(),
                })
                .collect(),
            remainder: self.remainder.to_string(),
        };
        serde_json::to_value(rec).expect("certificate serializes")
    }
}

struct Reducer<'a> {
    set: &'a AutoreducedSet,
    r: DiffPolynomial,
    multiplier: DiffPolynomial,
    factors: Vec<MultiplierFactor>,
    quotients: BTreeMap<(usize, Vec<u32>), DiffPolynomial>,
}

impl Reducer<'_> {
    /// Pseudo-divide the running remainder by `d` in `v`, recording `kind` multipliers.
    fn pseudo_divide(
        &mut self,
        d: &DiffPolynomial,
        v: &DiffVariable,
        key: (usize, Vec<u32>),
        kind: FactorKind,
    ) {
        let e = d.degree_in(v);
        let lc_d = d.coefficient_of(v, e);
        let ring = self.r.ring().clone();
        loop {
            let k = self.r.degree_in(v);
            if self.r.is_zero() || k < e {
                break;
            }
            let lc_r = self.r.coefficient_of(v, k);
            let t = match lc_r.div_exact(&lc_d) {
                Some(q) => q.mul_var_pow(v, k - e),
                None => {
                    self.r = self.r.mul(&lc_d).expect("same ring");
                    self.multiplier = self.multiplier.mul(&lc_d).expect("same ring");
                    for q in self.quotients.values_mut() {
                        *q = q.mul(&lc_d).expect("same ring");
                    }
                    self.factors.push(MultiplierFactor {
                        member_index: key.0,
                        kind,
                    });
                    lc_r.mul_var_pow(v, k - e)
                }
            };
            self.r = self.r.sub(&t.mul(d).expect("same ring")).expect("same ring");
            let slot = self
                .quotients
                .entry(key.clone())
                .or_insert_with(|| DiffPolynomial::zero(&ring));
            *slot = slot.add(&t).expect("same ring");
            if slot.is_zero() {
                self.quotients.remove(&key);
            }
        }
    }

    /// Highest-rank unknown of the remainder that is a proper derivative of a leader,
    /// paired with the highest-ranked member it derives from.
    fn proper_derivative_target(&self) -> Option<(DiffVariable, usize, Vec<u32>)> {
        let members = self.set.members();
        self.r.unknowns().into_iter().find_map(|v| {
            members.iter().enumerate().rev().find_map(|(i, m): (usize, &Member)| {
                if v.is_proper_derivative_of(&m.leader) {
                    let theta = v.derivative_of(&m.leader).unwrap();
                    Some((v.clone(), i, theta))
                } else {
                    None
                }
            })
        })
    }
}

/// Ritt full reduction of `g` by `a`, returning an exact certificate.
///
/// Proper derivatives of leaders are eliminated first, highest rank first; the
/// remainder is then pseudo-divided by the members in descending leader rank.
/// A step multiplies by `S_f` (or `I_f`) only when the leading coefficient is not
/// already divisible by it.
pub fn full_reduce(g: &DiffPolynomial, a: &AutoreducedSet) -> Result<ReductionCertificate> {
    g.ring().require_char_zero()?;
    if **g.ring() != **a.ring() {
        return Err(crate::error::Error::MismatchedRing);
    }
    let ring = g.ring().clone();
    let mut red = Reducer {
        set: a,
        r: g.clone(),
        multiplier: DiffPolynomial::one(&ring),
        factors: vec![],
        quotients: BTreeMap::new(),
    };
    let mut derived: BTreeMap<(usize, Vec<u32>), DiffPolynomial> = BTreeMap::new();
    while let Some((v, i, theta)) = red.proper_derivative_target() {
        let key = (i, theta);
        let d = derived
            .entry(key.clone())
            .or_insert_with(|| a.members()[key.0].poly.apply_theta(&key.1))
            .clone();
        red.pseudo_divide(&d, &v, key, FactorKind::Separant);
    }
    let n = ring.n_derivations();
    for (i, m) in a.members().iter().enumerate().rev() {
        if red.r.degree_in(&m.leader) >= m.degree {
            red.pseudo_divide(&m.poly, &m.leader, (i, vec![0; n]), FactorKind::Initial);
        }
    }
    let cert = ReductionCertificate {
        factors: red.factors,
        multiplier: red.multiplier,
        quotients: red.quotients,
        remainder: red.r,
    };
    debug_assert!(cert.verify(g, a), "reduction certificate failed to re-expand");
    debug_assert!(a.is_reduced(&cert.remainder));
    Ok(cert)
}

/// Outcome of a saturation membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Remainder zero: `g ∈ [A] : H_A^∞`, witnessed by the certificate.
    CertifiedMember(ReductionCertificate),
    /// Nonzero reduced remainder. This shows `g ∉ 𝔭` only when the caller knows
    /// `A` is a characteristic set of the prime `𝔭`.
    ReducedNonzero(ReductionCertificate),
}

impl Membership {
    pub fn certificate(&self) -> &ReductionCertificate {
        match self {
            Membership::CertifiedMember(c) | Membership::ReducedNonzero(c) => c,
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, Membership::CertifiedMember(_))
    }
}

pub fn membership(g: &DiffPolynomial, a: &AutoreducedSet) -> Result<Membership> {
    let cert = full_reduce(g, a)?;
    Ok(if cert.remainder.is_zero() {
        Membership::CertifiedMember(cert)
    } else {
        Membership::ReducedNonzero(cert)
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::error::Error;
    use crate::parse::parse_expression;
    use crate::ring::{CoefficientField, RingConfig};

    fn ring() -> Arc<RingConfig> {
        Arc::new(RingConfig::rational(1, &["y"]).unwrap())
    }

    fn p(r: &Arc<RingConfig>, s: &str) -> DiffPolynomial {
        parse_expression(s, r).unwrap()
    }

    fn set(r: &Arc<RingConfig>, s: &[&str]) -> AutoreducedSet {
        AutoreducedSet::new(r, s.iter().map(|s| p(r, s)).collect()).unwrap()
    }

    #[test]
    fn second_derivative_against_riccati_like_member() {
        let r = ring();
        let a = set(&r, &["(y')^2 - 4*y"]);
        let g = p(&r, "y''");
        let c = full_reduce(&g, &a).unwrap();
        assert_eq!(c.multiplier.to_string(), "2*y'");
        assert_eq!(c.m(), 1);
        assert_eq!(c.remainder.to_string(), "4*y'");
        assert_eq!(c.quotients.len(), 1);
        assert_eq!(c.quotients[&(0, vec![1])], DiffPolynomial::one(&r));
        // 2y'·y'' = ∂((y')² − 4y) + 4y'
        let lhs = p(&r, "2*y'*y''");
        let rhs = p(&r, "((y')^2 - 4*y)' + 4*y'");
        assert_eq!(lhs, rhs);
        assert!(c.verify(&g, &a));
    }

    #[test]
    fn derivative_of_member_reduces_to_zero() {
        let r = ring();
        let a = set(&r, &["(y')^2 - 4*y"]);
        let c = full_reduce(&p(&r, "((y')^2 - 4*y)'"), &a).unwrap();
        assert!(c.remainder.is_zero());
    }

    #[test]
    fn reduced_input_is_untouched() {
        let r = ring();
        let a = set(&r, &["y' - y"]);
        let c = full_reduce(&p(&r, "y"), &a).unwrap();
        assert_eq!(c.remainder, p(&r, "y"));
        assert_eq!(c.m(), 0);
        assert!(c.quotients.is_empty());
    }

    #[test]
    fn membership_examples() {
        let r = ring();
        let a = set(&r, &["(y')^2 - 4*y"]);
        assert!(membership(&p(&r, "d1^2((y')^2 - 4*y)"), &a).unwrap().is_member());
        let m = membership(&p(&r, "2*y'*y'' - 4*y'"), &a).unwrap();
        assert!(m.is_member());
        assert_eq!(m.certificate().m(), 0);
        let b = set(&r, &["y' - y"]);
        match membership(&p(&r, "y"), &b).unwrap() {
            Membership::ReducedNonzero(c) => assert_eq!(c.remainder, p(&r, "y")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prime_field_is_rejected() {
        let r = Arc::new(RingConfig::new(1, vec!["y".into()], vec![], CoefficientField::PrimeField(5)).unwrap());
        let a = set(&r, &["y' - y"]);
        assert_eq!(full_reduce(&p(&r, "y''"), &a), Err(Error::UnsupportedCharacteristic));
    }

    #[test]
    fn json_record_is_stable() {
        let r = ring();
        let a = set(&r, &["(y')^2 - 4*y"]);
        let c = full_reduce(&p(&r, "y''"), &a).unwrap();
        let s = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"m":1,"multiplier":"2*y'","quotients":[{"member_index":0,"q":"1","theta":[1]}],"remainder":"4*y'"}"#
        );
    }

    #[test]
    fn parameter_initial_forces_multiplier() {
        let r = Arc::new(RingConfig::new(1, vec!["y".into()], vec!["u".into()], CoefficientField::Rationals).unwrap());
        let a = set(&r, &["u*y' - 1"]);
        let c = full_reduce(&p(&r, "y'"), &a).unwrap();
        assert_eq!(c.multiplier, p(&r, "u"));
        assert_eq!(c.remainder, p(&r, "1"));
        assert_eq!(c.factors, vec![MultiplierFactor { member_index: 0, kind: FactorKind::Initial }]);
    }
}
