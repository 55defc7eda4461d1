//! Witnesses for extending coefficient homomorphisms, and a consistency verifier.
//!
//! Given `S = R{t_1..t_n}` presented by characteristic sets and a nonzero
//! `b ∈ S`, the witness is a nonzero `a ∈ R` such that every specialization
//! `φ` of `R` with `φ(a) ≠ 0` should leave the system `{A^φ = 0, B^φ ≠ 0}`
//! consistent. The algebraic case uses a surrogate witness: the product of the
//! designated coefficients of the initials, the separants and the reduced
//! target. Its adequacy is checked empirically by [`prime_lift_check`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcfield::{apply_specialization, RationalFunction, Specialization};
use crate::mpoly::MPoly;
use crate::parse::parse_expression;
use crate::poly::DiffPolynomial;
use crate::reduction::{coherence_check, full_reduce, is_autoreduced, AutoreducedSet};
use crate::ring::{Base, CoefficientField, RingConfig};

/// The coefficient (an element of `R`) of the highest unknown monomial of `p`
/// in printing order.
pub fn designated_coefficient(p: &DiffPolynomial) -> Option<DiffPolynomial> {
    p.unknown_coefficients()
        .into_iter()
        .max_by(|a, b| a.0.display_cmp(&b.0))
        .map(|(_, c)| c)
}

/// Witness when the generator is differentially transcendental over `R`.
pub fn witness_transcendental(b: &DiffPolynomial) -> Result<DiffPolynomial> {
    designated_coefficient(b).ok_or(Error::ZeroTarget)
}

/// Surrogate witness when the generator satisfies the relations `a`.
pub fn witness_algebraic(a: &AutoreducedSet, b: &DiffPolynomial) -> Result<DiffPolynomial> {
    let remainder = full_reduce(b, a)?.remainder;
    let mut w = designated_coefficient(&remainder).ok_or(Error::ZeroTarget)?;
    for m in a.members() {
        for factor in [&m.initial, &m.separant] {
            let c = designated_coefficient(factor).expect("initials and separants are nonzero");
            w = w.mul(&c)?;
        }
    }
    Ok(w)
}

#[derive(Serialize, Deserialize)]
struct RingRecord {
    derivations: usize,
    #[serde(default)]
    parameters: Vec<String>,
    #[serde(default = "default_field")]
    field: String,
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Serialize, Deserialize)]
struct PresentationRecord {
    ring: RingRecord,
    generators: Vec<String>,
    relations: Vec<Vec<String>>,
    target: String,
}

/// `S = R{t_1..t_n}` with the characteristic set of each prime `𝔭_i ⊆ R{t_1..t_i}`
/// and a target `B` with `B(t̄) ≠ 0`.
///
/// Polynomials live in `R{y_1..y_n}`, one unknown per generator. At level `i`
/// the relations are re-read over `R{y_1..y_{i-1}}{y_i}`, where `y_1..y_{i-1}`
/// become coefficient-ring parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ring: Arc<RingConfig>,
    levels: Vec<AutoreducedSet>,
    target: DiffPolynomial,
}

impl Presentation {
    /// `relations[i]` holds the relations of generator `i + 1`; an empty list
    /// marks a transcendental step.
    pub fn new(
        ring: &Arc<RingConfig>,
        relations: Vec<Vec<DiffPolynomial>>,
        target: DiffPolynomial,
    ) -> Result<Self> {
        let n = ring.variables().len();
        if n == 0 {
            return Err(Error::InvalidPresentation("no generators".into()));
        }
        if relations.len() != n {
            return Err(Error::InvalidPresentation(format!(
                "{} generators but {} relation levels",
                n,
                relations.len()
            )));
        }
        ring.require_char_zero()?;
        if *target.ring() != *ring || relations.iter().flatten().any(|p| p.ring() != ring) {
            return Err(Error::MismatchedRing);
        }
        let mut levels = Vec::with_capacity(n);
        for (i, rels) in relations.iter().enumerate() {
            let lr = level_ring(ring, i)?;
            let polys = rels
                .iter()
                .map(|p| to_level(p, &lr, i))
                .collect::<Result<Vec<_>>>()?;
            if let Some(v) = is_autoreduced(&polys).violation {
                return Err(Error::InvalidPresentation(format!("level {}: {v}", i + 1)));
            }
            let set = AutoreducedSet::new(&lr, polys)?;
            if !coherence_check(&set)?.coherent {
                return Err(Error::InvalidPresentation(format!(
                    "level {} is not coherent",
                    i + 1
                )));
            }
            levels.push(set);
        }
        Ok(Presentation {
            ring: ring.clone(),
            levels,
            target,
        })
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let rec: PresentationRecord =
            serde_json::from_str(src).map_err(|e| Error::InvalidPresentation(e.to_string()))?;
        if rec.ring.field != "Q" {
            return Err(Error::InvalidPresentation(format!(
                "unsupported field `{}`",
                rec.ring.field
            )));
        }
        let ring = Arc::new(RingConfig::new(
            rec.ring.derivations,
            rec.generators,
            rec.ring.parameters,
            CoefficientField::Rationals,
        )?);
        let relations = rec
            .relations
            .iter()
            .map(|level| level.iter().map(|s| parse_expression(s, &ring)).collect())
            .collect::<Result<Vec<_>>>()?;
        let target = parse_expression(&rec.target, &ring)?;
        Self::new(&ring, relations, target)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rec = PresentationRecord {
            ring: RingRecord {
                derivations: self.ring.n_derivations(),
                parameters: self.ring.parameters().to_vec(),
                field: default_field(),
            },
            generators: self.ring.variables().to_vec(),
            relations: (0..self.levels.len())
                .map(|i| {
                    self.levels[i]
                        .polys()
                        .iter()
                        .map(|p| from_level(p, &self.ring, i).expect("level maps back").to_string())
                        .collect()
                })
                .collect(),
            target: self.target.to_string(),
        };
        serde_json::to_value(rec).expect("presentation serializes")
    }

    pub fn ring(&self) -> &Arc<RingConfig> {
        &self.ring
    }

    pub fn generators(&self) -> &[String] {
        self.ring.variables()
    }

    /// The relations of generator `i + 1`, over `R{y_1..y_i}{y_{i+1}}`.
    pub fn level(&self, i: usize) -> &AutoreducedSet {
        &self.levels[i]
    }

    pub fn target(&self) -> &DiffPolynomial {
        &self.target
    }
}

/// `R{y_1..y_i}{y_{i+1}}`: the first `i` generators join the parameters.
fn level_ring(ring: &RingConfig, i: usize) -> Result<Arc<RingConfig>> {
    let mut params = ring.parameters().to_vec();
    params.extend_from_slice(&ring.variables()[..i]);
    Ok(Arc::new(RingConfig::new(
        ring.n_derivations(),
        vec![ring.variables()[i].clone()],
        params,
        ring.field().clone(),
    )?))
}

fn to_level(p: &DiffPolynomial, lr: &Arc<RingConfig>, i: usize) -> Result<DiffPolynomial> {
    let np = p.ring().parameters().len();
    let name = |j: usize| p.ring().variables()[j].clone();
    p.map_bases(lr, |b| match b {
        Base::Param(k) => Ok(Base::Param(k)),
        Base::Unknown(j) if j < i => Ok(Base::Param(np + j)),
        Base::Unknown(j) if j == i => Ok(Base::Unknown(0)),
        Base::Unknown(j) => Err(Error::InvalidPresentation(format!(
            "`{}` occurs before its level",
            name(j)
        ))),
    })
}

fn from_level(p: &DiffPolynomial, ring: &Arc<RingConfig>, i: usize) -> Result<DiffPolynomial> {
    let np = ring.parameters().len();
    p.map_bases(ring, |b| match b {
        Base::Param(k) if k < np => Ok(Base::Param(k)),
        Base::Param(k) => Ok(Base::Unknown(k - np)),
        Base::Unknown(_) => Ok(Base::Unknown(i)),
    })
}

/// Descend one generator at a time: a witness for the target at level `n`,
/// then a witness for that witness at level `n - 1`, down to `R`.
///
/// The result is returned in the ring of the presentation and involves no unknowns.
pub fn witness_chain(p: &Presentation) -> Result<DiffPolynomial> {
    let mut target = p.target.clone();
    for i in (0..p.levels.len()).rev() {
        let set = &p.levels[i];
        let t = to_level(&target, set.ring(), i)?;
        let w = if set.is_empty() {
            witness_transcendental(&t)?
        } else {
            witness_algebraic(set, &t)?
        };
        target = from_level(&w, &p.ring, i)?;
    }
    Ok(target)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyVerdict {
    Consistent,
    Inconsistent(String),
    Unknown(String),
}

impl ConsistencyVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ConsistencyVerdict::Consistent)
    }
}

impl fmt::Display for ConsistencyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsistencyVerdict::Consistent => f.write_str("Consistent"),
            ConsistencyVerdict::Inconsistent(r) => write!(f, "Inconsistent: {r}"),
            ConsistencyVerdict::Unknown(r) => write!(f, "Unknown: {r}"),
        }
    }
}

/// Decide whether `{A^φ = 0, H_A^φ ≠ 0, B^φ ≠ 0}` is consistent by Rosenfeld's
/// criterion, or report a definite contradiction.
pub fn specialize_and_check(
    a: &AutoreducedSet,
    b: &DiffPolynomial,
    phi: &Specialization,
) -> Result<ConsistencyVerdict> {
    use ConsistencyVerdict::*;
    a.ring().require_char_zero()?;
    let mut images = Vec::with_capacity(a.len());
    for (i, m) in a.members().iter().enumerate() {
        let f = apply_specialization(phi, &m.poly)?;
        if f.is_zero() {
            return Ok(Unknown(format!("member {i} vanishes")));
        }
        if f.is_constant() {
            return Ok(Inconsistent(format!("member {i} becomes the nonzero constant {f}")));
        }
        images.push(f);
    }
    for (i, (m, f)) in a.members().iter().zip(&images).enumerate() {
        let d = f.initial_separant()?;
        if d.leader != m.leader || d.degree != m.degree {
            return Ok(Unknown(format!("member {i} changes leader or leader degree")));
        }
        if d.separant.is_zero() {
            return Ok(Unknown(format!("separant of member {i} vanishes")));
        }
    }
    let target = apply_specialization(phi, b)?;
    let ring = target.ring().clone();
    if let Some(v) = is_autoreduced(&images).violation {
        return Ok(Unknown(format!("specialized set is not autoreduced: {v}")));
    }
    let set = AutoreducedSet::new(&ring, images)?;
    if let Some(p) = coherence_check(&set)?.first_failure() {
        return Ok(Unknown(format!(
            "specialized set is not coherent (pair {}, {})",
            p.first, p.second
        )));
    }
    let r = full_reduce(&target, &set)?.remainder;
    if r.is_zero() {
        return Ok(Inconsistent("the target reduces to 0".into()));
    }
    Ok(Consistent)
}

/// Random specializations of a ring's parameters into ℚ(t_1..t_k): every image
/// is `p/q` with `deg p, deg q ≤ 2` and integer coefficients in `[-3, 3]`.
#[derive(Clone, Debug)]
pub struct SpecializationSampler {
    params: Vec<String>,
    field_params: Vec<String>,
}

impl SpecializationSampler {
    pub fn new(ring: &RingConfig, k: usize) -> Self {
        SpecializationSampler {
            params: ring.parameters().to_vec(),
            field_params: (1..=k).map(|i| format!("t{i}")).collect(),
        }
    }

    /// Sampler with `k = max(N, 1)`, so each derivation acts on its own `t_i`.
    pub fn for_ring(ring: &RingConfig) -> Self {
        Self::new(ring, ring.n_derivations().max(1))
    }

    fn random_poly(&self, rng: &mut impl Rng) -> MPoly {
        let k = self.field_params.len();
        let d = rng.gen_range(0..=2u32);
        let mut terms = Vec::new();
        for exps in exponents_up_to(k, d) {
            let c: i64 = rng.gen_range(-3..=3);
            terms.push((exps, BigRational::from_integer(BigInt::from(c))));
        }
        MPoly::from_terms(k, terms)
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Specialization {
        let mut phi = Specialization::new(self.field_params.clone());
        for name in &self.params {
            let num = self.random_poly(rng);
            let den = loop {
                let q = self.random_poly(rng);
                if !q.is_zero() {
                    break q;
                }
            };
            phi.insert(name, RationalFunction::new(num, den).expect("nonzero denominator"));
        }
        phi
    }

    /// Every parameter sent to 0.
    pub fn zero(&self) -> Specialization {
        let k = self.field_params.len();
        let mut phi = Specialization::new(self.field_params.clone());
        for name in &self.params {
            phi.insert(name, RationalFunction::zero(k));
        }
        phi
    }
}

fn exponents_up_to(k: usize, d: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in exponents_up_to(k - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// A trial whose verdict was not `Consistent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFailure {
    pub trial: usize,
    pub phi: Specialization,
    pub verdict: ConsistencyVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub trials: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub unknown: usize,
    /// Samples discarded because they annihilate the witness.
    pub rejected: usize,
    pub failures: Vec<LiftFailure>,
}

impl LiftReport {
    pub fn all_consistent(&self) -> bool {
        self.consistent == self.trials
    }
}

const MAX_SAMPLES_PER_TRIAL: usize = 10_000;

/// Sample `trials` specializations with `φ(a) ≠ 0` and run [`specialize_and_check`]
/// on each. Trial 0 uses the all-zero specialization when it is admissible, so
/// the most degenerate point is always exercised. Trials are independent
/// streams of one seeded generator and run in parallel.
pub fn prime_lift_check(
    set: &AutoreducedSet,
    b: &DiffPolynomial,
    a: &DiffPolynomial,
    trials: usize,
    seed: u64,
) -> Result<LiftReport> {
    if a.is_zero() {
        return Err(Error::ZeroTarget);
    }
    let sampler = SpecializationSampler::for_ring(set.ring());
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<(usize, Specialization, ConsistencyVerdict)> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let mut rejected = 0;
            let mut candidate = (trial == 0).then(|| sampler.zero());
            loop {
                let phi = candidate.take().unwrap_or_else(|| sampler.sample(&mut rng));
                if apply_specialization(&phi, a)?.is_zero() {
                    rejected += 1;
                    if rejected > MAX_SAMPLES_PER_TRIAL {
                        return Err(Error::Unsupported(
                            "no sampled specialization keeps the witness nonzero".into(),
                        ));
                    }
                    continue;
                }
                let verdict = specialize_and_check(set, b, &phi)?;
                return Ok((rejected, phi, verdict));
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = LiftReport {
        trials,
        consistent: 0,
        inconsistent: 0,
        unknown: 0,
        rejected: 0,
        failures: vec![],
    };
    for (trial, (rejected, phi, verdict)) in outcomes.into_iter().enumerate() {
        report.rejected += rejected;
        match &verdict {
            ConsistencyVerdict::Consistent => report.consistent += 1,
            ConsistencyVerdict::Inconsistent(_) => report.inconsistent += 1,
            ConsistencyVerdict::Unknown(_) => report.unknown += 1,
        }
        if !verdict.is_consistent() {
            report.failures.push(LiftFailure { trial, phi, verdict });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(params: &[&str]) -> Arc<RingConfig> {
        Arc::new(
            RingConfig::new(
                1,
                vec!["y".into()],
                params.iter().map(|s| s.to_string()).collect(),
                CoefficientField::Rationals,
            )
            .unwrap(),
        )
    }

    fn p(r: &Arc<RingConfig>, s: &str) -> DiffPolynomial {
        parse_expression(s, r).unwrap()
    }

    fn set(r: &Arc<RingConfig>, s: &[&str]) -> AutoreducedSet {
        AutoreducedSet::new(r, s.iter().map(|s| p(r, s)).collect()).unwrap()
    }

    #[test]
    fn transcendental_witnesses() {
        let r = ring(&[]);
        assert_eq!(witness_transcendental(&p(&r, "y*y' - 1")).unwrap(), p(&r, "1"));
        let r = ring(&["u"]);
        assert_eq!(witness_transcendental(&p(&r, "u*y' + u^2")).unwrap(), p(&r, "u"));
        assert_eq!(witness_transcendental(&p(&r, "0")), Err(Error::ZeroTarget));
    }

    #[test]
    fn algebraic_witnesses() {
        let r = ring(&[]);
        assert_eq!(witness_algebraic(&set(&r, &["y' - y"]), &p(&r, "y")).unwrap(), p(&r, "1"));
        assert_eq!(
            witness_algebraic(&set(&r, &["(y')^2 - 4*y"]), &p(&r, "y'")).unwrap(),
            p(&r, "2")
        );
        let r = ring(&["u"]);
        assert_eq!(
            witness_algebraic(&set(&r, &["u*y' - 1"]), &p(&r, "y'")).unwrap(),
            p(&r, "u^2")
        );
        let r = ring(&[]);
        assert_eq!(
            witness_algebraic(&set(&r, &["y' - y"]), &p(&r, "y'' - y")),
            Err(Error::ZeroTarget)
        );
    }

    fn phi_u(img: RationalFunction) -> Specialization {
        Specialization::new(vec!["t".into()]).with("u", img)
    }

    #[test]
    fn verifier_examples() {
        let r = ring(&["u"]);
        let a = set(&r, &["u*y' - 1"]);
        let b = p(&r, "y'");
        let v = specialize_and_check(&a, &b, &phi_u(RationalFunction::param(1, 0))).unwrap();
        assert_eq!(v, ConsistencyVerdict::Consistent);
        let v = specialize_and_check(&a, &b, &phi_u(RationalFunction::zero(1))).unwrap();
        assert!(matches!(v, ConsistencyVerdict::Inconsistent(_)));
        let r = ring(&[]);
        let v = specialize_and_check(
            &set(&r, &["y' - y"]),
            &p(&r, "y"),
            &Specialization::new(vec!["t".into()]),
        )
        .unwrap();
        assert_eq!(v, ConsistencyVerdict::Consistent);
    }

    #[test]
    fn leader_drop_is_unknown() {
        let r = ring(&["u"]);
        let a = set(&r, &["u*y'' + y"]);
        let v = specialize_and_check(&a, &p(&r, "y'"), &phi_u(RationalFunction::zero(1))).unwrap();
        assert!(matches!(v, ConsistencyVerdict::Unknown(_)));
    }

    #[test]
    fn target_collapse_is_inconsistent() {
        let r = ring(&["u"]);
        let a = set(&r, &["y' - y"]);
        let v = specialize_and_check(&a, &p(&r, "u*y"), &phi_u(RationalFunction::zero(1))).unwrap();
        assert!(matches!(v, ConsistencyVerdict::Inconsistent(_)));
    }

    #[test]
    fn lift_check_with_correct_and_wrong_witness() {
        let r = ring(&["u"]);
        let a = set(&r, &["u*y' - 1"]);
        let b = p(&r, "y'");
        let w = witness_algebraic(&a, &b).unwrap();
        let rep = prime_lift_check(&a, &b, &w, 100, 7).unwrap();
        assert_eq!(rep.consistent, 100, "{:?}", rep.failures);
        let rep = prime_lift_check(&a, &b, &p(&r, "1"), 100, 7).unwrap();
        assert!(rep.inconsistent >= 1);
        assert_eq!(rep.failures[0].trial, 0);
    }

    #[test]
    fn lift_check_is_deterministic() {
        let r = ring(&["u"]);
        let a = set(&r, &["u*y' - 1"]);
        let b = p(&r, "y'");
        let one = p(&r, "1");
        assert_eq!(
            prime_lift_check(&a, &b, &one, 50, 3).unwrap(),
            prime_lift_check(&a, &b, &one, 50, 3).unwrap()
        );
    }

    #[test]
    fn chain_examples() {
        let r = Arc::new(RingConfig::rational(1, &["y1", "y2"]).unwrap());
        let pres = Presentation::new(&r, vec![vec![], vec![]], p(&r, "y1*y2")).unwrap();
        assert_eq!(witness_chain(&pres).unwrap(), p(&r, "1"));
        let pres =
            Presentation::new(&r, vec![vec![], vec![p(&r, "y2' - y1")]], p(&r, "y2")).unwrap();
        assert_eq!(witness_chain(&pres).unwrap(), p(&r, "1"));
        let pres = Presentation::new(&r, vec![vec![], vec![]], p(&r, "3*y1'*y2^2 + y2")).unwrap();
        assert_eq!(witness_chain(&pres).unwrap(), p(&r, "3"));
    }

    #[test]
    fn chain_single_level_matches_single_step() {
        let r = ring(&["u"]);
        let a = p(&r, "u*y' - 1");
        let b = p(&r, "y'");
        let pres = Presentation::new(&r, vec![vec![a.clone()]], b.clone()).unwrap();
        assert_eq!(witness_chain(&pres).unwrap(), witness_algebraic(&set(&r, &["u*y' - 1"]), &b).unwrap());
    }

    #[test]
    fn presentation_json_round_trip() {
        let src = r#"{"ring":{"derivations":1,"parameters":["u"],"field":"Q"},
            "generators":["y"],"relations":[["u*y' - 1"]],"target":"y'"}"#;
        let pres = Presentation::from_json(src).unwrap();
        let again = Presentation::from_json(&pres.to_json().to_string()).unwrap();
        assert_eq!(pres, again);
        let r = pres.ring().clone();
        assert_eq!(witness_chain(&pres).unwrap(), p(&r, "u^2"));
    }

    #[test]
    fn presentation_rejects_bad_levels() {
        let r = Arc::new(RingConfig::rational(1, &["y1", "y2"]).unwrap());
        assert!(matches!(
            Presentation::new(&r, vec![vec![p(&r, "y2 - y1")], vec![]], p(&r, "y1")),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(matches!(
            Presentation::new(&r, vec![vec![]], p(&r, "y1")),
            Err(Error::InvalidPresentation(_))
        ));
    }
}
