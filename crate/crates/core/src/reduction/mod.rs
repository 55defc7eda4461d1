//! Ritt reduction, autoreduced sets, characteristic sets and coherence.

mod charset;
mod coherence;
mod reduce;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{h_product, DiffPolynomial};
use crate::ring::{DiffVariable, RingConfig};

pub use charset::{characteristic_set, ritt_cmp, CharacteristicSet};
pub use coherence::{coherence_check, CoherenceReport, DeltaPair};
pub use reduce::{full_reduce, membership, FactorKind, Membership, MultiplierFactor, ReductionCertificate};

/// A member of an autoreduced set together with its leader data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub poly: DiffPolynomial,
    pub leader: DiffVariable,
    pub degree: u32,
    pub initial: DiffPolynomial,
    pub separant: DiffPolynomial,
}

impl Member {
    fn new(poly: DiffPolynomial) -> Result<Self> {
        let d = poly.initial_separant()?;
        Ok(Member {
            poly,
            leader: d.leader,
            degree: d.degree,
            initial: d.initial,
            separant: d.separant,
        })
    }
}

/// Why a list of polynomials fails to be autoreduced. Indices refer to the input list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Constant { index: usize },
    MismatchedRing { index: usize },
    SameLeader { first: usize, second: usize },
    /// `member` contains `variable`, a proper derivative of the leader of `of`.
    ProperDerivative {
        member: usize,
        of: usize,
        variable: DiffVariable,
    },
    /// `member` has degree `degree` in the leader of `of`, not below that member's leader degree.
    LeaderDegree { member: usize, of: usize, degree: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Constant { index } => write!(f, "member {index} is constant"),
            Violation::MismatchedRing { index } => write!(f, "member {index} lives in another ring"),
            Violation::SameLeader { first, second } => {
                write!(f, "members {first} and {second} share a leader")
            }
            Violation::ProperDerivative { member, of, .. } => write!(
                f,
                "member {member} contains a proper derivative of the leader of member {of}"
            ),
            Violation::LeaderDegree { member, of, degree } => write!(
                f,
                "member {member} has degree {degree} in the leader of member {of}"
            ),
        }
    }
}

/// Result of [`is_autoreduced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoreducedCheck {
    pub autoreduced: bool,
    pub violation: Option<Violation>,
}

/// How `p` fails to be reduced with respect to a polynomial with leader `leader` of degree `degree`.
pub(crate) enum Offense {
    ProperDerivative(DiffVariable),
    Degree(u32),
}

pub(crate) fn offense(p: &DiffPolynomial, leader: &DiffVariable, degree: u32) -> Option<Offense> {
    if let Some(v) = p.unknowns().into_iter().find(|v| v.is_proper_derivative_of(leader)) {
        return Some(Offense::ProperDerivative(v));
    }
    let d = p.degree_in(leader);
    (d >= degree).then_some(Offense::Degree(d))
}

fn first_violation(polys: &[DiffPolynomial]) -> Option<Violation> {
    let ring = polys.first()?.ring();
    let mut members = Vec::with_capacity(polys.len());
    for (index, p) in polys.iter().enumerate() {
        if **p.ring() != **ring {
            return Some(Violation::MismatchedRing { index });
        }
        match Member::new(p.clone()) {
            Ok(m) => members.push(m),
            Err(_) => return Some(Violation::Constant { index }),
        }
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if members[i].leader == members[j].leader {
                return Some(Violation::SameLeader { first: i, second: j });
            }
        }
    }
    for (i, m) in members.iter().enumerate() {
        for (j, of) in members.iter().enumerate() {
            if i == j {
                continue;
            }
            match offense(&m.poly, &of.leader, of.degree) {
                Some(Offense::ProperDerivative(variable)) => {
                    return Some(Violation::ProperDerivative {
                        member: i,
                        of: j,
                        variable,
                    })
                }
                Some(Offense::Degree(degree)) => {
                    return Some(Violation::LeaderDegree { member: i, of: j, degree })
                }
                None => {}
            }
        }
    }
    None
}

/// Check the autoreduced-set invariants, naming the first offending pair.
pub fn is_autoreduced(polys: &[DiffPolynomial]) -> AutoreducedCheck {
    let violation = first_violation(polys);
    AutoreducedCheck {
        autoreduced: violation.is_none(),
        violation,
    }
}

/// Pairwise reduced polynomials with distinct leaders, sorted by ascending leader rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoreducedSet {
    ring: Arc<RingConfig>,
    members: Vec<Member>,
    h: DiffPolynomial,
}

impl AutoreducedSet {
    pub fn empty(ring: &Arc<RingConfig>) -> Self {
        AutoreducedSet {
            ring: ring.clone(),
            members: vec![],
            h: DiffPolynomial::one(ring),
        }
    }

    pub fn new(ring: &Arc<RingConfig>, polys: Vec<DiffPolynomial>) -> Result<Self> {
        if polys.iter().any(|p| **p.ring() != **ring) {
            return Err(Error::MismatchedRing);
        }
        if let Some(v) = first_violation(&polys) {
            return Err(Error::NotAutoreduced(v.to_string()));
        }
        let mut members = polys.into_iter().map(Member::new).collect::<Result<Vec<_>>>()?;
        members.sort_by(|a, b| a.leader.cmp(&b.leader));
        let h = if members.is_empty() {
            DiffPolynomial::one(ring)
        } else {
            h_product(&members.iter().map(|m| m.poly.clone()).collect::<Vec<_>>())?
        };
        Ok(AutoreducedSet {
            ring: ring.clone(),
            members,
            h,
        })
    }

    pub fn ring(&self) -> &Arc<RingConfig> {
        &self.ring
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn polys(&self) -> Vec<DiffPolynomial> {
        self.members.iter().map(|m| m.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `H_A = Π S_f·I_f`.
    pub fn h(&self) -> &DiffPolynomial {
        &self.h
    }

    /// True when `p` is fully reduced with respect to every member.
    pub fn is_reduced(&self, p: &DiffPolynomial) -> bool {
        self.members
            .iter()
            .all(|m| offense(p, &m.leader, m.degree).is_none())
    }
}

impl fmt::Display for AutoreducedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", m.poly)?;
        }
        f.write_str("}")
    }
}

/// Ranking key of a single polynomial: leader, leader degree, then printed form.
pub(crate) fn poly_rank_cmp(a: &Member, b: &Member) -> Ordering {
    a.leader
        .cmp(&b.leader)
        .then(a.degree.cmp(&b.degree))
        .then_with(|| a.poly.canonical_cmp(&b.poly))
}
