use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{full_reduce, poly_rank_cmp, AutoreducedSet, Member};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::DiffPolynomial;

/// Outcome of [`characteristic_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacteristicSet {
    Set(AutoreducedSet),
    /// A nonzero element free of unknowns was produced; over a field of
    /// coefficients the generated ideal is improper.
    UnitIdeal { witness: DiffPolynomial },
}

/// Ritt order on autoreduced sets: compare members pairwise by leader rank and
/// leader degree; a set that runs out first is the larger one.
pub fn ritt_cmp(a: &AutoreducedSet, b: &AutoreducedSet) -> Ordering {
    for (x, y) in a.members().iter().zip(b.members()) {
        let c = x.leader.cmp(&y.leader).then(x.degree.cmp(&y.degree));
        if c != Ordering::Equal {
            return c;
        }
    }
    match b.len().cmp(&a.len()) {
        Ordering::Equal => a
            .members()
            .iter()
            .zip(b.members())
            .map(|(x, y)| x.poly.canonical_cmp(&y.poly))
            .find(|c| *c != Ordering::Equal)
            .unwrap_or(Ordering::Equal),
        c => c,
    }
}

/// Lowest autoreduced subset: repeatedly take the lowest element reduced with
/// respect to everything chosen so far.
fn basic_set(basis: &[Member]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&i, &j| poly_rank_cmp(&basis[i], &basis[j]));
    let mut chosen: Vec<usize> = Vec::new();
    for i in order {
        let ok = chosen.iter().all(|&c| {
            let m = &basis[c];
            super::offense(&basis[i].poly, &m.leader, m.degree).is_none()
        });
        if ok {
            chosen.push(i);
        }
    }
    chosen
}

/// Divide out the rational content, leaving integer coefficients with a
/// positive leading one. Polynomials with non-rational coefficients are kept.
fn primitive(p: DiffPolynomial) -> DiffPolynomial {
    let (mut num_gcd, mut den_lcm) = (BigInt::zero(), BigInt::from(1));
    let rational = p.terms().all(|(_, c)| match c {
        Coeff::Rational(q) => {
            num_gcd = num_gcd.gcd(q.numer());
            den_lcm = den_lcm.lcm(q.denom());
            true
        }
        _ => false,
    });
    if !rational || num_gcd.is_zero() {
        return p;
    }
    let mut factor = BigRational::new(den_lcm, num_gcd);
    if matches!(p.leading_term(), Some((_, Coeff::Rational(q))) if q.is_negative()) {
        factor = -factor;
    }
    p.scale(&Coeff::Rational(factor))
}

/// Ritt's iteration: take the basic set of the current basis, reduce the rest
/// against it, adjoin the lowest nonzero remainder, and repeat until everything
/// reduces to 0.
pub fn characteristic_set(polys: &[DiffPolynomial]) -> Result<CharacteristicSet> {
    let first = polys.first().ok_or(Error::EmptyInput)?;
    let ring = first.ring().clone();
    ring.require_char_zero()?;
    if polys.iter().any(|p| **p.ring() != *ring) {
        return Err(Error::MismatchedRing);
    }
    let mut basis: Vec<Member> = Vec::new();
    let push = |basis: &mut Vec<Member>, p: &DiffPolynomial| -> Option<CharacteristicSet> {
        if p.is_zero() || basis.iter().any(|m| m.poly == *p) {
            return None;
        }
        match Member::new(p.clone()) {
            Ok(m) => {
                basis.push(m);
                None
            }
            Err(_) => Some(CharacteristicSet::UnitIdeal { witness: p.clone() }),
        }
    };
    for p in polys {
        if let Some(unit) = push(&mut basis, p) {
            return Ok(unit);
        }
    }
    loop {
        let chosen = basic_set(&basis);
        let a = AutoreducedSet::new(&ring, chosen.iter().map(|&i| basis[i].poly.clone()).collect())?;
        let rest: Vec<&Member> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen.contains(i))
            .map(|(_, m)| m)
            .collect();
        let remainders = rest
            .par_iter()
            .map(|m| full_reduce(&m.poly, &a).map(|c| primitive(c.remainder)))
            .collect::<Result<Vec<_>>>()?;
        let mut lowest: Option<Member> = None;
        for r in remainders.into_iter().filter(|r| !r.is_zero()) {
            let m = match Member::new(r.clone()) {
                Ok(m) => m,
                Err(_) => return Ok(CharacteristicSet::UnitIdeal { witness: r }),
            };
            if lowest.as_ref().is_none_or(|l| poly_rank_cmp(&m, l) == Ordering::Less) {
                lowest = Some(m);
            }
        }
        match lowest {
            Some(m) => basis.push(m),
            None => return Ok(CharacteristicSet::Set(a)),
        }
    }
}
