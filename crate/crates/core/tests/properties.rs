use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use rittkit_core::chevalley::{witness_algebraic, witness_chain, witness_transcendental, Presentation};
use rittkit_core::difference::{fiber_nonempty, sigma_apply, SigmaPoly};
use rittkit_core::{
    characteristic_set, full_reduce, is_autoreduced, membership, parse_expression, wronskian, AutoreducedSet, Base,
    CharacteristicSet, Coeff, CoefficientField, DiffPolynomial, DiffVariable, MPoly, RationalFunction, RingConfig,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ring(n: usize, vars: &[&str], params: &[&str], field: CoefficientField) -> Arc<RingConfig> {
    Arc::new(
        RingConfig::new(
            n,
            vars.iter().map(|s| s.to_string()).collect(),
            params.iter().map(|s| s.to_string()).collect(),
            field,
        )
        .unwrap(),
    )
}

/// A term: coefficient numerator and denominator, then (base, exponents, power) factors.
type TermSpec = (i64, i64, Vec<(usize, Vec<u32>, u32)>);

fn term_strategy(n: usize, bases: usize, max_order: u32) -> impl Strategy<Value = TermSpec> {
    (
        -5i64..=5,
        1i64..=3,
        prop::collection::vec((0..bases, prop::collection::vec(0..=max_order, n), 1u32..=2), 0..=2),
    )
}

fn build(r: &Arc<RingConfig>, terms: &[TermSpec]) -> DiffPolynomial {
    let nvars = r.variables().len();
    let mut out = DiffPolynomial::zero(r);
    for (num, den, factors) in terms {
        let c = match Coeff::from_rational(r.field(), &BigRational::new((*num).into(), (*den).into())) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let factors = factors
            .iter()
            .map(|(b, e, k)| {
                let base = if *b < nvars { Base::Unknown(*b) } else { Base::Param(*b - nvars) };
                (DiffVariable::new(base, e.clone()), *k)
            })
            .collect();
        out = out.add(&DiffPolynomial::from_factors(r, c, factors)).unwrap();
    }
    out
}

fn poly_strategy(n: usize, bases: usize, max_order: u32) -> impl Strategy<Value = Vec<TermSpec>> {
    prop::collection::vec(term_strategy(n, bases, max_order), 0..=4)
}

fn ring_y(n: usize) -> Arc<RingConfig> {
    ring(n, &["y", "z"], &["u"], CoefficientField::Rationals)
}

fn variable_strategy() -> impl Strategy<Value = DiffVariable> {
    (0usize..3, prop::collection::vec(0u32..=3, 2))
        .prop_map(|(b, e)| DiffVariable::new(if b < 2 { Base::Unknown(b) } else { Base::Param(0) }, e))
}

fn is_reduced_by_definition(r: &DiffPolynomial, a: &AutoreducedSet) -> bool {
    a.members().iter().all(|m| {
        r.variables().iter().all(|v| !v.is_proper_derivative_of(&m.leader)) && r.degree_in(&m.leader) < m.degree
    })
}

fn rf_strategy() -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(-4i64..=4, 1..=3), prop::collection::vec(-3i64..=3, 1..=2)).prop_filter_map(
        "nonzero denominator",
        |(num, den)| {
            let p = |cs: &[i64]| MPoly::from_terms(1, cs.iter().enumerate().map(|(e, c)| (vec![e as u32], q(*c))));
            RationalFunction::new(p(&num), p(&den)).ok()
        },
    )
}

fn sigma_strategy() -> impl Strategy<Value = SigmaPoly> {
    prop::collection::vec(-6i64..=6, 0..=5).prop_map(|cs| SigmaPoly::from_ints(&cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivations_commute(spec in poly_strategy(2, 3, 2)) {
        let r = ring_y(2);
        let p = build(&r, &spec);
        prop_assert_eq!(p.derive(1).unwrap().derive(2).unwrap(), p.derive(2).unwrap().derive(1).unwrap());
    }

    #[test]
    fn leibniz_rule(a in poly_strategy(2, 3, 2), b in poly_strategy(2, 3, 2), i in 1usize..=2) {
        let r = ring_y(2);
        let (p, q) = (build(&r, &a), build(&r, &b));
        let lhs = p.mul(&q).unwrap().derive(i).unwrap();
        let rhs = p.derive(i).unwrap().mul(&q).unwrap().add(&p.mul(&q.derive(i).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_order_is_total_and_derivation_increases(
        a in variable_strategy(),
        b in variable_strategy(),
        c in variable_strategy(),
        i in 0usize..2,
    ) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a.cmp(&b) == std::cmp::Ordering::Equal, a == b);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        prop_assert!(a.derived(i) > a);
        prop_assert!(a.derived(i).rank() > a.rank());
    }

    #[test]
    fn leader_decomposition_reconstructs(spec in poly_strategy(1, 3, 2)) {
        let r = ring_y(1);
        let f = build(&r, &spec);
        prop_assume!(!f.unknowns().is_empty());
        let d = f.initial_separant().unwrap();
        let v = DiffPolynomial::variable(&r, d.leader.clone());
        let mut sum = DiffPolynomial::zero(&r);
        for (k, c) in d.coefficients.iter().enumerate() {
            sum = sum.add(&c.mul(&v.pow(k as u32)).unwrap()).unwrap();
        }
        prop_assert_eq!(&sum, &f);
        prop_assert_eq!(&d.initial, &f.coefficient_of(&d.leader, d.degree));
    }

    #[test]
    fn canonical_form_ignores_term_order(spec in poly_strategy(2, 3, 2)) {
        let r = ring_y(2);
        let forward = build(&r, &spec);
        let mut reversed = spec.clone();
        reversed.reverse();
        prop_assert_eq!(&forward, &build(&r, &reversed));
        prop_assert!(forward.sub(&build(&r, &reversed)).unwrap().is_zero());
    }

    #[test]
    fn frobenius_powers_are_constants(spec in poly_strategy(2, 2, 1), p in prop::sample::select(vec![2u64, 3, 5])) {
        let r = ring(2, &["y", "z"], &[], CoefficientField::PrimeField(p));
        let f = build(&r, &spec).pow(p as u32);
        prop_assert!(f.derive(1).unwrap().is_zero());
        prop_assert!(f.derive(2).unwrap().is_zero());
    }

    #[test]
    fn print_parse_round_trip(spec in poly_strategy(2, 3, 3), n in 0usize..=2) {
        let r = ring_y(n);
        let spec: Vec<TermSpec> = spec
            .into_iter()
            .map(|(a, b, fs)| (a, b, fs.into_iter().map(|(base, e, k)| (base, e[..n].to_vec(), k)).collect()))
            .collect();
        let f = build(&r, &spec);
        let text = f.to_string();
        prop_assert_eq!(parse_expression(&text, &r).unwrap(), f);
    }
}

/// Degree at most 2 with at most two terms: desk-scale input for characteristic sets.
fn small_poly_strategy() -> impl Strategy<Value = Vec<TermSpec>> {
    let factor = (0usize..1, prop::collection::vec(0u32..=2, 1), 1u32..=1);
    prop::collection::vec((-5i64..=5, 1i64..=3, prop::collection::vec(factor, 0..=2)), 0..=2)
}

fn singleton_strategy() -> impl Strategy<Value = (Vec<TermSpec>, Vec<TermSpec>)> {
    (poly_strategy(1, 2, 2), poly_strategy(1, 2, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_are_sound_and_idempotent((a_spec, g_spec) in singleton_strategy()) {
        let r = ring(1, &["y", "z"], &[], CoefficientField::Rationals);
        let f = build(&r, &a_spec);
        prop_assume!(!f.is_constant());
        let a = AutoreducedSet::new(&r, vec![f]).unwrap();
        let g = build(&r, &g_spec);
        let c = full_reduce(&g, &a).unwrap();
        prop_assert!(c.verify(&g, &a));
        prop_assert!(is_reduced_by_definition(&c.remainder, &a));
        let again = full_reduce(&c.remainder, &a).unwrap();
        prop_assert_eq!(&again.remainder, &c.remainder);
    }

    #[test]
    fn membership_is_closed_under_derivation(f_spec in poly_strategy(2, 1, 1), h_spec in poly_strategy(2, 1, 1)) {
        let r = ring(2, &["y"], &[], CoefficientField::Rationals);
        let f = build(&r, &f_spec);
        prop_assume!(!f.is_constant());
        let a = AutoreducedSet::new(&r, vec![f.clone()]).unwrap();
        let g = build(&r, &h_spec).mul(&f).unwrap();
        prop_assert!(membership(&g, &a).unwrap().is_member());
        for i in 1..=2 {
            prop_assert!(membership(&g.derive(i).unwrap(), &a).unwrap().is_member());
        }
    }

    #[test]
    fn characteristic_sets_absorb_inputs(specs in prop::collection::vec(small_poly_strategy(), 1..=2)) {
        let r = ring(1, &["y"], &[], CoefficientField::Rationals);
        let fs: Vec<_> = specs.iter().map(|s| build(&r, s)).filter(|f| !f.is_zero()).collect();
        prop_assume!(!fs.is_empty());
        match characteristic_set(&fs).unwrap() {
            CharacteristicSet::Set(a) => {
                prop_assert!(is_autoreduced(&a.polys()).autoreduced);
                for f in &fs {
                    prop_assert!(membership(f, &a).unwrap().is_member());
                }
            }
            CharacteristicSet::UnitIdeal { witness } => {
                prop_assert!(witness.is_constant() && !witness.is_zero());
            }
        }
    }

    #[test]
    fn witnesses_are_nonzero_and_deterministic((a_spec, b_spec) in singleton_strategy()) {
        let r = ring(1, &["y"], &["u"], CoefficientField::Rationals);
        let b = build(&r, &b_spec);
        if let Ok(w) = witness_transcendental(&b) {
            prop_assert!(!w.is_zero() && w.unknowns().is_empty());
            prop_assert_eq!(w, witness_transcendental(&b).unwrap());
        }
        let f = build(&r, &a_spec);
        prop_assume!(!f.unknowns().is_empty());
        let a = AutoreducedSet::new(&r, vec![f]).unwrap();
        if let Ok(w) = witness_algebraic(&a, &b) {
            prop_assert!(!w.is_zero() && w.unknowns().is_empty());
            prop_assert_eq!(&w, &witness_algebraic(&a, &b).unwrap());
            let pres = Presentation::new(&r, vec![a.polys()], b.clone()).unwrap();
            prop_assert_eq!(&witness_chain(&pres).unwrap(), &w);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parameter_derivative_is_a_derivation(a in rf_strategy(), b in rf_strategy(), c in -4i64..=4) {
        prop_assert_eq!(a.mul(&b).derive(0), a.derive(0).mul(&b).add(&a.mul(&b.derive(0))));
        let k = RationalFunction::constant(1, q(c));
        prop_assert_eq!(a.add(&k.mul(&b)).derive(0), a.derive(0).add(&k.mul(&b.derive(0))));
    }

    #[test]
    fn parameter_derivatives_commute(n in prop::collection::vec(-3i64..=3, 4), d in prop::collection::vec(-3i64..=3, 4)) {
        let p = |cs: &[i64]| MPoly::from_terms(
            2,
            [(vec![0, 0], q(cs[0])), (vec![1, 0], q(cs[1])), (vec![0, 1], q(cs[2])), (vec![1, 1], q(cs[3]))],
        );
        prop_assume!(!p(&d).is_zero());
        let f = RationalFunction::new(p(&n), p(&d)).unwrap();
        prop_assert_eq!(f.derive(0).derive(1), f.derive(1).derive(0));
    }

    #[test]
    fn wronskian_is_multilinear_and_alternating(
        f in rf_strategy(), g in rf_strategy(), h in rf_strategy(), c in -3i64..=3,
    ) {
        let k = RationalFunction::constant(1, q(c));
        let w = |a: &RationalFunction, b: &RationalFunction| wronskian(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(w(&f.add(&k.mul(&h)), &g), w(&f, &g).add(&k.mul(&w(&h, &g))));
        prop_assert_eq!(w(&g, &f), w(&f, &g).neg());
        prop_assert!(w(&f, &f).is_zero());
        prop_assert!(wronskian(&[f.clone(), g.clone(), f.add(&k.mul(&g))]).unwrap().is_zero());
    }

    #[test]
    fn sigma_is_an_involutive_automorphism(f in sigma_strategy(), g in sigma_strategy()) {
        prop_assert_eq!(sigma_apply(&f.add(&g)), sigma_apply(&f).add(&sigma_apply(&g)));
        prop_assert_eq!(sigma_apply(&f.mul(&g)), sigma_apply(&f).mul(&sigma_apply(&g)));
        prop_assert_eq!(sigma_apply(&sigma_apply(&f)), f);
    }

    #[test]
    fn fiber_follows_square_rule(a in -50i64..=50, b in 1i64..=50) {
        let n = BigRational::new(a.into(), b.into());
        let square = (0..=50i64).any(|s| (1..=50i64).any(|t| BigRational::new((s * s).into(), (t * t).into()) == n));
        prop_assert_eq!(fiber_nonempty(&n).nonempty, a == 0 || !square);
    }
}
