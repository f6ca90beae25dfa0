//! Randomized invariants: closure properties of homomorphisms and
//! congruences, quotient soundness, and term enumeration monotonicity.

use omega_rep::{
    congruence_closure, congruence_violation, endomorphisms, enumerate_terms, eval_term,
    factor_morphism_through_quotient, fixtures, generated_subalgebra, is_homomorphism,
    is_morphism, quotient_algebra, quotient_representation, ActorMode, Congruence, FiniteAlgebra,
    Mapping, RepMorphism, Representation, SigKind, Signature,
};
use proptest::collection::vec;
use proptest::prelude::*;

/// A random algebra with one binary operation on a carrier of 2..=4 elements.
fn binary_algebra() -> impl Strategy<Value = FiniteAlgebra> {
    (2usize..=4).prop_flat_map(|n| {
        vec(0..n, n * n).prop_map(move |table| {
            let sig = Signature::new(SigKind::Omega2, &[("op", 2)]).unwrap();
            FiniteAlgebra::new(sig, n, vec![table])
        })
    })
}

fn seed_pairs(max: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    vec((0..max, 0..max), 0..3)
}

/// A tabular representation whose actions are endomorphisms of `alg`,
/// selected by index from the full endomorphism monoid.
fn tabular_rep(alg: &FiniteAlgebra, picks: &[usize]) -> Representation {
    let endos = endomorphisms(alg).unwrap();
    let action: Vec<Mapping> = picks
        .iter()
        .map(|&i| endos[i % endos.len()].clone())
        .collect();
    let actor = fixtures::trivial_algebra(Signature::new(SigKind::Omega1, &[]).unwrap());
    Representation {
        actor: FiniteAlgebra::new(actor.sig, action.len(), vec![]),
        carrier: alg.clone(),
        action,
        mode: ActorMode::Tabular,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_is_endomorphism(alg in binary_algebra()) {
        let id = Mapping::identity(alg.size);
        prop_assert!(is_homomorphism(&id, &alg, &alg).unwrap().is_none());
    }

    #[test]
    fn endomorphisms_form_a_monoid(alg in binary_algebra()) {
        let endos = endomorphisms(&alg).unwrap();
        prop_assert!(endos.contains(&Mapping::identity(alg.size)));
        for g in &endos {
            for h in &endos {
                prop_assert!(endos.contains(&h.compose(g)));
            }
        }
    }

    #[test]
    fn quotient_projections_compose_to_homomorphisms(
        alg in binary_algebra(),
        raw1 in seed_pairs(4),
        raw2 in seed_pairs(4),
    ) {
        let pairs1: Vec<_> = raw1.iter().map(|&(x, y)| (x % alg.size, y % alg.size)).collect();
        let c1 = congruence_closure(&alg, &pairs1, &[]);
        let (q1, j1) = quotient_algebra(&alg, &c1).unwrap();
        let pairs2: Vec<_> = raw2.iter().map(|&(x, y)| (x % q1.size, y % q1.size)).collect();
        let c2 = congruence_closure(&q1, &pairs2, &[]);
        let (q2, j2) = quotient_algebra(&q1, &c2).unwrap();
        prop_assert!(is_homomorphism(&j2.compose(&j1), &alg, &q2).unwrap().is_none());
    }

    #[test]
    fn generated_subalgebra_idempotent_and_monotone(
        alg in binary_algebra(),
        raw_seed in vec(0usize..4, 0..3),
        extra in 0usize..4,
    ) {
        let seed: Vec<_> = raw_seed.iter().map(|&s| s % alg.size).collect();
        let closed = generated_subalgebra(&alg, &seed, &[]);
        prop_assert_eq!(generated_subalgebra(&alg, &closed, &[]), closed.clone());
        let mut larger = seed.clone();
        larger.push(extra % alg.size);
        let superset = generated_subalgebra(&alg, &larger, &[]);
        prop_assert!(closed.iter().all(|x| superset.contains(x)));
    }

    #[test]
    fn congruence_closure_idempotent(
        alg in binary_algebra(),
        raw in seed_pairs(4),
        picks in vec(0usize..24, 0..2),
    ) {
        let endos = endomorphisms(&alg).unwrap();
        let transforms: Vec<Mapping> =
            picks.iter().map(|&i| endos[i % endos.len()].clone()).collect();
        let pairs: Vec<_> = raw.iter().map(|&(x, y)| (x % alg.size, y % alg.size)).collect();
        let cong = congruence_closure(&alg, &pairs, &transforms);
        prop_assert!(congruence_violation(&alg, &cong).is_none());
        let again = congruence_closure(&alg, &cong.pairs(), &transforms);
        prop_assert_eq!(again, cong);
    }

    #[test]
    fn quotient_representation_intertwines(
        alg in binary_algebra(),
        picks in vec(0usize..24, 1..3),
        raw in seed_pairs(4),
    ) {
        let rep = tabular_rep(&alg, &picks);
        let pairs: Vec<_> = raw.iter().map(|&(x, y)| (x % alg.size, y % alg.size)).collect();
        let cong = congruence_closure(&alg, &pairs, &rep.action);
        let (induced, projection) = quotient_representation(&rep, &cong).unwrap();
        prop_assert!(is_morphism(&projection, &rep, &induced).unwrap().is_none());
        for a in 0..rep.action.len() {
            for x in 0..alg.size {
                prop_assert_eq!(
                    induced.action[a].apply(projection.big_r.apply(x)),
                    projection.big_r.apply(rep.action[a].apply(x))
                );
            }
        }
    }

    #[test]
    fn rep_morphisms_compose(
        alg in binary_algebra(),
        picks in vec(0usize..24, 1..3),
        raw1 in seed_pairs(4),
        raw2 in seed_pairs(4),
    ) {
        let rep = tabular_rep(&alg, &picks);
        let pairs1: Vec<_> = raw1.iter().map(|&(x, y)| (x % alg.size, y % alg.size)).collect();
        let c1 = congruence_closure(&alg, &pairs1, &rep.action);
        let (mid, m1) = quotient_representation(&rep, &c1).unwrap();
        let pairs2: Vec<_> =
            raw2.iter().map(|&(x, y)| (x % mid.carrier.size, y % mid.carrier.size)).collect();
        let c2 = congruence_closure(&mid.carrier, &pairs2, &mid.action);
        let (end, m2) = quotient_representation(&mid, &c2).unwrap();
        let composed = RepMorphism {
            r: m2.r.compose(&m1.r),
            big_r: m2.big_r.compose(&m1.big_r),
        };
        prop_assert!(is_morphism(&composed, &rep, &end).unwrap().is_none());
    }

    #[test]
    fn morphism_factors_uniquely_through_quotient(
        alg in binary_algebra(),
        picks in vec(0usize..24, 1..3),
        raw in seed_pairs(4),
    ) {
        let rep = tabular_rep(&alg, &picks);
        let pairs: Vec<_> = raw.iter().map(|&(x, y)| (x % alg.size, y % alg.size)).collect();
        let cong = congruence_closure(&alg, &pairs, &rep.action);
        let (induced, projection) = quotient_representation(&rep, &cong).unwrap();
        // the projection itself factors through its own quotient: kernel
        // equals the congruence, so the factored map is the identity class map
        let h = factor_morphism_through_quotient(&projection, &rep, &induced, &cong).unwrap();
        prop_assert_eq!(h.big_r.clone(), Mapping::identity(induced.carrier.size));
        for x in 0..alg.size {
            prop_assert_eq!(
                h.big_r.apply(cong.class_index(x)),
                projection.big_r.apply(x)
            );
        }
    }

    #[test]
    fn term_enumeration_monotone(gens in 0usize..=2, depth in 0usize..=2) {
        let sig = fixtures::group_signature();
        let shallow = enumerate_terms(&sig, gens, &[], depth).unwrap();
        let deep = enumerate_terms(&sig, gens, &[], depth + 1).unwrap();
        for t in &shallow {
            prop_assert!(deep.contains(t));
        }
    }

    #[test]
    fn enumerated_terms_evaluate(gens in 1usize..=2, assign in vec(0usize..3, 2)) {
        let rep = fixtures::scal(3);
        let terms = enumerate_terms(&rep.carrier.sig, gens, &[0, 1], 2).unwrap();
        for t in &terms {
            prop_assert!(eval_term(&rep.carrier, t, &assign[..gens], Some(&rep)).is_ok());
        }
    }

    #[test]
    fn closure_is_least_on_small_carriers(
        alg in binary_algebra(),
        raw in seed_pairs(4),
    ) {
        let pairs: Vec<_> = raw.iter().map(|&(x, y)| (x % alg.size, y % alg.size)).collect();
        let cong = congruence_closure(&alg, &pairs, &[]);
        for candidate in Congruence::all_partitions(alg.size) {
            let contains_seed = pairs.iter().all(|&(x, y)| candidate.same(x, y));
            if contains_seed && congruence_violation(&alg, &candidate).is_none() {
                prop_assert!(cong.refines(&candidate));
            }
        }
    }
}

#[test]
fn every_fixture_action_is_an_endomorphism() {
    for n in 2..=4 {
        let rep = fixtures::scal(n);
        let endos = endomorphisms(&rep.carrier).unwrap();
        for h in &rep.action {
            assert!(endos.contains(h));
        }
    }
}
