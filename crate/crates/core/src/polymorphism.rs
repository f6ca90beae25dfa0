//! Exhaustive verification of polymorphisms and reduced polymorphisms of
//! representations, the identity-element bridge, and action commutation.
//!
//! All checkers freeze every variable except one slot and scan the frozen
//! tuples exhaustively; witnesses are the lexicographically least
//! counterexamples.

use crate::algebra::TupleIter;
use crate::error::{Error, Result};
use crate::representation::Representation;

/// A total map from a product of finite carriers into a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMap {
    pub src_sizes: Vec<usize>,
    pub dst_size: usize,
    pub values: Vec<usize>,
}

impl MultiMap {
    pub fn new(src_sizes: Vec<usize>, dst_size: usize, values: Vec<usize>) -> MultiMap {
        MultiMap {
            src_sizes,
            dst_size,
            values,
        }
    }

    pub fn arity(&self) -> usize {
        self.src_sizes.len()
    }

    pub fn get(&self, tuple: &[usize]) -> usize {
        let mut idx = 0;
        for (i, &t) in tuple.iter().enumerate() {
            idx = idx * self.src_sizes[i] + t;
        }
        self.values[idx]
    }

    pub fn is_valid(&self) -> bool {
        self.values.len() == self.src_sizes.iter().product::<usize>()
            && self.values.iter().all(|&v| v < self.dst_size)
    }

    pub fn tuples(&self) -> TupleIter {
        TupleIter::new(self.src_sizes.clone())
    }
}

/// The least failing instance of one equation family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyWitness {
    /// The action equation `R(f_1(a_1) x_1, ..) = f(r(a))(R(x))`; for the
    /// full form `slot` is the least slot whose action is not the identity
    /// in the failing instance, for the reduced form the substituted slot.
    Action {
        slot: usize,
        actors: Vec<usize>,
        carriers: Vec<usize>,
    },
    /// The slot-k Ω₁ equation: the r-section is not an Ω₁-homomorphism.
    Omega1 {
        slot: usize,
        op: String,
        actors: Vec<usize>,
        args: Vec<usize>,
    },
    /// The slot-k Ω₂ equation: the R-section is not an Ω₂-homomorphism.
    Omega2 {
        slot: usize,
        op: String,
        carriers: Vec<usize>,
        args: Vec<usize>,
    },
}

/// Itemized verification of the three slot-wise equation families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotwiseReport {
    pub action_family: Option<PolyWitness>,
    /// `None` field-wise means pass; for reduced checks r is absent and the
    /// Ω₁ family is vacuous.
    pub omega1_family: Option<PolyWitness>,
    pub omega2_family: Option<PolyWitness>,
}

impl SlotwiseReport {
    pub fn all_pass(&self) -> bool {
        self.action_family.is_none()
            && self.omega1_family.is_none()
            && self.omega2_family.is_none()
    }
}

fn check_poly_dims(
    r: Option<&MultiMap>,
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Result<()> {
    let n = reps.len();
    if big_r.arity() != n || !big_r.is_valid() {
        return Err(Error::DimensionMismatch(format!(
            "carrier map arity {} against {n} representations",
            big_r.arity()
        )));
    }
    for (k, rep) in reps.iter().enumerate() {
        if big_r.src_sizes[k] != rep.carrier.size {
            return Err(Error::DimensionMismatch(format!(
                "slot {k}: carrier map expects size {}, representation carrier has {}",
                big_r.src_sizes[k], rep.carrier.size
            )));
        }
        if rep.carrier.sig != target.carrier.sig {
            return Err(Error::SignatureMismatch);
        }
    }
    if big_r.dst_size != target.carrier.size {
        return Err(Error::DimensionMismatch(format!(
            "carrier map lands in {}, target carrier has {}",
            big_r.dst_size, target.carrier.size
        )));
    }
    if let Some(r) = r {
        if r.arity() != n || !r.is_valid() || r.dst_size != target.actor.size {
            return Err(Error::DimensionMismatch(
                "actor map does not match the representations".into(),
            ));
        }
        for (k, rep) in reps.iter().enumerate() {
            if r.src_sizes[k] != rep.actor.size {
                return Err(Error::DimensionMismatch(format!(
                    "slot {k}: actor map expects size {}, representation actor has {}",
                    r.src_sizes[k], rep.actor.size
                )));
            }
            if rep.actor.sig != target.actor.sig {
                return Err(Error::SignatureMismatch);
            }
        }
    }
    Ok(())
}

fn check_ak_family(
    r: &MultiMap,
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Option<PolyWitness> {
    let n = reps.len();
    for actors in TupleIter::new(r.src_sizes.clone()) {
        let image = r.get(&actors);
        for carriers in big_r.tuples() {
            let substituted: Vec<usize> = (0..n)
                .map(|k| reps[k].action[actors[k]].apply(carriers[k]))
                .collect();
            let lhs = big_r.get(&substituted);
            let rhs = target.action[image].apply(big_r.get(&carriers));
            if lhs != rhs {
                let slot = (0..n)
                    .find(|&k| {
                        let m = &reps[k].action[actors[k]];
                        (0..reps[k].carrier.size).any(|x| m.apply(x) != x)
                    })
                    .unwrap_or(0);
                return Some(PolyWitness::Action {
                    slot,
                    actors,
                    carriers,
                });
            }
        }
    }
    None
}

fn check_reduced_ak_family(
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Option<PolyWitness> {
    let n = reps.len();
    for k in 0..n {
        for a in 0..target.actor.size {
            for carriers in big_r.tuples() {
                let mut substituted = carriers.clone();
                substituted[k] = reps[k].action[a].apply(carriers[k]);
                let lhs = big_r.get(&substituted);
                let rhs = target.action[a].apply(big_r.get(&carriers));
                if lhs != rhs {
                    return Some(PolyWitness::Action {
                        slot: k,
                        actors: vec![a],
                        carriers,
                    });
                }
            }
        }
    }
    None
}

fn check_omega1_family(
    r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Option<PolyWitness> {
    let n = reps.len();
    for k in 0..n {
        for actors in TupleIter::new(r.src_sizes.clone()) {
            // slot k is the variable; skip non-base values of it to visit
            // each frozen assignment once
            if actors[k] != 0 {
                continue;
            }
            for (i, op) in target.actor.sig.ops.iter().enumerate() {
                // constants are exempt: a section with a frozen absorbing
                // value cannot preserve them, and the action family already
                // pins the unit
                if op.arity == 0 {
                    continue;
                }
                for args in TupleIter::new(vec![reps[k].actor.size; op.arity]) {
                    let mut with_op = actors.clone();
                    with_op[k] = reps[k].actor.apply(i, &args);
                    let lhs = r.get(&with_op);
                    let mapped: Vec<usize> = args
                        .iter()
                        .map(|&b| {
                            let mut t = actors.clone();
                            t[k] = b;
                            r.get(&t)
                        })
                        .collect();
                    let rhs = target.actor.apply(i, &mapped);
                    if lhs != rhs {
                        return Some(PolyWitness::Omega1 {
                            slot: k,
                            op: op.name.clone(),
                            actors,
                            args,
                        });
                    }
                }
            }
        }
    }
    None
}

fn check_omega2_family(
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Option<PolyWitness> {
    let n = reps.len();
    for k in 0..n {
        for carriers in big_r.tuples() {
            if carriers[k] != 0 {
                continue;
            }
            for (i, op) in target.carrier.sig.ops.iter().enumerate() {
                for args in TupleIter::new(vec![reps[k].carrier.size; op.arity]) {
                    let mut with_op = carriers.clone();
                    with_op[k] = reps[k].carrier.apply(i, &args);
                    let lhs = big_r.get(&with_op);
                    let mapped: Vec<usize> = args
                        .iter()
                        .map(|&y| {
                            let mut t = carriers.clone();
                            t[k] = y;
                            big_r.get(&t)
                        })
                        .collect();
                    let rhs = target.carrier.apply(i, &mapped);
                    if lhs != rhs {
                        return Some(PolyWitness::Omega2 {
                            slot: k,
                            op: op.name.clone(),
                            carriers,
                            args,
                        });
                    }
                }
            }
        }
    }
    None
}

/// True iff freezing all slots but one always yields a morphism of
/// representations; the witness is the least failing equation instance.
pub fn is_polymorphism(
    r: &MultiMap,
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Result<Option<PolyWitness>> {
    let report = check_slotwise_equations(Some(r), big_r, reps, target)?;
    Ok(report
        .action_family
        .or(report.omega1_family)
        .or(report.omega2_family))
}

/// Reduced polymorphism check: `r = id` forces one common actor algebra.
pub fn is_reduced_polymorphism(
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Result<Option<PolyWitness>> {
    for rep in reps {
        if rep.actor != target.actor {
            return Err(Error::ActorMismatch);
        }
    }
    check_poly_dims(None, big_r, reps, target)?;
    if let Some(w) = check_omega2_family(big_r, reps, target) {
        return Ok(Some(w));
    }
    Ok(check_reduced_ak_family(big_r, reps, target))
}

/// Itemized per-family verification; `is_polymorphism` is true iff all
/// families pass. With `r` absent the reduced families are checked.
pub fn check_slotwise_equations(
    r: Option<&MultiMap>,
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Result<SlotwiseReport> {
    check_poly_dims(r, big_r, reps, target)?;
    match r {
        Some(r) => Ok(SlotwiseReport {
            action_family: check_ak_family(r, big_r, reps, target),
            omega1_family: check_omega1_family(r, reps, target),
            omega2_family: check_omega2_family(big_r, reps, target),
        }),
        None => {
            for rep in reps {
                if rep.actor != target.actor {
                    return Err(Error::ActorMismatch);
                }
            }
            Ok(SlotwiseReport {
                action_family: check_reduced_ak_family(big_r, reps, target),
                omega1_family: None,
                omega2_family: check_omega2_family(big_r, reps, target),
            })
        }
    }
}

/// Scans the actor for the least element acting as the identity
/// transformation. In monoid mode the unit must act as the identity.
pub fn identity_element(rep: &Representation) -> Result<Option<usize>> {
    let id = crate::algebra::Mapping::identity(rep.carrier.size);
    if let crate::representation::ActorMode::Monoid { .. } = rep.mode {
        let unit = rep.unit_element()?;
        if rep.action[unit] != id {
            return Err(Error::MonoidUnitMismatch);
        }
    }
    Ok((0..rep.actor.size).find(|&a| rep.action[a] == id))
}

/// Report of the conditions bridging the two polymorphism forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeReport {
    /// The common identity element when condition (a) holds.
    pub identity: Option<usize>,
    /// Why condition (a) failed: which representation lacks or disagrees on e.
    pub identity_failure: Option<String>,
    /// Condition (b) witness: (slot, element) where r(e,..,a,..,e) != a.
    pub unit_slot_failure: Option<(usize, usize)>,
    /// Condition (c) witness: (slot, element, carrier tuple) where the
    /// specialized action equation differs from the reduced one.
    pub specialization_failure: Option<(usize, usize, Vec<usize>)>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.identity.is_some()
            && self.unit_slot_failure.is_none()
            && self.specialization_failure.is_none()
    }
}

/// Verifies the two requirements that let a polymorphism specialize to a
/// reduced one: a common identity element e with `f(e) = δ`, the slot
/// condition `r(e,..,a,..,e) = a`, and the coincidence of the specialized
/// action equation with the reduced action equation.
pub fn check_bridge(
    r: &MultiMap,
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Result<BridgeReport> {
    check_poly_dims(Some(r), big_r, reps, target)?;
    let mut report = BridgeReport {
        identity: None,
        identity_failure: None,
        unit_slot_failure: None,
        specialization_failure: None,
    };
    let mut common = None;
    for (k, rep) in reps.iter().enumerate() {
        match identity_element(rep)? {
            None => {
                report.identity_failure =
                    Some(format!("representation in slot {k} has no identity element"));
                return Ok(report);
            }
            Some(e) => match common {
                None => common = Some(e),
                Some(c) if c != e => {
                    report.identity_failure = Some(format!(
                        "slot {k} has identity element {e}, earlier slots have {c}"
                    ));
                    return Ok(report);
                }
                _ => {}
            },
        }
    }
    let e = match (common, identity_element(target)?) {
        (Some(e), Some(et)) if e == et => e,
        (Some(e), Some(et)) => {
            report.identity_failure = Some(format!(
                "target identity element {et} differs from factor identity {e}"
            ));
            return Ok(report);
        }
        _ => {
            report.identity_failure = Some("target has no identity element".into());
            return Ok(report);
        }
    };
    report.identity = Some(e);
    let n = reps.len();
    'unit: for k in 0..n {
        for a in 0..reps[k].actor.size {
            let mut tuple = vec![e; n];
            tuple[k] = a;
            if r.get(&tuple) != a {
                report.unit_slot_failure = Some((k, a));
                break 'unit;
            }
        }
    }
    'spec: for k in 0..n {
        for a in 0..reps[k].actor.size {
            let mut tuple = vec![e; n];
            tuple[k] = a;
            let specialized = r.get(&tuple);
            // a lives in the slot-k actor; the reduced equation only makes
            // sense when it also names a target actor element
            if a >= target.actor.size {
                report.specialization_failure = Some((k, a, vec![0; n]));
                break 'spec;
            }
            for carriers in big_r.tuples() {
                let v = big_r.get(&carriers);
                if target.action[specialized].apply(v) != target.action[a].apply(v) {
                    report.specialization_failure = Some((k, a, carriers));
                    break 'spec;
                }
            }
        }
    }
    Ok(report)
}

/// Witness of an action-commutation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationWitness {
    pub slot_k: usize,
    pub slot_l: usize,
    pub a: usize,
    pub b: usize,
    pub carriers: Vec<usize>,
}

/// For a reduced polymorphism, extracting actions from two distinct slots in
/// either order must produce the same composite on R.
pub fn check_action_commutation(
    big_r: &MultiMap,
    reps: &[&Representation],
    target: &Representation,
) -> Result<Option<CommutationWitness>> {
    if is_reduced_polymorphism(big_r, reps, target)?.is_some() {
        return Err(Error::NotAReducedPolymorphism);
    }
    let n = reps.len();
    for k in 0..n {
        for l in 0..n {
            if k == l {
                continue;
            }
            for a in 0..target.actor.size {
                for b in 0..target.actor.size {
                    for carriers in big_r.tuples() {
                        let v = big_r.get(&carriers);
                        let k_first = target.action[a].apply(target.action[b].apply(v));
                        let l_first = target.action[b].apply(target.action[a].apply(v));
                        if k_first != l_first {
                            return Ok(Some(CommutationWitness {
                                slot_k: k,
                                slot_l: l,
                                a,
                                b,
                                carriers,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Mapping;
    use crate::fixtures;

    fn mul_z2() -> MultiMap {
        MultiMap::new(vec![2, 2], 2, vec![0, 0, 0, 1])
    }

    fn add_z2() -> MultiMap {
        MultiMap::new(vec![2, 2], 2, vec![0, 1, 1, 0])
    }

    fn proj1_z2() -> MultiMap {
        MultiMap::new(vec![2, 2], 2, vec![0, 0, 1, 1])
    }

    #[test]
    fn unary_identity_is_polymorphism() {
        let scal2 = fixtures::scal(2);
        let r = MultiMap::new(vec![2], 2, vec![0, 1]);
        let big_r = MultiMap::new(vec![2], 2, vec![0, 1]);
        assert!(is_polymorphism(&r, &big_r, &[&scal2], &scal2)
            .unwrap()
            .is_none());
    }

    #[test]
    fn monoid_multiplication_is_polymorphism() {
        let scal2 = fixtures::scal(2);
        let r = MultiMap::new(vec![2, 2], 2, vec![0, 0, 0, 1]);
        assert!(
            is_polymorphism(&r, &mul_z2(), &[&scal2, &scal2], &scal2)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn addition_fails_action_family() {
        let scal2 = fixtures::scal(2);
        let r = MultiMap::new(vec![2, 2], 2, vec![0, 0, 0, 1]);
        let w = is_polymorphism(&r, &add_z2(), &[&scal2, &scal2], &scal2)
            .unwrap()
            .unwrap();
        assert!(matches!(w, PolyWitness::Action { .. }));
    }

    #[test]
    fn multiplication_is_reduced_polymorphism() {
        let scal2 = fixtures::scal(2);
        assert!(
            is_reduced_polymorphism(&mul_z2(), &[&scal2, &scal2], &scal2)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn projection_fails_slot_two_omega2_clause() {
        let scal2 = fixtures::scal(2);
        let w = is_reduced_polymorphism(&proj1_z2(), &[&scal2, &scal2], &scal2)
            .unwrap()
            .unwrap();
        match w {
            PolyWitness::Omega2 { slot, ref op, .. } => {
                assert_eq!(slot, 1);
                assert_eq!(op, "add");
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn zero_map_is_reduced_polymorphism_of_any_arity() {
        let scal2 = fixtures::scal(2);
        for arity in 1..=3 {
            let sizes = vec![2usize; arity];
            let total: usize = sizes.iter().product();
            let zero = MultiMap::new(sizes, 2, vec![0; total]);
            let reps: Vec<&crate::representation::Representation> =
                std::iter::repeat(&scal2).take(arity).collect();
            assert!(is_reduced_polymorphism(&zero, &reps, &scal2)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn slotwise_report_agrees_with_is_polymorphism() {
        let scal2 = fixtures::scal(2);
        let r = MultiMap::new(vec![2, 2], 2, vec![0, 0, 0, 1]);
        let report =
            check_slotwise_equations(Some(&r), &mul_z2(), &[&scal2, &scal2], &scal2).unwrap();
        assert!(report.all_pass());
        let report =
            check_slotwise_equations(Some(&r), &add_z2(), &[&scal2, &scal2], &scal2).unwrap();
        assert!(report.action_family.is_some());
        // the translation x + 1 is not additive, so addition also fails
        // the slot-wise carrier clause
        assert!(report.omega2_family.is_some());
        assert!(report.omega1_family.is_none());
    }

    #[test]
    fn identity_element_of_scal2() {
        assert_eq!(identity_element(&fixtures::scal(2)).unwrap(), Some(1));
    }

    #[test]
    fn no_identity_element_when_all_actions_constant() {
        let mut rep = fixtures::scal(2);
        rep.action[1] = Mapping::new(2, 2, vec![0, 0]);
        rep.mode = crate::representation::ActorMode::Tabular;
        assert_eq!(identity_element(&rep).unwrap(), None);
    }

    #[test]
    fn monoid_unit_mismatch_detected() {
        let mut rep = fixtures::scal(2);
        rep.action[1] = Mapping::new(2, 2, vec![0, 0]);
        assert_eq!(
            identity_element(&rep).unwrap_err(),
            Error::MonoidUnitMismatch
        );
    }

    #[test]
    fn trivial_rep_identity_is_least_index() {
        let rep = fixtures::trivial_rep(fixtures::bool_monoid(), fixtures::zn(2));
        assert_eq!(identity_element(&rep).unwrap(), Some(0));
    }

    #[test]
    fn bridge_passes_for_monoid_multiplication() {
        let scal2 = fixtures::scal(2);
        let r = MultiMap::new(vec![2, 2], 2, vec![0, 0, 0, 1]);
        let report = check_bridge(&r, &mul_z2(), &[&scal2, &scal2], &scal2).unwrap();
        assert!(report.passed());
        assert_eq!(report.identity, Some(1));
    }

    #[test]
    fn constant_r_fails_unit_slot_condition() {
        let scal2 = fixtures::scal(2);
        let r = MultiMap::new(vec![2, 2], 2, vec![0, 0, 0, 0]);
        let report = check_bridge(&r, &mul_z2(), &[&scal2, &scal2], &scal2).unwrap();
        assert_eq!(report.unit_slot_failure, Some((0, 1)));
    }

    #[test]
    fn bridge_fails_without_identity_element() {
        let mut rep = fixtures::scal(2);
        rep.action[1] = Mapping::new(2, 2, vec![0, 0]);
        rep.mode = crate::representation::ActorMode::Tabular;
        let r = MultiMap::new(vec![2, 2], 2, vec![0, 0, 0, 1]);
        let report = check_bridge(&r, &mul_z2(), &[&rep, &rep], &rep).unwrap();
        assert!(report.identity_failure.is_some());
    }

    #[test]
    fn commutation_holds_for_multiplication() {
        let scal2 = fixtures::scal(2);
        assert!(
            check_action_commutation(&mul_z2(), &[&scal2, &scal2], &scal2)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn commutation_guards_its_precondition() {
        let scal2 = fixtures::scal(2);
        let err = check_action_commutation(&proj1_z2(), &[&scal2, &scal2], &scal2).unwrap_err();
        assert_eq!(err, Error::NotAReducedPolymorphism);
    }

    #[test]
    fn monoid_product_map_fixture_matches_multiplication() {
        let actor = fixtures::bool_monoid();
        let r = fixtures::monoid_product_map(&actor, "mul", "one", 2);
        assert_eq!(r.values, vec![0, 0, 0, 1]);
    }
}
