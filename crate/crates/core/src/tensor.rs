//! Constructive tensor product of representations: term saturation over the
//! product generators modulo the generated congruence, the induced
//! representation, the canonical reduced polymorphism on generators, and the
//! universal factorization.

use crate::algebra::{FiniteAlgebra, Mapping, TupleCodec, TupleIter};
use crate::congruence::UnionFind;
use crate::error::{Error, Result};
use crate::polymorphism::{is_reduced_polymorphism, MultiMap};
use crate::representation::{
    is_morphism, validate_representation, ActorMode, RepMorphism, Representation,
};
use crate::signature::{term_budget, Term};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorBudgets {
    pub depth: usize,
    pub classes: usize,
}

impl Default for TensorBudgets {
    fn default() -> TensorBudgets {
        TensorBudgets {
            depth: 4,
            classes: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorStatus {
    Complete,
    Truncated { depth: usize, classes: usize },
}

/// The quotient M/N with its induced representation, the generator-class map
/// g1, the canonical term of every class, and the saturation status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorResult {
    pub quotient: FiniteAlgebra,
    pub induced: Representation,
    pub gen_map: MultiMap,
    pub status: TensorStatus,
    /// Least term of each class under the canonical term order; index =
    /// quotient element.
    pub class_terms: Vec<Term>,
    /// The factor representations the product was built from.
    pub factors: Vec<Representation>,
    pub codec: TupleCodec,
}

impl TensorResult {
    pub fn is_complete(&self) -> bool {
        self.status == TensorStatus::Complete
    }
}

/// The class of the generator tuple d1 ⊗ ... ⊗ dn. Generator classes are
/// materialized even in truncated results.
pub fn tensor_element(result: &TensorResult, tuple: &[usize]) -> Result<usize> {
    if tuple.len() != result.gen_map.arity()
        || tuple
            .iter()
            .zip(&result.gen_map.src_sizes)
            .any(|(&t, &s)| t >= s)
    {
        return Err(Error::DimensionMismatch(format!(
            "tuple {tuple:?} against factor sizes {:?}",
            result.gen_map.src_sizes
        )));
    }
    Ok(result.gen_map.get(tuple))
}

/// Tensor power: the tensor product of n copies of one representation.
pub fn tensor_power(rep: &Representation, n: usize, budgets: TensorBudgets) -> Result<TensorResult> {
    let reps: Vec<&Representation> = std::iter::repeat(rep).take(n).collect();
    tensor_product(&reps, budgets)
}

struct Saturation {
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
    uf: UnionFind,
}

impl Saturation {
    fn intern(&mut self, t: Term) -> usize {
        if let Some(&i) = self.index.get(&t) {
            return i;
        }
        let i = self.terms.len();
        self.index.insert(t.clone(), i);
        self.terms.push(t);
        self.uf.push();
        i
    }

    fn lookup(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Classes keyed by root, each holding its least member term.
    fn class_reps(&mut self) -> Vec<(usize, Term)> {
        let mut best: HashMap<usize, Term> = HashMap::new();
        for i in 0..self.terms.len() {
            let root = self.uf.find(i);
            let t = &self.terms[i];
            match best.get(&root) {
                Some(b) if b <= t => {}
                _ => {
                    best.insert(root, t.clone());
                }
            }
        }
        let mut out: Vec<(usize, Term)> = best.into_iter().collect();
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }

    /// Ground congruence closure: equal arguments force equal applications.
    fn close(&mut self) {
        loop {
            let mut changed = false;
            let mut sigs: HashMap<(u8, String, usize, Vec<usize>), usize> = HashMap::new();
            for i in 0..self.terms.len() {
                let key = match self.terms[i].clone() {
                    Term::Gen(_) => continue,
                    Term::Apply(op, args) => {
                        let arg_roots: Vec<usize> = args
                            .iter()
                            .map(|a| {
                                let idx = self.lookup(a).expect("subterm interned");
                                self.uf.find(idx)
                            })
                            .collect();
                        (1u8, op, 0usize, arg_roots)
                    }
                    Term::Act(c, arg) => {
                        let idx = self.lookup(&arg).expect("subterm interned");
                        (2u8, String::new(), c, vec![self.uf.find(idx)])
                    }
                };
                match sigs.get(&key) {
                    Some(&j) => {
                        if self.uf.union(i, j) {
                            changed = true;
                        }
                    }
                    None => {
                        sigs.insert(key, i);
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
}

/// Builds the tensor product of representations by saturating the ground
/// term universe over the generator tuples modulo the congruence generated by
/// the slot-wise linearity and action-extraction relations.
pub fn tensor_product(reps: &[&Representation], budgets: TensorBudgets) -> Result<TensorResult> {
    if reps.is_empty() {
        return Err(Error::EmptyList);
    }
    let actor = &reps[0].actor;
    let (mul_name, _unit_name) = match &reps[0].mode {
        ActorMode::Monoid { mul, unit } => (mul.clone(), unit.clone()),
        ActorMode::Tabular => return Err(Error::NotMonoidMode),
    };
    for rep in reps {
        if rep.actor != *actor || rep.mode != reps[0].mode {
            return Err(Error::ActorMismatch);
        }
        if rep.carrier.sig != reps[0].carrier.sig {
            return Err(Error::SignatureMismatch);
        }
        if let ActorMode::Tabular = rep.mode {
            return Err(Error::NotMonoidMode);
        }
    }
    let carrier_sig = reps[0].carrier.sig.clone();
    let unit = reps[0].unit_element()?;
    let mul = actor.sig.op_index(&mul_name)?;
    let codec = TupleCodec {
        sizes: reps.iter().map(|r| r.carrier.size).collect(),
    };
    let gen_count = codec.total();
    let budget = term_budget();

    let mut sat = Saturation {
        terms: Vec::new(),
        index: HashMap::new(),
        uf: UnionFind::new(0),
    };
    for g in 0..gen_count {
        sat.intern(Term::Gen(g));
    }
    for op in &carrier_sig.ops {
        if op.arity == 0 {
            sat.intern(Term::Apply(op.name.clone(), vec![]));
        }
    }

    // Relation family 1: slot-wise linearity. For each operation, slot, and
    // argument choice, the generator tuple with the operation applied inside
    // slot k equals the operation applied to the slot-substituted tuples.
    // Family 2: applying the k-th factor action inside slot k equals the
    // actor element acting on the tuple.
    let mut relations: Vec<(usize, usize)> = Vec::new();
    for k in 0..reps.len() {
        let frozen_sizes: Vec<usize> = codec.sizes.clone();
        for tuple in TupleIter::new(frozen_sizes) {
            if tuple[k] != 0 {
                continue;
            }
            for (i, op) in carrier_sig.ops.iter().enumerate() {
                for args in TupleIter::new(vec![reps[k].carrier.size; op.arity]) {
                    let mut inner = tuple.clone();
                    inner[k] = reps[k].carrier.apply(i, &args);
                    let lhs = sat.intern(Term::Gen(codec.encode(&inner)));
                    let sub_terms: Vec<Term> = args
                        .iter()
                        .map(|&y| {
                            let mut t = tuple.clone();
                            t[k] = y;
                            Term::Gen(codec.encode(&t))
                        })
                        .collect();
                    let rhs = sat.intern(Term::Apply(op.name.clone(), sub_terms));
                    relations.push((lhs, rhs));
                }
            }
            for c in 0..actor.size {
                for x in 0..reps[k].carrier.size {
                    let mut base = tuple.clone();
                    base[k] = x;
                    let mut acted = tuple.clone();
                    acted[k] = reps[k].action[c].apply(x);
                    let lhs = sat.intern(Term::Gen(codec.encode(&acted)));
                    let base_term = Term::Gen(codec.encode(&base));
                    let rhs = sat.intern(Term::Act(c, Box::new(base_term)));
                    relations.push((lhs, rhs));
                }
            }
        }
    }
    for (x, y) in relations {
        sat.uf.union(x, y);
    }
    sat.close();

    // Saturation loop: each round applies every operation and action to the
    // current class representatives, adds the monoid action laws on them,
    // and closes again. Completeness certificate: a round that adds no new
    // class while every application already lands in the universe.
    let mut status = None;
    for round in 0..=budgets.depth {
        let reps_now = sat.class_reps();
        let class_count = reps_now.len();
        if class_count > budgets.classes {
            status = Some(TensorStatus::Truncated {
                depth: round,
                classes: class_count,
            });
            break;
        }
        if sat.terms.len() > budget {
            return Err(Error::BudgetExceeded(format!(
                "tensor term universe exceeds {budget} terms"
            )));
        }
        let mut all_present = true;
        let mut new_terms: Vec<Term> = Vec::new();
        for op in &carrier_sig.ops {
            if op.arity == 0 {
                continue;
            }
            for idx in TupleIter::new(vec![class_count; op.arity]) {
                let args: Vec<Term> = idx.iter().map(|&i| reps_now[i].1.clone()).collect();
                let t = Term::Apply(op.name.clone(), args);
                if sat.lookup(&t).is_none() {
                    all_present = false;
                    new_terms.push(t);
                }
            }
        }
        for c in 0..actor.size {
            for (_, rep_term) in &reps_now {
                let t = Term::Act(c, Box::new(rep_term.clone()));
                if sat.lookup(&t).is_none() {
                    all_present = false;
                    new_terms.push(t.clone());
                }
                // monoid action laws on representatives
                let unit_term = Term::Act(unit, Box::new(rep_term.clone()));
                if sat.lookup(&unit_term).is_none() {
                    new_terms.push(unit_term);
                }
            }
        }
        if all_present {
            // the universe is operation-closed; one more closure pass below
            // confirms no further merges, so the class set is a fixpoint
            status = Some(TensorStatus::Complete);
            break;
        }
        if round == budgets.depth {
            status = Some(TensorStatus::Truncated {
                depth: round,
                classes: class_count,
            });
            break;
        }
        for t in new_terms {
            intern_deep(&mut sat, &t);
        }
        // monoid laws: act_unit(t) ~ t and act_{cd}(t) ~ act_c(act_d(t))
        // instantiated on the representatives of this round
        for (_, rep_term) in &reps_now {
            let base = sat.lookup(rep_term).expect("representative interned");
            let unit_term = Term::Act(unit, Box::new(rep_term.clone()));
            let u = intern_deep(&mut sat, &unit_term);
            sat.uf.union(base, u);
            for c in 0..actor.size {
                for d in 0..actor.size {
                    let cd = actor.apply(mul, &[c, d]);
                    let lhs = Term::Act(cd, Box::new(rep_term.clone()));
                    let rhs = Term::Act(c, Box::new(Term::Act(d, Box::new(rep_term.clone()))));
                    let li = intern_deep(&mut sat, &lhs);
                    let ri = intern_deep(&mut sat, &rhs);
                    sat.uf.union(li, ri);
                }
            }
        }
        sat.close();
    }
    let status = status.expect("saturation loop always sets a status");

    // Read off the quotient. Classes are ordered by their least term.
    let class_list = sat.class_reps();
    let class_count = class_list.len();
    let mut root_to_class: HashMap<usize, usize> = HashMap::new();
    for (i, (root, _)) in class_list.iter().enumerate() {
        root_to_class.insert(*root, i);
    }
    let class_of = |sat: &mut Saturation, t: &Term| -> Option<usize> {
        let i = sat.lookup(t)?;
        let root = sat.uf.find(i);
        root_to_class.get(&root).copied()
    };
    let class_terms: Vec<Term> = class_list.iter().map(|(_, t)| t.clone()).collect();

    let mut tables = Vec::with_capacity(carrier_sig.ops.len());
    for op in &carrier_sig.ops {
        let mut table = Vec::with_capacity(class_count.pow(op.arity as u32));
        for idx in TupleIter::new(vec![class_count; op.arity]) {
            let args: Vec<Term> = idx.iter().map(|&i| class_terms[i].clone()).collect();
            let t = Term::Apply(op.name.clone(), args);
            // unresolvable entries only arise in truncated results
            table.push(class_of(&mut sat, &t).unwrap_or(0));
        }
        tables.push(table);
    }
    let quotient = FiniteAlgebra::new(carrier_sig, class_count, tables);

    let action: Vec<Mapping> = (0..actor.size)
        .map(|c| {
            let values = class_terms
                .iter()
                .map(|t| {
                    let acted = Term::Act(c, Box::new(t.clone()));
                    class_of(&mut sat, &acted).unwrap_or(0)
                })
                .collect();
            Mapping::new(class_count, class_count, values)
        })
        .collect();
    let induced = Representation {
        actor: actor.clone(),
        carrier: quotient.clone(),
        action,
        mode: reps[0].mode.clone(),
    };

    let gen_values: Vec<usize> = (0..gen_count)
        .map(|g| class_of(&mut sat, &Term::Gen(g)).expect("generator class exists"))
        .collect();
    let gen_map = MultiMap::new(codec.sizes.clone(), class_count, gen_values);

    Ok(TensorResult {
        quotient,
        induced,
        gen_map,
        status,
        class_terms,
        factors: reps.iter().map(|r| (*r).clone()).collect(),
        codec,
    })
}

fn intern_deep(sat: &mut Saturation, t: &Term) -> usize {
    match t {
        Term::Gen(_) => sat.intern(t.clone()),
        Term::Apply(_, args) => {
            for a in args {
                intern_deep(sat, a);
            }
            sat.intern(t.clone())
        }
        Term::Act(_, arg) => {
            intern_deep(sat, arg);
            sat.intern(t.clone())
        }
    }
}

/// Evaluates a class-defining term in a target representation, sending
/// generator tuples through `g2`.
fn eval_in_target(
    term: &Term,
    g2: &MultiMap,
    target: &Representation,
    codec: &TupleCodec,
) -> usize {
    match term {
        Term::Gen(g) => g2.get(&codec.decode(*g)),
        Term::Apply(op, args) => {
            let i = target.carrier.sig.op_index(op).expect("shared signature");
            let vals: Vec<usize> = args
                .iter()
                .map(|a| eval_in_target(a, g2, target, codec))
                .collect();
            target.carrier.apply(i, &vals)
        }
        Term::Act(c, arg) => target.action[*c].apply(eval_in_target(arg, g2, target, codec)),
    }
}

/// Factors a reduced polymorphism g2 through the tensor product: the unique
/// morphism (id, h) from the induced representation with h ∘ g1 = g2.
pub fn factor_polymorphism(
    result: &TensorResult,
    g2: &MultiMap,
    target: &Representation,
) -> Result<RepMorphism> {
    if !result.is_complete() {
        return Err(Error::TruncatedResult);
    }
    let factor_refs: Vec<&Representation> = result.factors.iter().collect();
    if is_reduced_polymorphism(g2, &factor_refs, target)?.is_some() {
        return Err(Error::NotAReducedPolymorphism);
    }
    let values: Vec<usize> = result
        .class_terms
        .iter()
        .map(|t| eval_in_target(t, g2, target, &result.codec))
        .collect();
    let h = Mapping::new(result.quotient.size, target.carrier.size, values);
    // kernel check: every generator tuple must agree with its class image
    for tuple in TupleIter::new(result.codec.sizes.clone()) {
        let class = result.gen_map.get(&tuple);
        let expected = g2.get(&tuple);
        if h.apply(class) != expected {
            return Err(Error::FactorizationInconsistent {
                tuple,
                expected,
                actual: h.apply(class),
            });
        }
    }
    let morphism = RepMorphism {
        r: Mapping::identity(target.actor.size),
        big_r: h,
    };
    if let Some(w) = is_morphism(&morphism, &result.induced, target)? {
        // a relation of N that g2 violates surfaces as a morphism failure
        return Err(Error::FactorizationInconsistent {
            tuple: vec![],
            expected: 0,
            actual: match w {
                crate::representation::MorphismWitness::Intertwine { m, .. } => m,
                _ => 0,
            },
        });
    }
    Ok(morphism)
}

/// Exhaustive desk-scale verification of the universal property: every
/// reduced polymorphism of the factors into every fixture target of size at
/// most `bound` factors uniquely through the tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalReport {
    pub targets: usize,
    pub representations: usize,
    pub polymorphisms: usize,
    pub counterexample: Option<String>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn verify_universal_property(
    result: &TensorResult,
    reps: &[&Representation],
    bound: usize,
) -> Result<UniversalReport> {
    if !result.is_complete() {
        return Err(Error::TruncatedResult);
    }
    let actor = &reps[0].actor;
    let mut report = UniversalReport {
        targets: 0,
        representations: 0,
        polymorphisms: 0,
        counterexample: None,
    };
    let candidates = fixture_targets(&reps[0].carrier.sig, reps, bound)?;
    for target_alg in &candidates {
        report.targets += 1;
        for target in monoid_representations(actor, target_alg, &reps[0].mode)? {
            report.representations += 1;
            let total: usize = result.codec.sizes.iter().product();
            let count = target_alg.size.checked_pow(total as u32).ok_or_else(|| {
                Error::BudgetExceeded("too many candidate multimaps".into())
            })?;
            if count > 5_000_000 {
                return Err(Error::BudgetExceeded(format!(
                    "{count} candidate multimaps at bound {bound}"
                )));
            }
            for values in TupleIter::new(vec![target_alg.size; total]) {
                let g2 = MultiMap::new(result.codec.sizes.clone(), target_alg.size, values);
                if is_reduced_polymorphism(&g2, reps, &target)?.is_some() {
                    continue;
                }
                report.polymorphisms += 1;
                let h = match factor_polymorphism(result, &g2, &target) {
                    Ok(h) => h,
                    Err(e) => {
                        report.counterexample =
                            Some(format!("g2 {:?} fails to factor: {e}", g2.values));
                        return Ok(report);
                    }
                };
                // commutativity h ∘ g1 = g2 on every generator tuple
                for tuple in TupleIter::new(result.codec.sizes.clone()) {
                    if h.big_r.apply(result.gen_map.get(&tuple)) != g2.get(&tuple) {
                        report.counterexample = Some(format!(
                            "diagram does not commute at {tuple:?} for g2 {:?}",
                            g2.values
                        ));
                        return Ok(report);
                    }
                }
                // uniqueness: scan every candidate map from the quotient
                let mut matches = 0;
                for hv in TupleIter::new(vec![target_alg.size; result.quotient.size]) {
                    let cand = RepMorphism {
                        r: Mapping::identity(actor.size),
                        big_r: Mapping::new(result.quotient.size, target_alg.size, hv),
                    };
                    let agrees = TupleIter::new(result.codec.sizes.clone()).all(|tuple| {
                        cand.big_r.apply(result.gen_map.get(&tuple)) == g2.get(&tuple)
                    });
                    if agrees && is_morphism(&cand, &result.induced, &target)?.is_none() {
                        matches += 1;
                    }
                }
                if matches != 1 {
                    report.counterexample = Some(format!(
                        "{matches} factoring morphisms for g2 {:?} into target of size {}",
                        g2.values, target_alg.size
                    ));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Fixture library of candidate target algebras over `sig` of size <= bound:
/// the one-point algebra, the cyclic groups when `sig` is the group
/// signature, and all congruence quotients of the factor carriers.
fn fixture_targets(
    sig: &crate::signature::Signature,
    reps: &[&Representation],
    bound: usize,
) -> Result<Vec<FiniteAlgebra>> {
    let mut out = vec![crate::fixtures::trivial_algebra(sig.clone())];
    if *sig == crate::fixtures::group_signature() {
        for m in 2..=bound {
            out.push(crate::fixtures::zn(m));
        }
        if bound >= 4 {
            out.push(crate::fixtures::klein_four());
        }
    }
    for rep in reps {
        for cong in all_congruences(&rep.carrier) {
            if cong.class_count() > 1 && cong.class_count() <= bound {
                let (q, _) = crate::congruence::quotient_algebra(&rep.carrier, &cong)?;
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
    }
    out.retain(|a| a.size <= bound);
    Ok(out)
}

fn all_congruences(alg: &FiniteAlgebra) -> Vec<crate::congruence::Congruence> {
    crate::congruence::Congruence::all_partitions(alg.size)
        .into_iter()
        .filter(|p| crate::congruence::congruence_violation(alg, p).is_none())
        .collect()
}

/// All monoid-mode representations of `actor` on `carrier`: assignments of
/// endomorphisms respecting the unit and composition laws.
fn monoid_representations(
    actor: &FiniteAlgebra,
    carrier: &FiniteAlgebra,
    mode: &ActorMode,
) -> Result<Vec<Representation>> {
    let endos = crate::algebra::endomorphisms(carrier)?;
    let mut out = Vec::new();
    for choice in TupleIter::new(vec![endos.len(); actor.size]) {
        let action: Vec<Mapping> = choice.iter().map(|&i| endos[i].clone()).collect();
        let rep = Representation {
            actor: actor.clone(),
            carrier: carrier.clone(),
            action,
            mode: mode.clone(),
        };
        if validate_representation(&rep).is_empty() {
            out.push(rep);
        }
    }
    Ok(out)
}
