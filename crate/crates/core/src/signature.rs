//! Operation signatures, ground terms over generators, and term evaluation.

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::representation::Representation;

/// Whether a signature describes the acting algebra or the carrier algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigKind {
    Omega1,
    Omega2,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpDef {
    pub name: String,
    pub arity: usize,
}

/// A named list of operation symbols with arities. Arity 0 denotes a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub kind: SigKind,
    pub ops: Vec<OpDef>,
}

impl Signature {
    /// Builds a signature, rejecting duplicate operation names.
    pub fn new(kind: SigKind, ops: &[(&str, usize)]) -> Result<Signature> {
        let mut seen = std::collections::HashSet::new();
        let mut defs = Vec::with_capacity(ops.len());
        for (name, arity) in ops {
            if !seen.insert(name.to_string()) {
                return Err(Error::DuplicateOpName(name.to_string()));
            }
            defs.push(OpDef {
                name: name.to_string(),
                arity: *arity,
            });
        }
        Ok(Signature { kind, ops: defs })
    }

    pub fn op_index(&self, name: &str) -> Result<usize> {
        self.ops
            .iter()
            .position(|o| o.name == name)
            .ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    pub fn arity(&self, idx: usize) -> usize {
        self.ops[idx].arity
    }
}

/// A ground term over a declared generator list.
///
/// `Act` nodes apply the action of an actor element and only evaluate when a
/// representation context is supplied.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(usize),
    Apply(String, Vec<Term>),
    Act(usize, Box<Term>),
}

impl Term {
    pub fn depth(&self) -> usize {
        match self {
            Term::Gen(_) => 0,
            Term::Apply(_, args) => args.iter().map(Term::depth).max().map_or(0, |d| d + 1),
            Term::Act(_, arg) => arg.depth() + 1,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Term::Gen(_) => 0,
            Term::Apply(_, _) => 1,
            Term::Act(_, _) => 2,
        }
    }
}

// Total order: depth first, then node kind, then contents. Classes of the
// tensor quotient pick their least term under this order as representative.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.depth().cmp(&other.depth()) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.rank().cmp(&other.rank()) {
            Ordering::Equal => {}
            o => return o,
        }
        match (self, other) {
            (Term::Gen(a), Term::Gen(b)) => a.cmp(b),
            (Term::Apply(f, xs), Term::Apply(g, ys)) => f.cmp(g).then_with(|| xs.cmp(ys)),
            (Term::Act(a, x), Term::Act(b, y)) => a.cmp(b).then_with(|| x.cmp(y)),
            _ => unreachable!(),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Term::Gen(i) => write!(f, "g{i}"),
            Term::Apply(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Term::Act(a, t) => write!(f, "act_{a}({t})"),
        }
    }
}

/// Global term-count budget; `OMEGA_REP_BUDGET` overrides the default.
pub fn term_budget() -> usize {
    std::env::var("OMEGA_REP_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000)
}

/// Evaluates a ground term bottom-up by table lookup.
///
/// `gens` assigns a carrier element to each generator index; `Act` nodes
/// require `rep` whose carrier is `alg`.
pub fn eval_term(
    alg: &FiniteAlgebra,
    term: &Term,
    gens: &[usize],
    rep: Option<&Representation>,
) -> Result<usize> {
    match term {
        Term::Gen(i) => gens.get(*i).copied().ok_or(Error::GeneratorOutOfRange {
            index: *i,
            count: gens.len(),
        }),
        Term::Apply(op, args) => {
            let idx = alg.sig.op_index(op)?;
            let mut vals = Vec::with_capacity(args.len());
            for a in args {
                vals.push(eval_term(alg, a, gens, rep)?);
            }
            Ok(alg.apply(idx, &vals))
        }
        Term::Act(a, arg) => {
            let rep = rep.ok_or(Error::ActWithoutRepresentation)?;
            let v = eval_term(alg, arg, gens, rep_some(rep))?;
            Ok(rep.action[*a].values[v])
        }
    }
}

fn rep_some(rep: &Representation) -> Option<&Representation> {
    Some(rep)
}

/// All terms of syntactic depth at most `depth`, deduplicated, in canonical
/// order. `action_set` lists the actor elements usable in `Act` nodes.
pub fn enumerate_terms(
    sig: &Signature,
    generator_count: usize,
    action_set: &[usize],
    depth: usize,
) -> Result<Vec<Term>> {
    enumerate_terms_with_budget(sig, generator_count, action_set, depth, term_budget())
}

pub fn enumerate_terms_with_budget(
    sig: &Signature,
    generator_count: usize,
    action_set: &[usize],
    depth: usize,
    budget: usize,
) -> Result<Vec<Term>> {
    let mut terms: Vec<Term> = Vec::new();
    for g in 0..generator_count {
        terms.push(Term::Gen(g));
    }
    for op in &sig.ops {
        if op.arity == 0 {
            terms.push(Term::Apply(op.name.clone(), vec![]));
        }
    }
    check_budget(terms.len(), budget)?;
    let mut prev_start = 0;
    for _level in 0..depth {
        let base = terms.len();
        if prev_start == base {
            break; // nothing new last level, fixpoint
        }
        for op in &sig.ops {
            if op.arity == 0 {
                continue;
            }
            // at least one argument from the previous level keeps depth exact,
            // but "all args from terms so far" also only yields depth <= level+1
            let mut idx = vec![0usize; op.arity];
            loop {
                let args: Vec<Term> = idx.iter().map(|&i| terms[i].clone()).collect();
                terms.push(Term::Apply(op.name.clone(), args));
                check_budget(terms.len(), budget)?;
                if !advance(&mut idx, base) {
                    break;
                }
            }
        }
        for &a in action_set {
            for i in 0..base {
                terms.push(Term::Act(a, Box::new(terms[i].clone())));
                check_budget(terms.len(), budget)?;
            }
        }
        // dedup: arguments drawn from a dedup'd prefix make new Apply/Act
        // nodes distinct from each other, but nodes built at earlier levels
        // reappear, so filter structurally
        let mut seen = std::collections::HashSet::new();
        let mut unique = Vec::with_capacity(terms.len());
        for t in terms {
            if seen.insert(t.clone()) {
                unique.push(t);
            }
        }
        terms = unique;
        prev_start = base.min(terms.len());
    }
    terms.sort();
    terms.dedup();
    Ok(terms)
}

fn check_budget(count: usize, budget: usize) -> Result<()> {
    if count > budget {
        Err(Error::BudgetExceeded(format!(
            "term universe exceeds {budget} terms"
        )))
    } else {
        Ok(())
    }
}

fn advance(idx: &mut [usize], bound: usize) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < bound {
            return true;
        }
        idx[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn duplicate_op_name_rejected() {
        let err = Signature::new(SigKind::Omega2, &[("add", 2), ("add", 1)]).unwrap_err();
        assert_eq!(err, Error::DuplicateOpName("add".into()));
    }

    #[test]
    fn group_signature_builds() {
        let sig = Signature::new(SigKind::Omega2, &[("add", 2), ("neg", 1), ("zero", 0)]).unwrap();
        assert_eq!(sig.ops.len(), 3);
        let sig = Signature::new(SigKind::Omega1, &[("mul", 2), ("one", 0)]).unwrap();
        assert_eq!(sig.ops.len(), 2);
    }

    #[test]
    fn eval_constant_and_nested() {
        let z4 = fixtures::zn(4);
        let zero = Term::Apply("zero".into(), vec![]);
        assert_eq!(eval_term(&z4, &zero, &[], None).unwrap(), 0);
        // neg(add(g0, g0)) with g0 = 1: 1+1 = 2, -2 = 2 mod 4
        let t = Term::Apply(
            "neg".into(),
            vec![Term::Apply(
                "add".into(),
                vec![Term::Gen(0), Term::Gen(0)],
            )],
        );
        assert_eq!(eval_term(&z4, &t, &[1], None).unwrap(), 2);
    }

    #[test]
    fn eval_action_node() {
        let scal2 = fixtures::scal(2);
        let t = Term::Act(0, Box::new(Term::Gen(0)));
        assert_eq!(
            eval_term(&scal2.carrier, &t, &[1], Some(&scal2)).unwrap(),
            0
        );
        assert_eq!(
            eval_term(&scal2.carrier, &t, &[1], None).unwrap_err(),
            Error::ActWithoutRepresentation
        );
    }

    #[test]
    fn eval_generator_out_of_range() {
        let z4 = fixtures::zn(4);
        let err = eval_term(&z4, &Term::Gen(2), &[1], None).unwrap_err();
        assert_eq!(err, Error::GeneratorOutOfRange { index: 2, count: 1 });
    }

    #[test]
    fn enumerate_depth_zero() {
        let sig = fixtures::group_signature();
        let terms = enumerate_terms(&sig, 1, &[], 0).unwrap();
        assert_eq!(
            terms,
            vec![Term::Gen(0), Term::Apply("zero".into(), vec![])]
        );
    }

    #[test]
    fn enumerate_depth_one_count() {
        // 2 depth-0 terms, 4 add-combinations, 2 neg-terms
        let sig = fixtures::group_signature();
        let terms = enumerate_terms(&sig, 1, &[], 1).unwrap();
        assert_eq!(terms.len(), 8);
    }

    #[test]
    fn enumerate_nothing_without_generators_or_constants() {
        let sig = Signature::new(SigKind::Omega2, &[("pair", 2)]).unwrap();
        let terms = enumerate_terms(&sig, 0, &[], 0).unwrap();
        assert!(terms.is_empty());
    }

    #[test]
    fn enumerate_monotone_in_depth() {
        let sig = fixtures::group_signature();
        let d1: std::collections::HashSet<_> =
            enumerate_terms(&sig, 1, &[], 1).unwrap().into_iter().collect();
        let d2: std::collections::HashSet<_> =
            enumerate_terms(&sig, 1, &[], 2).unwrap().into_iter().collect();
        assert!(d1.is_subset(&d2));
    }

    #[test]
    fn budget_guards_enumeration() {
        let sig = fixtures::group_signature();
        let res = enumerate_terms_with_budget(&sig, 1, &[], 3, 10);
        assert!(matches!(res, Err(Error::BudgetExceeded(_))));
    }
}
