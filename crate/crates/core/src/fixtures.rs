//! Desk-scale fixtures: cyclic groups, scalar monoids, and the standard
//! scalar representations used throughout the tests and the CLI built-ins.

use crate::algebra::{FiniteAlgebra, Mapping};
use crate::representation::{ActorMode, Representation};
use crate::signature::{SigKind, Signature};

/// The abelian-group signature: add/2, neg/1, zero/0.
pub fn group_signature() -> Signature {
    Signature::new(SigKind::Omega2, &[("add", 2), ("neg", 1), ("zero", 0)]).unwrap()
}

/// The monoid signature: mul/2, one/0.
pub fn monoid_signature() -> Signature {
    Signature::new(SigKind::Omega1, &[("mul", 2), ("one", 0)]).unwrap()
}

/// The cyclic group Z/n under addition.
pub fn zn(n: usize) -> FiniteAlgebra {
    let sig = group_signature();
    let mut add = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push((a + b) % n);
        }
    }
    let neg = (0..n).map(|a| (n - a) % n).collect();
    FiniteAlgebra::new(sig, n, vec![add, neg, vec![0]])
}

/// The multiplicative monoid on `{0, 1}` (absorbing zero, unit one).
pub fn bool_monoid() -> FiniteAlgebra {
    let sig = monoid_signature();
    FiniteAlgebra::new(sig, 2, vec![vec![0, 0, 0, 1], vec![1]])
}

/// The multiplicative monoid of Z/n.
pub fn mult_monoid(n: usize) -> FiniteAlgebra {
    let sig = monoid_signature();
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push((a * b) % n);
        }
    }
    FiniteAlgebra::new(sig, n, vec![mul, vec![1 % n]])
}

/// `scal(n)`: the `{0,1}` scalar monoid acting on Z/n; 0 acts as the zero
/// map, 1 as the identity.
pub fn scal(n: usize) -> Representation {
    let carrier = zn(n);
    let actor = bool_monoid();
    let action = vec![Mapping::new(n, n, vec![0; n]), Mapping::identity(n)];
    Representation {
        actor,
        carrier,
        action,
        mode: ActorMode::Monoid {
            mul: "mul".into(),
            unit: "one".into(),
        },
    }
}

/// The full multiplicative monoid of Z/n acting on Z/n by a*x.
pub fn scal_full(n: usize) -> Representation {
    let carrier = zn(n);
    let actor = mult_monoid(n);
    let action = (0..n)
        .map(|a| Mapping::new(n, n, (0..n).map(|x| (a * x) % n).collect()))
        .collect();
    Representation {
        actor,
        carrier,
        action,
        mode: ActorMode::Monoid {
            mul: "mul".into(),
            unit: "one".into(),
        },
    }
}

/// Every actor element acts as the identity on `carrier`.
pub fn trivial_rep(actor: FiniteAlgebra, carrier: FiniteAlgebra) -> Representation {
    let action = (0..actor.size)
        .map(|_| Mapping::identity(carrier.size))
        .collect();
    Representation {
        actor,
        carrier,
        action,
        mode: ActorMode::Tabular,
    }
}

/// The one-element algebra over `sig` (all operations land on 0).
pub fn trivial_algebra(sig: Signature) -> FiniteAlgebra {
    let tables = sig.ops.iter().map(|_| vec![0]).collect();
    FiniteAlgebra::new(sig, 1, tables)
}

/// The Klein four-group as (Z/2)^2 under componentwise addition.
pub fn klein_four() -> FiniteAlgebra {
    let z2 = zn(2);
    crate::algebra::product_algebra(&[&z2, &z2]).unwrap().0
}

/// In monoid mode the paper's footnote construction r(a_1,..,a_n) = a_1...a_n
/// is available as a fixture: the iterated product multimap A^n -> A.
pub fn monoid_product_map(actor: &FiniteAlgebra, mul: &str, unit: &str, arity: usize) -> crate::polymorphism::MultiMap {
    let mul_idx = actor.sig.op_index(mul).unwrap();
    let unit_idx = actor.sig.op_index(unit).unwrap();
    let sizes = vec![actor.size; arity];
    let mut values = Vec::new();
    for tuple in crate::algebra::TupleIter::new(sizes.clone()) {
        let mut acc = actor.apply(unit_idx, &[]);
        for &a in &tuple {
            acc = actor.apply(mul_idx, &[acc, a]);
        }
        values.push(acc);
    }
    crate::polymorphism::MultiMap::new(sizes, actor.size, values)
}

/// Searches the actor for an element whose action equals the composite of two
/// given actions; reports `None` when the algebra has no such element.
pub fn find_composite_actor(
    rep: &Representation,
    k: usize,
    l: usize,
) -> Option<usize> {
    let composite = rep.action[k].compose(&rep.action[l]);
    (0..rep.actor.size).find(|&a| rep.action[a] == composite)
}
