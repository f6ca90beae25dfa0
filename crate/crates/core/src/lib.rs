//! A toolkit for finite universal algebras: representations of one algebra by
//! endomorphisms of another, polymorphisms and reduced polymorphisms of
//! representations, congruence quotients, and the constructive tensor product
//! of representations with its universal factorization property.
//!
//! Everything is exhaustive and desk-scale: carriers are `{0..n-1}` with
//! operation lookup tables, and every universally quantified statement is
//! checked by full enumeration.

pub mod algebra;
pub mod congruence;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod polymorphism;
pub mod representation;
pub mod signature;
pub mod tensor;

pub use algebra::{
    endomorphisms, generated_subalgebra, is_homomorphism, product_algebra, validate_algebra,
    FiniteAlgebra, Mapping, TupleCodec, TupleIter,
};
pub use congruence::{
    congruence_closure, congruence_violation, factor_through_quotient, is_coordinated,
    quotient_algebra, Congruence, UnionFind,
};
pub use error::{Error, Result};
pub use polymorphism::{
    check_action_commutation, check_bridge, check_slotwise_equations, identity_element,
    is_polymorphism, is_reduced_polymorphism, BridgeReport, MultiMap, PolyWitness, SlotwiseReport,
};
pub use representation::{
    factor_morphism_through_quotient, is_morphism, quotient_representation,
    validate_representation, ActorMode, RepMorphism, Representation,
};
pub use signature::{
    enumerate_terms, enumerate_terms_with_budget, eval_term, term_budget, OpDef, SigKind,
    Signature, Term,
};
pub use tensor::{
    factor_polymorphism, tensor_element, tensor_power, tensor_product, verify_universal_property,
    TensorBudgets, TensorResult, TensorStatus,
};
