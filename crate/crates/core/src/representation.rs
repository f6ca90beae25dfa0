//! Representations of an Ω₁-algebra by endomorphisms of an Ω₂-algebra,
//! morphisms of representations, and quotient representations.

use crate::algebra::{is_homomorphism, FiniteAlgebra, HomWitness, Mapping};
use crate::congruence::{self, Congruence};
use crate::error::{Error, Result};

/// How much Ω₁ structure the action table is required to respect.
///
/// Tabular mode stores the action per element and checks nothing beyond
/// endomorphism membership; monoid mode additionally enforces
/// `action(mul(a,b)) = action(a) ∘ action(b)` and `action(unit) = identity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActorMode {
    Monoid { mul: String, unit: String },
    Tabular,
}

/// An Ω₁-algebra acting on an Ω₂-algebra through endomorphisms: one carrier
/// transformation per actor element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub actor: FiniteAlgebra,
    pub carrier: FiniteAlgebra,
    pub action: Vec<Mapping>,
    pub mode: ActorMode,
}

impl Representation {
    /// The unit element in monoid mode, by evaluating the unit constant.
    pub fn unit_element(&self) -> Result<usize> {
        match &self.mode {
            ActorMode::Monoid { unit, .. } => self.actor.apply_named(unit, &[]),
            ActorMode::Tabular => Err(Error::NotMonoidMode),
        }
    }

    pub fn mul_elements(&self, a: usize, b: usize) -> Result<usize> {
        match &self.mode {
            ActorMode::Monoid { mul, .. } => self.actor.apply_named(mul, &[a, b]),
            ActorMode::Tabular => Err(Error::NotMonoidMode),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepViolation {
    /// `action(a)` is not an endomorphism; carries the failing (op, tuple).
    NotEndomorphism { actor: usize, witness: HomWitness },
    /// `action(mul(a,b)) != action(a) ∘ action(b)`.
    MonoidLaw { a: usize, b: usize },
    /// The unit constant does not act as the identity transformation.
    UnitLaw,
    /// Action table dimensions do not match the carriers.
    Shape(String),
}

/// Checks every action against the carrier, plus the monoid laws when the
/// representation is in monoid mode.
pub fn validate_representation(rep: &Representation) -> Vec<RepViolation> {
    let mut out = Vec::new();
    if rep.action.len() != rep.actor.size {
        out.push(RepViolation::Shape(format!(
            "{} action tables for actor of size {}",
            rep.action.len(),
            rep.actor.size
        )));
        return out;
    }
    for (a, h) in rep.action.iter().enumerate() {
        if h.src_size != rep.carrier.size || h.dst_size != rep.carrier.size || !h.is_valid() {
            out.push(RepViolation::Shape(format!(
                "action of {a} is not a transformation of the carrier"
            )));
            continue;
        }
        match is_homomorphism(h, &rep.carrier, &rep.carrier) {
            Ok(None) => {}
            Ok(Some(witness)) => out.push(RepViolation::NotEndomorphism { actor: a, witness }),
            Err(_) => out.push(RepViolation::Shape(format!(
                "action of {a} has mismatched dimensions"
            ))),
        }
    }
    if !out.is_empty() {
        return out;
    }
    if let ActorMode::Monoid { .. } = rep.mode {
        if let Ok(unit) = rep.unit_element() {
            if rep.action[unit] != Mapping::identity(rep.carrier.size) {
                out.push(RepViolation::UnitLaw);
            }
        }
        for a in 0..rep.actor.size {
            for b in 0..rep.actor.size {
                let ab = rep.mul_elements(a, b).unwrap();
                if rep.action[ab] != rep.action[a].compose(&rep.action[b]) {
                    out.push(RepViolation::MonoidLaw { a, b });
                }
            }
        }
    }
    out
}

/// A pair of maps between actor carriers and carrier carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism {
    pub r: Mapping,
    pub big_r: Mapping,
}

/// Which clause of the morphism conditions failed, with the least witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismWitness {
    /// `r` is not an Ω₁-homomorphism.
    ActorHom(HomWitness),
    /// `R` is not an Ω₂-homomorphism.
    CarrierHom(HomWitness),
    /// `R(f_src(a)(m)) != f_dst(r(a))(R(m))`.
    Intertwine { a: usize, m: usize },
}

/// Exhaustive check of the three morphism clauses; `None` means `m` is a
/// morphism of representations from `src` to `dst`.
pub fn is_morphism(
    m: &RepMorphism,
    src: &Representation,
    dst: &Representation,
) -> Result<Option<MorphismWitness>> {
    if m.r.src_size != src.actor.size
        || m.r.dst_size != dst.actor.size
        || m.big_r.src_size != src.carrier.size
        || m.big_r.dst_size != dst.carrier.size
        || !m.r.is_valid()
        || !m.big_r.is_valid()
    {
        return Err(Error::DimensionMismatch(
            "morphism maps do not match the representations".into(),
        ));
    }
    if let Some(w) = is_homomorphism(&m.r, &src.actor, &dst.actor)? {
        return Ok(Some(MorphismWitness::ActorHom(w)));
    }
    if let Some(w) = is_homomorphism(&m.big_r, &src.carrier, &dst.carrier)? {
        return Ok(Some(MorphismWitness::CarrierHom(w)));
    }
    for a in 0..src.actor.size {
        for x in 0..src.carrier.size {
            let lhs = m.big_r.apply(src.action[a].apply(x));
            let rhs = dst.action[m.r.apply(a)].apply(m.big_r.apply(x));
            if lhs != rhs {
                return Ok(Some(MorphismWitness::Intertwine { a, m: x }));
            }
        }
    }
    Ok(None)
}

/// Quotient representation on `B/N` when every action is coordinated with
/// the congruence; also returns `(id, j)` as the projection morphism.
pub fn quotient_representation(
    rep: &Representation,
    cong: &Congruence,
) -> Result<(Representation, RepMorphism)> {
    for (a, h) in rep.action.iter().enumerate() {
        if let Some((x, y)) = congruence::is_coordinated(h, cong)? {
            return Err(Error::NotCoordinated { actor: a, x, y });
        }
    }
    let (quotient, j) = congruence::quotient_algebra(&rep.carrier, cong)?;
    let classes = cong.classes();
    let action = rep
        .action
        .iter()
        .map(|h| {
            Mapping::new(
                quotient.size,
                quotient.size,
                classes.iter().map(|c| j.apply(h.apply(c[0]))).collect(),
            )
        })
        .collect();
    let induced = Representation {
        actor: rep.actor.clone(),
        carrier: quotient,
        action,
        mode: rep.mode.clone(),
    };
    let projection = RepMorphism {
        r: Mapping::identity(rep.actor.size),
        big_r: j,
    };
    Ok((induced, projection))
}

/// Factors a morphism `m: rep -> dst` through the quotient by `cong`: the
/// unique `(m.r, h)` from the quotient representation to `dst` with
/// `h ∘ j = m.R`.
pub fn factor_morphism_through_quotient(
    m: &RepMorphism,
    rep: &Representation,
    dst: &Representation,
    cong: &Congruence,
) -> Result<RepMorphism> {
    let h = congruence::factor_through_quotient(&m.big_r, cong)?;
    let factored = RepMorphism {
        r: m.r.clone(),
        big_r: h,
    };
    let (quotient_rep, _) = quotient_representation(rep, cong)?;
    if let Some(w) = is_morphism(&factored, &quotient_rep, dst)? {
        return Err(Error::DimensionMismatch(format!(
            "factored map is not a morphism: {w:?}"
        )));
    }
    Ok(factored)
}
