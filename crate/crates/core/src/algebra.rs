//! Finite algebras as operation tables: homomorphism checking, endomorphism
//! enumeration, products, and generated subalgebras.

use crate::error::{Error, Result};
use crate::signature::Signature;

/// A finite algebra with carrier `{0..size-1}` and one total lookup table per
/// operation symbol. Tables are flat, row-major over the argument tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    pub sig: Signature,
    pub size: usize,
    pub tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(sig: Signature, size: usize, tables: Vec<Vec<usize>>) -> FiniteAlgebra {
        FiniteAlgebra { sig, size, tables }
    }

    /// Table lookup for operation `op` on the argument tuple.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let mut idx = 0;
        for &a in args {
            idx = idx * self.size + a;
        }
        self.tables[op][idx]
    }

    pub fn apply_named(&self, op: &str, args: &[usize]) -> Result<usize> {
        Ok(self.apply(self.sig.op_index(op)?, args))
    }

    /// Iterates all argument tuples of the given arity in lexicographic order.
    pub fn tuples(&self, arity: usize) -> TupleIter {
        TupleIter::new(vec![self.size; arity])
    }
}

/// Lexicographic iterator over mixed-radix tuples.
pub struct TupleIter {
    radix: Vec<usize>,
    cur: Option<Vec<usize>>,
}

impl TupleIter {
    pub fn new(radix: Vec<usize>) -> TupleIter {
        let cur = if radix.iter().any(|&r| r == 0) {
            None
        } else {
            Some(vec![0; radix.len()])
        };
        TupleIter { radix, cur }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.clone()?;
        let mut next = cur.clone();
        let mut done = true;
        for i in (0..next.len()).rev() {
            next[i] += 1;
            if next[i] < self.radix[i] {
                done = false;
                break;
            }
            next[i] = 0;
        }
        self.cur = if done { None } else { Some(next) };
        Some(cur)
    }
}

/// A total map between two finite carriers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mapping {
    pub src_size: usize,
    pub dst_size: usize,
    pub values: Vec<usize>,
}

impl Mapping {
    pub fn new(src_size: usize, dst_size: usize, values: Vec<usize>) -> Mapping {
        Mapping {
            src_size,
            dst_size,
            values,
        }
    }

    pub fn identity(size: usize) -> Mapping {
        Mapping::new(size, size, (0..size).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `self` after `g`: (self ∘ g)(x) = self(g(x)).
    pub fn compose(&self, g: &Mapping) -> Mapping {
        Mapping::new(
            g.src_size,
            self.dst_size,
            g.values.iter().map(|&x| self.values[x]).collect(),
        )
    }

    pub fn is_valid(&self) -> bool {
        self.values.len() == self.src_size && self.values.iter().all(|&v| v < self.dst_size)
    }
}

/// One structural defect found by [`validate_algebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraViolation {
    pub op: String,
    pub detail: String,
}

/// Checks totality and codomain bounds of every operation table.
pub fn validate_algebra(alg: &FiniteAlgebra) -> Vec<AlgebraViolation> {
    let mut out = Vec::new();
    if alg.tables.len() != alg.sig.ops.len() {
        out.push(AlgebraViolation {
            op: String::new(),
            detail: format!(
                "{} tables for {} operations",
                alg.tables.len(),
                alg.sig.ops.len()
            ),
        });
        return out;
    }
    for (i, op) in alg.sig.ops.iter().enumerate() {
        let expected = alg.size.pow(op.arity as u32);
        if alg.tables[i].len() != expected {
            out.push(AlgebraViolation {
                op: op.name.clone(),
                detail: format!(
                    "table not total: {} entries, expected {expected}",
                    alg.tables[i].len()
                ),
            });
            continue;
        }
        for (j, &v) in alg.tables[i].iter().enumerate() {
            if v >= alg.size {
                out.push(AlgebraViolation {
                    op: op.name.clone(),
                    detail: format!("entry {v} at index {j} out of range for size {}", alg.size),
                });
            }
        }
    }
    out
}

/// Witness of a homomorphism failure: the operation and argument tuple where
/// `h(op(x)) != op(h(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomWitness {
    pub op: String,
    pub tuple: Vec<usize>,
}

/// Exhaustive homomorphism check; `None` means `h` is a homomorphism,
/// otherwise the least violating (op, tuple) is returned.
pub fn is_homomorphism(
    h: &Mapping,
    src: &FiniteAlgebra,
    dst: &FiniteAlgebra,
) -> Result<Option<HomWitness>> {
    if src.sig != dst.sig {
        return Err(Error::SignatureMismatch);
    }
    if h.src_size != src.size || h.dst_size != dst.size || !h.is_valid() {
        return Err(Error::DimensionMismatch(format!(
            "map {}->{} against algebras {}->{}",
            h.src_size, h.dst_size, src.size, dst.size
        )));
    }
    for (i, op) in src.sig.ops.iter().enumerate() {
        for tuple in src.tuples(op.arity) {
            let lhs = h.apply(src.apply(i, &tuple));
            let mapped: Vec<usize> = tuple.iter().map(|&x| h.apply(x)).collect();
            let rhs = dst.apply(i, &mapped);
            if lhs != rhs {
                return Ok(Some(HomWitness {
                    op: op.name.clone(),
                    tuple,
                }));
            }
        }
    }
    Ok(None)
}

/// All endomorphisms of `alg` in lexicographic order of the completed maps.
///
/// Above size 6 the raw `n^n` scan is replaced by backtracking over partial
/// maps pruned by operation constraints; both paths emit the same order.
pub fn endomorphisms(alg: &FiniteAlgebra) -> Result<Vec<Mapping>> {
    if alg.size <= 6 {
        let mut out = Vec::new();
        for values in TupleIter::new(vec![alg.size; alg.size]) {
            let h = Mapping::new(alg.size, alg.size, values);
            if is_homomorphism(&h, alg, alg)?.is_none() {
                out.push(h);
            }
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    let mut partial = vec![usize::MAX; alg.size];
    let mut visits = 0usize;
    backtrack(alg, &mut partial, 0, &mut out, &mut visits)?;
    Ok(out)
}

const BACKTRACK_BUDGET: usize = 10_000_000;

fn backtrack(
    alg: &FiniteAlgebra,
    partial: &mut Vec<usize>,
    pos: usize,
    out: &mut Vec<Mapping>,
    visits: &mut usize,
) -> Result<()> {
    *visits += 1;
    if *visits > BACKTRACK_BUDGET {
        return Err(Error::BudgetExceeded(
            "endomorphism search exceeded its node budget".into(),
        ));
    }
    if pos == alg.size {
        out.push(Mapping::new(alg.size, alg.size, partial.clone()));
        return Ok(());
    }
    'candidate: for v in 0..alg.size {
        partial[pos] = v;
        // check every constraint whose participants are all assigned
        for (i, op) in alg.sig.ops.iter().enumerate() {
            for tuple in alg.tuples(op.arity) {
                let result = alg.apply(i, &tuple);
                if result > pos || tuple.iter().any(|&x| x > pos) {
                    continue;
                }
                let mapped: Vec<usize> = tuple.iter().map(|&x| partial[x]).collect();
                if partial[result] != alg.apply(i, &mapped) {
                    continue 'candidate;
                }
            }
        }
        backtrack(alg, partial, pos + 1, out, visits)?;
    }
    partial[pos] = usize::MAX;
    Ok(())
}

/// Row-major codec between tuples over the component carriers and indices of
/// the product carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCodec {
    pub sizes: Vec<usize>,
}

impl TupleCodec {
    pub fn total(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        let mut idx = 0;
        for (i, &t) in tuple.iter().enumerate() {
            idx = idx * self.sizes[i] + t;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.sizes.len()];
        for i in (0..self.sizes.len()).rev() {
            out[i] = idx % self.sizes[i];
            idx /= self.sizes[i];
        }
        out
    }
}

/// Componentwise product of algebras over one signature.
pub fn product_algebra(algs: &[&FiniteAlgebra]) -> Result<(FiniteAlgebra, TupleCodec)> {
    let first = *algs.first().ok_or(Error::EmptyList)?;
    for a in algs {
        if a.sig != first.sig {
            return Err(Error::SignatureMismatch);
        }
    }
    let codec = TupleCodec {
        sizes: algs.iter().map(|a| a.size).collect(),
    };
    let size = codec.total();
    let mut tables = Vec::with_capacity(first.sig.ops.len());
    for (i, op) in first.sig.ops.iter().enumerate() {
        let mut table = Vec::with_capacity(size.pow(op.arity as u32));
        for args in TupleIter::new(vec![size; op.arity]) {
            let decoded: Vec<Vec<usize>> = args.iter().map(|&a| codec.decode(a)).collect();
            let mut result = Vec::with_capacity(algs.len());
            for (c, alg) in algs.iter().enumerate() {
                let component: Vec<usize> = decoded.iter().map(|d| d[c]).collect();
                result.push(alg.apply(i, &component));
            }
            table.push(codec.encode(&result));
        }
        tables.push(table);
    }
    Ok((FiniteAlgebra::new(first.sig.clone(), size, tables), codec))
}

/// Least superset of `seed` closed under all operations, all constants, and
/// the supplied self-maps.
pub fn generated_subalgebra(
    alg: &FiniteAlgebra,
    seed: &[usize],
    actions: &[Mapping],
) -> Vec<usize> {
    let mut member = vec![false; alg.size];
    for &s in seed {
        member[s] = true;
    }
    loop {
        let mut changed = false;
        for (i, op) in alg.sig.ops.iter().enumerate() {
            let current: Vec<usize> = (0..alg.size).filter(|&x| member[x]).collect();
            if op.arity == 0 {
                let c = alg.apply(i, &[]);
                if !member[c] {
                    member[c] = true;
                    changed = true;
                }
                continue;
            }
            for tuple in TupleIter::new(vec![current.len(); op.arity]) {
                let args: Vec<usize> = tuple.iter().map(|&t| current[t]).collect();
                let v = alg.apply(i, &args);
                if !member[v] {
                    member[v] = true;
                    changed = true;
                }
            }
        }
        for h in actions {
            for x in 0..alg.size {
                if member[x] && !member[h.apply(x)] {
                    member[h.apply(x)] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..alg.size).filter(|&x| member[x]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn z4_validates() {
        assert!(validate_algebra(&fixtures::zn(4)).is_empty());
    }

    #[test]
    fn out_of_range_entry_reported() {
        let mut z4 = fixtures::zn(4);
        let add = z4.sig.op_index("add").unwrap();
        z4.tables[add][0] = 5;
        let report = validate_algebra(&z4);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].op, "add");
    }

    #[test]
    fn missing_entry_reported_as_not_total() {
        let mut z4 = fixtures::zn(4);
        let add = z4.sig.op_index("add").unwrap();
        z4.tables[add].pop();
        let report = validate_algebra(&z4);
        assert!(report[0].detail.contains("not total"));
    }

    #[test]
    fn identity_is_homomorphism() {
        let z4 = fixtures::zn(4);
        assert!(is_homomorphism(&Mapping::identity(4), &z4, &z4)
            .unwrap()
            .is_none());
    }

    #[test]
    fn doubling_is_endomorphism_of_z4() {
        let z4 = fixtures::zn(4);
        let h = Mapping::new(4, 4, vec![0, 2, 0, 2]);
        assert!(is_homomorphism(&h, &z4, &z4).unwrap().is_none());
    }

    #[test]
    fn z2_to_z3_inclusion_fails_with_witness() {
        let z2 = fixtures::zn(2);
        let z3 = fixtures::zn(3);
        let h = Mapping::new(2, 3, vec![0, 1]);
        let w = is_homomorphism(&h, &z2, &z3).unwrap().unwrap();
        assert_eq!(w.op, "add");
        assert_eq!(w.tuple, vec![1, 1]);
    }

    #[test]
    fn endomorphisms_of_z2_and_z3() {
        let endos = endomorphisms(&fixtures::zn(2)).unwrap();
        assert_eq!(endos.len(), 2);
        assert_eq!(endos[0].values, vec![0, 0]);
        assert_eq!(endos[1].values, vec![0, 1]);
        let endos = endomorphisms(&fixtures::zn(3)).unwrap();
        assert_eq!(endos.len(), 3);
        let tables: Vec<_> = endos.iter().map(|e| e.values.clone()).collect();
        assert_eq!(tables, vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn one_element_algebra_has_only_identity() {
        let endos = endomorphisms(&fixtures::zn(1)).unwrap();
        assert_eq!(endos.len(), 1);
        assert_eq!(endos[0].values, vec![0]);
    }

    #[test]
    fn backtracking_agrees_with_scan_on_z8() {
        // n=8 takes the backtracking path; Z8 has 8 endomorphisms x -> kx
        let z8 = fixtures::zn(8);
        let endos = endomorphisms(&z8).unwrap();
        assert_eq!(endos.len(), 8);
        for e in &endos {
            assert!(is_homomorphism(e, &z8, &z8).unwrap().is_none());
        }
    }

    #[test]
    fn product_of_two_z2() {
        let z2 = fixtures::zn(2);
        let (prod, codec) = product_algebra(&[&z2, &z2]).unwrap();
        assert_eq!(prod.size, 4);
        let add = prod.sig.op_index("add").unwrap();
        let a = codec.encode(&[1, 0]);
        let b = codec.encode(&[1, 1]);
        assert_eq!(codec.decode(prod.apply(add, &[a, b])), vec![0, 1]);
    }

    #[test]
    fn unary_product_is_isomorphic_via_codec() {
        let z2 = fixtures::zn(2);
        let (prod, codec) = product_algebra(&[&z2]).unwrap();
        assert_eq!(prod, z2);
        assert_eq!(codec.encode(&[1]), 1);
    }

    #[test]
    fn mixed_product_constants() {
        let z2 = fixtures::zn(2);
        let z3 = fixtures::zn(3);
        let (prod, codec) = product_algebra(&[&z2, &z3]).unwrap();
        assert_eq!(prod.size, 6);
        let zero = prod.sig.op_index("zero").unwrap();
        assert_eq!(prod.apply(zero, &[]), codec.encode(&[0, 0]));
    }

    #[test]
    fn generated_subalgebras_of_z4() {
        let z4 = fixtures::zn(4);
        assert_eq!(generated_subalgebra(&z4, &[1], &[]), vec![0, 1, 2, 3]);
        assert_eq!(generated_subalgebra(&z4, &[2], &[]), vec![0, 2]);
        assert_eq!(generated_subalgebra(&z4, &[], &[]), vec![0]);
    }
}
