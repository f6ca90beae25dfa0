//! Congruence closure compatible with operations and transformation families,
//! quotient algebras, and factorization of maps through quotients.

use crate::algebra::{FiniteAlgebra, Mapping, TupleIter};
use crate::error::{Error, Result};

/// Union-find forest with path compression; representatives are the least
/// element of each class so the output is canonical regardless of merge
/// order.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(size: usize) -> UnionFind {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `x` and `y`; the lesser representative wins.
    /// Returns true when the classes were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    /// Appends a fresh singleton class and returns its index.
    pub fn push(&mut self) -> usize {
        let i = self.parent.len();
        self.parent.push(i);
        i
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
}

/// A partition of `{0..carrier_size-1}` given by a representative array; the
/// representative of a class is its least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub carrier_size: usize,
    reps: Vec<usize>,
}

impl Congruence {
    pub fn from_union_find(mut uf: UnionFind) -> Congruence {
        let n = uf.len();
        let reps = (0..n).map(|x| uf.find(x)).collect();
        Congruence {
            carrier_size: n,
            reps,
        }
    }

    /// The discrete partition (all singletons).
    pub fn discrete(size: usize) -> Congruence {
        Congruence {
            carrier_size: size,
            reps: (0..size).collect(),
        }
    }

    /// Builds a partition from explicit classes; classes must cover the
    /// carrier and be pairwise disjoint.
    pub fn from_classes(size: usize, classes: &[Vec<usize>]) -> Result<Congruence> {
        let mut reps = vec![usize::MAX; size];
        for class in classes {
            let min = *class
                .iter()
                .min()
                .ok_or_else(|| Error::ParseError("empty congruence class".into()))?;
            for &x in class {
                if x >= size || reps[x] != usize::MAX {
                    return Err(Error::ParseError(format!(
                        "element {x} repeated or out of range in congruence classes"
                    )));
                }
                reps[x] = min;
            }
        }
        if reps.iter().any(|&r| r == usize::MAX) {
            return Err(Error::ParseError(
                "congruence classes do not cover the carrier".into(),
            ));
        }
        Ok(Congruence {
            carrier_size: size,
            reps,
        })
    }

    pub fn rep(&self, x: usize) -> usize {
        self.reps[x]
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.reps[x] == self.reps[y]
    }

    /// Classes sorted by least member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.carrier_size {
            map.entry(self.reps[x]).or_default().push(x);
        }
        map.into_values().collect()
    }

    pub fn class_count(&self) -> usize {
        self.classes().len()
    }

    /// The index of x's class in the canonical (least-member) class order.
    pub fn class_index(&self, x: usize) -> usize {
        let reps: Vec<usize> = self.classes().iter().map(|c| c[0]).collect();
        reps.binary_search(&self.reps[x]).unwrap()
    }

    /// All pairs (x, y), x < y, of equivalent elements.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.carrier_size {
            for y in (x + 1)..self.carrier_size {
                if self.same(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// True when every pair related by `self` is related by `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.carrier_size).all(|x| other.same(x, self.reps[x]))
    }

    /// All partitions of `{0..n-1}`, via restricted growth strings.
    pub fn all_partitions(n: usize) -> Vec<Congruence> {
        let mut out = Vec::new();
        let mut labels = vec![0usize; n];
        fn rec(labels: &mut Vec<usize>, pos: usize, max: usize, out: &mut Vec<Congruence>) {
            let n = labels.len();
            if pos == n {
                let mut reps = vec![usize::MAX; n];
                let mut first = vec![usize::MAX; n];
                for (x, &l) in labels.iter().enumerate() {
                    if first[l] == usize::MAX {
                        first[l] = x;
                    }
                    reps[x] = first[l];
                }
                out.push(Congruence {
                    carrier_size: n,
                    reps,
                });
                return;
            }
            for l in 0..=max {
                labels[pos] = l;
                let next_max = if l == max { max + 1 } else { max };
                rec(labels, pos + 1, next_max, out);
            }
        }
        if n == 0 {
            return vec![Congruence::discrete(0)];
        }
        rec(&mut labels, 1, 1, &mut out);
        out
    }
}

/// Least equivalence containing `pairs`, closed under all operations of `alg`
/// and under every supplied transformation. The loop interleaves both closure
/// conditions until a full pass makes no merge.
pub fn congruence_closure(
    alg: &FiniteAlgebra,
    pairs: &[(usize, usize)],
    transformations: &[Mapping],
) -> Congruence {
    let mut uf = UnionFind::new(alg.size);
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    loop {
        let mut changed = false;
        for (i, op) in alg.sig.ops.iter().enumerate() {
            if op.arity == 0 {
                continue;
            }
            for tuple in alg.tuples(op.arity) {
                let base = alg.apply(i, &tuple);
                for slot in 0..op.arity {
                    for y in 0..alg.size {
                        if uf.find(y) != uf.find(tuple[slot]) {
                            continue;
                        }
                        let mut other = tuple.clone();
                        other[slot] = y;
                        if uf.union(base, alg.apply(i, &other)) {
                            changed = true;
                        }
                    }
                }
            }
        }
        for h in transformations {
            for x in 0..alg.size {
                for y in (x + 1)..alg.size {
                    if uf.find(x) == uf.find(y) && uf.union(h.apply(x), h.apply(y)) {
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Congruence::from_union_find(uf)
}

/// Verifies that `cong` is compatible with every operation of `alg`; returns
/// the least violating instance, if any.
pub fn congruence_violation(alg: &FiniteAlgebra, cong: &Congruence) -> Option<Error> {
    for (i, op) in alg.sig.ops.iter().enumerate() {
        if op.arity == 0 {
            continue;
        }
        for tuple in alg.tuples(op.arity) {
            for slot in 0..op.arity {
                for y in 0..alg.size {
                    if !cong.same(tuple[slot], y) {
                        continue;
                    }
                    let mut other = tuple.clone();
                    other[slot] = y;
                    if !cong.same(alg.apply(i, &tuple), alg.apply(i, &other)) {
                        return Some(Error::NotACongruence {
                            op: op.name.clone(),
                            tuple,
                            other,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Quotient algebra on class representatives, together with the class
/// projection `j` (a homomorphism). The congruence property is verified, not
/// trusted.
pub fn quotient_algebra(
    alg: &FiniteAlgebra,
    cong: &Congruence,
) -> Result<(FiniteAlgebra, Mapping)> {
    if cong.carrier_size != alg.size {
        return Err(Error::DimensionMismatch(format!(
            "congruence on {} elements against algebra of size {}",
            cong.carrier_size, alg.size
        )));
    }
    if let Some(e) = congruence_violation(alg, cong) {
        return Err(e);
    }
    let classes = cong.classes();
    let k = classes.len();
    let class_reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let j = Mapping::new(
        alg.size,
        k,
        (0..alg.size).map(|x| cong.class_index(x)).collect(),
    );
    let mut tables = Vec::with_capacity(alg.sig.ops.len());
    for (i, op) in alg.sig.ops.iter().enumerate() {
        let mut table = Vec::with_capacity(k.pow(op.arity as u32));
        for tuple in TupleIter::new(vec![k; op.arity]) {
            let args: Vec<usize> = tuple.iter().map(|&c| class_reps[c]).collect();
            table.push(j.apply(alg.apply(i, &args)));
        }
        tables.push(table);
    }
    Ok((FiniteAlgebra::new(alg.sig.clone(), k, tables), j))
}

/// Factors `fprime` through the class projection: the unique `h` with
/// `h(j(x)) = fprime(x)`, provided the kernel of `fprime` contains the
/// congruence.
pub fn factor_through_quotient(fprime: &Mapping, cong: &Congruence) -> Result<Mapping> {
    if fprime.src_size != cong.carrier_size {
        return Err(Error::DimensionMismatch(format!(
            "map on {} elements against congruence on {}",
            fprime.src_size, cong.carrier_size
        )));
    }
    for x in 0..cong.carrier_size {
        for y in (x + 1)..cong.carrier_size {
            if cong.same(x, y) && fprime.apply(x) != fprime.apply(y) {
                return Err(Error::KernelTooSmall { x, y });
            }
        }
    }
    let classes = cong.classes();
    let values = classes.iter().map(|c| fprime.apply(c[0])).collect();
    Ok(Mapping::new(classes.len(), fprime.dst_size, values))
}

/// True iff `h` maps classes into classes; the least violating pair is
/// returned otherwise.
pub fn is_coordinated(h: &Mapping, cong: &Congruence) -> Result<Option<(usize, usize)>> {
    if h.src_size != cong.carrier_size || h.dst_size != cong.carrier_size {
        return Err(Error::DimensionMismatch(format!(
            "transformation {}->{} against congruence on {}",
            h.src_size, h.dst_size, cong.carrier_size
        )));
    }
    for x in 0..cong.carrier_size {
        for y in (x + 1)..cong.carrier_size {
            if cong.same(x, y) && !cong.same(h.apply(x), h.apply(y)) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn closure_on_z4_halves() {
        let z4 = fixtures::zn(4);
        let cong = congruence_closure(&z4, &[(0, 2)], &[]);
        assert_eq!(cong.classes(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn empty_seed_gives_discrete_partition() {
        let z4 = fixtures::zn(4);
        let cong = congruence_closure(&z4, &[], &[]);
        assert_eq!(cong, Congruence::discrete(4));
    }

    #[test]
    fn z2_single_pair_collapses_everything() {
        let z2 = fixtures::zn(2);
        let cong = congruence_closure(&z2, &[(0, 1)], &[]);
        assert_eq!(cong.class_count(), 1);
    }

    #[test]
    fn closure_is_idempotent() {
        let z4 = fixtures::zn(4);
        let cong = congruence_closure(&z4, &[(0, 2)], &[]);
        let again = congruence_closure(&z4, &cong.pairs(), &[]);
        assert_eq!(cong, again);
    }

    #[test]
    fn quotient_of_z4_by_halves_is_z2() {
        let z4 = fixtures::zn(4);
        let cong = congruence_closure(&z4, &[(0, 2)], &[]);
        let (q, j) = quotient_algebra(&z4, &cong).unwrap();
        assert_eq!(q.size, 2);
        let add = q.sig.op_index("add").unwrap();
        assert_eq!(q.apply(add, &[1, 1]), 0);
        assert_eq!(j.values, vec![0, 1, 0, 1]);
        assert_eq!(q, fixtures::zn(2));
    }

    #[test]
    fn quotient_by_discrete_partition_is_identity() {
        let z4 = fixtures::zn(4);
        let (q, j) = quotient_algebra(&z4, &Congruence::discrete(4)).unwrap();
        assert_eq!(q, z4);
        assert_eq!(j, Mapping::identity(4));
    }

    #[test]
    fn non_congruence_rejected_with_witness() {
        let z4 = fixtures::zn(4);
        let bad = Congruence::from_classes(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let err = quotient_algebra(&z4, &bad).unwrap_err();
        assert!(matches!(err, Error::NotACongruence { .. }));
    }

    #[test]
    fn factoring_the_projection_gives_identity() {
        let z4 = fixtures::zn(4);
        let cong = congruence_closure(&z4, &[(0, 2)], &[]);
        let (_, j) = quotient_algebra(&z4, &cong).unwrap();
        let h = factor_through_quotient(&j, &cong).unwrap();
        assert_eq!(h, Mapping::identity(2));
    }

    #[test]
    fn mod_two_map_factors_through_halves() {
        let cong = Congruence::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let f = Mapping::new(4, 2, vec![0, 1, 0, 1]);
        let h = factor_through_quotient(&f, &cong).unwrap();
        assert_eq!(h.values, vec![0, 1]);
    }

    #[test]
    fn identity_does_not_factor_through_merging() {
        let cong = Congruence::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let err = factor_through_quotient(&Mapping::identity(4), &cong).unwrap_err();
        assert_eq!(err, Error::KernelTooSmall { x: 0, y: 2 });
    }

    #[test]
    fn coordination_checks() {
        let cong = Congruence::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(is_coordinated(&Mapping::identity(4), &cong)
            .unwrap()
            .is_none());
        let const0 = Mapping::new(4, 4, vec![0; 4]);
        assert!(is_coordinated(&const0, &cong).unwrap().is_none());
        let h = Mapping::new(4, 4, vec![0, 1, 1, 3]);
        assert_eq!(is_coordinated(&h, &cong).unwrap(), Some((0, 2)));
    }

    #[test]
    fn factorization_is_unique() {
        // any g with g(j(x)) = f(x) agrees with h pointwise on classes since
        // j is surjective
        let cong = Congruence::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let f = Mapping::new(4, 2, vec![0, 1, 0, 1]);
        let h = factor_through_quotient(&f, &cong).unwrap();
        for values in TupleIter::new(vec![2; 2]) {
            let g = Mapping::new(2, 2, values);
            let agrees = (0..4).all(|x| g.apply(cong.class_index(x)) == f.apply(x));
            assert_eq!(agrees, g == h);
        }
    }
}
