//! Finite carriers for groups with operations, their homomorphisms,
//! subalgebra generation, automorphisms and pullbacks.
//!
//! A [`FiniteAlgebra`] is a finite set `{0, .., n-1}` with a group
//! operation written additively (`add`/`neg`, `0` the identity, no
//! commutativity assumed) and one extra binary operation table per entry
//! of its [`Signature`]. Element identity is the positional index; labels
//! are presentation only and never enter any computation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::bounds::{Budget, SearchLimit};
use crate::error::StructureError;

/// Laws that may be declared for one extra binary operation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpLaws {
    pub name: String,
    pub left_distributive: bool,
    pub right_distributive: bool,
    pub associative: bool,
    pub commutative: bool,
}

impl OpLaws {
    pub fn new(name: &str) -> Self {
        OpLaws { name: name.to_string(), ..OpLaws::default() }
    }

    pub fn distributive(name: &str) -> Self {
        OpLaws {
            name: name.to_string(),
            left_distributive: true,
            right_distributive: true,
            ..OpLaws::default()
        }
    }

    pub fn ring(name: &str) -> Self {
        OpLaws { associative: true, ..OpLaws::distributive(name) }
    }
}

/// The shape of an algebra: its extra operations and declared laws.
///
/// The group operation is implicit and never listed. Two algebras can
/// interact (homomorphisms, actions, pullbacks) only when their
/// signatures are equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub extra_ops: Vec<OpLaws>,
    pub group_commutative: bool,
}

impl Signature {
    /// Plain groups: no extra operations, no commutativity assumed.
    pub fn group() -> Self {
        Signature::default()
    }

    /// Non-associative rings: commutative addition and one bilinear
    /// multiplication.
    pub fn nonassociative_ring(op: &str) -> Self {
        Signature { extra_ops: vec![OpLaws::distributive(op)], group_commutative: true }
    }

    /// Associative (not necessarily unital) rings.
    pub fn ring(op: &str) -> Self {
        Signature { extra_ops: vec![OpLaws::ring(op)], group_commutative: true }
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.extra_ops.iter().position(|o| o.name == name)
    }

    pub fn check(&self) -> Result<(), StructureError> {
        let mut seen = BTreeSet::new();
        for op in &self.extra_ops {
            if op.name.is_empty() {
                return Err(StructureError::Shape("empty operation name".into()));
            }
            if !seen.insert(op.name.clone()) {
                return Err(StructureError::Shape(format!("duplicate operation name {}", op.name)));
            }
        }
        Ok(())
    }
}

/// A finite group-with-operations given by full operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub name: String,
    pub size: usize,
    /// `add[i][j]` is the group operation applied to `i` and `j`.
    pub add: Vec<Vec<usize>>,
    /// `neg[i]` is the group inverse of `i`.
    pub neg: Vec<usize>,
    /// One `size x size` table per entry of `signature.extra_ops`.
    pub op_tables: Vec<Vec<Vec<usize>>>,
    pub signature: Signature,
    /// Display names, one per element. Defaults to the decimal indices.
    pub labels: Vec<String>,
}

impl FiniteAlgebra {
    pub fn new(
        name: &str,
        signature: Signature,
        add: Vec<Vec<usize>>,
        neg: Vec<usize>,
        op_tables: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, StructureError> {
        let size = add.len();
        let labels = (0..size).map(|i| i.to_string()).collect();
        let alg = FiniteAlgebra { name: name.to_string(), size, add, neg, op_tables, signature, labels };
        alg.check_shape()?;
        Ok(alg)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, StructureError> {
        if labels.len() != self.size {
            return Err(StructureError::Shape(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Structural well-formedness: table dimensions and entry ranges.
    pub fn check_shape(&self) -> Result<(), StructureError> {
        self.signature.check()?;
        let n = self.size;
        if n == 0 {
            return Err(StructureError::Shape("empty carrier".into()));
        }
        let table_ok = |t: &Vec<Vec<usize>>, what: &str| -> Result<(), StructureError> {
            if t.len() != n {
                return Err(StructureError::Shape(format!("{what}: {} rows for size {n}", t.len())));
            }
            for (i, row) in t.iter().enumerate() {
                if row.len() != n {
                    return Err(StructureError::Shape(format!(
                        "{what}: row {i} has {} entries for size {n}",
                        row.len()
                    )));
                }
                for &v in row {
                    if v >= n {
                        return Err(StructureError::Range(format!("{what}[{i}] contains {v} >= {n}")));
                    }
                }
            }
            Ok(())
        };
        table_ok(&self.add, "add")?;
        if self.neg.len() != n {
            return Err(StructureError::Shape(format!("neg: {} entries for size {n}", self.neg.len())));
        }
        for &v in &self.neg {
            if v >= n {
                return Err(StructureError::Range(format!("neg contains {v} >= {n}")));
            }
        }
        if self.op_tables.len() != self.signature.extra_ops.len() {
            return Err(StructureError::Shape(format!(
                "{} op tables for {} declared operations",
                self.op_tables.len(),
                self.signature.extra_ops.len()
            )));
        }
        for (k, t) in self.op_tables.iter().enumerate() {
            table_ok(t, &self.signature.extra_ops[k].name)?;
        }
        if self.labels.len() != n {
            return Err(StructureError::Shape(format!(
                "{} labels for {} elements",
                self.labels.len(),
                n
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn sum(&self, i: usize, j: usize) -> usize {
        self.add[i][j]
    }

    #[inline]
    pub fn negate(&self, i: usize) -> usize {
        self.neg[i]
    }

    /// `i - j` in the group operation.
    #[inline]
    pub fn diff(&self, i: usize, j: usize) -> usize {
        self.add[i][self.neg[j]]
    }

    #[inline]
    pub fn op(&self, k: usize, i: usize, j: usize) -> usize {
        self.op_tables[k][i][j]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// The same tables under a different signature (used to judge one
    /// algebra against stricter or looser laws).
    pub fn with_signature(&self, signature: Signature) -> Result<Self, StructureError> {
        let mut a = self.clone();
        a.signature = signature;
        a.check_shape()?;
        Ok(a)
    }
}

/// One group or operation law, for naming violations in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawName {
    AddAssociative,
    ZeroLeftIdentity,
    ZeroRightIdentity,
    NegLeftInverse,
    NegRightInverse,
    AddCommutative,
    OpLeftDistributive(String),
    OpRightDistributive(String),
    OpAssociative(String),
    OpCommutative(String),
}

impl fmt::Display for LawName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawName::AddAssociative => write!(f, "add-associative"),
            LawName::ZeroLeftIdentity => write!(f, "zero-left-identity"),
            LawName::ZeroRightIdentity => write!(f, "zero-right-identity"),
            LawName::NegLeftInverse => write!(f, "neg-left-inverse"),
            LawName::NegRightInverse => write!(f, "neg-right-inverse"),
            LawName::AddCommutative => write!(f, "add-commutative"),
            LawName::OpLeftDistributive(op) => write!(f, "{op}-left-distributive"),
            LawName::OpRightDistributive(op) => write!(f, "{op}-right-distributive"),
            LawName::OpAssociative(op) => write!(f, "{op}-associative"),
            LawName::OpCommutative(op) => write!(f, "{op}-commutative"),
        }
    }
}

/// First violated law with a witness tuple, or a clean pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawReport {
    Pass,
    Violation { law: LawName, witness: Vec<usize> },
}

impl LawReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, LawReport::Pass)
    }
}

/// Checks the group axioms and every law declared in the signature,
/// exhaustively. Scans are in a fixed order so the reported witness is
/// deterministic.
pub fn validate_algebra(alg: &FiniteAlgebra) -> Result<LawReport, StructureError> {
    alg.check_shape()?;
    let n = alg.size;
    for i in 0..n {
        if alg.sum(0, i) != i {
            return Ok(LawReport::Violation { law: LawName::ZeroLeftIdentity, witness: vec![i] });
        }
        if alg.sum(i, 0) != i {
            return Ok(LawReport::Violation { law: LawName::ZeroRightIdentity, witness: vec![i] });
        }
        if alg.sum(alg.negate(i), i) != 0 {
            return Ok(LawReport::Violation { law: LawName::NegLeftInverse, witness: vec![i] });
        }
        if alg.sum(i, alg.negate(i)) != 0 {
            return Ok(LawReport::Violation { law: LawName::NegRightInverse, witness: vec![i] });
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if alg.sum(alg.sum(i, j), k) != alg.sum(i, alg.sum(j, k)) {
                    return Ok(LawReport::Violation {
                        law: LawName::AddAssociative,
                        witness: vec![i, j, k],
                    });
                }
            }
        }
    }
    if alg.signature.group_commutative {
        for i in 0..n {
            for j in 0..n {
                if alg.sum(i, j) != alg.sum(j, i) {
                    return Ok(LawReport::Violation {
                        law: LawName::AddCommutative,
                        witness: vec![i, j],
                    });
                }
            }
        }
    }
    for (idx, laws) in alg.signature.extra_ops.iter().enumerate() {
        let t = &alg.op_tables[idx];
        if laws.left_distributive {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if t[i][alg.sum(j, k)] != alg.sum(t[i][j], t[i][k]) {
                            return Ok(LawReport::Violation {
                                law: LawName::OpLeftDistributive(laws.name.clone()),
                                witness: vec![i, j, k],
                            });
                        }
                    }
                }
            }
        }
        if laws.right_distributive {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if t[alg.sum(i, j)][k] != alg.sum(t[i][k], t[j][k]) {
                            return Ok(LawReport::Violation {
                                law: LawName::OpRightDistributive(laws.name.clone()),
                                witness: vec![i, j, k],
                            });
                        }
                    }
                }
            }
        }
        if laws.associative {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if t[t[i][j]][k] != t[i][t[j][k]] {
                            return Ok(LawReport::Violation {
                                law: LawName::OpAssociative(laws.name.clone()),
                                witness: vec![i, j, k],
                            });
                        }
                    }
                }
            }
        }
        if laws.commutative {
            for i in 0..n {
                for j in 0..n {
                    if t[i][j] != t[j][i] {
                        return Ok(LawReport::Violation {
                            law: LawName::OpCommutative(laws.name.clone()),
                            witness: vec![i, j],
                        });
                    }
                }
            }
        }
    }
    Ok(LawReport::Pass)
}

/// A map between algebras of the same signature, given by a full table of
/// target indices. Construction checks shape only; the preservation
/// equations are the business of [`check_homomorphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        source: impl Into<Arc<FiniteAlgebra>>,
        target: impl Into<Arc<FiniteAlgebra>>,
        map: Vec<usize>,
    ) -> Result<Self, StructureError> {
        let source = source.into();
        let target = target.into();
        if source.signature != target.signature {
            return Err(StructureError::SignatureMismatch(format!(
                "{} -> {}",
                source.name, target.name
            )));
        }
        if map.len() != source.size {
            return Err(StructureError::Shape(format!(
                "map has {} entries for source size {}",
                map.len(),
                source.size
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size) {
            return Err(StructureError::Range(format!(
                "map entry {v} >= target size {}",
                target.size
            )));
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn identity(alg: impl Into<Arc<FiniteAlgebra>>) -> Self {
        let alg = alg.into();
        let map = (0..alg.size).collect();
        Homomorphism { source: alg.clone(), target: alg, map }
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<FiniteAlgebra> {
        self.source.clone()
    }

    pub fn target_arc(&self) -> Arc<FiniteAlgebra> {
        self.target.clone()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self` followed by `next`. Panics if the codomains do not line up;
    /// that is a programming error, not an input condition.
    pub fn then(&self, next: &Homomorphism) -> Homomorphism {
        assert_eq!(
            self.target, next.source,
            "composition mismatch: {} vs {}",
            self.target.name, next.source.name
        );
        Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&i| next.map[i]).collect(),
        }
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size == self.target.size && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Homomorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.size];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Some(Homomorphism { source: self.target.clone(), target: self.source.clone(), map: inv })
    }
}

/// Outcome of checking the preservation equations of one map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomReport {
    Pass,
    Violation { equation: String, witness: Vec<usize> },
}

impl HomReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, HomReport::Pass)
    }
}

/// Checks that a map preserves `0`, `add`, `neg` and every extra
/// operation, elementwise.
pub fn check_homomorphism(h: &Homomorphism) -> HomReport {
    let (a, b, m) = (h.source(), h.target(), &h.map);
    if m[0] != 0 {
        return HomReport::Violation { equation: "h(0) = 0".into(), witness: vec![0] };
    }
    for i in a.elements() {
        if m[a.negate(i)] != b.negate(m[i]) {
            return HomReport::Violation { equation: "h(-x) = -h(x)".into(), witness: vec![i] };
        }
        for j in a.elements() {
            if m[a.sum(i, j)] != b.sum(m[i], m[j]) {
                return HomReport::Violation {
                    equation: "h(x + y) = h(x) + h(y)".into(),
                    witness: vec![i, j],
                };
            }
        }
    }
    for (k, laws) in a.signature.extra_ops.iter().enumerate() {
        for i in a.elements() {
            for j in a.elements() {
                if m[a.op(k, i, j)] != b.op(k, m[i], m[j]) {
                    return HomReport::Violation {
                        equation: format!("h(x {0} y) = h(x) {0} h(y)", laws.name),
                        witness: vec![i, j],
                    };
                }
            }
        }
    }
    HomReport::Pass
}

/// Smallest subset containing `seed` and `0`, closed under `add`, `neg`
/// and all extra operations. Computed as the fixpoint of one-step
/// closure.
pub fn generated_subalgebra(alg: &FiniteAlgebra, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    for &s in seed {
        assert!(s < alg.size, "seed element {s} out of range for {}", alg.name);
    }
    let mut inside = vec![false; alg.size];
    inside[0] = true;
    for &s in seed {
        inside[s] = true;
    }
    loop {
        let mut changed = false;
        let current: Vec<usize> = (0..alg.size).filter(|&i| inside[i]).collect();
        for &i in &current {
            for &j in &current {
                for v in [alg.sum(i, j), alg.negate(i)] {
                    if !inside[v] {
                        inside[v] = true;
                        changed = true;
                    }
                }
                for k in 0..alg.op_tables.len() {
                    let v = alg.op(k, i, j);
                    if !inside[v] {
                        inside[v] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..alg.size).filter(|&i| inside[i]).collect()
}

/// Reifies a closed subset as an algebra of its own, renumbering in
/// increasing index order, together with the inclusion.
pub fn reify_subalgebra(
    alg: &Arc<FiniteAlgebra>,
    subset: &BTreeSet<usize>,
) -> Result<(Arc<FiniteAlgebra>, Homomorphism), StructureError> {
    let members: Vec<usize> = subset.iter().copied().collect();
    if !subset.contains(&0) {
        return Err(StructureError::NotClosed(format!("subset of {} misses 0", alg.name)));
    }
    let mut back = HashMap::new();
    for (new, &old) in members.iter().enumerate() {
        if old >= alg.size {
            return Err(StructureError::Range(format!("subset element {old} out of range")));
        }
        back.insert(old, new);
    }
    let find = |v: usize| -> Result<usize, StructureError> {
        back.get(&v).copied().ok_or_else(|| {
            StructureError::NotClosed(format!("{} is reachable but not in the subset", alg.label(v)))
        })
    };
    let n = members.len();
    let mut add = vec![vec![0; n]; n];
    let mut neg = vec![0; n];
    let mut op_tables = vec![vec![vec![0; n]; n]; alg.op_tables.len()];
    for (i, &oi) in members.iter().enumerate() {
        neg[i] = find(alg.negate(oi))?;
        for (j, &oj) in members.iter().enumerate() {
            add[i][j] = find(alg.sum(oi, oj))?;
            for k in 0..alg.op_tables.len() {
                op_tables[k][i][j] = find(alg.op(k, oi, oj))?;
            }
        }
    }
    let labels = members.iter().map(|&m| alg.labels[m].clone()).collect();
    let sub = FiniteAlgebra::new(
        &format!("sub({})", alg.name),
        alg.signature.clone(),
        add,
        neg,
        op_tables,
    )?
    .with_labels(labels)?;
    let sub = Arc::new(sub);
    let incl = Homomorphism::new(sub.clone(), alg.clone(), members)?;
    Ok((sub, incl))
}

/// Backtracking enumeration of all homomorphisms `src -> dst` that extend
/// the given seeds, with per-element candidate restriction. Partial maps
/// are closed under the operation tables before every branch, so the
/// effective branching set is a generating set of `src`.
pub(crate) fn homs_seeded(
    src: &FiniteAlgebra,
    dst: &FiniteAlgebra,
    seeds: &[(usize, usize)],
    allowed: &dyn Fn(usize) -> Vec<usize>,
    budget: &mut Budget,
) -> Result<Vec<Vec<usize>>, SearchLimit> {
    let mut partial: Vec<Option<usize>> = vec![None; src.size];
    partial[0] = Some(0);
    for &(i, v) in seeds {
        match partial[i] {
            Some(w) if w != v => return Ok(Vec::new()),
            _ => partial[i] = Some(v),
        }
    }
    let mut out = Vec::new();
    search_homs(src, dst, partial, allowed, budget, &mut out)?;
    out.sort();
    Ok(out)
}

fn propagate_hom(src: &FiniteAlgebra, dst: &FiniteAlgebra, partial: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        for i in 0..src.size {
            let Some(hi) = partial[i] else { continue };
            let ni = src.negate(i);
            let v = dst.negate(hi);
            match partial[ni] {
                None => {
                    partial[ni] = Some(v);
                    changed = true;
                }
                Some(w) if w != v => return false,
                _ => {}
            }
            for j in 0..src.size {
                let Some(hj) = partial[j] else { continue };
                let sij = src.sum(i, j);
                let v = dst.sum(hi, hj);
                match partial[sij] {
                    None => {
                        partial[sij] = Some(v);
                        changed = true;
                    }
                    Some(w) if w != v => return false,
                    _ => {}
                }
                for k in 0..src.op_tables.len() {
                    let oij = src.op(k, i, j);
                    let v = dst.op(k, hi, hj);
                    match partial[oij] {
                        None => {
                            partial[oij] = Some(v);
                            changed = true;
                        }
                        Some(w) if w != v => return false,
                        _ => {}
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search_homs(
    src: &FiniteAlgebra,
    dst: &FiniteAlgebra,
    mut partial: Vec<Option<usize>>,
    allowed: &dyn Fn(usize) -> Vec<usize>,
    budget: &mut Budget,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), SearchLimit> {
    budget.charge(1)?;
    if !propagate_hom(src, dst, &mut partial) {
        return Ok(());
    }
    match partial.iter().position(Option::is_none) {
        None => {
            // at the propagation fixpoint with everything assigned, every
            // preservation equation has been re-checked, so this is a hom
            out.push(partial.into_iter().map(Option::unwrap).collect());
            Ok(())
        }
        Some(free) => {
            for v in allowed(free) {
                let mut next = partial.clone();
                next[free] = Some(v);
                search_homs(src, dst, next, allowed, budget, out)?;
            }
            Ok(())
        }
    }
}

/// All homomorphisms `a -> b`, in lexicographic order of their map tables.
///
/// ```
/// use std::sync::Arc;
/// use cospan_core::algebra::hom_enumerate;
/// use cospan_core::catalog;
///
/// let c3 = Arc::new(catalog::cyclic(3));
/// let c2 = Arc::new(catalog::cyclic(2));
/// assert_eq!(hom_enumerate(&c3, &c2).unwrap().len(), 1); // only the zero map
/// assert_eq!(hom_enumerate(&c2, &c2).unwrap().len(), 2);
/// ```
pub fn hom_enumerate(
    a: &Arc<FiniteAlgebra>,
    b: &Arc<FiniteAlgebra>,
) -> Result<Vec<Homomorphism>, StructureError> {
    if a.signature != b.signature {
        return Err(StructureError::SignatureMismatch(format!("{} -> {}", a.name, b.name)));
    }
    let all: Vec<usize> = (0..b.size).collect();
    let maps = homs_seeded(a, b, &[], &|_| all.clone(), &mut Budget::unlimited())
        .expect("unlimited budget");
    Ok(maps
        .into_iter()
        .map(|map| Homomorphism { source: a.clone(), target: b.clone(), map })
        .collect())
}

/// All bijective endo-homomorphisms, in lexicographic map order (the
/// identity always comes first).
pub fn automorphism_group(x: &Arc<FiniteAlgebra>) -> Vec<Homomorphism> {
    hom_enumerate(x, x)
        .expect("same signature")
        .into_iter()
        .filter(Homomorphism::is_bijective)
        .collect()
}

/// The automorphism group reified as a `FiniteAlgebra` (group signature,
/// composition as the operation, identity at index 0), together with the
/// list of automorphisms in index order.
///
/// The composition convention is `table[i][j] = index of auts[i] after
/// auts[j]`, so a map `B -> Aut(X)` is a homomorphism exactly when it is
/// an action with `(b + b') . x = b . (b' . x)`.
pub fn automorphism_algebra(x: &Arc<FiniteAlgebra>) -> (Arc<FiniteAlgebra>, Vec<Homomorphism>) {
    let auts = automorphism_group(x);
    let n = auts.len();
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    for (i, a) in auts.iter().enumerate() {
        index.insert(a.map.as_slice(), i);
    }
    let mut add = vec![vec![0; n]; n];
    let mut neg = vec![0; n];
    for (i, a) in auts.iter().enumerate() {
        let inv = a.inverse().expect("automorphism");
        neg[i] = index[inv.map.as_slice()];
        for (j, b) in auts.iter().enumerate() {
            // apply b first, then a
            let comp: Vec<usize> = (0..x.size).map(|v| a.map[b.map[v]]).collect();
            add[i][j] = index[comp.as_slice()];
        }
    }
    let labels = (0..n).map(|i| format!("a{i}")).collect();
    let alg = FiniteAlgebra::new(&format!("Aut({})", x.name), Signature::group(), add, neg, vec![])
        .expect("well-formed")
        .with_labels(labels)
        .expect("well-formed");
    (Arc::new(alg), auts)
}

/// The pullback of two homomorphisms with a common codomain: pairs with
/// equal images, componentwise operations, and the two projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub algebra: Arc<FiniteAlgebra>,
    pub proj1: Homomorphism,
    pub proj2: Homomorphism,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Pullback {
    pub fn pair_of(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn index_of(&self, a: usize, c: usize) -> Option<usize> {
        self.index.get(&(a, c)).copied()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

pub fn pullback(f: &Homomorphism, g: &Homomorphism) -> Result<Pullback, StructureError> {
    if f.target() != g.target() {
        return Err(StructureError::CodomainMismatch(format!(
            "{} vs {}",
            f.target().name,
            g.target().name
        )));
    }
    let (a, c) = (f.source(), g.source());
    let mut pairs = Vec::new();
    for i in a.elements() {
        for j in c.elements() {
            if f.apply(i) == g.apply(j) {
                pairs.push((i, j));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let n = pairs.len();
    let look = |x: usize, y: usize| index[&(x, y)];
    let mut add = vec![vec![0; n]; n];
    let mut neg = vec![0; n];
    let mut op_tables = vec![vec![vec![0; n]; n]; a.op_tables.len()];
    for (i, &(x1, y1)) in pairs.iter().enumerate() {
        neg[i] = look(a.negate(x1), c.negate(y1));
        for (j, &(x2, y2)) in pairs.iter().enumerate() {
            add[i][j] = look(a.sum(x1, x2), c.sum(y1, y2));
            for k in 0..a.op_tables.len() {
                op_tables[k][i][j] = look(a.op(k, x1, x2), c.op(k, y1, y2));
            }
        }
    }
    let labels = pairs.iter().map(|&(x, y)| format!("({},{})", a.label(x), c.label(y))).collect();
    let alg = FiniteAlgebra::new(
        &format!("({}x{})", a.name, c.name),
        a.signature.clone(),
        add,
        neg,
        op_tables,
    )?
    .with_labels(labels)?;
    let alg = Arc::new(alg);
    let proj1 = Homomorphism::new(alg.clone(), f.source_arc(), pairs.iter().map(|&(x, _)| x).collect())?;
    let proj2 = Homomorphism::new(alg.clone(), g.source_arc(), pairs.iter().map(|&(_, y)| y).collect())?;
    Ok(Pullback { algebra: alg, proj1, proj2, pairs, index })
}

/// Triple pullback over a common codomain, with projections onto the
/// three double pullbacks (which must be the matching cached ones).
#[derive(Debug, Clone)]
pub struct TriplePullback {
    pub algebra: Arc<FiniteAlgebra>,
    pub proj12: Homomorphism,
    pub proj13: Homomorphism,
    pub proj23: Homomorphism,
    triples: Vec<(usize, usize, usize)>,
}

impl TriplePullback {
    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }
}

pub fn triple_pullback(
    f1: &Homomorphism,
    f2: &Homomorphism,
    f3: &Homomorphism,
    pb12: &Pullback,
    pb13: &Pullback,
    pb23: &Pullback,
) -> Result<TriplePullback, StructureError> {
    if f1.target() != f2.target() || f2.target() != f3.target() {
        return Err(StructureError::CodomainMismatch("triple pullback legs".into()));
    }
    let (a1, a2, a3) = (f1.source(), f2.source(), f3.source());
    let mut triples = Vec::new();
    for i in a1.elements() {
        for j in a2.elements() {
            if f1.apply(i) != f2.apply(j) {
                continue;
            }
            for k in a3.elements() {
                if f2.apply(j) == f3.apply(k) {
                    triples.push((i, j, k));
                }
            }
        }
    }
    let mut index = HashMap::new();
    for (t, &tr) in triples.iter().enumerate() {
        index.insert(tr, t);
    }
    let n = triples.len();
    let look = |x: usize, y: usize, z: usize| index[&(x, y, z)];
    let mut add = vec![vec![0; n]; n];
    let mut neg = vec![0; n];
    let mut op_tables = vec![vec![vec![0; n]; n]; a1.op_tables.len()];
    for (i, &(x1, y1, z1)) in triples.iter().enumerate() {
        neg[i] = look(a1.negate(x1), a2.negate(y1), a3.negate(z1));
        for (j, &(x2, y2, z2)) in triples.iter().enumerate() {
            add[i][j] = look(a1.sum(x1, x2), a2.sum(y1, y2), a3.sum(z1, z2));
            for k in 0..a1.op_tables.len() {
                op_tables[k][i][j] = look(a1.op(k, x1, x2), a2.op(k, y1, y2), a3.op(k, z1, z2));
            }
        }
    }
    let labels = triples
        .iter()
        .map(|&(x, y, z)| format!("({},{},{})", a1.label(x), a2.label(y), a3.label(z)))
        .collect();
    let alg = FiniteAlgebra::new(
        &format!("({}x{}x{})", a1.name, a2.name, a3.name),
        a1.signature.clone(),
        add,
        neg,
        op_tables,
    )?
    .with_labels(labels)?;
    let alg = Arc::new(alg);
    let to = |pb: &Pullback, sel: &dyn Fn(&(usize, usize, usize)) -> (usize, usize)| {
        let map = triples
            .iter()
            .map(|t| {
                let (u, v) = sel(t);
                pb.index_of(u, v).expect("projection lands in the double pullback")
            })
            .collect();
        Homomorphism::new(alg.clone(), pb.algebra.clone(), map)
    };
    let proj12 = to(pb12, &|&(x, y, _)| (x, y))?;
    let proj13 = to(pb13, &|&(x, _, z)| (x, z))?;
    let proj23 = to(pb23, &|&(_, y, z)| (y, z))?;
    Ok(TriplePullback { algebra: alg, proj12, proj13, proj23, triples })
}
