//! Congruences on finite groups with operations, cooperators, connectors
//! and the centralization-from-cooperation check built on them.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{
    check_homomorphism, generated_subalgebra, reify_subalgebra, FiniteAlgebra, Homomorphism,
};
use crate::catalog::direct_product;
use crate::error::StructureError;

/// An equivalence relation compatible with all operations: a subalgebra
/// of `A x A` containing the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    base: Arc<FiniteAlgebra>,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl Congruence {
    pub fn new(
        base: impl Into<Arc<FiniteAlgebra>>,
        pairs: BTreeSet<(usize, usize)>,
    ) -> Result<Self, StructureError> {
        let base = base.into();
        let n = base.size;
        for &(a, b) in &pairs {
            if a >= n || b >= n {
                return Err(StructureError::Range(format!("pair ({a},{b}) out of range")));
            }
        }
        for a in 0..n {
            if !pairs.contains(&(a, a)) {
                return Err(StructureError::NotCongruence(format!(
                    "missing reflexive pair at {}",
                    base.label(a)
                )));
            }
        }
        for &(a, b) in &pairs {
            if !pairs.contains(&(b, a)) {
                return Err(StructureError::NotCongruence(format!(
                    "not symmetric at ({},{})",
                    base.label(a),
                    base.label(b)
                )));
            }
        }
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if b == c && !pairs.contains(&(a, d)) {
                    return Err(StructureError::NotCongruence(format!(
                        "not transitive at ({},{},{})",
                        base.label(a),
                        base.label(b),
                        base.label(d)
                    )));
                }
                if !pairs.contains(&(base.sum(a, c), base.sum(b, d))) {
                    return Err(StructureError::NotCongruence(format!(
                        "not closed under add at ({},{}),({},{})",
                        base.label(a),
                        base.label(b),
                        base.label(c),
                        base.label(d)
                    )));
                }
                for k in 0..base.op_tables.len() {
                    if !pairs.contains(&(base.op(k, a, c), base.op(k, b, d))) {
                        return Err(StructureError::NotCongruence(format!(
                            "not closed under {} at ({},{}),({},{})",
                            base.signature.extra_ops[k].name,
                            base.label(a),
                            base.label(b),
                            base.label(c),
                            base.label(d)
                        )));
                    }
                }
            }
            if !pairs.contains(&(base.negate(a), base.negate(b))) {
                return Err(StructureError::NotCongruence(format!(
                    "not closed under neg at ({},{})",
                    base.label(a),
                    base.label(b)
                )));
            }
        }
        Ok(Congruence { base, pairs })
    }

    pub fn base(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn base_arc(&self) -> Arc<FiniteAlgebra> {
        self.base.clone()
    }

    pub fn diagonal(base: impl Into<Arc<FiniteAlgebra>>) -> Self {
        let base = base.into();
        let pairs = (0..base.size).map(|a| (a, a)).collect();
        Congruence { base, pairs }
    }

    pub fn total(base: impl Into<Arc<FiniteAlgebra>>) -> Self {
        let base = base.into();
        let n = base.size;
        let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        Congruence { base, pairs }
    }

    /// The congruence class of `0`, always a normal subalgebra.
    pub fn zero_class(&self) -> BTreeSet<usize> {
        self.pairs.iter().filter(|&&(_, b)| b == 0).map(|&(a, _)| a).collect()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }
}

/// Checks that a subset is a normal subalgebra (closed, stable under
/// conjugation, and an ideal for every extra operation) and returns the
/// congruence `a ~ a'` iff `a - a'` lies in it.
pub fn congruence_from_normal(
    base: &Arc<FiniteAlgebra>,
    subset: &BTreeSet<usize>,
) -> Result<Congruence, StructureError> {
    let closed = generated_subalgebra(base, subset);
    if &closed != subset {
        let extra = closed.difference(subset).next().unwrap();
        return Err(StructureError::NotClosed(format!(
            "{} is generated but missing",
            base.label(*extra)
        )));
    }
    for a in base.elements() {
        for &n in subset {
            let conj = base.sum(base.sum(a, n), base.negate(a));
            if !subset.contains(&conj) {
                return Err(StructureError::NotNormal(format!(
                    "conjugate of {} by {} escapes",
                    base.label(n),
                    base.label(a)
                )));
            }
            for k in 0..base.op_tables.len() {
                let name = &base.signature.extra_ops[k].name;
                if !subset.contains(&base.op(k, a, n)) {
                    return Err(StructureError::NotNormal(format!(
                        "{} {name} {} escapes",
                        base.label(a),
                        base.label(n)
                    )));
                }
                if !subset.contains(&base.op(k, n, a)) {
                    return Err(StructureError::NotNormal(format!(
                        "{} {name} {} escapes",
                        base.label(n),
                        base.label(a)
                    )));
                }
            }
        }
    }
    let mut pairs = BTreeSet::new();
    for a in base.elements() {
        for b in base.elements() {
            if subset.contains(&base.diff(a, b)) {
                pairs.insert((a, b));
            }
        }
    }
    Congruence::new(base.clone(), pairs)
}

/// The unique candidate cooperator `phi(x, y) = h(x) + k(y)` on the
/// product, if it is a homomorphism.
pub fn cooperator(
    h: &Homomorphism,
    k: &Homomorphism,
) -> Result<Option<Homomorphism>, StructureError> {
    if h.target() != k.target() {
        return Err(StructureError::CodomainMismatch(format!(
            "{} vs {}",
            h.target().name,
            k.target().name
        )));
    }
    let product = Arc::new(direct_product(h.source(), k.source()));
    let ysize = k.source().size;
    let map = (0..product.size)
        .map(|i| h.target().sum(h.apply(i / ysize), k.apply(i % ysize)))
        .collect();
    let phi = Homomorphism::new(product, h.target_arc(), map)?;
    Ok(check_homomorphism(&phi).is_pass().then_some(phi))
}

/// A partial Mal'tsev operation on the compatible triples of two
/// congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    /// Triples `(x, y, z)` with `x R y` and `y S z`, in lexicographic
    /// order.
    pub domain: Vec<(usize, usize, usize)>,
    /// `values[i]` is `p(domain[i])`.
    pub values: Vec<usize>,
}

/// Searches for a connector: `p` with `p(x,y,y) = x`, `p(y,y,z) = z`,
/// preserving all operations componentwise.
///
/// The degenerate triples generate the whole domain, so the unit
/// identities force every value by propagation; the search is therefore
/// complete and a failure is definitive.
pub fn connector(r: &Congruence, s: &Congruence) -> Result<Option<Connector>, StructureError> {
    if r.base() != s.base() {
        return Err(StructureError::BaseMismatch(format!(
            "{} vs {}",
            r.base().name,
            s.base().name
        )));
    }
    let a = r.base();
    let n = a.size;
    let mut domain = Vec::new();
    let mut index = vec![usize::MAX; n * n * n];
    for x in 0..n {
        for y in 0..n {
            if !r.related(x, y) {
                continue;
            }
            for z in 0..n {
                if s.related(y, z) {
                    index[(x * n + y) * n + z] = domain.len();
                    domain.push((x, y, z));
                }
            }
        }
    }
    let idx = |x: usize, y: usize, z: usize| index[(x * n + y) * n + z];
    let mut values: Vec<Option<usize>> = vec![None; domain.len()];
    let assign = |values: &mut Vec<Option<usize>>, t: usize, v: usize| -> bool {
        match values[t] {
            None => {
                values[t] = Some(v);
                true
            }
            Some(w) => w == v,
        }
    };
    // unit identities seed the degenerate triples
    for (t, &(x, y, z)) in domain.iter().enumerate() {
        if y == z && !assign(&mut values, t, x) {
            return Ok(None);
        }
        if x == y && !assign(&mut values, t, z) {
            return Ok(None);
        }
    }
    // propagate along the group operation: every triple is
    // (x,y,y) - (y,y,y) + (y,y,z)
    for (t, &(x, y, z)) in domain.iter().enumerate() {
        let v = a.sum(a.diff(x, y), z);
        if !assign(&mut values, t, v) {
            return Ok(None);
        }
    }
    let values: Vec<usize> = values.into_iter().map(|v| v.expect("all triples forced")).collect();
    // verify homomorphy on the componentwise operations
    for (t1, &(x1, y1, z1)) in domain.iter().enumerate() {
        let n1 = idx(a.negate(x1), a.negate(y1), a.negate(z1));
        if values[n1] != a.negate(values[t1]) {
            return Ok(None);
        }
        for (t2, &(x2, y2, z2)) in domain.iter().enumerate() {
            let sum = idx(a.sum(x1, x2), a.sum(y1, y2), a.sum(z1, z2));
            if values[sum] != a.sum(values[t1], values[t2]) {
                return Ok(None);
            }
            for k in 0..a.op_tables.len() {
                let prod = idx(a.op(k, x1, x2), a.op(k, y1, y2), a.op(k, z1, z2));
                if values[prod] != a.op(k, values[t1], values[t2]) {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(Connector { domain, values }))
}

/// Verdict of the centralization-from-cooperation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShVerdict {
    pub cooperates: bool,
    pub connects: bool,
    pub sh_respected: bool,
}

/// Extracts the normal subalgebras of the two congruences, asks whether
/// their inclusions admit a cooperator, and whether the congruences admit
/// a connector. The verdict holds when cooperation implies connection.
pub fn check_sh_instance(r: &Congruence, s: &Congruence) -> Result<ShVerdict, StructureError> {
    if r.base() != s.base() {
        return Err(StructureError::BaseMismatch(format!(
            "{} vs {}",
            r.base().name,
            s.base().name
        )));
    }
    let base = r.base_arc();
    let (_, h) = reify_subalgebra(&base, &r.zero_class())?;
    let (_, k) = reify_subalgebra(&base, &s.zero_class())?;
    let cooperates = cooperator(&h, &k)?.is_some();
    let connects = connector(r, s)?.is_some();
    Ok(ShVerdict { cooperates, connects, sh_respected: !cooperates || connects })
}
