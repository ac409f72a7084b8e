//! Cospans, descent data and the comparison functor, plus the decision
//! procedures built on them: full faithfulness at instance level, action
//! extension along a cospan, and reconstruction of a point from a datum.
//!
//! All canonical isomorphisms are computed elementwise from the concrete
//! pullback cleavage of [`crate::points`]; the coherence diagrams are
//! checked by composing honest point morphisms and comparing maps.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::actions::{restrict_action, semidirect_product, validate_action, ActionDatum};
use crate::algebra::{
    automorphism_algebra, generated_subalgebra, pullback, triple_pullback, FiniteAlgebra,
    Homomorphism, Pullback, Signature, TriplePullback,
};
use crate::bounds::{Budget, SearchBounds, SearchLimit};
use crate::error::StructureError;
use crate::points::{
    comparison_iso, identity_comparison, is_point_isomorphism, kernel_of_point, point_morphisms,
    pullback_point, pullback_point_morphism, Point, PointMorphism,
};
use crate::terms::{var_counts, CrossIdentity, Evaluator, IdentityViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Limit(#[from] SearchLimit),
}

/// A cospan `f: A -> B <- C :g` with its double and triple pullbacks and
/// diagonals cached at construction.
#[derive(Debug, Clone)]
pub struct Cospan {
    pub f: Homomorphism,
    pub g: Homomorphism,
    pub aa: Pullback,
    pub ac: Pullback,
    pub cc: Pullback,
    pub aaa: TriplePullback,
    pub aac: TriplePullback,
    pub acc: TriplePullback,
    pub ccc: TriplePullback,
    pub delta_a: Homomorphism,
    pub delta_c: Homomorphism,
}

impl Cospan {
    pub fn new(f: Homomorphism, g: Homomorphism) -> Result<Self, StructureError> {
        if f.target() != g.target() {
            return Err(StructureError::CodomainMismatch(format!(
                "{} vs {}",
                f.target().name,
                g.target().name
            )));
        }
        let aa = pullback(&f, &f)?;
        let ac = pullback(&f, &g)?;
        let cc = pullback(&g, &g)?;
        let aaa = triple_pullback(&f, &f, &f, &aa, &aa, &aa)?;
        let aac = triple_pullback(&f, &f, &g, &aa, &ac, &ac)?;
        let acc = triple_pullback(&f, &g, &g, &ac, &ac, &cc)?;
        let ccc = triple_pullback(&g, &g, &g, &cc, &cc, &cc)?;
        let delta = |pb: &Pullback, src: &Homomorphism| {
            let map = src
                .source()
                .elements()
                .map(|a| pb.index_of(a, a).expect("diagonal pair present"))
                .collect();
            Homomorphism::new(src.source_arc(), pb.algebra.clone(), map)
        };
        let delta_a = delta(&aa, &f)?;
        let delta_c = delta(&cc, &g)?;
        Ok(Cospan { f, g, aa, ac, cc, aaa, aac, acc, ccc, delta_a, delta_c })
    }

    pub fn base(&self) -> &FiniteAlgebra {
        self.f.target()
    }

    pub fn base_arc(&self) -> Arc<FiniteAlgebra> {
        self.f.target_arc()
    }
}

/// In a variety of groups with operations a cospan is extremal
/// epimorphic exactly when the two images jointly generate the codomain.
pub fn is_extremal_epi(cs: &Cospan) -> bool {
    let mut seed: BTreeSet<usize> = cs.f.image();
    seed.extend(cs.g.image());
    generated_subalgebra(cs.base(), &seed).len() == cs.base().size
}

/// Descent data for a cospan: a point over each foot and coherence
/// isomorphisms over the three double pullbacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentDatum {
    /// The point over `A`.
    pub left: Point,
    /// The point over `C`.
    pub right: Point,
    /// `pi1* left -> pi2* left` over `A x_B A`.
    pub a: PointMorphism,
    /// `pi1* left -> pi2* right` over `A x_B C`.
    pub b: PointMorphism,
    /// `pi1* right -> pi2* right` over `C x_B C`.
    pub c: PointMorphism,
}

/// Names of the coherence diagrams, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentDiagram {
    IsoA,
    IsoB,
    IsoC,
    UnitLeft,
    UnitRight,
    CocycleAAA,
    CocycleAAC,
    CocycleACC,
    CocycleCCC,
}

impl std::fmt::Display for DescentDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            DescentDiagram::IsoA => "iso-a",
            DescentDiagram::IsoB => "iso-b",
            DescentDiagram::IsoC => "iso-c",
            DescentDiagram::UnitLeft => "unit-A",
            DescentDiagram::UnitRight => "unit-C",
            DescentDiagram::CocycleAAA => "cocycle-AAA",
            DescentDiagram::CocycleAAC => "cocycle-AAC",
            DescentDiagram::CocycleACC => "cocycle-ACC",
            DescentDiagram::CocycleCCC => "cocycle-CCC",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentReport {
    Valid,
    Invalid { diagram: DescentDiagram, witness: Option<(usize, String)> },
}

impl DescentReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, DescentReport::Valid)
    }
}

/// The comparison functor on objects: both pullbacks of a point over the
/// base, glued by the canonical isomorphisms of the cleavage.
pub fn phi(cs: &Cospan, point: &Point) -> DescentDatum {
    assert_eq!(point.base(), cs.base(), "phi needs a point over the cospan base");
    let left = pullback_point(&cs.f, point);
    let right = pullback_point(&cs.g, point);
    let glue = |pb: &Pullback, v1: &Homomorphism, v2: &Homomorphism| {
        comparison_iso(&pb.proj1, v1, point).then(
            &comparison_iso(&pb.proj2, v2, point)
                .inverse()
                .expect("comparison isomorphisms are bijective"),
        )
    };
    let a = glue(&cs.aa, &cs.f, &cs.f);
    let b = glue(&cs.ac, &cs.f, &cs.g);
    let c = glue(&cs.cc, &cs.g, &cs.g);
    DescentDatum { left, right, a, b, c }
}

fn check_shape(cs: &Cospan, d: &DescentDatum) -> Result<(), StructureError> {
    if d.left.base() != cs.f.source() || d.right.base() != cs.g.source() {
        return Err(StructureError::CospanMismatch("datum feet do not match the cospan".into()));
    }
    let expect = |m: &PointMorphism,
                  src: (&Pullback, &Point),
                  dst: (&Pullback, &Point),
                  what: &str|
     -> Result<(), StructureError> {
        if m.source != pullback_point(&src.0.proj1, src.1)
            || m.target != pullback_point(&dst.0.proj2, dst.1)
        {
            return Err(StructureError::CospanMismatch(format!(
                "{what} is not a morphism between the canonical pullbacks"
            )));
        }
        Ok(())
    };
    expect(&d.a, (&cs.aa, &d.left), (&cs.aa, &d.left), "a")?;
    expect(&d.b, (&cs.ac, &d.left), (&cs.ac, &d.right), "b")?;
    expect(&d.c, (&cs.cc, &d.right), (&cs.cc, &d.right), "c")?;
    Ok(())
}

fn unit_witness(
    delta: &Homomorphism,
    pb: &Pullback,
    object: &Point,
    iso: &PointMorphism,
) -> Option<(usize, String)> {
    let leg1 = comparison_iso(delta, &pb.proj1, object).then(&identity_comparison(object));
    let leg2 = comparison_iso(delta, &pb.proj2, object).then(&identity_comparison(object));
    let actual = pullback_point_morphism(delta, iso).then(&leg2);
    first_difference(&actual, &leg1)
}

#[allow(clippy::too_many_arguments)]
fn hexagon_witness(
    t: &TriplePullback,
    pb12: &Pullback,
    pb13: &Pullback,
    pb23: &Pullback,
    m12: &PointMorphism,
    m13: &PointMorphism,
    m23: &PointMorphism,
    o_first: &Point,
    o_mid: &Point,
    o_last: &Point,
) -> Option<(usize, String)> {
    let inv = |m: PointMorphism| m.inverse().expect("comparison isomorphisms are bijective");
    let e1 = comparison_iso(&t.proj12, &pb12.proj2, o_mid)
        .then(&inv(comparison_iso(&t.proj23, &pb23.proj1, o_mid)));
    let top = pullback_point_morphism(&t.proj12, m12)
        .then(&e1)
        .then(&pullback_point_morphism(&t.proj23, m23));
    let e2 = comparison_iso(&t.proj12, &pb12.proj1, o_first)
        .then(&inv(comparison_iso(&t.proj13, &pb13.proj1, o_first)));
    let e3 = comparison_iso(&t.proj13, &pb13.proj2, o_last)
        .then(&inv(comparison_iso(&t.proj23, &pb23.proj2, o_last)));
    let bottom = e2.then(&pullback_point_morphism(&t.proj13, m13)).then(&e3);
    first_difference(&top, &bottom)
}

fn first_difference(m1: &PointMorphism, m2: &PointMorphism) -> Option<(usize, String)> {
    debug_assert_eq!(m1.source, m2.source);
    debug_assert_eq!(m1.target, m2.target);
    (0..m1.h.map.len())
        .find(|&i| m1.h.map[i] != m2.h.map[i])
        .map(|i| (i, m1.source.total().label(i).to_string()))
}

/// Checks isomorphism status, the two unit triangles, and the four
/// cocycle hexagons, in that order; the first failure is reported with a
/// witness element.
pub fn validate_descent_datum(
    cs: &Cospan,
    d: &DescentDatum,
) -> Result<DescentReport, StructureError> {
    check_shape(cs, d)?;
    for (m, diagram) in [
        (&d.a, DescentDiagram::IsoA),
        (&d.b, DescentDiagram::IsoB),
        (&d.c, DescentDiagram::IsoC),
    ] {
        if !is_point_isomorphism(m) {
            return Ok(DescentReport::Invalid { diagram, witness: None });
        }
    }
    if let Some(witness) = unit_witness(&cs.delta_a, &cs.aa, &d.left, &d.a) {
        return Ok(DescentReport::Invalid {
            diagram: DescentDiagram::UnitLeft,
            witness: Some(witness),
        });
    }
    if let Some(witness) = unit_witness(&cs.delta_c, &cs.cc, &d.right, &d.c) {
        return Ok(DescentReport::Invalid {
            diagram: DescentDiagram::UnitRight,
            witness: Some(witness),
        });
    }
    let hexagons = [
        (
            DescentDiagram::CocycleAAA,
            hexagon_witness(
                &cs.aaa, &cs.aa, &cs.aa, &cs.aa, &d.a, &d.a, &d.a, &d.left, &d.left, &d.left,
            ),
        ),
        (
            DescentDiagram::CocycleAAC,
            hexagon_witness(
                &cs.aac, &cs.aa, &cs.ac, &cs.ac, &d.a, &d.b, &d.b, &d.left, &d.left, &d.right,
            ),
        ),
        (
            DescentDiagram::CocycleACC,
            hexagon_witness(
                &cs.acc, &cs.ac, &cs.ac, &cs.cc, &d.b, &d.b, &d.c, &d.left, &d.right, &d.right,
            ),
        ),
        (
            DescentDiagram::CocycleCCC,
            hexagon_witness(
                &cs.ccc, &cs.cc, &cs.cc, &cs.cc, &d.c, &d.c, &d.c, &d.right, &d.right, &d.right,
            ),
        ),
    ];
    for (diagram, witness) in hexagons {
        if let Some(witness) = witness {
            return Ok(DescentReport::Invalid { diagram, witness: Some(witness) });
        }
    }
    Ok(DescentReport::Valid)
}

/// A morphism of descent data: a pair of point morphisms compatible with
/// the three coherence isomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentMorphism {
    pub source: DescentDatum,
    pub target: DescentDatum,
    pub h: PointMorphism,
    pub k: PointMorphism,
}

fn squares_commute(
    cs: &Cospan,
    d1: &DescentDatum,
    d2: &DescentDatum,
    h: &PointMorphism,
    k: &PointMorphism,
) -> bool {
    let square = |pb: &Pullback,
                  iso1: &PointMorphism,
                  iso2: &PointMorphism,
                  m1: &PointMorphism,
                  m2: &PointMorphism| {
        let lhs = pullback_point_morphism(&pb.proj1, m1).then(iso2);
        let rhs = iso1.then(&pullback_point_morphism(&pb.proj2, m2));
        lhs.h.map == rhs.h.map
    };
    square(&cs.aa, &d1.a, &d2.a, h, h)
        && square(&cs.ac, &d1.b, &d2.b, h, k)
        && square(&cs.cc, &d1.c, &d2.c, k, k)
}

/// All morphisms of descent data `d1 -> d2`, in lexicographic order of
/// the two underlying maps.
pub fn descent_morphisms(
    cs: &Cospan,
    d1: &DescentDatum,
    d2: &DescentDatum,
) -> Result<Vec<DescentMorphism>, StructureError> {
    check_shape(cs, d1)?;
    check_shape(cs, d2)?;
    let hs = point_morphisms(&d1.left, &d2.left)?;
    let ks = point_morphisms(&d1.right, &d2.right)?;
    let mut out = Vec::new();
    for h in &hs {
        for k in &ks {
            if squares_commute(cs, d1, d2, h, k) {
                out.push(DescentMorphism {
                    source: d1.clone(),
                    target: d2.clone(),
                    h: h.clone(),
                    k: k.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// The comparison functor on morphisms.
pub fn phi_morphism(cs: &Cospan, j: &PointMorphism) -> DescentMorphism {
    DescentMorphism {
        source: phi(cs, &j.source),
        target: phi(cs, &j.target),
        h: pullback_point_morphism(&cs.f, j),
        k: pullback_point_morphism(&cs.g, j),
    }
}

/// Instance-level full faithfulness of the comparison functor between
/// two points over the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullyFaithfulReport {
    pub faithful: bool,
    pub full: bool,
    pub point_morphisms: usize,
    pub descent_morphisms: usize,
    /// Maps `(h, k)` of a descent morphism with no preimage, when
    /// fullness fails.
    pub unmatched: Option<(Vec<usize>, Vec<usize>)>,
    /// Indices of two point morphisms with the same image, when
    /// faithfulness fails.
    pub collision: Option<(usize, usize)>,
}

pub fn check_fully_faithful(
    cs: &Cospan,
    p: &Point,
    q: &Point,
) -> Result<FullyFaithfulReport, StructureError> {
    if p.base() != q.base() || p.base() != cs.base() {
        return Err(StructureError::BaseMismatch("points must live over the cospan base".into()));
    }
    let dp = phi(cs, p);
    let dq = phi(cs, q);
    let pms = point_morphisms(p, q)?;
    let dms = descent_morphisms(cs, &dp, &dq)?;
    let images: Vec<(Vec<usize>, Vec<usize>)> = pms
        .iter()
        .map(|j| {
            (pullback_point_morphism(&cs.f, j).h.map, pullback_point_morphism(&cs.g, j).h.map)
        })
        .collect();
    let mut collision = None;
    'outer: for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] == images[j] {
                collision = Some((i, j));
                break 'outer;
            }
        }
    }
    let mut unmatched = None;
    for dm in &dms {
        let key = (dm.h.h.map.clone(), dm.k.h.map.clone());
        if !images.contains(&key) {
            unmatched = Some(key);
            break;
        }
    }
    Ok(FullyFaithfulReport {
        faithful: collision.is_none(),
        full: unmatched.is_none(),
        point_morphisms: pms.len(),
        descent_morphisms: dms.len(),
        unmatched,
        collision,
    })
}

/// How to search for action extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendMethod {
    /// Enumerate the whole candidate space and filter: homomorphisms
    /// into the automorphism group for the group signature, raw tables
    /// otherwise.
    Oracle,
    /// Seed the tables along the cospan images, close under the laws,
    /// and branch only on genuinely free entries.
    Propagate,
}

/// All actions of the cospan base on `X` restricting to the two given
/// actions along the legs, in canonical table order.
pub fn extend_action(
    cs: &Cospan,
    xi_a: &ActionDatum,
    xi_c: &ActionDatum,
    method: ExtendMethod,
    bounds: &SearchBounds,
) -> Result<Vec<ActionDatum>, DescentError> {
    if xi_a.actor() != cs.f.source() || xi_c.actor() != cs.g.source() {
        return Err(StructureError::CospanMismatch(
            "action actors do not match the cospan feet".into(),
        )
        .into());
    }
    if xi_a.acted() != xi_c.acted() {
        return Err(StructureError::SignatureMismatch(
            "the two actions act on different objects".into(),
        )
        .into());
    }
    let seeds = Some((xi_a, xi_c));
    let mut found = match method {
        ExtendMethod::Oracle => oracle_actions(cs, xi_a.acted_arc(), seeds, bounds)?,
        ExtendMethod::Propagate => propagate_actions(cs, xi_a.acted_arc(), seeds, bounds)?,
    };
    found.sort_by_key(ActionDatum::sort_key);
    Ok(found)
}

/// Uniqueness of action extensions: at most one action of the base may
/// restrict to the given pair.
#[derive(Debug, Clone)]
pub struct UaVerdict {
    pub holds: bool,
    pub extensions: Vec<ActionDatum>,
}

pub fn check_ua_instance(
    cs: &Cospan,
    xi_a: &ActionDatum,
    xi_c: &ActionDatum,
    method: ExtendMethod,
    bounds: &SearchBounds,
) -> Result<UaVerdict, DescentError> {
    let extensions = extend_action(cs, xi_a, xi_c, method, bounds)?;
    Ok(UaVerdict { holds: extensions.len() <= 1, extensions })
}

fn filter_restrictions(
    cs: &Cospan,
    candidate: &ActionDatum,
    seeds: &Option<(&ActionDatum, &ActionDatum)>,
) -> bool {
    match seeds {
        None => true,
        Some((xi_a, xi_c)) => {
            restrict_action(&cs.f, candidate) == **xi_a
                && restrict_action(&cs.g, candidate) == **xi_c
        }
    }
}

fn oracle_actions(
    cs: &Cospan,
    acted: Arc<FiniteAlgebra>,
    seeds: Option<(&ActionDatum, &ActionDatum)>,
    bounds: &SearchBounds,
) -> Result<Vec<ActionDatum>, DescentError> {
    let base = cs.base_arc();
    let laws = base.signature.clone();
    if laws.extra_ops.is_empty() {
        if base.size > bounds.oracle_max_base || acted.size > bounds.oracle_max_acted {
            return Err(SearchLimit::OracleBounds(format!(
                "group oracle admits |B| <= {} and |X| <= {}, got {} and {}",
                bounds.oracle_max_base, bounds.oracle_max_acted, base.size, acted.size
            ))
            .into());
        }
        let (aut, auts) = automorphism_algebra(&acted);
        let mut budget = Budget::new(bounds.budget);
        let all: Vec<usize> = (0..aut.size).collect();
        let maps = crate::algebra::homs_seeded(&base, &aut, &[], &|_| all.clone(), &mut budget)?;
        let mut out = Vec::new();
        for map in maps {
            let dot = map.iter().map(|&i| auts[i].map.clone()).collect();
            let cand = ActionDatum::new(base.clone(), acted.clone(), dot, vec![], vec![])
                .expect("well-shaped tables");
            if filter_restrictions(cs, &cand, &seeds) {
                out.push(cand);
            }
        }
        return Ok(out);
    }
    // general signature: enumerate raw table assignments
    if base.size * acted.size > bounds.oracle_max_table {
        return Err(SearchLimit::OracleBounds(format!(
            "table oracle admits |B| * |X| <= {}, got {}",
            bounds.oracle_max_table,
            base.size * acted.size
        ))
        .into());
    }
    let ops = laws.extra_ops.len();
    let cells = base.size * acted.size * (1 + 2 * ops);
    let mut total: u128 = 1;
    for _ in 0..cells {
        total = total.saturating_mul(acted.size as u128);
        if total > bounds.budget as u128 {
            return Err(SearchLimit::BudgetExhausted { budget: bounds.budget }.into());
        }
    }
    let mut out = Vec::new();
    let mut assignment = vec![0usize; cells];
    loop {
        let cand = action_from_cells(&base, &acted, &assignment, ops);
        if filter_restrictions(cs, &cand, &seeds)
            && validate_action(&cand, &laws)?.is_valid()
        {
            out.push(cand);
        }
        let mut pos = 0;
        loop {
            if pos == cells {
                return Ok(out);
            }
            assignment[pos] += 1;
            if assignment[pos] < acted.size {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

fn action_from_cells(
    base: &Arc<FiniteAlgebra>,
    acted: &Arc<FiniteAlgebra>,
    cells: &[usize],
    ops: usize,
) -> ActionDatum {
    let (nb, nx) = (base.size, acted.size);
    let mut it = cells.iter().copied();
    let mut take_rows = |rows: usize, cols: usize| -> Vec<Vec<usize>> {
        (0..rows).map(|_| (0..cols).map(|_| it.next().expect("cell count")).collect()).collect()
    };
    let dot = take_rows(nb, nx);
    let mut star_left = Vec::new();
    let mut star_right = Vec::new();
    for _ in 0..ops {
        star_left.push(take_rows(nb, nx));
        star_right.push(take_rows(nx, nb));
    }
    ActionDatum::new(base.clone(), acted.clone(), dot, star_left, star_right)
        .expect("well-shaped tables")
}

/// Partial assignment used by the propagation search.
#[derive(Clone)]
struct PartialAction {
    nb: usize,
    nx: usize,
    ops: usize,
    dot: Vec<Option<Vec<usize>>>,
    sl: Vec<Vec<Vec<Option<usize>>>>,
    sr: Vec<Vec<Vec<Option<usize>>>>,
}

impl PartialAction {
    fn new(nb: usize, nx: usize, ops: usize) -> Self {
        PartialAction {
            nb,
            nx,
            ops,
            dot: vec![None; nb],
            sl: vec![vec![vec![None; nx]; nb]; ops],
            sr: vec![vec![vec![None; nb]; nx]; ops],
        }
    }

    fn set_dot(&mut self, b: usize, row: Vec<usize>) -> bool {
        match &self.dot[b] {
            None => {
                self.dot[b] = Some(row);
                true
            }
            Some(existing) => *existing == row,
        }
    }

    fn set_sl(&mut self, k: usize, b: usize, x: usize, v: usize) -> bool {
        match self.sl[k][b][x] {
            None => {
                self.sl[k][b][x] = Some(v);
                true
            }
            Some(w) => w == v,
        }
    }

    fn set_sr(&mut self, k: usize, x: usize, b: usize, v: usize) -> bool {
        match self.sr[k][x][b] {
            None => {
                self.sr[k][x][b] = Some(v);
                true
            }
            Some(w) => w == v,
        }
    }
}

/// Closes a partial action under consequences of the declared laws.
/// Returns false on conflict. Every rule is a theorem about valid
/// actions, so no valid completion is ever pruned.
fn propagate_action(state: &mut PartialAction, base: &FiniteAlgebra, acted: &FiniteAlgebra) -> bool {
    let laws = &base.signature;
    if !state.set_dot(0, (0..state.nx).collect()) {
        return false;
    }
    if laws.group_commutative {
        for b in 0..state.nb {
            if !state.set_dot(b, (0..state.nx).collect()) {
                return false;
            }
        }
    }
    for k in 0..state.ops {
        for x in 0..state.nx {
            if !state.set_sl(k, 0, x, 0) || !state.set_sr(k, x, 0, 0) {
                return false;
            }
        }
        if laws.extra_ops[k].left_distributive {
            for b in 0..state.nb {
                if !state.set_sl(k, b, 0, 0) {
                    return false;
                }
            }
        }
        if laws.extra_ops[k].right_distributive {
            for b in 0..state.nb {
                if !state.set_sr(k, 0, b, 0) {
                    return false;
                }
            }
        }
    }
    loop {
        let mut changed = false;
        // dot rows compose along the base group operation
        for b1 in 0..state.nb {
            let Some(r1) = state.dot[b1].clone() else { continue };
            for b2 in 0..state.nb {
                let Some(r2) = state.dot[b2].clone() else { continue };
                let composed: Vec<usize> = (0..state.nx).map(|x| r1[r2[x]]).collect();
                let b12 = base.sum(b1, b2);
                match &state.dot[b12] {
                    None => {
                        state.dot[b12] = Some(composed);
                        changed = true;
                    }
                    Some(existing) => {
                        if *existing != composed {
                            return false;
                        }
                    }
                }
            }
        }
        for k in 0..state.ops {
            let op = &laws.extra_ops[k];
            if op.right_distributive {
                // star-left rows are additive in the actor
                for b1 in 0..state.nb {
                    for b2 in 0..state.nb {
                        let b12 = base.sum(b1, b2);
                        for x in 0..state.nx {
                            match (state.sl[k][b1][x], state.sl[k][b2][x], state.sl[k][b12][x]) {
                                (Some(v1), Some(v2), prev) => {
                                    if !state.set_sl(k, b12, x, acted.sum(v1, v2)) {
                                        return false;
                                    }
                                    changed |= prev.is_none();
                                }
                                (Some(v1), None, Some(v12)) => {
                                    state.sl[k][b2][x] =
                                        Some(acted.sum(acted.negate(v1), v12));
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                    }
                }
                // star-right rows are additive in the acted argument
                for x1 in 0..state.nx {
                    for x2 in 0..state.nx {
                        let x12 = acted.sum(x1, x2);
                        for b in 0..state.nb {
                            if let (Some(v1), Some(v2)) = (state.sr[k][x1][b], state.sr[k][x2][b]) {
                                let prev = state.sr[k][x12][b];
                                if !state.set_sr(k, x12, b, acted.sum(v1, v2)) {
                                    return false;
                                }
                                changed |= prev.is_none();
                            }
                        }
                    }
                }
            }
            if op.left_distributive {
                // star-right rows are additive in the actor
                for b1 in 0..state.nb {
                    for b2 in 0..state.nb {
                        let b12 = base.sum(b1, b2);
                        for x in 0..state.nx {
                            match (state.sr[k][x][b1], state.sr[k][x][b2], state.sr[k][x][b12]) {
                                (Some(v1), Some(v2), prev) => {
                                    if !state.set_sr(k, x, b12, acted.sum(v1, v2)) {
                                        return false;
                                    }
                                    changed |= prev.is_none();
                                }
                                (Some(v1), None, Some(v12)) => {
                                    state.sr[k][x][b2] =
                                        Some(acted.sum(acted.negate(v1), v12));
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                    }
                }
                // star-left rows are additive in the acted argument
                for x1 in 0..state.nx {
                    for x2 in 0..state.nx {
                        let x12 = acted.sum(x1, x2);
                        for b in 0..state.nb {
                            if let (Some(v1), Some(v2)) = (state.sl[k][b][x1], state.sl[k][b][x2]) {
                                let prev = state.sl[k][b][x12];
                                if !state.set_sl(k, b, x12, acted.sum(v1, v2)) {
                                    return false;
                                }
                                changed |= prev.is_none();
                            }
                        }
                    }
                }
            }
            if op.associative {
                for b1 in 0..state.nb {
                    for b2 in 0..state.nb {
                        let b12 = base.op(k, b1, b2);
                        for x in 0..state.nx {
                            if let Some(inner) = state.sl[k][b2][x] {
                                if let Some(outer) = state.sl[k][b1][inner] {
                                    let prev = state.sl[k][b12][x];
                                    if !state.set_sl(k, b12, x, outer) {
                                        return false;
                                    }
                                    changed |= prev.is_none();
                                }
                            }
                            if let Some(inner) = state.sr[k][x][b1] {
                                if let Some(outer) = state.sr[k][inner][b2] {
                                    let prev = state.sr[k][x][b12];
                                    if !state.set_sr(k, x, b12, outer) {
                                        return false;
                                    }
                                    changed |= prev.is_none();
                                }
                            }
                        }
                    }
                }
            }
            if op.commutative {
                for b in 0..state.nb {
                    for x in 0..state.nx {
                        if let Some(v) = state.sl[k][b][x] {
                            let prev = state.sr[k][x][b];
                            if !state.set_sr(k, x, b, v) {
                                return false;
                            }
                            changed |= prev.is_none();
                        }
                        if let Some(v) = state.sr[k][x][b] {
                            let prev = state.sl[k][b][x];
                            if !state.set_sl(k, b, x, v) {
                                return false;
                            }
                            changed |= prev.is_none();
                        }
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn propagate_actions(
    cs: &Cospan,
    acted: Arc<FiniteAlgebra>,
    seeds: Option<(&ActionDatum, &ActionDatum)>,
    bounds: &SearchBounds,
) -> Result<Vec<ActionDatum>, DescentError> {
    let base = cs.base_arc();
    let laws = base.signature.clone();
    let ops = laws.extra_ops.len();
    let mut state = PartialAction::new(base.size, acted.size, ops);
    if let Some((xi_a, xi_c)) = seeds {
        for (leg, xi) in [(&cs.f, xi_a), (&cs.g, xi_c)] {
            for a in leg.source().elements() {
                let b = leg.apply(a);
                if !state.set_dot(b, xi.dot[a].clone()) {
                    return Ok(Vec::new());
                }
                for k in 0..ops {
                    for x in acted.elements() {
                        if !state.set_sl(k, b, x, xi.star_left[k][a][x])
                            || !state.set_sr(k, x, b, xi.star_right[k][x][a])
                        {
                            return Ok(Vec::new());
                        }
                    }
                }
            }
        }
    }
    // candidate rows for free group parts: automorphisms of the group
    // reduct of the acted object
    let reduct = Arc::new(
        FiniteAlgebra::new(
            &format!("{}|group", acted.name),
            Signature::group(),
            acted.add.clone(),
            acted.neg.clone(),
            vec![],
        )
        .expect("group reduct"),
    );
    let row_candidates: Vec<Vec<usize>> =
        crate::algebra::automorphism_group(&reduct).into_iter().map(|h| h.map).collect();
    let mut budget = Budget::new(bounds.budget);
    let mut out = Vec::new();
    search_actions(cs, &base, &acted, &laws, state, &row_candidates, &seeds, &mut budget, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_actions(
    cs: &Cospan,
    base: &Arc<FiniteAlgebra>,
    acted: &Arc<FiniteAlgebra>,
    laws: &Signature,
    mut state: PartialAction,
    row_candidates: &[Vec<usize>],
    seeds: &Option<(&ActionDatum, &ActionDatum)>,
    budget: &mut Budget,
    out: &mut Vec<ActionDatum>,
) -> Result<(), DescentError> {
    budget.charge(1).map_err(DescentError::from)?;
    if !propagate_action(&mut state, base, acted) {
        return Ok(());
    }
    // first free slot, in a fixed order: dot rows, then star cells
    if let Some(b) = (0..state.nb).find(|&b| state.dot[b].is_none()) {
        for row in row_candidates {
            let mut next = state.clone();
            next.dot[b] = Some(row.clone());
            search_actions(cs, base, acted, laws, next, row_candidates, seeds, budget, out)?;
        }
        return Ok(());
    }
    for k in 0..state.ops {
        for b in 0..state.nb {
            for x in 0..state.nx {
                if state.sl[k][b][x].is_none() {
                    for v in 0..state.nx {
                        let mut next = state.clone();
                        next.sl[k][b][x] = Some(v);
                        search_actions(
                            cs, base, acted, laws, next, row_candidates, seeds, budget, out,
                        )?;
                    }
                    return Ok(());
                }
            }
        }
        for x in 0..state.nx {
            for b in 0..state.nb {
                if state.sr[k][x][b].is_none() {
                    for v in 0..state.nx {
                        let mut next = state.clone();
                        next.sr[k][x][b] = Some(v);
                        search_actions(
                            cs, base, acted, laws, next, row_candidates, seeds, budget, out,
                        )?;
                    }
                    return Ok(());
                }
            }
        }
    }
    // complete assignment: final validation keeps the search sound
    let dot = state.dot.into_iter().map(Option::unwrap).collect();
    let unwrap3 = |t: Vec<Vec<Vec<Option<usize>>>>| -> Vec<Vec<Vec<usize>>> {
        t.into_iter()
            .map(|m| m.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect())
            .collect()
    };
    let cand =
        ActionDatum::new(base.clone(), acted.clone(), dot, unwrap3(state.sl), unwrap3(state.sr))
            .expect("well-shaped tables");
    if filter_restrictions(cs, &cand, seeds) && validate_action(&cand, laws)?.is_valid() {
        out.push(cand);
    }
    Ok(())
}

/// Outcome of the reconstruction search for a descent datum.
#[derive(Debug, Clone)]
pub enum SurjOutcome {
    /// A point over the base whose image is isomorphic to the datum.
    Witness(Box<Point>),
    /// The bounded search space was exhausted with no witness.
    DefinitiveNone,
}

impl SurjOutcome {
    pub fn witness(&self) -> Option<&Point> {
        match self {
            SurjOutcome::Witness(p) => Some(p),
            SurjOutcome::DefinitiveNone => None,
        }
    }
}

/// Searches for a point over the base whose image under the comparison
/// functor is isomorphic to the given datum. The candidate space is all
/// actions of the base on the datum's kernel; an isomorphic witness, if
/// one exists, always induces one of those, so exhaustion is definitive.
pub fn essential_surjectivity_witness(
    cs: &Cospan,
    d: &DescentDatum,
    bounds: &SearchBounds,
) -> Result<SurjOutcome, DescentError> {
    check_shape(cs, d)?;
    let kernel = kernel_of_point(&d.left);
    let x = kernel.kernel_arc();
    let signature = &cs.base().signature;
    let candidates = if signature.extra_ops.is_empty() {
        oracle_actions(cs, x, None, bounds)?
    } else {
        propagate_actions(cs, x, None, bounds)?
    };
    for xi in candidates {
        let point = semidirect_product(&xi).point;
        let image = phi(cs, &point);
        let isos = descent_morphisms(cs, &image, d)?;
        if isos.iter().any(|m| is_point_isomorphism(&m.h) && is_point_isomorphism(&m.k)) {
            return Ok(SurjOutcome::Witness(Box::new(point)));
        }
    }
    // exhaustion is definitive only where every point is a split
    // extension of an action on its kernel, which needs the star values
    // to stay in the kernel: two-sided distributivity for each operation
    if signature.extra_ops.iter().all(|o| o.left_distributive && o.right_distributive) {
        Ok(SurjOutcome::DefinitiveNone)
    } else {
        Err(SearchLimit::OracleBounds(
            "points over a signature without two-sided distributivity need not arise from \
             action tables, so exhausting them is inconclusive"
                .into(),
        )
        .into())
    }
}

/// Evaluates mixed identities over all variable assignments, reporting
/// every violation with its witness tuple and both side values.
pub fn cross_identity_check(
    xi_a: &ActionDatum,
    xi_c: &ActionDatum,
    identities: &[CrossIdentity],
) -> Result<Vec<IdentityViolation>, StructureError> {
    if xi_a.acted() != xi_c.acted() {
        return Err(StructureError::SignatureMismatch(
            "the two actions act on different objects".into(),
        ));
    }
    let eval = Evaluator { xi_a, xi_c };
    for id in identities {
        eval.check(&id.lhs)?;
        eval.check(&id.rhs)?;
        if id.lhs.sort()? != crate::terms::TermSort::Acted
            || id.rhs.sort()? != crate::terms::TermSort::Acted
        {
            return Err(StructureError::IllSorted(format!(
                "identity {} must compare acted-sort terms",
                id.display
            )));
        }
    }
    let mut violations = Vec::new();
    for (idx, id) in identities.iter().enumerate() {
        let (nx, na, nc) = var_counts(id);
        let sizes =
            [vec![xi_a.acted().size; nx], vec![xi_a.actor().size; na], vec![xi_c.actor().size; nc]];
        let mut assignment: Vec<Vec<usize>> =
            sizes.iter().map(|group| vec![0; group.len()]).collect();
        loop {
            let lhs = eval.eval(&id.lhs, &assignment[0], &assignment[1], &assignment[2]);
            let rhs = eval.eval(&id.rhs, &assignment[0], &assignment[1], &assignment[2]);
            if lhs != rhs {
                violations.push(IdentityViolation {
                    identity: idx,
                    acted_vars: assignment[0].clone(),
                    actor_a_vars: assignment[1].clone(),
                    actor_c_vars: assignment[2].clone(),
                    lhs_value: lhs,
                    rhs_value: rhs,
                });
            }
            // odometer over all variable groups
            let mut done = true;
            'step: for (group, szs) in assignment.iter_mut().zip(&sizes) {
                for (slot, &size) in group.iter_mut().zip(szs) {
                    *slot += 1;
                    if *slot < size {
                        done = false;
                        break 'step;
                    }
                    *slot = 0;
                }
            }
            if done {
                break;
            }
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{check_equivariance, ActionDatum};
    use crate::algebra::{hom_enumerate, reify_subalgebra};
    use crate::catalog;
    use crate::points::KernelEmbedding;
    use crate::terms::{ActorSide, Term, TermSort};

    fn arc(a: FiniteAlgebra) -> Arc<FiniteAlgebra> {
        Arc::new(a)
    }

    /// The inclusion cospan C3 -> S3 <- C2.
    fn s3_cospan() -> Cospan {
        let s3 = arc(catalog::symmetric3());
        let c3 = arc(catalog::cyclic(3));
        let c2 = arc(catalog::cyclic(2));
        let f = Homomorphism::new(c3, s3.clone(), vec![0, 1, 2]).unwrap();
        let g = Homomorphism::new(c2, s3, vec![0, 3]).unwrap();
        Cospan::new(f, g).unwrap()
    }

    fn identity_cospan(b: &Arc<FiniteAlgebra>) -> Cospan {
        Cospan::new(Homomorphism::identity(b.clone()), Homomorphism::identity(b.clone())).unwrap()
    }

    /// Coordinate shift of C3 on (Z/n)^3.
    fn shift_action(n: usize, actor: Arc<FiniteAlgebra>) -> ActionDatum {
        let cube = arc(catalog::vector_cube(n));
        let size = cube.size;
        let shift = |i: usize| {
            let (x, y, z) = (i / (n * n), (i / n) % n, i % n);
            (y * n + z) * n + x
        };
        let mut dot = vec![(0..size).collect::<Vec<_>>(), vec![0; size], vec![0; size]];
        for i in 0..size {
            dot[1][i] = shift(i);
            dot[2][i] = shift(shift(i));
        }
        ActionDatum::new(actor, cube, dot, vec![], vec![]).unwrap()
    }

    /// Sign-conjugation point over S3 with kernel C3.
    fn conjugation_point() -> Point {
        let s3 = arc(catalog::symmetric3());
        let c3 = arc(catalog::cyclic(3));
        let dot = s3
            .elements()
            .map(|b| c3.elements().map(|x| s3.sum(s3.sum(b, x), s3.negate(b))).collect())
            .collect();
        let conj = ActionDatum::new(s3, c3, dot, vec![], vec![]).unwrap();
        semidirect_product(&conj).point
    }

    #[test]
    fn extremal_epi_examples() {
        let cs = s3_cospan();
        assert!(is_extremal_epi(&cs));

        // the rotation inclusion twice only generates the rotations
        let s3 = arc(catalog::symmetric3());
        let c3 = arc(catalog::cyclic(3));
        let f = Homomorphism::new(c3.clone(), s3.clone(), vec![0, 1, 2]).unwrap();
        let g = Homomorphism::new(c3, s3.clone(), vec![0, 1, 2]).unwrap();
        assert!(!is_extremal_epi(&Cospan::new(f, g).unwrap()));

        // an identity leg generates everything
        let id_leg = Cospan::new(
            Homomorphism::identity(s3.clone()),
            Homomorphism::new(arc(catalog::cyclic(2)), s3, vec![0, 3]).unwrap(),
        )
        .unwrap();
        assert!(is_extremal_epi(&id_leg));
    }

    #[test]
    fn phi_of_identity_cospan_is_valid() {
        let c6 = arc(catalog::cyclic(6));
        let cs = identity_cospan(&c6);
        let xi = ActionDatum::trivial(c6.clone(), arc(catalog::cyclic(3))).unwrap();
        let p = semidirect_product(&xi).point;
        let d = phi(&cs, &p);
        assert!(validate_descent_datum(&cs, &d).unwrap().is_valid());
    }

    #[test]
    fn phi_of_conjugation_point_over_s3_cospan() {
        let cs = s3_cospan();
        let p = conjugation_point();
        let d = phi(&cs, &p);
        // the middle pullback is trivial, so b lives over a single point
        assert_eq!(cs.ac.algebra.size, 1);
        assert_eq!(d.b.source.base().size, 1);
        assert!(validate_descent_datum(&cs, &d).unwrap().is_valid());
    }

    #[test]
    fn twisted_datum_fails_the_left_unit_first() {
        let s3 = arc(catalog::symmetric3());
        let cs = identity_cospan(&s3);
        let xi = ActionDatum::trivial(s3.clone(), arc(catalog::cyclic(3))).unwrap();
        let p = semidirect_product(&xi).point;
        let mut d = phi(&cs, &p);
        // twist a by a nontrivial automorphism of the pulled-back point:
        // negate the kernel part fibrewise
        let twisted: Vec<usize> = d
            .a
            .target
            .total()
            .elements()
            .map(|i| {
                let t = d.a.target.p.apply(i);
                let e = d.a.h.map.iter().position(|_| false);
                let _ = e;
                // elements of the pullback total are (q, e) pairs with e
                // in the semidirect carrier X x B; negate the X part
                let inner = crate::points::pullback_point_full(&cs.aa.proj2, &p);
                let e = inner.to_inner.apply(i);
                let (x, b) = crate::actions::sdp_split(e, s3.size);
                let xneg = (3 - x) % 3;
                let e2 = crate::actions::sdp_index(xneg, b, s3.size);
                inner
                    .point
                    .total()
                    .elements()
                    .find(|&j| inner.point.p.apply(j) == t && inner.to_inner.apply(j) == e2)
                    .unwrap()
            })
            .collect();
        let tw = Homomorphism::new(d.a.target.total_arc(), d.a.target.total_arc(), twisted).unwrap();
        let tw = PointMorphism::new(d.a.target.clone(), d.a.target.clone(), tw).unwrap();
        d.a = d.a.then(&tw);
        match validate_descent_datum(&cs, &d).unwrap() {
            DescentReport::Invalid { diagram, witness } => {
                assert_eq!(diagram, DescentDiagram::UnitLeft);
                assert!(witness.is_some());
                assert_eq!(diagram.to_string(), "unit-A");
            }
            DescentReport::Valid => panic!("twist must break the unit condition"),
        }
    }

    #[test]
    fn corrupted_cocycle_is_reported_after_the_units() {
        // quotient leg, so the kernel-pair base has off-diagonal
        // elements the unit triangles never see
        let c4 = arc(catalog::cyclic(4));
        let c2 = arc(catalog::cyclic(2));
        let f = Homomorphism::new(c4, c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let cs = Cospan::new(f, Homomorphism::identity(c2.clone())).unwrap();
        let xi = ActionDatum::trivial(cs.base_arc(), arc(catalog::cyclic(3))).unwrap();
        let p = semidirect_product(&xi).point;
        let mut d = phi(&cs, &p);
        // swap two fibre elements of `a` over an off-diagonal base point
        let off_diagonal = cs
            .aa
            .algebra
            .elements()
            .find(|&q| {
                let (u, v) = cs.aa.pair_of(q);
                u != v
            })
            .expect("quotient legs have off-diagonal pairs");
        let mut map = d.a.h.map.clone();
        let section = d.a.source.s.apply(off_diagonal);
        let fibre: Vec<usize> = d
            .a
            .source
            .total()
            .elements()
            .filter(|&i| d.a.source.p.apply(i) == off_diagonal && i != section)
            .collect();
        map.swap(fibre[0], fibre[1]);
        let h = Homomorphism::new(d.a.source.total_arc(), d.a.target.total_arc(), map).unwrap();
        // bypass morphism validation on purpose: the checker must still
        // localize the failure to a named diagram
        d.a = PointMorphism { source: d.a.source.clone(), target: d.a.target.clone(), h };
        match validate_descent_datum(&cs, &d).unwrap() {
            DescentReport::Invalid { diagram, witness } => {
                assert_eq!(diagram, DescentDiagram::CocycleAAA);
                assert!(witness.is_some());
            }
            DescentReport::Valid => panic!("corruption must be detected"),
        }
    }

    #[test]
    fn datum_over_the_wrong_cospan_is_a_structural_error() {
        let cs = s3_cospan();
        let p = conjugation_point();
        let d = phi(&cs, &p);
        let other = identity_cospan(&arc(catalog::symmetric3()));
        assert!(matches!(
            validate_descent_datum(&other, &d),
            Err(StructureError::CospanMismatch(_))
        ));
    }

    #[test]
    fn descent_morphisms_contain_the_image_of_the_identity() {
        let cs = s3_cospan();
        let p = conjugation_point();
        let d = phi(&cs, &p);
        let ms = descent_morphisms(&cs, &d, &d).unwrap();
        let id_image = phi_morphism(&cs, &PointMorphism::identity(&p));
        assert!(ms
            .iter()
            .any(|m| m.h.h.map == id_image.h.h.map && m.k.h.map == id_image.k.h.map));
    }

    #[test]
    fn descent_morphisms_between_coprime_trivial_products_count_hom_pairs() {
        let c2 = arc(catalog::cyclic(2));
        let cs = identity_cospan(&c2);
        let x = arc(catalog::cyclic(3));
        let y = arc(catalog::cyclic(2));
        let p = semidirect_product(&ActionDatum::trivial(c2.clone(), x.clone()).unwrap()).point;
        let q = semidirect_product(&ActionDatum::trivial(c2.clone(), y.clone()).unwrap()).point;
        let d1 = phi(&cs, &p);
        let d2 = phi(&cs, &q);
        let ms = descent_morphisms(&cs, &d1, &d2).unwrap();
        let homs = hom_enumerate(&x, &y).unwrap().len();
        assert_eq!(ms.len(), homs * homs);
        assert_eq!(ms.len(), 1);
    }

    #[test]
    fn phi_preserves_identities_and_composites() {
        let cs = s3_cospan();
        let p = conjugation_point();
        let endos = point_morphisms(&p, &p).unwrap();
        for m1 in &endos {
            for m2 in &endos {
                let lhs = phi_morphism(&cs, &m1.then(m2));
                let rhs_h = phi_morphism(&cs, m1).h.then(&phi_morphism(&cs, m2).h);
                let rhs_k = phi_morphism(&cs, m1).k.then(&phi_morphism(&cs, m2).k);
                assert_eq!(lhs.h.h.map, rhs_h.h.map);
                assert_eq!(lhs.k.h.map, rhs_k.h.map);
            }
        }
        let id_img = phi_morphism(&cs, &PointMorphism::identity(&p));
        assert!(id_img.h.h.map == (0..id_img.h.source.total().size).collect::<Vec<_>>());
    }

    #[test]
    fn fully_faithful_on_group_instances() {
        let cs = s3_cospan();
        let p = conjugation_point();
        let triv =
            semidirect_product(&ActionDatum::trivial(cs.base_arc(), arc(catalog::cyclic(3))).unwrap())
                .point;
        for (lhs, rhs) in [(&p, &p), (&p, &triv), (&triv, &p), (&triv, &triv)] {
            let report = check_fully_faithful(&cs, lhs, rhs).unwrap();
            assert!(report.faithful && report.full, "{report:?}");
            assert_eq!(report.point_morphisms, report.descent_morphisms);
        }
    }

    #[test]
    fn fully_faithful_over_the_identity_cospan() {
        let s3 = arc(catalog::symmetric3());
        let cs = identity_cospan(&s3);
        let p = conjugation_point();
        let report = check_fully_faithful(&cs, &p, &p).unwrap();
        assert!(report.faithful && report.full);
    }

    #[test]
    fn extend_shift_and_trivial_has_no_common_extension() {
        let cs = s3_cospan();
        let rho = shift_action(2, cs.f.source_arc());
        let tau = ActionDatum::trivial(cs.g.source_arc(), rho.acted_arc()).unwrap();
        let bounds = SearchBounds::default();
        let via_oracle = extend_action(&cs, &rho, &tau, ExtendMethod::Oracle, &bounds).unwrap();
        let via_prop = extend_action(&cs, &rho, &tau, ExtendMethod::Propagate, &bounds).unwrap();
        assert!(via_oracle.is_empty());
        assert!(via_prop.is_empty());
        assert!(!check_ua_instance(&cs, &rho, &tau, ExtendMethod::Propagate, &bounds)
            .unwrap()
            .extensions
            .iter()
            .any(|_| true));
    }

    #[test]
    fn trivial_restrictions_force_the_trivial_extension() {
        let cs = s3_cospan();
        let x = arc(catalog::cyclic(3));
        let xi_a = ActionDatum::trivial(cs.f.source_arc(), x.clone()).unwrap();
        let xi_c = ActionDatum::trivial(cs.g.source_arc(), x.clone()).unwrap();
        let bounds = SearchBounds::default();
        for method in [ExtendMethod::Oracle, ExtendMethod::Propagate] {
            let found = extend_action(&cs, &xi_a, &xi_c, method, &bounds).unwrap();
            assert_eq!(found.len(), 1);
            assert_eq!(found[0], ActionDatum::trivial(cs.base_arc(), x.clone()).unwrap());
        }
    }

    fn span_cospan(n: usize) -> (Cospan, ActionDatum, ActionDatum) {
        let xi = crate::actions::tests::span_action(n, 1, 1);
        let tau = crate::actions::tests::span_action(n, 0, 0);
        let a_n = xi.actor_arc();
        let xs = generated_subalgebra(&a_n, &BTreeSet::from([n * n]));
        let (_, i) = reify_subalgebra(&a_n, &xs).unwrap();
        let ys = generated_subalgebra(&a_n, &BTreeSet::from([n]));
        let (_, j) = reify_subalgebra(&a_n, &ys).unwrap();
        let cs = Cospan::new(i, j).unwrap();
        (cs, xi, tau)
    }

    #[test]
    fn span_ring_cospan_breaks_uniqueness_of_extensions() {
        for n in [2usize, 3] {
            let (cs, xi, tau) = span_cospan(n);
            assert!(is_extremal_epi(&cs));
            let xi_a = restrict_action(&cs.f, &xi);
            let xi_c = restrict_action(&cs.g, &xi);
            assert_eq!(xi_a, restrict_action(&cs.f, &tau));
            assert_eq!(xi_c, restrict_action(&cs.g, &tau));
            let bounds = SearchBounds::default();
            let verdict =
                check_ua_instance(&cs, &xi_a, &xi_c, ExtendMethod::Propagate, &bounds).unwrap();
            assert!(!verdict.holds);
            assert_eq!(verdict.extensions.len(), n * n);
            assert!(verdict.extensions.contains(&xi));
            assert!(verdict.extensions.contains(&tau));
        }
    }

    #[test]
    fn identity_cospan_extensions_are_unique() {
        let s3 = arc(catalog::symmetric3());
        let cs = identity_cospan(&s3);
        let x = arc(catalog::cyclic(3));
        let conj_dot: Vec<Vec<usize>> = s3
            .elements()
            .map(|b| x.elements().map(|v| s3.sum(s3.sum(b, v), s3.negate(b))).collect())
            .collect();
        let conj = ActionDatum::new(s3.clone(), x, conj_dot, vec![], vec![]).unwrap();
        let bounds = SearchBounds::default();
        let verdict =
            check_ua_instance(&cs, &conj, &conj, ExtendMethod::Propagate, &bounds).unwrap();
        assert!(verdict.holds);
        assert_eq!(verdict.extensions, vec![conj]);
    }

    #[test]
    fn non_extremal_cospans_can_have_several_extensions() {
        // both legs the rotation inclusion: the reflections are
        // unconstrained, so trivial restrictions extend two ways
        let s3 = arc(catalog::symmetric3());
        let c3 = arc(catalog::cyclic(3));
        let f = Homomorphism::new(c3.clone(), s3.clone(), vec![0, 1, 2]).unwrap();
        let cs = Cospan::new(f.clone(), f).unwrap();
        assert!(!is_extremal_epi(&cs));
        let x = arc(catalog::cyclic(3));
        let xi = ActionDatum::trivial(c3, x).unwrap();
        let bounds = SearchBounds::default();
        let found = extend_action(&cs, &xi, &xi, ExtendMethod::Oracle, &bounds).unwrap();
        assert_eq!(found.len(), 2);
        assert_eq!(
            found,
            extend_action(&cs, &xi, &xi, ExtendMethod::Propagate, &bounds).unwrap()
        );
    }

    #[test]
    fn oracle_and_propagation_agree_on_a_table_instance() {
        // tiny ring cospan where raw table enumeration is feasible
        let sig = Signature::ring("mul");
        let z2 = arc(crate::actions::tests::zmod_ring(2, sig.clone()));
        let cs = Cospan::new(
            Homomorphism::identity(z2.clone()),
            Homomorphism::identity(z2.clone()),
        )
        .unwrap();
        let x = arc(crate::actions::tests::zmod_ring(2, sig));
        let xi = ActionDatum::trivial(z2.clone(), x.clone()).unwrap();
        let bounds = SearchBounds::default();
        let via_oracle = extend_action(&cs, &xi, &xi, ExtendMethod::Oracle, &bounds).unwrap();
        let via_prop = extend_action(&cs, &xi, &xi, ExtendMethod::Propagate, &bounds).unwrap();
        assert_eq!(via_oracle, via_prop);
        assert_eq!(via_oracle.len(), 1);
    }

    #[test]
    fn propagation_enumerates_the_same_sets_as_raw_tables() {
        // trivial-subring legs leave everything unconstrained, so both
        // methods sweep the full action space of the base; the raw
        // oracle is feasible at these sizes and pins the propagation
        // search exactly
        let bounds = SearchBounds::default();
        for laws in [
            Signature::nonassociative_ring("mul"),
            Signature::ring("mul"),
            {
                let mut s = Signature::ring("mul");
                s.extra_ops[0].commutative = true;
                s
            },
        ] {
            for zero_mult in [false, true] {
                let mut base = crate::actions::tests::zmod_ring(2, laws.clone());
                if zero_mult {
                    base.op_tables[0] = vec![vec![0, 0], vec![0, 0]];
                }
                let base = arc(base);
                let x = arc(crate::actions::tests::zmod_ring(2, laws.clone()));
                let (triv, incl) = reify_subalgebra(&base, &BTreeSet::from([0])).unwrap();
                let cs = Cospan::new(incl.clone(), incl).unwrap();
                let seed = ActionDatum::trivial(triv.clone(), x.clone()).unwrap();
                let via_oracle =
                    extend_action(&cs, &seed, &seed, ExtendMethod::Oracle, &bounds).unwrap();
                let via_prop =
                    extend_action(&cs, &seed, &seed, ExtendMethod::Propagate, &bounds).unwrap();
                assert_eq!(
                    via_oracle, via_prop,
                    "laws {laws:?}, zero multiplication {zero_mult}"
                );
                assert!(!via_oracle.is_empty());
            }
        }
    }

    #[test]
    fn propagation_respects_its_budget() {
        let (cs, xi, _) = span_cospan(3);
        let xi_a = restrict_action(&cs.f, &xi);
        let xi_c = restrict_action(&cs.g, &xi);
        let bounds = SearchBounds { budget: 2, ..SearchBounds::default() };
        match extend_action(&cs, &xi_a, &xi_c, ExtendMethod::Propagate, &bounds) {
            Err(DescentError::Limit(SearchLimit::BudgetExhausted { budget: 2 })) => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn oracle_reports_inconclusive_when_out_of_bounds() {
        let (cs, xi, tau) = span_cospan(2);
        let xi_a = restrict_action(&cs.f, &xi);
        let xi_c = restrict_action(&cs.g, &tau);
        let bounds = SearchBounds { oracle_max_table: 4, ..SearchBounds::default() };
        match extend_action(&cs, &xi_a, &xi_c, ExtendMethod::Oracle, &bounds) {
            Err(DescentError::Limit(_)) => {}
            other => panic!("expected a search limit, got {other:?}"),
        }
    }

    #[test]
    fn surjectivity_witness_for_an_image_datum() {
        let cs = s3_cospan();
        let p = conjugation_point();
        let d = phi(&cs, &p);
        let out = essential_surjectivity_witness(&cs, &d, &SearchBounds::default()).unwrap();
        let witness = out.witness().expect("image data are representable");
        let dd = phi(&cs, witness);
        let isos = descent_morphisms(&cs, &dd, &d).unwrap();
        assert!(isos.iter().any(|m| is_point_isomorphism(&m.h) && is_point_isomorphism(&m.k)));
    }

    /// The fixture datum: shift point over C3, trivial point over C2,
    /// canonical kernel identifications.
    fn shift_fixture_datum(cs: &Cospan) -> DescentDatum {
        let rho = shift_action(2, cs.f.source_arc());
        let tau = ActionDatum::trivial(cs.g.source_arc(), rho.acted_arc()).unwrap();
        let left = semidirect_product(&rho).point;
        let right = semidirect_product(&tau).point;
        // the two feet pullbacks are diagonals, the middle one is trivial
        let a = PointMorphism::identity(&pullback_point(&cs.aa.proj1, &left));
        let c = PointMorphism::identity(&pullback_point(&cs.cc.proj1, &right));
        let bsrc = crate::points::pullback_point_full(&cs.ac.proj1, &left);
        let bdst = crate::points::pullback_point_full(&cs.ac.proj2, &right);
        // both totals are the kernels in increasing order; identify by
        // kernel position
        let src_kernel: Vec<usize> = bsrc.point.total().elements().collect();
        assert_eq!(src_kernel.len(), bdst.point.total().size);
        let map = (0..src_kernel.len()).collect();
        let h = Homomorphism::new(bsrc.point.total_arc(), bdst.point.total_arc(), map).unwrap();
        let b = PointMorphism::new(bsrc.point, bdst.point, h).unwrap();
        DescentDatum { left, right, a, b, c }
    }

    #[test]
    fn shift_fixture_datum_is_valid_but_not_representable() {
        let cs = s3_cospan();
        let d = shift_fixture_datum(&cs);
        assert!(validate_descent_datum(&cs, &d).unwrap().is_valid());
        match essential_surjectivity_witness(&cs, &d, &SearchBounds::default()).unwrap() {
            SurjOutcome::DefinitiveNone => {}
            SurjOutcome::Witness(p) => panic!("unexpected witness over {}", p.base().name),
        }
    }

    #[test]
    fn span_instance_is_not_full() {
        let (cs, xi, tau) = span_cospan(2);
        let p_xi = semidirect_product(&xi).point;
        let p_tau = semidirect_product(&tau).point;
        let report = check_fully_faithful(&cs, &p_xi, &p_tau).unwrap();
        assert!(!report.full, "{report:?}");
        assert!(report.unmatched.is_some());
    }

    #[test]
    fn equivariance_along_the_legs_matches_equivariance_over_the_base() {
        let cs = s3_cospan();
        let x = arc(catalog::cyclic(3));
        let conj_dot: Vec<Vec<usize>> = cs
            .base()
            .elements()
            .map(|b| {
                x.elements()
                    .map(|v| cs.base().sum(cs.base().sum(b, v), cs.base().negate(b)))
                    .collect()
            })
            .collect();
        let conj = ActionDatum::new(cs.base_arc(), x.clone(), conj_dot, vec![], vec![]).unwrap();
        let triv = ActionDatum::trivial(cs.base_arc(), x.clone()).unwrap();
        let pairs =
            [(conj.clone(), conj.clone()), (conj.clone(), triv.clone()), (triv.clone(), triv)];
        for (xi_x, xi_y) in pairs {
            let xa = restrict_action(&cs.f, &xi_x);
            let xc = restrict_action(&cs.g, &xi_x);
            let ya = restrict_action(&cs.f, &xi_y);
            let yc = restrict_action(&cs.g, &xi_y);
            for u in hom_enumerate(&x, &x).unwrap() {
                let over_base = check_equivariance(&u, &xi_x, &xi_y).unwrap().is_pass();
                let over_legs = check_equivariance(&u, &xa, &ya).unwrap().is_pass()
                    && check_equivariance(&u, &xc, &yc).unwrap().is_pass();
                assert_eq!(over_base, over_legs);
            }
        }
    }

    #[test]
    fn cross_identity_finds_the_mixed_associativity_defect() {
        // lower-triangular 2x2 matrices over Z/n acting on themselves by
        // multiplication, against the diagonal scaling of Z/n
        for n in [2usize, 3] {
            let sig = Signature::ring("mul");
            let size = n * n * n;
            let enc = |x: usize, y: usize, z: usize| (x * n + y) * n + z;
            let dec = |i: usize| (i / (n * n), (i / n) % n, i % n);
            let mut add = vec![vec![0; size]; size];
            let mut mul = vec![vec![0; size]; size];
            let mut labels = vec![String::new(); size];
            for i in 0..size {
                let (x1, y1, z1) = dec(i);
                labels[i] = format!("({x1} 0; {y1} {z1})");
                for j in 0..size {
                    let (x2, y2, z2) = dec(j);
                    add[i][j] = enc((x1 + x2) % n, (y1 + y2) % n, (z1 + z2) % n);
                    mul[i][j] = enc((x1 * x2) % n, (y1 * x2 + z1 * y2) % n, (z1 * z2) % n);
                }
            }
            let neg = (0..size)
                .map(|i| {
                    let (x, y, z) = dec(i);
                    enc((n - x) % n, (n - y) % n, (n - z) % n)
                })
                .collect();
            let r = arc(
                FiniteAlgebra::new(&format!("R{n}"), sig.clone(), add, neg, vec![mul])
                    .unwrap()
                    .with_labels(labels)
                    .unwrap(),
            );
            assert!(crate::algebra::validate_algebra(&r).unwrap().is_pass());
            // R acting on itself by multiplication on both sides
            let dot = (0..size).map(|_| (0..size).collect()).collect();
            let sl = (0..size).map(|b| (0..size).map(|x| r.op(0, b, x)).collect()).collect();
            let sr = (0..size).map(|x| (0..size).map(|b| r.op(0, x, b)).collect()).collect();
            let xi_a = ActionDatum::new(r.clone(), r.clone(), dot, vec![sl], vec![sr]).unwrap();
            assert!(validate_action(&xi_a, &sig).unwrap().is_valid());
            // the integer scaling action
            let zn = arc(crate::actions::tests::zmod_ring(n, sig.clone()));
            let dotc = (0..n).map(|_| (0..size).collect()).collect();
            let scale = |c: usize, i: usize| {
                let (x, _, z) = dec(i);
                enc((c * x) % n, 0, (c * z) % n)
            };
            let slc = (0..n).map(|c| (0..size).map(|i| scale(c, i)).collect()).collect();
            let src = (0..size).map(|i| (0..n).map(|c| scale(c, i)).collect()).collect();
            let xi_c = ActionDatum::new(zn, r.clone(), dotc, vec![slc], vec![src]).unwrap();
            // (x0 x1) . c0 = x0 (x1 . c0)
            let identity = CrossIdentity::new(
                "(x0 mul x1) . c0 = x0 mul (x1 . c0)",
                Term::StarRight {
                    side: ActorSide::C,
                    name: "mul".into(),
                    acted: Box::new(Term::Op {
                        sort: TermSort::Acted,
                        name: "mul".into(),
                        lhs: Box::new(Term::var(TermSort::Acted, 0)),
                        rhs: Box::new(Term::var(TermSort::Acted, 1)),
                    }),
                    actor: Box::new(Term::var(TermSort::ActorC, 0)),
                },
                Term::Op {
                    sort: TermSort::Acted,
                    name: "mul".into(),
                    lhs: Box::new(Term::var(TermSort::Acted, 0)),
                    rhs: Box::new(Term::StarRight {
                        side: ActorSide::C,
                        name: "mul".into(),
                        acted: Box::new(Term::var(TermSort::Acted, 1)),
                        actor: Box::new(Term::var(TermSort::ActorC, 0)),
                    }),
                },
            );
            let violations = cross_identity_check(&xi_a, &xi_c, std::slice::from_ref(&identity)).unwrap();
            assert!(!violations.is_empty());
            // the canonical witness: x0 = x1 = (1 0; 1 1), c0 = 1
            let unit_lower = enc(1, 1, 1);
            let hit = violations
                .iter()
                .find(|v| v.acted_vars == vec![unit_lower, unit_lower] && v.actor_c_vars == vec![1])
                .expect("canonical witness present");
            assert_eq!(hit.lhs_value, enc(1, 0, 1));
            assert_eq!(hit.rhs_value, enc(1, 1, 1));
            assert_eq!(r.label(hit.lhs_value), "(1 0; 0 1)");
            assert_eq!(r.label(hit.rhs_value), "(1 0; 1 1)");
            // trivial actions violate nothing
            let ta = ActionDatum::trivial(r.clone(), r.clone()).unwrap();
            let tc = ActionDatum::trivial(xi_c.actor_arc(), r.clone()).unwrap();
            assert!(cross_identity_check(&ta, &tc, &[identity]).unwrap().is_empty());
            // the empty identity list is vacuously fine
            assert!(cross_identity_check(&xi_a, &xi_c, &[]).unwrap().is_empty());
        }
    }

    #[test]
    fn surjectivity_recovers_a_shift_portrait() {
        // a point with kernel (Z/2)^3 over S3, acting through coordinate
        // permutations; its image datum is reconstructed up to
        // isomorphism by the automorphism-group search
        let cs = s3_cospan();
        let cube = arc(catalog::vector_cube(2));
        let (aut, auts) = automorphism_algebra(&cube);
        let faithful = hom_enumerate(&cs.base_arc(), &aut)
            .unwrap()
            .into_iter()
            .find(|h| h.is_injective())
            .expect("S3 embeds into GL(3,2)");
        let dot: Vec<Vec<usize>> =
            faithful.map.iter().map(|&i| auts[i].map.clone()).collect();
        let phi_action = ActionDatum::new(cs.base_arc(), cube, dot, vec![], vec![]).unwrap();
        assert!(validate_action(&phi_action, &Signature::group()).unwrap().is_valid());
        let p = semidirect_product(&phi_action).point;
        let d = phi(&cs, &p);
        let out = essential_surjectivity_witness(&cs, &d, &SearchBounds::default()).unwrap();
        assert!(out.witness().is_some());
    }

    #[test]
    fn kernel_embedding_is_exposed_for_datum_feet() {
        let cs = s3_cospan();
        let p = conjugation_point();
        let d = phi(&cs, &p);
        let KernelEmbedding { embed } = kernel_of_point(&d.left);
        assert_eq!(embed.source().size, 3);
    }
}
