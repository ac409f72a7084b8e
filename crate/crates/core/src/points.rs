//! Points (split epimorphisms with a chosen section), their morphisms,
//! kernels, and change of base by pullback.
//!
//! The pullback construction here is the one concrete cleavage used by
//! the whole crate: every canonical comparison isomorphism downstream is
//! computed elementwise from it.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{
    check_homomorphism, pullback, FiniteAlgebra, Homomorphism, Pullback,
};
use crate::bounds::Budget;
use crate::error::StructureError;

/// A split epimorphism `p: E -> B` with section `s: B -> E`, `p . s = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub p: Homomorphism,
    pub s: Homomorphism,
}

impl Point {
    pub fn new(p: Homomorphism, s: Homomorphism) -> Result<Self, StructureError> {
        if p.source() != s.target() || p.target() != s.source() {
            return Err(StructureError::InvalidPoint(format!(
                "p: {} -> {} does not match s: {} -> {}",
                p.source().name,
                p.target().name,
                s.source().name,
                s.target().name
            )));
        }
        for b in p.target().elements() {
            if p.apply(s.apply(b)) != b {
                return Err(StructureError::InvalidPoint(format!(
                    "p(s({})) = {}",
                    p.target().label(b),
                    p.target().label(p.apply(s.apply(b)))
                )));
            }
        }
        Ok(Point { p, s })
    }

    pub fn total(&self) -> &FiniteAlgebra {
        self.p.source()
    }

    pub fn base(&self) -> &FiniteAlgebra {
        self.p.target()
    }

    pub fn total_arc(&self) -> Arc<FiniteAlgebra> {
        self.p.source_arc()
    }

    pub fn base_arc(&self) -> Arc<FiniteAlgebra> {
        self.p.target_arc()
    }

    /// Both structure maps must actually be homomorphisms; the
    /// constructor checks only the splitting identity.
    pub fn check(&self) -> Result<(), StructureError> {
        if !check_homomorphism(&self.p).is_pass() {
            return Err(StructureError::InvalidPoint(format!(
                "p of {} is not a homomorphism",
                self.total().name
            )));
        }
        if !check_homomorphism(&self.s).is_pass() {
            return Err(StructureError::InvalidPoint(format!(
                "s of {} is not a homomorphism",
                self.total().name
            )));
        }
        Ok(())
    }
}

/// A morphism of points over one base: `h` with `p' . h = p` and
/// `h . s = s'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMorphism {
    pub source: Point,
    pub target: Point,
    pub h: Homomorphism,
}

impl PointMorphism {
    pub fn new(source: Point, target: Point, h: Homomorphism) -> Result<Self, StructureError> {
        if source.base() != target.base() {
            return Err(StructureError::BaseMismatch(format!(
                "{} vs {}",
                source.base().name,
                target.base().name
            )));
        }
        if h.source() != source.total() || h.target() != target.total() {
            return Err(StructureError::Shape(format!(
                "h: {} -> {} between points with totals {} and {}",
                h.source().name,
                h.target().name,
                source.total().name,
                target.total().name
            )));
        }
        for e in source.total().elements() {
            if target.p.apply(h.apply(e)) != source.p.apply(e) {
                return Err(StructureError::InvalidPoint(format!(
                    "p'(h({})) differs from p at index {e}",
                    source.total().label(e)
                )));
            }
        }
        for b in source.base().elements() {
            if h.apply(source.s.apply(b)) != target.s.apply(b) {
                return Err(StructureError::InvalidPoint(format!(
                    "h(s({})) differs from s'",
                    source.base().label(b)
                )));
            }
        }
        Ok(PointMorphism { source, target, h })
    }

    pub fn identity(point: &Point) -> Self {
        PointMorphism {
            source: point.clone(),
            target: point.clone(),
            h: Homomorphism::identity(point.total_arc()),
        }
    }

    pub fn then(&self, next: &PointMorphism) -> PointMorphism {
        assert_eq!(self.target, next.source, "point morphism composition mismatch");
        PointMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            h: self.h.then(&next.h),
        }
    }

    pub fn inverse(&self) -> Option<PointMorphism> {
        let h = self.h.inverse()?;
        Some(PointMorphism { source: self.target.clone(), target: self.source.clone(), h })
    }
}

/// True iff the underlying map is bijective. The inverse map is then
/// automatically a point morphism.
pub fn is_point_isomorphism(m: &PointMorphism) -> bool {
    m.h.is_bijective()
}

/// A kernel reified as an algebra with its embedding into the total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelEmbedding {
    pub embed: Homomorphism,
}

impl KernelEmbedding {
    pub fn kernel(&self) -> &FiniteAlgebra {
        self.embed.source()
    }

    pub fn kernel_arc(&self) -> Arc<FiniteAlgebra> {
        self.embed.source_arc()
    }
}

/// The kernel of `p`, renumbered in increasing index order.
pub fn kernel_of_point(point: &Point) -> KernelEmbedding {
    let fibre: BTreeSet<usize> =
        point.total().elements().filter(|&e| point.p.apply(e) == 0).collect();
    let total = point.total_arc();
    let (_, embed) = crate::algebra::reify_subalgebra(&total, &fibre)
        .expect("a kernel is closed under all operations");
    KernelEmbedding { embed }
}

/// A pullback point together with the comparison map onto the original
/// total (the second projection of the underlying pullback square).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PulledPoint {
    pub point: Point,
    pub to_inner: Homomorphism,
}

/// Change of base along `w: T -> B`: the point
/// `(proj1, <1, s w>) : T x_B E -> T`.
pub fn pullback_point_full(w: &Homomorphism, point: &Point) -> PulledPoint {
    assert_eq!(
        w.target(),
        point.base(),
        "change of base along {} needs base {}",
        w.target().name,
        point.base().name
    );
    let pb: Pullback = pullback(w, &point.p).expect("matching codomain");
    let s_map = w
        .source()
        .elements()
        .map(|t| {
            pb.index_of(t, point.s.apply(w.apply(t))).expect("(t, s(w(t))) is in the pullback")
        })
        .collect();
    let s = Homomorphism::new(w.source_arc(), pb.algebra.clone(), s_map).expect("shapes agree");
    let p = pb.proj1.clone();
    let point = Point::new(p, s).expect("pullback of a point is a point");
    PulledPoint { point, to_inner: pb.proj2 }
}

pub fn pullback_point(w: &Homomorphism, point: &Point) -> Point {
    pullback_point_full(w, point).point
}

/// Change of base applied to a morphism of points: `(t, e) -> (t, h(e))`.
pub fn pullback_point_morphism(w: &Homomorphism, m: &PointMorphism) -> PointMorphism {
    let src = pullback_point_full(w, &m.source);
    let dst = pullback_point_full(w, &m.target);
    let map = src
        .point
        .total()
        .elements()
        .map(|x| {
            let t = src.point.p.apply(x);
            let e = m.h.apply(src.to_inner.apply(x));
            index_of_pair(&dst, t, e)
        })
        .collect();
    let h = Homomorphism::new(src.point.total_arc(), dst.point.total_arc(), map)
        .expect("shapes agree");
    PointMorphism::new(src.point, dst.point, h).expect("change of base preserves point morphisms")
}

fn index_of_pair(pulled: &PulledPoint, t: usize, e: usize) -> usize {
    pulled
        .point
        .total()
        .elements()
        .find(|&x| pulled.point.p.apply(x) == t && pulled.to_inner.apply(x) == e)
        .expect("pair present in pullback")
}

/// The canonical comparison `u*(v*P) -> (v u)*P` of the concrete
/// cleavage: strip the middle component.
pub fn comparison_iso(u: &Homomorphism, v: &Homomorphism, point: &Point) -> PointMorphism {
    let inner = pullback_point_full(v, point);
    let nested = pullback_point_full(u, &inner.point);
    let direct = pullback_point_full(&u.then(v), point);
    let map = nested
        .point
        .total()
        .elements()
        .map(|x| {
            let t = nested.point.p.apply(x);
            let e = inner.to_inner.apply(nested.to_inner.apply(x));
            index_of_pair(&direct, t, e)
        })
        .collect();
    let h = Homomorphism::new(nested.point.total_arc(), direct.point.total_arc(), map)
        .expect("shapes agree");
    PointMorphism::new(nested.point, direct.point, h).expect("comparison is a point morphism")
}

/// The canonical comparison `1*P -> P`: the second projection.
pub fn identity_comparison(point: &Point) -> PointMorphism {
    let id = Homomorphism::identity(point.base_arc());
    let pulled = pullback_point_full(&id, point);
    PointMorphism::new(pulled.point.clone(), point.clone(), pulled.to_inner)
        .expect("projection is a point morphism")
}

/// All morphisms of points `P -> Q` over one base, in lexicographic order
/// of the underlying maps.
pub fn point_morphisms(p: &Point, q: &Point) -> Result<Vec<PointMorphism>, StructureError> {
    if p.base() != q.base() {
        return Err(StructureError::BaseMismatch(format!(
            "{} vs {}",
            p.base().name,
            q.base().name
        )));
    }
    let seeds: Vec<(usize, usize)> =
        p.base().elements().map(|b| (p.s.apply(b), q.s.apply(b))).collect();
    // candidate images of a free element are confined to its fibre
    let fibres: Vec<Vec<usize>> = p
        .total()
        .elements()
        .map(|e| {
            let b = p.p.apply(e);
            q.total().elements().filter(|&y| q.p.apply(y) == b).collect()
        })
        .collect();
    let maps = crate::algebra::homs_seeded(
        p.total(),
        q.total(),
        &seeds,
        &|e| fibres[e].clone(),
        &mut Budget::unlimited(),
    )
    .expect("unlimited budget");
    let mut out = Vec::new();
    for map in maps {
        // propagation can assign outside the fibre; keep only real point
        // morphisms
        if p.total().elements().all(|e| q.p.apply(map[e]) == p.p.apply(e)) {
            let h = Homomorphism::new(p.total_arc(), q.total_arc(), map)?;
            out.push(PointMorphism::new(p.clone(), q.clone(), h)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom_enumerate;
    use crate::catalog;

    fn arc(a: FiniteAlgebra) -> Arc<FiniteAlgebra> {
        Arc::new(a)
    }

    /// The product point `X x B -> B`.
    fn product_point(x: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Point {
        let total = arc(catalog::direct_product(x, b));
        let p_map = (0..total.size).map(|i| i % b.size).collect();
        let s_map = (0..b.size).collect();
        let p = Homomorphism::new(total.clone(), b.clone(), p_map).unwrap();
        let s = Homomorphism::new(b.clone(), total, s_map).unwrap();
        Point::new(p, s).unwrap()
    }

    fn sign_point() -> Point {
        let s3 = arc(catalog::symmetric3());
        let c2 = arc(catalog::cyclic(2));
        let p = Homomorphism::new(s3.clone(), c2.clone(), vec![0, 0, 0, 1, 1, 1]).unwrap();
        let s = Homomorphism::new(c2, s3, vec![0, 3]).unwrap();
        Point::new(p, s).unwrap()
    }

    #[test]
    fn point_construction_checks_the_splitting() {
        let s3 = arc(catalog::symmetric3());
        let c2 = arc(catalog::cyclic(2));
        let p = Homomorphism::new(s3.clone(), c2.clone(), vec![0, 0, 0, 1, 1, 1]).unwrap();
        let bad_s = Homomorphism::new(c2, s3, vec![0, 0]).unwrap();
        assert!(Point::new(p, bad_s).is_err());
        sign_point().check().unwrap();
    }

    #[test]
    fn pullback_point_along_identity_is_isomorphic() {
        let p = sign_point();
        let id = Homomorphism::identity(p.base_arc());
        let pulled = pullback_point_full(&id, &p);
        let cmp = identity_comparison(&p);
        assert!(is_point_isomorphism(&cmp));
        assert_eq!(cmp.source, pulled.point);
    }

    #[test]
    fn pullback_point_over_trivial_base_is_the_kernel() {
        let p = sign_point();
        let triv = arc(catalog::trivial_group());
        let from_triv = Homomorphism::new(triv, p.base_arc(), vec![0]).unwrap();
        let pulled = pullback_point(&from_triv, &p);
        assert_eq!(pulled.total().size, 3);
    }

    #[test]
    fn pullback_of_a_conjugation_point_along_the_rotations() {
        // the split extension of the rotations by conjugation, pulled
        // back along the rotation inclusion: three fibres of three
        let s3 = arc(catalog::symmetric3());
        let c3 = arc(catalog::cyclic(3));
        let dot: Vec<Vec<usize>> = s3
            .elements()
            .map(|b| c3.elements().map(|x| s3.sum(s3.sum(b, x), s3.negate(b))).collect())
            .collect();
        let conj = crate::actions::ActionDatum::new(s3.clone(), c3.clone(), dot, vec![], vec![])
            .unwrap();
        let point = crate::actions::semidirect_product(&conj).point;
        assert_eq!(point.total().size, 18);
        let f = Homomorphism::new(c3, s3, vec![0, 1, 2]).unwrap();
        let pulled = pullback_point(&f, &point);
        assert_eq!(pulled.total().size, 9);
        pulled.check().unwrap();
    }

    #[test]
    fn kernel_of_sign_point_is_the_rotations() {
        let k = kernel_of_point(&sign_point());
        assert_eq!(k.kernel().size, 3);
        assert_eq!(k.embed.map, vec![0, 1, 2]);
        let c3 = arc(catalog::cyclic(3));
        assert!(!hom_enumerate(&k.kernel_arc(), &c3)
            .unwrap()
            .iter()
            .filter(|h| h.is_bijective())
            .collect::<Vec<_>>()
            .is_empty());
    }

    #[test]
    fn kernel_of_product_point_is_the_first_factor() {
        let x = arc(catalog::cyclic(3));
        let b = arc(catalog::cyclic(2));
        let k = kernel_of_point(&product_point(&x, &b));
        assert_eq!(k.kernel().size, 3);
    }

    #[test]
    fn point_morphisms_contain_the_identity() {
        let p = sign_point();
        let ms = point_morphisms(&p, &p).unwrap();
        assert!(ms.iter().any(|m| m.h.map == (0..6).collect::<Vec<_>>()));
    }

    #[test]
    fn point_morphisms_of_products_are_plain_homs() {
        let x = arc(catalog::cyclic(4));
        let y = arc(catalog::cyclic(2));
        let b = arc(catalog::cyclic(3));
        let p = product_point(&x, &b);
        let q = product_point(&y, &b);
        let ms = point_morphisms(&p, &q).unwrap();
        assert_eq!(ms.len(), hom_enumerate(&x, &y).unwrap().len());
    }

    // oracle: filter every map table through the raw point-morphism
    // conditions
    fn point_endos_brute(p: &Point) -> usize {
        hom_enumerate(&p.total_arc(), &p.total_arc())
            .unwrap()
            .into_iter()
            .filter(|h| {
                p.total().elements().all(|e| p.p.apply(h.apply(e)) == p.p.apply(e))
                    && p.base().elements().all(|b| h.apply(p.s.apply(b)) == p.s.apply(b))
            })
            .count()
    }

    #[test]
    fn sign_point_endomorphisms_match_the_oracle() {
        let p = sign_point();
        let ms = point_morphisms(&p, &p).unwrap();
        assert_eq!(ms.len(), point_endos_brute(&p));
        assert_eq!(ms.len(), 3);
    }

    #[test]
    fn point_isomorphism_detection() {
        let p = sign_point();
        assert!(is_point_isomorphism(&PointMorphism::identity(&p)));
        // collapsing the kernel of a product point is not injective
        let x = arc(catalog::cyclic(2));
        let b = arc(catalog::cyclic(2));
        let q = product_point(&x, &b);
        let collapse = point_morphisms(&q, &q)
            .unwrap()
            .into_iter()
            .find(|m| !m.h.is_injective())
            .expect("kernel collapse exists");
        assert!(!is_point_isomorphism(&collapse));
        // inverses of isomorphisms are again point morphisms
        for m in point_morphisms(&p, &p).unwrap() {
            if is_point_isomorphism(&m) {
                let inv = m.inverse().unwrap();
                PointMorphism::new(inv.source.clone(), inv.target.clone(), inv.h.clone()).unwrap();
            }
        }
    }

    #[test]
    fn section_and_kernel_images_meet_only_at_zero() {
        for p in [sign_point(), product_point(&arc(catalog::cyclic(3)), &arc(catalog::cyclic(4)))] {
            let k = kernel_of_point(&p);
            assert!(p.s.is_injective());
            assert!(k.embed.is_injective());
            let si = p.s.image();
            let ki = k.embed.image();
            let both: Vec<usize> = si.intersection(&ki).copied().collect();
            assert_eq!(both, vec![0]);
        }
    }

    #[test]
    fn morphisms_agreeing_on_kernel_and_section_are_equal() {
        let p = sign_point();
        let k = kernel_of_point(&p);
        let ms = point_morphisms(&p, &p).unwrap();
        for m1 in &ms {
            for m2 in &ms {
                let same_on_kernel =
                    k.kernel().elements().all(|x| {
                        m1.h.apply(k.embed.apply(x)) == m2.h.apply(k.embed.apply(x))
                    });
                if same_on_kernel {
                    assert_eq!(m1.h.map, m2.h.map);
                }
            }
        }
    }

    #[test]
    fn change_of_base_preserves_kernels() {
        let p = sign_point();
        let c6 = arc(catalog::cyclic(6));
        let w = Homomorphism::new(c6, p.base_arc(), vec![0, 1, 0, 1, 0, 1]).unwrap();
        let pulled = pullback_point_full(&w, &p);
        let k0 = kernel_of_point(&p);
        let k1 = kernel_of_point(&pulled.point);
        assert_eq!(k0.kernel().size, k1.kernel().size);
        // proj2 restricted to the pulled-back kernel is an isomorphism
        // onto the original kernel
        let restricted: Vec<usize> = k1
            .kernel()
            .elements()
            .map(|x| pulled.to_inner.apply(k1.embed.apply(x)))
            .collect();
        let mut sorted = restricted.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), k0.kernel().size);
        assert!(sorted.iter().all(|e| k0.embed.map.contains(e)));
    }
}
