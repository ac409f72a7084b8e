//! Built-in counterexample fixtures, parameterized by a modulus so the
//! integer carriers become finite quotients. Every inequality the
//! arguments rely on survives reduction mod n >= 2.

use std::collections::BTreeSet;
use std::sync::Arc;

use anyhow::{bail, Result};
use cospan_core::actions::ActionDatum;
use cospan_core::algebra::{
    generated_subalgebra, reify_subalgebra, FiniteAlgebra, Homomorphism, Signature,
};
use cospan_core::catalog;
use cospan_core::descent::Cospan;
use cospan_core::terms::{ActorSide, CrossIdentity, Term, TermSort};

/// Rotations and a reflection jointly generating the symmetric group,
/// with the coordinate-shift action on `(Z/n)^3` against the trivial
/// one.
pub struct S3Fixture {
    pub cospan: Cospan,
    /// Coordinate shift of the rotation subgroup on `(Z/n)^3`.
    pub rho: ActionDatum,
    /// Trivial action of the reflection subgroup.
    pub tau: ActionDatum,
    /// `(context, value index)` pairs forced by the would-be extension,
    /// ending in two different values for one group element.
    pub forced: Vec<(String, usize)>,
}

pub fn fixture_s3(n: usize) -> Result<S3Fixture> {
    if n < 2 {
        bail!("modulus must be at least 2");
    }
    let s3 = Arc::new(catalog::symmetric3());
    let c3 = Arc::new(catalog::cyclic(3));
    let c2 = Arc::new(catalog::cyclic(2));
    let f = Homomorphism::new(c3.clone(), s3.clone(), vec![0, 1, 2])?;
    let g = Homomorphism::new(c2.clone(), s3, vec![0, 3])?;
    let cospan = Cospan::new(f, g)?;
    let cube = Arc::new(catalog::vector_cube(n));
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
    let rho = ActionDatum::new(c3, cube.clone(), dot, vec![], vec![])?;
    let tau = ActionDatum::trivial(c2, cube)?;
    // the two evaluations of a hypothetical common extension at (1,0,0):
    // s+r2 evaluates as the reflection after two shifts, r+s as one
    // shift after the reflection, and both name the same group element
    let v0 = n * n; // (1,0,0)
    let via_sr2 = tau.dot[1][rho.dot[2][v0]];
    let via_rs = rho.dot[1][tau.dot[1][v0]];
    let forced = vec![
        ("value at s+r2 applied to (1,0,0)".to_string(), via_sr2),
        ("value at r+s applied to (1,0,0)".to_string(), via_rs),
    ];
    Ok(S3Fixture { cospan, rho, tau, forced })
}

/// Lower-triangular 2x2 matrices over `Z/n` with the two-sided
/// multiplication action on themselves, against the diagonal scaling
/// action of `Z/n`, and the mixed identity the pair fails.
pub struct RingFixture {
    pub ring: Arc<FiniteAlgebra>,
    pub scalars: Arc<FiniteAlgebra>,
    /// Multiplication of the ring on itself, on both sides.
    pub xi_mul: ActionDatum,
    /// `c . (x 0; y z) = (cx 0; 0 cz)` on both sides.
    pub xi_scale: ActionDatum,
    pub identities: Vec<CrossIdentity>,
    /// Canonical witness `(r, s, c)` for the violated identity.
    pub witness: (usize, usize, usize),
}

/// Index of the matrix `(x 0; y z)` in the fixture ring.
pub fn ring_index(n: usize, x: usize, y: usize, z: usize) -> usize {
    (x * n + y) * n + z
}

pub fn lower_triangular_ring(n: usize) -> Result<Arc<FiniteAlgebra>> {
    if n < 2 {
        bail!("modulus must be at least 2");
    }
    let sig = Signature::ring("mul");
    let size = n * n * n;
    let dec = |i: usize| (i / (n * n), (i / n) % n, i % n);
    let mut add = vec![vec![0; size]; size];
    let mut mul = vec![vec![0; size]; size];
    let mut labels = vec![String::new(); size];
    for i in 0..size {
        let (x1, y1, z1) = dec(i);
        labels[i] = format!("({x1} 0; {y1} {z1})");
        for j in 0..size {
            let (x2, y2, z2) = dec(j);
            add[i][j] = ring_index(n, (x1 + x2) % n, (y1 + y2) % n, (z1 + z2) % n);
            mul[i][j] = ring_index(n, (x1 * x2) % n, (y1 * x2 + z1 * y2) % n, (z1 * z2) % n);
        }
    }
    let neg = (0..size)
        .map(|i| {
            let (x, y, z) = dec(i);
            ring_index(n, (n - x) % n, (n - y) % n, (n - z) % n)
        })
        .collect();
    Ok(Arc::new(
        FiniteAlgebra::new(&format!("R{n}"), sig, add, neg, vec![mul])?.with_labels(labels)?,
    ))
}

/// `Z/n` with its usual multiplication under the given laws.
pub fn zmod_ring(n: usize, sig: Signature) -> Result<Arc<FiniteAlgebra>> {
    if n < 2 {
        bail!("modulus must be at least 2");
    }
    let add = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let mul = (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect();
    let neg = (0..n).map(|i| (n - i) % n).collect();
    Ok(Arc::new(FiniteAlgebra::new(&format!("Z{n}"), sig, add, neg, vec![mul])?))
}

pub fn fixture_ring(n: usize) -> Result<RingFixture> {
    let ring = lower_triangular_ring(n)?;
    let scalars = zmod_ring(n, Signature::ring("mul"))?;
    let size = ring.size;
    let dot_self = (0..size).map(|_| (0..size).collect()).collect();
    let sl = (0..size).map(|b| (0..size).map(|x| ring.op(0, b, x)).collect()).collect();
    let sr = (0..size).map(|x| (0..size).map(|b| ring.op(0, x, b)).collect()).collect();
    let xi_mul = ActionDatum::new(ring.clone(), ring.clone(), dot_self, vec![sl], vec![sr])?;
    let dec = |i: usize| (i / (n * n), (i / n) % n, i % n);
    let scale = |c: usize, i: usize| {
        let (x, _, z) = dec(i);
        ring_index(n, (c * x) % n, 0, (c * z) % n)
    };
    let dot_scale = (0..n).map(|_| (0..size).collect()).collect();
    let slc = (0..n).map(|c| (0..size).map(|i| scale(c, i)).collect()).collect();
    let src = (0..size).map(|i| (0..n).map(|c| scale(c, i)).collect()).collect();
    let xi_scale = ActionDatum::new(scalars.clone(), ring.clone(), dot_scale, vec![slc], vec![src])?;
    // (x0 mul x1) . c0 = x0 mul (x1 . c0)
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
    let unit_lower = ring_index(n, 1, 1, 1);
    Ok(RingFixture {
        ring,
        scalars,
        xi_mul,
        xi_scale,
        identities: vec![identity],
        witness: (unit_lower, unit_lower, 1),
    })
}

/// The span ring on x, y, z over `Z/n` with `xy = yx = z`, its two
/// actions on `Z/n` agreeing on the axes, and the axis cospan.
pub struct NonassocFixture {
    pub ring: Arc<FiniteAlgebra>,
    pub acted: Arc<FiniteAlgebra>,
    pub cospan: Cospan,
    /// `(ax+by+cz) * m = m * (ax+by+cz) = c m`.
    pub xi: ActionDatum,
    /// The trivial action.
    pub tau: ActionDatum,
}

pub fn span_ring(n: usize) -> Result<Arc<FiniteAlgebra>> {
    if n < 2 {
        bail!("modulus must be at least 2");
    }
    let sig = Signature::nonassociative_ring("mul");
    let size = n * n * n;
    let enc = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let dec = |i: usize| (i / (n * n), (i / n) % n, i % n);
    let mut add = vec![vec![0; size]; size];
    let mut mul = vec![vec![0; size]; size];
    let mut labels = vec![String::new(); size];
    for i in 0..size {
        let (a1, b1, c1) = dec(i);
        let mut terms = Vec::new();
        for (coef, sym) in [(a1, "x"), (b1, "y"), (c1, "z")] {
            match coef {
                0 => {}
                1 => terms.push(sym.to_string()),
                k => terms.push(format!("{k}{sym}")),
            }
        }
        labels[i] = if terms.is_empty() { "0".into() } else { terms.join("+") };
        for j in 0..size {
            let (a2, b2, c2) = dec(j);
            add[i][j] = enc((a1 + a2) % n, (b1 + b2) % n, (c1 + c2) % n);
            mul[i][j] = enc(0, 0, (a1 * b2 + b1 * a2) % n);
        }
    }
    let neg = (0..size)
        .map(|i| {
            let (a, b, c) = dec(i);
            enc((n - a) % n, (n - b) % n, (n - c) % n)
        })
        .collect();
    Ok(Arc::new(
        FiniteAlgebra::new(&format!("A{n}"), sig, add, neg, vec![mul])?.with_labels(labels)?,
    ))
}

/// `(ax+by+cz) * m = c m` scaled by `scale` on each side.
pub fn span_action(
    ring: &Arc<FiniteAlgebra>,
    acted: &Arc<FiniteAlgebra>,
    n: usize,
    scale_left: usize,
    scale_right: usize,
) -> Result<ActionDatum> {
    let dec = |i: usize| (i / (n * n), (i / n) % n, i % n);
    let dot = (0..ring.size).map(|_| (0..n).collect()).collect();
    let sl = (0..ring.size)
        .map(|b| {
            let (_, _, c) = dec(b);
            (0..n).map(|m| (c * m * scale_left) % n).collect()
        })
        .collect();
    let sr = (0..n)
        .map(|m| {
            (0..ring.size)
                .map(|b| {
                    let (_, _, c) = dec(b);
                    (c * m * scale_right) % n
                })
                .collect()
        })
        .collect();
    Ok(ActionDatum::new(ring.clone(), acted.clone(), dot, vec![sl], vec![sr])?)
}

pub fn fixture_nonassoc(n: usize) -> Result<NonassocFixture> {
    let ring = span_ring(n)?;
    let acted = zmod_ring(n, Signature::nonassociative_ring("mul"))?;
    let xi = span_action(&ring, &acted, n, 1, 1)?;
    let tau = span_action(&ring, &acted, n, 0, 0)?;
    let x_axis = generated_subalgebra(&ring, &BTreeSet::from([n * n]));
    let (_, i) = reify_subalgebra(&ring, &x_axis)?;
    let y_axis = generated_subalgebra(&ring, &BTreeSet::from([n]));
    let (_, j) = reify_subalgebra(&ring, &y_axis)?;
    let cospan = Cospan::new(i, j)?;
    Ok(NonassocFixture { ring, acted, cospan, xi, tau })
}
