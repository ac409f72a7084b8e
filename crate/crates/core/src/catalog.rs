//! Stock finite groups used by tests, fixtures and corpus sweeps.
//!
//! Additive convention throughout: `a + b` is "`b` first, then `a`" under
//! the usual multiplicative reading, so that actions satisfy
//! `(a + b) . x = a . (b . x)`.

use crate::algebra::{FiniteAlgebra, Signature};

fn group_from_table(name: &str, add: Vec<Vec<usize>>, labels: Vec<String>) -> FiniteAlgebra {
    let n = add.len();
    let mut neg = vec![0; n];
    for i in 0..n {
        neg[i] = (0..n).find(|&j| add[i][j] == 0).expect("group table has inverses");
    }
    FiniteAlgebra::new(name, Signature::group(), add, neg, vec![])
        .expect("well-formed table")
        .with_labels(labels)
        .expect("one label per element")
}

pub fn trivial_group() -> FiniteAlgebra {
    group_from_table("C1", vec![vec![0]], vec!["0".into()])
}

/// The cyclic group of order `n`, written additively.
pub fn cyclic(n: usize) -> FiniteAlgebra {
    assert!(n >= 1);
    let add = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let labels = (0..n).map(|i| i.to_string()).collect();
    group_from_table(&format!("C{n}"), add, labels)
}

/// Componentwise product of two algebras over the same signature.
pub fn direct_product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    assert_eq!(a.signature, b.signature, "direct product needs one signature");
    let n = a.size * b.size;
    let enc = |x: usize, y: usize| x * b.size + y;
    let mut add = vec![vec![0; n]; n];
    let mut neg = vec![0; n];
    let mut op_tables = vec![vec![vec![0; n]; n]; a.op_tables.len()];
    let mut labels = vec![String::new(); n];
    for x1 in a.elements() {
        for y1 in b.elements() {
            let i = enc(x1, y1);
            neg[i] = enc(a.negate(x1), b.negate(y1));
            labels[i] = format!("({},{})", a.label(x1), b.label(y1));
            for x2 in a.elements() {
                for y2 in b.elements() {
                    let j = enc(x2, y2);
                    add[i][j] = enc(a.sum(x1, x2), b.sum(y1, y2));
                    for k in 0..a.op_tables.len() {
                        op_tables[k][i][j] = enc(a.op(k, x1, x2), b.op(k, y1, y2));
                    }
                }
            }
        }
    }
    FiniteAlgebra::new(&format!("({}x{})", a.name, b.name), a.signature.clone(), add, neg, op_tables)
        .expect("well-formed table")
        .with_labels(labels)
        .expect("one label per element")
}

pub fn klein4() -> FiniteAlgebra {
    let mut v = direct_product(&cyclic(2), &cyclic(2));
    v.name = "V4".into();
    v
}

/// Dihedral group of order `2n`: indices `0..n` are the rotations `r^k`,
/// `n..2n` the reflections `s r^k`.
pub fn dihedral(n: usize) -> FiniteAlgebra {
    assert!(n >= 2);
    let size = 2 * n;
    let enc = |flip: usize, k: usize| flip * n + k;
    let mut add = vec![vec![0; size]; size];
    let mut labels = vec![String::new(); size];
    for f1 in 0..2 {
        for k1 in 0..n {
            let i = enc(f1, k1);
            labels[i] = match (f1, k1) {
                (0, 0) => "e".into(),
                (0, 1) => "r".into(),
                (0, k) => format!("r{k}"),
                (_, 0) => "s".into(),
                (_, 1) => "sr".into(),
                (_, k) => format!("sr{k}"),
            };
            for f2 in 0..2 {
                for k2 in 0..n {
                    // s^f1 r^k1 . s^f2 r^k2 = s^(f1+f2) r^(k2 +- k1)
                    let k = if f2 == 1 { (n + k2 - k1 % n) % n } else { (k1 + k2) % n };
                    add[i][enc(f2, k2)] = enc((f1 + f2) % 2, k);
                }
            }
        }
    }
    group_from_table(&format!("D{n}"), add, labels)
}

/// The symmetric group on three letters with generators `r` (3-cycle) and
/// `s` (a transposition), satisfying `r + s = rs = sr2`.
pub fn symmetric3() -> FiniteAlgebra {
    let mut s3 = dihedral(3);
    s3.name = "S3".into();
    s3
}

/// Dicyclic group of order `4m`; `dicyclic(2)` is the quaternion group.
pub fn dicyclic(m: usize) -> FiniteAlgebra {
    assert!(m >= 2);
    let size = 4 * m;
    let enc = |flip: usize, k: usize| flip * 2 * m + k;
    let mut add = vec![vec![0; size]; size];
    let mut labels = vec![String::new(); size];
    for f1 in 0..2 {
        for k1 in 0..2 * m {
            let i = enc(f1, k1);
            labels[i] = match (f1, k1) {
                (0, 0) => "e".into(),
                (0, k) => format!("a{k}"),
                (_, 0) => "b".into(),
                (_, k) => format!("a{k}b"),
            };
            for f2 in 0..2 {
                for k2 in 0..2 * m {
                    let j = enc(f2, k2);
                    // a^k1 b^f1 . a^k2 b^f2 with b a = a^-1 b and b^2 = a^m
                    let (f, k) = match (f1, f2) {
                        (0, 0) => (0, (k1 + k2) % (2 * m)),
                        (0, 1) => (1, (k1 + k2) % (2 * m)),
                        (1, 0) => (1, (k1 + 2 * m - k2 % (2 * m)) % (2 * m)),
                        _ => (0, (k1 + 2 * m - k2 % (2 * m) + m) % (2 * m)),
                    };
                    add[i][j] = enc(f, k);
                }
            }
        }
    }
    group_from_table(&format!("Dic{m}"), add, labels)
}

pub fn quaternion8() -> FiniteAlgebra {
    let mut q = dicyclic(2);
    q.name = "Q8".into();
    q
}

/// The alternating group on four letters, elements ordered
/// lexicographically as permutation words.
pub fn alternating4() -> FiniteAlgebra {
    let mut perms: Vec<[usize; 4]> = Vec::new();
    let mut items = [0, 1, 2, 3];
    permute(&mut items, 0, &mut perms);
    perms.retain(|p| parity(p) == 0);
    perms.sort();
    let index = |p: &[usize; 4]| perms.iter().position(|q| q == p).unwrap();
    let n = perms.len();
    let mut add = vec![vec![0; n]; n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            // apply q first, then p
            let comp = [p[q[0]], p[q[1]], p[q[2]], p[q[3]]];
            add[i][j] = index(&comp);
        }
    }
    let labels = perms.iter().map(|p| p.map(|v| v.to_string()).join("")).collect();
    group_from_table("A4", add, labels)
}

fn permute(items: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == 4 {
        out.push(*items);
        return;
    }
    for i in k..4 {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn parity(p: &[usize; 4]) -> usize {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// `(Z/n)^3` with componentwise addition; element `(x,y,z)` has index
/// `x n^2 + y n + z` and label `(x,y,z)`.
pub fn vector_cube(n: usize) -> FiniteAlgebra {
    assert!(n >= 2);
    let size = n * n * n;
    let enc = |x: usize, y: usize, z: usize| (x * n + y) * n + z;
    let dec = |i: usize| (i / (n * n), (i / n) % n, i % n);
    let mut add = vec![vec![0; size]; size];
    let mut labels = vec![String::new(); size];
    for i in 0..size {
        let (x1, y1, z1) = dec(i);
        labels[i] = format!("({x1},{y1},{z1})");
        for j in 0..size {
            let (x2, y2, z2) = dec(j);
            add[i][j] = enc((x1 + x2) % n, (y1 + y2) % n, (z1 + z2) % n);
        }
    }
    group_from_table(&format!("(Z{n})^3"), add, labels)
}

/// Every group of order at most `max` (up to isomorphism), `max <= 12`.
pub fn groups_up_to_order(max: usize) -> Vec<FiniteAlgebra> {
    assert!(max <= 12, "catalog stops at order 12");
    let mut out = Vec::new();
    for n in 1..=max {
        match n {
            1 => out.push(trivial_group()),
            4 => {
                out.push(cyclic(4));
                out.push(klein4());
            }
            6 => {
                out.push(cyclic(6));
                out.push(symmetric3());
            }
            8 => {
                out.push(cyclic(8));
                out.push(direct_product(&cyclic(4), &cyclic(2)));
                out.push(direct_product(&direct_product(&cyclic(2), &cyclic(2)), &cyclic(2)));
                out.push(dihedral(4));
                out.push(quaternion8());
            }
            9 => {
                out.push(cyclic(9));
                out.push(direct_product(&cyclic(3), &cyclic(3)));
            }
            10 => {
                out.push(cyclic(10));
                out.push(dihedral(5));
            }
            12 => {
                out.push(cyclic(12));
                out.push(direct_product(&cyclic(6), &cyclic(2)));
                out.push(dihedral(6));
                out.push(alternating4());
                out.push(dicyclic(3));
            }
            _ => out.push(cyclic(n)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{automorphism_group, validate_algebra, LawReport};
    use std::sync::Arc;

    #[test]
    fn every_catalog_group_is_a_group() {
        for g in groups_up_to_order(12) {
            assert_eq!(validate_algebra(&g).unwrap(), LawReport::Pass, "{}", g.name);
        }
        assert_eq!(validate_algebra(&vector_cube(2)).unwrap(), LawReport::Pass);
        assert_eq!(validate_algebra(&vector_cube(3)).unwrap(), LawReport::Pass);
    }

    #[test]
    fn symmetric3_satisfies_the_presentation() {
        let s3 = symmetric3();
        let (r, s) = (1, 3);
        assert_eq!(s3.sum(r, r), 2);
        assert_eq!(s3.sum(s, s), 0);
        // rs = sr^2
        let rs = s3.sum(r, s);
        let sr2 = s3.sum(s, 2);
        assert_eq!(rs, sr2);
        assert_eq!(s3.label(rs), "sr2");
    }

    #[test]
    fn known_automorphism_group_orders() {
        let cases: Vec<(FiniteAlgebra, usize)> = vec![
            (symmetric3(), 6),
            (quaternion8(), 24),
            (alternating4(), 24),
            (cyclic(12), 4),
        ];
        for (g, expected) in cases {
            let g = Arc::new(g);
            assert_eq!(automorphism_group(&g).len(), expected, "{}", g.name);
        }
    }

    #[test]
    fn order_twelve_groups_are_pairwise_distinct() {
        let twelves: Vec<FiniteAlgebra> =
            groups_up_to_order(12).into_iter().filter(|g| g.size == 12).collect();
        assert_eq!(twelves.len(), 5);
        let spectrum = |g: &FiniteAlgebra| {
            let mut orders: Vec<usize> = (0..g.size)
                .map(|x| {
                    let mut v = x;
                    let mut ord = 1;
                    while v != 0 {
                        v = g.sum(v, x);
                        ord += 1;
                    }
                    ord
                })
                .collect();
            orders.sort();
            orders
        };
        let commutative =
            |g: &FiniteAlgebra| (0..g.size).all(|i| (0..g.size).all(|j| g.sum(i, j) == g.sum(j, i)));
        for i in 0..twelves.len() {
            for j in i + 1..twelves.len() {
                assert!(
                    spectrum(&twelves[i]) != spectrum(&twelves[j])
                        || commutative(&twelves[i]) != commutative(&twelves[j]),
                    "{} vs {}",
                    twelves[i].name,
                    twelves[j].name
                );
            }
        }
    }
}
