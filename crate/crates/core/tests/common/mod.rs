#![allow(dead_code)]

use l2alex::l2::KnotExpr;
use rand::Rng;

/// Random graph-knot trees. Trivial pieces (unknots, `p = ±1`, `q = ±1`) are common on
/// purpose so that both detection outcomes show up.
pub fn random_tree<R: Rng>(rng: &mut R, depth: usize) -> KnotExpr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return if rng.gen_bool(0.35) {
            KnotExpr::Unknot
        } else {
            let (p, q) = coprime_pair(rng);
            KnotExpr::torus(p, q).unwrap()
        };
    }
    match rng.gen_range(0..4) {
        0 => KnotExpr::sum(random_tree(rng, depth - 1), random_tree(rng, depth - 1)),
        1 => {
            let (p, q) = coprime_pair(rng);
            KnotExpr::cable(p, q, random_tree(rng, depth - 1)).unwrap()
        }
        2 => KnotExpr::mirror(random_tree(rng, depth - 1)),
        _ => KnotExpr::inverse(random_tree(rng, depth - 1)),
    }
}

fn coprime_pair<R: Rng>(rng: &mut R) -> (i64, i64) {
    loop {
        let p = [-3, -2, -1, 1, 1, 2, 3][rng.gen_range(0..7)];
        let q = rng.gen_range(-5..=5);
        if num_integer::gcd(p, q) == 1 {
            return (p, q);
        }
    }
}

/// n_K by flattening: every torus or cable node contributes (|p|−1)(|q|−1) times the
/// product of the winding numbers of the cables above it.
pub fn fold_exponent(k: &KnotExpr) -> i128 {
    let mut stack = vec![(k, 1i128)];
    let mut n = 0i128;
    while let Some((node, mult)) = stack.pop() {
        match node {
            KnotExpr::Unknot => {}
            KnotExpr::Torus(p, q) => n += mult * piece(*p, *q),
            KnotExpr::Sum(a, b) => {
                stack.push((a, mult));
                stack.push((b, mult));
            }
            KnotExpr::Cable(p, q, c) => {
                n += mult * piece(*p, *q);
                stack.push((c, mult * p.unsigned_abs() as i128));
            }
            KnotExpr::Mirror(c) | KnotExpr::Inverse(c) => stack.push((c, mult)),
        }
    }
    n
}

fn piece(p: i64, q: i64) -> i128 {
    if q == 0 {
        return 0;
    }
    (p.unsigned_abs() as i128 - 1) * (q.unsigned_abs() as i128 - 1)
}

pub fn subtrees(k: &KnotExpr) -> Vec<&KnotExpr> {
    let mut out = vec![k];
    let mut i = 0;
    while i < out.len() {
        match out[i] {
            KnotExpr::Sum(a, b) => {
                out.push(a);
                out.push(b);
            }
            KnotExpr::Cable(_, _, c) | KnotExpr::Mirror(c) | KnotExpr::Inverse(c) => out.push(c),
            _ => {}
        }
        i += 1;
    }
    out
}
