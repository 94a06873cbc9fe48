//! Eigenvalues of sparse symmetric matrices with small bandwidth: reverse Cuthill–McKee
//! ordering, Givens band-to-tridiagonal reduction with bulge chasing, then implicit QL.

use std::collections::VecDeque;

/// Symmetric sparse matrix as adjacency rows `(col, value)`, both triangles present.
pub(crate) type SymSparse = Vec<Vec<(usize, f64)>>;

/// Reverse Cuthill–McKee permutation: `perm[k]` is the old index placed at position k.
pub(crate) fn rcm(a: &SymSparse) -> Vec<usize> {
    let n = a.len();
    let deg: Vec<usize> = a.iter().map(|r| r.len()).collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let bfs_far = |s: usize| -> usize {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        let mut last = s;
        while let Some(u) = q.pop_front() {
            last = u;
            for &(v, _) in &a[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        last
    };
    for root in 0..n {
        if placed[root] {
            continue;
        }
        // pseudo-peripheral start: two sweeps of farthest-node search
        let start = bfs_far(bfs_far(root));
        let mut q = VecDeque::from([start]);
        placed[start] = true;
        while let Some(u) = q.pop_front() {
            order.push(u);
            let mut nb: Vec<usize> = a[u].iter().map(|&(v, _)| v).filter(|&v| !placed[v]).collect();
            nb.sort_by_key(|&v| (deg[v], v));
            nb.dedup();
            for v in nb {
                placed[v] = true;
                q.push_back(v);
            }
        }
    }
    order.reverse();
    order
}

/// Half-bandwidth of `a` under the permutation.
pub(crate) fn bandwidth(a: &SymSparse, perm: &[usize]) -> usize {
    let mut pos = vec![0; perm.len()];
    for (k, &i) in perm.iter().enumerate() {
        pos[i] = k;
    }
    a.iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().map(move |&(j, _)| (i, j)))
        .map(|(i, j)| pos[i].abs_diff(pos[j]))
        .max()
        .unwrap_or(0)
}

/// Lower band storage `lo[d][j] = H[j+d][j]`, with one extra diagonal for the bulge.
struct Band {
    n: usize,
    w: usize,
    lo: Vec<Vec<f64>>,
}

impl Band {
    fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        let d = i - j;
        if d > self.w {
            0.0
        } else {
            self.lo[d][j]
        }
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        let d = i - j;
        if d <= self.w {
            self.lo[d][j] = v;
        }
    }

    /// `H ← G H Gᵀ` for the rotation mixing coordinates p and q = p + 1.
    fn rotate(&mut self, p: usize, c: f64, s: f64) {
        let q = p + 1;
        let lo = p.saturating_sub(self.w);
        let hi = (q + self.w).min(self.n - 1);
        for k in lo..=hi {
            if k == p || k == q {
                continue;
            }
            let (hp, hq) = (self.get(p, k), self.get(q, k));
            if hp == 0.0 && hq == 0.0 {
                continue;
            }
            self.set(p, k, c * hp + s * hq);
            self.set(q, k, -s * hp + c * hq);
        }
        let (app, aqq, apq) = (self.get(p, p), self.get(q, q), self.get(p, q));
        self.set(p, p, c * c * app + 2.0 * c * s * apq + s * s * aqq);
        self.set(q, q, s * s * app - 2.0 * c * s * apq + c * c * aqq);
        self.set(p, q, c * s * (aqq - app) + (c * c - s * s) * apq);
    }
}

/// Eigenvalues of the symmetric matrix `a` (already permuted) with half-bandwidth `b`.
pub(crate) fn band_eigenvalues(a: &SymSparse, perm: &[usize], b: usize) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let mut pos = vec![0; n];
    for (k, &i) in perm.iter().enumerate() {
        pos[i] = k;
    }
    let w = b + 1;
    let mut h = Band { n, w, lo: vec![vec![0.0; n]; w + 1] };
    for (i, r) in a.iter().enumerate() {
        for &(j, v) in r {
            let (pi, pj) = (pos[i], pos[j]);
            if pi >= pj {
                h.lo[pi - pj][pj] = v;
            }
        }
    }
    // shrink the bandwidth one diagonal at a time
    for bw in (2..=b).rev() {
        for j in 0..n.saturating_sub(bw) {
            let (mut r, mut col) = (j + bw, j);
            while r < n {
                let (x, y) = (h.get(r - 1, col), h.get(r, col));
                if y == 0.0 {
                    break;
                }
                let hyp = x.hypot(y);
                h.rotate(r - 1, x / hyp, y / hyp);
                h.set(r, col, 0.0);
                col = r - 1;
                r += bw;
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| h.get(i, i)).collect();
    let e: Vec<f64> = (0..n - 1).map(|i| h.get(i + 1, i)).collect();
    tridiagonal_eigenvalues(d, e)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
pub(crate) fn tridiagonal_eigenvalues(d: Vec<f64>, e: Vec<f64>) -> Vec<f64> {
    tridiagonal_ql(d, e, None)
}

/// Gauss rule of a Jacobi matrix: eigenvalues with the squared first components of the
/// eigenvectors (Golub–Welsch).
pub(crate) fn gauss_nodes_weights(d: Vec<f64>, e: Vec<f64>) -> Vec<(f64, f64)> {
    let mut z = vec![0.0; d.len()];
    if let Some(z0) = z.first_mut() {
        *z0 = 1.0;
    }
    let nodes = tridiagonal_ql(d, e, Some(&mut z));
    nodes.into_iter().zip(z).map(|(x, w)| (x, w * w)).collect()
}

/// Implicit QL on the tridiagonal `(d, e)`; when `z` is given, it is the first row of the
/// eigenvector matrix and is rotated along.
fn tridiagonal_ql(mut d: Vec<f64>, e: Vec<f64>, mut z: Option<&mut Vec<f64>>) -> Vec<f64> {
    let n = d.len();
    let mut e = e;
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d
}
