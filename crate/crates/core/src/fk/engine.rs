//! Sparse vectors in ℓ²(G)^n with interned group elements, and the action of `R_A`.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::BuildHasherDefault;
use std::sync::Arc;

use num_complex::Complex64;

use crate::groupalg::{GroupRingMatrix, NormalFormOracle};
use crate::words::Word;

/// One component per row; keys are interned element ids.
pub(crate) type SVec = Vec<Map<u32, Complex64>>;

/// Fixed-seed hashing: iteration order, and with it every floating-point sum, is the same
/// on every run.
pub(crate) type Map<K, V> = HashMap<K, V, BuildHasherDefault<DefaultHasher>>;

/// Entry lists `(shift id, coefficient)` of an n×n matrix.
type Entries = Vec<Vec<Vec<(u32, Complex64)>>>;

pub(crate) struct Engine {
    oracle: Arc<NormalFormOracle>,
    elems: Vec<Word>,
    ids: Map<Word, u32>,
    shifts: Vec<Word>,
    shift_ids: Map<Word, u32>,
    table: Map<(u32, u32), u32>,
    pub n: usize,
    a: Entries,
    astar: Entries,
}

impl Engine {
    pub fn new(m: &GroupRingMatrix) -> Engine {
        let mut e = Engine {
            oracle: m.oracle().clone(),
            elems: Vec::new(),
            ids: Map::default(),
            shifts: Vec::new(),
            shift_ids: Map::default(),
            table: Map::default(),
            n: m.rows,
            a: Vec::new(),
            astar: Vec::new(),
        };
        e.intern(&Word::identity());
        let star = m.star();
        e.a = e.entries(m);
        e.astar = e.entries(&star);
        e
    }

    fn entries(&mut self, m: &GroupRingMatrix) -> Entries {
        (0..m.rows)
            .map(|i| {
                (0..m.cols)
                    .map(|j| {
                        m.get(i, j)
                            .terms()
                            .map(|(w, c)| {
                                let next = self.shifts.len() as u32;
                                let id = *self.shift_ids.entry(w.clone()).or_insert(next);
                                if id == next {
                                    self.shifts.push(w.clone());
                                }
                                (id, *c)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn intern(&mut self, w: &Word) -> u32 {
        if let Some(&id) = self.ids.get(w) {
            return id;
        }
        let id = self.elems.len() as u32;
        self.elems.push(w.clone());
        self.ids.insert(w.clone(), id);
        id
    }

    pub fn elements(&self) -> usize {
        self.elems.len()
    }

    /// Id of `g·h` for interned g and shift h.
    fn times(&mut self, g: u32, h: u32) -> u32 {
        if let Some(&r) = self.table.get(&(g, h)) {
            return r;
        }
        let w = self.oracle.normal_form(&self.elems[g as usize].mul(&self.shifts[h as usize]));
        let r = self.intern(&w);
        self.table.insert((g, h), r);
        r
    }

    pub fn delta(&self, i: usize) -> SVec {
        let mut v: SVec = vec![Map::default(); self.n];
        v[i].insert(0, Complex64::new(1.0, 0.0));
        v
    }

    fn apply_entries(&mut self, v: &SVec, star: bool) -> SVec {
        let n = self.n;
        let mut out: SVec = vec![Map::default(); n];
        for i in 0..n {
            for (&g, &c) in &v[i] {
                for j in 0..n {
                    let k = if star { self.astar[i][j].len() } else { self.a[i][j].len() };
                    for t in 0..k {
                        let (h, a) = if star { self.astar[i][j][t] } else { self.a[i][j][t] };
                        let gh = self.times(g, h);
                        *out[j].entry(gh).or_default() += c * a;
                    }
                }
            }
        }
        out
    }

    /// `v ↦ v·A·A*`, the positive operator `R_A R_A*`.
    pub fn apply_h(&mut self, v: &SVec) -> SVec {
        let w = self.apply_entries(v, false);
        self.apply_entries(&w, true)
    }
}

pub(crate) fn dot(u: &SVec, v: &SVec) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        let (small, large, flip) = if a.len() <= b.len() { (a, b, false) } else { (b, a, true) };
        for (k, x) in small {
            if let Some(y) = large.get(k) {
                s += if flip { y * x.conj() } else { x * y.conj() };
            }
        }
    }
    s
}

pub(crate) fn norm(u: &SVec) -> f64 {
    u.iter().flat_map(|c| c.values()).map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `u ← u + s·v`.
pub(crate) fn axpy(u: &mut SVec, s: Complex64, v: &SVec) {
    for (a, b) in u.iter_mut().zip(v) {
        for (k, x) in b {
            *a.entry(*k).or_default() += s * x;
        }
    }
}

pub(crate) fn scaled(v: &SVec, s: f64) -> SVec {
    v.iter().map(|c| c.iter().map(|(k, x)| (*k, x * s)).collect()).collect()
}
