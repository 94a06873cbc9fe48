use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::oracle::NormalFormOracle;
use crate::error::{Error, Result};
use crate::fox::{Coeff, FreeRingElement};
use crate::words::Word;

fn same_oracle(a: &Arc<NormalFormOracle>, b: &Arc<NormalFormOracle>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Element of ℂ[G], keyed by oracle normal forms.
#[derive(Clone, Debug)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, Complex64>,
    oracle: Arc<NormalFormOracle>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_oracle(&self.oracle, &other.oracle)
    }
}

impl GroupRingElement {
    pub fn zero(oracle: &Arc<NormalFormOracle>) -> Self {
        GroupRingElement { terms: BTreeMap::new(), oracle: oracle.clone() }
    }

    pub fn one(oracle: &Arc<NormalFormOracle>) -> Self {
        Self::monomial(oracle, Complex64::new(1.0, 0.0), &Word::identity())
    }

    pub fn scalar(oracle: &Arc<NormalFormOracle>, c: f64) -> Self {
        Self::monomial(oracle, Complex64::new(c, 0.0), &Word::identity())
    }

    pub fn monomial(oracle: &Arc<NormalFormOracle>, c: Complex64, w: &Word) -> Self {
        let mut x = Self::zero(oracle);
        x.add_term(c, w);
        x
    }

    /// Sum of `c·[w]`, normalizing every word.
    pub fn from_terms<'a, I: IntoIterator<Item = (Complex64, &'a Word)>>(oracle: &Arc<NormalFormOracle>, it: I) -> Self {
        let mut x = Self::zero(oracle);
        for (c, w) in it {
            x.add_term(c, w);
        }
        x
    }

    /// Real combination from `(coefficient, word text)` pairs in the oracle alphabet.
    pub fn parse_terms(oracle: &Arc<NormalFormOracle>, terms: &[(f64, &str)]) -> Result<Self> {
        let mut x = Self::zero(oracle);
        for (c, s) in terms {
            let w = crate::words::parse_word(s, &oracle.alphabet)?;
            x.add_term(Complex64::new(*c, 0.0), &w);
        }
        Ok(x)
    }

    pub fn add_term(&mut self, c: Complex64, w: &Word) {
        let nf = self.oracle.normal_form(w);
        self.add_normal(c, nf);
    }

    fn add_normal(&mut self, c: Complex64, nf: Word) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        match self.terms.entry(nf) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == Complex64::new(0.0, 0.0) {
                    o.remove();
                }
            }
        }
    }

    pub fn oracle(&self) -> &Arc<NormalFormOracle> {
        &self.oracle
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Complex64 {
        let nf = self.oracle.normal_form(w);
        self.terms.get(&nf).copied().unwrap_or_default()
    }

    /// Σ|c|.
    pub fn norm1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_oracle(&self.oracle, &other.oracle) {
            Ok(())
        } else {
            Err(Error::Oracle("group ring elements use different oracles".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut x = self.clone();
        for (w, c) in &other.terms {
            x.add_normal(*c, w.clone());
        }
        Ok(x)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut x = Self::zero(&self.oracle);
        for (w, c) in &self.terms {
            x.add_normal(c * s, w.clone());
        }
        x
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut x = Self::zero(&self.oracle);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                x.add_term(a * b, &u.mul(v));
            }
        }
        Ok(x)
    }

    /// Σ c̄_g [g⁻¹].
    pub fn star(&self) -> Self {
        let mut x = Self::zero(&self.oracle);
        for (w, c) in &self.terms {
            x.add_term(c.conj(), &w.inverse());
        }
        x
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> Complex64 {
        self.terms.get(&Word::identity()).copied().unwrap_or_default()
    }

    pub fn display(&self) -> String {
        let f = FreeRingElement::<Complex64>::from_terms(self.terms.iter().map(|(w, c)| (*c, w.clone())));
        f.display(&self.oracle.alphabet)
    }
}

/// Matrix over ℂ[G] acting on row vectors from the right: `v ↦ v·A`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<GroupRingElement>,
    oracle: Arc<NormalFormOracle>,
}

impl GroupRingMatrix {
    pub fn new(oracle: &Arc<NormalFormOracle>, rows: usize, cols: usize, entries: Vec<GroupRingElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!("expected {} entries, got {}", rows * cols, entries.len())));
        }
        if entries.iter().any(|e| !same_oracle(e.oracle(), oracle)) {
            return Err(Error::Oracle("matrix entries use different oracles".into()));
        }
        Ok(GroupRingMatrix { rows, cols, entries, oracle: oracle.clone() })
    }

    pub fn from_rows(oracle: &Arc<NormalFormOracle>, rows: Vec<Vec<GroupRingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        Self::new(oracle, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(oracle: &Arc<NormalFormOracle>, rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            entries: vec![GroupRingElement::zero(oracle); rows * cols],
            oracle: oracle.clone(),
        }
    }

    pub fn identity(oracle: &Arc<NormalFormOracle>, n: usize) -> Self {
        let mut m = Self::zeros(oracle, n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::one(oracle));
        }
        m
    }

    pub fn scalar(oracle: &Arc<NormalFormOracle>, n: usize, c: f64) -> Self {
        Self::identity(oracle, n).scale(Complex64::new(c, 0.0))
    }

    /// 1×1 matrix.
    pub fn single(x: GroupRingElement) -> Self {
        let o = x.oracle().clone();
        GroupRingMatrix { rows: 1, cols: 1, entries: vec![x], oracle: o }
    }

    pub fn oracle(&self) -> &Arc<NormalFormOracle> {
        &self.oracle
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElement) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = self.clone();
        for e in m.entries.iter_mut() {
            *e = e.scale(s);
        }
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Invalid("matrix shapes differ".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Self::new(&self.oracle, self.rows, self.cols, entries)
    }

    /// Ordinary matrix product; `R_A ∘ R_C = R_{C·A}` in the row-vector convention.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Invalid("matrix shapes do not compose".into()));
        }
        let mut m = Self::zeros(&self.oracle, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = GroupRingElement::zero(&self.oracle);
                for l in 0..self.cols {
                    acc = acc.add(&self.get(i, l).mul(other.get(l, j))?)?;
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    /// Conjugate transpose with starred entries, the matrix of the adjoint operator.
    pub fn star(&self) -> Self {
        let mut m = Self::zeros(&self.oracle, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).star());
            }
        }
        m
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Invalid("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).map(|i| self.get(i, i).trace()).sum())
    }

    /// Block matrix [[a, c], [0, b]].
    pub fn block_upper(a: &Self, c: &Self, b: &Self) -> Result<Self> {
        if c.rows != a.rows || c.cols != b.cols {
            return Err(Error::Invalid("block shapes do not fit".into()));
        }
        let (n, m) = (a.rows + b.rows, a.cols + b.cols);
        let mut out = Self::zeros(&a.oracle, n, m);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j).clone());
            }
            for j in 0..c.cols {
                out.set(i, a.cols + j, c.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).map(|j| self.get(i, j).display()).collect::<Vec<_>>().join(" ; ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// A concrete realization of a presentation's group: an oracle plus the image of each
/// presentation generator as a word in the oracle alphabet.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub oracle: Arc<NormalFormOracle>,
    pub images: Vec<Word>,
    /// False for quotients that only witness necessary conditions (the abelianization).
    pub faithful: bool,
}

impl GroupModel {
    /// The presentation's own generators, used directly as the oracle alphabet.
    pub fn direct(oracle: NormalFormOracle) -> GroupModel {
        let images = (0..oracle.rank()).map(Word::gen).collect();
        GroupModel { oracle: Arc::new(oracle), images, faithful: true }
    }

    pub fn new(oracle: NormalFormOracle, images: Vec<Word>, faithful: bool) -> GroupModel {
        GroupModel { oracle: Arc::new(oracle), images, faithful }
    }

    /// Every relator of `p` maps to the identity.
    pub fn respects(&self, p: &crate::words::Presentation) -> bool {
        p.rank() == self.images.len() && p.relators.iter().all(|r| self.oracle.is_identity(&r.substitute(&self.images)))
    }

    pub fn map_word(&self, w: &Word) -> Word {
        self.oracle.normal_form(&w.substitute(&self.images))
    }

    pub fn map_element<C: Coeff>(&self, x: &FreeRingElement<C>) -> GroupRingElement {
        let mut out = GroupRingElement::zero(&self.oracle);
        for (w, c) in x.terms() {
            out.add_term(c.to_complex(), &w.substitute(&self.images));
        }
        out
    }

    pub fn map_matrix<C: Coeff>(&self, m: &crate::fox::FoxMatrix<C>) -> GroupRingMatrix {
        let rows = m.entries.iter().map(|r| r.iter().map(|e| self.map_element(e)).collect()).collect();
        GroupRingMatrix::from_rows(&self.oracle, rows).expect("fox matrices are rectangular")
    }

    pub fn is_partial(&self) -> bool {
        self.oracle.is_partial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn basics() {
        let o = Arc::new(NormalFormOracle::free(vec!["g".into()]));
        let g = GroupRingElement::monomial(&o, c(1.0), &Word::gen(0));
        let gi = GroupRingElement::monomial(&o, c(1.0), &Word::gen(0).inverse());
        assert_eq!(g.mul(&gi).unwrap(), GroupRingElement::one(&o));
        let x = GroupRingElement::from_terms(&o, [(c(2.0), &Word::identity()), (Complex64::new(0.0, 1.0), &Word::gen(0))]);
        let xs = x.star();
        assert_eq!(xs.coeff(&Word::gen(0).inverse()), Complex64::new(0.0, -1.0));
        assert_eq!(x.trace(), c(2.0));
        assert_eq!(g.trace(), c(0.0));
        assert_eq!(xs.mul(&x).unwrap().trace(), c(5.0));
        assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn torus_products() {
        let o = Arc::new(NormalFormOracle::torus(2, 3).unwrap());
        let x = GroupRingElement::parse_terms(&o, &[(1.0, "x")]).unwrap();
        let y = GroupRingElement::parse_terms(&o, &[(1.0, "y")]).unwrap();
        assert_eq!(x.mul(&x).unwrap(), y.mul(&y).unwrap().mul(&y).unwrap());
        let e = GroupRingElement::parse_terms(&o, &[(1.0, ""), (-1.0, "y"), (1.0, "x x")]).unwrap();
        assert_eq!(e.mul(&GroupRingElement::one(&o)).unwrap(), e);
    }

    #[test]
    fn oracle_mismatch() {
        let a = Arc::new(NormalFormOracle::free(vec!["g".into()]));
        let b = Arc::new(NormalFormOracle::free_abelian(vec!["g".into()]));
        let x = GroupRingElement::one(&a);
        let y = GroupRingElement::one(&b);
        assert!(matches!(x.mul(&y), Err(Error::Oracle(_))));
    }
}
