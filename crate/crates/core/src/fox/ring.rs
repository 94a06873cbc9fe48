use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::words::Word;

/// Coefficient rings used by the crate: exact integers, reals and complex numbers.
pub trait Coeff:
    Clone + PartialEq + Debug + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn conj(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    fn from_f64(x: f64) -> Self;
    fn text(&self) -> String;
}

impl Coeff for i64 {
    fn conj(&self) -> Self {
        *self
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self as f64, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        x.round() as i64
    }
    fn text(&self) -> String {
        self.to_string()
    }
}

impl Coeff for f64 {
    fn conj(&self) -> Self {
        *self
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn text(&self) -> String {
        format!("{self}")
    }
}

impl Coeff for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn text(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else {
            format!("({}{:+}i)", self.re, self.im)
        }
    }
}

/// Finite linear combination of free-group elements.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeRingElement<C: Coeff = i64> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Default for FreeRingElement<C> {
    fn default() -> Self {
        FreeRingElement { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> FreeRingElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), Word::identity())
    }

    pub fn monomial(c: C, w: Word) -> Self {
        let mut x = Self::zero();
        x.add_term(c, w);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (C, Word)>>(it: I) -> Self {
        let mut x = Self::zero();
        for (c, w) in it {
            x.add_term(c, w);
        }
        x
    }

    pub fn add_term(&mut self, c: C, w: Word) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut x = self.clone();
        for (w, c) in &other.terms {
            x.add_term(c.clone(), w.clone());
        }
        x
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| -c.clone())
    }

    pub fn scale(&self, s: C) -> Self {
        self.map_coeffs(|_, c| c.clone() * s.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut x = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                x.add_term(a.clone() * b.clone(), u.mul(v));
            }
        }
        x
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.clone(), u.mul(w))))
    }

    /// Right multiplication by a group element.
    pub fn right_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.clone(), w.mul(u))))
    }

    /// Σ c̄_w [w⁻¹].
    pub fn star(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.conj(), w.inverse())))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&Word, &C) -> D) -> FreeRingElement<D> {
        FreeRingElement::from_terms(self.terms.iter().map(|(w, c)| (f(w, c), w.clone())))
    }

    /// Apply a substitution of generators to every word.
    pub fn substitute(&self, images: &[Word]) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.clone(), w.substitute(images))))
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let ctext = c.text();
            let (neg, mag) = match ctext.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, ctext),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = if w.is_empty() { String::new() } else { w.display(names) };
            match (mag.as_str(), word.is_empty()) {
                ("1", true) => out.push('1'),
                ("1", false) => out.push_str(&word),
                (_, true) => out.push_str(&mag),
                (_, false) => out.push_str(&format!("{mag} {word}")),
            }
        }
        out
    }
}

impl FreeRingElement<i64> {
    pub fn to_real(&self) -> FreeRingElement<f64> {
        self.map_coeffs(|_, c| *c as f64)
    }
}
