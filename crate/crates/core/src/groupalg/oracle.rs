use std::collections::BTreeMap;

use super::amalgam::torus_normal_form;
use super::rewriting::RewritingSystem;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq)]
pub enum OracleKind {
    Free,
    FreeAbelian,
    /// ⟨x, y | x^p = y^q⟩ on the alphabet (x, y).
    TorusAmalgam { p: i64, q: i64 },
    Rewriting(RewritingSystem),
}

/// Solves the word problem of one group by computing normal forms.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormOracle {
    pub kind: OracleKind,
    pub alphabet: Vec<String>,
}

impl NormalFormOracle {
    pub fn free(alphabet: Vec<String>) -> NormalFormOracle {
        NormalFormOracle { kind: OracleKind::Free, alphabet }
    }

    pub fn free_abelian(alphabet: Vec<String>) -> NormalFormOracle {
        NormalFormOracle { kind: OracleKind::FreeAbelian, alphabet }
    }

    /// Names generators `g1..gn` (or `g` when n = 1).
    pub fn free_abelian_rank(n: usize) -> NormalFormOracle {
        let names = if n == 1 { vec!["g".to_string()] } else { (1..=n).map(|i| format!("g{i}")).collect() };
        Self::free_abelian(names)
    }

    pub fn torus(p: i64, q: i64) -> Result<NormalFormOracle> {
        if p == 0 || q == 0 || num_integer::gcd(p, q) != 1 {
            return Err(Error::Invalid(format!("torus amalgam needs coprime nonzero p, q; got ({p},{q})")));
        }
        Ok(NormalFormOracle {
            kind: OracleKind::TorusAmalgam { p, q },
            alphabet: vec!["x".into(), "y".into()],
        })
    }

    pub fn rewriting(rs: RewritingSystem, alphabet: Vec<String>) -> NormalFormOracle {
        NormalFormOracle { kind: OracleKind::Rewriting(rs), alphabet }
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    /// True when equal normal forms are not guaranteed for equal elements.
    pub fn is_partial(&self) -> bool {
        matches!(&self.kind, OracleKind::Rewriting(rs) if !rs.confluent)
    }

    pub fn label(&self) -> String {
        match &self.kind {
            OracleKind::Free => format!("free({})", self.rank()),
            OracleKind::FreeAbelian => format!("free-abelian({})", self.rank()),
            OracleKind::TorusAmalgam { p, q } => format!("torus-amalgam({p},{q})"),
            OracleKind::Rewriting(rs) => format!(
                "rewriting({} rules, {})",
                rs.rules.len(),
                if rs.confluent { "confluent" } else { "partial" }
            ),
        }
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        match &self.kind {
            OracleKind::Free => w.clone(),
            OracleKind::FreeAbelian => {
                let sums = w.exponent_sums(self.rank());
                let mut letters = Vec::new();
                for (g, &e) in sums.iter().enumerate() {
                    for _ in 0..e.abs() {
                        letters.push(Letter::new(g, e < 0));
                    }
                }
                Word::from_reduced(letters)
            }
            OracleKind::TorusAmalgam { p, q } => torus_normal_form(w, *p, *q),
            OracleKind::Rewriting(rs) => rs.normal_form(w),
        }
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> Word {
        self.normal_form(&a.mul(b))
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.normal_form(w).is_empty()
    }

    /// All distinct normal forms of words of length ≤ `radius`, sorted shortlex.
    pub fn ball(&self, radius: usize) -> Vec<Word> {
        let mut seen: BTreeMap<Word, ()> = BTreeMap::new();
        seen.insert(Word::identity(), ());
        let mut frontier = vec![Word::identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.rank() {
                    for inv in [false, true] {
                        let v = self.normal_form(&w.mul(&Word::letter(Letter::new(g, inv))));
                        if seen.insert(v.clone(), ()).is_none() {
                            next.push(v);
                        }
                    }
                }
            }
            frontier = next;
        }
        seen.into_keys().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    #[test]
    fn normal_forms() {
        let f = NormalFormOracle::free(vec!["a".into(), "b".into()]);
        let w = parse_word("a b B", &f.alphabet).unwrap();
        assert_eq!(f.normal_form(&w), Word::gen(0));
        let ab = NormalFormOracle::free_abelian(vec!["a".into(), "b".into()]);
        let w = parse_word("b a", &ab.alphabet).unwrap();
        assert_eq!(ab.normal_form(&w).display(&ab.alphabet), "a b");
        let t = NormalFormOracle::torus(2, 3).unwrap();
        let xx = parse_word("x x", &t.alphabet).unwrap();
        let yyy = parse_word("y y y", &t.alphabet).unwrap();
        assert_eq!(t.normal_form(&xx), t.normal_form(&yyy));
        assert!(NormalFormOracle::torus(2, 4).is_err());
    }

    #[test]
    fn ball_sizes() {
        let f = NormalFormOracle::free(vec!["a".into(), "b".into()]);
        assert_eq!(f.ball(1).len(), 5);
        assert_eq!(f.ball(2).len(), 17);
        let z = NormalFormOracle::free_abelian_rank(1);
        let b = z.ball(3);
        assert_eq!(b.len(), 7);
        let t = NormalFormOracle::torus(2, 3).unwrap();
        let sizes: Vec<usize> = (0..6).map(|r| t.ball(r).len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] < w[1]), "{sizes:?}");
    }
}
