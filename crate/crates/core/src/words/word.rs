use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse, packed as a nonzero integer: `gen + 1` or `-(gen + 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Letter {
        let v = gen as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn gen(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// +1 for a generator, -1 for an inverse.
    pub fn sign(self) -> i64 {
        self.0.signum() as i64
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Position in the alphabet g1 < G1 < g2 < G2 < ... used by shortlex orders.
    pub fn symbol(self) -> usize {
        2 * self.gen() + usize::from(self.is_inverse())
    }

    pub fn from_symbol(s: usize) -> Letter {
        Letter::new(s / 2, s % 2 == 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.gen() + 1)
        } else {
            write!(f, "g{}", self.gen() + 1)
        }
    }
}

/// A freely reduced word in a free group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![Letter::new(g, false)])
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    /// `g^n` for any integer n.
    pub fn power(g: usize, n: i64) -> Word {
        let l = Letter::new(g, n < 0);
        Word(vec![l; n.unsigned_abs() as usize])
    }

    /// Wraps letters that the caller already knows to be reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Word {
        debug_assert!(is_reduced(&letters));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for l in &self.0 {
            v[l.gen()] += l.sign();
        }
        v
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen()).max()
    }

    pub fn contains_gen(&self, g: usize) -> bool {
        self.0.iter().any(|l| l.gen() == g)
    }

    /// Replace every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = &images[l.gen()];
            if l.is_inverse() {
                for &m in img.0.iter().rev() {
                    push_reduced(&mut out, m.inverse());
                }
            } else {
                for &m in &img.0 {
                    push_reduced(&mut out, m);
                }
            }
        }
        Word(out)
    }

    /// Cyclically reduced conjugate (strips matching ends).
    pub fn cyclically_reduced(&self) -> Word {
        let v = &self.0;
        let (mut i, mut j) = (0, v.len());
        while j >= i + 2 && v[i] == v[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(v[i..j].to_vec())
    }

    /// Shortlex comparison in the symbol order g1 < G1 < g2 < ...
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let a = self.0.iter().map(|l| l.symbol());
            let b = other.0.iter().map(|l| l.symbol());
            a.cmp(b)
        })
    }

    /// Render with the given generator names; inverses print as the uppercase name when that is unambiguous.
    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| letter_text(*l, names))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.shortlex_cmp(other)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn is_reduced(v: &[Letter]) -> bool {
    v.windows(2).all(|w| w[0] != w[1].inverse())
}

/// Freely reduce an arbitrary letter sequence.
pub fn free_reduce(letters: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        push_reduced(&mut out, l);
    }
    Word(out)
}

fn letter_text(l: Letter, names: &[String]) -> String {
    let name = names
        .get(l.gen())
        .cloned()
        .unwrap_or_else(|| format!("g{}", l.gen() + 1));
    if !l.is_inverse() {
        return name;
    }
    let upper = name.to_ascii_uppercase();
    let lower_only = name.bytes().all(|b| !b.is_ascii_uppercase());
    if lower_only && upper != name && !names.contains(&upper) {
        upper
    } else {
        format!("{name}^-1")
    }
}

fn resolve_name(token: &str, names: &[String]) -> Option<Letter> {
    if let Some(i) = names.iter().position(|n| n == token) {
        return Some(Letter::new(i, false));
    }
    let lower = token.to_ascii_lowercase();
    if lower != token {
        if let Some(i) = names.iter().position(|n| *n == lower) {
            if names[i].bytes().all(|b| !b.is_ascii_uppercase()) {
                return Some(Letter::new(i, true));
            }
        }
    }
    None
}

/// Parse a word such as `a b A`, `a^-1 b^2` or, for one-letter alphabets, `abA`.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut letters = Vec::new();
    let single_chars = names.iter().all(|n| n.len() == 1);
    for raw in text.split(|c: char| c.is_whitespace() || c == '*' || c == '.') {
        if raw.is_empty() || raw == "1" {
            continue;
        }
        let (base, exp) = match raw.split_once('^') {
            Some((b, e)) => {
                let e = e.trim_matches(|c| c == '(' || c == ')' || c == '{' || c == '}');
                let n: i64 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{raw}`")))?;
                (b, n)
            }
            None => (raw, 1),
        };
        if base.is_empty()
            || !base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            || base.chars().next().is_some_and(|c| c.is_ascii_digit())
        {
            return Err(Error::Parse(format!("malformed token `{raw}`")));
        }
        let base_letters: Vec<Letter> = match resolve_name(base, names) {
            Some(l) => vec![l],
            None if single_chars && base.len() > 1 => base
                .chars()
                .map(|c| {
                    resolve_name(&c.to_string(), names)
                        .ok_or_else(|| Error::UnknownGenerator(c.to_string()))
                })
                .collect::<Result<_>>()?,
            None => return Err(Error::UnknownGenerator(base.to_string())),
        };
        let block = free_reduce(&base_letters).pow(exp);
        letters.extend_from_slice(block.letters());
    }
    Ok(free_reduce(&letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn parse_and_reduce() {
        let w = parse_word("a b A", &ab()).unwrap();
        assert_eq!(w.len(), 3);
        let w = parse_word("a A b", &ab()).unwrap();
        assert_eq!(w, Word::gen(1));
        let t = parse_word("a b a B A B", &ab()).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.display(&ab()), "a b a B A B");
        assert!(parse_word("", &ab()).unwrap().is_empty());
        assert_eq!(parse_word("a^-1 b^2", &ab()).unwrap().display(&ab()), "A b b");
        assert_eq!(parse_word("abAB", &ab()).unwrap().len(), 4);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_word("a c", &ab()), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse_word("a^x", &ab()), Err(Error::Parse(_))));
        assert!(matches!(parse_word("a-b", &ab()), Err(Error::Parse(_))));
    }

    #[test]
    fn reduce_examples() {
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert!(free_reduce(&[a, b, b.inverse(), a.inverse()]).is_empty());
        assert_eq!(free_reduce(&[a, a, a.inverse()]), Word::gen(0));
    }

    #[test]
    fn long_names_use_caret() {
        let names: Vec<String> = vec!["x1".into(), "X1".into()];
        let w = Word::from_reduced(vec![Letter::new(0, true)]);
        assert_eq!(w.display(&names), "x1^-1");
        assert_eq!(parse_word("X1", &names).unwrap(), Word::gen(1));
    }

    #[test]
    fn cyclic_reduction() {
        let w = parse_word("b a b A B", &ab()).unwrap();
        assert_eq!(w.cyclically_reduced().display(&ab()), "b");
    }
}
