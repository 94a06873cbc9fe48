use std::cmp::Ordering;

use serde::Serialize;

use crate::words::{Letter, Presentation, Word};

/// Weighted shortlex order on symbols `2g` (generator g) and `2g+1` (its inverse).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortlexOrder {
    /// Weight of each symbol; plain shortlex when all are 1.
    pub weights: Vec<u32>,
    /// `rank[s]` is the position of symbol s in the precedence list.
    pub rank: Vec<usize>,
}

impl ShortlexOrder {
    /// Plain shortlex with precedence g1 < G1 < g2 < G2 < ...
    pub fn standard(generators: usize) -> ShortlexOrder {
        let n = 2 * generators;
        ShortlexOrder { weights: vec![1; n], rank: (0..n).collect() }
    }

    /// Precedence given as a symbol list, lowest first, and one weight per symbol.
    pub fn new(precedence: &[usize], weights: &[u32]) -> ShortlexOrder {
        let n = precedence.len();
        let mut rank = vec![0; n];
        for (i, &s) in precedence.iter().enumerate() {
            rank[s] = i;
        }
        ShortlexOrder { weights: weights.to_vec(), rank }
    }

    pub fn cmp(&self, a: &[usize], b: &[usize]) -> Ordering {
        let wa: u64 = a.iter().map(|&s| self.weights[s] as u64).sum();
        let wb: u64 = b.iter().map(|&s| self.weights[s] as u64).sum();
        wa.cmp(&wb)
            .then(a.len().cmp(&b.len()))
            .then_with(|| a.iter().map(|&s| self.rank[s]).cmp(b.iter().map(|&s| self.rank[s])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KbBudget {
    pub max_rules: usize,
    pub max_len: usize,
}

impl Default for KbBudget {
    fn default() -> Self {
        KbBudget { max_rules: 500, max_len: 40 }
    }
}

/// A string rewriting system over the symbols of a free group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewritingSystem {
    pub rules: Vec<(Vec<usize>, Vec<usize>)>,
    pub order: ShortlexOrder,
    /// True when every critical pair was resolved.
    pub confluent: bool,
    #[serde(skip)]
    by_last: Vec<Vec<usize>>,
}

impl RewritingSystem {
    fn build(rules: Vec<(Vec<usize>, Vec<usize>)>, order: ShortlexOrder, confluent: bool) -> Self {
        let n = order.rank.len();
        let mut by_last = vec![Vec::new(); n];
        for (i, (l, _)) in rules.iter().enumerate() {
            by_last[*l.last().unwrap()].push(i);
        }
        RewritingSystem { rules, order, confluent, by_last }
    }

    pub fn symbols(&self) -> usize {
        self.order.rank.len()
    }

    /// Rewrite to an irreducible string (free cancellation is built in).
    pub fn reduce_symbols(&self, input: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::with_capacity(input.len());
        let mut todo: Vec<usize> = input.iter().rev().copied().collect();
        while let Some(s) = todo.pop() {
            if out.last() == Some(&(s ^ 1)) {
                out.pop();
                continue;
            }
            out.push(s);
            for &ri in &self.by_last[s] {
                let (l, r) = &self.rules[ri];
                if out.ends_with(l) {
                    out.truncate(out.len() - l.len());
                    todo.extend(r.iter().rev());
                    break;
                }
            }
        }
        out
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        let s: Vec<usize> = w.letters().iter().map(|l| l.symbol()).collect();
        let r = self.reduce_symbols(&s);
        Word::from_reduced(r.into_iter().map(Letter::from_symbol).collect())
    }

    pub fn display_rules(&self, names: &[String]) -> Vec<String> {
        let show = |v: &[usize]| {
            Word::from_reduced(v.iter().map(|&s| Letter::from_symbol(s)).collect()).display(names)
        };
        self.rules.iter().map(|(l, r)| format!("{} -> {}", show(l), show(r))).collect()
    }
}

/// Outcome of [`kb_complete`] when the budget runs out.
#[derive(Clone, Debug)]
pub struct KbFailure {
    pub partial: RewritingSystem,
    pub reason: String,
}

fn word_symbols(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.symbol()).collect()
}

type Rule = (Vec<usize>, Vec<usize>);

struct Completion {
    order: ShortlexOrder,
    rules: Vec<Option<Rule>>,
    by_last: Vec<Vec<usize>>,
    live: usize,
    budget: KbBudget,
}

impl Completion {
    fn reduce(&self, input: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::with_capacity(input.len());
        let mut todo: Vec<usize> = input.iter().rev().copied().collect();
        'outer: while let Some(s) = todo.pop() {
            if out.last() == Some(&(s ^ 1)) {
                out.pop();
                continue;
            }
            out.push(s);
            for &ri in &self.by_last[s] {
                if let Some((l, r)) = &self.rules[ri] {
                    if out.ends_with(l) {
                        out.truncate(out.len() - l.len());
                        todo.extend(r.iter().rev());
                        continue 'outer;
                    }
                }
            }
        }
        out
    }

    fn remove(&mut self, i: usize) -> Option<Rule> {
        let r = self.rules[i].take()?;
        self.by_last[*r.0.last().unwrap()].retain(|&j| j != i);
        self.live -= 1;
        Some(r)
    }

    /// Orient and add `a = b` with interreduction.
    fn add_equation(&mut self, a: &[usize], b: &[usize]) -> Result<(), String> {
        let mut pending = vec![(a.to_vec(), b.to_vec())];
        while let Some((a, b)) = pending.pop() {
            let a = self.reduce(&a);
            let b = self.reduce(&b);
            if a == b {
                continue;
            }
            let (l, r) = if self.order.cmp(&a, &b) == Ordering::Greater { (a, b) } else { (b, a) };
            if l.len() > self.budget.max_len {
                return Err(format!("rule of length {} exceeds max length {}", l.len(), self.budget.max_len));
            }
            for i in 0..self.rules.len() {
                if matches!(&self.rules[i], Some((ol, _)) if contains(ol, &l)) {
                    pending.push(self.remove(i).unwrap());
                }
            }
            let idx = self.rules.len();
            self.by_last[*l.last().unwrap()].push(idx);
            self.rules.push(Some((l, r)));
            self.live += 1;
            for i in 0..idx {
                if let Some((_, or)) = &self.rules[i] {
                    let nr = self.reduce(or);
                    if &nr != or {
                        self.rules[i].as_mut().unwrap().1 = nr;
                    }
                }
            }
            if self.live > self.budget.max_rules {
                return Err(format!("more than {} rules", self.budget.max_rules));
            }
        }
        Ok(())
    }

    /// Equations from overlaps of rule x (as left factor) with rule y.
    fn critical_pairs(&self, x: usize, y: usize) -> Vec<Rule> {
        let (Some((lx, rx)), Some((ly, ry))) = (&self.rules[x], &self.rules[y]) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for ov in 1..lx.len().min(ly.len()) {
            if lx[lx.len() - ov..] == ly[..ov] {
                let mut left = rx.clone();
                left.extend_from_slice(&ly[ov..]);
                let mut right = lx[..lx.len() - ov].to_vec();
                right.extend_from_slice(ry);
                out.push((left, right));
            }
        }
        if x == y {
            // overlaps with the built-in cancellations s·s⁻¹ → 1
            let mut left = rx.clone();
            left.push(lx[lx.len() - 1] ^ 1);
            out.push((left, lx[..lx.len() - 1].to_vec()));
            let mut left = vec![lx[0] ^ 1];
            left.extend_from_slice(rx);
            out.push((left, lx[1..].to_vec()));
        }
        out
    }

    fn finish(self, confluent: bool) -> RewritingSystem {
        let mut rules: Vec<Rule> = self.rules.into_iter().flatten().collect();
        rules.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        RewritingSystem::build(rules, self.order, confluent)
    }
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    hay.len() >= needle.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Knuth-Bendix completion of the group presented by `p`, with inverse letters as
/// separate symbols and free cancellation built in.
pub fn kb_complete(p: &Presentation, order: ShortlexOrder, budget: KbBudget) -> Result<RewritingSystem, KbFailure> {
    let n = order.rank.len();
    let mut c = Completion { order, rules: Vec::new(), by_last: vec![Vec::new(); n], live: 0, budget };
    let fail = |c: Completion, reason: String| KbFailure { partial: c.finish(false), reason };
    for r in &p.relators {
        let s = word_symbols(&r.cyclically_reduced());
        if let Err(e) = c.add_equation(&s, &[]) {
            return Err(fail(c, e));
        }
    }
    // every pair (x, y) with max(x, y) = i is examined once rule i exists
    let mut i = 0;
    while i < c.rules.len() {
        for j in 0..=i {
            let pairs: &[(usize, usize)] = if i == j { &[(i, i)] } else { &[(i, j), (j, i)] };
            for &(x, y) in pairs {
                for (a, b) in c.critical_pairs(x, y) {
                    if let Err(e) = c.add_equation(&a, &b) {
                        return Err(fail(c, e));
                    }
                }
                if c.rules[i].is_none() {
                    break;
                }
            }
            if c.rules[i].is_none() {
                break;
            }
        }
        i += 1;
    }
    Ok(c.finish(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Presentation;

    #[test]
    fn unknot_completes() {
        let p = Presentation::from_strs(&["g", "h"], &["g H"]).unwrap();
        let rs = kb_complete(&p, ShortlexOrder::standard(2), KbBudget::default()).unwrap();
        assert!(rs.confluent);
        let shown = rs.display_rules(&p.generators);
        assert!(shown.contains(&"h -> g".to_string()), "{shown:?}");
        assert_eq!(rs.normal_form(&p.word("h h G").unwrap()), p.word("g").unwrap());
    }

    #[test]
    fn free_abelian_completes() {
        let p = Presentation::from_strs(&["a", "b"], &["a b A B"]).unwrap();
        let rs = kb_complete(&p, ShortlexOrder::standard(2), KbBudget::default()).unwrap();
        assert_eq!(rs.normal_form(&p.word("b a B A b a").unwrap()), rs.normal_form(&p.word("a b").unwrap()));
    }

    #[test]
    fn tiny_budget_fails() {
        let p = Presentation::from_strs(&["a", "b"], &["a b a B A B"]).unwrap();
        let err = kb_complete(&p, ShortlexOrder::standard(2), KbBudget { max_rules: 2, max_len: 4 }).unwrap_err();
        assert!(!err.partial.confluent);
    }
}
