use crate::error::{Error, Result};
use crate::words::{Mark, Presentation, Word};

/// Remove generator `g` using relator `j`, in which it must occur exactly once.
/// Returns the new presentation and the word that replaced `g` (in the new numbering).
pub fn eliminate_generator(p: &Presentation, g: usize, j: usize) -> Result<(Presentation, Word)> {
    let r = p.relators.get(j).ok_or(Error::Index { index: j, len: p.relators.len() })?;
    let hits: Vec<usize> = r.letters().iter().enumerate().filter(|(_, l)| l.gen() == g).map(|(i, _)| i).collect();
    if hits.len() != 1 {
        return Err(Error::Invalid(format!("generator occurs {} times in relator {}", hits.len(), j + 1)));
    }
    let i = hits[0];
    let l = r.letters();
    let u = crate::words::free_reduce(&l[..i]);
    let v = crate::words::free_reduce(&l[i + 1..]);
    // u g^±1 v = 1
    let mut sol = u.inverse().mul(&v.inverse());
    if l[i].is_inverse() {
        sol = sol.inverse();
    }
    let mut images: Vec<Word> = (0..p.rank()).map(|h| if h < g { Word::gen(h) } else { Word::gen(h.saturating_sub(1)) }).collect();
    let renumbered = sol.substitute(&images);
    images[g] = renumbered.clone();
    let mut names = p.generators.clone();
    names.remove(g);
    let rels = p
        .relators
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, w)| w.substitute(&images))
        .collect();
    let mut q = Presentation::new(names, rels)?;
    for (m, w) in &p.marks {
        q.marks.insert(*m, w.substitute(&images));
    }
    Ok((q, renumbered))
}

/// Greedy Tietze simplification: cyclically reduce, drop trivial and repeated relators,
/// and eliminate generators occurring once in some relator, shortest substitution first.
/// Generators that are single-letter marks are kept.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut p = p.clone();
    p.wirtinger = false;
    loop {
        let mut rels: Vec<Word> = Vec::new();
        for r in &p.relators {
            let c = r.cyclically_reduced();
            if !c.is_empty() && !rels.iter().any(|x| x == &c || x == &c.inverse()) {
                rels.push(c);
            }
        }
        p.relators = rels;
        let protected: Vec<usize> = [Mark::Meridian, Mark::Longitude, Mark::Core]
            .iter()
            .filter_map(|m| p.mark(*m))
            .filter(|w| w.len() == 1)
            .map(|w| w.letters()[0].gen())
            .collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for (j, r) in p.relators.iter().enumerate() {
            for g in 0..p.rank() {
                if protected.contains(&g) {
                    continue;
                }
                let n = r.letters().iter().filter(|l| l.gen() == g).count();
                if n == 1 && best.is_none_or(|(len, _, _)| r.len() < len) {
                    best = Some((r.len(), g, j));
                }
            }
        }
        match best {
            Some((_, g, j)) => p = eliminate_generator(&p, g, j).expect("occurs once").0,
            None => return p,
        }
    }
}

fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    // apply a, then b
    a.iter().map(|&x| b[x as usize]).collect()
}

fn invert(a: &[u8]) -> Vec<u8> {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x as usize] = i as u8;
    }
    r
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, (n - 1) as u8);
            out.push(q);
        }
    }
    out
}

/// |Hom(G, S_n)|, an isomorphism invariant of the presented group.
pub fn count_homs_to_symmetric(p: &Presentation, n: usize) -> u64 {
    let perms = permutations(n);
    let id: Vec<u8> = (0..n as u8).collect();
    let k = p.rank();
    let mut by_top: Vec<Vec<&Word>> = vec![Vec::new(); k.max(1)];
    let mut trivial_ok = true;
    for r in &p.relators {
        match r.max_gen() {
            Some(g) => by_top[g].push(r),
            None => trivial_ok &= r.is_empty(),
        }
    }
    if !trivial_ok {
        return 0;
    }
    fn go(g: usize, k: usize, assign: &mut Vec<(Vec<u8>, Vec<u8>)>, perms: &[Vec<u8>], by_top: &[Vec<&Word>], id: &[u8]) -> u64 {
        if g == k {
            return 1;
        }
        let mut total = 0;
        for s in perms {
            assign.push((s.clone(), invert(s)));
            let ok = by_top[g].iter().all(|r| {
                let mut acc = id.to_vec();
                for l in r.letters() {
                    let (f, b) = &assign[l.gen()];
                    acc = compose(&acc, if l.is_inverse() { b } else { f });
                }
                acc == id
            });
            if ok {
                total += go(g + 1, k, assign, perms, by_top, id);
            }
            assign.pop();
        }
        total
    }
    go(0, k, &mut Vec::new(), &perms, &by_top, &id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{catalog, parse_pd, wirtinger};

    #[test]
    fn simplify_wirtinger_trefoil() {
        let p = wirtinger(&parse_pd(catalog::TREFOIL).unwrap()).unwrap();
        let s = simplify(&p);
        assert_eq!((s.rank(), s.relators.len()), (2, 1));
        assert_eq!(s.relators[0].len(), 6);
        let reference = Presentation::from_strs(&["a", "b"], &["a b a B A B"]).unwrap();
        assert_eq!(count_homs_to_symmetric(&s, 3), count_homs_to_symmetric(&reference, 3));
        assert_eq!(count_homs_to_symmetric(&s, 4), count_homs_to_symmetric(&reference, 4));
    }

    #[test]
    fn hom_counts() {
        let z = Presentation::from_strs(&["g"], &[]).unwrap();
        assert_eq!(count_homs_to_symmetric(&z, 3), 6);
        let z2 = Presentation::from_strs(&["a", "b"], &["a b A B"]).unwrap();
        // commuting pairs in S_3: Σ |centralizer| = |S_3| · #classes = 18
        assert_eq!(count_homs_to_symmetric(&z2, 3), 18);
        let f8 = wirtinger(&parse_pd(catalog::FIGURE_EIGHT).unwrap()).unwrap();
        let t = wirtinger(&parse_pd(catalog::TREFOIL).unwrap()).unwrap();
        assert_ne!(count_homs_to_symmetric(&f8, 3), count_homs_to_symmetric(&t, 3));
    }

    #[test]
    fn eliminate_rejects_repeats() {
        let p = Presentation::from_strs(&["a", "b"], &["a b a B A B"]).unwrap();
        assert!(eliminate_generator(&p, 0, 0).is_err());
    }
}
