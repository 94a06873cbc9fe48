use serde::Serialize;

use super::presentation::Presentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// One Tietze transformation. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeMove {
    /// I_a: replace r_j by its inverse.
    Invert(usize),
    /// I_b: replace r_j by w r_j w⁻¹.
    Conjugate(usize, Word),
    /// I_c: replace r_j by r_j r_l.
    Multiply(usize, usize),
    /// II_W: add generator `name` and relator `name · w⁻¹`, w = g_j^{±1} g_i g_j^{∓1}.
    AddGenerator(String, Word),
    /// Inverse of II_W: drop the generator and its defining relator.
    RemoveGenerator(usize),
    /// III: new generator i is old generator `perm[i]`.
    Permute(Vec<usize>),
}

/// A presentation together with the images of the previous generators.
#[derive(Clone, Debug)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    /// `correspondence[g]` is old generator g written in the new generators.
    pub correspondence: Vec<Word>,
}

fn conjugate_shape(w: &Word) -> bool {
    let l = w.letters();
    l.len() == 3 && l[0] == l[2].inverse() && !l[1].is_inverse() && l[0].gen() != l[1].gen()
}

fn check_rel(p: &Presentation, j: usize) -> Result<()> {
    if j >= p.relators.len() {
        return Err(Error::Index { index: j, len: p.relators.len() });
    }
    Ok(())
}

pub fn tietze_apply(p: &Presentation, mv: &TietzeMove) -> Result<TietzeOutcome> {
    let k = p.rank();
    let identity: Vec<Word> = (0..k).map(Word::gen).collect();
    let mut q = p.clone();
    let mut corr = identity;
    match mv {
        TietzeMove::Invert(j) => {
            check_rel(p, *j)?;
            q.relators[*j] = p.relators[*j].inverse();
        }
        TietzeMove::Conjugate(j, w) => {
            check_rel(p, *j)?;
            if w.max_gen().is_some_and(|g| g >= k) {
                return Err(Error::Invalid("conjugating word uses unknown generator".into()));
            }
            q.relators[*j] = w.mul(&p.relators[*j]).mul(&w.inverse());
        }
        TietzeMove::Multiply(j, l) => {
            check_rel(p, *j)?;
            check_rel(p, *l)?;
            if j == l {
                return Err(Error::Invalid("I_c needs two distinct relators".into()));
            }
            q.relators[*j] = p.relators[*j].mul(&p.relators[*l]);
        }
        TietzeMove::AddGenerator(name, w) => {
            if !conjugate_shape(w) || w.max_gen().is_some_and(|g| g >= k) {
                return Err(Error::Invalid(
                    "II_W word must be g_j g_i g_j^-1 or g_j^-1 g_i g_j".into(),
                ));
            }
            q.generators.push(name.clone());
            q.relators.push(Word::gen(k).mul(&w.inverse()));
            q.check()?;
        }
        TietzeMove::RemoveGenerator(x) => {
            let x = *x;
            if x >= k {
                return Err(Error::Index { index: x, len: k });
            }
            let users: Vec<usize> = (0..p.relators.len())
                .filter(|&j| p.relators[j].contains_gen(x))
                .collect();
            let def = match users.as_slice() {
                [j] => *j,
                _ => return Err(Error::Invalid("generator occurs in more than one relator".into())),
            };
            if p.marks.values().any(|m| m.contains_gen(x)) {
                return Err(Error::Invalid("generator occurs in a mark".into()));
            }
            let r = p.relators[def].letters();
            if r.is_empty() || r[0] != Letter::new(x, false) {
                return Err(Error::Invalid("relator is not of the form x w^-1".into()));
            }
            let w = Word::from_reduced(r[1..].to_vec()).inverse();
            if !conjugate_shape(&w) {
                return Err(Error::Invalid("relator is not of the form x w^-1".into()));
            }
            q.relators.remove(def);
            q.generators.remove(x);
            let shift: Vec<Word> = (0..k)
                .map(|g| match g.cmp(&x) {
                    std::cmp::Ordering::Less => Word::gen(g),
                    std::cmp::Ordering::Greater => Word::gen(g - 1),
                    std::cmp::Ordering::Equal => Word::identity(),
                })
                .collect();
            q.relators = q.relators.iter().map(|r| r.substitute(&shift)).collect();
            q.marks = q.marks.iter().map(|(m, w)| (*m, w.substitute(&shift))).collect();
            corr = shift;
            corr[x] = w.substitute(&corr);
        }
        TietzeMove::Permute(perm) => {
            let mut seen = vec![false; k];
            if perm.len() != k || perm.iter().any(|&i| i >= k || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::Invalid("III needs a permutation of the generators".into()));
            }
            // old generator perm[i] becomes new generator i
            let mut images = vec![Word::identity(); k];
            for (i, &o) in perm.iter().enumerate() {
                images[o] = Word::gen(i);
            }
            q.generators = perm.iter().map(|&o| p.generators[o].clone()).collect();
            q.relators = p.relators.iter().map(|r| r.substitute(&images)).collect();
            q.marks = p.marks.iter().map(|(m, w)| (*m, w.substitute(&images))).collect();
            corr = images;
        }
    }
    if !matches!(mv, TietzeMove::Permute(_)) {
        q.wirtinger = p.wirtinger && super::validate_wirtinger(&q).pass;
    }
    Ok(TietzeOutcome { presentation: q, correspondence: corr })
}

impl TietzeMove {
    /// The move undoing `self` on `p`, where one exists (I_a, III, II_W).
    pub fn inverse_on(&self, p: &Presentation) -> Option<TietzeMove> {
        match self {
            TietzeMove::Invert(j) => Some(TietzeMove::Invert(*j)),
            TietzeMove::AddGenerator(..) => Some(TietzeMove::RemoveGenerator(p.rank())),
            TietzeMove::Permute(perm) => {
                let mut inv = vec![0; perm.len()];
                for (i, &o) in perm.iter().enumerate() {
                    inv[o] = i;
                }
                Some(TietzeMove::Permute(inv))
            }
            _ => None,
        }
    }

    /// Script syntax with 1-based indices: `Ia 1`, `Ib 1 a b`, `Ic 1 2`, `IIw c a b A`,
    /// `IIw- c`, `III b a`.
    pub fn parse(line: &str, p: &Presentation) -> Result<TietzeMove> {
        let mut it = line.split_whitespace();
        let op = it.next().ok_or_else(|| Error::Parse("empty move".into()))?;
        let rest: Vec<&str> = it.collect();
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| Error::Parse(format!("expected relator number, got `{s}`")))?;
            if v == 0 || v > p.relators.len() {
                return Err(Error::Index { index: v, len: p.relators.len() });
            }
            Ok(v - 1)
        };
        let gen = |s: &str| -> Result<usize> {
            p.index_of(s).ok_or_else(|| Error::UnknownGenerator(s.to_string()))
        };
        let need = |n: usize| -> Result<()> {
            if rest.len() < n {
                return Err(Error::Parse(format!("`{op}` needs {n} argument(s)")));
            }
            Ok(())
        };
        match op {
            "Ia" => {
                need(1)?;
                Ok(TietzeMove::Invert(idx(rest[0])?))
            }
            "Ib" => {
                need(1)?;
                Ok(TietzeMove::Conjugate(idx(rest[0])?, p.word(&rest[1..].join(" "))?))
            }
            "Ic" => {
                need(2)?;
                Ok(TietzeMove::Multiply(idx(rest[0])?, idx(rest[1])?))
            }
            "IIw" => {
                need(2)?;
                Ok(TietzeMove::AddGenerator(rest[0].to_string(), p.word(&rest[1..].join(" "))?))
            }
            "IIw-" => {
                need(1)?;
                Ok(TietzeMove::RemoveGenerator(gen(rest[0])?))
            }
            "III" => Ok(TietzeMove::Permute(rest.iter().map(|s| gen(s)).collect::<Result<_>>()?)),
            _ => Err(Error::Parse(format!("unknown move `{op}`"))),
        }
    }
}

/// A random applicable move. Relators are kept to at most `max_len` letters; new
/// generators are named `n1`, `n2`, … skipping names in use.
pub fn random_move<R: rand::Rng>(p: &Presentation, rng: &mut R, max_len: usize) -> TietzeMove {
    let k = p.rank();
    let m = p.relators.len();
    let len = |j: usize| p.relators[j].len();
    let mut kinds: Vec<u8> = vec![5];
    if m > 0 {
        kinds.extend([0, 1]);
    }
    if m > 1 {
        kinds.push(2);
    }
    if k > 1 {
        kinds.push(3);
    }
    let removable: Vec<usize> = (0..k).filter(|&x| tietze_apply(p, &TietzeMove::RemoveGenerator(x)).is_ok()).collect();
    if !removable.is_empty() {
        kinds.push(4);
    }
    loop {
        match kinds[rng.gen_range(0..kinds.len())] {
            0 => return TietzeMove::Invert(rng.gen_range(0..m)),
            1 => {
                let j = rng.gen_range(0..m);
                if len(j) + 2 <= max_len {
                    let w = Word::letter(Letter::new(rng.gen_range(0..k), rng.gen()));
                    return TietzeMove::Conjugate(j, w);
                }
            }
            2 => {
                let j = rng.gen_range(0..m);
                let l = (j + rng.gen_range(1..m)) % m;
                if len(j) + len(l) <= max_len {
                    return TietzeMove::Multiply(j, l);
                }
            }
            3 => {
                let i = rng.gen_range(0..k);
                let j = (i + rng.gen_range(1..k)) % k;
                let c = Letter::new(j, rng.gen());
                let w = Word::from_reduced(vec![c, Letter::new(i, false), c.inverse()]);
                let name = (1..).map(|n| format!("n{n}")).find(|n| p.index_of(n).is_none()).unwrap();
                return TietzeMove::AddGenerator(name, w);
            }
            4 => return TietzeMove::RemoveGenerator(removable[rng.gen_range(0..removable.len())]),
            _ => {
                let mut perm: Vec<usize> = (0..k).collect();
                rand::seq::SliceRandom::shuffle(&mut perm[..], rng);
                return TietzeMove::Permute(perm);
            }
        }
    }
}

/// Shape of one relator as seen by [`validate_wirtinger`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelatorShape {
    Conjugation,
    /// The two-letter `a c⁻¹` left by a crossing whose over-arc is also an under-arc.
    Kink,
    Empty,
    SingleGenerator,
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct WirtingerReport {
    pub deficiency: i64,
    pub shapes: Vec<RelatorShape>,
    pub all_conjugate: bool,
    pub pass: bool,
}

/// Generators (in, out) identified by a conjugation-shaped relator.
pub(crate) fn relator_shape(r: &Word) -> (RelatorShape, Option<(usize, usize)>) {
    let l = r.letters();
    match l.len() {
        0 => (RelatorShape::Empty, None),
        1 => (RelatorShape::SingleGenerator, None),
        2 if l[0].is_inverse() != l[1].is_inverse() => {
            (RelatorShape::Kink, Some((l[0].gen(), l[1].gen())))
        }
        4 => {
            for rot in 0..4 {
                let c: Vec<Letter> = (0..4).map(|i| l[(i + rot) % 4]).collect();
                if c[2] == c[0].inverse() && c[1].is_inverse() != c[3].is_inverse() {
                    return (RelatorShape::Conjugation, Some((c[1].gen(), c[3].gen())));
                }
            }
            (RelatorShape::Other, None)
        }
        _ => (RelatorShape::Other, None),
    }
}

pub fn validate_wirtinger(p: &Presentation) -> WirtingerReport {
    let k = p.rank();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut shapes = Vec::new();
    for r in &p.relators {
        let (s, pair) = relator_shape(r);
        if let Some((a, c)) = pair {
            let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
            parent[ra] = rc;
        }
        shapes.push(s);
    }
    let roots: std::collections::BTreeSet<usize> = (0..k).map(|g| find(&mut parent, g)).collect();
    let all_conjugate = roots.len() <= 1;
    let deficiency = p.deficiency();
    let pass = deficiency == 1
        && k > 0
        && all_conjugate
        && shapes
            .iter()
            .all(|s| matches!(s, RelatorShape::Conjugation | RelatorShape::Kink));
    WirtingerReport { deficiency, shapes, all_conjugate, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::abelianization;

    fn trefoil() -> Presentation {
        Presentation::from_strs(&["a", "b"], &["a b a B A B"]).unwrap()
    }

    fn wirt_trefoil() -> Presentation {
        let mut p = Presentation::from_strs(&["a", "b", "c"], &["a b A C", "b c B A"]).unwrap();
        p.wirtinger = true;
        p
    }

    #[test]
    fn random_moves_apply() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut p = wirt_trefoil();
        for _ in 0..200 {
            let mv = random_move(&p, &mut rng, 60);
            p = tietze_apply(&p, &mv).unwrap().presentation;
            assert!(p.relators.iter().all(|r| r.len() <= 60));
        }
        assert_eq!(p.deficiency(), 1);
    }

    #[test]
    fn invert_and_back() {
        let p = trefoil();
        let q = tietze_apply(&p, &TietzeMove::Invert(0)).unwrap().presentation;
        assert_eq!(q.relators[0], p.relators[0].inverse());
        let back = tietze_apply(&q, &TietzeMove::Invert(0)).unwrap().presentation;
        assert_eq!(back, p);
    }

    #[test]
    fn swap_generators() {
        let p = trefoil();
        let q = tietze_apply(&p, &TietzeMove::Permute(vec![1, 0])).unwrap().presentation;
        assert_eq!(q.generators, vec!["b", "a"]);
        assert_eq!(q.show(&q.relators[0]), "a b a B A B");
        assert_eq!(q.relators[0], Presentation::from_strs(&["b", "a"], &["a b a B A B"]).unwrap().relators[0]);
    }

    #[test]
    fn add_and_remove_generator() {
        let p = wirt_trefoil();
        let w = p.word("a b A").unwrap();
        let mv = TietzeMove::AddGenerator("d".into(), w);
        let q = tietze_apply(&p, &mv).unwrap().presentation;
        assert_eq!(q.rank(), 4);
        assert_eq!(q.relators.len(), 3);
        assert!(q.wirtinger);
        let back = tietze_apply(&q, &mv.inverse_on(&p).unwrap()).unwrap();
        assert_eq!(back.presentation, p);
        assert_eq!(back.correspondence[3], p.word("a b A").unwrap());

        let t = trefoil();
        let q = tietze_apply(&t, &TietzeMove::AddGenerator("c".into(), t.word("a b A").unwrap()))
            .unwrap()
            .presentation;
        assert_eq!((q.rank(), q.relators.len()), (3, 2));
    }

    #[test]
    fn move_errors() {
        let p = trefoil();
        assert!(tietze_apply(&p, &TietzeMove::Invert(3)).is_err());
        assert!(tietze_apply(&p, &TietzeMove::AddGenerator("c".into(), p.word("a b").unwrap())).is_err());
        assert!(tietze_apply(&p, &TietzeMove::RemoveGenerator(0)).is_err());
        assert!(TietzeMove::parse("Ia 9", &p).is_err());
        assert!(TietzeMove::parse("Iz 1", &p).is_err());
    }

    #[test]
    fn abelianization_survives_moves() {
        let p = wirt_trefoil();
        let a0 = abelianization(&p).unwrap();
        for line in ["Ia 1", "Ib 2 a B", "Ic 1 2", "IIw d b a B", "III c a b"] {
            let mv = TietzeMove::parse(line, &p).unwrap();
            let out = tietze_apply(&p, &mv).unwrap();
            let a1 = abelianization(&out.presentation).unwrap();
            for (g, img) in out.correspondence.iter().enumerate() {
                assert_eq!(a1.weight(img), a0.values[g], "{line}");
            }
        }
    }

    #[test]
    fn wirtinger_reports() {
        assert!(validate_wirtinger(&wirt_trefoil()).pass);
        let r = validate_wirtinger(&trefoil());
        assert!(!r.pass);
        assert_eq!(r.shapes, vec![RelatorShape::Other]);
        let u = Presentation::from_strs(&["g", "h"], &["g H"]).unwrap();
        assert!(validate_wirtinger(&u).pass);
        let e = Presentation::from_strs(&["g", "h"], &["g"]).unwrap();
        assert_eq!(validate_wirtinger(&e).shapes, vec![RelatorShape::SingleGenerator]);
    }
}
