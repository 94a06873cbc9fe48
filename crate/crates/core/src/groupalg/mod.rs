//! Word-problem oracles, Knuth-Bendix completion and group-ring arithmetic.

mod amalgam;
mod oracle;
mod rewriting;
mod ring;

pub use oracle::{NormalFormOracle, OracleKind};
pub use rewriting::{kb_complete, KbBudget, KbFailure, RewritingSystem, ShortlexOrder};
pub use ring::{GroupModel, GroupRingElement, GroupRingMatrix};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::words::{abelianization, Presentation, Word};

pub fn ball(o: &NormalFormOracle, radius: usize) -> Vec<Word> {
    o.ball(radius)
}

/// Completes `p`; the failure carries a partial system whose model reports itself partial.
pub fn kb_model(p: &Presentation, order: ShortlexOrder, budget: KbBudget) -> std::result::Result<GroupModel, KbFailure> {
    let rs = kb_complete(p, order, budget)?;
    Ok(GroupModel::direct(NormalFormOracle::rewriting(rs, p.generators.clone())))
}

/// The abelianization ℤ = ⟨t⟩, with `g ↦ t^α(g)`.
pub fn abelian_model(p: &Presentation) -> Result<GroupModel> {
    let a = abelianization(p)?;
    let images = a.values.iter().map(|&v| Word::power(0, v)).collect();
    Ok(GroupModel::new(NormalFormOracle::free_abelian(vec!["t".into()]), images, false))
}

/// H₁(G) modulo torsion as ℤ^r = ⟨t1..tr⟩, for any first Betti number. Coarser than the
/// group, so residuals computed here are abelianized checks only.
pub fn free_abelian_model(p: &Presentation) -> GroupModel {
    let k = p.rank();
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|r| r.exponent_sums(k)).collect();
    let basis = crate::words::integer_kernel(&rows, k);
    let names = (1..=basis.len()).map(|i| format!("t{i}")).collect();
    let images = (0..k)
        .map(|g| basis.iter().enumerate().fold(Word::identity(), |w, (j, v)| w.mul(&Word::power(j, v[g]))))
        .collect();
    GroupModel::new(NormalFormOracle::free_abelian(names), images, false)
}

/// A meridian of T(p,q) in ⟨x, y | x^p = y^q⟩: `x^u y^-v` with `q·u − p·v = 1`.
pub fn torus_meridian(p: i64, q: i64) -> Result<Word> {
    let e = num_integer::Integer::extended_gcd(&q, &p);
    if e.gcd.abs() != 1 {
        return Err(Error::Invalid(format!("({p},{q}) are not coprime")));
    }
    // q·x + p·y = ±1
    let (u, v) = (e.x * e.gcd, -e.y * e.gcd);
    Ok(Word::power(0, u).mul(&Word::power(1, -v)))
}

/// Searches for a homomorphism from a presentation whose generators are all meridians
/// (Wirtinger-like) into `oracle`: the meridian mark goes to `meridian`, a relator
/// with a single unknown letter determines it, and otherwise an unknown generator is
/// tried against the conjugates `w·meridian·w⁻¹` for `w` in the ball of `radius`.
///
/// The result must have nonabelian image and its image must contain every oracle
/// generator (found by a short product search), so it is onto. Faithfulness then
/// rests on the caller knowing the knot type (knot groups are Hopfian).
pub fn realize_wirtinger(p: &Presentation, oracle: NormalFormOracle, meridian: &Word, radius: usize) -> Result<GroupModel> {
    // A mirrored presentation marks an inverse generator; that generator then goes to
    // the inverse meridian.
    let (m0, meridian) = match p.mark(crate::words::Mark::Meridian) {
        Some(w) if w.len() == 1 && w.letters()[0].is_inverse() => (w.letters()[0].gen(), meridian.inverse()),
        Some(w) if w.len() == 1 => (w.letters()[0].gen(), meridian.clone()),
        Some(_) => return Err(Error::Invalid("meridian mark must be a generator or its inverse".into())),
        None => (0, meridian.clone()),
    };
    let meridian = &meridian;
    let mut candidates: BTreeSet<Word> = BTreeSet::new();
    for w in oracle.ball(radius) {
        candidates.insert(oracle.normal_form(&w.mul(meridian).mul(&w.inverse())));
    }
    let candidates: Vec<Word> = candidates.into_iter().collect();
    let found = search_collect(p, &oracle, &candidates, m0, meridian, 200_000)
        .ok_or_else(|| Error::Oracle("no realization found within the search radius".into()))?;
    Ok(GroupModel::new(oracle, found, true))
}

fn propagate(p: &Presentation, o: &NormalFormOracle, images: &mut [Option<Word>]) -> bool {
    loop {
        let mut progress = false;
        for r in &p.relators {
            let unknown: Vec<usize> = r
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, l)| images[l.gen()].is_none())
                .map(|(i, _)| i)
                .collect();
            let known = |w: &[crate::words::Letter], images: &[Option<Word>]| {
                w.iter().fold(Word::identity(), |acc, l| {
                    let g = images[l.gen()].clone().unwrap();
                    acc.mul(&if l.is_inverse() { g.inverse() } else { g })
                })
            };
            match unknown.len() {
                0 => {
                    if !o.is_identity(&known(r.letters(), images)) {
                        return false;
                    }
                }
                1 => {
                    let i = unknown[0];
                    let l = r.letters()[i];
                    let u = known(&r.letters()[..i], images);
                    let v = known(&r.letters()[i + 1..], images);
                    // u · g^±1 · v = 1
                    let mut g = u.inverse().mul(&v.inverse());
                    if l.is_inverse() {
                        g = g.inverse();
                    }
                    images[l.gen()] = Some(o.normal_form(&g));
                    progress = true;
                }
                _ => {}
            }
        }
        if !progress {
            return true;
        }
    }
}

fn search_inner(
    p: &Presentation,
    o: &NormalFormOracle,
    cands: &[Word],
    images: &mut Vec<Option<Word>>,
    budget: &mut usize,
) -> Option<Vec<Word>> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if !propagate(p, o, images) {
        return None;
    }
    match images.iter().position(|x| x.is_none()) {
        None => {
            let found: Vec<Word> = images.iter().map(|x| x.clone().unwrap()).collect();
            (nonabelian(o, &found) && onto(o, &found)).then_some(found)
        }
        Some(g) => {
            for c in cands {
                let mut next = images.clone();
                next[g] = Some(c.clone());
                if let Some(f) = search_inner(p, o, cands, &mut next, budget) {
                    return Some(f);
                }
            }
            None
        }
    }
}

fn search_collect(p: &Presentation, o: &NormalFormOracle, cands: &[Word], m0: usize, meridian: &Word, budget: usize) -> Option<Vec<Word>> {
    let mut images: Vec<Option<Word>> = vec![None; p.rank()];
    images[m0] = Some(o.normal_form(meridian));
    let mut b = budget;
    search_inner(p, o, cands, &mut images, &mut b)
}

fn nonabelian(o: &NormalFormOracle, images: &[Word]) -> bool {
    images.iter().any(|a| images.iter().any(|b| !o.is_identity(&a.mul(b).mul(&a.inverse()).mul(&b.inverse()))))
}

/// Every oracle generator is a short product of images or their inverses (length at most
/// nine, or until 50 000 elements have been seen). In ⟨x,y | x² = y^q⟩ the generator x is
/// a product of q meridians.
fn onto(o: &NormalFormOracle, images: &[Word]) -> bool {
    let mut gens: Vec<Word> = images.to_vec();
    gens.extend(images.iter().map(|w| w.inverse()));
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(Word::identity());
    let mut frontier = vec![Word::identity()];
    let mut targets: BTreeSet<Word> = (0..o.rank()).map(|g| o.normal_form(&Word::gen(g))).collect();
    for _ in 0..9 {
        if seen.len() > 50_000 {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let v = o.normal_form(&w.mul(g));
                if seen.insert(v.clone()) {
                    targets.remove(&v);
                    next.push(v);
                }
            }
        }
        if targets.is_empty() {
            return true;
        }
        frontier = next;
    }
    targets.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{catalog, parse_pd, wirtinger};

    #[test]
    fn free_abelian_rank_two() {
        let p = crate::constructions::torus_pattern_presentation(crate::constructions::CableSpec::new(2, 3).unwrap());
        let m = free_abelian_model(&p);
        assert_eq!(m.oracle.rank(), 2);
        assert!(m.respects(&p));
        let t = Presentation::from_strs(&["a", "b"], &["a b a B A B"]).unwrap();
        assert!(free_abelian_model(&t).respects(&t));
    }

    #[test]
    fn torus_meridian_weight() {
        for (p, q) in [(2, 3), (3, 4), (2, 5), (2, -1), (-3, 2)] {
            let m = torus_meridian(p, q).unwrap();
            // α(x) = q, α(y) = p
            let s = m.exponent_sums(2);
            assert_eq!(s[0] * q + s[1] * p, 1, "{p} {q}");
        }
    }

    #[test]
    fn kb_on_torus_relator() {
        let p = Presentation::from_strs(&["x", "y"], &["x x Y Y Y"]).unwrap();
        assert!(kb_model(&p, ShortlexOrder::standard(2), KbBudget::default()).is_err());
        // x heavier than X, Y much heavier than y
        let order = ShortlexOrder::new(&[0, 1, 2, 3], &[2, 1, 1, 5]);
        let m = kb_model(&p, order, KbBudget::default()).unwrap();
        assert!(!m.is_partial());
        assert!(m.respects(&p));
        let xx = p.word("x x").unwrap();
        let yyy = p.word("y y y").unwrap();
        assert_eq!(m.map_word(&xx), m.map_word(&yyy));
    }

    #[test]
    fn mirror_and_cinquefoil_realizations() {
        let tre = wirtinger(&parse_pd(catalog::TREFOIL).unwrap()).unwrap();
        let mirror = crate::diagram::mirror_presentation(&tre).unwrap();
        let cinq = wirtinger(&parse_pd(catalog::CINQUEFOIL).unwrap()).unwrap();
        for (p, a, b) in [(&mirror, 2, 3), (&cinq, 2, 5)] {
            let found = [b, -b].iter().find_map(|&b| {
                realize_wirtinger(p, NormalFormOracle::torus(a, b).unwrap(), &torus_meridian(a, b).unwrap(), 3).ok()
            });
            assert!(found.expect("realization").respects(p));
        }
    }

    #[test]
    fn trefoil_realization() {
        let p = wirtinger(&parse_pd(catalog::TREFOIL).unwrap()).unwrap();
        let o = NormalFormOracle::torus(2, 3).unwrap();
        let mer = torus_meridian(2, 3).unwrap();
        let m = realize_wirtinger(&p, o, &mer, 3).unwrap();
        assert!(m.respects(&p));
        let full = crate::diagram::wirtinger_with(&parse_pd(catalog::TREFOIL).unwrap(), true).unwrap();
        assert!(m.respects(&full));
        // the longitude commutes with the meridian and is z^±1 μ^∓6, z = x²
        let mu = m.map_word(p.mark(crate::words::Mark::Meridian).unwrap());
        let lam = m.map_word(p.mark(crate::words::Mark::Longitude).unwrap());
        let o = &m.oracle;
        assert!(o.is_identity(&lam.mul(&mu).mul(&lam.inverse()).mul(&mu.inverse())));
        let z = Word::power(0, 2);
        let ok = [1, -1].iter().any(|&s| o.is_identity(&lam.inverse().mul(&z.pow(s)).mul(&mu.pow(-6 * s))));
        assert!(ok, "{}", lam.display(&o.alphabet));
    }

    #[test]
    fn abelian_model_kills_relators() {
        let p = wirtinger(&parse_pd(catalog::FIGURE_EIGHT).unwrap()).unwrap();
        let m = abelian_model(&p).unwrap();
        assert!(m.respects(&p));
        assert!(!m.faithful);
    }
}
