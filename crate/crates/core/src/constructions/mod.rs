//! Presentation-level knot operations: connected sum, torus pattern, cable, satellite.

mod q3;
mod simplify;

pub use q3::pattern_presentation_q3;
pub use simplify::{count_homs_to_symmetric, eliminate_generator, simplify};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::words::{abelianization, Mark, Presentation, RelatorShape, Word};

/// Cable or torus-pattern parameters: `p` longitudinal, `q` meridional winding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CableSpec {
    pub p: i64,
    pub q: i64,
}

impl CableSpec {
    pub fn new(p: i64, q: i64) -> Result<CableSpec> {
        if p == 0 || p.gcd(&q) != 1 {
            return Err(Error::Invalid(format!("cable parameters need p ≠ 0 and gcd(p, q) = 1, got ({p},{q})")));
        }
        Ok(CableSpec { p, q })
    }
}

/// `others` with every name clashing with `taken` given a numeric suffix.
fn fresh_names(taken: &[String], others: &[String]) -> Vec<String> {
    let mut used: Vec<String> = taken.to_vec();
    let mut out = Vec::new();
    for n in others {
        let mut name = n.clone();
        let mut k = 2;
        while used.contains(&name) {
            name = format!("{n}_{k}");
            k += 1;
        }
        used.push(name.clone());
        out.push(name);
    }
    out
}

fn shifted(w: &Word, by: usize) -> Word {
    let images: Vec<Word> = (0..=w.max_gen().unwrap_or(0)).map(|g| Word::gen(g + by)).collect();
    w.substitute(&images)
}

fn meridian_gen(p: &Presentation) -> Result<usize> {
    match p.mark(Mark::Meridian) {
        None => Ok(0),
        Some(w) if w.len() == 1 && !w.letters()[0].is_inverse() => Ok(w.letters()[0].gen()),
        Some(_) => Err(Error::Invalid("meridian mark must be a single generator".into())),
    }
}

/// Connected sum of two Wirtinger presentations: generators of `p1` then `p2` (renamed
/// on clashes, same order), relators of both, and `x y⁻¹` joining the two meridians.
/// The longitude mark is the product of the two longitudes.
pub fn sum_presentation(p1: &Presentation, p2: &Presentation) -> Result<Presentation> {
    if !p1.wirtinger || !p2.wirtinger {
        return Err(Error::Invalid("connected sum needs Wirtinger presentations".into()));
    }
    let k = p1.rank();
    let mut names = p1.generators.clone();
    names.extend(fresh_names(&p1.generators, &p2.generators));
    let mut rels = p1.relators.clone();
    rels.extend(p2.relators.iter().map(|r| shifted(r, k)));
    let (x, y) = (meridian_gen(p1)?, meridian_gen(p2)? + k);
    rels.push(Word::gen(x).mul(&Word::gen(y).inverse()));
    let mut s = Presentation::new(names, rels)?;
    s.wirtinger = true;
    s = s.with_mark(Mark::Meridian, Word::gen(x));
    if let (Some(l1), Some(l2)) = (p1.mark(Mark::Longitude), p2.mark(Mark::Longitude)) {
        s = s.with_mark(Mark::Longitude, l1.mul(&shifted(l2, k)));
    }
    Ok(s)
}

/// ⟨x, y, l | x^p y^-q l^-p, l y l⁻¹ y⁻¹⟩: the complement of the (p,q) torus knot in a solid
/// torus with meridian y and longitude l. Marks core x, meridian y, longitude l.
pub fn torus_pattern_presentation(spec: CableSpec) -> Presentation {
    let CableSpec { p, q } = spec;
    let (x, y, l) = (0, 1, 2);
    let r1 = Word::power(x, p).mul(&Word::power(y, -q)).mul(&Word::power(l, -p));
    let r2 = Word::gen(l).mul(&Word::gen(y)).mul(&Word::power(l, -1)).mul(&Word::power(y, -1));
    Presentation::new(vec!["x".into(), "y".into(), "l".into()], vec![r1, r2])
        .expect("fixed names")
        .with_mark(Mark::Core, Word::gen(x))
        .with_mark(Mark::Meridian, Word::gen(y))
        .with_mark(Mark::Longitude, Word::gen(l))
}

/// Cable presentation ⟨a.., x, l | r.., x^p a_k^-q l^-p, l⁻¹ W⟩ with `a_k` the companion
/// meridian and `W` its longitude word.
///
/// Marks: core x, meridian `x^u a_k^v` with `q u + p v = 1`, longitude `x^p · meridian^(-pq)`.
pub fn cable_presentation(pc: &Presentation, spec: CableSpec, w: &Word) -> Result<Presentation> {
    let CableSpec { p, q } = CableSpec::new(spec.p, spec.q)?;
    let alpha = abelianization(pc)?;
    if alpha.weight(w) != 0 {
        return Err(Error::Invalid(format!("longitude word has α-weight {}, expected 0", alpha.weight(w))));
    }
    if w.max_gen().is_some_and(|g| g >= pc.rank()) {
        return Err(Error::Invalid("longitude word uses an unknown generator".into()));
    }
    let k = pc.rank();
    let ak = meridian_gen(pc)?;
    let (x, l) = (k, k + 1);
    let mut names = pc.generators.clone();
    names.extend(fresh_names(&pc.generators, &["x".to_string(), "l".to_string()]));
    let mut rels = pc.relators.clone();
    rels.push(Word::power(x, p).mul(&Word::power(ak, -q)).mul(&Word::power(l, -p)));
    rels.push(Word::power(l, -1).mul(w));
    let mut s = Presentation::new(names, rels)?;
    let e = q.extended_gcd(&p);
    let (u, v) = (e.x * e.gcd, e.y * e.gcd);
    let mu = Word::power(x, u).mul(&Word::power(ak, v));
    let lam = Word::power(x, p).mul(&mu.pow(-p * q));
    s = s.with_mark(Mark::Core, Word::gen(x)).with_mark(Mark::Meridian, mu).with_mark(Mark::Longitude, lam);
    Ok(s)
}

fn is_commutator_of(r: &Word, a: usize, b: usize) -> bool {
    let l = r.letters();
    l.len() == 4
        && l.iter().all(|x| x.gen() == a || x.gen() == b)
        && l[0] == l[2].inverse()
        && l[1] == l[3].inverse()
        && l[0].gen() != l[1].gen()
}

/// Satellite assembly: companion relators, pattern relators with the pattern meridian
/// replaced by the companion meridian `a_k`, and `l⁻¹ W`. The pattern's meridian-longitude
/// commutator is dropped; it follows from `l = W`, which commutes with `a_k`.
pub fn satellite_presentation(pc: &Presentation, pat: &Presentation) -> Result<Presentation> {
    let w = pc
        .mark(Mark::Longitude)
        .ok_or_else(|| Error::Invalid("companion has no longitude mark".into()))?
        .clone();
    let single = |m: Mark| -> Result<usize> {
        match pat.mark(m) {
            Some(x) if x.len() == 1 && !x.letters()[0].is_inverse() => Ok(x.letters()[0].gen()),
            Some(_) => Err(Error::Invalid(format!("pattern {} mark is not a generator", m.name()))),
            None => Err(Error::Invalid(format!("pattern has no {} mark", m.name()))),
        }
    };
    let (mu, lam) = (single(Mark::Meridian)?, single(Mark::Longitude)?);
    let k = pc.rank();
    let ak = meridian_gen(pc)?;
    // pattern generator g (≠ μ) goes to position k + rank of g among the kept ones
    let kept: Vec<usize> = (0..pat.rank()).filter(|&g| g != mu).collect();
    let mut images = vec![Word::identity(); pat.rank()];
    for (i, &g) in kept.iter().enumerate() {
        images[g] = Word::gen(k + i);
    }
    images[mu] = Word::gen(ak);
    let kept_names: Vec<String> = kept.iter().map(|&g| pat.generators[g].clone()).collect();
    let mut names = pc.generators.clone();
    names.extend(fresh_names(&pc.generators, &kept_names));
    let mut rels = pc.relators.clone();
    let mut dropped = false;
    for r in &pat.relators {
        if !dropped && is_commutator_of(r, mu, lam) {
            dropped = true;
            continue;
        }
        rels.push(r.substitute(&images));
    }
    rels.push(images[lam].inverse().mul(&w));
    let mut s = Presentation::new(names, rels)?;
    if let Some(c) = pat.mark(Mark::Core) {
        s = s.with_mark(Mark::Core, c.substitute(&images));
    }
    Ok(s)
}

/// Per-relator shapes of a presentation, for reports.
pub fn shapes(p: &Presentation) -> Vec<RelatorShape> {
    crate::words::validate_wirtinger(p).shapes
}
