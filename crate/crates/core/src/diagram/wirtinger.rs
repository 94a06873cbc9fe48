use super::pd::Diagram;
use crate::error::{Error, Result};
use crate::words::{validate_wirtinger, Mark, Presentation, Word};

/// Wirtinger arc (generator) of every edge. Arcs are numbered by their smallest edge label.
pub fn arcs_of(d: &Diagram) -> Vec<usize> {
    let n = d.edge_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for c in &d.crossings {
        let (a, b) = (find(&mut parent, c.over_in), find(&mut parent, c.over_out));
        parent[a] = b;
    }
    let roots: Vec<usize> = (0..n).map(|e| find(&mut parent, e)).collect();
    let mut firsts: Vec<usize> = Vec::new();
    for e in 0..n {
        if !firsts.iter().any(|&f| roots[f] == roots[e]) {
            firsts.push(e);
        }
    }
    roots
        .iter()
        .map(|r| firsts.iter().position(|&f| roots[f] == *r).unwrap())
        .collect()
}

pub(crate) fn arc_name(i: usize, total: usize) -> String {
    if total <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// The crossing relator: `b a b⁻¹ c⁻¹` at a positive crossing, `b⁻¹ a b c⁻¹` at a
/// negative one. When the over-arc coincides with an under-arc the relator is
/// conjugated down to `a c⁻¹`.
pub(crate) fn crossing_relator(sign: i8, a: usize, b: usize, c: usize) -> Word {
    if b == a || b == c {
        return Word::gen(a).mul(&Word::gen(c).inverse());
    }
    let bs = Word::power(b, sign as i64);
    bs.mul(&Word::gen(a)).mul(&bs.inverse()).mul(&Word::gen(c).inverse())
}

/// All crossing relators, one per crossing, in crossing order.
pub fn crossing_relators(d: &Diagram) -> Vec<Word> {
    let arc = arcs_of(d);
    d.crossings
        .iter()
        .map(|c| crossing_relator(c.sign, arc[c.under_in], arc[c.over_in], arc[c.under_out]))
        .collect()
}

/// Wirtinger presentation of a knot diagram; the last crossing relator is dropped unless
/// `keep_all`. Marks the meridian (generator 1) and the preferred longitude.
pub fn wirtinger_with(d: &Diagram, keep_all: bool) -> Result<Presentation> {
    if d.components.len() != 1 {
        return Err(Error::Invalid(format!(
            "Wirtinger builder needs a connected knot diagram, found {} components",
            d.components.len()
        )));
    }
    let arc = arcs_of(d);
    let k = arc.iter().max().unwrap() + 1;
    let mut relators = crossing_relators(d);
    if !keep_all {
        relators.pop();
    }
    let names = (0..k).map(|i| arc_name(i, k)).collect();
    let mut p = Presentation::new(names, relators)?;
    p.wirtinger = keep_all || validate_wirtinger(&p).pass;
    p = p
        .with_mark(Mark::Meridian, Word::gen(arc[d.components[0][0]]))
        .with_mark(Mark::Longitude, longitude_word(d));
    Ok(p)
}

pub fn wirtinger(d: &Diagram) -> Result<Presentation> {
    wirtinger_with(d, false)
}

/// Preferred longitude as a word in the Wirtinger generators, based at the start of the
/// arc carrying the first edge: the over-arcs met while passing under, read along the
/// knot, times meridian^(-writhe).
pub fn longitude_word(d: &Diagram) -> Word {
    let arc = arcs_of(d);
    let comp = &d.components[0];
    let start = comp[0];
    let m = arc[start];
    // begin right after the under-crossing that starts arc m
    let begin = comp
        .iter()
        .position(|&e| arc[e] == m && d.crossings.iter().any(|c| c.under_out == e))
        .unwrap_or(0);
    let mut w = Word::identity();
    let mut writhe = 0;
    for step in 0..comp.len() {
        let e = comp[(begin + step) % comp.len()];
        let (ci, under) = d.end_of(e);
        if under {
            let c = &d.crossings[ci];
            w = w.mul(&Word::power(arc[c.over_in], -(c.sign as i64)));
            writhe += c.sign as i64;
        }
    }
    w.mul(&Word::power(m, writhe))
}

/// Mirror image. Generator `a` becomes `a_m` (the suffix is removed again on a second
/// mirror) with the same relator words; the new generators are the images of the old
/// meridians, which are inverse meridians of the mirror, so the meridian mark is inverted
/// and the abelianization sends every generator to -1.
pub fn mirror_presentation(p: &Presentation) -> Result<Presentation> {
    if !p.wirtinger {
        return Err(Error::Invalid("mirror needs a Wirtinger presentation".into()));
    }
    let names: Vec<String> = p
        .generators
        .iter()
        .map(|g| match g.strip_suffix("_m") {
            Some(base) => base.to_string(),
            None => format!("{g}_m"),
        })
        .collect();
    let mut q = Presentation::new(names, p.relators.clone())?;
    q.wirtinger = true;
    q.marks = p.marks.clone();
    let meridian = p.mark(Mark::Meridian).cloned().unwrap_or_else(|| Word::gen(0));
    q.marks.insert(Mark::Meridian, meridian.inverse());
    Ok(q)
}
