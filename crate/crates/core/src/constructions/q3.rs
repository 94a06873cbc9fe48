use crate::diagram::{arcs_of, Diagram};
use crate::error::{Error, Result};
use crate::words::{Mark, Presentation, Word};

/// Presentation of a pattern's complement in its solid torus, read from a diagram of the
/// pattern P together with a round meridian curve M (component `meridian_component`).
///
/// Generators are the arcs of P, then `lam` (the arc of M that starts after M's first
/// under-passage) and `mu`. The other arcs of M are eliminated by the chain
/// `λ_(i+1) = a_i^(e_i) λ_i a_i^(-e_i)`, whose closing relation becomes `lam mu = mu lam` with
/// `mu = a_m^(e_m) … a_1^(e_1)`. One crossing relator is dropped: the last one between two
/// P strands, or the last with P under M when there is none.
pub fn pattern_presentation_q3(d: &Diagram, meridian_component: usize) -> Result<Presentation> {
    if d.components.len() != 2 {
        return Err(Error::Invalid(format!("pattern diagram needs 2 components, found {}", d.components.len())));
    }
    if meridian_component > 1 {
        return Err(Error::Index { index: meridian_component, len: 2 });
    }
    let in_m = |e: usize| d.component_of(e) == meridian_component;
    if d.crossings.iter().any(|c| in_m(c.under_in) && in_m(c.over_in)) {
        return Err(Error::Invalid("meridian curve crosses itself".into()));
    }
    let arc = arcs_of(d);
    let n_arcs = arc.iter().max().unwrap() + 1;
    let m_edges = &d.components[meridian_component];

    // P arcs keep their relative order; M arcs get positions after them
    let p_arcs: Vec<usize> = (0..n_arcs).filter(|&a| (0..d.edge_count()).any(|e| arc[e] == a && !in_m(e))).collect();
    let k = p_arcs.len();
    let (lam, mu) = (k, k + 1);
    let mut image: Vec<Option<Word>> = vec![None; n_arcs];
    for (i, &a) in p_arcs.iter().enumerate() {
        image[a] = Some(Word::gen(i));
    }

    // walk M from just after an under-passage, expressing every M arc through lam
    let start = m_edges
        .iter()
        .position(|&e| d.crossings.iter().any(|c| c.under_out == e))
        .unwrap_or(0);
    let lam_arc = arc[m_edges[start]];
    image[lam_arc] = Some(Word::gen(lam));
    let mut conj = Word::identity();
    for step in 0..m_edges.len() {
        let e = m_edges[(start + step) % m_edges.len()];
        let ci = d.crossings.iter().position(|c| c.under_in == e);
        if let Some(ci) = ci {
            let c = &d.crossings[ci];
            let a = image[arc[c.over_in]].clone().expect("over-arc of M belongs to P");
            conj = a.pow(c.sign as i64).mul(&conj);
            let next = arc[c.under_out];
            if next != lam_arc {
                image[next] = Some(conj.mul(&Word::gen(lam)).mul(&conj.inverse()));
            }
        }
    }
    let image: Vec<Word> = image.into_iter().map(|w| w.expect("every arc reached")).collect();

    let rel = |ci: usize| {
        let c = &d.crossings[ci];
        let (a, b, cc) = (&image[arc[c.under_in]], &image[arc[c.over_in]], &image[arc[c.under_out]]);
        let bs = b.pow(c.sign as i64);
        bs.mul(a).mul(&bs.inverse()).mul(&cc.inverse())
    };
    let pp: Vec<usize> = (0..d.crossings.len())
        .filter(|&ci| !in_m(d.crossings[ci].under_in) && !in_m(d.crossings[ci].over_in))
        .collect();
    let pm: Vec<usize> = (0..d.crossings.len())
        .filter(|&ci| !in_m(d.crossings[ci].under_in) && in_m(d.crossings[ci].over_in))
        .collect();
    let mut rels: Vec<Word> = Vec::new();
    let (keep_pp, keep_pm) = if pp.is_empty() {
        (&pp[..], &pm[..pm.len().saturating_sub(1)])
    } else {
        (&pp[..pp.len() - 1], &pm[..])
    };
    rels.extend(keep_pp.iter().map(|&ci| rel(ci)));
    rels.extend(keep_pm.iter().map(|&ci| rel(ci)));
    let (l, m) = (Word::gen(lam), Word::gen(mu));
    rels.push(l.mul(&m).mul(&l.inverse()).mul(&m.inverse()));
    rels.push(m.inverse().mul(&conj));

    let mut names: Vec<String> = (0..k).map(|i| crate::diagram::arc_name(i, k)).collect();
    names.push("lam".into());
    names.push("mu".into());
    Ok(Presentation::new(names, rels)?
        .with_mark(Mark::Meridian, Word::gen(mu))
        .with_mark(Mark::Longitude, Word::gen(lam)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{count_homs_to_symmetric, simplify};
    use crate::diagram::parse_pd;

    const WHITEHEAD: &str = "X 6 1 7 2 / X 10 7 5 8 / X 4 5 1 6 / X 2 10 3 9 / X 8 4 9 3";
    const HOPF: &str = "X 4 1 3 2 / X 2 3 1 4";

    fn round_component(d: &Diagram) -> usize {
        (0..2)
            .find(|&m| !d.crossings.iter().any(|c| d.component_of(c.under_in) == m && d.component_of(c.over_in) == m))
            .unwrap()
    }

    #[test]
    fn whitehead_matches_reference() {
        let d = parse_pd(WHITEHEAD).unwrap();
        let q = pattern_presentation_q3(&d, round_component(&d)).unwrap();
        assert_eq!(q.deficiency(), 1);
        let reference = Presentation::from_strs(&["b", "lam", "mu"], &["lam mu LAM MU", "b lam b LAM B lam mu B LAM"]).unwrap();
        let s = simplify(&q);
        assert_eq!(s.rank(), 3);
        for n in [3, 4] {
            assert_eq!(count_homs_to_symmetric(&s, n), count_homs_to_symmetric(&reference, n), "S_{n}");
        }
        // winding number of the Whitehead pattern is 0
        let mu = q.mark(Mark::Meridian).unwrap().letters()[0].gen();
        let def = q.relators.last().unwrap();
        assert_eq!(def.exponent_sums(q.rank())[..mu].iter().sum::<i64>(), 0);
    }

    #[test]
    fn whitehead_double_of_trefoil() {
        use crate::alexander::alexander_polynomial;
        use crate::constructions::satellite_presentation;
        use crate::diagram::{catalog, wirtinger};
        let d = parse_pd(WHITEHEAD).unwrap();
        let pat = pattern_presentation_q3(&d, round_component(&d)).unwrap();
        let c = wirtinger(&parse_pd(catalog::TREFOIL).unwrap()).unwrap();
        let s = satellite_presentation(&c, &pat).unwrap();
        assert_eq!(s.deficiency(), 1);
        assert!(crate::words::abelianization(&s).is_ok());
        // winding number 0 patterns have trivial Alexander polynomial
        assert_eq!(alexander_polynomial(&s).unwrap().to_string(), "1");
    }

    #[test]
    fn core_pattern() {
        let d = parse_pd(HOPF).unwrap();
        let q = pattern_presentation_q3(&d, 1).unwrap();
        assert_eq!(q.generators, vec!["a", "lam", "mu"]);
        assert_eq!(q.relators.len(), 2);
        let def = q.relators.last().unwrap();
        assert_eq!(def.exponent_sums(3)[0].abs(), 1);
        assert!(pattern_presentation_q3(&parse_pd(crate::diagram::catalog::TREFOIL).unwrap(), 0).is_err());
    }
}
