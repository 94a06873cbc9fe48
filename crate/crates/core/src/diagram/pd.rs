use crate::error::{Error, Result};

/// A crossing in planar-diagram form. `labels` are the four edge labels counterclockwise
/// from the incoming under-strand; the remaining fields are edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub labels: [usize; 4],
    pub sign: i8,
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
}

/// An oriented link diagram given by a PD code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    /// Edge index -> original label.
    pub edge_labels: Vec<usize>,
    /// Edges of each component in traversal order, starting at the smallest label.
    pub components: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn edge_count(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn component_of(&self, edge: usize) -> usize {
        self.components.iter().position(|c| c.contains(&edge)).unwrap()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Crossing index and whether the edge ends there passing under.
    pub(crate) fn end_of(&self, edge: usize) -> (usize, bool) {
        for (i, c) in self.crossings.iter().enumerate() {
            if c.under_in == edge {
                return (i, true);
            }
            if c.over_in == edge {
                return (i, false);
            }
        }
        unreachable!("every edge ends somewhere")
    }

    pub fn to_pd_text(&self) -> String {
        self.crossings
            .iter()
            .map(|c| format!("X {} {} {} {}", c.labels[0], c.labels[1], c.labels[2], c.labels[3]))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Connected sum of two knot diagrams, spliced at the last edge of each.
    pub fn connected_sum(&self, other: &Diagram) -> Result<Diagram> {
        if self.components.len() != 1 || other.components.len() != 1 {
            return Err(Error::Invalid("connected sum needs two knot diagrams".into()));
        }
        let n1 = self.edge_count();
        let n2 = other.edge_count();
        // relabel edges consecutively along each knot
        let order1 = &self.components[0];
        let order2 = &other.components[0];
        let mut new1 = vec![0; n1];
        for (pos, &e) in order1.iter().enumerate() {
            new1[e] = pos + 1;
        }
        let mut new2 = vec![0; n2];
        for (pos, &e) in order2.iter().enumerate() {
            new2[e] = n1 + pos + 1;
        }
        let last1 = *order1.last().unwrap();
        let last2 = *order2.last().unwrap();
        let mut text = String::new();
        for (d, relabel, last, swap_to) in [(self, &new1, last1, n1 + n2), (other, &new2, last2, n1)] {
            let (end_crossing, _) = d.end_of(last);
            for (ci, c) in d.crossings.iter().enumerate() {
                let idx = |e: usize| relabel[e];
                let mut slots = slot_edges(c).map(idx);
                if ci == end_crossing {
                    // the incoming occurrence of the spliced edge now comes from the other knot
                    let incoming = if c.under_in == last { 0 } else { over_in_slot(c) };
                    slots[incoming] = swap_to;
                }
                text.push_str(&format!("X {} {} {} {}\n", slots[0], slots[1], slots[2], slots[3]));
            }
        }
        parse_pd(&text)
    }
}

fn slot_edges(c: &Crossing) -> [usize; 4] {
    let (j, l) = if over_in_slot(c) == 3 { (c.over_out, c.over_in) } else { (c.over_in, c.over_out) };
    [c.under_in, j, c.under_out, l]
}

fn over_in_slot(c: &Crossing) -> usize {
    if c.sign > 0 {
        3
    } else {
        1
    }
}

/// Parse `X a b c d` tuples separated by newlines or `/`; `#` starts a comment.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let mut tuples: Vec<[usize; 4]> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap();
        for chunk in line.split('/') {
            let toks: Vec<&str> = chunk
                .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
                .filter(|t| !t.is_empty())
                .collect();
            if toks.is_empty() {
                continue;
            }
            if toks[0] != "X" || toks.len() != 5 {
                return Err(Error::Parse(format!("expected `X a b c d`, got `{}`", chunk.trim())));
            }
            let mut t = [0usize; 4];
            for (slot, tok) in t.iter_mut().zip(&toks[1..]) {
                *slot = tok
                    .parse()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad arc label `{tok}`")))?;
            }
            tuples.push(t);
        }
    }
    if tuples.is_empty() {
        return Err(Error::Parse("empty PD code".into()));
    }
    from_tuples(&tuples)
}

pub(crate) fn from_tuples(tuples: &[[usize; 4]]) -> Result<Diagram> {
    let mut labels: Vec<usize> = tuples.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let index = |l: usize| labels.binary_search(&l).unwrap();
    let n = labels.len();
    let mut count = vec![0; n];
    for t in tuples {
        for &l in t {
            count[index(l)] += 1;
        }
    }
    if let Some(bad) = (0..n).find(|&e| count[e] != 2) {
        return Err(Error::Parse(format!(
            "arc {} appears {} time(s), expected 2",
            labels[bad], count[bad]
        )));
    }
    let t: Vec<[usize; 4]> = tuples.iter().map(|t| t.map(index)).collect();

    // direction of every (crossing, slot): Some(true) incoming
    let mut dir: Vec<[Option<bool>; 4]> = t.iter().map(|_| [Some(true), None, Some(false), None]).collect();
    let occurrences = |e: usize| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (ci, tup) in t.iter().enumerate() {
            for s in 0..4 {
                if tup[s] == e {
                    v.push((ci, s));
                }
            }
        }
        v
    };
    let occ: Vec<Vec<(usize, usize)>> = (0..n).map(occurrences).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for e in 0..n {
            let [(c0, s0), (c1, s1)] = [occ[e][0], occ[e][1]];
            match (dir[c0][s0], dir[c1][s1]) {
                (Some(d), None) => {
                    dir[c1][s1] = Some(!d);
                    changed = true;
                }
                (None, Some(d)) => {
                    dir[c0][s0] = Some(!d);
                    changed = true;
                }
                (Some(a), Some(b)) if a == b => {
                    return Err(Error::Parse(format!("arc {} has inconsistent orientation", labels[e])));
                }
                _ => {}
            }
        }
        for d in dir.iter_mut() {
            for (s, o) in [(1, 3), (3, 1)] {
                if let (Some(x), None) = (d[s], d[o]) {
                    d[o] = Some(!x);
                    changed = true;
                }
            }
        }
        if !changed {
            // a strand that never passes under: orient by label order
            if let Some(ci) = dir.iter().position(|d| d[1].is_none()) {
                let (j, l) = (labels[t[ci][1]], labels[t[ci][3]]);
                dir[ci][3] = Some(l + 1 == j || (l > j + 1));
                dir[ci][1] = Some(!dir[ci][3].unwrap());
                changed = true;
            }
        }
    }

    let mut crossings = Vec::new();
    for (ci, tup) in t.iter().enumerate() {
        let l_in = dir[ci][3].unwrap();
        let (over_in, over_out) = if l_in { (tup[3], tup[1]) } else { (tup[1], tup[3]) };
        crossings.push(Crossing {
            labels: tuples[ci],
            sign: if l_in { 1 } else { -1 },
            under_in: tup[0],
            under_out: tup[2],
            over_in,
            over_out,
        });
    }
    let mut next = vec![usize::MAX; n];
    for c in &crossings {
        next[c.under_in] = c.under_out;
        next[c.over_in] = c.over_out;
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            comp.push(e);
            e = next[e];
        }
        if e != start {
            return Err(Error::Parse("edges do not close into loops".into()));
        }
        components.push(comp);
    }
    Ok(Diagram { crossings, edge_labels: labels, components })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL: &str = "X 1 4 2 5 / X 3 6 4 1 / X 5 2 6 3";

    #[test]
    fn trefoil_counts() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossings.len(), 3);
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0], vec![0, 1, 2, 3, 4, 5]);
        assert!(d.crossings.iter().all(|c| c.sign == -1) || d.crossings.iter().all(|c| c.sign == 1));
    }

    #[test]
    fn one_crossing_unknot() {
        let d = parse_pd("X 1 2 2 1").unwrap();
        assert_eq!((d.crossings.len(), d.edge_count()), (1, 2));
    }

    #[test]
    fn bad_codes() {
        assert!(parse_pd("X 1 4 2 5 / X 3 6 4 1 / X 5 2 6 7").is_err());
        assert!(parse_pd("").is_err());
        assert!(parse_pd("X 1 2 a 3").is_err());
        assert!(parse_pd("# nothing\n").is_err());
    }

    #[test]
    fn sum_of_trefoils() {
        let d = parse_pd(TREFOIL).unwrap();
        let g = d.connected_sum(&d).unwrap();
        assert_eq!(g.crossings.len(), 6);
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.writhe(), 2 * d.writhe());
    }
}
