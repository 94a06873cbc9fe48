use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use super::presentation::{Mark, Presentation};
use super::word::Word;
use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// The map α: G → ℤ on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationMap {
    pub values: Vec<i64>,
}

impl AbelianizationMap {
    pub fn weight(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| l.sign() * self.values[l.gen()])
            .sum()
    }

    pub fn all_ones(rank: usize) -> AbelianizationMap {
        AbelianizationMap { values: vec![1; rank] }
    }
}

/// Integer basis of the rational kernel of `rows` (each row has `cols` entries).
pub(crate) fn integer_kernel(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| m[r][col] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != Q::from_integer(0) {
                let f = m[r][col];
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::from_integer(0); cols];
            v[f] = Q::from_integer(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f];
            }
            let den = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
            let ints: Vec<i128> = v.iter().map(|x| x.numer() * (den / x.denom())).collect();
            let g = ints.iter().fold(0i128, |acc, &x| acc.gcd(&x)).max(1);
            ints.iter().map(|&x| (x / g) as i64).collect()
        })
        .collect()
}

/// α for a knot-like presentation: the primitive integer vector spanning the kernel
/// of the exponent-sum matrix. The sign makes the marked meridian positive when a
/// meridian mark exists, and the first nonzero value positive otherwise.
pub fn abelianization(p: &Presentation) -> Result<AbelianizationMap> {
    let k = p.rank();
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|r| r.exponent_sums(k)).collect();
    let kernel = integer_kernel(&rows, k);
    if kernel.len() != 1 {
        return Err(Error::KernelRank(kernel.len()));
    }
    let mut values = kernel.into_iter().next().unwrap();
    let probe = AbelianizationMap { values: values.clone() };
    let sign = match p.mark(Mark::Meridian).map(|m| probe.weight(m)) {
        Some(w) if w != 0 => w.signum(),
        _ => values.iter().find(|&&v| v != 0).map_or(1, |v| v.signum()),
    };
    for v in values.iter_mut() {
        *v *= sign;
    }
    Ok(AbelianizationMap { values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_and_unknot() {
        let p = Presentation::from_strs(&["a", "b"], &["a b a B A B"]).unwrap();
        assert_eq!(abelianization(&p).unwrap().values, vec![1, 1]);
        let u = Presentation::from_strs(&["g", "h"], &["g H"]).unwrap();
        assert_eq!(abelianization(&u).unwrap().values, vec![1, 1]);
    }

    #[test]
    fn cable_weights() {
        // (2,3)-cable of the unknot: g, h, x, l
        let p = Presentation::from_strs(&["g", "h", "x", "l"], &["g H", "x x H H H L L", "L"])
            .unwrap();
        assert_eq!(abelianization(&p).unwrap().values, vec![2, 2, 3, 0]);
    }

    #[test]
    fn meridian_fixes_sign() {
        let p = Presentation::from_strs(&["a", "b"], &["a b a B A B"])
            .unwrap()
            .with_mark(Mark::Meridian, Word::power(0, -1));
        assert_eq!(abelianization(&p).unwrap().values, vec![-1, -1]);
    }

    #[test]
    fn rank_errors() {
        let p = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        assert_eq!(abelianization(&p), Err(Error::KernelRank(2)));
        let p = Presentation::from_strs(&["a"], &["a"]).unwrap();
        assert_eq!(abelianization(&p), Err(Error::KernelRank(0)));
    }
}
