//! Fox calculus over the integral free-group ring.

mod ring;

pub use ring::{Coeff, FreeRingElement};

use crate::error::{Error, Result};
use crate::groupalg::GroupModel;
use crate::words::{AbelianizationMap, Presentation, Word};

/// ∂w/∂g.
pub fn fox_derivative(w: &Word, g: usize) -> FreeRingElement<i64> {
    let mut out = FreeRingElement::zero();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        let next = prefix.mul(&Word::letter(l));
        if l.gen() == g {
            if l.is_inverse() {
                out.add_term(-1, next.clone());
            } else {
                out.add_term(1, prefix.clone());
            }
        }
        prefix = next;
    }
    out
}

/// Rows are generators, columns relators: `entries[i][j] = ∂r_j/∂g_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoxMatrix<C: Coeff = i64> {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<FreeRingElement<C>>>,
    /// Generator names, for printing entries.
    pub alphabet: Vec<String>,
}

impl<C: Coeff> FoxMatrix<C> {
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &FreeRingElement<C> {
        &self.entries[i][j]
    }

    /// Delete row `i`, counted from 1.
    pub fn delete_row(&self, i: usize) -> Result<FoxMatrix<C>> {
        if i == 0 || i > self.rows() {
            return Err(Error::Index { index: i, len: self.rows() });
        }
        let mut m = self.clone();
        m.row_labels.remove(i - 1);
        m.entries.remove(i - 1);
        Ok(m)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&FreeRingElement<C>) -> FreeRingElement<D>) -> FoxMatrix<D> {
        FoxMatrix {
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
            alphabet: self.alphabet.clone(),
        }
    }

    pub fn display(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                s.push_str(&format!(
                    "d({})/d{} = {}\n",
                    self.col_labels[j],
                    self.row_labels[i],
                    e.display(&self.alphabet)
                ));
            }
        }
        s
    }
}

pub fn fox_matrix(p: &Presentation) -> FoxMatrix<i64> {
    FoxMatrix {
        row_labels: p.generators.clone(),
        col_labels: (1..=p.relators.len()).map(|j| format!("r{j}")).collect(),
        entries: (0..p.rank())
            .map(|i| p.relators.iter().map(|r| fox_derivative(r, i)).collect())
            .collect(),
        alphabet: p.generators.clone(),
    }
}

/// ψ_t: c·[w] ↦ c·t^α(w)·[w].
pub fn twist<C: Coeff>(x: &FreeRingElement<C>, alpha: &AbelianizationMap, t: f64) -> Result<FreeRingElement<f64>> {
    check_t(t)?;
    Ok(x.map_coeffs(|w, c| c.to_complex().re * t.powi(alpha.weight(w) as i32)))
}

pub fn twist_matrix(m: &FoxMatrix<i64>, alpha: &AbelianizationMap, t: f64) -> Result<FoxMatrix<f64>> {
    check_t(t)?;
    Ok(m.map(|e| e.map_coeffs(|w, c| *c as f64 * t.powi(alpha.weight(w) as i32))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualCheck {
    /// Reduced by a faithful exact oracle.
    Exact,
    /// Reduced by an uncertified rewriting system.
    Partial,
    /// Image in the abelianization only; zero there is necessary, not sufficient.
    Abelianized,
}

#[derive(Clone, Debug)]
pub struct Residual {
    pub relator: usize,
    /// Σ_i (∂r/∂g_i)(g_i − 1), pushed into the model.
    pub value: FreeRingElement<i64>,
    pub check: ResidualCheck,
}

/// The fundamental formula Σ_i (∂r/∂g_i)(g_i − 1) = r − 1, evaluated in `model` for every
/// relator r. Each residual should vanish.
pub fn fundamental_formula_residual(p: &Presentation, model: &GroupModel) -> Vec<Residual> {
    let check = if !model.faithful {
        ResidualCheck::Abelianized
    } else if model.is_partial() {
        ResidualCheck::Partial
    } else {
        ResidualCheck::Exact
    };
    p.relators
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let mut sum = FreeRingElement::<i64>::zero();
            for i in 0..p.rank() {
                let g = FreeRingElement::from_terms([(1, Word::gen(i)), (-1, Word::identity())]);
                sum = sum.add(&fox_derivative(r, i).mul(&g));
            }
            let value = FreeRingElement::from_terms(sum.terms().map(|(w, c)| (*c, model.map_word(w))));
            Residual { relator: j, value, check }
        })
        .collect()
}

pub(crate) fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Invalid(format!("t must be a positive real, got {t}")))
    }
}
