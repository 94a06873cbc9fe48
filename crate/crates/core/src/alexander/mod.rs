//! Classical Alexander polynomial from a presentation, and Mahler measure.

mod laurent;

pub use laurent::LaurentPolynomial;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fox::{fox_matrix, FreeRingElement};
use crate::words::{abelianization, AbelianizationMap, Presentation};

/// Image of a free-ring element under `g ↦ t^α(g)`.
pub fn abelianize(x: &FreeRingElement<i64>, alpha: &AbelianizationMap) -> Result<LaurentPolynomial> {
    let mut p = LaurentPolynomial::zero();
    for (w, &c) in x.terms() {
        p = p.add(&LaurentPolynomial::monomial(c, alpha.weight(w)))?;
    }
    Ok(p)
}

/// The abelianized Fox matrix, `entries[i][j]` the image of ∂r_j/∂g_i.
#[derive(Clone, Debug, PartialEq)]
pub struct AlexanderMatrix {
    pub row_labels: Vec<String>,
    pub entries: Vec<Vec<LaurentPolynomial>>,
    pub alpha: AbelianizationMap,
}

pub fn alexander_matrix(p: &Presentation) -> Result<AlexanderMatrix> {
    let alpha = abelianization(p)?;
    let f = fox_matrix(p);
    let entries = f
        .entries
        .iter()
        .map(|row| row.iter().map(|e| abelianize(e, &alpha)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(AlexanderMatrix { row_labels: p.generators.clone(), entries, alpha })
}

/// Row deleted for the deficiency-one minor: the first generator, or the first with
/// nonzero α when the first has α = 0 (that minor would vanish). Counted from 0.
pub fn minor_row(alpha: &AbelianizationMap) -> Result<usize> {
    alpha
        .values
        .iter()
        .position(|&v| v != 0)
        .ok_or_else(|| Error::Invalid("abelianization is zero on every generator".into()))
}

/// Determinant by fraction-free (Bareiss) elimination. Entries are first shifted row by
/// row into ℤ[t], so the result is correct up to a power of t.
pub fn determinant(m: &[Vec<LaurentPolynomial>]) -> Result<LaurentPolynomial> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut a: Vec<Vec<LaurentPolynomial>> = m
        .iter()
        .map(|row| {
            let low = row.iter().filter(|e| !e.is_zero()).map(|e| e.low()).min().unwrap_or(0);
            row.iter().map(|e| e.shift(-low)).collect()
        })
        .collect();
    let mut prev = LaurentPolynomial::one();
    let mut negate = false;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(LaurentPolynomial::zero());
        };
        if piv != k {
            a.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = v
                    .exact_div(&prev)
                    .ok_or_else(|| Error::Resource("inexact Bareiss division".into()))?;
            }
            a[i][k] = LaurentPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Normalized Alexander polynomial of a deficiency-one knot-like presentation.
///
/// The minor deleting row i equals Δ·(t^α(g_i) − 1)/(t − 1) up to a unit, which is divided
/// out exactly.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPolynomial> {
    let m = alexander_matrix(p)?;
    let i = minor_row(&m.alpha)?;
    let mut rows = m.entries.clone();
    rows.remove(i);
    if rows.len() != p.relators.len() {
        return Err(Error::Invalid(format!(
            "minor is {}×{}, not square (deficiency {})",
            rows.len(),
            p.relators.len(),
            p.deficiency()
        )));
    }
    let d = determinant(&rows)?;
    if d.is_zero() {
        return Err(Error::Invalid("Alexander minor has zero determinant; the presentation is defective".into()));
    }
    let a = m.alpha.values[i].unsigned_abs() as usize;
    let g = LaurentPolynomial::geometric(a);
    let q = d
        .exact_div(&g)
        .ok_or_else(|| Error::Invalid(format!("minor not divisible by (t^{a} - 1)/(t - 1)")))?;
    Ok(q.normalized())
}

/// |lead| · Π max(1, |root|), roots from companion-matrix eigenvalues polished by Newton.
pub fn mahler_measure(f: &LaurentPolynomial) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::Invalid("Mahler measure of the zero polynomial".into()));
    }
    let c = f.coeffs();
    let lead = *c.last().unwrap() as f64;
    Ok(lead.abs() * roots(c).iter().map(|r| r.norm().max(1.0)).product::<f64>())
}

/// Complex roots of `Σ c_i t^i` (c_last ≠ 0).
pub fn roots(c: &[i64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n] as f64;
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -(c[i] as f64) / lead;
    }
    let eig = comp.complex_eigenvalues();
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            d = d * z + v;
            v = v * z + a as f64;
        }
        (v, d)
    };
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..20 {
                let (v, d) = eval(z);
                if v.norm() < 1e-12 || d.norm() == 0.0 {
                    break;
                }
                let step = v / d;
                z -= step;
                if step.norm() < 1e-15 * z.norm().max(1.0) {
                    break;
                }
            }
            z
        })
        .collect()
}
