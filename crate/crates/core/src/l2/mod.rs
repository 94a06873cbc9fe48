//! The L²-Alexander invariant: exact values on graph knots and numeric values from
//! presentations through the determinant estimators.

mod expr;

pub use expr::{detect_unknot, exact_exponent, simplify_trivial, KnotExpr};

use serde::Serialize;

use crate::alexander::minor_row;
use crate::error::{Error, Result};
use crate::fk::{fk_det, property_i_probe, FkEstimate, FkOptions, ProbeReport, ProbeVerdict};
use crate::fox::{fox_matrix, twist_matrix};
use crate::groupalg::{GroupModel, GroupRingMatrix};
use crate::words::{abelianization, Presentation};

/// A value of Δ^(2)(t). The invariant is only defined up to t^ℤ, so comparisons go
/// through [`L2Value::unit_exponent_to`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct L2Value {
    pub t: f64,
    pub value: f64,
    pub log_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<FkEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeReport>,
    pub normalized: bool,
    pub warnings: Vec<String>,
}

impl L2Value {
    /// Nearest m with `other ≈ t^m · self`, and the log-residual left after removing it.
    pub fn unit_exponent_to(&self, other: &L2Value) -> (i64, f64) {
        let d = other.log_value - self.log_value;
        let lt = self.t.ln();
        if lt.abs() < 1e-12 {
            return (0, d);
        }
        let m = (d / lt).round();
        (m as i64, d - m * lt)
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::Invalid(format!("t must be a positive real, got {t}")));
    }
    Ok(())
}

/// `max(1,t)^(n_K)`.
pub fn exact_value(k: &KnotExpr, t: f64) -> Result<L2Value> {
    check_t(t)?;
    let n = exact_exponent(k)?;
    let log_value = n as f64 * t.max(1.0).ln();
    Ok(L2Value {
        t,
        value: t.max(1.0).powf(n as f64),
        log_value,
        exponent: Some(n),
        estimate: None,
        probe: None,
        normalized: true,
        warnings: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitLaw {
    pub law: String,
    /// Δ of the transformed knot at 1/t.
    pub lhs: f64,
    /// Δ of K at t.
    pub rhs: f64,
    /// m with rhs = t^m · lhs.
    pub unit_exponent: i64,
    pub holds: bool,
}

/// Checks `Δ_{K*}(t⁻¹) ~ Δ_K(t)` and `Δ_{−K}(t⁻¹) ~ Δ_K(t)` in the unit class.
pub fn mirror_inverse_laws(k: &KnotExpr, t: f64) -> Result<Vec<UnitLaw>> {
    check_t(t)?;
    let rhs = exact_value(k, t)?;
    [("mirror", KnotExpr::mirror(k.clone())), ("inverse", KnotExpr::inverse(k.clone()))]
        .into_iter()
        .map(|(law, kk)| {
            let lhs = exact_value(&kk, 1.0 / t)?;
            let (m, resid) = lhs.clone().with_t(t).unit_exponent_to(&rhs);
            Ok(UnitLaw { law: law.into(), lhs: lhs.value, rhs: rhs.value, unit_exponent: m, holds: resid.abs() < 1e-9 })
        })
        .collect()
}

impl L2Value {
    fn with_t(mut self, t: f64) -> L2Value {
        self.t = t;
        self
    }
}

/// Depths used by the Property-I probe attached to numeric values.
pub const PROBE_DEPTHS: [usize; 3] = [8, 16, 32];

/// The twisted deficiency-one Fox minor ψ_t(F_{P,i}) in the model's group ring, with the
/// deleted row i and |α(g_i)|.
pub fn twisted_minor(p: &Presentation, t: f64, model: &GroupModel) -> Result<(GroupRingMatrix, usize, u64)> {
    check_t(t)?;
    if p.deficiency() != 1 {
        return Err(Error::Invalid(format!("need a deficiency-one presentation, got deficiency {}", p.deficiency())));
    }
    let alpha = abelianization(p)?;
    if !model.respects(p) {
        return Err(Error::Oracle("group model does not satisfy the relators".into()));
    }
    let row = minor_row(&alpha)?;
    let f = fox_matrix(p).delete_row(row + 1)?;
    let twisted = twist_matrix(&f, &alpha, t)?;
    Ok((model.map_matrix(&twisted), row, alpha.values[row].unsigned_abs()))
}

/// Numeric Δ^(2)_P(t): determinant of the twisted minor divided by
/// `max(1,t)^(|α(g_i)|−1)`, with a Property-I probe attached.
pub fn l2_from_presentation(p: &Presentation, t: f64, opts: &FkOptions, model: &GroupModel) -> Result<L2Value> {
    let (a, _, weight) = twisted_minor(p, t, model)?;
    let est = fk_det(&a, opts)?;
    let probe = property_i_probe(&a, &PROBE_DEPTHS)?;
    let log_value = est.log_value - (weight.saturating_sub(1)) as f64 * t.max(1.0).ln();
    let mut warnings = Vec::new();
    if est.partial_oracle {
        warnings.push("partial oracle: rewriting system is not confluent; normal forms may not be unique".to_string());
    }
    if !model.faithful {
        warnings.push(format!("group model {} is not known to be faithful; value is for a quotient", model.oracle.label()));
    }
    if est.kernel_suspected || probe.verdict == ProbeVerdict::KernelSuspected {
        warnings.push("kernel suspected: Property I may fail, value follows the det(0) = 1 convention".to_string());
    }
    if let Some(c) = &est.caveat {
        warnings.push(c.clone());
    }
    Ok(L2Value {
        t,
        value: log_value.exp(),
        log_value,
        exponent: None,
        estimate: Some(est),
        probe: Some(probe),
        normalized: true,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cable_presentation, CableSpec};
    use crate::fk::FkMethod;
    use crate::groupalg::{abelian_model, NormalFormOracle};
    use crate::words::Word;

    fn trefoil_two_gen() -> (Presentation, GroupModel) {
        let p = Presentation::from_strs(&["a", "b"], &["a b a B A B"]).unwrap();
        let o = NormalFormOracle::torus(2, 3).unwrap();
        let img = |s: &str| crate::words::parse_word(s, &o.alphabet).unwrap();
        let m = GroupModel::new(o.clone(), vec![img("Y x"), img("X y y")], true);
        (p, m)
    }

    #[test]
    fn exact_examples() {
        let v = exact_value(&KnotExpr::parse("torus(2,3)").unwrap(), 2.0).unwrap();
        assert_eq!((v.value, v.exponent), (4.0, Some(2)));
        assert_eq!(exact_value(&KnotExpr::Unknot, 7.5).unwrap().value, 1.0);
        assert_eq!(exact_value(&KnotExpr::parse("cable(2,3,torus(2,5))").unwrap(), 1.0).unwrap().value, 1.0);
        assert!(exact_value(&KnotExpr::Unknot, 0.0).is_err());
    }

    #[test]
    fn unit_laws() {
        let laws = mirror_inverse_laws(&KnotExpr::parse("torus(2,3)").unwrap(), 2.0).unwrap();
        assert!(laws.iter().all(|l| l.holds && l.unit_exponent == 2 && l.lhs == 1.0 && l.rhs == 4.0));
        let laws = mirror_inverse_laws(&KnotExpr::parse("sum(torus(2,3),torus(2,5))").unwrap(), 3.0).unwrap();
        assert!(laws.iter().all(|l| l.holds && l.unit_exponent == 6));
        let laws = mirror_inverse_laws(&KnotExpr::Unknot, 3.0).unwrap();
        assert!(laws.iter().all(|l| l.holds && l.unit_exponent == 0));
    }

    #[test]
    fn unknot_is_exactly_one() {
        let p = Presentation::from_strs(&["g", "h"], &["g H"]).unwrap();
        let m = abelian_model(&p).unwrap();
        for method in [FkMethod::Series, FkMethod::Quadrature, FkMethod::Ball] {
            for t in [0.3, 1.0, 2.0] {
                let opts = FkOptions { method, radius: 8, ..FkOptions::default() };
                let v = l2_from_presentation(&p, t, &opts, &m).unwrap();
                assert_eq!(v.value, 1.0, "{method:?} t={t}");
            }
        }
    }

    #[test]
    fn trefoil_numeric() {
        let (p, m) = trefoil_two_gen();
        assert!(m.respects(&p));
        let v = l2_from_presentation(&p, 2.0, &FkOptions::default(), &m).unwrap();
        assert!((v.value - 4.0).abs() / 4.0 < 0.15, "{v:?}");
    }

    #[test]
    fn cable_of_unknot_numeric() {
        let u = Presentation::from_strs(&["g", "h"], &["g H"]).unwrap().with_mark(crate::words::Mark::Meridian, Word::gen(0));
        let c = cable_presentation(&u, CableSpec::new(2, 3).unwrap(), &Word::identity()).unwrap();
        let o = NormalFormOracle::torus(2, 3).unwrap();
        let (x, y) = (Word::gen(0), Word::gen(1));
        let images: Vec<Word> = c
            .generators
            .iter()
            .map(|g| match g.as_str() {
                "x" => x.clone(),
                "l" => Word::identity(),
                _ => y.clone(),
            })
            .collect();
        let m = GroupModel::new(o, images, true);
        assert!(m.respects(&c), "{}", c.to_text());
        let v = l2_from_presentation(&c, 2.0, &FkOptions::default(), &m).unwrap();
        assert!((v.value - 4.0).abs() / 4.0 < 0.15, "{v:?}");
    }
}
