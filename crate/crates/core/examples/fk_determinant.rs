//! Fuglede-Kadison determinants by the three estimators.
//!
//! On ℤ, det(1 - t·g) = max(1, t); on the trefoil group the twisted Alexander minor
//! at t = 2 has determinant 4.

use std::sync::Arc;

use l2alex::cli::parse_element;
use l2alex::fk::{fk_det, FkMethod, FkOptions};
use l2alex::groupalg::{GroupRingMatrix, NormalFormOracle};

fn main() -> l2alex::Result<()> {
    let z = Arc::new(NormalFormOracle::free_abelian(vec!["g".into()]));
    for t in [0.5, 2.0] {
        let a = GroupRingMatrix::single(parse_element(&format!("1 - {t} g"), &z)?);
        for (method, radius) in [(FkMethod::Series, 0), (FkMethod::Ball, 512), (FkMethod::Quadrature, 0)] {
            let est = fk_det(&a, &FkOptions { method, radius, ..FkOptions::default() })?;
            println!("1 - {t}g  {method:?}: {:.8} (tail {:.1e})", est.value, est.tail_proxy);
        }
    }
    let tre = Arc::new(NormalFormOracle::torus(2, 3)?);
    let a = GroupRingMatrix::single(parse_element("-1 - 4 X y x + 2 X X y y x", &tre)?);
    let est = fk_det(&a, &FkOptions { method: FkMethod::Quadrature, ..FkOptions::default() })?;
    println!("trefoil minor at t = 2, quadrature: {:.6} (tail {:.1e})", est.value, est.tail_proxy);
    Ok(())
}
