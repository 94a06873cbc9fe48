//! The L²-Alexander invariant: closed form on graph knots, numeric from a presentation.

use l2alex::diagram::{catalog, parse_pd, wirtinger};
use l2alex::fk::{FkMethod, FkOptions};
use l2alex::groupalg::{realize_wirtinger, torus_meridian, NormalFormOracle};
use l2alex::l2::{exact_value, l2_from_presentation, KnotExpr};

fn main() -> l2alex::Result<()> {
    for s in ["torus(2,3)", "torus(2,7)", "sum(torus(2,3), mirror(torus(2,3)))", "cable(2,5,torus(2,3))"] {
        let k = KnotExpr::parse(s)?;
        for t in [0.5, 2.0] {
            let v = exact_value(&k, t)?;
            println!("{s} at t = {t}: {} (exponent {})", v.value, v.exponent.unwrap_or(0));
        }
    }

    // The trefoil diagram realized inside <x,y | x² = y³>.
    let p = wirtinger(&parse_pd(catalog::TREFOIL)?)?;
    let model = realize_wirtinger(&p, NormalFormOracle::torus(2, 3)?, &torus_meridian(2, 3)?, 3)?;
    let opts = FkOptions { method: FkMethod::Quadrature, ..FkOptions::default() };
    let v = l2_from_presentation(&p, 2.0, &opts, &model)?;
    let est = v.estimate.as_ref().expect("numeric value");
    let exact = exact_value(&KnotExpr::parse("torus(2,3)")?, 2.0)?;
    let (m, residual) = v.unit_exponent_to(&exact);
    println!("\ntrefoil diagram at t = 2: {:.6} (tail {:.1e})", v.value, est.tail_proxy);
    println!("closed form {} = t^{m} times that, log residual {residual:.1e}", exact.value);
    Ok(())
}
