//! Unknot detection on graph-knot expressions: the exponent vanishes exactly on the unknot.

use l2alex::l2::{detect_unknot, exact_exponent, simplify_trivial, KnotExpr};

fn main() -> l2alex::Result<()> {
    for s in [
        "unknot",
        "torus(2,1)",
        "cable(-1,3,unknot)",
        "sum(unknot, torus(1,-4))",
        "cable(3,1,torus(2,3))",
        "mirror(inverse(torus(3,4)))",
    ] {
        let k = KnotExpr::parse(s)?;
        println!(
            "{s:>30}: unknot {:<5} exponent {} normal form {}",
            detect_unknot(&k),
            exact_exponent(&k)?,
            simplify_trivial(&k)
        );
    }
    Ok(())
}
