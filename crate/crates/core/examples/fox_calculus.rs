//! Fox derivatives of the trefoil relators, then the matrix twisted at t = 2.

use l2alex::diagram::{catalog, parse_pd, wirtinger};
use l2alex::fox::{fox_derivative, fox_matrix, twist_matrix};
use l2alex::words::abelianization;

fn main() -> l2alex::Result<()> {
    let p = wirtinger(&parse_pd(catalog::TREFOIL)?)?;
    let r = &p.relators[0];
    for g in 0..p.rank() {
        println!("d({}) / d{} = {}", p.show(r), p.generators[g], fox_derivative(r, g).display(&p.generators));
    }
    let m = fox_matrix(&p);
    println!("\nFox matrix:\n{}", m.display());
    let alpha = abelianization(&p)?;
    println!("twisted by t^α at t = 2, first row deleted:\n{}", twist_matrix(&m.delete_row(1)?, &alpha, 2.0)?.display());
    Ok(())
}
