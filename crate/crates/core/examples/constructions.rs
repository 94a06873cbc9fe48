//! Connected sums, cables and torus patterns, checked through their Alexander polynomials.

use l2alex::alexander::alexander_polynomial;
use l2alex::constructions::{cable_presentation, sum_presentation, torus_pattern_presentation, CableSpec};
use l2alex::diagram::{catalog, parse_pd, wirtinger};
use l2alex::words::Mark;

fn main() -> l2alex::Result<()> {
    let tre = wirtinger(&parse_pd(catalog::TREFOIL)?)?;
    let fig = wirtinger(&parse_pd(catalog::FIGURE_EIGHT)?)?;
    let sum = sum_presentation(&tre, &fig)?;
    println!("trefoil # figure-eight: Δ = {}", alexander_polynomial(&sum)?);

    let spec = CableSpec::new(2, 3)?;
    let pattern = torus_pattern_presentation(spec);
    println!("\ntorus pattern (2,3):\n{}", pattern.to_text());

    let lon = tre.mark(Mark::Longitude).expect("wirtinger marks a longitude").clone();
    let cable = cable_presentation(&tre, spec, &lon)?;
    println!("(2,3)-cable of the trefoil, deficiency {}:", cable.deficiency());
    // Δ_cable(t) = Δ_T(2,3)(t) · Δ_trefoil(t²)
    println!("Δ = {}", alexander_polynomial(&cable)?);
    Ok(())
}
