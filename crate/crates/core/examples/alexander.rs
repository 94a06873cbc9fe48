//! Alexander polynomials and their Mahler measures, from diagrams and presentations.

use l2alex::alexander::{alexander_polynomial, mahler_measure};
use l2alex::constructions::sum_presentation;
use l2alex::diagram::{catalog, parse_pd, wirtinger};
use l2alex::words::Presentation;

fn main() -> l2alex::Result<()> {
    let w = |pd: &str| wirtinger(&parse_pd(pd)?);
    let tre = w(catalog::TREFOIL)?;
    let cases: Vec<(&str, Presentation)> = vec![
        ("unknot", w(catalog::UNKNOT_TWISTED)?),
        ("trefoil", tre.clone()),
        ("figure-eight", w(catalog::FIGURE_EIGHT)?),
        ("cinquefoil", w(catalog::CINQUEFOIL)?),
        ("granny", sum_presentation(&tre, &tre)?),
        ("<a,b | aba = bab>", Presentation::from_strs(&["a", "b"], &["a b a B A B"])?),
    ];
    for (name, p) in cases {
        let d = alexander_polynomial(&p)?;
        println!("{name:>20}: {d:<28} M = {:.6}", mahler_measure(&d)?);
    }
    Ok(())
}
