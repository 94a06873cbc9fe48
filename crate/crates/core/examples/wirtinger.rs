//! Wirtinger presentations of the catalog knots, with meridian and longitude marks.

use l2alex::diagram::{catalog, mirror_presentation, parse_pd, wirtinger};
use l2alex::words::validate_wirtinger;

fn main() -> l2alex::Result<()> {
    for (name, pd) in [
        ("trefoil", catalog::TREFOIL),
        ("figure-eight", catalog::FIGURE_EIGHT),
        ("cinquefoil", catalog::CINQUEFOIL),
        ("twisted unknot", catalog::UNKNOT_TWISTED),
    ] {
        let d = parse_pd(pd)?;
        let p = wirtinger(&d)?;
        println!("# {name}: {} crossings, writhe {}", d.crossings.len(), d.writhe());
        print!("{}", p.to_text());
        println!("wirtinger shape: {:?}\n", validate_wirtinger(&p).pass);
    }
    let tre = wirtinger(&parse_pd(catalog::TREFOIL)?)?;
    println!("# mirror trefoil\n{}", mirror_presentation(&tre)?.to_text());
    Ok(())
}
