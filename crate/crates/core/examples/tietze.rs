//! Random Tietze moves on the figure-eight group leave the Alexander polynomial fixed.

use l2alex::alexander::alexander_polynomial;
use l2alex::diagram::{catalog, parse_pd, wirtinger};
use l2alex::words::{random_move, tietze_apply};
use rand::SeedableRng;

fn main() -> l2alex::Result<()> {
    let mut p = wirtinger(&parse_pd(catalog::FIGURE_EIGHT)?)?;
    let before = alexander_polynomial(&p)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for i in 0..30 {
        let mv = random_move(&p, &mut rng, 60);
        p = tietze_apply(&p, &mv)?.presentation;
        if i % 10 == 9 {
            println!("after {:>2} moves: {} generators, {} relators, Δ = {}", i + 1, p.rank(), p.relators.len(), alexander_polynomial(&p)?);
        }
    }
    let after = alexander_polynomial(&p)?;
    println!("unit between before and after: {:?}", before.unit_between(&after));
    Ok(())
}
