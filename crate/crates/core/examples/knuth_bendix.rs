//! Knuth-Bendix completion: the trefoil group <x,y | x² = y³> needs a weighted order.

use l2alex::groupalg::{kb_complete, KbBudget, NormalFormOracle, ShortlexOrder};
use l2alex::words::Presentation;

fn main() -> l2alex::Result<()> {
    let p = Presentation::from_strs(&["x", "y"], &["x x Y Y Y"])?;
    match kb_complete(&p, ShortlexOrder::standard(2), KbBudget::default()) {
        Ok(_) => println!("plain shortlex completed"),
        Err(f) => println!("plain shortlex: {} ({} rules so far)", f.reason, f.partial.rules.len()),
    }
    let order = ShortlexOrder::new(&[0, 1, 2, 3], &[2, 1, 1, 5]);
    let rs = kb_complete(&p, order, KbBudget::default()).expect("weighted order completes");
    println!("weights x,X,y,Y = 2,1,1,5:");
    for r in rs.display_rules(&p.generators) {
        println!("  {r}");
    }
    let o = NormalFormOracle::rewriting(rs, p.generators.clone());
    for w in ["y y y X X", "x y x y x y", "X y x Y"] {
        let nf = o.normal_form(&p.word(w)?);
        println!("{w:>14} -> {}", p.show(&nf));
    }
    Ok(())
}
