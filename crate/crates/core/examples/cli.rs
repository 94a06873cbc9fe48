//! Driving the command line in-process and reading back the JSON report.

use l2alex::cli::dispatch;

fn main() -> l2alex::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let runs: Vec<Vec<String>> = vec![
        vec!["alexander".into(), format!("{data}/trefoil.pd")],
        vec!["l2".into(), "exact".into(), "torus(2,7)".into(), "--t".into(), "2".into()],
        vec!["fk".into(), format!("{data}/shift.mat")],
        vec!["detect-unknot".into(), "cable(-1,3,unknot)".into()],
    ];
    for mut args in runs {
        args.insert(0, "l2alex".into());
        let report = dispatch(&args)?;
        println!("$ {}\n{}", args.join(" "), report.text);
        println!("{}", report.to_json());
    }
    Ok(())
}
