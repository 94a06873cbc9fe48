//! The `l2alex` command line: argument parsing, file input, text and JSON reports.

mod matrix;

pub use matrix::{parse_element, parse_matrix_file};

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::alexander::{alexander_polynomial, mahler_measure};
use crate::constructions::{cable_presentation, sum_presentation, torus_pattern_presentation, CableSpec};
use crate::diagram::{parse_pd, wirtinger_with};
use crate::error::{Error, Result};
use crate::fk::{fk_det, FkMethod, FkOptions, DEFAULT_CUTOFF, DEFAULT_DEPTH, DEFAULT_ORDER, DEFAULT_RADIUS};
use crate::fox::{fox_matrix, twist_matrix};
use crate::groupalg::{
    abelian_model, kb_complete, realize_wirtinger, torus_meridian, GroupModel, KbBudget, NormalFormOracle, ShortlexOrder,
};
use crate::l2::{detect_unknot, exact_exponent, exact_value, l2_from_presentation, simplify_trivial, KnotExpr};
use crate::words::{abelianization, parse_word, random_move, tietze_apply, Mark, Presentation, TietzeMove};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "l2alex", version, about = "Knot groups, Fox calculus, Alexander polynomials and L²-Alexander invariants")]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Wirtinger presentation of a PD code.
    Wirtinger {
        file: PathBuf,
        #[arg(long)]
        keep_all_relators: bool,
    },
    /// Fox matrix of a presentation.
    Fox {
        file: PathBuf,
        /// Delete this generator row (1-based).
        #[arg(long)]
        delete_row: Option<usize>,
        /// Twist coefficients by t^α.
        #[arg(long)]
        twist: Option<f64>,
    },
    /// Normalized Alexander polynomial of a PD code or presentation.
    Alexander { file: PathBuf },
    /// Knuth-Bendix completion under a weighted shortlex order.
    Kb {
        file: PathBuf,
        #[arg(long, default_value_t = 500)]
        max_rules: usize,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        /// Comma-separated weights for g1, G1, g2, G2, ...
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
    },
    /// Fuglede-Kadison determinant of a group-ring matrix file.
    Fk {
        file: PathBuf,
        #[arg(long, default_value = "series")]
        method: FkMethod,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: f64,
    },
    /// Build sum, cable and torus-pattern presentations.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// L²-Alexander invariant, exactly for graph knots or numerically from a presentation.
    L2 {
        #[command(subcommand)]
        what: L2Cmd,
    },
    /// Decide whether a graph-knot expression is the unknot.
    DetectUnknot { expr: String },
    /// Apply Tietze moves and compare Alexander polynomials.
    Tietze {
        file: PathBuf,
        /// Script of moves, one per line (`Ia 1`, `Ib 1 a`, `Ic 1 2`, `IIw c a b A`, `IIw- c`, `III b a`).
        script: Option<PathBuf>,
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    Sum { a: PathBuf, b: PathBuf },
    Cable {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        file: PathBuf,
        /// Companion longitude word; defaults to the file's longitude mark.
        #[arg(long)]
        longitude: Option<String>,
    },
    TorusPattern {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
}

#[derive(Subcommand, Debug)]
enum L2Cmd {
    Exact {
        expr: String,
        #[arg(long)]
        t: f64,
    },
    Approx {
        file: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value = "quadrature")]
        method: FkMethod,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: f64,
        /// `kb`, `abelian` or `torus:P:Q`.
        #[arg(long, default_value = "kb")]
        model: String,
        /// Comma-separated images of the generators for a torus model.
        #[arg(long)]
        images: Option<String>,
    },
}

/// Everything one invocation produced. Wall time is kept out of the JSON so that equal
/// inputs give byte-identical files.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub outputs: Value,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub wall_time_ms: f64,
    #[serde(skip)]
    json_path: Option<PathBuf>,
}

impl RunReport {
    /// JSON with every float rounded to 15 significant digits.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        round_floats(&mut v);
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x: f64 = format!("{:.14e}", n.as_f64().unwrap()).parse().unwrap();
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Reads input files and remembers their contents for the digest.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.hasher.update(path.to_string_lossy().as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    fn presentation(&mut self, path: &Path) -> Result<Presentation> {
        Presentation::parse(&self.read(path)?)
    }
}

fn fmt_value(x: f64) -> String {
    if x.is_finite() && x == x.round() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.6}")
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch(argv: &[String]) -> Result<RunReport> {
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Parse(e.to_string()))?;
    let start = Instant::now();
    let mut inputs = Inputs { hasher: Sha256::new() };
    for a in argv.iter().skip(1) {
        inputs.hasher.update(a.as_bytes());
        inputs.hasher.update([0]);
    }
    let mut warnings = Vec::new();
    let (text, outputs) = run(cli.cmd, &mut inputs, &mut warnings)?;
    Ok(RunReport {
        schema: SCHEMA,
        command: argv.iter().skip(1).cloned().collect(),
        inputs_digest: hex::encode(inputs.hasher.finalize()),
        outputs,
        warnings,
        text,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        json_path: cli.json,
    })
}

fn run(cmd: Cmd, inputs: &mut Inputs, warnings: &mut Vec<String>) -> Result<(String, Value)> {
    match cmd {
        Cmd::Wirtinger { file, keep_all_relators } => {
            let d = parse_pd(&inputs.read(&file)?)?;
            let p = wirtinger_with(&d, keep_all_relators)?;
            let text = p.to_text();
            Ok((text.clone(), json!({ "presentation": text, "generators": p.rank(), "relators": p.relators.len(), "writhe": d.writhe() })))
        }
        Cmd::Fox { file, delete_row, twist } => {
            let p = inputs.presentation(&file)?;
            let mut m = fox_matrix(&p);
            if let Some(i) = delete_row {
                m = m.delete_row(i)?;
            }
            let text = match twist {
                Some(t) => twist_matrix(&m, &abelianization(&p)?, t)?.display(),
                None => m.display(),
            };
            let entries: Vec<&str> = text.lines().collect();
            Ok((text.clone(), json!({ "rows": m.row_labels, "cols": m.col_labels, "entries": entries })))
        }
        Cmd::Alexander { file } => {
            let src = inputs.read(&file)?;
            let p = if src.contains("gens:") { Presentation::parse(&src)? } else { crate::diagram::wirtinger(&parse_pd(&src)?)? };
            let d = alexander_polynomial(&p)?;
            let mm = mahler_measure(&d)?;
            Ok((format!("{d}\n"), json!({ "polynomial": d.to_string(), "coefficients": d.coeffs(), "mahler_measure": mm })))
        }
        Cmd::Kb { file, max_rules, max_len, weights } => {
            let p = inputs.presentation(&file)?;
            let order = if weights.is_empty() {
                ShortlexOrder::standard(p.rank())
            } else {
                if weights.len() != 2 * p.rank() {
                    return Err(Error::Invalid(format!("need {} weights, got {}", 2 * p.rank(), weights.len())));
                }
                ShortlexOrder::new(&(0..2 * p.rank()).collect::<Vec<_>>(), &weights)
            };
            match kb_complete(&p, order, KbBudget { max_rules, max_len }) {
                Ok(rs) => {
                    let rules = rs.display_rules(&p.generators);
                    let text = format!("confluent: {} rules\n{}\n", rules.len(), rules.join("\n"));
                    Ok((text, json!({ "confluent": true, "rules": rules })))
                }
                Err(f) => Err(Error::Oracle(format!(
                    "completion failed ({}); partial system has {} rules",
                    f.reason,
                    f.partial.rules.len()
                ))),
            }
        }
        Cmd::Fk { file, method, order, radius, cutoff } => {
            let a = parse_matrix_file(&inputs.read(&file)?)?;
            let opts = FkOptions {
                method,
                order: order.unwrap_or(if method == FkMethod::Series { DEFAULT_ORDER } else { DEFAULT_DEPTH }),
                radius: radius.unwrap_or(DEFAULT_RADIUS),
                cutoff,
            };
            let est = fk_det(&a, &opts)?;
            if est.partial_oracle {
                warnings.push("partial oracle: estimate computed with a non-confluent rewriting system".into());
            }
            if est.kernel_suspected {
                warnings.push("kernel suspected".into());
            }
            if let Some(c) = &est.caveat {
                warnings.push(c.clone());
            }
            let mut text = format!("value: {:.10}\nlog_value: {:.10}\nmethod: {}\ntail_proxy: {:.3e}\n", est.value, est.log_value, method_name(est.method), est.tail_proxy);
            if let Some(s) = est.sigma_min {
                text.push_str(&format!("sigma_min: {s:.6e}\n"));
            }
            Ok((text, serde_json::to_value(&est).expect("estimate serializes")))
        }
        Cmd::Construct { what } => {
            let p = match what {
                Construct::Sum { a, b } => {
                    let (pa, pb) = (inputs.presentation(&a)?, inputs.presentation(&b)?);
                    sum_presentation(&pa, &pb)?
                }
                Construct::Cable { p, q, file, longitude } => {
                    let pc = inputs.presentation(&file)?;
                    let w = match longitude {
                        Some(s) => pc.word(&s)?,
                        None => pc
                            .mark(Mark::Longitude)
                            .cloned()
                            .ok_or_else(|| Error::Invalid("companion has no longitude mark; pass --longitude".into()))?,
                    };
                    cable_presentation(&pc, CableSpec::new(p, q)?, &w)?
                }
                Construct::TorusPattern { p, q } => torus_pattern_presentation(CableSpec::new(p, q)?),
            };
            let text = p.to_text();
            Ok((text.clone(), json!({ "presentation": text, "deficiency": p.deficiency() })))
        }
        Cmd::L2 { what: L2Cmd::Exact { expr, t } } => {
            let k = KnotExpr::parse(&expr)?;
            let v = exact_value(&k, t)?;
            let n = v.exponent.unwrap_or(0);
            let text = format!("value: {}\nexponent: {n}\n", fmt_value(v.value));
            Ok((text, json!({ "input": expr, "t": t, "exponent": n, "value": v.value, "method": "exact", "diagnostics": {} })))
        }
        Cmd::L2 { what: L2Cmd::Approx { file, t, method, order, radius, cutoff, model, images } } => {
            let p = inputs.presentation(&file)?;
            let m = build_model(&p, &model, images.as_deref())?;
            let opts = FkOptions {
                method,
                order: order.unwrap_or(if method == FkMethod::Series { DEFAULT_ORDER } else { DEFAULT_DEPTH }),
                radius: radius.unwrap_or(DEFAULT_RADIUS),
                cutoff,
            };
            let v = l2_from_presentation(&p, t, &opts, &m)?;
            warnings.extend(v.warnings.iter().cloned());
            let est = v.estimate.as_ref().expect("numeric path has an estimate");
            let text = format!(
                "value: {:.10}\nmethod: {}\ntail_proxy: {:.3e}\nproperty_i: {}\n",
                v.value,
                method_name(est.method),
                est.tail_proxy,
                v.probe.as_ref().map_or("-".to_string(), |r| serde_json::to_value(r.verdict).unwrap().as_str().unwrap().to_string())
            );
            let diagnostics = json!({ "estimate": est, "probe": v.probe, "oracle": m.oracle.label(), "normalized": v.normalized });
            Ok((text, json!({ "input": file.to_string_lossy(), "t": t, "value": v.value, "method": method_name(est.method), "diagnostics": diagnostics })))
        }
        Cmd::DetectUnknot { expr } => {
            let k = KnotExpr::parse(&expr)?;
            let unknot = detect_unknot(&k);
            let normal = simplify_trivial(&k);
            let text = format!("{unknot}\n");
            let exponent = exact_exponent(&k).ok();
            Ok((text, json!({ "input": expr, "unknot": unknot, "exponent": exponent, "normal_form": normal.to_string() })))
        }
        Cmd::Tietze { file, script, random, seed } => {
            let p = inputs.presentation(&file)?;
            let before = alexander_polynomial(&p)?;
            let mut q = p.clone();
            let mut applied: Vec<String> = Vec::new();
            match (script, random) {
                (Some(s), None) => {
                    for line in inputs.read(&s)?.lines() {
                        let line = line.split('#').next().unwrap().trim();
                        if line.is_empty() {
                            continue;
                        }
                        let mv = TietzeMove::parse(line, &q)?;
                        q = tietze_apply(&q, &mv)?.presentation;
                        applied.push(line.to_string());
                    }
                }
                (None, Some(n)) => {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    for _ in 0..n {
                        let mv = random_move(&q, &mut rng, 80);
                        applied.push(format!("{mv:?}"));
                        q = tietze_apply(&q, &mv)?.presentation;
                    }
                }
                _ => return Err(Error::Invalid("give either a script file or --random n".into())),
            }
            let after = alexander_polynomial(&q)?;
            let unit = before.unit_between(&after);
            let text = format!(
                "{}before: {before}\nafter: {after}\ninvariant: {}\n",
                q.to_text(),
                if unit.is_some() { "yes" } else { "no" }
            );
            Ok((text, json!({
                "moves": applied,
                "presentation": q.to_text(),
                "before": before.to_string(),
                "after": after.to_string(),
                "unit": unit.map(|(s, m)| json!({ "sign": s, "exponent": m })),
            })))
        }
    }
}

fn method_name(m: FkMethod) -> &'static str {
    match m {
        FkMethod::Series => "series",
        FkMethod::Ball => "ball",
        FkMethod::Quadrature => "quadrature",
    }
}

fn build_model(p: &Presentation, spec: &str, images: Option<&str>) -> Result<GroupModel> {
    if spec == "abelian" {
        return abelian_model(p);
    }
    if spec == "kb" {
        let rs = kb_complete(p, ShortlexOrder::standard(p.rank()), KbBudget::default()).map_err(|f| {
            Error::Oracle(format!(
                "Knuth-Bendix did not complete ({}); for graph knots use `l2alex l2 exact`, or pass --model torus:P:Q",
                f.reason
            ))
        })?;
        return Ok(GroupModel::direct(NormalFormOracle::rewriting(rs, p.generators.clone())));
    }
    if let Some(pq) = spec.strip_prefix("torus:") {
        let nums: Vec<i64> = pq.split(':').map(|s| s.parse().map_err(|_| Error::Parse(format!("bad model `{spec}`")))).collect::<Result<_>>()?;
        let [a, b] = nums[..] else {
            return Err(Error::Parse(format!("model `{spec}` should be torus:P:Q")));
        };
        let o = NormalFormOracle::torus(a, b)?;
        return match images {
            Some(list) => {
                let imgs = list.split(',').map(|w| parse_word(w.trim(), &o.alphabet)).collect::<Result<Vec<_>>>()?;
                if imgs.len() != p.rank() {
                    return Err(Error::Invalid(format!("{} images for {} generators", imgs.len(), p.rank())));
                }
                let m = GroupModel::new(o, imgs, true);
                if !m.respects(p) {
                    return Err(Error::Oracle("images do not satisfy the relators".into()));
                }
                Ok(m)
            }
            None => realize_wirtinger(p, o, &torus_meridian(a, b)?, 3),
        };
    }
    Err(Error::Parse(format!("unknown model `{spec}` (kb, abelian, torus:P:Q)")))
}

/// Runs `argv`, printing text to stdout and errors to stderr; returns the exit code.
pub fn main_with(argv: &[String]) -> i32 {
    match Cli::try_parse_from(argv) {
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
        Ok(_) => {}
    }
    match dispatch(argv) {
        Ok(report) => {
            print!("{}", report.text);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if let Some(path) = &report.json_path {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
