//! Matrix files for `l2alex fk`:
//!
//! ```text
//! oracle: free-abelian g        # or: free a b | torus 2 3 | kb (with gens:/rels: lines)
//! row: 1 - 2 g ; 0
//! row: 0 ; 1 + 0.5 g g
//! ```
//!
//! Entries are sums of terms `[coefficient] [word]`; a coefficient ending in `i` is
//! imaginary, a missing one is 1, and an empty word is the identity.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groupalg::{kb_complete, GroupRingElement, GroupRingMatrix, KbBudget, NormalFormOracle, ShortlexOrder};
use crate::words::{parse_word, Presentation};

fn coefficient(tok: &str) -> Option<Complex64> {
    match tok.strip_suffix('i') {
        Some("") => Some(Complex64::new(0.0, 1.0)),
        Some(im) => im.parse::<f64>().ok().map(|v| Complex64::new(0.0, v)),
        None => tok.parse::<f64>().ok().map(|v| Complex64::new(v, 0.0)),
    }
}

/// Parse a group-ring expression such as `1 - 2 g`, `-X y x + 2i X X y y x`.
pub fn parse_element(text: &str, oracle: &Arc<NormalFormOracle>) -> Result<GroupRingElement> {
    let mut toks: Vec<String> = Vec::new();
    for raw in text.split_whitespace() {
        let mut t = raw;
        while let Some(c) = t.chars().next().filter(|c| *c == '+' || *c == '-') {
            toks.push(c.to_string());
            t = &t[1..];
        }
        if !t.is_empty() && t != "*" {
            toks.push(t.to_string());
        }
    }
    let mut out = GroupRingElement::zero(oracle);
    let mut i = 0;
    let mut any = false;
    while i < toks.len() {
        let mut sign = 1.0;
        while i < toks.len() && (toks[i] == "+" || toks[i] == "-") {
            if toks[i] == "-" {
                sign = -sign;
            }
            i += 1;
        }
        let mut c = Complex64::new(sign, 0.0);
        if let Some(v) = toks.get(i).and_then(|t| coefficient(t)) {
            c *= v;
            i += 1;
        }
        let start = i;
        while i < toks.len() && toks[i] != "+" && toks[i] != "-" {
            i += 1;
        }
        let w = parse_word(&toks[start..i].join(" "), &oracle.alphabet)?;
        out.add_term(c, &w);
        any = true;
    }
    if !any {
        return Err(Error::Parse(format!("empty group-ring expression `{text}`")));
    }
    Ok(out)
}

pub fn parse_matrix_file(text: &str) -> Result<GroupRingMatrix> {
    let mut oracle_line: Option<String> = None;
    let mut rows: Vec<String> = Vec::new();
    let mut pres = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{line}`")))?;
        match key.trim() {
            "oracle" => oracle_line = Some(rest.trim().to_string()),
            "row" => rows.push(rest.trim().to_string()),
            _ => {
                pres.push_str(line);
                pres.push('\n');
            }
        }
    }
    let spec = oracle_line.ok_or_else(|| Error::Parse("missing `oracle:` line".into()))?;
    let oracle = Arc::new(parse_oracle(&spec, &pres)?);
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no `row:` lines".into()));
    }
    let rows = rows
        .iter()
        .map(|r| r.split(';').map(|e| parse_element(e, &oracle)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    GroupRingMatrix::from_rows(&oracle, rows)
}

fn parse_oracle(spec: &str, pres: &str) -> Result<NormalFormOracle> {
    let mut it = spec.split_whitespace();
    let kind = it.next().unwrap_or("");
    let rest: Vec<String> = it.map(String::from).collect();
    match kind {
        "free" => Ok(NormalFormOracle::free(rest)),
        "free-abelian" => Ok(NormalFormOracle::free_abelian(rest)),
        "torus" => {
            let nums: Vec<i64> = rest
                .iter()
                .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad torus parameter `{s}`"))))
                .collect::<Result<_>>()?;
            match nums.as_slice() {
                [p, q] => NormalFormOracle::torus(*p, *q),
                _ => Err(Error::Parse("`oracle: torus p q` needs two integers".into())),
            }
        }
        "kb" => {
            let p = Presentation::parse(pres)?;
            let rs = kb_complete(&p, ShortlexOrder::standard(p.rank()), KbBudget::default())
                .map_err(|f| Error::Oracle(format!("Knuth-Bendix did not complete: {}", f.reason)))?;
            Ok(NormalFormOracle::rewriting(rs, p.generators))
        }
        _ => Err(Error::Parse(format!("unknown oracle `{kind}` (free, free-abelian, torus, kb)"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    #[test]
    fn elements() {
        let o = Arc::new(NormalFormOracle::free_abelian_rank(1));
        let x = parse_element("1 - 2 g", &o).unwrap();
        assert_eq!(x.coeff(&Word::gen(0)), Complex64::new(-2.0, 0.0));
        assert_eq!(x.coeff(&Word::identity()), Complex64::new(1.0, 0.0));
        let y = parse_element("-g + 3i G -1", &o).unwrap();
        assert_eq!(y.coeff(&Word::power(0, -1)), Complex64::new(0.0, 3.0));
        assert_eq!(y.coeff(&Word::identity()), Complex64::new(-1.0, 0.0));
        assert!(parse_element("  ", &o).is_err());
        assert!(parse_element("2 h", &o).is_err());
        assert!(parse_element("0", &o).unwrap().is_zero());
    }

    #[test]
    fn files() {
        let m = parse_matrix_file("oracle: torus 2 3\nrow: -1 - 4 X y x + 2 X X y y x\n").unwrap();
        assert_eq!((m.rows, m.cols), (1, 1));
        let m = parse_matrix_file("oracle: free-abelian g\nrow: 1 ; 0\nrow: g ; 2\n").unwrap();
        assert_eq!((m.rows, m.cols), (2, 2));
        assert!(parse_matrix_file("row: 1\n").is_err());
        assert!(parse_matrix_file("oracle: free-abelian g\nrow: 1 ; 0\nrow: 1\n").is_err());
        let kb = "oracle: kb\ngens: a b\nrels: a b A B\nrow: 1 - a b A\n";
        assert_eq!(parse_matrix_file(kb).unwrap().get(0, 0).len(), 2);
    }
}
