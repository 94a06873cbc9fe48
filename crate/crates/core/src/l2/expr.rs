use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Graph knots built from the unknot by torus knots, connected sums and cablings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnotExpr {
    Unknot,
    Torus(i64, i64),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    /// `(p, q)`-cable of the child: p is the winding number.
    Cable(i64, i64, Box<KnotExpr>),
    Mirror(Box<KnotExpr>),
    Inverse(Box<KnotExpr>),
}

fn check_pq(p: i64, q: i64) -> Result<()> {
    if p == 0 || num_integer::gcd(p, q) != 1 {
        return Err(Error::Invalid(format!("need p ≠ 0 and gcd(p,q) = 1, got ({p},{q})")));
    }
    Ok(())
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Result<KnotExpr> {
        check_pq(p, q)?;
        Ok(KnotExpr::Torus(p, q))
    }

    pub fn sum(a: KnotExpr, b: KnotExpr) -> KnotExpr {
        KnotExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn cable(p: i64, q: i64, c: KnotExpr) -> Result<KnotExpr> {
        check_pq(p, q)?;
        Ok(KnotExpr::Cable(p, q, Box::new(c)))
    }

    pub fn mirror(c: KnotExpr) -> KnotExpr {
        KnotExpr::Mirror(Box::new(c))
    }

    pub fn inverse(c: KnotExpr) -> KnotExpr {
        KnotExpr::Inverse(Box::new(c))
    }

    /// Coprimality at every torus and cable node.
    pub fn validate(&self) -> Result<()> {
        match self {
            KnotExpr::Unknot => Ok(()),
            KnotExpr::Torus(p, q) => check_pq(*p, *q),
            KnotExpr::Sum(a, b) => {
                a.validate()?;
                b.validate()
            }
            KnotExpr::Cable(p, q, c) => {
                check_pq(*p, *q)?;
                c.validate()
            }
            KnotExpr::Mirror(c) | KnotExpr::Inverse(c) => c.validate(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus(..) => 1,
            KnotExpr::Sum(a, b) => 1 + a.size() + b.size(),
            KnotExpr::Cable(_, _, c) | KnotExpr::Mirror(c) | KnotExpr::Inverse(c) => 1 + c.size(),
        }
    }

    pub fn parse(text: &str) -> Result<KnotExpr> {
        let mut p = Parser { s: text.as_bytes(), i: 0, text };
        let e = p.expr()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl std::str::FromStr for KnotExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KnotExpr::parse(s)
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "unknot"),
            KnotExpr::Torus(p, q) => write!(f, "torus({p},{q})"),
            KnotExpr::Sum(a, b) => write!(f, "sum({a},{b})"),
            KnotExpr::Cable(p, q, c) => write!(f, "cable({p},{q},{c})"),
            KnotExpr::Mirror(c) => write!(f, "mirror({c})"),
            KnotExpr::Inverse(c) => write!(f, "inverse({c})"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in knot expression `{}`", self.i, self.text))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> String {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_alphabetic() {
            self.i += 1;
        }
        self.text[start..self.i].to_ascii_lowercase()
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.i;
        if matches!(self.s.get(self.i), Some(b'-' | b'+')) {
            self.i += 1;
        }
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        self.text[start..self.i].parse().map_err(|_| self.err("expected an integer"))
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        let at = self.i;
        let name = self.ident();
        let e = match name.as_str() {
            "unknot" => KnotExpr::Unknot,
            "torus" => {
                self.eat(b'(')?;
                let p = self.int()?;
                self.eat(b',')?;
                let q = self.int()?;
                self.eat(b')')?;
                KnotExpr::torus(p, q)?
            }
            "sum" => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b',')?;
                let b = self.expr()?;
                self.eat(b')')?;
                KnotExpr::sum(a, b)
            }
            "cable" => {
                self.eat(b'(')?;
                let p = self.int()?;
                self.eat(b',')?;
                let q = self.int()?;
                self.eat(b',')?;
                let c = self.expr()?;
                self.eat(b')')?;
                KnotExpr::cable(p, q, c)?
            }
            "mirror" | "inverse" => {
                self.eat(b'(')?;
                let c = self.expr()?;
                self.eat(b')')?;
                if name == "mirror" {
                    KnotExpr::mirror(c)
                } else {
                    KnotExpr::inverse(c)
                }
            }
            _ => {
                self.i = at;
                return Err(self.err("expected unknot, torus, sum, cable, mirror or inverse"));
            }
        };
        Ok(e)
    }
}

fn overflow() -> Error {
    Error::Resource("exponent overflows 64 bits".into())
}

/// n_K with `Δ_K(t) = max(1,t)^(n_K)`.
pub fn exact_exponent(k: &KnotExpr) -> Result<u64> {
    k.validate()?;
    fn go(k: &KnotExpr) -> Result<u64> {
        Ok(match k {
            KnotExpr::Unknot => 0,
            KnotExpr::Torus(p, q) => torus_part(*p, *q)?,
            KnotExpr::Sum(a, b) => go(a)?.checked_add(go(b)?).ok_or_else(overflow)?,
            KnotExpr::Cable(p, q, c) => p
                .unsigned_abs()
                .checked_mul(go(c)?)
                .and_then(|x| x.checked_add(torus_part(*p, *q).ok()?))
                .ok_or_else(overflow)?,
            KnotExpr::Mirror(c) | KnotExpr::Inverse(c) => go(c)?,
        })
    }
    go(k)
}

/// `(|p|−1)(|q|−1)`; coprimality makes it nonnegative even when q = 0.
fn torus_part(p: i64, q: i64) -> Result<u64> {
    let (a, b) = (p.unsigned_abs(), q.unsigned_abs());
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a - 1).checked_mul(b - 1).ok_or_else(overflow)
}

/// True iff n_K = 0, decided without computing n_K (so without overflow).
pub fn detect_unknot(k: &KnotExpr) -> bool {
    match k {
        KnotExpr::Unknot => true,
        KnotExpr::Torus(p, q) => p.abs() <= 1 || q.abs() <= 1,
        KnotExpr::Sum(a, b) => detect_unknot(a) && detect_unknot(b),
        KnotExpr::Cable(p, q, c) => detect_unknot(c) && (p.abs() <= 1 || q.abs() <= 1),
        KnotExpr::Mirror(c) | KnotExpr::Inverse(c) => detect_unknot(c),
    }
}

/// Rewrites trivial operations away: `Cable(±1,q,X) → X / Inverse(X)`, sums with the
/// unknot, mirror and inverse of the unknot, and the torus knots and cables of the
/// unknot that are themselves unknots (`|p| = 1` or `|q| = 1`).
pub fn simplify_trivial(k: &KnotExpr) -> KnotExpr {
    use KnotExpr::*;
    let node = match k {
        Unknot | Torus(..) => k.clone(),
        Sum(a, b) => Sum(Box::new(simplify_trivial(a)), Box::new(simplify_trivial(b))),
        Cable(p, q, c) => Cable(*p, *q, Box::new(simplify_trivial(c))),
        Mirror(c) => Mirror(Box::new(simplify_trivial(c))),
        Inverse(c) => Inverse(Box::new(simplify_trivial(c))),
    };
    let next = match &node {
        Torus(p, q) if p.abs() == 1 || q.abs() <= 1 => Unknot,
        Sum(a, b) if **a == Unknot => (**b).clone(),
        Sum(a, b) if **b == Unknot => (**a).clone(),
        Cable(1, _, c) => (**c).clone(),
        Cable(-1, _, c) => Inverse(c.clone()),
        Cable(p, q, c) if **c == Unknot => Torus(*p, *q),
        Mirror(c) | Inverse(c) if **c == Unknot => Unknot,
        _ => return node,
    };
    simplify_trivial(&next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KnotExpr {
        KnotExpr::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let e = k(" cable( 2 , -3, sum(torus(2,3), MIRROR(unknot)) )");
        assert_eq!(e.to_string(), "cable(2,-3,sum(torus(2,3),mirror(unknot)))");
        assert_eq!(k(&e.to_string()), e);
        assert!(KnotExpr::parse("torus(2,4)").is_err());
        assert!(KnotExpr::parse("cable(0,1,unknot)").is_err());
        assert!(KnotExpr::parse("sum(unknot)").is_err());
        assert!(KnotExpr::parse("unknot x").is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(exact_exponent(&k("torus(2,7)")).unwrap(), 6);
        assert_eq!(exact_exponent(&k("torus(3,4)")).unwrap(), 6);
        assert_eq!(exact_exponent(&k("torus(2,-1)")).unwrap(), 0);
        assert_eq!(exact_exponent(&k("sum(torus(2,3),torus(2,3))")).unwrap(), 4);
        assert_eq!(exact_exponent(&k("cable(2,3,torus(2,3))")).unwrap(), 6);
        assert_eq!(exact_exponent(&k("inverse(mirror(torus(3,-5)))")).unwrap(), 8);
        assert_eq!(exact_exponent(&KnotExpr::Torus(2, 4)).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn detection() {
        assert!(detect_unknot(&k("cable(-1,5,unknot)")));
        assert!(!detect_unknot(&k("sum(unknot,torus(2,3))")));
        assert!(detect_unknot(&k("unknot")));
        assert_eq!(simplify_trivial(&k("cable(-1,5,torus(2,3))")), k("inverse(torus(2,3))"));
        assert_eq!(simplify_trivial(&k("mirror(cable(-1,5,sum(unknot,torus(1,4))))")), KnotExpr::Unknot);
        assert_eq!(simplify_trivial(&k("cable(3,1,unknot)")), KnotExpr::Unknot);
        assert_eq!(simplify_trivial(&k("cable(3,2,unknot)")), k("torus(3,2)"));
    }
}
