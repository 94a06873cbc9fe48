use std::fmt;

use crate::error::{Error, Result};

/// Integer Laurent polynomial `Σ c_i t^(low + i)`, trimmed so that the first and last
/// coefficients are nonzero (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<i64>,
}

fn overflow() -> Error {
    Error::Resource("integer overflow in Laurent polynomial arithmetic".into())
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// `t`-power coefficients starting at exponent `low`.
    pub fn new(low: i64, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPolynomial { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Width of the support, `high − low`; 0 for monomials and zero.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> i64 {
        let i = e - self.low;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(o.low);
        let high = self.high().max(o.high());
        let mut c = vec![0i64; (high - low + 1) as usize];
        for src in [self, o] {
            for (i, &v) in src.coeffs.iter().enumerate() {
                let k = (src.low - low) as usize + i;
                c[k] = c[k].checked_add(v).ok_or_else(overflow)?;
            }
        }
        Ok(Self::new(low, c))
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        let mut c = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                let m = a.checked_mul(b).ok_or_else(overflow)?;
                c[i + j] = c[i + j].checked_add(m).ok_or_else(overflow)?;
            }
        }
        Ok(Self::new(self.low + o.low, c))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut r = Self::one();
        for _ in 0..n {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPolynomial { low: self.low + e, coeffs: self.coeffs.clone() }
    }

    /// `f(t⁻¹)`.
    pub fn reflect(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(-self.high(), c)
    }

    /// Exact quotient `self / d` in ℤ[t^±1], or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = d.leading();
        let mut rem: Vec<i64> = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return None;
        }
        let mut q = vec![0i64; rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = rem[k + dl - 1];
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            q[k] = f;
            for (i, &c) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].checked_sub(f.checked_mul(c)?)?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Self::new(self.low - d.low, q))
    }

    /// Unit-normalized form: lowest exponent 0 and positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let s = if self.leading() < 0 { -1 } else { 1 };
        LaurentPolynomial { low: 0, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `(sign, m)` with `self = sign · t^m · other`, if the two differ by a unit.
    pub fn unit_between(&self, other: &Self) -> Option<(i64, i64)> {
        if self.is_zero() || other.is_zero() || self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let m = self.low - other.low;
        for sign in [1, -1] {
            if self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == sign * b) {
                return Some((sign, m));
            }
        }
        None
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c as f64) * t.powi(self.low as i32)
    }

    /// `(t^n − 1)/(t − 1) = 1 + t + … + t^(n−1)` for n ≥ 1.
    pub fn geometric(n: usize) -> Self {
        Self::new(0, vec![1; n.max(1)])
    }

    /// Parse text such as `1 - t + t^2`, `-3t^-1 + 2`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad Laurent polynomial: {text}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut p = Self::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (c, e) = match body.find('t') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0),
                Some(k) => {
                    let cs = body[..k].trim_end_matches('*');
                    let c = if cs.is_empty() { 1 } else { cs.parse::<i64>().map_err(|_| bad())? };
                    let rest = &body[k + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            p = p.add(&Self::monomial(sign * c, e))?;
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.low + i as i64;
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let var = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s).unwrap()
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p("1 - t + t^2").to_string(), "1 - t + t^2");
        assert_eq!(p("t^2 - 3t + 1").to_string(), "1 - 3t + t^2");
        assert_eq!(p("-2t^-1 + 5").to_string(), "-2t^-1 + 5");
        assert_eq!(p("0").to_string(), "0");
        assert!(LaurentPolynomial::parse("t^").is_err());
    }

    #[test]
    fn arithmetic() {
        let a = p("1 - t + t^2");
        let b = p("1 + t");
        assert_eq!(a.mul(&b).unwrap(), p("1 + t^3"));
        assert_eq!(p("1 + t^3").exact_div(&b).unwrap(), a);
        assert!(a.exact_div(&b).is_none());
        assert_eq!(a.shift(-1).reflect(), a.shift(-1));
        assert_eq!(p("-t^3 + t^4 - t^5").normalized(), a);
        assert_eq!(a.shift(4).neg().unit_between(&a), Some((-1, 4)));
        assert_eq!(a.eval(2.0), 3.0);
        assert_eq!(LaurentPolynomial::geometric(3), p("1 + t + t^2"));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = LaurentPolynomial::monomial(i64::MAX, 0);
        assert!(big.add(&big).is_err());
    }
}
