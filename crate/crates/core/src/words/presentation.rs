use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::word::{parse_word, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    Meridian,
    Longitude,
    Core,
}

impl Mark {
    pub fn name(self) -> &'static str {
        match self {
            Mark::Meridian => "meridian",
            Mark::Longitude => "longitude",
            Mark::Core => "core",
        }
    }

    pub fn parse(s: &str) -> Result<Mark> {
        match s {
            "meridian" => Ok(Mark::Meridian),
            "longitude" => Ok(Mark::Longitude),
            "core" => Ok(Mark::Core),
            _ => Err(Error::Parse(format!("unknown mark `{s}`"))),
        }
    }
}

/// A finite group presentation with optional peripheral marks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub wirtinger: bool,
    pub marks: BTreeMap<Mark, Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation> {
        let p = Presentation {
            generators,
            relators,
            wirtinger: false,
            marks: BTreeMap::new(),
        };
        p.check()?;
        Ok(p)
    }

    /// Build from generator names and relator texts.
    pub fn from_strs(gens: &[&str], rels: &[&str]) -> Result<Presentation> {
        let generators: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let relators = rels
            .iter()
            .map(|r| parse_word(r, &generators))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(generators, relators)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn with_mark(mut self, m: Mark, w: Word) -> Presentation {
        self.marks.insert(m, w);
        self
    }

    pub fn mark(&self, m: Mark) -> Option<&Word> {
        self.marks.get(&m)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.generators)
    }

    pub fn show(&self, w: &Word) -> String {
        w.display(&self.generators)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub(crate) fn check(&self) -> Result<()> {
        for (i, g) in self.generators.iter().enumerate() {
            let ok = !g.is_empty()
                && g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !g.chars().next().unwrap().is_ascii_digit();
            if !ok {
                return Err(Error::Invalid(format!("bad generator name `{g}`")));
            }
            if self.generators[..i].contains(g) {
                return Err(Error::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        let k = self.rank();
        for w in self.relators.iter().chain(self.marks.values()) {
            if w.max_gen().is_some_and(|g| g >= k) {
                return Err(Error::Invalid("word uses an undeclared generator".into()));
            }
        }
        Ok(())
    }

    /// Parse the `gens:` / `rels:` / `mark role:` text format.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels: Vec<String> = Vec::new();
        let mut marks: Vec<(Mark, String)> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{line}`")))?;
            let key = key.trim();
            if key == "gens" {
                gens = Some(rest.split_whitespace().map(|s| s.to_string()).collect());
            } else if key == "rels" {
                rels.extend(
                    rest.split(',')
                        .map(|r| r.trim().to_string())
                        .filter(|r| !r.is_empty()),
                );
            } else if let Some(role) = key.strip_prefix("mark") {
                marks.push((Mark::parse(role.trim())?, rest.trim().to_string()));
            } else {
                return Err(Error::Parse(format!("unknown key `{key}`")));
            }
        }
        let generators = gens.ok_or_else(|| Error::Parse("missing `gens:` line".into()))?;
        let relators = rels
            .iter()
            .map(|r| parse_word(r, &generators))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Presentation::new(generators, relators)?;
        for (m, w) in marks {
            let w = p.word(&w)?;
            p.marks.insert(m, w);
        }
        p.wirtinger = super::validate_wirtinger(&p).pass;
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generators.join(" "));
        let rels: Vec<String> = self.relators.iter().map(|r| self.show(r)).collect();
        s.push_str(&format!("rels: {}\n", rels.join(", ")));
        for (m, w) in &self.marks {
            s.push_str(&format!("mark {}: {}\n", m.name(), self.show(w)));
        }
        s
    }

    /// Copy with new generator names.
    pub fn with_names(&self, names: Vec<String>) -> Result<Presentation> {
        let mut p = self.clone();
        if names.len() != p.rank() {
            return Err(Error::Invalid("wrong number of names".into()));
        }
        p.generators = names;
        p.check()?;
        Ok(p)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.show(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let text = "gens: a b c\nrels: a b A C, b c B A\nmark meridian: a\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.rank(), 3);
        assert_eq!(p.relators.len(), 2);
        assert!(p.wirtinger);
        assert_eq!(p.to_text(), text);
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        assert!(Presentation::parse("rels: a").is_err());
        assert!(Presentation::parse("gens: a\nrels: b").is_err());
        assert!(Presentation::parse("gens: a a\nrels:").is_err());
        assert!(Presentation::parse("gens: a\nfoo: a").is_err());
    }
}
