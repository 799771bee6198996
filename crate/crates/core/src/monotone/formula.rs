use std::fmt;
use std::str::FromStr;

use super::{Antichain, Valuation};
use crate::error::Error;
use crate::symbol::AxiomId;

/// A formula built from axiom variables with `∧`, `∨`, `⊤` and `⊥` only.
///
/// Values produced by [`conj`](Self::conj) and [`disj`](Self::disj) are
/// flattened and unit-simplified. The enum is public, so hand-built trees
/// may violate that; every operation here still gives the right answer on
/// them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum MonotoneFormula {
    True,
    False,
    Var(AxiomId),
    And(Vec<MonotoneFormula>),
    Or(Vec<MonotoneFormula>),
}

impl MonotoneFormula {
    pub fn var(name: impl Into<AxiomId>) -> Self {
        MonotoneFormula::Var(name.into())
    }

    pub fn conj(parts: impl IntoIterator<Item = MonotoneFormula>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                MonotoneFormula::True => {}
                MonotoneFormula::False => return MonotoneFormula::False,
                MonotoneFormula::And(children) => out.extend(children),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => MonotoneFormula::True,
            1 => out.pop().unwrap(),
            _ => MonotoneFormula::And(out),
        }
    }

    pub fn disj(parts: impl IntoIterator<Item = MonotoneFormula>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                MonotoneFormula::False => {}
                MonotoneFormula::True => return MonotoneFormula::True,
                MonotoneFormula::Or(children) => out.extend(children),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => MonotoneFormula::False,
            1 => out.pop().unwrap(),
            _ => MonotoneFormula::Or(out),
        }
    }

    pub fn evaluate(&self, valuation: &Valuation) -> bool {
        match self {
            MonotoneFormula::True => true,
            MonotoneFormula::False => false,
            MonotoneFormula::Var(v) => valuation.contains(*v),
            MonotoneFormula::And(cs) => cs.iter().all(|c| c.evaluate(valuation)),
            MonotoneFormula::Or(cs) => cs.iter().any(|c| c.evaluate(valuation)),
        }
    }

    pub fn minimal_models(&self) -> Antichain {
        match self {
            MonotoneFormula::True => Antichain::top(),
            MonotoneFormula::False => Antichain::bottom(),
            MonotoneFormula::Var(v) => Antichain::var(*v),
            MonotoneFormula::And(cs) => cs.iter().fold(Antichain::top(), |acc, c| {
                if acc.is_bottom() {
                    acc
                } else {
                    acc.and(&c.minimal_models())
                }
            }),
            MonotoneFormula::Or(cs) => cs
                .iter()
                .fold(Antichain::bottom(), |acc, c| acc.or(&c.minimal_models())),
        }
    }

    pub fn entails(&self, other: &MonotoneFormula) -> bool {
        let theirs = other.minimal_models();
        self.minimal_models().iter().all(|m| theirs.satisfied_by(m))
    }

    pub fn equivalent(&self, other: &MonotoneFormula) -> bool {
        self.minimal_models() == other.minimal_models()
    }

    pub fn variables(&self) -> Valuation {
        let mut out = Valuation::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Valuation) {
        match self {
            MonotoneFormula::Var(v) => {
                out.insert(*v);
            }
            MonotoneFormula::And(cs) | MonotoneFormula::Or(cs) => {
                cs.iter().for_each(|c| c.collect_vars(out))
            }
            _ => {}
        }
    }

    /// Replaces every variable by a formula. Variables mapped to `None`
    /// abort the substitution and are returned as the error.
    pub fn substitute<F>(&self, f: &mut F) -> Result<MonotoneFormula, AxiomId>
    where
        F: FnMut(AxiomId) -> Option<MonotoneFormula>,
    {
        Ok(match self {
            MonotoneFormula::True => MonotoneFormula::True,
            MonotoneFormula::False => MonotoneFormula::False,
            MonotoneFormula::Var(v) => f(*v).ok_or(*v)?,
            MonotoneFormula::And(cs) => MonotoneFormula::conj(
                cs.iter()
                    .map(|c| c.substitute(f))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            MonotoneFormula::Or(cs) => MonotoneFormula::disj(
                cs.iter()
                    .map(|c| c.substitute(f))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        })
    }

    /// The minimal-model DNF of this formula.
    pub fn normal_form(&self) -> MonotoneFormula {
        self.minimal_models().to_formula()
    }
}

impl From<&Antichain> for MonotoneFormula {
    fn from(a: &Antichain) -> Self {
        a.to_formula()
    }
}

impl fmt::Display for MonotoneFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, cs: &[MonotoneFormula], op: &str) -> fmt::Result {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(op)?;
                }
                match c {
                    MonotoneFormula::And(v) | MonotoneFormula::Or(v) if v.len() > 1 => {
                        write!(f, "({c})")?
                    }
                    _ => write!(f, "{c}")?,
                }
            }
            Ok(())
        }
        match self {
            MonotoneFormula::True => f.write_str("true"),
            MonotoneFormula::False => f.write_str("false"),
            MonotoneFormula::Var(v) => write!(f, "{v}"),
            MonotoneFormula::And(cs) if cs.is_empty() => f.write_str("true"),
            MonotoneFormula::Or(cs) if cs.is_empty() => f.write_str("false"),
            MonotoneFormula::And(cs) => join(f, cs, " & "),
            MonotoneFormula::Or(cs) => join(f, cs, " | "),
        }
    }
}

impl fmt::Debug for MonotoneFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for MonotoneFormula {
    type Err = Error;

    /// Reads the textual rendering back: `&` binds tighter than `|`,
    /// parentheses group, `true`/`false` are the constants.
    fn from_str(s: &str) -> Result<Self, Error> {
        let tokens = tokenize(s)?;
        let mut p = FormulaParser { tokens, pos: 0 };
        let f = p.or()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Formula(format!("unexpected `{}`", p.tokens[p.pos])));
        }
        Ok(f)
    }
}

fn tokenize(s: &str) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if "&|()".contains(c) {
            out.push(c.to_string());
            chars.next();
        } else if is_ident_char(c) {
            let mut word = String::new();
            while let Some(&c) = chars.peek().filter(|c| is_ident_char(**c)) {
                word.push(c);
                chars.next();
            }
            out.push(word);
        } else {
            return Err(Error::Formula(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '#' | '\'' | '′')
}

struct FormulaParser {
    tokens: Vec<String>,
    pos: usize,
}

impl FormulaParser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn or(&mut self) -> Result<MonotoneFormula, Error> {
        let mut parts = vec![self.and()?];
        while self.peek() == Some("|") {
            self.pos += 1;
            parts.push(self.and()?);
        }
        Ok(MonotoneFormula::disj(parts))
    }

    fn and(&mut self) -> Result<MonotoneFormula, Error> {
        let mut parts = vec![self.atom()?];
        while self.peek() == Some("&") {
            self.pos += 1;
            parts.push(self.atom()?);
        }
        Ok(MonotoneFormula::conj(parts))
    }

    fn atom(&mut self) -> Result<MonotoneFormula, Error> {
        let tok = self
            .peek()
            .ok_or_else(|| Error::Formula("unexpected end of formula".into()))?
            .to_string();
        self.pos += 1;
        match tok.as_str() {
            "(" => {
                let f = self.or()?;
                if self.peek() != Some(")") {
                    return Err(Error::Formula("missing `)`".into()));
                }
                self.pos += 1;
                Ok(f)
            }
            "true" => Ok(MonotoneFormula::True),
            "false" => Ok(MonotoneFormula::False),
            "&" | "|" | ")" => Err(Error::Formula(format!("unexpected `{tok}`"))),
            name => Ok(MonotoneFormula::var(name)),
        }
    }
}
