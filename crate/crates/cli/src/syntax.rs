//! The `.dl` surface syntax: one GCI per line, `name: C [= D`.

use std::collections::HashSet;
use std::fmt;

use alc_pinpoint::{AxiomId, Concept, ConceptName, LabelledAxiom, Ontology, RoleName};
use thiserror::Error;

/// Where in the text something went wrong, both 1-based, columns in chars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{at}: unexpected character `{found}`")]
    Lex { at: Position, found: char },
    #[error("{at}: expected {expected}, found {found}")]
    Parse {
        at: Position,
        expected: &'static str,
        found: String,
    },
    #[error("{at}: duplicate axiom name `{name}`")]
    DuplicateName { at: Position, name: String },
}

impl SyntaxError {
    pub fn position(&self) -> Position {
        match self {
            SyntaxError::Lex { at, .. }
            | SyntaxError::Parse { at, .. }
            | SyntaxError::DuplicateName { at, .. } => *at,
        }
    }
}

const KEYWORDS: [&str; 7] = ["not", "and", "or", "some", "only", "top", "bot"];

/// Whether `s` can be written as a concept, role or axiom name.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Keyword(&'static str),
    Colon,
    Dot,
    Open,
    Close,
    Sub,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Keyword(k) => write!(f, "`{k}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
            Tok::Sub => f.write_str("`[=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(line: usize, text: &str) -> Result<Vec<(Tok, Position)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let at = Position {
            line,
            column: i + 1,
        };
        let c = chars[i];
        let tok = match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            ':' => Tok::Colon,
            '.' => Tok::Dot,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '[' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                Tok::Sub
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while chars
                    .get(i + 1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match KEYWORDS.iter().find(|k| **k == word) {
                    Some(k) => Tok::Keyword(k),
                    None => Tok::Ident(word),
                }
            }
            found => return Err(SyntaxError::Lex { at, found }),
        };
        out.push((tok, at));
        i += 1;
    }
    out.push((
        Tok::End,
        Position {
            line,
            column: chars.len() + 1,
        },
    ));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Position)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> (Tok, Position) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> SyntaxError {
        let (tok, at) = &self.toks[self.pos];
        SyntaxError::Parse {
            at: *at,
            expected,
            found: tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn or(&mut self) -> Result<Concept, SyntaxError> {
        let mut c = self.and()?;
        while *self.peek() == Tok::Keyword("or") {
            self.next();
            c = Concept::or(c, self.and()?);
        }
        Ok(c)
    }

    fn and(&mut self) -> Result<Concept, SyntaxError> {
        let mut c = self.unary()?;
        while *self.peek() == Tok::Keyword("and") {
            self.next();
            c = Concept::and(c, self.unary()?);
        }
        Ok(c)
    }

    fn unary(&mut self) -> Result<Concept, SyntaxError> {
        match self.peek().clone() {
            Tok::Keyword("not") => {
                self.next();
                Ok(Concept::not(self.unary()?))
            }
            Tok::Keyword(q @ ("some" | "only")) => {
                self.next();
                let Tok::Ident(role) = self.peek().clone() else {
                    return Err(self.error("a role name"));
                };
                self.next();
                self.expect(Tok::Dot, "`.`")?;
                let filler = self.or()?;
                let role = RoleName::new(&role);
                Ok(if q == "some" {
                    Concept::exists(role, filler)
                } else {
                    Concept::forall(role, filler)
                })
            }
            Tok::Keyword("top") => {
                self.next();
                Ok(Concept::top())
            }
            Tok::Keyword("bot") => {
                self.next();
                Ok(Concept::bot())
            }
            Tok::Ident(name) => {
                self.next();
                Ok(Concept::name(ConceptName::new(&name)))
            }
            Tok::Open => {
                self.next();
                let c = self.or()?;
                self.expect(Tok::Close, "`)`")?;
                Ok(c)
            }
            _ => Err(self.error("a concept")),
        }
    }
}

/// The axioms of a file in file order, each with a unique name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    axioms: Vec<LabelledAxiom>,
}

impl Document {
    pub fn axioms(&self) -> &[LabelledAxiom] {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&LabelledAxiom> {
        self.axioms
            .iter()
            .find(|a| a.label.as_str().as_ref() == name)
    }

    pub fn ontology(&self) -> Ontology {
        Ontology::from_axioms(self.axioms.iter().cloned()).expect("document names are unique")
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Document {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, SyntaxError> {
        parse(s)
    }
}

/// Parses a document. An axiom without a name is called `axK`, where K is
/// its position among all axioms of the file.
pub fn parse(text: &str) -> Result<Document, SyntaxError> {
    let mut parsed: Vec<(Option<String>, Concept, Concept, Position)> = Vec::new();
    for (i, line) in text.split('\n').enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let toks = lex(i + 1, line)?;
        if toks.len() == 1 {
            continue;
        }
        let start = toks[0].1;
        let mut p = Parser { toks, pos: 0 };
        let name = match (&p.toks[0].0, &p.toks[1].0) {
            (Tok::Ident(n), Tok::Colon) => {
                let n = n.clone();
                p.pos = 2;
                Some(n)
            }
            _ => None,
        };
        let lhs = p.or()?;
        p.expect(Tok::Sub, "`[=`")?;
        let rhs = p.or()?;
        if *p.peek() != Tok::End {
            return Err(p.error("end of line"));
        }
        parsed.push((name, lhs, rhs, start));
    }
    let mut seen = HashSet::new();
    let mut axioms = Vec::with_capacity(parsed.len());
    for (k, (name, lhs, rhs, at)) in parsed.into_iter().enumerate() {
        let name = name.unwrap_or_else(|| format!("ax{}", k + 1));
        if !seen.insert(name.clone()) {
            return Err(SyntaxError::DuplicateName { at, name });
        }
        axioms.push(LabelledAxiom::new(AxiomId::new(&name), lhs, rhs));
    }
    Ok(Document { axioms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Concept {
        Concept::name(s)
    }

    #[test]
    fn named_axiom() {
        let d = parse("a1: A [= some r. A").unwrap();
        assert_eq!(
            d.axioms(),
            &[LabelledAxiom::new(
                "a1",
                n("A"),
                Concept::exists("r", n("A"))
            )]
        );
    }

    #[test]
    fn unnamed_axioms_get_positions() {
        let d = parse("x: A [= B\nA and B [= bot\n").unwrap();
        assert_eq!(
            d.axioms()[1],
            LabelledAxiom::new("ax2", Concept::and(n("A"), n("B")), Concept::bot())
        );
    }

    #[test]
    fn error_at_end_of_input() {
        let e = parse("a1: A [= ").unwrap_err();
        assert_eq!(
            e.position(),
            Position {
                line: 1,
                column: 10
            }
        );
        assert!(e.to_string().contains("end of input"), "{e}");
    }

    #[test]
    fn precedence_and_greedy_quantifiers() {
        let d = parse("not A and B or C [= some r. A and B or C").unwrap();
        let a = &d.axioms()[0];
        assert_eq!(
            a.lhs,
            Concept::or(Concept::and(Concept::not(n("A")), n("B")), n("C"))
        );
        assert_eq!(
            a.rhs,
            Concept::exists("r", Concept::or(Concept::and(n("A"), n("B")), n("C")))
        );
        let d = parse("(some r. A) and B [= only s. top").unwrap();
        assert_eq!(
            d.axioms()[0].lhs,
            Concept::and(Concept::exists("r", n("A")), n("B"))
        );
        assert_eq!(d.axioms()[0].rhs, Concept::forall("s", Concept::top()));
    }

    #[test]
    fn comments_blank_lines_and_crlf() {
        let d = parse("# header\r\n\r\n  a: A [= B # trailing\r\nb: B [= C\r\n").unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.get("b").is_some());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("A [= B\nA [= $").unwrap_err(),
            SyntaxError::Lex {
                at: Position { line: 2, column: 6 },
                found: '$'
            }
        );
        let e = parse("p: A [= B\np: B [= C").unwrap_err();
        assert!(matches!(
            e,
            SyntaxError::DuplicateName {
                at: Position { line: 2, column: 1 },
                ..
            }
        ));
        let e = parse("ax2: A [= B\nB [= C").unwrap_err();
        assert!(matches!(e, SyntaxError::DuplicateName { .. }));
        assert_eq!(
            parse("A [= (B").unwrap_err().position(),
            Position { line: 1, column: 8 }
        );
        assert!(parse("A B [= C").is_err());
        assert!(parse("some . A [= C").is_err());
        assert!(parse("A [= B [= C").is_err());
    }

    #[test]
    fn print_parses_back() {
        let text = "a1: A [= some r. A\nax2: (some r. A) and not B [= only r. (B or not C)\nq: not some r. A [= bot\n";
        let d = parse(text).unwrap();
        assert_eq!(parse(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("A_1"));
        assert!(!is_identifier("1A"));
        assert!(!is_identifier("some"));
        assert!(!is_identifier("_F1"));
    }
}
