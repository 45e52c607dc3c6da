//! Plain-text reaction network files (`.crn`).
//!
//! One reaction per line, `#` starts a comment, blank lines are ignored:
//!
//! ```text
//! # species: S E SE P
//! S + E <-> SE
//! SE -> P + E
//! 0 <-> 2 S
//! ```
//!
//! A complex is `0` or `term (+ term)*`, where a term is an optional positive
//! coefficient followed by a species name (a letter, then letters, digits or
//! underscores). `<->` stands for both directions. Species are numbered in
//! order of first appearance; a `# species:` comment, which
//! [`serialize_network`] always writes, fixes that order up front.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::complex_space::SpeciesId;
use crate::network_core::{Reaction, ReactionNetwork, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    SelfReaction,
    ZeroCoefficient,
    DuplicateReaction(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::SelfReaction => write!(f, "source and product are the same complex"),
            ParseErrorKind::ZeroCoefficient => write!(f, "coefficient must be positive"),
            ParseErrorKind::DuplicateReaction(r) => write!(f, "duplicate reaction {r}"),
        }
    }
}

/// Parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn is_syntax(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Syntax(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NetworkDocument {
    species: Vec<String>,
    reactions: Vec<Reaction>,
    source_text: Option<String>,
}

impl NetworkDocument {
    /// Document for a network on `S1..Sn`, naming species `S1`, `S2`, ...
    pub fn from_network(net: &ReactionNetwork) -> Self {
        Self {
            species: (1..=net.num_species()).map(|i| format!("S{i}")).collect(),
            reactions: net.reactions().to_vec(),
            source_text: None,
        }
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn source_text(&self) -> Option<&str> {
        self.source_text.as_deref()
    }

    /// True when every complex has molecularity at most two.
    pub fn is_binary(&self) -> bool {
        self.reactions
            .iter()
            .all(|r| r.source().is_binary() && r.product().is_binary())
    }

    fn render(&self, v: &Vertex) -> String {
        if v.terms().is_empty() {
            return "0".to_string();
        }
        v.terms()
            .iter()
            .map(|&(s, c)| {
                let name = &self.species[s.coord()];
                if c == 1 {
                    name.clone()
                } else {
                    format!("{c} {name}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.pos + 1,
            kind,
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .copied()
                .eq(s.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<Option<u32>, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map(Some).map_err(|_| ParseError {
            line: self.line,
            column: start + 1,
            kind: ParseErrorKind::Syntax(format!("coefficient {digits} is too large")),
        })
    }

    fn name(&mut self) -> Option<String> {
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn at_arrow_or_end(&mut self) -> bool {
        self.skip_ws();
        let save = self.pos;
        let hit = self.peek().is_none() || self.eat("->") || self.eat("<->");
        self.pos = save;
        hit
    }

    /// `complex := "0" | term ("+" term)*`, yielding `(name, count)` terms.
    fn complex(&mut self) -> Result<Vec<(String, u32)>, ParseError> {
        self.skip_ws();
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            let coef_at = self.pos;
            let coef = self.number()?;
            self.skip_ws();
            match self.name() {
                Some(name) => {
                    if coef == Some(0) {
                        self.pos = coef_at;
                        return Err(self.err(ParseErrorKind::ZeroCoefficient));
                    }
                    terms.push((name, coef.unwrap_or(1)));
                }
                None if coef == Some(0) && terms.is_empty() && self.at_arrow_or_end() => {
                    return Ok(terms);
                }
                None if coef.is_some() => return Err(self.syntax("expected a species name")),
                None => return Err(self.syntax("expected a complex")),
            }
            self.skip_ws();
            if !self.eat("+") {
                return Ok(terms);
            }
        }
    }
}

struct Builder {
    species: Vec<String>,
    index: HashMap<String, u32>,
}

impl Builder {
    fn id(&mut self, name: &str) -> SpeciesId {
        if let Some(&i) = self.index.get(name) {
            return SpeciesId(i);
        }
        self.species.push(name.to_string());
        let i = self.species.len() as u32;
        self.index.insert(name.to_string(), i);
        SpeciesId(i)
    }

    /// `None` if a repeated species pushes a count past `u32::MAX`.
    fn vertex(&mut self, terms: Vec<(String, u32)>) -> Option<Vertex> {
        let mut counts: HashMap<SpeciesId, u32> = HashMap::new();
        for (name, c) in &terms {
            let slot = counts.entry(self.id(name)).or_default();
            *slot = slot.checked_add(*c)?;
        }
        Some(Vertex::from_terms(counts))
    }
}

fn strip_comment(line: &str) -> (&str, Option<&str>) {
    match line.find('#') {
        Some(i) => (&line[..i], Some(&line[i + 1..])),
        None => (line, None),
    }
}

pub fn parse_network(text: &str) -> Result<NetworkDocument, ParseError> {
    let mut b = Builder {
        species: Vec::new(),
        index: HashMap::new(),
    };
    let mut reactions: Vec<Reaction> = Vec::new();
    let mut seen: BTreeSet<Reaction> = BTreeSet::new();

    for (ln, raw) in text.split('\n').enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let (body, comment) = strip_comment(raw);
        if let Some(decl) = comment.and_then(|c| c.trim_start().strip_prefix("species:")) {
            for name in decl.split_whitespace() {
                let valid = name.starts_with(|c: char| c.is_ascii_alphabetic())
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    let column = raw.find(name).map_or(1, |i| raw[..i].chars().count() + 1);
                    return Err(ParseError {
                        line: ln + 1,
                        column,
                        kind: ParseErrorKind::Syntax(format!("invalid species name {name:?}")),
                    });
                }
                b.id(name);
            }
        }
        if body.trim().is_empty() {
            continue;
        }

        let mut cur = Cursor {
            chars: body.chars().collect(),
            pos: 0,
            line: ln + 1,
            text: body,
        };
        let lhs = cur.complex()?;
        cur.skip_ws();
        let reversible = if cur.eat("<->") {
            true
        } else if cur.eat("->") {
            false
        } else {
            return Err(cur.syntax("expected '->' or '<->'"));
        };
        let rhs = cur.complex()?;
        cur.skip_ws();
        if cur.peek().is_some() {
            return Err(cur.syntax(format!(
                "unexpected input {:?}",
                &cur.text[byte_offset(cur.text, cur.pos)..]
            )));
        }

        let line_err = |kind| ParseError {
            line: ln + 1,
            column: 1,
            kind,
        };
        let too_large = || {
            line_err(ParseErrorKind::Syntax(
                "coefficient sum is too large".into(),
            ))
        };
        let source = b.vertex(lhs).ok_or_else(too_large)?;
        let product = b.vertex(rhs).ok_or_else(too_large)?;
        let forward =
            Reaction::new(source, product).map_err(|_| line_err(ParseErrorKind::SelfReaction))?;
        let mut new = vec![forward.clone()];
        if reversible {
            new.push(forward.reversed());
        }
        for r in new {
            if !seen.insert(r.clone()) {
                return Err(line_err(ParseErrorKind::DuplicateReaction(r.to_string())));
            }
            reactions.push(r);
        }
    }

    Ok(NetworkDocument {
        species: b.species,
        reactions,
        source_text: Some(text.to_string()),
    })
}

fn byte_offset(s: &str, char_pos: usize) -> usize {
    s.char_indices().nth(char_pos).map_or(s.len(), |(i, _)| i)
}

/// Canonical text: a `# species:` header, then one line per reaction or
/// reversible pair, ordered by (source, product) in canonical complex order.
pub fn serialize_network(doc: &NetworkDocument) -> String {
    if doc.species.is_empty() && doc.reactions.is_empty() {
        return String::new();
    }
    let set: BTreeSet<&Reaction> = doc.reactions.iter().collect();
    let mut lines: Vec<(&Vertex, &Vertex, bool)> = Vec::new();
    for r in &set {
        let back = r.reversed();
        if set.contains(&back) {
            if r.source() < r.product() {
                lines.push((r.source(), r.product(), true));
            }
        } else {
            lines.push((r.source(), r.product(), false));
        }
    }
    lines.sort();

    let mut out = format!("# species: {}\n", doc.species.join(" "));
    for (s, p, reversible) in lines {
        let arrow = if reversible { "<->" } else { "->" };
        out.push_str(&format!("{} {arrow} {}\n", doc.render(s), doc.render(p)));
    }
    out
}

/// Network on the document's species, numbered in first-appearance order.
pub fn to_reaction_network(doc: &NetworkDocument) -> ReactionNetwork {
    ReactionNetwork::new(doc.species.len(), doc.reactions.iter().cloned())
        .expect("parser rejects duplicates and self reactions")
}
