//! RDF data model: IRIs, literals, triples and set-semantics graphs.
//!
//! Blank nodes are deliberately absent from the model. Every resource is
//! named by an IRI, so graph equality is plain set equality and serialized
//! output is reproducible byte for byte.

mod lex;
pub mod ntriples;
pub mod turtle;

pub use lex::ParseError;

use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

/// Well-known namespace IRIs used by the model and serializers.
pub mod ns {
    pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
}

/// An absolute IRI. Construction validates shape, so a held value is
/// always safe to serialize without escaping.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

/// Error raised when constructing an invalid term.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("invalid IRI {0:?}: must be absolute (scheme separator), non-empty, without whitespace or <>\"{{}}|^`\\")]
    InvalidIri(String),
    #[error("invalid {datatype} lexical form {lexical:?}")]
    InvalidLexical { datatype: &'static str, lexical: String },
}

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, TermError> {
        let value = value.into();
        if Self::is_valid(&value) {
            Ok(Iri(value))
        } else {
            Err(TermError::InvalidIri(value))
        }
    }

    fn is_valid(value: &str) -> bool {
        // Scheme per RFC 3987: ALPHA (ALPHA / DIGIT / "+" / "-" / ".")* ":"
        let mut chars = value.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return false,
        }
        let mut seen_colon = false;
        for c in value.chars() {
            if c == ':' {
                seen_colon = true;
            }
            if c.is_whitespace() || c.is_control() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
                return false;
            }
        }
        seen_colon
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Literal datatypes carried by the model. The ontology facets are string
/// and decimal only; integer exists so counters stay lossless in memory and
/// is treated as a decimal wherever the vocabulary declares one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Datatype {
    String,
    Integer,
    Decimal,
}

impl Datatype {
    pub fn iri(self) -> &'static str {
        match self {
            Datatype::String => ns::XSD_STRING,
            Datatype::Integer => ns::XSD_INTEGER,
            Datatype::Decimal => ns::XSD_DECIMAL,
        }
    }
}

/// An RDF literal: a lexical form plus one of the three supported datatypes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Datatype,
}

/// `[+-]? digits` with at least one digit.
pub(crate) fn is_integer_lexical(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// XSD decimal: optional sign, digits with at most one point, at least one digit.
pub(crate) fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let mut digits = 0usize;
    let mut points = 0usize;
    for b in body.bytes() {
        match b {
            b'0'..=b'9' => digits += 1,
            b'.' => points += 1,
            _ => return false,
        }
    }
    digits > 0 && points <= 1
}

impl Literal {
    pub fn string(value: impl Into<String>) -> Self {
        Literal { lexical: value.into(), datatype: Datatype::String }
    }

    pub fn integer(value: i128) -> Self {
        Literal { lexical: alloc::format!("{value}"), datatype: Datatype::Integer }
    }

    /// A decimal literal from an unsigned count or amount; the lexical form
    /// is the plain digit string.
    pub fn decimal_unsigned(value: u128) -> Self {
        Literal { lexical: alloc::format!("{value}"), datatype: Datatype::Decimal }
    }

    pub fn decimal_signed(value: i128) -> Self {
        Literal { lexical: alloc::format!("{value}"), datatype: Datatype::Decimal }
    }

    pub fn decimal(lexical: impl Into<String>) -> Result<Self, TermError> {
        let lexical = lexical.into();
        if is_decimal_lexical(&lexical) {
            Ok(Literal { lexical, datatype: Datatype::Decimal })
        } else {
            Err(TermError::InvalidLexical { datatype: "decimal", lexical })
        }
    }

    pub fn integer_lexical(lexical: impl Into<String>) -> Result<Self, TermError> {
        let lexical = lexical.into();
        if is_integer_lexical(&lexical) {
            Ok(Literal { lexical, datatype: Datatype::Integer })
        } else {
            Err(TermError::InvalidLexical { datatype: "integer", lexical })
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Datatype {
        self.datatype
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.datatype, Datatype::Integer | Datatype::Decimal)
    }
}

/// Subject/predicate positions take IRIs only; objects take any term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Result<Self, TermError> {
        Ok(Term::Iri(Iri::new(value)?))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Iri(_) => None,
            Term::Literal(lit) => Some(lit),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

/// A single RDF statement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple { subject, predicate, object: object.into() }
    }
}

/// A set of triples. Duplicates collapse on insert and iteration is always
/// in canonical (subject, predicate, object) order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Union with another graph, consuming it.
    pub fn merge(&mut self, other: Graph) {
        self.triples.extend(other.triples);
    }

    /// Objects of `(subject, predicate, ?)`, in term order.
    pub fn objects<'a>(&'a self, subject: &'a Iri, predicate: &'a Iri) -> impl Iterator<Item = &'a Term> {
        self.triples
            .iter()
            .filter(move |t| &t.subject == subject && &t.predicate == predicate)
            .map(|t| &t.object)
    }

    /// Subjects carrying an `rdf:type` of the given class.
    pub fn subjects_of_type<'a>(&'a self, class: &'a Iri) -> impl Iterator<Item = &'a Iri> {
        let rdf_type = Iri::new(ns::RDF_TYPE).expect("well-known IRI");
        self.triples
            .iter()
            .filter(move |t| t.predicate == rdf_type && t.object.as_iri() == Some(class))
            .map(|t| &t.subject)
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph { triples: iter.into_iter().collect() }
    }
}

impl IntoIterator for Graph {
    type Item = Triple;
    type IntoIter = alloc::collections::btree_set::IntoIter<Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.into_iter()
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter);
    }
}

/// The `rdf:type` predicate.
pub fn rdf_type() -> Iri {
    Iri::new(ns::RDF_TYPE).expect("well-known IRI")
}

/// Escape a string for N-Triples / Turtle quoted form.
pub(crate) fn escape_string(value: &str, out: &mut String) {
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let mut buf = [0u16; 2];
                for unit in c.encode_utf16(&mut buf) {
                    out.push_str("\\u");
                    let hex = alloc::format!("{unit:04X}");
                    out.push_str(&hex);
                }
            }
            c => out.push(c),
        }
    }
}

pub(crate) fn render_term_ntriples(term: &Term, out: &mut String) {
    match term {
        Term::Iri(iri) => {
            out.push('<');
            out.push_str(iri.as_str());
            out.push('>');
        }
        Term::Literal(lit) => {
            out.push('"');
            escape_string(lit.lexical(), out);
            out.push('"');
            if lit.datatype() != Datatype::String {
                out.push_str("^^<");
                out.push_str(lit.datatype().iri());
                out.push('>');
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        render_term_ntriples(self, &mut s);
        write!(f, "{s}")
    }
}
