//! Turtle serialization and parsing.
//!
//! The supported grammar covers prefixed names, `a`, predicate lists with
//! `;`, object lists with `,`, quoted literals with `^^` datatypes, and bare
//! numeric literals. Blank nodes, collections and language tags are out.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lex::{Lexer, ParseError, Spanned, Token};
use super::{ns, Datatype, Graph, Iri, Literal, Term, Triple};

/// Serialize with the given prefix map, grouping statements by subject.
/// Parsing the output yields a graph set-equal to the input.
pub fn serialize(graph: &Graph, prefixes: &BTreeMap<String, Iri>) -> String {
    let mut out = String::new();
    for (label, iri) in prefixes {
        out.push_str("@prefix ");
        out.push_str(label);
        out.push_str(": <");
        out.push_str(iri.as_str());
        out.push_str("> .\n");
    }
    if !prefixes.is_empty() && !graph.is_empty() {
        out.push('\n');
    }

    let mut current_subject: Option<&Iri> = None;
    for triple in graph.iter() {
        if current_subject == Some(&triple.subject) {
            out.push_str(" ;\n    ");
        } else {
            if current_subject.is_some() {
                out.push_str(" .\n");
            }
            render_iri(&triple.subject, prefixes, &mut out);
            out.push_str("\n    ");
            current_subject = Some(&triple.subject);
        }
        if triple.predicate.as_str() == ns::RDF_TYPE {
            out.push('a');
        } else {
            render_iri(&triple.predicate, prefixes, &mut out);
        }
        out.push(' ');
        render_object(&triple.object, prefixes, &mut out);
    }
    if current_subject.is_some() {
        out.push_str(" .\n");
    }
    out
}

fn render_iri(iri: &Iri, prefixes: &BTreeMap<String, Iri>, out: &mut String) {
    // Longest matching prefix wins; fall back to an IRI reference.
    let mut best: Option<(&str, &str)> = None;
    for (label, base) in prefixes {
        if let Some(local) = iri.as_str().strip_prefix(base.as_str()) {
            if is_safe_local(local) && best.is_none_or(|(_, b)| base.as_str().len() > b.len()) {
                best = Some((label, base.as_str()));
            }
        }
    }
    match best {
        Some((label, base)) => {
            out.push_str(label);
            out.push(':');
            out.push_str(&iri.as_str()[base.len()..]);
        }
        None => {
            out.push('<');
            out.push_str(iri.as_str());
            out.push('>');
        }
    }
}

/// Conservative PN_LOCAL subset: what we emit is a strict subset of what we
/// accept back, so prefixed output always reparses.
fn is_safe_local(local: &str) -> bool {
    !local.is_empty()
        && local.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn render_object(term: &Term, prefixes: &BTreeMap<String, Iri>, out: &mut String) {
    match term {
        Term::Iri(iri) => render_iri(iri, prefixes, out),
        Term::Literal(lit) => match lit.datatype() {
            Datatype::String => {
                out.push('"');
                super::escape_string(lit.lexical(), out);
                out.push('"');
            }
            Datatype::Integer if bare_integer(lit.lexical()) => out.push_str(lit.lexical()),
            Datatype::Decimal if bare_decimal(lit.lexical()) => out.push_str(lit.lexical()),
            dt => {
                out.push('"');
                super::escape_string(lit.lexical(), out);
                out.push_str("\"^^");
                let dt_iri = Iri::new(dt.iri()).expect("well-known IRI");
                render_iri(&dt_iri, prefixes, out);
            }
        },
    }
}

fn bare_integer(lexical: &str) -> bool {
    super::is_integer_lexical(lexical)
}

/// Turtle's DECIMAL token requires digits on both sides of the point to
/// round-trip through our own lexer unchanged.
fn bare_decimal(lexical: &str) -> bool {
    let body = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    let Some((int, frac)) = body.split_once('.') else {
        return false;
    };
    !int.is_empty()
        && !frac.is_empty()
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.bytes().all(|b| b.is_ascii_digit())
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
    graph: Graph,
}

/// Parse a Turtle document into a graph.
pub fn parse(input: &str) -> Result<Graph, ParseError> {
    let tokens = Lexer::new(input).tokenize()?;
    let mut parser = Parser { tokens, pos: 0, prefixes: BTreeMap::new(), graph: Graph::new() };
    parser.document()?;
    Ok(parser.graph)
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let spanned = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        spanned
    }

    fn expect_dot(&mut self) -> Result<(), ParseError> {
        let s = self.next();
        if s.token == Token::Dot {
            Ok(())
        } else {
            Err(ParseError::new(s.line, s.column, alloc::format!("expected `.`, found {}", s.token)))
        }
    }

    fn document(&mut self) -> Result<(), ParseError> {
        loop {
            match &self.peek().token {
                Token::Eof => return Ok(()),
                Token::PrefixDecl => self.prefix_decl()?,
                _ => self.triples_block()?,
            }
        }
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        self.next(); // @prefix
        let name = self.next();
        let label = match &name.token {
            Token::PName { prefix, local } if local.is_empty() => prefix.clone(),
            other => {
                return Err(ParseError::new(name.line, name.column, alloc::format!("expected prefix label, found {other}")));
            }
        };
        let iri_tok = self.next();
        let Token::IriRef(iri) = &iri_tok.token else {
            return Err(ParseError::new(iri_tok.line, iri_tok.column, "expected IRI in @prefix"));
        };
        self.prefixes.insert(label, iri.clone());
        self.expect_dot()
    }

    fn triples_block(&mut self) -> Result<(), ParseError> {
        let subject = self.subject()?;
        loop {
            let predicate = self.predicate()?;
            loop {
                let object = self.object()?;
                self.graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
                if self.peek().token == Token::Comma {
                    self.next();
                    continue;
                }
                break;
            }
            match self.peek().token {
                Token::Semicolon => {
                    self.next();
                    // A dangling `;` before `.` is legal Turtle.
                    if self.peek().token == Token::Dot {
                        break;
                    }
                    continue;
                }
                _ => break,
            }
        }
        self.expect_dot()
    }

    fn resolve_pname(&self, spanned: &Spanned, prefix: &str, local: &str) -> Result<Iri, ParseError> {
        let Some(base) = self.prefixes.get(prefix) else {
            return Err(ParseError::new(spanned.line, spanned.column, alloc::format!("undeclared prefix {prefix:?}")));
        };
        Iri::new(alloc::format!("{base}{local}")).map_err(|e| ParseError::new(spanned.line, spanned.column, e.to_string()))
    }

    fn iri_term(&mut self, position: &str) -> Result<Iri, ParseError> {
        let s = self.next();
        match &s.token {
            Token::IriRef(iri) => Iri::new(iri.clone()).map_err(|e| ParseError::new(s.line, s.column, e.to_string())),
            Token::PName { prefix, local } => self.resolve_pname(&s, prefix, local),
            Token::BlankNode(_) => Err(ParseError::new(s.line, s.column, "blank nodes are not supported")),
            other => Err(ParseError::new(s.line, s.column, alloc::format!("expected IRI as {position}, found {other}"))),
        }
    }

    fn subject(&mut self) -> Result<Iri, ParseError> {
        self.iri_term("subject")
    }

    fn predicate(&mut self) -> Result<Iri, ParseError> {
        if self.peek().token == Token::A {
            self.next();
            return Ok(super::rdf_type());
        }
        self.iri_term("predicate")
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        let s = self.next();
        match &s.token {
            Token::IriRef(iri) => {
                Ok(Term::Iri(Iri::new(iri.clone()).map_err(|e| ParseError::new(s.line, s.column, e.to_string()))?))
            }
            Token::PName { prefix, local } => Ok(Term::Iri(self.resolve_pname(&s, prefix, local)?)),
            Token::BlankNode(_) => Err(ParseError::new(s.line, s.column, "blank nodes are not supported")),
            Token::Integer(lexical) => {
                Ok(Term::Literal(Literal::integer_lexical(lexical.clone()).map_err(|e| ParseError::new(s.line, s.column, e.to_string()))?))
            }
            Token::Decimal(lexical) => {
                Ok(Term::Literal(Literal::decimal(lexical.clone()).map_err(|e| ParseError::new(s.line, s.column, e.to_string()))?))
            }
            Token::Str(value) => {
                match &self.peek().token {
                    Token::CaretCaret => {
                        self.next();
                        let dt = self.next();
                        let dt_iri = match &dt.token {
                            Token::IriRef(iri) => iri.clone(),
                            Token::PName { prefix, local } => self.resolve_pname(&dt, prefix, local)?.as_str().to_string(),
                            other => {
                                return Err(ParseError::new(dt.line, dt.column, alloc::format!("expected datatype after ^^, found {other}")));
                            }
                        };
                        super::ntriples::literal_with_datatype(value, &dt_iri, dt.line, dt.column).map(Term::Literal)
                    }
                    Token::LangTag(tag) => {
                        Err(ParseError::new(s.line, s.column, alloc::format!("language tags are not supported (@{tag})")))
                    }
                    _ => Ok(Term::Literal(Literal::string(value.clone()))),
                }
            }
            other => Err(ParseError::new(s.line, s.column, alloc::format!("expected term in object position, found {other}"))),
        }
    }
}
