//! N-Triples serialization and parsing (no blank nodes, no language tags).

use alloc::string::{String, ToString};

use super::lex::{Lexer, ParseError, Spanned, Token};
use super::{ns, Graph, Iri, Literal, Term, Triple};

/// One triple per line in canonical set order; equal graphs produce equal bytes.
pub fn serialize(graph: &Graph) -> String {
    let mut out = String::new();
    for triple in graph.iter() {
        out.push('<');
        out.push_str(triple.subject.as_str());
        out.push_str("> <");
        out.push_str(triple.predicate.as_str());
        out.push_str("> ");
        super::render_term_ntriples(&triple.object, &mut out);
        out.push_str(" .\n");
    }
    out
}

/// Parse an N-Triples document. Duplicate statements collapse.
pub fn parse(input: &str) -> Result<Graph, ParseError> {
    let tokens = Lexer::new(input).tokenize()?;
    let mut graph = Graph::new();
    let mut cursor = tokens.iter().peekable();
    loop {
        let first = cursor.peek().expect("token stream ends with Eof");
        if first.token == Token::Eof {
            return Ok(graph);
        }
        let subject = expect_iri(cursor.next().unwrap(), "subject")?;
        let predicate = expect_iri(cursor.next().unwrap(), "predicate")?;
        let object = parse_object(&mut cursor)?;
        let end = cursor.next().unwrap();
        if end.token != Token::Dot {
            return Err(ParseError::new(end.line, end.column, alloc::format!("expected `.` to end statement, found {}", end.token)));
        }
        graph.insert(Triple { subject, predicate, object });
    }
}

fn expect_iri(spanned: &Spanned, position: &str) -> Result<Iri, ParseError> {
    match &spanned.token {
        Token::IriRef(iri) => {
            Iri::new(iri.clone()).map_err(|e| ParseError::new(spanned.line, spanned.column, e.to_string()))
        }
        Token::BlankNode(_) => Err(ParseError::new(spanned.line, spanned.column, "blank nodes are not supported")),
        other => Err(ParseError::new(spanned.line, spanned.column, alloc::format!("expected IRI in {position} position, found {other}"))),
    }
}

fn parse_object<'a, I>(cursor: &mut core::iter::Peekable<I>) -> Result<Term, ParseError>
where
    I: Iterator<Item = &'a Spanned>,
{
    let spanned = cursor.next().expect("token stream ends with Eof");
    match &spanned.token {
        Token::IriRef(iri) => Ok(Term::Iri(
            Iri::new(iri.clone()).map_err(|e| ParseError::new(spanned.line, spanned.column, e.to_string()))?,
        )),
        Token::BlankNode(_) => Err(ParseError::new(spanned.line, spanned.column, "blank nodes are not supported")),
        Token::Str(value) => {
            match cursor.peek().map(|s| &s.token) {
                Some(Token::CaretCaret) => {
                    cursor.next();
                    let dt = cursor.next().expect("token stream ends with Eof");
                    let Token::IriRef(dt_iri) = &dt.token else {
                        return Err(ParseError::new(dt.line, dt.column, "expected datatype IRI after ^^"));
                    };
                    literal_with_datatype(value, dt_iri, dt.line, dt.column).map(Term::Literal)
                }
                Some(Token::LangTag(tag)) => {
                    let s = cursor.next().unwrap();
                    Err(ParseError::new(s.line, s.column, alloc::format!("language tags are not supported (@{tag})")))
                }
                _ => Ok(Term::Literal(Literal::string(value.clone()))),
            }
        }
        other => Err(ParseError::new(spanned.line, spanned.column, alloc::format!("expected IRI or literal in object position, found {other}"))),
    }
}

pub(super) fn literal_with_datatype(value: &str, datatype_iri: &str, line: usize, column: usize) -> Result<Literal, ParseError> {
    let conv = |e: super::TermError| ParseError::new(line, column, e.to_string());
    match datatype_iri {
        ns::XSD_STRING => Ok(Literal::string(value)),
        ns::XSD_INTEGER => Literal::integer_lexical(value).map_err(conv),
        ns::XSD_DECIMAL => Literal::decimal(value).map_err(conv),
        other => Err(ParseError::new(line, column, alloc::format!("unsupported literal datatype <{other}>"))),
    }
}
