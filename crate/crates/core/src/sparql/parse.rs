//! Hand-rolled tokenizer and recursive-descent parser for the query subset.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rdf::{ns, Iri, Literal};

use super::{
    AggregateFunction, CompareOp, Filter, FilterValue, PatternTerm, Query, QueryParseError, SelectItem, TriplePattern,
    VarOrIri,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Var(String),
    IriRef(String),
    PName { prefix: String, local: String },
    Str(String),
    Integer(String),
    Decimal(String),
    /// Bare word; keywords are matched case-insensitively.
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Dot,
    Semicolon,
    Comma,
    CaretCaret,
    Compare(CompareOp),
    /// Property-path punctuation, recognized only to reject it by name.
    PathOp(char),
    Eof,
}

impl core::fmt::Display for Token {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Token::Var(v) => write!(f, "?{v}"),
            Token::IriRef(i) => write!(f, "<{i}>"),
            Token::PName { prefix, local } => write!(f, "{prefix}:{local}"),
            Token::Str(_) => write!(f, "string literal"),
            Token::Integer(v) | Token::Decimal(v) => write!(f, "{v}"),
            Token::Ident(w) => write!(f, "{w}"),
            Token::LParen => write!(f, "("),
            Token::RParen => write!(f, ")"),
            Token::LBrace => write!(f, "{{"),
            Token::RBrace => write!(f, "}}"),
            Token::Dot => write!(f, "."),
            Token::Semicolon => write!(f, ";"),
            Token::Comma => write!(f, ","),
            Token::CaretCaret => write!(f, "^^"),
            Token::Compare(op) => write!(f, "{}", op.symbol()),
            Token::PathOp(c) => write!(f, "{c}"),
            Token::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> QueryParseError {
    QueryParseError::Syntax { line, column, message: message.into() }
}

struct Tokenizer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Tokenizer<'a> {
    fn new(input: &'a str) -> Self {
        Tokenizer { chars: input.chars().peekable(), line: 1, column: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        if let Some(c) = c {
            if c == '\n' {
                self.line += 1;
                self.column = 1;
            } else {
                self.column += 1;
            }
        }
        c
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn word(&mut self) -> String {
        let mut w = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                w.push(c);
                self.bump();
            } else {
                break;
            }
        }
        w
    }

    fn tokenize(mut self) -> Result<Vec<Spanned>, QueryParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (line, column) = (self.line, self.column);
            let Some(c) = self.peek() else {
                out.push(Spanned { token: Token::Eof, line, column });
                return Ok(out);
            };
            let token = match c {
                '?' | '$' => {
                    self.bump();
                    let name = self.word();
                    if name.is_empty() {
                        return Err(syntax(line, column, "expected variable name after ?"));
                    }
                    Token::Var(name)
                }
                '<' => self.angle()?,
                '>' => {
                    self.bump();
                    if self.peek() == Some('=') {
                        self.bump();
                        Token::Compare(CompareOp::Ge)
                    } else {
                        Token::Compare(CompareOp::Gt)
                    }
                }
                '=' => {
                    self.bump();
                    Token::Compare(CompareOp::Eq)
                }
                '!' => {
                    self.bump();
                    if self.peek() == Some('=') {
                        self.bump();
                        Token::Compare(CompareOp::Ne)
                    } else {
                        return Err(syntax(line, column, "expected `!=`"));
                    }
                }
                '(' => {
                    self.bump();
                    Token::LParen
                }
                ')' => {
                    self.bump();
                    Token::RParen
                }
                '{' => {
                    self.bump();
                    Token::LBrace
                }
                '}' => {
                    self.bump();
                    Token::RBrace
                }
                ';' => {
                    self.bump();
                    Token::Semicolon
                }
                ',' => {
                    self.bump();
                    Token::Comma
                }
                '^' => {
                    self.bump();
                    if self.peek() == Some('^') {
                        self.bump();
                        Token::CaretCaret
                    } else {
                        Token::PathOp('^')
                    }
                }
                '/' | '|' | '*' => {
                    self.bump();
                    Token::PathOp(c)
                }
                '"' => self.string(line, column)?,
                '.' => {
                    self.bump();
                    match self.peek() {
                        Some(d) if d.is_ascii_digit() => self.number(line, column, String::from("."))?,
                        _ => Token::Dot,
                    }
                }
                '+' | '-' => {
                    self.bump();
                    match self.peek() {
                        Some(d) if d.is_ascii_digit() || d == '.' => self.number(line, column, String::from(c))?,
                        _ if c == '+' => Token::PathOp('+'),
                        _ => return Err(syntax(line, column, "unexpected `-`")),
                    }
                }
                c if c.is_ascii_digit() => self.number(line, column, String::new())?,
                c if c.is_ascii_alphabetic() || c == '_' || c == ':' => self.pname_or_ident(line, column)?,
                other => return Err(syntax(line, column, alloc::format!("unexpected character {other:?}"))),
            };
            out.push(Spanned { token, line, column });
        }
    }

    /// `<` is either an IRI reference or a comparison; scan ahead for a `>`
    /// reachable through IRI-safe characters.
    fn angle(&mut self) -> Result<Token, QueryParseError> {
        let lookahead = self.chars.clone();
        let mut iri = String::new();
        let mut closed = false;
        for c in lookahead.skip(1) {
            if c == '>' {
                closed = true;
                break;
            }
            if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
                break;
            }
            iri.push(c);
        }
        if closed {
            self.bump(); // '<'
            for _ in 0..iri.chars().count() {
                self.bump();
            }
            self.bump(); // '>'
            Ok(Token::IriRef(iri))
        } else {
            self.bump();
            if self.peek() == Some('=') {
                self.bump();
                Ok(Token::Compare(CompareOp::Le))
            } else {
                Ok(Token::Compare(CompareOp::Lt))
            }
        }
    }

    fn string(&mut self, line: usize, column: usize) -> Result<Token, QueryParseError> {
        self.bump(); // opening quote
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(Token::Str(value)),
                Some('\\') => match self.bump() {
                    Some('t') => value.push('\t'),
                    Some('n') => value.push('\n'),
                    Some('r') => value.push('\r'),
                    Some('"') => value.push('"'),
                    Some('\'') => value.push('\''),
                    Some('\\') => value.push('\\'),
                    other => return Err(syntax(line, column, alloc::format!("unknown string escape {other:?}"))),
                },
                Some('\n') | None => return Err(syntax(line, column, "unterminated string literal")),
                Some(c) => value.push(c),
            }
        }
    }

    fn number(&mut self, line: usize, column: usize, mut lexical: String) -> Result<Token, QueryParseError> {
        let mut seen_dot = lexical.contains('.');
        while let Some(c) = self.peek() {
            match c {
                '0'..='9' => {
                    lexical.push(c);
                    self.bump();
                }
                '.' if !seen_dot => {
                    seen_dot = true;
                    lexical.push('.');
                    self.bump();
                }
                _ => break,
            }
        }
        if !lexical.bytes().any(|b| b.is_ascii_digit()) {
            return Err(syntax(line, column, "malformed numeric literal"));
        }
        if seen_dot {
            Ok(Token::Decimal(lexical))
        } else {
            Ok(Token::Integer(lexical))
        }
    }

    fn pname_or_ident(&mut self, _line: usize, _column: usize) -> Result<Token, QueryParseError> {
        let mut text = String::new();
        let mut colon = None;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' || (c == ':' && colon.is_none()) {
                if c == ':' {
                    colon = Some(text.len());
                }
                text.push(c);
                self.bump();
            } else {
                break;
            }
        }
        match colon {
            Some(at) => Ok(Token::PName { prefix: text[..at].to_string(), local: text[at + 1..].to_string() }),
            None => Ok(Token::Ident(text)),
        }
    }
}

/// Features outside the subset, rejected by name.
const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "VALUES", "EXISTS", "DISTINCT", "REDUCED", "HAVING",
    "CONSTRUCT", "ASK", "DESCRIBE", "INSERT", "DELETE", "AVG", "MIN", "MAX", "SAMPLE", "GROUP_CONCAT",
];

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    prefixes: BTreeMap<String, Iri>,
}

/// Parse query text into a validated [`Query`].
pub fn parse_query(input: &str) -> Result<Query, QueryParseError> {
    let tokens = Tokenizer::new(input).tokenize()?;
    let mut parser = Parser { tokens, pos: 0, prefixes: BTreeMap::new() };
    let query = parser.query()?;
    query.validate()?;
    Ok(query)
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

    fn keyword_is(&self, word: &str) -> bool {
        matches!(&self.peek().token, Token::Ident(w) if w.eq_ignore_ascii_case(word))
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), QueryParseError> {
        let s = self.next();
        match &s.token {
            Token::Ident(w) if w.eq_ignore_ascii_case(word) => Ok(()),
            other => Err(syntax(s.line, s.column, alloc::format!("expected {word}, found {other}"))),
        }
    }

    fn reject_unsupported(&self, s: &Spanned) -> Result<(), QueryParseError> {
        if let Token::Ident(w) = &s.token {
            let upper = w.to_uppercase();
            if UNSUPPORTED_KEYWORDS.contains(&upper.as_str()) {
                return Err(QueryParseError::Unsupported { feature: upper, line: s.line, column: s.column });
            }
        }
        if let Token::PathOp(c) = &s.token {
            return Err(QueryParseError::Unsupported { feature: alloc::format!("property paths ({c})"), line: s.line, column: s.column });
        }
        Ok(())
    }

    fn query(&mut self) -> Result<Query, QueryParseError> {
        while self.keyword_is("PREFIX") {
            self.next();
            let name = self.next();
            let label = match &name.token {
                Token::PName { prefix, local } if local.is_empty() => prefix.clone(),
                other => return Err(syntax(name.line, name.column, alloc::format!("expected prefix label, found {other}"))),
            };
            let iri_tok = self.next();
            let Token::IriRef(iri) = &iri_tok.token else {
                return Err(syntax(iri_tok.line, iri_tok.column, "expected IRI in PREFIX declaration"));
            };
            let iri = Iri::new(iri.clone()).map_err(|e| syntax(iri_tok.line, iri_tok.column, e.to_string()))?;
            self.prefixes.insert(label, iri);
        }

        self.reject_unsupported(self.peek())?;
        self.expect_keyword("SELECT")?;
        self.reject_unsupported(self.peek())?;

        let mut select = Vec::new();
        loop {
            match &self.peek().token {
                Token::Var(_) => {
                    let Token::Var(v) = self.next().token else { unreachable!() };
                    select.push(SelectItem::Var(v));
                }
                Token::LParen => {
                    self.next();
                    let func_tok = self.next();
                    let function = match &func_tok.token {
                        Token::Ident(w) if w.eq_ignore_ascii_case("COUNT") => AggregateFunction::Count,
                        Token::Ident(w) if w.eq_ignore_ascii_case("SUM") => AggregateFunction::Sum,
                        other => {
                            self.reject_unsupported(&func_tok)?;
                            return Err(syntax(func_tok.line, func_tok.column, alloc::format!("expected COUNT or SUM, found {other}")));
                        }
                    };
                    self.expect_token(Token::LParen)?;
                    let var = self.expect_var()?;
                    self.expect_token(Token::RParen)?;
                    self.expect_keyword("AS")?;
                    let alias = self.expect_var()?;
                    self.expect_token(Token::RParen)?;
                    select.push(SelectItem::Aggregate { function, var, alias });
                }
                Token::PathOp('*') => {
                    let s = self.next();
                    return Err(QueryParseError::Unsupported { feature: "SELECT *".to_string(), line: s.line, column: s.column });
                }
                _ => break,
            }
        }
        if select.is_empty() {
            let s = self.peek();
            return Err(syntax(s.line, s.column, "SELECT needs at least one variable or aggregate"));
        }

        if self.keyword_is("WHERE") {
            self.next();
        }
        self.expect_token(Token::LBrace)?;
        let mut patterns = Vec::new();
        let mut filters = Vec::new();
        self.group_graph_pattern(&mut patterns, &mut filters)?;

        let mut group_by = None;
        let mut order_by_var = None;
        let mut order_ascending = true;
        let mut limit = None;
        let mut offset = None;
        loop {
            let s = self.peek().clone();
            match &s.token {
                Token::Ident(w) if w.eq_ignore_ascii_case("GROUP") => {
                    self.next();
                    self.expect_keyword("BY")?;
                    group_by = Some(self.expect_var()?);
                }
                Token::Ident(w) if w.eq_ignore_ascii_case("ORDER") => {
                    self.next();
                    self.expect_keyword("BY")?;
                    match &self.peek().token {
                        Token::Ident(w) if w.eq_ignore_ascii_case("ASC") || w.eq_ignore_ascii_case("DESC") => {
                            order_ascending = w.eq_ignore_ascii_case("ASC");
                            self.next();
                            self.expect_token(Token::LParen)?;
                            order_by_var = Some(self.expect_var()?);
                            self.expect_token(Token::RParen)?;
                        }
                        _ => {
                            order_by_var = Some(self.expect_var()?);
                        }
                    }
                }
                Token::Ident(w) if w.eq_ignore_ascii_case("LIMIT") => {
                    self.next();
                    limit = Some(self.expect_count()?);
                }
                Token::Ident(w) if w.eq_ignore_ascii_case("OFFSET") => {
                    self.next();
                    offset = Some(self.expect_count()?);
                }
                Token::Eof => break,
                other => {
                    self.reject_unsupported(&s)?;
                    return Err(syntax(s.line, s.column, alloc::format!("unexpected {other} after graph pattern")));
                }
            }
        }

        Ok(Query {
            prefixes: core::mem::take(&mut self.prefixes),
            select,
            patterns,
            filters,
            group_by,
            order_by_var,
            order_ascending,
            limit,
            offset,
        })
    }

    fn group_graph_pattern(&mut self, patterns: &mut Vec<TriplePattern>, filters: &mut Vec<Filter>) -> Result<(), QueryParseError> {
        loop {
            let s = self.peek().clone();
            match &s.token {
                Token::RBrace => {
                    self.next();
                    return Ok(());
                }
                Token::Eof => return Err(syntax(s.line, s.column, "unterminated graph pattern, expected `}`")),
                Token::LBrace => {
                    return Err(QueryParseError::Unsupported { feature: "nested group graph patterns".to_string(), line: s.line, column: s.column });
                }
                Token::Ident(w) if w.eq_ignore_ascii_case("FILTER") => {
                    self.next();
                    filters.push(self.filter()?);
                    // An optional dot may follow a filter.
                    if self.peek().token == Token::Dot {
                        self.next();
                    }
                }
                Token::Ident(w) if w.eq_ignore_ascii_case("SELECT") => {
                    return Err(QueryParseError::Unsupported { feature: "subqueries".to_string(), line: s.line, column: s.column });
                }
                _ => {
                    self.reject_unsupported(&s)?;
                    self.triples_same_subject(patterns)?;
                    match &self.peek().token {
                        Token::Dot => {
                            self.next();
                        }
                        Token::RBrace | Token::Eof => {}
                        Token::Ident(w) if w.eq_ignore_ascii_case("FILTER") => {}
                        other => {
                            let s = self.peek();
                            self.reject_unsupported(s)?;
                            return Err(syntax(s.line, s.column, alloc::format!("expected `.`, FILTER or `}}`, found {other}")));
                        }
                    }
                }
            }
        }
    }

    fn triples_same_subject(&mut self, patterns: &mut Vec<TriplePattern>) -> Result<(), QueryParseError> {
        let subject = self.var_or_iri("subject")?;
        loop {
            let predicate = self.predicate()?;
            loop {
                let object = self.pattern_term()?;
                patterns.push(TriplePattern { subject: subject.clone(), predicate: predicate.clone(), object });
                if self.peek().token == Token::Comma {
                    self.next();
                    continue;
                }
                break;
            }
            if self.peek().token == Token::Semicolon {
                self.next();
                // Dangling `;` before `.` or `}` is tolerated.
                if matches!(self.peek().token, Token::Dot | Token::RBrace) {
                    break;
                }
                continue;
            }
            break;
        }
        Ok(())
    }

    fn predicate(&mut self) -> Result<VarOrIri, QueryParseError> {
        if let Token::Ident(w) = &self.peek().token {
            if w == "a" {
                self.next();
                return Ok(VarOrIri::Iri(crate::rdf::rdf_type()));
            }
        }
        let v = self.var_or_iri("predicate")?;
        // Path punctuation right after a predicate is a property path.
        if let Token::PathOp(_) = self.peek().token {
            let s = self.peek();
            return Err(QueryParseError::Unsupported { feature: "property paths".to_string(), line: s.line, column: s.column });
        }
        Ok(v)
    }

    fn var_or_iri(&mut self, position: &str) -> Result<VarOrIri, QueryParseError> {
        let s = self.next();
        match &s.token {
            Token::Var(v) => Ok(VarOrIri::Var(v.clone())),
            Token::IriRef(iri) => Ok(VarOrIri::Iri(Iri::new(iri.clone()).map_err(|e| syntax(s.line, s.column, e.to_string()))?)),
            Token::PName { prefix, local } => Ok(VarOrIri::Iri(self.resolve(&s, prefix, local)?)),
            other => {
                self.reject_unsupported(&s)?;
                Err(syntax(s.line, s.column, alloc::format!("expected variable or IRI as {position}, found {other}")))
            }
        }
    }

    fn pattern_term(&mut self) -> Result<PatternTerm, QueryParseError> {
        let s = self.next();
        match &s.token {
            Token::Var(v) => Ok(PatternTerm::Var(v.clone())),
            Token::IriRef(iri) => Ok(PatternTerm::Iri(Iri::new(iri.clone()).map_err(|e| syntax(s.line, s.column, e.to_string()))?)),
            Token::PName { prefix, local } => Ok(PatternTerm::Iri(self.resolve(&s, prefix, local)?)),
            Token::Integer(lex) => Ok(PatternTerm::Literal(
                Literal::integer_lexical(lex.clone()).map_err(|e| syntax(s.line, s.column, e.to_string()))?,
            )),
            Token::Decimal(lex) => {
                Ok(PatternTerm::Literal(Literal::decimal(lex.clone()).map_err(|e| syntax(s.line, s.column, e.to_string()))?))
            }
            Token::Str(value) => Ok(PatternTerm::Literal(self.typed_literal(value.clone())?)),
            other => {
                self.reject_unsupported(&s)?;
                Err(syntax(s.line, s.column, alloc::format!("expected term in object position, found {other}")))
            }
        }
    }

    fn typed_literal(&mut self, value: String) -> Result<Literal, QueryParseError> {
        if self.peek().token != Token::CaretCaret {
            return Ok(Literal::string(value));
        }
        self.next();
        let dt = self.next();
        let dt_iri = match &dt.token {
            Token::IriRef(iri) => iri.clone(),
            Token::PName { prefix, local } => self.resolve(&dt, prefix, local)?.as_str().to_string(),
            other => return Err(syntax(dt.line, dt.column, alloc::format!("expected datatype IRI after ^^, found {other}"))),
        };
        match dt_iri.as_str() {
            ns::XSD_STRING => Ok(Literal::string(value)),
            ns::XSD_INTEGER => Literal::integer_lexical(value).map_err(|e| syntax(dt.line, dt.column, e.to_string())),
            ns::XSD_DECIMAL => Literal::decimal(value).map_err(|e| syntax(dt.line, dt.column, e.to_string())),
            other => Err(syntax(dt.line, dt.column, alloc::format!("unsupported literal datatype <{other}>"))),
        }
    }

    fn filter(&mut self) -> Result<Filter, QueryParseError> {
        self.expect_token(Token::LParen)?;
        let var = self.expect_var()?;
        let op_tok = self.next();
        let Token::Compare(op) = op_tok.token else {
            return Err(syntax(op_tok.line, op_tok.column, alloc::format!("expected comparison operator, found {}", op_tok.token)));
        };
        let value_tok = self.next();
        let value = match &value_tok.token {
            Token::IriRef(iri) => {
                FilterValue::Iri(Iri::new(iri.clone()).map_err(|e| syntax(value_tok.line, value_tok.column, e.to_string()))?)
            }
            Token::PName { prefix, local } => FilterValue::Iri(self.resolve(&value_tok, prefix, local)?),
            Token::Integer(lex) => FilterValue::Literal(
                Literal::integer_lexical(lex.clone()).map_err(|e| syntax(value_tok.line, value_tok.column, e.to_string()))?,
            ),
            Token::Decimal(lex) => FilterValue::Literal(
                Literal::decimal(lex.clone()).map_err(|e| syntax(value_tok.line, value_tok.column, e.to_string()))?,
            ),
            Token::Str(v) => FilterValue::Literal(self.typed_literal(v.clone())?),
            other => {
                self.reject_unsupported(&value_tok)?;
                return Err(syntax(value_tok.line, value_tok.column, alloc::format!("expected constant in FILTER, found {other}")));
            }
        };
        self.expect_token(Token::RParen)?;
        Ok(Filter { var, op, value })
    }

    fn resolve(&self, s: &Spanned, prefix: &str, local: &str) -> Result<Iri, QueryParseError> {
        let Some(base) = self.prefixes.get(prefix) else {
            return Err(syntax(s.line, s.column, alloc::format!("undeclared prefix {prefix:?}")));
        };
        Iri::new(alloc::format!("{}{}", base.as_str(), local)).map_err(|e| syntax(s.line, s.column, e.to_string()))
    }

    fn expect_var(&mut self) -> Result<String, QueryParseError> {
        let s = self.next();
        match s.token {
            Token::Var(v) => Ok(v),
            other => Err(syntax(s.line, s.column, alloc::format!("expected variable, found {other}"))),
        }
    }

    fn expect_count(&mut self) -> Result<usize, QueryParseError> {
        let s = self.next();
        match &s.token {
            Token::Integer(lex) => lex
                .parse::<usize>()
                .map_err(|_| syntax(s.line, s.column, alloc::format!("expected a non-negative count, found {lex}"))),
            other => Err(syntax(s.line, s.column, alloc::format!("expected a non-negative count, found {other}"))),
        }
    }

    fn expect_token(&mut self, expected: Token) -> Result<(), QueryParseError> {
        let s = self.next();
        if s.token == expected {
            Ok(())
        } else {
            Err(syntax(s.line, s.column, alloc::format!("expected {expected}, found {}", s.token)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn minimal_bgp() {
        let q = parse_query("PREFIX blondie: <https://w3id.org/blondie#>\nSELECT ?b WHERE { ?b a blondie:BitcoinBlock }").unwrap();
        assert_eq!(q.patterns.len(), 1);
        assert_eq!(q.select.len(), 1);
        assert!(matches!(&q.patterns[0].predicate, VarOrIri::Iri(p) if p.as_str().ends_with("#type")));
    }

    #[test]
    fn filter_comparison_parses() {
        let q = parse_query(
            "PREFIX blondie: <https://w3id.org/blondie#>\nSELECT ?b ?h WHERE { ?b blondie:height ?h . FILTER(?h < 1000) }",
        )
        .unwrap();
        assert_eq!(q.filters.len(), 1);
        assert_eq!(q.filters[0].op, CompareOp::Lt);
        assert_eq!(q.filters[0].value, FilterValue::Literal(Literal::integer(1000)));
    }

    #[test]
    fn optional_is_a_named_unsupported_feature() {
        let err = parse_query("SELECT ?s WHERE { ?s <urn:x:p> ?o . OPTIONAL { ?s <urn:x:q> ?z } }").unwrap_err();
        assert!(matches!(err, QueryParseError::Unsupported { ref feature, .. } if feature == "OPTIONAL"), "{err:?}");
    }

    #[test]
    fn union_subquery_paths_and_distinct_are_rejected() {
        let cases = [
            ("SELECT ?s WHERE { { ?s <urn:x:p> ?o } UNION { ?s <urn:x:q> ?o } }", "nested group"),
            ("SELECT ?s WHERE { SELECT ?s WHERE { ?s <urn:x:p> ?o } }", "subqueries"),
            ("SELECT ?s WHERE { ?s <urn:x:p>/<urn:x:q> ?o }", "property paths"),
            ("SELECT DISTINCT ?s WHERE { ?s <urn:x:p> ?o }", "DISTINCT"),
        ];
        for (text, _hint) in cases {
            let err = parse_query(text).unwrap_err();
            assert!(matches!(err, QueryParseError::Unsupported { .. }), "{text} → {err:?}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_query("SELECT ?s WHERE { ?s <urn:x:p> }").unwrap_err();
        let QueryParseError::Syntax { line, column, .. } = err else {
            panic!("expected syntax error, got {err:?}")
        };
        assert_eq!(line, 1);
        assert!(column > 20);
    }

    #[test]
    fn aggregate_group_order_limit_offset() {
        let q = parse_query(
            "PREFIX b: <urn:b:>\nSELECT ?g (SUM(?v) AS ?total) WHERE { ?g b:value ?v } GROUP BY ?g ORDER BY DESC(?g) LIMIT 5 OFFSET 2",
        )
        .unwrap();
        assert_eq!(q.group_by.as_deref(), Some("g"));
        assert_eq!(q.order_by_var.as_deref(), Some("g"));
        assert!(!q.order_ascending);
        assert_eq!((q.limit, q.offset), (Some(5), Some(2)));
    }

    #[test]
    fn semicolon_and_comma_abbreviations() {
        let q = parse_query("SELECT ?s ?o WHERE { ?s a <urn:x:C> ; <urn:x:p> ?o , \"lit\" . }").unwrap();
        assert_eq!(q.patterns.len(), 3);
    }

    #[test]
    fn select_without_vars_is_an_error() {
        assert!(matches!(parse_query("SELECT WHERE { ?s ?p ?o }"), Err(QueryParseError::Syntax { .. })));
    }

    #[test]
    fn filter_var_must_be_bound() {
        let err = parse_query("SELECT ?s WHERE { ?s <urn:x:p> ?o . FILTER(?ghost > 1) }").unwrap_err();
        assert!(matches!(err, QueryParseError::Validation { .. }));
    }

    #[test]
    fn typed_literals_in_object_position() {
        let q = parse_query("PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\nSELECT ?s WHERE { ?s <urn:x:p> \"5\"^^xsd:decimal }").unwrap();
        assert_eq!(q.patterns[0].object, PatternTerm::Literal(Literal::decimal("5").unwrap()));
    }

    #[test]
    fn angle_disambiguation_between_iri_and_less_than() {
        let q = parse_query("SELECT ?s WHERE { ?s <urn:x:p> ?v . FILTER(?v <= 10) FILTER(?v < 20) }").unwrap();
        assert_eq!(q.filters.len(), 2);
        assert_eq!(q.filters[0].op, CompareOp::Le);
        assert_eq!(q.filters[1].op, CompareOp::Lt);
        let q = parse_query("SELECT ?s WHERE { ?s <urn:x:p> ?v . FILTER(?v = <urn:x:o>) }").unwrap();
        assert_eq!(q.filters[0].value, FilterValue::Iri(Iri::new("urn:x:o").unwrap()));
    }
}
