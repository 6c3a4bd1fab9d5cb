//! Shared tokenizer for the N-Triples and Turtle parsers.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// A parse failure with 1-based line/column of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    IriRef(String),
    /// `prefix:local`; the prefix may be empty.
    PName { prefix: String, local: String },
    /// Quoted string with escapes already decoded.
    Str(String),
    /// Bare numeric token, lexical form preserved.
    Integer(String),
    Decimal(String),
    /// `@prefix`
    PrefixDecl,
    /// Language tag such as `@en`; recognized so it can be rejected.
    LangTag(String),
    /// `_:label`; recognized so it can be rejected.
    BlankNode(String),
    A,
    Dot,
    Semicolon,
    Comma,
    CaretCaret,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::IriRef(i) => write!(f, "<{i}>"),
            Token::PName { prefix, local } => write!(f, "{prefix}:{local}"),
            Token::Str(_) => write!(f, "string literal"),
            Token::Integer(v) | Token::Decimal(v) => write!(f, "{v}"),
            Token::PrefixDecl => write!(f, "@prefix"),
            Token::LangTag(t) => write!(f, "@{t}"),
            Token::BlankNode(l) => write!(f, "_:{l}"),
            Token::A => write!(f, "a"),
            Token::Dot => write!(f, "."),
            Token::Semicolon => write!(f, ";"),
            Token::Comma => write!(f, ","),
            Token::CaretCaret => write!(f, "^^"),
            Token::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub line: usize,
    pub column: usize,
}

pub struct Lexer<'a> {
    input: &'a str,
    chars: core::iter::Peekable<core::str::CharIndices<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(input: &'a str) -> Self {
        Lexer { input, chars: input.char_indices().peekable(), line: 1, column: 1 }
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let next = self.chars.next();
        if let Some((_, c)) = next {
            if c == '\n' {
                self.line += 1;
                self.column = 1;
            } else {
                self.column += 1;
            }
        }
        next
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn error(&self, line: usize, column: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(line, column, msg)
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

    /// Produce every token up front. Keeps the parsers simple.
    pub fn tokenize(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (line, column) = (self.line, self.column);
            let Some(c) = self.peek() else {
                out.push(Spanned { token: Token::Eof, line, column });
                return Ok(out);
            };
            let token = match c {
                '<' => self.lex_iri()?,
                '"' => self.lex_string()?,
                '.' => {
                    // A dot can start a decimal (".5"); otherwise it terminates.
                    self.bump();
                    match self.peek() {
                        Some(d) if d.is_ascii_digit() => self.lex_number_tail(line, column, String::from("."))?,
                        _ => Token::Dot,
                    }
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
                        return Err(self.error(line, column, "expected `^^`"));
                    }
                }
                '@' => {
                    self.bump();
                    let word = self.lex_word();
                    if word == "prefix" {
                        Token::PrefixDecl
                    } else {
                        Token::LangTag(word)
                    }
                }
                '_' => {
                    self.bump();
                    if self.peek() == Some(':') {
                        self.bump();
                        Token::BlankNode(self.lex_word())
                    } else {
                        return Err(self.error(line, column, "unexpected `_`"));
                    }
                }
                c if c.is_ascii_digit() || c == '+' || c == '-' => {
                    self.bump();
                    self.lex_number_tail(line, column, String::from(c))?
                }
                c if is_pname_start(c) => self.lex_pname_or_keyword(line, column)?,
                other => {
                    return Err(self.error(line, column, alloc::format!("unexpected character {other:?}")));
                }
            };
            out.push(Spanned { token, line, column });
        }
    }

    fn lex_word(&mut self) -> String {
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        word
    }

    fn lex_iri(&mut self) -> Result<Token, ParseError> {
        let (line, column) = (self.line, self.column);
        self.bump(); // '<'
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some((_, '>')) => return Ok(Token::IriRef(iri)),
                Some((_, c)) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') => {
                    return Err(self.error(line, column, alloc::format!("illegal character {c:?} in IRI")));
                }
                Some((_, c)) => iri.push(c),
                None => return Err(self.error(line, column, "unterminated IRI reference")),
            }
        }
    }

    fn lex_string(&mut self) -> Result<Token, ParseError> {
        let (line, column) = (self.line, self.column);
        self.bump(); // opening quote
        let mut value = String::new();
        loop {
            match self.bump() {
                Some((_, '"')) => return Ok(Token::Str(value)),
                Some((_, '\\')) => {
                    let (eline, ecol) = (self.line, self.column);
                    match self.bump() {
                        Some((_, 't')) => value.push('\t'),
                        Some((_, 'b')) => value.push('\u{8}'),
                        Some((_, 'n')) => value.push('\n'),
                        Some((_, 'r')) => value.push('\r'),
                        Some((_, 'f')) => value.push('\u{c}'),
                        Some((_, '"')) => value.push('"'),
                        Some((_, '\'')) => value.push('\''),
                        Some((_, '\\')) => value.push('\\'),
                        Some((_, 'u')) => value.push(self.lex_unicode_escape(4, eline, ecol)?),
                        Some((_, 'U')) => value.push(self.lex_unicode_escape(8, eline, ecol)?),
                        Some((_, other)) => {
                            return Err(self.error(eline, ecol, alloc::format!("unknown escape \\{other}")));
                        }
                        None => return Err(self.error(line, column, "unterminated string literal")),
                    }
                }
                Some((_, '\n')) => return Err(self.error(line, column, "newline in string literal")),
                Some((_, c)) => value.push(c),
                None => return Err(self.error(line, column, "unterminated string literal")),
            }
        }
    }

    fn lex_unicode_escape(&mut self, width: usize, line: usize, column: usize) -> Result<char, ParseError> {
        let mut code = 0u32;
        for _ in 0..width {
            let Some((_, c)) = self.bump() else {
                return Err(self.error(line, column, "truncated unicode escape"));
            };
            let Some(digit) = c.to_digit(16) else {
                return Err(self.error(line, column, "non-hex digit in unicode escape"));
            };
            code = code * 16 + digit;
        }
        // Surrogate halves are matched up by the caller side being UTF-16
        // aware on output only; reject them on input.
        char::from_u32(code).ok_or_else(|| self.error(line, column, "escape is not a valid scalar value"))
    }

    fn lex_number_tail(&mut self, line: usize, column: usize, mut lexical: String) -> Result<Token, ParseError> {
        let mut seen_dot = lexical.contains('.');
        let mut seen_digit = lexical.bytes().any(|b| b.is_ascii_digit());
        while let Some(c) = self.peek() {
            match c {
                '0'..='9' => {
                    seen_digit = true;
                    lexical.push(c);
                    self.bump();
                }
                '.' if !seen_dot => {
                    // Trailing `.` after digits is a statement terminator,
                    // not part of the number; only consume when a digit follows.
                    let mut lookahead = self.chars.clone();
                    lookahead.next();
                    match lookahead.peek() {
                        Some(&(_, d)) if d.is_ascii_digit() => {
                            seen_dot = true;
                            lexical.push('.');
                            self.bump();
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        if !seen_digit {
            return Err(self.error(line, column, alloc::format!("malformed numeric literal {lexical:?}")));
        }
        if seen_dot {
            Ok(Token::Decimal(lexical))
        } else {
            Ok(Token::Integer(lexical))
        }
    }

    fn lex_pname_or_keyword(&mut self, line: usize, column: usize) -> Result<Token, ParseError> {
        let start = self.chars.peek().map(|&(i, _)| i).unwrap_or(self.input.len());
        let mut end = start;
        let mut colon = None;
        while let Some(c) = self.peek() {
            if is_pname_char(c) || (c == ':' && colon.is_none()) {
                if c == ':' {
                    colon = Some(end);
                }
                end += c.len_utf8();
                self.bump();
            } else {
                break;
            }
        }
        let text = &self.input[start..end];
        match colon {
            Some(colon_at) => {
                let prefix = &self.input[start..colon_at];
                let local = &self.input[colon_at + 1..end];
                Ok(Token::PName { prefix: prefix.to_string(), local: local.to_string() })
            }
            None => match text {
                "a" => Ok(Token::A),
                other => Err(self.error(line, column, alloc::format!("unexpected bare word {other:?}"))),
            },
        }
    }
}

fn is_pname_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == ':' || c == '_'
}

fn is_pname_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}
