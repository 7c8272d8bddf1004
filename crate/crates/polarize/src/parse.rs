//! Surface syntax for ring elements and divisor-class identities.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! identity := expr "~" expr
//! expr     := ["-"] term { ("+" | "-") term }
//! term     := [int] ( "D" | "[" ringexpr "]" "*" "D" )
//! ringexpr := rsum
//! rsum     := ["-"] rterm { ("+" | "-") rterm }
//! rterm    := rfactor { "*" rfactor }
//! rfactor  := rbase [ "^" uint ]
//! rbase    := uint | generator | "(" rsum ")"
//! ```
//!
//! `D` is the base divisor, `[expr]*D` the pullback of `D` along the
//! endomorphism `expr`. Generator letters are fixed per ring: `i`
//! (Gaussian), `a` and `j` (SixthRoot, with `j = a - 1` the cube root of
//! unity), `z` (FifthRoot). Exponents are capped at 4096 so that no input
//! can force an astronomic power computation.
//!
//! Identity files carry one identity per line; `#` starts a comment and an
//! optional header line `ring: gaussian|sixthroot|fifthroot` selects the
//! ring for the whole file.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::rings::{ring_make, RingElement, RingKind, RingSpec};

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl ParseError {
    fn new(message: impl Into<String>, line: usize, column: usize) -> ParseError {
        ParseError {
            message: message.into(),
            line,
            column,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Tilde,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Tilde => write!(f, "'~'"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    len: usize,
}

/// Position of a parsed token or term in the source text (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let start_col = column;
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let value: BigInt = digits.parse().expect("digit string");
            out.push(Token {
                tok: Tok::Int(value),
                line,
                column: start_col,
                len: digits.len(),
            });
            continue;
        }
        if c.is_alphabetic() {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    name.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let len = name.len();
            out.push(Token {
                tok: Tok::Ident(name),
                line,
                column: start_col,
                len,
            });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '~' => Tok::Tilde,
            other => {
                return Err(ParseError::new(
                    format!("unexpected character '{other}'"),
                    line,
                    start_col,
                ))
            }
        };
        chars.next();
        column += 1;
        out.push(Token {
            tok,
            line,
            column: start_col,
            len: 1,
        });
    }
    Ok(out)
}

/// One side term of an identity: `coeff · [element]*D`. A bare `c D` is the
/// pullback along the identity, element 1.
#[derive(Clone, Debug)]
pub struct IdentityTerm {
    pub coeff: BigInt,
    pub element: RingElement,
    pub span: Span,
}

/// Weighted pullback terms `(coefficient, endomorphism)` of one side.
pub type SideTerms = Vec<(BigInt, RingElement)>;

/// A parsed identity `lhs ~ rhs`. Equality ignores source spans, so a
/// printed identity re-parses to an equal value.
#[derive(Clone, Debug)]
pub struct ParsedIdentity {
    pub ring: RingSpec,
    pub lhs: Vec<IdentityTerm>,
    pub rhs: Vec<IdentityTerm>,
}

impl PartialEq for ParsedIdentity {
    fn eq(&self, other: &Self) -> bool {
        let side_eq = |a: &[IdentityTerm], b: &[IdentityTerm]| {
            a.len() == b.len()
                && a.iter()
                    .zip(b)
                    .all(|(x, y)| x.coeff == y.coeff && x.element == y.element)
        };
        self.ring == other.ring && side_eq(&self.lhs, &other.lhs) && side_eq(&self.rhs, &other.rhs)
    }
}

impl Eq for ParsedIdentity {}

impl ParsedIdentity {
    /// The two sides as weighted pullback terms, ready for
    /// [`crate::calculus::CalculusContext::verify`].
    pub fn sides(&self) -> (SideTerms, SideTerms) {
        let conv = |side: &[IdentityTerm]| {
            side.iter()
                .map(|t| (t.coeff.clone(), t.element.clone()))
                .collect()
        };
        (conv(&self.lhs), conv(&self.rhs))
    }
}

fn format_side(out: &mut String, side: &[IdentityTerm]) {
    for (k, term) in side.iter().enumerate() {
        let neg = term.coeff.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = term.coeff.abs();
        if term.element.is_one() {
            out.push_str(&mag.to_string());
            out.push_str(" D");
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push(' ');
            }
            out.push('[');
            out.push_str(&term.element.to_string());
            out.push_str("]*D");
        }
    }
    if side.is_empty() {
        out.push_str("0 D");
    }
}

impl fmt::Display for ParsedIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        format_side(&mut out, &self.lhs);
        out.push_str(" ~ ");
        format_side(&mut out, &self.rhs);
        f.write_str(&out)
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    ring: RingSpec,
}

impl Parser {
    fn new(text: &str, ring: RingSpec) -> Result<Parser, ParseError> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
            ring,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> Span {
        match self.tokens.get(self.pos) {
            Some(t) => Span {
                line: t.line,
                column: t.column,
            },
            None => match self.tokens.last() {
                Some(t) => Span {
                    line: t.line,
                    column: t.column + t.len,
                },
                None => Span { line: 1, column: 1 },
            },
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let span = self.here();
        ParseError::new(message, span.line, span.column)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {want}, found {t}"))),
            None => Err(self.error(format!("expected {want}, found end of input"))),
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn generator(&self, name: &str, span: Span) -> Result<RingElement, ParseError> {
        let kind = self.ring.kind();
        let elem = match (kind, name) {
            (RingKind::Gaussian, "i") => RingElement::gaussian_i(),
            (RingKind::SixthRoot, "a") => RingElement::sixth_alpha(),
            (RingKind::SixthRoot, "j") => RingElement::sixth_j(),
            (RingKind::FifthRoot, "z") => RingElement::fifth_zeta(),
            _ => {
                return Err(ParseError::new(
                    format!("unknown generator '{name}' for ring {kind}"),
                    span.line,
                    span.column,
                ))
            }
        };
        Ok(elem)
    }

    // rbase := uint | generator | "(" rsum ")"
    fn rbase(&mut self) -> Result<RingElement, ParseError> {
        let span = self.here();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Int(n)) => Ok(RingElement::integer(self.ring, n)),
            Some(Tok::Ident(name)) => self.generator(&name, span),
            Some(Tok::LParen) => {
                let inner = self.rsum()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => Err(ParseError::new(
                format!("expected integer, generator or '(', found {t}"),
                span.line,
                span.column,
            )),
            None => Err(ParseError::new(
                "expected integer, generator or '(', found end of input",
                span.line,
                span.column,
            )),
        }
    }

    // rfactor := rbase [ "^" uint ]
    fn rfactor(&mut self) -> Result<RingElement, ParseError> {
        let base = self.rbase()?;
        if self.eat(&Tok::Caret) {
            let span = self.here();
            match self.bump().map(|t| t.tok) {
                Some(Tok::Int(n)) => match n.to_u32() {
                    Some(e) if e <= MAX_EXPONENT => Ok(base.power(e as u64)),
                    _ => Err(ParseError::new(
                        format!("exponent too large (limit {MAX_EXPONENT})"),
                        span.line,
                        span.column,
                    )),
                },
                _ => Err(ParseError::new(
                    "expected a nonnegative integer exponent",
                    span.line,
                    span.column,
                )),
            }
        } else {
            Ok(base)
        }
    }

    // rterm := rfactor { "*" rfactor }
    fn rterm(&mut self) -> Result<RingElement, ParseError> {
        let mut acc = self.rfactor()?;
        while self.eat(&Tok::Star) {
            let rhs = self.rfactor()?;
            acc = acc.mul(&rhs).expect("same ring");
        }
        Ok(acc)
    }

    // rsum := ["-"] rterm { ("+"|"-") rterm }
    fn rsum(&mut self) -> Result<RingElement, ParseError> {
        let mut acc = if self.eat(&Tok::Minus) {
            self.rterm()?.neg()
        } else {
            self.rterm()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                let t = self.rterm()?;
                acc = acc.add(&t).expect("same ring");
            } else if self.eat(&Tok::Minus) {
                let t = self.rterm()?;
                acc = acc.sub(&t).expect("same ring");
            } else {
                break;
            }
        }
        Ok(acc)
    }

    // term := [int] ( "D" | "[" ringexpr "]" "*" "D" )
    fn term(&mut self, sign: i32) -> Result<IdentityTerm, ParseError> {
        let span = self.here();
        let mut coeff = BigInt::one();
        if let Some(Tok::Int(_)) = self.peek() {
            let Some(Tok::Int(n)) = self.bump().map(|t| t.tok) else {
                unreachable!()
            };
            coeff = n;
        }
        if sign < 0 {
            coeff = -coeff;
        }
        match self.peek() {
            Some(Tok::Ident(name)) if name == "D" => {
                self.pos += 1;
                Ok(IdentityTerm {
                    coeff,
                    element: RingElement::one(self.ring),
                    span,
                })
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let element = self.rsum()?;
                self.expect(&Tok::RBracket)?;
                self.expect(&Tok::Star)?;
                let dspan = self.here();
                match self.bump().map(|t| t.tok) {
                    Some(Tok::Ident(name)) if name == "D" => Ok(IdentityTerm {
                        coeff,
                        element,
                        span,
                    }),
                    Some(t) => Err(ParseError::new(
                        format!("expected 'D' after pullback, found {t}"),
                        dspan.line,
                        dspan.column,
                    )),
                    None => Err(ParseError::new(
                        "expected 'D' after pullback, found end of input",
                        dspan.line,
                        dspan.column,
                    )),
                }
            }
            Some(t) => Err(self.error(format!("expected 'D' or '[', found {t}"))),
            None => Err(self.error("expected 'D' or '[', found end of input")),
        }
    }

    // expr := ["-"] term { ("+"|"-") term }
    fn expr(&mut self) -> Result<Vec<IdentityTerm>, ParseError> {
        let mut out = Vec::new();
        let first_sign = if self.eat(&Tok::Minus) { -1 } else { 1 };
        out.push(self.term(first_sign)?);
        loop {
            if self.eat(&Tok::Plus) {
                out.push(self.term(1)?);
            } else if self.eat(&Tok::Minus) {
                out.push(self.term(-1)?);
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), ParseError> {
        if let Some(t) = self.peek() {
            return Err(self.error(format!("unexpected trailing {t}")));
        }
        Ok(())
    }
}

/// Evaluates an integer polynomial expression in the ring.
pub fn parse_ring_element(text: &str, ring: RingSpec) -> Result<RingElement, ParseError> {
    let mut p = Parser::new(text, ring)?;
    if p.tokens.is_empty() {
        return Err(ParseError::new("empty ring expression", 1, 1));
    }
    let elem = p.rsum()?;
    p.finish()?;
    Ok(elem)
}

/// Parses a divisor identity `lhs ~ rhs`.
pub fn parse_identity(text: &str, ring: RingSpec) -> Result<ParsedIdentity, ParseError> {
    let mut p = Parser::new(text, ring)?;
    let lhs = p.expr()?;
    p.expect(&Tok::Tilde)?;
    let rhs = p.expr()?;
    p.finish()?;
    Ok(ParsedIdentity { ring, lhs, rhs })
}

/// Parses an integer polynomial in one variable, e.g. `"x^5 - x"` with
/// `var = 'x'`. Returns low-to-high coefficients. Used for the `--curve`
/// flag of the Jacobian suite.
pub fn parse_integer_polynomial(text: &str, var: char) -> Result<Vec<i64>, ParseError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(ParseError::new("empty polynomial", 1, 1));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut add_term = |coeff: i64, power: usize, span: Span| -> Result<(), ParseError> {
        if power >= 64 {
            return Err(ParseError::new(
                "exponent too large",
                span.line,
                span.column,
            ));
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = coeffs[power]
            .checked_add(coeff)
            .ok_or_else(|| ParseError::new("coefficient overflow", span.line, span.column))?;
        Ok(())
    };
    let mut pos = 0usize;
    let eof_span = |tokens: &[Token]| -> Span {
        match tokens.last() {
            Some(t) => Span {
                line: t.line,
                column: t.column + t.len,
            },
            None => Span { line: 1, column: 1 },
        }
    };
    let mut first = true;
    while pos < tokens.len() {
        // sign
        let mut sign = 1i64;
        match &tokens[pos].tok {
            Tok::Plus if !first => pos += 1,
            Tok::Minus => {
                sign = -1;
                pos += 1;
            }
            _ if first => {}
            t => {
                return Err(ParseError::new(
                    format!("expected '+' or '-', found {t}"),
                    tokens[pos].line,
                    tokens[pos].column,
                ))
            }
        }
        first = false;
        let span = match tokens.get(pos) {
            Some(t) => Span {
                line: t.line,
                column: t.column,
            },
            None => {
                let s = eof_span(&tokens);
                return Err(ParseError::new("expected a term", s.line, s.column));
            }
        };
        // optional integer coefficient
        let mut coeff: Option<i64> = None;
        if let Some(Tok::Int(n)) = tokens.get(pos).map(|t| &t.tok) {
            let value = n
                .to_i64()
                .ok_or_else(|| ParseError::new("coefficient overflow", span.line, span.column))?;
            coeff = Some(value);
            pos += 1;
            if tokens.get(pos).map(|t| &t.tok) == Some(&Tok::Star) {
                pos += 1;
            }
        }
        // optional variable with exponent
        let mut power: Option<usize> = None;
        if let Some(Tok::Ident(name)) = tokens.get(pos).map(|t| &t.tok) {
            if name.len() == 1 && name.starts_with(var) {
                pos += 1;
                power = Some(1);
                if tokens.get(pos).map(|t| &t.tok) == Some(&Tok::Caret) {
                    pos += 1;
                    match tokens.get(pos).map(|t| &t.tok) {
                        Some(Tok::Int(n)) => {
                            let e = n.to_usize().ok_or_else(|| {
                                ParseError::new("exponent too large", span.line, span.column)
                            })?;
                            power = Some(e);
                            pos += 1;
                        }
                        _ => {
                            let s = tokens
                                .get(pos)
                                .map(|t| Span {
                                    line: t.line,
                                    column: t.column,
                                })
                                .unwrap_or_else(|| eof_span(&tokens));
                            return Err(ParseError::new(
                                "expected an integer exponent",
                                s.line,
                                s.column,
                            ));
                        }
                    }
                }
            } else {
                return Err(ParseError::new(
                    format!("unknown variable '{name}' (expected '{var}')"),
                    span.line,
                    span.column,
                ));
            }
        }
        match (coeff, power) {
            (Some(c), Some(k)) => add_term(sign * c, k, span)?,
            (Some(c), None) => add_term(sign * c, 0, span)?,
            (None, Some(k)) => add_term(sign, k, span)?,
            (None, None) => {
                return Err(ParseError::new(
                    "expected an integer or a variable term",
                    span.line,
                    span.column,
                ))
            }
        }
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// One line of an identity file.
#[derive(Clone, Debug)]
pub struct FileEntry {
    pub line_no: usize,
    pub source: String,
    pub identity: ParsedIdentity,
}

/// A parsed identity file: ring header plus one identity per line.
#[derive(Debug)]
pub struct IdentityFile {
    pub ring: RingSpec,
    pub entries: Vec<FileEntry>,
}

/// Parses the identity-file format: `#` comments, an optional
/// `ring: <kind>` header (which overrides `fallback`), one identity per
/// nonempty line.
pub fn parse_identity_file(
    text: &str,
    fallback: Option<RingKind>,
) -> Result<IdentityFile, ParseError> {
    let mut ring: Option<RingSpec> = fallback.map(ring_make);
    let mut header_seen = false;
    let mut pending: Vec<(usize, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("ring:") {
            if header_seen {
                return Err(ParseError::new("duplicate ring header", line_no, 1));
            }
            if !pending.is_empty() {
                return Err(ParseError::new(
                    "ring header must precede all identities",
                    line_no,
                    1,
                ));
            }
            let name = rest.trim();
            let kind = RingKind::parse_name(name).ok_or_else(|| {
                ParseError::new(
                    format!("unknown ring '{name}' (expected gaussian, sixthroot or fifthroot)"),
                    line_no,
                    1,
                )
            })?;
            ring = Some(ring_make(kind));
            header_seen = true;
            continue;
        }
        pending.push((line_no, line.to_string()));
    }
    let Some(ring) = ring else {
        return Err(ParseError::new(
            "no ring selected: add a 'ring: <kind>' header or pass --ring",
            1,
            1,
        ));
    };
    let mut entries = Vec::new();
    for (line_no, source) in pending {
        let identity = parse_identity(&source, ring).map_err(|mut e| {
            e.line = line_no;
            e
        })?;
        entries.push(FileEntry {
            line_no,
            source: source.trim().to_string(),
            identity,
        });
    }
    Ok(IdentityFile { ring, entries })
}
