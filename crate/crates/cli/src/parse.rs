//! Expression syntax for algebra elements.
//!
//! ```text
//! expr     := term (("+" | "-") term)* ;
//! term     := [coeff] atom ("#" atom)* ;
//! atom     := "e" | "s1" | "s2" | "s1*" | "s2*" | "(" expr ")" ;
//! coeff    := rational | "(" rational "," rational ")" ;
//! rational := ["-"] digits ["/" digits] ;
//! ```
//!
//! Whitespace between tokens is ignored. A leading `-` negates the first term.
//! `(` starts a complex coefficient when it is followed by a rational and a
//! comma, and a parenthesized expression otherwise.

use std::fmt;

use cu2_core::algebra::{Element, Scalar};
use cu2_core::semigroup::Monomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub negative: bool,
    pub coeff: Option<Scalar>,
    pub atoms: Vec<Atom>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    Unit,
    S(u8),
    SStar(u8),
    Group(Expression),
}

impl Expression {
    pub fn lower(&self) -> Element {
        self.terms.iter().fold(Element::zero(), |acc, term| {
            let product = term
                .atoms
                .iter()
                .fold(Element::unit(), |p, atom| p.sharp(&atom.lower()));
            let mut c = term.coeff.clone().unwrap_or_else(Scalar::one);
            if term.negative {
                c = -c;
            }
            &acc + &product.scale(&c)
        })
    }
}

impl Atom {
    fn lower(&self) -> Element {
        match self {
            Atom::Unit => Element::unit(),
            Atom::S(l) => Element::delta(Monomial::s(*l)),
            Atom::SStar(l) => Element::delta(Monomial::s_star(*l)),
            Atom::Group(e) => e.lower(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Hash,
    Star,
    LParen,
    RParen,
    Comma,
    Slash,
    Digits(String),
    Unit,
    Gen(u8),
    Invalid(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Plus => "\"+\"".into(),
            Tok::Minus => "\"-\"".into(),
            Tok::Hash => "\"#\"".into(),
            Tok::Star => "\"*\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Comma => "\",\"".into(),
            Tok::Slash => "\"/\"".into(),
            Tok::Digits(d) => format!("number {d}"),
            Tok::Unit => "\"e\"".into(),
            Tok::Gen(l) => format!("\"s{l}\""),
            Tok::Invalid(s) => format!("{s:?}"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Vec<(usize, Tok)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let start = pos;
        let c = bytes[pos];
        pos += 1;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => continue,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'#' => Tok::Hash,
            b'*' => Tok::Star,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'/' => Tok::Slash,
            b'e' => Tok::Unit,
            b's' => match bytes.get(pos) {
                Some(&d @ (b'1' | b'2')) => {
                    pos += 1;
                    Tok::Gen(d - b'0')
                }
                _ => Tok::Invalid("s".into()),
            },
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                Tok::Digits(text[start..pos].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                pos = start + ch.len_utf8();
                Tok::Invalid(ch.to_string())
            }
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    out
}

const ATOM_START: [&str; 4] = ["\"e\"", "\"s1\"", "\"s2\"", "\"(\""];
const AFTER_ATOM: [&str; 5] = ["\"#\"", "\"+\"", "\"-\"", "\")\"", "end of input"];

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].1
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.tokens.len() - 1);
        &self.tokens[i].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (offset, tok) = &self.tokens[self.pos];
        ParseError {
            offset: *offset,
            expected: expected.to_vec(),
            found: tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut terms = Vec::new();
        let leading_minus = *self.peek() == Tok::Minus && !matches!(self.peek_at(1), Tok::Digits(_));
        if leading_minus {
            self.bump();
        }
        let mut term = self.term()?;
        term.negative = leading_minus;
        terms.push(term);
        loop {
            let negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let mut term = self.term()?;
            term.negative = negative;
            terms.push(term);
        }
        Ok(Expression { terms })
    }

    /// Whether the tokens at the cursor read `"(" rational ","`.
    fn complex_ahead(&self) -> bool {
        let mut k = 1;
        if *self.peek_at(k) == Tok::Minus {
            k += 1;
        }
        if !matches!(self.peek_at(k), Tok::Digits(_)) {
            return false;
        }
        k += 1;
        if *self.peek_at(k) == Tok::Slash {
            k += 2;
        }
        *self.peek_at(k) == Tok::Comma
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let coeff = match self.peek() {
            Tok::Digits(_) | Tok::Minus => Some(Scalar::real(self.rational()?)),
            Tok::LParen if self.complex_ahead() => {
                self.bump();
                let re = self.rational()?;
                self.expect(Tok::Comma, "\",\"")?;
                let im = self.rational()?;
                self.expect(Tok::RParen, "\")\"")?;
                Some(Scalar::new(re, im))
            }
            _ => None,
        };
        let mut atoms = vec![self.atom(coeff.is_none())?];
        while *self.peek() == Tok::Hash {
            self.bump();
            atoms.push(self.atom(false)?);
        }
        match self.peek() {
            Tok::Plus | Tok::Minus | Tok::RParen | Tok::End => Ok(Term {
                negative: false,
                coeff,
                atoms,
            }),
            _ => Err(self.error(&AFTER_ATOM)),
        }
    }

    fn atom(&mut self, coefficient_allowed: bool) -> Result<Atom, ParseError> {
        match self.peek().clone() {
            Tok::Unit => {
                self.bump();
                Ok(Atom::Unit)
            }
            Tok::Gen(l) => {
                self.bump();
                if *self.peek() == Tok::Star {
                    self.bump();
                    Ok(Atom::SStar(l))
                } else {
                    Ok(Atom::S(l))
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(Atom::Group(inner))
            }
            _ => {
                let mut expected = ATOM_START.to_vec();
                if coefficient_allowed {
                    expected.push("number");
                }
                Err(self.error(&expected))
            }
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Digits(d) => {
                self.bump();
                Ok(d.parse().expect("lexer only emits ASCII digits"))
            }
            _ => Err(self.error(&["digits"])),
        }
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let numer = self.digits()?;
        let denom = if *self.peek() == Tok::Slash {
            self.bump();
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                self.pos = at;
                return Err(self.error(&["non-zero denominator"]));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = BigRational::new(numer, denom);
        Ok(if negative { -r } else { r })
    }
}

pub fn parse(text: &str) -> Result<Expression, ParseError> {
    let mut parser = Parser {
        tokens: lex(text),
        pos: 0,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&AFTER_ATOM));
    }
    Ok(expr)
}

pub fn parse_element(text: &str) -> Result<Element, ParseError> {
    parse(text).map(|e| e.lower())
}
