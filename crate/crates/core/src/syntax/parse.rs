//! Recursive-descent parser for the ASCII concrete grammar.
//!
//! ```text
//! formula := imp ("<->" imp)?
//! imp     := or ("->" imp)?
//! or      := and ("\/" and)*
//! and     := unary ("/\" unary)*
//! unary   := "~" unary | ("forall" | "exists") var unary | "false"
//!          | "(" formula ")" | atom
//! atom    := PRED "(" terms ")" | term "=" term | term "!=" term
//! term    := prod ("+" prod)*
//! prod    := prim ("*" prim)*
//! prim    := "0" | digits | "#" digits | var | "S(" term ")" | "u(" term ")"
//!          | "@" name "(" terms ")" | "<<" formula-or-term ">>" | "(" term ")"
//! PRED    := U | K1 | K2 | T | Ag | @L0 | @L1 | @Term0 | @TermPA0 | @Var | Pr[name]
//! ```

use super::{numeral, DotFn, DotRel, Formula, Func, Pred, Syntax, SyntaxError, Term, Var};
use crate::coding;
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at byte {pos}: {source}")]
    Arity {
        pos: usize,
        #[source]
        source: SyntaxError,
    },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Arity { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Digits(String),
    Hash(String),
    Dot(String),
    PrName(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Neq,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Plus,
    Star,
    QOpen,
    QClose,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| ParseError::Syntax { pos, msg: msg.to_string() };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &src[i..];
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("<<") {
            (Tok::QOpen, 2)
        } else if rest.starts_with(">>") {
            (Tok::QClose, 2)
        } else if rest.starts_with("/\\") {
            (Tok::And, 2)
        } else if rest.starts_with("\\/") {
            (Tok::Or, 2)
        } else if rest.starts_with("!=") {
            (Tok::Neq, 2)
        } else if rest.starts_with("Pr[") {
            let close = rest.find(']').ok_or_else(|| err(start, "unterminated `Pr[`"))?;
            let name = &rest[3..close];
            if name.is_empty() {
                return Err(err(start, "empty system name"));
            }
            (Tok::PrName(name.to_string()), close + 1)
        } else {
            match c {
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b',' => (Tok::Comma, 1),
                b'=' => (Tok::Eq, 1),
                b'~' => (Tok::Not, 1),
                b'+' => (Tok::Plus, 1),
                b'*' => (Tok::Star, 1),
                b'#' | b'@' => {
                    let mut j = i + 1;
                    while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
                        j += 1;
                    }
                    if j == i + 1 {
                        return Err(err(start, "expected a name or digits"));
                    }
                    let body = src[i + 1..j].to_string();
                    if c == b'#' {
                        if !body.bytes().all(|b| b.is_ascii_digit()) {
                            return Err(err(start, "`#` must be followed by digits"));
                        }
                        (Tok::Hash(body), j - i)
                    } else {
                        (Tok::Dot(body), j - i)
                    }
                }
                b'0'..=b'9' => {
                    let mut j = i;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    (Tok::Digits(src[i..j].to_string()), j - i)
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                        j += 1;
                    }
                    (Tok::Ident(src[i..j].to_string()), j - i)
                }
                _ => return Err(err(start, &format!("unexpected character `{}`", rest.chars().next().unwrap()))),
            }
        };
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let a = self.imp()?;
        if self.eat(&Tok::Iff) {
            let b = self.imp()?;
            return Ok(Formula::iff(a, b));
        }
        Ok(a)
    }

    fn imp(&mut self) -> PResult<Formula> {
        let a = self.or()?;
        if self.eat(&Tok::Imp) {
            let b = self.imp()?;
            return Ok(Formula::imp(a, b));
        }
        Ok(a)
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut a = self.and()?;
        while self.eat(&Tok::Or) {
            let b = self.and()?;
            a = Formula::or(a, b);
        }
        Ok(a)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut a = self.unary()?;
        while self.eat(&Tok::And) {
            let b = self.unary()?;
            a = Formula::and(a, b);
        }
        Ok(a)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(Tok::Not) => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(s)) if s == "forall" || s == "exists" => {
                let universal = s == "forall";
                self.bump();
                let v = self.var()?;
                let body = self.unary()?;
                Ok(if universal { Formula::forall(v, body) } else { Formula::exists(v, body) })
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.bump();
                Ok(Formula::bot())
            }
            Some(Tok::LParen) => {
                let save = self.pos;
                self.bump();
                if let Ok(f) = self.formula() {
                    if self.eat(&Tok::RParen)
                        && !matches!(self.peek(), Some(Tok::Eq | Tok::Neq | Tok::Plus | Tok::Star))
                    {
                        return Ok(f);
                    }
                }
                self.pos = save;
                self.atom()
            }
            _ => self.atom(),
        }
    }

    fn var(&mut self) -> PResult<Var> {
        match self.peek() {
            Some(Tok::Ident(s)) => match parse_var(s) {
                Some(v) => {
                    self.bump();
                    Ok(v)
                }
                None => self.err("expected a variable `v<n>`"),
            },
            _ => self.err("expected a variable `v<n>`"),
        }
    }

    fn pred(&mut self) -> Option<Pred> {
        let p = match self.peek()? {
            Tok::Ident(s) => match s.as_str() {
                "U" => Pred::U,
                "K1" => Pred::K1,
                "K2" => Pred::K2,
                "T" => Pred::T,
                "Ag" => Pred::Ag,
                _ => return None,
            },
            Tok::Dot(s) => Pred::Dot(DotRel::from_name(s)?),
            Tok::PrName(s) => Pred::pr(s),
            _ => return None,
        };
        self.bump();
        Some(p)
    }

    fn atom(&mut self) -> PResult<Formula> {
        let at = self.offset();
        if let Some(p) = self.pred() {
            let args = self.args()?;
            return Formula::atom(p, args).map_err(|source| ParseError::Arity { pos: at, source });
        }
        let lhs = self.term()?;
        if self.eat(&Tok::Eq) {
            let rhs = self.term()?;
            Ok(Formula::eq(lhs, rhs))
        } else if self.eat(&Tok::Neq) {
            let rhs = self.term()?;
            Ok(Formula::not(Formula::eq(lhs, rhs)))
        } else {
            self.err("expected `=` after term")
        }
    }

    fn args(&mut self) -> PResult<Vec<Term>> {
        self.expect(&Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(&Tok::RParen, "`)`")?;
        Ok(args)
    }

    fn term(&mut self) -> PResult<Term> {
        let mut a = self.prod()?;
        while self.eat(&Tok::Plus) {
            let b = self.prod()?;
            a = Term::plus(a, b);
        }
        Ok(a)
    }

    fn prod(&mut self) -> PResult<Term> {
        let mut a = self.prim()?;
        while self.eat(&Tok::Star) {
            let b = self.prim()?;
            a = Term::times(a, b);
        }
        Ok(a)
    }

    fn prim(&mut self) -> PResult<Term> {
        let at = self.offset();
        let checked =
            |f: Func, args: Vec<Term>| Term::app(f, args).map_err(|source| ParseError::Arity { pos: at, source });
        match self.peek().cloned() {
            Some(Tok::Digits(d)) | Some(Tok::Hash(d)) => {
                self.bump();
                Ok(numeral(d.parse::<BigUint>().expect("lexer yields digits")))
            }
            Some(Tok::Ident(s)) if s == "S" => {
                self.bump();
                let args = self.args()?;
                checked(Func::Succ, args)
            }
            Some(Tok::Ident(s)) if s == "u" => {
                self.bump();
                let args = self.args()?;
                checked(Func::SmallU, args)
            }
            Some(Tok::Ident(s)) => match parse_var(&s) {
                Some(v) => {
                    self.bump();
                    Ok(Term::Var(v))
                }
                None => self.err(format!("unknown identifier `{s}`")),
            },
            Some(Tok::Dot(s)) => match DotFn::from_name(&s) {
                Some(d) => {
                    self.bump();
                    let args = self.args()?;
                    checked(Func::Dot(d), args)
                }
                None => self.err(format!("unknown dotted function `@{s}`")),
            },
            Some(Tok::QOpen) => {
                self.bump();
                let inner = self.syntax()?;
                self.expect(&Tok::QClose, "`>>`")?;
                Ok(coding::gq(&inner))
            }
            Some(Tok::LParen) => {
                self.bump();
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => self.err("expected a term"),
        }
    }

    fn syntax(&mut self) -> PResult<Syntax> {
        let save = self.pos;
        match self.formula() {
            Ok(f) if matches!(self.peek(), Some(Tok::QClose) | None) => Ok(Syntax::Formula(f)),
            first => {
                self.pos = save;
                match self.term() {
                    Ok(t) => Ok(Syntax::Term(t)),
                    Err(e) => Err(first.err().unwrap_or(e)),
                }
            }
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.pos < self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

fn parse_var(s: &str) -> Option<Var> {
    let digits = s.strip_prefix('v')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().map(Var)
}

fn parser(text: &str) -> PResult<Parser> {
    Ok(Parser { toks: lex(text)?, pos: 0, end: text.len() })
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = parser(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = parser(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// A formula if the text parses as one, otherwise a term.
pub fn parse_syntax(text: &str) -> Result<Syntax, ParseError> {
    let mut p = parser(text)?;
    let s = p.syntax()?;
    p.finish()?;
    Ok(s)
}
