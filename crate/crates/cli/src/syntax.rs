//! Lexer and recursive-descent parser for the document language.
//!
//! ```text
//! document   := chart_decl binding*
//! chart_decl := "chart" IDENT+ NEWLINE
//! binding    := ("func" | "mv" | "form" | "volume" | "lie") IDENT "=" expr NEWLINE
//! expr       := wedge (("+" | "-") wedge)*
//! wedge      := product ("^^" product)*
//! product    := unary (("*" | "/") unary | unary)*
//! unary      := "-" unary | power
//! power      := atom ("^" "-"? INTEGER)?
//! atom       := NUMBER | IDENT | "(" expr ")"
//! ```
//!
//! Newlines end statements except inside parentheses. `#` starts a comment.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::error::{DslError, Result, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Number(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Wedge,
    LParen,
    RParen,
    Equals,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(n) => write!(f, "number `{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Wedge => f.write_str("`^^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut depth = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let step = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                if depth == 0 {
                    out.push(Token { tok: Tok::Newline, span });
                }
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => step(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token { tok: Tok::Number(parse_number(&text, span)?), span });
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                col += i - start;
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), span });
            }
            '^' if chars.get(i + 1) == Some(&'^') => {
                out.push(Token { tok: Tok::Wedge, span });
                step(2, &mut i, &mut col);
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '=' => Tok::Equals,
                    '(' => {
                        depth += 1;
                        Tok::LParen
                    }
                    ')' => {
                        depth = depth.saturating_sub(1);
                        Tok::RParen
                    }
                    other => return Err(DslError::Syntax { span, message: format!("unexpected character `{other}`") }),
                };
                out.push(Token { tok, span });
                step(1, &mut i, &mut col);
            }
        }
    }
    out.push(Token { tok: Tok::Newline, span: Span { line, col } });
    out.push(Token { tok: Tok::Eof, span: Span { line, col } });
    Ok(out)
}

fn parse_number(text: &str, span: Span) -> Result<BigRational> {
    let bad = || DslError::Syntax { span, message: format!("malformed number `{text}`") };
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(n, scale))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Number(BigRational),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Wedge(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    /// A literal zero, possibly negated or parenthesized.
    pub fn is_syntactic_zero(&self) -> bool {
        match &self.kind {
            ExprKind::Number(n) => n.is_zero(),
            ExprKind::Neg(e) => e.is_syntactic_zero(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Func,
    Mv,
    Form,
    Volume,
    Lie,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Func => "func",
            Kind::Mv => "mv",
            Kind::Form => "form",
            Kind::Volume => "volume",
            Kind::Lie => "lie",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Kind> {
        Some(match s {
            "func" => Kind::Func,
            "mv" => Kind::Mv,
            "form" => Kind::Form,
            "volume" => Kind::Volume,
            "lie" => Kind::Lie,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub kind: Kind,
    pub name: String,
    pub name_span: Span,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxTree {
    pub chart: Vec<(String, Span)>,
    pub statements: Vec<Statement>,
}

pub fn parse(src: &str) -> Result<SyntaxTree> {
    Parser { toks: tokenize(src)?, pos: 0 }.document()
}

/// Parses a standalone expression, as used for command arguments.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let e = p.expr()?;
    p.end_of_statement()?;
    p.skip_newlines();
    p.expect(&Tok::Eof)?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, wanted: &str) -> Result<T> {
        let t = self.peek();
        Err(DslError::Syntax { span: t.span, message: format!("expected {wanted}, found {}", t.tok) })
    }

    fn expect(&mut self, tok: &Tok) -> Result<Token> {
        if &self.peek().tok == tok {
            Ok(self.bump())
        } else {
            self.error(&tok.to_string())
        }
    }

    fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.bump();
        }
    }

    fn end_of_statement(&mut self) -> Result<()> {
        match self.peek().tok {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.error("end of line"),
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<(String, Span)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => self.error(wanted),
        }
    }

    fn document(mut self) -> Result<SyntaxTree> {
        self.skip_newlines();
        let (kw, span) = self.ident("`chart`")?;
        if kw != "chart" {
            return Err(DslError::Syntax { span, message: format!("expected `chart`, found `{kw}`") });
        }
        let mut chart = Vec::new();
        while let Tok::Ident(_) = self.peek().tok {
            chart.push(self.ident("coordinate name")?);
        }
        if chart.is_empty() {
            return self.error("coordinate name");
        }
        self.end_of_statement()?;
        let mut statements = Vec::new();
        loop {
            self.skip_newlines();
            if self.peek().tok == Tok::Eof {
                break;
            }
            let (kw, span) = self.ident("binding keyword")?;
            let kind = Kind::from_keyword(&kw).ok_or_else(|| DslError::Syntax {
                span,
                message: format!("expected one of func, mv, form, volume, lie; found `{kw}`"),
            })?;
            let (name, name_span) = self.ident("binding name")?;
            self.expect(&Tok::Equals)?;
            let expr = self.expr()?;
            self.end_of_statement()?;
            statements.push(Statement { kind, name, name_span, expr });
        }
        Ok(SyntaxTree { chart, statements })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.wedge()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> ExprKind = match self.peek().tok {
                Tok::Plus => ExprKind::Add,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            let span = self.bump().span;
            let rhs = self.wedge()?;
            lhs = Expr { kind: ctor(Box::new(lhs), Box::new(rhs)), span };
        }
    }

    fn wedge(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        while self.peek().tok == Tok::Wedge {
            let span = self.bump().span;
            let rhs = self.product()?;
            lhs = Expr { kind: ExprKind::Wedge(Box::new(lhs), Box::new(rhs)), span };
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek().tok, Tok::Number(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let (div, span) = match self.peek().tok {
                Tok::Star => (false, self.bump().span),
                Tok::Slash => (true, self.bump().span),
                _ if self.starts_atom() => (false, self.peek().span),
                _ => return Ok(lhs),
            };
            let rhs = self.unary()?;
            if div && rhs.is_syntactic_zero() {
                return Err(DslError::invalid(rhs.span, "division by zero"));
            }
            let kind = if div {
                ExprKind::Div(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Mul(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            let span = self.bump().span;
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let span = self.bump().span;
        let negative = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.peek().clone();
        let e = match &t.tok {
            Tok::Number(n) if n.is_integer() => n
                .to_integer()
                .to_string()
                .parse::<i32>()
                .map_err(|_| DslError::Syntax { span: t.span, message: "exponent too large".into() })?,
            _ => return self.error("integer exponent"),
        };
        self.bump();
        let e = if negative { -e } else { e };
        Ok(Expr { kind: ExprKind::Pow(Box::new(base), e), span })
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Number(n) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Number(n), span: t.span })
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Name(s), span: t.span })
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            _ => self.error("expression"),
        }
    }
}
