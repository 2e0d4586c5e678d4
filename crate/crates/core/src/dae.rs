//! A small DAE description language and syntactic signature extraction.
//!
//! ```text
//! DAE v1
//! # simple pendulum
//! vars x y lam
//! const G L
//! eq A: Der(x,2) + x*lam
//! eq B: Der(y,2) + y*lam - G
//! eq C: x^2 + y^2 - L^2
//! ```
//!
//! Each `eq` line states `expr = 0`. `sigma_ij` is the highest derivative
//! order of variable `j` anywhere in equation `i`. No simplification is done,
//! so `Der(x,1) - Der(x,1)` still has order 1 in `x`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::sigma::SignatureMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DaeError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}, column {col}: undeclared identifier {name:?}")]
    UndeclaredIdentifier { name: String, line: usize, col: usize },
    #[error("{equations} equations for {variables} variables")]
    CountMismatch { equations: usize, variables: usize },
    #[error("name {0:?} declared twice")]
    DuplicateName(String),
}

impl DaeError {
    fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        Self::Syntax { line, col, message: message.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Self::Sin,
            "cos" => Self::Cos,
            "tan" => Self::Tan,
            "exp" => Self::Exp,
            "log" => Self::Log,
            "sqrt" => Self::Sqrt,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Sin => "sin",
            Self::Cos => "cos",
            Self::Tan => "tan",
            Self::Exp => "exp",
            Self::Log => "log",
            Self::Sqrt => "sqrt",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// Variable index and derivative order; a bare name has order 0.
    Var { index: usize, order: u32 },
    Const(usize),
    Neg(Box<Expr>),
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
    Pow { base: Box<Expr>, exp: u32 },
    Call { func: Func, arg: Box<Expr> },
}

impl Expr {
    /// Calls `f(var, order)` on every variable occurrence.
    pub fn visit_vars(&self, f: &mut impl FnMut(usize, u32)) {
        match self {
            Expr::Num(_) | Expr::Const(_) => {}
            Expr::Var { index, order } => f(*index, *order),
            Expr::Neg(e) | Expr::Pow { base: e, .. } | Expr::Call { arg: e, .. } => e.visit_vars(f),
            Expr::Binary { lhs, rhs, .. } => {
                lhs.visit_vars(f);
                rhs.visit_vars(f);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub label: String,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DaeSource {
    pub variables: Vec<String>,
    pub constants: Vec<String>,
    pub equations: Vec<Equation>,
}

impl DaeSource {
    /// Renders an expression back to source syntax, fully parenthesised.
    pub fn render(&self, e: &Expr) -> String {
        struct R<'a>(&'a DaeSource, &'a Expr);
        impl fmt::Display for R<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let src = self.0;
                match self.1 {
                    Expr::Num(x) => write!(f, "{x}"),
                    Expr::Var { index, order: 0 } => write!(f, "{}", src.variables[*index]),
                    Expr::Var { index, order } => write!(f, "Der({},{order})", src.variables[*index]),
                    Expr::Const(k) => write!(f, "{}", src.constants[*k]),
                    Expr::Neg(e) => write!(f, "-({})", R(src, e)),
                    Expr::Binary { op, lhs, rhs } => {
                        let o = match op {
                            BinOp::Add => '+',
                            BinOp::Sub => '-',
                            BinOp::Mul => '*',
                            BinOp::Div => '/',
                        };
                        write!(f, "({} {o} {})", R(src, lhs), R(src, rhs))
                    }
                    Expr::Pow { base, exp } => write!(f, "({})^{exp}", R(src, base)),
                    Expr::Call { func, arg } => write!(f, "{}({})", func.name(), R(src, arg)),
                }
            }
        }
        R(self, e).to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u32),
    Num(f64),
    Sym(char),
    End,
}

struct Lexer<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
    /// 1-based column offset of `text` within its line.
    base_col: usize,
}

impl<'a> Lexer<'a> {
    fn col(&self) -> usize {
        self.base_col + self.pos
    }

    fn next(&mut self) -> Result<(Tok, usize), DaeError> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let col = self.col();
        if self.pos >= bytes.len() {
            return Ok((Tok::End, col));
        }
        let start = self.pos;
        let b = bytes[start];
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.text[start..self.pos].to_string()), col));
        }
        if b.is_ascii_digit() || (b == b'.' && bytes.get(start + 1).is_some_and(u8::is_ascii_digit)) {
            let mut integral = true;
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos < bytes.len() && bytes[self.pos] == b'.' {
                integral = false;
                self.pos += 1;
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
            if self.pos < bytes.len() && matches!(bytes[self.pos], b'e' | b'E') {
                let save = self.pos;
                self.pos += 1;
                if self.pos < bytes.len() && matches!(bytes[self.pos], b'+' | b'-') {
                    self.pos += 1;
                }
                if self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    integral = false;
                    while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                } else {
                    self.pos = save;
                }
            }
            let lit = &self.text[start..self.pos];
            if integral {
                if let Ok(k) = lit.parse::<u32>() {
                    return Ok((Tok::Int(k), col));
                }
            }
            let x = lit
                .parse::<f64>()
                .map_err(|_| DaeError::syntax(self.line, col, format!("bad number {lit:?}")))?;
            return Ok((Tok::Num(x), col));
        }
        if "+-*/^(),".contains(b as char) {
            self.pos += 1;
            return Ok((Tok::Sym(b as char), col));
        }
        let ch = self.text[start..].chars().next().unwrap_or('?');
        Err(DaeError::syntax(self.line, col, format!("unexpected character {ch:?}")))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    col: usize,
    variables: &'a [String],
    constants: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(
        line: usize,
        text: &'a str,
        base_col: usize,
        variables: &'a [String],
        constants: &'a [String],
    ) -> Result<Self, DaeError> {
        let mut lex = Lexer { line, text, pos: 0, base_col };
        let (tok, col) = lex.next()?;
        Ok(Self { lex, tok, col, variables, constants })
    }

    fn bump(&mut self) -> Result<Tok, DaeError> {
        let (tok, col) = self.lex.next()?;
        self.col = col;
        Ok(std::mem::replace(&mut self.tok, tok))
    }

    fn err(&self, message: impl Into<String>) -> DaeError {
        DaeError::syntax(self.lex.line, self.col, message)
    }

    fn expect(&mut self, c: char) -> Result<(), DaeError> {
        if self.tok == Tok::Sym(c) {
            self.bump()?;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn unsigned_int(&mut self) -> Result<u32, DaeError> {
        match self.tok {
            Tok::Int(k) => {
                self.bump()?;
                Ok(k)
            }
            _ => Err(self.err("expected an unsigned integer")),
        }
    }

    fn finish(mut self) -> Result<Expr, DaeError> {
        let e = self.expr()?;
        if self.tok != Tok::End {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(e)
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr, DaeError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) };
        }
    }

    // term := factor (('*'|'/') factor)*
    fn term(&mut self) -> Result<Expr, DaeError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.factor()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) };
        }
    }

    // factor := base ('^' unsigned-int)?
    fn factor(&mut self) -> Result<Expr, DaeError> {
        let base = self.base()?;
        if self.tok == Tok::Sym('^') {
            self.bump()?;
            let exp = self.unsigned_int()?;
            return Ok(Expr::Pow { base: Box::new(base), exp });
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, DaeError> {
        let col = self.col;
        match self.bump()? {
            Tok::Int(k) => Ok(Expr::Num(k as f64)),
            Tok::Num(x) => Ok(Expr::Num(x)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('-') => Ok(Expr::Neg(Box::new(self.factor()?))),
            Tok::Ident(name) if name == "Der" => {
                self.expect('(')?;
                let vcol = self.col;
                let var = match self.bump()? {
                    Tok::Ident(v) => v,
                    _ => return Err(DaeError::syntax(self.lex.line, vcol, "expected a variable name")),
                };
                let index = self.variable(&var, vcol)?;
                self.expect(',')?;
                let order = self.unsigned_int()?;
                self.expect(')')?;
                Ok(Expr::Var { index, order })
            }
            Tok::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Call { func, arg: Box::new(arg) });
                }
                if let Some(k) = self.constants.iter().position(|c| *c == name) {
                    return Ok(Expr::Const(k));
                }
                let index = self.variable(&name, col)?;
                Ok(Expr::Var { index, order: 0 })
            }
            Tok::End => Err(DaeError::syntax(self.lex.line, col, "unexpected end of expression")),
            Tok::Sym(c) => Err(DaeError::syntax(self.lex.line, col, format!("unexpected '{c}'"))),
        }
    }

    fn variable(&self, name: &str, col: usize) -> Result<usize, DaeError> {
        if let Some(k) = self.variables.iter().position(|v| v == name) {
            return Ok(k);
        }
        if self.constants.iter().any(|c| c == name) {
            return Err(DaeError::syntax(self.lex.line, col, format!("{name:?} is a constant, not a variable")));
        }
        Err(DaeError::UndeclaredIdentifier { name: name.to_string(), line: self.lex.line, col })
    }
}

const RESERVED: [&str; 7] = ["Der", "sin", "cos", "tan", "exp", "log", "sqrt"];

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `.dae` text.
pub fn parse_dae(text: &str) -> Result<DaeSource, DaeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, raw)| (k + 1, raw.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    match lines.next() {
        Some((_, l)) if l.trim() == "DAE v1" => {}
        Some((line, l)) => {
            let col = l.len() - l.trim_start().len() + 1;
            return Err(DaeError::syntax(line, col, "expected header \"DAE v1\""));
        }
        None => return Err(DaeError::syntax(1, 1, "expected header \"DAE v1\"")),
    }

    let mut variables: Vec<String> = Vec::new();
    let mut constants: Vec<String> = Vec::new();
    let mut eq_lines: Vec<(usize, &str, usize)> = Vec::new();
    let mut names = BTreeSet::new();

    for (line, l) in lines {
        let indent = l.len() - l.trim_start().len();
        let body = l.trim_start();
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match keyword {
            "vars" | "const" => {
                for name in rest.split_whitespace() {
                    if !is_ident(name) || RESERVED.contains(&name) {
                        let col = indent + 1 + body.find(name).unwrap_or(0);
                        return Err(DaeError::syntax(line, col, format!("invalid name {name:?}")));
                    }
                    if !names.insert(name.to_string()) {
                        return Err(DaeError::DuplicateName(name.to_string()));
                    }
                    if keyword == "vars" {
                        variables.push(name.to_string());
                    } else {
                        constants.push(name.to_string());
                    }
                }
            }
            "eq" => eq_lines.push((line, body, indent)),
            _ => return Err(DaeError::syntax(line, indent + 1, format!("unknown directive {keyword:?}"))),
        }
    }

    let mut equations = Vec::with_capacity(eq_lines.len());
    let mut labels = BTreeSet::new();
    for (line, body, indent) in eq_lines {
        let after = &body[2..];
        let (label, expr_text) = after
            .split_once(':')
            .ok_or_else(|| DaeError::syntax(line, indent + 1, "expected \"eq <label>: <expr>\""))?;
        let label = label.trim();
        if !is_ident(label) {
            return Err(DaeError::syntax(line, indent + 3, format!("invalid equation label {label:?}")));
        }
        if !labels.insert(label.to_string()) {
            return Err(DaeError::DuplicateName(label.to_string()));
        }
        let base_col = indent + 2 + after.len() - expr_text.len() + 1;
        let expr = Parser::new(line, expr_text, base_col, &variables, &constants)?.finish()?;
        equations.push(Equation { label: label.to_string(), expr });
    }

    if equations.len() != variables.len() || variables.is_empty() {
        return Err(DaeError::CountMismatch {
            equations: equations.len(),
            variables: variables.len(),
        });
    }
    Ok(DaeSource { variables, constants, equations })
}

/// `sigma_ij` = highest derivative order of variable `j` occurring in equation `i`.
pub fn signature_of(src: &DaeSource) -> SignatureMatrix {
    let n = src.variables.len();
    let mut entries = Vec::new();
    for (i, eq) in src.equations.iter().enumerate() {
        let mut best: Vec<Option<u32>> = vec![None; n];
        eq.expr.visit_vars(&mut |j, order| {
            best[j] = Some(best[j].map_or(order, |b| b.max(order)));
        });
        entries.extend(best.iter().enumerate().filter_map(|(j, o)| o.map(|o| (i, j, o as i64))));
    }
    SignatureMatrix::new(n, entries)
        .and_then(|m| {
            m.with_labels(
                src.equations.iter().map(|e| e.label.clone()).collect(),
                src.variables.clone(),
            )
        })
        .expect("a parsed source has distinct labels and n > 0")
}
