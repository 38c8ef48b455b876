//! Expression language for building signals and querying functionals.
//!
//! ```text
//! expr  := app ('+' app)*
//! app   := NAME '(' [arg (',' arg)*] ')' | literal | '[' [expr (',' expr)*] ']' | NAME
//! arg   := NAME '=' expr | expr
//! ```
//!
//! Literals are exact: `3/2`, `-i`, `1+1/2i`. Translation and modulation
//! amounts are in units of `π^(-1/2)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rug::{Complex, Float};

use crate::error::Error;
use crate::mix::GaussMix;
use crate::numeric::{self, EvalConfig, NumericSignal};
use crate::poly::{GaussPoly, Poly};
use crate::quad::GaussQuad;
use crate::scalar::{Amplitude, ComplexRational, Rational};
use crate::simple::{NormOrder, NormValue, SimpleGauss};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at line {}, column {}: {message}", pos.line, pos.column)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{op} at {pos}: {source}")]
pub struct EvalError {
    pub pos: Pos,
    pub op: String,
    #[source]
    pub source: Error,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Literal(ComplexRational),
    Word(String),
    List(Vec<Expr>),
    Call { name: String, args: Vec<Arg> },
    Sum(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Arg {
    pub name: Option<String>,
    pub value: Expr,
}

/// Accepted positional argument counts; `None` for functions taking named arguments.
fn arity(name: &str) -> Option<&'static [usize]> {
    Some(match name {
        "gauss" => &[2, 4],
        "gausspoly" => &[1, 2],
        "translate" | "shrink" | "modulate" | "scale" | "norm" | "pow" => &[2],
        "conj" | "adjoint" | "diff" | "fourierA" | "fourierS" | "hermite" | "variance" | "integrate" => &[1],
        "add" | "mul" | "conv" | "dot" => &[2],
        _ => return None,
    })
}

const NAMED_ONLY: &[(&str, &[&str])] = &[
    ("gauss", &["y", "neg", "a", "b", "c"]),
    ("gausspoly", &["p"]),
];

struct Parser<'a> {
    src: &'a [u8],
    at: usize,
    line: usize,
    line_start: usize,
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        at: 0,
        line: 1,
        line_start: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.at < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.at] as char)));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.at - self.line_start + 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.src.get(self.at) {
            if c == b'\n' {
                self.line += 1;
                self.line_start = self.at + 1;
            } else if !c.is_ascii_whitespace() {
                break;
            }
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.at).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.at += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected `{}`, found `{}`", c as char, d as char))),
            None => Err(self.error(format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.app()?;
        while self.peek() == Some(b'+') {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.app()?;
            lhs = Expr {
                kind: ExprKind::Sum(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
        Ok(lhs)
    }

    fn app(&mut self) -> Result<Expr, ParseError> {
        let pos = match self.peek() {
            None => return Err(self.error("expected an expression, found end of input")),
            Some(_) => self.pos(),
        };
        let c = self.src[self.at];
        if c == b'[' {
            self.at += 1;
            let mut items = Vec::new();
            if self.peek() == Some(b']') {
                self.at += 1;
            } else {
                loop {
                    items.push(self.expr()?);
                    match self.peek() {
                        Some(b',') => self.at += 1,
                        _ => {
                            self.expect(b']')?;
                            break;
                        }
                    }
                }
            }
            return Ok(Expr {
                kind: ExprKind::List(items),
                pos,
            });
        }
        if c.is_ascii_digit() || c == b'-' || c == b'+' || self.at_imaginary_unit() {
            let value = self.literal()?;
            return Ok(Expr {
                kind: ExprKind::Literal(value),
                pos,
            });
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let name = self.ident();
            if self.peek() != Some(b'(') {
                return Ok(Expr {
                    kind: ExprKind::Word(name),
                    pos,
                });
            }
            self.at += 1;
            let args = self.args()?;
            check_call(&name, &args, pos)?;
            return Ok(Expr {
                kind: ExprKind::Call { name, args },
                pos,
            });
        }
        Err(self.error(format!("unexpected `{}`", c as char)))
    }

    fn args(&mut self) -> Result<Vec<Arg>, ParseError> {
        let mut args = Vec::new();
        if self.peek() == Some(b')') {
            self.at += 1;
            return Ok(args);
        }
        loop {
            let save = (self.at, self.line, self.line_start);
            let mut name = None;
            if matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) && !self.at_imaginary_unit() {
                let ident = self.ident();
                if self.peek() == Some(b'=') {
                    self.at += 1;
                    name = Some(ident);
                } else {
                    (self.at, self.line, self.line_start) = save;
                }
            }
            let value = self.expr()?;
            args.push(Arg { name, value });
            match self.peek() {
                Some(b',') => self.at += 1,
                _ => {
                    self.expect(b')')?;
                    return Ok(args);
                }
            }
        }
    }

    fn ident(&mut self) -> String {
        let start = self.at;
        while matches!(self.src.get(self.at), Some(c) if c.is_ascii_alphanumeric() || *c == b'_') {
            self.at += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.at]).into_owned()
    }

    /// `i` standing alone as a word.
    fn at_imaginary_unit(&self) -> bool {
        self.src.get(self.at) == Some(&b'i')
            && !matches!(self.src.get(self.at + 1), Some(c) if c.is_ascii_alphanumeric() || *c == b'_')
    }

    /// `[sign] rational [i]`, optionally followed without spaces by `sign [rational] i`.
    fn literal(&mut self) -> Result<ComplexRational, ParseError> {
        let pos = self.pos();
        let (first, imag) = self.signed_part().ok_or_else(|| ParseError {
            pos,
            message: "malformed number".into(),
        })?;
        if imag {
            return Ok(ComplexRational::imag(first));
        }
        if matches!(self.src.get(self.at), Some(b'+') | Some(b'-')) {
            let save = self.at;
            if let Some((second, true)) = self.signed_part() {
                return Ok(ComplexRational::new(first, second));
            }
            self.at = save;
        }
        Ok(ComplexRational::real(first))
    }

    fn signed_part(&mut self) -> Option<(Rational, bool)> {
        let mut negative = false;
        match self.src.get(self.at) {
            Some(b'-') => {
                negative = true;
                self.at += 1;
            }
            Some(b'+') => self.at += 1,
            _ => {}
        }
        let digits = |p: &mut Self| {
            let start = p.at;
            while matches!(p.src.get(p.at), Some(c) if c.is_ascii_digit()) {
                p.at += 1;
            }
            (p.at > start).then(|| std::str::from_utf8(&p.src[start..p.at]).unwrap().parse::<BigInt>().unwrap())
        };
        let mut value = match digits(self) {
            Some(n) => {
                let mut q = Rational::from_integer(n);
                if self.src.get(self.at) == Some(&b'/') {
                    self.at += 1;
                    let d = digits(self)?;
                    if d.is_zero() {
                        return None;
                    }
                    q /= Rational::from_integer(d);
                }
                Some(q)
            }
            None => None,
        };
        let imag = self.at_imaginary_unit();
        if imag {
            self.at += 1;
            value.get_or_insert_with(Rational::one);
        }
        let v = value?;
        Some((if negative { -v } else { v }, imag))
    }
}

fn check_call(name: &str, args: &[Arg], pos: Pos) -> Result<(), ParseError> {
    let allowed = arity(name).ok_or_else(|| ParseError {
        pos,
        message: format!("unknown function `{name}`"),
    })?;
    let named: Vec<&str> = args.iter().filter_map(|a| a.name.as_deref()).collect();
    let positional = args.len() - named.len();
    let names_ok = named.iter().all(|n| {
        NAMED_ONLY
            .iter()
            .any(|(f, ok)| *f == name && ok.contains(n))
    });
    if !names_ok {
        return Err(ParseError {
            pos,
            message: format!("`{name}` does not take argument(s) {}", named.join(", ")),
        });
    }
    let ok = if named.is_empty() {
        allowed.contains(&positional)
    } else if name == "gauss" {
        positional == 0 && named.contains(&"y")
    } else {
        positional == 1
    };
    if !ok {
        return Err(ParseError {
            pos,
            message: format!(
                "`{name}` takes {} argument(s), got {}",
                allowed.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or "),
                args.len()
            ),
        });
    }
    Ok(())
}

/// Result of evaluating an expression.
#[derive(Clone, Debug)]
pub enum Value {
    Scalar(ComplexRational),
    Bool(bool),
    Infinity,
    List(Vec<Value>),
    Simple(SimpleGauss),
    Signal(GaussMix),
    Norm(NormValue),
    Number(Complex),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Bool(_) => "boolean",
            Value::Infinity => "inf",
            Value::List(_) => "list",
            Value::Simple(_) | Value::Signal(_) => "signal",
            Value::Norm(_) => "norm value",
            Value::Number(_) => "number",
        }
    }

    /// The signal this value denotes, if it is one.
    pub fn to_signal(&self) -> Option<GaussMix> {
        match self {
            Value::Simple(g) => Some(GaussMix::from_simple(g)),
            Value::Signal(x) => Some(x.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(z) => write!(f, "{z}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Infinity => write!(f, "inf"),
            Value::List(items) => {
                write!(f, "[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Value::Simple(g) => write!(f, "{g}"),
            Value::Signal(x) => write!(f, "{x}"),
            Value::Norm(n) => match n.exact() {
                Some(q) => write!(f, "{n} = {q}"),
                None => write!(f, "{n} = {}", format_float(&n.to_float(128))),
            },
            Value::Number(z) => write!(f, "{}", format_complex(z)),
        }
    }
}

/// 30 significant digits.
pub fn format_float(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(30))
}

pub fn format_complex(z: &Complex) -> String {
    let (re, im) = (z.real(), z.imag());
    if im.is_zero() {
        return format_float(re);
    }
    let sign = if im.is_sign_negative() { "-" } else { "+" };
    let abs_im = Float::with_val(im.prec(), im.abs_ref());
    format!("{}{sign}{}i", format_float(re), format_float(&abs_im))
}

#[derive(Default)]
pub struct Evaluator {
    pub config: EvalConfig,
}

type EvalResult = Result<Value, EvalError>;

fn fail(op: &str, pos: Pos, source: Error) -> EvalError {
    EvalError {
        pos,
        op: op.to_string(),
        source,
    }
}

fn domain(op: &str, pos: Pos, msg: impl Into<String>) -> EvalError {
    fail(op, pos, Error::Domain(msg.into()))
}

pub fn evaluate(e: &Expr) -> EvalResult {
    Evaluator::default().eval(e)
}

impl Evaluator {
    pub fn new(config: EvalConfig) -> Self {
        Evaluator { config }
    }

    pub fn eval_str(&self, text: &str) -> Result<Value, Box<dyn std::error::Error>> {
        let e = parse(text)?;
        Ok(self.eval(&e)?)
    }

    pub fn eval(&self, e: &Expr) -> EvalResult {
        match &e.kind {
            ExprKind::Literal(z) => Ok(Value::Scalar(z.clone())),
            ExprKind::Word(w) => match w.as_str() {
                "true" => Ok(Value::Bool(true)),
                "false" => Ok(Value::Bool(false)),
                "inf" => Ok(Value::Infinity),
                other => Err(domain("name", e.pos, format!("unknown name `{other}`"))),
            },
            ExprKind::List(items) => Ok(Value::List(
                items.iter().map(|i| self.eval(i)).collect::<Result<_, _>>()?,
            )),
            ExprKind::Sum(l, r) => {
                let (l, r) = (self.eval(l)?, self.eval(r)?);
                self.add(l, r, e.pos)
            }
            ExprKind::Call { name, args } => self.call(name, args, e.pos),
        }
    }

    fn add(&self, l: Value, r: Value, pos: Pos) -> EvalResult {
        match (&l, &r) {
            (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a + b)),
            _ => {
                let x = signal("add", &l, pos)?;
                let y = signal("add", &r, pos)?;
                Ok(Value::Signal(x.add(&y)))
            }
        }
    }

    fn call(&self, name: &str, args: &[Arg], pos: Pos) -> EvalResult {
        let positional: Vec<Value> = args
            .iter()
            .filter(|a| a.name.is_none())
            .map(|a| self.eval(&a.value))
            .collect::<Result<_, _>>()?;
        let named = |key: &str| -> Result<Option<Value>, EvalError> {
            args.iter()
                .find(|a| a.name.as_deref() == Some(key))
                .map(|a| self.eval(&a.value))
                .transpose()
        };
        let wrap = |r: crate::error::Result<GaussMix>| r.map(Value::Signal).map_err(|e| fail(name, pos, e));
        let p = &positional;
        match name {
            "gauss" => self.gauss(p, &named, pos),
            "gausspoly" => {
                let core = signal(name, &p[0], pos)?;
                let poly = match named("p")? {
                    Some(v) => poly_of(name, &v, pos)?,
                    None if p.len() == 2 => poly_of(name, &p[1], pos)?,
                    None => Poly::one(),
                };
                let terms = core
                    .terms()
                    .iter()
                    .map(|t| GaussPoly::new(t.core().clone(), t.poly().mul(&poly)));
                Ok(Value::Signal(GaussMix::from_terms(terms)))
            }
            "hermite" => {
                let n = natural(name, &p[0], pos)?;
                Ok(Value::Signal(GaussMix::hermite(n)))
            }
            "translate" => {
                let k = rational(name, &p[0], pos)?;
                Ok(Value::Signal(signal(name, &p[1], pos)?.translate(&k)))
            }
            "modulate" => {
                let k = rational(name, &p[0], pos)?;
                Ok(Value::Signal(signal(name, &p[1], pos)?.modulate(&k)))
            }
            "shrink" => {
                let k = rational(name, &p[0], pos)?;
                if let Value::Simple(g) = &p[1] {
                    return g.shrink(&k).map(Value::Simple).map_err(|e| fail(name, pos, e));
                }
                wrap(signal(name, &p[1], pos)?.shrink(&k))
            }
            "scale" => {
                let k = scalar(name, &p[0], pos)?;
                match (&p[1], k.is_real() && !k.re.is_negative()) {
                    (Value::Simple(g), true) => g.scale(&k.re).map(Value::Simple).map_err(|e| fail(name, pos, e)),
                    (Value::Scalar(z), _) => Ok(Value::Scalar(&k * z)),
                    _ => Ok(Value::Signal(signal(name, &p[1], pos)?.scale(&k))),
                }
            }
            "conj" => match &p[0] {
                Value::Simple(g) => Ok(Value::Simple(g.conjugate())),
                Value::Scalar(z) => Ok(Value::Scalar(z.conj())),
                v => Ok(Value::Signal(signal(name, v, pos)?.conjugate())),
            },
            "adjoint" => match &p[0] {
                Value::Simple(g) => Ok(Value::Simple(g.conjugate())),
                v => Ok(Value::Signal(signal(name, v, pos)?.adjoint())),
            },
            "diff" => Ok(Value::Signal(signal(name, &p[0], pos)?.differentiate())),
            "fourierA" | "fourierS" => {
                if let Value::Simple(g) = &p[0] {
                    return g.fourier().map(Value::Simple).map_err(|e| fail(name, pos, e));
                }
                let x = signal(name, &p[0], pos)?;
                wrap(if name == "fourierA" {
                    x.fourier_analysis()
                } else {
                    x.fourier_synthesis()
                })
            }
            "add" => self.add(p[0].clone(), p[1].clone(), pos),
            "mul" => match (&p[0], &p[1]) {
                (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a * b)),
                (Value::Simple(a), Value::Simple(b)) => Ok(Value::Simple(a.mul(b))),
                (Value::Scalar(k), v) | (v, Value::Scalar(k)) => Ok(Value::Signal(signal(name, v, pos)?.scale(k))),
                (a, b) => Ok(Value::Signal(signal(name, a, pos)?.mul(&signal(name, b, pos)?))),
            },
            "pow" => {
                let n = natural(name, &p[0], pos)?;
                match &p[1] {
                    Value::Simple(g) => Ok(Value::Simple(g.pow(n))),
                    v => Ok(Value::Signal(signal(name, v, pos)?.pow(n))),
                }
            }
            "conv" => match (&p[0], &p[1]) {
                (Value::Simple(a), Value::Simple(b)) => a.convolve(b).map(Value::Simple).map_err(|e| fail(name, pos, e)),
                (a, b) => wrap(signal(name, a, pos)?.convolve(&signal(name, b, pos)?)),
            },
            "norm" => self.norm(&p[0], &p[1], pos),
            "variance" => match &p[0] {
                Value::Simple(g) => g.variance().map(Value::Norm).map_err(|e| fail(name, pos, e)),
                v => match simple_of(&signal(name, v, pos)?) {
                    Some(g) => g.variance().map(Value::Norm).map_err(|e| fail(name, pos, e)),
                    None => Err(domain(name, pos, "variance is defined for centred real Gaussians gauss(y, c)")),
                },
            },
            "dot" => {
                let x = signal(name, &p[0], pos)?;
                let y = signal(name, &p[1], pos)?;
                x.scalar_product(&y, self.config.precision_bits)
                    .map(Value::Number)
                    .map_err(|e| fail(name, pos, e))
            }
            "integrate" => {
                let x = signal(name, &p[0], pos)?;
                x.total_integral(self.config.precision_bits)
                    .map(Value::Number)
                    .map_err(|e| fail(name, pos, e))
            }
            _ => Err(domain(name, pos, format!("unknown function `{name}`"))),
        }
    }

    fn gauss(
        &self,
        p: &[Value],
        named: &dyn Fn(&str) -> Result<Option<Value>, EvalError>,
        pos: Pos,
    ) -> EvalResult {
        let op = "gauss";
        let simple = |y: &Value, c: &Value| -> EvalResult {
            let y = rational(op, y, pos)?;
            let c = rational(op, c, pos)?;
            SimpleGauss::new(y, c).map(Value::Simple).map_err(|e| fail(op, pos, e))
        };
        if p.len() == 2 {
            return simple(&p[0], &p[1]);
        }
        if p.len() == 4 {
            let (y, a, b, c) = (
                scalar(op, &p[0], pos)?,
                scalar(op, &p[1], pos)?,
                scalar(op, &p[2], pos)?,
                scalar(op, &p[3], pos)?,
            );
            return Ok(Value::Signal(GaussMix::from_quad(GaussQuad::with_square(y, a, b, c))));
        }
        let y = named("y")?.ok_or_else(|| domain(op, pos, "missing y"))?;
        let (a, b, c, neg) = (named("a")?, named("b")?, named("c")?, named("neg")?);
        if a.is_none() && b.is_none() && neg.is_none() {
            if let Some(c) = &c {
                return simple(&y, c);
            }
        }
        let get = |v: Option<Value>| -> Result<ComplexRational, EvalError> {
            v.map(|v| scalar(op, &v, pos)).unwrap_or_else(|| Ok(ComplexRational::zero()))
        };
        let negate = match neg {
            None => false,
            Some(Value::Bool(b)) => b,
            Some(v) => return Err(domain(op, pos, format!("neg must be true or false, got {}", v.kind()))),
        };
        let amp = Amplitude::new(scalar(op, &y, pos)?, negate);
        Ok(Value::Signal(GaussMix::from_quad(GaussQuad::new(amp, get(a)?, get(b)?, get(c)?))))
    }

    fn norm(&self, order: &Value, x: &Value, pos: Pos) -> EvalResult {
        let op = "norm";
        let order = match order {
            Value::Infinity => NormOrder::Infinity,
            v => {
                let n = natural(op, v, pos)?;
                if n == 0 {
                    return Err(domain(op, pos, "norm order must be positive"));
                }
                NormOrder::Finite(n)
            }
        };
        let simple = match x {
            Value::Simple(g) => Some(g.clone()),
            v => simple_of(&signal(op, v, pos)?),
        };
        if let Some(g) = simple {
            return g.norm(order).map(Value::Norm).map_err(|e| fail(op, pos, e));
        }
        let NormOrder::Finite(p) = order else {
            return Err(domain(op, pos, "the sup norm is only available for gauss(y, c)"));
        };
        let mix = signal(op, x, pos)?;
        let prec = self.config.precision_bits;
        let sig = NumericSignal::new(&mix, prec);
        let window = sig.window(&self.config).map_err(|e| fail(op, pos, e))?;
        let q = numeric::quadrature_on(
            |t| {
                let m = Float::with_val(prec, sig.eval(t).abs_ref());
                Complex::with_val(prec, rug::ops::Pow::pow(m, p))
            },
            window,
            &self.config,
        );
        let value = rug::ops::Pow::pow(q.value.real().clone(), 1.0 / p as f64);
        Ok(Value::Number(Complex::with_val(prec, value)))
    }
}

/// `gauss(y, c)` recovered from a one-term mixture when it has that form.
pub fn simple_of(x: &GaussMix) -> Option<SimpleGauss> {
    if x.is_zero() {
        return SimpleGauss::new(Rational::zero(), Rational::zero()).ok();
    }
    let [t] = x.terms() else { return None };
    let core = t.core();
    let p = t.poly();
    if p.degree() != Some(0) || !core.a().is_zero() || !core.b().is_zero() || !core.c().is_real() {
        return None;
    }
    let amp = core.amp().mul(&Amplitude::from_scalar(&p.coeff(0)));
    if amp.negate() || !amp.square().is_real() || amp.square().re.is_negative() {
        return None;
    }
    SimpleGauss::new(amp.square().re.clone(), core.c().re.clone()).ok()
}

fn signal(op: &str, v: &Value, pos: Pos) -> Result<GaussMix, EvalError> {
    match v {
        Value::Scalar(k) => Ok(GaussMix::one().scale(k)),
        other => other
            .to_signal()
            .ok_or_else(|| domain(op, pos, format!("expected a signal, got {}", other.kind()))),
    }
}

fn scalar(op: &str, v: &Value, pos: Pos) -> Result<ComplexRational, EvalError> {
    match v {
        Value::Scalar(z) => Ok(z.clone()),
        other => Err(domain(op, pos, format!("expected a number, got {}", other.kind()))),
    }
}

fn rational(op: &str, v: &Value, pos: Pos) -> Result<Rational, EvalError> {
    let z = scalar(op, v, pos)?;
    if !z.is_real() {
        return Err(domain(op, pos, format!("expected a real number, got {z}")));
    }
    Ok(z.re)
}

fn natural(op: &str, v: &Value, pos: Pos) -> Result<u32, EvalError> {
    let q = rational(op, v, pos)?;
    use num_traits::ToPrimitive;
    if !q.is_integer() || q.is_negative() {
        return Err(domain(op, pos, format!("expected a non-negative integer, got {q}")));
    }
    q.to_integer()
        .to_u32()
        .ok_or_else(|| domain(op, pos, format!("{q} is too large")))
}

fn poly_of(op: &str, v: &Value, pos: Pos) -> Result<Poly, EvalError> {
    match v {
        Value::List(items) => Ok(Poly::new(
            items.iter().map(|i| scalar(op, i, pos)).collect::<Result<_, _>>()?,
        )),
        other => Err(domain(op, pos, format!("expected a coefficient list, got {}", other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> Value {
        Evaluator::default().eval_str(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let e = parse("conv(gauss(1,0,0,1), gauss(1,0,0,1))").unwrap();
        assert!(matches!(&e.kind, ExprKind::Call { name, args } if name == "conv" && args.len() == 2));
        let e = parse("translate(1/2, hermite(3))").unwrap();
        match &e.kind {
            ExprKind::Call { name, args } => {
                assert_eq!(name, "translate");
                assert_eq!(args[0].value.kind, ExprKind::Literal(crate::scalar::rat(1, 2).into()));
            }
            _ => panic!(),
        }
        let err = parse("gauss(1,0,0").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, column: 12 });
    }

    #[test]
    fn parse_errors() {
        assert!(parse("frobnicate(1)").unwrap_err().message.contains("unknown function"));
        assert!(parse("translate(1)").unwrap_err().message.contains("takes 2"));
        let e = parse("add(gauss(1,1),\n  gauss(1,1)))").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, column: 14 });
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn literals() {
        let lit = |s: &str| match parse(s).unwrap().kind {
            ExprKind::Literal(z) => z,
            k => panic!("{k:?}"),
        };
        assert_eq!(lit("1+1/2i"), "1+1/2i".parse().unwrap());
        assert_eq!(lit("-2/3-i"), "-2/3-i".parse().unwrap());
        assert_eq!(lit("i"), ComplexRational::i());
        assert_eq!(lit("-i"), -ComplexRational::i());
        assert_eq!(lit("3i"), ComplexRational::from_ints(0, 3));
        assert!(matches!(parse("1 + 2").unwrap().kind, ExprKind::Sum(..)));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval("fourierA(gauss(1,0,0,1))").to_string(), "gauss(y=1, a=0, b=0, c=1)");
        let err = Evaluator::default()
            .eval_str("conv(gauss(1,0,0,-1), gauss(1,0,0,1))")
            .unwrap_err()
            .to_string();
        assert!(err.contains("divergent: Re(c0+c1) ≤ 0"), "{err}");
        assert_eq!(eval("norm(1, gauss(1,1))").to_string(), "root(1, 2)*pi^0 = 1");
        assert_eq!(
            eval("conv(gauss(1,0,0,1),gauss(1,0,0,1))").to_string(),
            "gauss(y=1/2, a=0, b=0, c=1/2)"
        );
        assert_eq!(eval("variance(gauss(1,1))").to_string().split(' ').next(), Some("root(1/2,"));
    }

    #[test]
    fn render_round_trip() {
        for s in [
            "hermite(3)",
            "translate(1/2, hermite(3)) + gauss(2, 1, 0, 3)",
            "scale(-1, gauss(1+i, 0, 1/2, 2+i))",
            "modulate(3, gausspoly(gauss(2,0,0,1), p=[1, i, 2]))",
            "gauss(y=-1, neg=true, a=0, b=0, c=1)",
            "gauss(3, 1/2)",
        ] {
            let v = eval(s);
            let back = eval(&v.to_string());
            assert_eq!(v.to_string(), back.to_string(), "{s}");
            assert!(v.to_signal().unwrap().struct_eq(&back.to_signal().unwrap()));
        }
    }

    #[test]
    fn functionals() {
        let d = eval("dot(gauss(1,1), gauss(1,1))");
        let Value::Number(z) = d else { panic!() };
        assert!((z.real().to_f64() - 0.5f64.sqrt()).abs() < 1e-15);
        let Value::Number(z) = eval("integrate(gauss(1,0,0,1))") else { panic!() };
        assert!((z.real().to_f64() - 1.0).abs() < 1e-15);
        let Value::Number(z) = eval("norm(2, hermite(1))") else { panic!() };
        assert!(z.real().to_f64() > 0.0);
        assert!(matches!(eval("norm(inf, gauss(4,1))"), Value::Norm(_)));
    }
}
