//! A small expression language for smooth functions on charts.
//!
//! Expressions evaluate generically over any [`EvalScalar`]: plain
//! complex numbers for point evaluation, or scalar jets
//! ([`Jet<Complex64>`]) for exact forward-mode directional derivatives
//! of arbitrary order. Symbolic differentiation ([`Expr::diff`]) keeps
//! derived objects (brackets, Lie derivatives, exterior derivatives)
//! closed under the same representation.
//!
//! Grammar accepted by [`parse`]: infix `+ - * /`, powers `^n` with an
//! integer literal, parentheses, `sin`, `cos`, `exp`, `pow(x, n)`,
//! numeric literals, the imaginary unit `i`, `pi`, and the variables
//! `z1..zd` (first point slot) and `w1..wd` (second slot, kernels only).

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::{Coeff, Jet};

/// Scalar type an expression can be evaluated over.
pub trait EvalScalar: Clone {
    fn constant(like: &Self, c: Complex64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn powi(&self, n: i32) -> Result<Self>;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn exp(&self) -> Self;
}

impl EvalScalar for Complex64 {
    fn constant(_like: &Self, c: Complex64) -> Self {
        c
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.norm() == 0.0 {
            return Err(Error::Eval("division by zero".into()));
        }
        Ok(self / rhs)
    }
    fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 && self.norm() == 0.0 {
            return Err(Error::Eval("zero to a negative power".into()));
        }
        Ok(self.powi(n))
    }
    fn sin(&self) -> Self {
        num_complex::Complex::sin(*self)
    }
    fn cos(&self) -> Self {
        num_complex::Complex::cos(*self)
    }
    fn exp(&self) -> Self {
        num_complex::Complex::exp(*self)
    }
}

/// Scalar jet: truncated Taylor coefficients of `t -> f(z + t v)`.
pub type ScalarJet = Jet<Complex64>;

fn jet_const(like: &ScalarJet, c: Complex64) -> ScalarJet {
    let mut j = Jet::zero(&Complex64::new(0.0, 0.0), like.len(), like.root());
    // length >= 1 is a Jet invariant
    let mut coeffs = j.coeffs().to_vec();
    coeffs[0] = c;
    j = Jet::new(coeffs, like.root()).unwrap();
    j
}

/// Composition recurrences for the elementary functions on scalar jets:
/// if g = phi(f) then k g_k is a convolution of j f_j with the
/// derivative series, e.g. (exp f)' = f' exp f.
fn jet_exp(f: &ScalarJet) -> ScalarJet {
    let m = f.len();
    let mut g = vec![Complex64::new(0.0, 0.0); m];
    g[0] = num_complex::Complex::exp(f.coeffs()[0]);
    for k in 1..m {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            acc += (j as f64) * f.coeffs()[j] * g[k - j];
        }
        g[k] = acc / (k as f64);
    }
    Jet::new(g, f.root()).unwrap()
}

fn jet_sin_cos(f: &ScalarJet) -> (ScalarJet, ScalarJet) {
    let m = f.len();
    let mut s = vec![Complex64::new(0.0, 0.0); m];
    let mut c = vec![Complex64::new(0.0, 0.0); m];
    s[0] = num_complex::Complex::sin(f.coeffs()[0]);
    c[0] = num_complex::Complex::cos(f.coeffs()[0]);
    for k in 1..m {
        let mut ds = Complex64::new(0.0, 0.0);
        let mut dc = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            ds += (j as f64) * f.coeffs()[j] * c[k - j];
            dc += (j as f64) * f.coeffs()[j] * s[k - j];
        }
        s[k] = ds / (k as f64);
        c[k] = -dc / (k as f64);
    }
    (
        Jet::new(s, f.root()).unwrap(),
        Jet::new(c, f.root()).unwrap(),
    )
}

impl EvalScalar for ScalarJet {
    fn constant(like: &Self, c: Complex64) -> Self {
        jet_const(like, c)
    }
    fn add(&self, rhs: &Self) -> Self {
        Jet::add(self, rhs).unwrap()
    }
    fn sub(&self, rhs: &Self) -> Self {
        Jet::sub(self, rhs).unwrap()
    }
    fn mul(&self, rhs: &Self) -> Self {
        Jet::mul(self, rhs).unwrap()
    }
    fn neg(&self) -> Self {
        Jet::neg(self)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs
            .inverse()
            .map_err(|_| Error::Eval("division by a jet with zero value".into()))?;
        Ok(Jet::mul(self, &inv).unwrap())
    }
    fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 {
            self.inverse()
                .map_err(|_| Error::Eval("zero jet to a negative power".into()))?
        } else {
            self.clone()
        };
        let mut acc = Jet::one(&Complex64::new(0.0, 0.0), self.len(), self.root());
        for _ in 0..n.unsigned_abs() {
            acc = Jet::mul(&acc, &base).unwrap();
        }
        Ok(acc)
    }
    fn sin(&self) -> Self {
        jet_sin_cos(self).0
    }
    fn cos(&self) -> Self {
        jet_sin_cos(self).1
    }
    fn exp(&self) -> Self {
        jet_exp(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Var(usize),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Pow(Arc<Expr>, i32),
    Sin(Arc<Expr>),
    Cos(Arc<Expr>),
    Exp(Arc<Expr>),
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(Complex64::new(c, 0.0))
    }

    pub fn var(k: usize) -> Expr {
        Expr::Var(k)
    }

    fn is_const(&self, v: f64) -> bool {
        matches!(self, Expr::Const(c) if *c == Complex64::new(v, 0.0))
    }

    /// Smart constructors with light constant folding; they keep
    /// symbolic derivatives from blowing up.
    pub fn add(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
            _ if a.is_const(0.0) => b,
            _ if b.is_const(0.0) => a,
            _ => Expr::Add(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
            _ if b.is_const(0.0) => a,
            _ if a.is_const(0.0) => Expr::neg(b),
            _ => Expr::Sub(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (&a, &b) {
            (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
            _ if a.is_const(0.0) || b.is_const(0.0) => Expr::constant(0.0),
            _ if a.is_const(1.0) => b,
            _ if b.is_const(1.0) => a,
            _ => Expr::Mul(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        if a.is_const(0.0) && !b.is_const(0.0) {
            return Expr::constant(0.0);
        }
        if b.is_const(1.0) {
            return a;
        }
        Expr::Div(Arc::new(a), Arc::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        match &a {
            Expr::Const(x) => Expr::Const(-x),
            Expr::Neg(inner) => inner.as_ref().clone(),
            _ => Expr::Neg(Arc::new(a)),
        }
    }

    pub fn pow(a: Expr, n: i32) -> Expr {
        match n {
            0 => Expr::constant(1.0),
            1 => a,
            _ => Expr::Pow(Arc::new(a), n),
        }
    }

    pub fn sin(a: Expr) -> Expr {
        Expr::Sin(Arc::new(a))
    }

    pub fn cos(a: Expr) -> Expr {
        Expr::Cos(Arc::new(a))
    }

    pub fn exp(a: Expr) -> Expr {
        Expr::Exp(Arc::new(a))
    }

    /// Evaluate over any scalar type; `args[k]` is the value of `Var(k)`.
    pub fn eval<C: EvalScalar>(&self, args: &[C]) -> Result<C> {
        if args.is_empty() {
            return Err(Error::Eval("no evaluation arguments".into()));
        }
        self.eval_inner(args)
    }

    fn eval_inner<C: EvalScalar>(&self, args: &[C]) -> Result<C> {
        Ok(match self {
            Expr::Const(c) => C::constant(&args[0], *c),
            Expr::Var(k) => args
                .get(*k)
                .cloned()
                .ok_or(Error::DimMismatch {
                    expected: *k + 1,
                    got: args.len(),
                })?,
            Expr::Add(a, b) => a.eval_inner(args)?.add(&b.eval_inner(args)?),
            Expr::Sub(a, b) => a.eval_inner(args)?.sub(&b.eval_inner(args)?),
            Expr::Mul(a, b) => a.eval_inner(args)?.mul(&b.eval_inner(args)?),
            Expr::Div(a, b) => a.eval_inner(args)?.div(&b.eval_inner(args)?)?,
            Expr::Neg(a) => a.eval_inner(args)?.neg(),
            Expr::Pow(a, n) => a.eval_inner(args)?.powi(*n)?,
            Expr::Sin(a) => a.eval_inner(args)?.sin(),
            Expr::Cos(a) => a.eval_inner(args)?.cos(),
            Expr::Exp(a) => a.eval_inner(args)?.exp(),
        })
    }

    /// Symbolic partial derivative with respect to `Var(var)`.
    pub fn diff(&self, var: usize) -> Expr {
        match self {
            Expr::Const(_) => Expr::constant(0.0),
            Expr::Var(k) => Expr::constant(if *k == var { 1.0 } else { 0.0 }),
            Expr::Add(a, b) => Expr::add(a.diff(var), b.diff(var)),
            Expr::Sub(a, b) => Expr::sub(a.diff(var), b.diff(var)),
            Expr::Mul(a, b) => Expr::add(
                Expr::mul(a.diff(var), b.as_ref().clone()),
                Expr::mul(a.as_ref().clone(), b.diff(var)),
            ),
            Expr::Div(a, b) => Expr::div(
                Expr::sub(
                    Expr::mul(a.diff(var), b.as_ref().clone()),
                    Expr::mul(a.as_ref().clone(), b.diff(var)),
                ),
                Expr::pow(b.as_ref().clone(), 2),
            ),
            Expr::Neg(a) => Expr::neg(a.diff(var)),
            Expr::Pow(a, n) => Expr::mul(
                Expr::mul(Expr::constant(*n as f64), Expr::pow(a.as_ref().clone(), n - 1)),
                a.diff(var),
            ),
            Expr::Sin(a) => Expr::mul(Expr::cos(a.as_ref().clone()), a.diff(var)),
            Expr::Cos(a) => Expr::neg(Expr::mul(Expr::sin(a.as_ref().clone()), a.diff(var))),
            Expr::Exp(a) => Expr::mul(Expr::exp(a.as_ref().clone()), a.diff(var)),
        }
    }

    /// Substitute `Var(k) -> subst[k]`.
    pub fn compose(&self, subst: &[Expr]) -> Result<Expr> {
        Ok(match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(k) => subst
                .get(*k)
                .cloned()
                .ok_or(Error::DimMismatch {
                    expected: *k + 1,
                    got: subst.len(),
                })?,
            Expr::Add(a, b) => Expr::add(a.compose(subst)?, b.compose(subst)?),
            Expr::Sub(a, b) => Expr::sub(a.compose(subst)?, b.compose(subst)?),
            Expr::Mul(a, b) => Expr::mul(a.compose(subst)?, b.compose(subst)?),
            Expr::Div(a, b) => Expr::div(a.compose(subst)?, b.compose(subst)?),
            Expr::Neg(a) => Expr::neg(a.compose(subst)?),
            Expr::Pow(a, n) => Expr::pow(a.compose(subst)?, *n),
            Expr::Sin(a) => Expr::sin(a.compose(subst)?),
            Expr::Cos(a) => Expr::cos(a.compose(subst)?),
            Expr::Exp(a) => Expr::exp(a.compose(subst)?),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Expr::Const(c) => write!(f, "({}+{}i)", c.re, c.im),
            Expr::Var(k) => write!(f, "x{k}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Pow(a, n) => write!(f, "{a}^{n}"),
            Expr::Sin(a) => write!(f, "sin({a})"),
            Expr::Cos(a) => write!(f, "cos({a})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
        }
    }
}

/// Parse an expression over `z1..zd` (and `w1..wd` when `slots == 2`).
pub fn parse(src: &str, dim: usize, slots: usize) -> Result<Expr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        dim,
        slots,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
    slots: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.pos,
                msg: format!("expected '{}'", c as char),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::add(acc, self.term()?);
            } else if self.eat(b'-') {
                acc = Expr::sub(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = Expr::mul(acc, self.factor()?);
            } else if self.eat(b'/') {
                acc = Expr::div(acc, self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::neg(self.factor()?));
        }
        let mut base = self.atom()?;
        if self.eat(b'^') {
            let n = self.integer()?;
            base = Expr::pow(base, n);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i32> {
        let neg = self.eat(b'-');
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected integer exponent".into(),
            });
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i32 = text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })?;
        self.skip_ws();
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            _ => Err(Error::Parse {
                pos: self.pos,
                msg: "expected expression".into(),
            }),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E')
        {
            // allow exponent signs directly after e/E
            if (self.src[self.pos] == b'e' || self.src[self.pos] == b'E')
                && matches!(self.src.get(self.pos + 1), Some(b'+') | Some(b'-'))
            {
                self.pos += 1;
            }
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: f64 = text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("bad number '{text}'"),
        })?;
        self.skip_ws();
        Ok(Expr::constant(v))
    }

    fn ident(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        self.skip_ws();
        match name.as_str() {
            "i" => Ok(Expr::Const(Complex64::new(0.0, 1.0))),
            "pi" => Ok(Expr::constant(std::f64::consts::PI)),
            "sin" | "cos" | "exp" => {
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(match name.as_str() {
                    "sin" => Expr::sin(arg),
                    "cos" => Expr::cos(arg),
                    _ => Expr::exp(arg),
                })
            }
            "pow" => {
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b',')?;
                let n = self.integer()?;
                self.expect(b')')?;
                Ok(Expr::pow(arg, n))
            }
            _ => {
                if let Some(rest) = name.strip_prefix('z') {
                    if let Ok(k) = rest.parse::<usize>() {
                        if k >= 1 && k <= self.dim {
                            return Ok(Expr::var(k - 1));
                        }
                    }
                }
                if let Some(rest) = name.strip_prefix('w') {
                    if self.slots == 2 {
                        if let Ok(k) = rest.parse::<usize>() {
                            if k >= 1 && k <= self.dim {
                                return Ok(Expr::var(self.dim + k - 1));
                            }
                        }
                    }
                }
                Err(Error::Parse {
                    pos: start,
                    msg: format!("unknown identifier '{name}'"),
                })
            }
        }
    }
}

/// Evaluate the jet of `t -> expr(base + t * dir)` with `len`
/// coefficients (root 1). `base` and `dir` are flat complex argument
/// vectors of equal length.
pub fn directional_jet(
    expr: &Expr,
    base: &[Complex64],
    dir: &[Complex64],
    len: usize,
) -> Result<Vec<Complex64>> {
    if base.len() != dir.len() {
        return Err(Error::DimMismatch {
            expected: base.len(),
            got: dir.len(),
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let args: Vec<ScalarJet> = base
        .iter()
        .zip(dir)
        .map(|(&b, &v)| {
            let mut coeffs = vec![zero; len.max(1)];
            coeffs[0] = b;
            if len > 1 {
                coeffs[1] = v;
            }
            Jet::new(coeffs, 1).unwrap()
        })
        .collect();
    Ok(expr.eval(&args)?.coeffs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(e: &Expr, args: &[f64]) -> Complex64 {
        let cargs: Vec<Complex64> = args.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        e.eval(&cargs).unwrap()
    }

    #[test]
    fn parse_and_eval() {
        let e = parse("z1^2 + 3*z2 - sin(z1*z2)", 2, 1).unwrap();
        let v = re(&e, &[1.0, 2.0]);
        assert!((v.re - (1.0 + 6.0 - (2.0f64).sin())).abs() < 1e-15);
    }

    #[test]
    fn parse_kernel_slots() {
        let e = parse("exp(-(z1 - w1)^2)", 1, 2).unwrap();
        let v = re(&e, &[1.0, 3.0]);
        assert!((v.re - (-4.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse("z1 + q3", 2, 1) {
            Err(Error::Parse { pos, .. }) => assert!(pos > 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("w1", 1, 1).is_err()); // second slot disabled
    }

    #[test]
    fn symbolic_diff_polynomial() {
        let e = parse("z1^3", 1, 1).unwrap();
        let d = e.diff(0);
        let v = re(&d, &[2.0]);
        assert!((v.re - 12.0).abs() < 1e-13);
    }

    #[test]
    fn symbolic_diff_matches_jet() {
        let e = parse("exp(z1) * sin(z2) + z1/(1 + z2^2)", 2, 1).unwrap();
        let z = [0.3, -0.7];
        let dir = [1.0, 0.5];
        let base: Vec<Complex64> = z.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let dirc: Vec<Complex64> = dir.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let jet = directional_jet(&e, &base, &dirc, 2).unwrap();
        let symbolic = re(&e.diff(0), &z) * dir[0] + re(&e.diff(1), &z) * dir[1];
        assert!((jet[1] - symbolic).norm() < 1e-13);
    }

    #[test]
    fn jet_transcendentals_match_series() {
        // exp(t) around 0: coefficients 1/k!
        let t = Jet::new(
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            1,
        )
        .unwrap();
        let e = EvalScalar::exp(&t);
        let mut fact = 1.0;
        for (k, c) in e.coeffs().iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((c.re - 1.0 / fact).abs() < 1e-15);
        }
        // sin'' = -sin at a generic point
        let x = 0.9;
        let base = Jet::new(
            vec![Complex64::new(x, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            1,
        )
        .unwrap();
        let s = EvalScalar::sin(&base);
        assert!((s.coeffs()[2].re - (-x.sin() / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn higher_order_jet_of_rational_function() {
        // f(z) = 1/(1-z) at 0 along direction 1: coefficients all 1.
        let e = parse("1/(1 - z1)", 1, 1).unwrap();
        let jet = directional_jet(
            &e,
            &[Complex64::new(0.0, 0.0)],
            &[Complex64::new(1.0, 0.0)],
            6,
        )
        .unwrap();
        for c in jet {
            assert!((c.re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn compose_substitutes() {
        let f = parse("z1^2", 1, 1).unwrap();
        let g = parse("z1 + 1", 1, 1).unwrap();
        let fg = f.compose(&[g]).unwrap();
        assert!((re(&fg, &[2.0]).re - 9.0).abs() < 1e-15);
    }
}
