//! Curve-component expressions and their evaluation with derivatives.
//!
//! Expressions are standard infix over one free variable: real literals, the
//! constants `pi` and `e`, unary minus, `+ - * / ^` and the functions `sin`,
//! `cos`, `tan`, `exp`, `log`, `sqrt`, `atan`, `asin`, `acos`, `sinh`,
//! `cosh`. There is no implicit multiplication: `2t` is a syntax error.
//!
//! [`Expression::eval_jet`] returns the value together with the first three
//! derivatives with respect to the variable, computed exactly by [`Jet3`]
//! arithmetic.

mod jet;
mod parse;

use std::fmt;

pub use jet::Jet3;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    fn from_name(name: &str) -> Option<Self> {
        match name {
            "pi" => Some(Constant::Pi),
            "e" => Some(Constant::E),
            _ => None,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Atan,
    Asin,
    Acos,
    Sinh,
    Cosh,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Atan,
        Func::Asin,
        Func::Acos,
        Func::Sinh,
        Func::Cosh,
    ];

    fn from_name(name: &str) -> Option<Self> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
            Func::Asin => "asin",
            Func::Acos => "acos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }
}

/// Abstract syntax tree node. [`Node::Var`] is the expression's single free
/// variable; its name lives on the owning [`Expression`].
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Num(f64),
    Const(Constant),
    Var,
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// A parsed expression in one named variable. Immutable after parsing.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    root: Node,
    param: String,
}

/// True for names that cannot be used as the free variable.
pub fn is_reserved(name: &str) -> bool {
    Func::from_name(name).is_some() || Constant::from_name(name).is_some()
}

impl Expression {
    /// Parses `text` with `t` as the free variable.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_param(text, "t")
    }

    pub fn parse_with_param(text: &str, param: &str) -> Result<Self> {
        let valid = param
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && param.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || is_reserved(param) {
            return Err(Error::InvalidArgument(format!(
                "`{param}` is not a usable parameter name"
            )));
        }
        let root = parse::Parser::parse(text, param)?;
        Ok(Expression {
            root,
            param: param.to_string(),
        })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    /// Value and first three derivatives at `t0`.
    pub fn eval_jet(&self, t0: f64) -> Result<Jet3> {
        let ev = Evaluator {
            t0,
            param: &self.param,
        };
        let j = ev.eval(&self.root)?;
        if !j.is_finite() {
            return Err(ev.domain(&self.root, "result is not finite"));
        }
        Ok(j)
    }

    pub fn eval(&self, t0: f64) -> Result<f64> {
        Ok(self.eval_jet(t0)?.v)
    }
}

struct Evaluator<'a> {
    t0: f64,
    param: &'a str,
}

impl Evaluator<'_> {
    fn domain(&self, node: &Node, reason: &'static str) -> Error {
        Error::Domain {
            node: Printer {
                node,
                param: self.param,
            }
            .to_string(),
            at: self.t0,
            reason,
        }
    }

    fn eval(&self, node: &Node) -> Result<Jet3> {
        Ok(match node {
            Node::Num(v) => Jet3::constant(*v),
            Node::Const(c) => Jet3::constant(c.value()),
            Node::Var => Jet3::variable(self.t0),
            Node::Neg(a) => -self.eval(a)?,
            Node::Binary(op, a, b) => {
                let x = self.eval(a)?;
                match op {
                    BinOp::Add => x + self.eval(b)?,
                    BinOp::Sub => x - self.eval(b)?,
                    BinOp::Mul => x * self.eval(b)?,
                    BinOp::Div => {
                        let r = self
                            .eval(b)?
                            .recip()
                            .ok_or_else(|| self.domain(node, "division by zero"))?;
                        x * r
                    }
                    BinOp::Pow => self.pow(node, x, b)?,
                }
            }
            Node::Call(f, a) => self.call(node, *f, self.eval(a)?)?,
        })
    }

    fn pow(&self, node: &Node, base: Jet3, exponent: &Node) -> Result<Jet3> {
        if !contains_var(exponent) {
            let p = self.eval(exponent)?.v;
            if p.fract() == 0.0 && p.abs() <= 1024.0 {
                let n = p.abs() as u64;
                let mag = base.powu(n);
                return if p >= 0.0 {
                    Ok(mag)
                } else {
                    mag.recip()
                        .ok_or_else(|| self.domain(node, "zero raised to a negative power"))
                };
            }
            let x = base.v;
            if x <= 0.0 {
                return Err(self.domain(node, "non-integer power of a non-positive base"));
            }
            let xp = x.powf(p);
            return Ok(base.compose([
                xp,
                p * xp / x,
                p * (p - 1.0) * xp / (x * x),
                p * (p - 1.0) * (p - 2.0) * xp / (x * x * x),
            ]));
        }
        if base.v <= 0.0 {
            return Err(self.domain(node, "variable power of a non-positive base"));
        }
        let ln = base.compose(log_phi(base.v));
        Ok((ln * self.eval(exponent)?).exp())
    }

    fn call(&self, node: &Node, f: Func, x: Jet3) -> Result<Jet3> {
        let v = x.v;
        Ok(match f {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => {
                if v.cos() == 0.0 {
                    return Err(self.domain(node, "tan at a pole"));
                }
                let t = v.tan();
                let s = 1.0 + t * t;
                x.compose([t, s, 2.0 * t * s, s * (2.0 + 6.0 * t * t)])
            }
            Func::Exp => x.exp(),
            Func::Log => {
                if v <= 0.0 {
                    return Err(self.domain(node, "log of a non-positive value"));
                }
                x.compose(log_phi(v))
            }
            Func::Sqrt => {
                if v <= 0.0 {
                    return Err(self.domain(
                        node,
                        "sqrt of a non-positive value (derivatives undefined at 0)",
                    ));
                }
                let r = v.sqrt();
                x.compose([
                    r,
                    0.5 / r,
                    -0.25 / (r * v),
                    0.375 / (r * v * v),
                ])
            }
            Func::Atan => x.atan(),
            Func::Asin | Func::Acos => {
                let q = 1.0 - v * v;
                if q <= 0.0 {
                    return Err(self.domain(node, "argument outside (-1, 1)"));
                }
                let r = q.sqrt();
                let phi = [
                    v.asin(),
                    1.0 / r,
                    v / (q * r),
                    (1.0 + 2.0 * v * v) / (q * q * r),
                ];
                if f == Func::Asin {
                    x.compose(phi)
                } else {
                    x.compose([v.acos(), -phi[1], -phi[2], -phi[3]])
                }
            }
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
        })
    }
}

fn log_phi(x: f64) -> [f64; 4] {
    let r = 1.0 / x;
    [x.ln(), r, -r * r, 2.0 * r * r * r]
}

fn contains_var(node: &Node) -> bool {
    match node {
        Node::Var => true,
        Node::Num(_) | Node::Const(_) => false,
        Node::Neg(a) | Node::Call(_, a) => contains_var(a),
        Node::Binary(_, a, b) => contains_var(a) || contains_var(b),
    }
}

// Printing precedence levels.
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(node: &Node) -> u8 {
    match node {
        Node::Binary(BinOp::Add | BinOp::Sub, ..) => PREC_ADD,
        Node::Binary(BinOp::Mul | BinOp::Div, ..) => PREC_MUL,
        Node::Neg(_) => PREC_NEG,
        Node::Binary(BinOp::Pow, ..) => PREC_POW,
        _ => PREC_ATOM,
    }
}

struct Printer<'a> {
    node: &'a Node,
    param: &'a str,
}

impl Printer<'_> {
    fn child(&self, f: &mut fmt::Formatter<'_>, node: &Node, parens: bool) -> fmt::Result {
        let p = Printer {
            node,
            param: self.param,
        };
        if parens {
            write!(f, "({p})")
        } else {
            write!(f, "{p}")
        }
    }
}

/// Canonical form with the minimal parentheses the grammar needs.
impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            Node::Num(v) => write!(f, "{v:?}"),
            Node::Const(c) => f.write_str(c.name()),
            Node::Var => f.write_str(self.param),
            Node::Neg(a) => {
                f.write_str("-")?;
                self.child(f, a, precedence(a) < PREC_NEG)
            }
            Node::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                self.child(f, a, false)?;
                f.write_str(")")
            }
            Node::Binary(BinOp::Pow, a, b) => {
                self.child(f, a, precedence(a) <= PREC_POW)?;
                f.write_str("^")?;
                self.child(f, b, precedence(b) < PREC_NEG)
            }
            Node::Binary(op, a, b) => {
                let (prec, sym) = match op {
                    BinOp::Add => (PREC_ADD, " + "),
                    BinOp::Sub => (PREC_ADD, " - "),
                    BinOp::Mul => (PREC_MUL, " * "),
                    BinOp::Div => (PREC_MUL, " / "),
                    BinOp::Pow => unreachable!(),
                };
                self.child(f, a, precedence(a) < prec)?;
                f.write_str(sym)?;
                self.child(f, b, precedence(b) <= prec)
            }
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer {
            node: &self.root,
            param: &self.param,
        }
        .fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn num(v: f64) -> Box<Node> {
        Box::new(Node::Num(v))
    }

    fn bin(op: BinOp, a: Box<Node>, b: Box<Node>) -> Box<Node> {
        Box::new(Node::Binary(op, a, b))
    }

    #[test]
    fn paper_component_shape() {
        let e = Expression::parse("sin(2*t)/4 + t/2").unwrap();
        let expected = bin(
            BinOp::Add,
            bin(
                BinOp::Div,
                Box::new(Node::Call(Func::Sin, bin(BinOp::Mul, num(2.0), Box::new(Node::Var)))),
                num(4.0),
            ),
            bin(BinOp::Div, Box::new(Node::Var), num(2.0)),
        );
        assert_eq!(e.root(), &*expected);
    }

    #[test]
    fn variable_and_precedence() {
        assert_eq!(Expression::parse("t").unwrap().root(), &Node::Var);
        assert_eq!(Expression::parse("1 - 2^3").unwrap().eval(0.0).unwrap(), -7.0);
        assert_eq!(Expression::parse("-t^2").unwrap().eval(3.0).unwrap(), -9.0);
        assert_eq!(Expression::parse("2^3^2").unwrap().eval(0.0).unwrap(), 512.0);
        assert_eq!(Expression::parse("2^-1").unwrap().eval(0.0).unwrap(), 0.5);
        assert_eq!(Expression::parse("8/4/2").unwrap().eval(0.0).unwrap(), 1.0);
        assert_eq!(Expression::parse("1.5e1 + 2E-1").unwrap().eval(0.0).unwrap(), 15.2);
        assert!((Expression::parse("pi + e").unwrap().eval(0.0).unwrap() - PI - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert!(matches!(Expression::parse("2t"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(Expression::parse("(t + 1"), Err(Error::Syntax { offset: 6, .. })));
        assert!(matches!(Expression::parse("t $ 1"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(Expression::parse(""), Err(Error::Syntax { .. })));
        assert!(matches!(Expression::parse("2e"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(
            Expression::parse("x + 1"),
            Err(Error::UnknownIdentifier { offset: 0, .. })
        ));
        assert!(matches!(Expression::parse("sin(1, 2)"), Err(Error::Arity { found: 2, .. })));
        assert!(matches!(Expression::parse("sin + 1"), Err(Error::Arity { found: 0, .. })));
        assert!(Expression::parse_with_param("s", "sin").is_err());
        assert!(Expression::parse_with_param("s", "e").is_err());
    }

    #[test]
    fn jet_examples() {
        let e = Expression::parse("sin(2*t)/4 + t/2").unwrap();
        assert_eq!(e.eval_jet(0.0).unwrap(), Jet3::new(0.0, 1.0, 0.0, -2.0));
        let e = Expression::parse("t^3").unwrap();
        assert_eq!(e.eval_jet(2.0).unwrap(), Jet3::new(8.0, 12.0, 12.0, 6.0));
    }

    #[test]
    fn jet_matches_finite_differences_for_negated_cosine() {
        let e = Expression::parse("-cos(t)").unwrap();
        let t0 = PI / 3.0;
        let h = 1e-4;
        let j = e.eval_jet(t0).unwrap();
        let f = |k: f64| -(t0 + k * h).cos();
        let d1 = (f(1.0) - f(-1.0)) / (2.0 * h);
        let d2 = (f(1.0) - 2.0 * f(0.0) + f(-1.0)) / (h * h);
        let d3 = (f(2.0) - 2.0 * f(1.0) + 2.0 * f(-1.0) - f(-2.0)) / (2.0 * h * h * h);
        assert!((j.d1 - d1).abs() <= 1e-6 * d1.abs());
        assert!((j.d2 - d2).abs() <= 1e-6 * d2.abs().max(1e-1));
        // third-difference rounding noise is ~1e-16/h^3; compare loosely
        assert!((j.d3 - d3).abs() <= 1e-3);
    }

    #[test]
    fn domain_errors_name_the_node() {
        let e = Expression::parse("1 + sqrt(t - 2)").unwrap();
        match e.eval_jet(1.0) {
            Err(Error::Domain { node, .. }) => assert_eq!(node, "sqrt(t - 2.0)"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Expression::parse("1/t").unwrap().eval_jet(0.0), Err(Error::Domain { .. })));
        assert!(matches!(Expression::parse("log(t)").unwrap().eval_jet(-1.0), Err(Error::Domain { .. })));
        assert!(matches!(Expression::parse("t^0.5").unwrap().eval_jet(-1.0), Err(Error::Domain { .. })));
        assert!(matches!(Expression::parse("asin(t)").unwrap().eval_jet(1.0), Err(Error::Domain { .. })));
        assert!(matches!(Expression::parse("t^-2").unwrap().eval_jet(0.0), Err(Error::Domain { .. })));
        // integer exponent of a negative base is fine
        assert_eq!(Expression::parse("t^3").unwrap().eval(-2.0).unwrap(), -8.0);
    }

    #[test]
    fn printer_is_minimal_and_reparses() {
        for (src, printed) in [
            ("sin(2*t)/4 + t/2", "sin(2.0 * t) / 4.0 + t / 2.0"),
            ("-t^2", "-t^2.0"),
            ("(-t)^2", "(-t)^2.0"),
            ("(2^3)^2", "(2.0^3.0)^2.0"),
            ("1 - (2 - t)", "1.0 - (2.0 - t)"),
            ("t - -t", "t - -t"),
            ("2^-t", "2.0^-t"),
        ] {
            let e = Expression::parse(src).unwrap();
            assert_eq!(e.to_string(), printed);
            assert_eq!(Expression::parse(printed).unwrap(), e);
        }
    }

    #[test]
    fn function_derivatives_against_closed_forms() {
        // d/dt of f(t) for each function at a point inside every domain
        let t0: f64 = 0.3;
        let cases: [(&str, f64); 11] = [
            ("sin(t)", t0.cos()),
            ("cos(t)", -t0.sin()),
            ("tan(t)", 1.0 / t0.cos().powi(2)),
            ("exp(t)", t0.exp()),
            ("log(t)", 1.0 / t0),
            ("sqrt(t)", 0.5 / t0.sqrt()),
            ("atan(t)", 1.0 / (1.0 + t0 * t0)),
            ("asin(t)", 1.0 / (1.0 - t0 * t0).sqrt()),
            ("acos(t)", -1.0 / (1.0 - t0 * t0).sqrt()),
            ("sinh(t)", t0.cosh()),
            ("cosh(t)", t0.sinh()),
        ];
        for (src, d1) in cases {
            let j = Expression::parse(src).unwrap().eval_jet(t0).unwrap();
            assert!((j.d1 - d1).abs() < 1e-14, "{src}");
        }
        // variable exponent: t^t, d1 = t^t (ln t + 1)
        let j = Expression::parse("t^t").unwrap().eval_jet(t0).unwrap();
        assert!((j.d1 - t0.powf(t0) * (t0.ln() + 1.0)).abs() < 1e-14);
    }
}
