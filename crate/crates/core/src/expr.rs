//! Expressions for exact constants: a small recursive-descent grammar, a
//! pretty printer that re-parses to the same tree, and exact evaluation in
//! any field context.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ['^' ['-'] integer]
//! atom   := number | ident | 'sqrt(' expr ')' | 'root(' poly ',' integer ')' | '(' expr ')'
//! poly   := '[' integer (',' integer)* ']' | expr      (an expression in x)
//! ```
//!
//! A coefficient list is written lowest degree first, so `root([-2, 0, 0, 1], 0)`
//! and `root(x^3 - 2, 0)` both denote the real cube root of 2. The index
//! counts distinct real roots in ascending order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebraic::RealAlgebraic;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, FieldOp};
use crate::poly::{IntPolynomial, RationalPolynomial};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    /// Nonnegative integer literal.
    Int(BigInt),
    /// Decimal literal kept as written, e.g. `"0.25"`.
    Decimal(String),
    Var(String),
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, i64),
    Sqrt(Box<Expression>),
    Root(RootPoly, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootPoly {
    /// Integer coefficients, lowest degree first.
    Coeffs(Vec<BigInt>),
    /// An expression in the variable `x`.
    Expr(Box<Expression>),
}

/// Variable bindings for evaluation.
pub type Env = BTreeMap<String, FieldElement>;

pub fn parse_expression(text: &str) -> Result<Expression> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax { position: self.pos, expected: expected.iter().map(|s| s.to_string()).collect() }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&(c as char).to_string()]))
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expression::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expression::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expression::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expression::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expression> {
        if self.eat(b'-') {
            return Ok(Expression::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let k = self.integer()?;
            let k: i64 = k.try_into().map_err(|_| self.error(&["small integer exponent"]))?;
            return Ok(Expression::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["integer"]));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn signed_integer(&mut self) -> Result<BigInt> {
        let neg = self.eat(b'-');
        let k = self.integer()?;
        Ok(if neg { -k } else { k })
    }

    fn atom(&mut self) -> Result<Expression> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
                match name.as_str() {
                    "sqrt" if self.peek() == Some(b'(') => {
                        self.pos += 1;
                        let e = self.expr()?;
                        self.expect(b')')?;
                        Ok(Expression::Sqrt(Box::new(e)))
                    }
                    "root" if self.peek() == Some(b'(') => {
                        self.pos += 1;
                        let poly = if self.eat(b'[') {
                            let mut cs = vec![self.signed_integer()?];
                            while self.eat(b',') {
                                cs.push(self.signed_integer()?);
                            }
                            self.expect(b']')?;
                            RootPoly::Coeffs(cs)
                        } else {
                            RootPoly::Expr(Box::new(self.expr()?))
                        };
                        self.expect(b',')?;
                        let idx = self.integer()?;
                        let idx: usize = idx.try_into().map_err(|_| self.error(&["small root index"]))?;
                        self.expect(b')')?;
                        Ok(Expression::Root(poly, idx))
                    }
                    _ => Ok(Expression::Var(name)),
                }
            }
            _ => Err(self.error(&["number", "identifier", "sqrt(", "root(", "("])),
        }
    }

    fn number(&mut self) -> Result<Expression> {
        let start = self.pos;
        let int = self.integer()?;
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let frac_start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if frac_start == self.pos {
                return Err(self.error(&["digit"]));
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok(Expression::Decimal(text.to_string()));
        }
        Ok(Expression::Int(int))
    }
}

impl Expression {
    fn precedence(&self) -> u8 {
        match self {
            Expression::Add(..) | Expression::Sub(..) => 1,
            Expression::Mul(..) | Expression::Div(..) => 2,
            Expression::Neg(_) => 3,
            Expression::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expression, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Expression as E;
        match self {
            E::Int(n) => write!(f, "{n}"),
            E::Decimal(s) => f.write_str(s),
            E::Var(v) => f.write_str(v),
            E::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, 3)
            }
            // binary operators are left-associative, so a right operand of
            // equal precedence needs parentheses
            E::Add(a, b) | E::Sub(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(if matches!(self, E::Add(..)) { " + " } else { " - " })?;
                write_child(f, b, 2)
            }
            E::Mul(a, b) | E::Div(a, b) => {
                write_child(f, a, 2)?;
                f.write_str(if matches!(self, E::Mul(..)) { " * " } else { " / " })?;
                write_child(f, b, 3)
            }
            E::Pow(a, k) => {
                write_child(f, a, 5)?;
                write!(f, "^{k}")
            }
            E::Sqrt(a) => write!(f, "sqrt({a})"),
            E::Root(RootPoly::Coeffs(cs), i) => {
                let cs: Vec<String> = cs.iter().map(BigInt::to_string).collect();
                write!(f, "root([{}], {i})", cs.join(", "))
            }
            E::Root(RootPoly::Expr(p), i) => write!(f, "root({p}, {i})"),
        }
    }
}

impl RootPoly {
    pub fn to_polynomial(&self) -> Result<IntPolynomial> {
        match self {
            RootPoly::Coeffs(cs) => Ok(IntPolynomial::new(cs.clone())),
            RootPoly::Expr(e) => Ok(eval_polynomial(e, "x")?.clear_denominators()),
        }
    }
}

/// Evaluate exactly in `ctx`. Square roots and polynomial roots that leave
/// the context are errors; division by zero is an error.
pub fn eval(expr: &Expression, ctx: FieldContext, env: &Env) -> Result<FieldElement> {
    use Expression as E;
    let bin = |op, a: &Expression, b: &Expression| -> Result<FieldElement> {
        let (a, b) = (eval(a, ctx, env)?, eval(b, ctx, env)?);
        ctx.arith(op, &a, Some(&b))
    };
    match expr {
        E::Int(n) => Ok(ctx.from_rational(Rational::from_integer(n.clone()))),
        E::Decimal(s) => Ok(ctx.from_rational(rational::parse_rational(s)?)),
        E::Var(v) => {
            let val = env.get(v).ok_or_else(|| Error::UnknownVariable(v.clone()))?;
            if val.context() != ctx {
                return Err(Error::ContextMismatch(ctx.name().into(), val.context().name().into()));
            }
            Ok(val.clone())
        }
        E::Neg(a) => ctx.arith(FieldOp::Neg, &eval(a, ctx, env)?, None),
        E::Add(a, b) => bin(FieldOp::Add, a, b),
        E::Sub(a, b) => bin(FieldOp::Sub, a, b),
        E::Mul(a, b) => bin(FieldOp::Mul, a, b),
        E::Div(a, b) => bin(FieldOp::Div, a, b),
        E::Pow(a, k) => {
            let base = eval(a, ctx, env)?;
            let mut acc = ctx.one();
            for _ in 0..k.unsigned_abs() {
                acc = ctx.arith(FieldOp::Mul, &acc, Some(&base))?;
            }
            if *k < 0 {
                acc = ctx.arith(FieldOp::Inv, &acc, None)?;
            }
            Ok(acc)
        }
        E::Sqrt(a) => ctx.sqrt(&eval(a, ctx, env)?),
        E::Root(p, idx) => {
            let r = RealAlgebraic::root_of(&p.to_polynomial()?, *idx)?;
            match ctx {
                FieldContext::RealAlgebraic => Ok(FieldElement::Algebraic(r)),
                FieldContext::Rational => match r.as_rational() {
                    Some(q) => Ok(FieldElement::Rational(q.clone())),
                    None => Err(Error::NotInContext(r.to_string(), ctx.name().into())),
                },
            }
        }
    }
}

/// Parse and evaluate in one step.
pub fn eval_str(text: &str, ctx: FieldContext) -> Result<FieldElement> {
    eval(&parse_expression(text)?, ctx, &Env::new())
}

/// Read `expr` as a polynomial in `var` with rational coefficients.
///
/// Division is only allowed by nonzero constants, negative powers only of
/// constants; `sqrt` and `root` must evaluate to rationals.
pub fn eval_polynomial(expr: &Expression, var: &str) -> Result<RationalPolynomial> {
    use Expression as E;
    let constant = |e: &Expression| -> Result<RationalPolynomial> {
        let v = eval(e, FieldContext::Rational, &Env::new())?;
        Ok(RationalPolynomial::constant(v.as_rational().cloned().expect("rational context")))
    };
    match expr {
        E::Int(_) | E::Decimal(_) | E::Sqrt(_) | E::Root(..) => constant(expr),
        E::Var(v) if v == var => Ok(RationalPolynomial::monomial(rational::int(1), 1)),
        E::Var(v) => Err(Error::UnknownVariable(v.clone())),
        E::Neg(a) => Ok(eval_polynomial(a, var)?.neg()),
        E::Add(a, b) => Ok(eval_polynomial(a, var)?.add(&eval_polynomial(b, var)?)),
        E::Sub(a, b) => Ok(eval_polynomial(a, var)?.sub(&eval_polynomial(b, var)?)),
        E::Mul(a, b) => Ok(eval_polynomial(a, var)?.mul(&eval_polynomial(b, var)?)),
        E::Div(a, b) => {
            let d = eval_polynomial(b, var)?;
            match d.degree() {
                None => Err(Error::DivisionByZero),
                Some(0) => Ok(eval_polynomial(a, var)?.scale(&d.leading_coeff().recip())),
                Some(_) => Err(Error::InvalidModel(format!("division by the non-constant `{b}`"))),
            }
        }
        E::Pow(a, k) => {
            let base = eval_polynomial(a, var)?;
            if *k >= 0 {
                return Ok(base.pow(*k as u32));
            }
            match base.degree() {
                None => Err(Error::DivisionByZero),
                Some(0) => {
                    let c = base.leading_coeff().recip();
                    Ok(RationalPolynomial::constant(num_traits::pow(c, k.unsigned_abs() as usize)))
                }
                Some(_) => Err(Error::InvalidModel(format!("negative power of the non-constant `{a}`"))),
            }
        }
    }
}

/// Literal for an exact rational in this grammar: `3`, `-3`, `3/4`, `-3/4`.
pub fn rational_literal(q: &Rational) -> Expression {
    let mut num = Expression::Int(q.numer().abs());
    if q.is_negative() {
        num = Expression::Neg(Box::new(num));
    }
    if q.denom() == &BigInt::from(1) {
        num
    } else {
        Expression::Div(Box::new(num), Box::new(Expression::Int(q.denom().clone())))
    }
}

/// Whether `e` mentions only constants (no variables).
pub fn is_constant(e: &Expression) -> bool {
    use Expression as E;
    match e {
        E::Int(_) | E::Decimal(_) | E::Root(..) => true,
        E::Var(_) => false,
        E::Neg(a) | E::Pow(a, _) | E::Sqrt(a) => is_constant(a),
        E::Add(a, b) | E::Sub(a, b) | E::Mul(a, b) | E::Div(a, b) => is_constant(a) && is_constant(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn ra(text: &str) -> FieldElement {
        eval_str(text, FieldContext::RealAlgebraic).unwrap()
    }

    #[test]
    fn sum_of_surds() {
        let FieldElement::Algebraic(v) = ra("sqrt(2)+sqrt(3)") else { panic!() };
        assert_eq!(v.defining(), &IntPolynomial::from_i64s(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn exact_cancellation() {
        assert!(ra("sqrt(2)*sqrt(2) - 2").is_zero());
        assert_eq!(ra("root(x^3 - 2, 0)^3"), ra("2"));
        assert_eq!(ra("root([-2, 0, 0, 1], 0)"), ra("root(x^3-2, 0)"));
        assert_eq!(ra("root(x^3 - x, 1)"), ra("0"));
    }

    #[test]
    fn division_by_zero_parses_then_fails() {
        let e = parse_expression("1/0").unwrap();
        assert_eq!(eval(&e, FieldContext::Rational, &Env::new()).unwrap_err(), Error::DivisionByZero);
        assert_eq!(eval_str("2^-1", FieldContext::Rational).unwrap(), FieldElement::Rational(ratio(1, 2)));
        assert_eq!(eval_str("0^-1", FieldContext::Rational).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn unbalanced_parenthesis_reports_end() {
        assert_eq!(
            parse_expression("sqrt(2").unwrap_err(),
            Error::Syntax { position: 6, expected: vec![")".into()] }
        );
        assert!(matches!(parse_expression("1 +").unwrap_err(), Error::Syntax { position: 3, .. }));
        assert!(matches!(parse_expression("1 2").unwrap_err(), Error::Syntax { position: 2, .. }));
    }

    #[test]
    fn rational_context_rejects_irrational_values() {
        assert!(matches!(eval_str("sqrt(2)", FieldContext::Rational), Err(Error::SqrtUnavailableInContext(..))));
        assert!(matches!(eval_str("root(x^2-2, 1)", FieldContext::Rational), Err(Error::NotInContext(..))));
        assert_eq!(eval_str("sqrt(9/4) + 0.5", FieldContext::Rational).unwrap(), FieldElement::Rational(int(2)));
    }

    #[test]
    fn variables_and_polynomials() {
        let mut env = Env::new();
        env.insert("a".into(), FieldContext::Rational.from_int(3));
        let e = parse_expression("a^2 - 1").unwrap();
        assert_eq!(eval(&e, FieldContext::Rational, &env).unwrap(), FieldContext::Rational.from_int(8));
        assert!(matches!(eval_str("b", FieldContext::Rational), Err(Error::UnknownVariable(_))));
        let p = eval_polynomial(&parse_expression("(x - 1/2)*(x + 1)").unwrap(), "x").unwrap();
        assert_eq!(p.clear_denominators(), IntPolynomial::from_i64s(&[-1, 1, 2]));
    }

    #[test]
    fn printer_parenthesizes() {
        let e = parse_expression("a - (b - c) * -(d + e)^2 / f^-1").unwrap();
        assert_eq!(e.to_string(), "a - (b - c) * -(d + e)^2 / f^-1");
        assert_eq!(parse_expression("(((1)))").unwrap().to_string(), "1");
        assert_eq!(rational_literal(&ratio(-3, 4)).to_string(), "-3 / 4");
    }

    fn arb_expr() -> impl Strategy<Value = Expression> {
        let leaf = prop_oneof![
            (0u64..1000).prop_map(|n| Expression::Int(n.into())),
            ("[0-9]{1,3}\\.[0-9]{1,3}").prop_map(Expression::Decimal),
            prop::sample::select(vec!["a", "b", "x"]).prop_map(|s| Expression::Var(s.into())),
            (prop::collection::vec(-9i64..10, 1..4), 0usize..2)
                .prop_map(|(cs, i)| Expression::Root(RootPoly::Coeffs(cs.into_iter().map(Into::into).collect()), i)),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expression::Neg(Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expression::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expression::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expression::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expression::Div(Box::new(a), Box::new(b))),
                (inner.clone(), -3i64..4).prop_map(|(a, k)| Expression::Pow(Box::new(a), k)),
                inner.clone().prop_map(|a| Expression::Sqrt(Box::new(a))),
                (inner, 0usize..3).prop_map(|(a, i)| Expression::Root(RootPoly::Expr(Box::new(a)), i)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse_expression(&printed).unwrap(), e, "{}", printed);
        }
    }
}
