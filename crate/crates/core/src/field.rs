//! The quantity field: an abstract ordered-field interface, the two exact
//! instances shipped here (rationals and real algebraic numbers), and a
//! sampling checker for the ordered-field laws.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebraic::RealAlgebraic;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::report::{AxiomReport, LawCheck, Verdict};
use crate::sample::{self, SampleConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldContext {
    Rational,
    RealAlgebraic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

impl FieldContext {
    pub fn name(&self) -> &'static str {
        match self {
            FieldContext::Rational => "rational",
            FieldContext::RealAlgebraic => "realalgebraic",
        }
    }

    /// Both shipped contexts compute exactly.
    pub fn is_exact(&self) -> bool {
        true
    }

    pub fn is_real_closed(&self) -> bool {
        matches!(self, FieldContext::RealAlgebraic)
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "rational" | "q" => Ok(FieldContext::Rational),
            "realalgebraic" | "real-algebraic" | "algebraic" => Ok(FieldContext::RealAlgebraic),
            other => Err(Error::InvalidModel(format!("unknown field context `{other}`"))),
        }
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        match self {
            FieldContext::Rational => FieldElement::Rational(q),
            FieldContext::RealAlgebraic => FieldElement::Algebraic(RealAlgebraic::from_rational(q)),
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(rational::int(n))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.context() == *self {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.name().into(), a.context().name().into()))
        }
    }

    /// Exact field operation. Unary operations ignore `b`; binary ones
    /// require it.
    pub fn arith(&self, op: FieldOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
        self.check(a)?;
        if let Some(b) = b {
            self.check(b)?;
        }
        let need_b = || b.ok_or_else(|| Error::Arity(format!("{op:?} needs two operands")));
        use FieldElement as E;
        Ok(match (op, a) {
            (FieldOp::Neg, E::Rational(x)) => E::Rational(-x),
            (FieldOp::Neg, E::Algebraic(x)) => E::Algebraic(x.neg()),
            (FieldOp::Inv, E::Rational(x)) => {
                if x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                E::Rational(x.recip())
            }
            (FieldOp::Inv, E::Algebraic(x)) => E::Algebraic(x.inv()?),
            (op, a) => match (op, a, need_b()?) {
                (FieldOp::Add, E::Rational(x), E::Rational(y)) => E::Rational(x + y),
                (FieldOp::Sub, E::Rational(x), E::Rational(y)) => E::Rational(x - y),
                (FieldOp::Mul, E::Rational(x), E::Rational(y)) => E::Rational(x * y),
                (FieldOp::Div, E::Rational(x), E::Rational(y)) => {
                    if y.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    E::Rational(x / y)
                }
                (FieldOp::Add, E::Algebraic(x), E::Algebraic(y)) => E::Algebraic(x.add(y)),
                (FieldOp::Sub, E::Algebraic(x), E::Algebraic(y)) => E::Algebraic(x.sub(y)),
                (FieldOp::Mul, E::Algebraic(x), E::Algebraic(y)) => E::Algebraic(x.mul(y)),
                (FieldOp::Div, E::Algebraic(x), E::Algebraic(y)) => E::Algebraic(x.div(y)?),
                _ => unreachable!("operands checked against the context"),
            },
        })
    }

    pub fn leq(&self, a: &FieldElement, b: &FieldElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.cmp_same(b) != Ordering::Greater)
    }

    /// Nonnegative square root. Over the rationals only perfect squares have
    /// one.
    pub fn sqrt(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        match a {
            FieldElement::Rational(q) => {
                if q.is_negative() {
                    return Err(Error::NegativeArgument(rational::to_exact_string(q)));
                }
                rational::exact_sqrt(q).map(FieldElement::Rational).ok_or_else(|| {
                    Error::SqrtUnavailableInContext(rational::to_exact_string(q), self.name().into())
                })
            }
            FieldElement::Algebraic(x) => Ok(FieldElement::Algebraic(x.sqrt()?)),
        }
    }

    /// Deterministic samples: small integers, dyadics and fractions, plus
    /// surd combinations in the algebraic context.
    pub fn sample(&self, cfg: &SampleConfig) -> Vec<FieldElement> {
        match self {
            FieldContext::Rational => {
                sample::sample_rational(cfg).into_iter().map(FieldElement::Rational).collect()
            }
            FieldContext::RealAlgebraic => {
                sample::sample_algebraic(cfg).into_iter().map(FieldElement::Algebraic).collect()
            }
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for FieldContext {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A value of one field context.
#[derive(Clone)]
pub enum FieldElement {
    Rational(Rational),
    Algebraic(RealAlgebraic),
}

impl FieldElement {
    pub fn context(&self) -> FieldContext {
        match self {
            FieldElement::Rational(_) => FieldContext::Rational,
            FieldElement::Algebraic(_) => FieldContext::RealAlgebraic,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Algebraic(a) => a.as_rational(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(One::is_one)
    }

    pub fn signum(&self) -> Ordering {
        match self {
            FieldElement::Rational(q) => q.cmp(&Rational::zero()),
            FieldElement::Algebraic(a) => a.signum(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            FieldElement::Rational(q) => rational::to_f64(q),
            FieldElement::Algebraic(a) => a.to_f64(),
        }
    }

    /// Closed rational enclosure of width at most `10^-digits`.
    pub fn approx(&self, digits: u32) -> crate::interval::RationalInterval {
        match self {
            FieldElement::Rational(q) => crate::interval::RationalInterval::point(q.clone()),
            FieldElement::Algebraic(a) => a.approx(digits).hull(),
        }
    }

    pub fn to_decimal_string(&self, places: u32) -> String {
        match self {
            FieldElement::Rational(q) => rational::to_decimal_string(q, places as usize),
            FieldElement::Algebraic(a) => a.to_decimal_string(places),
        }
    }

    fn cmp_same(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => x.cmp(y),
            (FieldElement::Algebraic(x), FieldElement::Algebraic(y)) => x.cmp(y),
            _ => panic!("compared elements of different field contexts"),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.context().arith(FieldOp::Add, self, Some(o))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.context().arith(FieldOp::Sub, self, Some(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.context().arith(FieldOp::Mul, self, Some(o))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.context().arith(FieldOp::Div, self, Some(o))
    }

    pub fn inv(&self) -> Result<Self> {
        self.context().arith(FieldOp::Inv, self, None)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(q * q),
            FieldElement::Algebraic(a) => FieldElement::Algebraic(a.square()),
        }
    }
}

impl PartialEq for FieldElement {
    /// Elements of different contexts are never equal.
    fn eq(&self, other: &Self) -> bool {
        self.context() == other.context() && self.cmp_same(other) == Ordering::Equal
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.context() == other.context()).then(|| self.cmp_same(other))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => f.write_str(&rational::to_exact_string(q)),
            FieldElement::Algebraic(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({self})", self.context().name())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldElement::Rational(q) => s.serialize_str(&rational::to_exact_string(q)),
            FieldElement::Algebraic(a) => a.serialize(s),
        }
    }
}

// Operator sugar for code that has already validated contexts; panics on a
// mismatch or a zero divisor.
macro_rules! binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl std::ops::$tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: Self) -> FieldElement {
                self.context().arith($op, self, Some(rhs)).expect("field operation on validated operands")
            }
        }
    };
}

binop!(Add, add, FieldOp::Add);
binop!(Sub, sub, FieldOp::Sub);
binop!(Mul, mul, FieldOp::Mul);
binop!(Div, div, FieldOp::Div);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.context().arith(FieldOp::Neg, self, None).expect("negation is total")
    }
}

pub fn field_arith(ctx: FieldContext, op: FieldOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
    ctx.arith(op, a, b)
}

pub fn field_leq(ctx: FieldContext, a: &FieldElement, b: &FieldElement) -> Result<bool> {
    ctx.leq(a, b)
}

/// The operations the ordered-field checker needs. Implemented by
/// [`FieldContext`]; tests implement it for deliberately broken fields.
pub trait OrderedField {
    type Elem: Clone + fmt::Display;
    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;
}

impl OrderedField for FieldContext {
    type Elem = FieldElement;

    fn name(&self) -> String {
        FieldContext::name(self).into()
    }
    fn zero(&self) -> FieldElement {
        FieldContext::zero(self)
    }
    fn one(&self) -> FieldElement {
        FieldContext::one(self)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.arith(FieldOp::Add, a, Some(b))
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.arith(FieldOp::Mul, a, Some(b))
    }
    fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.arith(FieldOp::Neg, a, None)
    }
    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.arith(FieldOp::Inv, a, None)
    }
    fn equal(&self, a: &FieldElement, b: &FieldElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }
    fn leq(&self, a: &FieldElement, b: &FieldElement) -> Result<bool> {
        FieldContext::leq(self, a, b)
    }
}

/// Evaluate every ordered-field law on triples drawn from `samples`.
///
/// Triple `i` is `(s[i], s[i+1], s[3i+2])` taken cyclically, so each sample
/// occurs in every position. An operation error counts as a failure of the
/// law being checked.
pub fn check_ordered_field_laws<F: OrderedField>(field: &F, samples: &[F::Elem]) -> AxiomReport {
    let mut report = AxiomReport::new(format!("ordered-field/{}", field.name()));
    let n = samples.len();
    if n == 0 {
        report.push(Verdict::pass("samples", 0).with_note("no samples"));
        return report;
    }
    let names = [
        "add-associativity",
        "add-commutativity",
        "mul-associativity",
        "mul-commutativity",
        "distributivity",
        "add-identity",
        "mul-identity",
        "add-inverse",
        "mul-inverse",
        "zero-ne-one",
        "order-reflexivity",
        "order-antisymmetry",
        "order-transitivity",
        "order-linearity",
        "order-translation",
        "order-multiplication",
    ];
    let mut laws: Vec<LawCheck> = names.iter().map(|s| LawCheck::new(*s)).collect();
    let zero = field.zero();
    let one = field.one();
    let eq = |x: Result<F::Elem>, y: Result<F::Elem>| -> bool {
        match (x, y) {
            (Ok(x), Ok(y)) => field.equal(&x, &y).unwrap_or(false),
            _ => false,
        }
    };
    let le = |x: &F::Elem, y: &F::Elem| field.leq(x, y).unwrap_or(false);

    for i in 0..n {
        let (a, b, c) = (&samples[i], &samples[(i + 1) % n], &samples[(3 * i + 2) % n]);
        let w3 = || vec![a.to_string(), b.to_string(), c.to_string()];
        let w2 = || vec![a.to_string(), b.to_string()];
        let w1 = || vec![a.to_string()];
        let add = |x: &F::Elem, y: &F::Elem| field.add(x, y);
        let mul = |x: &F::Elem, y: &F::Elem| field.mul(x, y);

        laws[0].record(
            eq(add(a, b).and_then(|ab| add(&ab, c)), add(b, c).and_then(|bc| add(a, &bc))),
            w3,
        );
        laws[1].record(eq(add(a, b), add(b, a)), w2);
        laws[2].record(
            eq(mul(a, b).and_then(|ab| mul(&ab, c)), mul(b, c).and_then(|bc| mul(a, &bc))),
            w3,
        );
        laws[3].record(eq(mul(a, b), mul(b, a)), w2);
        laws[4].record(
            eq(
                add(b, c).and_then(|bc| mul(a, &bc)),
                mul(a, b).and_then(|ab| mul(a, c).and_then(|ac| add(&ab, &ac))),
            ),
            w3,
        );
        laws[5].record(eq(add(a, &zero), Ok(a.clone())), w1);
        laws[6].record(eq(mul(a, &one), Ok(a.clone())), w1);
        laws[7].record(eq(field.neg(a).and_then(|na| add(a, &na)), Ok(zero.clone())), w1);
        let a_is_zero = field.equal(a, &zero).unwrap_or(false);
        if !a_is_zero {
            laws[8].record(eq(field.inv(a).and_then(|ia| mul(a, &ia)), Ok(one.clone())), w1);
        }
        if i == 0 {
            laws[9].record(!field.equal(&zero, &one).unwrap_or(true), Vec::new);
        }
        laws[10].record(le(a, a), w1);
        let (ab, ba) = (le(a, b), le(b, a));
        laws[11].record(!(ab && ba) || field.equal(a, b).unwrap_or(false), w2);
        let bc = le(b, c);
        laws[12].record(!(ab && bc) || le(a, c), w3);
        laws[13].record(ab || ba, w2);
        let translated = match (add(a, c), add(b, c)) {
            (Ok(ac), Ok(bc)) => le(&ac, &bc),
            _ => false,
        };
        laws[14].record(!ab || translated, w3);
        let nonneg = le(&zero, a) && le(&zero, b);
        let prod_nonneg = mul(a, b).map(|p| le(&zero, &p)).unwrap_or(false);
        laws[15].record(!nonneg || prod_nonneg, w2);
    }
    for law in laws {
        report.push(law.finish());
    }
    report
}

/// Sample `ctx` per `cfg` and check the ordered-field laws on the samples.
pub fn check_ordered_field_axioms(ctx: FieldContext, cfg: &SampleConfig) -> AxiomReport {
    check_ordered_field_laws(&ctx, &ctx.sample(cfg))
}
