pub mod accel;
pub mod algebraic;
pub mod analysis;
pub mod certified;
pub mod error;
pub mod expr;
pub mod field;
pub mod interval;
pub mod minkowski;
pub mod poly;
pub mod rational;
pub mod report;
pub mod sample;
pub mod specrel;
pub mod transcendence;

pub use algebraic::RealAlgebraic;
pub use error::{Error, Result};
pub use expr::{parse_expression, Expression};
pub use field::{FieldContext, FieldElement, FieldOp, OrderedField};
pub use interval::RationalInterval;
pub use poly::IntPolynomial;
pub use rational::Rational;
pub use report::{AxiomReport, Verdict};
pub use sample::SampleConfig;
