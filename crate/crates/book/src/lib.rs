//! The guide in `book/` compiled as doc-tests, one module per chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/ordered-fields.md")]
pub mod ordered_fields {}

#[doc = include_str!("../../../book/src/real-algebraic.md")]
pub mod real_algebraic {}

#[doc = include_str!("../../../book/src/minkowski.md")]
pub mod minkowski {}

#[doc = include_str!("../../../book/src/specrel.md")]
pub mod specrel {}

#[doc = include_str!("../../../book/src/analysis.md")]
pub mod analysis {}

#[doc = include_str!("../../../book/src/accelerated.md")]
pub mod accelerated {}

#[doc = include_str!("../../../book/src/transcendence.md")]
pub mod transcendence {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
