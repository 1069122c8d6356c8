//! The chapters of `book/` as modules, so `cargo test` runs their snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scalars.md")]
pub mod scalars {}
#[doc = include_str!("../../../book/src/engine.md")]
pub mod engine {}
#[doc = include_str!("../../../book/src/sl2.md")]
pub mod sl2 {}
#[doc = include_str!("../../../book/src/frt.md")]
pub mod frt {}
#[doc = include_str!("../../../book/src/adjoint.md")]
pub mod adjoint {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
