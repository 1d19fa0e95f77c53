//! The guide under `book/src`, included so that its code blocks run as
//! doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/formulas.md")]
pub mod formulas {}
#[doc = include_str!("../../../book/src/semantics.md")]
pub mod semantics {}
#[doc = include_str!("../../../book/src/defeat.md")]
pub mod defeat {}
#[doc = include_str!("../../../book/src/calculus.md")]
pub mod calculus {}
#[doc = include_str!("../../../book/src/proving.md")]
pub mod proving {}
#[doc = include_str!("../../../book/src/agent.md")]
pub mod agent {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
