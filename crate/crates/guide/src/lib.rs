//! The chapters of `book/` as modules, so `cargo test --doc` runs every
//! code block in them. mdbook can't test snippets against a workspace crate
//! by itself.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/triples.md")]
pub mod triples {}
#[doc = include_str!("../../../book/src/raising-operators.md")]
pub mod raising_operators {}
#[doc = include_str!("../../../book/src/formulas.md")]
pub mod formulas {}
#[doc = include_str!("../../../book/src/specialization.md")]
pub mod specialization {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
