//! The guide under `book/` is plain mdbook Markdown. mdbook cannot link the
//! listings against workspace crates, so each chapter is pulled in here as a
//! module doc comment and `cargo test --doc` runs every listing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/simulator.md")]
pub mod simulator {}
#[doc = include_str!("../../../book/src/arithmetic.md")]
pub mod arithmetic {}
#[doc = include_str!("../../../book/src/grover.md")]
pub mod grover {}
#[doc = include_str!("../../../book/src/divide-and-conquer.md")]
pub mod divide_and_conquer {}
#[doc = include_str!("../../../book/src/baseline.md")]
pub mod baseline {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
