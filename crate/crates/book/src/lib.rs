//! The guide under `book/` is plain mdbook, which cannot resolve crate
//! dependencies when testing. Each chapter is included here as a module doc
//! so `cargo test` runs its listings as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/places.md")]
pub mod places {}
#[doc = include_str!("../../../book/src/maps.md")]
pub mod maps {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/dynamics.md")]
pub mod dynamics {}
#[doc = include_str!("../../../book/src/adeles.md")]
pub mod adeles {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
