//! Exact-arithmetic toolkit for labeled directed graphs.
//!
//! A [`LabeledDigraph`] carries a strictly positive rational label on every
//! edge. Its *weight* is the sum of all labels and its *content* the product.
//! Given a loop-free template digraph (a [`Pattern`]), the crate enumerates
//! the embedded copies of the pattern, sums their contents, improves a graph
//! in place by merging edge labels without ever decreasing that sum, and
//! checks the resulting extremal values against closed forms and brute-force
//! search. Every computation uses exact rational arithmetic; there is no
//! floating point anywhere in this crate.
//!
//! The crate is `no_std` (with `alloc`); file formats and the command-line
//! front end live in the companion `contentmax-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;

pub mod bounds;
pub mod copies;
pub mod graph;
pub mod label;
pub mod matrix;
pub mod optimize;
pub mod pattern;
pub mod sample;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Edge, LabeledDigraph};
pub use label::Label;
pub use matrix::LabeledMatrix;
pub use pattern::Pattern;
