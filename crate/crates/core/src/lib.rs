//! Core algorithms for modifier-aware emotion classification.
//!
//! Everything in this crate is deterministic and `no_std`-compatible
//! (`alloc` is required). File formats, CLI plumbing, and anything that
//! touches the OS live in the companion `emoscope` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod conllu;
pub mod document;
pub mod emotion;
pub mod error;
pub mod eval;
pub mod features;
pub mod lexical;
pub mod lexicon;
pub mod linear;
pub mod scope;
pub mod sparse;
pub mod split;
pub mod text;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
