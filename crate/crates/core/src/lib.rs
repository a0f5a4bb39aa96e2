//! Multilayer sliding-window suffix tree.
//!
//! One suffix tree per codeword-length class of back-offsets lets an LZ77
//! encoder find, for any factor, an occurrence whose offset costs exactly
//! as many bits as the offset of the closest occurrence. See [`MultiIndex`]
//! for the query surface and [`codec`] for a greedy compressor built on it.

pub mod bits;
pub mod codec;
pub mod cost_model;
mod error;
pub mod mlst;
pub mod oracle;
pub mod swtree;

pub use cost_model::{CostModel, LayerSizes};
pub use error::{Error, Result};

pub use mlst::{MatchRef, MultiIndex, SpfList};
pub use swtree::Layer;
