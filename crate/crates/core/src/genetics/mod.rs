//! Length vectors, short subsets and genetic codes.

mod chain;
mod code;
mod length;
mod lp;
mod realize;

pub use chain::{saturated_chain, surgery_signature, SaturatedChain};
pub use code::{dominates, genetic_code, CodeReport, GeneticCode, ShortSetSystem};
pub use length::{is_disconnected_quotient, parse_rational, LengthVector, MAX_LENGTH_SIDES};
pub use realize::{realize, MAX_REALIZE_SIDES};
