//! Weight enumerators of cubic Reed–Muller codes over finite fields.

pub mod arithfun;
pub mod cli;
pub mod cubics;
pub mod ecstats;
pub mod enumerator;
pub mod error;
pub mod ff;
pub mod formulas;
pub mod macwilliams;
pub mod plane;
pub mod poly;

pub use enumerator::WeightEnumerator;
pub use error::{Error, Result};
pub use ff::{Field, FieldElement};
