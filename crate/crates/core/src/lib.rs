//! Exact decision procedures for Cohen-Macaulay, sequentially Cohen-Macaulay
//! and approximately Cohen-Macaulay quotient rings over prime fields.

pub mod classify;
pub mod complex;
pub mod error;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod ideal;
pub mod parse;
pub mod poly;
pub mod reference;
pub mod ring;
pub mod sequences;

pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_PRIME};
pub use ideal::Ideal;
pub use poly::Polynomial;
pub use ring::{Monomial, Ring, RingSpec, TermOrder};
