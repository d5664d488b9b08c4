//! Modular representations of the cyclic group of order `p` over `F_p`.

pub mod fp;
pub mod green;
pub mod lab;
pub mod lyndon;
pub mod rep;

pub use fp::FpMatrix;
pub use green::{parse_green, GreenElement, GreenRing};
pub use lab::{GreenConfig, ModularLab, DEFAULT_BUDGET};
pub use lyndon::{lyndon_words, standard_bracket, Bracket, LyndonBasis};
pub use rep::MatRep;
