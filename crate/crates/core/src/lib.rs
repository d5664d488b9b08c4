pub mod character;
pub mod error;
pub mod modular;
pub mod numtheory;
pub mod partition;
pub mod rational;
pub mod report;
pub mod series;
pub mod symfunc;

pub use error::{Error, Result};
pub use partition::{partitions_of, Partition};
pub use rational::Rational;
pub use symfunc::{Basis, SymFunc};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/symmetric-functions.md")]
    mod symmetric_functions {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/modular.md")]
    mod modular {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
