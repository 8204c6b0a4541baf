//! Exact computations with integral lattices and their discriminant forms.

pub mod arith;
pub mod casebook;
pub mod discriminant;
pub mod error;
pub mod form;
pub mod gauss;
pub mod glue;
pub mod iso;
pub mod lattice;
pub mod matrix;
pub mod nikulin;
pub mod rank2;
pub mod shortvec;
pub mod symbol;

pub use discriminant::{discriminant_form, Discriminant};
pub use error::{Error, Result};
pub use form::FiniteQuadraticForm;
pub use lattice::GramLattice;
pub use symbol::{GenusSymbol, JordanConstituent, Sign};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/embeddings.md")]
    mod embeddings {}
    #[doc = include_str!("../../../book/src/rank2.md")]
    mod rank2 {}
    #[doc = include_str!("../../../book/src/casebook.md")]
    mod casebook {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
