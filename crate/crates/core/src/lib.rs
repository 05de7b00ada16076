//! Computational algebra for crossed modules in groups.
//!
//! The library builds finite groups as multiplication tables, crossed
//! modules and cat1-groups with exhaustively validated axioms, Whitehead
//! derivations and the actor, module structures over a crossed module, the
//! three-term sequence attached to an extension by a point module, and the
//! Reidemeister-Schreier / Smith-normal-form pipeline that certifies
//! non-injectivity of the comparison map out of `N/[T,N]` for finite
//! abelian quotients with nonvanishing Schur multiplier.

pub mod act;
pub mod cat1;
pub mod certify;
pub mod derived;
pub mod error;
pub mod xmod;

pub mod group;
pub mod lattice;
#[cfg(test)]
pub(crate) mod testutil;
pub mod textio;
pub mod words;

pub use certify::{
    certify_nonbalanced, hopf_pipeline, schur_multiplier_abelian, Certificate, HopfReport,
};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupAction, GroupHom};
pub use lattice::{
    cokernel_invariants, kernel_lattice, smith_normal_form, subquotient_invariants, FGAbelianGroup,
    IntMatrix,
};
pub use words::{CosetTable, SchreierBasis, Word};
pub use xmod::{CrossedModule, XModMorphism};

/// Hard cap on group orders; everything the theorems need at desk scale
/// fits well below it, and exhaustive axiom checks stay cheap.
pub const DEFAULT_ORDER_BOUND: usize = 512;

/// Cap on candidate-map enumerations (derivation sets, automorphism
/// searches).
pub const DEFAULT_ENUM_BOUND: usize = 1_000_000;
