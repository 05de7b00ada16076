//! Actions internal to crossed modules: Whitehead derivations, the actor,
//! Norrie actions, semidirect products and module structures.

mod actions;
mod actor;
mod derivations;
mod modules;

pub use actions::semidirect_xmod;
pub use actions::{split_extension_to_action, RawActionData, XModAction, XModSplitExtension};
pub use actor::{actor, xmod_aut_group, Actor, XModAutGroup};
pub use derivations::{derivation_set, whitehead_group, Derivation, WhiteheadGroup};
pub use modules::{
    module_check, module_check_routes, module_hom_check, ModuleMorphism, ModuleRoutes, XModModule,
};

#[cfg(test)]
mod tests;
