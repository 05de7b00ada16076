//! Shared fixtures for unit tests.

use crate::group::{FiniteGroup, GroupAction, GroupHom};
use crate::xmod::CrossedModule;

pub(crate) fn s3() -> FiniteGroup {
    FiniteGroup::from_permutations(3, &[vec![2, 3, 1], vec![2, 1, 3]]).unwrap()
}

pub(crate) fn klein4() -> FiniteGroup {
    FiniteGroup::abelian_from_invariants(&[2, 2]).unwrap()
}

/// Quaternion group via its left-regular representation on
/// `{1, -1, i, -i, j, -j, k, -k}`.
pub(crate) fn q8() -> FiniteGroup {
    FiniteGroup::from_permutations(
        8,
        &[
            vec![3, 4, 2, 1, 7, 8, 6, 5], // times i
            vec![5, 6, 8, 7, 2, 1, 3, 4], // times j
        ],
    )
    .unwrap()
}

pub(crate) fn a4() -> FiniteGroup {
    FiniteGroup::from_permutations(4, &[vec![2, 3, 1, 4], vec![2, 1, 4, 3]]).unwrap()
}

/// (Z/4, Z/2, 0) with Z/2 acting by inversion.
pub(crate) fn inversion_xmod() -> CrossedModule {
    let c4 = FiniteGroup::cyclic(4);
    let c2 = FiniteGroup::cyclic(2);
    let inversion = GroupAction::from_automorphisms(
        c2.clone(),
        c4.clone(),
        &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
    )
    .unwrap();
    CrossedModule::new(c4.clone(), c2.clone(), GroupHom::zero(&c4, &c2), inversion).unwrap()
}

/// (Z/4, Z/4, t -> 2t) with the trivial action.
pub(crate) fn doubling_xmod() -> CrossedModule {
    let c4 = FiniteGroup::cyclic(4);
    let mu = GroupHom::new(c4.clone(), c4.clone(), vec![0, 2, 0, 2]).unwrap();
    CrossedModule::with_trivial_action(&c4, &c4, mu).unwrap()
}

/// (Z/2, Z/2, 0) with the trivial action: its Whitehead group is Z/2.
pub(crate) fn zero_xmod_c2() -> CrossedModule {
    let c2 = FiniteGroup::cyclic(2);
    CrossedModule::with_trivial_action(&c2, &c2, GroupHom::zero(&c2, &c2)).unwrap()
}
