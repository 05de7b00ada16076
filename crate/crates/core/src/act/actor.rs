//! Automorphisms of a crossed module and the actor crossed module
//! `(D(G,T), Aut(T,G,mu), Delta)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{all_isomorphisms, FiniteGroup, GroupAction, GroupHom};
use crate::xmod::CrossedModule;

use super::derivations::{whitehead_group, WhiteheadGroup};

/// The group of automorphism pairs `(alpha, phi)` with `mu alpha = phi mu`
/// and `alpha(^g t) = ^(phi g) alpha(t)`, under composition. Element 0 is
/// the identity pair.
pub struct XModAutGroup {
    pub group: FiniteGroup,
    pub pairs: Vec<(GroupHom, GroupHom)>,
}

impl XModAutGroup {
    pub fn pair_index(&self, alpha: &[usize], phi: &[usize]) -> Option<usize> {
        self.pairs
            .iter()
            .position(|(a, p)| a.images() == alpha && p.images() == phi)
    }
}

pub fn xmod_aut_group(x: &CrossedModule, order_bound: usize) -> Result<XModAutGroup> {
    let top_auts = all_isomorphisms(x.top(), x.top());
    let base_auts = all_isomorphisms(x.base(), x.base());
    let mut pairs: Vec<(GroupHom, GroupHom)> = Vec::new();
    for alpha in &top_auts {
        for phi in &base_auts {
            let square = x
                .top()
                .elements()
                .all(|t| x.mu().apply(alpha.apply(t)) == phi.apply(x.mu().apply(t)));
            if !square {
                continue;
            }
            let equivariant = x.base().elements().all(|g| {
                x.top()
                    .elements()
                    .all(|t| alpha.apply(x.act(g, t)) == x.act(phi.apply(g), alpha.apply(t)))
            });
            if equivariant {
                pairs.push((alpha.clone(), phi.clone()));
            }
        }
    }
    if pairs.len() > order_bound {
        return Err(Error::SizeLimit {
            what: "crossed module automorphism group",
            bound: order_bound,
            needed: pairs.len(),
        });
    }
    pairs.sort_by(|(a1, p1), (a2, p2)| (a1.images(), p1.images()).cmp(&(a2.images(), p2.images())));
    debug_assert!(
        pairs[0].0.images() == GroupHom::identity(x.top()).images()
            && pairs[0].1.images() == GroupHom::identity(x.base()).images(),
        "identity pair sorts first"
    );
    let lookup: HashMap<(Vec<usize>, Vec<usize>), usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, (a, p))| ((a.images().to_vec(), p.images().to_vec()), i))
        .collect();
    let n = pairs.len();
    let mut table = Vec::with_capacity(n * n);
    for (a1, p1) in &pairs {
        for (a2, p2) in &pairs {
            // (a1, p1) . (a2, p2) = apply the right pair first
            let a = a2.then(a1);
            let p = p2.then(p1);
            table.push(lookup[&(a.images().to_vec(), p.images().to_vec())]);
        }
    }
    let group = FiniteGroup::from_table(
        (0..n).map(|i| table[i * n..(i + 1) * n].to_vec()).collect(),
        None,
    )
    .expect("automorphism pairs form a group under composition");
    Ok(XModAutGroup { group, pairs })
}

/// The actor `Act(T, G, mu) = (D(G,T), Aut(T,G,mu), Delta)` where
/// `Delta(d) = (theta_d, sigma_d)` and `(alpha, phi)` acts on `d` as
/// `alpha . d . phi^-1`.
pub struct Actor {
    pub xmod: CrossedModule,
    pub whitehead: WhiteheadGroup,
    pub auts: XModAutGroup,
}

impl Actor {
    /// Index of the automorphism pair `(theta_d, sigma_d)` of a unit.
    pub fn delta_of_unit(&self, unit: usize) -> usize {
        self.xmod.mu().apply(unit)
    }
}

pub fn actor(x: &CrossedModule, enum_bound: usize, order_bound: usize) -> Result<Actor> {
    let whitehead = whitehead_group(x, enum_bound)?;
    let auts = xmod_aut_group(x, order_bound)?;
    let nd = whitehead.group.order();
    // Delta: D -> Aut, d -> (theta_d, sigma_d)
    let delta_images: Vec<usize> = (0..nd)
        .map(|i| {
            let d = &whitehead.units[i];
            let theta = d.theta();
            let sigma = d.sigma();
            auts.pair_index(theta.images(), sigma.images())
                .expect("(theta, sigma) of a unit is a crossed module automorphism")
        })
        .collect();
    let delta = GroupHom::new(whitehead.group.clone(), auts.group.clone(), delta_images)
        .expect("Delta is a homomorphism");
    // Aut acts on D by (alpha, phi) . d = alpha . d . phi^-1
    let mut act = Vec::with_capacity(auts.group.order() * nd);
    for (alpha, phi) in &auts.pairs {
        let phi_inv = phi.inverse();
        for unit in whitehead.units.iter() {
            let map: Vec<usize> = x
                .base()
                .elements()
                .map(|g| alpha.apply(unit.apply(phi_inv.apply(g))))
                .collect();
            let idx = whitehead
                .unit_index(&map)
                .expect("automorphisms permute the unit derivations");
            act.push(idx);
        }
    }
    let action = GroupAction::new(auts.group.clone(), whitehead.group.clone(), act)
        .expect("the automorphism action on derivations is a group action");
    let xmod = CrossedModule::new(whitehead.group.clone(), auts.group.clone(), delta, action)
        .expect("the actor satisfies the crossed module axioms");
    Ok(Actor {
        xmod,
        whitehead,
        auts,
    })
}
