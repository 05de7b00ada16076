//! Norrie actions of one crossed module on another, the semidirect product
//! they induce, and the inverse construction from a split extension.
//!
//! An action of `X = (T, G, mu)` on `Y = (A, B, delta)` is a crossed module
//! morphism `(epsilon, rho) : X -> Act(Y)`: `epsilon` sends elements of `T`
//! to unit derivations `B -> A`, `rho` sends elements of `G` to
//! automorphism pairs of `Y`.

use crate::error::{Error, Result};
use crate::group::{GroupAction, GroupHom};
use crate::xmod::{CrossedModule, XModMorphism};

use super::actor::actor;
use super::derivations::Derivation;

/// Raw, unvalidated action data; the shape `module_check` and the
/// tri-consistency tests feed in.
#[derive(Clone, Debug)]
pub struct RawActionData {
    /// for each element of `T`: the map `B -> A`
    pub epsilon: Vec<Vec<usize>>,
    /// for each element of `G`: the automorphism image on `A`
    pub rho_top: Vec<Vec<usize>>,
    /// for each element of `G`: the automorphism image on `B`
    pub rho_base: Vec<Vec<usize>>,
}

impl RawActionData {
    pub fn zero(acting: &CrossedModule, acted: &CrossedModule) -> Self {
        RawActionData {
            epsilon: vec![vec![0; acted.base().order()]; acting.top().order()],
            rho_top: vec![acted.top().full_set(); acting.base().order()],
            rho_base: vec![acted.base().full_set(); acting.base().order()],
        }
    }

    fn check_shape(&self, acting: &CrossedModule, acted: &CrossedModule) -> Result<()> {
        let ok = self.epsilon.len() == acting.top().order()
            && self.rho_top.len() == acting.base().order()
            && self.rho_base.len() == acting.base().order()
            && self.epsilon.iter().all(|m| m.len() == acted.base().order())
            && self.rho_top.iter().all(|m| m.len() == acted.top().order())
            && self
                .rho_base
                .iter()
                .all(|m| m.len() == acted.base().order())
            && self
                .epsilon
                .iter()
                .all(|m| m.iter().all(|&a| a < acted.top().order()))
            && self
                .rho_top
                .iter()
                .all(|m| m.iter().all(|&a| a < acted.top().order()))
            && self
                .rho_base
                .iter()
                .all(|m| m.iter().all(|&b| b < acted.base().order()));
        if ok {
            Ok(())
        } else {
            Err(Error::Argument("action data has the wrong shape".into()))
        }
    }
}

/// A validated action of `acting` on `acted`.
#[derive(Clone)]
pub struct XModAction {
    acting: CrossedModule,
    acted: CrossedModule,
    epsilon: Vec<Derivation>,
    rho_top: Vec<Vec<usize>>,
    rho_base: Vec<Vec<usize>>,
}

impl XModAction {
    /// Validate raw data as a morphism `acting -> Act(acted)`. The actor is
    /// built by enumeration, so `enum_bound` caps the derivation search.
    pub fn validate(
        acting: &CrossedModule,
        acted: &CrossedModule,
        data: &RawActionData,
        enum_bound: usize,
    ) -> Result<XModAction> {
        data.check_shape(acting, acted)?;
        let act_y = actor(acted, enum_bound, crate::DEFAULT_ORDER_BOUND)?;
        // epsilon values must be unit derivations of Y
        let mut eps_indices = Vec::with_capacity(acting.top().order());
        let mut epsilon = Vec::with_capacity(acting.top().order());
        for (t, map) in data.epsilon.iter().enumerate() {
            let d = Derivation::new(acted.clone(), map.clone())
                .map_err(|e| Error::NotAModule(format!("epsilon({t}) is not a derivation: {e}")))?;
            let Some(idx) = act_y.whitehead.unit_index(map) else {
                return Err(Error::NotAModule(format!(
                    "epsilon({t}) is not a unit of the Whitehead group"
                )));
            };
            eps_indices.push(idx);
            epsilon.push(d);
        }
        // rho values must be automorphism pairs of Y
        let mut rho_indices = Vec::with_capacity(acting.base().order());
        for g in acting.base().elements() {
            let Some(idx) = act_y.auts.pair_index(&data.rho_top[g], &data.rho_base[g]) else {
                return Err(Error::NotAModule(format!(
                    "rho({g}) is not an automorphism pair of the acted module"
                )));
            };
            rho_indices.push(idx);
        }
        // (epsilon, rho) as group homs into the actor levels
        let f = GroupHom::new(
            acting.top().clone(),
            act_y.whitehead.group.clone(),
            eps_indices,
        )
        .map_err(|e| Error::NotAModule(format!("epsilon is not a homomorphism: {e}")))?;
        let h = GroupHom::new(acting.base().clone(), act_y.auts.group.clone(), rho_indices)
            .map_err(|e| Error::NotAModule(format!("rho is not a homomorphism: {e}")))?;
        // full morphism validation: square Delta . epsilon = rho . mu and
        // equivariance epsilon(^g t) = rho(g) . epsilon(t)
        XModMorphism::new(acting.clone(), act_y.xmod.clone(), f, h).map_err(|e| {
            Error::NotAModule(format!(
                "(epsilon, rho) is not a morphism into the actor: {e}"
            ))
        })?;
        Ok(XModAction {
            acting: acting.clone(),
            acted: acted.clone(),
            epsilon,
            rho_top: data.rho_top.clone(),
            rho_base: data.rho_base.clone(),
        })
    }

    /// The zero action (`epsilon = 0`, `rho = id`); valid for every pair.
    pub fn zero(acting: &CrossedModule, acted: &CrossedModule, enum_bound: usize) -> Result<Self> {
        XModAction::validate(
            acting,
            acted,
            &RawActionData::zero(acting, acted),
            enum_bound,
        )
    }

    pub fn acting(&self) -> &CrossedModule {
        &self.acting
    }

    pub fn acted(&self) -> &CrossedModule {
        &self.acted
    }

    pub fn epsilon(&self, t: usize) -> &Derivation {
        &self.epsilon[t]
    }

    /// `epsilon(t)(b)`.
    #[inline]
    pub fn eps(&self, t: usize, b: usize) -> usize {
        self.epsilon[t].apply(b)
    }

    /// `rho(g)` applied to a top element of the acted module.
    #[inline]
    pub fn rho_top(&self, g: usize, a: usize) -> usize {
        self.rho_top[g][a]
    }

    /// `rho(g)` applied to a base element of the acted module.
    #[inline]
    pub fn rho_base(&self, g: usize, b: usize) -> usize {
        self.rho_base[g][b]
    }

    pub fn raw(&self) -> RawActionData {
        RawActionData {
            epsilon: self.epsilon.iter().map(|d| d.map().to_vec()).collect(),
            rho_top: self.rho_top.clone(),
            rho_base: self.rho_base.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.epsilon.iter().all(|d| d.is_zero())
            && self.acting.base().elements().all(|g| {
                self.rho_top[g].iter().enumerate().all(|(a, &v)| v == a)
                    && self.rho_base[g].iter().enumerate().all(|(b, &v)| v == b)
            })
    }
}

/// A split short exact sequence of crossed modules
/// `acted >-> product -» acting` with a section.
pub struct XModSplitExtension {
    pub product: CrossedModule,
    pub incl: XModMorphism,
    pub proj: XModMorphism,
    pub section: XModMorphism,
}

impl XModSplitExtension {
    /// Validate injectivity, surjectivity, the section identity and
    /// exactness (im incl = ker proj on both levels).
    pub fn new(incl: XModMorphism, proj: XModMorphism, section: XModMorphism) -> Result<Self> {
        if incl.target() != proj.source() || section.target() != proj.source() {
            return Err(Error::Argument("extension maps do not line up".into()));
        }
        if proj.target() != section.source() {
            return Err(Error::Argument("section must split the projection".into()));
        }
        if !incl.is_injective() {
            return Err(Error::Precondition("inclusion is not injective".into()));
        }
        if !proj.is_surjective() {
            return Err(Error::Precondition("projection is not surjective".into()));
        }
        let id_top = section.f().then(proj.f());
        let id_base = section.h().then(proj.h());
        if id_top != GroupHom::identity(proj.target().top())
            || id_base != GroupHom::identity(proj.target().base())
        {
            return Err(Error::Precondition(
                "section does not split the projection".into(),
            ));
        }
        if incl.f().image() != proj.f().kernel() || incl.h().image() != proj.h().kernel() {
            return Err(Error::Precondition(
                "sequence is not exact in the middle".into(),
            ));
        }
        Ok(XModSplitExtension {
            product: proj.source().clone(),
            incl,
            proj,
            section,
        })
    }
}

/// Norrie semidirect product for a validated action: the crossed module
/// `(A x| T, B x| G, (delta, mu))` with the action
/// `^(b,g)(a, t) = (^g a * eps(^g t)(b)^-1, ^g t)`, packaged as a split
/// extension of `acting` by `acted`.
///
/// Validity is a theorem for validated input, so construction failures
/// abort.
pub fn semidirect_xmod(action: &XModAction) -> XModSplitExtension {
    try_semidirect_raw(action.acting(), action.acted(), &action.raw())
        .expect("the Norrie semidirect product of a validated action is a split extension")
}

/// Assemble the semidirect package from raw data, validating every layer.
/// Used both by `semidirect_xmod` and, directly, by the module
/// characterization routes, which must reject bad data on their own.
pub(super) fn try_semidirect_raw(
    x: &CrossedModule,
    y: &CrossedModule,
    data: &RawActionData,
) -> Result<XModSplitExtension> {
    data.check_shape(x, y)?;
    let (t_grp, g_grp) = (x.top(), x.base());
    let (a_grp, b_grp) = (y.top(), y.base());

    // T acts on A through mu and rho
    let top_table: Vec<usize> = t_grp
        .elements()
        .flat_map(|t| {
            let g = x.mu().apply(t);
            (0..a_grp.order()).map(move |a| (g, a))
        })
        .map(|(g, a)| data.rho_top[g][a])
        .collect();
    let top_act = GroupAction::new(t_grp.clone(), a_grp.clone(), top_table)?;
    let top = top_act.semidirect_product();

    // G acts on B through rho
    let base_table: Vec<usize> = g_grp
        .elements()
        .flat_map(|g| (0..b_grp.order()).map(move |b| data.rho_base[g][b]))
        .collect();
    let base_act = GroupAction::new(g_grp.clone(), b_grp.clone(), base_table)?;
    let base = base_act.semidirect_product();

    let nt = t_grp.order();
    let ng = g_grp.order();
    let enc_top = |a: usize, t: usize| a * nt + t;
    let enc_base = |b: usize, g: usize| b * ng + g;

    // boundary (delta, mu)
    let boundary_images: Vec<usize> = top
        .group
        .elements()
        .map(|e| {
            let (a, t) = (e / nt, e % nt);
            enc_base(y.mu().apply(a), x.mu().apply(t))
        })
        .collect();
    let boundary = GroupHom::new(top.group.clone(), base.group.clone(), boundary_images)?;

    // the big action
    let mut big = vec![0usize; base.group.order() * top.group.order()];
    for b in 0..b_grp.order() {
        for g in 0..ng {
            let actor_idx = enc_base(b, g);
            for a in 0..a_grp.order() {
                for t in 0..nt {
                    let gt = x.act(g, t);
                    let ga = data.rho_top[g][a];
                    let shift = data.epsilon[gt][b];
                    let new_a = a_grp.mul(ga, a_grp.inv(shift));
                    big[actor_idx * top.group.order() + enc_top(a, t)] = enc_top(new_a, gt);
                }
            }
        }
    }
    let big_action = GroupAction::new(base.group.clone(), top.group.clone(), big)?;
    let product = CrossedModule::new(top.group.clone(), base.group.clone(), boundary, big_action)?;

    let incl = XModMorphism::new(
        y.clone(),
        product.clone(),
        GroupHom::new(
            a_grp.clone(),
            top.group.clone(),
            (0..a_grp.order()).map(|a| enc_top(a, 0)).collect(),
        )?,
        GroupHom::new(
            b_grp.clone(),
            base.group.clone(),
            (0..b_grp.order()).map(|b| enc_base(b, 0)).collect(),
        )?,
    )?;
    let proj = XModMorphism::new(
        product.clone(),
        x.clone(),
        GroupHom::new(
            top.group.clone(),
            t_grp.clone(),
            top.group.elements().map(|e| e % nt).collect(),
        )?,
        GroupHom::new(
            base.group.clone(),
            g_grp.clone(),
            base.group.elements().map(|e| e % ng).collect(),
        )?,
    )?;
    let section = XModMorphism::new(
        x.clone(),
        product.clone(),
        GroupHom::new(
            t_grp.clone(),
            top.group.clone(),
            (0..nt).map(|t| enc_top(0, t)).collect(),
        )?,
        GroupHom::new(
            g_grp.clone(),
            base.group.clone(),
            (0..ng).map(|g| enc_base(0, g)).collect(),
        )?,
    )?;
    XModSplitExtension::new(incl, proj, section)
}

/// Recover the action from a split extension: with `A` identified along the
/// inclusion and `T, G` along the section,
/// `eps(t)(b) = t * (^b t)^-1`, `rho(g) = (a -> ^g a, b -> g b g^-1)`.
/// The complement conditions (normality of the kernel, `T' = A T`,
/// `G' = B G`, trivial intersections) are verified first.
pub fn split_extension_to_action(e: &XModSplitExtension, enum_bound: usize) -> Result<XModAction> {
    let w = &e.product;
    let y = e.incl.source();
    let x = e.proj.target();
    // a) kernel is a normal subcrossed module
    let a_set = e.incl.f().image();
    let b_set = e.incl.h().image();
    if !crate::xmod::is_normal_subxmod(w, &a_set, &b_set)? {
        return Err(Error::NotAComplement(
            "kernel is not a normal subcrossed module".into(),
        ));
    }
    let t_set = e.section.f().image();
    let g_set = e.section.h().image();
    // c) trivial intersections
    let inter_top = a_set
        .iter()
        .filter(|v| t_set.binary_search(v).is_ok())
        .count();
    let inter_base = b_set
        .iter()
        .filter(|v| g_set.binary_search(v).is_ok())
        .count();
    if inter_top != 1 || inter_base != 1 {
        return Err(Error::NotAComplement(
            "section does not meet the kernel trivially".into(),
        ));
    }
    // b) T' = A T and G' = B G by a counting argument plus closure
    if a_set.len() * t_set.len() != w.top().order() || b_set.len() * g_set.len() != w.base().order()
    {
        return Err(Error::NotAComplement(
            "section is not a complement of the kernel".into(),
        ));
    }

    // preimage lookups along the (injective) inclusion
    let mut pre_a = std::collections::HashMap::new();
    for a in y.top().elements() {
        pre_a.insert(e.incl.f().apply(a), a);
    }
    let mut pre_b = std::collections::HashMap::new();
    for b in y.base().elements() {
        pre_b.insert(e.incl.h().apply(b), b);
    }
    let into_a = |elem: usize| -> usize { pre_a[&elem] };
    let into_b = |elem: usize| -> usize { pre_b[&elem] };
    // eps(t)(b) = t * (^b t)^-1 inside the product, pulled back to A
    let mut epsilon = Vec::with_capacity(x.top().order());
    for t in x.top().elements() {
        let te = e.section.f().apply(t);
        let mut map = Vec::with_capacity(y.base().order());
        for b in y.base().elements() {
            let be = e.incl.h().apply(b);
            let moved = w.act(be, te);
            let d = w.top().mul(te, w.top().inv(moved));
            if a_set.binary_search(&d).is_err() {
                return Err(Error::NotAComplement(
                    "displacement of the section leaves the kernel".into(),
                ));
            }
            map.push(into_a(d));
        }
        epsilon.push(map);
    }
    // rho(g) = (a -> ^g a, b -> g b g^-1) along the section
    let mut rho_top = Vec::with_capacity(x.base().order());
    let mut rho_base = Vec::with_capacity(x.base().order());
    for g in x.base().elements() {
        let ge = e.section.h().apply(g);
        let mut on_a = Vec::with_capacity(y.top().order());
        for a in y.top().elements() {
            let ae = e.incl.f().apply(a);
            let moved = w.act(ge, ae);
            if a_set.binary_search(&moved).is_err() {
                return Err(Error::NotAComplement("kernel top is not stable".into()));
            }
            on_a.push(into_a(moved));
        }
        let mut on_b = Vec::with_capacity(y.base().order());
        for b in y.base().elements() {
            let be = e.incl.h().apply(b);
            let moved = w.base().conj(ge, be);
            if b_set.binary_search(&moved).is_err() {
                return Err(Error::NotAComplement("kernel base is not stable".into()));
            }
            on_b.push(into_b(moved));
        }
        rho_top.push(on_a);
        rho_base.push(on_b);
    }
    XModAction::validate(
        x,
        y,
        &RawActionData {
            epsilon,
            rho_top,
            rho_base,
        },
        enum_bound,
    )
}
