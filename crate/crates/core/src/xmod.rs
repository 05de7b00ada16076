//! Crossed modules in groups with exhaustively validated axioms.
//!
//! A crossed module is a homomorphism `mu : T -> G` together with an action
//! of `G` on `T` satisfying equivariance `mu(^g t) = g mu(t) g^-1` and the
//! Peiffer identity `^(mu t) t' = t t' t^-1`. Values of [`CrossedModule`]
//! can only exist when both axioms hold on every pair.

use crate::error::{Error, Result};
use crate::group::{all_isomorphisms, FiniteGroup, GroupAction, GroupHom};

#[derive(Clone, PartialEq)]
pub struct CrossedModule {
    t: FiniteGroup,
    g: FiniteGroup,
    mu: GroupHom,
    action: GroupAction,
}

impl std::fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CrossedModule(|T|={}, |G|={})",
            self.t.order(),
            self.g.order()
        )
    }
}

impl CrossedModule {
    pub fn new(t: FiniteGroup, g: FiniteGroup, mu: GroupHom, action: GroupAction) -> Result<Self> {
        if mu.source() != &t || mu.target() != &g {
            return Err(Error::Argument("mu must map T to G".into()));
        }
        if action.actor() != &g || action.space() != &t {
            return Err(Error::Argument("action must be of G on T".into()));
        }
        // equivariance: mu(^g t) = g mu(t) g^-1
        for gg in g.elements() {
            for tt in t.elements() {
                if mu.apply(action.apply(gg, tt)) != g.conj(gg, mu.apply(tt)) {
                    return Err(Error::Equivariance { g: gg, t: tt });
                }
            }
        }
        // Peiffer: ^(mu t) t' = t t' t^-1
        for tt in t.elements() {
            let m = mu.apply(tt);
            for tp in t.elements() {
                if action.apply(m, tp) != t.conj(tt, tp) {
                    return Err(Error::Peiffer { t: tt, t_prime: tp });
                }
            }
        }
        Ok(CrossedModule { t, g, mu, action })
    }

    /// `(G, G, id)` with the conjugation action; valid for any `G`.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        CrossedModule::new(
            g.clone(),
            g.clone(),
            GroupHom::identity(g),
            GroupAction::conjugation(g),
        )
        .expect("conjugation crossed module")
    }

    /// `(M, 1, 0)`; requires `M` abelian.
    pub fn point_module(m: &FiniteGroup) -> Result<Self> {
        let one = FiniteGroup::trivial();
        CrossedModule::new(
            m.clone(),
            one.clone(),
            GroupHom::zero(m, &one),
            GroupAction::trivial(&one, m),
        )
    }

    /// `(1, G, 0)` with the trivial action.
    pub fn point_base(g: &FiniteGroup) -> Self {
        let one = FiniteGroup::trivial();
        CrossedModule::new(
            one.clone(),
            g.clone(),
            GroupHom::zero(&one, g),
            GroupAction::trivial(g, &one),
        )
        .expect("(1, G, 0) crossed module")
    }

    /// `(N, G, incl)` for a normal subgroup, with the conjugation action.
    pub fn normal_inclusion(g: &FiniteGroup, normal: &[usize]) -> Result<Self> {
        if !g.is_normal_subgroup(normal) {
            let w = normal.first().copied().unwrap_or(0);
            return Err(Error::NotNormal { g: 0, n: w });
        }
        let (n_group, elems) = g.subgroup_as_group(normal)?;
        let incl = GroupHom::new(n_group.clone(), g.clone(), elems.clone())?;
        let table: Vec<usize> = g
            .elements()
            .flat_map(|gg| {
                let elems = &elems;
                (0..n_group.order()).map(move |i| {
                    let conj = g.conj(gg, elems[i]);
                    elems
                        .binary_search(&conj)
                        .expect("normality keeps conjugates inside")
                })
            })
            .collect();
        let action = GroupAction::new(g.clone(), n_group.clone(), table)?;
        CrossedModule::new(n_group, g.clone(), incl, action)
    }

    /// Any homomorphism of abelian groups with the trivial action.
    pub fn with_trivial_action(t: &FiniteGroup, g: &FiniteGroup, mu: GroupHom) -> Result<Self> {
        CrossedModule::new(t.clone(), g.clone(), mu, GroupAction::trivial(g, t))
    }

    pub fn top(&self) -> &FiniteGroup {
        &self.t
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn mu(&self) -> &GroupHom {
        &self.mu
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// `^g t`.
    #[inline]
    pub fn act(&self, g: usize, t: usize) -> usize {
        self.action.apply(g, t)
    }

    /// True iff `T` and `G` are abelian and the action is trivial.
    pub fn is_abelian(&self) -> bool {
        self.t.is_abelian() && self.g.is_abelian() && self.action.is_trivial()
    }
}

/// A morphism of crossed modules: `(f, h)` with `mu' f = h mu` and
/// `f(^g t) = ^(h g) f(t)`.
#[derive(Clone, PartialEq)]
pub struct XModMorphism {
    source: CrossedModule,
    target: CrossedModule,
    f: GroupHom,
    h: GroupHom,
}

impl std::fmt::Debug for XModMorphism {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "XModMorphism({:?} -> {:?})", self.source, self.target)
    }
}

impl XModMorphism {
    pub fn new(
        source: CrossedModule,
        target: CrossedModule,
        f: GroupHom,
        h: GroupHom,
    ) -> Result<Self> {
        if f.source() != source.top()
            || f.target() != target.top()
            || h.source() != source.base()
            || h.target() != target.base()
        {
            return Err(Error::Argument("morphism components do not line up".into()));
        }
        // square: mu' f = h mu
        for t in source.top().elements() {
            if target.mu().apply(f.apply(t)) != h.apply(source.mu().apply(t)) {
                return Err(Error::MorphismSquare { t });
            }
        }
        // equivariance: f(^g t) = ^(h g) f(t)
        for g in source.base().elements() {
            for t in source.top().elements() {
                if f.apply(source.act(g, t)) != target.act(h.apply(g), f.apply(t)) {
                    return Err(Error::MorphismEquivariance { g, t });
                }
            }
        }
        Ok(XModMorphism {
            source,
            target,
            f,
            h,
        })
    }

    pub fn identity(x: &CrossedModule) -> Self {
        XModMorphism {
            source: x.clone(),
            target: x.clone(),
            f: GroupHom::identity(x.top()),
            h: GroupHom::identity(x.base()),
        }
    }

    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    pub fn f(&self) -> &GroupHom {
        &self.f
    }

    pub fn h(&self) -> &GroupHom {
        &self.h
    }

    pub fn then(&self, other: &XModMorphism) -> XModMorphism {
        assert!(self.target == other.source, "composition mismatch");
        XModMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            f: self.f.then(&other.f),
            h: self.h.then(&other.h),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.f.is_injective() && self.h.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.f.is_surjective() && self.h.is_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f.is_bijective() && self.h.is_bijective()
    }
}

/// Kernel of a morphism: `(ker f, ker h)` with the restricted boundary and
/// action, plus the inclusion.
pub fn kernel_xmod(m: &XModMorphism) -> Result<(CrossedModule, XModMorphism)> {
    let src = m.source();
    let ker_f = m.f().kernel();
    let ker_h = m.h().kernel();
    let (kt, kt_elems) = src.top().subgroup_as_group(&ker_f)?;
    let (kg, kg_elems) = src.base().subgroup_as_group(&ker_h)?;
    let mu = src.mu().restrict(&kt, &kt_elems, &kg, &kg_elems)?;
    let table: Vec<usize> = (0..kg.order())
        .flat_map(|gi| {
            let (kt_elems, kg_elems) = (&kt_elems, &kg_elems);
            (0..kt.order()).map(move |ti| {
                let moved = src.act(kg_elems[gi], kt_elems[ti]);
                kt_elems
                    .binary_search(&moved)
                    .expect("kernel is stable under the kernel action")
            })
        })
        .collect();
    let action = GroupAction::new(kg.clone(), kt.clone(), table)?;
    let kernel = CrossedModule::new(kt.clone(), kg.clone(), mu, action)?;
    let incl_f = GroupHom::new(kt, src.top().clone(), kt_elems)?;
    let incl_h = GroupHom::new(kg, src.base().clone(), kg_elems)?;
    let incl = XModMorphism::new(kernel.clone(), src.clone(), incl_f, incl_h)?;
    Ok((kernel, incl))
}

/// Image of a morphism as a subcrossed module of the target, with the
/// corestricted morphism.
pub fn image_xmod(m: &XModMorphism) -> Result<(CrossedModule, XModMorphism)> {
    let tgt = m.target();
    let im_f = m.f().image();
    let im_h = m.h().image();
    let (it, it_elems) = tgt.top().subgroup_as_group(&im_f)?;
    let (ig, ig_elems) = tgt.base().subgroup_as_group(&im_h)?;
    let mu = tgt.mu().restrict(&it, &it_elems, &ig, &ig_elems)?;
    let table: Vec<usize> = (0..ig.order())
        .flat_map(|gi| {
            let (it_elems, ig_elems) = (&it_elems, &ig_elems);
            (0..it.order()).map(move |ti| {
                let moved = tgt.act(ig_elems[gi], it_elems[ti]);
                it_elems
                    .binary_search(&moved)
                    .expect("image is stable under the image action")
            })
        })
        .collect();
    let action = GroupAction::new(ig.clone(), it.clone(), table)?;
    let image = CrossedModule::new(it.clone(), ig.clone(), mu, action)?;
    let f = corestrict(m.f(), &it, &it_elems)?;
    let h = corestrict(m.h(), &ig, &ig_elems)?;
    let onto = XModMorphism::new(m.source().clone(), image.clone(), f, h)?;
    Ok((image, onto))
}

fn corestrict(hom: &GroupHom, sub: &FiniteGroup, sub_elems: &[usize]) -> Result<GroupHom> {
    let images: Vec<usize> = hom
        .images()
        .iter()
        .map(|&y| {
            sub_elems
                .binary_search(&y)
                .expect("image lies in the subgroup")
        })
        .collect();
    GroupHom::new(hom.source().clone(), sub.clone(), images)
}

/// Norrie's normality conditions for a subcrossed module `(S, H)` of
/// `(T, G, mu)`:
/// * `H` is normal in `G`;
/// * `S` is stable under the whole `G`-action (hence normal in `T`);
/// * `mu(S)` lies in `H`;
/// * displacements `^h t * t^-1` land in `S` for `h` in `H`, `t` in `T`.
pub fn is_normal_subxmod(
    ambient: &CrossedModule,
    sub_t: &[usize],
    sub_g: &[usize],
) -> Result<bool> {
    let t = ambient.top();
    let g = ambient.base();
    if !t.is_subgroup(sub_t) {
        return Err(Error::NotASubgroup {
            witness: sub_t.first().copied().unwrap_or(0),
        });
    }
    if !g.is_subgroup(sub_g) {
        return Err(Error::NotASubgroup {
            witness: sub_g.first().copied().unwrap_or(0),
        });
    }
    if !g.is_normal_subgroup(sub_g) {
        return Ok(false);
    }
    // S stable under the G-action
    for gg in g.elements() {
        for &s in sub_t {
            if sub_t.binary_search(&ambient.act(gg, s)).is_err() {
                return Ok(false);
            }
        }
    }
    if !t.is_normal_subgroup(sub_t) {
        return Ok(false);
    }
    // mu(S) inside H
    for &s in sub_t {
        if sub_g.binary_search(&ambient.mu().apply(s)).is_err() {
            return Ok(false);
        }
    }
    // ^h t * t^-1 in S
    for &h in sub_g {
        for tt in t.elements() {
            let d = t.mul(ambient.act(h, tt), t.inv(tt));
            if sub_t.binary_search(&d).is_err() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quotient of a crossed module by a normal subcrossed module, with the
/// induced boundary and action and the projection morphism.
pub fn quotient_xmod(
    ambient: &CrossedModule,
    sub_t: &[usize],
    sub_g: &[usize],
) -> Result<(CrossedModule, XModMorphism)> {
    if !is_normal_subxmod(ambient, sub_t, sub_g)? {
        return Err(Error::Precondition("not a normal subcrossed module".into()));
    }
    let (qt, proj_t) = ambient.top().quotient(sub_t)?;
    let (qg, proj_g) = ambient.base().quotient(sub_g)?;
    let mu_bar = ambient.mu().induce_on_quotients(&proj_t, &proj_g)?;
    // induced action on classes, with an explicit descent check
    let mut table = vec![usize::MAX; qg.order() * qt.order()];
    for gg in ambient.base().elements() {
        for tt in ambient.top().elements() {
            let slot = proj_g.apply(gg) * qt.order() + proj_t.apply(tt);
            let val = proj_t.apply(ambient.act(gg, tt));
            if table[slot] == usize::MAX {
                table[slot] = val;
            } else if table[slot] != val {
                return Err(Error::Precondition(
                    "action does not descend to the quotient classes".into(),
                ));
            }
        }
    }
    let action = GroupAction::new(qg.clone(), qt.clone(), table)?;
    let quot = CrossedModule::new(qt, qg, mu_bar, action)?;
    let proj = XModMorphism::new(ambient.clone(), quot.clone(), proj_t, proj_g)?;
    Ok((quot, proj))
}

/// Isomorphism search over pairs of group isomorphisms; returns the first
/// compatible pair in lexicographic order, or None.
pub fn xmod_isomorphism(x1: &CrossedModule, x2: &CrossedModule) -> Option<XModMorphism> {
    if x1.top().order() != x2.top().order() || x1.base().order() != x2.base().order() {
        return None;
    }
    let top_isos = all_isomorphisms(x1.top(), x2.top());
    if top_isos.is_empty() {
        return None;
    }
    let base_isos = all_isomorphisms(x1.base(), x2.base());
    for alpha in &top_isos {
        for phi in &base_isos {
            let square = x1
                .top()
                .elements()
                .all(|t| x2.mu().apply(alpha.apply(t)) == phi.apply(x1.mu().apply(t)));
            if !square {
                continue;
            }
            let equiv = x1.base().elements().all(|g| {
                x1.top()
                    .elements()
                    .all(|t| alpha.apply(x1.act(g, t)) == x2.act(phi.apply(g), alpha.apply(t)))
            });
            if equiv {
                let m = XModMorphism::new(x1.clone(), x2.clone(), alpha.clone(), phi.clone())
                    .expect("checked compatibility");
                return Some(m);
            }
        }
    }
    None
}
