//! The derived-functor instance over a point module: abelianization of an
//! extension, the induced module structures, the derivation bijection and
//! the three-term sequence with its exactness report.
//!
//! Facts that are theorems for valid extensions (well-definedness of the
//! induced actions, module axioms of the constructed objects, the
//! derivation bijection) are asserted and abort on failure.

use std::collections::HashMap;

use crate::act::{
    module_check, module_hom_check, semidirect_xmod, ModuleMorphism, RawActionData, XModModule,
};
use crate::cat1::{cm_to_cat1, Cat1Group, Cat1Morphism};
use crate::error::{Error, Result};
use crate::group::{all_homomorphisms, FiniteGroup, GroupAction, GroupHom};
use crate::xmod::{kernel_xmod, CrossedModule, XModMorphism};

/// An extension of crossed modules `(N, G, nu) >-> (T, G, mu) -(f,0)-» (M, 1, 0)`.
pub struct XModExtension {
    kernel: CrossedModule,
    total: CrossedModule,
    quotient: CrossedModule,
    incl: XModMorphism,
    proj: XModMorphism,
}

impl XModExtension {
    /// Build from a surjection `f : T -» M` with `M` abelian; the morphism
    /// `(f, 0)` must kill the action (`f(^g t) = f(t)`), which is checked by
    /// the morphism validation.
    pub fn from_surjection(total: &CrossedModule, m: &FiniteGroup, f: GroupHom) -> Result<Self> {
        if !f.is_surjective() {
            let missing = m.elements().find(|x| !f.images().contains(x)).unwrap_or(0);
            return Err(Error::NotSurjective { missing });
        }
        let quotient = CrossedModule::point_module(m)?;
        let proj = XModMorphism::new(
            total.clone(),
            quotient.clone(),
            f,
            GroupHom::zero(total.base(), &FiniteGroup::trivial()),
        )?;
        let (kernel, incl) = kernel_xmod(&proj)?;
        XModExtension::new(kernel, total.clone(), quotient, incl, proj)
    }

    pub fn new(
        kernel: CrossedModule,
        total: CrossedModule,
        quotient: CrossedModule,
        incl: XModMorphism,
        proj: XModMorphism,
    ) -> Result<Self> {
        if quotient.base().order() != 1 {
            return Err(Error::Precondition(
                "quotient must have trivial base".into(),
            ));
        }
        if !quotient.top().is_abelian() {
            return Err(Error::Precondition("quotient top must be abelian".into()));
        }
        if incl.source() != &kernel || incl.target() != &total {
            return Err(Error::Argument("inclusion does not line up".into()));
        }
        if proj.source() != &total || proj.target() != &quotient {
            return Err(Error::Argument("projection does not line up".into()));
        }
        if !incl.is_injective() {
            return Err(Error::Precondition("inclusion is not injective".into()));
        }
        if !proj.is_surjective() {
            return Err(Error::Precondition("projection is not surjective".into()));
        }
        if incl.f().image() != proj.f().kernel() || incl.h().image() != proj.h().kernel() {
            return Err(Error::Precondition(
                "inclusion is not the kernel of the projection".into(),
            ));
        }
        Ok(XModExtension {
            kernel,
            total,
            quotient,
            incl,
            proj,
        })
    }

    pub fn kernel(&self) -> &CrossedModule {
        &self.kernel
    }

    pub fn total(&self) -> &CrossedModule {
        &self.total
    }

    pub fn quotient(&self) -> &CrossedModule {
        &self.quotient
    }

    pub fn incl(&self) -> &XModMorphism {
        &self.incl
    }

    pub fn proj(&self) -> &XModMorphism {
        &self.proj
    }

    /// `f : T -> M`.
    pub fn f(&self) -> &GroupHom {
        self.proj.f()
    }

    /// A fixed preimage of each element of `M` (smallest `t` wins).
    fn preimages(&self) -> Vec<usize> {
        let m = self.quotient.top();
        let mut pre = vec![usize::MAX; m.order()];
        for t in self.total.top().elements() {
            let im = self.f().apply(t);
            if pre[im] == usize::MAX {
                pre[im] = t;
            }
        }
        pre
    }

    /// `J = [G, N] [T, T]` as an element set of `T`: displacements of the
    /// kernel under the base action together with all commutators.
    pub fn j_subgroup(&self) -> Vec<usize> {
        let t = self.total.top();
        let mut seed = t.derived_subgroup();
        let n_in_t = self.incl.f().image();
        for g in self.total.base().elements() {
            for &n in &n_in_t {
                seed.push(t.mul(self.total.act(g, n), t.inv(n)));
            }
        }
        let j = t.subgroup_closure(&seed);
        debug_assert!(t.is_normal_subgroup(&j));
        j
    }
}

/// The abelianization of an extension over its point module:
/// `(T/J, G_ab, mu_bar)` with the `eps'` action of `(M, 1, 0)`, where
/// `eps'(m)[g] = [t] - [^g t]` for any `f(t) = m`.
pub struct PointAbelianization {
    /// `(T/J, G_ab, mu_bar)` with trivial internal action, as a module
    pub module: XModModule,
    pub proj_top: GroupHom,
    pub proj_base: GroupHom,
    pub j_set: Vec<usize>,
    /// the adjunction unit `(T, G, mu) -> module x| (M, 1, 0)`
    pub unit: XModMorphism,
}

pub fn abelianize_over_point(e: &XModExtension, enum_bound: usize) -> PointAbelianization {
    let t = e.total().top();
    let g = e.total().base();
    let j = e.j_subgroup();
    let (tj, proj_top) = t.quotient(&j).expect("J is normal in T");
    let (gab, proj_base, _) = g.abelianization();
    let mu_bar = e
        .total()
        .mu()
        .induce_on_quotients(&proj_top, &proj_base)
        .expect("mu maps J into the commutator subgroup");
    let mid = CrossedModule::with_trivial_action(&tj, &gab, mu_bar)
        .expect("(T/J, G_ab, mu_bar) is an abelian crossed module");

    // eps'(m)[g] = [t] - [^g t]; well-definedness across preimages of m and
    // across commutator classes of g is asserted exhaustively.
    let m_group = e.quotient().top();
    let mut epsilon = vec![vec![usize::MAX; gab.order()]; m_group.order()];
    for tt in t.elements() {
        let m = e.f().apply(tt);
        for gg in g.elements() {
            let val = tj.mul(
                proj_top.apply(tt),
                tj.inv(proj_top.apply(e.total().act(gg, tt))),
            );
            let slot = &mut epsilon[m][proj_base.apply(gg)];
            if *slot == usize::MAX {
                *slot = val;
            } else {
                assert_eq!(
                    *slot, val,
                    "eps' must not depend on the preimage of m or the class representative"
                );
            }
        }
    }
    let epsilon: Vec<Vec<usize>> = epsilon
        .into_iter()
        .map(|row| {
            row.into_iter()
                .inspect(|&v| {
                    debug_assert!(v != usize::MAX, "f is onto, so every slot is filled");
                })
                .collect()
        })
        .collect();
    let data = RawActionData {
        epsilon,
        rho_top: vec![tj.full_set()],
        rho_base: vec![gab.full_set()],
    };
    let module = module_check(e.quotient(), &mid, &data, enum_bound)
        .expect("(T/J, G_ab, mu_bar) with eps' is a (M,1,0)-module");

    // the adjunction unit into module x| (M,1,0): t -> ([t], f(t)), g -> [g]
    let ext = semidirect_xmod(module.action());
    let product = &ext.product;
    let nm = e.quotient().top().order();
    let top_images: Vec<usize> = t
        .elements()
        .map(|tt| {
            let pair_in_a = proj_top.apply(tt); // A = T/J
            let pair_in_m = e.f().apply(tt);
            // top of the product is A x| M with encoding a * |M| + m... the
            // product top is (T/J) x| M_top with |M_top| = nm
            pair_in_a * nm + pair_in_m
        })
        .collect();
    let base_images: Vec<usize> = g
        .elements()
        .map(|gg| {
            // base of the product is G_ab x| 1
            proj_base.apply(gg)
        })
        .collect();
    let unit_f = GroupHom::new(t.clone(), product.top().clone(), top_images)
        .expect("unit top map is a homomorphism");
    let unit_h = GroupHom::new(g.clone(), product.base().clone(), base_images)
        .expect("unit base map is a homomorphism");
    let unit = XModMorphism::new(e.total().clone(), product.clone(), unit_f, unit_h)
        .expect("the unit into the split extension is a morphism");

    PointAbelianization {
        module,
        proj_top,
        proj_base,
        j_set: j,
        unit,
    }
}

/// `(N/[G,N], G_ab, nu_bar)` with the `eps''` action
/// `eps''(m)[g] = [t ^g t^-1]`.
pub struct KernelAbelianization {
    pub module: XModModule,
    /// projection from the kernel top group
    pub proj_kernel: GroupHom,
    /// projection `G -> G_ab` shared with the point abelianization
    pub proj_base: GroupHom,
    /// `[G, N]` as an element set of the kernel top group
    pub displacement_set: Vec<usize>,
}

pub fn kernel_abelianization(
    e: &XModExtension,
    proj_base: &GroupHom,
    enum_bound: usize,
) -> KernelAbelianization {
    let kernel = e.kernel();
    let n_group = kernel.top();
    let g = e.total().base();
    // [G, N] inside the kernel top group
    let mut seed = Vec::new();
    for gg in g.elements() {
        for n in n_group.elements() {
            seed.push(n_group.mul(kernel.act(gg, n), n_group.inv(n)));
        }
    }
    let disp = n_group.subgroup_closure(&seed);
    let (nab, proj_kernel) = n_group.quotient(&disp).expect("[G,N] is normal in N");
    let gab = proj_base.target();
    let nu_bar = kernel
        .mu()
        .induce_on_quotients(&proj_kernel, proj_base)
        .expect("nu maps [G,N] into [G,G]");
    let left = CrossedModule::with_trivial_action(&nab, gab, nu_bar)
        .expect("(N/[G,N], G_ab, nu_bar) is an abelian crossed module");

    // eps''(m)[g] = [t ^g t^-1], pulled back through the kernel inclusion
    let t = e.total().top();
    let m_group = e.quotient().top();
    let mut n_index: HashMap<usize, usize> = HashMap::new();
    for n in n_group.elements() {
        n_index.insert(e.incl().f().apply(n), n);
    }
    let mut epsilon = vec![vec![usize::MAX; gab.order()]; m_group.order()];
    for tt in t.elements() {
        let m = e.f().apply(tt);
        for gg in g.elements() {
            let d = t.mul(tt, t.inv(e.total().act(gg, tt)));
            let n = *n_index.get(&d).expect("t * (^g t)^-1 lies in the kernel");
            let val = proj_kernel.apply(n);
            let slot = &mut epsilon[m][proj_base.apply(gg)];
            if *slot == usize::MAX {
                *slot = val;
            } else {
                assert_eq!(
                    *slot, val,
                    "eps'' must not depend on the preimage of m or the class representative"
                );
            }
        }
    }
    let epsilon: Vec<Vec<usize>> = epsilon
        .into_iter()
        .map(|row| {
            row.into_iter()
                .inspect(|&v| {
                    debug_assert!(v != usize::MAX, "f is onto, so every slot is filled");
                })
                .collect()
        })
        .collect();
    let data = RawActionData {
        epsilon,
        rho_top: vec![nab.full_set()],
        rho_base: vec![gab.full_set()],
    };
    let module = module_check(e.quotient(), &left, &data, enum_bound)
        .expect("(N/[G,N], G_ab, nu_bar) with eps'' is a (M,1,0)-module");
    KernelAbelianization {
        module,
        proj_kernel,
        proj_base: proj_base.clone(),
        displacement_set: disp,
    }
}

/// The three-term sequence of `(M,1,0)`-modules attached to an extension:
/// `(N/[G,N], G_ab, nu_bar) -(u, id)-> (T/J, G_ab, mu_bar) -(f_bar, 0)-» (M, 1, 0)`.
pub struct ThreeTermSequence {
    pub left: XModModule,
    pub mid: XModModule,
    pub right: XModModule,
    pub u: ModuleMorphism,
    pub f_bar: ModuleMorphism,
    pub abelianization: PointAbelianization,
    pub kernel_ab: KernelAbelianization,
}

pub fn three_term(e: &XModExtension, enum_bound: usize) -> ThreeTermSequence {
    let ab = abelianize_over_point(e, enum_bound);
    let kab = kernel_abelianization(e, &ab.proj_base, enum_bound);

    // right: (M, 1, 0) as a module over itself, zero action
    let right = module_check(
        e.quotient(),
        e.quotient(),
        &RawActionData::zero(e.quotient(), e.quotient()),
        enum_bound,
    )
    .expect("(M,1,0) is a module over itself");

    // u : N/[G,N] -> T/J, [n] -> [n]
    let nab = kab.module.coeff().top();
    let tj = ab.module.coeff().top();
    let mut u_images = vec![usize::MAX; nab.order()];
    for n in e.kernel().top().elements() {
        let from = kab.proj_kernel.apply(n);
        let to = ab.proj_top.apply(e.incl().f().apply(n));
        if u_images[from] == usize::MAX {
            u_images[from] = to;
        } else {
            assert_eq!(u_images[from], to, "u must be well defined on classes");
        }
    }
    let u_top = GroupHom::new(nab.clone(), tj.clone(), u_images).expect("u is a homomorphism");
    let gab = ab.module.coeff().base().clone();
    let u = module_hom_check(&kab.module, &ab.module, &u_top, &GroupHom::identity(&gab))
        .expect("(u, id) is a morphism of (M,1,0)-modules");

    // f_bar : T/J -> M, [t] -> f(t)
    let m_group = e.quotient().top();
    let mut f_images = vec![usize::MAX; tj.order()];
    for t in e.total().top().elements() {
        let from = ab.proj_top.apply(t);
        let to = e.f().apply(t);
        if f_images[from] == usize::MAX {
            f_images[from] = to;
        } else {
            assert_eq!(f_images[from], to, "f_bar must be well defined on classes");
        }
    }
    let f_top =
        GroupHom::new(tj.clone(), m_group.clone(), f_images).expect("f_bar is a homomorphism");
    let f_bar = module_hom_check(
        &ab.module,
        &right,
        &f_top,
        &GroupHom::zero(&gab, e.quotient().base()),
    )
    .expect("(f_bar, 0) is a morphism of (M,1,0)-modules");

    // im(u) inside ker(f_bar) always
    for c in nab.elements() {
        assert_eq!(f_top.apply(u_top.apply(c)), 0, "f_bar . u = 0");
    }
    assert!(f_top.is_surjective(), "f_bar is surjective");

    ThreeTermSequence {
        left: kab.module.clone(),
        mid: ab.module.clone(),
        right,
        u,
        f_bar,
        abelianization: ab,
        kernel_ab: kab,
    }
}

/// Exactness data of a three-term sequence. Right surjectivity and middle
/// exactness are theorems; injectivity of `u` can genuinely fail, and the
/// report exposes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub right_surjective: bool,
    pub middle_exact: bool,
    pub u_injective: bool,
}

pub fn exactness_report(s: &ThreeTermSequence) -> ExactnessReport {
    let right_surjective = s.f_bar.r.is_surjective();
    let middle_exact = s.u.r.image() == s.f_bar.r.kernel();
    let u_injective = s.u.r.is_injective();
    ExactnessReport {
        right_surjective,
        middle_exact,
        u_injective,
    }
}

/// The `(M,1,0)`-action on `(N x| G)_ab` from conjugation upstairs, checked
/// against the product form `m . ([n], [g]) = ([t n ^g t^-1], [g])` through
/// the isomorphism `phi([n], [g]) = [(n, g)]`.
pub struct CommutatorQuotientAction {
    /// `(N x| G)_ab` with the induced structure maps
    pub ab_cat1: Cat1Group,
    /// projection from `N x| G`
    pub proj_ab: GroupHom,
    /// `M` acting on the abelianization by conjugation with preimages
    pub action: GroupAction,
    /// `N/[G,N] x G_ab` with its structure maps
    pub product_cat1: Cat1Group,
    /// the isomorphism `phi` of cat1-groups
    pub phi: Cat1Morphism,
}

pub fn commutator_action_on_quotient(
    e: &XModExtension,
    enum_bound: usize,
) -> CommutatorQuotientAction {
    let kab = {
        let ab = abelianize_over_point(e, enum_bound);
        kernel_abelianization(e, &ab.proj_base, enum_bound)
    };
    let g_n = cm_to_cat1(e.kernel());
    let ng_group = g_n.cat1.group().clone();
    let derived = ng_group.derived_subgroup();
    let (ab_group, proj_ab) = ng_group
        .quotient(&derived)
        .expect("derived subgroup is normal");
    let s0_bar = g_n
        .cat1
        .d0()
        .induce_on_quotients(&proj_ab, &proj_ab)
        .expect("d0 descends to the abelianization");
    let s1_bar = g_n
        .cat1
        .d1()
        .induce_on_quotients(&proj_ab, &proj_ab)
        .expect("d1 descends to the abelianization");
    let ab_cat1 = Cat1Group::new(ab_group.clone(), s0_bar, s1_bar)
        .expect("the abelianized cat1-group satisfies the axioms");

    // product side: N/[G,N] x G_ab (direct product; the conjugation action
    // of G on N/[G,N] is trivial because displacements are killed)
    let nab = kab.module.coeff().top().clone();
    let gab = kab.module.coeff().base().clone();
    let prod = FiniteGroup::direct_product(&nab, &gab);
    let nu_bar = kab.module.coeff().mu().clone();
    let enc = |n: usize, g: usize| n * gab.order() + g;
    let u0 = GroupHom::new(
        prod.clone(),
        prod.clone(),
        prod.elements().map(|e| enc(0, e % gab.order())).collect(),
    )
    .expect("u0 is a homomorphism");
    let u1 = GroupHom::new(
        prod.clone(),
        prod.clone(),
        prod.elements()
            .map(|e| {
                let (n, g) = (e / gab.order(), e % gab.order());
                enc(0, gab.mul(nu_bar.apply(n), g))
            })
            .collect(),
    )
    .expect("u1 is a homomorphism");
    let product_cat1 =
        Cat1Group::new(prod.clone(), u0, u1).expect("the product cat1-group satisfies the axioms");

    // phi([n], [g]) = [(n, g)], verified well defined and an isomorphism
    let ng = e.total().base().order();
    let enc_ng = |n: usize, g: usize| n * ng + g;
    let mut phi_images = vec![usize::MAX; prod.order()];
    for n in e.kernel().top().elements() {
        for g in e.total().base().elements() {
            let from = enc(kab.proj_kernel.apply(n), kab.proj_base.apply(g));
            let to = proj_ab.apply(enc_ng(n, g));
            if phi_images[from] == usize::MAX {
                phi_images[from] = to;
            } else {
                assert_eq!(phi_images[from], to, "phi must be well defined");
            }
        }
    }
    let phi_hom =
        GroupHom::new(prod.clone(), ab_group.clone(), phi_images).expect("phi is a homomorphism");
    assert!(phi_hom.is_bijective(), "phi is an isomorphism");
    let phi = Cat1Morphism::new(product_cat1.clone(), ab_cat1.clone(), phi_hom.clone())
        .expect("phi commutes with the structure maps");

    // conjugation action of M on the abelianization
    let m_group = e.quotient().top().clone();
    let pre = e.preimages();
    let t_grp = e.total().top();
    let mut n_index: HashMap<usize, usize> = HashMap::new();
    for n in e.kernel().top().elements() {
        n_index.insert(e.incl().f().apply(n), n);
    }
    let mut act = vec![usize::MAX; m_group.order() * ab_group.order()];
    for m in m_group.elements() {
        for n in e.kernel().top().elements() {
            for g in e.total().base().elements() {
                // conjugate (n, g) by (t, 1) upstairs: (t n ^g t^-1, g)
                let t = pre[m];
                let n_t = e.incl().f().apply(n);
                let top = t_grp.mul(t_grp.mul(t, n_t), t_grp.inv(e.total().act(g, t)));
                let n_new = *n_index.get(&top).expect("conjugate stays in the kernel");
                let from = proj_ab.apply(enc_ng(n, g));
                let to = proj_ab.apply(enc_ng(n_new, g));
                let slot = &mut act[m * ab_group.order() + from];
                if *slot == usize::MAX {
                    *slot = to;
                } else {
                    assert_eq!(*slot, to, "the conjugation action descends to classes");
                }
            }
        }
    }
    // double-check independence of the preimage choice
    for m in m_group.elements() {
        for t in t_grp.elements().filter(|&t| e.f().apply(t) == m) {
            for n in e.kernel().top().elements() {
                for g in e.total().base().elements() {
                    let n_t = e.incl().f().apply(n);
                    let top = t_grp.mul(t_grp.mul(t, n_t), t_grp.inv(e.total().act(g, t)));
                    let n_new = *n_index.get(&top).expect("conjugate stays in the kernel");
                    assert_eq!(
                        act[m * ab_group.order() + proj_ab.apply(enc_ng(n, g))],
                        proj_ab.apply(enc_ng(n_new, g)),
                        "the action must not depend on the chosen preimage"
                    );
                }
            }
        }
    }
    let action = GroupAction::new(m_group, ab_group, act)
        .expect("conjugation with preimages is an action on the abelianization");

    // the product form m . ([n], [g]) = ([n] + eps''(m)[g], [g]) matches
    // through phi
    for m in e.quotient().top().elements() {
        for p in prod.elements() {
            let (nb, gb) = (p / gab.order(), p % gab.order());
            let shifted = enc(nab.mul(nb, kab.module.action().eps(m, gb)), gb);
            assert_eq!(
                action.apply(m, phi.hom().apply(p)),
                phi.hom().apply(shifted),
                "the action transported through phi matches the eps'' form"
            );
        }
    }

    CommutatorQuotientAction {
        ab_cat1,
        proj_ab,
        action,
        product_cat1,
        phi,
    }
}

/// Pairs `(D1 : T -> A, D2 : G -> B)` with `delta D1 = D2 mu` and
/// `D1(^g t) = D1(t) - eps(f t)(D2 g)`. Over a point module the induced
/// actions are trivial, so derivations are plain homomorphisms (the
/// derivation law collapses to additivity, which the homomorphism search
/// validates exhaustively).
#[derive(Clone)]
pub struct DerivationPair {
    pub d1: GroupHom,
    pub d2: GroupHom,
}

pub fn derivation_pairs(e: &XModExtension, module: &XModModule) -> Vec<DerivationPair> {
    assert!(
        module.base() == e.quotient(),
        "module must live over the extension's point module"
    );
    let t = e.total().top();
    let g = e.total().base();
    let a = module.coeff().top();
    let b = module.coeff().base();
    let delta = module.coeff().mu();
    let mut out = Vec::new();
    for d1 in all_homomorphisms(t, a) {
        for d2 in all_homomorphisms(g, b) {
            // D2 mu = delta D1
            if !t
                .elements()
                .all(|tt| d2.apply(e.total().mu().apply(tt)) == delta.apply(d1.apply(tt)))
            {
                continue;
            }
            // D1(^g t) = D1(t) - eps(f t)(D2 g)
            let ok = g.elements().all(|gg| {
                t.elements().all(|tt| {
                    let lhs = d1.apply(e.total().act(gg, tt));
                    let rhs = a.mul(
                        d1.apply(tt),
                        a.inv(module.action().eps(e.f().apply(tt), d2.apply(gg))),
                    );
                    lhs == rhs
                })
            });
            if ok {
                out.push(DerivationPair { d1: d1.clone(), d2 });
            }
        }
    }
    out
}

/// All module morphisms `(T/J, G_ab, mu_bar) -> module` over `(M, 1, 0)`.
pub fn module_homs(mid: &XModModule, module: &XModModule) -> Vec<ModuleMorphism> {
    let mut out = Vec::new();
    for r in all_homomorphisms(mid.coeff().top(), module.coeff().top()) {
        for s in all_homomorphisms(mid.coeff().base(), module.coeff().base()) {
            if let Ok(m) = module_hom_check(mid, module, &r, &s) {
                out.push(m);
            }
        }
    }
    out
}

/// The derivation bijection: `phi((D1, f), D2) = (nu1, nu2)` with
/// `nu1[t] = D1(t)`, `nu2[g] = D2(g)`, and its inverse. Both composites are
/// verified to be the identity elementwise; failure aborts.
pub struct DerivationBijection {
    pub pairs: Vec<DerivationPair>,
    pub homs: Vec<ModuleMorphism>,
    /// index of `phi(pair)` in `homs`, per pair
    pub forward: Vec<usize>,
}

pub fn derivation_bijection(
    e: &XModExtension,
    module: &XModModule,
    enum_bound: usize,
) -> DerivationBijection {
    let ab = abelianize_over_point(e, enum_bound);
    let pairs = derivation_pairs(e, module);
    let homs = module_homs(&ab.module, module);
    assert_eq!(
        pairs.len(),
        homs.len(),
        "derivations and module morphisms must be in bijection"
    );
    let mut forward = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        // nu1 [t] = D1(t): well defined because D1 kills J
        let nu1 = pair
            .d1
            .induce_on_quotients(&ab.proj_top, &GroupHom::identity(module.coeff().top()))
            .expect("D1 kills J, so nu1 is well defined");
        let nu2 = pair
            .d2
            .induce_on_quotients(&ab.proj_base, &GroupHom::identity(module.coeff().base()))
            .expect("D2 kills commutators, so nu2 is well defined");
        module_hom_check(&ab.module, module, &nu1, &nu2).expect("phi lands in module morphisms");
        let idx = homs
            .iter()
            .position(|h| h.r == nu1 && h.s == nu2)
            .expect("phi image appears in the enumerated morphisms");
        forward.push(idx);
        // psi . phi = id on this pair
        let back_d1 = ab.proj_top.then(&nu1);
        let back_d2 = ab.proj_base.then(&nu2);
        assert!(
            back_d1 == pair.d1 && back_d2 == pair.d2,
            "psi . phi must be the identity"
        );
    }
    // phi . psi = id: forward must be a bijection of indices
    let mut seen = vec![false; homs.len()];
    for &i in &forward {
        assert!(!seen[i], "phi must be injective on enumerated pairs");
        seen[i] = true;
    }
    assert!(
        seen.iter().all(|&s| s),
        "phi must be onto the module morphisms"
    );
    DerivationBijection {
        pairs,
        homs,
        forward,
    }
}

#[cfg(test)]
mod tests;
