//! Cat1-groups and the equivalence with crossed modules.
//!
//! A cat1-group is `(G, d0, d1)` with `d0 d1 = d1`, `d1 d0 = d0` and
//! `[ker d0, ker d1] = 1`. Both the subgroup form and the elementwise form
//! of the kernel-commutator condition are checked and asserted equal.

use crate::error::{Error, Result};
use crate::group::{
    all_endomorphisms, first_isomorphism_with, FiniteGroup, GroupAction, GroupHom,
    SemidirectProduct,
};
use crate::xmod::CrossedModule;

#[derive(Clone, PartialEq)]
pub struct Cat1Group {
    g: FiniteGroup,
    d0: GroupHom,
    d1: GroupHom,
}

impl std::fmt::Debug for Cat1Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Cat1Group(|G|={}, |ker d0|={}, |im d0|={})",
            self.g.order(),
            self.d0.kernel().len(),
            self.d0.image().len()
        )
    }
}

impl Cat1Group {
    pub fn new(g: FiniteGroup, d0: GroupHom, d1: GroupHom) -> Result<Self> {
        for (name, d) in [("d0", &d0), ("d1", &d1)] {
            if d.source() != &g || d.target() != &g {
                return Err(Error::Argument(format!(
                    "{name} must be an endomorphism of G"
                )));
            }
        }
        for x in g.elements() {
            if d0.apply(d1.apply(x)) != d1.apply(x) {
                return Err(Error::Cat1Identity {
                    name: "d0 d1 = d1",
                    x,
                });
            }
        }
        for x in g.elements() {
            if d1.apply(d0.apply(x)) != d0.apply(x) {
                return Err(Error::Cat1Identity {
                    name: "d1 d0 = d0",
                    x,
                });
            }
        }
        // elementwise: d0(x)x^-1 commutes with d1(y)y^-1 for all x, y
        let mut elementwise_ok = None;
        'outer: for x in g.elements() {
            let a = g.mul(d0.apply(x), g.inv(x));
            for y in g.elements() {
                let b = g.mul(d1.apply(y), g.inv(y));
                if g.mul(a, b) != g.mul(b, a) {
                    elementwise_ok = Some((x, y));
                    break 'outer;
                }
            }
        }
        // subgroup form: [ker d0, ker d1] = 1
        let sub = g.commutator_subgroup(&d0.kernel(), &d1.kernel());
        let subgroup_ok = sub == vec![0];
        assert_eq!(
            subgroup_ok,
            elementwise_ok.is_none(),
            "elementwise and subgroup kernel-commutator conditions must agree"
        );
        if let Some((x, y)) = elementwise_ok {
            return Err(Error::KernelCommutator { x, y });
        }
        let c = Cat1Group { g, d0, d1 };
        // d0 d1 = d1 and d1 d0 = d0 force equal images
        debug_assert_eq!(c.d0.image(), c.d1.image());
        Ok(c)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn d0(&self) -> &GroupHom {
        &self.d0
    }

    pub fn d1(&self) -> &GroupHom {
        &self.d1
    }
}

/// Morphism of cat1-groups: a single homomorphism commuting with both
/// structure maps.
#[derive(Clone)]
pub struct Cat1Morphism {
    source: Cat1Group,
    target: Cat1Group,
    hom: GroupHom,
}

impl Cat1Morphism {
    pub fn new(source: Cat1Group, target: Cat1Group, hom: GroupHom) -> Result<Self> {
        if hom.source() != source.group() || hom.target() != target.group() {
            return Err(Error::Argument("morphism does not line up".into()));
        }
        for (name, ds, dt) in [
            ("d0", source.d0(), target.d0()),
            ("d1", source.d1(), target.d1()),
        ] {
            for x in source.group().elements() {
                if hom.apply(ds.apply(x)) != dt.apply(hom.apply(x)) {
                    return Err(Error::Cat1Identity {
                        name: if name == "d0" {
                            "f d0 = d0' f"
                        } else {
                            "f d1 = d1' f"
                        },
                        x,
                    });
                }
            }
        }
        Ok(Cat1Morphism {
            source,
            target,
            hom,
        })
    }

    pub fn source(&self) -> &Cat1Group {
        &self.source
    }

    pub fn target(&self) -> &Cat1Group {
        &self.target
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }
}

/// The cat1-group of a crossed module, together with the structure maps of
/// the underlying semidirect product.
pub struct Cat1FromXMod {
    pub cat1: Cat1Group,
    /// `T -> T x| G`, image = ker d0
    pub top_embedding: GroupHom,
    /// `G -> T x| G`, a section of the projection
    pub base_embedding: GroupHom,
    /// `T x| G -> G`
    pub base_projection: GroupHom,
}

/// `(T, G, mu)  |->  (T x| G, d0, d1)` with `d0(t,g) = (1,g)` and
/// `d1(t,g) = (1, mu(t) g)`. Validity is a theorem; a validation failure
/// here aborts.
pub fn cm_to_cat1(x: &CrossedModule) -> Cat1FromXMod {
    let SemidirectProduct {
        group,
        space_injection,
        actor_injection,
        projection,
    } = x.action().semidirect_product();
    let ng = x.base().order();
    let enc = |t: usize, g: usize| t * ng + g;
    let d0_images: Vec<usize> = group.elements().map(|e| enc(0, e % ng)).collect();
    let d1_images: Vec<usize> = group
        .elements()
        .map(|e| {
            let (t, g) = (e / ng, e % ng);
            enc(0, x.base().mul(x.mu().apply(t), g))
        })
        .collect();
    let d0 = GroupHom::new(group.clone(), group.clone(), d0_images)
        .expect("d0 of a valid crossed module is a homomorphism");
    let d1 = GroupHom::new(group.clone(), group.clone(), d1_images)
        .expect("d1 of a valid crossed module is a homomorphism");
    let cat1 = Cat1Group::new(group, d0, d1)
        .expect("the cat1-group of a valid crossed module satisfies the axioms");
    Cat1FromXMod {
        cat1,
        top_embedding: space_injection,
        base_embedding: actor_injection,
        base_projection: projection,
    }
}

/// The crossed module of a cat1-group, with the element maps back into the
/// ambient group.
pub struct CmFromCat1 {
    pub xmod: CrossedModule,
    /// top elements as elements of the ambient group (ker d0)
    pub top_elems: Vec<usize>,
    /// base elements as elements of the ambient group (im d1)
    pub base_elems: Vec<usize>,
}

/// `(G, d0, d1)  |->  (ker d0, im d1, d1|)` with the conjugation action.
/// Validity is a theorem; a validation failure here aborts.
pub fn cat1_to_cm(c: &Cat1Group) -> CmFromCat1 {
    let g = c.group();
    let ker0 = c.d0().kernel();
    let im1 = c.d1().image();
    assert_eq!(
        c.d0().image(),
        im1,
        "im d0 = im d1 in a validated cat1-group"
    );
    let (top, top_elems) = g.subgroup_as_group(&ker0).expect("kernel is a subgroup");
    let (base, base_elems) = g.subgroup_as_group(&im1).expect("image is a subgroup");
    let mu = c
        .d1()
        .restrict(&top, &top_elems, &base, &base_elems)
        .expect("d1 restricts to ker d0 -> im d1");
    let table: Vec<usize> = (0..base.order())
        .flat_map(|bi| {
            let (top_elems, base_elems) = (&top_elems, &base_elems);
            (0..top.order()).map(move |ti| {
                let conj = g.conj(base_elems[bi], top_elems[ti]);
                top_elems
                    .binary_search(&conj)
                    .expect("ker d0 is normal, conjugation stays inside")
            })
        })
        .collect();
    let action = GroupAction::new(base.clone(), top.clone(), table)
        .expect("conjugation inside a group is an action");
    let xmod = CrossedModule::new(top, base, mu, action)
        .expect("the crossed module of a valid cat1-group satisfies the axioms");
    CmFromCat1 {
        xmod,
        top_elems,
        base_elems,
    }
}

/// Isomorphism of cat1-groups: the lexicographically first group
/// isomorphism commuting with both structure maps, if one exists.
pub fn cat1_iso(c1: &Cat1Group, c2: &Cat1Group) -> Option<GroupHom> {
    if c1.group().order() != c2.group().order() {
        return None;
    }
    // cheap invariants
    if c1.d0().kernel().len() != c2.d0().kernel().len()
        || c1.d1().kernel().len() != c2.d1().kernel().len()
        || c1.d0().image().len() != c2.d0().image().len()
    {
        return None;
    }
    first_isomorphism_with(c1.group(), c2.group(), |phi| {
        c1.group().elements().all(|x| {
            phi.apply(c1.d0().apply(x)) == c2.d0().apply(phi.apply(x))
                && phi.apply(c1.d1().apply(x)) == c2.d1().apply(phi.apply(x))
        })
    })
}

/// Isomorphism test through the crossed-module equivalence: find an
/// isomorphism of the associated crossed modules and lift it along
/// `G = ker d0 . im d0`. Much cheaper than the direct backtracking when
/// the underlying group has a large automorphism group; the lifted map is
/// fully re-validated.
pub fn cat1_iso_via_xmod(c1: &Cat1Group, c2: &Cat1Group) -> Option<GroupHom> {
    if c1.group().order() != c2.group().order() {
        return None;
    }
    let down1 = cat1_to_cm(c1);
    let down2 = cat1_to_cm(c2);
    let m = crate::xmod::xmod_isomorphism(&down1.xmod, &down2.xmod)?;
    let g1 = c1.group();
    let g2 = c2.group();
    let pos = |elems: &[usize], e: usize| elems.binary_search(&e).expect("element of the part");
    let images: Vec<usize> = g1
        .elements()
        .map(|x| {
            // x = k * i with k = x d0(x)^-1 in ker d0, i = d0(x) in im d0
            let i = c1.d0().apply(x);
            let k = g1.mul(x, g1.inv(i));
            let k2 = down2.top_elems[m.f().apply(pos(&down1.top_elems, k))];
            let i2 = down2.base_elems[m.h().apply(pos(&down1.base_elems, i))];
            g2.mul(k2, i2)
        })
        .collect();
    let phi = GroupHom::new(g1.clone(), g2.clone(), images)
        .expect("lift of a crossed-module isomorphism is a homomorphism");
    assert!(phi.is_bijective(), "lifted map is a bijection");
    for x in g1.elements() {
        assert_eq!(
            phi.apply(c1.d0().apply(x)),
            c2.d0().apply(phi.apply(x)),
            "lift commutes with d0"
        );
        assert_eq!(
            phi.apply(c1.d1().apply(x)),
            c2.d1().apply(phi.apply(x)),
            "lift commutes with d1"
        );
    }
    Some(phi)
}

/// The commutator subobject of a cat1-group: the derived subgroup of the
/// underlying group (stability under `d0`, `d1` is automatic and asserted).
pub fn cat1_commutator_subobject(c: &Cat1Group) -> Vec<usize> {
    let derived = c.group().derived_subgroup();
    for &x in &derived {
        assert!(
            derived.binary_search(&c.d0().apply(x)).is_ok()
                && derived.binary_search(&c.d1().apply(x)).is_ok(),
            "derived subgroup must be stable under the structure maps"
        );
    }
    derived
}

/// All cat1-group structures on `g`: pairs of idempotent endomorphisms with
/// a common image whose kernels commute. Deterministic order.
pub fn cat1_structures(g: &FiniteGroup) -> Vec<Cat1Group> {
    let idempotents: Vec<GroupHom> = all_endomorphisms(g)
        .into_iter()
        .filter(|e| e.is_idempotent())
        .collect();
    let mut out = Vec::new();
    for d0 in &idempotents {
        let im0 = d0.image();
        for d1 in &idempotents {
            if d1.image() != im0 {
                continue;
            }
            // common image makes d0 d1 = d1 and d1 d0 = d0 automatic;
            // only the kernel-commutator condition can fail
            if let Ok(c) = Cat1Group::new(g.clone(), d0.clone(), d1.clone()) {
                out.push(c);
            }
        }
    }
    out
}
