use super::*;
use crate::group::{FiniteGroup, GroupHom};
use crate::testutil::{doubling_xmod, inversion_xmod, klein4, s3, zero_xmod_c2};
use crate::xmod::{xmod_isomorphism, CrossedModule};
use crate::DEFAULT_ENUM_BOUND;

#[test]
fn derivation_counts() {
    // (Z/2, Z/2, id, trivial): two derivations, only the zero one a unit
    let x = CrossedModule::conjugation(&FiniteGroup::cyclic(2));
    let ds = derivation_set(&x, DEFAULT_ENUM_BOUND).unwrap();
    assert_eq!(ds.len(), 2);
    assert!(ds[0].is_zero());
    assert!(ds[0].is_unit());
    assert!(!ds[1].is_unit()); // sigma(1) = 1 + 1 = 0

    // (T, 1, 0): a single (empty) derivation
    let t = klein4();
    let x = CrossedModule::point_module(&t).unwrap();
    assert_eq!(derivation_set(&x, DEFAULT_ENUM_BOUND).unwrap().len(), 1);

    // (1, G, 0): only the zero derivation
    let x = CrossedModule::point_base(&s3());
    assert_eq!(derivation_set(&x, DEFAULT_ENUM_BOUND).unwrap().len(), 1);
}

#[test]
fn derivations_need_not_be_homs() {
    // over (Z/4, Z/2, 0, inversion): d(1) = v for any v, since
    // d(1+1) = d(1) + ^1 d(1) = v - v = 0
    let x = inversion_xmod();
    let ds = derivation_set(&x, DEFAULT_ENUM_BOUND).unwrap();
    assert_eq!(ds.len(), 4);
    assert!(ds.iter().all(|d| d.is_unit()));
    // d(1) = 1 is not additive into Z/4, but is a derivation
    assert!(ds.iter().any(|d| d.apply(1) == 1));
}

#[test]
fn derivation_enumeration_bound() {
    let x = CrossedModule::conjugation(&s3());
    let err = derivation_set(&x, 2);
    assert!(matches!(err, Err(crate::error::Error::SizeLimit { .. })));
}

#[test]
fn derivation_law_enforced() {
    let x = CrossedModule::conjugation(&FiniteGroup::cyclic(2));
    // d(1) = 1 is fine; the constructor re-checks the law on every pair
    assert!(Derivation::new(x.clone(), vec![0, 1]).is_ok());
    let c4 = CrossedModule::conjugation(&FiniteGroup::cyclic(4));
    // d(1) = 1 forces d(2) = 2: a map with d(2) = 0 is rejected
    let err = Derivation::new(c4, vec![0, 1, 0, 3]);
    assert!(err.is_err());
}

#[test]
fn whitehead_product_unit_laws() {
    let x = inversion_xmod();
    let ds = derivation_set(&x, DEFAULT_ENUM_BOUND).unwrap();
    let zero = Derivation::zero(&x);
    for d in &ds {
        assert_eq!(d.whitehead_product(&zero), *d);
        assert_eq!(zero.whitehead_product(d), *d);
    }
    // pointwise addition here: d_v . d_w = d_{v+w}
    let d1 = ds.iter().find(|d| d.apply(1) == 1).unwrap();
    let prod = d1.whitehead_product(d1);
    assert_eq!(prod.apply(1), 2);
}

#[test]
fn whitehead_group_structures() {
    // D of the inversion crossed module is Z/4
    let w = whitehead_group(&inversion_xmod(), DEFAULT_ENUM_BOUND).unwrap();
    assert_eq!(w.group.order(), 4);
    assert_eq!(w.group.element_order(1), 4);

    // D of (Z/4, Z/4, x2, trivial) is Klein four: every derivation is a
    // unit and squares to zero under d1 . d2 = 2 d1 d2 + d1 + d2
    let w = whitehead_group(&doubling_xmod(), DEFAULT_ENUM_BOUND).unwrap();
    assert_eq!(w.group.order(), 4);
    assert!(w
        .group
        .elements()
        .skip(1)
        .all(|e| w.group.element_order(e) == 2));

    // (Z/2, Z/2, id): only the zero derivation is a unit
    let w = whitehead_group(
        &CrossedModule::conjugation(&FiniteGroup::cyclic(2)),
        DEFAULT_ENUM_BOUND,
    )
    .unwrap();
    assert_eq!(w.group.order(), 1);
}

#[test]
fn aut_group_examples() {
    let one = CrossedModule::point_module(&FiniteGroup::trivial()).unwrap();
    assert_eq!(xmod_aut_group(&one, 512).unwrap().group.order(), 1);

    // Aut(Z/2) is trivial, so the pair group is trivial
    let x = CrossedModule::conjugation(&FiniteGroup::cyclic(2));
    assert_eq!(xmod_aut_group(&x, 512).unwrap().group.order(), 1);

    // (Z/3, Z/3, id): simultaneous inversion is the only nontrivial pair
    let x = CrossedModule::conjugation(&FiniteGroup::cyclic(3));
    let auts = xmod_aut_group(&x, 512).unwrap();
    assert_eq!(auts.group.order(), 2);

    // identity pair sits at index 0
    assert_eq!(auts.pairs[0].0, GroupHom::identity(x.top()));
}

#[test]
fn actor_examples() {
    // actor of (1, G, 0): trivial derivations, Aut(G)-pairs below
    let x = CrossedModule::point_base(&s3());
    let a = actor(&x, DEFAULT_ENUM_BOUND, 512).unwrap();
    assert_eq!(a.xmod.top().order(), 1);
    assert_eq!(a.xmod.base().order(), 6); // pairs (id, phi), phi in Aut(S3)

    // actor of (Z/2, Z/2, id): trivial on top and bottom
    let x = CrossedModule::conjugation(&FiniteGroup::cyclic(2));
    let a = actor(&x, DEFAULT_ENUM_BOUND, 512).unwrap();
    assert_eq!(a.xmod.top().order(), 1);
    assert_eq!(a.xmod.base().order(), 1);

    // the actor of the inversion crossed module is isomorphic to itself
    let x = inversion_xmod();
    let a = actor(&x, DEFAULT_ENUM_BOUND, 512).unwrap();
    assert_eq!(a.xmod.top().order(), 4);
    assert_eq!(a.xmod.base().order(), 2);
    assert!(xmod_isomorphism(&x, &a.xmod).is_some());
}

#[test]
fn zero_action_always_validates() {
    let base = CrossedModule::conjugation(&FiniteGroup::cyclic(4));
    let coeff = CrossedModule::conjugation(&FiniteGroup::cyclic(2));
    let action = XModAction::zero(&base, &coeff, DEFAULT_ENUM_BOUND).unwrap();
    assert!(action.is_zero());
}

#[test]
fn semidirect_with_zero_action_is_direct_product() {
    let base = CrossedModule::conjugation(&FiniteGroup::cyclic(2));
    let coeff = CrossedModule::conjugation(&FiniteGroup::cyclic(2));
    let action = XModAction::zero(&base, &coeff, DEFAULT_ENUM_BOUND).unwrap();
    let ext = semidirect_xmod(&action);
    assert_eq!(ext.product.top().order(), 4);
    assert_eq!(ext.product.base().order(), 4);
    assert!(ext.product.top().is_abelian());
}

#[test]
fn point_module_semidirect_matches_formula() {
    // coeff (Z/2, Z/2, 0) with eps(m) = identity hom for m = 1 over
    // (M, 1, 0), M = Z/2: product top is A + M, base is B, and
    // ^b (a, m) = (a - eps(m)(b), m)
    let m = FiniteGroup::cyclic(2);
    let base = CrossedModule::point_module(&m).unwrap();
    let coeff = zero_xmod_c2();
    let data = RawActionData {
        epsilon: vec![vec![0, 0], vec![0, 1]],
        rho_top: vec![vec![0, 1]],
        rho_base: vec![vec![0, 1]],
    };
    let action = XModAction::validate(&base, &coeff, &data, DEFAULT_ENUM_BOUND).unwrap();
    let ext = semidirect_xmod(&action);
    assert_eq!(ext.product.top().order(), 4);
    assert_eq!(ext.product.base().order(), 2);
    // ^b (a, m): base element (b, g) = b * 1 + 0 = b; top (a, m) = a * 2 + m
    let enc_top = |a: usize, mm: usize| a * 2 + mm;
    for b in 0..2 {
        for a in 0..2 {
            for mm in 0..2 {
                let got = ext.product.act(b, enc_top(a, mm));
                let eps_mb = action.eps(mm, b);
                let want = enc_top((a + 2 - eps_mb) % 2, mm);
                assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn split_extension_round_trip() {
    let m = FiniteGroup::cyclic(2);
    let base = CrossedModule::point_module(&m).unwrap();
    let coeff = zero_xmod_c2();
    let data = RawActionData {
        epsilon: vec![vec![0, 0], vec![0, 1]],
        rho_top: vec![vec![0, 1]],
        rho_base: vec![vec![0, 1]],
    };
    let action = XModAction::validate(&base, &coeff, &data, DEFAULT_ENUM_BOUND).unwrap();
    let ext = semidirect_xmod(&action);
    let recovered = split_extension_to_action(&ext, DEFAULT_ENUM_BOUND).unwrap();
    let r = recovered.raw();
    assert_eq!(r.epsilon, data.epsilon);
    assert_eq!(r.rho_top, data.rho_top);
    assert_eq!(r.rho_base, data.rho_base);

    // direct product: trivial action recovered
    let zero = XModAction::zero(&base, &coeff, DEFAULT_ENUM_BOUND).unwrap();
    let ext = semidirect_xmod(&zero);
    let recovered = split_extension_to_action(&ext, DEFAULT_ENUM_BOUND).unwrap();
    assert!(recovered.is_zero());
}

#[test]
fn conjugation_split_extension_recovers_inversion() {
    // S3 = A3 x| <transposition> at the base level, with trivial tops:
    // the recovered rho inverts the 3-cycles
    let g = s3();
    let a3 = g.derived_subgroup();
    let w = CrossedModule::point_base(&g);
    let sub = CrossedModule::point_base(&{
        let (a3g, _) = g.subgroup_as_group(&a3).unwrap();
        a3g
    });
    let c2 = FiniteGroup::cyclic(2);
    let quot = CrossedModule::point_base(&c2);
    let one = FiniteGroup::trivial();
    let (a3g, a3_elems) = g.subgroup_as_group(&a3).unwrap();
    let _ = a3g;
    let incl = crate::xmod::XModMorphism::new(
        sub.clone(),
        w.clone(),
        GroupHom::zero(&one, &one),
        GroupHom::new(sub.base().clone(), g.clone(), a3_elems).unwrap(),
    )
    .unwrap();
    let sign = GroupHom::from_generator_images(g.clone(), c2.clone(), &[(1, 0), (2, 1)]).unwrap();
    let proj =
        crate::xmod::XModMorphism::new(w.clone(), quot.clone(), GroupHom::zero(&one, &one), sign)
            .unwrap();
    let transposition = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
    let section = crate::xmod::XModMorphism::new(
        quot.clone(),
        w.clone(),
        GroupHom::zero(&one, &one),
        GroupHom::new(c2.clone(), g.clone(), vec![0, transposition]).unwrap(),
    )
    .unwrap();
    let ext = XModSplitExtension::new(incl, proj, section).unwrap();
    let action = split_extension_to_action(&ext, DEFAULT_ENUM_BOUND).unwrap();
    // rho(1) on the base A3 = Z/3 is inversion
    assert_eq!(action.rho_base(1, 1), 2);
    assert_eq!(action.rho_base(1, 2), 1);
}

#[test]
fn module_check_accepts_and_rejects() {
    // abelian coefficient with the zero action: a module
    let base = CrossedModule::conjugation(&FiniteGroup::cyclic(4));
    let coeff = CrossedModule::conjugation(&FiniteGroup::cyclic(2));
    let data = RawActionData::zero(&base, &coeff);
    let routes = module_check_routes(&base, &coeff, &data, DEFAULT_ENUM_BOUND);
    assert!(routes.agree() && routes.all_accept());
    assert!(module_check(&base, &coeff, &data, DEFAULT_ENUM_BOUND).is_ok());

    // nonabelian coefficient: rejected by all three routes
    let bad = CrossedModule::conjugation(&s3());
    let data = RawActionData::zero(&base, &bad);
    let routes = module_check_routes(&base, &bad, &data, DEFAULT_ENUM_BOUND);
    assert!(routes.agree() && !routes.all_accept());
    assert!(module_check(&base, &bad, &data, DEFAULT_ENUM_BOUND).is_err());

    // garbage epsilon: also rejected everywhere
    let mut data = RawActionData::zero(&base, &coeff);
    data.epsilon[1] = vec![1, 0]; // eps(identity-of-T slot stays zero; this breaks the hom law
    let routes = module_check_routes(&base, &coeff, &data, DEFAULT_ENUM_BOUND);
    assert!(routes.agree());
}

#[test]
fn module_hom_check_examples() {
    let m = FiniteGroup::cyclic(2);
    let base = CrossedModule::point_module(&m).unwrap();
    let coeff = zero_xmod_c2();
    let data = RawActionData::zero(&base, &coeff);
    let module = module_check(&base, &coeff, &data, DEFAULT_ENUM_BOUND).unwrap();

    // identity pair
    let id = GroupHom::identity(coeff.top());
    assert!(module_hom_check(&module, &module, &id, &GroupHom::identity(coeff.base())).is_ok());

    // zero maps between modules with zero actions
    let zero_r = GroupHom::zero(coeff.top(), coeff.top());
    let zero_s = GroupHom::zero(coeff.base(), coeff.base());
    assert!(module_hom_check(&module, &module, &zero_r, &zero_s).is_ok());

    // breaking delta' r = s delta: coeff' with delta = id
    let c2 = FiniteGroup::cyclic(2);
    let coeff_id = CrossedModule::conjugation(&c2);
    let module_id = module_check(
        &base,
        &coeff_id,
        &RawActionData::zero(&base, &coeff_id),
        DEFAULT_ENUM_BOUND,
    )
    .unwrap();
    // r = id: delta' r (a) = a, s delta (a) = s(0) = 0: fails at a = 1
    let err = module_hom_check(&module, &module_id, &id, &zero_s);
    assert!(matches!(
        err,
        Err(crate::error::Error::NotAModuleMorphism(_))
    ));
}

#[test]
fn nonzero_epsilon_module_over_point() {
    // (Z/2, Z/2, 0) is a (Z/2, 1, 0)-module with eps an isomorphism onto
    // its Whitehead group
    let m = FiniteGroup::cyclic(2);
    let base = CrossedModule::point_module(&m).unwrap();
    let coeff = zero_xmod_c2();
    let data = RawActionData {
        epsilon: vec![vec![0, 0], vec![0, 1]],
        rho_top: vec![vec![0, 1]],
        rho_base: vec![vec![0, 1]],
    };
    let routes = module_check_routes(&base, &coeff, &data, DEFAULT_ENUM_BOUND);
    assert!(routes.agree() && routes.all_accept());
}
