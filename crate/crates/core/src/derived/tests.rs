use super::*;
use crate::act::RawActionData;
use crate::group::GroupAction;
use crate::testutil::{klein4, q8, s3};
use crate::DEFAULT_ENUM_BOUND;

/// (2Z/4, 1, 0) >-> (Z/4, 1, 0) -» (Z/2, 1, 0)
pub(crate) fn ext_z4() -> XModExtension {
    let c4 = FiniteGroup::cyclic(4);
    let c2 = FiniteGroup::cyclic(2);
    let total = CrossedModule::point_module(&c4).unwrap();
    let f = GroupHom::from_generator_images(c4, c2.clone(), &[(1, 1)]).unwrap();
    XModExtension::from_surjection(&total, &c2, f).unwrap()
}

/// (A3, S3, incl) >-> (S3, S3, id) -» (Z/2, 1, 0)
pub(crate) fn ext_s3() -> XModExtension {
    let g = s3();
    let c2 = FiniteGroup::cyclic(2);
    let total = CrossedModule::conjugation(&g);
    let sign = GroupHom::from_generator_images(g, c2.clone(), &[(1, 0), (2, 1)]).unwrap();
    XModExtension::from_surjection(&total, &c2, sign).unwrap()
}

/// (Z(Q8), Q8, incl) >-> (Q8, Q8, id) -» (K4, 1, 0): the finite instance
/// where u fails to be injective.
pub(crate) fn ext_q8() -> XModExtension {
    let g = q8();
    let total = CrossedModule::conjugation(&g);
    let center = g.derived_subgroup(); // = center = {1, -1} for Q8
    let (quot, proj) = g.quotient(&center).unwrap();
    assert_eq!(quot.order(), 4);
    let m = klein4();
    // match the abstract quotient with the Klein four-group
    let iso = crate::group::first_isomorphism_with(&quot, &m, |_| true).unwrap();
    let f = proj.then(&iso);
    XModExtension::from_surjection(&total, &m, f).unwrap()
}

/// (Z/2-part, -, -) of (Z/4, Z/2, 0, inversion) -» (Z/2, 1, 0): nontrivial
/// eps' and eps''.
pub(crate) fn ext_inversion() -> XModExtension {
    let c4 = FiniteGroup::cyclic(4);
    let c2 = FiniteGroup::cyclic(2);
    let inversion = GroupAction::from_automorphisms(
        c2.clone(),
        c4.clone(),
        &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
    )
    .unwrap();
    let total =
        CrossedModule::new(c4.clone(), c2.clone(), GroupHom::zero(&c4, &c2), inversion).unwrap();
    let f = GroupHom::from_generator_images(c4, c2.clone(), &[(1, 1)]).unwrap();
    XModExtension::from_surjection(&total, &c2, f).unwrap()
}

/// degenerate: N = 1, f an isomorphism onto the Klein four-group
pub(crate) fn ext_identity_k4() -> XModExtension {
    let m = klein4();
    let total = CrossedModule::point_module(&m).unwrap();
    XModExtension::from_surjection(&total, &m, GroupHom::identity(&m)).unwrap()
}

/// degenerate: M = 1, N = T = S3
pub(crate) fn ext_to_point() -> XModExtension {
    let g = s3();
    let total = CrossedModule::conjugation(&g);
    let one = FiniteGroup::trivial();
    XModExtension::from_surjection(&total, &one, GroupHom::zero(&g, &one)).unwrap()
}

pub(crate) fn catalog() -> Vec<XModExtension> {
    vec![
        ext_z4(),
        ext_s3(),
        ext_q8(),
        ext_inversion(),
        ext_identity_k4(),
        ext_to_point(),
    ]
}

#[test]
fn extension_construction_and_rejection() {
    let e = ext_z4();
    assert_eq!(e.kernel().top().order(), 2);
    assert_eq!(e.quotient().top().order(), 2);

    // a non-surjective f is rejected
    let c4 = FiniteGroup::cyclic(4);
    let total = CrossedModule::point_module(&c4).unwrap();
    let err = XModExtension::from_surjection(&total, &c4, GroupHom::zero(&c4, &c4));
    assert!(matches!(err, Err(Error::NotSurjective { .. })));

    // f that does not kill the action is rejected: identity on Z/4 under
    // the inversion crossed module
    let inv = crate::testutil::inversion_xmod();
    let err = XModExtension::from_surjection(&inv, inv.top(), GroupHom::identity(inv.top()));
    assert!(err.is_err());
}

#[test]
fn j_subgroup_examples() {
    // all commutators trivial: J = 1
    assert_eq!(ext_z4().j_subgroup(), vec![0]);
    // S3: J = [G,N][T,T] = A3
    assert_eq!(ext_s3().j_subgroup().len(), 3);
    // Q8: J = [T,T] = center
    assert_eq!(ext_q8().j_subgroup().len(), 2);
    // inversion example: displacements of N = {0,2} vanish, [T,T] = 0
    assert_eq!(ext_inversion().j_subgroup(), vec![0]);
}

#[test]
fn abelianize_z4_instance() {
    let ab = abelianize_over_point(&ext_z4(), DEFAULT_ENUM_BOUND);
    assert_eq!(ab.module.coeff().top().order(), 4);
    assert_eq!(ab.module.coeff().base().order(), 1);
    assert!(ab.module.action().is_zero());
}

#[test]
fn abelianize_s3_instance() {
    // (S3, S3, id) over (Z/2, 1, 0): J = A3, result (Z/2, Z/2, id)
    let ab = abelianize_over_point(&ext_s3(), DEFAULT_ENUM_BOUND);
    assert_eq!(ab.module.coeff().top().order(), 2);
    assert_eq!(ab.module.coeff().base().order(), 2);
    assert!(ab.module.coeff().mu().is_bijective());
    // conjugation dies in the quotient: eps' = 0 here
    assert!(ab.module.action().is_zero());
}

#[test]
fn abelianize_inversion_has_nonzero_eps() {
    // (Z/4, Z/2, 0, inversion) over (Z/2,1,0): J = 1,
    // eps'(1)[1] = [1] - [-1] = 2 in Z/4
    let ab = abelianize_over_point(&ext_inversion(), DEFAULT_ENUM_BOUND);
    assert_eq!(ab.module.coeff().top().order(), 4);
    assert_eq!(ab.module.coeff().base().order(), 2);
    assert!(!ab.module.action().is_zero());
    assert_eq!(ab.module.action().eps(1, 1), 2);
    // but the coefficient crossed module itself carries the trivial action
    assert!(ab.module.coeff().is_abelian());
}

#[test]
fn kernel_abelianization_eps_double_prime() {
    // inversion example: eps''(1)[1] = [t ^g t^-1] = [1 - (-1)] = [2],
    // the nontrivial class of N/[G,N] = Z/2
    let e = ext_inversion();
    let (_, proj_base, _) = e.total().base().abelianization();
    let kab = kernel_abelianization(&e, &proj_base, DEFAULT_ENUM_BOUND);
    assert_eq!(kab.module.coeff().top().order(), 2);
    assert!(!kab.module.action().is_zero());
    assert_eq!(kab.module.action().eps(1, 1), 1);
}

#[test]
fn three_term_z4_fully_exact() {
    let s = three_term(&ext_z4(), DEFAULT_ENUM_BOUND);
    let r = exactness_report(&s);
    assert!(r.right_surjective && r.middle_exact && r.u_injective);
}

#[test]
fn three_term_degenerate_cases() {
    // N = 1: left trivial, u zero, f_bar an isomorphism onto M
    let s = three_term(&ext_identity_k4(), DEFAULT_ENUM_BOUND);
    assert_eq!(s.left.coeff().top().order(), 1);
    assert!(s.f_bar.r.is_bijective());
    let r = exactness_report(&s);
    assert!(r.right_surjective && r.middle_exact && r.u_injective);

    // M = 1: right trivial
    let s = three_term(&ext_to_point(), DEFAULT_ENUM_BOUND);
    assert_eq!(s.right.coeff().top().order(), 1);
    let r = exactness_report(&s);
    assert!(r.right_surjective && r.middle_exact);
}

#[test]
fn three_term_q8_u_not_injective() {
    // the finite witness: -1 lies in [T,T] but not in [G,N] = 1
    let s = three_term(&ext_q8(), DEFAULT_ENUM_BOUND);
    assert_eq!(s.left.coeff().top().order(), 2);
    let r = exactness_report(&s);
    assert!(r.right_surjective);
    assert!(r.middle_exact);
    assert!(!r.u_injective);
}

#[test]
fn three_term_exactness_across_catalog() {
    for (i, e) in catalog().iter().enumerate() {
        let s = three_term(e, DEFAULT_ENUM_BOUND);
        let r = exactness_report(&s);
        assert!(r.right_surjective, "catalog item {i}");
        assert!(r.middle_exact, "catalog item {i}");
    }
}

#[test]
fn commutator_action_instances() {
    // N = 1: trivial action on G_ab
    let c = commutator_action_on_quotient(&ext_identity_k4(), DEFAULT_ENUM_BOUND);
    assert!(c.action.is_trivial());

    // the S3 instance: conjugation kills everything in the quotient here
    let c = commutator_action_on_quotient(&ext_s3(), DEFAULT_ENUM_BOUND);
    assert_eq!(c.ab_cat1.group().order(), c.product_cat1.group().order());

    // the inversion instance has a genuinely nontrivial action
    let c = commutator_action_on_quotient(&ext_inversion(), DEFAULT_ENUM_BOUND);
    assert!(!c.action.is_trivial());
}

#[test]
fn derivation_pairs_z4_instance() {
    // A = B = Z/2, delta = 0, eps = 0, base (Z/4, 1, 0) over M = Z/2:
    // D2 trivial, D1 ranges over Hom(Z/4, Z/2): two pairs
    let e = ext_z4();
    let coeff = crate::testutil::zero_xmod_c2();
    let module = module_check(
        e.quotient(),
        &coeff,
        &RawActionData::zero(e.quotient(), &coeff),
        DEFAULT_ENUM_BOUND,
    )
    .unwrap();
    let pairs = derivation_pairs(&e, &module);
    assert_eq!(pairs.len(), 2);

    // with delta = id instead, D2 mu = delta D1 forces D1 = 0: one pair
    let c2 = FiniteGroup::cyclic(2);
    let coeff_id = CrossedModule::conjugation(&c2);
    let module_id = module_check(
        e.quotient(),
        &coeff_id,
        &RawActionData::zero(e.quotient(), &coeff_id),
        DEFAULT_ENUM_BOUND,
    )
    .unwrap();
    assert_eq!(derivation_pairs(&e, &module_id).len(), 1);

    // trivial module: exactly the zero pair
    let one = FiniteGroup::trivial();
    let triv = CrossedModule::point_module(&one).unwrap();
    let module = module_check(
        e.quotient(),
        &triv,
        &RawActionData::zero(e.quotient(), &triv),
        DEFAULT_ENUM_BOUND,
    )
    .unwrap();
    assert_eq!(derivation_pairs(&e, &module).len(), 1);
}

#[test]
fn derivation_pairs_with_nonzero_eps() {
    // over the inversion extension with coefficient (Z/2, Z/2, 0) and eps
    // an isomorphism: the condition forces D2 = 0, leaving two pairs
    let e = ext_inversion();
    let c2 = FiniteGroup::cyclic(2);
    let coeff = CrossedModule::with_trivial_action(&c2, &c2, GroupHom::zero(&c2, &c2)).unwrap();
    let data = RawActionData {
        epsilon: vec![vec![0, 0], vec![0, 1]],
        rho_top: vec![vec![0, 1]],
        rho_base: vec![vec![0, 1]],
    };
    let module = module_check(e.quotient(), &coeff, &data, DEFAULT_ENUM_BOUND).unwrap();
    let pairs = derivation_pairs(&e, &module);
    assert_eq!(pairs.len(), 2);
    assert!(pairs.iter().all(|p| p.d2.image() == vec![0]));
}

#[test]
fn derivation_bijection_on_catalog_modules() {
    let e = ext_z4();
    let coeff = crate::testutil::zero_xmod_c2();
    let module = module_check(
        e.quotient(),
        &coeff,
        &RawActionData::zero(e.quotient(), &coeff),
        DEFAULT_ENUM_BOUND,
    )
    .unwrap();
    let b = derivation_bijection(&e, &module, DEFAULT_ENUM_BOUND);
    assert_eq!(b.pairs.len(), 2);
    assert_eq!(b.homs.len(), 2);
}

#[test]
fn naturality_squares_commute() {
    // negation on Z/4 is an automorphism of the inversion extension
    let e = ext_inversion();
    let s = three_term(&e, DEFAULT_ENUM_BOUND);
    let t = e.total().top();
    let neg = GroupHom::new(t.clone(), t.clone(), vec![0, 3, 2, 1]).unwrap();
    // induced maps on the three terms
    let left_map = {
        let n = e.kernel().top();
        // negation restricted to N = {0, 2} is the identity there
        let images: Vec<usize> = n.elements().collect();
        GroupHom::new(n.clone(), n.clone(), images).unwrap()
    };
    let mid_map = neg
        .induce_on_quotients(&s.abelianization.proj_top, &s.abelianization.proj_top)
        .unwrap();
    // f_bar . mid_map = m_map . f_bar with m_map = id on M = Z/2
    for c in s.mid.coeff().top().elements() {
        assert_eq!(s.f_bar.r.apply(mid_map.apply(c)), s.f_bar.r.apply(c));
    }
    // u . left_ab = mid_map . u: the induced map on N/[G,N] is the identity
    let left_ab = left_map
        .induce_on_quotients(&s.kernel_ab.proj_kernel, &s.kernel_ab.proj_kernel)
        .unwrap();
    for c in s.left.coeff().top().elements() {
        assert_eq!(s.u.r.apply(left_ab.apply(c)), mid_map.apply(s.u.r.apply(c)));
    }
}

#[test]
fn naturality_collapse_morphism() {
    // (Z/4 -» Z/2) maps, over the quotient collapse Z/2 -> 1, to the
    // full extension (Z/4 -» 1) with the identity on T; the induced maps
    // on the middle terms commute with f_bar
    let e1 = ext_z4();
    let one = FiniteGroup::trivial();
    let c4 = FiniteGroup::cyclic(4);
    let total = CrossedModule::point_module(&c4).unwrap();
    let e2 = XModExtension::from_surjection(&total, &one, GroupHom::zero(&c4, &one)).unwrap();
    let s1 = three_term(&e1, DEFAULT_ENUM_BOUND);
    let s2 = three_term(&e2, DEFAULT_ENUM_BOUND);
    // induced middle map: identity on T descends (J1 = J2 = 1 here)
    let mid_map = GroupHom::identity(&c4)
        .induce_on_quotients(&s1.abelianization.proj_top, &s2.abelianization.proj_top)
        .unwrap();
    let m_map = GroupHom::zero(e1.quotient().top(), e2.quotient().top());
    for cls in s1.mid.coeff().top().elements() {
        assert_eq!(
            s2.f_bar.r.apply(mid_map.apply(cls)),
            m_map.apply(s1.f_bar.r.apply(cls)),
            "right square commutes"
        );
    }
    // left square: N1 = {0,2} includes into N2 = Z/4
    let n1 = e1.kernel().top();
    let incl_images: Vec<usize> = n1.elements().map(|n| e1.incl().f().apply(n)).collect();
    let n_map = GroupHom::new(n1.clone(), e2.kernel().top().clone(), incl_images).unwrap();
    let left_map = n_map
        .induce_on_quotients(&s1.kernel_ab.proj_kernel, &s2.kernel_ab.proj_kernel)
        .unwrap();
    for cls in s1.left.coeff().top().elements() {
        assert_eq!(
            s2.u.r.apply(left_map.apply(cls)),
            mid_map.apply(s1.u.r.apply(cls)),
            "left square commutes"
        );
    }
}

#[test]
fn degenerate_kernel_inside_j() {
    // if N is contained in J then u = 0 and f_bar is injective on the image
    let e = ext_s3(); // N = A3 = J here
    let s = three_term(&e, DEFAULT_ENUM_BOUND);
    assert_eq!(s.left.coeff().top().order(), 1);
    assert!(s.u.r.image() == vec![0]);
    assert!(s.f_bar.r.is_injective());
}
