use liekernel::domains::{GroupFamily, GroupModel};
use liekernel::kernel::{KernelEngine, KernelOptions, TimeParameter};
use liekernel::lattice::{self, RadialPoint};
use liekernel::linalg::{self, C64};
use liekernel::rootsys::{build_root_system, Family, RootSystem};
use liekernel::volumes;
use liekernel::weyl::{self, generate_weyl_group};
use proptest::prelude::*;
use std::f64::consts::PI;

fn system() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        Just((Family::A, 1)),
        Just((Family::A, 2)),
        Just((Family::B, 2)),
        Just((Family::C, 2)),
        Just((Family::A, 3)),
    ]
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// A point inside the alcove built from positive fundamental-weight weights.
fn interior(rs: &RootSystem, weights: &[f64]) -> Vec<f64> {
    let total: f64 = weights.iter().sum::<f64>() + 1.0;
    let mut phi = vec![0.0; rs.rank];
    for (w, fw) in weights.iter().zip(&rs.fundamental_weights) {
        linalg::axpy(&mut phi, 2.0 * PI * w / total, fw);
    }
    let hr = linalg::dot(&rs.highest_root, &phi);
    if hr >= 2.0 * PI {
        phi = linalg::scale(&phi, 1.9 * PI / hr);
    }
    phi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_weyl_invariant_and_periodic(
        (f, r) in system(),
        w in prop::collection::vec(0.15f64..1.0, 3),
        sigma_idx in 0usize..1000,
        m in prop::collection::vec(-2i64..=2, 3),
        tau in 0.2f64..1.5,
    ) {
        let rs = build_root_system(f, r).unwrap();
        let eng = KernelEngine::new(&rs).unwrap();
        let phi = interior(&rs, &w[..r]);
        let time = TimeParameter::Heat { tau };
        let opts = KernelOptions::default();
        let base = eng.compact_pathsum(&phi, &time, &opts).unwrap().value;
        let s = &eng.group.elements[sigma_idx % eng.group.order()];
        let moved = eng.compact_pathsum(&s.apply(&phi), &time, &opts).unwrap().value;
        prop_assert!(rel(moved, base) < 1e-9, "weyl {} vs {}", moved, base);
        let shift = eng.lattice.vector(&m[..r]);
        let shifted = linalg::add(&phi, &linalg::scale(&shift, 2.0 * PI));
        let per = eng.compact_pathsum(&shifted, &time, &opts).unwrap().value;
        prop_assert!(rel(per, base) < 1e-9, "period {} vs {}", per, base);
    }

    #[test]
    fn rho_square_identity((f, r) in prop_oneof![
        (1usize..=5).prop_map(|r| (Family::A, r)),
        (2usize..=4).prop_map(|r| (Family::B, r)),
        (2usize..=4).prop_map(|r| (Family::C, r)),
        (3usize..=5).prop_map(|r| (Family::D, r)),
    ], scale in 0.3f64..3.0) {
        let rs = build_root_system(f, r).unwrap().rescale(scale).unwrap();
        let want = rs.dim as f64 / 24.0;
        prop_assert!((rs.rho2() / rs.lambda - want).abs() < 1e-12);
    }

    #[test]
    fn volumes_factorize_and_rescale((f, r) in system(), scale in 0.3f64..3.0) {
        let rs = build_root_system(f, r).unwrap();
        let s = rs.rescale(scale).unwrap();
        let g = volumes::group_volume(&rs);
        prop_assert!((g - volumes::torus_volume(&rs) * volumes::coset_volume(&rs)).abs() < 1e-10 * g);
        prop_assert!((volumes::group_volume(&s) - g).abs() < 1e-10 * g);
    }

    #[test]
    fn canonical_point_is_orbit_invariant(
        (f, r) in system(),
        x in prop::collection::vec(-7.0f64..7.0, 3),
        sigma_idx in 0usize..1000,
        m in prop::collection::vec(-3i64..=3, 3),
    ) {
        let rs = build_root_system(f, r).unwrap();
        let group = generate_weyl_group(&rs).unwrap();
        let lat = lattice::winding_lattice(&rs);
        let phi = x[..r].to_vec();
        let c1 = lattice::canonicalize_alcove(&rs, &lat, &phi);
        let s = &group.elements[sigma_idx % group.order()];
        let moved = linalg::add(&s.apply(&phi), &linalg::scale(&lat.vector(&m[..r]), 2.0 * PI));
        let c2 = lattice::canonicalize_alcove(&rs, &lat, &moved);
        prop_assert!(linalg::max_abs_diff(&c1.point.values, &c2.point.values) < 1e-9, "{:?} vs {:?}", c1.point.values, c2.point.values);
        let again = lattice::canonicalize_alcove(&rs, &lat, &c1.point.values);
        prop_assert!(linalg::max_abs_diff(&again.point.values, &c1.point.values) < 1e-12);
    }

    #[test]
    fn dimension_matches_character_limit(l in prop::collection::vec(0i64..4, 2), which in 0usize..3) {
        let (f, r) = [(Family::A, 2), (Family::B, 2), (Family::C, 2)][which];
        let rs = build_root_system(f, r).unwrap();
        let group = generate_weyl_group(&rs).unwrap();
        let d = weyl::dimension(&rs, &l).unwrap() as f64;
        let chi0 = weyl::character(&rs, &group, &l, &vec![C64::new(0.0, 0.0); r], true).unwrap();
        prop_assert!((chi0.re - d).abs() < 1e-6 * d && chi0.im.abs() < 1e-6 * d);
    }

    #[test]
    fn su21_classification_round_trip(x in 0.05f64..3.0, y in 0.05f64..3.0, real_x in any::<bool>()) {
        let model = GroupModel::new(GroupFamily::SU { p: 2, q: 1 }).unwrap();
        let dom = if real_x { &model.domains[0] } else { &model.domains[1] };
        let pt = RadialPoint::new(vec![x, y], dom.signature.clone()).unwrap();
        let g = model.element_from_radial(dom, &pt, C64::new(1.0, 0.0)).unwrap();
        let cl = model.classify(&g).unwrap();
        prop_assert_eq!(&cl.domain.label, &dom.label);
        let want = lattice::canonicalize(&model.rs, &model.group, &dom.sublattice, &dom.frame, &pt).unwrap();
        prop_assert!(linalg::max_abs_diff(&cl.point.values, &want.point.values) < 1e-8,
            "{:?} vs {:?}", cl.point.values, want.point.values);
    }
}
