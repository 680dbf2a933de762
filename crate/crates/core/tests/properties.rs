mod common;

use bicanon::beauville::{beauville_invariants, bicanonical_report, fixed_point_elements, is_free, quotient_iso};
use bicanon::covers::{double_cover_invariants, validate_building_data, DoubleCoverInput};
use bicanon::fermat;
use bicanon::group::{orthogonal_complement, AbelianGroup, Automorphism, GroupElement};
use bicanon::linsys::{h0_fat_points, FatPointSystem, PointConfig};
use bicanon::picard::{is_negative_definite, Lattice};
use common::*;
use proptest::prelude::*;

fn group_strategy() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(2u32..=6, 1..=3).prop_map(|m| AbelianGroup::new(&m).unwrap())
}

fn coords(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-7i64..=7, n)
}

fn group_with_points(k: usize) -> impl Strategy<Value = (AbelianGroup, Vec<Vec<i64>>)> {
    group_strategy().prop_flat_map(move |g| {
        let n = g.rank();
        (Just(g), prop::collection::vec(coords(n), k))
    })
}

fn z2_automorphism() -> impl Strategy<Value = Automorphism> {
    (3usize..=4)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0i64..2, n), n))
        .prop_filter_map("not invertible", |rows| {
            Automorphism::from_images(&AbelianGroup::elementary_two(rows.len()), &rows).ok()
        })
}

proptest! {
    #[test]
    fn pairing_is_bilinear((g, v) in group_with_points(4)) {
        let (a, b) = (g.element(&v[0]).unwrap(), g.element(&v[1]).unwrap());
        let (c, d) = (g.character(&v[2]).unwrap(), g.character(&v[3]).unwrap());
        let e = g.exponent();
        prop_assert_eq!(g.pair(&c, &g.add(&a, &b)), (g.pair(&c, &a) + g.pair(&c, &b)) % e);
        prop_assert_eq!(g.pair(&g.add(&c, &d), &a), (g.pair(&c, &a) + g.pair(&d, &a)) % e);
    }

    #[test]
    fn orthogonal_complement_has_complementary_order((g, v) in group_with_points(2)) {
        let gens: Vec<GroupElement> = v.iter().map(|x| g.element(x).unwrap()).collect();
        let h = g.subgroup(gens).unwrap();
        let perp = orthogonal_complement(&h);
        prop_assert_eq!(h.order() * perp.order(), g.order());
        for chi in perp.elements() {
            for x in h.elements() {
                prop_assert_eq!(g.pair(chi, x), 0);
            }
        }
    }

    #[test]
    fn inverse_automorphism(psi in z2_automorphism()) {
        let inv = psi.inverse();
        let g = psi.group().clone();
        prop_assert_eq!(psi.compose(&inv), Automorphism::identity(&g));
        prop_assert_eq!(inv.compose(&psi), Automorphism::identity(&g));
        for x in g.elements() {
            let chi = g.character(&x.coords().iter().map(|&c| c as i64).collect::<Vec<_>>()).unwrap();
            for y in g.elements() {
                prop_assert_eq!(g.pair(&psi.pull_back(&chi), &y), g.pair(&chi, &psi.apply(&y).unwrap()));
            }
        }
    }

    #[test]
    fn freeness_is_symmetric(psi in z2_automorphism(), seed in 0u64..1000) {
        let g = psi.group().clone();
        let pick = |salt: u64| -> std::collections::BTreeSet<GroupElement> {
            g.elements().enumerate().filter(|(i, x)| !x.is_zero() && (seed >> ((*i as u64 + salt) % 13)) & 1 == 1).map(|(_, x)| x).collect()
        };
        let (f1, f2) = (pick(0), pick(5));
        let forward = is_free(&psi, &f1, &f2).unwrap().free;
        let backward = is_free(&psi.inverse(), &f2, &f1).unwrap().free;
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn kernel_independent_of_representative(psi in z2_automorphism()) {
        let g = psi.group().clone();
        let iso = quotient_iso(&psi);
        let gg = g.product(&g);
        let inv = psi.inverse();
        for chi in orthogonal_complement(&psi.graph_subgroup()).elements() {
            for h in g.elements() {
                let a = g.neg(&inv.apply(&h).unwrap());
                let via_first = AbelianGroup::join(&a, &g.zero());
                let via_second = iso.representative(&h);
                prop_assert_eq!(iso.map_joined(&via_first).unwrap(), h.clone());
                prop_assert_eq!(gg.pair(chi, &via_first), gg.pair(chi, &via_second));
                prop_assert_eq!(g.pair(&iso.induced_character(chi), &h), gg.pair(chi, &via_second));
            }
        }
    }

    #[test]
    fn intersection_is_bilinear_and_symmetric(n in 0usize..6, a in coords(6), b in coords(6), c in coords(6), k in -5i64..5) {
        let lat = Lattice::blowup(n);
        let cls = |v: &[i64]| lat.class(&v[..n + 1]).unwrap();
        let (x, y, z) = (cls(&a), cls(&b), cls(&c));
        prop_assert_eq!(x.dot(&y).unwrap(), y.dot(&x).unwrap());
        prop_assert_eq!((&x + &y).dot(&z).unwrap(), x.dot(&z).unwrap() + y.dot(&z).unwrap());
        prop_assert_eq!(x.scaled(k).dot(&z).unwrap(), k * x.dot(&z).unwrap());
    }

    #[test]
    fn blowup_has_one_positive_direction(n in 0usize..8) {
        let lat = Lattice::blowup(n);
        let negated: Vec<Vec<i64>> = lat.gram()[1..].iter().map(|r| r[1..].to_vec()).collect();
        prop_assert!(negated.is_empty() || is_negative_definite(&negated).unwrap());
        prop_assert_eq!(lat.gram()[0][0], 1);
    }

    #[test]
    fn linear_systems_are_monotone(d in 0u32..6, mults in prop::collection::vec(0u32..3, 6), i in 0usize..6) {
        let cfg = PointConfig::quadrilateral();
        let base = h0_fat_points(&cfg, &FatPointSystem::new(d, mults.clone())).unwrap();
        let mut more = mults.clone();
        more[i] += 1;
        prop_assert!(h0_fat_points(&cfg, &FatPointSystem::new(d, more)).unwrap() <= base);
        prop_assert!(h0_fat_points(&cfg, &FatPointSystem::new(d + 1, mults.clone())).unwrap() >= base);
        let sys = FatPointSystem::new(d, mults);
        prop_assert!(base as i64 >= sys.expected_dimension());
    }

    #[test]
    fn double_cover_irregularity(k2 in 1i64..10, m2 in -4i64..4, mk in -4i64..6, h0 in 0i64..6) {
        let input = DoubleCoverInput { chi_base: 1, pg_base: 0, k2_base: k2, m_squared: m2, m_dot_k: mk, h0_k_plus_m: h0 };
        if let Ok(inv) = double_cover_invariants(&input) {
            prop_assert_eq!(inv.q, inv.pg + 1 - inv.chi);
            prop_assert_eq!(inv.k2, 2 * (k2 + 2 * mk + m2));
        }
    }

    #[test]
    fn beauville_k2_is_eight_chi(g1 in 2i64..12, g2 in 2i64..12) {
        let inv = beauville_invariants(g1, g2, ((g1 - 1) * (g2 - 1)) as usize).unwrap();
        prop_assert_eq!(inv.k2, 8 * inv.chi);
    }
}

#[test]
fn generic_bound_is_strict_on_the_quadrilateral() {
    let sys = FatPointSystem::new(4, vec![2, 2, 2, 1, 2, 2]);
    let h0 = h0_fat_points(&PointConfig::quadrilateral(), &sys).unwrap();
    assert_eq!(sys.expected_dimension().max(0), 0);
    assert_eq!(h0, 1);
}

#[test]
fn eigentable_is_supported_on_gamma_perp() {
    for spec in [ex2(), ex3()] {
        let r = bicanonical_report(&spec).unwrap();
        let gg = spec.group.product(&spec.group);
        let perp = orthogonal_complement(&spec.psi.graph_subgroup());
        for chi in gg.characters() {
            assert_eq!(r.eigentable.dimension(&chi).is_ok(), perp.contains(&chi));
        }
        assert_eq!(r.eigentable.total(), 9);
    }
}

#[test]
fn ex3_fixed_sets() {
    let spec = ex3();
    let fix = fixed_point_elements(&spec.branch1);
    assert_eq!(fix.len(), 5);
    let g = &spec.group;
    let gamma0 = g.element(&[1, 1, 1, 1]).unwrap();
    assert_eq!(spec.psi.apply(&gamma0).unwrap(), g.element(&[1, 1, 0, 1]).unwrap());
    assert!(is_free(&spec.psi, &fix, &fix).unwrap().free);
}

#[test]
fn weights_separate_invariant_monomials() {
    let invariant = fermat::invariant_monomials();
    for m in fermat::all_bimonomials() {
        let all_zero = (0..5).all(|a| (0..5).all(|b| fermat::weight(a, b, &m) == 0));
        assert_eq!(all_zero, invariant.contains(&m), "{m}");
    }
}

#[test]
fn residual_differences_are_characters() {
    let g = fermat::fermat_group();
    let monos = fermat::invariant_monomials();
    for m in &monos {
        for n in &monos {
            let d = g.sub(&fermat::residual_character(m), &fermat::residual_character(n));
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(g.pair(&d, &g.add(&x, &y)), (g.pair(&d, &x) + g.pair(&d, &y)) % 5);
                }
            }
        }
    }
}

#[test]
fn random_valid_data_validates() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let g = AbelianGroup::elementary_two(3);
    let nonzero: Vec<GroupElement> = g.elements().filter(|x| !x.is_zero()).collect();
    let mut checked = 0;
    while checked < 50 {
        let mut pts: Vec<GroupElement> = (0..5).map(|_| nonzero[rng.gen_range(0..7)].clone()).collect();
        let last = pts.iter().fold(g.zero(), |acc, p| g.add(&acc, p));
        if last.is_zero() {
            continue;
        }
        pts.push(last);
        if g.subgroup(pts.clone()).unwrap().order() != 8 {
            continue;
        }
        let data = data_from_points(&g, &pts);
        assert!(validate_building_data(&data).passed());
        let bad = data.with_line_bundle(0, data.line_bundles()[0] + 1);
        assert!(!validate_building_data(&bad).passed());
        checked += 1;
    }
}
