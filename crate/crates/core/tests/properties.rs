mod common;

use common::*;
use gentime::cohomology::{denumerant, h_proj_bundle, h_projective_space, h_toric_oracle, h_weighted};
use gentime::geometry::{hirzebruch_toric, torus_fixed_b3, Space};
use gentime::lattice::{DivisorClass, SurfaceLattice};
use gentime::sheaves::{ext_dims, twist_on, SheafDescriptor};
use gentime::tilting::{
    anticanonical_diagnostics, check_pullback, check_strong_exceptional, check_strongly_cyclic, compute_i0,
    euler_matrix, hom_matrix, AnalysisOptions,
};
use proptest::prelude::*;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 128, ..ProptestConfig::default() }
}

fn vec7() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-6i64..=6, 7)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn intersection_is_symmetric_and_bilinear(a in vec7(), b in vec7(), c in vec7(), k in -4i64..=4) {
        let lat = SurfaceLattice::blowup(6);
        let (a, b, c) = (DivisorClass(a), DivisorClass(b), DivisorClass(c));
        prop_assert_eq!(lat.intersect(&a, &b).unwrap(), lat.intersect(&b, &a).unwrap());
        let lhs = lat.intersect(&a.scale(k).unwrap().add(&b).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, k * lat.intersect(&a, &c).unwrap() + lat.intersect(&b, &c).unwrap());
        prop_assert_eq!(lat.intersect(&a, &b).unwrap(), blowup_dot(&a.0, &b.0));
    }

    #[test]
    fn riemann_roch_is_serre_symmetric(a in vec7()) {
        let lat = SurfaceLattice::blowup(6);
        let d = DivisorClass(a);
        let chi = lat.euler_char(&d).unwrap();
        prop_assert_eq!(chi, lat.euler_char(&lat.serre_dual(&d).unwrap()).unwrap());
        prop_assert_eq!(chi, rr_blowup(&d.0));
    }

    #[test]
    fn toric_oracle_obeys_serre_duality(m in 0u32..=6, a in -6i64..=6, b in -6i64..=6) {
        let model = hirzebruch_toric(m);
        let d = DivisorClass(vec![a, b]);
        let h = h_toric_oracle(&model.fan, &model.lift(&d)).unwrap();
        let dual = h_toric_oracle(&model.fan, &model.lift(&model.lattice.serre_dual(&d).unwrap())).unwrap();
        prop_assert_eq!(h.reversed(), dual);
        prop_assert_eq!(h.euler(), model.lattice.euler_char(&d).unwrap());
    }

    #[test]
    fn toric_oracle_ignores_the_lift(coeffs in proptest::collection::vec(-4i64..=4, 6), u in (-3i64..=3, -3i64..=3)) {
        let model = torus_fixed_b3();
        let principal = model.fan.principal([u.0, u.1]);
        let shifted: Vec<i64> = coeffs.iter().zip(&principal).map(|(a, p)| a + p).collect();
        prop_assert_eq!(h_toric_oracle(&model.fan, &coeffs).unwrap(), h_toric_oracle(&model.fan, &shifted).unwrap());
    }

    #[test]
    fn weighted_counts_match_enumeration(w in proptest::collection::vec(1u32..=5, 2..=4), k in -20i64..=20) {
        prop_assert_eq!(denumerant(&w, k), weighted_monomials(&w, k));
        let h = h_weighted(&w, k);
        let sum: i64 = w.iter().map(|&x| i64::from(x)).sum();
        prop_assert_eq!(h.get(w.len() - 1), weighted_monomials(&w, -k - sum));
    }

    #[test]
    fn projective_bundle_matches_pushforward(m in 0u32..=6, n in 1u32..=3, a in -1i64..=4, b in -12i64..=12) {
        let h = h_proj_bundle(m, n, a, b).unwrap();
        for i in 0..=n as usize {
            prop_assert_eq!(h.get(i) as i64, h_bundle_pushforward(i64::from(m), i64::from(n), a, b, i as i64));
        }
        prop_assert_eq!(h.get(n as usize + 1), 0);
        if a == 0 {
            let p = h_projective_space(n, b);
            prop_assert_eq!(&h.h[..=n as usize], &p.h[..]);
        }
        if m == 0 && a >= 0 {
            let p = h_projective_space(n, b);
            for i in 0..=n as usize {
                prop_assert_eq!(h.get(i), p.get(i) * (a as u64 + 1));
            }
        }
    }

    #[test]
    fn ext_is_twist_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_strong_exceptional(&mut r);
        let d = random_class(&mut r, c.space(), 3);
        let i = rand::Rng::gen_range(&mut r, 0..c.len());
        let j = rand::Rng::gen_range(&mut r, 0..c.len());
        let (a, b) = (&c.members()[i], &c.members()[j]);
        let ta = twist_on(c.space(), a, &d).unwrap();
        let tb = twist_on(c.space(), b, &d).unwrap();
        prop_assert_eq!(ext_dims(c.engine(), a, b).unwrap(), ext_dims(c.engine(), &ta, &tb).unwrap());
    }

    #[test]
    fn i0_is_invariant_under_reorder_and_twist(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_line_bundles(&mut r);
        let i0 = compute_i0(&c).unwrap();
        let perm = random_permutation(&mut r, c.len());
        prop_assert_eq!(compute_i0(&c.permuted(&perm).unwrap()).unwrap(), i0);
        let d = random_class(&mut r, c.space(), 4);
        prop_assert_eq!(compute_i0(&c.twisted(&d).unwrap()).unwrap(), i0);
    }

    #[test]
    fn strong_exceptionality_is_twist_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_line_bundles(&mut r);
        let d = random_class(&mut r, c.space(), 4);
        prop_assert_eq!(
            check_strong_exceptional(&c).unwrap().holds,
            check_strong_exceptional(&c.twisted(&d).unwrap()).unwrap().holds
        );
    }

    #[test]
    fn euler_matrix_matches_riemann_roch(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_line_bundles(&mut r);
        let e = euler_matrix(&c).unwrap();
        let classes: Vec<DivisorClass> = c.members().iter().map(|m| m.as_line_bundle().unwrap().clone()).collect();
        for (i, a) in classes.iter().enumerate() {
            for (j, b) in classes.iter().enumerate() {
                let d = b.sub(a).unwrap();
                let want = match c.space() {
                    Space::Blowup(_) => rr_blowup(&d.0),
                    Space::Toric(t) => t.lattice.euler_char(&d).unwrap(),
                    Space::ProjBundle(p) => (0..=p.n as i64)
                        .map(|k| (-1i64).pow(k as u32) * h_bundle_pushforward(i64::from(p.m), i64::from(p.n), d.0[0], d.0[1], k))
                        .sum(),
                    Space::Weighted(w) => {
                        let sum = w.weight_sum();
                        let top = weighted_monomials(w.weights(), -d.0[0] - sum) as i64;
                        weighted_monomials(w.weights(), d.0[0]) as i64 + if w.dim() % 2 == 0 { top } else { -top }
                    }
                };
                prop_assert_eq!(e[i][j], want);
            }
        }
    }

    #[test]
    fn strong_exceptional_hom_matrix_is_unitriangular(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = if rand::Rng::gen_bool(&mut r, 0.5) { random_strong_exceptional(&mut r) } else { random_line_bundles(&mut r) };
        if check_strong_exceptional(&c).unwrap().holds {
            let h = hom_matrix(&c).unwrap();
            for i in 0..h.len() {
                prop_assert_eq!(h[i][i], 1);
                for j in 0..i {
                    prop_assert_eq!(h[i][j], 0);
                }
            }
        }
    }

    #[test]
    fn pullback_implies_i0_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = if rand::Rng::gen_bool(&mut r, 0.5) { random_strong_exceptional(&mut r) } else { random_line_bundles(&mut r) };
        let v = check_pullback(&c, &AnalysisOptions { p_cap: 6, anticanonical_smooth_member: true }).unwrap();
        if v.is_true() {
            prop_assert_eq!(compute_i0(&c).unwrap(), 0, "{} {:?} {:?}", c.space().kind(), c.member_names(), v);
        }
    }

    #[test]
    fn i0_zero_strong_exceptional_is_strongly_cyclic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_strong_exceptional(&mut r);
        if compute_i0(&c).unwrap() == 0 && check_strong_exceptional(&c).unwrap().holds {
            prop_assert!(check_strongly_cyclic(&c).unwrap().holds);
        }
    }

    #[test]
    fn canonical_diagnostics_bound_i0(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_strong_exceptional(&mut r);
        let first = c.members()[0].as_line_bundle().cloned().unwrap_or_else(|| DivisorClass::zero(c.space().class_rank()));
        let c = c.twisted(&first.neg().unwrap()).unwrap();
        let i0 = compute_i0(&c).unwrap();
        let d = anticanonical_diagnostics(c.space()).unwrap();
        if c.is_line_bundles() && d.h_anticanonical.get(0) > 0 {
            prop_assert!(i0 < c.space().dim());
        }
        let top = (1..d.h_anticanonical.len()).filter(|&i| d.h_anticanonical.get(i) > 0).max().unwrap_or(0);
        prop_assert!(i0 >= top);
    }
}

#[test]
fn torsion_twists_shift_degree() {
    let s = gentime::geometry::general_blowup(2);
    let space = Space::Blowup(s);
    let e = SheafDescriptor::ExceptionalTwist { curve: 1, k: 3 };
    let d = DivisorClass(vec![2, 1, -4]);
    assert_eq!(twist_on(&space, &e, &d).unwrap(), SheafDescriptor::ExceptionalTwist { curve: 1, k: 7 });
}
