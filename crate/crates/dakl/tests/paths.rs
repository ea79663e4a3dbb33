mod common;

use std::collections::BTreeSet;

use dakl::affine::{AffineRoot, DaRoot};
use dakl::paths::{
    chain_to_path, folding_time, iwahori_paths, iwahori_spherical_paths, km_folding_check, km_form_a, km_form_b, spherical_paths,
    TimeConstraint,
};
use dakl::{CartanData, Coweight, LaurentPoly, RootSystem, Window, Q};

use common::candidates;

fn sl2() -> RootSystem {
    RootSystem::a1()
}

fn shape(rs: &RootSystem) -> Coweight {
    rs.lambda0().add(&rs.delta())
}

fn da(rs: &RootSystem, i: usize, d: i64, n: i64) -> DaRoot {
    DaRoot::new(rs.simple_root(i).add(&AffineRoot::new(vec![0; rs.rank()], d)), n)
}

#[test]
fn folding_time_after_s0_is_one_half() {
    let rs = sl2();
    let y = rs.da_reflection(&da(&rs, 0, 0, 0));
    let t = folding_time(&rs, &y, &da(&rs, 1, 0, 1), &shape(&rs));
    assert_eq!(t, TimeConstraint::Fixed(Q::new(1, 2)));
}

#[test]
fn folding_time_is_unconstrained_for_a_path_invisible_step() {
    let rs = sl2();
    let y = rs.da_reflection(&da(&rs, 1, 1, 0));
    let t = folding_time(&rs, &y, &da(&rs, 1, 2, 0), &shape(&rs));
    assert_eq!(t, TimeConstraint::Unconstrained);
}

#[test]
fn folding_time_is_infeasible_when_the_pairing_vanishes_but_the_level_does_not() {
    let rs = sl2();
    // ⟨α₁, 2Λ₀⟩ = 0 while the chain root sits at level 1.
    let lam = rs.lambda0().scale(Q::from(2));
    let t = folding_time(&rs, &rs.wp_identity(), &da(&rs, 1, 0, 1), &lam);
    assert_eq!(t, TimeConstraint::Infeasible);
}

#[test]
fn sl2_spherical_paths() {
    let rs = sl2();
    let ps = spherical_paths(&rs, &shape(&rs), &rs.lambda0(), Window::default()).unwrap();
    assert_eq!(ps.chains.len(), 6);
    assert_eq!(ps.paths.len(), 2);
    let half = Q::new(1, 2);
    let mut seen = BTreeSet::new();
    for p in &ps.paths {
        assert_eq!(p.times, vec![Q::from(0), half]);
        let dirs: Vec<String> = p.dirs.iter().map(|x| rs.fmt_elt(x, false)).collect();
        let factors: Vec<String> = p.factors.iter().map(|f| f.to_string()).collect();
        seen.insert((dirs, factors));
    }
    let want = BTreeSet::from([
        (
            vec!["s₀".to_string(), "π^{α₁}s₁s₀".to_string()],
            vec!["q".to_string(), "q - 1".to_string()],
        ),
        (
            vec!["s₁s₀".to_string(), "π^{-α₁}s₀".to_string()],
            vec!["q^2".to_string(), "q - 1".to_string()],
        ),
    ]);
    assert_eq!(seen, want);
    assert_eq!(ps.total(), LaurentPoly::from_terms([(3, 1), (1, -1)]));
    assert!(ps.discarded.is_empty());
}

#[test]
fn sl2_chain_to_path_assignment() {
    let rs = sl2();
    let ps = spherical_paths(&rs, &shape(&rs), &rs.lambda0(), Window::default()).unwrap();
    let mut sizes: Vec<usize> = ps.paths.iter().map(|p| p.sources.len()).collect();
    sizes.sort();
    // Chains through π^{Λ₀+α₁}s₀ and π^{Λ₀}s₁s₀ give the first path; the rest give the second.
    assert_eq!(sizes, vec![2, 4]);
    let s0 = ps.paths.iter().find(|p| rs.fmt_elt(&p.dirs[0], false) == "s₀").unwrap();
    let roots: BTreeSet<String> = s0.sources.iter().map(|&c| rs.fmt_da_root(&ps.chains[c].roots[1], false)).collect();
    assert_eq!(roots, BTreeSet::from(["α₁[1]".to_string()]));
}

#[test]
fn merged_chains_differ_by_segment_stabilizers() {
    let rs = sl2();
    let lam = shape(&rs);
    let ps = spherical_paths(&rs, &lam, &rs.lambda0(), Window::default()).unwrap();
    for p in &ps.paths {
        for &c in &p.sources {
            let cp = chain_to_path(&rs, &ps.chains[c], &lam, Window::default()).unwrap();
            assert_eq!(cp.times, p.times);
            for k in 0..p.dirs.len() {
                let a = p.times[k];
                let b = p.times.get(k + 1).copied().unwrap_or_else(|| Q::from(1));
                let g = rs.wp_mul(&rs.wp_inv(&p.dirs[k]), &cp.raw[k]);
                for t in [a, b] {
                    let x = lam.scale(t);
                    assert_eq!(rs.wp_act_point(&g, &x), x);
                }
            }
        }
    }
}

#[test]
fn straight_path_for_equal_shape_and_endpoint() {
    let rs = sl2();
    let lam = shape(&rs);
    let ps = spherical_paths(&rs, &lam, &lam, Window::default()).unwrap();
    assert_eq!(ps.paths.len(), 1);
    assert_eq!(ps.paths[0].dirs, vec![rs.wp_identity()]);
    assert_eq!(ps.total(), LaurentPoly::one());
}

#[test]
fn endpoint_beyond_the_length_bound_has_no_paths() {
    let rs = sl2();
    let lam = shape(&rs);
    let nu = lam.sub(&rs.alpha(1).scale(Q::from(3)));
    let ps = spherical_paths(&rs, &lam, &nu, Window::default()).unwrap();
    assert!(ps.paths.is_empty());
}

#[test]
fn iwahori_spherical_index_set_matches_spherical_for_dominant_shape() {
    let rs = sl2();
    let lam = shape(&rs);
    let a = spherical_paths(&rs, &lam, &rs.lambda0(), Window::default()).unwrap();
    let b = iwahori_spherical_paths(&rs, &lam, &rs.lambda0(), Window::default()).unwrap();
    let key = |p: &dakl::paths::HeckePath| (p.times.clone(), p.dirs.clone());
    assert_eq!(
        a.paths.iter().map(key).collect::<Vec<_>>(),
        b.paths.iter().map(key).collect::<Vec<_>>()
    );
    assert_ne!(a.total(), b.total());
}

#[test]
fn iwahori_paths_of_an_element_with_itself() {
    let rs = sl2();
    for word in [&[][..], &[0], &[1, 0]] {
        let x = rs.element(&rs.lambda0(), word);
        let ps = iwahori_paths(&rs, &x, &x, Window::default()).unwrap();
        assert_eq!(ps.paths.len(), 1);
        assert_eq!(ps.total(), LaurentPoly::one());
    }
}

#[test]
fn iwahori_paths_are_a_subset_of_iwahori_spherical_paths() {
    let rs = sl2();
    let l0 = rs.lambda0();
    let w = Window::default();
    for (mu, word) in [(shape(&rs), vec![0usize]), (l0.add(&rs.alpha(1)), vec![0])] {
        let x = rs.element(&mu, &word);
        let sph = iwahori_spherical_paths(&rs, &mu, &l0, w).unwrap();
        for v in [&[][..], &[0], &[1], &[1, 0]] {
            let y = rs.element(&l0, v);
            let iw = iwahori_paths(&rs, &x, &y, w).unwrap();
            for p in &iw.paths {
                assert!(sph.paths.iter().any(|q| q.times == p.times && q.dirs == p.dirs));
            }
        }
    }
}

#[test]
fn path_lists_are_deterministic() {
    let rs = sl2();
    let a = spherical_paths(&rs, &shape(&rs), &rs.lambda0(), Window::default()).unwrap();
    let b = spherical_paths(&rs, &shape(&rs), &rs.lambda0(), Window::default()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(&rs, true), b.to_json(&rs, true));
}

#[test]
fn emitted_paths_satisfy_the_length_bound() {
    let rs = sl2();
    let lam = shape(&rs);
    for nu in [rs.lambda0(), rs.lambda0().add(&rs.alpha(1)), rs.lambda0().sub(&rs.alpha(1))] {
        let ps = spherical_paths(&rs, &lam, &nu, Window::default()).unwrap();
        let bound = rs.two_rho_pair(&lam.sub(&nu));
        for p in &ps.paths {
            let last = rs.wp_mul(p.dirs.last().unwrap(), &rs.translation(&lam));
            assert!(Q::from(rs.weyl_length(&last.w) as i64) <= bound);
            assert_eq!(rs.wp_act_point(p.dirs.last().unwrap(), &lam), nu);
        }
    }
}

#[test]
fn km_straight_path_is_admissible() {
    let rs = sl2();
    let lam = shape(&rs);
    assert!(km_folding_check(&rs, &[Q::from(0)], &[rs.wp_identity()], &lam, Window::default()).unwrap());
}

#[test]
fn km_fold_in_the_wrong_direction_is_rejected() {
    let rs = sl2();
    let lam = rs.lambda0().scale(Q::from(2)).add(&rs.alpha(1));
    assert!(rs.is_dominant(&lam));
    let t = Q::new(1, 2);
    let w = Window::default();
    let e = rs.wp_identity();
    let s1 = rs.vectorial(&rs.weyl_word(&[1]));
    // From ξ₀ = λ every positive root pairs nonnegatively, so s₁λ is unreachable.
    assert!(!km_form_a(&rs, &s1, &e, t, &lam, w).unwrap());
    assert!(!km_form_b(&rs, &s1, &e, t, &lam, w).unwrap());
    assert!(km_form_a(&rs, &e, &s1, t, &lam, w).unwrap());
    assert!(!km_folding_check(&rs, &[Q::from(0), t], &[s1, e], &lam, w).unwrap());
}

#[test]
fn km_forms_agree_on_random_candidates() {
    use proptest::prelude::*;
    use proptest::test_runner::{Config, TestRunner};
    let rs = RootSystem::new(CartanData::of_type("A", 2).unwrap());
    let w = Window::default();
    let l0 = rs.lambda0();
    let lams = [l0.add(&rs.delta()), l0.scale(Q::from(2)), l0.scale(Q::from(2)).add(&rs.alpha(1)).add(&rs.alpha(2))];
    assert!(lams.iter().all(|l| rs.is_dominant(l)));
    let mut runner = TestRunner::new(Config {
        cases: 100,
        ..Config::default()
    });
    let strat = (
        0..lams.len(),
        1i64..6,
        2i64..7,
        proptest::collection::vec(0usize..3, 0..4),
        proptest::collection::vec(0usize..3, 0..3),
    );
    runner
        .run(&strat, |(li, num, den, a, b)| {
            let lam = &lams[li];
            let t = Q::new(num.min(den - 1), den);
            let wp = rs.vectorial(&rs.weyl_word(&a));
            let wn = rs.wp_mul(&wp, &rs.vectorial(&rs.weyl_word(&b)));
            let x = km_form_a(&rs, &wp, &wn, t, lam, w).unwrap();
            let y = km_form_b(&rs, &wp, &wn, t, lam, w).unwrap();
            prop_assert_eq!(x, y);
            Ok(())
        })
        .unwrap();
}

#[test]
fn km_forms_agree_on_handcrafted_candidates() {
    let rs = sl2();
    let l0 = rs.lambda0();
    let words: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0]];
    let cs = candidates(&rs, &words, &[l0.add(&rs.delta()), l0.scale(Q::from(2))], &[Q::new(1, 2), Q::new(1, 3)]);
    assert!(cs.len() >= 10);
    let w = Window::default();
    for (lam, t, wp, wn) in cs {
        assert_eq!(
            km_form_a(&rs, &wp, &wn, t, &lam, w).unwrap(),
            km_form_b(&rs, &wp, &wn, t, &lam, w).unwrap()
        );
    }
}
