use std::collections::BTreeSet;

use proptest::prelude::*;

use dakl::affine::DaRoot;
use dakl::deodhar::Coxeter;
use dakl::order::{edge_is_up, reflection_root, Side};
use dakl::tangent::{Flavor, LocalSystem};
use dakl::{CartanData, Coweight, LaurentPoly, RootSystem, WPElt, Window, Q};

fn system(rank: usize) -> RootSystem {
    RootSystem::new(CartanData::of_type("A", rank).unwrap())
}

fn element(rs: &RootSystem, level: i64, fin: &[i64], delta: i64, word: &[usize]) -> WPElt {
    let fin: Vec<i64> = fin.iter().take(rs.rank()).copied().collect();
    let word: Vec<usize> = word.iter().map(|i| i % (rs.rank() + 1)).collect();
    rs.element(&Coweight::new(level, &fin, delta), &word)
}

fn root(rs: &RootSystem, idx: usize, neg: bool) -> DaRoot {
    let roots = rs.positive_da_roots(2, 2);
    let g = roots[idx % roots.len()].clone();
    if neg {
        g.neg()
    } else {
        g
    }
}

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-4i32..5, -3i64..4), 0..5).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflection_conjugation(rank in 1usize..3, level in 1i64..3, fin in proptest::collection::vec(-2i64..3, 2),
                              delta in -2i64..3, word in proptest::collection::vec(0usize..3, 0..4),
                              idx in 0usize..200, neg: bool) {
        let rs = system(rank);
        let x = element(&rs, level, &fin, delta, &word);
        let g = root(&rs, idx, neg);
        let lhs = rs.wp_mul(&rs.wp_mul(&x, &rs.da_reflection(&g)), &rs.wp_inv(&x));
        prop_assert_eq!(lhs, rs.da_reflection(&rs.wp_act_root(&x, &g)));
        prop_assert!(rs.wp_is_identity(&rs.wp_mul(&rs.da_reflection(&g), &rs.da_reflection(&g))));
    }

    #[test]
    fn positivity_partitions_the_roots(rank in 1usize..3, idx in 0usize..200, neg: bool) {
        let rs = system(rank);
        let g = root(&rs, idx, neg);
        prop_assert!(g.is_positive() != g.neg().is_positive());
    }

    #[test]
    fn reflection_root_inverts_reflection(rank in 1usize..3, idx in 0usize..200) {
        let rs = system(rank);
        let g = root(&rs, idx, false);
        prop_assert_eq!(reflection_root(&rs, &rs.da_reflection(&g)), Some(g));
    }

    #[test]
    fn dominantize_is_idempotent(rank in 1usize..3, level in 1i64..4, fin in proptest::collection::vec(-3i64..4, 2), delta in -2i64..3) {
        let rs = system(rank);
        let mu = Coweight::new(level, &fin[..rank], delta);
        let (plus, u) = rs.dominantize(&mu).unwrap();
        prop_assert!(rs.is_dominant(&plus));
        prop_assert_eq!(rs.weyl_act_coweight(&u, &plus), mu);
        let (again, v) = rs.dominantize(&plus).unwrap();
        prop_assert_eq!(again, plus);
        prop_assert!(rs.weyl_is_identity(&v));
    }

    #[test]
    fn left_and_right_edges_agree(rank in 1usize..3, level in 1i64..3, fin in proptest::collection::vec(-2i64..3, 2),
                                  delta in -2i64..3, word in proptest::collection::vec(0usize..3, 0..4), idx in 0usize..200) {
        let rs = system(rank);
        let x = element(&rs, level, &fin, delta, &word);
        let g = root(&rs, idx, false);
        // x s_γ = s_{x(γ)} x, and the right edge through γ is the left edge through x(γ).
        let right = rs.wp_mul(&x, &rs.da_reflection(&g));
        let xg = rs.wp_act_root(&x, &g);
        let left = rs.wp_mul(&rs.da_reflection(&xg), &x);
        prop_assert_eq!(&right, &left);
        let pos = if xg.is_positive() { xg.clone() } else { xg.neg() };
        prop_assert_eq!(edge_is_up(&rs, &x, &g, Side::Right), edge_is_up(&rs, &x, &pos, Side::Left));
    }

    #[test]
    fn length_goes_up_exactly_along_up_edges(level in 1i64..3, fin in -2i64..3, delta in -1i64..2,
                                             word in proptest::collection::vec(0usize..2, 0..4), idx in 0usize..200) {
        let rs = system(1);
        let x = element(&rs, level, &[fin], delta, &word);
        let g = root(&rs, idx, false);
        let y = rs.wp_mul(&rs.da_reflection(&g), &x);
        if let (Ok(lx), Ok(ly)) = (rs.length(&x), rs.length(&y)) {
            prop_assert_eq!(edge_is_up(&rs, &x, &g, Side::Left), ly > lx);
        }
    }

    #[test]
    fn local_realization_is_biconvex_and_faithful(num in 0i64..4, word in proptest::collection::vec(0usize..2, 0..3)) {
        let rs = system(1);
        let lam = rs.lambda0().add(&rs.delta());
        let p = lam.scale(Q::new(num, 4));
        let ls = LocalSystem::new(&rs, Flavor::DoubleAffine, &p, Window::default()).unwrap();
        // Inversions of short words can leave the default window, so collect them in a wider one.
        let w = Window::default().doubled().doubled();
        // An element of the local group: product of local simple reflections.
        let gens: Vec<WPElt> = ls.simples.iter().map(|g| ls.reflection(&rs, g)).collect();
        let x = word.iter().fold(rs.wp_identity(), |acc, &i| rs.wp_mul(&acc, &gens[i % gens.len()]));
        let real = ls.realize(&rs, &x).unwrap();
        prop_assert_eq!(ls.word_elt(&rs, &real.word), x.clone());
        let inv = ls.inversion_set(&rs, &x, w);
        prop_assert_eq!(inv.len(), real.word.len());
        // Biconvexity: closed under sums that stay positive roots of the window, and so is the complement.
        let pos: BTreeSet<DaRoot> = ls.positive_roots(&rs, w).into_iter().collect();
        for a in &pos {
            for b in &pos {
                let s = a.add(b);
                if pos.contains(&s) {
                    if inv.contains(a) && inv.contains(b) {
                        prop_assert!(inv.contains(&s));
                    }
                    if !inv.contains(a) && !inv.contains(b) {
                        prop_assert!(!inv.contains(&s));
                    }
                }
            }
        }
    }

    #[test]
    fn local_simples_have_nonpositive_pairings(num in 0i64..6, den in 1i64..5) {
        let rs = system(2);
        let lam = rs.lambda0().scale(Q::from(2)).add(&rs.alpha(1)).add(&rs.alpha(2));
        let p = lam.scale(Q::new(num.min(den), den));
        let ls = LocalSystem::new(&rs, Flavor::DoubleAffine, &p, Window::default()).unwrap();
        let c = rs.cartan();
        for (i, a) in ls.simples.iter().enumerate() {
            prop_assert!(ls.is_positive(a));
            for b in ls.simples.iter().skip(i + 1) {
                prop_assert!(c.form(&a.zeta.fin, &b.zeta.fin) <= 0);
            }
        }
    }

    #[test]
    fn deodhar_count_is_independent_of_the_reduced_word(word in proptest::collection::vec(0usize..3, 0..5), vword in proptest::collection::vec(0usize..3, 0..4)) {
        let cox = Coxeter::affine(CartanData::of_type("A", 2).unwrap());
        let w = cox.elt(&word);
        let v = cox.elt(&vword);
        let words = cox.reduced_words(&w);
        let r = cox.classical_r(&v, &w);
        for red in &words {
            prop_assert_eq!(cox.deodhar_count(red, &v), r.clone());
        }
    }

    #[test]
    fn bar_is_an_involutive_ring_map(f in arb_poly(), g in arb_poly()) {
        prop_assert_eq!(f.bar().bar(), f.clone());
        prop_assert_eq!((&f * &g).bar(), &f.bar() * &g.bar());
        prop_assert_eq!((&f + &g).bar(), &f.bar() + &g.bar());
    }

    #[test]
    fn polynomial_json_round_trips(f in arb_poly()) {
        let s = serde_json::to_string(&f).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn elements_json_round_trip(rank in 1usize..3, level in 1i64..3, fin in proptest::collection::vec(-2i64..3, 2),
                                delta in -2i64..3, word in proptest::collection::vec(0usize..3, 0..4)) {
        let rs = system(rank);
        let x = element(&rs, level, &fin, delta, &word);
        let s = serde_json::to_string(&x).unwrap();
        let back: WPElt = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, x);
    }
}
