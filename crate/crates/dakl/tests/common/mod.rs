//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dakl::deodhar::Coxeter;
use dakl::tangent::{Flavor, LocalSystem};
use dakl::{Coweight, LaurentPoly, RootSystem, WPElt, Window, Q};

/// Permutations of `0..n` in one-line notation.
pub type Perm = Vec<usize>;

pub fn inversions(p: &Perm) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

/// Tableau criterion for the Bruhat order on permutations.
pub fn perm_leq(x: &Perm, w: &Perm) -> bool {
    let n = x.len();
    (0..n).all(|i| {
        (0..n).all(|k| {
            let cx = x[..=i].iter().filter(|&&v| v >= k).count();
            let cw = w[..=i].iter().filter(|&&v| v >= k).count();
            cx <= cw
        })
    })
}

/// `s_i ∘ p`: swaps the values `i-1` and `i`.
pub fn left_mul(i: usize, p: &Perm) -> Perm {
    p.iter()
        .map(|&v| if v == i - 1 { i } else if v == i { i - 1 } else { v })
        .collect()
}

pub fn perms(n: usize) -> Vec<Perm> {
    fn rec(cur: &mut Vec<usize>, n: usize, out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(cur, n, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out.sort_by_key(inversions);
    out
}

/// Kazhdan-Lusztig polynomials of `S_n` by the recursion through `μ`-coefficients.
pub fn kl_oracle(n: usize) -> BTreeMap<(Perm, Perm), LaurentPoly> {
    let all = perms(n);
    let mut p: BTreeMap<(Perm, Perm), LaurentPoly> = BTreeMap::new();
    let get = |p: &BTreeMap<(Perm, Perm), LaurentPoly>, x: &Perm, w: &Perm| -> LaurentPoly {
        if perm_leq(x, w) {
            p[&(x.clone(), w.clone())].clone()
        } else {
            LaurentPoly::zero()
        }
    };
    for w in &all {
        let lw = inversions(w);
        if lw == 0 {
            p.insert((w.clone(), w.clone()), LaurentPoly::one());
            continue;
        }
        let s = (1..n).find(|&i| inversions(&left_mul(i, w)) < lw).unwrap();
        let v = left_mul(s, w);
        let lv = inversions(&v);
        for x in all.iter().filter(|x| perm_leq(x, w)) {
            let sx = left_mul(s, x);
            let c = i32::from(inversions(&sx) < inversions(x));
            let mut val = &get(&p, &sx, &v).shift(1 - c) + &get(&p, x, &v).shift(c);
            for z in all.iter().filter(|z| perm_leq(z, &v) && *z != &v) {
                let lz = inversions(z);
                if inversions(&left_mul(s, z)) >= lz || (lv - lz).is_multiple_of(2) {
                    continue;
                }
                let mu = get(&p, z, &v).coeff(((lv - lz - 1) / 2) as i32);
                if mu != 0 {
                    let e = (lv - lz).div_ceil(2) as i32;
                    val = &val - &get(&p, x, z).shift(e).mul_scalar(mu);
                }
            }
            p.insert((x.clone(), w.clone()), val);
        }
    }
    p
}

pub trait MulScalar {
    fn mul_scalar(&self, c: i64) -> LaurentPoly;
}

impl MulScalar for LaurentPoly {
    fn mul_scalar(&self, c: i64) -> LaurentPoly {
        self * &LaurentPoly::constant(c)
    }
}

pub fn to_perm(cox: &Coxeter, x: &WPElt, n: usize) -> Perm {
    let mut p: Perm = (0..n).collect();
    for &i in cox.reduced_word(x).iter().rev() {
        p = left_mul(i, &p);
    }
    p
}

/// Candidates `(λ, t, w_prev, w_next)` with vectorial directions.
pub fn candidates(rs: &RootSystem, words: &[Vec<usize>], lams: &[Coweight], ts: &[Q]) -> Vec<(Coweight, Q, WPElt, WPElt)> {
    let w = Window::default();
    let mut out = Vec::new();
    for lam in lams {
        for &t in ts {
            let ls = LocalSystem::new(rs, Flavor::Vectorial, &lam.scale(t), w).unwrap();
            let locals: Vec<WPElt> = ls.positive_roots(rs, w).iter().take(3).map(|g| ls.reflection(rs, g)).collect();
            for a in words {
                let wp = rs.vectorial(&rs.weyl_word(a));
                for b in words {
                    out.push((lam.clone(), t, wp.clone(), rs.vectorial(&rs.weyl_word(b))));
                }
                for r in &locals {
                    out.push((lam.clone(), t, wp.clone(), rs.wp_mul(&wp, r)));
                }
            }
        }
    }
    out
}

