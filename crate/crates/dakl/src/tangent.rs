//! Tangent root systems at apartment points: local roots, local simple roots,
//! the projection `x ↦ x̄`, minimal coset representatives and parabolic order.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::{Coweight, DaRoot, RootSystem, WPElt};
use crate::error::{Error, Result};
use crate::window::Window;
use crate::Q;

/// `DoubleAffine`: roots `ζ[n]` with `⟨ζ, p⟩ = n`, positivity in `Φ`, elements of `W_P`.
/// `Vectorial`: roots `ζ ∈ Φ^v` with `⟨ζ, p⟩ ∈ ℤ`, positivity in `Φ^v`, elements of `W^v`;
/// vectorial roots are stored with `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    DoubleAffine,
    Vectorial,
}

/// Element of a local Weyl group: the local simple reflections of a reduced word
/// (in product order) and the realized element. Equality is on the realization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalWeylElt {
    pub word: Vec<DaRoot>,
    pub elt: WPElt,
}

impl PartialEq for LocalWeylElt {
    fn eq(&self, o: &Self) -> bool {
        self.elt == o.elt
    }
}

impl Eq for LocalWeylElt {}

/// Root system `Φ_p` (or `Φ^v_p`) at an apartment point, truncated to a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSystem {
    pub flavor: Flavor,
    pub point: Coweight,
    /// Local simple roots, sorted.
    pub simples: Vec<DaRoot>,
    pub window: Window,
}

/// Whether `γ` belongs to the local system of `flavor` at `p`.
pub fn local_membership(rs: &RootSystem, flavor: Flavor, g: &DaRoot, p: &Coweight) -> bool {
    let v = rs.pair(&g.zeta, p);
    match flavor {
        Flavor::DoubleAffine => v == Q::from(g.n),
        Flavor::Vectorial => g.n == 0 && v.is_integer(),
    }
}

fn is_local_positive(flavor: Flavor, g: &DaRoot) -> bool {
    match flavor {
        Flavor::DoubleAffine => g.is_positive(),
        Flavor::Vectorial => g.zeta.is_positive(),
    }
}

fn act(rs: &RootSystem, flavor: Flavor, x: &WPElt, g: &DaRoot) -> DaRoot {
    match flavor {
        Flavor::DoubleAffine => rs.wp_act_root(x, g),
        Flavor::Vectorial => DaRoot::new(rs.weyl_act_root(&x.w, &g.zeta), 0),
    }
}

fn reflection(rs: &RootSystem, flavor: Flavor, g: &DaRoot) -> WPElt {
    match flavor {
        Flavor::DoubleAffine => rs.da_reflection(g),
        Flavor::Vectorial => rs.vectorial(&rs.weyl_reflection(&g.zeta)),
    }
}

/// Positive local roots with `|d| ≤ D` and `|n| ≤ M`.
fn positive_roots_at(rs: &RootSystem, flavor: Flavor, p: &Coweight, w: Window) -> Vec<DaRoot> {
    let mut out = BTreeSet::new();
    for z in rs.affine_roots(w.d, false) {
        let v = rs.pair(&z, p);
        if !v.is_integer() {
            continue;
        }
        let n = match flavor {
            Flavor::DoubleAffine => v.to_integer(),
            Flavor::Vectorial => 0,
        };
        if n.abs() > w.m {
            continue;
        }
        let g = DaRoot::new(z, n);
        if is_local_positive(flavor, &g) {
            out.insert(g);
        }
    }
    out.into_iter().collect()
}

fn simples_at(rs: &RootSystem, flavor: Flavor, p: &Coweight, w: Window) -> Vec<DaRoot> {
    let candidates = positive_roots_at(rs, flavor, p, w);
    let wide = positive_roots_at(rs, flavor, p, w.doubled());
    candidates
        .into_iter()
        .filter(|g| {
            let s = reflection(rs, flavor, g);
            wide.iter()
                .filter(|h| !is_local_positive(flavor, &act(rs, flavor, &s, h)))
                .take(2)
                .count()
                == 1
        })
        .collect()
}

impl LocalSystem {
    /// Local system at `p`; the simple roots are the positive local roots whose
    /// reflection has a single local inversion, certified stable under window doubling.
    pub fn new(rs: &RootSystem, flavor: Flavor, p: &Coweight, w: Window) -> Result<Self> {
        let simples = w.stable("local simple roots", |w| Ok(simples_at(rs, flavor, p, w)))?;
        Ok(Self {
            flavor,
            point: p.clone(),
            simples,
            window: w,
        })
    }

    pub fn contains(&self, rs: &RootSystem, g: &DaRoot) -> bool {
        local_membership(rs, self.flavor, g, &self.point)
    }

    pub fn is_positive(&self, g: &DaRoot) -> bool {
        is_local_positive(self.flavor, g)
    }

    pub fn act(&self, rs: &RootSystem, x: &WPElt, g: &DaRoot) -> DaRoot {
        act(rs, self.flavor, x, g)
    }

    pub fn reflection(&self, rs: &RootSystem, g: &DaRoot) -> WPElt {
        reflection(rs, self.flavor, g)
    }

    pub fn positive_roots(&self, rs: &RootSystem, w: Window) -> Vec<DaRoot> {
        positive_roots_at(rs, self.flavor, &self.point, w)
    }

    pub fn identity(&self, rs: &RootSystem) -> LocalWeylElt {
        LocalWeylElt {
            word: Vec::new(),
            elt: rs.wp_identity(),
        }
    }

    /// Local simples `ζ[n]` with `⟨ζ, dir⟩ = 0`, generating the stabilizer of the germ
    /// `[p, p + ε·dir)`.
    pub fn germ_simples(&self, rs: &RootSystem, dir: &Coweight) -> Vec<DaRoot> {
        self.simples
            .iter()
            .filter(|g| rs.pair(&g.zeta, dir).is_zero())
            .cloned()
            .collect()
    }

    fn has_descent(&self, rs: &RootSystem, x: &WPElt, a: &DaRoot) -> bool {
        !self.is_positive(&self.act(rs, x, a))
    }

    /// Reduced word in local simples by peeling right descents; `NotRealizable` when
    /// `x` has no local inversions left but is not the identity.
    pub fn realize(&self, rs: &RootSystem, x: &WPElt) -> Result<LocalWeylElt> {
        let mut cur = x.clone();
        let mut rev = Vec::new();
        for _ in 0..=self.window.h {
            if rs.wp_is_identity(&cur) {
                rev.reverse();
                return Ok(LocalWeylElt {
                    word: rev,
                    elt: x.clone(),
                });
            }
            let Some(a) = self.simples.iter().find(|a| self.has_descent(rs, &cur, a)) else {
                return Err(Error::NotRealizable(format!(
                    "{} at {}",
                    rs.fmt_elt(x, true),
                    rs.fmt_coweight(&self.point, true)
                )));
            };
            cur = rs.wp_mul(&cur, &self.reflection(rs, a));
            rev.push(a.clone());
        }
        Err(Error::StabilizationFailure {
            what: "local reduced word".into(),
            window: self.window,
        })
    }

    pub fn local_length(&self, rs: &RootSystem, x: &WPElt) -> Result<usize> {
        Ok(self.realize(rs, x)?.word.len())
    }

    /// Product of the reflections in a local word.
    pub fn word_elt(&self, rs: &RootSystem, word: &[DaRoot]) -> WPElt {
        word.iter()
            .fold(rs.wp_identity(), |acc, g| rs.wp_mul(&acc, &self.reflection(rs, g)))
    }

    /// Minimal representative of `a` modulo the parabolic generated by `gens`.
    pub fn min_rep(&self, rs: &RootSystem, a: &WPElt, gens: &[DaRoot]) -> Result<WPElt> {
        let mut cur = a.clone();
        for _ in 0..=self.window.h {
            match gens.iter().find(|g| self.has_descent(rs, &cur, g)) {
                Some(g) => cur = rs.wp_mul(&cur, &self.reflection(rs, g)),
                None => return Ok(cur),
            }
        }
        Err(Error::StabilizationFailure {
            what: "parabolic minimal representative".into(),
            window: self.window,
        })
    }

    /// Bruhat order in the local Weyl group by the lifting property.
    pub fn bruhat_leq(&self, rs: &RootSystem, v: &WPElt, w: &WPElt) -> Result<bool> {
        let mut v = v.clone();
        let mut w = w.clone();
        for _ in 0..=self.window.h {
            let Some(s) = self.simples.iter().find(|a| self.has_descent(rs, &w, a)) else {
                self.realize(rs, &w)?;
                self.realize(rs, &v)?;
                return Ok(rs.wp_is_identity(&v));
            };
            let sr = self.reflection(rs, s);
            if self.has_descent(rs, &v, s) {
                v = rs.wp_mul(&v, &sr);
            }
            w = rs.wp_mul(&w, &sr);
        }
        Err(Error::StabilizationFailure {
            what: "local Bruhat comparison".into(),
            window: self.window,
        })
    }

    /// `a ≤ b` in `W_p / W_{[p, p+ε·dir)}`.
    pub fn parabolic_leq(&self, rs: &RootSystem, a: &WPElt, b: &WPElt, dir: &Coweight) -> Result<bool> {
        let gens = self.germ_simples(rs, dir);
        let ma = self.min_rep(rs, a, &gens)?;
        let mb = self.min_rep(rs, b, &gens)?;
        self.bruhat_leq(rs, &ma, &mb)
    }

    /// `#{γ ∈ Φ_p⁺ : a(γ) < 0, ⟨ζ, dir⟩ ≠ 0}`, i.e. the length of the class of `a` modulo
    /// the germ stabilizer.
    pub fn parabolic_length(&self, rs: &RootSystem, a: &WPElt, dir: &Coweight) -> Result<usize> {
        self.window.stable("parabolic length", |w| {
            Ok(self
                .positive_roots(rs, w)
                .iter()
                .filter(|g| !rs.pair(&g.zeta, dir).is_zero())
                .filter(|g| self.has_descent(rs, a, g))
                .count())
        })
    }

    /// `{γ ∈ Φ_p⁺ : x(γ) < 0}` within the window.
    pub fn inversion_set(&self, rs: &RootSystem, x: &WPElt, w: Window) -> BTreeSet<DaRoot> {
        self.positive_roots(rs, w)
            .into_iter()
            .filter(|g| self.has_descent(rs, x, g))
            .collect()
    }

    /// The unique `x̄` in the local Weyl group with `x⁻¹(Φ⁻) ∩ Φ_p = x̄⁻¹(Φ_p⁻)`.
    pub fn project_overline(&self, rs: &RootSystem, x: &WPElt) -> Result<LocalWeylElt> {
        let s = self
            .window
            .stable("local inversion set", |w| Ok(self.inversion_set(rs, x, w)))?;
        let mut set = s;
        let mut rev = Vec::new();
        while !set.is_empty() {
            if rev.len() > self.window.h {
                return Err(Error::StabilizationFailure {
                    what: "overline projection".into(),
                    window: self.window,
                });
            }
            let Some(a) = self.simples.iter().find(|a| set.contains(a)).cloned() else {
                return Err(Error::NotRealizable(format!(
                    "inversion set of {} at {} has no local simple root",
                    rs.fmt_elt(x, true),
                    rs.fmt_coweight(&self.point, true)
                )));
            };
            let sa = self.reflection(rs, &a);
            set = set
                .iter()
                .filter(|g| **g != a)
                .map(|g| self.act(rs, &sa, g))
                .collect();
            rev.push(a);
        }
        rev.reverse();
        let elt = self.word_elt(rs, &rev);
        Ok(LocalWeylElt { word: rev, elt })
    }

    /// `x · x̄⁻¹ · m` where `m` is the minimal representative of `x̄` modulo the germ
    /// stabilizer of `[p, p + ε·dir)`.
    pub fn min_coset_rep(&self, rs: &RootSystem, x: &WPElt, dir: &Coweight) -> Result<WPElt> {
        let xbar = self.project_overline(rs, x)?.elt;
        let m = self.min_rep(rs, &xbar, &self.germ_simples(rs, dir))?;
        Ok(rs.wp_mul(&rs.wp_mul(x, &rs.wp_inv(&xbar)), &m))
    }
}

/// `p_x(z)` for `z ∈ W^v`: the element of `W^v_x` with
/// `z⁻¹(Φ^{v,-}) ∩ Φ^v_x = p_x(z)⁻¹(Φ^{v,-}_x)`.
pub fn project_px(rs: &RootSystem, z: &WPElt, x: &Coweight, w: Window) -> Result<LocalWeylElt> {
    LocalSystem::new(rs, Flavor::Vectorial, x, w)?.project_overline(rs, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_l0d(rs: &RootSystem) -> Coweight {
        rs.lambda0().add(&rs.delta()).scale(Q::new(1, 2))
    }

    #[test]
    fn membership_examples() {
        let rs = RootSystem::a1();
        let p = half_l0d(&rs);
        let z = rs.simple_root(1).add(&rs.simple_root(0)).add(&rs.simple_root(0));
        assert!(local_membership(&rs, Flavor::DoubleAffine, &DaRoot::new(z, 1), &p));
        let a0 = DaRoot::new(rs.simple_root(0), 0);
        assert!(!local_membership(&rs, Flavor::DoubleAffine, &a0, &p));
    }

    #[test]
    fn simples_at_half_point() {
        let rs = RootSystem::a1();
        let ls = LocalSystem::new(&rs, Flavor::DoubleAffine, &half_l0d(&rs), Window::default()).unwrap();
        let labels: BTreeSet<String> = ls.simples.iter().map(|g| rs.fmt_da_root(g, false)).collect();
        assert_eq!(labels, BTreeSet::from(["α₁".to_string(), "(α₀+δ)[1]".to_string()]));
    }

    #[test]
    fn overline_examples() {
        let rs = RootSystem::a1();
        let ls = LocalSystem::new(&rs, Flavor::DoubleAffine, &half_l0d(&rs), Window::default()).unwrap();
        for word in [&[0][..], &[1, 0], &[]] {
            let x = rs.element(&Coweight::zero(1), word);
            let xbar = ls.project_overline(&rs, &x).unwrap();
            assert!(rs.wp_is_identity(&xbar.elt), "{word:?}");
        }
    }
}
