//! Coweights, affine and double affine real roots, and the groups `W^v` and `W_P = W^v ⋉ P`.
//!
//! Coweights are written in the basis `{Λ₀, α₁^∨, ..., α_n^∨, K}` and stored as
//! `(level, finite part, delta coordinate)`; the coefficient of `K` is the delta
//! coordinate (written `δ` in element labels). Since the finite Cartan matrix is
//! symmetric, roots and coroots share coordinates.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::{mat_vec, CartanData};
use crate::error::{Error, Result};
use crate::Q;

/// `level·Λ₀ + Σ fin_i α_i^∨ + delta·K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coweight {
    pub level: Q,
    pub fin: Vec<Q>,
    pub delta: Q,
}

impl Coweight {
    pub fn zero(rank: usize) -> Self {
        Self {
            level: Q::zero(),
            fin: vec![Q::zero(); rank],
            delta: Q::zero(),
        }
    }

    pub fn new(level: i64, fin: &[i64], delta: i64) -> Self {
        Self {
            level: Q::from(level),
            fin: fin.iter().map(|&x| Q::from(x)).collect(),
            delta: Q::from(delta),
        }
    }

    /// `Λ₀`.
    pub fn lambda0(rank: usize) -> Self {
        Self {
            level: Q::one(),
            ..Self::zero(rank)
        }
    }

    pub fn rank(&self) -> usize {
        self.fin.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            level: self.level + o.level,
            fin: self.fin.iter().zip(&o.fin).map(|(a, b)| a + b).collect(),
            delta: self.delta + o.delta,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-Q::one()))
    }

    pub fn scale(&self, t: Q) -> Self {
        Self {
            level: self.level * t,
            fin: self.fin.iter().map(|a| a * t).collect(),
            delta: self.delta * t,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-Q::one())
    }

    pub fn is_integral(&self) -> bool {
        self.level.is_integer() && self.delta.is_integer() && self.fin.iter().all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.level.is_zero() && self.delta.is_zero() && self.fin.iter().all(|x| x.is_zero())
    }
}

/// Real affine root `β + dδ` with `β` a nonzero finite root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub fin: Vec<i64>,
    pub d: i64,
}

impl AffineRoot {
    pub fn new(fin: Vec<i64>, d: i64) -> Self {
        Self { fin, d }
    }

    fn finite_sign(&self) -> Ordering {
        if self.fin.iter().all(|&x| x >= 0) && self.fin.iter().any(|&x| x > 0) {
            Ordering::Greater
        } else if self.fin.iter().all(|&x| x <= 0) && self.fin.iter().any(|&x| x < 0) {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    /// `d > 0`, or `d = 0` and `β` positive.
    pub fn is_positive(&self) -> bool {
        self.d > 0 || (self.d == 0 && self.finite_sign() == Ordering::Greater)
    }

    pub fn neg(&self) -> Self {
        Self {
            fin: self.fin.iter().map(|x| -x).collect(),
            d: -self.d,
        }
    }

    /// `β^∨ + d K`.
    pub fn coroot(&self) -> Coweight {
        Coweight {
            level: Q::zero(),
            fin: self.fin.iter().map(|&x| Q::from(x)).collect(),
            delta: Q::from(self.d),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            fin: self.fin.iter().zip(&o.fin).map(|(a, b)| a + b).collect(),
            d: self.d + o.d,
        }
    }
}

/// Double affine root `ζ + nπ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DaRoot {
    pub zeta: AffineRoot,
    pub n: i64,
}

impl DaRoot {
    pub fn new(zeta: AffineRoot, n: i64) -> Self {
        Self { zeta, n }
    }

    /// `n > 0`, or `n = 0` and `ζ` positive.
    pub fn is_positive(&self) -> bool {
        self.n > 0 || (self.n == 0 && self.zeta.is_positive())
    }

    pub fn neg(&self) -> Self {
        Self {
            zeta: self.zeta.neg(),
            n: -self.n,
        }
    }

    /// The positive member of `{γ, -γ}`.
    pub fn normalized(&self) -> Self {
        if self.is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            zeta: self.zeta.add(&o.zeta),
            n: self.n + o.n,
        }
    }

    /// `β[n] = sgn(n)β + |n|π` for a finite-or-affine positive `β`.
    pub fn bracket(beta: AffineRoot, n: i64) -> Self {
        if n >= 0 {
            Self { zeta: beta, n }
        } else {
            Self { zeta: beta.neg(), n: -n }
        }
    }
}

/// `w̄ · t_q` with `w̄` a finite Weyl group element (integer matrix acting on
/// coroot coordinates, row-major) and `q` in the finite coroot lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylV {
    pub fin: Vec<i64>,
    pub q: Vec<i64>,
}

/// `π^μ w`, acting on apartment points by `x ↦ w(x) + μ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WPElt {
    pub mu: Coweight,
    pub w: WeylV,
}

/// Root datum of the untwisted affinization of a finite ADE Cartan matrix,
/// with all group operations on coweights, roots and Weyl group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    cartan: CartanData,
}

impl RootSystem {
    pub fn new(cartan: CartanData) -> Self {
        Self { cartan }
    }

    /// Affine `SL_2`.
    pub fn a1() -> Self {
        Self::new(CartanData::a1())
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    // ---- coweights and roots ----

    /// `⟨β + dδ, μ⟩ = ⟨β, μ_fin⟩ + d·level(μ)`.
    pub fn pair(&self, root: &AffineRoot, mu: &Coweight) -> Q {
        self.cartan.form_q(&root.fin, &mu.fin) + Q::from(root.d) * mu.level
    }

    /// Simple affine root `α_i`; `α₀ = δ - θ`.
    pub fn simple_root(&self, i: usize) -> AffineRoot {
        if i == 0 {
            AffineRoot::new(self.cartan.theta().iter().map(|x| -x).collect(), 1)
        } else {
            AffineRoot::new(self.cartan.simple(i - 1), 0)
        }
    }

    /// `α_i^∨`, with `α₀^∨ = K - θ^∨`.
    pub fn simple_coroot(&self, i: usize) -> Coweight {
        self.simple_root(i).coroot()
    }

    /// Finite coroot `α_i^∨` for `i ≥ 1` as a coweight.
    pub fn alpha(&self, i: usize) -> Coweight {
        assert!(i >= 1 && i <= self.rank());
        self.simple_coroot(i)
    }

    /// `K` (written `δ` in labels).
    pub fn delta(&self) -> Coweight {
        Coweight {
            delta: Q::one(),
            ..Coweight::zero(self.rank())
        }
    }

    pub fn lambda0(&self) -> Coweight {
        Coweight::lambda0(self.rank())
    }

    /// `s_ζ(μ) = μ - ⟨ζ, μ⟩ ζ^∨`.
    pub fn reflect_coweight(&self, zeta: &AffineRoot, mu: &Coweight) -> Coweight {
        mu.sub(&zeta.coroot().scale(self.pair(zeta, mu)))
    }

    pub fn is_dominant(&self, mu: &Coweight) -> bool {
        (0..=self.rank()).all(|i| self.pair(&self.simple_root(i), mu) >= Q::zero())
    }

    /// `⟨2ρ, μ⟩ = ⟨2ρ_fin, μ_fin⟩ + 2h^∨·delta(μ)`; the `Λ₀`-component of `2ρ` is normalized to zero.
    pub fn two_rho_pair(&self, mu: &Coweight) -> Q {
        let fin: Q = self
            .cartan
            .two_rho()
            .iter()
            .zip(&mu.fin)
            .map(|(&a, b)| Q::from(a) * b)
            .sum();
        fin + Q::from(2 * self.cartan.h_dual()) * mu.delta
    }

    /// Affine real roots `β + dδ` with `|d| ≤ d_max`, positive ones only if requested.
    pub fn affine_roots(&self, d_max: i64, positive_only: bool) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for d in -d_max..=d_max {
            for beta in self.cartan.roots() {
                let r = AffineRoot::new(beta, d);
                if !positive_only || r.is_positive() {
                    out.push(r);
                }
            }
        }
        out.sort();
        out
    }

    /// Positive double affine roots with `|d| ≤ D` and `0 ≤ n ≤ M`.
    pub fn positive_da_roots(&self, d_max: i64, m_max: i64) -> Vec<DaRoot> {
        let zetas = self.affine_roots(d_max, false);
        let mut out = Vec::new();
        for n in 0..=m_max {
            for z in &zetas {
                let g = DaRoot::new(z.clone(), n);
                if g.is_positive() {
                    out.push(g);
                }
            }
        }
        out
    }

    // ---- finite Weyl group ----

    fn fin_identity(&self) -> Vec<i64> {
        let n = self.rank();
        (0..n * n).map(|k| i64::from(k / n == k % n)).collect()
    }

    /// Matrix of `s_β` on coroot coordinates: `v ↦ v - (βᵀCv) β`.
    fn fin_reflection(&self, beta: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let cb = mat_vec(self.cartan.matrix(), beta);
        let mut m = self.fin_identity();
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] -= beta[i] * cb[j];
            }
        }
        m
    }

    fn fin_mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += aik * b[k * n + j];
                }
            }
        }
        m
    }

    fn fin_apply(&self, a: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum()).collect()
    }

    fn fin_apply_q(&self, a: &[i64], v: &[Q]) -> Vec<Q> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| Q::from(a[i * n + j]) * v[j]).sum())
            .collect()
    }

    /// `w̄⁻¹ = C⁻¹ w̄ᵀ C`, since `w̄` preserves the form.
    fn fin_inverse(&self, a: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let c = self.cartan.matrix();
        let ci = self.cartan.inverse();
        let mut wtc = vec![Q::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                wtc[i * n + j] = (0..n).map(|k| Q::from(a[k * n + i] * c[k][j])).sum();
            }
        }
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let v: Q = (0..n).map(|k| ci[i][k] * wtc[k * n + j]).sum();
                debug_assert!(v.is_integer());
                out[i * n + j] = v.to_integer();
            }
        }
        out
    }

    // ---- W^v ----

    pub fn weyl_identity(&self) -> WeylV {
        WeylV {
            fin: self.fin_identity(),
            q: vec![0; self.rank()],
        }
    }

    /// `s_{β+dδ} = s_β t_{dβ^∨}`.
    pub fn weyl_reflection(&self, zeta: &AffineRoot) -> WeylV {
        WeylV {
            fin: self.fin_reflection(&zeta.fin),
            q: zeta.fin.iter().map(|x| x * zeta.d).collect(),
        }
    }

    pub fn weyl_simple(&self, i: usize) -> WeylV {
        self.weyl_reflection(&self.simple_root(i))
    }

    /// Product of simple reflections `s_{i_1} ⋯ s_{i_k}`.
    pub fn weyl_word(&self, word: &[usize]) -> WeylV {
        word.iter()
            .fold(self.weyl_identity(), |acc, &i| self.weyl_mul(&acc, &self.weyl_simple(i)))
    }

    /// `(w̄ t_q)(v̄ t_p) = w̄v̄ t_{v̄⁻¹q + p}`.
    pub fn weyl_mul(&self, x: &WeylV, y: &WeylV) -> WeylV {
        let vinv_q = self.fin_apply(&self.fin_inverse(&y.fin), &x.q);
        WeylV {
            fin: self.fin_mul(&x.fin, &y.fin),
            q: vinv_q.iter().zip(&y.q).map(|(a, b)| a + b).collect(),
        }
    }

    /// `(w̄ t_q)⁻¹ = w̄⁻¹ t_{-w̄q}`.
    pub fn weyl_inv(&self, x: &WeylV) -> WeylV {
        WeylV {
            fin: self.fin_inverse(&x.fin),
            q: self.fin_apply(&x.fin, &x.q).iter().map(|a| -a).collect(),
        }
    }

    pub fn weyl_is_identity(&self, x: &WeylV) -> bool {
        *x == self.weyl_identity()
    }

    /// `t_q(μ) = μ + ℓq - (⟨μ_fin, q⟩ + ℓ(q,q)/2)K`, followed by the linear action of `w̄`.
    pub fn weyl_act_coweight(&self, x: &WeylV, mu: &Coweight) -> Coweight {
        let qq = Q::from(self.cartan.form(&x.q, &x.q));
        let mq = self.cartan.form_q(&x.q, &mu.fin);
        let shifted: Vec<Q> = mu
            .fin
            .iter()
            .zip(&x.q)
            .map(|(f, &q)| f + mu.level * Q::from(q))
            .collect();
        Coweight {
            level: mu.level,
            fin: self.fin_apply_q(&x.fin, &shifted),
            delta: mu.delta - mq - mu.level * qq / Q::from(2),
        }
    }

    /// `t_q(β + dδ) = β + (d - ⟨β, q⟩)δ`, followed by `w̄` on the finite part.
    pub fn weyl_act_root(&self, x: &WeylV, r: &AffineRoot) -> AffineRoot {
        AffineRoot {
            fin: self.fin_apply(&x.fin, &r.fin),
            d: r.d - self.cartan.form(&r.fin, &x.q),
        }
    }

    /// `ℓ(w̄ t_q) = Σ_{β>0} |⟨β, q⟩ + [w̄β < 0]|`.
    pub fn weyl_length(&self, x: &WeylV) -> usize {
        self.cartan
            .positive_roots()
            .iter()
            .map(|b| {
                let wb = self.fin_apply(&x.fin, b);
                let neg = i64::from(wb.iter().all(|&v| v <= 0));
                (self.cartan.form(b, &x.q) + neg).unsigned_abs() as usize
            })
            .sum()
    }

    pub fn weyl_has_right_descent(&self, x: &WeylV, i: usize) -> bool {
        !self.weyl_act_root(x, &self.simple_root(i)).is_positive()
    }

    /// Reduced word, peeling the smallest-index right descent each time.
    pub fn weyl_reduced_word(&self, x: &WeylV) -> Vec<usize> {
        let mut cur = x.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..=self.rank()).find(|&i| self.weyl_has_right_descent(&cur, i)) {
            cur = self.weyl_mul(&cur, &self.weyl_simple(i));
            rev.push(i);
        }
        debug_assert!(self.weyl_is_identity(&cur));
        rev.reverse();
        rev
    }

    // ---- W_P ----

    pub fn wp_identity(&self) -> WPElt {
        WPElt {
            mu: Coweight::zero(self.rank()),
            w: self.weyl_identity(),
        }
    }

    pub fn translation(&self, mu: &Coweight) -> WPElt {
        WPElt {
            mu: mu.clone(),
            w: self.weyl_identity(),
        }
    }

    pub fn vectorial(&self, w: &WeylV) -> WPElt {
        WPElt {
            mu: Coweight::zero(self.rank()),
            w: w.clone(),
        }
    }

    /// `π^μ w` with `w` given as a word in simple reflections.
    pub fn element(&self, mu: &Coweight, word: &[usize]) -> WPElt {
        WPElt {
            mu: mu.clone(),
            w: self.weyl_word(word),
        }
    }

    /// `(π^μ w)(π^ν v) = π^{μ + w(ν)} wv`.
    pub fn wp_mul(&self, x: &WPElt, y: &WPElt) -> WPElt {
        WPElt {
            mu: x.mu.add(&self.weyl_act_coweight(&x.w, &y.mu)),
            w: self.weyl_mul(&x.w, &y.w),
        }
    }

    /// `(π^μ w)⁻¹ = π^{-w⁻¹μ} w⁻¹`.
    pub fn wp_inv(&self, x: &WPElt) -> WPElt {
        let winv = self.weyl_inv(&x.w);
        WPElt {
            mu: self.weyl_act_coweight(&winv, &x.mu).neg(),
            w: winv,
        }
    }

    pub fn wp_is_identity(&self, x: &WPElt) -> bool {
        x.mu.is_zero() && self.weyl_is_identity(&x.w)
    }

    /// `x ↦ w(x) + μ` on apartment points.
    pub fn wp_act_point(&self, x: &WPElt, p: &Coweight) -> Coweight {
        self.weyl_act_coweight(&x.w, p).add(&x.mu)
    }

    /// `π^μ w (ζ + nπ) = w(ζ) + (⟨wζ, μ⟩ + n)π`.
    pub fn wp_act_root(&self, x: &WPElt, g: &DaRoot) -> DaRoot {
        let wz = self.weyl_act_root(&x.w, &g.zeta);
        let shift = self.pair(&wz, &x.mu);
        debug_assert!(shift.is_integer(), "translation part must be integral");
        DaRoot {
            n: g.n + shift.to_integer(),
            zeta: wz,
        }
    }

    /// `s_{ζ + nπ} = π^{nζ^∨} s_ζ`.
    pub fn da_reflection(&self, g: &DaRoot) -> WPElt {
        WPElt {
            mu: g.zeta.coroot().scale(Q::from(g.n)),
            w: self.weyl_reflection(&g.zeta),
        }
    }

    /// Whether `s_γ` fixes the point `p`, i.e. `⟨ζ, p⟩ = n`.
    pub fn fixes(&self, g: &DaRoot, p: &Coweight) -> bool {
        self.pair(&g.zeta, p) == Q::from(g.n)
    }

    /// `(μ₊, u)` with `μ₊` dominant and `μ = u(μ₊)`, `u` of minimal length.
    pub fn dominantize(&self, mu: &Coweight) -> Result<(Coweight, WeylV)> {
        if mu.level <= Q::zero() {
            return Err(Error::NotInTitsCone(self.fmt_coweight(mu, true)));
        }
        let mut cur = mu.clone();
        let mut u = self.weyl_identity();
        loop {
            let next = (0..=self.rank()).find(|&i| self.pair(&self.simple_root(i), &cur) < Q::zero());
            match next {
                Some(i) => {
                    cur = self.reflect_coweight(&self.simple_root(i), &cur);
                    u = self.weyl_mul(&u, &self.weyl_simple(i));
                }
                None => return Ok((cur, u)),
            }
        }
    }

    /// `ℓ(π^μ w) = ⟨2ρ, μ₊⟩ - ℓ(u) + ℓ(u⁻¹w)` where `μ = u(μ₊)`.
    pub fn length(&self, x: &WPElt) -> Result<i64> {
        let (plus, u) = self.dominantize(&x.mu)?;
        let rho = self.two_rho_pair(&plus);
        if !rho.is_integer() {
            return Err(Error::NotInTitsCone(format!(
                "non-integral translation {}",
                self.fmt_coweight(&x.mu, true)
            )));
        }
        let lu = self.weyl_length(&u) as i64;
        let rest = self.weyl_length(&self.weyl_mul(&self.weyl_inv(&u), &x.w)) as i64;
        Ok(rho.to_integer() - lu + rest)
    }

    /// Minimal-length representative `π^μ u` of the coset `π^μ W^v`.
    pub fn min_coset_rep_mod_weyl(&self, x: &WPElt) -> Result<WPElt> {
        let (_, u) = self.dominantize(&x.mu)?;
        Ok(WPElt { mu: x.mu.clone(), w: u })
    }

    // ---- labels ----

    /// `1/2`, `-3`, ... for coefficients; `unit` suppresses a coefficient of one.
    fn fmt_coeff(c: &Q, first: bool, ascii: bool) -> (String, bool) {
        let neg = c.is_negative();
        let a = c.abs();
        let sign = match (neg, first) {
            (true, _) => "-",
            (false, true) => "",
            (false, false) => "+",
        };
        let body = if a.is_one() {
            String::new()
        } else if a.is_integer() {
            format!("{}", a.to_integer())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        };
        let needs_star = ascii && !body.is_empty();
        (format!("{sign}{body}{}", if needs_star { "*" } else { "" }), true)
    }

    fn subscript(i: usize, ascii: bool) -> String {
        if ascii {
            return i.to_string();
        }
        i.to_string()
            .chars()
            .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
            .collect()
    }

    /// `Λ₀+α₁+δ` (or `Lambda0+alpha1+delta` in ascii).
    pub fn fmt_coweight(&self, mu: &Coweight, ascii: bool) -> String {
        let mut out = String::new();
        let mut terms: Vec<(Q, String)> = vec![(
            mu.level,
            if ascii { "Lambda0".into() } else { "Λ₀".into() },
        )];
        for (i, c) in mu.fin.iter().enumerate() {
            let name = if ascii {
                format!("alpha{}", i + 1)
            } else {
                format!("α{}", Self::subscript(i + 1, false))
            };
            terms.push((*c, name));
        }
        terms.push((mu.delta, if ascii { "delta".into() } else { "δ".into() }));
        for (c, name) in terms {
            if c.is_zero() {
                continue;
            }
            let (coeff, _) = Self::fmt_coeff(&c, out.is_empty(), ascii);
            out.push_str(&coeff);
            out.push_str(&name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `s₁s₀` (or `s1*s0`), `e` for the identity.
    pub fn fmt_weyl(&self, w: &WeylV, ascii: bool) -> String {
        let word = self.weyl_reduced_word(w);
        if word.is_empty() {
            return "e".into();
        }
        let parts: Vec<String> = word
            .iter()
            .map(|&i| format!("s{}", Self::subscript(i, ascii)))
            .collect();
        parts.join(if ascii { "*" } else { "" })
    }

    /// `π^{Λ₀+α₁}s₀` or `pi[Lambda0+alpha1]*s0`.
    pub fn fmt_elt(&self, x: &WPElt, ascii: bool) -> String {
        let w = self.fmt_weyl(&x.w, ascii);
        if x.mu.is_zero() {
            return w;
        }
        let mu = self.fmt_coweight(&x.mu, ascii);
        let head = if ascii { format!("pi[{mu}]") } else { format!("π^{{{mu}}}") };
        if w == "e" {
            head
        } else if ascii {
            format!("{head}*{w}")
        } else {
            format!("{head}{w}")
        }
    }

    /// Affine root label; a negative finite part is rewritten through `α₀ = δ - θ`.
    pub fn fmt_affine_root(&self, r: &AffineRoot, ascii: bool) -> String {
        let pos_fin = r.finite_sign() == Ordering::Greater;
        let (mut coeffs, uses_alpha0, delta) = if pos_fin {
            (r.fin.clone(), false, r.d)
        } else {
            let shifted: Vec<i64> = r.fin.iter().zip(self.cartan.theta()).map(|(a, t)| a + t).collect();
            (shifted, true, r.d - 1)
        };
        let mut out = String::new();
        let alpha = |i: usize| {
            if ascii {
                format!("alpha{i}")
            } else {
                format!("α{}", Self::subscript(i, false))
            }
        };
        if uses_alpha0 {
            out.push_str(&alpha(0));
        }
        for (i, c) in coeffs.iter_mut().enumerate() {
            if *c == 0 {
                continue;
            }
            let (s, _) = Self::fmt_coeff(&Q::from(*c), out.is_empty(), ascii);
            out.push_str(&s);
            out.push_str(&alpha(i + 1));
        }
        if delta != 0 {
            let (s, _) = Self::fmt_coeff(&Q::from(delta), out.is_empty(), ascii);
            out.push_str(&s);
            out.push_str(if ascii { "delta" } else { "δ" });
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Double affine root label in the `β[n]` convention, `β` a positive affine root.
    pub fn fmt_da_root(&self, g: &DaRoot, ascii: bool) -> String {
        let (beta, n) = if g.n == 0 || g.zeta.is_positive() {
            (g.zeta.clone(), g.n)
        } else {
            (g.zeta.neg(), -g.n)
        };
        let body = self.fmt_affine_root(&beta, ascii);
        if n == 0 {
            return body;
        }
        let simple = !body.contains(['+', '-']);
        let body = if simple { body } else { format!("({body})") };
        format!("{body}[{n}]")
    }
}
