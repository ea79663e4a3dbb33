//! `I_∞`-Hecke paths from decreasing Bruhat chains: folding times, canonicalization
//! by trajectory, per-path Deodhar factors, and the `U⁻` folding predicate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{Coweight, DaRoot, RootSystem, WPElt};
use crate::deodhar::{cell_count, final_factor_iwahori, start_factor_iwahori, twisted_count};
use crate::error::{Error, Result};
use crate::order::{decreasing_chains, Chain};
use crate::poly::LaurentPoly;
use crate::tangent::{project_px, Flavor, LocalSystem};
use crate::window::Window;
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TimeConstraint {
    Fixed(Q),
    Unconstrained,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathFlavor {
    Spherical,
    IwahoriSpherical,
    Iwahori,
}

/// Folding times `0 = t_0 < ... < t_N < 1`, directions `x_0, ..., x_N` (normalized to
/// minimal representatives modulo the germ stabilizers), the forced terminal direction for
/// the Iwahori flavor, the trajectory fingerprint, the source chains, and the Deodhar
/// factors (start, one per interior fold, then terminal if any).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckePath {
    pub times: Vec<Q>,
    pub dirs: Vec<WPElt>,
    pub terminal: Option<WPElt>,
    pub fingerprint: Vec<Coweight>,
    pub sources: Vec<usize>,
    pub factors: Vec<LaurentPoly>,
}

impl HeckePath {
    pub fn contribution(&self) -> LaurentPoly {
        self.factors.iter().cloned().product()
    }
}

/// Output of a path enumeration. `shape` is dominant; for Iwahori flavors it is `μ₊`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSet {
    pub flavor: PathFlavor,
    pub shape: Coweight,
    pub endpoint: Coweight,
    pub chains: Vec<Chain>,
    pub constraints: Vec<Vec<TimeConstraint>>,
    pub paths: Vec<HeckePath>,
    /// `(chain index, reason)` for every chain that yields no path.
    pub discarded: Vec<(usize, String)>,
    /// Occurrences of `x̄_k ≠ e` for `k > 0`.
    pub diagnostics: Vec<String>,
}

impl PathSet {
    pub fn total(&self) -> LaurentPoly {
        self.paths.iter().map(HeckePath::contribution).sum()
    }

    /// Index of the path each chain contributes to, if any.
    pub fn assignment(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.chains.len()];
        for (p, path) in self.paths.iter().enumerate() {
            for &c in &path.sources {
                out[c] = Some(p);
            }
        }
        out
    }

    /// `{"shape", "endpoint", "paths": [{"times", "dirs", "factors"}]}`.
    pub fn to_json(&self, rs: &RootSystem, ascii: bool) -> serde_json::Value {
        let paths: Vec<serde_json::Value> = self
            .paths
            .iter()
            .map(|p| {
                let mut v = serde_json::json!({
                    "times": p.times.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "dirs": p.dirs.iter().map(|x| rs.fmt_elt(x, ascii)).collect::<Vec<_>>(),
                    "factors": p.factors,
                    "sources": p.sources,
                });
                if let Some(t) = &p.terminal {
                    v["terminal"] = serde_json::Value::String(rs.fmt_elt(t, ascii));
                }
                v
            })
            .collect();
        serde_json::json!({
            "flavor": self.flavor,
            "shape": rs.fmt_coweight(&self.shape, ascii),
            "endpoint": rs.fmt_coweight(&self.endpoint, ascii),
            "paths": paths,
            "total": self.total(),
        })
    }
}

/// Time at which `s_β` can fold after `y_prev`: with `γ[r'] = y_prev⁻¹(β)` made positive,
/// `Fixed(r'/⟨γ, λ⟩)` when that lies in `[0, 1]`.
pub fn folding_time(rs: &RootSystem, y_prev: &WPElt, beta: &DaRoot, shape: &Coweight) -> TimeConstraint {
    let g = rs.wp_act_root(&rs.wp_inv(y_prev), beta).normalized();
    let pairing = rs.pair(&g.zeta, shape);
    let r = Q::from(g.n);
    if pairing.is_zero() {
        return if r.is_zero() {
            TimeConstraint::Unconstrained
        } else {
            TimeConstraint::Infeasible
        };
    }
    let t = r / pairing;
    if t >= Q::zero() && t <= Q::one() {
        TimeConstraint::Fixed(t)
    } else {
        TimeConstraint::Infeasible
    }
}

/// Partial products `y_j = s_{β_j} ⋯ s_{β_1}`, with `y_0 = e`.
fn partial_products(rs: &RootSystem, chain: &Chain) -> Vec<WPElt> {
    let mut ys = vec![rs.wp_identity()];
    for b in &chain.roots {
        let next = rs.wp_mul(&rs.da_reflection(b), ys.last().unwrap());
        ys.push(next);
    }
    ys
}

pub fn chain_constraints(rs: &RootSystem, chain: &Chain, shape: &Coweight) -> Vec<TimeConstraint> {
    let ys = partial_products(rs, chain);
    chain
        .roots
        .iter()
        .enumerate()
        .map(|(j, b)| folding_time(rs, &ys[j], b, shape))
        .collect()
}

/// Path data of a single chain: folding times, the partial products in force on each
/// segment, and their normalized representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPath {
    pub times: Vec<Q>,
    pub raw: Vec<WPElt>,
    pub dirs: Vec<WPElt>,
}

type RawPath = ChainPath;

/// Memoized local systems keyed by point and flavor.
struct Locals<'a> {
    rs: &'a RootSystem,
    w: Window,
    cache: BTreeMap<(Coweight, bool), LocalSystem>,
}

impl<'a> Locals<'a> {
    fn new(rs: &'a RootSystem, w: Window) -> Self {
        Self {
            rs,
            w,
            cache: BTreeMap::new(),
        }
    }

    fn get(&mut self, p: &Coweight, flavor: Flavor) -> Result<&LocalSystem> {
        let key = (p.clone(), flavor == Flavor::Vectorial);
        if !self.cache.contains_key(&key) {
            let ls = LocalSystem::new(self.rs, flavor, p, self.w)?;
            self.cache.insert(key.clone(), ls);
        }
        Ok(&self.cache[&key])
    }
}

/// Assigns folding times to a chain, groups same-time folds, drops time-one folds, and
/// normalizes directions; redundant joints are removed.
fn chain_to_raw(
    rs: &RootSystem,
    chain: &Chain,
    constraints: &[TimeConstraint],
    shape: &Coweight,
    locals: &mut Locals,
) -> Result<RawPath> {
    let ys = partial_products(rs, chain);
    let mut times = Vec::with_capacity(constraints.len());
    let mut last = Q::zero();
    for (j, c) in constraints.iter().enumerate() {
        match c {
            TimeConstraint::Fixed(t) => {
                if *t < last {
                    return Err(Error::InconsistentTimes(format!(
                        "step {} folds at {t} after a fold at {last}",
                        j + 1
                    )));
                }
                last = *t;
            }
            TimeConstraint::Unconstrained => {
                let zero = Coweight::zero(rs.rank());
                let same = rs.wp_act_point(&ys[j], &zero) == rs.wp_act_point(&ys[j + 1], &zero)
                    && rs.wp_act_point(&ys[j], shape) == rs.wp_act_point(&ys[j + 1], shape);
                if !same {
                    return Err(Error::ConventionMismatch(format!(
                        "unconstrained step {} moves the trajectory",
                        j + 1
                    )));
                }
            }
            TimeConstraint::Infeasible => {
                return Err(Error::InconsistentTimes(format!("step {} has no admissible time", j + 1)));
            }
        }
        times.push(last);
    }
    let mut distinct: Vec<Q> = std::iter::once(Q::zero())
        .chain(times.iter().copied().filter(|t| *t < Q::one()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    distinct.sort();
    let mut dirs = Vec::new();
    for t in &distinct {
        let k = times.iter().rposition(|r| r <= t).map_or(0, |j| j + 1);
        let p = shape.scale(*t);
        let ls = locals.get(&p, Flavor::DoubleAffine)?;
        dirs.push((ys[k].clone(), ls.min_coset_rep(rs, &ys[k], shape)?));
    }
    let mut out_t = vec![distinct[0]];
    let (r0, x0) = dirs[0].clone();
    let mut out_r = vec![r0];
    let mut out_x = vec![x0];
    for (t, (r, x)) in distinct.into_iter().zip(dirs).skip(1) {
        if rs.wp_act_point(out_x.last().unwrap(), shape) != rs.wp_act_point(&x, shape) {
            out_t.push(t);
            out_r.push(r);
            out_x.push(x);
        }
    }
    Ok(ChainPath {
        times: out_t,
        raw: out_r,
        dirs: out_x,
    })
}

/// Path data of one chain toward a dominant shape; errors with `InconsistentTimes` when no
/// monotone time assignment exists.
pub fn chain_to_path(rs: &RootSystem, chain: &Chain, shape: &Coweight, w: Window) -> Result<ChainPath> {
    let cons = chain_constraints(rs, chain, shape);
    chain_to_raw(rs, chain, &cons, shape, &mut Locals::new(rs, w))
}

/// `τ` sampled at the one-third and two-thirds points of every segment.
fn fingerprint(rs: &RootSystem, raw: &RawPath, shape: &Coweight) -> Vec<Coweight> {
    let mut out = Vec::new();
    for (k, x) in raw.dirs.iter().enumerate() {
        let a = raw.times[k];
        let b = raw.times.get(k + 1).copied().unwrap_or_else(Q::one);
        for f in [Q::new(1, 3), Q::new(2, 3)] {
            out.push(rs.wp_act_point(x, &shape.scale(a + (b - a) * f)));
        }
    }
    out
}

/// Computes the factors of a path; `None` entries in the output mean the path is filtered out.
type FactorFn<'f> = dyn Fn(&RootSystem, &RawPath, &mut Locals, &mut Vec<String>) -> Result<std::result::Result<(Vec<LaurentPoly>, Option<WPElt>), String>> + 'f;

fn interior_factors(
    rs: &RootSystem,
    raw: &RawPath,
    shape: &Coweight,
    locals: &mut Locals,
    diagnostics: &mut Vec<String>,
) -> Result<std::result::Result<Vec<LaurentPoly>, String>> {
    let mut out = Vec::new();
    for k in 1..raw.dirs.len() {
        let p = shape.scale(raw.times[k]);
        let ls = locals.get(&p, Flavor::DoubleAffine)?.clone();
        let a = ls.project_overline(rs, &raw.dirs[k - 1])?.elt;
        if k - 1 > 0 && !rs.wp_is_identity(&a) {
            diagnostics.push(format!(
                "x̄_{} = {} at t = {}",
                k - 1,
                rs.fmt_elt(&a, false),
                raw.times[k]
            ));
        }
        let y = rs.wp_mul(&rs.wp_inv(&raw.dirs[k - 1]), &raw.dirs[k]);
        let f = twisted_count(rs, &ls, &a, &y, shape)?;
        if f.is_zero() {
            return Ok(Err(format!("folding condition fails at t = {}", raw.times[k])));
        }
        out.push(f);
    }
    Ok(Ok(out))
}

fn enumerate(
    rs: &RootSystem,
    flavor: PathFlavor,
    shape: &Coweight,
    endpoint: &Coweight,
    start: &FactorFn,
    w: Window,
) -> Result<PathSet> {
    if !rs.is_dominant(shape) {
        return Err(Error::Config(format!(
            "shape {} is not dominant",
            rs.fmt_coweight(shape, true)
        )));
    }
    let top = rs.translation(shape);
    let floor = rs.min_coset_rep_mod_weyl(&rs.translation(endpoint))?;
    let chains = match decreasing_chains(rs, &top, &floor, &|z| *z == floor, w) {
        Ok(c) => c,
        Err(Error::Empty(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    let constraints: Vec<Vec<TimeConstraint>> = chains.iter().map(|c| chain_constraints(rs, c, shape)).collect();
    let mut locals = Locals::new(rs, w);
    let mut diagnostics = Vec::new();
    let mut discarded = Vec::new();
    let mut by_key: BTreeMap<(Vec<Q>, Vec<Coweight>), HeckePath> = BTreeMap::new();
    let bound = rs.two_rho_pair(&shape.sub(endpoint));
    for (ci, (chain, cons)) in chains.iter().zip(&constraints).enumerate() {
        let raw = match chain_to_raw(rs, chain, cons, shape, &mut locals) {
            Ok(r) => r,
            Err(Error::InconsistentTimes(msg)) => {
                discarded.push((ci, msg));
                continue;
            }
            Err(e) => return Err(e),
        };
        let last = raw.dirs.last().unwrap();
        if rs.wp_act_point(last, shape) != *endpoint {
            discarded.push((ci, "endpoint mismatch".into()));
            continue;
        }
        let fin_len = Q::from(rs.weyl_length(&rs.wp_mul(last, &rs.translation(shape)).w) as i64);
        if fin_len > bound {
            discarded.push((ci, "final direction exceeds the length bound".into()));
            continue;
        }
        let fp = fingerprint(rs, &raw, shape);
        let key = (raw.times.clone(), fp.clone());
        if let Some(p) = by_key.get_mut(&key) {
            p.sources.push(ci);
            continue;
        }
        let (mut factors, terminal) = match start(rs, &raw, &mut locals, &mut diagnostics)? {
            Ok(x) => x,
            Err(msg) => {
                discarded.push((ci, msg));
                continue;
            }
        };
        match interior_factors(rs, &raw, shape, &mut locals, &mut diagnostics)? {
            Ok(f) => {
                let tail = factors.split_off(1);
                factors.extend(f);
                factors.extend(tail);
            }
            Err(msg) => {
                discarded.push((ci, msg));
                continue;
            }
        }
        by_key.insert(
            key,
            HeckePath {
                times: raw.times,
                dirs: raw.dirs,
                terminal,
                fingerprint: fp,
                sources: vec![ci],
                factors,
            },
        );
    }
    let mut paths: Vec<HeckePath> = by_key.into_values().collect();
    paths.sort_by(|a, b| (&a.times, &a.dirs).cmp(&(&b.times, &b.dirs)));
    diagnostics.sort();
    diagnostics.dedup();
    Ok(PathSet {
        flavor,
        shape: shape.clone(),
        endpoint: endpoint.clone(),
        chains,
        constraints,
        paths,
        discarded,
        diagnostics,
    })
}

/// Spherical paths of dominant shape `λ` ending at `ν`, with factors `q^{d₀}` and the
/// interior twisted counts.
pub fn spherical_paths(rs: &RootSystem, lambda: &Coweight, nu: &Coweight, w: Window) -> Result<PathSet> {
    let lam = lambda.clone();
    let start = move |rs: &RootSystem, raw: &RawPath, locals: &mut Locals, _: &mut Vec<String>| {
        let ls = locals.get(&Coweight::zero(rs.rank()), Flavor::DoubleAffine)?;
        Ok(Ok((vec![cell_count(rs, ls, &raw.dirs[0], &lam)?], None)))
    };
    enumerate(rs, PathFlavor::Spherical, lambda, nu, &start, w)
}

/// Iwahori-spherical paths for `I π^μ K ∩ I_∞ π^ν K`: shape `μ₊`, start factor filtered.
pub fn iwahori_spherical_paths(rs: &RootSystem, mu: &Coweight, nu: &Coweight, w: Window) -> Result<PathSet> {
    let (plus, _) = rs.dominantize(mu)?;
    let mu = mu.clone();
    let start = move |rs: &RootSystem, raw: &RawPath, locals: &mut Locals, _: &mut Vec<String>| {
        let ls = locals.get(&Coweight::zero(rs.rank()), Flavor::DoubleAffine)?;
        let f = start_factor_iwahori(rs, ls, &raw.dirs[0], &mu)?;
        Ok(if f.is_zero() {
            Err("start cell misses the Iwahori orbit".to_string())
        } else {
            Ok((vec![f], None))
        })
    };
    enumerate(rs, PathFlavor::IwahoriSpherical, &plus, nu, &start, w)
}

/// Iwahori paths for shape `π^μ w` and endpoint `π^ν v`, with forced
/// `x_{N+1} = π^ν v w⁻¹ u π^{-μ₊}` and the terminal factor.
pub fn iwahori_paths(rs: &RootSystem, shape: &WPElt, endpoint: &WPElt, w: Window) -> Result<PathSet> {
    let (plus, u) = rs.dominantize(&shape.mu)?;
    let x_next = rs.wp_mul(
        &rs.wp_mul(endpoint, &rs.vectorial(&rs.weyl_inv(&shape.w))),
        &rs.wp_mul(&rs.vectorial(&u), &rs.translation(&plus.neg())),
    );
    let mu = shape.mu.clone();
    let shape_c = shape.clone();
    let plus_c = plus.clone();
    let start = move |rs: &RootSystem, raw: &RawPath, locals: &mut Locals, _: &mut Vec<String>| {
        let ls0 = locals.get(&Coweight::zero(rs.rank()), Flavor::DoubleAffine)?;
        let f0 = start_factor_iwahori(rs, ls0, &raw.dirs[0], &mu)?;
        if f0.is_zero() {
            return Ok(Err("start cell misses the Iwahori orbit".to_string()));
        }
        let ls1 = locals.get(&plus_c, Flavor::DoubleAffine)?;
        let xn = raw.dirs.last().unwrap();
        let f1 = final_factor_iwahori(rs, ls1, xn, &x_next, &shape_c)?;
        if f1.is_zero() {
            return Ok(Err("terminal factor vanishes".to_string()));
        }
        Ok(Ok((vec![f0, f1], Some(x_next.clone()))))
    };
    enumerate(rs, PathFlavor::Iwahori, &plus, &endpoint.mu, &start, w)
}

/// Folding condition at a fold `t` of a `U⁻`-path with directions `z_prev`, `z_next`:
/// a chain `w_next(λ) = ξ_0, ..., ξ_s = w_prev(λ)` with `ξ_i = s_{β_i}(ξ_{i-1})`,
/// `β_i ∈ Φ^{v,+}`, `⟨β_i, ξ_{i-1}⟩ < 0` and `⟨β_i, τ(t)⟩ ∈ ℤ`.
pub fn km_form_a(rs: &RootSystem, z_prev: &WPElt, z_next: &WPElt, t: Q, lambda: &Coweight, w: Window) -> Result<bool> {
    w.stable("orbit chain search", |w| {
        let point = rs.wp_act_point(z_next, &lambda.scale(t));
        let start = rs.weyl_act_coweight(&z_next.w, lambda);
        let target = rs.weyl_act_coweight(&z_prev.w, lambda);
        let roots: Vec<_> = rs
            .affine_roots(w.d, true)
            .into_iter()
            .filter(|b| rs.pair(b, &point).is_integer())
            .collect();
        let in_cone = |x: &Coweight| {
            let diff = target.sub(x);
            let c0 = diff.delta;
            c0 >= Q::zero()
                && diff
                    .fin
                    .iter()
                    .zip(rs.cartan().theta())
                    .all(|(f, &th)| *f + c0 * Q::from(th) >= Q::zero())
        };
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            if x == target {
                return Ok(true);
            }
            if seen.len() > w.h * w.h * 16 {
                return Err(Error::StabilizationFailure {
                    what: "orbit chain search".into(),
                    window: w,
                });
            }
            for b in &roots {
                if rs.pair(b, &x) < Q::zero() {
                    let y = rs.reflect_coweight(b, &x);
                    if in_cone(&y) && seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(false)
    })
}

/// The same condition as `w̄ ≤ w̄·w_prev⁻¹·w_next` in `W^v_{tλ}/W^v_{tλ+ε}`, with
/// `w̄ = p_{tλ}`-projection of `w_prev`; false when `w_prev⁻¹ w_next ∉ W^v_{tλ}`.
pub fn km_form_b(rs: &RootSystem, z_prev: &WPElt, z_next: &WPElt, t: Q, lambda: &Coweight, w: Window) -> Result<bool> {
    let p = lambda.scale(t);
    let ls = LocalSystem::new(rs, Flavor::Vectorial, &p, w)?;
    let wp = rs.vectorial(&z_prev.w);
    let wn = rs.vectorial(&z_next.w);
    let rel = rs.wp_mul(&rs.wp_inv(&wp), &wn);
    if ls.realize(rs, &rel).is_err() {
        return Ok(false);
    }
    let wbar = project_px(rs, &wp, &p, w)?.elt;
    ls.parabolic_leq(rs, &wbar, &rs.wp_mul(&wbar, &rel), lambda)
}

/// Evaluates both forms at every fold `k ≥ 1` and returns their common value.
pub fn km_folding_check(rs: &RootSystem, times: &[Q], dirs: &[WPElt], lambda: &Coweight, w: Window) -> Result<bool> {
    let mut ok = true;
    for k in 1..dirs.len() {
        let a = km_form_a(rs, &dirs[k - 1], &dirs[k], times[k], lambda, w)?;
        let b = km_form_b(rs, &dirs[k - 1], &dirs[k], times[k], lambda, w)?;
        if a != b {
            return Err(Error::EquivalenceViolation(format!(
                "fold {k} at t = {}: orbit-chain form {a}, projected form {b}",
                times[k]
            )));
        }
        ok &= a;
    }
    Ok(ok)
}
