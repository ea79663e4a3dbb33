//! R-polynomials assembled from Hecke paths, the Kazhdan-Lusztig recursion for classical
//! and double affine posets, and truncated involution rows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::affine::{Coweight, RootSystem, WPElt};
use crate::deodhar::Coxeter;
use crate::error::{Error, Result};
use crate::order::{interval, Interval};
use crate::paths::{iwahori_paths, iwahori_spherical_paths, spherical_paths};
use crate::poly::LaurentPoly;
use crate::window::Window;

/// `R^K_{ν,λ}`: sum over spherical paths of shape `λ` ending at `ν`.
pub fn spherical_r(rs: &RootSystem, lambda: &Coweight, nu: &Coweight, w: Window) -> Result<LaurentPoly> {
    Ok(spherical_paths(rs, lambda, nu, w)?.total())
}

pub fn iwahori_spherical_r(rs: &RootSystem, mu: &Coweight, nu: &Coweight, w: Window) -> Result<LaurentPoly> {
    Ok(iwahori_spherical_paths(rs, mu, nu, w)?.total())
}

/// `R_{endpoint, shape}`; vanishes unless `endpoint ≤ shape`.
pub fn iwahori_r(rs: &RootSystem, shape: &WPElt, endpoint: &WPElt, w: Window) -> Result<LaurentPoly> {
    Ok(iwahori_paths(rs, shape, endpoint, w)?.total())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PStatus {
    Solved { p: LaurentPoly },
    /// The truncated candidate leaves a nonzero `residual` in the recursion.
    PalindromyFailure { candidate: LaurentPoly, residual: LaurentPoly },
    /// Some `P_{u,w}` with `v < u ≤ w` is not solved.
    Upstream,
}

impl PStatus {
    pub fn solved(&self) -> Option<&LaurentPoly> {
        match self {
            PStatus::Solved { p } => Some(p),
            _ => None,
        }
    }
}

/// `P_{v,w}` for every comparable pair `v ≤ w` of a finite poset, indexed into `elements`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PTable {
    pub elements: Vec<WPElt>,
    pub lengths: Vec<i64>,
    pub entries: BTreeMap<(usize, usize), PStatus>,
    /// `R_{v,u}` for every comparable pair, as used by the recursion.
    pub r: BTreeMap<(usize, usize), LaurentPoly>,
    /// Pairs `v < w` whose data departs from the classical pattern, with the reason.
    pub flagged: Vec<(usize, usize, String)>,
}

impl PTable {
    pub fn get(&self, v: usize, w: usize) -> Option<&PStatus> {
        self.entries.get(&(v, w))
    }

    pub fn failures(&self) -> usize {
        self.entries.values().filter(|s| s.solved().is_none()).count()
    }

    pub fn to_json(&self, rs: &RootSystem, ascii: bool) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(&(v, w), s)| {
                serde_json::json!({
                    "v": rs.fmt_elt(&self.elements[v], ascii),
                    "w": rs.fmt_elt(&self.elements[w], ascii),
                    "r": self.r.get(&(v, w)),
                    "result": s,
                })
            })
            .collect();
        let flagged: Vec<serde_json::Value> = self
            .flagged
            .iter()
            .map(|(v, w, why)| {
                serde_json::json!({
                    "v": rs.fmt_elt(&self.elements[*v], ascii),
                    "w": rs.fmt_elt(&self.elements[*w], ascii),
                    "reason": why,
                })
            })
            .collect();
        serde_json::json!({ "entries": rows, "flagged": flagged })
    }
}

/// `F_{v,w} = Σ_{v<u≤w} R_{v,u} P_{u,w}`, or `None` if some `P_{u,w}` is unsolved.
pub fn recursion_rhs(
    v: usize,
    w: usize,
    leq: &dyn Fn(usize, usize) -> bool,
    r: &BTreeMap<(usize, usize), LaurentPoly>,
    entries: &BTreeMap<(usize, usize), PStatus>,
    n: usize,
) -> Option<LaurentPoly> {
    let mut f = LaurentPoly::zero();
    for u in 0..n {
        if u != v && leq(v, u) && leq(u, w) {
            let p = entries.get(&(u, w))?.solved()?;
            f = &f + &(&r[&(v, u)] * p);
        }
    }
    Some(f)
}

/// Solved pairs with a negative coefficient or constant term other than 1, and comparable
/// pairs with vanishing `R`.
fn flag(entries: &BTreeMap<(usize, usize), PStatus>, r: &BTreeMap<(usize, usize), LaurentPoly>) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for (&(v, w), s) in entries {
        if v == w {
            continue;
        }
        if r[&(v, w)].is_zero() {
            out.push((v, w, "R vanishes on a comparable pair".to_string()));
        }
        if let Some(p) = s.solved() {
            if !p.has_nonnegative_coeffs() {
                out.push((v, w, "P has a negative coefficient".to_string()));
            }
            if p.coeff(0) != 1 {
                out.push((v, w, "P has constant term other than 1".to_string()));
            }
        }
    }
    out
}

/// Solves `q^{ℓ(w)-ℓ(v)} P̄_{v,w} - P_{v,w} = F_{v,w}` top-down under
/// `deg P_{v,w} ≤ (ℓ(w)-ℓ(v)-1)/2` and `P_{w,w} = 1`.
fn solve(
    n: usize,
    lengths: &[i64],
    leq: &dyn Fn(usize, usize) -> bool,
    r: &BTreeMap<(usize, usize), LaurentPoly>,
) -> BTreeMap<(usize, usize), PStatus> {
    let mut entries = BTreeMap::new();
    for w in 0..n {
        entries.insert((w, w), PStatus::Solved { p: LaurentPoly::one() });
        let mut below: Vec<usize> = (0..n).filter(|&v| v != w && leq(v, w)).collect();
        below.sort_by_key(|&v| std::cmp::Reverse(lengths[v]));
        for v in below {
            let status = match recursion_rhs(v, w, leq, r, &entries, n) {
                None => PStatus::Upstream,
                Some(f) => {
                    let l = (lengths[w] - lengths[v]) as i32;
                    let p = -&f.restrict(i32::MIN, (l - 1).div_euclid(2));
                    let residual = &f - &(&p.bar().shift(l) - &p);
                    if residual.is_zero() {
                        PStatus::Solved { p }
                    } else {
                        PStatus::PalindromyFailure { candidate: p, residual }
                    }
                }
            };
            entries.insert((v, w), status);
        }
    }
    entries
}

/// Kazhdan-Lusztig table of a finite Coxeter group, with R from the descent recursion.
pub fn classical_kl(cox: &Coxeter, max_len: usize) -> Result<PTable> {
    let elements = cox.elements_up_to(max_len);
    let lengths: Vec<i64> = elements.iter().map(|x| cox.length(x) as i64).collect();
    let n = elements.len();
    let order: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| cox.leq(&elements[i], &elements[j])).collect())
        .collect();
    let leq = |i: usize, j: usize| order[i][j];
    let mut r = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                r.insert((i, j), cox.classical_r(&elements[i], &elements[j]));
            }
        }
    }
    let entries = solve(n, &lengths, &leq, &r);
    if let Some((&(v, w), _)) = entries.iter().find(|(_, s)| s.solved().is_none()) {
        return Err(Error::NoSolution(format!(
            "P for the pair ({}, {})",
            cox.root_system().fmt_elt(&elements[v], true),
            cox.root_system().fmt_elt(&elements[w], true)
        )));
    }
    let flagged = flag(&entries, &r);
    Ok(PTable {
        elements,
        lengths,
        entries,
        r,
        flagged,
    })
}

/// Lengths relative to the bottom, checked against the Hasse grading when it is graded.
fn relative_lengths(rs: &RootSystem, iv: &Interval) -> Result<Vec<i64>> {
    let b = iv.index_of(&iv.bottom).expect("bottom lies in its interval");
    let rel: Vec<i64> = iv.lengths.iter().map(|l| l - iv.lengths[b]).collect();
    let mut rank = vec![0i64; iv.len()];
    let mut idx: Vec<usize> = (0..iv.len()).collect();
    idx.sort_by_key(|&i| iv.lengths[i]);
    for &j in &idx {
        for &(a, c) in &iv.hasse {
            if c == j {
                rank[j] = rank[j].max(rank[a] + 1);
            }
        }
    }
    let graded = iv.hasse.iter().all(|&(a, c)| rank[c] == rank[a] + 1);
    if graded {
        if let Some(i) = (0..iv.len()).find(|&i| rank[i] != rel[i]) {
            return Err(Error::ConventionMismatch(format!(
                "{}: grading gives {}, length formula gives {}",
                rs.fmt_elt(&iv.elements[i], true),
                rank[i],
                rel[i]
            )));
        }
    }
    Ok(rel)
}

/// Double affine KL table on `[v, x]` with `R` from Iwahori paths; failures are data.
pub fn double_affine_p(rs: &RootSystem, v: &WPElt, x: &WPElt, w: Window) -> Result<PTable> {
    let iv = interval(rs, v, x, w)?;
    let lengths = relative_lengths(rs, &iv)?;
    let n = iv.len();
    let leq = |i: usize, j: usize| iv.leq(i, j);
    let mut r = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                let p = if i == j {
                    LaurentPoly::one()
                } else {
                    iwahori_r(rs, &iv.elements[j], &iv.elements[i], w)?
                };
                r.insert((i, j), p);
            }
        }
    }
    let entries = solve(n, &lengths, &leq, &r);
    let flagged = flag(&entries, &r);
    Ok(PTable {
        elements: iv.elements.clone(),
        lengths,
        entries,
        r,
        flagged,
    })
}

/// Row of `T_x ↦ Σ_y bar(R_{y,x}) q^{-ℓ(y)} T_y` restricted to `y` in the ambient interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionRow {
    pub top: WPElt,
    pub entries: Vec<(WPElt, LaurentPoly)>,
    /// Always true: the full row has infinitely many terms.
    pub truncated: bool,
}

impl InvolutionRow {
    pub fn to_json(&self, rs: &RootSystem, ascii: bool) -> serde_json::Value {
        serde_json::json!({
            "top": rs.fmt_elt(&self.top, ascii),
            "label": "TRUNCATED",
            "entries": self.entries.iter().map(|(y, c)| serde_json::json!({
                "element": rs.fmt_elt(y, ascii),
                "coefficient": c,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn involution_row(rs: &RootSystem, x: &WPElt, floor: &WPElt, ceiling: &WPElt, w: Window) -> Result<InvolutionRow> {
    let iv = interval(rs, floor, ceiling, w)?;
    let xi = iv
        .index_of(x)
        .ok_or_else(|| Error::Config(format!("{} is outside the ambient interval", rs.fmt_elt(x, true))))?;
    let mut entries = Vec::new();
    for (i, y) in iv.elements.iter().enumerate() {
        if iv.leq(i, xi) {
            let r = if i == xi {
                LaurentPoly::one()
            } else {
                iwahori_r(rs, x, y, w)?
            };
            entries.push((y.clone(), r.bar().shift(-rs.length(y)? as i32)));
        }
    }
    Ok(InvolutionRow {
        top: x.clone(),
        entries,
        truncated: true,
    })
}
