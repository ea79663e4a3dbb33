//! Double affine Bruhat order on `W_T`: edge tests, windowed intervals, covers,
//! decreasing reflection chains and the parabolic quotient by `W^v`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::affine::{AffineRoot, DaRoot, RootSystem, WPElt};
use crate::error::{Error, Result};
use crate::window::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// `lower < upper` with `upper = s_root · lower` (left) or `upper = lower · s_root` (right).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BruhatEdge {
    pub lower: usize,
    pub upper: usize,
    pub root: DaRoot,
    pub side: Side,
}

/// A finite poset of `W_T` elements in canonical order, with its cover relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub bottom: WPElt,
    pub top: WPElt,
    /// Sorted by `(level, finite part, delta, Weyl pair)`.
    pub elements: Vec<WPElt>,
    pub lengths: Vec<i64>,
    /// Cover relations `(lower, upper)`, sorted.
    pub hasse: Vec<(usize, usize)>,
    /// Every left Bruhat edge between members; empty for quotient posets.
    pub bruhat: Vec<BruhatEdge>,
    /// `less[i][j]` iff `elements[i] < elements[j]`.
    less: Vec<Vec<bool>>,
}

impl Interval {
    fn build(
        bottom: WPElt,
        top: WPElt,
        elements: Vec<WPElt>,
        lengths: Vec<i64>,
        relations: &[(usize, usize)],
        bruhat: Vec<BruhatEdge>,
    ) -> Self {
        let n = elements.len();
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut hasse = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]) {
                    hasse.push((i, j));
                }
            }
        }
        Self {
            bottom,
            top,
            elements,
            lengths,
            hasse,
            bruhat,
            less,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &WPElt) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.less[i][j]
    }

    /// Every cover raises the length by exactly one.
    pub fn is_graded(&self) -> bool {
        self.hasse.iter().all(|&(a, b)| self.lengths[b] - self.lengths[a] == 1)
    }

    /// Lengths of all maximal chains from bottom to top, as a sorted set.
    pub fn maximal_chain_lengths(&self) -> BTreeSet<usize> {
        let (Some(b), Some(t)) = (self.index_of(&self.bottom), self.index_of(&self.top)) else {
            return BTreeSet::new();
        };
        let mut memo: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        self.chain_lengths_from(b, t, &mut memo)
    }

    fn chain_lengths_from(
        &self,
        i: usize,
        t: usize,
        memo: &mut BTreeMap<usize, BTreeSet<usize>>,
    ) -> BTreeSet<usize> {
        if i == t {
            return BTreeSet::from([0]);
        }
        if let Some(s) = memo.get(&i) {
            return s.clone();
        }
        let mut out = BTreeSet::new();
        for &(a, b) in &self.hasse {
            if a == i {
                for l in self.chain_lengths_from(b, t, memo) {
                    out.insert(l + 1);
                }
            }
        }
        memo.insert(i, out.clone());
        out
    }

    /// Deterministic DOT digraph, edges drawn from lower to upper.
    pub fn to_dot(&self, rs: &RootSystem, ascii: bool) -> String {
        let mut s = String::from("digraph interval {\n  rankdir=BT;\n");
        for (i, x) in self.elements.iter().enumerate() {
            let label = rs.fmt_elt(x, ascii).replace('"', "\\\"");
            s.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
        }
        for &(a, b) in &self.hasse {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// `{"elements": [...], "edges": [[i, j], ...], "lengths": [...]}`.
    pub fn to_json(&self, rs: &RootSystem, ascii: bool) -> serde_json::Value {
        serde_json::json!({
            "elements": self.elements.iter().map(|x| rs.fmt_elt(x, ascii)).collect::<Vec<_>>(),
            "edges": self.hasse.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "lengths": self.lengths,
        })
    }
}

/// A strictly decreasing sequence `elements[0] > elements[1] > ...` with
/// `elements[k+1] = s_{roots[k]} · elements[k]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Chain {
    pub elements: Vec<WPElt>,
    pub roots: Vec<DaRoot>,
}

/// The positive root `γ` with `g = s_γ`, if `g` is a reflection.
pub fn reflection_root(rs: &RootSystem, g: &WPElt) -> Option<DaRoot> {
    let n = rs.rank();
    let fin = &g.w.fin;
    let col = (0..n).find_map(|j| {
        let c: Vec<i64> = (0..n).map(|i| i64::from(i == j) - fin[i * n + j]).collect();
        c.iter().any(|&x| x != 0).then_some(c)
    })?;
    let g0 = col.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
    let beta: Vec<i64> = col.iter().map(|x| x / g0).collect();
    if !rs.cartan().is_root(&beta) {
        return None;
    }
    let i = beta.iter().position(|&x| x != 0)?;
    if g.w.q[i] % beta[i] != 0 {
        return None;
    }
    let d = g.w.q[i] / beta[i];
    let coeff = g.mu.fin[i] / crate::Q::from(beta[i]);
    if !coeff.is_integer() {
        return None;
    }
    let gamma = DaRoot::new(AffineRoot::new(beta, d), coeff.to_integer());
    (rs.da_reflection(&gamma) == *g).then(|| gamma.normalized())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether the edge through `γ` at `x` goes up: `x⁻¹(γ) > 0` on the left, `x(γ) > 0` on the right.
pub fn edge_is_up(rs: &RootSystem, x: &WPElt, gamma: &DaRoot, side: Side) -> bool {
    debug_assert!(gamma.is_positive());
    match side {
        Side::Left => rs.wp_act_root(&rs.wp_inv(x), gamma).is_positive(),
        Side::Right => rs.wp_act_root(x, gamma).is_positive(),
    }
}

/// Neighbours `s_γ x` across left edges in the given direction, for positive `γ` in the window.
fn left_neighbours(rs: &RootSystem, x: &WPElt, dir: Direction, roots: &[DaRoot]) -> Vec<(WPElt, DaRoot)> {
    let xinv = rs.wp_inv(x);
    roots
        .iter()
        .filter(|g| rs.wp_act_root(&xinv, g).is_positive() == (dir == Direction::Up))
        .map(|g| (rs.wp_mul(&rs.da_reflection(g), x), g.clone()))
        .collect()
}

/// Breadth-first closure along left edges, keeping elements whose length lies in `[lo, hi]`.
fn closure(
    rs: &RootSystem,
    start: &WPElt,
    dir: Direction,
    lo: i64,
    hi: i64,
    allowed: Option<&BTreeSet<WPElt>>,
    roots: &[DaRoot],
    w: Window,
) -> Result<BTreeMap<WPElt, i64>> {
    let mut seen = BTreeMap::new();
    seen.insert(start.clone(), rs.length(start)?);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    while let Some((x, depth)) = queue.pop_front() {
        if depth >= w.h {
            return Err(Error::StabilizationFailure {
                what: "Bruhat closure depth".into(),
                window: w,
            });
        }
        for (y, _) in left_neighbours(rs, &x, dir, roots) {
            if seen.contains_key(&y) || allowed.is_some_and(|a| !a.contains(&y)) {
                continue;
            }
            if y.mu.level <= crate::Q::from(0) {
                continue;
            }
            let l = rs.length(&y)?;
            if l < lo || l > hi {
                continue;
            }
            seen.insert(y.clone(), l);
            queue.push_back((y, depth + 1));
        }
    }
    Ok(seen)
}

fn interval_at(rs: &RootSystem, v: &WPElt, x: &WPElt, w: Window) -> Result<Interval> {
    let roots = rs.positive_da_roots(w.d, w.m);
    let (lv, lx) = (rs.length(v)?, rs.length(x)?);
    if lv > lx {
        return Err(Error::Empty(format!("ℓ(bottom) = {lv} > ℓ(top) = {lx}")));
    }
    let up = closure(rs, v, Direction::Up, lv, lx, None, &roots, w)?;
    let up_set: BTreeSet<WPElt> = up.keys().cloned().collect();
    if !up_set.contains(x) {
        return Err(Error::Empty(format!(
            "{} is not below {}",
            rs.fmt_elt(v, true),
            rs.fmt_elt(x, true)
        )));
    }
    let down = closure(rs, x, Direction::Down, lv, lx, Some(&up_set), &roots, w)?;
    let elements: Vec<WPElt> = down.keys().cloned().collect();
    let lengths: Vec<i64> = elements.iter().map(|e| down[e]).collect();
    let mut bruhat = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        let ainv = rs.wp_inv(a);
        for (j, b) in elements.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(g) = reflection_root(rs, &rs.wp_mul(b, &ainv)) {
                if edge_is_up(rs, a, &g, Side::Left) {
                    if lengths[j] <= lengths[i] {
                        return Err(Error::ConventionMismatch(format!(
                            "Bruhat edge {} < {} does not raise length",
                            rs.fmt_elt(a, true),
                            rs.fmt_elt(b, true)
                        )));
                    }
                    bruhat.push(BruhatEdge {
                        lower: i,
                        upper: j,
                        root: g,
                        side: Side::Left,
                    });
                }
            }
        }
    }
    let rel: Vec<(usize, usize)> = bruhat.iter().map(|e| (e.lower, e.upper)).collect();
    Ok(Interval::build(v.clone(), x.clone(), elements, lengths, &rel, bruhat))
}

/// All `z` with `v ≤ z ≤ x`, certified by recomputation at the doubled window.
pub fn interval(rs: &RootSystem, v: &WPElt, x: &WPElt, w: Window) -> Result<Interval> {
    w.stable("interval", |w| interval_at(rs, v, x, w))
}

fn covers_at(rs: &RootSystem, x: &WPElt, dir: Direction, w: Window) -> Result<Vec<WPElt>> {
    let roots = rs.positive_da_roots(w.d, w.m);
    let lx = rs.length(x)?;
    let target = if dir == Direction::Up { lx + 1 } else { lx - 1 };
    let mut out = BTreeSet::new();
    for (y, _) in left_neighbours(rs, x, dir, &roots) {
        if y.mu.level > crate::Q::from(0) && rs.length(&y)? == target {
            out.insert(y);
        }
    }
    Ok(out.into_iter().collect())
}

/// Elements covering (or covered by) `x`, i.e. Bruhat neighbours at relative length one.
pub fn covers(rs: &RootSystem, x: &WPElt, dir: Direction, w: Window) -> Result<Vec<WPElt>> {
    w.stable("covers", |w| covers_at(rs, x, dir, w))
}

fn chains_in(iv: &Interval, top: usize, accept: &dyn Fn(&WPElt) -> bool) -> Vec<Chain> {
    let mut down: Vec<Vec<(usize, &DaRoot)>> = vec![Vec::new(); iv.len()];
    for e in &iv.bruhat {
        down[e.upper].push((e.lower, &e.root));
    }
    let mut out = Vec::new();
    let mut stack = vec![(vec![top], Vec::<DaRoot>::new())];
    while let Some((path, roots)) = stack.pop() {
        let cur = *path.last().unwrap();
        if accept(&iv.elements[cur]) {
            out.push(Chain {
                elements: path.iter().map(|&i| iv.elements[i].clone()).collect(),
                roots: roots.clone(),
            });
        }
        for &(next, root) in &down[cur] {
            let mut p = path.clone();
            p.push(next);
            let mut r = roots.clone();
            r.push(root.clone());
            stack.push((p, r));
        }
    }
    out.sort();
    out
}

/// Every strictly decreasing chain of left Bruhat edges from `top` inside `[floor, top]`
/// ending at an element satisfying `accept`.
pub fn decreasing_chains(
    rs: &RootSystem,
    top: &WPElt,
    floor: &WPElt,
    accept: &dyn Fn(&WPElt) -> bool,
    w: Window,
) -> Result<Vec<Chain>> {
    w.stable("decreasing chains", |w| {
        let iv = interval_at(rs, floor, top, w)?;
        let t = iv.index_of(top).expect("top lies in its interval");
        Ok(chains_in(&iv, t, accept))
    })
}

/// Interval of minimal representatives modulo `W^v` between two minimal representatives,
/// ordered by restriction of the Bruhat order.
pub fn parabolic_quotient_interval(rs: &RootSystem, v: &WPElt, x: &WPElt, w: Window) -> Result<Interval> {
    let full = interval(rs, v, x, w)?;
    let keep: Vec<usize> = (0..full.len())
        .filter(|&i| {
            rs.min_coset_rep_mod_weyl(&full.elements[i])
                .map(|m| m == full.elements[i])
                .unwrap_or(false)
        })
        .collect();
    let elements: Vec<WPElt> = keep.iter().map(|&i| full.elements[i].clone()).collect();
    let lengths: Vec<i64> = keep.iter().map(|&i| full.lengths[i]).collect();
    let mut rel = Vec::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            if full.less(i, j) {
                rel.push((a, b));
            }
        }
    }
    let bottom = rs.min_coset_rep_mod_weyl(v)?;
    let top = rs.min_coset_rep_mod_weyl(x)?;
    Ok(Interval::build(bottom, top, elements, lengths, &rel, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_root_recovers_every_window_root() {
        let rs = RootSystem::a1();
        for g in rs.positive_da_roots(3, 3) {
            assert_eq!(reflection_root(&rs, &rs.da_reflection(&g)), Some(g));
        }
        assert_eq!(reflection_root(&rs, &rs.wp_identity()), None);
        assert_eq!(reflection_root(&rs, &rs.element(&rs.alpha(1), &[])), None);
        assert_eq!(reflection_root(&rs, &rs.element(&rs.alpha(1), &[1, 0])), None);
    }

    #[test]
    fn edge_test_examples() {
        let rs = RootSystem::a1();
        let x = rs.translation(&rs.lambda0());
        let a0 = DaRoot::new(rs.simple_root(0), 0);
        assert!(edge_is_up(&rs, &x, &a0, Side::Right));
        let y = rs.wp_mul(&x, &rs.da_reflection(&a0));
        assert!(!edge_is_up(&rs, &y, &a0, Side::Right));
    }
}
