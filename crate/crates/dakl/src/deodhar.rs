//! Distinguished subexpressions: Deodhar counts for Coxeter groups and the twisted
//! local counts that appear as factors of R-polynomials.
//!
//! Weights: up-cross `1`, up-stay `q - 1`, down-cross `q`; down-stays are not distinguished.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::affine::{Coweight, DaRoot, RootSystem, WPElt};
use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::tangent::{Flavor, LocalSystem};
use crate::window::Window;

/// Sum over distinguished subexpressions of `word` of the weight, where step `j` goes up
/// iff `t·π_{j-1}(α_j)` is positive, keeping those with `accept(t·π_L)`.
pub fn deodhar_local(
    rs: &RootSystem,
    ls: &LocalSystem,
    word: &[DaRoot],
    twist: &WPElt,
    accept: &dyn Fn(&WPElt) -> bool,
) -> LaurentPoly {
    let refl: Vec<WPElt> = word.iter().map(|g| ls.reflection(rs, g)).collect();
    let mut total = LaurentPoly::zero();
    let mut stack = vec![(0usize, twist.clone(), 0i32, 0u32)];
    while let Some((j, tp, downs, stays)) = stack.pop() {
        if j == word.len() {
            if accept(&tp) {
                total += &(&LaurentPoly::q_pow(downs) * &LaurentPoly::q_minus_one().pow(stays));
            }
            continue;
        }
        let crossed = rs.wp_mul(&tp, &refl[j]);
        if ls.is_positive(&ls.act(rs, &tp, &word[j])) {
            stack.push((j + 1, crossed, downs, stays));
            stack.push((j + 1, tp, downs, stays + 1));
        } else {
            stack.push((j + 1, crossed, downs + 1, stays));
        }
    }
    total
}

/// A Coxeter group realized inside `W^v` by a subset of the simple reflections.
#[derive(Debug, Clone)]
pub struct Coxeter {
    rs: RootSystem,
    ls: LocalSystem,
    indices: Vec<usize>,
}

impl Coxeter {
    fn with_indices(cartan: CartanData, indices: Vec<usize>) -> Self {
        let rs = RootSystem::new(cartan);
        let simples = indices.iter().map(|&i| DaRoot::new(rs.simple_root(i), 0)).collect();
        let ls = LocalSystem {
            flavor: Flavor::Vectorial,
            point: Coweight::zero(rs.rank()),
            simples,
            window: Window::new(6, 6, 64).expect("valid window"),
        };
        Self { rs, ls, indices }
    }

    /// The finite Weyl group, generated by `s_1, ..., s_n`.
    pub fn finite(cartan: CartanData) -> Self {
        let n = cartan.rank();
        Self::with_indices(cartan, (1..=n).collect())
    }

    /// The affine Weyl group, generated by `s_0, ..., s_n`.
    pub fn affine(cartan: CartanData) -> Self {
        let n = cartan.rank();
        Self::with_indices(cartan, (0..=n).collect())
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn local(&self) -> &LocalSystem {
        &self.ls
    }

    /// Generator labels, as simple-reflection indices.
    pub fn generators(&self) -> &[usize] {
        &self.indices
    }

    fn root(&self, i: usize) -> DaRoot {
        DaRoot::new(self.rs.simple_root(i), 0)
    }

    pub fn identity(&self) -> WPElt {
        self.rs.wp_identity()
    }

    pub fn elt(&self, word: &[usize]) -> WPElt {
        self.rs.vectorial(&self.rs.weyl_word(word))
    }

    pub fn mul(&self, a: &WPElt, b: &WPElt) -> WPElt {
        self.rs.wp_mul(a, b)
    }

    pub fn inv(&self, a: &WPElt) -> WPElt {
        self.rs.wp_inv(a)
    }

    pub fn length(&self, x: &WPElt) -> usize {
        self.reduced_word(x).len()
    }

    pub fn has_right_descent(&self, x: &WPElt, i: usize) -> bool {
        !self.rs.weyl_act_root(&x.w, &self.rs.simple_root(i)).is_positive()
    }

    pub fn has_left_descent(&self, x: &WPElt, i: usize) -> bool {
        self.has_right_descent(&self.inv(x), i)
    }

    /// Reduced word peeling the smallest right descent first.
    pub fn reduced_word(&self, x: &WPElt) -> Vec<usize> {
        let mut cur = x.clone();
        let mut rev = Vec::new();
        while let Some(&i) = self.indices.iter().find(|&&i| self.has_right_descent(&cur, i)) {
            cur = self.mul(&cur, &self.elt(&[i]));
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// Every reduced word of `x`.
    pub fn reduced_words(&self, x: &WPElt) -> Vec<Vec<usize>> {
        if self.rs.wp_is_identity(x) {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for &i in &self.indices {
            if self.has_right_descent(x, i) {
                for mut w in self.reduced_words(&self.mul(x, &self.elt(&[i]))) {
                    w.push(i);
                    out.push(w);
                }
            }
        }
        out.sort();
        out
    }

    /// Bruhat order by the lifting property.
    pub fn leq(&self, v: &WPElt, w: &WPElt) -> bool {
        let mut v = v.clone();
        let mut w = w.clone();
        loop {
            let Some(&i) = self.indices.iter().find(|&&i| self.has_right_descent(&w, i)) else {
                return self.rs.wp_is_identity(&v);
            };
            let s = self.elt(&[i]);
            if self.has_right_descent(&v, i) {
                v = self.mul(&v, &s);
            }
            w = self.mul(&w, &s);
        }
    }

    /// All elements of length at most `max_len`, sorted by length then canonically.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<WPElt> {
        let mut seen = BTreeSet::from([self.identity()]);
        let mut queue = VecDeque::from([(self.identity(), 0usize)]);
        while let Some((x, l)) = queue.pop_front() {
            if l == max_len {
                continue;
            }
            for &i in &self.indices {
                if !self.has_right_descent(&x, i) {
                    let y = self.mul(&x, &self.elt(&[i]));
                    if seen.insert(y.clone()) {
                        queue.push_back((y, l + 1));
                    }
                }
            }
        }
        let mut out: Vec<WPElt> = seen.into_iter().collect();
        out.sort_by_key(|x| self.length(x));
        out
    }

    /// `{v : v ≤ w}`.
    pub fn lower_interval(&self, w: &WPElt) -> Vec<WPElt> {
        self.elements_up_to(self.length(w))
            .into_iter()
            .filter(|v| self.leq(v, w))
            .collect()
    }

    /// Classical R-polynomial by the left-descent recursion.
    pub fn classical_r(&self, v: &WPElt, w: &WPElt) -> LaurentPoly {
        let mut memo = BTreeMap::new();
        self.classical_r_memo(v, w, &mut memo)
    }

    fn classical_r_memo(
        &self,
        v: &WPElt,
        w: &WPElt,
        memo: &mut BTreeMap<(WPElt, WPElt), LaurentPoly>,
    ) -> LaurentPoly {
        if !self.leq(v, w) {
            return LaurentPoly::zero();
        }
        if v == w {
            return LaurentPoly::one();
        }
        let key = (v.clone(), w.clone());
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let i = *self
            .indices
            .iter()
            .find(|&&i| self.has_left_descent(w, i))
            .expect("w ≠ e has a left descent");
        let s = self.elt(&[i]);
        let sw = self.mul(&s, w);
        let sv = self.mul(&s, v);
        let out = if self.has_left_descent(v, i) {
            self.classical_r_memo(&sv, &sw, memo)
        } else {
            &(&LaurentPoly::q_minus_one() * &self.classical_r_memo(v, &sw, memo))
                + &(&LaurentPoly::q() * &self.classical_r_memo(&sv, &sw, memo))
        };
        memo.insert(key, out.clone());
        out
    }

    /// Deodhar count for the word `word` (assumed reduced) and target `v`.
    pub fn deodhar_count(&self, word: &[usize], v: &WPElt) -> LaurentPoly {
        let roots: Vec<DaRoot> = word.iter().map(|&i| self.root(i)).collect();
        deodhar_local(&self.rs, &self.ls, &roots, &self.identity(), &|g| g == v)
    }
}

/// Reduced word of `x` in the local simples, as roots.
fn local_word(rs: &RootSystem, ls: &LocalSystem, x: &WPElt) -> Result<Vec<DaRoot>> {
    Ok(ls.realize(rs, x)?.word)
}

/// `|I_∞ x₀ P_{[0,ε)}/P_{[0,ε)}| = q^d` with `d` the length of `x₀` modulo the stabilizer
/// of the germ `[0, ε·dir)`.
pub fn cell_count(rs: &RootSystem, ls: &LocalSystem, x0: &WPElt, dir: &Coweight) -> Result<LaurentPoly> {
    let d = ls.parabolic_length(rs, x0, dir)?;
    Ok(LaurentPoly::q_pow(d as i32))
}

/// Interior factor at a fold: `a = x̄_{k-1}`, `y = x_{k-1}⁻¹x_k`, germ direction `dir`.
/// The count runs over a reduced word of the minimal representative of `a·y` modulo the
/// germ stabilizer `W₊`, twisted by `a⁻¹`, keeping endpoints in `W₊`. Nonemptiness must
/// match `a ≤ a·y` in `W_p/W₊`, and the degree must equal the quotient length of `a·y`.
pub fn twisted_count(
    rs: &RootSystem,
    ls: &LocalSystem,
    a: &WPElt,
    y: &WPElt,
    dir: &Coweight,
) -> Result<LaurentPoly> {
    let gens = ls.germ_simples(rs, dir);
    let ay = rs.wp_mul(a, y);
    let m = ls.min_rep(rs, &ay, &gens)?;
    let word = local_word(rs, ls, &m)?;
    let accept = |g: &WPElt| {
        ls.min_rep(rs, g, &gens)
            .map(|r| rs.wp_is_identity(&r))
            .unwrap_or(false)
    };
    let count = deodhar_local(rs, ls, &word, &rs.wp_inv(a), &accept);
    let nonempty = ls.parabolic_leq(rs, a, &ay, dir)?;
    let deg = ls.parabolic_length(rs, &ay, dir)?;
    let consistent = if nonempty {
        count.degree() == Some(deg as i32) && count.leading_coeff() == Some(1)
    } else {
        count.is_zero()
    };
    if !consistent {
        return Err(Error::ConventionMismatch(format!(
            "twisted count {count} for a = {}, y = {}: expected {}",
            rs.fmt_elt(a, true),
            rs.fmt_elt(y, true),
            if nonempty {
                format!("a monic polynomial of degree {deg}")
            } else {
                "zero".to_string()
            }
        )));
    }
    Ok(count)
}

/// Iwahori start factor in `μ₊`-coordinates, where `μ = u(μ₊)`: subexpressions of a reduced
/// word of the minimal representative of `x₀` modulo `W_{μ₊}`, keeping endpoints `g` with
/// `g(μ₊) = μ`.
pub fn start_factor_iwahori(
    rs: &RootSystem,
    ls0: &LocalSystem,
    x0: &WPElt,
    mu: &Coweight,
) -> Result<LaurentPoly> {
    let (plus, _) = rs.dominantize(mu)?;
    let gens = ls0.germ_simples(rs, &plus);
    let m = ls0.min_rep(rs, x0, &gens)?;
    let word = local_word(rs, ls0, &m)?;
    let accept = |g: &WPElt| rs.weyl_act_coweight(&g.w, &plus) == *mu;
    Ok(deodhar_local(rs, ls0, &word, &rs.wp_identity(), &accept))
}

/// Iwahori terminal factor at `t = 1`, in `μ₊`-coordinates with `g = π^{μ₊}u⁻¹w` the shape:
/// `a = x̄_N` at `μ₊`, `y = x_N⁻¹x_{N+1}` and `c = (x̄ of g⁻¹ at μ₊)⁻¹`; subexpressions of a
/// reduced word of `c` twisted by `a`, keeping endpoints equal to `a·y·c`.
pub fn final_factor_iwahori(
    rs: &RootSystem,
    ls1: &LocalSystem,
    xn: &WPElt,
    x_next: &WPElt,
    shape: &WPElt,
) -> Result<LaurentPoly> {
    let (plus, u) = rs.dominantize(&shape.mu)?;
    let g = WPElt {
        mu: plus,
        w: rs.weyl_mul(&rs.weyl_inv(&u), &shape.w),
    };
    let a = ls1.project_overline(rs, xn)?.elt;
    let y = rs.wp_mul(&rs.wp_inv(xn), x_next);
    let c = rs.wp_inv(&ls1.project_overline(rs, &rs.wp_inv(&g))?.elt);
    let word = local_word(rs, ls1, &c)?;
    let target = rs.wp_mul(&rs.wp_mul(&a, &y), &c);
    Ok(deodhar_local(rs, ls1, &word, &a, &|h| *h == target))
}
