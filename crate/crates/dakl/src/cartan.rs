//! Finite simply-laced Cartan data underlying an untwisted affine root system.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Q;

/// Finite Cartan matrix of type ADE together with the data of its untwisted affinization.
///
/// Roots and coroots share coordinates (the matrix is symmetric), so every
/// finite root is stored as an integer vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    label: String,
    matrix: Vec<Vec<i64>>,
    inverse: Vec<Vec<Q>>,
    positive_roots: Vec<Vec<i64>>,
    theta: Vec<i64>,
    h_dual: i64,
    two_rho: Vec<i64>,
}

/// JSON configuration: `{"type": "A", "rank": 2}` or `{"matrix": [[2,-1],[-1,2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CartanConfig {
    Typed {
        #[serde(rename = "type")]
        kind: String,
        rank: usize,
    },
    Matrix {
        matrix: Vec<Vec<i64>>,
    },
}

impl CartanData {
    pub fn from_config(cfg: &CartanConfig) -> Result<Self> {
        match cfg {
            CartanConfig::Typed { kind, rank } => Self::of_type(kind, *rank),
            CartanConfig::Matrix { matrix } => Self::from_matrix(matrix.clone(), "custom".into()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: CartanConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("cartan config: {e}")))?;
        Self::from_config(&cfg)
    }

    pub fn of_type(kind: &str, rank: usize) -> Result<Self> {
        let label = format!("{kind}{rank}");
        let mut edges = Vec::new();
        match kind {
            "A" if rank >= 1 => {
                edges.extend((1..rank).map(|i| (i - 1, i)));
            }
            "D" if rank >= 4 => {
                edges.extend((1..rank - 1).map(|i| (i - 1, i)));
                edges.push((rank - 3, rank - 1));
            }
            // Bourbaki numbering: 1-3-4-5-..., with 2 attached to 4.
            "E" if (6..=8).contains(&rank) => {
                edges.push((0, 2));
                edges.push((1, 3));
                edges.extend((2..rank - 1).map(|i| (i, i + 1)));
            }
            _ => return Err(Error::NotAde(format!("unsupported type {label}"))),
        }
        let mut m = vec![vec![0i64; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in edges {
            m[i][j] = -1;
            m[j][i] = -1;
        }
        Self::from_matrix(m, label)
    }

    /// Affine `SL_2`, the smallest example.
    pub fn a1() -> Self {
        Self::of_type("A", 1).expect("A1 is ADE")
    }

    pub fn from_matrix(matrix: Vec<Vec<i64>>, label: String) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::NotAde("matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(Error::NotAde(format!("diagonal entry ({i},{i}) is not 2")));
            }
            for j in 0..n {
                if i != j && !(matrix[i][j] == 0 || matrix[i][j] == -1) {
                    return Err(Error::NotAde(format!("entry ({i},{j}) not in {{0,-1}}")));
                }
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotAde(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        let inverse = invert(&matrix)
            .ok_or_else(|| Error::NotAde("matrix is singular (affine or hyperbolic)".into()))?;
        if !is_positive_definite(&matrix) {
            return Err(Error::NotAde("matrix is not positive definite".into()));
        }
        let positive_roots = enumerate_positive_roots(&matrix);
        let theta = positive_roots
            .iter()
            .max_by_key(|r| (r.iter().sum::<i64>(), (*r).clone()))
            .cloned()
            .expect("rank >= 1");
        let mut sum = vec![0i64; n];
        for r in &positive_roots {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        let two_rho = mat_vec(&matrix, &sum);
        let h_dual = 1 + theta.iter().sum::<i64>();
        let data = Self {
            label,
            matrix,
            inverse,
            positive_roots,
            theta,
            h_dual,
            two_rho,
        };
        debug_assert!(data.two_rho.iter().all(|&x| x == 2));
        Ok(data)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[Vec<Q>] {
        &self.inverse
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// All finite roots, positive ones first.
    pub fn roots(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect()))
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    /// Marks `a_0, ..., a_n`; equal to comarks in simply-laced type.
    pub fn marks(&self) -> Vec<i64> {
        std::iter::once(1).chain(self.theta.iter().copied()).collect()
    }

    pub fn h_dual(&self) -> i64 {
        self.h_dual
    }

    /// `2 rho_fin` as a weight: its pairing with `alpha_i^vee` is the i-th entry.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn simple(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|r| r == v || *r == neg)
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == v)
    }

    /// Symmetric bilinear form on the integral root lattice.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let cy = mat_vec(&self.matrix, y);
        x.iter().zip(&cy).map(|(a, b)| a * b).sum()
    }

    /// Form with a rational second argument.
    pub fn form_q(&self, x: &[i64], y: &[Q]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                acc += Q::from(x[i] * self.matrix[i][j]) * y[j];
            }
        }
        acc
    }
}

pub(crate) fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn enumerate_positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    for v in &frontier {
        seen.insert(v.clone());
    }
    // Closing under simple reflections that keep the root positive yields every positive root.
    while let Some(r) = frontier.pop() {
        let cr = mat_vec(c, &r);
        for i in 0..n {
            let mut s = r.clone();
            s[i] -= cr[i];
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && seen.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    out
}

fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from(x)).collect();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    // Sylvester's criterion on leading principal minors.
    (1..=m.len()).all(|k| {
        let sub: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&sub) > Q::zero()
    })
}

fn determinant(m: &[Vec<i64>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(pivot_row) {
                *x -= f * y;
            }
        }
    }
    det
}
