//! P-partitions, enriched and starred P-partitions, and the expansion of
//! `K_P` in the normalized power sums `Ψ_β / z_β` through signed counts of
//! starred P-partitions.
//!
//! Values of an enriched P-partition are nonzero integers ordered
//! `-1 < 1 < -2 < 2 < ...`; the cover conditions are checked on covering
//! relations only.

use std::collections::BTreeMap;
use std::fmt;

use crate::compositions::{compositions_of, Composition};
use crate::error::{Error, Result};
use crate::permutations::Side;
use crate::posets::LabeledPoset;
use crate::qsym::{add_monomial, rat, Basis, Polynomial, QsymElement};

/// Default bound on `n` for exponential enumerations.
pub const DEFAULT_MAX_N: usize = 9;

/// Position of a signed value in the order `-1 < 1 < -2 < 2 < ...`.
fn code(v: i64) -> i64 {
    if v < 0 {
        -2 * v - 1
    } else {
        2 * v
    }
}

/// Whether `f` (indexed by element `1..=n` at `f[x-1]`) is an enriched P-partition.
pub fn is_enriched(p: &LabeledPoset, f: &[i64]) -> bool {
    f.len() == p.n() && enriched_on(&p.covers(), f)
}

fn enriched_on(covers: &[(usize, usize)], f: &[i64]) -> bool {
    if f.contains(&0) {
        return false;
    }
    let k = f.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    if !(1..=k).all(|l| f.iter().any(|v| v.unsigned_abs() == l)) {
        return false;
    }
    covers.iter().all(|&(x, y)| cover_ok(x, y, f[x - 1], f[y - 1]))
}

fn cover_ok(x: usize, y: usize, fx: i64, fy: i64) -> bool {
    if code(fx) > code(fy) {
        return false;
    }
    if fx.abs() == fy.abs() {
        if x < y && fy < 0 {
            return false;
        }
        if x > y && fx > 0 {
            return false;
        }
    }
    true
}

/// A value of a starred P-partition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Starred {
    Neg(usize),
    Star(usize),
    Pos(usize),
}

impl Starred {
    pub fn level(self) -> usize {
        match self {
            Starred::Neg(l) | Starred::Star(l) | Starred::Pos(l) => l,
        }
    }
}

impl fmt::Display for Starred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Starred::Neg(l) => write!(f, "-{l}"),
            Starred::Star(l) => write!(f, "{l}*"),
            Starred::Pos(l) => write!(f, "{l}"),
        }
    }
}

/// A starred P-partition `f*`, with one enriched P-partition that stars to it.
/// Several enriched partitions can share the same `f*`; they are one object.
#[derive(Clone, Debug)]
pub struct StarredPPartition {
    pub values: Vec<Starred>,
    pub enriched: Vec<i64>,
}

impl PartialEq for StarredPPartition {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for StarredPPartition {}

impl PartialOrd for StarredPPartition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StarredPPartition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.values.cmp(&other.values)
    }
}

impl StarredPPartition {
    /// Stars the ambiguous elements of an enriched P-partition.
    pub fn from_enriched(p: &LabeledPoset, f: &[i64]) -> Result<Self> {
        if f.len() != p.n() {
            return Err(Error::SizeMismatch {
                left: f.len(),
                right: p.n(),
            });
        }
        Self::from_enriched_on(&p.covers(), f)
    }

    fn from_enriched_on(covers: &[(usize, usize)], f: &[i64]) -> Result<Self> {
        if !enriched_on(covers, f) {
            return Err(Error::InvalidPoset(format!("{f:?} is not an enriched P-partition")));
        }
        let mut g = f.to_vec();
        let values = (0..f.len())
            .map(|x| {
                let level = f[x].unsigned_abs() as usize;
                g[x] = -g[x];
                let ambiguous = enriched_on(covers, &g);
                g[x] = -g[x];
                if ambiguous {
                    Starred::Star(level)
                } else if f[x] < 0 {
                    Starred::Neg(level)
                } else {
                    Starred::Pos(level)
                }
            })
            .collect();
        Ok(StarredPPartition {
            enriched: f.to_vec(),
            values,
        })
    }

    fn levels(&self) -> usize {
        self.values.iter().map(|v| v.level()).max().unwrap_or(0)
    }

    /// `amb(f*)`: starred elements per level.
    pub fn amb(&self) -> Vec<usize> {
        let mut out = vec![0; self.levels()];
        for v in &self.values {
            if let Starred::Star(l) = v {
                out[l - 1] += 1;
            }
        }
        out
    }

    /// `sign(f*) = (-1)^{#unstarred negative values}`.
    pub fn sign(&self) -> i64 {
        let negs = self.values.iter().filter(|v| matches!(v, Starred::Neg(_))).count();
        if negs % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `wt(f*)`: elements per level.
    pub fn wt(&self) -> Composition {
        let mut out = vec![0; self.levels()];
        for v in &self.values {
            out[v.level() - 1] += 1;
        }
        Composition::new(out).expect("levels form [k]")
    }
}

impl fmt::Display for StarredPPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Whether flipping the sign at `x` keeps `f` enriched.
pub fn is_ambiguous(p: &LabeledPoset, f: &[i64], x: usize) -> bool {
    let mut g = f.to_vec();
    g[x - 1] = -g[x - 1];
    is_enriched(p, &g)
}

/// `pt_P(β)`: starred P-partitions with one starred element per level and weight `β`.
pub fn enumerate_starred(p: &LabeledPoset, beta: &Composition) -> Result<Vec<StarredPPartition>> {
    enumerate_starred_bounded(p, beta, DEFAULT_MAX_N)
}

/// [`enumerate_starred`] with an explicit bound on `n`.
pub fn enumerate_starred_bounded(p: &LabeledPoset, beta: &Composition, max_n: usize) -> Result<Vec<StarredPPartition>> {
    let n = p.n();
    if n > max_n {
        return Err(Error::TooLarge { size: n, max: max_n });
    }
    if beta.size() != n {
        return Err(Error::SizeMismatch {
            left: beta.size(),
            right: n,
        });
    }
    let order = p.linear_extensions().into_iter().next().unwrap_or_default();
    let covers = p.covers();
    let lower: Vec<Vec<usize>> = (1..=n)
        .map(|y| covers.iter().filter(|c| c.1 == y).map(|c| c.0).collect())
        .collect();
    let mut state = Search {
        covers: &covers,
        order: &order,
        lower: &lower,
        capacity: beta.parts().to_vec(),
        f: vec![0; n],
        out: Vec::new(),
    };
    state.run(0);
    let mut out = state.out;
    out.sort();
    out.dedup();
    Ok(out)
}

struct Search<'a> {
    covers: &'a [(usize, usize)],
    order: &'a [usize],
    lower: &'a [Vec<usize>],
    capacity: Vec<usize>,
    f: Vec<i64>,
    out: Vec<StarredPPartition>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if depth == self.order.len() {
            if self.capacity.iter().all(|&c| c == 0) {
                let s = StarredPPartition::from_enriched_on(self.covers, &self.f).expect("valid by construction");
                if s.amb().iter().all(|&a| a == 1) {
                    self.out.push(s);
                }
            }
            return;
        }
        let y = self.order[depth];
        for level in 1..=self.capacity.len() {
            if self.capacity[level - 1] == 0 {
                continue;
            }
            for v in [-(level as i64), level as i64] {
                if self.lower[y - 1].iter().all(|&x| cover_ok(x, y, self.f[x - 1], v)) {
                    self.f[y - 1] = v;
                    self.capacity[level - 1] -= 1;
                    self.run(depth + 1);
                    self.capacity[level - 1] += 1;
                    self.f[y - 1] = 0;
                }
            }
        }
    }
}

/// Coefficients of `Ψ_β / z_β` in `K_P`: signed counts of `pt_P(β)`; zeros omitted.
pub fn kp_in_psi_via_starred(p: &LabeledPoset) -> Result<BTreeMap<Composition, i64>> {
    let mut out = BTreeMap::new();
    for beta in compositions_of(p.n()) {
        let total: i64 = enumerate_starred(p, &beta)?.iter().map(StarredPPartition::sign).sum();
        if total != 0 {
            out.insert(beta, total);
        }
    }
    Ok(out)
}

/// `K_P = Σ_{σ ∈ Σ_R(P)} F_{comp(Des_R(σ))}`.
pub fn kp_fundamental(p: &LabeledPoset) -> QsymElement {
    let mut out = QsymElement::zero(Basis::F);
    for word in p.sigma_r() {
        out.add_term(word.descent_composition(Side::Right), rat(1));
    }
    out
}

/// Whether `f: [n] → ℕ` is a P-partition: weakly increasing along
/// relations and strictly increasing along relations `i ≺ j` with `i > j`.
pub fn is_p_partition(p: &LabeledPoset, f: &[usize]) -> bool {
    p.relations()
        .iter()
        .all(|&(i, j)| f[i - 1] < f[j - 1] || (f[i - 1] == f[j - 1] && i < j))
}

/// `Σ_f ∏ x_{f(i)}` over P-partitions with values in `[k]`, by brute force.
pub fn kp_monomial_truncation(p: &LabeledPoset, k: usize) -> Polynomial {
    let n = p.n();
    let mut out = Polynomial::new();
    if k == 0 {
        if n == 0 {
            add_monomial(&mut out, Vec::new(), rat(1));
        }
        return out;
    }
    let mut f = vec![1usize; n];
    loop {
        if is_p_partition(p, &f) {
            let mut exps = vec![0; k];
            for &v in &f {
                exps[v - 1] += 1;
            }
            add_monomial(&mut out, exps, rat(1));
        }
        let Some(pos) = (0..n).find(|&i| f[i] < k) else {
            return out;
        };
        for v in f.iter_mut().take(pos) {
            *v = 1;
        }
        f[pos] += 1;
    }
}
