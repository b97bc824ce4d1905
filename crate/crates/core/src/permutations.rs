//! The symmetric group `S_n` in one-line notation: lengths, descents,
//! inversion sets, the left and right weak Bruhat orders and their intervals.
//!
//! Products compose as functions, `(σρ)(i) = σ(ρ(i))`. Hence `γ s_i` swaps
//! the entries in positions `i, i+1` and `s_i γ` swaps the values `i, i+1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compositions::Composition;
use crate::error::{Error, Result};

/// Largest `n` supported; inversion sets are stored as `u128` bitmasks.
pub const MAX_N: usize = 16;

/// Which side a weak order, interval or module lives on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "L" => Ok(Side::Left),
            "right" | "R" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("unknown side {s:?}"))),
        }
    }
}

/// A permutation of `[n]` stored as its one-line word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

fn pair_index(larger: usize, smaller: usize) -> u32 {
    ((larger - 1) * (larger - 2) / 2 + (smaller - 1)) as u32
}

impl Permutation {
    /// Builds a permutation from a one-line word over `1..=n`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n > MAX_N {
            return Err(Error::TooLarge { size: n, max: MAX_N });
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            word: word.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// The longest element `w0 = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    /// The simple transposition `s_i` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Self {
        Self::identity(n).mul_right_simple(i)
    }

    /// The longest element of the parabolic subgroup generated by
    /// `{s_i : i ∈ set(α)}`; it reverses each block of `α^c`.
    pub fn w0_of(alpha: &Composition) -> Self {
        let mut word = Vec::with_capacity(alpha.size());
        let mut start = 0u8;
        for &b in alpha.complement().parts() {
            let b = b as u8;
            word.extend((start + 1..=start + b).rev());
            start += b;
        }
        Permutation { word }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (pos, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = pos as u8 + 1;
        }
        Permutation { word: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n(), "composing permutations of different sizes");
        Permutation {
            word: other.word.iter().map(|&v| self.word[v as usize - 1]).collect(),
        }
    }

    /// `γ s_i`: swaps positions `i` and `i+1`.
    pub fn mul_right_simple(&self, i: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }

    /// `s_i γ`: swaps the values `i` and `i+1`.
    pub fn mul_left_simple(&self, i: usize) -> Self {
        let (a, b) = (i as u8, i as u8 + 1);
        Permutation {
            word: self
                .word
                .iter()
                .map(|&v| {
                    if v == a {
                        b
                    } else if v == b {
                        a
                    } else {
                        v
                    }
                })
                .collect(),
        }
    }

    /// Bitmask of the inversion set, indexed by value pairs.
    pub fn inversion_mask(&self) -> u128 {
        let mut mask = 0u128;
        for (k, &a) in self.word.iter().enumerate() {
            for &b in &self.word[k + 1..] {
                if a > b {
                    mask |= 1u128 << pair_index(a as usize, b as usize);
                }
            }
        }
        mask
    }

    /// Value pairs `(σ(i), σ(j))` with `i < j` and `σ(i) > σ(j)`.
    pub fn inversions(&self) -> BTreeSet<(usize, usize)> {
        self.pairs(|a, b| a > b)
    }

    /// Value pairs `(σ(i), σ(j))` with `i < j` and `σ(i) < σ(j)`.
    pub fn coinversions(&self) -> BTreeSet<(usize, usize)> {
        self.pairs(|a, b| a < b)
    }

    fn pairs(&self, keep: impl Fn(u8, u8) -> bool) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (k, &a) in self.word.iter().enumerate() {
            for &b in &self.word[k + 1..] {
                if keep(a, b) {
                    out.insert((a as usize, b as usize));
                }
            }
        }
        out
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        self.inversion_mask().count_ones() as usize
    }

    /// Whether `i ∈ Des_R(σ)`, i.e. `σ(i) > σ(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.word[i - 1] > self.word[i]
    }

    /// Whether `i ∈ Des_L(σ)`, i.e. `i+1` appears before `i`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let (mut pi, mut pj) = (0, 0);
        for (k, &v) in self.word.iter().enumerate() {
            if v as usize == i {
                pi = k;
            } else if v as usize == i + 1 {
                pj = k;
            }
        }
        pj < pi
    }

    pub fn has_descent(&self, side: Side, i: usize) -> bool {
        match side {
            Side::Left => self.has_left_descent(i),
            Side::Right => self.has_right_descent(i),
        }
    }

    pub fn des_right(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.has_right_descent(i)).collect()
    }

    pub fn des_left(&self) -> Vec<usize> {
        self.inverse().des_right()
    }

    pub fn descents(&self, side: Side) -> Vec<usize> {
        match side {
            Side::Left => self.des_left(),
            Side::Right => self.des_right(),
        }
    }

    /// `comp(Des(σ))` on the given side.
    pub fn descent_composition(&self, side: Side) -> Composition {
        Composition::comp_of(&self.descents(side), self.n()).expect("descents lie in [n-1]")
    }

    /// `σ ⪯_R ρ` iff `Inv(σ) ⊆ Inv(ρ)`.
    pub fn leq_right(&self, other: &Permutation) -> bool {
        self.n() == other.n() && self.inversion_mask() & !other.inversion_mask() == 0
    }

    /// `σ ⪯_L ρ` iff `σ^{-1} ⪯_R ρ^{-1}`.
    pub fn leq_left(&self, other: &Permutation) -> bool {
        self.inverse().leq_right(&other.inverse())
    }

    pub fn leq(&self, side: Side, other: &Permutation) -> bool {
        match side {
            Side::Left => self.leq_left(other),
            Side::Right => self.leq_right(other),
        }
    }

    /// `f(γ) = w0 γ^{-1}`.
    pub fn f_map(&self) -> Self {
        Self::longest(self.n()).compose(&self.inverse())
    }

    /// `γ s_i` for `Side::Right`, `s_i γ` for `Side::Left`.
    pub fn mul_simple(&self, side: Side, i: usize) -> Self {
        match side {
            Side::Left => self.mul_left_simple(i),
            Side::Right => self.mul_right_simple(i),
        }
    }
}

impl fmt::Display for Permutation {
    /// Digits for `n ≤ 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"25134"`, `"2 5 1 3 4"` or `"8,4,1,5,3,9,7,6,2,10"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad permutation {s:?}"));
        let word: Vec<usize> = if s.contains(',') || s.contains(char::is_whitespace) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

/// All of `S_n` in lexicographic order of one-line words.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut word: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation { word: word.clone() });
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| word[k] < word[k + 1]) else {
            return out;
        };
        let l = (k + 1..n).rev().find(|&l| word[k] < word[l]).expect("successor exists");
        word.swap(k, l);
        word[k + 1..].reverse();
    }
}

/// A weak Bruhat interval with its elements listed in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeakInterval {
    pub side: Side,
    pub bottom: Permutation,
    pub top: Permutation,
    pub elements: Vec<Permutation>,
}

impl WeakInterval {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

fn check_below(side: Side, bottom: &Permutation, top: &Permutation) -> Result<()> {
    if bottom.leq(side, top) {
        Ok(())
    } else {
        Err(Error::NotBelow {
            side: side.to_string(),
            bottom: bottom.to_string(),
            top: top.to_string(),
        })
    }
}

/// `[σ, ρ]` on the given side, by breadth-first search over covers.
pub fn interval(side: Side, bottom: &Permutation, top: &Permutation) -> Result<WeakInterval> {
    check_below(side, bottom, top)?;
    let mut seen = BTreeSet::from([bottom.clone()]);
    let mut queue = VecDeque::from([bottom.clone()]);
    while let Some(g) = queue.pop_front() {
        for i in 1..g.n() {
            if g.has_descent(side, i) {
                continue;
            }
            let h = g.mul_simple(side, i);
            if h.leq(side, top) && !seen.contains(&h) {
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(WeakInterval {
        side,
        bottom: bottom.clone(),
        top: top.clone(),
        elements: seen.into_iter().collect(),
    })
}

/// `[σ, ρ]` by filtering all of `S_n`; a reference implementation for small `n`.
pub fn interval_by_filter(side: Side, bottom: &Permutation, top: &Permutation) -> Result<WeakInterval> {
    check_below(side, bottom, top)?;
    let elements = all_permutations(bottom.n())
        .into_iter()
        .filter(|g| bottom.leq(side, g) && g.leq(side, top))
        .collect();
    Ok(WeakInterval {
        side,
        bottom: bottom.clone(),
        top: top.clone(),
        elements,
    })
}
