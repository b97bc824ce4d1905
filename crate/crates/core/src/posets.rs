//! Labeled posets on `[n]`: linear extensions, `Σ_R`/`Σ_L`, edge splitting,
//! lower subposets, standardization, disjoint union, the involutions `bar`
//! and `star`, regularity and the interval-to-poset correspondence.
//!
//! Relations are stored transitively closed as bitmasks, so `n ≤ 32`.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutations::{Permutation, Side};

/// Largest supported number of elements.
pub const MAX_POSET: usize = 32;

/// A strict partial order on `[n]`, transitively closed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PosetRecord", into = "PosetRecord")]
pub struct LabeledPoset {
    n: usize,
    /// `above[i]` has bit `j` set iff `i+1 ≺ j+1`.
    above: Vec<u32>,
}

/// Serialized form: the size and the cover pairs `[u, v]` meaning `u ⋖ v`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetRecord {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
}

impl TryFrom<PosetRecord> for LabeledPoset {
    type Error = Error;

    fn try_from(r: PosetRecord) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = r.covers.iter().map(|c| (c[0], c[1])).collect();
        LabeledPoset::from_relations(r.n, &pairs)
    }
}

impl From<LabeledPoset> for PosetRecord {
    fn from(p: LabeledPoset) -> Self {
        PosetRecord {
            n: p.n,
            covers: p.covers().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl LabeledPoset {
    /// The poset generated by the given relations `u ≺ v` (covers or not).
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_POSET {
            return Err(Error::TooLarge {
                size: n,
                max: MAX_POSET,
            });
        }
        let mut above = vec![0u32; n];
        for &(u, v) in pairs {
            if u == 0 || v == 0 || u > n || v > n || u == v {
                return Err(Error::InvalidPoset(format!("bad relation ({u},{v}) on [{n}]")));
            }
            above[u - 1] |= 1 << (v - 1);
        }
        Self::close(n, above)
    }

    /// Alias of [`LabeledPoset::from_relations`] for cover lists.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        Self::from_relations(n, covers)
    }

    fn close(n: usize, mut above: Vec<u32>) -> Result<Self> {
        for k in 0..n {
            for i in 0..n {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        if (0..n).any(|i| above[i] >> i & 1 == 1) {
            return Err(Error::InvalidPoset("relations contain a cycle".into()));
        }
        Ok(LabeledPoset { n, above })
    }

    /// Builds from closed bitmasks without checking; callers guarantee closure.
    fn from_closed(n: usize, above: Vec<u32>) -> Self {
        LabeledPoset { n, above }
    }

    pub fn antichain(n: usize) -> Self {
        LabeledPoset { n, above: vec![0; n] }
    }

    /// The natural chain `1 ≺ 2 ≺ ... ≺ n`.
    pub fn chain(n: usize) -> Self {
        let full = mask_all(n);
        LabeledPoset {
            n,
            above: (0..n).map(|i| full & !mask_all(i + 1)).collect(),
        }
    }

    /// The chain whose linear order is the word `order`.
    pub fn chain_of(order: &[usize]) -> Result<Self> {
        let pairs: Vec<_> = order.windows(2).map(|w| (w[0], w[1])).collect();
        Self::from_relations(order.len(), &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `u ≺ v` (strict).
    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.above[u - 1] >> (v - 1) & 1 == 1
    }

    /// `u ⪯ v`.
    pub fn le(&self, u: usize, v: usize) -> bool {
        u == v || self.lt(u, v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.le(u, v) || self.lt(v, u)
    }

    /// Bitmask (bit `j-1` for element `j`) of the elements strictly above `u`.
    pub fn above_mask(&self, u: usize) -> u32 {
        self.above[u - 1]
    }

    /// Bitmask of the elements strictly below `u`.
    pub fn below_mask(&self, u: usize) -> u32 {
        (0..self.n)
            .filter(|&i| self.above[i] >> (u - 1) & 1 == 1)
            .fold(0, |m, i| m | 1 << i)
    }

    /// All strict relations `(u, v)` with `u ≺ v`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in 1..=self.n {
                if self.lt(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Cover relations `u ⋖ v`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(u, v)| self.above[u - 1] & self.below_mask(v) == 0)
            .collect()
    }

    /// Pairs `u < v` (as labels) that are incomparable.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                if !self.comparable(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Linear extensions as words `E_R = i_1 i_2 ... i_n`, in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let below: Vec<u32> = (1..=self.n).map(|u| self.below_mask(u)).collect();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(self.n);
        extend_rec(self.n, &below, 0, &mut word, &mut out);
        out
    }

    /// Number of linear extensions, by dynamic programming over down-sets.
    pub fn count_linear_extensions(&self) -> u128 {
        let below: Vec<u32> = (1..=self.n).map(|u| self.below_mask(u)).collect();
        let mut memo = std::collections::HashMap::new();
        count_rec(self.n, &below, 0, &mut memo)
    }

    /// `Σ_R(P)`, sorted.
    pub fn sigma_r(&self) -> Vec<Permutation> {
        self.linear_extensions()
            .into_iter()
            .map(|w| Permutation::new(w).expect("linear extension is a permutation"))
            .collect()
    }

    /// `Σ_L(P) = {E_R^{-1}}`, sorted.
    pub fn sigma_l(&self) -> Vec<Permutation> {
        let mut out: Vec<_> = self.sigma_r().iter().map(Permutation::inverse).collect();
        out.sort();
        out
    }

    pub fn sigma(&self, side: Side) -> Vec<Permutation> {
        match side {
            Side::Left => self.sigma_l(),
            Side::Right => self.sigma_r(),
        }
    }

    /// Adds `u ≺ v` and closes; requires `u, v` incomparable.
    pub fn with_relation(&self, u: usize, v: usize) -> Result<Self> {
        if self.comparable(u, v) {
            return Err(Error::Comparable(u, v));
        }
        let mut above = self.above.clone();
        above[u - 1] |= 1 << (v - 1);
        Self::close(self.n, above)
    }

    /// `(P_(v,u), P_(u,v))`, where `P_(u,v)` adds the relation `u ≺ v`.
    pub fn split(&self, u: usize, v: usize) -> Result<(Self, Self)> {
        Ok((self.with_relation(v, u)?, self.with_relation(u, v)?))
    }

    /// Whether the element set `mask` is downward closed.
    pub fn is_down_set(&self, mask: u32) -> bool {
        (1..=self.n)
            .filter(|&u| mask >> (u - 1) & 1 == 1)
            .all(|u| self.below_mask(u) & !mask == 0)
    }

    /// All lower subposets of size `m`, each as a sorted element list.
    pub fn lower_subposets(&self, m: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = down_sets(self)
            .into_iter()
            .filter(|mask| mask.count_ones() as usize == m)
            .map(mask_elements)
            .collect();
        out.sort();
        out
    }

    /// `st(Q)`: the subposet on `subset`, relabeled by rank within `subset`.
    pub fn standardize(&self, subset: &[usize]) -> Self {
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        let k = elems.len();
        let mut above = vec![0u32; k];
        for (a, &u) in elems.iter().enumerate() {
            for (b, &v) in elems.iter().enumerate() {
                if self.lt(u, v) {
                    above[a] |= 1 << b;
                }
            }
        }
        Self::from_closed(k, above)
    }

    /// The complement `[n] \ subset`, sorted.
    pub fn complement_of(&self, subset: &[usize]) -> Vec<usize> {
        (1..=self.n).filter(|u| !subset.contains(u)).collect()
    }

    /// `P1 ⊔ P2` with `P2` shifted by `|P1|`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let m = self.n;
        let mut above = self.above.clone();
        above.extend(other.above.iter().map(|&a| a << m));
        Self::from_closed(m + other.n, above)
    }

    /// `bar(P)`: `u ⪯ v` iff `n+1-u ⪯_P n+1-v`.
    pub fn bar(&self) -> Self {
        let n = self.n;
        let mut above = vec![0u32; n];
        for (u, v) in self.relations() {
            above[n - u] |= 1 << (n - v);
        }
        Self::from_closed(n, above)
    }

    /// `P*`: the dual order.
    pub fn star(&self) -> Self {
        let mut above = vec![0u32; self.n];
        for (u, v) in self.relations() {
            above[v - 1] |= 1 << (u - 1);
        }
        Self::from_closed(self.n, above)
    }

    /// Whether no triple `(u, v, w)` has `v ≺ w`, `u` incomparable to both,
    /// and `w < u < v` or `v < u < w`.
    pub fn is_regular(&self) -> bool {
        for v in 1..=self.n {
            for w in 1..=self.n {
                if !self.lt(v, w) {
                    continue;
                }
                let (lo, hi) = (v.min(w), v.max(w));
                for u in lo + 1..hi {
                    if !self.comparable(u, v) && !self.comparable(u, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The poset whose `Σ_R` is `[σ, ρ]_R`, read off the endpoints.
    pub fn from_interval(bottom: &Permutation, top: &Permutation) -> Result<Self> {
        if !bottom.leq_right(top) {
            return Err(Error::NotBelow {
                side: Side::Right.to_string(),
                bottom: bottom.to_string(),
                top: top.to_string(),
            });
        }
        let n = bottom.n();
        let inv_top = top.inversions();
        let inv_bottom = bottom.inversions();
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let ordered = if i < j {
                    !inv_top.contains(&(j, i))
                } else if i > j {
                    inv_bottom.contains(&(i, j))
                } else {
                    false
                };
                if ordered {
                    pairs.push((i, j));
                }
            }
        }
        Self::from_relations(n, &pairs)
    }

    /// Whether `u ⋖ v` is a strict (bold) cover, i.e. `u > v` as labels.
    pub fn is_strict_cover(u: usize, v: usize) -> bool {
        u > v
    }
}

fn mask_all(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn mask_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn extend_rec(n: usize, below: &[u32], placed: u32, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if word.len() == n {
        out.push(word.clone());
        return;
    }
    for u in 0..n {
        if placed >> u & 1 == 0 && below[u] & !placed == 0 {
            word.push(u + 1);
            extend_rec(n, below, placed | 1 << u, word, out);
            word.pop();
        }
    }
}

fn count_rec(n: usize, below: &[u32], placed: u32, memo: &mut std::collections::HashMap<u32, u128>) -> u128 {
    if placed == mask_all(n) {
        return 1;
    }
    if let Some(&c) = memo.get(&placed) {
        return c;
    }
    let mut total = 0;
    for u in 0..n {
        if placed >> u & 1 == 0 && below[u] & !placed == 0 {
            total += count_rec(n, below, placed | 1 << u, memo);
        }
    }
    memo.insert(placed, total);
    total
}

/// All down-sets of `p` as bitmasks.
fn down_sets(p: &LabeledPoset) -> Vec<u32> {
    let below: Vec<u32> = (1..=p.n).map(|u| p.below_mask(u)).collect();
    let mut seen = BTreeSet::from([0u32]);
    let mut frontier = vec![0u32];
    while let Some(mask) = frontier.pop() {
        for (u, &b) in below.iter().enumerate() {
            if mask >> u & 1 == 0 && b & !mask == 0 {
                let next = mask | 1 << u;
                if seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Every labeled poset on `[n]`, built by adjoining element `n` to each poset
/// on `[n-1]` with a compatible down-set and up-set. Counts: 1, 1, 3, 19, 219, 4231.
pub fn all_posets(n: usize) -> Vec<LabeledPoset> {
    let mut level = vec![LabeledPoset::antichain(0)];
    for k in 0..n {
        let mut next = Vec::new();
        for q in &level {
            let downs = down_sets(q);
            let ups: Vec<u32> = downs.iter().map(|d| mask_all(k) & !d).collect();
            for &d in &downs {
                for &u in &ups {
                    if d & u != 0 {
                        continue;
                    }
                    let compatible = mask_elements(d).iter().all(|&x| u & !q.above[x - 1] == 0);
                    if !compatible {
                        continue;
                    }
                    let mut above = q.above.clone();
                    for x in mask_elements(d) {
                        above[x - 1] |= 1 << k;
                    }
                    above.push(u);
                    next.push(LabeledPoset::from_closed(k + 1, above));
                }
            }
        }
        level = next;
    }
    level.sort();
    level
}

/// [`all_posets`] backed by a JSON cache file when `cache` is given.
pub fn poset_catalog(n: usize, cache: Option<&Path>) -> Result<Vec<LabeledPoset>> {
    let Some(path) = cache else {
        return Ok(all_posets(n));
    };
    let file = path.join(format!("posets_{n}.json"));
    if let Ok(text) = fs::read_to_string(&file) {
        if let Ok(list) = serde_json::from_str::<Vec<LabeledPoset>>(&text) {
            if list.iter().all(|p| p.n() == n) {
                return Ok(list);
            }
        }
    }
    let list = all_posets(n);
    fs::create_dir_all(path).map_err(|e| Error::Io(e.to_string()))?;
    let text = serde_json::to_string(&list).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(&file, text).map_err(|e| Error::Io(e.to_string()))?;
    Ok(list)
}

/// Cache directory named by the `HECKEPOSET_CACHE` environment variable.
pub fn cache_dir_from_env() -> Option<std::path::PathBuf> {
    std::env::var_os("HECKEPOSET_CACHE").map(Into::into)
}

/// A random labeled poset: a random linear order whose pairs are kept as
/// relations with probability `density`, then closed.
pub fn random_poset<R: Rng>(n: usize, density: f64, rng: &mut R) -> LabeledPoset {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[a], order[b]));
            }
        }
    }
    LabeledPoset::from_relations(n, &pairs).expect("relations follow a linear order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutations::{all_permutations, interval};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn running() -> LabeledPoset {
        LabeledPoset::from_covers(5, &[(5, 1), (1, 3), (1, 4), (2, 4)]).unwrap()
    }

    fn perms(list: &[&str]) -> Vec<Permutation> {
        let mut v: Vec<Permutation> = list.iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn running_example_extensions() {
        let p = running();
        assert_eq!(
            p.sigma_r(),
            perms(&["25134", "52134", "25143", "52143", "51234", "51324", "51243"])
        );
        assert_eq!(
            p.sigma_l(),
            perms(&["31452", "32451", "31542", "32541", "23451", "24351", "23541"])
        );
        assert_eq!(p.count_linear_extensions(), 7);
        assert_eq!(LabeledPoset::chain(5).sigma_r(), vec![Permutation::identity(5)]);
        assert_eq!(p.covers(), vec![(1, 3), (1, 4), (2, 4), (5, 1)]);
        assert!(!p.is_regular());
    }

    #[test]
    fn split_running_example() {
        let (p21, p12) = running().split(1, 2).unwrap();
        assert_eq!(p12.sigma_r(), perms(&["51234", "51324", "51243"]));
        assert_eq!(p21.sigma_r(), perms(&["25134", "52134", "25143", "52143"]));
        let (a, b) = LabeledPoset::antichain(2).split(1, 2).unwrap();
        assert_eq!(a.sigma_r(), perms(&["21"]));
        assert_eq!(b.sigma_r(), perms(&["12"]));
        assert!(running().split(5, 3).is_err());
    }

    #[test]
    fn lower_subposets_of_running_example() {
        let p = running();
        assert_eq!(p.lower_subposets(3), vec![vec![1, 2, 5], vec![1, 3, 5]]);
        assert_eq!(p.lower_subposets(0), vec![Vec::<usize>::new()]);
        assert_eq!(p.lower_subposets(5), vec![vec![1, 2, 3, 4, 5]]);
        let q = p.standardize(&[1, 3, 5]);
        assert_eq!(q.covers(), vec![(1, 2), (3, 1)]);
    }

    #[test]
    fn disjoint_union_and_involutions() {
        let u = LabeledPoset::chain(2).disjoint_union(&LabeledPoset::chain(1));
        assert_eq!(u.relations(), vec![(1, 2)]);
        let e = LabeledPoset::antichain(0);
        assert_eq!(e.disjoint_union(&running()), running());
        assert_eq!(
            LabeledPoset::chain(4).star(),
            LabeledPoset::chain_of(&[4, 3, 2, 1]).unwrap()
        );
        let pb = running().bar();
        assert_eq!(pb.covers(), vec![(1, 5), (4, 2), (5, 2), (5, 3)]);
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
        let four = all_posets(4);
        let distinct: BTreeSet<_> = four.iter().collect();
        assert_eq!(distinct.len(), 219);
    }

    #[test]
    fn distinct_posets_have_distinct_extensions() {
        let sets: BTreeSet<Vec<Permutation>> = all_posets(4).iter().map(|p| p.sigma_r()).collect();
        assert_eq!(sets.len(), 219);
    }

    #[test]
    fn split_is_a_disjoint_union_exhaustively() {
        for p in all_posets(4) {
            for (u, v) in p.incomparable_pairs() {
                let (pvu, puv) = p.split(u, v).unwrap();
                let mut joined = puv.sigma_r();
                joined.extend(pvu.sigma_r());
                joined.sort();
                assert_eq!(joined, p.sigma_r());
                for g in pvu.sigma_r() {
                    assert!(g.inversions().contains(&(v.max(u), v.min(u))) == (v > u));
                }
            }
        }
    }

    #[test]
    fn interval_round_trip_and_regularity() {
        let all = all_permutations(4);
        for s in &all {
            for r in all.iter().filter(|r| s.leq_right(r)) {
                let p = LabeledPoset::from_interval(s, r).unwrap();
                assert_eq!(p.sigma_r(), interval(Side::Right, s, r).unwrap().elements);
                assert!(p.is_regular());
            }
        }
        for p in all_posets(4) {
            let sig = p.sigma_r();
            let lo = sig.iter().min_by_key(|g| g.length()).unwrap();
            let hi = sig.iter().max_by_key(|g| g.length()).unwrap();
            let is_interval = lo.leq_right(hi) && interval(Side::Right, lo, hi).unwrap().elements == sig;
            assert_eq!(is_interval, p.is_regular(), "{:?}", p.covers());
        }
        let n = 4;
        let full = LabeledPoset::from_interval(&Permutation::identity(n), &Permutation::longest(n)).unwrap();
        assert_eq!(full, LabeledPoset::antichain(n));
        let id = Permutation::identity(n);
        assert_eq!(LabeledPoset::from_interval(&id, &id).unwrap(), LabeledPoset::chain(n));
    }

    #[test]
    fn non_regular_example_exists_on_four() {
        let p = all_posets(4).into_iter().find(|p| !p.is_regular()).unwrap();
        assert!(p.n() == 4 && !p.is_regular());
    }

    #[test]
    fn catalog_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("heckeposet-test-{}", std::process::id()));
        let first = poset_catalog(3, Some(&dir)).unwrap();
        let second = poset_catalog(3, Some(&dir)).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.len(), 19);
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn json_round_trip() {
        let text = serde_json::to_string(&running()).unwrap();
        assert_eq!(text, r#"{"n":5,"covers":[[1,3],[1,4],[2,4],[5,1]]}"#);
        let back: LabeledPoset = serde_json::from_str(&text).unwrap();
        assert_eq!(back, running());
        assert!(serde_json::from_str::<LabeledPoset>(r#"{"n":2,"covers":[[1,2],[2,1]]}"#).is_err());
    }

    proptest! {
        #[test]
        fn involutions_commute(seed in any::<u64>(), n in 0usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_poset(n, 0.4, &mut rng);
            prop_assert_eq!(p.bar().bar(), p.clone());
            prop_assert_eq!(p.star().star(), p.clone());
            prop_assert_eq!(p.bar().star(), p.star().bar());
            prop_assert_eq!(p.sigma_r().len() as u128, p.count_linear_extensions());
            let l: Vec<Permutation> = p.sigma_r().iter().map(Permutation::inverse).collect();
            let mut l = l;
            l.sort();
            prop_assert_eq!(l, p.sigma_l());
        }

        #[test]
        fn standardize_preserves_relations(seed in any::<u64>(), n in 1usize..7, mask in any::<u32>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_poset(n, 0.5, &mut rng);
            let subset: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let q = p.standardize(&subset);
            let inside = p.relations().iter().filter(|(u, v)| subset.contains(u) && subset.contains(v)).count();
            prop_assert_eq!(q.relations().len(), inside);
            for (a, &u) in subset.iter().enumerate() {
                for (b, &v) in subset.iter().enumerate() {
                    prop_assert_eq!(q.lt(a + 1, b + 1), p.lt(u, v));
                }
            }
        }

        #[test]
        fn union_extension_count_is_a_shuffle_count(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_poset(3, 0.5, &mut rng);
            let b = random_poset(3, 0.5, &mut rng);
            let u = a.disjoint_union(&b);
            prop_assert_eq!(u.sigma_r().len(), a.sigma_r().len() * b.sigma_r().len() * 20);
        }
    }
}
