//! Compositions and partitions of `n`, with the bijection `set`/`comp`,
//! refinement, reversal, complement and the statistics `z_α` and `π(α, β)`.
//!
//! Compositions are ordered by size first and then lexicographically on
//! their parts, so maps keyed by compositions iterate deterministically.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite ordered list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    /// Builds a composition, rejecting zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!("{parts:?} has a zero part")));
        }
        Ok(Composition { parts })
    }

    /// The unique composition of size and length 0.
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    /// The one-part composition `(n)`; empty when `n = 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Composition { parts: vec![n] }
        }
    }

    /// The composition `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Composition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, 0 for the empty composition.
    pub fn max_part(&self) -> usize {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    /// `set(α)`: the partial sums `α_1, α_1+α_2, ...` excluding `n`, ascending.
    pub fn set_of(&self) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.parts.len().saturating_sub(1));
        for &p in self.parts.iter().take(self.parts.len().saturating_sub(1)) {
            acc += p;
            out.push(acc);
        }
        out
    }

    /// `comp(I)`: the composition of `n` whose partial sums are `I`.
    pub fn comp_of(set: &[usize], n: usize) -> Result<Self> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if n == 0 {
            return if sorted.is_empty() {
                Ok(Self::empty())
            } else {
                Err(Error::InvalidComposition(format!("{set:?} is not a subset of [-1]")))
            };
        }
        if sorted.iter().any(|&i| i == 0 || i >= n) {
            return Err(Error::InvalidComposition(format!(
                "{set:?} is not a subset of [{}]",
                n - 1
            )));
        }
        let mut parts = Vec::with_capacity(sorted.len() + 1);
        let mut prev = 0;
        for i in sorted {
            parts.push(i - prev);
            prev = i;
        }
        parts.push(n - prev);
        Ok(Composition { parts })
    }

    /// `α ⪯ β`: `self` refines `other`, i.e. `set(other) ⊆ set(self)`.
    pub fn refines(&self, other: &Composition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let mine = self.set_of();
        Ok(other.set_of().iter().all(|i| mine.binary_search(i).is_ok()))
    }

    /// `α^r`, the parts in reverse order.
    pub fn reverse(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// `α^c`, determined by `set(α^c) = [n-1] \ set(α)`.
    pub fn complement(&self) -> Self {
        let n = self.size();
        if n == 0 {
            return Self::empty();
        }
        let mine = self.set_of();
        let rest: Vec<usize> = (1..n).filter(|i| mine.binary_search(i).is_err()).collect();
        Self::comp_of(&rest, n).expect("complement of a valid set")
    }

    /// `z_α = ∏ i^{m_i} m_i!` where `m_i` counts parts equal to `i`.
    pub fn z_stat(&self) -> u128 {
        let mut sorted = self.parts.clone();
        sorted.sort_unstable();
        let mut z: u128 = 1;
        let mut run = 0u128;
        for (k, &p) in sorted.iter().enumerate() {
            run = if k > 0 && sorted[k - 1] == p { run + 1 } else { 1 };
            z *= p as u128 * run;
        }
        z
    }

    /// `π(α) = ∏_j (α_1 + ... + α_j)`.
    pub fn pi_stat(&self) -> u128 {
        let mut acc = 0u128;
        self.parts.iter().fold(1u128, |prod, &p| {
            acc += p as u128;
            prod * acc
        })
    }

    /// `π(α, β) = ∏_i π(α^{(i)})` where `α^{(i)}` is the block of `α` summing to `β_i`.
    pub fn pi_pair(&self, coarser: &Composition) -> Result<u128> {
        Ok(self.blocks(coarser)?.iter().map(Composition::pi_stat).product())
    }

    /// Splits `self` into consecutive blocks summing to the parts of `coarser`.
    pub fn blocks(&self, coarser: &Composition) -> Result<Vec<Composition>> {
        let not_coarser = || Error::NotCoarser {
            fine: self.to_string(),
            coarse: coarser.to_string(),
        };
        if self.size() != coarser.size() {
            return Err(not_coarser());
        }
        let mut out = Vec::with_capacity(coarser.len());
        let mut it = self.parts.iter();
        for &target in &coarser.parts {
            let mut block = Vec::new();
            let mut sum = 0;
            while sum < target {
                let &p = it.next().ok_or_else(not_coarser)?;
                sum += p;
                block.push(p);
            }
            if sum != target {
                return Err(not_coarser());
            }
            out.push(Composition { parts: block });
        }
        Ok(out)
    }

    /// The weakly decreasing rearrangement of the parts.
    pub fn sort_to_partition(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// All `β ⪰ α` (coarsenings), in canonical order.
    pub fn coarsenings(&self) -> Vec<Composition> {
        let set = self.set_of();
        let n = self.size();
        let mut out: Vec<Composition> = subsets(&set)
            .into_iter()
            .map(|s| Self::comp_of(&s, n).expect("subset of a valid set"))
            .collect();
        out.sort();
        out
    }

    /// All `β ⪯ α` (refinements), in canonical order.
    pub fn refinements(&self) -> Vec<Composition> {
        let n = self.size();
        let mine = self.set_of();
        let free: Vec<usize> = (1..n).filter(|i| mine.binary_search(i).is_err()).collect();
        let mut out: Vec<Composition> = subsets(&free)
            .into_iter()
            .map(|mut s| {
                s.extend_from_slice(&mine);
                Self::comp_of(&s, n).expect("subset of [n-1]")
            })
            .collect();
        out.sort();
        out
    }

    /// Concatenation `α · β`.
    pub fn concat(&self, other: &Composition) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(1 << items.len());
    for mask in 0u64..(1u64 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &i)| i)
                .collect(),
        );
    }
    out
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `"2,3,1"` or `"(2,3,1)"`; the empty string is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Self::empty());
        }
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad composition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// A weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn to_composition(&self) -> Composition {
        Composition {
            parts: self.parts.clone(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_composition().fmt(f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(s.parse::<Composition>()?.parts)
    }
}

/// All compositions of `n` in lexicographic order on parts; `[()]` for `n = 0`.
pub fn compositions_of(n: usize) -> impl Iterator<Item = Composition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_compositions(n, &mut current, &mut out);
    out.into_iter()
}

fn fill_compositions(rest: usize, current: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if rest == 0 {
        out.push(Composition { parts: current.clone() });
        return;
    }
    for first in 1..=rest {
        current.push(first);
        fill_compositions(rest - first, current, out);
        current.pop();
    }
}

/// All partitions of `n`, in reverse lexicographic order (`(n)` first).
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, &mut current, &mut out);
    out
}

fn fill_partitions(rest: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for first in (1..=rest.min(cap)).rev() {
        current.push(first);
        fill_partitions(rest - first, first, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn set_and_comp_examples() {
        assert_eq!(c(&[1, 1, 2, 2, 1, 1, 1]).set_of(), vec![1, 2, 4, 6, 7, 8]);
        assert_eq!(c(&[3, 2, 4]).set_of(), vec![3, 5]);
        assert_eq!(c(&[7]).set_of(), Vec::<usize>::new());
        assert_eq!(Composition::comp_of(&[2, 5], 6).unwrap(), c(&[2, 3, 1]));
        assert_eq!(Composition::comp_of(&[], 4).unwrap(), c(&[4]));
        assert_eq!(Composition::comp_of(&[1, 2, 3], 4).unwrap(), c(&[1, 1, 1, 1]));
        assert!(Composition::comp_of(&[4], 4).is_err());
    }

    #[test]
    fn refinement_examples() {
        let a = c(&[2, 3, 1]);
        for b in [c(&[2, 3, 1]), c(&[5, 1]), c(&[2, 4]), c(&[6])] {
            assert!(a.refines(&b).unwrap());
        }
        assert!(!c(&[5, 1]).refines(&a).unwrap());
        assert!(a.refines(&c(&[3])).is_err());
        assert_eq!(a.coarsenings(), vec![c(&[2, 3, 1]), c(&[2, 4]), c(&[5, 1]), c(&[6])]);
    }

    #[test]
    fn reverse_and_complement_examples() {
        assert_eq!(c(&[3, 2, 4]).reverse(), c(&[4, 2, 3]));
        assert_eq!(c(&[3, 2, 4]).complement(), c(&[1, 1, 2, 2, 1, 1, 1]));
        assert_eq!(c(&[5]).complement(), Composition::ones(5));
    }

    #[test]
    fn statistics_examples() {
        assert_eq!(c(&[2, 3, 1]).z_stat(), 6);
        assert_eq!(c(&[1, 1, 1]).z_stat(), 6);
        assert_eq!(c(&[5]).z_stat(), 5);
        assert_eq!(c(&[2, 2, 1]).z_stat(), 8);
        let a = c(&[2, 3, 1]);
        assert_eq!(a.pi_pair(&a).unwrap(), 6);
        assert_eq!(a.pi_pair(&c(&[5, 1])).unwrap(), 10);
        assert_eq!(a.pi_pair(&c(&[6])).unwrap(), 60);
        assert_eq!(a.pi_pair(&c(&[2, 4])).unwrap(), 24);
        assert!(a.pi_pair(&c(&[3, 3])).is_err());
    }

    #[test]
    fn sorting_and_enumeration() {
        assert_eq!(c(&[2, 3, 1]).sort_to_partition().parts(), &[3, 2, 1]);
        assert_eq!(c(&[4]).sort_to_partition().parts(), &[4]);
        assert_eq!(c(&[1, 3, 1, 3]).sort_to_partition().parts(), &[3, 3, 1, 1]);
        assert_eq!(compositions_of(0).collect::<Vec<_>>(), vec![Composition::empty()]);
        assert_eq!(compositions_of(3).count(), 4);
        let six: Vec<_> = compositions_of(6).collect();
        assert_eq!(six.len(), 32);
        assert!(six.contains(&c(&[2, 3, 1])));
        assert!(six.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(partitions_of(6).len(), 11);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,3,1".parse::<Composition>().unwrap(), c(&[2, 3, 1]));
        assert_eq!("(2,3,1)".parse::<Composition>().unwrap(), c(&[2, 3, 1]));
        assert_eq!("".parse::<Composition>().unwrap(), Composition::empty());
        assert!("2,0".parse::<Composition>().is_err());
        assert_eq!(c(&[2, 3, 1]).to_string(), "(2,3,1)");
        assert_eq!(Composition::empty().to_string(), "()");
    }

    #[test]
    fn exhaustive_small_identities() {
        for n in 0..=8 {
            for a in compositions_of(n) {
                assert_eq!(Composition::comp_of(&a.set_of(), n).unwrap(), a);
                assert_eq!(a.complement().reverse(), a.reverse().complement());
                assert_eq!(a.pi_pair(&Composition::single(n)).unwrap(), a.pi_stat());
                let prod: u128 = a.parts().iter().map(|&p| p as u128).product();
                assert_eq!(a.pi_pair(&a).unwrap(), prod);
                assert!(Composition::ones(n).refines(&a).unwrap());
                assert!(a.refines(&Composition::single(n)).unwrap());
            }
        }
    }

    fn arb_composition() -> impl Strategy<Value = Composition> {
        prop::collection::vec(1usize..5, 0..7).prop_map(|p| Composition::new(p).unwrap())
    }

    proptest! {
        #[test]
        fn involutions(a in arb_composition()) {
            prop_assert_eq!(a.reverse().reverse(), a.clone());
            prop_assert_eq!(a.complement().complement(), a.clone());
        }

        #[test]
        fn refinement_is_a_partial_order(n in 1usize..7, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
            let all: Vec<_> = compositions_of(n).collect();
            let (a, b, c) = (&all[i % all.len()], &all[j % all.len()], &all[k % all.len()]);
            prop_assert!(a.refines(a).unwrap());
            if a.refines(b).unwrap() && b.refines(a).unwrap() {
                prop_assert_eq!(a, b);
            }
            if a.refines(b).unwrap() && b.refines(c).unwrap() {
                prop_assert!(a.refines(c).unwrap());
            }
        }

        #[test]
        fn set_comp_round_trip(n in 1usize..10, mask in 0u32..512) {
            let set: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let a = Composition::comp_of(&set, n).unwrap();
            prop_assert_eq!(a.set_of(), set);
            prop_assert_eq!(a.size(), n);
        }
    }
}
