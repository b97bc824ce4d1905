//! Modules over the 0-Hecke algebra `H_n(0)` with combinatorial bases:
//! poset modules, weak Bruhat interval modules, relation checks,
//! characteristics, restriction, the twists `φ`, `θ`, `χ` and the duality
//! functor from left to right modules.
//!
//! Generators `π_i` satisfy `π_i² = π_i`; generators `π̄_i = π_i - 1`
//! satisfy `π̄_i² = -π̄_i`. The characteristic sends a one-dimensional module
//! on which `π̄_i` acts by `-1` exactly for `i ∈ set(α)` to `F_α`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::permutations::{interval, Permutation, Side};
use crate::posets::LabeledPoset;
use crate::qsym::{rat, Basis, QsymElement};

/// Which family of generators an action table describes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Generator {
    /// `π_i`, with `π_i² = π_i`.
    Pi,
    /// `π̄_i`, with `π̄_i² = -π̄_i`.
    PiBar,
}

/// The image of one basis element under one generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Action {
    Zero,
    /// `b ↦ b`.
    Fix,
    /// `b ↦ -b`.
    Negate,
    /// `b ↦` the basis element with the given index.
    Send(usize),
}

/// Interval module flavor: `Plain` uses `π_i`, `Bar` uses `π̄_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Flavor {
    Plain,
    Bar,
}

/// An `H_n(0)`-module whose generators send basis elements to `±` a basis
/// element or to zero, stored as an action table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CombinatorialModule {
    pub side: Side,
    pub generator: Generator,
    pub n: usize,
    pub basis: Vec<Permutation>,
    /// `table[i-1][b]` is the action of generator `i` on basis element `b`.
    pub table: Vec<Vec<Action>>,
}

/// Sparse vectors over the basis.
type Vector = BTreeMap<usize, i64>;

fn add_entry(v: &mut Vector, k: usize, c: i64) {
    if c == 0 {
        return;
    }
    let e = v.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        v.remove(&k);
    }
}

impl CombinatorialModule {
    /// The module on `basis` where a generator fixes (`Pi`) or negates
    /// (`PiBar`) elements with a descent at `i`, and otherwise moves to
    /// `γ s_i` (right) or `s_i γ` (left) when that stays in the basis.
    pub fn from_basis(side: Side, generator: Generator, n: usize, mut basis: Vec<Permutation>) -> Self {
        basis.sort();
        basis.dedup();
        let on_descent = match generator {
            Generator::Pi => Action::Fix,
            Generator::PiBar => Action::Negate,
        };
        let table = (1..n)
            .map(|i| {
                basis
                    .iter()
                    .map(|g| {
                        if g.has_descent(side, i) {
                            on_descent
                        } else {
                            match basis.binary_search(&g.mul_simple(side, i)) {
                                Ok(k) => Action::Send(k),
                                Err(_) => Action::Zero,
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        CombinatorialModule {
            side,
            generator,
            n,
            basis,
            table,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.basis.binary_search(g).ok()
    }

    /// Applies generator `i` to a sparse vector.
    fn apply(&self, i: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&b, &c) in v {
            match self.table[i - 1][b] {
                Action::Zero => {}
                Action::Fix => add_entry(&mut out, b, c),
                Action::Negate => add_entry(&mut out, b, -c),
                Action::Send(k) => add_entry(&mut out, k, c),
            }
        }
        out
    }

    fn apply_word(&self, word: &[usize], b: usize) -> Vector {
        word.iter().fold(Vector::from([(b, 1)]), |v, &i| self.apply(i, &v))
    }

    /// Checks the quadratic, braid and far-commutation relations on every basis element.
    pub fn check_relations(&self) -> bool {
        let n = self.n;
        for b in 0..self.dim() {
            for i in 1..n {
                let once = self.apply_word(&[i], b);
                let twice = self.apply_word(&[i, i], b);
                let expected = match self.generator {
                    Generator::Pi => once,
                    Generator::PiBar => once.into_iter().map(|(k, c)| (k, -c)).collect(),
                };
                if twice != expected {
                    return false;
                }
                if i + 1 < n && self.apply_word(&[i, i + 1, i], b) != self.apply_word(&[i + 1, i, i + 1], b) {
                    return false;
                }
                for j in i + 2..n {
                    if self.apply_word(&[i, j], b) != self.apply_word(&[j, i], b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Dense matrices of `π̄_i`, `A[b][c]` the coefficient of `c` in the image of `b`.
    pub fn pibar_matrices(&self) -> Vec<Matrix> {
        let d = self.dim();
        (1..self.n)
            .map(|i| {
                let mut m = Matrix::zeros(d);
                for b in 0..d {
                    match self.table[i - 1][b] {
                        Action::Zero => {}
                        Action::Fix => m.add(b, b, 1),
                        Action::Negate => m.add(b, b, -1),
                        Action::Send(k) => m.add(b, k, 1),
                    }
                    if self.generator == Generator::Pi {
                        m.add(b, b, -1);
                    }
                }
                m
            })
            .collect()
    }

    /// The same module as a matrix module over `π̄_i`.
    pub fn to_matrix_module(&self) -> MatrixModule {
        MatrixModule {
            side: self.side,
            n: self.n,
            labels: self.basis.iter().map(|g| g.to_string()).collect(),
            pibar: self.pibar_matrices(),
        }
    }

    /// The characteristic, read off a triangular basis order obtained by
    /// topologically sorting the `Send` graph.
    pub fn characteristic(&self) -> Result<QsymElement> {
        let d = self.dim();
        let mut indegree = vec![0usize; d];
        let mut edges = vec![Vec::new(); d];
        for row in &self.table {
            for (b, a) in row.iter().enumerate() {
                if let Action::Send(k) = *a {
                    edges[b].push(k);
                    indegree[k] += 1;
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..d).filter(|&b| indegree[b] == 0).collect();
        let mut seen = 0;
        let mut out = QsymElement::zero(Basis::F);
        while let Some(b) = queue.pop_front() {
            seen += 1;
            let set: Vec<usize> = (1..self.n)
                .filter(|&i| match (self.generator, self.table[i - 1][b]) {
                    (Generator::PiBar, a) => a == Action::Negate,
                    (Generator::Pi, a) => a != Action::Fix,
                })
                .collect();
            out.add_term(Composition::comp_of(&set, self.n)?, rat(1));
            for &k in &edges[b] {
                indegree[k] -= 1;
                if indegree[k] == 0 {
                    queue.push_back(k);
                }
            }
        }
        if seen < d {
            return Err(Error::CyclicAction);
        }
        Ok(out)
    }

    /// Nonzero images of generator `i` as `(from, to, sign)`.
    pub fn action_rows(&self, i: usize) -> Vec<(Permutation, Permutation, i64)> {
        self.table[i - 1]
            .iter()
            .enumerate()
            .filter_map(|(b, a)| {
                let from = self.basis[b].clone();
                match *a {
                    Action::Zero => None,
                    Action::Fix => Some((from.clone(), from, 1)),
                    Action::Negate => Some((from.clone(), from, -1)),
                    Action::Send(k) => Some((from, self.basis[k].clone(), 1)),
                }
            })
            .collect()
    }

    /// The image of a basis element under generator `i`, as `(sign, target)`.
    pub fn act(&self, g: &Permutation, i: usize) -> Option<(i64, Permutation)> {
        let b = self.index_of(g)?;
        match self.table[i - 1][b] {
            Action::Zero => None,
            Action::Fix => Some((1, g.clone())),
            Action::Negate => Some((-1, g.clone())),
            Action::Send(k) => Some((1, self.basis[k].clone())),
        }
    }
}

/// `M_P`: the right module on `Σ_R(P)` with the `π̄_i` action.
pub fn poset_module(p: &LabeledPoset) -> CombinatorialModule {
    CombinatorialModule::from_basis(Side::Right, Generator::PiBar, p.n(), p.sigma_r())
}

/// `bar-M_P`: the right module on `Σ_R(P)` with the `π_i` action.
pub fn poset_module_bar(p: &LabeledPoset) -> CombinatorialModule {
    CombinatorialModule::from_basis(Side::Right, Generator::Pi, p.n(), p.sigma_r())
}

/// Weak Bruhat interval modules: `B_L`, `bar-B_L`, `B_R`, `bar-B_R`.
pub fn interval_module(
    side: Side,
    flavor: Flavor,
    bottom: &Permutation,
    top: &Permutation,
) -> Result<CombinatorialModule> {
    let elements = interval(side, bottom, top)?.elements;
    let generator = match flavor {
        Flavor::Plain => Generator::Pi,
        Flavor::Bar => Generator::PiBar,
    };
    Ok(CombinatorialModule::from_basis(side, generator, bottom.n(), elements))
}

/// The irreducible right module `F^R_α`.
pub fn irreducible(alpha: &Composition) -> CombinatorialModule {
    let g = Permutation::w0_of(alpha);
    CombinatorialModule::from_basis(Side::Right, Generator::PiBar, alpha.size(), vec![g])
}

/// `K_P = Σ_{σ ∈ Σ_R(P)} F_{comp(Des_R(σ))}`.
pub fn characteristic_of_poset_module(p: &LabeledPoset) -> QsymElement {
    QsymElement::from_terms(
        Basis::F,
        p.sigma_r()
            .into_iter()
            .map(|g| (g.descent_composition(Side::Right), rat(1))),
    )
}

/// Descent compositions of the chains reached by splitting `P` at
/// incomparable pairs until every piece is a chain, sorted.
pub fn composition_series_multiset(p: &LabeledPoset) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut stack = vec![p.clone()];
    while let Some(q) = stack.pop() {
        match q.incomparable_pairs().first() {
            Some(&(u, v)) => {
                let (a, b) = q.split(u, v).expect("incomparable pair");
                stack.push(a);
                stack.push(b);
            }
            None => {
                let word = q.sigma_r().pop().expect("a chain has one extension");
                out.push(word.descent_composition(Side::Right));
            }
        }
    }
    out.sort();
    out
}

/// Pairs `(st(Q), st(P \ Q))` over the lower subposets `Q` of size `m`.
pub fn restrict(p: &LabeledPoset, m: usize) -> Vec<(LabeledPoset, LabeledPoset)> {
    p.lower_subposets(m)
        .into_iter()
        .map(|q| {
            let rest = p.complement_of(&q);
            (p.standardize(&q), p.standardize(&rest))
        })
        .collect()
}

/// A square integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    dim: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.dim + c] = x;
    }

    pub fn add(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.dim + c] += x;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        out
    }

    pub fn plus(&self, other: &Matrix) -> Self {
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A module given by the dense matrices of its `π̄_i` generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixModule {
    pub side: Side,
    pub n: usize,
    pub labels: Vec<String>,
    pub pibar: Vec<Matrix>,
}

impl MatrixModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn gen(&self, i: usize) -> &Matrix {
        &self.pibar[i - 1]
    }

    /// `π̄_i² = -π̄_i`, braid and far-commutation relations as matrix identities.
    pub fn check_relations(&self) -> bool {
        for i in 1..self.n {
            let a = self.gen(i);
            if a.mul(a) != a.scaled(-1) {
                return false;
            }
            if i + 1 < self.n {
                let b = self.gen(i + 1);
                if a.mul(b).mul(a) != b.mul(a).mul(b) {
                    return false;
                }
            }
            for j in i + 2..self.n {
                let b = self.gen(j);
                if a.mul(b) != b.mul(a) {
                    return false;
                }
            }
        }
        true
    }

    /// The characteristic via a simultaneous triangular order of all generators.
    pub fn characteristic(&self) -> Result<QsymElement> {
        let d = self.dim();
        let mut indegree = vec![0usize; d];
        let mut edges = vec![Vec::new(); d];
        for m in &self.pibar {
            for (r, out) in edges.iter_mut().enumerate() {
                for (c, deg) in indegree.iter_mut().enumerate() {
                    if r != c && m.get(r, c) != 0 && !out.contains(&c) {
                        out.push(c);
                        *deg += 1;
                    }
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..d).filter(|&b| indegree[b] == 0).collect();
        let mut seen = 0;
        let mut out = QsymElement::zero(Basis::F);
        while let Some(b) = queue.pop_front() {
            seen += 1;
            let mut set = Vec::new();
            for i in 1..self.n {
                match self.gen(i).get(b, b) {
                    0 => {}
                    -1 => set.push(i),
                    _ => return Err(Error::CyclicAction),
                }
            }
            out.add_term(Composition::comp_of(&set, self.n)?, rat(1));
            for &k in &edges[b] {
                indegree[k] -= 1;
                if indegree[k] == 0 {
                    queue.push_back(k);
                }
            }
        }
        if seen < d {
            return Err(Error::CyclicAction);
        }
        Ok(out)
    }

    /// The twist of this module by one of the (anti-)involutions of `H_n(0)`.
    pub fn twisted(&self, which: Twist) -> MatrixModule {
        let d = self.dim();
        let pibar = (1..self.n)
            .map(|i| match which {
                Twist::Phi => self.gen(self.n - i).clone(),
                Twist::Theta => self.gen(i).plus(&Matrix::identity(d)).scaled(-1),
                Twist::Chi => self.gen(i).transpose(),
            })
            .collect();
        let labels = match which {
            Twist::Chi => self.labels.iter().map(|l| format!("{l}*")).collect(),
            _ => self.labels.clone(),
        };
        MatrixModule {
            side: self.side,
            n: self.n,
            labels,
            pibar,
        }
    }

    /// The dual space with the right action `(φ·π̄_i)(v) = φ(π̄_i·v)`.
    pub fn dual_to_right(&self) -> MatrixModule {
        MatrixModule {
            side: Side::Right,
            n: self.n,
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
            pibar: self.pibar.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Whether `B` intertwines: `self_i · B = B · target_i` for every `i`.
    pub fn intertwines(&self, target: &MatrixModule, b: &Matrix) -> bool {
        self.n == target.n
            && self.dim() == target.dim()
            && (0..self.pibar.len()).all(|k| self.pibar[k].mul(b) == b.mul(&target.pibar[k]))
    }
}

/// The involutions `φ`, `θ` and the anti-involution `χ` of `H_n(0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Twist {
    /// `π̄_i ↦ π̄_{n-i}`.
    Phi,
    /// `π̄_i ↦ -π_i`.
    Theta,
    /// `π̄_i ↦ π̄_i`, anti.
    Chi,
}

impl std::str::FromStr for Twist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(Twist::Phi),
            "theta" => Ok(Twist::Theta),
            "chi" => Ok(Twist::Chi),
            _ => Err(Error::Parse(format!("unknown twist {s:?}"))),
        }
    }
}

/// The module the twist of `M_P` is isomorphic to:
/// `φ ↦ M_{bar(P)*}`, `θ ↦ bar-M_P`, `χ ↦ bar-M_{bar P}`.
pub fn twist_target(p: &LabeledPoset, which: Twist) -> CombinatorialModule {
    match which {
        Twist::Phi => poset_module(&p.bar().star()),
        Twist::Theta => poset_module_bar(p),
        Twist::Chi => poset_module_bar(&p.bar()),
    }
}

/// The basis map from the twisted `M_P` to [`twist_target`]:
/// `γ ↦ w0γw0`, `γ ↦ (-1)^{ℓ(γ)}γ`, `γ* ↦ w0γ`.
pub fn twist_basis_map(g: &Permutation, which: Twist) -> (i64, Permutation) {
    let w0 = Permutation::longest(g.n());
    match which {
        Twist::Phi => (1, w0.compose(g).compose(&w0)),
        Twist::Theta => (if g.length().is_multiple_of(2) { 1 } else { -1 }, g.clone()),
        Twist::Chi => (1, w0.compose(g)),
    }
}

/// The matrix of a signed basis map between two modules.
pub fn bijection_matrix(
    source: &[Permutation],
    target: &CombinatorialModule,
    map: impl Fn(&Permutation) -> (i64, Permutation),
) -> Result<Matrix> {
    if source.len() != target.dim() {
        return Err(Error::BasisMismatch(source.len().to_string(), target.dim().to_string()));
    }
    let mut b = Matrix::zeros(source.len());
    for (r, g) in source.iter().enumerate() {
        let (sign, h) = map(g);
        let c = target
            .index_of(&h)
            .ok_or_else(|| Error::BasisMismatch(g.to_string(), h.to_string()))?;
        b.set(r, c, sign);
    }
    Ok(b)
}

/// Checks that the stated basis map intertwines the twist of `M_P` with its target.
pub fn check_twist(p: &LabeledPoset, which: Twist) -> Result<bool> {
    check_twist_with(p, which, |g| twist_basis_map(g, which))
}

/// [`check_twist`] with a caller-supplied basis map.
pub fn check_twist_with(
    p: &LabeledPoset,
    which: Twist,
    map: impl Fn(&Permutation) -> (i64, Permutation),
) -> Result<bool> {
    let source = poset_module(p);
    let twisted = source.to_matrix_module().twisted(which);
    let target = twist_target(p, which);
    let b = bijection_matrix(&source.basis, &target, map)?;
    Ok(twisted.intertwines(&target.to_matrix_module(), &b))
}

/// Endpoints `(w0ρ^{-1}, w0σ^{-1})` of the right interval matched with `[σ, ρ]_L`.
pub fn functor_f(bottom: &Permutation, top: &Permutation) -> Result<(Permutation, Permutation)> {
    if !bottom.leq_left(top) {
        return Err(Error::NotBelow {
            side: Side::Left.to_string(),
            bottom: bottom.to_string(),
            top: top.to_string(),
        });
    }
    Ok((top.f_map(), bottom.f_map()))
}

/// Checks that `γ* ↦ w0γ^{-1}` intertwines the dual of `B_L(σ, ρ)` with
/// `bar-B_R(w0ρ^{-1}, w0σ^{-1})`.
pub fn check_functor_f(bottom: &Permutation, top: &Permutation) -> Result<bool> {
    let (lo, hi) = functor_f(bottom, top)?;
    let source = interval_module(Side::Left, Flavor::Plain, bottom, top)?;
    let target = interval_module(Side::Right, Flavor::Bar, &lo, &hi)?;
    let dual = source.to_matrix_module().dual_to_right();
    let b = bijection_matrix(&source.basis, &target, |g| (1, g.f_map()))?;
    Ok(dual.intertwines(&target.to_matrix_module(), &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutations::all_permutations;
    use crate::posets::all_posets;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn running() -> LabeledPoset {
        LabeledPoset::from_covers(5, &[(5, 1), (1, 3), (1, 4), (2, 4)]).unwrap()
    }

    fn f(terms: &[(&str, i64)]) -> QsymElement {
        QsymElement::from_terms(Basis::F, terms.iter().map(|(a, c)| (a.parse().unwrap(), rat(*c))))
    }

    #[test]
    fn running_example_actions() {
        let m = poset_module(&running());
        assert_eq!(m.act(&p("25134"), 1), Some((1, p("52134"))));
        assert_eq!(m.act(&p("25134"), 2), Some((-1, p("25134"))));
        assert_eq!(m.act(&p("25134"), 3), None);
        assert!(m.check_relations());
        let mb = poset_module_bar(&running());
        assert_eq!(mb.act(&p("25134"), 2), Some((1, p("25134"))));
        assert_eq!(mb.act(&p("25134"), 1), Some((1, p("52134"))));
        assert!(mb.check_relations());
    }

    #[test]
    fn small_modules() {
        let chain = poset_module(&LabeledPoset::chain(4));
        assert_eq!(chain.dim(), 1);
        assert!(chain.table.iter().all(|row| row[0] == Action::Zero));
        assert_eq!(poset_module(&LabeledPoset::antichain(4)).dim(), 24);
        let m = interval_module(Side::Right, Flavor::Bar, &p("12"), &p("21")).unwrap();
        assert_eq!(m.act(&p("12"), 1), Some((1, p("21"))));
        assert_eq!(m.act(&p("21"), 1), Some((-1, p("21"))));
        assert_eq!(
            interval_module(Side::Left, Flavor::Plain, &p("231"), &p("231"))
                .unwrap()
                .dim(),
            1
        );
        assert!(interval_module(Side::Left, Flavor::Plain, &p("321"), &p("123")).is_err());
        for a in crate::compositions::compositions_of(5) {
            let irr = irreducible(&a);
            assert!(irr.check_relations());
            assert_eq!(irr.characteristic().unwrap(), QsymElement::basis_element(Basis::F, a));
        }
    }

    #[test]
    fn corrupted_table_fails() {
        let mut m = poset_module(&running());
        let b = m.index_of(&p("25134")).unwrap();
        m.table[1][b] = Action::Fix;
        assert!(!m.check_relations());
    }

    #[test]
    fn remark_poset() {
        let q = LabeledPoset::from_covers(5, &[(1, 2), (1, 5), (3, 4), (3, 2), (5, 4)]).unwrap();
        let expected = f(&[
            ("3,2", 1),
            ("3,1,1", 1),
            ("2,2,1", 2),
            ("2,1,2", 1),
            ("1,3,1", 1),
            ("1,2,2", 1),
            ("1,2,1,1", 1),
        ]);
        assert_eq!(q.sigma_r().len(), 8);
        assert_eq!(characteristic_of_poset_module(&q), expected);
        assert_eq!(poset_module(&q).characteristic().unwrap(), expected);
    }

    #[test]
    fn characteristics_agree_exhaustively() {
        for q in all_posets(4) {
            let k = characteristic_of_poset_module(&q);
            let m = poset_module(&q);
            assert!(m.check_relations());
            assert_eq!(m.characteristic().unwrap(), k);
            assert_eq!(m.to_matrix_module().characteristic().unwrap(), k);
            assert!(m.to_matrix_module().check_relations());
            let mb = poset_module_bar(&q);
            assert!(mb.check_relations());
            assert_eq!(mb.characteristic().unwrap(), k.invol_psi());
            let series = composition_series_multiset(&q);
            let mut support = Vec::new();
            for (a, c) in k.terms() {
                for _ in 0..c.to_integer().try_into().unwrap_or(0usize) {
                    support.push(a.clone());
                }
            }
            assert_eq!(series, support);
        }
    }

    #[test]
    fn interval_modules_are_poset_modules() {
        let all = all_permutations(4);
        for s in &all {
            for r in all.iter().filter(|r| s.leq_right(r)) {
                let m = interval_module(Side::Right, Flavor::Bar, s, r).unwrap();
                let q = LabeledPoset::from_interval(s, r).unwrap();
                assert_eq!(m, poset_module(&q));
                assert!(interval_module(Side::Right, Flavor::Plain, s, r)
                    .unwrap()
                    .check_relations());
            }
            for r in all.iter().filter(|r| s.leq_left(r)) {
                assert!(interval_module(Side::Left, Flavor::Plain, s, r)
                    .unwrap()
                    .check_relations());
                assert!(interval_module(Side::Left, Flavor::Bar, s, r)
                    .unwrap()
                    .check_relations());
                assert!(check_functor_f(s, r).unwrap());
            }
        }
    }

    #[test]
    fn running_split_sizes() {
        let (a, b) = running().split(1, 2).unwrap();
        assert_eq!((b.sigma_r().len(), a.sigma_r().len()), (3, 4));
        assert_eq!(composition_series_multiset(&running()).len(), 7);
        assert_eq!(
            composition_series_multiset(&LabeledPoset::chain(3)),
            vec!["3".parse().unwrap()]
        );
    }

    #[test]
    fn restriction_of_running_example() {
        let pairs = restrict(&running(), 3);
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].0, LabeledPoset::from_covers(3, &[(3, 1)]).unwrap());
        assert_eq!(pairs[0].1, LabeledPoset::antichain(2));
        assert_eq!(pairs[1].0, LabeledPoset::from_covers(3, &[(3, 1), (1, 2)]).unwrap());
        assert_eq!(pairs[1].1, LabeledPoset::chain(2));
        assert_eq!(restrict(&running(), 0), vec![(LabeledPoset::antichain(0), running())]);
        assert_eq!(restrict(&running(), 5), vec![(running(), LabeledPoset::antichain(0))]);
    }

    #[test]
    fn twists_of_running_example() {
        let q = running();
        for which in [Twist::Phi, Twist::Theta, Twist::Chi] {
            assert!(check_twist(&q, which).unwrap(), "{which:?}");
        }
        let k = characteristic_of_poset_module(&q);
        let tw = |w| poset_module(&q).to_matrix_module().twisted(w).characteristic().unwrap();
        assert_eq!(tw(Twist::Phi), k.invol_rho());
        assert_eq!(tw(Twist::Theta), k.invol_psi());
        assert_eq!(tw(Twist::Chi), k);
        let phi = twist_target(&q, Twist::Phi);
        assert_eq!(phi.dim(), 7);
        assert!(phi.index_of(&p("23514")).is_some());
        let chi = twist_target(&q, Twist::Chi);
        assert!(chi.index_of(&p("41532")).is_some());
    }

    #[test]
    fn right_multiplied_chi_map_is_not_an_intertwiner() {
        let w0 = Permutation::longest(5);
        let wrong = check_twist_with(&running(), Twist::Chi, |g| (1, g.compose(&w0)));
        assert!(!matches!(wrong, Ok(true)));
    }

    #[test]
    fn theta_twist_of_chain() {
        let t = poset_module(&LabeledPoset::chain(3))
            .to_matrix_module()
            .twisted(Twist::Theta);
        assert_eq!(t.dim(), 1);
        assert!(t.pibar.iter().all(|m| m.get(0, 0) == -1));
    }
}
