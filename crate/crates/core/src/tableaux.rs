//! Diagrams in the first quadrant and their canonical posets, the diagram
//! construction `D_{α;ρ}`, standard immaculate / extended tableaux, standard
//! reverse composition tableaux (SRCT) with their classes, sink tableaux and
//! strip reading words, and the posets of the quasisymmetric Schur-type
//! module families.
//!
//! Diagram cells are `(column, row)` with row 1 at the bottom. Composition
//! diagrams `cd(α)` are `(row, column)` with row 1 at the top.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::permutations::{Permutation, Side};
use crate::posets::LabeledPoset;
use crate::qsym::{rat, Basis, QsymElement};

/// A finite set of cells `(column, row)` whose occupied rows form `[k]` and
/// occupied columns form `[l]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "DiagramRecord", into = "DiagramRecord")]
pub struct Diagram {
    cells: BTreeSet<(usize, usize)>,
}

/// Serialized form: `{"cells": [[x, y], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub cells: Vec<[usize; 2]>,
}

impl TryFrom<DiagramRecord> for Diagram {
    type Error = Error;

    fn try_from(r: DiagramRecord) -> Result<Self> {
        Diagram::new(r.cells.iter().map(|c| (c[0], c[1])))
    }
}

impl From<Diagram> for DiagramRecord {
    fn from(d: Diagram) -> Self {
        DiagramRecord {
            cells: d.cells.iter().map(|&(x, y)| [x, y]).collect(),
        }
    }
}

/// A filling of a diagram: cell to entry.
pub type DiagramFilling = BTreeMap<(usize, usize), usize>;

impl Diagram {
    pub fn new(cells: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let cells: BTreeSet<(usize, usize)> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::InvalidDiagram("empty diagram".into()));
        }
        let xs: BTreeSet<usize> = cells.iter().map(|c| c.0).collect();
        let ys: BTreeSet<usize> = cells.iter().map(|c| c.1).collect();
        let contiguous = |s: &BTreeSet<usize>| s.iter().copied().eq(1..=s.len());
        if !contiguous(&xs) {
            return Err(Error::InvalidDiagram(format!("occupied columns {xs:?} are not [l]")));
        }
        if !contiguous(&ys) {
            return Err(Error::InvalidDiagram(format!("occupied rows {ys:?} are not [k]")));
        }
        Ok(Diagram { cells })
    }

    pub fn cells(&self) -> &BTreeSet<(usize, usize)> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn num_rows(&self) -> usize {
        self.cells.iter().map(|c| c.1).max().unwrap_or(0)
    }

    pub fn num_cols(&self) -> usize {
        self.cells.iter().map(|c| c.0).max().unwrap_or(0)
    }

    /// Row lengths from the bottom row up.
    pub fn row_lengths(&self) -> Vec<usize> {
        (1..=self.num_rows()).map(|y| self.row(y).len()).collect()
    }

    fn row(&self, y: usize) -> Vec<(usize, usize)> {
        self.cells.iter().copied().filter(|c| c.1 == y).collect()
    }

    /// Cells in label order: rows left to right, from the top row down.
    pub fn labeled_cells(&self) -> Vec<(usize, usize)> {
        (1..=self.num_rows()).rev().flat_map(|y| self.row(y)).collect()
    }

    /// `i ⪯ j` iff `x_i ≤ x_j` and `y_i ≤ y_j`, labels as in [`Self::labeled_cells`].
    pub fn canonical_poset(&self) -> LabeledPoset {
        let cells = self.labeled_cells();
        let mut pairs = Vec::new();
        for (i, a) in cells.iter().enumerate() {
            for (j, b) in cells.iter().enumerate() {
                if i != j && a.0 <= b.0 && a.1 <= b.1 {
                    pairs.push((i + 1, j + 1));
                }
            }
        }
        LabeledPoset::from_relations(self.len(), &pairs).expect("componentwise order is a partial order")
    }

    /// Fill `1..n` along rows left to right, from the bottom row up.
    pub fn source_filling(&self) -> DiagramFilling {
        (1..=self.num_rows()).flat_map(|y| self.row(y)).zip(1..).collect()
    }

    /// Fill `1..n` along columns bottom to top, from the leftmost column.
    pub fn sink_filling(&self) -> DiagramFilling {
        let mut by_col: Vec<(usize, usize)> = self.cells.iter().copied().collect();
        by_col.sort();
        by_col.into_iter().zip(1..).collect()
    }

    /// Whether a filling is a standard tableau: entries `1..n`, weakly
    /// increasing in the componentwise order.
    pub fn is_standard(&self, t: &DiagramFilling) -> bool {
        let keys: BTreeSet<(usize, usize)> = t.keys().copied().collect();
        let vals: BTreeSet<usize> = t.values().copied().collect();
        keys == self.cells
            && vals.iter().copied().eq(1..=self.len())
            && t.iter()
                .all(|(a, va)| t.iter().all(|(b, vb)| !(a.0 <= b.0 && a.1 <= b.1) || va <= vb))
    }

    /// Entries read along rows right to left, from the bottom row up.
    pub fn read(&self, t: &DiagramFilling) -> Result<Permutation> {
        let word: Vec<usize> = (1..=self.num_rows())
            .flat_map(|y| self.row(y).into_iter().rev())
            .map(|c| {
                t.get(&c)
                    .copied()
                    .ok_or_else(|| Error::InvalidTableau(format!("cell {c:?} is unfilled")))
            })
            .collect::<Result<_>>()?;
        Permutation::new(word)
    }

    pub fn read_source(&self) -> Permutation {
        self.read(&self.source_filling()).expect("source filling is standard")
    }

    pub fn read_sink(&self) -> Permutation {
        self.read(&self.sink_filling()).expect("sink filling is standard")
    }

    /// Reflection in the diagonal: `(x, y) ↦ (y, x)`.
    pub fn transpose(&self) -> Self {
        Diagram {
            cells: self.cells.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.cells.iter().map(|(x, y)| format!("({x},{y})")).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

/// Intermediate data of the diagram construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildD {
    /// `R_j`: values of `ρ` on the blocks of `α^c`.
    pub r: Vec<BTreeSet<usize>>,
    /// `C_i`: intervals between consecutive left descents of `ρ`.
    pub c: Vec<BTreeSet<usize>>,
    pub diagram: Diagram,
}

/// Runs the diagram construction for `w0(α) ⪯_L ρ`, keeping `R_j` and `C_i`.
pub fn build_d_steps(alpha: &Composition, rho: &Permutation) -> Result<BuildD> {
    let n = alpha.size();
    if n != rho.n() {
        return Err(Error::SizeMismatch {
            left: n,
            right: rho.n(),
        });
    }
    let w0 = Permutation::w0_of(alpha);
    if !w0.leq_left(rho) {
        return Err(Error::NotBelow {
            side: Side::Left.to_string(),
            bottom: w0.to_string(),
            top: rho.to_string(),
        });
    }
    let mut r: Vec<BTreeSet<usize>> = Vec::new();
    let mut start = 0;
    for &b in alpha.complement().parts() {
        r.push((start + 1..=start + b).map(|pos| rho.at(pos)).collect());
        start += b;
    }
    let mut c: Vec<BTreeSet<usize>> = Vec::new();
    let mut lo = 1;
    for k in rho.des_left().into_iter().chain(std::iter::once(n)) {
        c.push((lo..=k).collect());
        lo = k + 1;
    }
    let mut cells = Vec::new();
    for (i, ci) in c.iter().enumerate() {
        for (j, rj) in r.iter().enumerate() {
            if !ci.is_disjoint(rj) {
                cells.push((i + 1, j + 1));
            }
        }
    }
    Ok(BuildD {
        r,
        c,
        diagram: Diagram::new(cells)?,
    })
}

/// The diagram `D_{α;ρ}` with `Σ_R(P_D) = f([w0(α), ρ]_L)`.
pub fn build_d(alpha: &Composition, rho: &Permutation) -> Result<Diagram> {
    Ok(build_d_steps(alpha, rho)?.diagram)
}

/// Which tableau conditions a filling of `cd(α)` satisfies.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableauKind {
    /// Standard immaculate: rows increase, first column increases downward.
    Sit,
    /// Standard extended: rows and all columns increase.
    Set,
    /// Standard reverse composition tableau.
    Srct,
}

impl fmt::Display for TableauKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableauKind::Sit => "sit",
            TableauKind::Set => "set",
            TableauKind::Srct => "srct",
        })
    }
}

impl FromStr for TableauKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sit" => Ok(TableauKind::Sit),
            "set" => Ok(TableauKind::Set),
            "srct" => Ok(TableauKind::Srct),
            _ => Err(Error::Parse(format!("unknown tableau kind {s:?}"))),
        }
    }
}

/// A standard filling of `cd(α)` of the given kind; `rows[r-1][c-1]` is the
/// entry at `(r, c)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CompositionTableau {
    kind: TableauKind,
    shape: Composition,
    rows: Vec<Vec<usize>>,
}

/// Parses `"1 8 9/2 7/3 4 5 6"` into rows.
pub fn parse_rows(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split('/')
        .map(|row| {
            row.split(|ch: char| ch == ',' || ch.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        })
        .collect()
}

impl CompositionTableau {
    pub fn new(kind: TableauKind, rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Composition::new(rows.iter().map(Vec::len).collect())?;
        let t = CompositionTableau { kind, shape, rows };
        let n = t.n();
        let vals: BTreeSet<usize> = t.rows.iter().flatten().copied().collect();
        if vals.len() != n || !vals.iter().copied().eq(1..=n) {
            return Err(Error::InvalidTableau(format!("{t}: entries are not 1..{n}")));
        }
        if !t.satisfies_kind() {
            return Err(Error::InvalidTableau(format!("{t} is not a valid {kind} tableau")));
        }
        Ok(t)
    }

    pub fn parse(kind: TableauKind, s: &str) -> Result<Self> {
        Self::new(kind, parse_rows(s)?)
    }

    fn satisfies_kind(&self) -> bool {
        let rows = &self.rows;
        let first_col: Vec<usize> = rows.iter().map(|r| r[0]).collect();
        match self.kind {
            TableauKind::Sit => {
                rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1])) && first_col.windows(2).all(|w| w[0] < w[1])
            }
            TableauKind::Set => {
                rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
                    && (1..=self.shape.max_part()).all(|c| self.column_word(c).windows(2).all(|w| w[0] < w[1]))
            }
            TableauKind::Srct => {
                rows.iter().all(|r| r.windows(2).all(|w| w[0] > w[1]))
                    && first_col.windows(2).all(|w| w[0] < w[1])
                    && self.triple_condition()
            }
        }
    }

    /// If `i < j` and `τ(i,k) > τ(j,k+1)` then `(i,k+1) ∈ cd(α)` and `τ(i,k+1) > τ(j,k+1)`.
    fn triple_condition(&self) -> bool {
        let rows = &self.rows;
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                for k in 0..rows[i].len() {
                    if let Some(&below) = rows[j].get(k + 1) {
                        if rows[i][k] > below && rows[i].get(k + 1).is_none_or(|&v| v <= below) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn kind(&self) -> TableauKind {
        self.kind
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.shape.size()
    }

    /// Entry at `(r, c)`, 1-based.
    pub fn entry(&self, r: usize, c: usize) -> Option<usize> {
        self.rows.get(r.wrapping_sub(1))?.get(c.wrapping_sub(1)).copied()
    }

    /// Position `(r, c)` of value `v`.
    pub fn position(&self, v: usize) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&x| x == v).map(|c| (r + 1, c + 1)))
    }

    fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); self.n() + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                pos[v] = (r + 1, c + 1);
            }
        }
        pos
    }

    /// Entries read right to left, from the top row down.
    pub fn read(&self) -> Permutation {
        let word = self.rows.iter().flat_map(|r| r.iter().rev().copied()).collect();
        Permutation::new(word).expect("entries are 1..n")
    }

    /// Entries of column `c` from top to bottom.
    pub fn column_word(&self, c: usize) -> Vec<usize> {
        self.rows.iter().filter_map(|r| r.get(c - 1).copied()).collect()
    }

    /// Column word of column `c` replaced by its relative order.
    pub fn standardized_column(&self, c: usize) -> Vec<usize> {
        let w = self.column_word(c);
        w.iter().map(|&v| 1 + w.iter().filter(|&&u| u < v).count()).collect()
    }

    /// `(st_1, ..., st_{max α})`.
    pub fn signature(&self) -> Vec<Vec<usize>> {
        (1..=self.shape.max_part())
            .map(|c| self.standardized_column(c))
            .collect()
    }

    /// Descents: for SRCT, `i` with `i+1` weakly right of `i`; for SIT and
    /// SET, `i` with `i+1` in a strictly lower row.
    pub fn descents(&self) -> Vec<usize> {
        let pos = self.positions();
        (1..self.n())
            .filter(|&i| match self.kind {
                TableauKind::Srct => pos[i + 1].1 >= pos[i].1,
                TableauKind::Sit | TableauKind::Set => pos[i + 1].0 > pos[i].0,
            })
            .collect()
    }

    pub fn descent_composition(&self) -> Composition {
        Composition::comp_of(&self.descents(), self.n()).expect("descents lie in [n-1]")
    }

    /// `i < j` attack: same column, or adjacent columns with `j` lower-right of `i`.
    pub fn attacks(&self, i: usize, j: usize) -> bool {
        let (Some(a), Some(b)) = (self.position(i), self.position(j)) else {
            return false;
        };
        i < j && (a.1 == b.1 || (b.1 == a.1 + 1 && b.0 > a.0))
    }

    /// Every non-descent `i ≠ n` has `i+1` immediately left of `i`.
    pub fn is_source(&self) -> bool {
        let pos = self.positions();
        let des: BTreeSet<usize> = self.descents().into_iter().collect();
        (1..self.n())
            .filter(|i| !des.contains(i))
            .all(|i| pos[i + 1].0 == pos[i].0 && pos[i + 1].1 + 1 == pos[i].1)
    }

    /// Every descent is attacking.
    pub fn is_sink(&self) -> bool {
        self.descents().into_iter().all(|i| self.attacks(i, i + 1))
    }
}

impl fmt::Display for CompositionTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&rows.join("/"))
    }
}

fn fill_in_order(alpha: &Composition, order: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = alpha.parts().iter().map(|&a| vec![0; a]).collect();
    for ((r, c), v) in order.into_iter().zip(1..) {
        rows[r][c] = v;
    }
    rows
}

fn row_major(alpha: &Composition) -> Vec<(usize, usize)> {
    alpha
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &a)| (0..a).map(move |c| (r, c)))
        .collect()
}

fn column_major(alpha: &Composition) -> Vec<(usize, usize)> {
    (0..alpha.max_part())
        .flat_map(|c| {
            alpha
                .parts()
                .iter()
                .enumerate()
                .filter(move |(_, &a)| a > c)
                .map(move |(r, _)| (r, c))
        })
        .collect()
}

/// `(𝒯_α, 𝒯'_α)`: the row-major SIT and the SIT with first column `1..ℓ`
/// and the rest filled along rows from the bottom row up.
pub fn sit_extremes(alpha: &Composition) -> (CompositionTableau, CompositionTableau) {
    let source = fill_in_order(alpha, row_major(alpha));
    let l = alpha.len();
    let rest = alpha
        .parts()
        .iter()
        .enumerate()
        .rev()
        .flat_map(|(r, &a)| (1..a).map(move |c| (r, c)));
    let sink = fill_in_order(alpha, (0..l).map(|r| (r, 0)).chain(rest));
    (
        CompositionTableau::new(TableauKind::Sit, source).expect("row-major filling is a SIT"),
        CompositionTableau::new(TableauKind::Sit, sink).expect("sink filling is a SIT"),
    )
}

/// `(𝖳_α, 𝖳'_α)`: the row-major and column-major SET.
pub fn set_extremes(alpha: &Composition) -> (CompositionTableau, CompositionTableau) {
    let source = fill_in_order(alpha, row_major(alpha));
    let sink = fill_in_order(alpha, column_major(alpha));
    (
        CompositionTableau::new(TableauKind::Set, source).expect("row-major filling is a SET"),
        CompositionTableau::new(TableauKind::Set, sink).expect("column-major filling is a SET"),
    )
}

/// All standard tableaux of the given kind and shape, sorted.
pub fn enumerate_tableaux(kind: TableauKind, alpha: &Composition) -> Vec<CompositionTableau> {
    let n = alpha.size();
    let mut rows: Vec<Vec<usize>> = alpha.parts().iter().map(|&a| Vec::with_capacity(a)).collect();
    let mut out = Vec::new();
    place(kind, alpha, &mut rows, 1, n, &mut out);
    out.sort();
    out
}

/// Places values in increasing order (SIT, SET) or decreasing order (SRCT),
/// always at the next free cell of some row.
fn place(
    kind: TableauKind,
    alpha: &Composition,
    rows: &mut Vec<Vec<usize>>,
    step: usize,
    n: usize,
    out: &mut Vec<CompositionTableau>,
) {
    if step > n {
        if let Ok(t) = CompositionTableau::new(kind, rows.clone()) {
            out.push(t);
        }
        return;
    }
    let value = if kind == TableauKind::Srct { n + 1 - step } else { step };
    for r in 0..rows.len() {
        let c = rows[r].len();
        if c == alpha.parts()[r] {
            continue;
        }
        let allowed = match kind {
            TableauKind::Sit => c > 0 || rows[..r].iter().all(|row| !row.is_empty()),
            TableauKind::Set => rows[..r]
                .iter()
                .zip(&alpha.parts()[..r])
                .all(|(row, &a)| a <= c || row.len() > c),
            TableauKind::Srct => c > 0 || rows[r + 1..].iter().all(|row| !row.is_empty()),
        };
        if allowed {
            rows[r].push(value);
            place(kind, alpha, rows, step + 1, n, out);
            rows[r].pop();
        }
    }
}

/// `Σ_T F_{comp(Des(T))}` over the standard tableaux of the given kind.
pub fn tableau_character(kind: TableauKind, alpha: &Composition) -> QsymElement {
    let mut out = QsymElement::zero(Basis::F);
    for t in enumerate_tableaux(kind, alpha) {
        out.add_term(t.descent_composition(), rat(1));
    }
    out
}

/// An equivalence class of SRCT under equal standardized column words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SrctClass {
    pub signature: Vec<Vec<usize>>,
    pub members: Vec<CompositionTableau>,
}

impl SrctClass {
    /// The member whose non-descents all have `i+1` immediately left of `i`.
    pub fn source(&self) -> Option<&CompositionTableau> {
        self.members.iter().find(|t| t.is_source())
    }

    /// The member all of whose descents are attacking.
    pub fn sink(&self) -> Option<&CompositionTableau> {
        self.members.iter().find(|t| t.is_sink())
    }

    pub fn sources(&self) -> Vec<&CompositionTableau> {
        self.members.iter().filter(|t| t.is_source()).collect()
    }

    pub fn sinks(&self) -> Vec<&CompositionTableau> {
        self.members.iter().filter(|t| t.is_sink()).collect()
    }
}

/// Classes of `SRCT(α)`, ordered by their source tableaux (or first member).
pub fn srct_classes(alpha: &Composition) -> Vec<SrctClass> {
    let mut groups: BTreeMap<Vec<Vec<usize>>, Vec<CompositionTableau>> = BTreeMap::new();
    for t in enumerate_tableaux(TableauKind::Srct, alpha) {
        groups.entry(t.signature()).or_default().push(t);
    }
    let mut classes: Vec<SrctClass> = groups
        .into_iter()
        .map(|(signature, members)| SrctClass { signature, members })
        .collect();
    classes.sort_by(|a, b| {
        let key = |c: &SrctClass| c.source().cloned().unwrap_or_else(|| c.members[0].clone());
        key(a).cmp(&key(b))
    });
    classes
}

fn require_srct(tau: &CompositionTableau) -> Result<()> {
    if tau.kind != TableauKind::Srct {
        return Err(Error::InvalidTableau(format!(
            "{tau} is a {} tableau, expected srct",
            tau.kind
        )));
    }
    Ok(())
}

/// The sink tableau of the class of `τ`: cells receive `n, n-1, ..., 1` in
/// turn, each chosen by following column chains through the unmasked
/// entries of `τ`.
pub fn sink_from(tau: &CompositionTableau) -> Result<CompositionTableau> {
    require_srct(tau)?;
    let n = tau.n();
    let mut grid: Vec<Vec<Option<usize>>> = tau.rows.iter().map(|r| r.iter().map(|&v| Some(v)).collect()).collect();
    let mut out: Vec<Vec<usize>> = tau.rows.iter().map(|r| vec![0; r.len()]).collect();
    let last = grid.len() - 1;
    grid[last][0] = None;
    out[last][0] = n;
    let ncols = tau.shape.max_part();
    let column_max = |grid: &Vec<Vec<Option<usize>>>, c: usize| -> Option<(usize, usize)> {
        grid.iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(c).copied().flatten().map(|v| (v, r)))
            .max()
    };
    for m in (1..n).rev() {
        let mut c = (0..ncols)
            .find(|&c| column_max(&grid, c).is_some())
            .expect("unmasked entries remain");
        let (mut value, mut row) = column_max(&grid, c).expect("column is nonempty");
        while c + 1 < ncols {
            let next = c + 1;
            let extends = grid
                .iter()
                .enumerate()
                .any(|(r, rw)| r > row && rw.get(next).copied().flatten().is_some_and(|v| v > value));
            if !extends {
                break;
            }
            (value, row) = column_max(&grid, next).expect("column is nonempty");
            c = next;
        }
        grid[row][c] = None;
        out[row][c] = m;
    }
    CompositionTableau::new(TableauKind::Srct, out)
}

/// The class of `τ` within `SRCT(shape)`.
pub fn class_of(tau: &CompositionTableau) -> Result<SrctClass> {
    require_srct(tau)?;
    let sig = tau.signature();
    srct_classes(&tau.shape)
        .into_iter()
        .find(|c| c.signature == sig)
        .ok_or_else(|| Error::InvalidTableau(format!("{tau} lies in no class")))
}

/// Horizontal strips `H_j` of a source tableau: cells holding
/// `d_{j-1}+1 ..= d_j`, each listed left to right.
pub fn horizontal_strips(source: &CompositionTableau) -> Result<Vec<Vec<(usize, usize)>>> {
    require_srct(source)?;
    let n = source.n();
    let mut strips = Vec::new();
    let mut lo = 1;
    for d in source.descents().into_iter().chain(std::iter::once(n)) {
        let mut cells: Vec<(usize, usize)> = (lo..=d).map(|v| source.position(v).expect("value present")).collect();
        cells.sort_by_key(|&(r, c)| (c, r));
        strips.push(cells);
        lo = d + 1;
    }
    Ok(strips)
}

/// `read(τ)`: concatenation of the entries of `τ` on the strips of `source`,
/// each read left to right.
pub fn read_tau_with(tau: &CompositionTableau, source: &CompositionTableau) -> Result<Permutation> {
    require_srct(tau)?;
    if tau.shape != source.shape {
        return Err(Error::InvalidTableau(format!(
            "{tau} and {source} have different shapes"
        )));
    }
    let word = horizontal_strips(source)?
        .into_iter()
        .flatten()
        .map(|(r, c)| tau.entry(r, c).expect("same shape"))
        .collect();
    Permutation::new(word)
}

/// `read(τ)` using the source of the class of `τ`, found by enumeration.
pub fn read_tau(tau: &CompositionTableau) -> Result<Permutation> {
    let class = class_of(tau)?;
    let source = class
        .source()
        .ok_or_else(|| Error::InvalidTableau(format!("class of {tau} has no source")))?;
    read_tau_with(tau, source)
}

/// `comp(Des(τ)^c)` with the complement taken in `[n-1]`.
pub fn des_complement_composition(tau: &CompositionTableau) -> Composition {
    let des: BTreeSet<usize> = tau.descents().into_iter().collect();
    let rest: Vec<usize> = (1..tau.n()).filter(|i| !des.contains(i)).collect();
    Composition::comp_of(&rest, tau.n()).expect("subset of [n-1]")
}

/// `P = P_{D_{comp(Des(source)^c); read(sink)}}` for the class of a source tableau.
pub fn poset_quasischur(source: &CompositionTableau) -> Result<LabeledPoset> {
    require_srct(source)?;
    if !source.is_source() {
        return Err(Error::InvalidTableau(format!("{source} is not a source tableau")));
    }
    let sink = sink_from(source)?;
    let rho = read_tau_with(&sink, source)?;
    Ok(build_d(&des_complement_composition(source), &rho)?.canonical_poset())
}

/// One poset per class of `SRCT(α)`, in class order.
pub fn quasischur_posets(alpha: &Composition) -> Result<Vec<LabeledPoset>> {
    srct_classes(alpha)
        .iter()
        .map(|c| {
            let source = c
                .source()
                .ok_or_else(|| Error::InvalidTableau("class without source".into()))?;
            poset_quasischur(source)
        })
        .collect()
}

/// Closed form of `D_{α^c; read(𝒯'_α)}`: `{(1,i)} ∪ {(j + k_i, i) : j ≥ 2}`
/// with `k_i = Σ_{l > i} (α_l - 1)`.
pub fn dif_diagram(alpha: &Composition) -> Diagram {
    let parts = alpha.parts();
    let mut cells = Vec::new();
    for (i, &a) in parts.iter().enumerate() {
        let k: usize = parts[i + 1..].iter().map(|&p| p - 1).sum();
        cells.push((1, i + 1));
        cells.extend((2..=a).map(|j| (j + k, i + 1)));
    }
    Diagram::new(cells).expect("closed form has no empty rows or columns")
}

/// `{(i, j) : (j, i) ∈ cd(α)}`.
pub fn esf_diagram(alpha: &Composition) -> Diagram {
    let cells = alpha
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &a)| (1..=a).map(move |c| (c, r + 1)));
    Diagram::new(cells).expect("composition diagrams have no gaps")
}

pub fn poset_dual_immaculate(alpha: &Composition) -> LabeledPoset {
    dif_diagram(alpha).canonical_poset()
}

pub fn poset_extended(alpha: &Composition) -> LabeledPoset {
    esf_diagram(alpha).canonical_poset()
}

/// Module families with explicit posets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Dual immaculate.
    Dimm,
    /// Extended Schur.
    Ext,
    /// Row-strict dual immaculate: `bar(P_Dimm)`.
    Rdimm,
    /// Row-strict extended Schur: `bar(P_Ext)`.
    Rext,
    /// Quasisymmetric Schur, one poset per class.
    Qs,
    /// Young quasisymmetric Schur: `(bar P_Qs(α^r))*`.
    Yqs,
    /// Young row-strict quasisymmetric Schur: `bar(P_Qs(α))`.
    Yrqs,
    /// Row-strict quasisymmetric Schur: `(P_Qs(α^r))*`.
    Rqs,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Dimm,
        Family::Ext,
        Family::Rdimm,
        Family::Rext,
        Family::Qs,
        Family::Yqs,
        Family::Yrqs,
        Family::Rqs,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Dimm => "dimm",
            Family::Ext => "ext",
            Family::Rdimm => "rdimm",
            Family::Rext => "rext",
            Family::Qs => "qs",
            Family::Yqs => "yqs",
            Family::Yrqs => "yrqs",
            Family::Rqs => "rqs",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// The posets of the indecomposable summands of the family's module at `α`,
/// one per class for the quasisymmetric Schur-type families.
pub fn family_posets(family: Family, alpha: &Composition) -> Result<Vec<LabeledPoset>> {
    Ok(match family {
        Family::Dimm => vec![poset_dual_immaculate(alpha)],
        Family::Ext => vec![poset_extended(alpha)],
        Family::Rdimm => vec![poset_dual_immaculate(alpha).bar()],
        Family::Rext => vec![poset_extended(alpha).bar()],
        Family::Qs => quasischur_posets(alpha)?,
        Family::Yqs => quasischur_posets(&alpha.reverse())?
            .iter()
            .map(|p| p.bar().star())
            .collect(),
        Family::Yrqs => quasischur_posets(alpha)?.iter().map(LabeledPoset::bar).collect(),
        Family::Rqs => quasischur_posets(&alpha.reverse())?
            .iter()
            .map(LabeledPoset::star)
            .collect(),
    })
}
