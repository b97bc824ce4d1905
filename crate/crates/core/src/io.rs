//! Serialization: JSON records for quasisymmetric elements, action tables and
//! border-strip tableaux, and TSV tables for expansions.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_traits::Zero;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::borderstrips::{BorderStripTableau, StripFlavor};
use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::hecke::{Action, CombinatorialModule, Generator};
use crate::permutations::{Permutation, Side};
use crate::qsym::{parse_rational, Basis, QsymElement, Rational};

/// One term `{"comp": [..], "coeff": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub comp: Vec<usize>,
    pub coeff: String,
}

/// `{"basis": "M", "terms": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsymRecord {
    pub basis: String,
    pub terms: Vec<TermRecord>,
}

impl From<QsymElement> for QsymRecord {
    fn from(x: QsymElement) -> Self {
        QsymRecord {
            basis: x.basis().to_string(),
            terms: x
                .terms()
                .iter()
                .map(|(a, c)| TermRecord {
                    comp: a.parts().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<QsymRecord> for QsymElement {
    type Error = Error;

    fn try_from(r: QsymRecord) -> Result<Self> {
        let basis: Basis = r.basis.parse()?;
        let terms = r
            .terms
            .into_iter()
            .map(|t| Ok((Composition::new(t.comp)?, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QsymElement::from_terms(basis, terms))
    }
}

/// One nonzero image `from · π̄_gen = sign · to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRow {
    pub from: String,
    pub to: String,
    pub sign: i64,
}

/// The action of one generator on a module basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTableRecord {
    pub side: Side,
    pub basis: Vec<String>,
    pub gen: usize,
    pub rows: Vec<ActionRow>,
}

/// The action table of generator `i`.
pub fn action_table(m: &CombinatorialModule, i: usize) -> ActionTableRecord {
    ActionTableRecord {
        side: m.side,
        basis: m.basis.iter().map(Permutation::to_string).collect(),
        gen: i,
        rows: m
            .action_rows(i)
            .into_iter()
            .map(|(from, to, sign)| ActionRow {
                from: from.to_string(),
                to: to.to_string(),
                sign,
            })
            .collect(),
    }
}

/// Tables for every generator `1..n`.
pub fn action_tables(m: &CombinatorialModule) -> Vec<ActionTableRecord> {
    (1..m.n).map(|i| action_table(m, i)).collect()
}

/// Rebuilds a module from its per-generator tables.
pub fn module_from_tables(generator: Generator, n: usize, tables: &[ActionTableRecord]) -> Result<CombinatorialModule> {
    let first = tables.first().ok_or_else(|| Error::Parse("no action tables".into()))?;
    let basis = first
        .basis
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<Permutation>>>()?;
    let index: BTreeMap<&Permutation, usize> = basis.iter().enumerate().map(|(k, g)| (g, k)).collect();
    let lookup = |s: &str| -> Result<usize> {
        let g: Permutation = s.parse()?;
        index
            .get(&g)
            .copied()
            .ok_or_else(|| Error::Parse(format!("{s} is not a basis element")))
    };
    let mut table = vec![vec![Action::Zero; basis.len()]; n.saturating_sub(1)];
    for t in tables {
        if t.gen == 0 || t.gen >= n || t.side != first.side || t.basis != first.basis {
            return Err(Error::Parse(format!("inconsistent table for generator {}", t.gen)));
        }
        for row in &t.rows {
            let (b, k) = (lookup(&row.from)?, lookup(&row.to)?);
            table[t.gen - 1][b] = match (b == k, row.sign) {
                (true, 1) => Action::Fix,
                (true, -1) => Action::Negate,
                (false, 1) => Action::Send(k),
                _ => return Err(Error::Parse(format!("unsupported action row {row:?}"))),
            };
        }
    }
    Ok(CombinatorialModule {
        side: first.side,
        generator,
        n,
        basis,
        table,
    })
}

/// One row of a power sum expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionRow {
    pub beta: Composition,
    /// The coefficient of `Ψ_β / z_β`.
    pub over_z: Rational,
    /// The coefficient of `Ψ_β`.
    pub coeff: Rational,
}

/// Rows from the coefficients of `Ψ_β / z_β`, zeros dropped.
pub fn expansion_rows(over_z: &BTreeMap<Composition, Rational>) -> Vec<ExpansionRow> {
    over_z
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(b, c)| ExpansionRow {
            beta: b.clone(),
            over_z: c.clone(),
            coeff: c / Rational::from_integer(b.z_stat().into()),
        })
        .collect()
}

/// The element `Σ coeff · Ψ_β`.
pub fn expansion_to_qsym(rows: &[ExpansionRow]) -> QsymElement {
    QsymElement::from_terms(Basis::Psi, rows.iter().map(|r| (r.beta.clone(), r.coeff.clone())))
}

pub const EXPANSION_HEADER: &str = "beta\tpsi_over_z\tpsi";

pub fn write_expansion_tsv(rows: &[ExpansionRow]) -> String {
    let mut out = format!("{EXPANSION_HEADER}\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.beta, r.over_z, r.coeff));
    }
    out
}

/// Parses [`write_expansion_tsv`] output and checks each row's two columns agree.
pub fn read_expansion_tsv(text: &str) -> Result<Vec<ExpansionRow>> {
    let mut rows = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty() && *l != EXPANSION_HEADER) {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(Error::Parse(format!("expected 3 columns in {line:?}")));
        }
        let beta: Composition = cols[0].parse()?;
        let over_z = parse_rational(cols[1])?;
        let coeff = parse_rational(cols[2])?;
        if &over_z / Rational::from_integer(beta.z_stat().into()) != coeff {
            return Err(Error::Parse(format!("inconsistent row {line:?}")));
        }
        rows.push(ExpansionRow { beta, over_z, coeff });
    }
    Ok(rows)
}

/// One row of a border-strip coefficient table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripRow {
    pub shape: Composition,
    pub flavor: StripFlavor,
    pub beta: Composition,
    pub d: i64,
}

pub const STRIP_HEADER: &str = "shape\tflavor\tbeta\td";

fn flavor_name(f: StripFlavor) -> &'static str {
    match f {
        StripFlavor::Dif => "dif",
        StripFlavor::Esf => "esf",
    }
}

pub fn write_strip_tsv(rows: &[StripRow]) -> String {
    let mut out = format!("{STRIP_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            r.shape,
            flavor_name(r.flavor),
            r.beta,
            r.d
        ));
    }
    out
}

pub fn read_strip_tsv(text: &str) -> Result<Vec<StripRow>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && *l != STRIP_HEADER)
        .map(|line| {
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 4 {
                return Err(Error::Parse(format!("expected 4 columns in {line:?}")));
            }
            Ok(StripRow {
                shape: cols[0].parse()?,
                flavor: cols[1].parse()?,
                beta: cols[2].parse()?,
                d: cols[3]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {line:?}")))?,
            })
        })
        .collect()
}

/// A border-strip tableau as JSON: the cells `[row, col]` of each strip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripTableauRecord {
    pub shape: Vec<usize>,
    pub beta: Vec<usize>,
    pub strips: Vec<Vec<[usize; 2]>>,
    pub heights: Vec<usize>,
    pub sign: i64,
}

impl From<&BorderStripTableau> for StripTableauRecord {
    fn from(t: &BorderStripTableau) -> Self {
        let strips = t.strips();
        StripTableauRecord {
            shape: t.shape.parts().to_vec(),
            beta: t.strip_type.parts().to_vec(),
            heights: strips.iter().map(crate::borderstrips::height).collect(),
            strips: strips
                .iter()
                .map(|s| s.iter().map(|&(r, c)| [r, c]).collect())
                .collect(),
            sign: t.sign(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads and parses a JSON file.
pub fn read_json_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&text)
}
