//! Exact quasisymmetric function arithmetic in the monomial, fundamental and
//! type 1 power sum bases, with the quasi-shuffle product, the
//! deconcatenation coproduct and the involutions `ρ` and `ψ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::compositions::{compositions_of, Composition, Partition};
use crate::error::{Error, Result};

/// Exact rational coefficients.
pub type Rational = BigRational;

/// `Rational` from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `Rational` from a fraction `p/q`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A basis of `QSym`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
    Psi,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::M => "M",
            Basis::F => "F",
            Basis::Psi => "Psi",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(Basis::M),
            "F" | "f" => Ok(Basis::F),
            "Psi" | "psi" | "PSI" => Ok(Basis::Psi),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// A finite linear combination of basis elements with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "crate::io::QsymRecord", into = "crate::io::QsymRecord")]
pub struct QsymElement {
    basis: Basis,
    terms: BTreeMap<Composition, Rational>,
}

impl QsymElement {
    pub fn zero(basis: Basis) -> Self {
        QsymElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The unit, indexed by the empty composition.
    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Composition::empty())
    }

    pub fn basis_element(basis: Basis, alpha: Composition) -> Self {
        Self::from_terms(basis, [(alpha, rat(1))])
    }

    /// Sums the given terms, dropping zeros.
    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Composition, Rational)>) -> Self {
        let mut out = Self::zero(basis);
        for (a, c) in terms {
            out.add_term(a, c);
        }
        out
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &Composition) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` times the basis element `alpha`.
    pub fn add_term(&mut self, alpha: Composition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.basis, self.terms.iter().map(|(a, x)| (a.clone(), x * c)))
    }

    /// The common degree of all terms; `None` when degrees differ.
    /// The zero element is homogeneous of degree 0.
    pub fn degree(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(Composition::size);
        let first = sizes.next().unwrap_or(0);
        sizes.all(|s| s == first).then_some(first)
    }

    /// Rewrites in the requested basis.
    pub fn to_basis(&self, basis: Basis) -> Result<Self> {
        match basis {
            Basis::M => Ok(self.to_monomial()),
            Basis::F => Ok(self.to_fundamental()),
            Basis::Psi => self.expand_in_psi(),
        }
    }

    /// Rewrites in the `M` basis.
    pub fn to_monomial(&self) -> Self {
        let mut out = Self::zero(Basis::M);
        for (a, c) in &self.terms {
            let image = match self.basis {
                Basis::M => Self::basis_element(Basis::M, a.clone()),
                Basis::F => fundamental_in_monomial(a),
                Basis::Psi => psi_in_monomial(a),
            };
            out = out + image.scale(c);
        }
        out
    }

    /// Rewrites in the `F` basis.
    pub fn to_fundamental(&self) -> Self {
        if self.basis == Basis::F {
            return self.clone();
        }
        let mut out = Self::zero(Basis::F);
        for (a, c) in &self.to_monomial().terms {
            out = out + monomial_in_fundamental(a).scale(c);
        }
        out
    }

    /// Coefficients in the `Ψ` basis by back-substitution, finer compositions
    /// first. Requires a homogeneous element.
    pub fn expand_in_psi(&self) -> Result<Self> {
        if self.basis == Basis::Psi {
            return Ok(self.clone());
        }
        if self.degree().is_none() {
            return Err(Error::NotHomogeneous);
        }
        let mut rest = self.to_monomial();
        let mut out = Self::zero(Basis::Psi);
        while let Some(alpha) = rest
            .terms
            .keys()
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
            .cloned()
        {
            let psi = psi_in_monomial(&alpha);
            let c = rest.coeff(&alpha) / psi.coeff(&alpha);
            rest = rest - psi.scale(&c);
            out.add_term(alpha, c);
        }
        Ok(out)
    }

    /// `Ψ`-coefficients rescaled to the normalization `Ψ_β / z_β`.
    pub fn psi_over_z_coefficients(&self) -> Result<BTreeMap<Composition, Rational>> {
        Ok(self
            .expand_in_psi()?
            .terms
            .into_iter()
            .map(|(b, c)| {
                let z = Rational::from_integer(BigInt::from(b.z_stat()));
                (b, c * z)
            })
            .collect())
    }

    /// The quasi-shuffle product, returned in the `M` basis.
    pub fn product(&self, other: &Self) -> Self {
        let (x, y) = (self.to_monomial(), other.to_monomial());
        let mut out = Self::zero(Basis::M);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let cab = ca * cb;
                for (g, mult) in quasi_shuffle(a.parts(), b.parts()) {
                    out.add_term(g, &cab * rat(mult));
                }
            }
        }
        out
    }

    /// The deconcatenation coproduct in `M ⊗ M`.
    pub fn coproduct(&self) -> Tensor {
        let mut out = Tensor::default();
        for (a, c) in &self.to_monomial().terms {
            for k in 0..=a.len() {
                let left = Composition::new(a.parts()[..k].to_vec()).expect("prefix");
                let right = Composition::new(a.parts()[k..].to_vec()).expect("suffix");
                out.add_term(left, right, c.clone());
            }
        }
        out
    }

    /// The coefficient of the unit.
    pub fn counit(&self) -> Rational {
        self.to_monomial().coeff(&Composition::empty())
    }

    /// `ρ(F_α) = F_{α^r}`, returned in the `F` basis.
    pub fn invol_rho(&self) -> Self {
        self.relabel_fundamental(Composition::reverse)
    }

    /// `ψ(F_α) = F_{α^c}`, returned in the `F` basis.
    pub fn invol_psi(&self) -> Self {
        self.relabel_fundamental(Composition::complement)
    }

    fn relabel_fundamental(&self, map: impl Fn(&Composition) -> Composition) -> Self {
        Self::from_terms(
            Basis::F,
            self.to_fundamental().terms.iter().map(|(a, c)| (map(a), c.clone())),
        )
    }

    /// Whether the `M` coefficients depend only on the sorted parts.
    pub fn is_symmetric(&self) -> bool {
        let m = self.to_monomial();
        let mut by_shape: BTreeMap<Partition, Rational> = BTreeMap::new();
        let sizes: std::collections::BTreeSet<usize> = m.terms.keys().map(Composition::size).collect();
        for n in sizes {
            for a in compositions_of(n) {
                let c = m.coeff(&a);
                match by_shape.get(&a.sort_to_partition()) {
                    Some(prev) if *prev != c => return false,
                    Some(_) => {}
                    None => {
                        by_shape.insert(a.sort_to_partition(), c);
                    }
                }
            }
        }
        true
    }

    /// The polynomial in `x_1, ..., x_k` obtained by setting `x_j = 0` for `j > k`.
    pub fn specialize(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::new();
        for (a, c) in &self.to_monomial().terms {
            let l = a.len();
            if l > k {
                continue;
            }
            for support in increasing_tuples(k, l) {
                let mut exps = vec![0usize; k];
                for (&i, &p) in support.iter().zip(a.parts()) {
                    exps[i] = p;
                }
                add_monomial(&mut out, exps, c.clone());
            }
        }
        out
    }
}

impl Add for QsymElement {
    type Output = QsymElement;

    fn add(self, rhs: Self) -> Self {
        let rhs = if rhs.basis == self.basis {
            rhs
        } else {
            rhs.to_basis(self.basis).expect("sum of homogeneous elements")
        };
        let mut out = self;
        for (a, c) in rhs.terms {
            out.add_term(a, c);
        }
        out
    }
}

impl Neg for QsymElement {
    type Output = QsymElement;

    fn neg(self) -> Self {
        self.scale(&rat(-1))
    }
}

impl Sub for QsymElement {
    type Output = QsymElement;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for &QsymElement {
    type Output = QsymElement;

    fn mul(self, rhs: Self) -> QsymElement {
        self.product(rhs)
    }
}

impl fmt::Display for QsymElement {
    /// `3/5*M(5,1) + M(2,3,1)`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}{}", self.basis, a)?;
        }
        Ok(())
    }
}

/// `F_α = Σ_{β ⪯ α} M_β`.
pub fn fundamental_in_monomial(alpha: &Composition) -> QsymElement {
    QsymElement::from_terms(Basis::M, alpha.refinements().into_iter().map(|b| (b, rat(1))))
}

/// `M_α = Σ_{β ⪯ α} (-1)^{ℓ(β)-ℓ(α)} F_β`.
pub fn monomial_in_fundamental(alpha: &Composition) -> QsymElement {
    QsymElement::from_terms(
        Basis::F,
        alpha.refinements().into_iter().map(|b| {
            let sign = if (b.len() - alpha.len()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            (b, rat(sign))
        }),
    )
}

/// `Ψ_α = z_α Σ_{β ⪰ α} M_β / π(α, β)`.
pub fn psi_in_monomial(alpha: &Composition) -> QsymElement {
    let z = BigInt::from(alpha.z_stat());
    QsymElement::from_terms(
        Basis::M,
        alpha.coarsenings().into_iter().map(|b| {
            let pi = alpha.pi_pair(&b).expect("coarsening");
            (b, Rational::new(z.clone(), BigInt::from(pi)))
        }),
    )
}

/// `p_λ = ∏ M_{(λ_i)}` in the `M` basis.
pub fn power_sum(lambda: &Partition) -> QsymElement {
    lambda.parts().iter().fold(QsymElement::one(Basis::M), |acc, &p| {
        acc.product(&QsymElement::basis_element(Basis::M, Composition::single(p)))
    })
}

/// Overlapping shuffles of two words with multiplicity.
fn quasi_shuffle(a: &[usize], b: &[usize]) -> BTreeMap<Composition, i64> {
    let mut out = BTreeMap::new();
    let mut prefix = Vec::new();
    qsh_rec(a, b, &mut prefix, &mut out);
    out
}

fn qsh_rec(a: &[usize], b: &[usize], prefix: &mut Vec<usize>, out: &mut BTreeMap<Composition, i64>) {
    if a.is_empty() || b.is_empty() {
        let mut word = prefix.clone();
        word.extend_from_slice(a);
        word.extend_from_slice(b);
        *out.entry(Composition::new(word).expect("positive parts")).or_insert(0) += 1;
        return;
    }
    prefix.push(a[0]);
    qsh_rec(&a[1..], b, prefix, out);
    prefix.pop();
    prefix.push(b[0]);
    qsh_rec(a, &b[1..], prefix, out);
    prefix.pop();
    prefix.push(a[0] + b[0]);
    qsh_rec(&a[1..], &b[1..], prefix, out);
    prefix.pop();
}

/// An element of `QSym ⊗ QSym` in the basis `M_α ⊗ M_β`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Tensor {
    terms: BTreeMap<(Composition, Composition), Rational>,
}

impl Tensor {
    pub fn terms(&self) -> &BTreeMap<(Composition, Composition), Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, a: Composition, b: Composition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `x ⊗ y`, both sides rewritten in `M`.
    pub fn pure(x: &QsymElement, y: &QsymElement) -> Self {
        let mut out = Tensor::default();
        for (a, ca) in &x.to_monomial().terms {
            for (b, cb) in &y.to_monomial().terms {
                out.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        out
    }

    pub fn add(&mut self, other: &Tensor) {
        for ((a, b), c) in &other.terms {
            self.add_term(a.clone(), b.clone(), c.clone());
        }
    }

    /// The component of bidegree `(p, q)`.
    pub fn bidegree(&self, p: usize, q: usize) -> Tensor {
        Tensor {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| a.size() == p && b.size() == q)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// `(ε ⊗ id)` applied to the tensor.
    pub fn counit_left(&self) -> QsymElement {
        QsymElement::from_terms(
            Basis::M,
            self.terms
                .iter()
                .filter(|((a, _), _)| a.is_empty())
                .map(|((_, b), c)| (b.clone(), c.clone())),
        )
    }

    /// `(id ⊗ ε)` applied to the tensor.
    pub fn counit_right(&self) -> QsymElement {
        QsymElement::from_terms(
            Basis::M,
            self.terms
                .iter()
                .filter(|((_, b), _)| b.is_empty())
                .map(|((a, _), c)| (a.clone(), c.clone())),
        )
    }

    /// Componentwise product in `QSym ⊗ QSym`.
    pub fn product(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let left = quasi_shuffle(a1.parts(), a2.parts());
                let right = quasi_shuffle(b1.parts(), b2.parts());
                let c = c1 * c2;
                for (l, ml) in &left {
                    for (r, mr) in &right {
                        out.add_term(l.clone(), r.clone(), &c * rat(ml * mr));
                    }
                }
            }
        }
        out
    }
}

/// Polynomials as maps from exponent vectors to coefficients.
pub type Polynomial = BTreeMap<Vec<usize>, Rational>;

/// Adds `c · x^exps` to `poly`.
pub fn add_monomial(poly: &mut Polynomial, exps: Vec<usize>, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = poly.entry(exps.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        poly.remove(&exps);
    }
}

fn increasing_tuples(k: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    tuples_rec(0, k, l, &mut cur, &mut out);
    out
}

fn tuples_rec(start: usize, k: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == l {
        out.push(cur.clone());
        return;
    }
    for i in start..k {
        cur.push(i);
        tuples_rec(i + 1, k, l, cur, out);
        cur.pop();
    }
}
