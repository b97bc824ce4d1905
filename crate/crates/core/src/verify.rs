//! Verification suites. Each suite runs exhaustive or seeded-random checks of
//! a structural identity and returns a serializable report listing
//! counterexamples.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::borderstrips::{expand_in_psi, skew_oracle, StripFlavor};
use crate::compositions::{compositions_of, partitions_of, Composition, Partition};
use crate::error::{Error, Result};
use crate::hecke::{
    characteristic_of_poset_module, check_functor_f, check_twist, interval_module, irreducible, poset_module,
    poset_module_bar, restrict, Flavor, Twist,
};
use crate::permutations::{all_permutations, interval, Permutation, Side};
use crate::posets::{all_posets, poset_catalog, random_poset, LabeledPoset};
use crate::ppart::{kp_fundamental, kp_in_psi_via_starred};
use crate::qsym::{power_sum, psi_in_monomial, Basis, QsymElement, Rational, Tensor};
use crate::tableaux::{family_posets, tableau_character, Family, TableauKind};

/// Counterexamples kept per check.
pub const MAX_COUNTEREXAMPLES: usize = 10;
/// Random pairs in the product check.
pub const HOPF_RANDOM_PAIRS: usize = 200;
/// Bound on `|P1| + |P2|` in the product check.
pub const HOPF_MAX_TOTAL: usize = 7;
/// Random posets in the starred-partition check.
pub const LW_RANDOM_POSETS: usize = 100;
/// Size of the random posets in the starred-partition check.
pub const LW_RANDOM_SIZE: usize = 5;
/// Largest `n` in the power sum check.
pub const POWER_SUM_MAX: usize = 7;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Relations,
    Interval,
    Hopf,
    Twists,
    LiuWeselcouch,
    Borderstrips,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Relations,
        Suite::Interval,
        Suite::Hopf,
        Suite::Twists,
        Suite::LiuWeselcouch,
        Suite::Borderstrips,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Interval => "interval",
            Suite::Hopf => "hopf",
            Suite::Twists => "twists",
            Suite::LiuWeselcouch => "liu-weselcouch",
            Suite::Borderstrips => "borderstrips",
        }
    }

    pub fn run(self, opts: &VerifyOptions) -> SuiteReport {
        let start = Instant::now();
        let checks = match self {
            Suite::Relations => relations(opts),
            Suite::Interval => interval_suite(opts),
            Suite::Hopf => hopf(opts),
            Suite::Twists => twists(opts),
            Suite::LiuWeselcouch => liu_weselcouch(opts),
            Suite::Borderstrips => families(opts),
        };
        SuiteReport {
            suite: self,
            n: opts.n,
            passed: checks.iter().all(|c| c.passed),
            millis: Some(start.elapsed().as_millis() as u64),
            checks,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "families" => Ok(Suite::Borderstrips),
            _ => Suite::ALL
                .into_iter()
                .find(|x| x.name() == s)
                .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

/// `"all"` or a single suite name.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Exhaustive bound on the number of poset elements or the composition size.
    pub n: usize,
    /// Also run the `n = 5` poset catalog in the interval and Hopf suites.
    pub extended: bool,
    pub seed: u64,
    /// Directory for the poset catalog cache.
    pub cache: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: 4,
            extended: false,
            seed: DEFAULT_SEED,
            cache: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub passed: bool,
    /// Wall-clock time, omitted when timings are stripped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    /// The report with timings removed, for byte-stable output.
    pub fn without_timings(mut self) -> Self {
        for s in &mut self.suites {
            s.millis = None;
        }
        self
    }

    /// Failed checks as `(suite, check)` pairs.
    pub fn failures(&self) -> Vec<(Suite, &Check)> {
        self.suites
            .iter()
            .flat_map(|s| s.checks.iter().filter(|c| !c.passed).map(move |c| (s.suite, c)))
            .collect()
    }
}

/// Runs the suites on separate threads; the report keeps the given order.
pub fn run_suites(suites: &[Suite], opts: &VerifyOptions) -> Report {
    let reports: Vec<SuiteReport> = std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|&suite| s.spawn(move || suite.run(opts))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    Report {
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    }
}

/// Runs `test` on every case; `Err` carries a counterexample description.
fn check<T>(
    name: &str,
    cases: impl IntoIterator<Item = T>,
    test: impl Fn(&T) -> std::result::Result<(), String>,
) -> Check {
    let mut out = Check {
        name: name.to_string(),
        passed: true,
        cases: 0,
        failures: 0,
        counterexamples: Vec::new(),
    };
    for case in cases {
        out.cases += 1;
        if let Err(msg) = test(&case) {
            out.passed = false;
            out.failures += 1;
            if out.counterexamples.len() < MAX_COUNTEREXAMPLES {
                out.counterexamples.push(msg);
            }
        }
    }
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn posets_up_to(n: usize) -> Vec<LabeledPoset> {
    (1..=n).flat_map(all_posets).collect()
}

fn poset_label(p: &LabeledPoset) -> String {
    format!("n={} covers={:?}", p.n(), p.covers())
}

/// Every pair `σ ≤ ρ` in the weak order of the given side on `S_k`, `k ≤ n`.
fn comparable_pairs(side: Side, n: usize) -> Vec<(Permutation, Permutation)> {
    let mut out = Vec::new();
    for k in 1..=n {
        let all = all_permutations(k);
        for s in &all {
            for r in all.iter().filter(|r| s.leq(side, r)) {
                out.push((s.clone(), r.clone()));
            }
        }
    }
    out
}

fn relations(opts: &VerifyOptions) -> Vec<Check> {
    let posets = posets_up_to(opts.n);
    let mut intervals = Vec::new();
    for side in [Side::Right, Side::Left] {
        for (s, r) in comparable_pairs(side, opts.n) {
            for flavor in [Flavor::Plain, Flavor::Bar] {
                intervals.push((side, flavor, s.clone(), r.clone()));
            }
        }
    }
    vec![
        check("poset modules", &posets, |p| {
            let (m, mb) = (poset_module(p), poset_module_bar(p));
            ensure(
                m.check_relations()
                    && mb.check_relations()
                    && m.to_matrix_module().check_relations()
                    && mb.to_matrix_module().check_relations(),
                || poset_label(p),
            )
        }),
        check("interval modules", &intervals, |(side, flavor, s, r)| {
            let m = interval_module(*side, *flavor, s, r).map_err(|e| e.to_string())?;
            ensure(m.check_relations(), || format!("{side} {flavor:?} [{s}, {r}]"))
        }),
        check("irreducible modules", (1..=opts.n).flat_map(compositions_of), |a| {
            ensure(irreducible(a).check_relations(), || a.to_string())
        }),
    ]
}

/// Whether `Σ_R(P)` is a right weak interval, by comparing it with the
/// interval spanned by its shortest and longest elements.
fn sigma_is_interval(p: &LabeledPoset) -> bool {
    let mut words = p.sigma_r();
    words.sort();
    let bottom = words.iter().min_by_key(|g| g.length()).expect("nonempty");
    let top = words.iter().max_by_key(|g| g.length()).expect("nonempty");
    match interval(Side::Right, bottom, top) {
        Ok(iv) => {
            let mut elems = iv.elements.clone();
            elems.sort();
            elems == words
        }
        Err(_) => false,
    }
}

fn interval_suite(opts: &VerifyOptions) -> Vec<Check> {
    let right = comparable_pairs(Side::Right, opts.n);
    let left = comparable_pairs(Side::Left, opts.n);
    let mut out = vec![
        check("interval to poset round trip", &right, |(s, r)| {
            let p = LabeledPoset::from_interval(s, r).map_err(|e| e.to_string())?;
            let mut elems = interval(Side::Right, s, r).map_err(|e| e.to_string())?.elements;
            elems.sort();
            let mut words = p.sigma_r();
            words.sort();
            let module = interval_module(Side::Right, Flavor::Bar, s, r).map_err(|e| e.to_string())?;
            ensure(p.is_regular() && words == elems && module == poset_module(&p), || {
                format!("[{s}, {r}]")
            })
        }),
        check("regular iff interval", posets_up_to(opts.n), |p| {
            ensure(p.is_regular() == sigma_is_interval(p), || poset_label(p))
        }),
        check("left intervals under the functor", &left, |(s, r)| {
            ensure(check_functor_f(s, r) == Ok(true), || format!("[{s}, {r}]_L"))
        }),
    ];
    if opts.extended {
        let catalog = poset_catalog(5, opts.cache.as_deref());
        out.push(match catalog {
            Ok(ps) => check("regular iff interval, n = 5", ps, |p| {
                ensure(p.is_regular() == sigma_is_interval(p), || poset_label(p))
            }),
            Err(e) => check("regular iff interval, n = 5", [e], |e| Err(e.to_string())),
        });
    }
    out
}

fn random_pair(rng: &mut ChaCha8Rng) -> (LabeledPoset, LabeledPoset) {
    let n1 = rng.gen_range(1..HOPF_MAX_TOTAL);
    let n2 = rng.gen_range(1..=HOPF_MAX_TOTAL - n1);
    let d1 = rng.gen_range(0.0..1.0);
    let d2 = rng.gen_range(0.0..1.0);
    (random_poset(n1, d1, rng), random_poset(n2, d2, rng))
}

/// `Σ_m Σ_{Q ∈ LS(P, m)} K_{st(Q)} ⊗ K_{st(P \ Q)}`.
pub fn lower_subposet_coproduct(p: &LabeledPoset) -> Tensor {
    let mut out = Tensor::default();
    for m in 0..=p.n() {
        for (q, rest) in restrict(p, m) {
            out.add(&Tensor::pure(&kp_fundamental(&q), &kp_fundamental(&rest)));
        }
    }
    out
}

fn hopf(opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pairs: Vec<_> = (0..HOPF_RANDOM_PAIRS).map(|_| random_pair(&mut rng)).collect();
    let mut out = vec![
        check("product of disjoint unions", &pairs, |(a, b)| {
            let lhs = characteristic_of_poset_module(&a.disjoint_union(b)).to_monomial();
            let rhs = characteristic_of_poset_module(a).product(&characteristic_of_poset_module(b));
            ensure(lhs == rhs, || format!("{} | {}", poset_label(a), poset_label(b)))
        }),
        check(
            "coproduct over lower subposets",
            posets_up_to(opts.n),
            coproduct_matches,
        ),
    ];
    if opts.extended {
        out.push(match poset_catalog(5, opts.cache.as_deref()) {
            Ok(ps) => check("coproduct over lower subposets, n = 5", ps, coproduct_matches),
            Err(e) => check("coproduct over lower subposets, n = 5", [e], |e| Err(e.to_string())),
        });
    }
    out
}

fn coproduct_matches(p: &LabeledPoset) -> std::result::Result<(), String> {
    ensure(kp_fundamental(p).coproduct() == lower_subposet_coproduct(p), || {
        poset_label(p)
    })
}

fn twists(opts: &VerifyOptions) -> Vec<Check> {
    let posets = posets_up_to(opts.n);
    let cases: Vec<_> = posets
        .iter()
        .flat_map(|p| [Twist::Phi, Twist::Theta, Twist::Chi].map(|w| (p.clone(), w)))
        .collect();
    vec![
        check("intertwiners", &cases, |(p, w)| {
            ensure(check_twist(p, *w) == Ok(true), || format!("{w:?} {}", poset_label(p)))
        }),
        check("twisted characteristics", &cases, |(p, w)| {
            let k = characteristic_of_poset_module(p);
            let twisted = poset_module(p)
                .to_matrix_module()
                .twisted(*w)
                .characteristic()
                .map_err(|e| e.to_string())?;
            let expected = match w {
                Twist::Phi => k.invol_rho(),
                Twist::Theta => k.invol_psi(),
                Twist::Chi => k,
            };
            ensure(twisted == expected, || format!("{w:?} {}", poset_label(p)))
        }),
    ]
}

fn nonzero(m: BTreeMap<Composition, Rational>) -> BTreeMap<Composition, Rational> {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn integral(m: BTreeMap<Composition, i64>) -> BTreeMap<Composition, Rational> {
    nonzero(
        m.into_iter()
            .map(|(b, c)| (b, Rational::from_integer(c.into())))
            .collect(),
    )
}

/// Starred-partition coefficients against the linear-algebra expansion.
fn starred_matches(p: &LabeledPoset) -> std::result::Result<(), String> {
    let starred = integral(kp_in_psi_via_starred(p).map_err(|e| e.to_string())?);
    let solved = nonzero(kp_fundamental(p).psi_over_z_coefficients().map_err(|e| e.to_string())?);
    ensure(starred == solved, || poset_label(p))
}

fn liu_weselcouch(opts: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x1157);
    let random: Vec<_> = (0..LW_RANDOM_POSETS)
        .map(|_| {
            let d = rng.gen_range(0.0..1.0);
            random_poset(LW_RANDOM_SIZE, d, &mut rng)
        })
        .collect();
    let lambdas: Vec<Partition> = (1..=POWER_SUM_MAX).flat_map(partitions_of).collect();
    vec![
        check("starred partitions, exhaustive", posets_up_to(opts.n), starred_matches),
        check("starred partitions, random", random, starred_matches),
        check("power sums refine into psi", &lambdas, |lambda| {
            let expected = QsymElement::from_terms(
                Basis::Psi,
                compositions_of(lambda.size())
                    .filter(|a| &a.sort_to_partition() == *lambda)
                    .map(|a| (a, Rational::from_integer(1.into()))),
            );
            let direct = power_sum(lambda);
            let from_psi = expected.to_monomial();
            ensure(direct.expand_in_psi() == Ok(expected) && direct == from_psi, || {
                lambda.to_string()
            })
        }),
    ]
}

fn family_character(family: Family, alpha: &Composition) -> Result<QsymElement> {
    Ok(family_posets(family, alpha)?
        .iter()
        .fold(QsymElement::zero(Basis::F), |acc, p| acc + kp_fundamental(p)))
}

fn families(opts: &VerifyOptions) -> Vec<Check> {
    let alphas: Vec<Composition> = (1..=opts.n).flat_map(compositions_of).collect();
    let pairs = [
        (Family::Dimm, TableauKind::Sit),
        (Family::Ext, TableauKind::Set),
        (Family::Qs, TableauKind::Srct),
    ];
    let flavors = [
        (StripFlavor::Dif, Family::Dimm, TableauKind::Sit),
        (StripFlavor::Esf, Family::Ext, TableauKind::Set),
    ];
    vec![
        check("poset characters match tableau descents", &alphas, |a| {
            for (family, kind) in pairs {
                let k = family_character(family, a).map_err(|e| e.to_string())?;
                ensure(k == tableau_character(kind, a), || format!("{family} {a}"))?;
            }
            Ok(())
        }),
        check("reversed families are psi images", &alphas, |a| {
            for (rev, base) in [(Family::Rdimm, Family::Dimm), (Family::Rext, Family::Ext)] {
                let r = family_character(rev, a).map_err(|e| e.to_string())?;
                let b = family_character(base, a).map_err(|e| e.to_string())?;
                ensure(r == b.invol_psi(), || format!("{rev} {a}"))?;
            }
            Ok(())
        }),
        check("border strips match both oracles", &alphas, |a| {
            for (flavor, family, kind) in flavors {
                let strips = integral(expand_in_psi(flavor, a).map_err(|e| e.to_string())?);
                let poset = family_posets(family, a).map_err(|e| e.to_string())?.remove(0);
                let starred = integral(kp_in_psi_via_starred(&poset).map_err(|e| e.to_string())?);
                let solved = nonzero(
                    tableau_character(kind, a)
                        .psi_over_z_coefficients()
                        .map_err(|e| e.to_string())?,
                );
                ensure(strips == starred && strips == solved, || format!("{flavor:?} {a}"))?;
                let rebuilt = strips.iter().fold(QsymElement::zero(Basis::M), |acc, (b, d)| {
                    let z = Rational::from_integer(b.z_stat().into());
                    acc + psi_in_monomial(b).scale(&(d / z))
                });
                ensure(rebuilt == tableau_character(kind, a).to_monomial(), || {
                    format!("{flavor:?} {a} round trip")
                })?;
            }
            Ok(())
        }),
        check(
            "skew shapes",
            [("3,3,2", "2"), ("3,2", ""), ("3,2,1", "1")],
            |(l, m)| {
                let lambda: Partition = l.parse().map_err(|e: Error| e.to_string())?;
                let mu: Partition = m.parse().map_err(|e: Error| e.to_string())?;
                let (p, chi) = skew_oracle(&lambda, &mu).map_err(|e| e.to_string())?;
                let starred = kp_in_psi_via_starred(&p).map_err(|e| e.to_string())?;
                ensure(integral(chi) == integral(starred), || format!("({l})/({m})"))
            },
        ),
    ]
}

/// Right weak intervals `[σ, ρ]_R` of `S_n` whose module has the given
/// dimension and characteristic.
pub fn right_intervals_with_character(n: usize, dim: usize, ch: &QsymElement) -> Vec<(Permutation, Permutation)> {
    let target = ch.to_fundamental();
    let all = all_permutations(n);
    let mut out = Vec::new();
    for s in &all {
        for r in all.iter().filter(|r| s.leq_right(r)) {
            let iv = interval(Side::Right, s, r).expect("comparable");
            if iv.len() != dim {
                continue;
            }
            let k = QsymElement::from_terms(
                Basis::F,
                iv.elements
                    .iter()
                    .map(|g| (g.descent_composition(Side::Right), Rational::from_integer(1.into()))),
            );
            if k == target {
                out.push((s.clone(), r.clone()));
            }
        }
    }
    out
}
