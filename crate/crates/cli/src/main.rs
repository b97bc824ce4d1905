mod dot;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use heckeposet::borderstrips::{expand_in_psi, StripFlavor};
use heckeposet::hecke::functor_f;
use heckeposet::io::{expansion_rows, read_json_file, to_json, write_expansion_tsv, QsymRecord};
use heckeposet::posets::cache_dir_from_env;
use heckeposet::ppart::{kp_fundamental, kp_in_psi_via_starred, DEFAULT_MAX_N};
use heckeposet::qsym::Rational;
use heckeposet::tableaux::{
    build_d_steps, class_of, des_complement_composition, family_posets, poset_quasischur, read_tau_with, sink_from,
    srct_classes,
};
use heckeposet::verify::{parse_suites, run_suites, VerifyOptions, DEFAULT_SEED};
use heckeposet::{
    interval, Basis, Composition, CompositionTableau, Diagram, Family, LabeledPoset, Permutation, QsymElement, Side,
    TableauKind,
};

/// Hard cap on `--max-n` for the starred and border-strip routes.
const HARD_MAX_N: usize = 9;
/// Size cap for linear-extension and tableau enumeration.
const SIZE_CAP: usize = 12;

#[derive(Parser)]
#[command(
    name = "heckeposet",
    version,
    about = "0-Hecke poset modules and quasisymmetric power sum expansions"
)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a family function or a poset's K_P.
    Expand(ExpandArgs),
    /// Emit the Hasse diagram of a poset as DOT.
    Hasse(SourceArgs),
    /// Build a poset and report its linear extensions and characteristic.
    Poset(PosetArgs),
    /// List a weak order interval and its poset.
    Interval(IntervalArgs),
    /// Run the sink algorithm on an SRCT, or list the classes of a shape.
    SinkTableau(SinkArgs),
    /// Run the diagram construction for a composition and a permutation.
    BuildD(BuildDArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Back-substitution in the Ψ basis.
    Linear,
    /// Signed starred P-partitions.
    Starred,
    /// Signed border-strip tableaux (dimm and ext only).
    Strips,
}

#[derive(Args)]
struct SourceArgs {
    /// A family name, or `poset` to read --covers-file.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    /// JSON poset `{"n": .., "covers": [[u, v], ..]}`.
    #[arg(long)]
    covers_file: Option<PathBuf>,
    /// JSON diagram `{"cells": [[x, y], ..]}`; uses its canonical poset.
    #[arg(long)]
    diagram_file: Option<PathBuf>,
    /// Which poset of a multi-poset family, 1-based.
    #[arg(long, default_value_t = 1)]
    index: usize,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, default_value = "Psi")]
    basis: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Route::Linear)]
    route: Route,
    /// Size bound for the starred and border-strip routes.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

#[derive(Args)]
struct PosetArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(long, default_value = "right")]
    side: String,
    /// Bottom endpoint.
    #[arg(long)]
    sigma: String,
    /// Top endpoint.
    #[arg(long)]
    rho: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SinkArgs {
    /// An SRCT as "/"-separated rows, e.g. "2 1/5 4 3/7 6/11 10 9 8".
    #[arg(long)]
    tableau: Option<String>,
    /// List every class of this shape instead.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct BuildDArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    rho: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Add the n = 5 poset catalog to the interval and hopf suites.
    #[arg(long)]
    extended: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

fn parse_alpha(s: Option<&str>) -> Result<Composition> {
    let s = s.ok_or_else(|| anyhow!("--alpha is required"))?;
    s.parse().map_err(|e| anyhow!("bad --alpha {s:?}: {e}"))
}

fn check_size(n: usize) -> Result<()> {
    if n > SIZE_CAP {
        bail!("size {n} exceeds the cap {SIZE_CAP}");
    }
    Ok(())
}

fn check_max_n(n: usize, max_n: usize) -> Result<()> {
    if max_n > HARD_MAX_N {
        bail!("--max-n {max_n} exceeds the hard cap {HARD_MAX_N}");
    }
    if n > max_n {
        bail!("size {n} exceeds --max-n {max_n}");
    }
    Ok(())
}

enum Source {
    Family(Family, Composition),
    Posets(Vec<LabeledPoset>),
}

impl SourceArgs {
    fn resolve(&self) -> Result<Source> {
        if let Some(path) = &self.diagram_file {
            let d: Diagram = read_json_file(path)?;
            check_size(d.len())?;
            return Ok(Source::Posets(vec![d.canonical_poset()]));
        }
        match self.family.as_deref() {
            None | Some("poset") => {
                let path = self
                    .covers_file
                    .as_ref()
                    .ok_or_else(|| anyhow!("give --family with --alpha, --covers-file or --diagram-file"))?;
                let p: LabeledPoset = read_json_file(path)?;
                check_size(p.n())?;
                Ok(Source::Posets(vec![p]))
            }
            Some(name) => {
                let family: Family = name.parse()?;
                let alpha = parse_alpha(self.alpha.as_deref())?;
                check_size(alpha.size())?;
                Ok(Source::Family(family, alpha))
            }
        }
    }

    fn posets(&self) -> Result<Vec<LabeledPoset>> {
        match self.resolve()? {
            Source::Posets(ps) => Ok(ps),
            Source::Family(f, a) => Ok(family_posets(f, &a)?),
        }
    }

    fn single(&self) -> Result<LabeledPoset> {
        let mut ps = self.posets()?;
        if self.index == 0 || self.index > ps.len() {
            bail!("--index {} out of range 1..={}", self.index, ps.len());
        }
        Ok(ps.swap_remove(self.index - 1))
    }
}

fn characteristic(posets: &[LabeledPoset]) -> QsymElement {
    posets
        .iter()
        .fold(QsymElement::zero(Basis::F), |acc, p| acc + kp_fundamental(p))
}

fn integral(m: BTreeMap<Composition, i64>) -> BTreeMap<Composition, Rational> {
    m.into_iter()
        .map(|(b, d)| (b, Rational::from_integer(d.into())))
        .collect()
}

fn psi_over_z(args: &ExpandArgs) -> Result<BTreeMap<Composition, Rational>> {
    let source = args.source.resolve()?;
    if args.route != Route::Linear {
        let n = match &source {
            Source::Family(_, a) => a.size(),
            Source::Posets(ps) => ps.iter().map(LabeledPoset::n).max().unwrap_or(0),
        };
        check_max_n(n, args.max_n)?;
    }
    match (args.route, source) {
        (Route::Strips, Source::Family(family, alpha)) => {
            let flavor = match family {
                Family::Dimm => StripFlavor::Dif,
                Family::Ext => StripFlavor::Esf,
                _ => bail!("border strips exist only for dimm and ext"),
            };
            Ok(integral(expand_in_psi(flavor, &alpha)?))
        }
        (Route::Strips, Source::Posets(_)) => bail!("border strips need --family dimm or ext"),
        (route, source) => {
            let posets = match source {
                Source::Posets(ps) => ps,
                Source::Family(f, a) => family_posets(f, &a)?,
            };
            if route == Route::Starred {
                let mut total: BTreeMap<Composition, i64> = BTreeMap::new();
                for p in &posets {
                    for (b, d) in kp_in_psi_via_starred(p)? {
                        *total.entry(b).or_insert(0) += d;
                    }
                }
                total.retain(|_, d| *d != 0);
                Ok(integral(total))
            } else {
                Ok(characteristic(&posets).psi_over_z_coefficients()?)
            }
        }
    }
}

fn cmd_expand(args: &ExpandArgs) -> Result<String> {
    let basis: Basis = args.basis.parse()?;
    if basis == Basis::Psi {
        let rows = expansion_rows(&psi_over_z(args)?);
        return Ok(match args.format {
            Format::Text => rows.iter().map(|r| format!("{} {}\n", r.beta, r.over_z)).collect(),
            Format::Tsv => write_expansion_tsv(&rows),
            Format::Json => to_json(&QsymRecord::from(heckeposet::io::expansion_to_qsym(&rows)))? + "\n",
        });
    }
    if args.route != Route::Linear {
        bail!("--route applies only to the Psi basis");
    }
    let x = characteristic(&args.source.posets()?).to_basis(basis)?;
    Ok(match args.format {
        Format::Text => x.terms().iter().map(|(a, c)| format!("{basis}_{a} {c}\n")).collect(),
        Format::Tsv => {
            let mut out = String::from("comp\tcoeff\n");
            for (a, c) in x.terms() {
                out.push_str(&format!("{a}\t{c}\n"));
            }
            out
        }
        Format::Json => to_json(&x)? + "\n",
    })
}

fn cmd_hasse(args: &SourceArgs) -> Result<String> {
    let p = args.single()?;
    let name = match (&args.family, &args.alpha) {
        (Some(f), Some(a)) if f != "poset" => format!("{f}{a}"),
        _ => "P".to_string(),
    };
    Ok(dot::hasse_dot(&p, &name))
}

fn words(v: &[Permutation]) -> Vec<String> {
    v.iter().map(Permutation::to_string).collect()
}

fn cmd_poset(args: &PosetArgs) -> Result<String> {
    let p = args.source.single()?;
    let ch = kp_fundamental(&p);
    Ok(match args.format {
        Format::Json => {
            let v = json!({
                "n": p.n(),
                "covers": p.covers().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
                "regular": p.is_regular(),
                "sigma_r": words(&p.sigma_r()),
                "sigma_l": words(&p.sigma_l()),
                "characteristic": QsymRecord::from(ch),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Text | Format::Tsv => {
            let covers: Vec<String> = p.covers().iter().map(|(u, v)| format!("{u}<{v}")).collect();
            format!(
                "n\t{}\ncovers\t{}\nregular\t{}\nsigma_r\t{}\nsigma_l\t{}\ncharacteristic\t{}\n",
                p.n(),
                covers.join(" "),
                p.is_regular(),
                words(&p.sigma_r()).join(" "),
                words(&p.sigma_l()).join(" "),
                ch
            )
        }
    })
}

fn cmd_interval(args: &IntervalArgs) -> Result<String> {
    let side: Side = args.side.parse()?;
    let sigma: Permutation = args.sigma.parse()?;
    let rho: Permutation = args.rho.parse()?;
    let iv = interval(side, &sigma, &rho)?;
    let mut elements = iv.elements.clone();
    elements.sort();
    let extra = match side {
        Side::Right => {
            let p = LabeledPoset::from_interval(&sigma, &rho)?;
            json!({"poset": p})
        }
        Side::Left => {
            let (lo, hi) = functor_f(&sigma, &rho)?;
            json!({"functor": [lo.to_string(), hi.to_string()]})
        }
    };
    Ok(match args.format {
        Format::Json => {
            let mut v = json!({
                "side": side,
                "bottom": sigma.to_string(),
                "top": rho.to_string(),
                "elements": words(&elements),
            });
            v.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Text | Format::Tsv => words(&elements).iter().map(|w| format!("{w}\n")).collect(),
    })
}

fn tableau_summary(tau: &CompositionTableau) -> Result<serde_json::Value> {
    let class = class_of(tau)?;
    let source = class
        .source()
        .ok_or_else(|| anyhow!("class of {tau} has no unique source"))?;
    let sink = sink_from(tau)?;
    Ok(json!({
        "tableau": tau.to_string(),
        "source": source.to_string(),
        "sink": sink.to_string(),
        "read": read_tau_with(&sink, source)?.to_string(),
        "des_complement": des_complement_composition(source).to_string(),
        "class_size": class.members.len(),
        "poset": poset_quasischur(source)?,
    }))
}

fn cmd_sink(args: &SinkArgs) -> Result<String> {
    let summaries = match (&args.tableau, &args.alpha) {
        (Some(t), None) => vec![tableau_summary(&CompositionTableau::parse(TableauKind::Srct, t)?)?],
        (None, Some(a)) => {
            let alpha = parse_alpha(Some(a))?;
            check_size(alpha.size())?;
            srct_classes(&alpha)
                .iter()
                .map(|c| {
                    let src = c.source().ok_or_else(|| anyhow!("class without a unique source"))?;
                    tableau_summary(src)
                })
                .collect::<Result<_>>()?
        }
        _ => bail!("give exactly one of --tableau and --alpha"),
    };
    Ok(match args.format {
        Format::Json => serde_json::to_string_pretty(&summaries)? + "\n",
        Format::Text | Format::Tsv => {
            let mut out = String::from("source\tsink\tread\tdes_complement\n");
            for s in &summaries {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    s["source"].as_str().unwrap(),
                    s["sink"].as_str().unwrap(),
                    s["read"].as_str().unwrap(),
                    s["des_complement"].as_str().unwrap()
                ));
            }
            out
        }
    })
}

fn cmd_build_d(args: &BuildDArgs) -> Result<String> {
    let alpha = parse_alpha(Some(&args.alpha))?;
    let rho: Permutation = args.rho.parse()?;
    let b = build_d_steps(&alpha, &rho)?;
    Ok(match args.format {
        Format::Json => {
            let v = json!({"r": b.r, "c": b.c, "diagram": b.diagram});
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Text | Format::Tsv => {
            let sets = |v: &[std::collections::BTreeSet<usize>]| -> String {
                v.iter()
                    .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!("R\t{}\nC\t{}\nD\t{}\n", sets(&b.r), sets(&b.c), b.diagram)
        }
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let suites = parse_suites(&args.suite)?;
    let opts = VerifyOptions {
        n: args.n,
        extended: args.extended,
        seed: args.seed,
        cache: cache_dir_from_env(),
    };
    let mut report = run_suites(&suites, &opts);
    if !args.timings {
        report = report.without_timings();
    }
    for (suite, check) in report.failures() {
        eprintln!("FAIL {suite}/{}: {}", check.name, check.counterexamples.join("; "));
    }
    Ok((to_json(&report)? + "\n", report.passed))
}

fn run(cli: &Cli) -> Result<bool> {
    let (text, ok) = match &cli.command {
        Command::Expand(a) => (cmd_expand(a)?, true),
        Command::Hasse(a) => (cmd_hasse(a)?, true),
        Command::Poset(a) => (cmd_poset(a)?, true),
        Command::Interval(a) => (cmd_interval(a)?, true),
        Command::SinkTableau(a) => (cmd_sink(a)?, true),
        Command::BuildD(a) => (cmd_build_d(a)?, true),
        Command::Verify(a) => cmd_verify(a)?,
    };
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
