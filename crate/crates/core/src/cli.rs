//! Command-line front end.
//!
//! [`run`] parses an argument vector, dispatches to the engines and returns
//! the rendered output with an exit code: `0` on success, `1` when a
//! computation is refused (enumeration budget) or a verification fails, `2`
//! on invalid input or usage.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bf::{bf_expectation, bf_partition, reciprocity_factor, BfObservable};
use crate::complex::{builtin, CellComplex, Cycle, Side};
use crate::cyclotomic::PhaseSum;
use crate::error::Error;
use crate::homology::homology_h1;
use crate::reciprocity::{lemma_check, reciprocity_check};
use crate::tv::{
    closed_labeling_count, tv_expectation_detailed, Strategy, TvConfig, TvOutcome, DEFAULT_BUDGET,
};

#[derive(Parser, Debug)]
#[command(
    name = "abelian-tv",
    version,
    about = "Exact abelian Turaev-Viro and Z_N BF invariants of cellular 3-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structural axioms of a complex
    Validate(Options),
    /// Print the dual complex in the file format
    Dualize(Options),
    /// First homology: Betti number and torsion
    Homology(Options),
    /// TV partition function
    TvPartition(Options),
    /// TV expectation value of a pair of cycles
    TvExpect(Options),
    /// BF partition function
    BfPartition(Options),
    /// BF expectation value of a pair of cycles
    BfExpect(Options),
    /// Compare TV against the scaled BF value
    Reciprocity(Options),
    /// Count the solution sets of dl + z2 = 0 mod N
    LemmaCheck(Options),
    /// Number of closed labelings
    KernelCount(Options),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Dualize(_) => "dualize",
            Command::Homology(_) => "homology",
            Command::TvPartition(_) => "tv-partition",
            Command::TvExpect(_) => "tv-expect",
            Command::BfPartition(_) => "bf-partition",
            Command::BfExpect(_) => "bf-expect",
            Command::Reciprocity(_) => "reciprocity",
            Command::LemmaCheck(_) => "lemma-check",
            Command::KernelCount(_) => "kernel-count",
        }
    }

    fn options(&self) -> &Options {
        match self {
            Command::Validate(o)
            | Command::Dualize(o)
            | Command::Homology(o)
            | Command::TvPartition(o)
            | Command::TvExpect(o)
            | Command::BfPartition(o)
            | Command::BfExpect(o)
            | Command::Reciprocity(o)
            | Command::LemmaCheck(o)
            | Command::KernelCount(o) => o,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ManifoldArg {
    S3,
    S1xs2,
    Rp3,
    Lens,
}

impl ManifoldArg {
    fn name(self) -> &'static str {
        match self {
            ManifoldArg::S3 => "s3",
            ManifoldArg::S1xs2 => "s1xs2",
            ManifoldArg::Rp3 => "rp3",
            ManifoldArg::Lens => "lens",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Brute,
    Constrained,
    Tree,
    Closed,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Brute => Strategy::Brute,
            StrategyArg::Constrained => Strategy::Constrained,
            StrategyArg::Tree => Strategy::Tree,
            StrategyArg::Closed => Strategy::Closed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Options {
    /// Builtin manifold
    #[arg(long, value_enum, conflicts_with = "file")]
    manifold: Option<ManifoldArg>,
    /// Lens space order
    #[arg(long)]
    p: Option<u64>,
    /// Complex file (JSON)
    #[arg(long)]
    file: Option<PathBuf>,
    /// Level N
    #[arg(long)]
    level: Option<u64>,
    /// Primal cycle, comma-separated edge coefficients
    #[arg(long, allow_hyphen_values = true)]
    z1: Option<String>,
    /// Dual cycle, comma-separated face coefficients
    #[arg(long, allow_hyphen_values = true)]
    z2: Option<String>,
    #[arg(long, value_enum, default_value = "tree")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Maximum number of enumerated terms
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Recompute with the brute-force sum and compare
    #[arg(long)]
    verify_brute: bool,
    /// Append a floating-point evaluation
    #[arg(long)]
    float: bool,
}

/// Machine-readable output of every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonOutput {
    pub command: String,
    pub manifold: String,
    #[serde(rename = "N")]
    pub level: Option<u64>,
    /// `[phase_num, phase_den, coeff_num, coeff_den]` per canonical term.
    pub result_exact: Vec<[i64; 4]>,
    pub result_float: Option<[f64; 2]>,
    pub metadata: Value,
}

/// Exit code and rendered streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Usage(String),
    Error(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    CliOutput::ok(text)
                }
                _ => CliOutput::fail(2, text),
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => CliOutput::ok(out),
        Err(Failure::Usage(msg)) => CliOutput::fail(2, format!("error: {msg}\n")),
        Err(Failure::Verification(msg)) => CliOutput::fail(1, format!("error: {msg}\n")),
        Err(Failure::Error(e)) => {
            let code = match e {
                Error::BudgetExceeded { .. } => 1,
                _ => 2,
            };
            CliOutput::fail(code, format!("error: {e}\n"))
        }
    }
}

fn resolve(o: &Options) -> Outcome<CellComplex> {
    match (&o.manifold, &o.file) {
        (Some(m), None) => {
            if o.p.is_some() && *m != ManifoldArg::Lens {
                return Err(Failure::Usage("--p only applies to --manifold lens".to_string()));
            }
            Ok(builtin(m.name(), o.p)?)
        }
        (None, Some(path)) => {
            if o.p.is_some() {
                return Err(Failure::Usage("--p only applies to --manifold lens".to_string()));
            }
            Ok(CellComplex::load(path)?)
        }
        _ => Err(Failure::Usage(
            "exactly one of --manifold or --file is required".to_string(),
        )),
    }
}

fn level(o: &Options) -> Outcome<u64> {
    match o.level {
        Some(0) => Err(Failure::Usage("--level must be >= 1".to_string())),
        Some(n) => Ok(n),
        None => Err(Failure::Usage("--level is required".to_string())),
    }
}

fn parse_cycle(text: Option<&str>, side: Side, c: &CellComplex, flag: &str) -> Outcome<Cycle> {
    let len = c.cycle_len(side);
    let z = match text {
        None => Cycle::zero(side, len),
        Some(t) => {
            let values = t
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("{flag}: {e} in `{t}`")))?;
            if values.len() != len {
                return Err(Failure::Usage(format!(
                    "{flag} has {} entries, the {side} side of {} needs {len}",
                    values.len(),
                    c.name
                )));
            }
            match side {
                Side::Primal => Cycle::primal(&values),
                Side::Dual => Cycle::dual(&values),
            }
        }
    };
    c.check_cycle(&z)?;
    Ok(z)
}

fn exact_json(v: &PhaseSum) -> Outcome<Vec<[i64; 4]>> {
    v.exact_terms()
        .into_iter()
        .map(|(a, b, cn, cd)| match (cn.to_i64(), cd.to_i64()) {
            (Some(cn), Some(cd)) => Ok([a, b, cn, cd]),
            _ => Err(Failure::Error(Error::InvalidParameter(
                "coefficient exceeds the 64-bit JSON range".to_string(),
            ))),
        })
        .collect()
}

struct Rendered {
    text: String,
    value: Option<PhaseSum>,
    metadata: Value,
}

fn value_text(v: &PhaseSum, o: &Options) -> String {
    if o.float {
        format!("{v} ≈ {}", v.render_float())
    } else {
        v.to_string()
    }
}

fn tv_value(c: &CellComplex, n: u64, z1: &Cycle, z2: &Cycle, o: &Options) -> Outcome<(TvOutcome, Value)> {
    let config = TvConfig::new(o.strategy.into()).with_budget(o.budget);
    let out = tv_expectation_detailed(c, n, z1, z2, &config)?;
    let mut meta = json!({
        "strategy": out.strategy.name(),
        "labelings": out.labelings.to_string(),
        "terms": out.terms.to_string(),
    });
    if o.verify_brute {
        let brute = tv_expectation_detailed(c, n, z1, z2, &config_brute(o))?;
        if brute.value != out.value {
            return Err(Failure::Verification(format!(
                "{} strategy gave {} but brute force gave {}",
                out.strategy, out.value, brute.value
            )));
        }
        meta["verified_brute"] = json!(true);
    }
    Ok((out, meta))
}

fn config_brute(o: &Options) -> TvConfig {
    TvConfig::new(Strategy::Brute).with_budget(o.budget)
}

fn dispatch(cmd: &Command) -> Outcome<String> {
    let o = cmd.options();
    let c = match cmd {
        Command::Validate(_) => match (&o.manifold, &o.file) {
            (None, Some(path)) => CellComplex::read_unchecked(path)?,
            _ => resolve(o)?,
        },
        _ => resolve(o)?,
    };
    let mut n_out = None;
    let mut code_invalid = false;
    let rendered = match cmd {
        Command::Validate(_) => {
            let report = c.validate();
            code_invalid = !report.is_valid();
            Rendered {
                text: report.to_string(),
                value: None,
                metadata: json!({
                    "valid": report.is_valid(),
                    "checks": report.checks,
                }),
            }
        }
        Command::Dualize(_) => {
            let d = c.dualize()?;
            let file = d.to_file_format()?;
            Rendered {
                text: d.to_json()?,
                value: None,
                metadata: json!({ "complex": file }),
            }
        }
        Command::Homology(_) => {
            let h = homology_h1(&c)?;
            let lf = h.linking_form()?;
            let cycles = |zs: &[Cycle]| -> Vec<Vec<String>> {
                zs.iter()
                    .map(|z| z.components.iter().map(|x| x.to_string()).collect())
                    .collect()
            };
            Rendered {
                text: h.summary(),
                value: None,
                metadata: json!({
                    "b1": h.b1(),
                    "torsion": h.torsion(),
                    "free_generators": cycles(h.free_generators()),
                    "torsion_generators_primal": cycles(h.torsion_generators_primal()),
                    "torsion_generators_dual": cycles(h.torsion_generators_dual()),
                    "linking_form": lf.form.iter()
                        .map(|row| row.iter().map(|q| q.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                }),
            }
        }
        Command::TvPartition(_) | Command::TvExpect(_) => {
            let n = level(o)?;
            n_out = Some(n);
            let (z1, z2) = if matches!(cmd, Command::TvExpect(_)) {
                (
                    parse_cycle(o.z1.as_deref(), Side::Primal, &c, "--z1")?,
                    parse_cycle(o.z2.as_deref(), Side::Dual, &c, "--z2")?,
                )
            } else {
                if o.z1.is_some() || o.z2.is_some() {
                    return Err(Failure::Usage(
                        "tv-partition takes no cycles; use tv-expect".to_string(),
                    ));
                }
                (
                    Cycle::zero(Side::Primal, c.counts.edges),
                    Cycle::zero(Side::Dual, c.counts.faces),
                )
            };
            let (out, meta) = tv_value(&c, n, &z1, &z2, o)?;
            let mut text = value_text(&out.value, o);
            if o.verify_brute {
                text.push_str("\nbrute force: agrees");
            }
            Rendered {
                text,
                value: Some(out.value),
                metadata: meta,
            }
        }
        Command::BfPartition(_) | Command::BfExpect(_) => {
            let n = level(o)?;
            n_out = Some(n);
            let h = homology_h1(&c)?;
            let lf = h.linking_form()?;
            let v = if matches!(cmd, Command::BfExpect(_)) {
                let z1 = parse_cycle(o.z1.as_deref(), Side::Primal, &c, "--z1")?;
                let z2 = parse_cycle(o.z2.as_deref(), Side::Dual, &c, "--z2")?;
                bf_expectation(&h, &lf, &BfObservable::new(z1, z2, n)?)?
            } else {
                bf_partition(&lf, n)?
            };
            Rendered {
                text: value_text(&v, o),
                value: Some(v),
                metadata: json!({
                    "b1": h.b1(),
                    "torsion": h.torsion(),
                    "factor": reciprocity_factor(&h, n).to_string(),
                }),
            }
        }
        Command::Reciprocity(_) => {
            let n = level(o)?;
            n_out = Some(n);
            let z1 = parse_cycle(o.z1.as_deref(), Side::Primal, &c, "--z1")?;
            let z2 = parse_cycle(o.z2.as_deref(), Side::Dual, &c, "--z2")?;
            let config = TvConfig::new(o.strategy.into()).with_budget(o.budget);
            let report = reciprocity_check(&c, n, &z1, &z2, &config).map_err(|e| match e {
                Error::InvalidParameter(m) => Failure::Usage(m),
                e => Failure::Error(e),
            })?;
            if o.verify_brute {
                tv_value(&c, n, &z1, &z2, o)?;
            }
            let mut text = report.table();
            if o.float {
                text.push_str(&format!("\nTV (float)   {}", report.lhs.render_float()));
            }
            Rendered {
                text,
                value: Some(report.lhs.clone()),
                metadata: report.to_json(false),
            }
        }
        Command::LemmaCheck(_) => {
            let n = level(o)?;
            n_out = Some(n);
            let z2 = parse_cycle(o.z2.as_deref(), Side::Dual, &c, "--z2")?;
            let r = lemma_check(&c, n, &z2, o.budget)?;
            Rendered {
                text: r.to_string(),
                value: None,
                metadata: json!({
                    "solutions": r.solutions.to_string(),
                    "kernel": r.kernel.to_string(),
                    "kernel_formula": r.kernel_formula.to_string(),
                    "quotient": r.quotient.to_string(),
                    "free_obstruction": r.free_obstruction,
                    "product_holds": r.product_holds(),
                    "kernel_holds": r.kernel_holds(),
                }),
            }
        }
        Command::KernelCount(_) => {
            let n = level(o)?;
            n_out = Some(n);
            let k = closed_labeling_count(&c, n, o.verify_brute, o.budget)?;
            Rendered {
                text: k.to_string(),
                value: None,
                metadata: json!({
                    "formula": k.formula.to_string(),
                    "torsion_correction": k.torsion_correction.to_string(),
                    "enumerated": k.enumerated.map(|e| e.to_string()),
                }),
            }
        }
    };

    let mut out = match o.format {
        Format::Text => rendered.text,
        Format::Json => {
            let (exact, float) = match &rendered.value {
                Some(v) => {
                    let (re, im) = v.evaluate_rounded();
                    (exact_json(v)?, Some([re, im]))
                }
                None => (Vec::new(), None),
            };
            let doc = JsonOutput {
                command: cmd.name().to_string(),
                manifold: c.name.clone(),
                level: n_out,
                result_exact: exact,
                result_float: float,
                metadata: rendered.metadata,
            };
            serde_json::to_string_pretty(&doc).expect("plain data serialises")
        }
    };
    out.push('\n');
    if code_invalid {
        return Err(Failure::Usage(format!("complex is invalid\n{out}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> CliOutput {
        run(std::iter::once("abelian-tv").chain(args.split_whitespace()))
    }

    #[test]
    fn expectation_text() {
        let out = call("tv-expect --manifold s3 --level 5 --z1 1,0 --z2 0,1,0");
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "e(2πi·4/5)\n");
    }

    #[test]
    fn homology_text() {
        let out = call("homology --manifold rp3");
        assert_eq!(out.stdout, "b1=0 torsion=[2]\n");
        let out = call("homology --manifold lens --p 5");
        assert_eq!(out.stdout, "b1=0 torsion=[5]\n");
    }

    #[test]
    fn reciprocity_table() {
        let out = call("reciprocity --manifold s1xs2 --level 4 --z1 1,1,1,0,0 --z2 0,0,0,0");
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("verdict      equal"), "{}", out.stdout);
        assert!(out.stdout.contains("factor       4"), "{}", out.stdout);
        let out = call(
            "reciprocity --manifold s1xs2 --level 4 --z1 1,1,1,0,0 --z2 0,0,0,0 --format json",
        );
        let doc: JsonOutput = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc.metadata["verdict"], "equal");
        assert_eq!(doc.metadata["factor"], "4");
        assert_eq!(doc.result_exact, vec![[0, 1, 4, 1]]);
    }

    #[test]
    fn json_round_trip() {
        let out = call("tv-expect --manifold rp3 --level 3 --z1 1,0,0,1 --z2 0,0,1,0 --format json");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let doc: JsonOutput = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc.command, "tv-expect");
        assert_eq!(doc.level, Some(3));
        let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        assert_eq!(again, out.stdout);
    }

    #[test]
    fn float_and_verification() {
        let out = call("tv-expect --manifold s3 --level 4 --z1 1,0 --z2 0,1,0 --float --verify-brute");
        assert_eq!(out.stdout, "-e(2πi·1/4) ≈ 0 - 1i\nbrute force: agrees\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call("frobnicate").code, 2);
        assert_eq!(call("homology --manifold s3 --bogus").code, 2);
        assert_eq!(call("homology").code, 2);
        assert_eq!(call("tv-partition --manifold s3").code, 2);
        assert_eq!(call("tv-expect --manifold s3 --level 2 --z1 1,0,0").code, 2);
        assert_eq!(call("tv-expect --manifold s1xs2 --level 2 --z1 1,0,0,0,0").code, 2);
        assert_eq!(call("homology --manifold lens --p 1").code, 2);
        assert_eq!(call("homology --manifold s3 --p 4").code, 2);
        let out = call("tv-partition --manifold s1xs2 --level 5 --strategy brute --budget 1000");
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("budget"));
        assert_eq!(call("--help").code, 0);
    }

    #[test]
    fn deterministic() {
        let a = call("reciprocity --manifold rp3 --level 6 --z1 1,0,0,1 --z2 0,0,1,1 --format json");
        let b = call("reciprocity --manifold rp3 --level 6 --z1 1,0,0,1 --z2 0,0,1,1 --format json");
        assert_eq!(a, b);
    }

    #[test]
    fn negative_entries() {
        let out = call("tv-expect --manifold s1xs2 --level 3 --z1 1,1,1,0,0 --z2 1,-1,1,1");
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "3·e(2πi·2/3)\n");
    }

    #[test]
    fn other_commands() {
        assert_eq!(call("bf-partition --manifold rp3 --level 4").stdout, "4\n");
        assert_eq!(call("tv-partition --manifold rp3 --level 4").stdout, "2\n");
        let out = call("kernel-count --manifold s1xs2 --level 2 --verify-brute");
        assert!(out.stdout.starts_with("N^(b1+V-1) = 2^(1+3-1) = 8"), "{}", out.stdout);
        let out = call("lemma-check --manifold rp3 --level 2");
        assert!(out.stdout.contains("holds"), "{}", out.stdout);
        let out = call("validate --manifold s3");
        assert_eq!(out.code, 0);
        let out = call("dualize --manifold s3");
        let dual = CellComplex::from_json(&out.stdout).unwrap();
        assert_eq!(dual.name, "s3*");
        let out = call("bf-expect --manifold s1xs2 --level 3 --z1 0,0,0,1,0");
        assert_eq!(out.stdout, "0\n");
    }

    #[test]
    fn files() {
        let dir = std::env::temp_dir().join(format!("abelian-tv-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let good = dir.join("rp3.json");
        crate::complex::rp3().save(&good).unwrap();
        let out = call(&format!("tv-partition --file {} --level 2", good.display()));
        assert_eq!(out.stdout, "2\n");

        let mut bad = crate::complex::s3();
        bad.boundary2.set(1, 0, 1.into());
        let path = dir.join("bad.json");
        std::fs::write(&path, bad.to_json().unwrap()).unwrap();
        let out = call(&format!("validate --file {}", path.display()));
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("d2*d3=0"), "{}", out.stderr);
        let out = call(&format!("homology --file {}", path.display()));
        assert_eq!(out.code, 2);
        std::fs::remove_dir_all(&dir).ok();
    }
}
