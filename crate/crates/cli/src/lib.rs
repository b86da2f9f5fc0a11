//! Command-line front end for `dwtl-core`.
//!
//! Exit codes: 0 for success (equivalent, threshold), 1 for a negative
//! verdict (counterexample, not threshold), 2 for usage or input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dwtl_core::constructions::{adder, AdderStyle, BASELINE_GATES_PER_BIT};
use dwtl_core::tsolve::{minimize_weights, solve_threshold, Classification};
use dwtl_core::{
    parse_netlist, parse_truth_table, print_netlist, AdderSpec, CheckMethod, CostReport,
    Equivalence, EquivalenceOptions, Netlist, Reference, TableReference, ThresholdRealization,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dwtl",
    version,
    about = "Threshold logic with weighted spin-minority gates"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled equivalence checks (decimal or 0x-prefixed hex).
    #[arg(long, global = true, value_parser = parse_u64, default_value = "0xD0DA11")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a netlist on one assignment.
    Eval {
        net: PathBuf,
        /// Input values, e.g. `a=1,b=0,cin=1`.
        #[arg(long)]
        set: String,
    },
    /// Print one truth table per output.
    Tt { net: PathBuf },
    /// Check a netlist against `adder:<bits>` or `<out>=<n:hex>[,...]`.
    Verify {
        net: PathBuf,
        #[arg(long, required = true)]
        spec: Vec<String>,
    },
    /// Decide whether a truth table is a single threshold gate.
    Solve {
        #[arg(long = "tt")]
        table: String,
        /// Minimize the total weight magnitude.
        #[arg(long)]
        minimize: bool,
    },
    /// Generate a circuit.
    #[command(subcommand)]
    Gen(Gen),
    /// Gate count and structure against a baseline device count.
    Report {
        net: PathBuf,
        /// Baseline device count; defaults to 15 per `sum*` output.
        #[arg(long)]
        baseline: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum Gen {
    /// Ripple-carry adder.
    Adder {
        #[arg(long)]
        bits: usize,
        #[arg(long, value_parser = parse_style)]
        style: AdderStyle,
        /// Write to this file instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| e.to_string())
}

fn parse_style(s: &str) -> Result<AdderStyle, String> {
    s.parse()
        .map_err(|e: dwtl_core::ConstructionError| e.to_string())
}

struct Ctx<'a> {
    format: Format,
    seed: u64,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> Result<()> {
        match self.format {
            Format::Text => writeln!(self.out, "{}", text())?,
            Format::Json => writeln!(self.out, "{}", json())?,
        }
        Ok(())
    }
}

/// Runs one command. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_ERROR
                }
            };
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        seed: cli.seed,
        out,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<i32> {
    match command {
        Command::Eval { net, set } => eval(ctx, &load(&net)?, &set),
        Command::Tt { net } => tt(ctx, &load(&net)?),
        Command::Verify { net, spec } => verify(ctx, &load(&net)?, &spec),
        Command::Solve { table, minimize } => solve(ctx, &table, minimize),
        Command::Gen(Gen::Adder {
            bits,
            style,
            output,
        }) => gen_adder(ctx, bits, style, output.as_deref()),
        Command::Report { net, baseline } => report(ctx, &load(&net)?, baseline),
    }
}

fn load(path: &Path) -> Result<Netlist> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_netlist(&text).with_context(|| path.display().to_string())
}

fn bit(b: bool) -> u8 {
    b as u8
}

fn parse_assignment(set: &str) -> Result<BTreeMap<String, bool>> {
    let mut map = BTreeMap::new();
    for item in set.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("expected name=0|1, got {item:?}"))?;
        let value = match value.trim() {
            "0" => false,
            "1" => true,
            other => bail!("value for {name} must be 0 or 1, got {other:?}"),
        };
        if map.insert(name.trim().to_string(), value).is_some() {
            bail!("{name} assigned twice");
        }
    }
    Ok(map)
}

fn eval(ctx: &mut Ctx, net: &Netlist, set: &str) -> Result<i32> {
    let values = net.evaluate_named(&parse_assignment(set)?)?;
    ctx.emit(
        || {
            values
                .iter()
                .map(|(n, v)| format!("{n}={}", bit(*v)))
                .collect::<Vec<_>>()
                .join("\n")
        },
        || {
            json!({
                "outputs": values
                    .iter()
                    .map(|(n, v)| json!({"name": n, "value": bit(*v)}))
                    .collect::<Vec<_>>()
            })
        },
    )?;
    Ok(EXIT_OK)
}

fn tt(ctx: &mut Ctx, net: &Netlist) -> Result<i32> {
    let tables = net.truth_tables()?;
    ctx.emit(
        || {
            tables
                .iter()
                .map(|(n, t)| format!("{n} {t}"))
                .collect::<Vec<_>>()
                .join("\n")
        },
        || {
            json!({
                "inputs": net.free_inputs(),
                "tables": tables
                    .iter()
                    .map(|(n, t)| json!({"output": n, "table": t.to_string()}))
                    .collect::<Vec<_>>()
            })
        },
    )?;
    Ok(EXIT_OK)
}

fn build_reference(specs: &[String]) -> Result<Box<dyn Reference>> {
    let items: Vec<&str> = specs
        .iter()
        .flat_map(|s| s.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if let [single] = items.as_slice() {
        if let Some(bits) = single.strip_prefix("adder:") {
            let bits: usize = bits
                .parse()
                .with_context(|| format!("bad adder width in {single:?}"))?;
            return Ok(Box::new(AdderSpec::new(bits)?));
        }
    }
    let mut tables = Vec::new();
    for item in items {
        let (name, table) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("expected adder:<n> or <out>=<n:hex>, got {item:?}"))?;
        let table = parse_truth_table(table).with_context(|| format!("spec for {name}"))?;
        tables.push((name.to_string(), table));
    }
    let reference = TableReference::new(tables)
        .ok_or_else(|| anyhow!("spec tables must be non-empty and share one input count"))?;
    Ok(Box::new(reference))
}

fn verify(ctx: &mut Ctx, net: &Netlist, specs: &[String]) -> Result<i32> {
    let reference = build_reference(specs)?;
    let options = EquivalenceOptions {
        seed: ctx.seed,
        ..Default::default()
    };
    let result = net.check_equivalence(reference.as_ref(), &options)?;
    let inputs = net.free_inputs();
    match &result {
        Equivalence::Equivalent {
            rows_checked,
            method,
        } => {
            let text = match method {
                CheckMethod::Exhaustive => {
                    format!("EQUIVALENT ({rows_checked}/{rows_checked} rows exhaustive)")
                }
                CheckMethod::Sampled {
                    seed,
                    random_vectors,
                    corner_vectors,
                } => format!(
                    "EQUIVALENT ({rows_checked} vectors sampled: {corner_vectors} corner + \
                     {random_vectors} random, seed {seed:#x}; not exhaustive)"
                ),
            };
            let method_json = match method {
                CheckMethod::Exhaustive => json!({"kind": "exhaustive"}),
                CheckMethod::Sampled {
                    seed,
                    random_vectors,
                    corner_vectors,
                } => json!({
                    "kind": "sampled",
                    "seed": seed,
                    "random_vectors": random_vectors,
                    "corner_vectors": corner_vectors,
                }),
            };
            ctx.emit(
                || text,
                || json!({"result": "equivalent", "rows_checked": rows_checked, "method": method_json}),
            )?;
            Ok(EXIT_OK)
        }
        Equivalence::Counterexample(c) => {
            let assignment: Vec<String> = inputs
                .iter()
                .zip(&c.assignment)
                .map(|(n, v)| format!("{n}={}", bit(*v)))
                .collect();
            let at = match c.row {
                Some(row) => format!("row {row} ({})", assignment.join(" ")),
                None => format!("({})", assignment.join(" ")),
            };
            ctx.emit(
                || {
                    format!(
                        "NOT EQUIVALENT: output {} got {} want {} at {at}",
                        c.output,
                        bit(c.got),
                        bit(c.want)
                    )
                },
                || {
                    json!({
                        "result": "counterexample",
                        "output": c.output,
                        "got": bit(c.got),
                        "want": bit(c.want),
                        "row": c.row,
                        "assignment": inputs
                            .iter()
                            .zip(&c.assignment)
                            .map(|(n, v)| json!({"name": n, "value": bit(*v)}))
                            .collect::<Vec<_>>(),
                    })
                },
            )?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn realization_text(r: &ThresholdRealization) -> String {
    let mut s = format!("THRESHOLD {} sum|w|={}", r.gate, r.gate.abs_weight_sum());
    if r.minimal {
        s.push_str(" (minimal)");
    }
    s
}

fn solve(ctx: &mut Ctx, table: &str, minimize: bool) -> Result<i32> {
    let tt = parse_truth_table(table).with_context(|| format!("truth table {table:?}"))?;
    let classification = solve_threshold(&tt)?;
    match classification {
        Classification::Threshold(lp) => {
            let r = if minimize { minimize_weights(&tt)? } else { lp };
            ctx.emit(
                || realization_text(&r),
                || {
                    json!({
                        "result": "threshold",
                        "table": tt.to_string(),
                        "weights": r.gate.weights(),
                        "threshold": r.gate.threshold(),
                        "abs_weight_sum": r.gate.abs_weight_sum(),
                        "minimal": r.minimal,
                    })
                },
            )?;
            Ok(EXIT_OK)
        }
        Classification::NotThreshold(nt) => {
            let cert = &nt.certificate;
            ctx.emit(
                || {
                    format!(
                        "NOT THRESHOLD (certificate: on-set {}; off-set {})",
                        terms(&cert.on_set).join(" "),
                        terms(&cert.off_set).join(" ")
                    )
                },
                || {
                    json!({
                        "result": "not_threshold",
                        "table": tt.to_string(),
                        "certificate": {"on_set": term_json(&cert.on_set), "off_set": term_json(&cert.off_set)},
                    })
                },
            )?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn terms<M: std::fmt::Display>(side: &[(usize, M)]) -> Vec<String> {
    side.iter().map(|(r, m)| format!("{r}*{m}")).collect()
}

/// Multipliers can exceed JSON number range, so they are strings.
fn term_json<M: std::fmt::Display>(side: &[(usize, M)]) -> Vec<Value> {
    side.iter()
        .map(|(r, m)| json!({"row": r, "multiplier": m.to_string()}))
        .collect()
}

fn gen_adder(ctx: &mut Ctx, bits: usize, style: AdderStyle, output: Option<&Path>) -> Result<i32> {
    let net = adder(style, bits)?;
    let text = print_netlist(&net);
    match output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            ctx.emit(
                || format!("wrote {} gates to {}", net.gate_count(), path.display()),
                || {
                    json!({
                        "style": style.to_string(),
                        "bits": bits,
                        "gates": net.gate_count(),
                        "path": path.display().to_string(),
                    })
                },
            )?;
        }
        None => match ctx.format {
            Format::Text => write!(ctx.out, "{text}")?,
            Format::Json => writeln!(
                ctx.out,
                "{}",
                json!({"style": style.to_string(), "bits": bits, "gates": net.gate_count(), "netlist": text})
            )?,
        },
    }
    Ok(EXIT_OK)
}

fn default_baseline(net: &Netlist) -> u64 {
    let bits = net
        .outputs
        .iter()
        .filter(|o| o.name.starts_with("sum"))
        .count() as u64;
    BASELINE_GATES_PER_BIT * bits.max(1)
}

fn report_json(r: &CostReport) -> Value {
    json!({
        "gates": r.gate_count,
        "fanin_sum": r.fanin_sum,
        "max_fanout": r.max_fanout,
        "depth": r.depth,
        "inverted_outputs": r.inverted_outputs,
        "baseline": r.baseline_count,
        "reduction_percent": r.reduction_one_decimal(),
        "reduction_exact": r.reduction_percent.to_string(),
        "reduction_rounded": r.reduction_rounded(),
    })
}

fn report(ctx: &mut Ctx, net: &Netlist, baseline: Option<u64>) -> Result<i32> {
    let baseline = baseline.unwrap_or_else(|| default_baseline(net));
    let r = net.cost_report(baseline)?;
    ctx.emit(|| r.to_string(), || report_json(&r))?;
    Ok(EXIT_OK)
}
