//! Command-line front end. [`run`] takes the argument list and output
//! streams so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::chain::Chain;
use crate::engine::{CharacterColumn, Engine};
use crate::error::{Error, Result};
use crate::hgroup::{wreath_level_table, ColoredCycleType, GroupTable, LevelTable, DEFAULT_MAX_ORDER};
use crate::lifting::Lifter;
use crate::mckay::{build_graph, reduced_graph, ExportFormat};
use crate::partition::mirrored_order;
use crate::verify::ingest::ChainData;
use crate::verify::mn::oracle_column;
use crate::verify::suite::{run_builtin, run_data, Suite};

#[derive(Parser, Debug)]
#[command(name = "charcol", version, about = "Exact character columns of S_n and H^n x S_n")]
pub struct Cli {
    /// sym, z2wreath, a GroupTable JSON for H, or (verify only) a chain JSON
    #[arg(long, global = true, default_value = "sym")]
    pub chain: String,

    /// Output format; accepted values depend on the command
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Largest |H|^k·k! for explicitly constructed tables
    #[arg(long, global = true, env = "CHARCOL_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_order: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Character column of a conjugacy class at level n
    Column {
        /// e.g. "[3,1,1]" or, for wreath chains, "1:[1];-1:[1]"
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        n: usize,
        /// Compute through the reduced operator (odd permutations only)
        #[arg(long)]
        odd: bool,
        /// Also print the Murnaghan–Nakayama column
        #[arg(long)]
        oracle: bool,
        /// List S_n irreps in mirrored order
        #[arg(long = "paper-order")]
        mirrored: bool,
        /// Character table (GroupTable JSON) at the class's level
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Lift an irrep of level k to level n
    Lift {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long)]
        n: usize,
    },
    /// The operator X = Ind·Res at level n
    Indres {
        #[arg(long)]
        n: usize,
        /// JSON dump {n, basis, entries}
        #[arg(long)]
        dump: bool,
        /// List S_n irreps in mirrored order
        #[arg(long = "paper-order")]
        mirrored: bool,
        /// Write levels 0..=n in the chain ingestion format
        #[arg(long)]
        export_chain: Option<PathBuf>,
    },
    /// McKay graph of Ind(t) at level n
    Mckay {
        #[arg(long)]
        n: usize,
        /// Reduced graph on the plus basis (symmetric chain)
        #[arg(long)]
        reduced: bool,
    },
    /// Character table at level k
    Table {
        #[arg(long)]
        k: usize,
        /// Build the symmetric-group table by explicit induction too
        #[arg(long)]
        brute: bool,
    },
    /// Run a check suite
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "maxN", alias = "max-n", default_value_t = 5)]
        max_n: usize,
    },
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok((text, status)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => out.write_all(text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => status,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn format_or<'a>(cli: &'a Cli, default: &'a str, allowed: &[&str]) -> Result<&'a str> {
    let f = cli.format.as_deref().unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::Parse(format!("format `{f}` is not available here (expected one of {})", allowed.join(", "))))
    }
}

fn big(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Verify { suite, max_n } => cmd_verify(cli, suite, *max_n),
        Command::Column { class, n, odd, oracle, mirrored, table } => {
            let chain = Chain::from_name(&cli.chain)?;
            cmd_column(cli, &chain, class, *n, *odd, *oracle, *mirrored, table.as_deref()).map(|s| (s, 0))
        }
        Command::Lift { k, label, n } => {
            let chain = Chain::from_name(&cli.chain)?;
            cmd_lift(cli, &chain, *k, label, *n).map(|s| (s, 0))
        }
        Command::Indres { n, dump, mirrored, export_chain } => {
            let chain = Chain::from_name(&cli.chain)?;
            cmd_indres(cli, &chain, *n, *dump, *mirrored, export_chain.as_deref()).map(|s| (s, 0))
        }
        Command::Mckay { n, reduced } => {
            let chain = Chain::from_name(&cli.chain)?;
            let format: ExportFormat = format_or(cli, "dot", &["dot", "json"])?.parse()?;
            let graph = if *reduced { reduced_graph(&chain, *n)? } else { build_graph(&chain, *n)? };
            graph.export(format).map(|s| (s, 0))
        }
        Command::Table { k, brute } => {
            let chain = Chain::from_name(&cli.chain)?;
            cmd_table(cli, &chain, *k, *brute).map(|s| (s, 0))
        }
    }
}

/// Basis positions in output order.
fn output_order(chain: &Chain, n: usize, mirrored: bool) -> Result<Vec<usize>> {
    if !mirrored {
        return Ok((0..chain.basis_size(n)).collect());
    }
    if !chain.is_symmetric() {
        return Err(Error::UnsupportedChain("--paper-order applies to the symmetric chain".into()));
    }
    Ok(mirrored_order(n))
}

/// Reads a string-labelled table and puts its rows in basis order.
pub fn level_table_from_group_table(chain: &Chain, gt: &GroupTable) -> Result<LevelTable> {
    gt.validate()?;
    let h = chain.h();
    let irreps = gt
        .irreps
        .iter()
        .map(|i| chain.parse_label(&i.label))
        .collect::<Result<Vec<_>>>()?;
    let k = irreps.first().map_or(0, |l| l.size());
    let basis = chain.basis(k);
    if irreps.len() != basis.len() || irreps.iter().any(|l| l.size() != k) {
        return Err(Error::InvalidTable(format!("table rows are not the {} irreps of level {k}", basis.len())));
    }
    let classes = gt
        .classes
        .iter()
        .map(|c| ColoredCycleType::parse(h, &c.label))
        .collect::<Result<Vec<_>>>()?;
    if let Some(c) = classes.iter().find(|c| c.size() != k) {
        return Err(Error::LevelMismatch { expected: k, got: c.size() });
    }
    let mut values = Vec::with_capacity(basis.len());
    for b in &basis {
        let i = irreps.iter().position(|l| l == b).ok_or_else(|| Error::MissingLabel(chain.format_label(b)))?;
        values.push(gt.irreps[i].values.iter().map(|&v| BigInt::from(v)).collect());
    }
    Ok(LevelTable {
        level: k,
        order: gt.order.into(),
        irreps: basis,
        classes,
        class_sizes: gt.classes.iter().map(|c| c.size.into()).collect(),
        values,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_column(
    cli: &Cli,
    chain: &Chain,
    class_text: &str,
    n: usize,
    odd: bool,
    oracle: bool,
    mirrored: bool,
    table_path: Option<&Path>,
) -> Result<String> {
    let format = format_or(cli, "json", &["json", "csv"])?;
    let h = chain.h();
    let class = ColoredCycleType::parse(h, class_text)?;
    if class.size() > n {
        return Err(Error::LevelMismatch { expected: n, got: class.size() });
    }
    let engine = Engine::new(chain, cli.max_order);
    let mut projection = None;
    let column: CharacterColumn = if odd {
        if !chain.is_symmetric() {
            return Err(Error::UnsupportedChain("--odd applies to the symmetric chain".into()));
        }
        let tau = class.as_cycle_type().expect("one-class group").without_fixed_points();
        let result = engine.odd_column(&tau, n)?;
        projection = Some((result.basis.clone(), result.projection.clone()));
        result.column
    } else if let Some(path) = table_path {
        let gt = GroupTable::from_json(&std::fs::read_to_string(path)?)?;
        let table = level_table_from_group_table(chain, &gt)?;
        if class.size() > table.level {
            return Err(Error::LevelMismatch { expected: table.level, got: class.size() });
        }
        engine.character_column_with_table(&table, &class.padded_to(table.level), n)?
    } else {
        engine.character_column(&class.without_fixed_points(), n)?
    };

    let oracle_values = if oracle {
        let mu = class
            .as_cycle_type()
            .filter(|_| chain.is_symmetric())
            .ok_or_else(|| Error::UnsupportedChain("--oracle applies to the symmetric chain".into()))?;
        Some(oracle_column(&mu, n)?.values)
    } else {
        None
    };

    let order = output_order(chain, n, mirrored)?;
    let basis = chain.basis(n);
    let labels: Vec<String> = order.iter().map(|&i| chain.format_label(&basis[i])).collect();
    if format == "csv" {
        let mut s = String::from(if oracle_values.is_some() { "label,value,oracle\n" } else { "label,value\n" });
        for (pos, &i) in order.iter().enumerate() {
            s.push_str(&csv_field(&labels[pos]));
            s.push(',');
            s.push_str(&column.values[i].to_string());
            if let Some(o) = &oracle_values {
                s.push(',');
                s.push_str(&o[i].to_string());
            }
            s.push('\n');
        }
        return Ok(s);
    }
    let entries: Vec<Value> = order
        .iter()
        .zip(&labels)
        .map(|(&i, l)| json!({"label": l, "value": big(&column.values[i])}))
        .collect();
    let mut doc = json!({
        "chain": chain.name(),
        "n": n,
        "class": column.class.format(h),
        "order": if mirrored { "mirrored" } else { "canonical" },
        "column": entries,
    });
    if let Some((half, values)) = projection {
        doc["projection"] = half
            .iter()
            .zip(&values)
            .map(|(p, v)| json!({"label": p.to_string(), "value": big(v)}))
            .collect::<Vec<_>>()
            .into();
    }
    if let Some(o) = oracle_values {
        doc["oracle"] = order.iter().map(|&i| big(&o[i])).collect::<Vec<_>>().into();
        doc["agrees"] = Value::Bool(o == column.values);
    }
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn cmd_lift(cli: &Cli, chain: &Chain, k: usize, label: &str, n: usize) -> Result<String> {
    format_or(cli, "json", &["json"])?;
    let w = chain.parse_label(label)?;
    if w.size() != k {
        return Err(Error::LevelMismatch { expected: k, got: w.size() });
    }
    let lifter = Lifter::new(chain);
    let record = lifter.lift_record(&w, n)?;
    let basis = chain.basis(n);
    let mut map = serde_json::Map::new();
    for (i, c) in record.vector.support() {
        let value = if c.is_integer() { big(c.numer()) } else { Value::String(c.to_string()) };
        map.insert(chain.format_label(&basis[i]), value);
    }
    Ok(serde_json::to_string_pretty(&Value::Object(map))? + "\n")
}

fn cmd_indres(cli: &Cli, chain: &Chain, n: usize, dump: bool, mirrored: bool, export: Option<&Path>) -> Result<String> {
    let format = format_or(cli, if dump { "json" } else { "text" }, &["json", "text"])?;
    if let Some(path) = export {
        std::fs::write(path, ChainData::from_chain(chain, n)?.to_json()?)?;
    }
    let order = output_order(chain, n, mirrored)?;
    let mut pos = vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let basis = chain.basis(n);
    let labels: Vec<String> = order.iter().map(|&i| chain.format_label(&basis[i])).collect();
    let x = chain.ind_res(n);
    let mut entries: Vec<(usize, usize, BigInt)> = x.entries().iter().map(|(r, c, v)| (pos[*r], pos[*c], v.clone())).collect();
    entries.sort_by_key(|e| (e.0, e.1));
    if dump || format == "json" {
        let doc = json!({
            "n": n,
            "basis": labels,
            "entries": entries.iter().map(|(r, c, v)| json!([r, c, big(v)])).collect::<Vec<_>>(),
        });
        return Ok(serde_json::to_string_pretty(&doc)? + "\n");
    }
    let mut dense = vec![vec![BigInt::default(); labels.len()]; labels.len()];
    for (r, c, v) in entries {
        dense[r][c] = v;
    }
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    for (label, row) in labels.iter().zip(dense) {
        s.push_str(&format!("{label:width$} "));
        s.push_str(&row.iter().map(|v| format!("{v:>2}")).collect::<Vec<_>>().join(" "));
        s.push('\n');
    }
    Ok(s)
}

fn cmd_table(cli: &Cli, chain: &Chain, k: usize, brute: bool) -> Result<String> {
    let format = format_or(cli, "json", &["json", "text"])?;
    let h = chain.h();
    let table = if brute && chain.is_symmetric() {
        wreath_level_table(h, k, cli.max_order)?
    } else {
        chain.level_table(k, cli.max_order)?
    };
    let name = if chain.is_symmetric() { format!("S_{k}") } else { format!("{}^{k} x S_{k}", h.name) };
    let gt = table.to_group_table(&name, |l| chain.format_label(l), h)?;
    Ok(if format == "text" { gt.to_string() } else { gt.to_json() + "\n" })
}

/// A chain file in the ingestion format has a top-level `levels` array.
fn is_chain_file(spec: &str) -> bool {
    let path = Path::new(spec);
    path.is_file()
        && std::fs::read_to_string(path)
            .ok()
            .and_then(|t| serde_json::from_str::<Value>(&t).ok())
            .is_some_and(|v| v.get("levels").is_some())
}

fn cmd_verify(cli: &Cli, suite: &str, max_n: usize) -> Result<(String, i32)> {
    format_or(cli, "json", &["json"])?;
    let suite: Suite = suite.parse()?;
    let report = if is_chain_file(&cli.chain) {
        let data = ChainData::load(Path::new(&cli.chain))?;
        run_data(&data, suite)?
    } else {
        let chain = Chain::from_name(&cli.chain)?;
        run_builtin(&chain, suite, max_n, cli.max_order)?
    };
    let status = if report.pass { 0 } else { 1 };
    Ok((report.to_json() + "\n", status))
}
