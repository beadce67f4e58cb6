//! Command-line front end: evaluate positions, regenerate the family value
//! tables against their oracles, play interactively, inspect the built-in
//! flags, build formula-game reductions, and enumerate small positions.

mod play;
mod table;

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use flagcolor::dot::to_dot;
use flagcolor::flags::{flag_report, FlagId};
use flagcolor::graph::Position;
use flagcolor::parse::{
    parse_components, parse_graph_with_palette, parse_grid_with_palette, write_graph, Palette,
    ParseError,
};
use flagcolor::reduction::{build_reduction, correspondence_check, parse_cnf, ReductionError};
use flagcolor::search::{spectrum, SearchConfig, SearchError};
use flagcolor::solver::{Solver, SolverError, TranspositionTable};

#[derive(Parser)]
#[command(name = "flagcolor", version, about = "Flood-fill recoloring game on colored graphs")]
struct Cli {
    /// Solver thread count (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph,
    Grid,
}

#[derive(Args)]
struct InputArgs {
    /// Position file (.graph or .grid; see --format). `-` reads stdin.
    path: PathBuf,
    /// Override the extension-based format dispatch.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Grundy value and outcome of a position.
    Value {
        #[command(flatten)]
        input: InputArgs,
        /// Accept a disconnected file and XOR the component values.
        #[arg(long)]
        sum: bool,
        #[arg(long)]
        json: bool,
    },
    /// Outcome class only (cheaper than the full value on large positions).
    Outcome {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// All winning moves of a position.
    Moves {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate a family value table and compare it against the closed form.
    Table(table::TableArgs),
    /// Play a position interactively on the terminal.
    Play {
        #[command(flatten)]
        input: InputArgs,
        /// Let the engine answer each of your moves.
        #[arg(long)]
        engine: bool,
    },
    /// Report on a built-in flag position.
    Flag {
        /// One of: us, azores, canada, france, maine.
        id: FlagId,
        #[arg(long)]
        json: bool,
    },
    /// Encode a positive CNF as a two-colored graph position.
    Reduce {
        /// Positive-DIMACS input file.
        cnf: PathBuf,
        /// Output graph file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve a formula game and its graph encoding side by side.
    Correspond {
        cnf: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all small positions and report the Grundy spectrum.
    Search {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long)]
        json: bool,
        /// Lift the desk-scale size guard (runs can take very long).
        #[arg(long)]
        unsafe_no_guard: bool,
        /// Also write the report as JSON to this path.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Export a position as DOT text.
    ExportDot {
        #[command(flatten)]
        input: InputArgs,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Errors mapped onto the exit-code contract: 1 verification mismatch,
/// 2 input error, 3 resource error.
pub enum CliError {
    Mismatch(String),
    Input(String),
    Resource(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Mismatch(m) => write!(f, "verification mismatch: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Resource(m) => write!(f, "resource error: {m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Solver(s) => CliError::Resource(s.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Solver(s) => CliError::Resource(s.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_position(input: &InputArgs) -> Result<(Position, Palette), CliError> {
    let text = read_file(&input.path)?;
    let format = input.format.unwrap_or_else(|| {
        match input.path.extension().and_then(|e| e.to_str()) {
            Some("grid") => Format::Grid,
            _ => Format::Graph,
        }
    });
    Ok(match format {
        Format::Graph => parse_graph_with_palette(&text)?,
        Format::Grid => parse_grid_with_palette(&text)?,
    })
}

fn make_solver() -> Result<Solver, CliError> {
    let cap = match std::env::var("FLAGCOLOR_MEMO_CAP") {
        Ok(v) => Some(v.parse::<usize>().map_err(|_| {
            CliError::Input(format!("FLAGCOLOR_MEMO_CAP must be an integer, got `{v}`"))
        })?),
        Err(_) => None,
    };
    Ok(Solver::with_table(TranspositionTable::with_capacity_limit(cap)))
}

fn color_name(palette: &Palette, id: u8) -> String {
    palette
        .get(id as usize)
        .and_then(|n| n.clone())
        .unwrap_or_else(|| id.to_string())
}

#[derive(Serialize)]
struct ValueReport {
    vertex_count: usize,
    color_count: usize,
    grundy: u32,
    outcome: String,
    winning_move_count: usize,
    table_entries: usize,
    table_hits: u64,
    /// Graph-file serialization; re-importing yields a canonically equal position.
    graph: String,
}

fn cmd_value(input: &InputArgs, sum: bool, json: bool) -> Result<(), CliError> {
    let solver = make_solver()?;
    if sum {
        let text = read_file(&input.path)?;
        let components = parse_components(&text)?;
        let value = solver.grundy_sum(&components)?;
        if json {
            println!(
                "{}",
                serde_json::json!({
                    "components": components.len(),
                    "grundy": value.0,
                    "outcome": if value.0 == 0 { "P" } else { "N" },
                })
            );
        } else {
            println!("components: {}", components.len());
            println!("sum value:  {value}");
            println!("outcome:    {}", if value.0 == 0 { "P" } else { "N" });
        }
        return Ok(());
    }
    let (position, palette) = load_position(input)?;
    let value = solver.grundy(&position)?;
    let wins = solver.winning_moves(&position)?;
    let stats = solver.stats();
    let report = ValueReport {
        vertex_count: position.vertex_count(),
        color_count: position.color_count(),
        grundy: value.0,
        outcome: if value.0 == 0 { "P" } else { "N" }.to_string(),
        winning_move_count: wins.len(),
        table_entries: stats.entries,
        table_hits: stats.hits,
        graph: write_graph(&position, Some(&palette)),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("vertices:   {}", report.vertex_count);
        println!("colors:     {}", report.color_count);
        println!("value:      {value}");
        println!("outcome:    {}", report.outcome);
        println!("winning moves: {}", report.winning_move_count);
        println!("memo: {} entries, {} hits", report.table_entries, report.table_hits);
    }
    Ok(())
}

fn cmd_outcome(input: &InputArgs, json: bool) -> Result<(), CliError> {
    let solver = make_solver()?;
    let (position, _) = load_position(input)?;
    let outcome = solver.outcome(&position)?;
    let stats = solver.stats();
    if json {
        println!(
            "{}",
            serde_json::json!({
                "vertex_count": position.vertex_count(),
                "outcome": outcome.to_string(),
                "table_entries": stats.entries,
            })
        );
    } else {
        println!("outcome: {outcome}");
        println!("memo: {} entries", stats.entries);
    }
    Ok(())
}

fn cmd_moves(input: &InputArgs, json: bool) -> Result<(), CliError> {
    let solver = make_solver()?;
    let (position, palette) = load_position(input)?;
    let wins = solver.winning_moves(&position)?;
    if json {
        let list: Vec<_> = wins
            .iter()
            .map(|(m, v)| {
                serde_json::json!({
                    "vertex": m.vertex,
                    "new_color": m.new_color.0,
                    "new_color_name": color_name(&palette, m.new_color.0),
                    "option_value": v.0,
                })
            })
            .collect();
        println!("{}", serde_json::json!({ "winning_moves": list }));
    } else if wins.is_empty() {
        println!("no winning moves (P-position)");
    } else {
        for (m, v) in &wins {
            println!(
                "vertex {} -> {} (option value {})",
                m.vertex,
                color_name(&palette, m.new_color.0),
                v
            );
        }
    }
    Ok(())
}

fn cmd_flag(id: FlagId, json: bool) -> Result<(), CliError> {
    let solver = make_solver()?;
    let report = flag_report(id, &solver)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(());
    }
    println!("flag:     {id}");
    println!("vertices: {}", report.vertex_count);
    println!("colors:   {}", report.color_count);
    println!("outcome:  {}", report.outcome);
    match report.grundy {
        Some(v) => println!("value:    {v}"),
        None => println!("value:    (not computed for large flags; outcome settles the winner)"),
    }
    if report.winning_moves.is_empty() {
        println!("winning moves: none");
    } else {
        println!("winning moves:");
        for m in &report.winning_moves {
            let label = m.vertex_label.clone().unwrap_or_else(|| format!("vertex {}", m.vertex));
            let color =
                m.new_color_name.clone().unwrap_or_else(|| m.new_color.to_string());
            println!("  {label} -> {color}");
        }
    }
    let s = report.stats;
    println!("memo: {} entries, {} hits, {} misses", s.entries, s.hits, s.misses);
    Ok(())
}

fn cmd_reduce(cnf_path: &Path, output: &Path) -> Result<(), CliError> {
    let text = read_file(cnf_path)?;
    let formula = parse_cnf(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let gadget = build_reduction(&formula)?;
    let palette: Palette = vec![Some("white".into()), Some("black".into())];
    let mut out = String::new();
    out.push_str(&format!(
        "# reduction of {} ({} variables, {} clauses)\n",
        cnf_path.display(),
        formula.variable_count(),
        formula.clauses().len()
    ));
    for (v, role) in gadget.roles.iter().enumerate() {
        out.push_str(&format!("# label {v} {role}\n"));
    }
    out.push_str(&write_graph(&gadget.position, Some(&palette)));
    std::fs::write(output, out)
        .map_err(|e| CliError::Input(format!("{}: {e}", output.display())))?;
    println!(
        "wrote {} ({} vertices, {} edges)",
        output.display(),
        gadget.position.vertex_count(),
        gadget.position.graph().edge_count()
    );
    Ok(())
}

fn cmd_correspond(cnf_path: &Path, json: bool) -> Result<(), CliError> {
    let text = read_file(cnf_path)?;
    let formula = parse_cnf(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let solver = make_solver()?;
    let report = correspondence_check(&formula, &solver)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(());
    }
    println!("formula: {} variables, {} clauses", report.variable_count, report.clause_count);
    println!("formula outcome: {}", report.formula_outcome);
    println!("gadget outcome:  {} ({} vertices)", report.gadget_outcome, report.gadget_vertex_count);
    println!("variable moves:");
    for m in &report.variable_moves {
        println!(
            "  x{} (vertex {}): legal in formula = {}, gadget child = {}",
            m.variable, m.vertex, m.legal_in_formula, m.child_outcome
        );
    }
    println!(
        "non-variable first moves: {} total, all yield N: {}",
        report.non_variable_moves.len(),
        report.all_non_variable_moves_yield_n
    );
    Ok(())
}

fn cmd_search(
    max_n: usize,
    colors: usize,
    json: bool,
    unguarded: bool,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    let mut cfg = SearchConfig::new(max_n, colors);
    cfg.allow_unguarded = unguarded;
    cfg.report_path = output;
    let solver = make_solver()?;
    let report = spectrum(&cfg, &solver)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(());
    }
    println!("{:>4} {:>10} {:>12} {:>6}  histogram", "n", "positions", "swap-merged", "max");
    let mut over_thirteen = false;
    for level in &report.levels {
        let hist: Vec<String> =
            level.histogram.iter().map(|(g, c)| format!("*{g}:{c}")).collect();
        println!(
            "{:>4} {:>10} {:>12} {:>6}  {}",
            level.vertex_count,
            level.positions,
            level.swap_merged_positions,
            format!("*{}", level.max_grundy),
            hist.join(" ")
        );
        if level.max_grundy > 13 {
            over_thirteen = true;
        }
    }
    if over_thirteen {
        // Larger values than any reported so far would be a notable find, not
        // an error; flag it loudly but do not fail.
        eprintln!("warning: observed a Grundy value above 13");
    }
    Ok(())
}

fn cmd_export_dot(input: &InputArgs, output: Option<&Path>) -> Result<(), CliError> {
    let (position, palette) = load_position(input)?;
    let dot = to_dot(&position, Some(&palette));
    match output {
        Some(path) => std::fs::write(path, dot)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => print!("{dot}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Input(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Value { input, sum, json } => cmd_value(&input, sum, json),
        Command::Outcome { input, json } => cmd_outcome(&input, json),
        Command::Moves { input, json } => cmd_moves(&input, json),
        Command::Table(args) => table::run(&args, make_solver()?),
        Command::Play { input, engine } => play::run(&input.path, load_position(&input)?, engine),
        Command::Flag { id, json } => cmd_flag(id, json),
        Command::Reduce { cnf, output } => cmd_reduce(&cnf, &output),
        Command::Correspond { cnf, json } => cmd_correspond(&cnf, json),
        Command::Search { max_n, colors, json, unsafe_no_guard, output } => {
            cmd_search(max_n, colors, json, unsafe_no_guard, output)
        }
        Command::ExportDot { input, output } => cmd_export_dot(&input, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Mismatch(_) => ExitCode::from(1),
                CliError::Input(_) => ExitCode::from(2),
                CliError::Resource(_) => ExitCode::from(3),
            }
        }
    }
}
