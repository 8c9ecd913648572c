use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ortho_guard::bench::{parse_size, run_bench, BenchConfig};
use ortho_guard::document::{
    solution_from_json, solution_to_json, terrain_from_json, terrain_to_json,
};
use ortho_guard::generator::{generate, GenSpec, Pattern};
use ortho_guard::oracle::{
    min_guard_set_exact, problem_sets, property_suite, SuiteMode, DEFAULT_BUDGET,
};
use ortho_guard::{
    solve_full_with, solve_left_convex, verify_coverage, BuildMode, Engine, OracleError, Side,
    Terrain, VisibilityError,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_BUDGET: u8 = 4;

/// Guard placement for orthogonal 1.5D terrains.
#[derive(Parser)]
#[command(name = "otguard", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random or patterned terrain.
    Gen(GenArgs),
    /// Solve the right, left or full guarding problem.
    Solve(SolveArgs),
    /// Check that a solution guards every vertex it is responsible for.
    Check(CheckArgs),
    /// Exact minimum guard set by branch and bound (small terrains).
    Oracle(OracleArgs),
    /// Run the visibility property suite on a terrain.
    Verify(VerifyArgs),
    /// Time the full solver on random terrains of growing size.
    Bench(BenchArgs),
    /// Draw a terrain and optionally a solution as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct Input {
    /// Terrain document.
    terrain: PathBuf,
    /// Drop repeated points and merge collinear runs instead of rejecting them.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
    max_run: i64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
    max_rise: i64,
    #[arg(long)]
    pattern: Option<Pattern>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, default_value = "full")]
    side: Side,
    #[arg(long, default_value = "fast")]
    engine: Engine,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: Input,
    solution: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, default_value = "full")]
    side: Side,
    /// Search node budget.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    cap: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: Input,
    /// Check every index quadruple instead of a sample.
    #[arg(long)]
    exhaustive: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "1e3,1e4,1e5,1e6", value_delimiter = ',', value_parser = parse_size)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    seeds_per_size: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
    max_run: i64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
    max_rise: i64,
    /// Write the CSV table here; without it the table follows the summary.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Leave out the guard-to-vertex assignment arrows.
    #[arg(long)]
    no_arrows: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    msg: String,
}

type CmdResult = Result<u8, Failure>;

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(input: &Input) -> Result<Terrain, Failure> {
    let mode = if input.normalize {
        BuildMode::Normalize
    } else {
        BuildMode::Strict
    };
    terrain_from_json(&read(&input.terrain)?, mode)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", input.terrain.display())))
}

fn one_based(xs: &[usize]) -> String {
    let v: Vec<String> = xs.iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", v.join(","))
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let spec = GenSpec {
        seed: a.seed,
        steps: a.steps as usize,
        max_run: a.max_run,
        max_rise: a.max_rise,
        pattern: a.pattern,
    };
    let t = generate(&spec).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let mut text = terrain_to_json(&t);
    text.push('\n');
    write_out(a.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_solve(a: SolveArgs) -> CmdResult {
    let t = load(&a.input)?;
    let sol = match a.side {
        Side::Right => match a.engine {
            Engine::Fast => ortho_guard::solve_right_convex_fast(&t),
            Engine::Reference => ortho_guard::solve_right_convex_reference(&t),
        },
        Side::Left => solve_left_convex(&t, a.engine),
        Side::Full => solve_full_with(&t, a.engine),
    };
    let mut text = solution_to_json(&sol);
    text.push('\n');
    write_out(a.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_check(a: CheckArgs) -> CmdResult {
    let t = load(&a.input)?;
    let sol = solution_from_json(&read(&a.solution)?)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", a.solution.display())))?;
    let (_, witnesses) = problem_sets(&t.classify(), sol.side);
    let missed = verify_coverage(&t, &sol.guards, &witnesses)
        .map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    if missed.is_empty() {
        println!(
            "covered: {} vertices by {} guards",
            witnesses.len(),
            sol.guards.len()
        );
        Ok(0)
    } else {
        println!("unguarded: {}", one_based(&missed));
        Ok(EXIT_FAILURE)
    }
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    let t = load(&a.input)?;
    let (cands, wits) = problem_sets(&t.classify(), a.side);
    match min_guard_set_exact(&t, &cands, &wits, a.cap) {
        Ok(r) => {
            println!("optimum {}", r.optimum_size);
            println!("set {}", one_based(&r.optimum_set));
            println!("explored {}", r.explored);
            Ok(0)
        }
        Err(
            e @ (OracleError::BudgetExceeded { .. }
            | OracleError::Visibility(VisibilityError::OracleCapExceeded { .. })),
        ) => Err(fail(EXIT_BUDGET, e.to_string())),
        Err(e) => Err(fail(EXIT_FAILURE, e.to_string())),
    }
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let t = load(&a.input)?;
    let mode = if a.exhaustive {
        SuiteMode::Exhaustive
    } else {
        SuiteMode::sampled()
    };
    let report = property_suite(&t, mode).map_err(|e| fail(EXIT_BUDGET, e.to_string()))?;
    let mut text = report.to_json();
    text.push('\n');
    write_out(a.output.as_deref(), &text)?;
    eprint!("{}", report.summary());
    Ok(if report.is_clean() { 0 } else { EXIT_FAILURE })
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    if a.sizes.is_empty() {
        return Err(fail(EXIT_USAGE, "no sizes given"));
    }
    let cfg = BenchConfig {
        sizes: a.sizes,
        seeds_per_size: a.seeds_per_size,
        max_run: a.max_run,
        max_rise: a.max_rise,
    };
    let report = run_bench(&cfg).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    print!("{}", report.to_text());
    match a.csv {
        Some(p) => write_out(Some(&p), &report.to_csv())?,
        None => print!("\n{}", report.to_csv()),
    }
    Ok(0)
}

fn cmd_render(a: RenderArgs) -> CmdResult {
    let t = load(&a.input)?;
    let sol = match &a.solution {
        Some(p) => Some(
            solution_from_json(&read(p)?)
                .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    if let Some(s) = &sol {
        let n = t.len();
        let bad = s
            .guards
            .iter()
            .chain(s.assignment.keys())
            .chain(s.assignment.values())
            .find(|&&i| i >= n);
        if let Some(&i) = bad {
            return Err(fail(
                EXIT_INPUT,
                format!("solution names vertex {} of a {n}-vertex terrain", i + 1),
            ));
        }
    }
    let opts = ortho_guard::render::RenderOptions {
        arrows: !a.no_arrows,
        ..Default::default()
    };
    let svg = ortho_guard::render::render_svg_with(&t, sol.as_ref(), &opts);
    write_out(a.output.as_deref(), &svg)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Check(a) => cmd_check(a),
        Cmd::Oracle(a) => cmd_oracle(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Render(a) => cmd_render(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("otguard: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
