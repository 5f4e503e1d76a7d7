//! Thin CLI over [`zeta_forms::report::run`]: subcommand = mode, exit code
//! = verdict summary (0 ok, 1 failures, 2 bad config, 3 indeterminate).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zeta_forms::report::{run, Mode, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "zeta-forms",
    version,
    about = "Exact verification and rigorous numerics for twisted well-poised linear forms in odd zeta values"
)]
struct Cli {
    #[command(subcommand)]
    mode: ModeCmd,
}

#[derive(Subcommand)]
enum ModeCmd {
    /// Exact suite: partial-fraction integrality, symmetry, row sums,
    /// form inclusions, brick oracles, term-ratio identities.
    VerifyExact(CommonArgs),
    /// Signs of 7r - r^, scaled magnitudes, normalized decay, trends.
    DecayTable(CommonArgs),
    /// x0, x1, log g(x0) and certified decay exponents (optionally a scan).
    Asymptotics(CommonArgs),
    /// Enclosures of zeta(i) for odd i <= s.
    ZetaTable(CommonArgs),
    /// Brick identities, Bernoulli values, enclosure containment sampling.
    Selftest(CommonArgs),
    /// Everything above in order.
    All(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Odd zeta-slot count s >= 7.
    #[arg(long, default_value_t = 25)]
    s: u32,
    /// Smallest index n.
    #[arg(long, default_value_t = 1)]
    n_min: u32,
    /// Largest index n.
    #[arg(long, default_value_t = 12)]
    n_max: u32,
    /// Target precision in decimal digits (radius 10^-precision).
    #[arg(long, default_value_t = 40)]
    precision: u32,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Scan range "lo..hi" of odd s for the asymptotics mode.
    #[arg(long, value_parser = parse_scan)]
    scan_s: Option<(u32, u32)>,
    /// Seed for sample-point and containment sampling.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Maximum number of terms a direct summation may use.
    #[arg(long, default_value_t = 1 << 20)]
    max_cutoff: u64,
    /// Self-test hook "i,k": perturb one coefficient by 1/d^s before the
    /// exact suite runs; the report must localize the fault.
    #[arg(long, value_parser = parse_fault)]
    inject_fault: Option<(u32, u32)>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Human,
}

fn parse_scan(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected \"lo..hi\"")?;
    Ok((
        lo.trim()
            .parse()
            .map_err(|e| format!("bad lower bound: {e}"))?,
        hi.trim()
            .parse()
            .map_err(|e| format!("bad upper bound: {e}"))?,
    ))
}

fn parse_fault(s: &str) -> Result<(u32, u32), String> {
    let (i, k) = s.split_once(',').ok_or("expected \"i,k\"")?;
    Ok((
        i.trim().parse().map_err(|e| format!("bad i: {e}"))?,
        k.trim().parse().map_err(|e| format!("bad k: {e}"))?,
    ))
}

fn to_config(mode: Mode, a: CommonArgs) -> RunConfig {
    RunConfig {
        mode,
        s: a.s,
        n_min: a.n_min,
        n_max: a.n_max,
        precision: a.precision,
        format: match a.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Human => OutputFormat::Human,
        },
        scan_s: a.scan_s,
        seed: a.seed,
        max_cutoff: a.max_cutoff,
        inject_fault: a.inject_fault,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match cli.mode {
        ModeCmd::VerifyExact(a) => (Mode::VerifyExact, a),
        ModeCmd::DecayTable(a) => (Mode::DecayTable, a),
        ModeCmd::Asymptotics(a) => (Mode::Asymptotics, a),
        ModeCmd::ZetaTable(a) => (Mode::ZetaTable, a),
        ModeCmd::Selftest(a) => (Mode::Selftest, a),
        ModeCmd::All(a) => (Mode::All, a),
    };
    let out_path = args.out.clone();
    let config = to_config(mode, args);

    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("invalid configuration: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = report.render(config.format);
    match out_path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rendered.as_bytes());
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
