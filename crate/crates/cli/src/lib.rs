//! Command-line front end. Every subcommand reads a model file, writes
//! `report.json` and `data.csv` into `--out-dir`, and maps its verdict to an
//! exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | all checks passed |
//! | 1 | usage, input or configuration error |
//! | 2 | a bound or check was violated |
//! | 3 | a hypothesis failed: vanishing symbol or singular circulant |

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use wegner_core::circulant::column_sum_norm;
use wegner_core::experiments::{SIGMA_THRESHOLD, WIENER_TOLERANCE};
use wegner_core::model::uniforms;
use wegner_core::spectral::QuadratureOptions;
use wegner_core::{
    build_circulant, certify_nonvanishing, check_diagonal_dominance, estimate_ids, estimate_wegner,
    lipschitz_check, self_averaging_check, spectral_averaging_check, verify_rectangle_condition,
    wegner_constant, wiener_inverse, AndersonConfig, Boundary, DensityBV, Error, Hamiltonian, Interval,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wegner-lab", version, about = "Wegner estimates for Anderson models with sign-changing potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify that the symbol of alpha does not vanish and invert it
    SymbolCheck(SymbolArgs),
    /// Build, invert and verify the periodized coefficient matrix
    Circulant(CirculantArgs),
    /// Monte Carlo estimate of the Wegner ratio on one interval
    Wegner(WegnerArgs),
    /// Integrated density of states on an energy grid, with Lipschitz check
    Ids(IdsArgs),
    /// Variance of the normalized eigenvalue count across box sizes
    AvgCheck(AvgCheckArgs),
    /// Spectral averaging inequality on a one-dimensional chain
    Averaging(AveragingArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Model file (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Directory for report.json and data.csv
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct SymbolArgs {
    #[command(flatten)]
    common: Common,
    /// Grid points per axis for the certificate
    #[arg(long, default_value_t = 256)]
    grid: usize,
    /// Tail tolerance for the Wiener inversion
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
}

#[derive(Args, Debug)]
struct CirculantArgs {
    #[command(flatten)]
    common: Common,
    /// Box half-side; defaults to the model's
    #[arg(long)]
    l: Option<usize>,
    /// Also write the dense matrices A.txt and B.txt
    #[arg(long)]
    export: bool,
}

#[derive(Args, Debug)]
struct WegnerArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    e1: f64,
    #[arg(long, allow_hyphen_values = true)]
    e2: f64,
    #[arg(long, default_value_t = 1000)]
    realizations: usize,
    /// Overrides the seed in the model file
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct IdsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    emin: f64,
    #[arg(long, allow_hyphen_values = true)]
    emax: f64,
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, default_value_t = 1000)]
    realizations: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct AvgCheckArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    energy: f64,
    /// Increasing box half-sides, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 8])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 500)]
    realizations: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct AveragingArgs {
    /// Directory for report.json and data.csv
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Chain length; H0 is the truncated hopping operator
    #[arg(long, default_value_t = 11)]
    sites: usize,
    /// Site j carrying the weight; defaults to the middle of the chain
    #[arg(long)]
    site: Option<usize>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.9)]
    lo: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.1)]
    hi: f64,
    /// g is uniform on [g_lo, g_hi]
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    g_lo: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 4.0)]
    g_hi: f64,
    /// Additional random unit vectors phi
    #[arg(long, default_value_t = 0)]
    draws: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A finished run: what goes into `report.json`, the rows of `data.csv`, and
/// whether every check passed.
struct Outcome {
    command: &'static str,
    seed: Option<u64>,
    config_digest: Option<String>,
    report: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    pass: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::SymbolVanishes { .. } | Error::SingularCirculant { .. }) => EXIT_HYPOTHESIS,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (including the program name) and runs the command. Returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let (out_dir, result) = match &cli.command {
        Command::SymbolCheck(a) => (&a.common.out_dir, symbol_check(a)),
        Command::Circulant(a) => (&a.common.out_dir, circulant(a)),
        Command::Wegner(a) => (&a.common.out_dir, wegner(a)),
        Command::Ids(a) => (&a.common.out_dir, ids(a)),
        Command::AvgCheck(a) => (&a.common.out_dir, avg_check(a)),
        Command::Averaging(a) => (&a.out_dir, averaging(a)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = write_outputs(out_dir, &outcome) {
        eprintln!("error: cannot write output to {}: {e}", out_dir.display());
        return EXIT_USAGE;
    }
    println!(
        "{}: {} ({})",
        outcome.command,
        if outcome.pass { "pass" } else { "VIOLATION" },
        out_dir.join("report.json").display()
    );
    if outcome.pass {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    }
}

fn write_outputs(dir: &Path, outcome: &Outcome) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "version": env!("CARGO_PKG_VERSION"),
        "command": outcome.command,
        "seed": outcome.seed,
        "config_digest": outcome.config_digest,
        "pass": outcome.pass,
        "report": outcome.report,
    });
    std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
    let mut csv = csv::Writer::from_path(dir.join("data.csv"))?;
    csv.write_record(&outcome.header)?;
    for row in &outcome.rows {
        csv.write_record(row)?;
    }
    csv.flush()
}

fn load(common: &Common) -> CliResult<AndersonConfig> {
    Ok(AndersonConfig::from_file(&common.config)?)
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn site_columns(d: usize, prefix: &str) -> Vec<String> {
    (1..=d).map(|i| format!("{prefix}{i}")).collect()
}

fn seed_for(flag: Option<u64>, config: &AndersonConfig) -> u64 {
    flag.or(config.seed).unwrap_or(0)
}

fn symbol_check(args: &SymbolArgs) -> CliResult<Outcome> {
    if args.grid < 2 {
        return Err(CliError::Usage("--grid needs at least 2 points".into()));
    }
    let config = load(&args.common)?;
    let certificate = certify_nonvanishing(&config.alpha, args.grid);
    let wiener = wiener_inverse(&config.alpha, args.tolerance)?;
    let d = config.d;
    let mut header = site_columns(d, "k");
    header.push("beta".into());
    let rows = wiener
        .beta
        .iter()
        .map(|(k, b)| k.iter().map(|x| x.to_string()).chain([format!("{b:e}")]).collect())
        .collect();
    Ok(Outcome {
        command: "symbol-check",
        seed: None,
        config_digest: Some(config.digest()),
        report: json!({
            "diagonally_dominant": check_diagonal_dominance(&config.alpha),
            "certificate": to_value(&certificate),
            "column_sum_norm": wiener.column_sum_norm,
            "truncation_radius": wiener.truncation_radius,
            "grid": wiener.grid,
            "tail_bound": wiener.tail_bound,
            "wegner_constant": wegner_constant(&config, &wiener),
        }),
        header,
        rows,
        pass: true,
    })
}

fn circulant(args: &CirculantArgs) -> CliResult<Outcome> {
    let config = load(&args.common)?;
    let l = args.l.unwrap_or(config.l);
    let big_r = config.big_r();
    let a = build_circulant(&config.alpha, l, big_r)?;
    let b = a.invert()?;
    let product = a.to_dense() * b.to_dense();
    let identity_error = (0..a.dim())
        .flat_map(|i| (0..a.dim()).map(move |k| (i, k)))
        .map(|(i, k)| (product[(i, k)] - if i == k { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    let r = config.v.support_radius();
    let rectangle = verify_rectangle_condition(&a, &config.alpha, l, r, big_r)?;
    let wiener = wiener_inverse(&config.alpha, WIENER_TOLERANCE)?;
    let norm = column_sum_norm(&b);
    let pass = identity_error <= 1e-10 && rectangle && norm <= wiener.column_sum_norm + 1e-8;

    if args.export {
        std::fs::create_dir_all(&args.common.out_dir).map_err(|e| CliError::Usage(e.to_string()))?;
        for (name, m) in [("A.txt", &a), ("B.txt", &b)] {
            std::fs::write(args.common.out_dir.join(name), m.to_dense_text())
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
    }
    let mut header = site_columns(config.d, "m");
    header.extend(["a".to_string(), "b".to_string()]);
    let rows = a
        .index_box()
        .iter()
        .map(|m| {
            let mut row: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            row.push(format!("{:e}", a.coefficient(&m)));
            row.push(format!("{:e}", b.coefficient(&m)));
            row
        })
        .collect();
    Ok(Outcome {
        command: "circulant",
        seed: None,
        config_digest: Some(config.digest()),
        report: json!({
            "l": l,
            "big_r": big_r,
            "dimension": a.dim(),
            "min_eigenvalue_modulus": a.min_eigenvalue_modulus(),
            "identity_error": identity_error,
            "rectangle_condition": rectangle,
            "inverse_column_sum_norm": norm,
            "laurent_column_sum_norm": wiener.column_sum_norm,
        }),
        header,
        rows,
        pass,
    })
}

fn wegner(args: &WegnerArgs) -> CliResult<Outcome> {
    let config = load(&args.common)?;
    let seed = seed_for(args.seed, &config);
    let report = estimate_wegner(&config, args.e1, args.e2, args.realizations, seed)?;
    let rows = report
        .counts
        .iter()
        .enumerate()
        .map(|(i, c)| vec![i.to_string(), c.to_string()])
        .collect();
    Ok(Outcome {
        command: "wegner",
        seed: Some(seed),
        config_digest: Some(report.config_digest.clone()),
        report: to_value(&report),
        header: vec!["realization".into(), "count".into()],
        rows,
        pass: report.pass,
    })
}

fn ids(args: &IdsArgs) -> CliResult<Outcome> {
    if args.points < 2 || !(args.emin < args.emax) {
        return Err(CliError::Usage("need --points >= 2 and --emin < --emax".into()));
    }
    let config = load(&args.common)?;
    let seed = seed_for(args.seed, &config);
    let step = (args.emax - args.emin) / (args.points - 1) as f64;
    let energies: Vec<f64> = (0..args.points).map(|i| args.emin + step * i as f64).collect();
    let curve = estimate_ids(&config, &energies, args.realizations, seed)?;
    let c_w = wegner_constant(&config, &wiener_inverse(&config.alpha, WIENER_TOLERANCE)?);
    let slopes = lipschitz_check(&curve, c_w);
    let monotone = curve.is_monotone_within(SIGMA_THRESHOLD);
    let pass = curve.in_unit_interval() && monotone && slopes.iter().all(|s| s.pass);
    let rows = (0..energies.len())
        .map(|i| {
            vec![
                format!("{:e}", curve.energies[i]),
                format!("{:e}", curve.mean[i]),
                format!("{:e}", curve.std_error[i]),
            ]
        })
        .collect();
    Ok(Outcome {
        command: "ids",
        seed: Some(seed),
        config_digest: Some(config.digest()),
        report: json!({
            "curve": to_value(&curve),
            "c_w": c_w,
            "in_unit_interval": curve.in_unit_interval(),
            "monotone": monotone,
            "lipschitz": to_value(&slopes),
        }),
        header: vec!["energy".into(), "mean".into(), "std_error".into()],
        rows,
        pass,
    })
}

fn avg_check(args: &AvgCheckArgs) -> CliResult<Outcome> {
    let config = load(&args.common)?;
    let seed = seed_for(args.seed, &config);
    let table = self_averaging_check(&config, &args.sizes, args.energy, args.realizations, seed)?;
    let rows = table
        .rows
        .iter()
        .map(|r| vec![r.l.to_string(), r.volume.to_string(), format!("{:e}", r.mean), format!("{:e}", r.variance)])
        .collect();
    Ok(Outcome {
        command: "avg-check",
        seed: Some(seed),
        config_digest: Some(config.digest()),
        report: to_value(&table),
        header: vec!["l".into(), "volume".into(), "mean".into(), "variance".into()],
        rows,
        pass: table.non_increasing,
    })
}

fn averaging(args: &AveragingArgs) -> CliResult<Outcome> {
    if args.sites == 0 {
        return Err(CliError::Usage("--sites must be positive".into()));
    }
    let j = args.site.unwrap_or(args.sites / 2);
    let h0 = Hamiltonian::lattice(&[args.sites], Boundary::Truncated, &vec![0.0; args.sites])?;
    let g = DensityBV::uniform(args.g_lo, args.g_hi)?;
    let interval = Interval::new(args.lo, args.hi)?;
    let mut w = vec![0.0; args.sites];
    if j < args.sites {
        w[j] = 1.0;
    }
    let mut vectors = Vec::with_capacity(args.draws + 1);
    let mut unit = vec![0.0; args.sites];
    if j < args.sites {
        unit[j] = 1.0;
    }
    vectors.push(unit);
    for draw in 0..args.draws {
        let v: Vec<f64> = uniforms(args.sites, args.seed, draw as u64).iter().map(|u| 2.0 * u - 1.0).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        vectors.push(v.into_iter().map(|x| x / norm).collect());
    }
    let outcomes = vectors
        .iter()
        .map(|phi| spectral_averaging_check(&h0, &w, &g, interval, j, phi, QuadratureOptions::default()))
        .collect::<wegner_core::Result<Vec<_>>>()?;
    let pass = outcomes.iter().all(|o| o.pass);
    let rows = outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| {
            vec![
                i.to_string(),
                format!("{:e}", o.lhs),
                format!("{:e}", o.bound),
                format!("{:e}", o.error_estimate),
                o.pass.to_string(),
            ]
        })
        .collect();
    Ok(Outcome {
        command: "averaging",
        seed: Some(args.seed),
        config_digest: None,
        report: json!({
            "sites": args.sites,
            "site": j,
            "interval": [args.lo, args.hi],
            "g_support": [args.g_lo, args.g_hi],
            "outcomes": to_value(&outcomes),
        }),
        header: vec!["draw".into(), "lhs".into(), "bound".into(), "error_estimate".into(), "pass".into()],
        rows,
        pass,
    })
}
