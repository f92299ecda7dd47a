//! Command-line front end.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use massless_core::coset::{cocycle, numeric_jacobian, CosetLabel};
use massless_core::function_space::{sample, Grid, GridFunction};
use massless_core::group::{GroupElement, DET_TOLERANCE};
use massless_core::induced::{apply_u, intertwiner_v, TranslationParameter};
use massless_core::spectral::{build_wavepacket, eigencheck};
use massless_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, RunConfig};
use crate::export;
use crate::report::Report;
use crate::suite;

#[derive(Debug, Parser)]
#[command(name = "massless-verify", version, about = "Verification suite for massless momentum operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suite and write report.json.
    Verify(VerifyArgs),
    /// Evaluate the cocycle at a point and compare with the numeric Jacobian.
    Cocycle(CocycleArgs),
    /// Plane-wave eigen-residuals for a list of wave vectors.
    Spectrum(SpectrumArgs),
    /// Wavepacket spectrum and profile snapshots before and after a translation.
    Packet(PacketArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// TOML run configuration; defaults apply to absent fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: ConfigArgs,
    /// Tolerance override `<check_id>=<value>`; repeatable.
    #[arg(long = "tol", value_name = "ID=VALUE")]
    pub tolerances: Vec<String>,
    /// Comma-separated check ids. An empty list runs nothing.
    #[arg(long)]
    pub checks: Option<String>,
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    /// Coset label, e.g. `0.3+0.4i`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Entries `g11,g12,g21,g22`. Drawn from the seed when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Finite-difference step of the Jacobian.
    #[arg(long, default_value_t = 1e-4)]
    pub step: f64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: ConfigArgs,
    /// Wave vector `k1,k2`; repeatable.
    #[arg(long = "k", value_name = "K1,K2", allow_hyphen_values = true)]
    pub wave_vectors: Vec<String>,
    /// Also export the configured wavepacket.
    #[arg(long)]
    pub packet: bool,
}

#[derive(Debug, Args)]
pub struct PacketArgs {
    #[command(flatten)]
    pub common: ConfigArgs,
    /// Translation, e.g. `1` or `0.5-0.2i`; overrides the configured one.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] massless_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub fn execute(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Verify(args) => verify(&args).map(|report| {
            for line in report.lines() {
                println!("{line}");
            }
            let s = &report.summary;
            println!("{} checks, {} passed, {} failed (seed {})", s.total, s.passed, s.failed, s.seed);
            report.all_passed()
        }),
        Command::Cocycle(args) => cocycle_command(&args).map(|lines| {
            for line in lines {
                println!("{line}");
            }
            true
        }),
        Command::Spectrum(args) => spectrum(&args).map(report_files),
        Command::Packet(args) => packet(&args).map(report_files),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn report_files(files: Vec<PathBuf>) -> bool {
    for f in files {
        println!("wrote {}", f.display());
    }
    true
}

fn load(common: &ConfigArgs) -> Result<RunConfig, CliError> {
    let mut config = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if let Some(out) = &common.out {
        config.out = out.clone();
    }
    Ok(config)
}

fn out_dir(config: &RunConfig) -> Result<&Path, CliError> {
    fs::create_dir_all(&config.out).map_err(|source| CliError::Io {
        path: config.out.clone(),
        source,
    })?;
    Ok(&config.out)
}

fn create(path: PathBuf) -> Result<(BufWriter<File>, PathBuf), CliError> {
    let file = File::create(&path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok((BufWriter::new(file), path))
}

/// Runs the suite and writes `report.json` into the output directory.
pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let mut config = load(&args.common)?;
    for assignment in &args.tolerances {
        config.override_tolerance(assignment)?;
    }
    if let Some(list) = &args.checks {
        config.select_checks(list)?;
    }
    let report = suite::run(&config)?;
    let path = out_dir(&config)?.join("report.json");
    report.write(&path).map_err(|source| CliError::Io { path, source })?;
    Ok(report)
}

pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    Complex64::from_str(text.trim()).map_err(|_| CliError::Input(format!("not a complex number: `{text}`")))
}

fn parse_pair(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Input(format!("expected `k1,k2`, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(bad());
    }
    Ok((a, b))
}

fn seeded_element(seed: u64) -> GroupElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    loop {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        if a.norm() < 0.3 {
            continue;
        }
        let d = (Complex64::new(1.0, 0.0) + b * c) / a;
        if let Ok(g) = GroupElement::from_entries(a, b, c, d) {
            return g;
        }
    }
}

/// Returns the printed lines: cocycle, numeric Jacobian and their difference.
pub fn cocycle_command(args: &CocycleArgs) -> Result<Vec<String>, CliError> {
    let z = parse_complex(&args.z)?;
    let g = match &args.g {
        Some(text) => {
            let entries = text
                .split(',')
                .map(parse_complex)
                .collect::<Result<Vec<_>, _>>()?;
            let [a, b, c, d] = entries[..] else {
                return Err(CliError::Input(format!("expected four entries, got {}", entries.len())));
            };
            GroupElement::from_entries(a, b, c, d)?
        }
        None => seeded_element(args.seed),
    };
    debug_assert!((g.det() - Complex64::new(1.0, 0.0)).norm() <= DET_TOLERANCE);
    let label = CosetLabel(z);
    let analytic = cocycle(label, &g)?.value();
    let numeric = numeric_jacobian(label, &g, args.step)?;
    Ok(vec![
        format!("cocycle {analytic}"),
        format!("jacobian {numeric}"),
        format!("difference {:e}", (analytic - numeric).abs()),
    ])
}

/// Writes `eigencheck.csv`, plus the packet files when requested.
pub fn spectrum(args: &SpectrumArgs) -> Result<Vec<PathBuf>, CliError> {
    let config = load(&args.common)?;
    config.validate()?;
    let vectors = args
        .wave_vectors
        .iter()
        .map(|t| parse_pair(t))
        .collect::<Result<Vec<_>, _>>()?;
    let grid = Grid::new(config.grid.spec()?)?;
    let mut rows = Vec::with_capacity(vectors.len());
    for (k1, k2) in vectors {
        rows.push((k1, k2, eigencheck(k1, k2, &grid)?));
    }
    let dir = out_dir(&config)?;
    let (w, path) = create(dir.join("eigencheck.csv"))?;
    export::write_eigen_table(w, &rows)?;
    let mut files = vec![path];
    if args.packet {
        files.extend(write_packet(&config, config.wavepacket.beta(), &grid)?);
    }
    Ok(files)
}

pub fn packet(args: &PacketArgs) -> Result<Vec<PathBuf>, CliError> {
    let config = load(&args.common)?;
    config.validate()?;
    let beta = match &args.beta {
        Some(text) => parse_complex(text)?,
        None => config.wavepacket.beta(),
    };
    let grid = Grid::new(config.grid.spec()?)?;
    write_packet(&config, beta, &grid)
}

/// `spectrum.csv`, the profile `ψ` on the grid (`packet_before.csv`) and the
/// profile of the translated packet at the grid nodes moved by `−β`
/// (`packet_after.csv`), so that matching rows agree.
fn write_packet(config: &RunConfig, beta: Complex64, grid: &std::sync::Arc<Grid>) -> Result<Vec<PathBuf>, CliError> {
    let packet = build_wavepacket(&config.wavepacket.spec())?;
    let before: GridFunction = sample(&intertwiner_v(packet.function())?, grid);
    let moved = intertwiner_v(&apply_u(TranslationParameter(beta), packet.function())?)?;
    let after: Vec<(Complex64, Complex64)> = grid
        .nodes()
        .iter()
        .map(|z| (z - beta, moved.value(z - beta)))
        .collect();
    let dir = out_dir(config)?;
    let (w, spectrum_path) = create(dir.join("spectrum.csv"))?;
    export::write_spectrum(w, packet.nodes())?;
    let (w, before_path) = create(dir.join("packet_before.csv"))?;
    export::write_grid_function(w, &before)?;
    let (w, after_path) = create(dir.join("packet_after.csv"))?;
    export::write_point_samples(w, &after)?;
    Ok(vec![spectrum_path, before_path, after_path])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.3+0.4i").unwrap(), Complex64::new(0.3, 0.4));
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), Complex64::new(0.0, -2.0));
        assert!(parse_complex("one").is_err());
        assert_eq!(parse_pair("3, -4").unwrap(), (3.0, -4.0));
        assert!(parse_pair("3").is_err());
    }

    #[test]
    fn cocycle_examples() {
        let args = |g: &str| CocycleArgs {
            z: "1".into(),
            g: Some(g.into()),
            seed: 0,
            step: 1e-4,
        };
        let lines = cocycle_command(&args("1,1,0,1")).unwrap();
        assert_eq!(lines[0], "cocycle 0.0625");
        let lines = cocycle_command(&args("1,0,0,1")).unwrap();
        assert_eq!(lines[0], "cocycle 1");
        assert!(matches!(cocycle_command(&args("1,1,1,1")), Err(CliError::Core(_))));
        assert!(matches!(cocycle_command(&args("1,1,0")), Err(CliError::Input(_))));
    }

    #[test]
    fn seeded_cocycle_matches_jacobian() {
        let args = CocycleArgs {
            z: "0.3+0.4i".into(),
            g: None,
            seed: 11,
            step: 1e-4,
        };
        let lines = cocycle_command(&args).unwrap();
        let diff: f64 = lines[2].split_whitespace().nth(1).unwrap().parse().unwrap();
        assert!(diff <= 1e-6, "{diff}");
    }

    #[test]
    fn command_line_shapes() {
        let cli = Cli::try_parse_from([
            "massless-verify",
            "verify",
            "--seed",
            "5",
            "--tol",
            "unitarity=1e-3",
            "--tol",
            "group_law=1e-9",
            "--checks",
            "",
        ])
        .unwrap();
        let Command::Verify(v) = cli.command else { panic!() };
        assert_eq!(v.common.seed, Some(5));
        assert_eq!(v.tolerances.len(), 2);
        assert_eq!(v.checks.as_deref(), Some(""));
        assert!(Cli::try_parse_from(["massless-verify", "cocycle", "--z", "-1+i"]).is_ok());
        assert!(Cli::try_parse_from(["massless-verify", "verify", "--seed", "-1"]).is_err());
    }
}
