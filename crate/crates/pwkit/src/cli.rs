//! Command-line interface.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pwkit_core::slice::{radial_fourier, slice_test_radii};
use pwkit_core::weyl::{is_invariant, ow1_lift, weyl_group, Family, RootSystemSpec};

use crate::checks::{self, Workspace};
use crate::config::{Preset, RunConfig};
use crate::io;
use crate::report::{CheckRecord, Comparison, Report};

#[derive(Debug, Parser)]
#[command(name = "pwkit", version, about = "Certify Radon, Fourier-slice, Paley-Wiener, sphere and Weyl-invariant identities")]
pub struct Cli {
    /// TOML file overriding preset values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Points per axis and half width of the planar grids, as `M,L`.
    #[arg(long, global = true, value_parser = parse_grid)]
    pub grid: Option<(usize, f64)>,
    /// Directions on the circle.
    #[arg(long, global = true)]
    pub directions: Option<usize>,
    /// Highest moment order of the homogeneity check.
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    /// Polynomial weight order of the Paley-Wiener seminorm.
    #[arg(long = "N", global = true)]
    pub order: Option<u32>,
    /// Where to write the JSON report.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radon transform checks; optionally writes the sinogram.
    Radon {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Sinogram CSV; the direction table goes next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier-slice, Plancherel, inversion and projection checks.
    Slice {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Vector-valued transform CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponential type, growth, homogeneity and extension checks.
    Pw {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Zonal Radon transform checks on the sphere.
    Sphere {
        /// Sphere dimension of the input profile.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Profile CSV; without it the built-in cap bumps are used.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Weyl group restriction and invariant lifting.
    Weyl {
        #[command(subcommand)]
        action: Option<WeylCommand>,
    },
    /// Every check with the seeded suite.
    All,
}

#[derive(Debug, Subcommand)]
pub enum WeylCommand {
    /// Certify that restriction of W(k)-invariants onto W(n)-invariants is onto, up to degree d.
    Certify {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Lift a W(n)-invariant polynomial to a W(k)-invariant one.
    Lift {
        /// Polynomial text file in the coordinates of the small space.
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_parser = parse_family, default_value = "B")]
        family: Family,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Degree bound; defaults to the degree of the target.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_grid(text: &str) -> Result<(usize, f64), String> {
    let (m, l) = text.split_once(',').ok_or("expected `M,L`")?;
    let m = m.trim().parse().map_err(|_| format!("bad point count `{m}`"))?;
    let l = l.trim().parse().map_err(|_| format!("bad half width `{l}`"))?;
    Ok((m, l))
}

fn parse_family(text: &str) -> Result<Family, String> {
    text.parse().map_err(|e| format!("{e}"))
}

impl Cli {
    /// Preset, then the config file, then command-line flags.
    pub fn run_config(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::preset(self.preset.unwrap_or(Preset::Desk));
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some((m, l)) = self.grid {
            cfg.points = m;
            cfg.half_width = l;
        }
        if let Some(q) = self.directions {
            cfg.directions = q;
        }
        if let Some(k) = self.kmax {
            cfg.kmax = k;
        }
        if let Some(n) = self.order {
            cfg.order = n;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn command_name(&self) -> String {
        match &self.command {
            Command::Radon { .. } => "radon".into(),
            Command::Slice { .. } => "slice".into(),
            Command::Pw { .. } => "pw".into(),
            Command::Sphere { .. } => "sphere".into(),
            Command::Weyl { action: Some(WeylCommand::Certify { .. }) } => "weyl certify".into(),
            Command::Weyl { action: Some(WeylCommand::Lift { .. }) } => "weyl lift".into(),
            Command::Weyl { action: None } => "weyl".into(),
            Command::All => "all".into(),
        }
    }
}

fn workspace<'a>(cfg: &'a RunConfig, input: &Option<PathBuf>) -> Result<Workspace<'a>> {
    match input {
        Some(path) => {
            let f = io::read_function(path)?;
            Ok(Workspace::from_function(cfg, &path.display().to_string(), f))
        }
        None => Workspace::seeded(cfg),
    }
}

/// Every check on the seeded suite, in module order.
pub fn all_checks(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let ws = Workspace::seeded(cfg)?;
    let mut out = checks::radon_checks(&ws);
    out.extend(checks::slice_checks(&ws));
    out.extend(checks::pw_checks(&ws));
    out.extend(checks::sphere_checks(cfg, None));
    out.extend(checks::weyl_checks(cfg));
    Ok(out)
}

pub fn report(cfg: &RunConfig, command: &str, checks: Vec<CheckRecord>) -> Report {
    let preset = cfg.preset.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    Report { command: command.to_owned(), seed: cfg.seed, preset, checks }
}

fn lift(target: &PathBuf, family: Family, k: usize, n: usize, d: Option<usize>, out: &Option<PathBuf>) -> Result<Vec<CheckRecord>> {
    let spec_k = RootSystemSpec::new(family, k)?;
    let spec_n = RootSystemSpec::new(family, n)?;
    let poly = io::read_polynomial(target, spec_n.ambient())?;
    let d = d.unwrap_or(poly.degree());
    let anchor = "invariant extension by averaging, Rais decomposition and lifting";
    let lifted = ow1_lift(&poly, spec_k, spec_n, d).with_context(|| format!("lifting {} from {spec_n} to {spec_k}", target.display()))?;
    let ok = lifted.restrict(spec_k.coords_of(n)) == poly && is_invariant(&lifted, &weyl_group(spec_k)?);
    if let Some(path) = out {
        std::fs::write(path, lifted.to_string()).with_context(|| format!("writing {}", path.display()))?;
    }
    let rec = CheckRecord::new("weyl.lift", anchor, if ok { 0.0 } else { 1.0 }, 0.0, Comparison::AtMost)
        .with("pair", format!("{spec_k} -> {spec_n}"))
        .with("degree", d)
        .with("lifted", lifted.to_string());
    Ok(vec![rec])
}

/// Executes the selected pipeline and writes its artifacts and report.
pub fn run(cli: &Cli) -> Result<Report> {
    let cfg = cli.run_config()?;
    let checks = match &cli.command {
        Command::Radon { input, out } => {
            let ws = workspace(&cfg, input)?;
            if let Some(path) = out {
                let s = &ws.sinograms()?[0];
                io::write_sinogram(s, path, &path.with_extension("directions.csv"))?;
            }
            checks::radon_checks(&ws)
        }
        Command::Slice { input, out } => {
            let ws = workspace(&cfg, input)?;
            if let Some(path) = out {
                let ft = radial_fourier(&ws.sinograms()?[0], &slice_test_radii())?;
                io::write_vector_ft(&ft, path)?;
            }
            checks::slice_checks(&ws)
        }
        Command::Pw { input } => checks::pw_checks(&workspace(&cfg, input)?),
        Command::Sphere { n, input } => match input {
            Some(path) => {
                let p = io::read_profile(path, *n)?;
                checks::sphere_checks(&cfg, Some(&p))
            }
            None => checks::sphere_checks(&cfg, None),
        },
        Command::Weyl { action: None } => checks::weyl_checks(&cfg),
        Command::Weyl { action: Some(WeylCommand::Certify { family, k, n, d }) } => {
            if n >= k {
                bail!("certification needs n < k");
            }
            vec![checks::certify(*family, *k, *n, *d)]
        }
        Command::Weyl { action: Some(WeylCommand::Lift { target, family, k, n, d, out }) } => lift(target, *family, *k, *n, *d, out)?,
        Command::All => all_checks(&cfg)?,
    };
    let report = report(&cfg, &cli.command_name(), checks);
    if let Some(path) = &cli.report {
        report.write(path)?;
    }
    Ok(report)
}
