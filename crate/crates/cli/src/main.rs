use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use polarform::experiments::{self, curve, read_csv, snr_gain, write_csv, ExperimentConfig, EXPERIMENT_IDS};
use polarform::{Error, SchemeId};

/// Monte-Carlo rate curves for polarforming and baseline schemes.
#[derive(Debug, Parser)]
#[command(name = "polarform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the catalog experiments.
    List,
    /// Run a catalog experiment (or a JSON config) and write its CSV.
    Run {
        /// Catalog id, e.g. fig7_rate_vs_snr.
        #[arg(required_unless_present = "config", conflicts_with = "config")]
        experiment_id: Option<String>,
        /// JSON file holding one experiment config or an array of them.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        realizations: Option<usize>,
        /// `key=value`, applied to every panel; repeatable.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// SNR gain (dB) of scheme A over scheme B at a target rate.
    Gain {
        csv: PathBuf,
        #[arg(long)]
        scheme_a: SchemeId,
        #[arg(long)]
        scheme_b: SchemeId,
        /// Target rate in bits/s/Hz.
        #[arg(long)]
        rate: f64,
        /// Restrict both curves to one experiment label.
        #[arg(long)]
        experiment: Option<String>,
        #[arg(long)]
        experiment_a: Option<String>,
        #[arg(long)]
        experiment_b: Option<String>,
    },
}

const EXIT_CONFIG: u8 = 1;
const EXIT_IO: u8 = 2;

fn exit_code(err: &anyhow::Error) -> u8 {
    let io = err.chain().any(|e| {
        e.is::<std::io::Error>() || matches!(e.downcast_ref::<Error>(), Some(Error::Io { .. } | Error::Csv { .. }))
    });
    if io {
        EXIT_IO
    } else {
        EXIT_CONFIG
    }
}

fn load_configs(path: &Path) -> anyhow::Result<Vec<ExperimentConfig>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Config {
        field: "config".into(),
        reason: e.to_string(),
    })?;
    let configs = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|c| vec![c])
    };
    Ok(configs.map_err(|e| Error::Config {
        field: "config".into(),
        reason: e.to_string(),
    })?)
}

fn run(
    experiment_id: Option<String>,
    config: Option<PathBuf>,
    out: PathBuf,
    seed: Option<u64>,
    realizations: Option<usize>,
    overrides: Vec<String>,
) -> anyhow::Result<()> {
    let (name, mut panels) = match (&experiment_id, &config) {
        (Some(id), _) => (id.clone(), experiments::panels(id)?),
        (None, Some(path)) => {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "config".into());
            (stem, load_configs(path)?)
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    for p in &mut panels {
        if let Some(s) = seed {
            p.master_seed = s;
        }
        if let Some(r) = realizations {
            p.realizations = r;
        }
        for kv in &overrides {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Config {
                field: "override".into(),
                reason: format!("`{kv}` is not KEY=VALUE"),
            })?;
            p.apply_override(k.trim(), v)?;
        }
        p.validate()?;
    }
    let mut rows = Vec::new();
    for p in &panels {
        eprintln!("running {} ({} realizations)", p.experiment_id, p.realizations);
        rows.extend(experiments::run_experiment(p)?);
    }
    std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    let path = out.join(format!("{name}.csv"));
    write_csv(&rows, &path)?;
    println!("{}", path.display());
    Ok(())
}

fn gain(
    csv: &Path,
    a: SchemeId,
    b: SchemeId,
    rate: f64,
    exp_a: Option<&str>,
    exp_b: Option<&str>,
) -> anyhow::Result<()> {
    let rows = read_csv(csv)?;
    let ca = curve(&rows, exp_a, a);
    let cb = curve(&rows, exp_b, b);
    for (c, s, e) in [(&ca, a, exp_a), (&cb, b, exp_b)] {
        if c.is_empty() {
            return Err(Error::Config {
                field: "scheme".into(),
                reason: format!("no rows for {s}{}", e.map(|e| format!(" in {e}")).unwrap_or_default()),
            }
            .into());
        }
    }
    let g = snr_gain(&ca, &cb, rate)?;
    println!("{g:.3}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::List => {
            for id in EXPERIMENT_IDS {
                println!("{id:<20} {}", experiments::describe(id).unwrap_or(""));
            }
            Ok(())
        }
        Command::Run {
            experiment_id,
            config,
            out,
            seed,
            realizations,
            overrides,
        } => run(experiment_id, config, out, seed, realizations, overrides),
        Command::Gain {
            csv,
            scheme_a,
            scheme_b,
            rate,
            experiment,
            experiment_a,
            experiment_b,
        } => {
            let ea = experiment_a.or_else(|| experiment.clone());
            let eb = experiment_b.or(experiment);
            gain(&csv, scheme_a, scheme_b, rate, ea.as_deref(), eb.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
