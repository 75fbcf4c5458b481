use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use texture_ensemble::imgio::CANONICAL_SIZE;
use texture_ensemble::ledger::ledger;
use texture_ensemble::pipeline::{
    evaluate_model, export_features, fit_with_search, load_working_image, run_protocol_with,
    write_synth_corpus, DatasetManifest, FeatureTable, ProtocolOptions, SynthOptions,
};
use texture_ensemble::svm::{grid_search, train_multiclass_with, SvmParams};
use texture_ensemble::{extract, DescriptorConfig, Error, GridSpec, Result, SvmModel};

#[derive(Parser)]
#[command(
    name = "texens",
    version,
    about = "Texture descriptors and SVM texture classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridArgs {
    /// C exponents as start:end:step (powers of two).
    #[arg(long, default_value = "-5:15:2", allow_hyphen_values = true)]
    c_exp: String,
    /// Gamma exponents as start:end:step (powers of two).
    #[arg(long, default_value = "-15:3:2", allow_hyphen_values = true)]
    gamma_exp: String,
    #[arg(long, default_value_t = 5)]
    folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GridArgs {
    fn grid(&self) -> Result<GridSpec> {
        let range = |s: &str| -> Result<(i32, i32, i32)> {
            let parts: Vec<i32> = s
                .split(':')
                .map(|p| p.trim().parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::BadParameter(format!("exponent range `{s}`")))?;
            match parts[..] {
                [a, b, step] if step > 0 && a <= b => Ok((a, b, step)),
                _ => Err(Error::BadParameter(format!(
                    "exponent range `{s}`, expected start:end:step"
                ))),
            }
        };
        let grid =
            GridSpec::from_exponents(range(&self.c_exp)?, range(&self.gamma_exp)?, self.folds);
        grid.validate()?;
        Ok(grid)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Extract features for every manifest entry into a feature table.
    Extract {
        #[arg(long)]
        manifest: PathBuf,
        /// Descriptor, e.g. cogriWeberLBP@16,2.
        #[arg(long)]
        config: DescriptorConfig,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = CANONICAL_SIZE)]
        size: u32,
    },
    /// Train a model from a feature table or a manifest plus descriptor.
    Train {
        #[arg(long, conflicts_with_all = ["manifest", "config"])]
        features: Option<PathBuf>,
        #[arg(long, requires = "config")]
        manifest: Option<PathBuf>,
        #[arg(long)]
        config: Option<DescriptorConfig>,
        /// Model output file.
        #[arg(long)]
        out: PathBuf,
        /// Fixed C; skips the grid search together with --gamma.
        #[arg(long, requires = "gamma")]
        c: Option<f64>,
        #[arg(long, requires = "c")]
        gamma: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = CANONICAL_SIZE)]
        size: u32,
    },
    /// Classify one image or every image of a manifest.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(
            long,
            conflicts_with = "manifest",
            required_unless_present = "manifest"
        )]
        image: Option<PathBuf>,
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Descriptor, when the model file does not record one.
        #[arg(long)]
        config: Option<DescriptorConfig>,
        #[arg(long, default_value_t = CANONICAL_SIZE)]
        size: u32,
    },
    /// Score a model on a labelled manifest.
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        config: Option<DescriptorConfig>,
        #[arg(long, default_value_t = CANONICAL_SIZE)]
        size: u32,
    },
    /// Cross-validated (C, gamma) search over a feature table.
    GridSearch {
        #[arg(long)]
        features: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Print every grid cell.
        #[arg(long)]
        verbose: bool,
    },
    /// Split, search, train and test on a manifest.
    Run {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        config: DescriptorConfig,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 0.8)]
        train_ratio: f64,
        #[arg(long, default_value_t = CANONICAL_SIZE)]
        size: u32,
    },
    /// Write a seeded synthetic texture corpus with a manifest.
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 100)]
        per_class: usize,
        #[arg(long, default_value_t = CANONICAL_SIZE)]
        size: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the feature-dimension ledger.
    Dims,
}

fn model_config(model: &SvmModel, given: Option<DescriptorConfig>) -> Result<DescriptorConfig> {
    match (given, model.descriptor()) {
        (Some(cfg), _) => Ok(cfg),
        (None, Some(d)) => d.parse(),
        (None, None) => Err(Error::InvalidConfig(
            "model records no descriptor, pass --config".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Extract {
            manifest,
            config,
            out,
            size,
        } => {
            let m = DatasetManifest::load(&manifest)?;
            let rows = export_features(&m, &config, size, &out)?;
            println!("wrote {rows} rows of {config} to {}", out.display());
        }
        Command::Train {
            features,
            manifest,
            config,
            out,
            c,
            gamma,
            grid,
            size,
        } => {
            let table = match (features, manifest, config) {
                (Some(f), _, _) => FeatureTable::load(f)?,
                (None, Some(m), Some(cfg)) => {
                    FeatureTable::from_manifest(&DatasetManifest::load(m)?, &cfg, size)?
                }
                _ => {
                    return Err(Error::BadParameter(
                        "pass --features or --manifest with --config".into(),
                    ))
                }
            };
            let (x, y) = (table.samples(), table.labels());
            let mut model = match (c, gamma) {
                (Some(c), Some(gamma)) => train_multiclass_with(&x, &y, &SvmParams::new(c, gamma))?,
                _ => {
                    let (model, best) = fit_with_search(&x, &y, &grid.grid()?, grid.seed)?;
                    println!(
                        "C = {}, gamma = {}, cv accuracy {:.4}",
                        best.c, best.gamma, best.cv_accuracy
                    );
                    model
                }
            };
            model.set_descriptor(Some(table.descriptor.clone()));
            model.save(&out)?;
            println!(
                "{} classes, {} support vectors, saved to {}",
                model.classes().len(),
                model.total_support_vectors(),
                out.display()
            );
        }
        Command::Predict {
            model,
            image,
            manifest,
            config,
            size,
        } => {
            let model = SvmModel::load(model)?;
            let cfg = model_config(&model, config)?;
            let paths = match (image, manifest) {
                (Some(p), _) => vec![p],
                (None, Some(m)) => DatasetManifest::load(m)?
                    .entries()
                    .iter()
                    .map(|e| e.path.clone())
                    .collect(),
                (None, None) => unreachable!("clap requires one of them"),
            };
            for p in paths {
                let img = load_working_image(&p, size)?;
                let f = extract(&img, &cfg)?;
                println!("{},{}", p.display(), model.predict(f.values())?);
            }
        }
        Command::Evaluate {
            model,
            manifest,
            config,
            size,
        } => {
            let model = SvmModel::load(model)?;
            let cfg = model_config(&model, config)?;
            let report = evaluate_model(&model, &DatasetManifest::load(manifest)?, &cfg, size)?;
            print!("{report}");
        }
        Command::GridSearch {
            features,
            grid,
            verbose,
        } => {
            let table = FeatureTable::load(features)?;
            let r = grid_search(&table.samples(), &table.labels(), &grid.grid()?, grid.seed)?;
            if verbose {
                for cell in &r.cells {
                    println!(
                        "C = {:<10} gamma = {:<14} {}/{}",
                        cell.c, cell.gamma, cell.correct, cell.total
                    );
                }
            }
            println!(
                "C = {}, gamma = {}, cv accuracy {:.4}",
                r.c, r.gamma, r.cv_accuracy
            );
        }
        Command::Run {
            manifest,
            config,
            grid,
            train_ratio,
            size,
        } => {
            let opts = ProtocolOptions {
                train_ratio,
                working_size: size,
            };
            let report = run_protocol_with(
                &DatasetManifest::load(manifest)?,
                &config,
                &grid.grid()?,
                grid.seed,
                &opts,
            )?;
            print!("{report}");
        }
        Command::Synth {
            out,
            per_class,
            size,
            seed,
        } => {
            let m = write_synth_corpus(
                &out,
                &SynthOptions {
                    per_class,
                    size,
                    seed,
                },
            )?;
            println!(
                "wrote {} images and manifest.csv to {}",
                m.len(),
                out.display()
            );
        }
        Command::Dims => {
            let mut out = io::stdout().lock();
            let written = ledger().iter().try_for_each(|row| writeln!(out, "{row}")).and_then(|()| {
                writeln!(out, "* reference size differs; computed follows 59 + 48 = 107 for WeberLBP (8,1)")
            });
            match written {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::FAILURE
        }
    }
}
