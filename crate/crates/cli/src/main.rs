//! Command-line front end: training, parsing, evaluation, PCA fitting,
//! synthetic data and ablation grids.
//!
//! Exit codes: 0 on success, 1 on I/O or data errors, 2 on usage errors.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use stagparse::classifier::{Hyperparameters, Trainer};
use stagparse::corpus::generate_treebank;
use stagparse::features::{FeatureModel, SdAddresses};
use stagparse::parser::{
    ablation_run, evaluate_sentences, fit_pca, format_results, parse_corpus, train_with_pca,
    AblationGrid, EvalOptions, ParserModel, TrainOptions,
};
use stagparse::pca::{format_variance_report, EigenSolver, PcaModel, PcaSampling};
use stagparse::treebank::{
    attach_supertags, emit_conll, emit_supertag_file, parse_conll, parse_supertag_file,
    synth_supertags, Sentence, SupertagInventory,
};

#[derive(Parser, Debug)]
#[command(
    name = "stagparse",
    version,
    about = "Greedy dependency parser with supertag features"
)]
struct Cli {
    /// Master seed; every random component derives its own stream from it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// TOML file with default settings; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Train a parser model on a CoNLL treebank.
    Train(TrainCmd),
    /// Parse a CoNLL file with a trained model.
    Parse(ParseCmd),
    /// Score a parsed CoNLL file against gold trees.
    Eval(EvalCmd),
    /// Fit a PCA model on supertag distributions.
    PcaFit(PcaFitCmd),
    /// Derive synthetic supertag files from gold trees.
    SynthSupertags(SynthSupertagsCmd),
    /// Write a synthetic treebank.
    SynthTreebank(SynthTreebankCmd),
    /// Train and evaluate a grid of feature models.
    Ablate(AblateCmd),
}

/// Model and trainer settings shared by `train` and `ablate`.
#[derive(Args, Debug, Default)]
struct ModelArgs {
    /// PCA dimension of the SD block.
    #[arg(short, long)]
    k: Option<usize>,
    /// Words whose distributions form the SD block: s0s1 or s0b0.
    #[arg(long)]
    sd_addresses: Option<String>,
    /// Fit PCA without mean-centering.
    #[arg(long)]
    no_center: bool,
    /// Add a constant bias feature.
    #[arg(long)]
    bias: bool,
    /// perceptron or hinge-sgd.
    #[arg(long)]
    trainer: Option<String>,
    #[arg(long)]
    epochs: Option<usize>,
    /// L2 strength for hinge-sgd.
    #[arg(long)]
    regularization: Option<f64>,
    /// Global multiplier on the dense SD block.
    #[arg(long)]
    dense_scale: Option<f64>,
    #[command(flatten)]
    pca: PcaArgs,
}

#[derive(Args, Debug, Default)]
struct PcaArgs {
    /// PCA training vectors: tokens or types.
    #[arg(long)]
    pca_sampling: Option<String>,
    /// Fraction of PCA training vectors to use.
    #[arg(long)]
    pca_fraction: Option<f64>,
    /// dense or power.
    #[arg(long)]
    pca_solver: Option<String>,
}

#[derive(Args, Debug)]
struct TrainCmd {
    /// Training treebank (CoNLL-X).
    #[arg(long)]
    train: PathBuf,
    /// Supertag file aligned with the treebank.
    #[arg(long)]
    supertags: Option<PathBuf>,
    /// Supertag inventory, one tag per line.
    #[arg(long)]
    inventory: Option<PathBuf>,
    /// Precomputed PCA model (JSON) instead of fitting one.
    #[arg(long)]
    pca: Option<PathBuf>,
    /// Feature model, e.g. BL+BS+SD.
    #[arg(long)]
    features: Option<String>,
    /// Output model file.
    #[arg(short, long)]
    model: PathBuf,
    #[command(flatten)]
    model_args: ModelArgs,
}

#[derive(Args, Debug)]
struct ParseCmd {
    #[arg(short, long)]
    model: PathBuf,
    /// Input CoNLL file; HEAD and DEPREL are ignored.
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    supertags: Option<PathBuf>,
    /// Defaults to the inventory stored in the model.
    #[arg(long)]
    inventory: Option<PathBuf>,
    /// Output CoNLL file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalCmd {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    system: PathBuf,
    /// Leave punctuation tokens out of the scores.
    #[arg(long)]
    exclude_punct: bool,
    /// Also write the report to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PcaFitCmd {
    #[arg(long)]
    treebank: PathBuf,
    #[arg(long)]
    supertags: PathBuf,
    #[arg(long)]
    inventory: PathBuf,
    #[arg(short, long)]
    k: Option<usize>,
    #[arg(long)]
    no_center: bool,
    #[command(flatten)]
    pca: PcaArgs,
    /// Output PCA model (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Also write the explained-variance report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SynthSupertagsCmd {
    /// Input treebank; repeat for several files sharing one inventory.
    #[arg(long, required = true)]
    treebank: Vec<PathBuf>,
    /// Output supertag file, one per --treebank, in the same order.
    #[arg(long, required = true)]
    out: Vec<PathBuf>,
    #[arg(long)]
    inventory_out: PathBuf,
    #[arg(long)]
    inventory_size: Option<usize>,
    /// Probability mass moved off the true tag.
    #[arg(long)]
    noise: Option<f64>,
}

#[derive(Args, Debug)]
struct SynthTreebankCmd {
    #[arg(long)]
    count: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct AblateCmd {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    dev: PathBuf,
    #[arg(long)]
    train_supertags: Option<PathBuf>,
    #[arg(long)]
    dev_supertags: Option<PathBuf>,
    #[arg(long)]
    inventory: Option<PathBuf>,
    /// TOML grid with `configs` and `k_values` arrays.
    #[arg(long, conflicts_with = "preset")]
    grid: Option<PathBuf>,
    /// restricted, combined, ksweep or all.
    #[arg(long)]
    preset: Option<String>,
    /// Comma-separated k values for presets.
    #[arg(long, value_delimiter = ',')]
    k_values: Vec<usize>,
    #[arg(long)]
    exclude_punct: bool,
    /// Results table (TSV); standard output if omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    model_args: ModelArgs,
}

/// Settings accepted in the `--config` file.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    seed: Option<u64>,
    features: Option<String>,
    k: Option<usize>,
    sd_addresses: Option<String>,
    center: Option<bool>,
    bias: Option<bool>,
    trainer: Option<String>,
    epochs: Option<usize>,
    regularization: Option<f64>,
    dense_scale: Option<f64>,
    pca_sampling: Option<String>,
    pca_fraction: Option<f64>,
    pca_solver: Option<String>,
    exclude_punct: Option<bool>,
    inventory_size: Option<usize>,
    noise: Option<f64>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct GridFile {
    configs: Vec<String>,
    #[serde(default)]
    k_values: Vec<usize>,
}

const DEFAULT_SEED: u64 = 1;
const DEFAULT_K: usize = 64;
const DEFAULT_INVENTORY_SIZE: usize = 200;
const DEFAULT_NOISE: f64 = 0.2;

enum CliError {
    Usage(String),
    Failure(anyhow::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Failure(e) => write!(f, "{e:#}"),
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Failure(e.into())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(message: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(message.into()))
}

fn read(path: &Path) -> CliResult<String> {
    Ok(fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?)
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> CliResult<()> {
    Ok(fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))?)
}

fn read_treebank(path: &Path) -> CliResult<Vec<Sentence>> {
    Ok(parse_conll(&read(path)?).with_context(|| format!("in {}", path.display()))?)
}

fn read_inventory(path: &Path) -> CliResult<SupertagInventory> {
    Ok(SupertagInventory::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?)
}

fn with_supertags(
    sentences: Vec<Sentence>,
    path: &Path,
    inventory: &SupertagInventory,
) -> CliResult<Vec<Sentence>> {
    let annotations = parse_supertag_file(&read(path)?, inventory)
        .with_context(|| format!("in {}", path.display()))?;
    Ok(attach_supertags(sentences, annotations)
        .with_context(|| format!("aligning {}", path.display()))?)
}

fn parse_trainer(s: &str) -> CliResult<Trainer> {
    s.parse().or_else(|_| {
        usage(format!(
            "unknown trainer '{s}' (expected perceptron or hinge-sgd)"
        ))
    })
}

fn parse_sampling(s: &str) -> CliResult<PcaSampling> {
    match s {
        "tokens" => Ok(PcaSampling::Tokens),
        "types" => Ok(PcaSampling::Types),
        _ => usage(format!(
            "unknown PCA sampling '{s}' (expected tokens or types)"
        )),
    }
}

fn parse_solver(s: &str) -> CliResult<EigenSolver> {
    match s {
        "dense" => Ok(EigenSolver::Dense),
        "power" => Ok(EigenSolver::PowerIteration),
        _ => usage(format!(
            "unknown PCA solver '{s}' (expected dense or power)"
        )),
    }
}

fn parse_features(s: &str) -> CliResult<FeatureModel> {
    FeatureModel::parse(s).or_else(|e| usage(e.to_string()))
}

struct Settings {
    seed: u64,
    file: FileConfig,
}

impl Settings {
    fn k(&self, flag: Option<usize>) -> usize {
        flag.or(self.file.k).unwrap_or(DEFAULT_K)
    }

    fn pca_settings(&self, args: &PcaArgs) -> CliResult<(PcaSampling, f64, EigenSolver)> {
        let sampling = match args
            .pca_sampling
            .as_deref()
            .or(self.file.pca_sampling.as_deref())
        {
            Some(s) => parse_sampling(s)?,
            None => PcaSampling::Tokens,
        };
        let fraction = args.pca_fraction.or(self.file.pca_fraction).unwrap_or(1.0);
        if !(fraction > 0.0 && fraction <= 1.0) {
            return usage(format!("--pca-fraction {fraction} must be in (0, 1]"));
        }
        let solver = match args
            .pca_solver
            .as_deref()
            .or(self.file.pca_solver.as_deref())
        {
            Some(s) => parse_solver(s)?,
            None => EigenSolver::Dense,
        };
        Ok((sampling, fraction, solver))
    }

    fn train_options(&self, features: FeatureModel, args: &ModelArgs) -> CliResult<TrainOptions> {
        let mut features = features;
        if let Some(s) = args
            .sd_addresses
            .as_deref()
            .or(self.file.sd_addresses.as_deref())
        {
            features.sd_addresses = s.parse::<SdAddresses>().or_else(|e| usage(e.to_string()))?;
        }
        features.bias = args.bias || self.file.bias.unwrap_or(false);
        let k = self.k(args.k);
        if features.sd && k == 0 {
            return usage("the SD block needs k >= 1");
        }
        let defaults = Hyperparameters::default();
        let trainer = match args.trainer.as_deref().or(self.file.trainer.as_deref()) {
            Some(s) => parse_trainer(s)?,
            None => defaults.trainer,
        };
        let epochs = args.epochs.or(self.file.epochs).unwrap_or(defaults.epochs);
        if epochs == 0 {
            return usage("--epochs must be at least 1");
        }
        let (pca_sampling, pca_fraction, solver) = self.pca_settings(&args.pca)?;
        Ok(TrainOptions {
            features,
            k,
            center: !args.no_center && self.file.center.unwrap_or(true),
            solver,
            pca_sampling,
            pca_fraction,
            hyper: Hyperparameters {
                trainer,
                epochs,
                regularization: args
                    .regularization
                    .or(self.file.regularization)
                    .unwrap_or(defaults.regularization),
                seed: self.seed,
                dense_scale: args
                    .dense_scale
                    .or(self.file.dense_scale)
                    .unwrap_or(defaults.dense_scale),
            },
            seed: self.seed,
        })
    }
}

fn cmd_train(ctx: &Settings, cmd: &TrainCmd) -> CliResult<()> {
    let spec = cmd
        .features
        .as_deref()
        .or(ctx.file.features.as_deref())
        .unwrap_or("BL");
    let options = ctx.train_options(parse_features(spec)?, &cmd.model_args)?;
    if options.features.uses_supertags() && cmd.supertags.is_none() {
        return usage(format!(
            "feature model {} needs --supertags",
            options.features.name()
        ));
    }
    if cmd.supertags.is_some() && cmd.inventory.is_none() {
        return usage("--supertags needs --inventory");
    }
    if cmd.pca.is_some() && !options.features.sd {
        return usage("--pca only applies to feature models with SD");
    }

    let inventory = cmd.inventory.as_deref().map(read_inventory).transpose()?;
    let mut sentences = read_treebank(&cmd.train)?;
    if let (Some(path), Some(inv)) = (&cmd.supertags, &inventory) {
        sentences = with_supertags(sentences, path, inv)?;
    }
    let pca = match &cmd.pca {
        Some(path) => Some(
            PcaModel::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?,
        ),
        None => None,
    };
    let (model, summary) = train_with_pca(&sentences, inventory.as_ref(), &options, pca.as_ref())?;

    println!("features\t{}", options.features.name());
    println!("sentences\t{}", summary.sentences);
    println!("filtered non-projective\t{}", summary.filtered.len());
    println!("instances\t{}", summary.instances);
    println!("feature values\t{}", summary.features);
    println!("actions\t{}", summary.actions);
    if let Some(c) = summary.captured_variance {
        println!("captured variance\t{c:.6}");
    }
    for (i, acc) in summary.report.epoch_accuracy.iter().enumerate() {
        println!("epoch {}\t{acc:.6}", i + 1);
    }
    println!(
        "final training accuracy\t{:.6}",
        summary.report.final_accuracy
    );
    write(&cmd.model, model.to_bytes()?)
}

fn cmd_parse(cmd: &ParseCmd) -> CliResult<()> {
    let model = ParserModel::load(&cmd.model)
        .with_context(|| format!("loading {}", cmd.model.display()))?;
    let mut sentences = read_treebank(&cmd.input)?;
    let uses = model.features().uses_supertags();
    match &cmd.supertags {
        Some(path) => {
            let inventory = match &cmd.inventory {
                Some(p) => read_inventory(p)?,
                None => match model.inventory() {
                    Some(inv) => inv.clone(),
                    None => return usage("--supertags needs --inventory (the model stores none)"),
                },
            };
            if let Some(stored) = model.inventory() {
                if stored != &inventory {
                    log::warn!(
                        "the supertag inventory differs from the one the model was trained with"
                    );
                }
            }
            if !uses {
                log::warn!(
                    "feature model {} does not use supertags; ignoring {}",
                    model.features().name(),
                    path.display()
                );
            }
            sentences = with_supertags(sentences, path, &inventory)?;
        }
        None if uses => log::warn!(
            "feature model {} uses supertags but no --supertags file was given; \
             supertag features will be NULL and the SD block zero",
            model.features().name()
        ),
        None => {}
    }
    let predicted = parse_corpus(&model, &sentences)?;
    for (s, arcs) in sentences.iter_mut().zip(&predicted) {
        s.set_predicted(arcs)?;
    }
    let text = emit_conll(&sentences, true)?;
    match &cmd.output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_eval(ctx: &Settings, cmd: &EvalCmd) -> CliResult<()> {
    let gold = read_treebank(&cmd.gold)?;
    let system = read_treebank(&cmd.system)?;
    let options = EvalOptions {
        exclude_punct: cmd.exclude_punct || ctx.file.exclude_punct.unwrap_or(false),
        ..EvalOptions::default()
    };
    let report = evaluate_sentences(&gold, &system, &options)?;
    let text = format!("{report}\n");
    print!("{text}");
    if let Some(path) = &cmd.output {
        write(path, text)?;
    }
    Ok(())
}

fn cmd_pca_fit(ctx: &Settings, cmd: &PcaFitCmd) -> CliResult<()> {
    let k = ctx.k(cmd.k);
    if k == 0 {
        return usage("k must be at least 1");
    }
    let (pca_sampling, pca_fraction, solver) = ctx.pca_settings(&cmd.pca)?;
    let inventory = read_inventory(&cmd.inventory)?;
    let sentences = with_supertags(read_treebank(&cmd.treebank)?, &cmd.supertags, &inventory)?;
    let options = TrainOptions {
        k,
        center: !cmd.no_center && ctx.file.center.unwrap_or(true),
        solver,
        pca_sampling,
        pca_fraction,
        seed: ctx.seed,
        ..TrainOptions::new(FeatureModel::parse("SD").expect("valid model"))
    };
    let model = fit_pca(&sentences, Some(&inventory), &options, k)?;
    let report = format_variance_report(&model);
    print!("{report}");
    if let Some(path) = &cmd.report {
        write(path, &report)?;
    }
    write(&cmd.out, model.to_json()?)
}

fn cmd_synth_supertags(ctx: &Settings, cmd: &SynthSupertagsCmd) -> CliResult<()> {
    if cmd.treebank.len() != cmd.out.len() {
        return usage(format!(
            "{} --treebank files but {} --out files",
            cmd.treebank.len(),
            cmd.out.len()
        ));
    }
    let size = cmd
        .inventory_size
        .or(ctx.file.inventory_size)
        .unwrap_or(DEFAULT_INVENTORY_SIZE);
    let noise = cmd.noise.or(ctx.file.noise).unwrap_or(DEFAULT_NOISE);
    if !(0.0..=1.0).contains(&noise) {
        return usage(format!("--noise {noise} must be in [0, 1]"));
    }
    let mut all = Vec::new();
    let mut counts = Vec::new();
    for path in &cmd.treebank {
        let sentences = read_treebank(path)?;
        counts.push(sentences.len());
        all.extend(sentences);
    }
    let synth = synth_supertags(&all, size, noise, ctx.seed)?;
    let mut annotations = synth.annotations.into_iter();
    for (path, count) in cmd.out.iter().zip(counts) {
        let part: Vec<_> = annotations.by_ref().take(count).collect();
        write(path, emit_supertag_file(&part, &synth.inventory))?;
    }
    write(&cmd.inventory_out, synth.inventory.emit())
}

fn cmd_synth_treebank(ctx: &Settings, cmd: &SynthTreebankCmd) -> CliResult<()> {
    write(
        &cmd.out,
        emit_conll(&generate_treebank(cmd.count, ctx.seed), false)?,
    )
}

fn load_grid(ctx: &Settings, cmd: &AblateCmd) -> CliResult<AblationGrid> {
    let k_values = if cmd.k_values.is_empty() {
        vec![ctx.k(cmd.model_args.k)]
    } else {
        cmd.k_values.clone()
    };
    let (configs, k_values): (Vec<String>, Vec<usize>) = match (&cmd.grid, cmd.preset.as_deref()) {
        (Some(path), _) => {
            let grid: GridFile = toml::from_str(&read(path)?).map_err(|e| {
                CliError::Usage(format!("invalid grid file {}: {e}", path.display()))
            })?;
            let ks = if grid.k_values.is_empty() {
                k_values
            } else {
                grid.k_values
            };
            (grid.configs, ks)
        }
        (None, Some(preset)) => {
            let names: &[&str] =
                match preset {
                    "restricted" => &["FORM", "POS", "SUPERTAG", "SD"],
                    "combined" => &["BL", "BL+BS", "BL+SD", "BL+BS+SD"],
                    "ksweep" => &["SD"],
                    "all" => &[
                        "FORM", "POS", "SUPERTAG", "SD", "BL", "BL+BS", "BL+SD", "BL+BS+SD",
                    ],
                    _ => return usage(format!(
                        "unknown preset '{preset}' (expected restricted, combined, ksweep or all)"
                    )),
                };
            (names.iter().map(|s| s.to_string()).collect(), k_values)
        }
        (None, None) => return usage("ablate needs --grid or --preset"),
    };
    if configs.is_empty() {
        return usage("the grid has no configurations");
    }
    let models = configs
        .iter()
        .map(|c| parse_features(c))
        .collect::<CliResult<Vec<_>>>()?;
    if models.iter().any(|m| m.sd) && k_values.contains(&0) {
        return usage("the SD block needs k >= 1");
    }
    Ok(AblationGrid {
        configs: models,
        k_values,
    })
}

fn cmd_ablate(ctx: &Settings, cmd: &AblateCmd) -> CliResult<()> {
    let mut grid = load_grid(ctx, cmd)?;
    let base = ctx.train_options(
        FeatureModel::parse("BL").expect("valid model"),
        &cmd.model_args,
    )?;
    for model in &mut grid.configs {
        model.sd_addresses = base.features.sd_addresses;
        model.bias = base.features.bias;
    }
    let needs_supertags = grid.configs.iter().any(FeatureModel::uses_supertags);
    if needs_supertags && (cmd.train_supertags.is_none() || cmd.dev_supertags.is_none()) {
        return usage("the grid uses supertags: pass --train-supertags and --dev-supertags");
    }
    if (cmd.train_supertags.is_some() || cmd.dev_supertags.is_some()) && cmd.inventory.is_none() {
        return usage("supertag files need --inventory");
    }
    let inventory = cmd.inventory.as_deref().map(read_inventory).transpose()?;
    let mut train = read_treebank(&cmd.train)?;
    let mut dev = read_treebank(&cmd.dev)?;
    if let Some(inv) = &inventory {
        if let Some(path) = &cmd.train_supertags {
            train = with_supertags(train, path, inv)?;
        }
        if let Some(path) = &cmd.dev_supertags {
            dev = with_supertags(dev, path, inv)?;
        }
    }
    let eval = EvalOptions {
        exclude_punct: cmd.exclude_punct || ctx.file.exclude_punct.unwrap_or(false),
        ..EvalOptions::default()
    };
    let rows = ablation_run(&train, &dev, inventory.as_ref(), &grid, &base, &eval)?;
    let table = format_results(&rows);
    match &cmd.out {
        Some(path) => write(path, table),
        None => {
            print!("{table}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let file = match &cli.config {
        Some(path) => toml::from_str(&read(path)?)
            .map_err(|e| CliError::Usage(format!("invalid config file {}: {e}", path.display())))?,
        None => FileConfig::default(),
    };
    let ctx = Settings {
        seed: cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        file,
    };
    match &cli.command {
        Command::Train(cmd) => cmd_train(&ctx, cmd),
        Command::Parse(cmd) => cmd_parse(cmd),
        Command::Eval(cmd) => cmd_eval(&ctx, cmd),
        Command::PcaFit(cmd) => cmd_pca_fit(&ctx, cmd),
        Command::SynthSupertags(cmd) => cmd_synth_supertags(&ctx, cmd),
        Command::SynthTreebank(cmd) => cmd_synth_treebank(&ctx, cmd),
        Command::Ablate(cmd) => cmd_ablate(&ctx, cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("error: {e}");
            eprintln!("run with --help for usage");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
