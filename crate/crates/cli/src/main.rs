use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use emoscope::commands;
use emoscope::config::{ConfigFile, Settings};
use emoscope::error::CliResult;
use emoscope::runs::RunDir;

/// Collects `(key, value)` overrides for [`Settings::resolve`]; only flags
/// the user actually passed are included.
type Flags = Vec<(&'static str, Option<String>)>;

type Runner = fn(&Settings, &RunDir) -> CliResult<()>;

#[derive(Parser)]
#[command(
    name = "emoscope",
    version,
    about = "Modifier-aware emotion classification toolkit",
    after_help = "Settings can also come from a config file (--config) with a [global] \
section and one section per subcommand; command-line flags win. Set EMOSCOPE_LOG=info \
(or debug) for diagnostics. Outputs land under <out-root>/<command>-<confighash>/."
)]
struct Cli {
    /// Config file with [global] and per-command sections.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Root directory for run outputs [default: runs].
    #[arg(long, global = true, value_name = "DIR")]
    out_root: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus path: .conllu for parsed input, anything else is raw JSONL.
    #[arg(long, value_name = "FILE")]
    corpus: Option<String>,

    /// Hashtag-to-emotion TSV for self-labeling raw corpora.
    #[arg(long, value_name = "FILE")]
    hashtag_map: Option<String>,
}

impl CorpusArgs {
    fn flags(self, flags: &mut Flags) {
        flags.push(("corpus", self.corpus));
        flags.push(("hashtag_map", self.hashtag_map));
    }
}

#[derive(Args)]
struct LexiconArgs {
    /// Negation term list [default: shipped list of 39].
    #[arg(long, value_name = "FILE")]
    negations: Option<String>,

    /// Amplifier term list [default: shipped list of 69].
    #[arg(long, value_name = "FILE")]
    amplifiers: Option<String>,

    /// Downtoner term list [default: shipped list of 36].
    #[arg(long, value_name = "FILE")]
    downtoners: Option<String>,

    /// Emotion association TSV [default: shipped sample].
    #[arg(long, value_name = "FILE")]
    emotion_lexicon: Option<String>,
}

impl LexiconArgs {
    fn flags(self, flags: &mut Flags) {
        flags.push(("negations", self.negations));
        flags.push(("amplifiers", self.amplifiers));
        flags.push(("downtoners", self.downtoners));
        flags.push(("emotion_lexicon", self.emotion_lexicon));
    }
}

#[derive(Args)]
struct MethodArgs {
    /// Scope method: next_n, dep_tree or classifier [default: next_n].
    #[arg(long, value_name = "NAME")]
    method: Option<String>,

    /// Window size for next_n [default: 2].
    #[arg(long, value_name = "N")]
    n: Option<String>,

    /// Directory holding trained scope classifiers (method=classifier).
    #[arg(long, value_name = "DIR")]
    scope_models: Option<String>,
}

impl MethodArgs {
    fn flags(self, flags: &mut Flags) {
        flags.push(("method", self.method));
        flags.push(("n", self.n));
        flags.push(("scope_models", self.scope_models));
    }
}

#[derive(Args)]
struct SubsetArgs {
    /// Split manifest restricting the corpus to one subset.
    #[arg(long, value_name = "FILE")]
    manifest: Option<String>,

    /// Manifest subset: train, test or balanced.
    #[arg(long, value_name = "NAME")]
    subset: Option<String>,
}

impl SubsetArgs {
    fn flags(self, flags: &mut Flags) {
        flags.push(("manifest", self.manifest));
        flags.push(("subset", self.subset));
    }
}

#[derive(Args)]
struct SgdArgs {
    /// Regularization strength [default: 0.0001].
    #[arg(long, value_name = "X")]
    lambda: Option<String>,

    /// Training epochs [default: 20].
    #[arg(long, value_name = "N")]
    epochs: Option<String>,

    /// Shuffle seed [default: 42].
    #[arg(long, value_name = "N")]
    seed: Option<String>,
}

impl SgdArgs {
    fn flags(self, flags: &mut Flags) {
        flags.push(("lambda", self.lambda));
        flags.push(("epochs", self.epochs));
        flags.push(("seed", self.seed));
    }
}

#[derive(Subcommand)]
enum Command {
    /// Filter cue candidates by annotated modifier usage ratio.
    FilterCues {
        /// Negation candidate term list.
        #[arg(long, value_name = "FILE")]
        candidates_negations: Option<String>,

        /// Amplifier candidate term list.
        #[arg(long, value_name = "FILE")]
        candidates_amplifiers: Option<String>,

        /// Downtoner candidate term list.
        #[arg(long, value_name = "FILE")]
        candidates_downtoners: Option<String>,

        /// Terms accepted without a ratio test, one per line.
        #[arg(long, value_name = "FILE")]
        trusted: Option<String>,

        /// Usage sample TSV: term, doc id, 0|1.
        #[arg(long, value_name = "FILE")]
        samples: Option<String>,

        /// Acceptance threshold, ratio must be strictly above [default: 0.5].
        #[arg(long, value_name = "X")]
        threshold: Option<String>,
    },

    /// Detect modifier scopes over a corpus, or sweep next-n window sizes.
    DetectScope {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        lexicons: LexiconArgs,
        #[command(flatten)]
        method: MethodArgs,

        /// Sweep next-n windows over an inclusive range, e.g. 1..12.
        #[arg(long, value_name = "A..B")]
        sweep_n: Option<String>,

        /// Gold scope pairs TSV (required when sweeping).
        #[arg(long, value_name = "FILE")]
        gold: Option<String>,
    },

    /// Evaluate scope decisions against gold pairs.
    EvalScope {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        lexicons: LexiconArgs,

        /// Gold scope pairs TSV.
        #[arg(long, value_name = "FILE")]
        gold: Option<String>,

        /// Comma-separated methods to compare, e.g. next_n,dep_tree [default: next_n].
        #[arg(long, value_name = "LIST")]
        methods: Option<String>,

        /// Window size for next_n entries in --methods [default: 2].
        #[arg(long, value_name = "N")]
        n: Option<String>,

        /// Directory holding trained scope classifiers.
        #[arg(long, value_name = "DIR")]
        scope_models: Option<String>,

        /// Evaluate precomputed scope labels instead of running methods.
        #[arg(long, value_name = "FILE")]
        scopes: Option<String>,
    },

    /// Train the per-kind scope classifiers from gold pairs.
    TrainScopeClf {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        lexicons: LexiconArgs,
        #[command(flatten)]
        sgd: SgdArgs,

        /// Gold scope pairs TSV.
        #[arg(long, value_name = "FILE")]
        gold: Option<String>,
    },

    /// Train the bag-of-words emotion model, plain and scope-aware.
    TrainBow {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        lexicons: LexiconArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        subset: SubsetArgs,
        #[command(flatten)]
        sgd: SgdArgs,
    },

    /// Evaluate a trained model pair and report the scope effect.
    EvalBow {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        lexicons: LexiconArgs,
        #[command(flatten)]
        subset: SubsetArgs,

        /// Plain model JSON from train-bow.
        #[arg(long, value_name = "FILE")]
        model_plain: Option<String>,

        /// Scope-aware model JSON from train-bow.
        #[arg(long, value_name = "FILE")]
        model_scoped: Option<String>,

        /// Directory holding trained scope classifiers.
        #[arg(long, value_name = "DIR")]
        scope_models: Option<String>,
    },

    /// Train the weighted-lexicon emotion model by hill climbing.
    TrainLexmodel {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        lexicons: LexiconArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        subset: SubsetArgs,

        /// Random restarts per slice [default: 8].
        #[arg(long, value_name = "N")]
        restarts: Option<String>,

        /// Consecutive rejections before a restart stops [default: 500].
        #[arg(long, value_name = "N")]
        patience: Option<String>,

        /// Hard epoch cap per restart [default: 5000].
        #[arg(long, value_name = "N")]
        epoch_cap: Option<String>,

        /// Perturbation seed [default: 42].
        #[arg(long, value_name = "N")]
        seed: Option<String>,
    },

    /// Render a trained weight tensor: heatmap table and statistics.
    Inspect {
        /// Tensor JSON from train-lexmodel.
        #[arg(long, value_name = "FILE")]
        tensor: Option<String>,
    },

    /// Split a labeled corpus into train/test plus a balanced subset.
    Split {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        lexicons: LexiconArgs,

        /// Shuffle seed [default: 42].
        #[arg(long, value_name = "N")]
        seed: Option<String>,

        /// Train fraction in (0,1) [default: 0.8].
        #[arg(long, value_name = "X")]
        train_ratio: Option<String>,

        /// Test fraction in (0,1) [default: 0.2].
        #[arg(long, value_name = "X")]
        test_ratio: Option<String>,

        /// Qualifying documents per class in the balanced subset [default: 0].
        #[arg(long, value_name = "N")]
        balanced_per_class: Option<String>,
    },
}

impl Command {
    /// Section name, flag overrides, and the implementation to run.
    fn dispatch(self) -> (&'static str, Flags, Runner) {
        let mut flags: Flags = Vec::new();
        match self {
            Command::FilterCues {
                candidates_negations,
                candidates_amplifiers,
                candidates_downtoners,
                trusted,
                samples,
                threshold,
            } => {
                flags.push(("candidates_negations", candidates_negations));
                flags.push(("candidates_amplifiers", candidates_amplifiers));
                flags.push(("candidates_downtoners", candidates_downtoners));
                flags.push(("trusted", trusted));
                flags.push(("samples", samples));
                flags.push(("threshold", threshold));
                ("filter-cues", flags, commands::filter_cues::run)
            }
            Command::DetectScope { corpus, lexicons, method, sweep_n, gold } => {
                corpus.flags(&mut flags);
                lexicons.flags(&mut flags);
                method.flags(&mut flags);
                flags.push(("sweep_n", sweep_n));
                flags.push(("gold", gold));
                ("detect-scope", flags, commands::detect_scope::run)
            }
            Command::EvalScope { corpus, lexicons, gold, methods, n, scope_models, scopes } => {
                corpus.flags(&mut flags);
                lexicons.flags(&mut flags);
                flags.push(("gold", gold));
                flags.push(("methods", methods));
                flags.push(("n", n));
                flags.push(("scope_models", scope_models));
                flags.push(("scopes", scopes));
                ("eval-scope", flags, commands::eval_scope::run)
            }
            Command::TrainScopeClf { corpus, lexicons, sgd, gold } => {
                corpus.flags(&mut flags);
                lexicons.flags(&mut flags);
                sgd.flags(&mut flags);
                flags.push(("gold", gold));
                ("train-scope-clf", flags, commands::train_scope_clf::run)
            }
            Command::TrainBow { corpus, lexicons, method, subset, sgd } => {
                corpus.flags(&mut flags);
                lexicons.flags(&mut flags);
                method.flags(&mut flags);
                subset.flags(&mut flags);
                sgd.flags(&mut flags);
                ("train-bow", flags, commands::train_bow::run)
            }
            Command::EvalBow { corpus, lexicons, subset, model_plain, model_scoped, scope_models } => {
                corpus.flags(&mut flags);
                lexicons.flags(&mut flags);
                subset.flags(&mut flags);
                flags.push(("model_plain", model_plain));
                flags.push(("model_scoped", model_scoped));
                flags.push(("scope_models", scope_models));
                ("eval-bow", flags, commands::eval_bow::run)
            }
            Command::TrainLexmodel {
                corpus,
                lexicons,
                method,
                subset,
                restarts,
                patience,
                epoch_cap,
                seed,
            } => {
                corpus.flags(&mut flags);
                lexicons.flags(&mut flags);
                method.flags(&mut flags);
                subset.flags(&mut flags);
                flags.push(("restarts", restarts));
                flags.push(("patience", patience));
                flags.push(("epoch_cap", epoch_cap));
                flags.push(("seed", seed));
                ("train-lexmodel", flags, commands::train_lexmodel::run)
            }
            Command::Inspect { tensor } => {
                flags.push(("tensor", tensor));
                ("inspect", flags, commands::inspect::run)
            }
            Command::Split {
                corpus,
                lexicons,
                seed,
                train_ratio,
                test_ratio,
                balanced_per_class,
            } => {
                corpus.flags(&mut flags);
                lexicons.flags(&mut flags);
                flags.push(("seed", seed));
                flags.push(("train_ratio", train_ratio));
                flags.push(("test_ratio", test_ratio));
                flags.push(("balanced_per_class", balanced_per_class));
                ("split", flags, commands::split::run)
            }
        }
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    let config_path = cli.config;
    let file = config_path.as_deref().map(ConfigFile::load).transpose()?;
    let (name, mut flags, runner) = cli.command.dispatch();
    flags.push(("out_root", cli.out_root));
    let settings = Settings::resolve(file.as_ref(), config_path.as_deref(), name, flags);
    let out_root = settings.path("out_root").unwrap_or_else(|| PathBuf::from("runs"));
    let run = RunDir::create(&out_root, name, &settings)?;
    println!("run directory: {}", run.path.display());
    runner(&settings, &run)
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("EMOSCOPE_LOG", "warn"))
        .init();
    let cli = Cli::parse();
    if let Err(err) = execute(cli) {
        eprintln!("{err}");
        std::process::exit(err.exit_code());
    }
}
