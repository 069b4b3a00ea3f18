use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use starclean_core::classify::{decomposition_witness, factorization_witness, Classifier};
use starclean_core::report::{ClaimReport, SetsReport, WitnessReport};
use starclean_core::{
    check_claim, default_corpus, parse_spec_document, parse_spec_documents, render_report,
    run_claim_suite, sample_corpus, separation_search, BuildConfig, ClaimParams, CorpusEntry,
    DecompositionMode, ElementId, FactorizationMode, PredicateName, RenderMode, Report,
    RingSpecDocument, SetKind, StarRing, TheoremId, Witness,
};

/// Classify finite rings with involution and check results about them.
#[derive(Parser)]
#[command(name = "starclean", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print canonical machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest ring order any construction may produce.
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<usize>,
    /// Seed for sampled corpora.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide every predicate for a ring.
    Classify { spec: String },
    /// List idempotents, projections, units or central idempotents.
    Sets {
        spec: String,
        #[arg(long)]
        kind: SetKind,
    },
    /// Find an additive decomposition a = e + u.
    Decompose {
        spec: String,
        #[arg(long)]
        element: u32,
        #[arg(long)]
        mode: DecompositionMode,
    },
    /// Find a multiplicative factorization such as a = pu.
    Factor {
        spec: String,
        #[arg(long)]
        element: u32,
        #[arg(long)]
        mode: FactorizationMode,
    },
    /// Check one claim on one ring.
    Verify {
        spec: String,
        #[arg(long)]
        claim: TheoremId,
        /// Matrix size for the matrix claims.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Check every claim over a corpus.
    Suite(CorpusArgs),
    /// Find a ring where `weaker` holds and `stronger` fails.
    Search {
        #[arg(long)]
        stronger: PredicateName,
        #[arg(long)]
        weaker: PredicateName,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// `default`, or a file holding an array of ring documents.
    #[arg(long, default_value = "default")]
    corpus: String,
    /// Use this many randomly generated rings instead (see --seed).
    #[arg(long, value_name = "N", conflicts_with = "corpus")]
    sample: Option<usize>,
}

/// An input error, reported on stderr with exit status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_source(source: &str) -> Result<String, Failure> {
    if source.trim_start().starts_with('{') || source.trim_start().starts_with('[') {
        return Ok(source.to_string());
    }
    if source == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(source).map_err(|e| Failure(format!("cannot read `{source}`: {e}")))
}

struct Loaded {
    doc: RingSpecDocument,
    ring: StarRing,
}

impl Loaded {
    fn open(source: &str, global: &Global) -> Result<Self, Failure> {
        let doc = parse_spec_document(&read_source(source)?)?;
        let ring = doc.build(global.max_order)?;
        Ok(Loaded { doc, ring })
    }

    fn mode(&self, global: &Global) -> RenderMode {
        if global.json {
            RenderMode::Machine
        } else {
            self.doc.settings.format.unwrap_or(RenderMode::Human)
        }
    }

    fn element(&self, id: u32) -> Result<ElementId, Failure> {
        Ok(self.ring.ring().check_element(ElementId(id))?)
    }

    fn witness(&self, a: ElementId, witness: Witness) -> Report {
        let r = self.ring.ring();
        let mut rendered = vec![r.format_element(a)];
        if let Some((e, u)) = witness.parts {
            rendered.push(r.format_element(e));
            rendered.push(r.format_element(u));
        }
        Report::Witness(WitnessReport {
            ring: self.ring.label(),
            element: a,
            witness,
            rendered,
        })
    }
}

fn config(global: &Global) -> BuildConfig {
    global
        .max_order
        .map(BuildConfig::with_max_order)
        .unwrap_or_default()
}

fn load_corpus(args: &CorpusArgs, global: &Global) -> Result<Vec<CorpusEntry>, Failure> {
    let cfg = config(global);
    if let Some(count) = args.sample {
        return Ok(sample_corpus(count, global.seed, &cfg));
    }
    if args.corpus == "default" {
        return Ok(default_corpus(&cfg));
    }
    let docs = parse_spec_documents(&read_source(&args.corpus)?)?;
    Ok(docs
        .into_iter()
        .map(|d| {
            let cfg = d.config(global.max_order);
            CorpusEntry::build(d.spec, "file", &cfg)
        })
        .collect())
}

fn run(cli: &Cli) -> Result<(Report, RenderMode, bool), Failure> {
    let g = &cli.global;
    let plain = if g.json {
        RenderMode::Machine
    } else {
        RenderMode::Human
    };
    Ok(match &cli.command {
        Command::Classify { spec } => {
            let l = Loaded::open(spec, g)?;
            let report = Classifier::new(&l.ring).report();
            (Report::Classification(report), l.mode(g), false)
        }
        Command::Sets { spec, kind } => {
            let l = Loaded::open(spec, g)?;
            let elements = l.ring.sets().get(*kind).to_vec();
            let rendered = elements
                .iter()
                .map(|&x| l.ring.ring().format_element(x))
                .collect();
            let report = Report::Sets(SetsReport {
                ring: l.ring.label(),
                kind: *kind,
                elements,
                rendered,
            });
            (report, l.mode(g), false)
        }
        Command::Decompose {
            spec,
            element,
            mode,
        } => {
            let l = Loaded::open(spec, g)?;
            let a = l.element(*element)?;
            let report = l.witness(a, decomposition_witness(&l.ring, a, *mode));
            (report, l.mode(g), false)
        }
        Command::Factor {
            spec,
            element,
            mode,
        } => {
            let l = Loaded::open(spec, g)?;
            let a = l.element(*element)?;
            let report = l.witness(a, factorization_witness(&l.ring, a, *mode));
            (report, l.mode(g), false)
        }
        Command::Verify { spec, claim, n } => {
            let l = Loaded::open(spec, g)?;
            let params = ClaimParams {
                n: *n,
                cfg: l.doc.config(g.max_order),
            };
            let verdict = check_claim(&l.ring, *claim, &params);
            let violated = verdict.is_violated();
            let report = Report::Claim(ClaimReport {
                ring: l.ring.label(),
                claim: *claim,
                verdict,
            });
            (report, l.mode(g), violated)
        }
        Command::Suite(args) => {
            let corpus = load_corpus(args, g)?;
            let params = ClaimParams {
                n: 2,
                cfg: config(g),
            };
            let report = run_claim_suite(&corpus, &params);
            let violated = report.has_violation();
            (Report::Suite(report), plain, violated)
        }
        Command::Search {
            stronger,
            weaker,
            corpus,
        } => {
            let corpus = load_corpus(corpus, g)?;
            let report = separation_search(&corpus, *stronger, *weaker);
            (Report::Search(report), plain, false)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((report, mode, violated)) => {
            let text = render_report(&report, mode);
            let mut out = io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
