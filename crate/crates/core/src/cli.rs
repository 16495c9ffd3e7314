//! The `corefkit` command line.
//!
//! Reports go to standard output (TSV unless `--format records`),
//! diagnostics to standard error. Exit status is 0 on success, 1 on bad
//! data and 2 on bad usage.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::decoder::parse_score_records;
use crate::error::Error;
use crate::formats::{self, canonical, conll};
use crate::metrics::{score_corpus, ScoreMode, Singletons, SplitMode};
use crate::model::{validate_document, Document, Violation};
use crate::stats::{corpus_stats, split_antecedent_percent, SplitTable};
use crate::transfer::{
    aggregate_projection_stats, check_translation_sanity, project_document, ProjectionOptions,
    ProjectionSummary, SanityConfig,
};

#[derive(Debug, Parser)]
#[command(
    name = "corefkit",
    version,
    about = "Coreference scoring, projection, decoding and corpus statistics"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check documents against the structural invariants.
    Validate(ValidateArgs),
    /// Convert between CoNLL and canonical JSON lines.
    Convert(ConvertArgs),
    /// Project mentions onto a translation through word alignments.
    Project(ProjectArgs),
    /// Flag translations that are mostly repeated punctuation.
    Sanity(SanityArgs),
    /// Score a response corpus against a key corpus.
    Score(ScoreArgs),
    /// Decode mention-ranking score files into entities.
    Decode(DecodeArgs),
    /// Corpus statistics.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DocFormat {
    Conll,
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Tsv,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SingletonsArg {
    Include,
    Exclude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitArg {
    Plain,
    Expanded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupBy {
    Language,
    None,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Document file format.
    #[arg(long = "input-format", value_enum, default_value = "canonical")]
    pub input_format: DocFormat,
    /// Language code given to CoNLL documents, which carry none.
    #[arg(long, default_value = "und")]
    pub language: String,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub docs: InputArgs,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub from: DocFormat,
    #[arg(long, value_enum)]
    pub to: DocFormat,
    /// Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value = "und")]
    pub language: String,
}

#[derive(Debug, Args)]
pub struct SanityThresholds {
    /// Share of non-space characters a punctuation run must cover to fail.
    #[arg(long = "repeat-fraction", default_value_t = 0.9)]
    pub repeat_fraction: f64,
    /// Minimum punctuation run length to fail.
    #[arg(long = "min-run", default_value_t = 5)]
    pub min_run: usize,
}

impl SanityThresholds {
    fn config(&self) -> SanityConfig {
        SanityConfig {
            repeat_fraction: self.repeat_fraction,
            min_run: self.min_run,
        }
    }
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// Source documents.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub docs: InputArgs,
    /// One Pharaoh line per source sentence, in corpus order.
    #[arg(long)]
    pub alignments: PathBuf,
    /// One tokenized target sentence per line, in corpus order.
    #[arg(long = "target-sents")]
    pub target_sents: PathBuf,
    #[arg(long = "target-language")]
    pub target_language: Option<String>,
    /// Where to write the projected canonical documents.
    #[arg(long)]
    pub output: PathBuf,
    /// Treat target sentences failing the sanity check as holes.
    #[arg(long)]
    pub sanity: bool,
    #[command(flatten)]
    pub thresholds: SanityThresholds,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SanityArgs {
    /// One translation per line.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub thresholds: SanityThresholds,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long)]
    pub response: PathBuf,
    #[command(flatten)]
    pub docs: InputArgs,
    #[arg(long, value_enum, default_value = "include")]
    pub singletons: SingletonsArg,
    /// `expanded` folds split antecedents into their antecedents first.
    #[arg(long, value_enum, default_value = "plain")]
    pub split: SplitArg,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: ReportFormat,
    /// Worker threads.
    #[arg(short = 'j', long = "jobs", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Score records, one JSON object per line.
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Document file; repeatable. `SPLIT=PATH` labels a split and switches
    /// to a per-language table with one tuple entry per split.
    #[arg(long, required = true)]
    pub input: Vec<String>,
    #[command(flatten)]
    pub docs: InputArgs,
    #[arg(long, value_enum, default_value = "language")]
    pub by: GroupBy,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: ReportFormat,
    /// Worker threads.
    #[arg(short = 'j', long = "jobs", default_value_t = 1)]
    pub jobs: usize,
}

/// A failure tied to a file, reported as exit status 1.
#[derive(Debug)]
struct DataError(String);

impl DataError {
    fn at(path: &Path, err: impl std::fmt::Display) -> Self {
        DataError(format!("{}: {err}", path.display()))
    }
}

impl From<std::io::Error> for DataError {
    fn from(e: std::io::Error) -> Self {
        DataError(e.to_string())
    }
}

type CmdResult = Result<(), DataError>;

fn open(path: &Path) -> Result<BufReader<File>, DataError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| DataError::at(path, e))
}

fn read_docs(path: &Path, format: DocFormat, language: &str) -> Result<Vec<Document>, DataError> {
    let reader = open(path)?;
    match format {
        DocFormat::Conll => formats::parse_conll(reader, language),
        DocFormat::Canonical => formats::parse_canonical(reader),
    }
    .map_err(|e| DataError::at(path, e))
}

fn check_valid(path: &Path, docs: &[Document]) -> CmdResult {
    let problems: Vec<String> = docs
        .iter()
        .flat_map(|d| {
            validate_document(d)
                .into_iter()
                .map(move |v| format!("{}: {v}", d.doc_key))
        })
        .collect();
    if problems.is_empty() {
        Ok(())
    } else {
        Err(DataError::at(
            path,
            format!("invalid documents:\n  {}", problems.join("\n  ")),
        ))
    }
}

fn write_output(output: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> CmdResult {
    match output {
        Some(path) => std::fs::write(path, bytes).map_err(|e| DataError::at(path, e)),
        None => Ok(stdout.write_all(bytes)?),
    }
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, DataError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| DataError(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(f))
}

fn validate(args: &ValidateArgs, out: &mut dyn Write) -> CmdResult {
    let docs = read_docs(&args.input, args.docs.input_format, &args.docs.language)?;
    let mut bad = 0;
    for doc in &docs {
        let violations = validate_document(doc);
        let shown: Vec<&Violation> = violations.iter().collect();
        for v in &shown {
            writeln!(out, "{}\t{v}", doc.doc_key)?;
        }
        bad += shown.len();
    }
    if bad > 0 {
        return Err(DataError::at(&args.input, format!("{bad} violation(s)")));
    }
    writeln!(out, "ok\t{} document(s)", docs.len())?;
    Ok(())
}

fn convert(args: &ConvertArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let docs = read_docs(&args.input, args.from, &args.language)?;
    let bytes = match args.to {
        DocFormat::Canonical => canonical::write_canonical_string(&docs).into_bytes(),
        DocFormat::Conll => {
            let (text, dropped) =
                conll::write_conll_string(&docs).map_err(|e| DataError::at(&args.input, e))?;
            for d in dropped {
                writeln!(err, "warning: {d}")?;
            }
            text.into_bytes()
        }
    };
    write_output(args.output.as_deref(), &bytes, out)
}

fn project(args: &ProjectArgs, out: &mut dyn Write) -> CmdResult {
    let docs = read_docs(&args.input, args.docs.input_format, &args.docs.language)?;
    check_valid(&args.input, &docs)?;
    let alignments = formats::parse_alignments(open(&args.alignments)?)
        .map_err(|e| DataError::at(&args.alignments, e))?;
    let targets = formats::parse_token_lines(open(&args.target_sents)?)
        .map_err(|e| DataError::at(&args.target_sents, e))?;

    let needed: usize = docs.iter().map(|d| d.sentences.len()).sum();
    for (path, have) in [
        (&args.alignments, alignments.len()),
        (&args.target_sents, targets.len()),
    ] {
        if have != needed {
            return Err(DataError::at(
                path,
                format!("{have} lines but the source corpus has {needed} sentences"),
            ));
        }
    }

    let options = ProjectionOptions {
        target_language: args.target_language.clone(),
        sanity: args.sanity.then(|| args.thresholds.config()),
    };
    let mut offset = 0;
    let mut projected = Vec::with_capacity(docs.len());
    let mut summaries: Vec<(String, ProjectionSummary)> = Vec::with_capacity(docs.len());
    for doc in &docs {
        let n = doc.sentences.len();
        let (target, summary) = project_document(
            doc,
            &alignments[offset..offset + n],
            &targets[offset..offset + n],
            &options,
        )
        .map_err(|e| DataError::at(&args.input, e))?;
        offset += n;
        summaries.push((target.language.clone(), summary));
        projected.push(target);
    }

    std::fs::write(&args.output, canonical::write_canonical_string(&projected))
        .map_err(|e| DataError::at(&args.output, e))?;

    let table = aggregate_projection_stats(summaries.iter().map(|(g, s)| (g.as_str(), *s)));
    match args.format {
        ReportFormat::Tsv => out.write_all(table.to_tsv().as_bytes())?,
        ReportFormat::Records => {
            for row in table.rows.iter().chain(table.total.iter()) {
                let record = serde_json::json!({
                    "group": row.group,
                    "aligned": row.aligned_pct(),
                    "misaligned": row.misaligned_pct(),
                    "non_aligned": row.non_aligned_pct(),
                    "counts": row.summary,
                });
                writeln!(out, "{record}")?;
            }
        }
    }
    Ok(())
}

fn sanity(args: &SanityArgs, out: &mut dyn Write) -> CmdResult {
    use std::io::BufRead;
    let config = args.thresholds.config();
    if !(0.0..=1.0).contains(&config.repeat_fraction) {
        return Err(DataError(format!(
            "--repeat-fraction must be within [0, 1], got {}",
            config.repeat_fraction
        )));
    }
    let (mut passed, mut failed) = (0u64, 0u64);
    if args.format == ReportFormat::Tsv {
        writeln!(out, "line\tverdict\treason")?;
    }
    for (idx, line) in open(&args.input)?.lines().enumerate() {
        let line = line.map_err(|e| DataError::at(&args.input, e))?;
        let verdict = check_translation_sanity(&line, &config);
        if verdict.passed {
            passed += 1;
        } else {
            failed += 1;
        }
        let label = if verdict.passed { "pass" } else { "fail" };
        match args.format {
            ReportFormat::Tsv => writeln!(
                out,
                "{}\t{label}\t{}",
                idx + 1,
                verdict.reason.as_deref().unwrap_or("")
            )?,
            ReportFormat::Records => writeln!(
                out,
                "{}",
                serde_json::json!({ "line": idx + 1, "passed": verdict.passed, "reason": verdict.reason })
            )?,
        }
    }
    if args.format == ReportFormat::Tsv {
        writeln!(out, "# passed={passed} failed={failed}")?;
    }
    Ok(())
}

fn score(args: &ScoreArgs, out: &mut dyn Write) -> CmdResult {
    let keys = read_docs(&args.key, args.docs.input_format, &args.docs.language)?;
    let responses = read_docs(&args.response, args.docs.input_format, &args.docs.language)?;
    check_valid(&args.key, &keys)?;
    check_valid(&args.response, &responses)?;
    let mode = ScoreMode {
        singletons: match args.singletons {
            SingletonsArg::Include => Singletons::Include,
            SingletonsArg::Exclude => Singletons::Exclude,
        },
        split: match args.split {
            SplitArg::Plain => SplitMode::Plain,
            SplitArg::Expanded => SplitMode::Expanded,
        },
    };
    let report =
        with_jobs(args.jobs, || score_corpus(&keys, &responses, mode))?.map_err(|e| match e {
            Error::DocKeyMismatch(_) => DataError::at(&args.response, e),
            other => DataError::at(&args.key, other),
        })?;
    let text = match args.format {
        ReportFormat::Tsv => report.to_tsv(),
        ReportFormat::Records => report.to_record(),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn decode(args: &DecodeArgs, out: &mut dyn Write) -> CmdResult {
    let records =
        parse_score_records(open(&args.input)?).map_err(|e| DataError::at(&args.input, e))?;
    let docs = records
        .iter()
        .map(|r| {
            r.decode_document()
                .map_err(|e| DataError::at(&args.input, format!("{}: {e}", r.doc_key)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    write_output(
        args.output.as_deref(),
        canonical::write_canonical_string(&docs).as_bytes(),
        out,
    )
}

fn stats(args: &StatsArgs, out: &mut dyn Write) -> CmdResult {
    let mut corpora: Vec<(Option<String>, Vec<Document>)> = Vec::new();
    for input in &args.input {
        let (label, path) = match split_label(input) {
            Some((label, path)) => (Some(label.to_string()), path),
            None => (None, input.as_str()),
        };
        let docs = read_docs(Path::new(path), args.docs.input_format, &args.docs.language)?;
        corpora.push((label, docs));
    }

    if corpora.iter().any(|(l, _)| l.is_some()) {
        let table = with_jobs(args.jobs, || {
            SplitTable::new(
                corpora
                    .iter()
                    .map(|(l, d)| (l.as_deref().unwrap_or_default(), d.as_slice())),
            )
        })?;
        let text = match args.format {
            ReportFormat::Tsv => table.to_tsv(),
            ReportFormat::Records => serde_json::to_string(&table).expect("serializable") + "\n",
        };
        out.write_all(text.as_bytes())?;
        return Ok(());
    }

    let docs: Vec<Document> = corpora.into_iter().flat_map(|(_, d)| d).collect();
    let by = args.by;
    let table = with_jobs(args.jobs, || {
        corpus_stats(&docs, |d| match by {
            GroupBy::Language => d.language.clone(),
            GroupBy::None => "all".to_string(),
        })
    })?;
    match args.format {
        ReportFormat::Tsv => {
            out.write_all(table.to_tsv().as_bytes())?;
            if let Ok(pct) = split_antecedent_percent(&table.total) {
                writeln!(out, "# split_antecedents_per_mention={pct}%")?;
            }
        }
        ReportFormat::Records => out.write_all(table.to_record().as_bytes())?,
    }
    Ok(())
}

fn split_label(input: &str) -> Option<(&str, &str)> {
    input.split_once('=').filter(|(label, _)| !label.is_empty())
}

fn check_usage(config: &RunConfig) -> Result<(), String> {
    match &config.command {
        Command::Score(a) => {
            if a.split == SplitArg::Expanded && a.docs.input_format == DocFormat::Conll {
                return Err(
                    "--split expanded needs canonical input; CoNLL cannot carry split antecedents"
                        .into(),
                );
            }
            if a.jobs == 0 {
                return Err("-j must be at least 1".into());
            }
        }
        Command::Stats(a) => {
            if a.jobs == 0 {
                return Err("-j must be at least 1".into());
            }
            let labelled = a.input.iter().filter(|i| split_label(i).is_some()).count();
            if labelled != 0 && labelled != a.input.len() {
                return Err("either label every --input as SPLIT=PATH or none of them".into());
            }
        }
        _ => {}
    }
    Ok(())
}

/// Run with explicit output streams; returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    if let Err(msg) = check_usage(&config) {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }

    let result = match &config.command {
        Command::Validate(a) => validate(a, out),
        Command::Convert(a) => convert(a, out, err),
        Command::Project(a) => project(a, out),
        Command::Sanity(a) => sanity(a, out),
        Command::Score(a) => score(a, out),
        Command::Decode(a) => decode(a, out),
        Command::Stats(a) => stats(a, out),
    };
    match result.and_then(|()| Ok(out.flush()?)) {
        Ok(()) => 0,
        Err(DataError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
