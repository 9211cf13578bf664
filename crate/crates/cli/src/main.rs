use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spure_cli::job::{
    parse_class_shorthand, parse_criterion, parse_job, parse_members, parse_module_shorthand, parse_ring,
    parse_ses_shorthand, Command, Job, ParseError, Parsed,
};
use spure_cli::{input_failure, run};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "spure",
    version,
    about = "Relative purity, pure-injective envelopes and relative Ext over Z and Z/m"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Corpus seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest Hom module enumerated element by element
    #[arg(long, global = true)]
    cap_hom: Option<usize>,
    /// Largest module whose submodules are listed
    #[arg(long, global = true)]
    cap_submodules: Option<usize>,
    /// Sequences in generated corpora
    #[arg(long, global = true)]
    corpus_size: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add wall-clock time to the structured report
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Invariant factors and the isomorphisms to the canonical form
    Canonicalize(Opts),
    /// Transpose of the stored presentation
    Transpose(Opts),
    /// Decide purity of 0 -> A -> B -> B/A -> 0
    CheckPurity(Opts),
    /// Compare the purities of two classes on a corpus
    ClassEquiv(Opts),
    /// Character module M+
    Dual(Opts),
    /// Pure flatness of a finite module
    Flat(Opts),
    /// Pure injectivity
    Pinj(Opts),
    /// Pure-injective preenvelope
    Preenvelope(Opts),
    /// Pure-injective envelope with its verification block
    Envelope(Opts),
    /// Relative Ext computed both ways
    Ext(Opts),
    /// Pure projective and injective dimensions over a bounded corpus
    Dims(Opts),
    /// Cross-check the purity criteria on a random corpus
    CrossCheck(Opts),
    /// The full acceptance run
    Suite(Opts),
    /// Run a JSON job file
    Run { file: PathBuf },
}

#[derive(Debug, Args)]
struct Opts {
    /// Z, Zmod4 or Z/4
    #[arg(long)]
    ring: Option<String>,
    /// Module shorthand such as Z2+Z4, R2 or 0
    #[arg(long)]
    module: Option<String>,
    #[arg(long)]
    module2: Option<String>,
    /// B=<module>,A=<generators of A in B>
    #[arg(long)]
    ses: Option<String>,
    /// cyclic-free, fp-bounded, cyclic-cyclically-presented, cyclically-presented, ideal-quotients or transpose:<kind>
    #[arg(long)]
    class: Option<String>,
    /// Explicit class members, comma separated
    #[arg(long, conflicts_with = "class")]
    members: Option<String>,
    #[arg(long)]
    class2: Option<String>,
    /// i, ii, iii, iv or all
    #[arg(long)]
    criterion: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    order_bound: Option<u64>,
}

fn opts_job(command: Command, o: &Opts) -> Parsed<Job> {
    let mut job = Job::new(command);
    if let Some(r) = &o.ring {
        job.ring = Some(parse_ring(r, "--ring")?);
    }
    let ring = || {
        job_ring(o).and_then(|r| {
            r.ok_or_else(|| ParseError {
                at: "--ring".into(),
                message: "this command needs a ring".into(),
            })
        })
    };
    if let Some(m) = &o.module {
        job.module = Some(parse_module_shorthand(m, &ring()?, "--module")?);
    }
    if let Some(m) = &o.module2 {
        job.module2 = Some(parse_module_shorthand(m, &ring()?, "--module2")?);
    }
    if let Some(s) = &o.ses {
        job.ses = Some(parse_ses_shorthand(s, &ring()?, "--ses")?);
    }
    if let Some(c) = &o.class {
        job.class = Some(parse_class_shorthand(c, "--class")?);
    }
    if let Some(m) = &o.members {
        job.class = Some(parse_members(m, &ring()?, "--members")?);
    }
    if let Some(c) = &o.class2 {
        job.class2 = Some(parse_class_shorthand(c, "--class2")?);
    }
    if let Some(c) = &o.criterion {
        job.criterion = Some(parse_criterion(c, "--criterion")?);
    }
    job.degree = o.degree.unwrap_or(job.degree);
    job.depth = o.depth.unwrap_or(job.depth);
    job.order_bound = o.order_bound.unwrap_or(job.order_bound);
    Ok(job)
}

fn job_ring(o: &Opts) -> Parsed<Option<spure::Ring>> {
    o.ring.as_deref().map(|r| parse_ring(r, "--ring")).transpose()
}

fn build_job(cli: &Cli) -> Parsed<Job> {
    let (command, opts) = match &cli.command {
        Sub::Run { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| ParseError {
                at: file.display().to_string(),
                message: e.to_string(),
            })?;
            let mut job = parse_job(&text).map_err(|e| ParseError {
                at: format!("{}: {}", file.display(), e.at),
                message: e.message,
            })?;
            apply_globals(cli, &mut job)?;
            return Ok(job);
        }
        Sub::Canonicalize(o) => (Command::Canonicalize, o),
        Sub::Transpose(o) => (Command::Transpose, o),
        Sub::CheckPurity(o) => (Command::CheckPurity, o),
        Sub::ClassEquiv(o) => (Command::ClassEquiv, o),
        Sub::Dual(o) => (Command::Dual, o),
        Sub::Flat(o) => (Command::Flat, o),
        Sub::Pinj(o) => (Command::Pinj, o),
        Sub::Preenvelope(o) => (Command::Preenvelope, o),
        Sub::Envelope(o) => (Command::Envelope, o),
        Sub::Ext(o) => (Command::Ext, o),
        Sub::Dims(o) => (Command::Dims, o),
        Sub::CrossCheck(o) => (Command::CrossCheck, o),
        Sub::Suite(o) => (Command::Suite, o),
    };
    let mut job = opts_job(command, opts)?;
    apply_globals(cli, &mut job)?;
    Ok(job)
}

fn apply_globals(cli: &Cli, job: &mut Job) -> Parsed<()> {
    let positive = |v: usize, at: &str| {
        if v == 0 {
            Err(ParseError {
                at: at.into(),
                message: "must be positive".into(),
            })
        } else {
            Ok(v)
        }
    };
    if let Some(s) = cli.seed {
        job.seed = s;
    }
    if let Some(v) = cli.cap_hom {
        job.caps.hom = positive(v, "--cap-hom")?;
    }
    if let Some(v) = cli.cap_submodules {
        job.caps.submodules = positive(v, "--cap-submodules")?;
    }
    if let Some(v) = cli.corpus_size {
        job.corpus_size = positive(v, "--corpus-size")?;
    }
    job.caps.seed = job.seed;
    Ok(())
}

fn emit(cli: &Cli, body: &str) -> Result<(), String> {
    match &cli.out {
        Some(p) => std::fs::write(p, body).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = match build_job(&cli) {
        Ok(j) => j,
        Err(e) => {
            let (msg, code) = input_failure(e);
            eprintln!("{msg}");
            return ExitCode::from(code as u8);
        }
    };
    let report = run(&job, cli.timing);
    let body = match cli.format {
        Format::Text => report.text.clone(),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&report.structured).expect("report serializes");
            s.push('\n');
            s
        }
    };
    if let Err(e) = emit(&cli, &body) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.exit_code != 0 {
        if let Some(e) = report.structured.get("error") {
            eprintln!("error: {}", e.as_str().unwrap_or_default());
        }
    }
    ExitCode::from(report.exit_code as u8)
}
