mod diagram;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::{fmt, fs, thread};

use clap::{Parser, Subcommand, ValueEnum};
use ordertype::canonise::canonise_family;
use ordertype::classifier::{beta, classify, xi};
use ordertype::colourings::{Colour, ColouringName, KappaSetColouring, Subject};
use ordertype::corpus::{self, CorpusEntry};
use ordertype::families::FamilyDoc;
use ordertype::ordertype::{normalize, parse_type, FiniteSumForm};
use ordertype::{selfcheck, Error, ParseError};

/// Overrides the bundled corpus with every `.fam` and `.dy` file in a directory.
const CORPUS_ENV: &str = "ORDERTYPE_CORPUS";

#[derive(Parser)]
#[command(name = "ordertype", version, about = "Order types, ordinals and colourings of binary sequences")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Place an order type in the trichotomy and print the report.
    Classify { expr: String },
    /// Largest ordinal obtainable by rearranging the pieces of a scattered type.
    Beta { expr: String },
    /// The ordinal ξ of a scattered type.
    Xi { expr: String },
    /// Evaluate a colouring on a family or dyadic copy.
    Colour {
        file: PathBuf,
        #[arg(long)]
        colouring: ColouringName,
        /// Colouring of symbolic ordinal sets used by `affordable`.
        #[arg(long, default_value = "parity")]
        oracle: String,
    },
    /// Find a subcopy of the other (or the given) colour.
    Flip {
        file: PathBuf,
        #[arg(long)]
        colouring: ColouringName,
        #[arg(long)]
        target: Option<Colour>,
        #[arg(long, default_value = "parity")]
        oracle: String,
        /// Write the result here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Canonise every infinite condensation class of a family.
    Canonise {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the corpus and run the acceptance criteria.
    Demo,
    /// Draw the splitting type of a family.
    Diagram {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Ascii)]
        format: DiagramFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Ascii,
    Dot,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_parse() => 2,
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }

    fn reason(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.reason(),
            Failure::Io(..) => "io",
            Failure::Usage(_) => "usage",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Core(e.into())
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("{}: {msg}", e.reason());
            ExitCode::from(e.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write_or_return(output: Option<&Path>, text: String) -> Result<String, Failure> {
    match output {
        Some(p) => fs::write(p, text).map(|_| String::new()).map_err(|e| Failure::Io(p.to_owned(), e)),
        None => Ok(text),
    }
}

fn scattered(expr: &str) -> Result<FiniteSumForm, Failure> {
    normalize(&parse_type(expr)?).form.ok_or_else(|| Error::Precondition(format!("{expr} is not scattered")).into())
}

fn oracle(name: &str) -> Result<KappaSetColouring, Failure> {
    KappaSetColouring::by_name(name)
        .ok_or_else(|| Failure::Usage(format!("unknown oracle '{name}' (expected const0, const1 or parity)")))
}

fn family_only(s: Subject, verb: &str) -> Result<FamilyDoc, Failure> {
    match s {
        Subject::Family(d) => Ok(d),
        Subject::Dyadic { .. } => Err(Error::Precondition(format!("{verb} needs a family, not a dyadic copy")).into()),
    }
}

fn run(verb: Verb) -> Outcome {
    let ok = |s: String| Ok((s, 0));
    match verb {
        Verb::Classify { expr } => ok(classify(&parse_type(&expr)?)?.to_string()),
        Verb::Beta { expr } => ok(format!("{}\n", beta(&scattered(&expr)?)?)),
        Verb::Xi { expr } => ok(format!("{}\n", xi(&scattered(&expr)?)?)),
        Verb::Colour { file, colouring, oracle: name } => {
            let s = Subject::parse(&read(&file)?)?;
            ok(format!("{}\n", colouring.colour(&s, &oracle(&name)?)?))
        }
        Verb::Flip { file, colouring, target, oracle: name, output } => {
            let f = oracle(&name)?;
            let s = Subject::parse(&read(&file)?)?;
            let flipped = colouring.flip(&s, target, &f)?;
            let before = colouring.colour(&s, &f)?;
            let after = colouring.colour(&flipped, &f)?;
            let doc = write_or_return(output.as_deref(), flipped.to_string())?;
            ok(format!("before: {before}\nafter: {after}\n{doc}"))
        }
        Verb::Canonise { file, output } => {
            let d = family_only(Subject::parse(&read(&file)?)?, "canonise")?;
            ok(write_or_return(output.as_deref(), canonise_family(&d.family)?.to_string())?)
        }
        Verb::Demo => demo(),
        Verb::Diagram { file, format } => {
            let d = family_only(Subject::parse(&read(&file)?)?, "diagram")?;
            let format = match format {
                DiagramFormat::Ascii => diagram::Format::Ascii,
                DiagramFormat::Dot => diagram::Format::Dot,
            };
            ok(diagram::render(&d.family, format)?)
        }
    }
}

fn load_corpus() -> Result<Vec<CorpusEntry>, Failure> {
    Ok(match std::env::var_os(CORPUS_ENV) {
        Some(dir) => corpus::load_dir(Path::new(&dir))?,
        None => corpus::bundled()?,
    })
}

/// One row of the colour matrix: the colour per colouring (`.` where it does
/// not apply) and whether the file's recorded colours agree.
fn matrix_row(e: &CorpusEntry, f: &KappaSetColouring) -> (String, bool) {
    let mut cells = Vec::new();
    let mut agrees = true;
    for name in ColouringName::ALL {
        let got = name.colour(&e.subject, f).ok();
        if let Some(want) = e.subject.check(&format!("colour.{name}")) {
            agrees &= got.map(|c| c.to_string()).as_deref() == Some(want);
        }
        cells.push(format!("{:>width$}", got.map_or(".".to_owned(), |c| c.to_string()), width = name.as_str().len()));
    }
    (cells.join(" "), agrees)
}

fn demo() -> Outcome {
    let corpus = load_corpus()?;
    let corpus = &corpus;
    let f = KappaSetColouring::parity();
    let width = corpus.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    let header: Vec<&str> = ColouringName::ALL.iter().map(|c| c.as_str()).collect();
    out.push_str(&format!("{:width$} {} checks\n", "entry", header.join(" ")));
    let mut all_pass = true;
    for e in corpus {
        let (row, agrees) = matrix_row(e, &f);
        all_pass &= agrees;
        out.push_str(&format!("{:width$} {row} {}\n", e.name, if agrees { "pass" } else { "FAIL" }));
    }
    let reports: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = (1..=10).map(|id| scope.spawn(move || selfcheck::criterion(id, corpus))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    for r in &reports {
        all_pass &= r.passed;
        out.push_str(&format!("{r}\n"));
    }
    Ok((out, if all_pass { 0 } else { 1 }))
}
