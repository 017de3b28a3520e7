//! Command-line front end for `mealy-groups`.
//!
//! Every subcommand is a thin adapter over one library call. [`run`] takes
//! the argument list and returns the exit code together with everything
//! destined for standard output and standard error, so the binary and the
//! tests share one code path.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mealy_groups::builtin::builtin;
use mealy_groups::format::{parse_machine, render_machine, render_pointed, to_dot};
use mealy_groups::group::{
    element_from_word, elements_equal, enumerate_elements_with, find_relations, order, CanonicalElement, GeneratorWord,
    Generators, Order,
};
use mealy_groups::machine::{compose, invert, minimize, validate, MealyMachine, PointedMachine};
use mealy_groups::recognizer::{certify_infinite, recognize_dihedral, CertifyError, DihedralVerdict};
use mealy_groups::{MachineError, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mealy", version, about = "Mealy machines and the groups they generate")]
pub struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Source {
    /// Machine file, or the name of a builtin machine (`V26`).
    pub machine: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a machine and list its defects.
    Validate(Source),
    /// Apply a group element to an input word.
    Act {
        #[command(flatten)]
        source: Source,
        /// Generator word, e.g. "p q p'".
        #[arg(long)]
        word: String,
        /// Input word over the machine alphabet.
        #[arg(long)]
        input: String,
    },
    /// Print the inverse machine.
    Invert {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the product machine of a generator word, without reduction.
    Compose {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the reduced machine of a generator word.
    Minimize {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare two generator words as group elements.
    Equal {
        #[command(flatten)]
        source: Source,
        /// Exactly two generator words.
        #[arg(long, num_args = 1, required = true)]
        word: Vec<String>,
    },
    /// Bounded order search.
    Order {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 64)]
        max: u64,
    },
    /// Enumerate group elements by word length and print the growth table.
    Enumerate {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 6)]
        max: usize,
        /// Use states only, no inverses.
        #[arg(long)]
        positive: bool,
    },
    /// List minimal positive relators up to a length.
    Relations {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Orbit certificate for a generator word.
    Certify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Recognize the infinite dihedral group on two generators.
    Recognize {
        #[command(flatten)]
        source: Source,
        gen1: String,
        gen2: String,
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Coordinates in Z ⋊ Z₂ of a word over two certified generators.
    Coords {
        #[command(flatten)]
        source: Source,
        gen1: String,
        gen2: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Graphviz rendering of the machine, or of a reduced element.
    Dot {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: Option<String>,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
}

impl From<MachineError> for Failure {
    fn from(e: MachineError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let jobs = cli.jobs;
    if jobs == Some(0) {
        return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: "--jobs must be positive\n".into() };
    }
    let execute = move || {
        let mut out = String::new();
        match execute(&cli.command, &mut out) {
            Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
            Err(Failure::Usage(msg)) => Outcome { code: EXIT_USAGE, stdout: out, stderr: format!("error: {msg}\n") },
        }
    };
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(execute),
            Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
        },
        None => execute(),
    }
}

/// Loads a builtin by name, or else reads and parses a machine file.
pub fn load_machine(source: &str) -> Result<MealyMachine, String> {
    if let Some(m) = builtin(source) {
        return Ok(m);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| format!("{source}: {e}"))?;
    parse_machine(&text).map_err(|e| format!("{source}: {e}"))
}

fn element(machine: &MealyMachine, word: &str) -> Result<(GeneratorWord, CanonicalElement), Failure> {
    let w = GeneratorWord::parse(word, machine)?;
    let e = element_from_word(machine, &w)?;
    Ok((w, e))
}

fn product(machine: &MealyMachine, word: &GeneratorWord) -> Result<PointedMachine, MachineError> {
    let inverse = invert(machine)?;
    let mut letters = word.letters().iter();
    let Some(first) = letters.next() else {
        return PointedMachine::new(MealyMachine::identity(machine.alphabet().clone()), mealy_groups::StateId(0));
    };
    let pick = |g: &mealy_groups::group::Generator| if g.inverse { &inverse } else { machine }.pointed(&g.state);
    let mut acc = pick(first)?;
    for g in letters {
        acc = compose(&acc, &pick(g)?)?;
    }
    Ok(acc)
}

fn print_pointed(out: &mut String, pointed: &PointedMachine, format: Format) {
    match format {
        Format::Text => out.push_str(&render_pointed(pointed)),
        Format::Dot => out.push_str(&to_dot(pointed.machine(), Some(pointed.initial()))),
    }
}

fn execute(command: &Command, out: &mut String) -> Result<i32, Failure> {
    let load = |s: &Source| load_machine(&s.machine).map_err(Failure::Usage);
    match command {
        Command::Validate(source) => {
            let m = load(source)?;
            let defects = validate(&m.to_draft());
            if defects.is_empty() {
                let _ = writeln!(out, "ok");
                let _ = writeln!(out, "states {}", m.num_states());
                let _ = writeln!(out, "letters {}", m.alphabet().len());
                let _ = writeln!(out, "invertible {}", m.is_invertible());
                Ok(EXIT_OK)
            } else {
                for d in defects {
                    let _ = writeln!(out, "{d}");
                }
                Ok(EXIT_USAGE)
            }
        }
        Command::Act { source, word, input } => {
            let m = load(source)?;
            let (_, e) = element(&m, word)?;
            let input = m.alphabet().parse_word(input)?;
            let action = e.act_word(&input)?;
            let _ = writeln!(out, "{}", m.alphabet().format_word(&action.output));
            let _ = writeln!(out, "final {}", e.pointed().machine().state_name(action.final_state));
            Ok(EXIT_OK)
        }
        Command::Invert { source, format } => {
            let m = load(source)?;
            let inv = invert(&m)?;
            match format {
                Format::Text => out.push_str(&render_machine(&inv)),
                Format::Dot => out.push_str(&to_dot(&inv, None)),
            }
            Ok(EXIT_OK)
        }
        Command::Compose { source, word, format } => {
            let m = load(source)?;
            let w = GeneratorWord::parse(word, &m)?;
            print_pointed(out, &product(&m, &w)?, *format);
            Ok(EXIT_OK)
        }
        Command::Minimize { source, word, format } => {
            let m = load(source)?;
            let w = GeneratorWord::parse(word, &m)?;
            print_pointed(out, &minimize(&product(&m, &w)?).pointed, *format);
            Ok(EXIT_OK)
        }
        Command::Equal { source, word } => {
            let [u, v] = word.as_slice() else {
                return Err(Failure::Usage("`equal` takes exactly two --word arguments".into()));
            };
            let m = load(source)?;
            let (_, a) = element(&m, u)?;
            let (_, b) = element(&m, v)?;
            let _ = writeln!(out, "{}", elements_equal(&a, &b));
            Ok(EXIT_OK)
        }
        Command::Order { source, word, max } => {
            let m = load(source)?;
            let (_, e) = element(&m, word)?;
            match order(&e, *max)? {
                Order::Finite(n) => {
                    let _ = writeln!(out, "{n}");
                }
                Order::ExceedsBound => {
                    let _ = writeln!(out, "exceeds bound {max}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { source, max, positive } => {
            let m = load(source)?;
            let gens = if *positive { Generators::Positive } else { Generators::Group };
            let e = enumerate_elements_with(&m, *max, gens)?;
            for (len, count) in e.growth.counts.iter().enumerate() {
                let _ = writeln!(out, "length {len} elements {count}");
            }
            for (_, w) in &e.elements {
                let _ = writeln!(out, "element {w}");
            }
            Ok(EXIT_OK)
        }
        Command::Relations { source, max } => {
            let m = load(source)?;
            for w in find_relations(&m, *max)? {
                let _ = writeln!(out, "{w}");
            }
            Ok(EXIT_OK)
        }
        Command::Certify { source, word, depth } => {
            let m = load(source)?;
            let (w, e) = element(&m, word)?;
            match certify_infinite(&e, *depth) {
                Ok(cert) => {
                    out.push_str(&cert.report(m.name(), &w.to_string(), m.alphabet()));
                    Ok(EXIT_OK)
                }
                Err(CertifyError::Collision(i, j)) => {
                    let _ = writeln!(out, "inconclusive: orbit prefixes {i} and {j} coincide");
                    Ok(EXIT_INCONCLUSIVE)
                }
                Err(CertifyError::Machine(e)) => Err(e.into()),
            }
        }
        Command::Recognize { source, gen1, gen2, depth } => {
            let m = load(source)?;
            let verdict = recognize_dihedral(&m, gen1, gen2, *depth)?;
            let _ = write!(out, "{verdict}");
            if let DihedralVerdict::Certified(c) = &verdict {
                let [g1, g2] = c.generators();
                out.push_str(&c.certificate().report(m.name(), &format!("{g1} {g2}"), m.alphabet()));
            }
            Ok(verdict.exit_code())
        }
        Command::Coords { source, gen1, gen2, word, depth } => {
            let m = load(source)?;
            match recognize_dihedral(&m, gen1, gen2, *depth)? {
                DihedralVerdict::Certified(c) => {
                    let w = GeneratorWord::parse(word, &m)?;
                    let coords = c.coordinates(&w)?;
                    let _ = writeln!(out, "{coords}");
                    let _ = writeln!(out, "{}", mealy_groups::dihedral::psi(&coords));
                    Ok(EXIT_OK)
                }
                other => Err(Failure::Usage(format!(
                    "generators {gen1} {gen2} are not certified: {}",
                    other.to_string().trim_end()
                ))),
            }
        }
        Command::Dot { source, word } => {
            let m = load(source)?;
            match word {
                None => out.push_str(&to_dot(&m, None)),
                Some(word) => {
                    let (_, e) = element(&m, word)?;
                    print_pointed(out, e.pointed(), Format::Dot);
                }
            }
            Ok(EXIT_OK)
        }
    }
}
