use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gainsparse::dot::{colored_graph_dot, lift_dot};
use gainsparse::henneberg::{default_group, random_construct};
use gainsparse::recognize::check_with_budget;
use gainsparse::sparsity::DEFAULT_BUDGET;
use gainsparse::{build_lift, deconstruct, verify_certificate, Certificate, ColoredGraph, Error, Family, GroupSpec, Method};

/// Sparsity checks, symmetric lifts and Henneberg certificates for
/// group-colored graphs.
#[derive(Parser)]
#[command(name = "gainsparse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print SPARSE, TIGHT or VIOLATION for a graph file or every file in a directory.
    Check {
        path: PathBuf,
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
        /// Largest edge count the brute-force method will enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Build the symmetric cover; writes <out>.txt and <out>.dot, or prints the text.
    Lift {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a seeded random certificate.
    Construct {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Color group; defaults to Z/5 (cone), Z (cylinder) or Z^2 (ross).
        #[arg(long, value_parser = parse_group)]
        group: Option<GroupSpec>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a tight graph to its base and emit the certificate.
    Deconstruct {
        file: PathBuf,
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate, checking every prefix.
    Verify {
        certificate: PathBuf,
        /// Also write the final graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz output for a graph, or for its cover with --lift.
    Dot {
        file: PathBuf,
        #[arg(long)]
        lift: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_graph(path: &Path) -> Result<ColoredGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ColoredGraph::from_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Error with its exit code, file context already in the message.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.exit_code() as u8, message: e.to_string() }
    }
}

fn at(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure { code: e.exit_code() as u8, message: format!("{}: {e}", path.display()) }
}

fn check_one(path: &Path, family: Family, method: Method, budget: usize) -> Result<(String, u8), Failure> {
    let g = read_graph(path).map_err(|message| Failure { code: 2, message })?;
    let verdict = check_with_budget(&g, family, method, budget).map_err(at(path))?;
    let code = if verdict.sparse { 0 } else { 1 };
    Ok((verdict.to_string(), code))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check { path, family, method, budget } => {
            if !path.is_dir() {
                let (line, code) = check_one(&path, family, method, budget)?;
                println!("{line}");
                return Ok(code);
            }
            let mut files: Vec<PathBuf> = fs::read_dir(&path)
                .map_err(Error::from)
                .map_err(at(&path))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            files.sort();
            let mut worst = 0;
            for file in &files {
                let name = file.file_name().unwrap_or_default().to_string_lossy();
                match check_one(file, family, method, budget) {
                    Ok((line, code)) => {
                        println!("{name}: {line}");
                        worst = worst.max(code);
                    }
                    Err(f) => {
                        println!("{name}: ERROR");
                        eprintln!("error: {}", f.message);
                        worst = worst.max(f.code);
                    }
                }
            }
            Ok(worst)
        }
        Command::Lift { file, out } => {
            let g = read_graph(&file).map_err(|message| Failure { code: 2, message })?;
            let sg = build_lift(&g).map_err(at(&file))?;
            match out {
                Some(prefix) => {
                    fs::write(prefix.with_extension("txt"), sg.to_text()).map_err(Error::from)?;
                    fs::write(prefix.with_extension("dot"), lift_dot(&sg)).map_err(Error::from)?;
                }
                None => print!("{}", sg.to_text()),
            }
            Ok(0)
        }
        Command::Construct { family, steps, seed, group, out } => {
            let spec = match group {
                Some(spec) => spec,
                None => default_group(family)?,
            };
            let cert = random_construct(family, spec, steps, seed)?;
            emit(out.as_deref(), &cert.to_text())?;
            Ok(0)
        }
        Command::Deconstruct { file, family, out } => {
            let g = read_graph(&file).map_err(|message| Failure { code: 2, message })?;
            let cert = match deconstruct(&g, family) {
                Ok(cert) => cert,
                Err(Error::Precondition(msg)) => {
                    eprintln!("{}: {msg}", file.display());
                    return Ok(1);
                }
                Err(e) => return Err(at(&file)(e)),
            };
            emit(out.as_deref(), &cert.to_text())?;
            Ok(0)
        }
        Command::Verify { certificate, out } => {
            let text = fs::read_to_string(&certificate).map_err(Error::from).map_err(at(&certificate))?;
            let cert = Certificate::from_text(&text).map_err(at(&certificate))?;
            match verify_certificate(&cert) {
                Ok(g) => {
                    if let Some(path) = out {
                        fs::write(path, g.to_text()).map_err(Error::from)?;
                    }
                    println!("VALID {} vertices {} edges", g.vertex_count(), g.edge_count());
                    Ok(0)
                }
                Err(Error::CertificateInvalid { step, reason }) => {
                    println!("INVALID step {step}: {reason}");
                    Ok(1)
                }
                Err(e) => Err(at(&certificate)(e)),
            }
        }
        Command::Dot { file, lift, out } => {
            let g = read_graph(&file).map_err(|message| Failure { code: 2, message })?;
            let text = if lift { lift_dot(&build_lift(&g).map_err(at(&file))?) } else { colored_graph_dot(&g) };
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
