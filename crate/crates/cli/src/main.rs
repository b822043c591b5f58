//! Command-line front end: parse representation specs, run twisted-conductor
//! computations, enumerate character groups, and drive verification grids.
//!
//! Exit codes are fixed for scripting: 0 success, 1 verification failure,
//! 2 parse error, 3 semantic error. All output is exact decimal and
//! byte-deterministic for identical inputs.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twistcond_core::characters::enumerate_up_to;
use twistcond_core::counting::{count_exact, count_up_to, twist_fixing_bound};
use twistcond_core::localfield::LocalFieldParams;
use twistcond_core::oracle::{twisted_conductor_histogram, verify_grid, GridConfig, DEFAULT_LIMIT};
use twistcond_core::reps::{bushnell_henniart_bound, Representation};
use twistcond_core::wire::{CharacterSpec, FieldSpec, RepresentationSpec};

#[derive(Parser)]
#[command(
    name = "twistcond",
    version,
    about = "Exact conductors of character twists"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted-conductor breakdown of a representation by a character.
    Twist {
        /// Representation spec: a JSON file path or inline JSON.
        #[arg(long)]
        input: String,
        /// Twisting character as inline JSON {"conductor": k, "exponents": [...]}.
        #[arg(long)]
        chi: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form character counts per conductor.
    Count {
        /// Base field as "p,f".
        #[arg(long, value_parser = parse_field)]
        field: FieldArg,
        /// Largest conductor tabulated.
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive listing of the characters of conductor at most k.
    Enumerate {
        #[arg(long, value_parser = parse_field)]
        field: FieldArg,
        #[arg(long)]
        k: u64,
        /// Enumeration guard in group elements.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distribution of twisted conductors over the conductor-k dual sphere.
    Histogram {
        /// Representation spec: a JSON file path or inline JSON.
        #[arg(long)]
        input: String,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification grid and report every check.
    Verify {
        /// Base field as "p,f".
        #[arg(long, value_parser = parse_field, default_value = "5,1")]
        field: FieldArg,
        /// Twisting characters range over conductors up to this bound.
        #[arg(long, default_value_t = 3)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certified window and coarse bound for the twisted conductor.
    Bounds {
        /// Representation spec: a JSON file path or inline JSON.
        #[arg(long)]
        input: String,
        /// Conductor of the twisting character.
        #[arg(long)]
        k: u64,
        /// Also bound the number of conductor-k characters twisting onto j.
        #[arg(long)]
        j: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy)]
struct FieldArg {
    p: u64,
    f: u32,
}

fn parse_field(s: &str) -> Result<FieldArg, String> {
    let (p, f) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"p,f\", got {s:?}"))?;
    let p = p.trim().parse::<u64>().map_err(|e| e.to_string())?;
    let f = f.trim().parse::<u32>().map_err(|e| e.to_string())?;
    Ok(FieldArg { p, f })
}

enum CliError {
    /// Malformed input: unreadable file or invalid JSON.
    Parse(String),
    /// Valid JSON violating a domain invariant, or a resource guard.
    Semantic(String),
    /// A verification check was violated.
    Verification,
}

impl From<twistcond_core::Error> for CliError {
    fn from(err: twistcond_core::Error) -> Self {
        CliError::Semantic(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Parse(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::from(0),
        Err(CliError::Verification) => ExitCode::from(1),
        Err(CliError::Parse(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Semantic(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

/// Reads a spec from a path, or parses it inline when it looks like JSON.
fn load_text(input: &str) -> Result<String, CliError> {
    if input.trim_start().starts_with('{') {
        Ok(input.to_string())
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| CliError::Parse(format!("cannot read {input}: {e}")))
    }
}

fn load_representation(input: &str) -> Result<Representation, CliError> {
    let text = load_text(input)?;
    let spec: RepresentationSpec = serde_json::from_str(&text)?;
    Ok(spec.resolve()?)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Semantic(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn to_pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Twist { input, chi, output } => cmd_twist(&input, &chi, &output),
        Command::Count { field, k, output } => cmd_count(field, k, &output),
        Command::Enumerate {
            field,
            k,
            limit,
            output,
        } => cmd_enumerate(field, k, limit, &output),
        Command::Histogram {
            input,
            k,
            limit,
            output,
        } => cmd_histogram(&input, k, limit, &output),
        Command::Verify {
            field,
            k,
            limit,
            output,
        } => cmd_verify(field, k, limit, &output),
        Command::Bounds {
            input,
            k,
            j,
            output,
        } => cmd_bounds(&input, k, j, &output),
    }
}

fn cmd_twist(input: &str, chi_text: &str, output: &OutputArgs) -> Result<(), CliError> {
    let rep = load_representation(input)?;
    let chi_spec: CharacterSpec = serde_json::from_str(chi_text)?;
    let chi = chi_spec.resolve(rep.field())?;
    let breakdown = rep.twist_breakdown(&chi)?;
    let content = match output.format {
        Format::Json => to_pretty(&serde_json::json!({
            "field": FieldSpec::from_params(rep.field()),
            "chi": CharacterSpec::from_character(&chi),
            "conductor": breakdown.conductor,
            "chi_conductor": breakdown.chi_conductor,
            "twisted_conductor": breakdown.twisted_conductor,
            "dominant": breakdown.dominant,
            "interference": breakdown.interference,
            "omega": breakdown.omega_set(),
            "components": breakdown.components,
        })),
        Format::Csv => {
            let mut s = String::from(
                "component,rank,conductor,twisted_conductor,dominant,interference,in_omega\n",
            );
            for c in &breakdown.components {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    c.index,
                    c.rank,
                    c.conductor,
                    c.twisted_conductor,
                    c.dominant,
                    c.interference,
                    c.in_omega
                )
                .unwrap();
            }
            writeln!(
                s,
                "total,{},{},{},{},{},",
                rep.rank(),
                breakdown.conductor,
                breakdown.twisted_conductor,
                breakdown.dominant,
                breakdown.interference
            )
            .unwrap();
            s
        }
    };
    emit(&output.out, &content)
}

fn cmd_count(field: FieldArg, k: u64, output: &OutputArgs) -> Result<(), CliError> {
    let params = LocalFieldParams::new(field.p, field.f)?;
    let q = params.q();
    let mut rows = Vec::new();
    for l in 0..=k {
        rows.push((l, count_up_to(q, l)?, count_exact(q, l)?));
    }
    let content = match output.format {
        Format::Json => to_pretty(&serde_json::json!({
            "q": q,
            "k": k,
            "counts": rows
                .iter()
                .map(|&(l, at_most, exact)| serde_json::json!({
                    "conductor": l,
                    "at_most": at_most,
                    "exact": exact,
                }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("conductor,at_most,exact\n");
            for (l, at_most, exact) in rows {
                writeln!(s, "{l},{at_most},{exact}").unwrap();
            }
            s
        }
    };
    emit(&output.out, &content)
}

fn cmd_enumerate(field: FieldArg, k: u64, limit: u64, output: &OutputArgs) -> Result<(), CliError> {
    let params = LocalFieldParams::new(field.p, field.f)?;
    let needed = count_up_to(params.q(), k)?;
    if needed > limit {
        return Err(CliError::Semantic(
            twistcond_core::Error::ResourceLimit { needed, limit }.to_string(),
        ));
    }
    let characters = enumerate_up_to(params, k)?;
    let content = match output.format {
        Format::Json => to_pretty(&serde_json::json!({
            "field": FieldSpec::from_params(params),
            "k": k,
            "total": characters.len(),
            "characters": characters
                .iter()
                .map(CharacterSpec::from_character)
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("conductor,exponents\n");
            for chi in &characters {
                let exps: Vec<String> = chi.exponents().iter().map(|e| e.to_string()).collect();
                writeln!(s, "{},{}", chi.conductor(), exps.join(" ")).unwrap();
            }
            s
        }
    };
    emit(&output.out, &content)
}

fn cmd_histogram(input: &str, k: u64, limit: u64, output: &OutputArgs) -> Result<(), CliError> {
    let rep = load_representation(input)?;
    let hist = twisted_conductor_histogram(&rep, k, limit)?;
    let content = match output.format {
        Format::Json => to_pretty(&hist.to_json_value()),
        Format::Csv => hist.to_csv(),
    };
    emit(&output.out, &content)
}

fn cmd_verify(field: FieldArg, k: u64, limit: u64, output: &OutputArgs) -> Result<(), CliError> {
    let params = LocalFieldParams::new(field.p, field.f)?;
    let config = GridConfig {
        fields: vec![params],
        k_bound: k,
        limit,
        ..GridConfig::default()
    };
    let report = verify_grid(&config)?;
    let content = match output.format {
        Format::Json => to_pretty(&report.to_json_value()),
        Format::Csv => report.to_csv(),
    };
    emit(&output.out, &content)?;
    if report.has_violation() {
        Err(CliError::Verification)
    } else {
        Ok(())
    }
}

fn cmd_bounds(input: &str, k: u64, j: Option<u64>, output: &OutputArgs) -> Result<(), CliError> {
    let rep = load_representation(input)?;
    let bounds = rep.conductor_bounds(k);
    let coarse = bushnell_henniart_bound(rep.conductor(), k, rep.rank());
    let omega: Vec<usize> = rep
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.conductor() > c.rank() * k)
        .map(|(i, _)| i)
        .collect();
    let fixing = j.map(|j| twist_fixing_bound(&rep, k, j)).transpose()?;
    let content = match output.format {
        Format::Json => {
            let mut value = serde_json::json!({
                "conductor": rep.conductor(),
                "chi_conductor": k,
                "lower": bounds.lower,
                "upper": bounds.upper,
                "coarse_bound": coarse,
                "omega": omega,
            });
            if let (Some(j), Some(report)) = (j, &fixing) {
                value["twist_fixing"] = serde_json::json!({
                    "j": j,
                    "kind": report.kind,
                    "value": report.value,
                    "source": report.source,
                });
            }
            to_pretty(&value)
        }
        Format::Csv => {
            let mut s = String::from("quantity,value\n");
            writeln!(s, "conductor,{}", rep.conductor()).unwrap();
            writeln!(s, "chi_conductor,{k}").unwrap();
            writeln!(s, "lower,{}", bounds.lower).unwrap();
            writeln!(s, "upper,{}", bounds.upper).unwrap();
            writeln!(s, "coarse_bound,{coarse}").unwrap();
            if let (Some(j), Some(report)) = (j, &fixing) {
                writeln!(s, "twist_fixing_j,{j}").unwrap();
                writeln!(s, "twist_fixing_value,{}", report.value).unwrap();
            }
            s
        }
    };
    emit(&output.out, &content)
}
