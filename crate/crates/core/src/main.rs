use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use loopfree_morse::category::{compute_grading, CategoryError, Grading, LoopFreeCategory};
use loopfree_morse::filtration::{build_filtration, FiltrationError, TieBreak};
use loopfree_morse::homology::{ChainComplex, OrderComplex};
use loopfree_morse::io::{export_dot, parse_category_document, to_category, DocumentError};
use loopfree_morse::morse::{
    basic_sets, build_flow_graph, check_admissibility, check_cellular, vector_field_from_ids,
    BasicSetKind, CellStatus, FieldError, MorseDecomposition, VectorField,
};
use loopfree_morse::report::{generate_report, ReportError, Verdict};

const EXIT_INPUT: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(name = "lfmorse", version, about = "Discrete Morse-Bott toolkit for loop-free categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct FieldArgs {
    /// Comma-separated vector field; overrides the document's `vector_field`.
    #[arg(long, value_delimiter = ',')]
    vf: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document: category axioms, grading and vector field.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Homology of the order complex.
    Homology {
        file: PathBuf,
        #[arg(long, conflicts_with = "relative")]
        reduced: bool,
        /// Comma-separated objects of the subcategory to quotient by.
        #[arg(long, value_delimiter = ',')]
        relative: Option<Vec<String>>,
        /// Betti numbers over the prime field F_p instead of the integers.
        #[arg(long)]
        field_mod: Option<u64>,
    },
    /// Basic sets, gradient part and hypothesis checks of a vector field.
    Morse {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// The filtration induced by a vector field.
    Filtration {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        reverse_ties: bool,
    },
    /// Morse numbers, Betti numbers and the inequalities.
    Report {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        reverse_ties: bool,
    },
    /// Flow graph in Graphviz syntax.
    ExportDot {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json")]
    Structured,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::input(e)
    }
}

impl From<CategoryError> for Failure {
    fn from(e: CategoryError) -> Self {
        Failure::input(e)
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        let code = match e {
            FieldError::MixedIndexComponent { .. } => EXIT_HYPOTHESIS,
            FieldError::VectorOutsideStructure(_) => EXIT_INVARIANT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Category(e) => e.into(),
            ReportError::Field(e) => e.into(),
        }
    }
}

struct Loaded {
    cat: LoopFreeCategory,
    field: Vec<String>,
}

fn load(path: &Path, vf: Option<Vec<String>>) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_category_document(&text)?;
    let cat = to_category(&doc)?;
    let field = vf.or(doc.vector_field).unwrap_or_default();
    Ok(Loaded { cat, field })
}

fn analyse(loaded: &Loaded) -> Result<(Grading, VectorField, MorseDecomposition), Failure> {
    let grading = compute_grading(&loaded.cat)?;
    let field = vector_field_from_ids(&loaded.cat, &grading, &loaded.field)?;
    let decomposition = basic_sets(&loaded.cat, &grading, &field)?;
    Ok((grading, field, decomposition))
}

fn names(cat: &LoopFreeCategory, objs: &BTreeSet<usize>) -> String {
    if objs.is_empty() {
        return "(none)".into();
    }
    let v: Vec<&str> = objs.iter().map(|&o| cat.object_id(o)).collect();
    v.join(", ")
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { file, field } => {
            let loaded = load(&file, field.vf)?;
            let cat = &loaded.cat;
            println!("objects: {}", cat.num_objects());
            println!("arrows: {}", cat.num_arrows());
            println!("poset: {}", if cat.is_poset() { "yes" } else { "no" });
            let (grading, field, _) = analyse(&loaded)?;
            let degrees: Vec<String> = (0..cat.num_objects())
                .map(|o| format!("{}={}", cat.object_id(o), grading.degree(o)))
                .collect();
            println!("degrees: {}", degrees.join(" "));
            println!("vector field: {} vectors, valid", field.len());
            Ok(0)
        }
        Command::Homology {
            file,
            reduced,
            relative,
            field_mod,
        } => {
            let loaded = load(&file, None)?;
            let cat = &loaded.cat;
            if let Some(p) = field_mod {
                if !is_prime(p) || p >= 1 << 32 {
                    return Err(Failure::input(format!("--field-mod {p} is not a prime below 2^32")));
                }
            }
            let k = OrderComplex::new(cat, None);
            let chain = match &relative {
                Some(ids) => {
                    let sub = cat.object_set(ids.iter().filter(|s| !s.is_empty()))?;
                    ChainComplex::quotient(&k, &sub)
                }
                None => ChainComplex::of(&k),
            };
            if reduced && k.dim().is_none() {
                println!("(empty: no reduced homology)");
                return Ok(0);
            }
            match field_mod {
                Some(p) => {
                    let mut betti = chain.betti_mod_p(p);
                    if reduced {
                        betti[0] -= 1;
                    }
                    let parts: Vec<String> = betti
                        .iter()
                        .enumerate()
                        .map(|(k, b)| format!("b_{k}={b}"))
                        .collect();
                    println!("{} (mod {p})", parts.join(" "));
                }
                None => println!("{}", chain.homology(reduced)),
            }
            Ok(0)
        }
        Command::Morse { file, field } => {
            let loaded = load(&file, field.vf)?;
            let cat = &loaded.cat;
            let (grading, field, d) = analyse(&loaded)?;
            println!("vector field: {}", field.ids(cat).join(", "));
            println!("critical: {}", names(cat, &d.critical));
            println!("basic sets:");
            for set in &d.basic_sets {
                let kind = match set.kind {
                    BasicSetKind::Critical => "critical",
                    BasicSetKind::Recurrent => "recurrent",
                };
                println!("  {{{}}} {kind} index {}", names(cat, &set.objects), set.index);
            }
            let grad: Vec<&str> = d.gradient_part.iter().map(|&f| cat.arrow(f).id.as_str()).collect();
            println!("gradient part: {}", if grad.is_empty() { "(none)".into() } else { grad.join(", ") });
            let cellular = check_cellular(cat, &grading);
            let admissible = check_admissibility(cat, &d);
            if cellular.ok {
                println!("cellularity: ok");
            } else {
                let at: Vec<&str> = cellular.failures().map(|c| c.object.as_str()).collect();
                println!("cellularity: FAILED at {}", at.join(", "));
            }
            for c in &cellular.objects {
                if let CellStatus::Failed { reduced } = &c.status {
                    println!("  {}: reduced homology of the punctured under-category {reduced}", c.object);
                }
            }
            if admissible.ok {
                println!("admissibility: ok");
            } else {
                let at: Vec<&str> = admissible.failures().map(|c| c.arrow.as_str()).collect();
                println!("admissibility: FAILED at {}", at.join(", "));
            }
            Ok(if cellular.ok && admissible.ok { 0 } else { EXIT_HYPOTHESIS })
        }
        Command::Filtration {
            file,
            field,
            reverse_ties,
        } => {
            let loaded = load(&file, field.vf)?;
            let cat = &loaded.cat;
            let (grading, _, d) = analyse(&loaded)?;
            let hold = check_cellular(cat, &grading).ok && check_admissibility(cat, &d).ok;
            let tie = if reverse_ties { TieBreak::Highest } else { TieBreak::Lowest };
            match build_filtration(cat, &grading, &d, tie) {
                Ok(f) => {
                    for (i, (step, level)) in f.steps().iter().zip(&f.levels()[1..]).enumerate() {
                        println!("C_{} = {{{}}}  via {}", i + 1, names(cat, level), step.describe(cat));
                    }
                    Ok(if hold { 0 } else { EXIT_HYPOTHESIS })
                }
                Err(e @ FiltrationError::Stuck { .. }) => {
                    let FiltrationError::Stuck { partial, .. } = &e;
                    for (i, s) in partial.iter().enumerate() {
                        println!("step {}: {s}", i + 1);
                    }
                    eprintln!("error: {e}");
                    Ok(if hold { EXIT_INVARIANT } else { EXIT_HYPOTHESIS })
                }
            }
        }
        Command::Report {
            file,
            field,
            format,
            reverse_ties,
        } => {
            let loaded = load(&file, field.vf)?;
            let tie = if reverse_ties { TieBreak::Highest } else { TieBreak::Lowest };
            let report = generate_report(&loaded.cat, &loaded.field, tie)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Structured => print!("{}", report.to_json()),
            }
            Ok(match report.verdict {
                Verdict::Ok => 0,
                Verdict::HypothesisViolated => EXIT_HYPOTHESIS,
                Verdict::InvariantBreach => EXIT_INVARIANT,
            })
        }
        Command::ExportDot { file, field, output } => {
            let loaded = load(&file, field.vf)?;
            let (grading, field, d) = analyse(&loaded)?;
            let dot = export_dot(&loaded.cat, &build_flow_graph(&loaded.cat, &field), &d, &grading);
            fs::write(&output, dot)
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", output.display())))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
