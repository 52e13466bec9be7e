use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclomat::classify::{self, SearchConstraints};
use cyclomat::document::{self, DigraphDocument};
use cyclomat::families::{self, FamilyId, FamilyKind};
use cyclomat::{equivalence, poly, spectra, symmetrize, verify, Digraph, Error};

#[derive(Parser)]
#[command(name = "cyclomat", version, about = "Symmetrizable cyclotomic integer matrices")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural and spectral predicates of one digraph.
    Check { file: String },
    /// Symmetrizer and symmetrized surd matrix.
    Symmetrize { file: String },
    /// Characteristic polynomial and root counts around [-2, 2].
    Spectrum {
        file: String,
        /// Also print floating-point eigenvalues.
        #[arg(long)]
        approx: bool,
    },
    /// Decide equivalence under signed permutations and negation.
    Equiv { first: String, second: String },
    /// Print a family member as a digraph file.
    Family { name: String, n: Option<usize> },
    /// Enumerate equivalence classes up to a bounded order.
    Classify {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        nonnegative: bool,
        #[arg(long)]
        open: bool,
        #[arg(long)]
        nonsymmetric: bool,
    },
    /// Rerun one of the bounded classification checks.
    Verify {
        which: Check,
        #[arg(long)]
        max_order: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Theorem1,
    Theorem2,
    Corollary1,
    Corollary3,
    Corollary5,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &str) -> Result<Digraph, Failure> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    document::parse_digraph(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn emit(json_mode: bool, value: Value, text: String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

fn check(g: &Digraph, json_mode: bool) -> Outcome {
    let sign_symmetric = g.is_sign_symmetric();
    let symmetrizable = symmetrize::is_symmetrizable(g);
    let (cyclotomic, open) = if symmetrizable {
        (spectra::is_cyclotomic(g), spectra::all_eigs_in_open(g))
    } else {
        (false, false)
    };
    let rows = [
        ("sign_symmetric", sign_symmetric),
        ("symmetrizable", symmetrizable),
        ("connected", g.is_connected()),
        ("cyclotomic", cyclotomic),
        ("open_interval", open),
        ("squares_to_four", spectra::is_plus_minus_two_only(g)),
    ];
    let text: String = rows.iter().map(|(k, v)| format!("{k}: {}\n", yes(*v))).collect();
    let value = Value::Object(rows.iter().map(|(k, v)| (k.to_string(), json!(v))).collect());
    emit(json_mode, value, text);
    Ok(())
}

fn symmetrize_cmd(g: &Digraph, json_mode: bool) -> Outcome {
    let d = match symmetrize::compute_symmetrizer(g) {
        Ok(d) => d,
        Err(e @ (Error::CycleCondition(_) | Error::NotSignSymmetric { .. })) => {
            let msg = e.to_string();
            emit(json_mode, json!({ "symmetrizable": false, "reason": msg }), format!("not symmetrizable: {msg}"));
            return Err(Failure::Mismatch);
        }
        Err(e) => return Err(e.into()),
    };
    let s = symmetrize::symmetrization(g)?;
    let dsq: Vec<String> = d.dsq.iter().map(|x| x.to_string()).collect();
    let text = format!("dsq: {}\nsymmetrization:\n{s}\n", dsq.join(" "));
    let value = json!({ "symmetrizable": true, "dsq": dsq, "t": s.rows() });
    emit(json_mode, value, text);
    Ok(())
}

fn spectrum(g: &Digraph, approx: bool, json_mode: bool) -> Outcome {
    let p = spectra::char_poly(g);
    use std::ops::Bound::*;
    let two = || num_rational::BigRational::from_integer(2.into());
    let m_two = || -two();
    let count = |lo, hi| poly::count_roots(&p, lo, hi).map(|r| r.count);
    let buckets = [
        ("below_minus_two", count(Unbounded, Excluded(m_two()))?),
        ("at_minus_two", count(Included(m_two()), Included(m_two()))?),
        ("open_interval", count(Excluded(m_two()), Excluded(two()))?),
        ("at_two", count(Included(two()), Included(two()))?),
        ("above_two", count(Excluded(two()), Unbounded)?),
    ];
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    let mut text = format!("char_poly: {p}\ncoefficients: [{}]\n", coeffs.join(", "));
    for (k, v) in &buckets {
        text += &format!("{k}: {v}\n");
    }
    let mut value = json!({ "char_poly": p.to_string(), "coefficients": coeffs });
    for (k, v) in &buckets {
        value[*k] = json!(v);
    }
    if approx {
        let ev = spectra::eigenvalues_float(g)?;
        let shown: Vec<String> = ev.iter().map(|x| format!("{x:.9}")).collect();
        text += &format!("eigenvalues: {}\n", shown.join(" "));
        value["eigenvalues"] = json!(ev);
    }
    emit(json_mode, value, text);
    Ok(())
}

fn equiv(a: &Digraph, b: &Digraph, json_mode: bool) -> Outcome {
    match equivalence::equivalence_witness(a, b) {
        Some(w) => {
            let perm: Vec<usize> = w.perm().iter().map(|p| p + 1).collect();
            let value = json!({
                "equivalent": true,
                "perm": perm,
                "signs": w.signs(),
                "negate": w.negate(),
            });
            emit(json_mode, value, format!("equivalent\nwitness: {w}\n"));
            Ok(())
        }
        None => {
            emit(json_mode, json!({ "equivalent": false }), "not equivalent".into());
            Err(Failure::Mismatch)
        }
    }
}

/// Accepts `L6+`, or a bare family name plus an index such as `L+ 6`.
fn family_id(name: &str, n: Option<usize>) -> Result<FamilyId, Failure> {
    let Some(n) = n else {
        return Ok(name.parse()?);
    };
    let lower = name.trim().to_lowercase().replace('±', "pm").replace('\u{2032}', "'");
    let (core, transposed) = match lower.strip_suffix("^t") {
        Some(c) => (c.to_string(), true),
        None => (lower, false),
    };
    let kind = FamilyKind::ALL
        .iter()
        .copied()
        .find(|k| {
            let (p, q) = k.affixes();
            format!("{p}{q}").eq_ignore_ascii_case(&core)
        })
        .ok_or_else(|| Failure::Usage(format!("unknown family name {name:?}")))?;
    Ok(FamilyId::with_transpose(kind, n, transposed)?)
}

fn family(name: &str, n: Option<usize>, json_mode: bool) -> Outcome {
    let id = family_id(name, n)?;
    if id.kind.is_surd() {
        let s = families::generate_surd(&id)?;
        let value = json!({ "family": id.to_string(), "t": s.rows() });
        emit(json_mode, value, format!("# {id}\n{s}\n"));
    } else {
        let g = families::generate(&id)?;
        let doc = DigraphDocument::from_digraph(&g);
        let value = json!({ "family": id.to_string(), "document": doc, "matrix": g.rows() });
        emit(json_mode, value, format!("# {id}\n{doc}"));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let j = cli.json;
    match cli.command {
        Command::Check { file } => check(&load(&file)?, j),
        Command::Symmetrize { file } => symmetrize_cmd(&load(&file)?, j),
        Command::Spectrum { file, approx } => spectrum(&load(&file)?, approx, j),
        Command::Equiv { first, second } => equiv(&load(&first)?, &load(&second)?, j),
        Command::Family { name, n } => family(&name, n, j),
        Command::Classify { max_order, nonnegative, open, nonsymmetric } => {
            let mut c = SearchConstraints::cyclotomic(max_order);
            if nonnegative {
                c = c.nonnegative();
            }
            if open {
                c = c.open();
            }
            if nonsymmetric {
                c = c.nonsymmetric();
            }
            let report = classify::enumerate(&c)?;
            emit(j, report.to_json(), report.to_text());
            Ok(())
        }
        Command::Verify { which, max_order } => {
            let v = match which {
                Check::Theorem1 => verify::verify_theorem_1(max_order),
                Check::Theorem2 => verify::verify_theorem_2(max_order),
                Check::Corollary1 => verify::verify_corollary_1(max_order),
                Check::Corollary3 => verify::verify_corollary_3(max_order),
                Check::Corollary5 => verify::verify_corollary_5(max_order),
            }?;
            emit(j, serde_json::to_value(&v).expect("json"), v.to_text());
            if v.passed {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
