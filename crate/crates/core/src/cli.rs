//! Command-line front end. Exit codes: 0 success, 1 parse or domain error,
//! 2 verification failure.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cells::{enumerate_z, induce_cell, restrict_cell, verify_induction, verify_restriction, CellId, CellReport};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::families::family_rim;
use crate::lifting::LiftReport;
use crate::perm::Permutation;
use crate::rs::{is_admissible, rs_pair, subsequence_type};
use crate::shapes::Composition;
use crate::verify::verify;

#[derive(Parser, Debug)]
#[command(name = "klcells", version, about = "Right cells of symmetric groups via generalized diagrams")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Ascii, global = true)]
    format: Format,
    /// Spread verification across threads.
    #[arg(long, global = true)]
    parallel: bool,
    /// Size bound for `verify` when no positional bound is given.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The rim Y(λ), its special part and its diagrams.
    Rim { lambda: String },
    /// The whole cell w_J(λ)Z(λ) with reduced words.
    Cell { lambda: String },
    /// The set Z(λ).
    Zset { lambda: String },
    /// Robinson–Schensted tableaux of a permutation.
    Rs {
        perm: String,
        /// Degree for cycle or word input.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Diagram utilities.
    Diagram {
        #[command(subcommand)]
        action: DiagramAction,
    },
    /// The canonical diagram D(d, λ).
    Dlambda { perm: String, lambda: String },
    /// Lifting maps.
    Lift {
        #[command(subcommand)]
        action: LiftAction,
    },
    /// Induce the cell of w_J(λ) to the next symmetric group.
    Induce { lambda: String },
    /// Restrict the cell of w_J(λ) to the previous symmetric group.
    Restrict { lambda: String },
    /// Closed-form rim for a composition in one of the solved families.
    Families { lambda: String },
    /// Run every invariant over all compositions up to a size.
    Verify { n: Option<usize> },
}

#[derive(Subcommand, Debug)]
enum DiagramAction {
    /// Compositions, specialness, admissibility and subsequence type.
    Info { diagram: String },
    /// The permutation w_D.
    Wd { diagram: String },
}

#[derive(Subcommand, Debug)]
enum LiftAction {
    /// θ_*: Z(λ) → Z(λ_*).
    Star { lambda: String },
    /// θ^*: Z(λ) → Z(λ^*).
    Upper { lambda: String },
    /// θ: Z(λ) → Z(λ^(k)).
    K { lambda: String, k: usize },
}

enum Outcome {
    Ok(String),
    VerifyFailed(String),
}

/// Parse `args` (including the program name) and run.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(Outcome::Ok(text)) => {
            let _ = write!(out, "{text}");
            0
        }
        Ok(Outcome::VerifyFailed(text)) => {
            let _ = write!(out, "{text}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn composition(s: &str) -> Result<Composition> {
    s.parse()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn list(title: &str, perms: &[Permutation]) -> String {
    let mut s = format!("{title} ({}):\n", perms.len());
    for p in perms {
        s.push_str(&format!("  {p}  {}\n", p.cycle_string()));
    }
    s
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let json = cli.format == Format::Json;
    let text = match &cli.command {
        Command::Rim { lambda } => {
            let r = CellReport::new(&composition(lambda)?)?;
            if json {
                let words: serde_json::Map<String, Value> =
                    r.y.iter().map(|y| (y.to_string(), json!(r.reduced_words[y]))).collect();
                pretty(&json!({
                    "lambda": r.lambda, "Y": r.y, "Ys": r.y_s, "E": r.e, "reduced_words": words,
                }))
            } else {
                let mut s = format!("λ = {}\n", r.lambda);
                s.push_str(&format!("Y ({}):\n", r.y.len()));
                for (y, d) in r.y.iter().zip(&r.e) {
                    let special = if r.y_s.contains(y) { "  special" } else { "" };
                    s.push_str(&format!("  {y}  {}  word {}{special}\n", y.cycle_string(), r.reduced_words[y]));
                    s.push_str(&indent(&d.to_ascii()));
                }
                s.push_str(&list("Ys", &r.y_s));
                s
            }
        }
        Command::Cell { lambda } => {
            let r = CellReport::new(&composition(lambda)?)?;
            if json {
                pretty(&r.to_json())
            } else {
                let mut s = format!("λ = {}, |cell| = {}, w_J = {}\n", r.lambda, r.z.len(), r.wj_word);
                for (e, w) in r.z.iter().zip(&r.cell_elements) {
                    s.push_str(&format!("  {w}  e = {e}  word {}\n", r.cell_word(e).expect("e in Z")));
                }
                s
            }
        }
        Command::Zset { lambda } => {
            let lambda = composition(lambda)?;
            let z = enumerate_z(&lambda);
            if json {
                pretty(&json!({ "lambda": lambda, "Z": z }))
            } else {
                format!("λ = {lambda}\n{}", list("Z", &z))
            }
        }
        Command::Rs { perm, degree } => {
            let w = Permutation::parse(perm, *degree)?;
            let (p, q) = rs_pair(&w);
            if json {
                pretty(&json!({ "perm": w, "P": p, "Q": q, "shape": p.shape() }))
            } else {
                format!("w = {w}\nshape {}\nP:\n{}Q:\n{}", p.shape(), indent(&p.to_ascii()), indent(&q.to_ascii()))
            }
        }
        Command::Diagram { action: DiagramAction::Info { diagram } } => {
            let d = Diagram::parse(diagram)?;
            let info = json!({
                "diagram": d,
                "row_composition": d.row_composition(),
                "column_composition": d.column_composition(),
                "special": d.is_special(),
                "admissible": is_admissible(&d),
                "subsequence_type": subsequence_type(&d),
                "w": d.w(),
            });
            if json {
                pretty(&info)
            } else {
                format!(
                    "{}rows {}  columns {}\nspecial {}  admissible {}\nsubsequence type {}\nw_D = {}\n",
                    d.to_ascii(),
                    d.row_composition(),
                    d.column_composition(),
                    d.is_special(),
                    is_admissible(&d),
                    subsequence_type(&d),
                    d.w()
                )
            }
        }
        Command::Diagram { action: DiagramAction::Wd { diagram } } => {
            let d = Diagram::parse(diagram)?;
            let w = d.w();
            if json {
                pretty(&json!({ "w": w, "reduced_word": w.reduced_word() }))
            } else {
                format!("{w}\n")
            }
        }
        Command::Dlambda { perm, lambda } => {
            let lambda = composition(lambda)?;
            let d = Permutation::parse(perm, Some(lambda.size()))?;
            let diagram = Diagram::canonical(&d, &lambda)?;
            if json {
                pretty(&json!({ "perm": d, "lambda": lambda, "diagram": diagram }))
            } else {
                diagram.to_ascii()
            }
        }
        Command::Lift { action } => {
            let report = match action {
                LiftAction::Star { lambda } => LiftReport::lower_star(&composition(lambda)?)?,
                LiftAction::Upper { lambda } => LiftReport::upper_star(&composition(lambda)?)?,
                LiftAction::K { lambda, k } => LiftReport::bump(&composition(lambda)?, *k)?,
            };
            if json {
                pretty(&report.to_json())
            } else {
                let mut s = format!("{} -> {}", report.lambda, report.target);
                if let Some(c) = report.condition {
                    s.push_str(&format!("  condition {c}"));
                }
                s.push('\n');
                for p in &report.pairs {
                    s.push_str(&format!("  {} -> {}  via {}\n", p.z, p.z_prime, p.connector.cycle_string()));
                }
                for (name, ok) in &report.checks {
                    s.push_str(&format!("  {name}: {ok}\n"));
                }
                s
            }
        }
        Command::Induce { lambda } => {
            let id = CellId::of_composition(&composition(lambda)?);
            let kids = induce_cell(&id);
            let verified = verify_induction(&id);
            if json {
                pretty(&json!({ "cell": id, "children": kids, "verified": verified }))
            } else {
                let mut s = format!("Q =\n{}", indent(&id.tableau().to_ascii()));
                for k in &kids {
                    s.push_str(&format!("corner {:?}:\n{}", k.corner, indent(&k.cell.tableau().to_ascii())));
                }
                s.push_str(&format!("union identity: {verified}\n"));
                s
            }
        }
        Command::Restrict { lambda } => {
            let id = CellId::of_composition(&composition(lambda)?);
            let pieces = restrict_cell(&id)?;
            let verified = verify_restriction(&id)?;
            if json {
                pretty(&json!({ "cell": id, "pieces": pieces, "verified": verified }))
            } else {
                let mut s = format!("Q =\n{}", indent(&id.tableau().to_ascii()));
                for p in &pieces {
                    s.push_str(&format!(
                        "corner {:?}, i = {}, d = {}:\n{}",
                        p.corner,
                        p.expelled,
                        p.d.cycle_string(),
                        indent(&p.cell.tableau().to_ascii())
                    ));
                }
                s.push_str(&format!("disjoint union identity: {verified}\n"));
                s
            }
        }
        Command::Families { lambda } => {
            let f = family_rim(&composition(lambda)?)?;
            let matches = f.matches_rim_y();
            if json {
                let mut v = f.to_json()?;
                v["matches_rim_Y"] = json!(matches);
                pretty(&v)
            } else {
                format!(
                    "λ = {}  family {}  predicted |Y| = {}\n{}matches general rim: {matches}\n",
                    f.lambda,
                    f.family,
                    f.predicted_size,
                    list("Y", &f.rim)
                )
            }
        }
        Command::Verify { n } => {
            let n = n.or(cli.max_n).unwrap_or(5);
            if n == 0 {
                return Err(Error::OutOfRange { index: 0, max: usize::MAX });
            }
            let report = verify(n, cli.parallel);
            let text = if json { pretty(&report.to_json()) } else { report.to_ascii() };
            return Ok(if report.passed() { Outcome::Ok(text) } else { Outcome::VerifyFailed(text) });
        }
    };
    Ok(Outcome::Ok(text))
}
