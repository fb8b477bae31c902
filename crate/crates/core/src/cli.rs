//! Command-line front end. Exit codes: 0 success, 1 input error,
//! 2 verification failure, 3 cap exhaustion.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::construct::{path_from_lens, validate_path, DualPath, Route};
use crate::error::Error;
use crate::evenfarey::{even_distance, iteration_index};
use crate::farey::{default_cap, farey_distance, Geodesic, Slope, SlopePath};
use crate::lens::{normalize, prop_bound_table, twisted_bound, untwisted_bound, BoundRow};
use crate::render::render_svg;
use crate::schema::{lens_bounds_json, DiagramDocument, WirePath};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "trispine", version, about = "Farey paths, lens-space bounds and trisection diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RouteArg {
    Any,
    Even,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distance and a geodesic between two slopes.
    Dist {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Search the even Farey graph.
        #[arg(long)]
        even: bool,
        /// Largest |p| or q visited (default 8 max(|p|, q, 4)).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Twisted and untwisted bounds for L(p, q), as JSON.
    LensBounds {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Build a trisection diagram from a lens space or a path file.
    Build {
        #[arg(allow_hyphen_values = true, required_unless_present = "path_file")]
        p: Option<i64>,
        #[arg(allow_hyphen_values = true, required_unless_present = "path_file")]
        q: Option<i64>,
        #[arg(long, value_enum, default_value = "any")]
        mode: RouteArg,
        /// JSON `{mode, systems}` or a diagram document.
        #[arg(long, conflicts_with_all = ["p", "q"])]
        path_file: Option<PathBuf>,
        #[arg(long)]
        cap: Option<u64>,
        /// Diagram JSON destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of bounds for every lens space with p up to pmax.
    Table {
        #[arg(long)]
        pmax: i64,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG of a genus-1 diagram.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recheck a diagram document against its own path.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExhausted { .. } => EXIT_CAP,
            Error::Unsupported(_) | Error::Mismatch(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Run the tool with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    let result = match cli.command {
        Command::Dist { a, b, even, cap } => dist(&a, &b, even, cap, out, err),
        Command::LensBounds { p, q, cap } => lens_bounds(p, q, cap, out),
        Command::Build {
            p,
            q,
            mode,
            path_file,
            cap,
            out: dest,
        } => build(p, q, mode, path_file.as_deref(), cap, dest.as_deref(), out, err),
        Command::Table { pmax, cap, out: dest } => table(pmax, cap, dest.as_deref(), out),
        Command::Render { input, out: dest } => render(&input, &dest, out),
        Command::Verify { input } => verify(&input, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_slope(s: &str) -> std::result::Result<Slope, Failure> {
    s.parse::<Slope>().map_err(Failure::from)
}

fn path_line(distance: usize, path: &SlopePath) -> String {
    if distance == 0 {
        "0".into()
    } else {
        format!("{distance} : {path}")
    }
}

fn dist(a: &str, b: &str, even: bool, cap: Option<u64>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (a, b) = (parse_slope(a)?, parse_slope(b)?);
    let cap = cap.unwrap_or_else(|| default_cap(&[a, b]));
    let found: crate::error::Result<Geodesic> = if even {
        even_distance(a, b, cap)
    } else {
        farey_distance(a, b, cap)
    };
    match found {
        Ok(g) => {
            let _ = writeln!(out, "{}", path_line(g.distance, &g.path));
            let _ = writeln!(out, "exactness {}", g.exactness);
            // the mediant iteration index can exceed the even distance, so show both
            if even && a == Slope::ZERO {
                if let Ok(k) = iteration_index(b) {
                    let _ = writeln!(out, "iteration_index {k}");
                }
            }
            Ok(())
        }
        Err(Error::CapExhausted {
            cap,
            upper_bound,
            path,
        }) => {
            let _ = writeln!(out, "{}", path_line(upper_bound, &path));
            let _ = writeln!(out, "exactness upper_bound");
            let _ = writeln!(err, "no path within cap {cap}; best known upper bound {upper_bound}");
            Err(Failure {
                code: EXIT_CAP,
                message: format!("cap {cap} exhausted"),
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn lens_bounds(p: i64, q: i64, cap: Option<u64>, out: &mut dyn Write) -> Outcome {
    let lens = normalize(p, q)?;
    let cap = cap.unwrap_or_else(|| lens.default_cap());
    let t = twisted_bound(lens, cap)?;
    let u = untwisted_bound(lens, cap)?;
    let v = lens_bounds_json(lens, &t, &u);
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json value"));
    Ok(())
}

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| input_failure(format!("{}: {e}", path.display())))
}

fn read_path_file(path: &Path) -> std::result::Result<DualPath, Failure> {
    let text = read_text(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| input_failure(format!("{}: {e}", path.display())))?;
    let wire = value.get("path").cloned().unwrap_or(value);
    let wire: WirePath = serde_json::from_value(wire).map_err(|e| input_failure(format!("{}: {e}", path.display())))?;
    let dual = wire.to_path()?;
    let violations = validate_path(&dual);
    if violations.is_empty() {
        Ok(dual)
    } else {
        let listed: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        Err(input_failure(format!("invalid path:\n{}", listed.join("\n"))))
    }
}

#[allow(clippy::too_many_arguments)]
fn build(
    p: Option<i64>,
    q: Option<i64>,
    mode: RouteArg,
    path_file: Option<&Path>,
    cap: Option<u64>,
    dest: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let path = match (path_file, p, q) {
        (Some(f), _, _) => read_path_file(f)?,
        (None, Some(p), Some(q)) => {
            let lens = normalize(p, q)?;
            let route = match mode {
                RouteArg::Any => Route::Any,
                RouteArg::Even => Route::Even,
            };
            path_from_lens(lens, route, cap.unwrap_or_else(|| lens.default_cap()))?
        }
        _ => return Err(input_failure("give p and q, or --path-file")),
    };
    let doc = DiagramDocument::build(&path)?;
    let summary = format!(
        "genus {}\n{}\n",
        doc.stats.total_genus, doc.classification.normal_form
    );
    match dest {
        Some(d) => {
            write_text(d, &doc.to_json())?;
            let _ = write!(out, "{summary}");
        }
        None => {
            let _ = write!(out, "{}", doc.to_json());
            let _ = write!(err, "{summary}");
        }
    }
    Ok(())
}

/// CSV rows in table order.
pub fn table_csv(rows: &[BoundRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["p", "q", "twisted_n", "untwisted_n", "twisted_path", "untwisted_path", "exact"])
        .expect("in-memory write");
    for r in rows {
        let exact = r.twisted.exactness == crate::farey::Exactness::Certified
            && r.untwisted.exactness == crate::farey::Exactness::Certified;
        w.write_record([
            r.lens.p().to_string(),
            r.lens.q().to_string(),
            r.twisted.n.to_string(),
            r.untwisted.n.to_string(),
            r.twisted.path.to_string(),
            r.untwisted.path.to_string(),
            exact.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 fields")
}

fn table(pmax: i64, cap: Option<u64>, dest: Option<&Path>, out: &mut dyn Write) -> Outcome {
    if pmax < 2 {
        return Err(input_failure("--pmax must be at least 2"));
    }
    if cap == Some(0) {
        return Err(Error::InvalidCap.into());
    }
    let text = table_csv(&prop_bound_table(pmax, cap)?);
    match dest {
        Some(d) => write_text(d, &text),
        None => {
            let _ = write!(out, "{text}");
            Ok(())
        }
    }
}

fn read_document(path: &Path) -> std::result::Result<DiagramDocument, Failure> {
    Ok(DiagramDocument::from_json(&read_text(path)?)?)
}

fn render(input: &Path, dest: &Path, out: &mut dyn Write) -> Outcome {
    let doc = read_document(input)?;
    let svg = render_svg(&doc).map_err(|e| match e {
        Error::Unsupported(_) => Failure {
            code: EXIT_VERIFY,
            message: "render unsupported, JSON only".into(),
        },
        other => other.into(),
    })?;
    write_text(dest, &svg)?;
    let _ = writeln!(out, "wrote {}", dest.display());
    Ok(())
}

fn verify(input: &Path, out: &mut dyn Write) -> Outcome {
    let doc = read_document(input)?;
    let issues = doc.audit();
    if issues.is_empty() {
        let _ = writeln!(out, "ok: {}", doc.classification.normal_form);
        Ok(())
    } else {
        for i in &issues {
            let _ = writeln!(out, "FAIL {i}");
        }
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!("{} check(s) failed", issues.len()),
        })
    }
}
