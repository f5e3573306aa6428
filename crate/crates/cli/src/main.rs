//! `polysurg`: command-line front end for genetic codes, intersection posets,
//! cellular surgery and homology.
//!
//! Output is JSON (or DOT for posets) on stdout; errors go to stderr.
//! Exit codes: 0 success, 2 user error, 3 internal audit failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polysurg::coxeter::ComplexJson;
use polysurg::genetics::{genetic_code, realize, saturated_chain, GeneticCode, LengthVector};
use polysurg::homology::{cell_homology, homology, SimplicialComplex};
use polysurg::posets::{comb_surgery, intersection_poset, IntersectionElement, SetPartition, Sheet};
use polysurg::surgery::{figures, run_chain, Mode};
use polysurg::{Error, Result, Subset};

#[derive(Parser)]
#[command(name = "polysurg", version, about = "Polygon spaces by cellular surgery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genetic code of a length vector.
    Gencode {
        /// Side lengths (integers or rationals like 3/2).
        #[arg(required = true, allow_hyphen_values = true)]
        lengths: Vec<String>,
    },
    /// Saturated chain from the trivial code up to CODE.
    Chain {
        code: String,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Surgery along the saturated chain of CODE.
    Run {
        /// Genetic code such as "<125>"; not needed with --figures.
        code: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        projective: bool,
        #[arg(long, default_value = "collapse")]
        mode: Mode,
        /// Write the cell complex after every step as JSON into DIR.
        #[arg(long, value_name = "DIR")]
        dump_cells: Option<PathBuf>,
        /// Print the f-vector table of the standard examples instead.
        #[arg(long)]
        figures: bool,
    },
    /// Intersection poset of CODE as DOT (or JSON).
    Poset {
        code: String,
        #[arg(long)]
        m: Option<usize>,
        /// Only the projective poset, without the bar sheet.
        #[arg(long)]
        projective: bool,
        /// Keep the bar sheet (the default unless --projective or --surgery).
        #[arg(long, conflicts_with = "projective")]
        bar: bool,
        /// Combinatorial surgery along the partition with this block, e.g. 345.
        #[arg(long, value_name = "BLOCK")]
        surgery: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Homology of a complex read from a JSON file.
    Homology { file: PathBuf },
    /// A length vector with the given genetic code, or UNREALIZABLE.
    Realize {
        code: String,
        #[arg(long)]
        m: Option<usize>,
    },
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn parse_code(text: &str, m: Option<usize>) -> Result<GeneticCode> {
    let code = GeneticCode::parse(text, m)?;
    code.ensure_valid()?;
    Ok(code)
}

fn parse_block(text: &str, m: usize) -> Result<Subset> {
    let items: Vec<usize> = if text.contains(',') {
        text.trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad element {s:?}"))))
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad element {c:?}"))))
            .collect::<Result<_>>()?
    };
    if items.iter().any(|&i| i == 0 || i > m) {
        return Err(Error::Parse(format!("block {text} is not a subset of [{m}]")));
    }
    Ok(Subset::from_elements(items))
}

fn gencode(lengths: &[String]) -> Result<String> {
    if lengths.len() < 3 {
        return Err(Error::InvalidLengths(format!("need at least 3 lengths, got {}", lengths.len())));
    }
    Ok(json(&genetic_code(&LengthVector::parse(lengths)?)?))
}

fn chain(code: &GeneticCode) -> Result<String> {
    let c = saturated_chain(code)?;
    let out = serde_json::json!({
        "codes": c.codes.iter().map(|g| g.notation()).collect::<Vec<_>>(),
        "added": c.added,
        "signature": c.signature(),
    });
    Ok(json(&out))
}

fn dump(dir: &Path, trace: &polysurg::surgery::SurgeryTrace) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    for (i, k) in trace.complexes.iter().enumerate() {
        fs::write(dir.join(format!("step_{i}.json")), json(&k.to_json())).map_err(io)?;
    }
    Ok(())
}

fn figure_table() -> Result<String> {
    let mut out = format!("{:<32} {:>14} {:>5}  {:<20} {}\n", "complex", "f-vector", "chi", "2-cells by sides", "space");
    for r in figures()? {
        let f = r.f_vector.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let shapes = r.shapes.iter().map(|(k, v)| format!("{v}x{k}")).collect::<Vec<_>>().join(" ");
        out += &format!(
            "{:<32} {:>14} {:>5}  {:<20} {}\n",
            r.name,
            format!("({f})"),
            r.euler_characteristic,
            shapes,
            r.space.unwrap_or_else(|| "?".into())
        );
    }
    Ok(out.trim_end().to_string())
}

fn poset(code: &GeneticCode, projective: bool, surgery: Option<&str>, as_json: bool) -> Result<String> {
    let name = code.notation();
    let Some(block) = surgery else {
        let p = intersection_poset(code, projective)?;
        return Ok(if as_json { json(&p.to_json()) } else { p.to_dot(&name, IntersectionElement::is_bar) });
    };
    // surgery acts on the projective poset
    let m = code.m();
    let p = intersection_poset(code, true)?;
    let target = IntersectionElement { partition: SetPartition::with_block(m, parse_block(block, m)?)?, sheet: Sheet::Plain };
    let x = (0..p.len())
        .find(|&i| p.label(i) == &target)
        .ok_or_else(|| Error::NotApplicable(format!("{} is not an element of the poset of {name}", target.partition)))?;
    let cs = comb_surgery(&p, x)?;
    Ok(if as_json { json(&cs.poset.to_json()) } else { cs.poset.to_dot(&format!("CS {} {name}", target.partition), |_| false) })
}

fn homology_file(path: &Path) -> Result<String> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let report = if value.get("cells").is_some() {
        let cj: ComplexJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        let k = cj.to_complex()?;
        k.audit()?;
        cell_homology(&k)?
    } else {
        // {"num_vertices": n, "faces": [[..], ..]}
        let n = value.get("num_vertices").and_then(|v| v.as_u64());
        let faces: Option<Vec<Vec<usize>>> =
            value.get("faces").and_then(|f| serde_json::from_value(f.clone()).ok());
        let (Some(n), Some(faces)) = (n, faces) else {
            return Err(Error::Parse("expected a cell complex {\"cells\": ..} or {\"num_vertices\", \"faces\"}".into()));
        };
        homology(&SimplicialComplex::from_faces(n as usize, &faces)?)?
    };
    Ok(json(&report))
}

fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Gencode { lengths } => gencode(&lengths),
        Command::Chain { code, m } => chain(&parse_code(&code, m)?),
        Command::Run { figures: true, .. } => figure_table(),
        Command::Run { code, m, projective, mode, dump_cells, .. } => {
            let code = code.ok_or_else(|| Error::Parse("a genetic code is required unless --figures is given".into()))?;
            let trace = run_chain(&parse_code(&code, m)?, projective, mode)?;
            if let Some(dir) = dump_cells {
                dump(&dir, &trace)?;
            }
            Ok(json(&trace))
        }
        Command::Poset { code, m, projective, bar: _, surgery, json } => {
            poset(&parse_code(&code, m)?, projective, surgery.as_deref(), json)
        }
        Command::Homology { file } => homology_file(&file),
        Command::Realize { code, m } => match realize(&parse_code(&code, m)?)? {
            Some(alpha) => Ok(alpha.to_strings().join(" ")),
            None => Ok("UNREALIZABLE".into()),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(out) => {
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_audit_failure() { 3 } else { 2 })
        }
    }
}
