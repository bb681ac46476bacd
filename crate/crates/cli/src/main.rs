//! Command line front end: adjoints, residuals, order checks, and residues.

mod doc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use doc::{parse_rat, PolytopeDocument};
use num::Signed;
use polyadj_core::adjoint::{adjoint, verify_orders, AdjointMethod};
use polyadj_core::arrangement::Arrangement;
use polyadj_core::poly::parse_poly;
use polyadj_core::polytope::Polytope;
use polyadj_core::residue::{
    canonical_form, default_pivot, form_ratio, residue_along, PolytopeForm,
};
use polyadj_core::{Error, QMatrix, Rat};
use serde_json::json;
use std::io::Read;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "polyadj",
    version,
    about = "Adjoint polynomials of rational convex polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the facet inequalities of the polytope
    Facets(CommonArgs),
    /// Print the vertices of the polytope
    Vertices(CommonArgs),
    /// List the residual points at which the adjoint must vanish
    Residual(CommonArgs),
    /// Compute the adjoint polynomial
    Adjoint {
        #[command(flatten)]
        common: CommonArgs,
        /// Computation route
        #[arg(long, value_enum, default_value_t)]
        method: Method,
    },
    /// Check a polynomial against the prescribed vanishing orders
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// File holding the candidate polynomial
        #[arg(long)]
        poly: PathBuf,
    },
    /// Residue of the canonical form along a facet
    Residue {
        #[command(flatten)]
        common: CommonArgs,
        /// Facet index into the inequality list
        #[arg(long, required_unless_present = "recurse")]
        facet: Option<usize>,
        /// Walk the whole residue tree and report the verdict
        #[arg(long)]
        recurse: bool,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Polytope document file; stdin when omitted or "-"
    doc: Option<PathBuf>,
    /// Apply a projective change of coordinates from a matrix file first
    #[arg(long)]
    chart: Option<PathBuf>,
    /// Output style
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Doc,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum, Default)]
enum Method {
    Warren,
    Interpolate,
    #[default]
    Both,
}

impl Method {
    fn to_core(self) -> AdjointMethod {
        match self {
            Method::Warren => AdjointMethod::Warren,
            Method::Interpolate => AdjointMethod::Interpolation,
            Method::Both => AdjointMethod::Both,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PolyParse(_)
        | Error::InvalidInput(_)
        | Error::DimensionMismatch(_)
        | Error::IndexRange(_)
        | Error::RedundantInequality(_)
        | Error::ZeroPolynomial
        | Error::ZeroVector
        | Error::InvalidPivot
        | Error::NotSquare => 2,
        Error::NotFullDimensional
        | Error::UnboundedOrEmpty
        | Error::NotInterior
        | Error::VertexAtInfinity
        | Error::NotFacetForm
        | Error::NonIncidentFacets => 3,
        Error::RouteDisagreement
        | Error::KernelDimension(_)
        | Error::Internal(_)
        | Error::NotDivisible
        | Error::SingularMatrix
        | Error::ZeroDivisor => 4,
        Error::NumeratorVanishes => 5,
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Error> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn read_chart(path: &Path, n: usize) -> Result<QMatrix, Error> {
    let text = read_input(Some(path))?;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<Rat>, Error> = line.split_whitespace().map(parse_rat).collect();
        rows.push(row?);
    }
    if rows.len() != n + 1 || rows.iter().any(|r| r.len() != n + 1) {
        return Err(Error::InvalidInput(format!(
            "chart must be a {0} by {0} matrix",
            n + 1
        )));
    }
    QMatrix::from_rows(rows)
}

fn load_polytope(common: &CommonArgs) -> Result<Polytope, Error> {
    let text = read_input(common.doc.as_deref())?;
    let doc = PolytopeDocument::from_json(&text)?;
    let p = doc.to_polytope()?;
    match &common.chart {
        Some(path) => {
            let m = read_chart(path, p.dim())?;
            p.apply_projective_map(&m)
        }
        None => Ok(p),
    }
}

fn print_doc(p: &Polytope) -> Result<(), Error> {
    let doc = PolytopeDocument::from_polytope(p);
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| Error::Internal(format!("serialize: {e}")))?;
    println!("{text}");
    Ok(())
}

fn cmd_facets(common: &CommonArgs) -> Result<i32, Error> {
    let p = load_polytope(common)?;
    match common.format {
        Format::Doc => print_doc(&p)?,
        Format::Text => {
            for f in p.facets() {
                let row: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
                println!("{}", row.join(" "));
            }
        }
    }
    Ok(0)
}

fn cmd_vertices(common: &CommonArgs) -> Result<i32, Error> {
    let p = load_polytope(common)?;
    match common.format {
        Format::Doc => print_doc(&p)?,
        Format::Text => {
            for v in p.vertices() {
                let row: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                println!("{}", row.join(" "));
            }
        }
    }
    Ok(0)
}

fn cmd_residual(common: &CommonArgs) -> Result<i32, Error> {
    let p = load_polytope(common)?;
    let arr = Arrangement::new(&p);
    let flats = arr.point_residual()?;
    match common.format {
        Format::Doc => {
            let points: Vec<Vec<String>> = flats
                .iter()
                .map(|f| {
                    f.point()
                        .expect("rank-n flat has a point")
                        .coords()
                        .iter()
                        .map(|c| c.to_string())
                        .collect()
                })
                .collect();
            let orders: Vec<usize> = flats.iter().map(|f| f.order).collect();
            println!("{}", json!({ "points": points, "orders": orders }));
        }
        Format::Text => {
            for f in &flats {
                let point = f.point().expect("rank-n flat has a point");
                let coords: Vec<String> = point.coords().iter().map(|c| c.to_string()).collect();
                println!("{} {}", coords.join(" "), f.order);
            }
        }
    }
    Ok(0)
}

fn cmd_adjoint(common: &CommonArgs, method: Method) -> Result<i32, Error> {
    let p = load_polytope(common)?;
    let adj = adjoint(&p, method.to_core())?;
    match common.format {
        Format::Doc => println!("{}", json!({ "adjoint": adj.to_string() })),
        Format::Text => println!("{adj}"),
    }
    Ok(0)
}

fn cmd_verify(common: &CommonArgs, poly_path: &Path) -> Result<i32, Error> {
    let p = load_polytope(common)?;
    let text = read_input(Some(poly_path))?;
    let n = p.dim();
    let candidate = parse_poly(text.trim(), n + 1)?;
    let expected = (p.facets().len() - n - 1) as u32;
    if candidate.degree() != expected {
        return Err(Error::InvalidInput(format!(
            "polynomial has degree {}, adjoint degree is {expected}",
            candidate.degree()
        )));
    }
    let rows = verify_orders(&p, &candidate)?;
    let all_ok = rows.iter().all(|r| r.satisfied);
    match common.format {
        Format::Doc => {
            let entries: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "facets": r.members,
                        "rank": r.rank,
                        "nullity": r.nullity,
                        "order": r.order,
                        "mu": r.mu,
                        "satisfied": r.satisfied,
                        "strict": r.satisfied && r.mu as usize > r.order,
                    })
                })
                .collect();
            println!("{}", json!({ "rows": entries, "satisfied": all_ok }));
        }
        Format::Text => {
            for r in &rows {
                let members: Vec<String> = r.members.iter().map(|m| m.to_string()).collect();
                let verdict = if !r.satisfied {
                    "FAIL"
                } else if r.mu as usize > r.order {
                    "ok strict"
                } else {
                    "ok"
                };
                println!(
                    "facets {} rank {} nullity {} order {} mu {} {verdict}",
                    members.join(","),
                    r.rank,
                    r.nullity,
                    r.order,
                    r.mu
                );
            }
            if all_ok {
                println!("all orders satisfied");
            } else {
                let failed = rows.iter().filter(|r| !r.satisfied).count();
                println!("{failed} flats unsatisfied");
            }
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_residue_once(common: &CommonArgs, h: usize) -> Result<i32, Error> {
    let p = load_polytope(common)?;
    let form = canonical_form(&p)?;
    let pivot = default_pivot(&form, h)?;
    let (_, res) = residue_along(&p, &form, h, pivot)?;
    match common.format {
        Format::Doc => {
            let denominators: Vec<String> =
                res.denominator().iter().map(|d| d.to_string()).collect();
            println!(
                "{}",
                json!({ "numerator": res.numerator().to_string(), "denominators": denominators })
            );
        }
        Format::Text => {
            println!("numerator {}", res.numerator());
            for d in res.denominator() {
                println!("denominator {d}");
            }
        }
    }
    Ok(0)
}

/// Prints one line per node of the residue tree.
fn walk_residues(p: &Polytope, form: &PolytopeForm, depth: usize) -> Result<(), Error> {
    let indent = "  ".repeat(depth);
    if p.dim() == 1 {
        for h in 0..2 {
            let pivot = default_pivot(form, h)?;
            let (_, res) = residue_along(p, form, h, pivot)?;
            println!("{indent}endpoint {h} value {}", res.value()?);
        }
        return Ok(());
    }
    for h in 0..p.facets().len() {
        let pivot = default_pivot(form, h)?;
        let (sub, res) = residue_along(p, form, h, pivot)?;
        let ratio = form_ratio(&res, &canonical_form(&sub)?)?;
        println!(
            "{indent}facet {h} dim {} ratio {ratio} to the facet canonical form",
            sub.dim()
        );
        walk_residues(&sub, &res, depth + 1)?;
    }
    Ok(())
}

fn cmd_residue_recurse(common: &CommonArgs) -> Result<i32, Error> {
    let p = load_polytope(common)?;
    // Validates cancellation and uniform terminal magnitude across the tree.
    let terminal = polyadj_core::residue::recursion_check(&p)?;
    match common.format {
        Format::Doc => {
            let magnitude = terminal
                .first()
                .map(|v| v.abs())
                .expect("recursion check returns at least one terminal");
            println!(
                "{}",
                json!({
                    "terminal_magnitude": magnitude.to_string(),
                    "values": terminal.len(),
                    "ok": true,
                })
            );
        }
        Format::Text => {
            let form = canonical_form(&p)?;
            walk_residues(&p, &form, 0)?;
            println!(
                "recursion check: pass ({} terminal values, magnitude {})",
                terminal.len(),
                terminal[0].abs()
            );
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Facets(common) => cmd_facets(common),
        Command::Vertices(common) => cmd_vertices(common),
        Command::Residual(common) => cmd_residual(common),
        Command::Adjoint { common, method } => cmd_adjoint(common, *method),
        Command::Verify { common, poly } => cmd_verify(common, poly),
        Command::Residue {
            common,
            facet,
            recurse,
        } => {
            if *recurse {
                cmd_residue_recurse(common)
            } else {
                cmd_residue_once(common, facet.expect("clap enforces --facet"))
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}
