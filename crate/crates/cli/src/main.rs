use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use magnus_core::alexander::{self, GradedMap};
use magnus_core::cobordism;
use magnus_core::json::{self as js, document};
use magnus_core::lagrangian::LagRelation;
use magnus_core::linalg::{Mat, MatR};
use magnus_core::magnus::{mag_kernel, magnus_rep};
use magnus_core::ring::{parse_poly, Scalar};
use magnus_core::surface::PointedHermModule;
use magnus_core::verify;
use magnus_core::{CobPresentation, Error, HeegaardData, LaurentPoly, PhiValuation};

#[derive(Parser)]
#[command(name = "magnus", version, about = "Magnus and Alexander functors on cobordisms given by Heegaard data")]
struct Cli {
    /// Emit versioned JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Only parse the inputs and check their invariants
    #[arg(long, global = true)]
    validate_only: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Matrix of the skew-Hermitian form of a boundary surface
    FormMatrix {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Minus)]
        side: Side,
    },
    /// Magnus functor
    #[command(subcommand)]
    Mag(MagCmd),
    /// Alexander functor
    #[command(subcommand)]
    Alex(AlexCmd),
    /// Run a built-in property suite
    Verify {
        #[arg(value_parser = verify::SUITES)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum MagCmd {
    /// Lagrangian relation of a cobordism
    Eval { file: PathBuf },
    /// Magnus representation of a homology cobordism
    Rep { file: PathBuf },
    /// Relation of the composite, first file at the bottom
    Compose { bottom: PathBuf, top: PathBuf },
    /// Relation of the disjoint union
    Tensor { left: PathBuf, right: PathBuf },
}

#[derive(Subcommand)]
enum AlexCmd {
    /// Graded Alexander morphism, normalized
    Eval { file: PathBuf },
    /// Compare Alex with ord · Mag_W
    Factorize {
        file: PathBuf,
        /// JSON array of transversal vectors, or a path to such a file
        #[arg(long)]
        transversal: Option<String>,
    },
    /// Plücker form over the integers
    Pluecker { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Minus,
    Plus,
    Middle,
}

enum Failure {
    Domain(String),
    Certification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_certification() {
            Failure::Certification(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Out = Result<String, Failure>;

fn load(path: &Path) -> Result<HeegaardData, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {}", path.display(), e)))?;
    cobordism::parse(&src).map_err(|e| Failure::Domain(format!("{}: {}", path.display(), e)))
}

fn aligned<T: Scalar>(m: &Mat<T>) -> String {
    let cells = m.to_strings();
    let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(0);
    cells
        .iter()
        .map(|row| row.iter().map(|s| format!("{:>w$}", s, w = width)).collect::<Vec<_>>().join("  "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn emit(json: bool, kind: &str, body: Value, text: impl FnOnce() -> String) -> String {
    if json {
        serde_json::to_string_pretty(&document(kind, body)).expect("serializable")
    } else {
        text()
    }
}

fn signed(u: &LaurentPoly) -> String {
    let s = u.to_string();
    if s.starts_with('-') {
        s
    } else {
        format!("+{}", s)
    }
}

fn relation_text(rel: &LagRelation) -> String {
    format!(
        "relation genus {} -> genus {}, dimension {}\n{}",
        rel.source().genus(),
        rel.target().genus(),
        rel.space().dim(),
        aligned(&js::echelon_rows(rel.space().basis()))
    )
}

fn graded_text(m: &GradedMap) -> String {
    let mut out = Vec::new();
    for (j, b) in m.blocks().iter().enumerate() {
        let d = j as isize + m.shift();
        if b.rows() == 0 || b.cols() == 0 {
            continue;
        }
        out.push(format!("degree {} -> {}\n{}", j, d, aligned(b)));
    }
    out.join("\n")
}

fn form_matrix(file: &Path, side: Side, json: bool) -> Out {
    let h = load(file)?;
    let (g, phi): (usize, PhiValuation) = match side {
        Side::Minus => (h.g_minus(), h.phi_minus()),
        Side::Plus => (h.g_plus(), h.phi_plus()),
        Side::Middle => (h.middle_genus(), h.phi().clone()),
    };
    let m = PointedHermModule::build(g, &phi)?;
    m.certify()?;
    Ok(emit(json, "form", json!({ "object": js::object(&m), "matrix": js::matrix(m.form_matrix()) }), || aligned(m.form_matrix())))
}

fn relation(file: &Path) -> Result<(CobPresentation, LagRelation), Failure> {
    let c = load(file)?.compile();
    let rel = mag_kernel(&c)?;
    Ok((c, rel))
}

fn mag(cmd: MagCmd, json: bool) -> Out {
    match cmd {
        MagCmd::Eval { file } => {
            let (_, rel) = relation(&file)?;
            Ok(emit(json, "relation", js::relation_body(&rel), || relation_text(&rel)))
        }
        MagCmd::Rep { file } => {
            let r = magnus_rep(&load(&file)?.compile())?;
            Ok(emit(json, "matrix", json!({ "matrix": js::matrix(&r) }), || aligned(&r)))
        }
        MagCmd::Compose { bottom, top } => {
            let (_, lower) = relation(&bottom)?;
            let (_, upper) = relation(&top)?;
            let rel = upper.compose(&lower)?;
            Ok(emit(json, "relation", js::relation_body(&rel), || relation_text(&rel)))
        }
        MagCmd::Tensor { left, right } => {
            let (_, a) = relation(&left)?;
            let (_, b) = relation(&right)?;
            let rel = a.tensor(&b)?;
            Ok(emit(json, "relation", js::relation_body(&rel), || relation_text(&rel)))
        }
    }
}

fn read_transversal(arg: &str, c: &CobPresentation) -> Result<MatR, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::Domain(format!("{}: {}", arg, e)))?
    } else {
        arg.to_string()
    };
    let bad = |m: &str| Failure::Domain(format!("transversal: {}", m));
    let v: Vec<Vec<String>> = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
    let len = 2 * (c.g_minus() + c.g_plus());
    let mut w = MatR::zeros(c.nvars(), len, v.len());
    for (j, col) in v.iter().enumerate() {
        if col.len() != len {
            return Err(bad(&format!("vector {} has length {}, expected {}", j, col.len(), len)));
        }
        for (i, s) in col.iter().enumerate() {
            w[(i, j)] = parse_poly(s, c.nvars())?;
        }
    }
    Ok(w)
}

fn alex(cmd: AlexCmd, json: bool) -> Out {
    match cmd {
        AlexCmd::Eval { file } => {
            let c = load(&file)?.compile();
            let (m, u) = alexander::normalize_map(&alexander::alex_morphism(&c)?);
            let mut body = js::graded_body(&m);
            body["normalization_unit"] = json!(signed(&u));
            Ok(emit(json, "alexander", body, || format!("normalization unit: {}\n{}", signed(&u), graded_text(&m))))
        }
        AlexCmd::Factorize { file, transversal } => {
            let (c, rel) = relation(&file)?;
            let w = match transversal {
                Some(t) => read_transversal(&t, &c)?,
                None => alexander::find_transversal(&rel),
            };
            let rep = alexander::factorization_with(&c, &rel, &w)?;
            let out = emit(json, "factorization", js::factorization_body(&rep), || {
                let head = match (&rep.unit, &rep.discrepancy) {
                    (Some(u), _) => format!("unit matched: {}", signed(u)),
                    (None, d) => format!("no unit matches: {}", d.clone().unwrap_or_default()),
                };
                format!("{}\nord: {}\nAlex:\n{}\nMag_W:\n{}", head, rep.ord.normal_form(), graded_text(&rep.alex), graded_text(&rep.mag_w))
            });
            match rep.discrepancy {
                None => Ok(out),
                Some(d) => Err(Failure::Certification(format!("{}\nfactorization failed: {}", out, d))),
            }
        }
        AlexCmd::Pluecker { file } => {
            let (c, rel) = relation(&file)?;
            let p = alexander::pluecker(&rel)?;
            let ord = alexander::ord_quotient_raw(&c, &p.section)?;
            let alex = alexander::alex_morphism(&c)?;
            let rhs = p.operator.scale(&magnus_core::RingFrac::from_poly(ord.clone()));
            let sign = alexander::unit_ratio(&alex.entries(), &rhs.entries())
                .ok()
                .filter(alexander::is_sign)
                .ok_or_else(|| Failure::Certification("Plücker factorization does not match Alex up to sign".into()))?;
            let mut body = js::pluecker_body(&p);
            body["ord"] = json!(ord.to_string());
            body["sign"] = json!(signed(&sign));
            Ok(emit(json, "pluecker", body, || {
                format!("sign matched: {}\nord: {}\noperator:\n{}", signed(&sign), ord, graded_text(&p.operator))
            }))
        }
    }
}

fn validate(cli: &Cli) -> Out {
    let files: Vec<&PathBuf> = match &cli.cmd {
        Cmd::FormMatrix { file, .. } => vec![file],
        Cmd::Mag(MagCmd::Eval { file } | MagCmd::Rep { file }) => vec![file],
        Cmd::Mag(MagCmd::Compose { bottom: a, top: b } | MagCmd::Tensor { left: a, right: b }) => vec![a, b],
        Cmd::Alex(AlexCmd::Eval { file } | AlexCmd::Factorize { file, .. } | AlexCmd::Pluecker { file }) => vec![file],
        Cmd::Verify { .. } => vec![],
    };
    let mut out = Vec::new();
    for f in files {
        let c = load(f)?.compile();
        c.source().certify()?;
        c.target().certify()?;
        out.push(format!("{}: valid (genus {} -> {}, {} generators, {} relators)", f.display(), c.g_minus(), c.g_plus(), c.ngens(), c.relators().len()));
    }
    Ok(out.join("\n"))
}

fn run(cli: Cli) -> Out {
    if cli.validate_only {
        return validate(&cli);
    }
    let json = cli.json;
    match cli.cmd {
        Cmd::FormMatrix { file, side } => form_matrix(&file, side, json),
        Cmd::Mag(c) => mag(c, json),
        Cmd::Alex(c) => alex(c, json),
        Cmd::Verify { suite, seed } => {
            let rep = verify::run(&suite, seed).ok_or_else(|| Failure::Domain(format!("unknown suite '{}'", suite)))?;
            let body = json!({
                "suite": rep.suite,
                "seed": rep.seed,
                "checks": rep.checks.iter().map(|c| json!({ "name": c.name, "cases": c.cases, "passed": c.passed(), "failure": c.failure })).collect::<Vec<_>>(),
            });
            let out = emit(json, "verify", body, || rep.render().trim_end().to_string());
            if rep.passed() {
                Ok(out)
            } else {
                Err(Failure::Certification(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(s) => {
            let _ = writeln!(std::io::stdout(), "{}", s);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(1)
        }
        Err(Failure::Certification(m)) => {
            eprintln!("certification failure: {}", m);
            ExitCode::from(2)
        }
    }
}
