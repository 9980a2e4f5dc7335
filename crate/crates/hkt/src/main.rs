use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hkt::format::{self, InputError, LoadError, RawEntry};
use hkt::{render, verify};
use hkt_core::catalog::{self, CatalogEntry, ConstructionKind, Origin};
use hkt_core::constructions::{
    iterate_rho, iterate_tangent, kaehler_to_hkt, lift_connection, rho_extension, tangent_algebra,
};
use hkt_core::geometry::{classify, flatness_witness, nijenhuis, GeomStructure, Metric};
use hkt_core::Matrix;

/// Exact HKT geometry on Lie algebras over Q(sqrt2).
#[derive(Parser)]
#[command(name = "hkt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural validation with witnesses.
    Check {
        /// A file path or builtin:NAME.
        input: String,
    },
    /// Every classification flag and the exact torsion forms.
    Report {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Builds a new structure and prints it in the catalog format.
    Construct {
        kind: Kind,
        input: String,
        /// Name of the connection (or quaternionic representation) to use.
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the acceptance table.
    VerifyPaper {
        /// A criterion id (AC1..AC8) or a built-in name.
        #[arg(long)]
        case: Option<String>,
    },
    /// Lists the built-in structures.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tangent,
    Rho,
    KaehlerDouble,
    Iterate,
}

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check { input } => cmd_check(&input),
        Command::Report { input, json } => cmd_report(&input, json),
        Command::Construct {
            kind,
            input,
            name,
            out,
        } => cmd_construct(kind, &input, &name, out),
        Command::VerifyPaper { case } => cmd_verify(case.as_deref()),
        Command::List => cmd_list(),
    };
    ExitCode::from(code)
}

fn input_error(e: &InputError) -> u8 {
    eprintln!("error: {e}");
    match e {
        InputError::Load(LoadError::Semantic(_)) => FAIL,
        _ => USAGE,
    }
}

fn load(input: &str) -> Result<CatalogEntry, u8> {
    format::load(input).map_err(|e| input_error(&e))
}

fn line(ok: bool, what: &str, detail: &str) -> bool {
    let mark = if ok { "pass" } else { "FAIL" };
    if detail.is_empty() {
        println!("{mark}  {what}");
    } else {
        println!("{mark}  {what}: {detail}");
    }
    ok
}

fn info(what: &str, detail: &str) {
    println!("info  {what}: {detail}");
}

fn cmd_check(input: &str) -> u8 {
    let raw = match input.strip_prefix("builtin:") {
        Some(name) => match catalog::builtin(name) {
            Ok(e) => RawEntry::from_entry(&e),
            Err(e) => return input_error(&InputError::UnknownBuiltin(e)),
        },
        None => {
            let text = match std::fs::read_to_string(input) {
                Ok(t) => t,
                Err(e) => return input_error(&InputError::Io(input.into(), e)),
            };
            match format::parse_raw(&text) {
                Ok(r) => r,
                Err(e) => return input_error(&InputError::Load(e.into())),
            }
        }
    };
    println!("{} (dim {})", raw.name, raw.dim);
    let d = match raw.decode() {
        Ok(d) => d,
        Err(LoadError::Semantic(e)) => {
            line(false, "bracket table", &e.to_string());
            return FAIL;
        }
        Err(e) => return input_error(&InputError::Load(e)),
    };
    let n = raw.dim;
    let mut ok = line(true, "bracket table", "");
    let jd = d.algebra.jacobi_defect();
    ok &= match jd.witness {
        None => line(true, "Jacobi identity", ""),
        Some((i, j, k)) => line(
            false,
            "Jacobi identity",
            &format!("fails on (e{i}, e{j}, e{k}), residual {:?}", jd.residual),
        ),
    };
    let metric = match &d.metric {
        None => {
            info("metric", "none");
            None
        }
        Some(g) => match Metric::new(g.clone()) {
            Ok(m) => {
                line(true, "metric symmetric positive definite", "");
                Some(m)
            }
            Err(e) => {
                ok = line(false, "metric symmetric positive definite", &e.to_string());
                None
            }
        },
    };
    let minus_id = -&Matrix::identity(n);
    for (a, j) in d.complex.iter().enumerate() {
        let name = format!("J{}", a + 1);
        ok &= line((j * j) == minus_id, &format!("{name}^2 = -id"), "");
        if let Some(g) = &metric {
            let w = g.invariance_witness(j);
            ok &= line(
                w.is_none(),
                &format!("metric {name}-invariant"),
                &w.map(|(i, k)| format!("fails on (e{i}, e{k})"))
                    .unwrap_or_default(),
            );
        }
    }
    if let [j1, j2, j3] = d.complex.as_slice() {
        ok &= line(&(j1 * j2) == j3, "J1 J2 = J3", "");
        ok &= line((j1 * j2) == -&(j2 * j1), "J1 J2 = -J2 J1", "");
    }
    if !ok {
        return FAIL;
    }
    // structural validation passed; the rest is descriptive
    for (a, j) in d.complex.iter().enumerate() {
        match nijenhuis(j, &d.algebra) {
            Ok(t) => match t.witness() {
                None => info(&format!("J{} integrable", a + 1), "yes"),
                Some((i, k)) => info(
                    &format!("J{} integrable", a + 1),
                    &format!("no, Nijenhuis tensor nonzero on (e{i}, e{k})"),
                ),
            },
            Err(e) => info(&format!("J{} integrable", a + 1), &e.to_string()),
        }
    }
    let entry = match raw.build() {
        Ok(e) => e,
        Err(e) => {
            line(false, "entry", &e.to_string());
            return FAIL;
        }
    };
    let s = &entry.structure;
    for (name, c) in &entry.connections {
        let flat = flatness_witness(c, s.algebra()).map_or("flat".to_string(), |(i, j)| {
            format!("curvature nonzero on (e{i}, e{j})")
        });
        let cx = c
            .complex_witness(s.complex_structures())
            .map_or("commutes with every J".to_string(), |(i, a)| {
                format!("D_e{i} does not commute with J{a}")
            });
        let skew = match s.metric() {
            Some(g) => c
                .skew_witness(g)
                .map_or("metric".to_string(), |i| format!("D_e{i} not skew")),
            None => "no metric".into(),
        };
        info(
            &format!("connection {name}"),
            &format!("{flat}; {cx}; {skew}"),
        );
    }
    for (name, r) in &entry.quat_reps {
        match r.validate(s.algebra()) {
            Ok(()) => info(
                &format!("representation {name}"),
                "quaternionic homomorphism",
            ),
            Err(e) => info(&format!("representation {name}"), &e.to_string()),
        }
    }
    PASS
}

fn cmd_report(input: &str, json: bool) -> u8 {
    let entry = match load(input) {
        Ok(e) => e,
        Err(c) => return c,
    };
    match classify(&entry.structure) {
        Ok(r) => {
            if json {
                print!("{}", render::to_json(&entry.name, &r));
            } else {
                print!("{}", render::to_text(&entry.name, &r));
            }
            PASS
        }
        Err(e) => {
            eprintln!("error: {e}");
            FAIL
        }
    }
}

fn construct(kind: Kind, base: &CatalogEntry, name: &str) -> Result<CatalogEntry, (u8, String)> {
    let semantic = |e: hkt_core::Error| (FAIL, e.to_string());
    let missing = || {
        (
            USAGE,
            format!(
                "{} has no connection or representation named {name:?}",
                base.name
            ),
        )
    };
    let s = &base.structure;
    let mut connections = Vec::new();
    let (structure, ck): (GeomStructure, ConstructionKind) = match kind {
        Kind::Tangent => {
            let d = base.connection(name).ok_or_else(missing)?;
            connections.push(("D_lift".to_string(), lift_connection(d)));
            (
                tangent_algebra(s, d).map_err(semantic)?,
                ConstructionKind::Tangent,
            )
        }
        Kind::Rho => {
            let r = base.quat_rep(name).ok_or_else(missing)?;
            (
                rho_extension(s, r).map_err(semantic)?,
                ConstructionKind::Rho,
            )
        }
        Kind::KaehlerDouble => {
            let d = base.connection(name).ok_or_else(missing)?;
            (
                kaehler_to_hkt(s, d).map_err(semantic)?,
                ConstructionKind::KaehlerDouble,
            )
        }
        Kind::Iterate => {
            let out = if let Some(d) = base.connection(name) {
                let t = tangent_algebra(s, d).map_err(semantic)?;
                iterate_tangent(&t, d).map_err(semantic)?
            } else if let Some(r) = base.quat_rep(name) {
                let t = rho_extension(s, r).map_err(semantic)?;
                iterate_rho(&t, s.dim(), r).map_err(semantic)?
            } else {
                return Err(missing());
            };
            (out, ConstructionKind::Iterate)
        }
    };
    let origin = Origin {
        kind: ck,
        base: base.name.clone(),
        using: name.to_string(),
    };
    // reuse the catalog name when this construction is a built-in
    let known = catalog::BUILTIN_NAMES
        .iter()
        .filter_map(|n| catalog::builtin(n).ok())
        .find(|e| e.origin.as_ref() == Some(&origin))
        .map(|e| e.name);
    Ok(CatalogEntry {
        name: known.unwrap_or_else(|| format!("{}_{}", base.name, ck.as_str().replace('-', "_"))),
        structure,
        connections,
        quat_reps: Vec::new(),
        parameters: Vec::new(),
        origin: Some(origin),
        expected: Vec::new(),
    })
}

fn cmd_construct(kind: Kind, input: &str, name: &str, out: Option<PathBuf>) -> u8 {
    let base = match load(input) {
        Ok(e) => e,
        Err(c) => return c,
    };
    let entry = match construct(kind, &base, name) {
        Ok(e) => e,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    let text = format::serialize(&entry);
    match out {
        None => {
            print!("{text}");
            PASS
        }
        Some(path) => match std::fs::write(&path, text) {
            Ok(()) => {
                println!(
                    "wrote {} (dim {}) to {}",
                    entry.name,
                    entry.structure.dim(),
                    path.display()
                );
                PASS
            }
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                USAGE
            }
        },
    }
}

fn cmd_verify(case: Option<&str>) -> u8 {
    let results = match verify::run(case) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return USAGE;
        }
    };
    let mut failed = 0;
    for c in &results {
        println!("{}", c.summary());
        for check in &c.checks {
            println!("{check}");
        }
        failed += usize::from(c.status == verify::Status::Fail);
    }
    println!("{} criteria, {failed} failed", results.len());
    if failed == 0 {
        PASS
    } else {
        FAIL
    }
}

fn cmd_list() -> u8 {
    for name in catalog::BUILTIN_NAMES {
        match catalog::builtin(name) {
            Ok(e) => {
                let kind = match e.structure.complex_structures().len() {
                    3 => "hyper-Hermitian",
                    1 => "Hermitian",
                    _ => "metric Lie algebra",
                };
                let from = e
                    .origin
                    .as_ref()
                    .map(|o| format!(", {} of {} along {}", o.kind.as_str(), o.base, o.using))
                    .unwrap_or_default();
                println!("{name:<14} dim {:>2}  {kind}{from}", e.structure.dim());
            }
            Err(e) => {
                eprintln!("error: {name}: {e}");
                return FAIL;
            }
        }
    }
    PASS
}
