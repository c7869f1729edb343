//! `shapoval`: root systems and Shapovalov determinant factorizations for
//! bicharacters, from a TOML description of the braiding matrix.
//!
//! Every subcommand emits a JSON report (stdout, or --out FILE) plus a short
//! text summary on the other stream. Exit codes: 0 success, 1 verification
//! mismatch or internal failure, 2 hypothesis violation, 3 enumeration cap
//! exceeded, 4 unusable input.

mod input;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use shapoval::{
    check_axioms, classify, lambda_on_hyperplane, nonneg_weights_up_to, orbit, partition,
    pbw_dim, positive_roots, radical_dim, shapdet_formula, uqg_shapdet, Caps, Factorization,
    Oracle, Result, RootSystemRecord, ShapError, Weight,
};

use report::*;

#[derive(Parser)]
#[command(name = "shapoval", version, about = "Weyl groupoids and Shapovalov determinants of bicharacters")]
struct Cli {
    /// Write the JSON report to this file (summary then goes to stdout).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the reflection orbit and all positive root systems.
    Roots {
        /// TOML input file.
        input: PathBuf,
    },
    /// Factor the determinant at one degree.
    Det {
        /// TOML input file.
        input: PathBuf,
        /// Degree in simple-root coordinates, e.g. 1,1.
        #[arg(long, value_name = "COORDS")]
        alpha: String,
    },
    /// Recompute determinants from scratch and compare with the factored form.
    Verify {
        /// TOML input file.
        input: PathBuf,
        /// Largest degree height to check (else $SHAPOVAL_MAX_HEIGHT, else 6).
        #[arg(long, value_name = "H")]
        max_height: Option<i64>,
    },
    /// Check Verma radical coranks on the (beta, t) degeneracy hyperplane.
    Verma {
        /// TOML input file.
        input: PathBuf,
        /// Positive root in simple-root coordinates.
        #[arg(long, value_name = "COORDS")]
        beta: String,
        /// Factor index, 1 <= t < bound(beta).
        #[arg(long)]
        t: u64,
        /// Largest degree height to check (else $SHAPOVAL_MAX_HEIGHT, else 6).
        #[arg(long, value_name = "H")]
        max_height: Option<i64>,
    },
    /// Factor the determinant of U_q(g) or u_q(g) given Cartan data.
    Uqg {
        /// TOML input file with a [uqg] table.
        input: PathBuf,
        /// Degree in simple-root coordinates.
        #[arg(long, value_name = "COORDS")]
        alpha: String,
        /// Work in the finite-dimensional quotient u_q(g).
        #[arg(long)]
        small: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{err}");
                    std::process::exit(4);
                }
            }
        }
    };
    let emitter = Emitter { out: cli.out.clone() };
    let code = match run(&cli.command, &emitter) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    };
    std::process::exit(code);
}

fn exit_code_for(err: &ShapError) -> i32 {
    match err {
        ShapError::HypothesisViolated { .. } => 2,
        ShapError::Undecided(_) | ShapError::OrbitCapExceeded | ShapError::RootCapExceeded => 3,
        ShapError::BadInput(_) => 4,
        _ => 1,
    }
}

struct Emitter {
    out: Option<PathBuf>,
}

impl Emitter {
    /// JSON to stdout and summary to stderr, or JSON to --out and summary
    /// to stdout. Either way exactly one machine-readable stream.
    fn emit<T: Serialize>(&self, rep: &T, summary: &str) -> Result<()> {
        let mut json = serde_json::to_string_pretty(rep)
            .expect("reports contain no non-serializable values");
        json.push('\n');
        match &self.out {
            Some(path) => {
                std::fs::write(path, json).map_err(|e| {
                    ShapError::BadInput(format!("{}: {}", path.display(), e))
                })?;
                println!("{summary}");
            }
            None => {
                print!("{json}");
                eprintln!("{summary}");
            }
        }
        Ok(())
    }
}

fn parse_weight(text: &str, rank: usize) -> Result<Weight> {
    let coords = text
        .split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|e| {
                ShapError::BadInput(format!("bad coordinate {:?}: {}", part.trim(), e))
            })
        })
        .collect::<Result<Vec<i64>>>()?;
    if coords.len() != rank {
        return Err(ShapError::BadInput(format!(
            "expected {} coordinates, got {}",
            rank,
            coords.len()
        )));
    }
    Ok(Weight::from_coords(coords))
}

fn resolve_height(flag: Option<i64>) -> Result<i64> {
    if let Some(h) = flag {
        return Ok(h);
    }
    match std::env::var("SHAPOVAL_MAX_HEIGHT") {
        Ok(raw) => raw.trim().parse::<i64>().map_err(|e| {
            ShapError::BadInput(format!("SHAPOVAL_MAX_HEIGHT {:?}: {}", raw, e))
        }),
        Err(std::env::VarError::NotPresent) => Ok(6),
        Err(e) => Err(ShapError::BadInput(format!("SHAPOVAL_MAX_HEIGHT: {}", e))),
    }
}

/// Orbit plus the root system at the starting object, the data every
/// determinant subcommand begins from.
fn root_data(path: &PathBuf) -> Result<(shapoval::Bicharacter, RootSystemRecord)> {
    let spec = input::load(path)?;
    let chi = input::bicharacter_of(&spec)?;
    let caps = Caps::default();
    let scheme = orbit(&chi, &caps)?;
    let rec = positive_roots(&scheme, 0, &caps)?;
    Ok((chi, rec))
}

fn factor_list(fact: &Factorization) -> Vec<FactorOut> {
    fact.factors
        .iter()
        .map(|(f, mult)| FactorOut {
            root: f.root.coords.clone(),
            t: f.t,
            multiplicity: *mult,
            poly: f.as_poly.to_string(),
        })
        .collect()
}

fn run(cmd: &Command, emitter: &Emitter) -> Result<i32> {
    match cmd {
        Command::Roots { input } => cmd_roots(input, emitter),
        Command::Det { input, alpha } => cmd_det(input, alpha, emitter),
        Command::Verify { input, max_height } => cmd_verify(input, *max_height, emitter),
        Command::Verma { input, beta, t, max_height } => {
            cmd_verma(input, beta, *t, *max_height, emitter)
        }
        Command::Uqg { input, alpha, small } => cmd_uqg(input, alpha, *small, emitter),
    }
}

fn cmd_roots(path: &PathBuf, emitter: &Emitter) -> Result<i32> {
    let spec = input::load(path)?;
    let chi = input::bicharacter_of(&spec)?;
    let caps = Caps::default();
    let scheme = orbit(&chi, &caps)?;
    let klass = classify(&chi, &caps)?;
    let mut records = Vec::new();
    for object in 0..scheme.objects.len() {
        records.push(positive_roots(&scheme, object, &caps)?);
    }
    let violations = check_axioms(&scheme, &records);
    let rep = RootsReport {
        schema: SCHEMA,
        command: "roots",
        order: chi.order,
        rank: chi.rank,
        klass: klass.to_string(),
        objects: scheme.objects.len(),
        axiom_violations: violations.clone(),
        root_systems: records
            .iter()
            .map(|rec| ObjectRoots {
                object: rec.object,
                klass: rec.klass.to_string(),
                positive_roots: rec
                    .positive_roots
                    .iter()
                    .map(|w| RootEntry { coords: w.coords.clone(), bound: rec.bounds[w] })
                    .collect(),
            })
            .collect(),
    };
    let summary = format!(
        "{} object(s), klass {}, {} positive roots at object 0, {} axiom violation(s)",
        rep.objects,
        rep.klass,
        records[0].positive_roots.len(),
        violations.len()
    );
    emitter.emit(&rep, &summary)?;
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn cmd_det(path: &PathBuf, alpha_text: &str, emitter: &Emitter) -> Result<i32> {
    let (chi, rec) = root_data(path)?;
    let alpha = parse_weight(alpha_text, chi.rank)?;
    if !alpha.is_nonneg() {
        return Err(ShapError::BadInput(format!("degree {} has a negative entry", alpha)));
    }
    let fact = shapdet_formula(&chi, &rec, &alpha)?;
    let dim = pbw_dim(&rec, &alpha);
    let rep = DetReport {
        schema: SCHEMA,
        command: "det",
        alpha: alpha.coords.clone(),
        pbw_dim: dim,
        factors: factor_list(&fact),
    };
    let summary = format!(
        "det at {}: {} distinct linear factor(s) on a {}-dimensional degree",
        alpha,
        rep.factors.len(),
        dim
    );
    emitter.emit(&rep, &summary)?;
    Ok(0)
}

fn cmd_verify(path: &PathBuf, height_flag: Option<i64>, emitter: &Emitter) -> Result<i32> {
    let max_height = resolve_height(height_flag)?;
    let (chi, rec) = root_data(path)?;
    let oracle = Oracle::new(chi.clone());
    let mut degrees = Vec::new();
    let mut all_match = true;
    for alpha in nonneg_weights_up_to(chi.rank, max_height) {
        let fact = shapdet_formula(&chi, &rec, &alpha)?;
        let expanded = fact.expand(chi.rank, chi.order).normalize_unit()?;
        let brute = oracle.det_brute(&alpha).normalize_unit()?;
        let matches = expanded == brute;
        all_match &= matches;
        degrees.push(VerifyDegree {
            alpha: alpha.coords.clone(),
            dim: pbw_dim(&rec, &alpha),
            matches,
        });
    }
    let rep = VerifyReport {
        schema: SCHEMA,
        command: "verify",
        max_height,
        degrees,
        all_match,
    };
    let summary = if all_match {
        format!("verified {} degree(s) up to height {}: all match", rep.degrees.len(), max_height)
    } else {
        let bad: Vec<String> = rep
            .degrees
            .iter()
            .filter(|d| !d.matches)
            .map(|d| format!("{:?}", d.alpha))
            .collect();
        format!("MISMATCH at {}", bad.join(", "))
    };
    emitter.emit(&rep, &summary)?;
    Ok(if all_match { 0 } else { 1 })
}

fn cmd_verma(
    path: &PathBuf,
    beta_text: &str,
    t: u64,
    height_flag: Option<i64>,
    emitter: &Emitter,
) -> Result<i32> {
    let max_height = resolve_height(height_flag)?;
    let (chi, rec) = root_data(path)?;
    let beta = parse_weight(beta_text, chi.rank)?;
    let lambda = lambda_on_hyperplane(&chi, &rec, &beta, t)?;
    let oracle = Oracle::new(chi.clone());
    let mut degrees = Vec::new();
    let mut all_match = true;
    for alpha in nonneg_weights_up_to(chi.rank, max_height) {
        let data = radical_dim(&oracle, &lambda, &alpha);
        let predicted = partition(&rec, &alpha, &beta, t)?;
        let matches = data.corank as u64 == predicted;
        all_match &= matches;
        degrees.push(VermaDegree {
            alpha: alpha.coords.clone(),
            corank: data.corank,
            predicted,
            matches,
        });
    }
    let rep = VermaReport {
        schema: SCHEMA,
        command: "verma",
        beta: beta.coords.clone(),
        t,
        max_height,
        lambda_k: lambda.kvals.iter().map(|v| v.to_string()).collect(),
        lambda_l: lambda.lvals.iter().map(|v| v.to_string()).collect(),
        degrees,
        all_match,
    };
    let summary = if all_match {
        format!(
            "radical coranks at ({}, t = {}) match the counting polynomial on {} degree(s)",
            beta,
            t,
            rep.degrees.len()
        )
    } else {
        "CORANK MISMATCH, see report".to_string()
    };
    emitter.emit(&rep, &summary)?;
    Ok(if all_match { 0 } else { 1 })
}

fn cmd_uqg(path: &PathBuf, alpha_text: &str, small: bool, emitter: &Emitter) -> Result<i32> {
    let spec = input::load(path)?;
    let (cartan, d, q) = input::uqg_data(&spec)?;
    let alpha = parse_weight(alpha_text, cartan.n)?;
    if !alpha.is_nonneg() {
        return Err(ShapError::BadInput(format!("degree {} has a negative entry", alpha)));
    }
    let fact = uqg_shapdet(&cartan, &d, &q, &alpha, small)?;
    let rep = UqgReport {
        schema: SCHEMA,
        command: "uqg",
        alpha: alpha.coords.clone(),
        small,
        factors: factor_list(&fact),
    };
    let summary = format!(
        "{} determinant at {}: {} distinct factor(s)",
        if small { "u_q(g)" } else { "U_q(g)" },
        alpha,
        rep.factors.len()
    );
    emitter.emit(&rep, &summary)?;
    Ok(0)
}
