//! `rartin`: exact Artin characters, refined Artin characters and
//! conductors from ramification data files.
//!
//! Exit codes: 0 success, 1 invalid data or binding verification failure,
//! 2 input/format error, 3 computation error.

use clap::{Parser, Subcommand, ValueEnum};
use refined_artin::conductor::{artin_conductor, conductor_with, verify_suite, ConductorOptions, SuiteOptions};
use refined_artin::cyclotomic::parse_rational;
use refined_artin::format::{parse_job, parse_oracle_fixture, JobFile};
use refined_artin::group::{ClassFunction, Subgroup};
use refined_artin::numtheory::Rational;
use refined_artin::oracle::{
    filtration_from_monogenic, lower_indices, oracle_monogenic_clin, oracle_tame_clin, tame_character_from_monogenic,
    IntMatrix,
};
use refined_artin::ramification::{
    artin_character, build_ramification, p_average, refined_artin, refined_artin_upper, RamificationData,
    RamificationError,
};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rartin", version, about = "Refined Artin characters and base change conductors")]
struct Cli {
    /// Output format for the data channel.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a job file and report every violated invariant.
    Validate { path: PathBuf },
    /// Evaluate a character, conductor, Herbrand function or discriminant.
    Compute {
        path: PathBuf,
        #[command(subcommand)]
        what: What,
        /// Pair with the Frobenius-averaged refined character.
        #[arg(long, global = true)]
        p_average: bool,
        /// Refuse characters that are not σ_p-stable.
        #[arg(long, global = true)]
        strict_rational: bool,
    },
    /// Run the identity suite; one record per identity instance.
    Verify {
        path: PathBuf,
        /// Report extension-dependent identities as non-binding.
        #[arg(long)]
        advisory: bool,
    },
    /// Lattice-determinant oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
}

#[derive(Subcommand)]
enum What {
    /// Ar_{L/K}.
    Artin,
    /// The refined Artin character, lower-numbering construction.
    Bar,
    /// The refined Artin character, upper-numbering construction.
    BarUpper,
    /// The Gal(Q_p(μ_n)/Q_p)-average of the refined Artin character.
    BarAvg,
    /// c = (bAr | χ) for a named representation.
    Conductor { rep: String },
    /// The Artin conductor (Ar | χ).
    ArtinConductor { rep: String },
    /// Herbrand φ or ψ at a rational point.
    Herbrand { which: Herbrand, at: String },
    /// Discriminant valuation of the fixed field of a subgroup, e.g. `0,3`.
    Disc { subgroup: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Herbrand {
    Phi,
    Psi,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// c_lin of the diagonal action diag(ζ_n^i, ...) in the tame model.
    Tame { n: u64, exponents: Vec<i64> },
    /// c_lin of a module over a monogenic order.
    Monogenic {
        path: PathBuf,
        /// `regular`, `trivial`, or `file` (the fixture's own module).
        #[arg(long, default_value = "file")]
        module: String,
    },
    /// Write the ramification data of a monogenic order as a job file.
    DeriveFixture {
        path: PathBuf,
        /// Which prime of Z[ζ_n] above p identifies μ_n of the residue field.
        #[arg(long, default_value_t = 0)]
        prime_choice: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Input(String),
    Compute(String),
    Verify,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) | Failure::Verify => 1,
            Failure::Input(_) => 2,
            Failure::Compute(_) => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { ref path } => validate(path),
        Command::Compute { ref path, ref what, p_average, strict_rational } => {
            compute(path, what, p_average, strict_rational, cli.format)
        }
        Command::Verify { ref path, advisory } => verify(path, advisory, cli.format),
        Command::Oracle { ref which } => oracle(which, cli.format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Invalid(m) | Failure::Input(m) | Failure::Compute(m) => eprintln!("error: {m}"),
                Failure::Verify => {}
            }
            ExitCode::from(f.code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_job(path: &Path) -> Result<JobFile, Failure> {
    parse_job(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// A job whose ramification section must already be valid.
fn load_data(path: &Path) -> Result<(JobFile, RamificationData), Failure> {
    let job = load_job(path)?;
    let r = job.ramification().map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((job, r))
}

fn validate(path: &Path) -> Outcome {
    let job = load_job(path)?;
    let g = job.build_group().map_err(|e| Failure::Input(format!("group: {e}")))?;
    let mut problems = Vec::new();
    match build_ramification(&g, &job.filtration, job.p, job.tame) {
        Ok(_) => {}
        Err(RamificationError::Invalid(vs)) => problems.extend(vs.iter().map(|v| format!("ramification: {v}"))),
        Err(e) => problems.push(format!("ramification: {e}")),
    }
    for name in job.reps.keys() {
        if let Err(e) = job.rep(name, &g) {
            problems.push(format!("reps.{name}: {e}"));
        }
    }
    if let Some(fx) = &job.oracle {
        if let Err(e) = fx.order() {
            problems.push(format!("oracle: {e}"));
        }
    }
    if problems.is_empty() {
        println!("ok");
        Ok(())
    } else {
        for p in &problems {
            println!("{p}");
        }
        Err(Failure::Invalid(format!("{} problem(s) in {}", problems.len(), path.display())))
    }
}

fn compute(path: &Path, what: &What, p_avg: bool, strict: bool, format: Format) -> Outcome {
    let (job, r) = load_data(path)?;
    let mut opts: ConductorOptions = job.options.into();
    opts.p_average |= p_avg;
    opts.strict_rational |= strict;
    let computed = |e: &dyn std::fmt::Display| Failure::Compute(e.to_string());
    let rep = |name: &str| -> Result<ClassFunction, Failure> {
        let name = name.strip_prefix("rep=").unwrap_or(name);
        job.rep(name, r.gamma()).map_err(|e| Failure::Input(e.to_string()))
    };
    match what {
        What::Artin => print_class_function(&artin_character(&r), format),
        What::Bar => print_class_function(&refined_artin(&r), format),
        What::BarUpper => print_class_function(&refined_artin_upper(&r).map_err(|e| computed(&e))?, format),
        What::BarAvg => {
            let avg = p_average(&refined_artin(&r), r.p()).map_err(|e| computed(&e))?;
            print_class_function(&avg, format)
        }
        What::Conductor { rep: name } => {
            let c = conductor_with(&r, &rep(name)?, opts).map_err(|e| computed(&e))?;
            if !c.qp_stable {
                eprintln!("warning: {name} is not σ_{}-stable; the value depends on the embedding", r.p());
            }
            match format {
                Format::Text => println!("{}", c.value),
                Format::Json => println!("{}", json!({"value": c.value.to_string(), "qp_stable": c.qp_stable})),
            }
        }
        What::ArtinConductor { rep: name } => {
            print_rational(&artin_conductor(&r, &rep(name)?).map_err(|e| computed(&e))?, format)
        }
        What::Herbrand { which, at } => {
            let x = parse_rational(at).map_err(|e| Failure::Input(e.to_string()))?;
            let y = match which {
                Herbrand::Phi => r.herbrand_phi(&x),
                Herbrand::Psi => r.herbrand_psi(&x),
            }
            .map_err(|e| computed(&e))?;
            print_rational(&y, format)
        }
        What::Disc { subgroup } => {
            let members = parse_members(subgroup)?;
            let h = Subgroup::new(r.gamma(), &members).map_err(|e| Failure::Input(format!("subgroup: {e}")))?;
            print_rational(&r.discriminant_valuation(&h).map_err(|e| computed(&e))?, format)
        }
    }
    Ok(())
}

fn parse_members(s: &str) -> Result<Vec<usize>, Failure> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Input(format!("bad element index {t:?}"))))
        .collect()
}

fn print_rational(q: &Rational, format: Format) {
    match format {
        Format::Text => println!("{q}"),
        Format::Json => println!("{}", json!({"value": q.to_string()})),
    }
}

/// Text: `index <TAB> size <TAB> value <TAB> encoding`, one class per line.
fn print_class_function(chi: &ClassFunction, format: Format) {
    let g = chi.group();
    match format {
        Format::Text => {
            for (i, v) in chi.values().iter().enumerate() {
                let enc = serde_json::to_string(v).expect("serializable");
                println!("{i}\t{}\t{v}\t{enc}", g.classes()[i].len());
            }
        }
        Format::Json => {
            let classes: Vec<_> = chi
                .values()
                .iter()
                .enumerate()
                .map(|(i, v)| json!({"class": i, "representative": g.classes()[i][0], "size": g.classes()[i].len(), "value": v}))
                .collect();
            println!("{}", json!({ "classes": classes }));
        }
    }
}

fn verify(path: &Path, advisory: bool, format: Format) -> Outcome {
    let job = load_job(path)?;
    let r = match job.ramification() {
        Ok(r) => r,
        // inadmissible data (e.g. a non-injective Ψ) fails the suite rather than the parse
        Err(RamificationError::Invalid(vs)) => {
            for v in &vs {
                let rec = json!({"identity": "admissibility", "instance": v.to_string(), "pass": false, "binding": true});
                match format {
                    Format::Json => println!("{rec}"),
                    Format::Text => println!("FAIL\tadmissibility\t{v}"),
                }
            }
            return Err(Failure::Verify);
        }
        Err(e) => return Err(Failure::Input(format!("{}: {e}", path.display()))),
    };
    let report = verify_suite(&r, SuiteOptions { advisory });
    match format {
        Format::Json => {
            for line in report.json_lines() {
                println!("{line}");
            }
            eprintln!("{}", report.summary());
        }
        Format::Text => {
            for rec in &report.records {
                let status = match (rec.pass, rec.binding) {
                    (true, _) => "pass",
                    (false, true) => "FAIL",
                    (false, false) => "fail (advisory)",
                };
                println!("{status}\t{}\t{}\texpected {}\tgot {}", rec.identity, rec.instance, rec.expected, rec.computed);
            }
            println!("{}", report.summary());
        }
    }
    if report.all_binding_pass() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn oracle(which: &OracleCmd, format: Format) -> Outcome {
    match which {
        OracleCmd::Tame { n, exponents } => {
            if *n == 0 {
                return Err(Failure::Input("n must be positive".into()));
            }
            print_rational(&oracle_tame_clin(*n, exponents), format);
        }
        OracleCmd::Monogenic { path, module } => {
            let fx = parse_oracle_fixture(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let o = fx.order().map_err(|e| Failure::Input(e.to_string()))?;
            let action: Vec<IntMatrix> = match module.as_str() {
                "regular" => o.regular_module(),
                "trivial" => o.trivial_module(),
                "file" => fx.module().ok_or_else(|| Failure::Input("fixture has no module; use --module regular".into()))?,
                other => return Err(Failure::Input(format!("unknown module {other:?}"))),
            };
            let c = oracle_monogenic_clin(&o, &action).map_err(|e| Failure::Compute(e.to_string()))?;
            print_rational(&c, format);
        }
        OracleCmd::DeriveFixture { path, prime_choice, output } => {
            let fx = parse_oracle_fixture(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let o = fx.order().map_err(|e| Failure::Input(e.to_string()))?;
            let mut r = filtration_from_monogenic(&o).map_err(|e| Failure::Compute(e.to_string()))?;
            if r.n() > 1 && *prime_choice != 0 {
                let tame = tame_character_from_monogenic(&o, *prime_choice).map_err(|e| Failure::Compute(e.to_string()))?;
                let lists: Vec<Vec<usize>> = r.filtration().iter().map(|h| h.members().to_vec()).collect();
                r = build_ramification(o.group(), &lists, o.p(), Some(tame)).map_err(|e| Failure::Compute(e.to_string()))?;
            }
            let indices: Vec<String> =
                lower_indices(&o).iter().map(|i| i.map_or("inf".to_string(), |v| v.to_string())).collect();
            eprintln!("i(σ) = [{}]", indices.join(", "));
            let text = JobFile::from_ramification(&r).to_json();
            match output {
                Some(out) => std::fs::write(out, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?,
                None => println!("{text}"),
            }
        }
    }
    Ok(())
}
