//! Command-line front end: span analysis, pairing involutions, h*-vectors,
//! point enumeration, and the verification sweeps.
//!
//! Exit codes: 0 on success, 1 on a mathematical verification failure,
//! 2 on input or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cubespan::lattice::{LatticeSpec, DEFAULT_POINT_CAP};
use cubespan::report::{analyze, enumerate, h_star_report};
use cubespan::simplex::Simplex;
use cubespan::verify::{
    chars_suite, dirichlet_suite, lattice_suite, pairing_identity_suite, sebo_paired_suite,
    LatticeSuiteConfig, VerifyReport,
};

#[derive(Parser)]
#[command(
    name = "cubespan",
    version,
    about = "Exact analysis of lattice points in the unit cube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a lattice file: group structure, span dimension by formula
    /// and by brute force, vanishing functionals, and the equal-mass check.
    Analyze {
        file: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Cap on the number of enumerated points.
        #[arg(long)]
        max_points: Option<u64>,
    },
    /// Equal-mass test: either the pairing involution or a witness point.
    Sebo {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// h*-vector of a simplex file.
    Hstar {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List the cube points of a lattice file.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        max_points: Option<u64>,
    },
    /// Run a verification sweep: chars, dirichlet, or lattice.
    Verify {
        /// One of: chars, dirichlet, lattice.
        suite: String,
        /// Largest group order (chars, default 36) or quotient order of the
        /// random lattice instances (lattice, default 200).
        #[arg(long)]
        max_order: Option<u64>,
        /// Largest modulus / componentwise lcm for the dirichlet sweep.
        #[arg(long, default_value_t = 30)]
        max_modulus: u64,
        /// Number of random lattice instances.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Largest lattice dimension for random instances.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Point cap: flag wins over the CUBESPAN_MAX_POINTS variable, which wins
/// over the built-in default.
fn point_cap(flag: Option<u64>) -> Result<u64, String> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("CUBESPAN_MAX_POINTS") {
        Ok(s) => s
            .parse::<u64>()
            .map_err(|_| format!("CUBESPAN_MAX_POINTS is not a number: {s:?}")),
        Err(_) => Ok(DEFAULT_POINT_CAP),
    }
}

fn read_lattice(path: &PathBuf) -> Result<LatticeSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_simplex(path: &PathBuf) -> Result<Simplex, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let raw: Simplex =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Simplex::new(raw.vertices).map_err(|e| format!("{}: {e}", path.display()))
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_analyze(file: PathBuf, json: bool, max_points: Option<u64>) -> ExitCode {
    let cap = match point_cap(max_points) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let spec = match read_lattice(&file) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    match analyze(&spec, cap) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("invariant factors: {:?}", report.factors);
                println!("cube points:      {}", report.point_count);
                println!("iota, kappa:      {}, {}", report.iota, report.kappa);
                println!(
                    "span dimension:   {} (formula), {} (brute force)",
                    report.dim_formula, report.dim_bruteforce
                );
                println!("vanishing basis:  {:?}", report.vanishing_basis);
                if report.sebo.holds {
                    println!(
                        "equal-mass:       holds; sigma = {}",
                        report.sebo.sigma.as_deref().unwrap_or("id")
                    );
                } else {
                    println!(
                        "equal-mass:       fails; witness = {:?}",
                        report.sebo.witness.as_deref().unwrap_or_default()
                    );
                }
                println!("agreement:        {}", report.agreement);
            }
            if report.agreement {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: formula and brute-force spans disagree");
                ExitCode::from(1)
            }
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn run_sebo(file: PathBuf, json: bool) -> ExitCode {
    let spec = match read_lattice(&file) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let qg = match cubespan::lattice::build_quotient(&spec) {
        Ok(q) => q,
        Err(e) => return usage_error(&e.to_string()),
    };
    match cubespan::span::sebo_check(&qg) {
        Ok(res) => {
            if json {
                let summary = cubespan::report::SeboSummary {
                    holds: res.holds,
                    sigma: res
                        .involution
                        .as_deref()
                        .map(cubespan::span::involution_cycles),
                    witness: res.witness.as_ref().map(|w| w.coords_strings()),
                };
                println!("{}", serde_json::to_string_pretty(&summary).unwrap());
            } else if res.holds {
                let sigma = res.involution.expect("present when the condition holds");
                println!(
                    "holds; sigma = {}",
                    cubespan::span::involution_cycles(&sigma)
                );
            } else {
                let w = res.witness.expect("present when the condition fails");
                println!(
                    "fails; witness element {:?} at ({}) with sum {} and support {}",
                    w.element.residues,
                    w.coords_strings().join(", "),
                    cubespan::rational::format_rational(&w.coord_sum()),
                    w.support_size()
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn run_hstar(file: PathBuf, json: bool) -> ExitCode {
    let simplex = match read_simplex(&file) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    match h_star_report(&simplex) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                let coeffs: Vec<String> = report.h_star.iter().map(|h| h.to_string()).collect();
                println!("h* = ({})", coeffs.join(", "));
                println!("normalized volume = {}", report.normalized_volume);
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn run_enumerate(file: PathBuf, json: bool, max_points: Option<u64>) -> ExitCode {
    let cap = match point_cap(max_points) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let spec = match read_lattice(&file) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    match enumerate(&spec, cap) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "invariant factors: {:?} ({} points)",
                    report.factors, report.point_count
                );
                for p in &report.points {
                    println!("{:?} -> ({}) sum {}", p.element, p.coords.join(", "), p.sum);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn render_verify(reports: &[VerifyReport], json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(reports).unwrap());
    } else {
        for r in reports {
            let status = if r.passed() { "pass" } else { "FAIL" };
            println!(
                "{}: {} ({} cases, {} failures, {} ms)",
                r.suite,
                status,
                r.cases,
                r.failures.len(),
                r.wall_ms
            );
            for f in &r.failures {
                println!("  {f}");
            }
        }
    }
    if reports.iter().all(VerifyReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            file,
            json,
            max_points,
        } => run_analyze(file, json, max_points),
        Command::Sebo { file, json } => run_sebo(file, json),
        Command::Hstar { file, json } => run_hstar(file, json),
        Command::Enumerate {
            file,
            json,
            max_points,
        } => run_enumerate(file, json, max_points),
        Command::Verify {
            suite,
            max_order,
            max_modulus,
            instances,
            max_n,
            seed,
            json,
        } => {
            let reports = match suite.as_str() {
                "chars" => {
                    let bound = max_order.unwrap_or(36);
                    if bound < 1 || bound > 64 {
                        return usage_error("chars --max-order must be between 1 and 64");
                    }
                    vec![chars_suite(bound, seed)]
                }
                "dirichlet" => {
                    if max_modulus < 1 || max_modulus > 64 {
                        return usage_error("dirichlet --max-modulus must be between 1 and 64");
                    }
                    vec![dirichlet_suite(max_modulus, seed)]
                }
                "lattice" => {
                    let bound = max_order.unwrap_or(200);
                    if instances < 1
                        || max_n < 1
                        || max_n > 12
                        || bound < 1
                        || bound > DEFAULT_POINT_CAP
                    {
                        return usage_error("lattice bounds out of range (instances >= 1, 1 <= max-n <= 12, max-order within the point cap)");
                    }
                    let cfg = LatticeSuiteConfig {
                        instances,
                        max_n,
                        max_order: bound,
                        seed,
                    };
                    vec![
                        lattice_suite(cfg),
                        pairing_identity_suite(LatticeSuiteConfig {
                            instances: instances.min(50),
                            max_n: cfg.max_n.min(5),
                            max_order: cfg.max_order.min(60),
                            seed,
                        }),
                        sebo_paired_suite(50, seed),
                    ]
                }
                other => {
                    return usage_error(&format!(
                        "unknown suite {other:?} (use chars, dirichlet, or lattice)"
                    ))
                }
            };
            render_verify(&reports, json)
        }
    }
}
