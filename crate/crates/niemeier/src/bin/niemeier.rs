//! Command-line front end: catalog listing, theta expansions, identity,
//! congruence, singularity and theta-kernel verification, coefficient
//! rederivation and JSON exports.
//!
//! Exit codes: 0 = certified/verified, 1 = refuted, 2 = inconclusive or
//! a resource/usage problem.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use niemeier::context::Context;
use niemeier::enumeration::Budget;
use niemeier::export::{expansion_json, lattices_json, report_json, table1_json};
use niemeier::forms3::{
    c0_poly, c1_poly, c2_poly, rederive_c_coefficients, restriction_constants,
};
use niemeier::verify::{
    certify_congruence, coxeter_congruence_sweep, singular_rank_mod_p, theta_kernel_check,
    verify_identity, Verdict,
};
use niemeier::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(name = "niemeier", about = "Niemeier lattices and their Siegel theta series")]
struct Cli {
    /// Directory for the on-disk coefficient cache.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Node budget for lattice-point enumeration.
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the 24 lattices with symbols, Coxeter numbers and root counts.
    List,
    /// Print the theta expansion of one lattice (or "all").
    Theta {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value_t = 2)]
        degree: u8,
        /// Diagonal bound overriding the Sturm box.
        #[arg(long)]
        max_tii: Option<i64>,
    },
    /// Certification subcommands.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Rederive the coefficient polynomials from diagonal restrictions.
    Rederive,
    /// Write lattices.json and table1.json into a directory.
    Export {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Compare enumerated theta series against the weight-12 expressions.
    Identity {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value_t = 2)]
        degree: u8,
    },
    /// Certify lhs ≡ rhs (mod m) on the Sturm box; use --sweep for all
    /// Coxeter-congruent pairs.
    Congruence {
        #[arg(long = "mod")]
        modulus: u64,
        /// Certify every pair with congruent Coxeter numbers instead of
        /// a single pair.
        #[arg(long)]
        sweep: bool,
        lhs: Option<String>,
        rhs: Option<String>,
    },
    /// Box-limited mod-p singular-rank report with witnesses.
    Singular {
        #[arg(long)]
        lattice: String,
        #[arg(long = "mod", default_value_t = 23)]
        modulus: u64,
    },
    /// Check Θ(theta series) ≡ 0 (mod p) on the extended degree-2 box.
    ThetaKernel {
        #[arg(long)]
        lattice: String,
        #[arg(long = "mod", default_value_t = 23)]
        modulus: u64,
    },
}

fn lattice_names(ctx: &Context, selector: &str) -> Vec<String> {
    if selector == "all" {
        ctx.catalog().iter().map(|e| e.name.to_string()).collect()
    } else {
        vec![selector.to_string()]
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let mut ctx = match &cli.cache {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            Context::with_cache(dir)?
        }
        None => Context::new(),
    };
    if let Some(nodes) = cli.budget {
        ctx.set_budget(Budget { max_nodes: nodes, ..Budget::default() });
    }
    let code = match &cli.command {
        Command::List => {
            if cli.format == Format::Json {
                println!("{}", lattices_json(&ctx.catalog())?);
            } else {
                println!("{:<10} {:<12} {:>3} {:>6}", "name", "symbol", "h", "roots");
                for e in ctx.catalog() {
                    println!(
                        "{:<10} {:<12} {:>3} {:>6}",
                        e.name,
                        e.symbol,
                        e.coxeter_number,
                        24 * e.coxeter_number
                    );
                }
            }
            0
        }
        Command::Theta { lattice, degree, max_tii } => {
            for name in lattice_names(&ctx, lattice) {
                let f = ctx.theta_boxed(&name, *degree, *max_tii)?;
                if cli.format == Format::Json {
                    println!("{}", expansion_json(&f)?);
                } else {
                    println!("theta series of {name}, degree {degree}:");
                    for (t, v) in f.entries() {
                        println!("  a({t}) = {v}");
                    }
                }
            }
            0
        }
        Command::Verify(what) => run_verify(&mut ctx, what, cli.format)?,
        Command::Rederive => {
            let basis = {
                let gamma = ctx.theta("gamma", 3)?;
                let omega = ctx.theta("omega", 3)?;
                let psi = ctx.theta("psi", 3)?;
                let alpha = ctx.theta("alpha", 3)?;
                niemeier::forms3::solve_degree3_basis(&gamma, &omega, &psi, &alpha)?
            };
            let pipeline = ctx.pipeline()?;
            let constants = restriction_constants(pipeline, &basis)?;
            let (c1, c2) = rederive_c_coefficients(&constants)?;
            println!("c0(h) = {}", c0_poly());
            println!("c1(h) = {c1}");
            println!("c2(h) = {c2}");
            let ok = c1.equals(&c1_poly()) && c2.equals(&c2_poly());
            println!("matches the stored coefficient table: {ok}");
            if ok {
                0
            } else {
                1
            }
        }
        Command::Export { out } => {
            std::fs::create_dir_all(out)?;
            std::fs::write(out.join("lattices.json"), lattices_json(&ctx.catalog())?)?;
            std::fs::write(out.join("table1.json"), table1_json(&ctx.catalog())?)?;
            println!("wrote {}", out.join("lattices.json").display());
            println!("wrote {}", out.join("table1.json").display());
            0
        }
    };
    ctx.flush_cache()?;
    Ok(code)
}

fn run_verify(ctx: &mut Context, what: &VerifyCommand, format: Format) -> Result<u8> {
    match what {
        VerifyCommand::Identity { lattice, degree } => {
            let mut all_ok = true;
            for name in lattice_names(ctx, lattice) {
                let report = verify_identity(ctx, &name, *degree)?;
                all_ok &= report.verified;
                if format == Format::Json {
                    println!("{}", report_json(&report)?);
                } else {
                    println!(
                        "identity {name} degree {degree}: {} ({} indices)",
                        if report.verified { "verified" } else { "MISMATCH" },
                        report.box_size
                    );
                }
            }
            Ok(if all_ok { 0 } else { 1 })
        }
        VerifyCommand::Congruence { modulus, sweep, lhs, rhs } => {
            if *sweep {
                let certs = coxeter_congruence_sweep(ctx, *modulus)?;
                if format == Format::Json {
                    println!("{}", report_json(&certs)?);
                } else {
                    for c in &certs {
                        println!("{} ≡ {} (mod {}): certified", c.lhs, c.rhs, c.modulus);
                    }
                    println!("{} pairs certified", certs.len());
                }
                return Ok(0);
            }
            let (lhs, rhs) = match (lhs, rhs) {
                (Some(l), Some(r)) => (l, r),
                _ => {
                    return Err(Error::Consistency(
                        "congruence needs LHS and RHS identifiers (or --sweep)".to_string(),
                    ))
                }
            };
            let lf = ctx.theta(lhs, 3)?;
            let rf = ctx.theta(rhs, 3)?;
            let cert = certify_congruence(lhs, &lf, rhs, &rf, *modulus)?;
            if format == Format::Json {
                println!("{}", report_json(&cert)?);
            } else {
                println!(
                    "{} ≡ {} (mod {}): {:?}",
                    cert.lhs, cert.rhs, cert.modulus, cert.verdict
                );
            }
            Ok(match cert.verdict {
                Verdict::Certified => 0,
                Verdict::Refuted { .. } => 1,
                Verdict::Inconclusive { .. } => 2,
            })
        }
        VerifyCommand::Singular { lattice, modulus } => {
            let form = ctx.extended_theta3(lattice)?;
            let report = singular_rank_mod_p(lattice, &form, *modulus)?;
            if format == Format::Json {
                println!("{}", report_json(&report)?);
            } else {
                match (&report.full_rank_witness, &report.witness) {
                    (None, Some((t, r))) => println!(
                        "{lattice} is mod-{modulus} singular on the box: rank 2 witness {t} (residue {r})"
                    ),
                    (Some((t, r)), _) => println!(
                        "{lattice} is NOT mod-{modulus} singular: rank-3 residue {r} at {t}"
                    ),
                    (None, None) => {
                        println!("{lattice}: inconclusive (no nonzero rank-2 residue in box)")
                    }
                }
            }
            Ok(match (&report.full_rank_witness, &report.witness) {
                (None, Some(_)) => 0,
                (Some(_), _) => 1,
                (None, None) => 2,
            })
        }
        VerifyCommand::ThetaKernel { lattice, modulus } => {
            let form = ctx.formula_theta(lattice, 2)?;
            let report = theta_kernel_check(lattice, &form, *modulus)?;
            if format == Format::Json {
                println!("{}", report_json(&report)?);
            } else if report.passes {
                println!(
                    "Θ(theta of {lattice}) ≡ 0 (mod {modulus}) on {} indices",
                    report.checked
                );
            } else {
                let (t, r) = report.witness.unwrap();
                println!("Θ(theta of {lattice}) ≢ 0 (mod {modulus}): residue {r} at {t}");
            }
            Ok(if report.passes { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
