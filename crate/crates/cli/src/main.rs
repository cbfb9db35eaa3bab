//! Command-line surface: every decision procedure behind one subcommand,
//! with deterministic, certificate-bearing output.
//!
//! Exit codes: 0 for a positive answer or plain success, 1 for a negative
//! answer, 2 for any error (one machine-readable line on stderr).

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use eqgb::error::{Error, Result};
use eqgb::front::{
    accepted_shape, linsolve, petri_reach, petri_validate, reduce_instance, validate_family,
    QInstance,
};
use eqgb::gb::{
    buchberger_with, member_with, reduce_with_fuel, Basis, Certificate, EngineOptions,
    FuelConfig, RunStats,
};
use eqgb::text::{
    parse_domain, parse_element_set, parse_family, parse_ideal, parse_local_embedding,
    parse_monomial, parse_petri, parse_polynomial, parse_target_vector, print_basis,
    print_certificate, print_pair_line,
};
use eqgb::tuple_orbit_reps;
use eqgb::{ca1_extends, Field, Polynomial};

#[derive(Parser)]
#[command(name = "eqgb", version, about = "Equivariant polynomial ideal toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct EngineFlags {
    /// Division-step budget (exceeding it is reported as a bug).
    #[arg(long, default_value_t = 1_000_000)]
    fuel_steps: u64,
    /// Completion-pass budget.
    #[arg(long, default_value_t = 1_000)]
    fuel_passes: u64,
    /// Skip S-pairs with variable-disjoint renamed leading monomials.
    #[arg(long)]
    coprime_filter: bool,
}

impl EngineFlags {
    fn options(&self) -> EngineOptions {
        EngineOptions {
            fuel: FuelConfig { max_steps: self.fuel_steps, max_passes: self.fuel_passes },
            coprime_filter: self.coprime_filter,
            autoreduce: false,
        }
    }
}

#[derive(Args)]
struct OutputFlags {
    /// Emit a machine-readable report instead of plain text.
    #[arg(long)]
    json: bool,
    /// Write the replayable certificate to this path.
    #[arg(long)]
    certificate: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<Field> {
    if s == "q" {
        return Ok(Field::Q);
    }
    if let Some(p) = s.strip_prefix("gf:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Domain(format!("bad field spec '{s}'")))?;
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        return Ok(Field::Fp(p));
    }
    Err(Error::Domain(format!("unknown field '{s}', expected q or gf:<p>")))
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute an equivariant Groebner basis of an ideal file.
    Gb {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, default_value = "q")]
        field: String,
        #[command(flatten)]
        engine: EngineFlags,
        #[arg(long)]
        json: bool,
    },
    /// Decide membership of a polynomial in an equivariant ideal.
    Member {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "q")]
        field: String,
        #[command(flatten)]
        engine: EngineFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Reduce a polynomial by the generators as given (no completion).
    Reduce {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "q")]
        field: String,
        #[command(flatten)]
        engine: EngineFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Does a finite partial map extend to an embedding of the domain?
    EmbCheck {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        json: bool,
    },
    /// Presentation of all pairs of local embeddings of two finite sets.
    EmbPairs {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Reachability in a reversible Petri net with data.
    PetriReach {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Add missing inverse rules before validation.
        #[arg(long)]
        symmetrize: bool,
        #[command(flatten)]
        engine: EngineFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Solvability of an orbit-finite linear system.
    Linsolve {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "q")]
        field: String,
        /// Also check the index set covers every tuple orbit.
        #[arg(long)]
        check_family: bool,
        #[command(flatten)]
        engine: EngineFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
}

struct Report {
    answer: bool,
    stats: RunStats,
    millis: u128,
}

impl Report {
    fn print(&self, json: bool) {
        if json {
            println!(
                "{{\"answer\":{},\"steps\":{},\"passes\":{},\"added\":{},\"millis\":{}}}",
                self.answer, self.stats.steps, self.stats.passes, self.stats.added, self.millis
            );
        } else {
            println!("answer {}", self.answer);
            println!("steps {}", self.stats.steps);
            println!("passes {}", self.stats.passes);
            println!("added {}", self.stats.added);
        }
    }

    fn exit(&self) -> u8 {
        if self.answer {
            0
        } else {
            1
        }
    }
}

fn write_certificate(path: &Option<PathBuf>, cert: &Certificate) -> Result<()> {
    if let Some(path) = path {
        std::fs::write(path, print_certificate(cert))
            .map_err(|e| Error::Validation(format!("cannot write certificate: {e}")))?;
    }
    Ok(())
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

/// Runs membership, translating `q`/`eq` domains through the reduction
/// game first.
fn member_any_domain(
    basis: Basis,
    poly: Polynomial,
    opts: EngineOptions,
) -> Result<eqgb::gb::Membership> {
    if basis.domain().is_well_ordered() {
        member_with(&basis, &poly, opts)
    } else {
        let domain = basis.domain().clone();
        let (b2, f2) = reduce_instance(&QInstance { domain, basis, poly })?;
        member_with(&b2, &f2, opts)
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Gb { ideal, field, engine, json } => {
            let field = parse_field(&field)?;
            let basis = parse_ideal(&read_file(&ideal)?, &field)?;
            let start = Instant::now();
            let (out, stats) = buchberger_with(&basis, engine.options())?;
            if json {
                Report { answer: true, stats, millis: start.elapsed().as_millis() }.print(true);
            } else {
                print!("{}", print_basis(&out, &stats.pass_log));
            }
            Ok(0)
        }
        Cmd::Member { ideal, poly, field, engine, output } => {
            let field = parse_field(&field)?;
            let basis = parse_ideal(&read_file(&ideal)?, &field)?;
            let domain = basis.domain().clone();
            let poly = parse_polynomial(&domain, &field, &poly)?;
            let start = Instant::now();
            let m = member_any_domain(basis, poly, engine.options())?;
            write_certificate(&output.certificate, &m.certificate)?;
            let report =
                Report { answer: m.answer, stats: m.stats, millis: start.elapsed().as_millis() };
            report.print(output.json);
            Ok(report.exit())
        }
        Cmd::Reduce { ideal, poly, field, engine, output } => {
            let field = parse_field(&field)?;
            let basis = parse_ideal(&read_file(&ideal)?, &field)?;
            let domain = basis.domain().clone();
            let poly = parse_polynomial(&domain, &field, &poly)?;
            let fuel = engine.options().fuel;
            let (basis, poly) = if domain.is_well_ordered() {
                (basis, poly)
            } else {
                reduce_instance(&QInstance { domain, basis, poly })?
            };
            let cert = reduce_with_fuel(&basis, &poly, &fuel)?;
            write_certificate(&output.certificate, &cert)?;
            if output.json {
                let stats = RunStats { steps: cert.steps.len() as u64, ..RunStats::default() };
                Report { answer: cert.remainder.is_zero(), stats, millis: 0 }.print(true);
            } else {
                print!("{}", print_certificate(&cert));
            }
            Ok(0)
        }
        Cmd::EmbCheck { domain, map, json } => {
            let d = parse_domain(&domain)?;
            let m = parse_local_embedding(&d, &map)?;
            let answer = ca1_extends(&d, &m)?;
            let report = Report { answer, stats: RunStats::default(), millis: 0 };
            report.print(json);
            Ok(report.exit())
        }
        Cmd::EmbPairs { domain, left, right, json } => {
            let d = parse_domain(&domain)?;
            let left = parse_element_set(&d, &left)?;
            let right = parse_element_set(&d, &right)?;
            let pairs = eqgb::ca2_presentation(&d, &left, &right)?;
            if json {
                let stats = RunStats { added: pairs.len() as u64, ..RunStats::default() };
                Report { answer: true, stats, millis: 0 }.print(true);
            } else {
                for (l, r) in &pairs {
                    println!("{}", print_pair_line(l, r));
                }
            }
            Ok(0)
        }
        Cmd::PetriReach { net, source, target, symmetrize, engine, output } => {
            let net = parse_petri(&read_file(&net)?)?;
            let net = petri_validate(&net, symmetrize)?;
            let full = net.full_domain();
            let source = parse_monomial(&full, &source)?;
            let target = parse_monomial(&full, &target)?;
            let start = Instant::now();
            let out = petri_reach(&net, &source, &target, engine.options())?;
            write_certificate(&output.certificate, &out.membership.certificate)?;
            let report = Report {
                answer: out.reachable,
                stats: out.membership.stats,
                millis: start.elapsed().as_millis(),
            };
            report.print(output.json);
            Ok(report.exit())
        }
        Cmd::Linsolve { family, target, field, check_family, engine, output } => {
            let field = parse_field(&field)?;
            let fam = parse_family(&read_file(&family)?, &field)?;
            let target = parse_target_vector(fam.domain(), &field, fam.dim(), &target)?;
            if fam.domain().is_well_ordered() {
                if !validate_family(&fam)? {
                    return Err(Error::Validation(
                        "family entries are not equivariance-consistent".into(),
                    ));
                }
                if check_family {
                    let reps = tuple_orbit_reps(fam.domain(), fam.arity())?;
                    for rep in reps {
                        if !fam.entries().iter().any(|(i, _)| *i == rep) {
                            return Err(Error::Validation(format!(
                                "family does not cover the orbit of ({})",
                                rep.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                            )));
                        }
                    }
                }
            } else {
                accepted_shape(fam.domain())?;
                if check_family {
                    return Err(Error::Validation(
                        "--check-family needs a well-ordered domain".into(),
                    ));
                }
            }
            let start = Instant::now();
            let out = linsolve(&fam, &target, engine.options())?;
            write_certificate(&output.certificate, &out.membership.certificate)?;
            if !output.json {
                if let Some(comb) = &out.combination {
                    for (c, index) in comb {
                        println!(
                            "comb {}*M[({})]",
                            c,
                            index.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                        );
                    }
                }
            }
            let report = Report {
                answer: out.solvable,
                stats: out.membership.stats,
                millis: start.elapsed().as_millis(),
            };
            report.print(output.json);
            Ok(report.exit())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error {}: {}", e.kind(), e);
            ExitCode::from(2)
        }
    }
}
