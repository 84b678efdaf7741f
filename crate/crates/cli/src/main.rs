//! `csf`: expansions of chromatic quasisymmetric functions of unit interval
//! orders, exhaustive positivity scans, and injection verification.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical violation was found,
//! 2 usage or resource error (including partial scans cut off by --limit).

use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use csf_core::{
    cross_validate, e_coeff_bounce3, e_expansion, e_positivity_witness, inverse_kostka,
    oracle::s_to_m, schur_expansion, ssyt_count, verify_injection, DyckPath, Error,
    InjectionReport, MapName, Partition, SymExpansion, UnitIntervalPoset,
};

#[derive(Parser)]
#[command(name = "csf", version, about = "chromatic quasisymmetric functions of unit interval orders", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    M,
    S,
    E,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// every coefficient of the elementary expansion is nonnegative
    EPositive,
    /// the closed-form coefficients of e_(n-2l,l,l) are nonnegative
    CoeffL0,
    /// the closed-form coefficients of e_(n-2l-1,l+1,l) are nonnegative
    CoeffL1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Thm41,
    Cor46,
}

#[derive(Subcommand)]
enum Command {
    /// Print the expansion of X_G(x,q) in a chosen basis
    Expand {
        /// Dyck path, comma-separated (full form ending in d_n = n accepted)
        #[arg(long)]
        dyck: String,
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a property over every Dyck path on an n x n board
    Scan {
        #[arg(long)]
        n: usize,
        /// restrict to paths with this bounce number
        #[arg(long)]
        bounce: Option<usize>,
        /// restrict to a named path class
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        #[arg(long, value_enum)]
        check: Check,
        /// worker threads (default: all cores); output is order-canonical
        #[arg(long)]
        jobs: Option<usize>,
        /// wall-clock guard in seconds; a cut-off scan exits 2, never 0
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Certify the injection maps over every applicable path of size n
    Verify {
        /// alpha, f, g, phi, psi, sigma1, sigma2, or all
        #[arg(long)]
        map: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        class: Option<ClassArg>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare both structured expansions against brute-force coloring
    CrossValidate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print a Kostka number K[type][shape], or its inverse-matrix entry
    Kostka {
        #[arg(long = "type")]
        type_: String,
        #[arg(long)]
        shape: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Print the bounce decomposition of a Dyck path
    Bounce {
        #[arg(long)]
        dyck: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_jobs(jobs: Option<usize>) -> Result<(), Error> {
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn poset_of(dyck: &str) -> Result<UnitIntervalPoset, Error> {
    UnitIntervalPoset::from_dyck(&dyck.parse()?)
}

fn run(cli: Cli) -> Result<usize, Error> {
    match cli.command {
        Command::Expand { dyck, basis, format } => {
            let poset = poset_of(&dyck)?;
            let expansion: SymExpansion = match basis {
                BasisArg::S => schur_expansion(&poset),
                BasisArg::E => e_expansion(&poset),
                BasisArg::M => s_to_m(&schur_expansion(&poset))?,
            };
            print_expansion(&expansion, format)?;
            Ok(0)
        }
        Command::Scan { n, bounce, class, check, jobs, limit } => {
            configure_jobs(jobs)?;
            scan(n, bounce, class, check, limit)
        }
        Command::Verify { map, n, class, jobs, format } => {
            configure_jobs(jobs)?;
            verify(&map, n, class, format)
        }
        Command::CrossValidate { n, jobs } => {
            configure_jobs(jobs)?;
            let paths = DyckPath::enumerate(n);
            let mut reports: Vec<_> = paths
                .par_iter()
                .map(|d| cross_validate(&UnitIntervalPoset::from_dyck(d).unwrap()))
                .collect::<Result<_, _>>()?;
            reports.sort_by(|a, b| a.dyck.cmp(&b.dyck));
            let mut violations = 0;
            for r in &reports {
                if !r.pass {
                    violations += 1;
                    println!(
                        "FAIL d=({}) {}",
                        join(&r.dyck),
                        r.first_discrepancy.as_deref().unwrap_or("")
                    );
                }
            }
            println!(
                "cross-validate n={n}: {} paths, {} violations",
                reports.len(),
                violations
            );
            Ok(violations)
        }
        Command::Kostka { type_, shape, inverse } => {
            let lambda: Partition = type_.parse()?;
            let mu: Partition = shape.parse()?;
            let value = if inverse {
                inverse_kostka(&lambda, &mu)?
            } else {
                ssyt_count(&lambda, &mu)? as i64
            };
            println!("{value}");
            Ok(0)
        }
        Command::Bounce { dyck, format } => {
            let d: DyckPath = dyck.parse()?;
            let b = d.bounce_data();
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&b).map_err(json_err)?)
                }
                Format::Text => {
                    println!("m=({})", join(&b.m));
                    println!("|m|={}", b.bounce_number());
                    if let Some(blocks) = b.blocks() {
                        println!("S1={{{}}}", join(&b.s1()));
                        println!("S2={{{}}}", join(&b.s2()));
                        println!("S3={{{}}}", join(&b.s3()));
                        println!("(a,b,c)=({},{},{})", blocks.a, blocks.b, blocks.c);
                        println!("k={}", blocks.k);
                    }
                    println!("tau=({})", d.tau());
                }
            }
            Ok(0)
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("json: {e}"))
}

fn print_expansion(x: &SymExpansion, format: Format) -> Result<(), Error> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(x).map_err(json_err)?),
        Format::Text => {
            let letter = x.basis().letter();
            for (partition, poly) in x.iter() {
                println!("{letter}({partition}): {poly}");
            }
        }
    }
    Ok(())
}

fn class_member(d: &DyckPath, class: Option<ClassArg>) -> bool {
    match class {
        None => true,
        Some(ClassArg::Thm41) => d.is_thm41_class(),
        Some(ClassArg::Cor46) => d.is_cor46_class(),
    }
}

fn scan(
    n: usize,
    bounce: Option<usize>,
    class: Option<ClassArg>,
    check: Check,
    limit: Option<u64>,
) -> Result<usize, Error> {
    if matches!(check, Check::CoeffL0 | Check::CoeffL1) && bounce.is_some_and(|b| b != 3) {
        return Err(Error::Precondition(
            "coefficient checks apply to bounce-3 paths only".into(),
        ));
    }
    let started = Instant::now();
    let deadline = limit.map(Duration::from_secs);
    let cut_off = AtomicBool::new(false);

    let paths: Vec<DyckPath> = DyckPath::enumerate(n)
        .into_iter()
        .filter(|d| bounce.is_none_or(|b| d.bounce_number() == b))
        .filter(|d| class_member(d, class))
        .filter(|d| !matches!(check, Check::CoeffL0 | Check::CoeffL1) || d.bounce_number() == 3)
        .collect();

    let mut results: Vec<(usize, Option<String>)> = paths
        .par_iter()
        .enumerate()
        .map(|(i, d)| {
            if deadline.is_some_and(|dl| started.elapsed() > dl) {
                cut_off.store(true, Ordering::Relaxed);
                return (i, None);
            }
            let poset = UnitIntervalPoset::from_dyck(d).unwrap();
            let violation = match check {
                Check::EPositive => {
                    let x: SymExpansion = e_expansion(&poset);
                    e_positivity_witness(&x).unwrap().map(|w| {
                        format!(
                            "d=({d}) coefficient of e_({}) at q^{} is {}",
                            w.partition, w.power, w.coefficient
                        )
                    })
                }
                Check::CoeffL0 | Check::CoeffL1 => {
                    let j = if check == Check::CoeffL0 { 0 } else { 1 };
                    let blocks = poset.bounce().blocks().unwrap();
                    let min_abc = blocks.a.min(blocks.b).min(blocks.c);
                    let mut bad = None;
                    for l in 0..=min_abc {
                        if 2 * l + j > blocks.k {
                            continue;
                        }
                        let coeff: csf_core::QPoly = e_coeff_bounce3(&poset, l, j).unwrap();
                        if let Some((power, c)) = coeff.first_negative() {
                            bad = Some(format!(
                                "d=({d}) closed-form cell (l={l}, j={j}) has {c} at q^{power}"
                            ));
                            break;
                        }
                    }
                    bad
                }
            };
            (i, violation)
        })
        .collect();
    results.sort_by_key(|&(i, _)| i);

    let mut violations = 0;
    for (_, v) in &results {
        if let Some(msg) = v {
            violations += 1;
            println!("FAIL {msg}");
        }
    }
    if cut_off.load(Ordering::Relaxed) {
        eprintln!("scan cut off by --limit after {:?}; results are partial", started.elapsed());
        return Err(Error::Precondition("partial scan".into()));
    }
    println!(
        "scan n={n} check={}: {} paths, {} violations",
        match check {
            Check::EPositive => "e-positive",
            Check::CoeffL0 => "coeff-l0",
            Check::CoeffL1 => "coeff-l1",
        },
        paths.len(),
        violations
    );
    Ok(violations)
}

fn verify(map: &str, n: usize, class: Option<ClassArg>, format: Format) -> Result<usize, Error> {
    let maps: Vec<MapName> = if map == "all" {
        MapName::ALL.to_vec()
    } else {
        vec![map.parse()?]
    };
    let paths: Vec<DyckPath> = DyckPath::enumerate(n)
        .into_iter()
        .filter(|d| d.bounce_number() == 3)
        .filter(|d| class_member(d, class))
        .collect();

    let mut reports: Vec<InjectionReport> = paths
        .par_iter()
        .map(|d| {
            let poset = UnitIntervalPoset::from_dyck(d).unwrap();
            let blocks = poset.bounce().blocks().unwrap();
            let min_abc = blocks.a.min(blocks.b).min(blocks.c);
            let mut out = Vec::new();
            for &m in &maps {
                if m.takes_l() {
                    for l in 0..=min_abc {
                        out.push(verify_injection(m, &poset, Some(l))?);
                    }
                } else if d.is_thm41_class() {
                    out.push(verify_injection(m, &poset, None)?);
                }
            }
            Ok::<_, Error>(out)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    reports.sort_by(|a, b| (&a.dyck, a.map.as_str(), a.l).cmp(&(&b.dyck, b.map.as_str(), b.l)));

    let failures = reports.iter().filter(|r| !r.pass()).count();
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports).map_err(json_err)?),
        Format::Text => {
            for r in &reports {
                let l = r.l.map_or(String::new(), |l| format!(" l={l}"));
                println!(
                    "{} d=({}){} domain={} image={} {}",
                    r.map.as_str(),
                    join(&r.dyck),
                    l,
                    r.domain,
                    r.image,
                    r.status
                );
                for f in &r.failures {
                    println!("  failure: {} {:?}", f.property, f.tableau);
                }
            }
            println!("verify map={map} n={n}: {} reports, {failures} failing", reports.len());
        }
    }
    Ok(failures)
}
