use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use scheme_kit::equivalence::{schemes_equivalent, CheckOptions, EquivalenceError};
use scheme_kit::fixtures::{
    build_da_scheme, build_tangency_fixture, corpus, standard_transform, transform_scheme, DaParams,
    TangencyParams,
};
use scheme_kit::mat2::Mat2;
use scheme_kit::moduli::{emit_separatrix_polyline, tau_iterate, FdOptions, SeparatrixKind};
use scheme_kit::scheme::{parse_scheme, serialize_scheme, validate_scheme, AttractorKind, Certificate};
use scheme_kit::separability::{check_finite_moduli_criteria, check_separable, Facts, Status};
use scheme_kit::{MapSpecQ, SchemeF64};

/// Exit code for unreadable or invalid input.
const INVALID: u8 = 3;

#[derive(Parser)]
#[command(name = "scheme-kit", version, about = "Schemes of surface diffeomorphisms: validation, moduli and equivalence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scheme files.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Moduli of tangencies.
    #[command(subcommand)]
    Moduli(ModuliCmd),
    /// Generate fixture schemes.
    #[command(subcommand)]
    Fixture(FixtureCmd),
    /// Separability of the one-dimensional basic sets of a scheme.
    #[command(subcommand)]
    Separability(FactsCmd),
    /// Finite-moduli criteria over an intersection table.
    #[command(subcommand)]
    Criteria(FactsCmd),
    /// Plot data.
    #[command(subcommand)]
    Plot(PlotCmd),
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Parse and validate a scheme; prints the violation report.
    Validate { file: PathBuf },
    /// Decide equivalence of two schemes.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Verify this certificate instead of searching.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        matrix_bound: i64,
        #[arg(long, default_value_t = 64)]
        m_bound: i64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Node limit of the certificate search.
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        /// Also write the verdict to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ModuliCmd {
    /// τ, contact order and log ratio of every tangency in a map spec.
    Compute {
        mapspec: PathBuf,
        #[arg(long, default_value_t = 1e-4)]
        fd_step: f64,
        #[arg(long, default_value_t = 1e-6)]
        fd_tol: f64,
    },
    /// Modulus at the k-th iterate: |λ/μ|^k·τ.
    Iterate {
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
    },
}

#[derive(Args)]
struct Output {
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FixtureCmd {
    /// Derived-from-Anosov model built on a hyperbolic matrix.
    Da {
        /// Entries a,b,c,d of [[a,b],[c,d]].
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// λ,μ of an attached tangency family.
        #[arg(long, allow_hyphen_values = true)]
        family: Option<String>,
        /// Basis change applied to all homotopy classes, as a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
        #[arg(long)]
        repeller: bool,
        /// Include separability facts.
        #[arg(long)]
        facts: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Tangency families spread over one or two tori.
    Tangency {
        #[arg(long, default_value_t = 2)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        components: usize,
        #[arg(long, default_value_t = 1)]
        families: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        tau: f64,
        /// Per-point exponents k_i, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        windings: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// A fixture from the built-in corpus.
    Named {
        /// Fixture name; `list` prints the available names.
        name: String,
        #[command(flatten)]
        out: Output,
    },
    /// An equivalent copy of a scheme with relabelled data, plus the
    /// certificate relating the two.
    Transform {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        variant: i64,
        #[arg(long, default_value = "t.")]
        prefix: String,
        #[arg(long)]
        certificate: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum FactsCmd {
    /// Check a scheme file carrying facts, or a standalone facts file.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Stable,
    Unstable,
}

#[derive(Subcommand)]
enum PlotCmd {
    /// CSV samples (header `x,y`) of a separatrix.
    Separatrix {
        mapspec: PathBuf,
        #[arg(long)]
        saddle: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Parameter range lo,hi.
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        range: String,
        #[command(flatten)]
        out: Output,
    },
}

fn main() -> ExitCode {
    // clap would exit with 2 on usage errors, which means "inconclusive" here
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INVALID } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INVALID)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_scheme(path: &Path) -> Result<SchemeF64> {
    parse_scheme(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn parse_list<T: std::str::FromStr>(s: &str, n: Option<usize>, what: &str) -> Result<Vec<T>> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<T>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| anyhow!("{what}: cannot parse {s:?}"))?;
    if let Some(n) = n {
        if v.len() != n {
            bail!("{what}: expected {n} comma-separated values, got {}", v.len());
        }
    }
    Ok(v)
}

fn parse_matrix(s: &str, what: &str) -> Result<Mat2> {
    let v: Vec<i64> = parse_list(s, Some(4), what)?;
    Ok(Mat2::new(v[0], v[1], v[2], v[3]))
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Undetermined => 2,
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Scheme(SchemeCmd::Validate { file }) => {
            let s = load_scheme(&file)?;
            let report = validate_scheme(&s);
            print!("{}", json(&report));
            Ok(if report.is_empty() { 0 } else { INVALID })
        }
        Command::Scheme(SchemeCmd::Compare {
            a,
            b,
            certificate,
            matrix_bound,
            m_bound,
            tol,
            budget,
            output,
        }) => {
            let (s1, s2) = (load_scheme(&a)?, load_scheme(&b)?);
            let cert = match certificate {
                Some(p) => Some(
                    Certificate::parse(&read(&p)?)
                        .map_err(|e| anyhow!("parsing {}: {e}", p.display()))?,
                ),
                None => None,
            };
            let opts = CheckOptions {
                tol,
                m_bound,
                matrix_bound,
                budget,
            };
            match schemes_equivalent(&s1, &s2, cert.as_ref(), &opts) {
                Ok(v) => {
                    let text = v.to_text();
                    print!("{text}");
                    if let Some(p) = output {
                        fs::write(&p, &text).with_context(|| format!("writing {}", p.display()))?;
                    }
                    Ok(v.outcome.exit_code() as u8)
                }
                Err(EquivalenceError::ValidationFailed { which, report }) => {
                    eprintln!("error: {which} scheme is invalid");
                    print!("{}", json(&report));
                    Ok(INVALID)
                }
            }
        }
        Command::Moduli(ModuliCmd::Compute { mapspec, fd_step, fd_tol }) => {
            let spec = MapSpecQ::parse(&read(&mapspec)?)?;
            let reports = spec.compute(&FdOptions { step: fd_step, tol: fd_tol })?;
            print!("{}", json(&reports));
            Ok(0)
        }
        Command::Moduli(ModuliCmd::Iterate { tau, lambda, mu, k }) => {
            scheme_kit::moduli::check_eigenvalues(mu, lambda)?;
            println!("{:?}", tau_iterate(tau, lambda, mu, k));
            Ok(0)
        }
        Command::Fixture(f) => fixture(f),
        Command::Separability(FactsCmd::Check { file }) => {
            let s = load_scheme(&file)?;
            let facts = s
                .facts
                .as_ref()
                .ok_or_else(|| anyhow!("{} declares no facts", file.display()))?;
            let reports: Vec<_> = s.attractors.iter().map(|a| check_separable(a, facts)).collect();
            print!("{}", json(&reports));
            Ok(status_code(Status::combine(reports.iter().map(|r| r.status))))
        }
        Command::Criteria(FactsCmd::Check { file }) => {
            let text = read(&file)?;
            let facts = match Facts::parse(&text) {
                Ok(f) => f,
                Err(facts_err) => match parse_scheme::<f64>(&text) {
                    Ok(s) => s
                        .facts
                        .ok_or_else(|| anyhow!("{} declares no facts", file.display()))?,
                    Err(_) => bail!("parsing {}: {facts_err}", file.display()),
                },
            };
            let report = check_finite_moduli_criteria(&facts);
            print!("{}", json(&report));
            Ok(status_code(report.status))
        }
        Command::Plot(PlotCmd::Separatrix {
            mapspec,
            saddle,
            kind,
            samples,
            range,
            out,
        }) => {
            let spec = MapSpecQ::parse(&read(&mapspec)?)?;
            let r: Vec<f64> = parse_list(&range, Some(2), "--range")?;
            let which = match kind {
                Kind::Stable => SeparatrixKind::Stable,
                Kind::Unstable => SeparatrixKind::Unstable,
            };
            let pts = emit_separatrix_polyline(&spec, &saddle, which, samples, (r[0], r[1]))?;
            let mut csv = String::from("x,y\n");
            for [x, y] in pts {
                csv.push_str(&format!("{x:?},{y:?}\n"));
            }
            emit(&out, &csv)?;
            Ok(0)
        }
    }
}

fn fixture(cmd: FixtureCmd) -> Result<u8> {
    match cmd {
        FixtureCmd::Da {
            matrix,
            tau,
            family,
            basis,
            repeller,
            facts,
            out,
        } => {
            let family = match family {
                Some(f) => {
                    let v: Vec<f64> = parse_list(&f, Some(2), "--family")?;
                    Some((v[0], v[1]))
                }
                None => None,
            };
            let p = DaParams {
                tau_seed: tau,
                family,
                basis: match basis {
                    Some(b) => parse_matrix(&b, "--basis")?,
                    None => Mat2::IDENTITY,
                },
                kind: if repeller {
                    AttractorKind::Repeller
                } else {
                    AttractorKind::Attractor
                },
                with_facts: facts,
                ..DaParams::new(parse_matrix(&matrix, "--matrix")?)
            };
            emit(&out, &serialize_scheme(&build_da_scheme(&p)?))?;
            Ok(0)
        }
        FixtureCmd::Tangency {
            points,
            components,
            families,
            lambda,
            mu,
            tau,
            windings,
            out,
        } => {
            let p = TangencyParams {
                tau_seed: tau,
                windings: match windings {
                    Some(w) => parse_list(&w, None, "--windings")?,
                    None => vec![],
                },
                families,
                ..TangencyParams::new(points, components, lambda, mu)
            };
            emit(&out, &serialize_scheme(&build_tangency_fixture(&p)?))?;
            Ok(0)
        }
        FixtureCmd::Named { name, out } => {
            let all = corpus();
            if name == "list" {
                let names: Vec<_> = all.iter().map(|(n, _)| *n).collect();
                emit(&out, &format!("{}\n", names.join("\n")))?;
                return Ok(0);
            }
            let (_, s) = all
                .into_iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| anyhow!("no fixture named {name:?}; try `fixture named list`"))?;
            emit(&out, &serialize_scheme(&s))?;
            Ok(0)
        }
        FixtureCmd::Transform {
            file,
            variant,
            prefix,
            certificate,
            out,
        } => {
            let s = load_scheme(&file)?;
            let (t, cert) = transform_scheme(&s, &standard_transform(&s, &prefix, variant))?;
            fs::write(&certificate, cert.to_text())
                .with_context(|| format!("writing {}", certificate.display()))?;
            emit(&out, &serialize_scheme(&t))?;
            Ok(0)
        }
    }
}
