use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use borel_hilb::hilbert::BorelPoint;
use borel_hilb::io::{parse_ideal_json, parse_points, parse_tangent_json, IdealInput};
use borel_hilb::poset::DEFAULT_POSET_CAP;
use borel_hilb::{
    degenerate_report, enumerate_borel_eigenvectors, enumerate_borel_points, first_order_fan_sample, flip,
    gotzmann_number, is_borel_eigenvector, is_tangent, macaulay_form, torus_eigenvector_type, DegenerationOptions,
    Error, ExponentVector, Form, HilbertPolynomial, HomogeneousIdealBasis, MonomialIdeal, Poset,
    WeightVector,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "borel-hilb", version, about = "Borel-fixed points, tangent eigenvectors and weight degenerations on Hilbert schemes")]
struct Cli {
    /// Seed for every pseudorandom choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,

    /// Largest poset the enumerators will build.
    #[arg(long, global = true, default_value_t = DEFAULT_POSET_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Macaulay form and Gotzmann number of a Hilbert polynomial.
    Gotzmann {
        /// Coefficients, lowest degree first: `1,2` is 2z+1.
        #[arg(long)]
        poly: String,
    },
    /// All Borel-fixed points of the Hilbert scheme of P^n.
    EnumerateBorel {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: usize,
    },
    /// Borel eigenvector families at a Borel-fixed ideal.
    Eigenvectors {
        /// Ideal JSON file, `-` for stdin.
        #[arg(long)]
        ideal: PathBuf,
        /// Degree of the filter; defaults to the largest generator degree.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Tangent-space membership and eigenvector verdicts for a tangent vector.
    TangentCheck {
        /// Tangent vector JSON file, `-` for stdin.
        #[arg(long)]
        tangent: PathBuf,
        /// Defaults to the Hilbert polynomial of the filter's saturation.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Degenerate an ideal or a point set along a weight vector.
    Degenerate {
        #[command(flatten)]
        input: DegenerationInput,
        /// Explicit weight, e.g. `2025,45,1`; defaults to a Lex-inducing weight.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Sample the first-order Gröbner fan with random decreasing weights.
    Fan {
        #[command(flatten)]
        input: DegenerationInput,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// The order isomorphism P(m,n) -> P(n,m).
    Flip {
        #[arg(long)]
        monomial: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
    },
    /// The poset P(m,n) of degree-m monomials under Borel moves.
    Poset {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        /// Emit Graphviz DOT instead of JSON or text.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct DegenerationSource {
    /// Ideal JSON file, `-` for stdin.
    #[arg(long)]
    ideal: Option<PathBuf>,
    /// Points file: one point of P^n per line.
    #[arg(long)]
    points: Option<PathBuf>,
}

#[derive(Args)]
struct DegenerationInput {
    #[command(flatten)]
    source: DegenerationSource,
    /// Hilbert polynomial; defaults to the number of points for `--points`.
    #[arg(long)]
    poly: Option<String>,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn parse_poly(text: &str) -> Result<HilbertPolynomial> {
    Ok(HilbertPolynomial::parse(text)?)
}

fn emit(output: Output, value: serde_json::Value, text: impl FnOnce() -> String) -> Result<()> {
    match output {
        Output::Json => println!("{}", serde_json::to_string_pretty(&value)?),
        Output::Text => println!("{}", text()),
    }
    Ok(())
}

fn load_degeneration_input(input: &DegenerationInput) -> Result<(Vec<Form>, usize, HilbertPolynomial)> {
    if let Some(path) = &input.source.points {
        let points = parse_points(&read_input(path)?)?;
        let rho = match &input.poly {
            Some(p) => parse_poly(p)?,
            None => HilbertPolynomial::from_integers(&[points.len() as i64]),
        };
        let m = u32::try_from(gotzmann_number(&rho)?).context("Gotzmann number out of range")?;
        let basis = HomogeneousIdealBasis::from_points(&points, m)?;
        return Ok((basis.forms().to_vec(), basis.nvars(), rho));
    }
    let path = input.source.ideal.as_ref().expect("clap enforces one source");
    let IdealInput { nvars, forms } = parse_ideal_json(&read_input(path)?)?;
    let poly = input
        .poly
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("--poly is required with --ideal".into()))?;
    Ok((forms, nvars, parse_poly(poly)?))
}

fn point_text(p: &BorelPoint) -> String {
    format!("{}  {}", p.saturation, p.filter.to_text())
}

fn run(cli: Cli) -> Result<()> {
    let output = cli.output;
    match cli.command {
        Command::Gotzmann { poly } => {
            let rho = parse_poly(&poly)?;
            let form = macaulay_form(&rho)?;
            let value = json!({ "poly": rho, "macaulay": form, "gotzmann": form.gotzmann_number() });
            emit(output, value, || format!("m = {:?}\ngotzmann = {}", form.values(), form.gotzmann_number()))
        }
        Command::EnumerateBorel { poly, n } => {
            let rho = parse_poly(&poly)?;
            let points = enumerate_borel_points(&rho, n, cli.cap)?;
            let value = json!({ "poly": rho, "n": n, "count": points.len(), "points": points });
            emit(output, value, || points.iter().map(point_text).collect::<Vec<_>>().join("\n"))
        }
        Command::Eigenvectors { ideal, m } => {
            let ideal: MonomialIdeal = parse_ideal_json(&read_input(&ideal)?)?.monomial_ideal()?;
            if !ideal.is_borel_fixed() {
                return Err(Error::NotBorelFixed.into());
            }
            let m = m.unwrap_or_else(|| ideal.max_generator_degree());
            if m < ideal.max_generator_degree() {
                return Err(Error::DegreeTooSmall { m, max_generator_degree: ideal.max_generator_degree() }.into());
            }
            let rho = ideal.saturate_borel()?.hilbert_polynomial()?;
            let filter = ideal.degree_filter(m)?;
            let families = enumerate_borel_eigenvectors(&filter, &rho)?;
            for f in families.iter().filter(|f| f.is_multi_component()) {
                eprintln!("note: multi-component family with K = {}", f.ty.k);
            }
            let value = json!({ "poly": rho, "filter": filter, "count": families.len(), "families": families });
            emit(output, value, || families.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))
        }
        Command::TangentCheck { tangent, poly } => {
            let v = parse_tangent_json(&read_input(&tangent)?)?;
            let rho = match poly {
                Some(p) => parse_poly(&p)?,
                None => MonomialIdeal::from_monomial_set(v.base()).saturate_borel()?.hilbert_polynomial()?,
            };
            let tangent_ok = is_tangent(&v, &rho)?;
            let ty = torus_eigenvector_type(&v);
            let borel = is_borel_eigenvector(&v);
            let value = json!({
                "is_tangent": tangent_ok,
                "K": ty.as_ref().map(|t| t.k.clone()),
                "f_prime": ty.as_ref().map(|t| t.f_prime.clone()),
                "f_double_prime": ty.as_ref().map(|t| t.f_double_prime.clone()),
                "is_borel_eigenvector": borel,
            });
            emit(output, value, || {
                let k = ty.as_ref().map_or("none".to_string(), |t| t.k.to_string());
                format!("tangent: {tangent_ok}\nK: {k}\nborel eigenvector: {borel}")
            })
        }
        Command::Degenerate { input, weight } => {
            let (forms, nvars, rho) = load_degeneration_input(&input)?;
            let weight = weight.as_deref().map(WeightVector::parse).transpose()?;
            let options = DegenerationOptions { weight, seed: cli.seed, change: None };
            let report = degenerate_report(&forms, nvars, &rho, &options)?;
            let value = serde_json::to_value(&report)?;
            emit(output, value, || {
                let k = report.k.as_ref().map_or("none".to_string(), ToString::to_string);
                let tangent = report.tangent.as_ref().map_or("none".to_string(), ToString::to_string);
                format!(
                    "limit: {}\nK: {k}\ntangent: {tangent}\nborel-fixed limit: {}\nborel eigenvector tangent: {}\ntangent verified: {}\nnote: {}",
                    report.limit.to_text(),
                    report.borel_fixed_limit,
                    report.borel_eigenvector_tangent,
                    report.tangent_verified,
                    report.genericity_note
                )
            })
        }
        Command::Fan { input, trials } => {
            let (forms, nvars, rho) = load_degeneration_input(&input)?;
            let records = first_order_fan_sample(&forms, nvars, &rho, cli.seed, trials)?;
            let value = json!({ "seed": cli.seed, "trials": trials, "records": records });
            emit(output, value, || {
                records
                    .iter()
                    .map(|r| {
                        let k = r.k.as_ref().map_or("none".to_string(), ToString::to_string);
                        format!("w = {}  K = {k}  limit = {}", r.weight, r.limit.to_text())
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::Flip { monomial, m, n } => {
            let a = ExponentVector::parse(&monomial, Some(n + 1))?;
            if a.degree() != m {
                return Err(Error::WrongDegree { expected: m, found: a.degree() }.into());
            }
            let image = flip(&a);
            let text = image.to_text("y");
            emit(output, json!({ "monomial": a, "flip": image, "text": text }), || text.clone())
        }
        Command::Poset { m, n, dot } => {
            let poset = Poset::build_with_cap(m, n, cli.cap)?;
            if dot {
                print!("{}", poset.to_dot(None));
                return Ok(());
            }
            let edges: Vec<(ExponentVector, ExponentVector)> = poset
                .edges()
                .map(|(lo, hi)| (poset.element(lo).clone(), poset.element(hi).clone()))
                .collect();
            let value = json!({ "m": m, "n": n, "size": poset.len(), "elements": poset.elements(), "covers": edges });
            emit(output, value, || {
                edges.iter().map(|(lo, hi)| format!("{} < {}", lo.to_text("x"), hi.to_text("x"))).collect::<Vec<_>>().join("\n")
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<Error>() {
            Some(domain) => {
                eprintln!("error: {domain}");
                ExitCode::from(2)
            }
            None => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}
