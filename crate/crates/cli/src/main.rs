mod input;
mod report;

use std::process::ExitCode;

use autoreal::beta::{
    beta_ladder_with, classify_pisot_salem, greedy_beta_expansion, lemma_dist_prime_check,
    BetaLadderConfig, Classification, FieldElement, IntPoly, NumberField, DEFAULT_TOLERANCE,
};
use autoreal::cobham::to_morphic;
use autoreal::contfrac::{
    certified_cf_of_interval, convergents, lemma_dist2_check, periodic_cf_quadratic,
    quadratic_ladder_with_depth, CfWord,
};
use autoreal::digits::periodic_value;
use autoreal::diophantine::{
    build_ladder_with, empirical_exponent, lemma_dist_check, measure_bound, overlap_ladder_with,
    tmm_verify, LadderConfig, DEFAULT_MAX_DEPTH,
};
use autoreal::error::{Error, Result};
use autoreal::exact::{format_rational, parse_rational, RationalJson};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::json;

use input::{check_base, parse_digits, Input, SourceArgs};
use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "autoreal",
    version,
    about = "Exact Diophantine analysis of automatic real numbers"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Cap on the number of digits any scan reads.
    #[arg(long, env = "AUTOREAL_MAX_DEPTH", default_value_t = DEFAULT_MAX_DEPTH, global = true)]
    max_depth: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of the sequence at n.
    Eval {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: u64,
    },
    /// First LEN terms of the sequence.
    Prefix {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        len: usize,
    },
    /// Kernel size and representatives.
    Kernel {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Minimal DFAO, as JSON.
    Minimize {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// DFAO reading digits in the opposite order, as JSON.
    Reverse {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Converts between a DFAO and a morphic representation.
    Cobham {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// The irrationality-measure bound dk(k^m + 1).
    Bound {
        #[arg(long, requires_all = ["k", "m"])]
        d: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Rational approximants from a repeated internal letter.
    Ladder {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, short = 'b')]
        base: u32,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value = "1/4")]
        epsilon: String,
    },
    /// Rational approximants from an overlap prefix of the internal word.
    OverlapLadder {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, short = 'b')]
        base: u32,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Thue-Morse approximant inequalities for base b and level n.
    Tmm {
        #[arg(long, short = 'b')]
        base: u32,
        #[arg(long)]
        n: usize,
    },
    /// Observed approximation exponents of the convergents.
    Exponent {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, short = 'b')]
        base: u32,
        #[arg(long, default_value_t = 4096)]
        depth: usize,
    },
    /// Distance lower bound between 0.U V V ... and a digit stream.
    LemmaDist {
        #[arg(long, short = 'b')]
        base: u32,
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        j: usize,
        /// Digits of xi; otherwise the sequence source is read.
        #[arg(long)]
        stream: Option<String>,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Convergents of a continued fraction, or the certified expansion of an interval.
    Cf {
        /// Integer array [a0, a1, ...].
        #[arg(long, conflicts_with_all = ["lo", "hi"])]
        quotients: Option<String>,
        #[arg(long, requires = "hi")]
        lo: Option<String>,
        #[arg(long, requires = "lo")]
        hi: Option<String>,
    },
    /// Quadratic irrational [0; overline(U)].
    CfQuadratic {
        /// Integer array of the period.
        #[arg(long)]
        period: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Quadratic approximants of a continued fraction with automatic quotients.
    CfLadder {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Distance lower bound between two continued fractions with bounded quotients.
    LemmaDist2 {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        bound: u64,
    },
    /// Pisot / Salem classification of the largest root of a monic polynomial.
    BetaClassify {
        /// Ascending integer coefficients, e.g. [-1, -1, 1].
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Greedy beta-expansion of x in [0, 1).
    BetaExpand {
        #[arg(long)]
        poly: String,
        /// Coefficients of x in the basis 1, beta, beta^2, ..., as num/den strings separated by commas.
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 32)]
        n: usize,
    },
    /// Approximants in base beta, with annihilator heights.
    BetaLadder {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value = "1/4")]
        epsilon: String,
    },
    /// Distance lower bound in base beta.
    LemmaDistPrime {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        j: usize,
    },
}

fn rational_arg(text: &str) -> Result<BigRational> {
    parse_rational(text.trim())
}

fn rational_json(x: &BigRational) -> serde_json::Value {
    serde_json::to_value(RationalJson::from(x)).expect("plain strings")
}

fn cf_arg(text: &str) -> Result<CfWord> {
    CfWord::parse_json(text)
}

fn field_arg(text: &str) -> Result<std::sync::Arc<NumberField>> {
    NumberField::parse_json(text)
}

fn depth_guard(depth: usize, cap: usize) -> Result<()> {
    if depth > cap {
        return Err(Error::Precondition(format!(
            "depth {depth} exceeds the cap {cap} (AUTOREAL_MAX_DEPTH)"
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report> {
    let cap = cli.max_depth;
    let ladder_config = LadderConfig {
        max_depth: cap,
        ..LadderConfig::default()
    };
    match &cli.command {
        Command::Eval { source, n } => {
            let a = source.dfao()?;
            let v = a.eval_name(*n).to_string();
            Ok(Report::info(
                v.clone(),
                json!({ "n": n.to_string(), "value": v }),
            ))
        }
        Command::Prefix { source, len } => {
            depth_guard(*len, cap)?;
            let w = match source.load()? {
                Input::Dfao(a) => a.sequence_prefix(*len),
                Input::Morphic(m) => m.sequence_prefix(*len),
                // fixed point of a bare morphism, from its first source letter
                Input::Morphism(m) => m.fixed_point_prefix(autoreal::words::Letter(0), *len)?,
            };
            let text = w.to_string();
            Ok(Report::info(
                text.clone(),
                json!({ "len": len, "prefix": text }),
            ))
        }
        Command::Kernel { source } => {
            let k = source.dfao()?.kernel()?;
            let human = format!(
                "kernel size {}\n{}",
                k.representatives.len(),
                k.representatives
                    .iter()
                    .map(|r| format!("  n -> a(k^{} n + {})", r.i, r.j))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            Ok(Report::info(
                human,
                json!({ "size": k.representatives.len(), "kernel": k }),
            ))
        }
        Command::Minimize { source } => {
            let a = source.dfao()?.minimize();
            Ok(Report::document(serde_json::to_value(a.to_json())?))
        }
        Command::Reverse { source } => {
            let a = source.dfao()?;
            let r = a.reverse_reading()?;
            Ok(Report::document(serde_json::to_value(r.to_json())?))
        }
        Command::Cobham { source } => match source.load()? {
            Input::Dfao(a) => Ok(Report::document(serde_json::to_value(
                to_morphic(&a)?.to_json(),
            )?)),
            Input::Morphic(m) => Ok(Report::document(serde_json::to_value(
                m.to_automaton().to_json(),
            )?)),
            other => Err(Error::Parse(format!(
                "expected a DFAO or morphic representation, got a {}",
                other.kind()
            ))),
        },
        Command::Bound { d, k, m, source } => {
            let (d, k, m) = match (d, k, m) {
                (Some(d), Some(k), Some(m)) => (*d, *k, *m),
                _ => {
                    let rep = source.morphic()?;
                    let km = rep.to_automaton().kernel()?.m;
                    (
                        rep.internal_alphabet_size() as u64,
                        rep.k() as u64,
                        km as u32,
                    )
                }
            };
            let b = measure_bound(d, k, m)?;
            Ok(Report::info(
                b.to_string(),
                json!({ "d": d, "k": k, "m": m, "bound": b.to_string() }),
            ))
        }
        Command::Ladder {
            source,
            base,
            n_max,
            epsilon,
        } => {
            let b = check_base(*base)?;
            let eps = rational_arg(epsilon)?;
            let rep = build_ladder_with(&source.morphic()?, b, *n_max, &eps, &ladder_config)?;
            Ok(report::ladder(&rep))
        }
        Command::OverlapLadder {
            source,
            base,
            n_max,
        } => {
            let b = check_base(*base)?;
            let rep = overlap_ladder_with(&source.morphic()?, b, *n_max, &ladder_config)?;
            Ok(report::ladder(&rep))
        }
        Command::Tmm { base, n } => {
            let rep = tmm_verify(check_base(*base)?, *n)?;
            Ok(report::tmm(&rep))
        }
        Command::Exponent {
            source,
            base,
            depth,
        } => {
            depth_guard(*depth, cap)?;
            let seq = source.sequence()?;
            let rep = empirical_exponent(&seq, check_base(*base)?, *depth)?;
            Ok(report::exponent(&rep))
        }
        Command::LemmaDist {
            base,
            u,
            v,
            j,
            stream,
            source,
        } => {
            let b = check_base(*base)?;
            let x = periodic_value(&parse_digits(u)?, &parse_digits(v)?, b)?;
            let rep = match stream {
                Some(s) => {
                    let digits = parse_digits(s)?;
                    lemma_dist_check(&x, &digits, *j, digits.len().min(cap))?
                }
                None => lemma_dist_check(&x, &source.sequence()?, *j, cap)?,
            };
            let human = format!(
                "j = {}, r = {}, s = {}\nbound 1/{}^{} = {}\ncertified at depth {}: {}",
                rep.j,
                rep.r,
                rep.s,
                b,
                rep.j + rep.s,
                format_rational(&rep.bound),
                rep.depth,
                if rep.holds { "holds" } else { "FAILS" }
            );
            Ok(Report::check(rep.holds, human, serde_json::to_value(&rep)?))
        }
        Command::Cf { quotients, lo, hi } => {
            let cf = match (quotients, lo, hi) {
                (Some(q), _, _) => cf_arg(q)?,
                (None, Some(lo), Some(hi)) => {
                    let (lo, hi) = (rational_arg(lo)?, rational_arg(hi)?);
                    if lo > hi {
                        return Err(Error::Precondition("need lo <= hi".into()));
                    }
                    certified_cf_of_interval(&lo, &hi).ok_or_else(|| {
                        Error::Undecided("interval has no certified expansion".into())
                    })?
                }
                _ => return Err(Error::Parse("pass --quotients or --lo and --hi".into())),
            };
            let conv = convergents(&cf, cf.len());
            let human = format!(
                "{cf}\n{}",
                conv.iter()
                    .map(|(p, q)| format!("  {p}/{q}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            let json = json!({
                "cf": cf,
                "convergents": conv
                    .iter()
                    .map(|(p, q)| rational_json(&BigRational::new(p.clone(), q.clone())))
                    .collect::<Vec<_>>(),
            });
            Ok(Report::info(human, json))
        }
        Command::CfQuadratic { period, terms } => {
            let ints = autoreal::contfrac::parse_integer_array(period)?;
            let u = ints
                .into_iter()
                .map(|x| {
                    BigUint::try_from(x)
                        .map_err(|_| Error::Parse("partial quotients must be positive".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut q = periodic_cf_quadratic(&u)?;
            let poly = IntPoly::new(q.poly.clone());
            let cf = q.cf_prefix(*terms);
            let human = format!(
                "{poly}\nroot in [{}, {}]\n{cf}",
                format_rational(&q.lo),
                format_rational(&q.hi)
            );
            Ok(Report::info(human, json!({ "quadratic": q, "cf": cf })))
        }
        Command::CfLadder { source, n_max } => {
            let rep = quadratic_ladder_with_depth(&source.morphic()?, *n_max, cap.min(1 << 16))?;
            Ok(report::quadratic(&rep))
        }
        Command::LemmaDist2 { alpha, xi, bound } => {
            let rep = lemma_dist2_check(&cf_arg(alpha)?, &cf_arg(xi)?, &BigUint::from(*bound))?;
            let human = format!(
                "n = {}\nbound {}\ndistance >= {}\n{}",
                rep.n,
                format_rational(&rep.bound),
                format_rational(&rep.distance_lower),
                if rep.holds { "holds" } else { "FAILS" }
            );
            Ok(Report::check(rep.holds, human, serde_json::to_value(&rep)?))
        }
        Command::BetaClassify { poly, tol } => {
            let cert = classify_pisot_salem(&IntPoly::parse_json(poly)?, *tol)?;
            let name = serde_json::to_value(cert.classification)?;
            let human = format!(
                "{}\nbeta ~ {}\nconjugate modulus enclosures: {}",
                name.as_str().unwrap_or_default(),
                cert.beta,
                cert.conjugate_moduli
                    .iter()
                    .map(|(lo, hi)| format!("[{lo:.12}, {hi:.12}]"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            // classification is informational; only an unresolved boundary is a non-result
            let holds = cert.classification != Classification::BoundaryUnresolved;
            Ok(Report::check(holds, human, serde_json::to_value(&cert)?))
        }
        Command::BetaExpand { poly, x, n } => {
            let field = field_arg(poly)?;
            let coeffs = x.split(',').map(rational_arg).collect::<Result<Vec<_>>>()?;
            let x = FieldElement::new(&field, coeffs)?;
            let g = greedy_beta_expansion(&x, *n)?;
            let digits: String = g
                .digits
                .iter()
                .map(|d| char::from_digit(*d, 36).unwrap_or('?'))
                .collect();
            let remainder: Vec<String> = g.remainder.coeffs().iter().map(format_rational).collect();
            let human = format!("0.{digits}\nremainder [{}]", remainder.join(", "));
            Ok(Report::info(
                human,
                json!({ "digits": g.digits, "remainder": remainder }),
            ))
        }
        Command::BetaLadder {
            source,
            poly,
            n_max,
            epsilon,
        } => {
            let field = field_arg(poly)?;
            let config = BetaLadderConfig {
                epsilon: rational_arg(epsilon)?,
                max_depth: cap.min(1 << 16),
                ..BetaLadderConfig::default()
            };
            let rep = beta_ladder_with(&source.morphic()?, &field, *n_max, &config)?;
            Ok(report::beta_ladder(&rep))
        }
        Command::LemmaDistPrime { poly, u, v, xi, j } => {
            let field = field_arg(poly)?;
            let rep = lemma_dist_prime_check(
                &parse_digits(u)?,
                &parse_digits(v)?,
                &field,
                &parse_digits(xi)?,
                *j,
            )?;
            let human = format!(
                "j = {}, r = {}, s = {}, degree {}\nbound in [{}, {}]\ndecided at depth {}: {}",
                rep.j,
                rep.r,
                rep.s,
                rep.l,
                format_rational(&rep.bound.lo),
                format_rational(&rep.bound.hi),
                rep.depth,
                if rep.holds { "holds" } else { "FAILS" }
            );
            Ok(Report::check(rep.holds, human, serde_json::to_value(&rep)?))
        }
    }
}

/// 1 for a certification that could not be made, 2 for bad input or unmet preconditions.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::Undecided(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            report.print(cli.format == Format::Json);
            ExitCode::from(if report.holds() { 0 } else { 1 })
        }
        Err(e) => {
            if cli.format == Format::Json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
