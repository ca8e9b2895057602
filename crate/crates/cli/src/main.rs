//! Command-line front end: every library operation as a subcommand with
//! machine-readable JSON output (default) or a short text rendering.
//!
//! Exit codes: 0 success, 2 precondition or parse errors, 1 internal
//! invariant failures.

mod output;

use std::fs::File;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use burau::braid::{parse_word, BraidWord};
use burau::burau::{burau as burau_image, conjugated_generators, specialize, squier_form, verify_duality};
use burau::classifier::{classify, duality_check};
use burau::error::Error;
use burau::forensics::{
    b4_kernel_pair_check, default_galois_words, entry21_polynomial, galois_discreteness_certificate,
    hunt_unfaithful,
};
use burau::laurent::isolate_real_roots;
use burau::moebius::{
    classify_isometry, fixed_points, orbit_accumulation_test, pingpong_certificate,
    render_disk_figure, rotation_data, IsometryClass,
};
use burau::scalar::{parse_scalar, rat, Rat, RealScalar};

#[derive(Parser)]
#[command(name = "burau", version, about = "Burau specializations of B3/B4: exact classification and forensics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Float-mode rotation matching tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    epsilon: f64,
    /// Float-mode rotation matching denominator bound
    #[arg(long, global = true, default_value_t = 1000)]
    n_max: u64,
    /// Width to which root intervals are refined (rational, e.g. 1/1000000)
    #[arg(long, global = true, default_value = "1/1000000")]
    refine_width: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a real specialization parameter
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Print the symbolic Burau image of a braid word
    Burau(WordArgs),
    /// Evaluate the Burau image of a word at a scalar
    Specialize {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Classify the isometry type of x, y, or y x^-1 at a scalar
    Isometry {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum)]
        gen: Generator,
    },
    /// Isolate the real roots of the 2-1 entry of a B3 word
    Roots {
        #[arg(long)]
        word: String,
    },
    /// Hunt unfaithful specializations from the 2-1 entry of a B3 word
    Hunt {
        #[arg(long)]
        word: String,
    },
    /// Run one of the built-in verifications
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Render a Poincare-disk fundamental-domain figure as SVG
    Figure {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        case: u8,
        #[arg(long)]
        out: String,
    },
    /// Iterate y on the elliptic fixed point of x and measure accumulation
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        iters: usize,
        #[arg(long, default_value_t = 0.05)]
        threshold: f64,
    },
}

#[derive(Args)]
struct WordArgs {
    /// Strand count (3 or 4)
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Braid word, e.g. "s1 s2^-1"
    #[arg(long)]
    word: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Generator {
    X,
    Y,
    #[value(name = "yx-inv")]
    YxInv,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Derive Squier's form and check the defining relation on generators
    Squier {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Check the t <-> 1/t duality conjugation for a word (or a default set)
    Duality {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        word: Option<String>,
    },
    /// The omega pair: symbolically distinct, equal at t0 = (3+sqrt5)/2
    B4Pair,
    /// Ping-pong schedule certificate for a regime case
    Pingpong {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        case: u8,
    },
    /// Galois discreteness certificate at a unit quadratic integer
    Galois {
        /// alpha in the scalar grammar, e.g. q(3/2,1/2,5)
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Words to check (defaults to the built-in sample set)
        #[arg(long)]
        word: Vec<String>,
    },
    /// classify(t) agrees with classify(1/t) on discreteness and faithfulness
    ClassifyDuality {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn parse_width(text: &str) -> Result<Rat, Error> {
    match parse_scalar(text)? {
        RealScalar::Rational(r) if r > rat(0, 1) => Ok(r),
        RealScalar::Float(f) if f > 0.0 => {
            // convert decimal widths like 1e-6 to an exact rational bound
            let denom = (1.0 / f).ceil() as i64;
            Ok(rat(1, denom.max(1)))
        }
        _ => Err(Error::ScalarParse(format!(
            "refine width must be a positive rational, got '{text}'"
        ))),
    }
}

fn generator_matrix(gen: Generator, t: &RealScalar) -> Result<burau::burau::RealMatrix, Error> {
    let (x, y) = conjugated_generators();
    match gen {
        Generator::X => specialize(&x, t),
        Generator::Y => specialize(&y, t),
        Generator::YxInv => {
            let xs = specialize(&x, t)?;
            let ys = specialize(&y, t)?;
            ys.mul(&xs.inverse()?)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Classify { t } => {
            let t0 = parse_scalar(t)?;
            let verdict = classify(&t0, cli.epsilon, cli.n_max)?;
            output::emit_classify(&verdict, json);
        }
        Command::Burau(args) => {
            let w = parse_word(&args.word, args.n)?;
            let m = burau_image(&w)?;
            output::emit_laurent_matrix(&w, &m, json);
        }
        Command::Specialize { word, t } => {
            let w = parse_word(&word.word, word.n)?;
            let t0 = parse_scalar(t)?;
            let m = specialize(&burau_image(&w)?, &t0)?;
            output::emit_real_matrix(&w, &t0, &m, json);
        }
        Command::Isometry { t, gen } => {
            let t0 = parse_scalar(t)?;
            let m = generator_matrix(*gen, &t0)?;
            let class = classify_isometry(&m)?;
            let fixed = fixed_points(&m).ok();
            let rotation = if let IsometryClass::Elliptic { .. } = class {
                Some(rotation_data(&m, &t0, cli.epsilon, cli.n_max)?)
            } else {
                None
            };
            let name = match gen {
                Generator::X => "x",
                Generator::Y => "y",
                Generator::YxInv => "yx-inv",
            };
            output::emit_isometry(name, &t0, &class, fixed.as_ref(), rotation.as_ref(), json);
        }
        Command::Roots { word } => {
            let w = parse_word(word, 3)?;
            let entry = entry21_polynomial(&w)?;
            let width = parse_width(&cli.refine_width)?;
            let roots: Vec<_> = isolate_real_roots(&entry)?
                .into_iter()
                .map(|r| r.refine(&width))
                .collect();
            output::emit_roots(&w, &entry, &roots, json);
        }
        Command::Hunt { word } => {
            let w = parse_word(word, 3)?;
            let width = parse_width(&cli.refine_width)?;
            let certs = hunt_unfaithful(&w, &width)?;
            output::emit_hunt(&w, &certs, json);
        }
        Command::Verify(v) => run_verify(v, cli, json)?,
        Command::Figure { t, case, out } => {
            let t0 = parse_scalar(t)?;
            let mut buf: Vec<u8> = Vec::new();
            let geometry = render_disk_figure(&t0, *case, &mut buf)?;
            let mut file = File::create(out).map_err(Error::from)?;
            file.write_all(&buf).map_err(Error::from)?;
            output::emit_figure(out, &geometry, json);
        }
        Command::Orbit { t, iters, threshold } => {
            let t0 = parse_scalar(t)?;
            let evidence = orbit_accumulation_test(&t0, *iters, *threshold)?;
            output::emit_orbit(&evidence, json);
        }
    }
    Ok(())
}

fn run_verify(v: &VerifyCommand, cli: &Cli, json: bool) -> Result<(), Error> {
    match v {
        VerifyCommand::Squier { n } => {
            let form = squier_form(*n)?;
            let generators_ok = form.relation_holds_for_generators()?;
            if !generators_ok {
                return Err(Error::Internal("Squier relation failed on generators".into()));
            }
            output::emit_squier(form, generators_ok, json);
        }
        VerifyCommand::Duality { n, word } => {
            let words: Vec<BraidWord> = match word {
                Some(text) => vec![parse_word(text, *n)?],
                None => default_duality_words(*n)?,
            };
            let mut results = Vec::new();
            for w in &words {
                results.push((w.to_string(), verify_duality(w)?));
            }
            let all = results.iter().all(|(_, ok)| *ok);
            if !all {
                return Err(Error::Internal("duality conjugation failed".into()));
            }
            output::emit_duality(*n, &results, json);
        }
        VerifyCommand::B4Pair => {
            let check = b4_kernel_pair_check()?;
            output::emit_b4_pair(&check, json);
        }
        VerifyCommand::Pingpong { t, case } => {
            let t0 = parse_scalar(t)?;
            let cert = pingpong_certificate(&t0, *case)?;
            output::emit_pingpong(&cert, json);
        }
        VerifyCommand::Galois { alpha, n, word } => {
            let alpha = match parse_scalar(alpha)? {
                RealScalar::Quadratic(q) => q,
                other => {
                    return Err(Error::GaloisHypothesis(format!(
                        "alpha must be a quadratic number, got {other}"
                    )))
                }
            };
            let words: Vec<BraidWord> = if word.is_empty() {
                default_galois_words(*n)?
            } else {
                word.iter()
                    .map(|t| parse_word(t, *n))
                    .collect::<Result<_, _>>()?
            };
            let cert = galois_discreteness_certificate(&alpha, &words, *n)?;
            output::emit_galois(&cert, json);
        }
        VerifyCommand::ClassifyDuality { t } => {
            let t0 = parse_scalar(t)?;
            let agrees = duality_check(&t0, cli.epsilon, cli.n_max)?;
            output::emit_classify_duality(&t0, agrees, json);
        }
    }
    Ok(())
}

fn default_duality_words(n: usize) -> Result<Vec<BraidWord>, Error> {
    let texts: &[&str] = match n {
        3 => &["s1", "s2", "s1 s2^-1", "s2^5 s1^2 s2^-4 s1 s2^3"],
        4 => &["s1", "s2", "s3", "s1 s3^-1", "s2 s1 s3^-1 s2^-1"],
        _ => return Err(Error::UnsupportedStrands(n)),
    };
    texts.iter().map(|t| parse_word(t, n)).collect()
}

