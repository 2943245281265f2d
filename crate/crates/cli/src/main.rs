use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use eulvol::arith::parse_rational_list;
use eulvol::bijection::{build_p_sequence, forward, inverse_bijection, PairWX};
use eulvol::combinatorics::{eulerian, parse_letters, refined_eulerian, CircularPermutation};
use eulvol::groebner::GroebnerConfig;
use eulvol::laurent::{constant_terms_numeric, generic_variable_names, pk_polynomial, power_constant_terms};
use eulvol::polytope::{
    cube_slice, hypersimplex, mixed_volume, mv_family_sparse, normalized_volume_slice, PolytopeDocument, SliceSpec,
};
use eulvol::verify::{
    verify_theorem1_with, verify_theorem3, verify_theorem5_with, verify_theorem6, IdealReport, VolumeSuite,
};
use eulvol::{Error, MultiPoly, Rational};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "eulvol", version, about = "Exact Eulerian numbers, hypersimplex volumes and constant-term ideals")]
#[command(after_help = concat!(
    "Resource caps for Groebner computations come from the environment:\n  ",
    "EULVOL_MAX_PAIRS   (default 20000)\n  ",
    "EULVOL_MAX_DEGREE  (default 48)\n\n",
    "Exit codes: 0 ok or verified, 1 mismatch, 2 usage error, 3 cap exceeded."
))]
struct Cli {
    /// Emit a single JSON document.
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eulerian number <n,k>, or the refined number <n,k>_d.
    Eulerian {
        n: usize,
        k: i64,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Normalized volume of the hypersimplex Delta_{k,n}.
    Hypersimplex { k: usize, n: usize },
    /// Normalized volume of d Delta_{c/d,n}.
    Slice { c: usize, d: usize, n: usize },
    /// Mixed volume of the polytopes in a JSON file.
    MixedVolume {
        #[arg(long)]
        file: std::path::PathBuf,
    },
    /// Mixed volume of the Newton polytope family of the constant-term system.
    MvFamily {
        m: usize,
        #[arg(value_name = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// The bijection between pairs (w, x) and symmetric circular permutations.
    #[command(subcommand)]
    Bijection(BijectionCommand),
    /// Constant terms of f^1, ..., f^K, symbolic or numeric.
    ConstantTerms {
        m: usize,
        n: usize,
        #[arg(value_name = "K")]
        count: usize,
        /// Interior coefficients a_{-m+1}, ..., a_{n-1} as comma-separated p/q.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
    /// The polynomial P_k in the roots r1..rN.
    Pk {
        m: usize,
        #[arg(value_name = "N")]
        big_n: usize,
        k: usize,
    },
    /// Verification suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum BijectionCommand {
    /// Map (w, x) to a circular permutation.
    Forward(ForwardArgs),
    /// Recover (w, x) from a circular permutation.
    Inverse {
        /// Word on 0..dn-1, comma-separated or as digits.
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args)]
struct ForwardArgs {
    /// w, starting with 0.
    #[arg(long)]
    w: String,
    /// x, entries in 0..d-1.
    #[arg(long)]
    x: String,
    #[arg(long)]
    d: usize,
    /// Also print this many terms of the p-sequence.
    #[arg(long)]
    terms: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Degree of the constant-term ideal against <m+n-1, m-1>.
    Thm1 { m: usize, n: usize },
    /// Hypersimplex volumes against Eulerian numbers.
    Thm3 {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Degree of the sparse constant-term ideal against <m+n-1, m-1>_d.
    Thm5 { m: usize, n: usize, d: usize },
    /// Fractional hypersimplex volumes against refined Eulerian numbers.
    Thm6 {
        #[arg(long, default_value_t = 9)]
        max_dn: usize,
        #[arg(long, default_value_t = 3)]
        max_d: usize,
    },
}

/// A successful result: a JSON value, the human-readable lines, and whether a
/// verification matched.
struct Outcome {
    value: Value,
    lines: Vec<String>,
    matched: Option<bool>,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn text(s: String) -> Self {
        Outcome { value: Value::String(s.clone()), lines: vec![s], matched: None, diagnostics: Vec::new() }
    }
}

fn q(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

fn ideal_outcome(label: &str, r: IdealReport) -> Outcome {
    let degree = r.degree.map_or("none".to_string(), |d| d.to_string());
    let mut line =
        format!("{label} m={} n={} d={} degree={degree} expected={} match={}", r.m, r.n, r.d, r.expected, r.matches);
    if let Some(mv) = &r.mixed_volume_count {
        line.push_str(&format!(" mixed_volume_count={mv}"));
    }
    let mut diagnostics = Vec::new();
    if !r.zero_dimensional {
        diagnostics.push("ideal is not zero-dimensional".to_string());
    }
    if r.no_solutions {
        diagnostics.push("unit ideal: no solutions".to_string());
    }
    if !r.dropped.is_empty() {
        diagnostics.push(format!("identically zero constant terms at k = {}", join(&r.dropped)));
    }
    Outcome {
        matched: Some(r.matches),
        value: serde_json::to_value(&r).expect("serializable report"),
        lines: vec![line],
        diagnostics,
    }
}

fn suite_outcome(label: &str, s: VolumeSuite) -> Outcome {
    let mut lines: Vec<String> = s
        .cases
        .iter()
        .map(|c| {
            let mut line = format!("{label} c={} d={} n={} volume={} expected={}", c.c, c.d, c.n, c.volume, c.expected);
            if let Some(p) = &c.via_pairs {
                line.push_str(&format!(" via_pairs={p}"));
            }
            line.push_str(&format!(" match={}", c.matches));
            line
        })
        .collect();
    lines.push(format!("{label} cases={} all_match={}", s.cases.len(), s.all_match));
    Outcome {
        matched: Some(s.all_match),
        value: serde_json::to_value(&s).expect("serializable suite"),
        lines,
        diagnostics: Vec::new(),
    }
}

fn run(command: Command) -> eulvol::Result<Outcome> {
    match command {
        Command::Eulerian { n, k, d } => {
            let v = match d {
                None => eulerian(n, k),
                Some(d) => refined_eulerian(n, k, d)?,
            };
            Ok(Outcome::text(v.to_string()))
        }
        Command::Hypersimplex { k, n } => Ok(Outcome::text(q(&normalized_volume_slice(&hypersimplex(k, n)?)?))),
        Command::Slice { c, d, n } => {
            Ok(Outcome::text(q(&normalized_volume_slice(&cube_slice(SliceSpec::new(c, d, n)?))?)))
        }
        Command::MixedVolume { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", file.display())))?;
            let polytopes = PolytopeDocument::parse(&text)?.to_polytopes()?;
            Ok(Outcome::text(q(&mixed_volume(&polytopes)?)))
        }
        Command::MvFamily { m, big_n, d } => Ok(Outcome::text(mv_family_sparse(m, big_n, d)?.to_string())),
        Command::Bijection(BijectionCommand::Forward(args)) => {
            let w = parse_letters(&args.w)?;
            let x = parse_letters(&args.x)?;
            let pair = PairWX::new(w.len(), args.d, w, x)?;
            let image = forward(&pair)?;
            let mut value = json!({ "c": pair.c(), "word": image.to_string() });
            let mut lines = vec![format!("{image} c={}", pair.c())];
            if let Some(count) = args.terms {
                let p = build_p_sequence(&pair, count);
                let terms: Vec<String> = p.terms.iter().map(|t| t.to_string()).collect();
                lines.push(format!("p={}", terms.join(",")));
                value["p"] = json!(terms.join(","));
            }
            Ok(Outcome { value, lines, matched: None, diagnostics: Vec::new() })
        }
        Command::Bijection(BijectionCommand::Inverse { word, n, d }) => {
            let word = CircularPermutation::parse(&word)?;
            let pre = inverse_bijection(&word, n, d)?;
            let (w, x) = (join(pre.pair.w()), join(pre.pair.x()));
            Ok(Outcome {
                value: json!({ "w": w, "x": x, "c": pre.c, "c_inverse": pre.c_inverse, "rotation": pre.rotation }),
                lines: vec![format!("w={w} x={x} c={}", pre.c)],
                matched: None,
                diagnostics: Vec::new(),
            })
        }
        Command::ConstantTerms { m, n, count, coeffs } => {
            let texts: Vec<String> = match coeffs {
                Some(list) => {
                    let values = parse_rational_list(&list)?;
                    constant_terms_numeric(&values, m, n, count)?.iter().map(q).collect()
                }
                None => {
                    let names = generic_variable_names(m, n);
                    power_constant_terms(m, n, count)?.iter().map(|p| p.to_string_with(&names)).collect()
                }
            };
            let lines = texts.iter().enumerate().map(|(i, t)| format!("k={} {t}", i + 1)).collect();
            Ok(Outcome { value: json!(texts), lines, matched: None, diagnostics: Vec::new() })
        }
        Command::Pk { m, big_n, k } => {
            let names: Vec<String> = (1..=big_n).map(|i| format!("r{i}")).collect();
            let p: MultiPoly = pk_polynomial(m, big_n, k)?;
            Ok(Outcome::text(p.to_string_with(&names)))
        }
        Command::Verify(v) => {
            let config = GroebnerConfig::from_env()?;
            match v {
                VerifyCommand::Thm1 { m, n } => Ok(ideal_outcome("thm1", verify_theorem1_with(m, n, &config)?)),
                VerifyCommand::Thm3 { max_n } => Ok(suite_outcome("thm3", verify_theorem3(max_n)?)),
                VerifyCommand::Thm5 { m, n, d } => Ok(ideal_outcome("thm5", verify_theorem5_with(m, n, d, &config)?)),
                VerifyCommand::Thm6 { max_dn, max_d } => Ok(suite_outcome("thm6", verify_theorem6(max_dn, max_d)?)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;

    let (document, code) = match result {
        Ok(outcome) => {
            let code = match outcome.matched {
                Some(false) => EXIT_MISMATCH,
                _ => 0,
            };
            if !cli.json {
                for line in &outcome.lines {
                    println!("{line}");
                }
                for d in &outcome.diagnostics {
                    eprintln!("note: {d}");
                }
                if cli.timing {
                    eprintln!("time: {elapsed_ms:.1} ms");
                }
                return ExitCode::from(code);
            }
            let doc = json!({
                "status": "ok",
                "value": outcome.value,
                "diagnostics": outcome.diagnostics,
            });
            (doc, code)
        }
        Err(e) => {
            let (status, code) = match e {
                Error::CapExceeded(_) => ("cap-exceeded", EXIT_CAP),
                _ => ("error", EXIT_USAGE),
            };
            if !cli.json {
                eprintln!("{status}: {e}");
                return ExitCode::from(code);
            }
            let doc = json!({
                "status": status,
                "code": e.code(),
                "diagnostics": [e.to_string()],
            });
            (doc, code)
        }
    };
    let mut document = document;
    if cli.timing {
        document["timing_ms"] = json!(elapsed_ms);
    }
    println!("{}", serde_json::to_string_pretty(&document).expect("serializable"));
    ExitCode::from(code)
}
