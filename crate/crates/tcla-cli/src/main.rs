//! Command-line interface: algebra selection, JSON I/O, worked-example
//! reproduction and the self-test harness.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::process::ExitCode;
use tcla::coeff_ring::{format_rational, parse_rational, Functional};
use tcla::error::Error;
use tcla::golden;
use tcla::lie_core::{AlgebraSpec, VirasoroCocycle};
use tcla::partitions::blocks_of;
use tcla::reducibility::{
    character, hyperplane_axes, hyperplane_data, is_reducible, Character, FiniteRootDatum,
    HyperplaneFamily,
};
use tcla::selftest::run_selftest;
use tcla::shapovalov::{
    assemble_matrix, determinant, partition_display, partition_from_json, partition_to_json,
    DetMethod, Mode, Variant,
};
use tcla::truncation::TruncatedAlgebra;

#[derive(Parser)]
#[command(
    name = "tcla",
    about = "Exact Shapovalov-form computations for truncated current Lie algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Built-in algebra (sl2, sl3, witt, virasoro, heisenberg) or a path to a
    /// finite-table JSON file.
    #[arg(long)]
    algebra: String,
    /// Nilpotency index N of the truncation (t^{N+1} = 0).
    #[arg(long)]
    nilpotency: u16,
    /// Virasoro cocycle coefficients, ascending powers, e.g. "0,-1/12,0,1/12".
    #[arg(long)]
    psi: Option<String>,
    /// Worker threads for matrix assembly (default: TCLA_WORKERS or 1).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of a weight and their block order.
    Partitions {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Weight string, e.g. "a1+a2" or "2d".
        #[arg(long)]
        weight: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Assemble the matrix of the form at a weight.
    Matrix {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        weight: String,
        /// F (Shapovalov) or B (modified).
        #[arg(long, default_value = "F")]
        variant: String,
        /// fast, oracle or both.
        #[arg(long, default_value = "fast")]
        mode: String,
        /// json, latex or text.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Symbolic determinant of the form at a weight.
    Det {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        weight: String,
        /// block, bareiss or both.
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// One q-projection through the straightening oracle.
    OracleEntry {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// First partition as JSON, e.g. '[["a1",0,0],["a2",1,0]]'.
        #[arg(long)]
        lam: String,
        /// Second partition as JSON.
        #[arg(long)]
        mu: String,
    },
    /// Decide reducibility of the Verma module at a functional.
    Reducible {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Path to a functional file: {"values": {"h_a1@1": "3/2", ...}}.
        #[arg(long)]
        lambda: String,
    },
    /// Emit the hyperplane data behind the criterion figures.
    Hyperplanes {
        /// a1, a2, b2, g2, affine-a1, affine-a2, affine-b2, affine-g2,
        /// virasoro or heisenberg.
        #[arg(long)]
        algebra: String,
        /// Index window for infinite families.
        #[arg(long, default_value_t = 5)]
        window: i64,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Virasoro cocycle coefficients, ascending powers.
        #[arg(long)]
        psi: Option<String>,
    },
    /// Graded character of the irreducible highest-weight module (dim h = 1).
    Character {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        lambda: String,
        /// Depth bound on the weight-lattice truncation.
        #[arg(long)]
        depth: u32,
    },
    /// Recompute a worked example and diff it against the embedded data.
    Reproduce {
        /// sl3-n1, virasoro-n1 or virasoro-n2.
        example: String,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn parse_psi(psi: &Option<String>) -> Result<Option<Vec<tcla::Rational>>, Error> {
    match psi {
        None => Ok(None),
        Some(s) => Ok(Some(
            s.split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?,
        )),
    }
}

fn load_algebra(args: &AlgebraArgs) -> Result<TruncatedAlgebra, Error> {
    let psi = parse_psi(&args.psi)?;
    let looks_like_path =
        args.algebra.contains('/') || args.algebra.ends_with(".json") || args.algebra.contains('\\');
    let base = if looks_like_path {
        let text = std::fs::read_to_string(&args.algebra)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", args.algebra)))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad JSON in {}: {e}", args.algebra)))?;
        AlgebraSpec::from_table_json(&args.algebra, &value)?
    } else {
        AlgebraSpec::builtin(&args.algebra, psi.as_deref())?
    };
    TruncatedAlgebra::new(base, args.nilpotency)
}

fn workers_of(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("TCLA_WORKERS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
        .max(1)
}

fn read_functional(path: &str, alg: &TruncatedAlgebra) -> Result<Functional, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad JSON in {path}: {e}")))?;
    Functional::from_json(&value, &alg.base.cartan_names)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Partitions {
            algebra,
            weight,
            format,
        } => {
            let alg = load_algebra(&algebra)?;
            let chi = alg.base.parse_weight(&weight)?;
            let blocks = blocks_of(&alg, &chi)?;
            match format.as_str() {
                "json" => {
                    let blocks_json: Vec<Value> = blocks
                        .iter()
                        .map(|(l, ps)| {
                            json!({
                                "l_array": l.counts().map(|((root, d), k)| {
                                    json!([alg.base.display_weight(root), d, k])
                                }).collect::<Vec<_>>(),
                                "partitions": ps.iter().map(|p| partition_to_json(&alg, p)).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let flat: Vec<Value> = blocks
                        .iter()
                        .flat_map(|(_, ps)| ps.iter().map(|p| partition_to_json(&alg, p)))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "chi": alg.base.display_weight(&chi),
                            "count": flat.len(),
                            "partitions": flat,
                            "blocks": blocks_json,
                        }))
                        .unwrap()
                    );
                }
                "text" => {
                    let mut idx = 0;
                    for (bi, (_, ps)) in blocks.iter().enumerate() {
                        for p in ps {
                            println!("{idx:3}  block {bi:3}  {}", partition_display(&alg, p));
                            idx += 1;
                        }
                    }
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix {
            algebra,
            weight,
            variant,
            mode,
            format,
        } => {
            let workers = workers_of(algebra.workers);
            let alg = load_algebra(&algebra)?;
            let chi = alg.base.parse_weight(&weight)?;
            let variant = match variant.as_str() {
                "F" | "f" => Variant::F,
                "B" | "b" => Variant::B,
                other => return Err(Error::Parse(format!("unknown variant {other:?}"))),
            };
            let mode = match mode.as_str() {
                "fast" => Mode::Fast,
                "oracle" => Mode::Oracle,
                "both" => Mode::Both,
                other => return Err(Error::Parse(format!("unknown mode {other:?}"))),
            };
            let matrix = assemble_matrix(&alg, &chi, variant, mode, workers)?;
            match format.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&matrix.to_json(&alg)).unwrap()
                ),
                "latex" => print!("{}", matrix.to_latex(&alg)),
                "text" => print!("{}", matrix.to_text(&alg)),
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Det {
            algebra,
            weight,
            method,
        } => {
            let workers = workers_of(algebra.workers);
            let alg = load_algebra(&algebra)?;
            let chi = alg.base.parse_weight(&weight)?;
            let method = match method.as_str() {
                "block" => DetMethod::Block,
                "bareiss" => DetMethod::Bareiss,
                "both" => DetMethod::Both,
                other => return Err(Error::Parse(format!("unknown method {other:?}"))),
            };
            let result = determinant(&alg, &chi, method, workers)?;
            let names = &alg.base.cartan_names;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "chi": alg.base.display_weight(&chi),
                    "star_sign": result.star_sign,
                    "det_f": result.det_f.to_json(names),
                    "det_b": result.det_b.to_json(names),
                    "det_f_string": result.det_f.to_string_named(names),
                    "det_b_string": result.det_b.to_string_named(names),
                }))
                .unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleEntry { algebra, lam, mu } => {
            let alg = load_algebra(&algebra)?;
            let lam_value: Value = serde_json::from_str(&lam)
                .map_err(|e| Error::Parse(format!("bad partition JSON: {e}")))?;
            let mu_value: Value = serde_json::from_str(&mu)
                .map_err(|e| Error::Parse(format!("bad partition JSON: {e}")))?;
            let lam = partition_from_json(&alg, &lam_value)?;
            let mu = partition_from_json(&alg, &mu_value)?;
            let entry = tcla::uea::form_entry_oracle(&alg, &lam, &mu)?;
            let names = &alg.base.cartan_names;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "lambda": partition_to_json(&alg, &lam),
                    "mu": partition_to_json(&alg, &mu),
                    "value": entry.to_json(names),
                    "value_string": entry.to_string_named(names),
                }))
                .unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Reducible { algebra, lambda } => {
            let alg = load_algebra(&algebra)?;
            let lam = read_functional(&lambda, &alg)?;
            let verdict = is_reducible(&alg, &lam)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "reducible": verdict.reducible,
                    "witness": verdict.witness.map(|w| alg.base.display_weight(&w)),
                }))
                .unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Hyperplanes {
            algebra,
            window,
            format,
            psi,
        } => {
            let psi = parse_psi(&psi)?;
            let family = match algebra.as_str() {
                "virasoro" => HyperplaneFamily::Virasoro(match psi {
                    Some(coeffs) => VirasoroCocycle::from_coeffs(&coeffs)?,
                    None => VirasoroCocycle::standard(),
                }),
                "heisenberg" => HyperplaneFamily::Heisenberg,
                name => {
                    if let Some(finite) = name.strip_prefix("affine-") {
                        HyperplaneFamily::Affine(FiniteRootDatum::builtin(finite)?)
                    } else {
                        HyperplaneFamily::Finite(FiniteRootDatum::builtin(name)?)
                    }
                }
            };
            let planes = hyperplane_data(&family, window)?;
            let axes = hyperplane_axes(&family);
            match format.as_str() {
                "csv" => {
                    let header: Vec<String> = std::iter::once("label".to_string())
                        .chain(axes.iter().map(|a| format!("n_{a}")))
                        .chain(std::iter::once("offset".to_string()))
                        .collect();
                    println!("{}", header.join(","));
                    for p in &planes {
                        let row: Vec<String> = std::iter::once(p.label.clone())
                            .chain(p.normal.iter().map(format_rational))
                            .chain(std::iter::once(format_rational(&p.offset)))
                            .collect();
                        println!("{}", row.join(","));
                    }
                }
                "json" => {
                    let rows: Vec<Value> = planes
                        .iter()
                        .map(|p| {
                            json!({
                                "label": p.label,
                                "normal": p.normal.iter().map(format_rational).collect::<Vec<_>>(),
                                "offset": format_rational(&p.offset),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({"axes": axes, "hyperplanes": rows}))
                            .unwrap()
                    );
                }
                other => return Err(Error::Parse(format!("unknown format {other:?}"))),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Character {
            algebra,
            lambda,
            depth,
        } => {
            let alg = load_algebra(&algebra)?;
            let lam = read_functional(&lambda, &alg)?;
            let report = character(&alg, &lam, depth)?;
            let body = match report.character {
                Character::Delegated { lambda0 } => json!({
                    "m": report.m,
                    "delegated": true,
                    "lambda0": format_rational(&lambda0),
                    "note": "all positive layers vanish; the base-algebra irreducible character is out of scope",
                }),
                Character::Graded { dims } => json!({
                    "m": report.m,
                    "delegated": false,
                    "dims": dims.iter().map(|(n, d)| json!([n, d.to_string()])).collect::<Vec<_>>(),
                }),
            };
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce { example, workers } => {
            let workers = workers_of(workers);
            let ex = golden::by_id(&example).ok_or_else(|| {
                Error::Parse(format!(
                    "unknown example {example:?}; expected one of {:?}",
                    golden::EXAMPLE_IDS
                ))
            })?;
            let diff = golden::reproduce(&ex, workers)?;
            let dim = ex.matrix.len();
            println!(
                "example {}: {dim}x{dim} matrix, algebra {}, N={}, chi={}",
                ex.id, ex.algebra, ex.nilpotency, ex.chi
            );
            let total = dim * dim;
            println!(
                "entries: {}/{} match the reference display",
                total - diff.mismatches.len(),
                total
            );
            for (i, j) in &diff.mismatches {
                let flagged = ex.flagged.contains(&(*i, *j));
                println!(
                    "  entry ({i},{j}): MISMATCH{}",
                    if flagged {
                        " (flagged: suspected misprint in the reference display)"
                    } else {
                        ""
                    }
                );
            }
            println!(
                "determinant: {}",
                if diff.det_matches { "PASS" } else { "FAIL" }
            );
            if !diff.unexpected.is_empty() {
                println!("unflagged entry mismatches: {:?}", diff.unexpected);
            }
            if diff.det_matches {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Selftest { seed } => {
            let report = run_selftest(seed);
            for c in &report.checks {
                println!(
                    "[{}] {}{}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    if c.detail.is_empty() {
                        String::new()
                    } else {
                        format!(": {}", c.detail)
                    }
                );
            }
            if report.all_passed() {
                println!(
                    "selftest: all {} checks passed (seed {})",
                    report.checks.len(),
                    seed
                );
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
