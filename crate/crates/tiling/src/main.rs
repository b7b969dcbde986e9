//! Command-line front end. stdout carries machine-readable JSON or CSV
//! only; diagnostics go to stderr. Exit codes: 0 success, 1 negative
//! verdict, 2 usage error, 3 budget/resource exhaustion.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tiling::constructions::{
    build_block_construction, build_u, find_min_s_for_u, gcd_lower_bound_spec,
    sigma_lower_bound_spec, ConstructionError, ConstructionSpec, Family,
};
use tiling::exact::{max_h_tiling, perfect_h_tiling, ExactError, Host, PerfectOutcome, Tiling};
use tiling::fractional::{
    solve_perfect_weighted_tiling, FractionalError, TilingOutcome, DEFAULT_COLUMN_CAP,
};
use tiling::graph::min_multipartite_degree;
use tiling::harness::{
    certify_lower_bound, sweep_threshold, verify_lemma_campaign, CampaignConfig, HarnessError,
};
use tiling::params::chromatic_profile;
use tiling::rational::{format_rational, parse_rational};
use tiling::{ChromaticProfile, Graph, MultipartiteGraph, Rational};

const EXIT_VERDICT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

#[derive(Parser)]
#[command(name = "tiling", version, about = "Chromatic tiling parameters, exact fractional tiling LPs, and H-tiling search")]
struct Cli {
    /// Campaign seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Search node budget.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// LP column / copy enumeration cap.
    #[arg(long, global = true)]
    columns_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileField {
    Sigma,
    ChiCr,
    Gcd,
    ChiStar,
}

#[derive(Clone, Copy, ValueEnum)]
enum TileMode {
    Perfect,
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gcd,
    Sigma,
    U,
    Blocks,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic tiling parameters of a pattern graph H.
    Params {
        /// H as JSON {"n":..,"edges":[[u,v],..]}.
        h_file: String,
        /// Print a single field instead of the full profile.
        #[arg(long)]
        field: Option<ProfileField>,
    },
    /// Perfect (a,b)-weighted fractional K_r-tiling of a multipartite host.
    Fractile {
        /// Host as JSON {"r":..,"classes":..,"edges":..}.
        g_file: String,
        /// Take (a, b) from this pattern graph's profile.
        #[arg(long)]
        h_file: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Exact perfect or maximum H-tiling search.
    Tile {
        /// Host file; omit when --complete is given.
        g_file: Option<String>,
        /// H as JSON.
        #[arg(long)]
        h_file: String,
        #[arg(long, value_enum, default_value = "perfect")]
        mode: TileMode,
        /// Use the complete multipartite host with these class sizes.
        #[arg(long, value_delimiter = ',')]
        complete: Option<Vec<usize>>,
    },
    /// Build an extremal host family.
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        h_file: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Scale for the U family; when omitted the least feasible s <= 8
        /// is searched.
        #[arg(long)]
        s: Option<usize>,
        /// Block-size matrix JSON for --family blocks.
        #[arg(long)]
        spec: Option<String>,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Threshold sweep campaign; prints CSV.
    Sweep {
        #[arg(long)]
        config: String,
        #[arg(long)]
        h_file: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Certify a lower-bound construction for H at class size n.
    Certify {
        #[arg(long)]
        h_file: String,
        #[arg(long)]
        n: usize,
    },
    /// Fractional-tiling validation campaign over random hosts.
    Lemma {
        #[arg(long)]
        config: String,
        #[arg(long)]
        h_file: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(classify(&e))
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] tiling::graph::GraphError),
    #[error(transparent)]
    Params(#[from] tiling::params::ParamsError),
    #[error(transparent)]
    Fractional(#[from] FractionalError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Usage(String),
}

fn classify(e: &CliError) -> u8 {
    match e {
        CliError::Fractional(FractionalError::ColumnCap { .. })
        | CliError::Exact(ExactError::CopyCap { .. }) => EXIT_BUDGET,
        CliError::Harness(HarnessError::Fractional(FractionalError::ColumnCap { .. }))
        | CliError::Harness(HarnessError::Exact(ExactError::CopyCap { .. })) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    Ok(Graph::parse(&fs::read_to_string(path)?)?)
}

fn read_partite(path: &str) -> Result<MultipartiteGraph, CliError> {
    Ok(MultipartiteGraph::parse(&fs::read_to_string(path)?)?)
}

fn parse_rat(s: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Usage(format!("bad {what}: {e}")))
}

fn profile_json(p: &ChromaticProfile) -> serde_json::Value {
    json!({
        "h": p.h,
        "r": p.r,
        "size_multisets": p.size_multisets.iter().collect::<Vec<_>>(),
        "difference_set": p.difference_set.iter().collect::<Vec<_>>(),
        "gcd": p.gcd.to_string(),
        "sigma": format_rational(&p.sigma),
        "chi_cr": format_rational(&p.chi_cr),
        "chi_star": format_rational(&p.chi_star),
        "a": format_rational(&p.a),
        "b": format_rational(&p.b),
    })
}

fn tiling_json(t: &Tiling) -> serde_json::Value {
    json!(t
        .copies
        .iter()
        .map(|c| json!({"image": c.image, "witness": c.witness}))
        .collect::<Vec<_>>())
}

fn emit(out: &Option<String>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let budget = cli.budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let cap = cli.columns_cap.unwrap_or(DEFAULT_COLUMN_CAP);
    match cli.command {
        Command::Params { h_file, field } => {
            let h = read_graph(&h_file)?;
            let p = chromatic_profile(&h)?;
            match field {
                None => println!("{}", profile_json(&p)),
                Some(ProfileField::Sigma) => println!("{}", format_rational(&p.sigma)),
                Some(ProfileField::ChiCr) => println!("{}", format_rational(&p.chi_cr)),
                Some(ProfileField::Gcd) => println!("{}", p.gcd),
                Some(ProfileField::ChiStar) => println!("{}", format_rational(&p.chi_star)),
            }
            Ok(0)
        }
        Command::Fractile { g_file, h_file, a, b } => {
            let g = read_partite(&g_file)?;
            let (pa, pb) = match &h_file {
                Some(path) => {
                    let p = chromatic_profile(&read_graph(path)?)?;
                    (Some(p.a), Some(p.b))
                }
                None => (None, None),
            };
            let a = match a {
                Some(s) => parse_rat(&s, "--a")?,
                None => pa.ok_or_else(|| CliError::Usage("need --a or --h-file".into()))?,
            };
            let b = match b {
                Some(s) => parse_rat(&s, "--b")?,
                None => pb.ok_or_else(|| CliError::Usage("need --b or --h-file".into()))?,
            };
            match solve_perfect_weighted_tiling(&g, &a, &b, cap)? {
                TilingOutcome::Feasible(t) => {
                    let weights: Vec<_> = t
                        .weights
                        .iter()
                        .map(|(k, w)| {
                            json!({
                                "vertices": k.vertices,
                                "root": k.root,
                                "weight": format_rational(w),
                            })
                        })
                        .collect();
                    println!("{}", json!({"status": "feasible", "weights": weights}));
                    Ok(0)
                }
                TilingOutcome::Infeasible(cert) => {
                    let x: Vec<_> = cert.x.iter().map(format_rational).collect();
                    println!("{}", json!({"status": "infeasible", "certificate": x}));
                    Ok(EXIT_VERDICT)
                }
            }
        }
        Command::Tile { g_file, h_file, mode, complete } => {
            let h = read_graph(&h_file)?;
            let profile = chromatic_profile(&h)?;
            let partite;
            let plain;
            let host = match (&g_file, &complete) {
                (_, Some(sizes)) => {
                    partite = MultipartiteGraph::complete(sizes);
                    Host::Partite(&partite)
                }
                (Some(path), None) => {
                    let text = fs::read_to_string(path)?;
                    if let Ok(g) = MultipartiteGraph::parse(&text) {
                        partite = g;
                        Host::Partite(&partite)
                    } else {
                        plain = Graph::parse(&text)?;
                        Host::Plain(&plain)
                    }
                }
                (None, None) => {
                    return Err(CliError::Usage("need a host file or --complete".into()))
                }
            };
            match mode {
                TileMode::Perfect => {
                    match perfect_h_tiling(&host, &h, &profile, None, cap, budget)? {
                        PerfectOutcome::Tiling(t) => {
                            println!("{}", json!({"status": "tiled", "copies": tiling_json(&t)}));
                            Ok(0)
                        }
                        PerfectOutcome::NoneExists => {
                            println!("{}", json!({"status": "none"}));
                            Ok(EXIT_VERDICT)
                        }
                        PerfectOutcome::Unknown { nodes } => {
                            println!("{}", json!({"status": "unknown", "nodes": nodes}));
                            Ok(EXIT_BUDGET)
                        }
                    }
                }
                TileMode::Max => {
                    let out = max_h_tiling(&host, &h, &profile, None, None, cap, budget)?;
                    println!(
                        "{}",
                        json!({
                            "status": if out.optimal { "optimal" } else { "incomplete" },
                            "size": out.tiling.copies.len(),
                            "nodes": out.nodes,
                            "copies": tiling_json(&out.tiling),
                        })
                    );
                    Ok(if out.optimal { 0 } else { EXIT_BUDGET })
                }
            }
        }
        Command::Construct { family, h_file, n, s, spec, out } => {
            let need_h = |h_file: &Option<String>| -> Result<ChromaticProfile, CliError> {
                let path = h_file
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("this family needs --h-file".into()))?;
                Ok(chromatic_profile(&read_graph(path)?)?)
            };
            let built: ConstructionSpec = match family {
                FamilyArg::Gcd => {
                    let n = n.ok_or_else(|| CliError::Usage("--family gcd needs --n".into()))?;
                    gcd_lower_bound_spec(&need_h(&h_file)?, n)?
                }
                FamilyArg::Sigma => {
                    let n = n.ok_or_else(|| CliError::Usage("--family sigma needs --n".into()))?;
                    sigma_lower_bound_spec(&need_h(&h_file)?, n)?
                }
                FamilyArg::U => {
                    let p = need_h(&h_file)?;
                    let s = match s {
                        Some(s) => s,
                        None => match find_min_s_for_u(&p, 8)? {
                            Some((s, _)) => s,
                            None => {
                                return Err(CliError::Usage(
                                    "no feasible s <= 8 found for U(H)".into(),
                                ))
                            }
                        },
                    };
                    let sizes = build_u(&p, s)?;
                    let g = MultipartiteGraph::complete(&sizes);
                    let doc = json!({
                        "graph": serde_json::from_str::<serde_json::Value>(&g.to_json()).unwrap(),
                        "family": "u",
                        "s": s,
                        "class_sizes": sizes,
                    });
                    emit(&out, &doc.to_string())?;
                    return Ok(0);
                }
                FamilyArg::Blocks => {
                    let path = spec
                        .ok_or_else(|| CliError::Usage("--family blocks needs --spec".into()))?;
                    serde_json::from_str(&fs::read_to_string(path)?)
                        .map_err(|e| CliError::Usage(format!("bad spec: {e}")))?
                }
            };
            let (g, _) = build_block_construction(&built)?;
            let doc = json!({
                "graph": serde_json::from_str::<serde_json::Value>(&g.to_json()).unwrap(),
                "family": match built.family {
                    Family::Custom => "blocks",
                    Family::GcdObstruction => "gcd",
                    Family::SigmaObstruction => "sigma",
                },
                "blocks": built.block_sizes,
                "delta_star": min_multipartite_degree(&g)?,
            });
            emit(&out, &doc.to_string())?;
            Ok(0)
        }
        Command::Sweep { config, h_file, out } => {
            let mut cfg: CampaignConfig = serde_json::from_str(&fs::read_to_string(config)?)
                .map_err(|e| CliError::Usage(format!("bad config: {e}")))?;
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            if let Some(b) = cli.budget {
                cfg.node_budget = b;
            }
            let h = read_graph(&h_file)?;
            let report = sweep_threshold(&h, &cfg, cap)?;
            for note in &report.skipped {
                eprintln!("skipped {note}");
            }
            emit(&out, report.csv.trim_end_matches('\n'))?;
            Ok(0)
        }
        Command::Certify { h_file, n } => {
            let h = read_graph(&h_file)?;
            let report = certify_lower_bound(&h, n, cap, budget)?;
            if let Some(note) = &report.divisibility_note {
                eprintln!("note: {note}");
            }
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            if report.certified {
                Ok(0)
            } else if report.inconclusive {
                Ok(EXIT_BUDGET)
            } else {
                Ok(EXIT_VERDICT)
            }
        }
        Command::Lemma { config, h_file } => {
            let mut cfg: CampaignConfig = serde_json::from_str(&fs::read_to_string(config)?)
                .map_err(|e| CliError::Usage(format!("bad config: {e}")))?;
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            let h = read_graph(&h_file)?;
            let report = verify_lemma_campaign(&h, &cfg)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(if report.passed() { 0 } else { EXIT_VERDICT })
        }
    }
}
