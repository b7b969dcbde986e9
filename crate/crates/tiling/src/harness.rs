//! Reproducible experiment campaigns: fractional-tiling validation over
//! random hosts, lower-bound certification from the extremal families, and
//! threshold sweeps with CSV output.
//!
//! Every campaign is a pure function of (config, seed): per-trial RNG
//! seeds are split from the campaign seed by trial index, so reruns are
//! byte-identical.

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{
    build_block_construction, degree_threshold, gcd_lower_bound_spec, random_partite_graph,
    sigma_lower_bound_spec, ConstructionError, ConstructionSpec,
};
use crate::exact::{
    max_h_tiling, perfect_h_tiling, row_tiling_upper_bound, ExactError, Host, PerfectOutcome,
};
use crate::fractional::{solve_perfect_weighted_tiling, FractionalError, TilingOutcome};
use crate::graph::{min_multipartite_degree, Graph, GraphError};
use crate::params::{chromatic_profile, Gcd, ParamsError};
use crate::rational::{ceil_usize, format_rational, parse_rational};
use crate::{int, Rational};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("need 0 < a <= b, got a = {0}, b = {1}")]
    BadWeights(String, String),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Fractional(#[from] FractionalError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("config: {0}")]
    Config(String),
}

/// Campaign parameters shared by the lemma and sweep runners. Rationals
/// are carried as "p/q" strings so configs stay plain JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig {
    /// Host class sizes to sample, one cell (or trial slot) per entry.
    pub ns: Vec<usize>,
    /// Degree-surplus grid for sweeps; unused by the lemma campaign.
    #[serde(default)]
    pub alphas: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_node_budget")]
    pub node_budget: u64,
    #[serde(default = "default_column_cap")]
    pub column_cap: usize,
    /// Density of extra random edges beyond the degree target.
    #[serde(default = "default_extra_p")]
    pub extra_edge_prob: f64,
    /// Optional override of (a, b); defaults to the chromatic profile's.
    #[serde(default)]
    pub a: Option<String>,
    #[serde(default)]
    pub b: Option<String>,
}

fn default_node_budget() -> u64 {
    5_000_000
}
fn default_column_cap() -> usize {
    crate::fractional::DEFAULT_COLUMN_CAP
}
fn default_extra_p() -> f64 {
    0.15
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be >= 1".into()));
        }
        if self.ns.is_empty() {
            return Err(HarnessError::Config("ns must be non-empty".into()));
        }
        Ok(())
    }

    pub fn parsed_alphas(&self) -> Result<Vec<Rational>, HarnessError> {
        self.alphas
            .iter()
            .map(|s| parse_rational(s).map_err(|e| HarnessError::Config(e.to_string())))
            .collect()
    }
}

/// Per-trial record; `outcome` is a closed enumeration and Unknown is
/// never folded into a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub instance: String,
    pub n: usize,
    pub delta_star: usize,
    pub threshold: String,
    pub outcome: Outcome,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Feasible,
    Infeasible,
    Tiled,
    Untiled,
    Unknown,
}

/// SplitMix64 step, used to derive independent per-trial seeds from the
/// campaign seed. Serial and parallel runs agree by construction.
pub fn trial_seed(campaign_seed: u64, trial_index: u64) -> u64 {
    let mut z = campaign_seed
        .wrapping_add(trial_index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Serialize)]
pub struct LemmaReport {
    pub trials: usize,
    pub feasible: usize,
    pub infeasible: usize,
    pub records: Vec<TrialRecord>,
    /// Serialized offending host, if any trial came back infeasible.
    pub violation: Option<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.infeasible == 0 && self.violation.is_none()
    }
}

/// Sample random hosts meeting the fractional degree bound
/// delta* >= ceil((1 - b/h) n) and check that the perfect weighted
/// fractional tiling LP is feasible on every one of them.
pub fn verify_lemma_campaign(
    h: &Graph,
    cfg: &CampaignConfig,
) -> Result<LemmaReport, HarnessError> {
    cfg.validate()?;
    let profile = chromatic_profile(h)?;
    let a = match &cfg.a {
        Some(s) => parse_rational(s).map_err(|e| HarnessError::Config(e.to_string()))?,
        None => profile.a.clone(),
    };
    let b = match &cfg.b {
        Some(s) => parse_rational(s).map_err(|e| HarnessError::Config(e.to_string()))?,
        None => profile.b.clone(),
    };
    if !a.is_positive() || a > b {
        return Err(HarnessError::BadWeights(
            format_rational(&a),
            format_rational(&b),
        ));
    }
    let hv = int(h.vertex_count() as i64);
    let r = profile.r;
    let mut records = Vec::with_capacity(cfg.trials);
    let mut feasible = 0usize;
    let mut infeasible = 0usize;
    let mut violation = None;
    for t in 0..cfg.trials {
        let n = cfg.ns[t % cfg.ns.len()];
        let threshold = (int(1) - &b / &hv) * int(n as i64);
        let target = ceil_usize(&threshold);
        let g = random_partite_graph(r, n, target, cfg.extra_edge_prob, trial_seed(cfg.seed, t as u64))?;
        let delta = min_multipartite_degree(&g)?;
        debug_assert!(delta >= target);
        let outcome = match solve_perfect_weighted_tiling(&g, &a, &b, cfg.column_cap)? {
            TilingOutcome::Feasible(_) => {
                feasible += 1;
                Outcome::Feasible
            }
            TilingOutcome::Infeasible(_) => {
                infeasible += 1;
                if violation.is_none() {
                    violation = Some(g.to_json());
                }
                Outcome::Infeasible
            }
        };
        records.push(TrialRecord {
            instance: format!("random r={r} n={n} seed={}", trial_seed(cfg.seed, t as u64)),
            n,
            delta_star: delta,
            threshold: format_rational(&threshold),
            outcome,
            nodes: 0,
        });
    }
    Ok(LemmaReport {
        trials: cfg.trials,
        feasible,
        infeasible,
        records,
        violation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifiedFamily {
    GcdObstruction,
    SigmaObstruction,
}

#[derive(Debug, Serialize)]
pub struct CertifyReport {
    pub family: CertifiedFamily,
    pub n: usize,
    pub delta_star: usize,
    /// (1 - 1/chi*(H)) n as "p/q".
    pub threshold: String,
    /// Number of copies a perfect tiling would need.
    pub perfect_copies: u64,
    /// Row counting bound on any tiling (sigma family) or the witnessed
    /// row-size imbalance (gcd family).
    pub obstruction: String,
    pub max_tiling_size: Option<u64>,
    pub verdict: String,
    pub certified: bool,
    pub inconclusive: bool,
    /// Set when h | rn holds but the stricter h | n does not.
    pub divisibility_note: Option<String>,
}

/// Build the lower-bound family matching gcd(H) and certify that the host
/// has no perfect H-tiling despite delta* within one of the threshold.
/// Only an exhaustively closed search certifies; Unknown is reported as
/// inconclusive.
pub fn certify_lower_bound(
    h: &Graph,
    n: usize,
    copy_cap: usize,
    budget: u64,
) -> Result<CertifyReport, HarnessError> {
    let profile = chromatic_profile(h)?;
    let spec: ConstructionSpec;
    let family = match profile.gcd {
        Gcd::Infinite => {
            return Err(HarnessError::Construction(
                ConstructionError::GcdFamilyNotApplicable(Gcd::Infinite),
            ))
        }
        Gcd::Finite(1) => {
            spec = sigma_lower_bound_spec(&profile, n)?;
            CertifiedFamily::SigmaObstruction
        }
        Gcd::Finite(_) => {
            spec = gcd_lower_bound_spec(&profile, n)?;
            CertifiedFamily::GcdObstruction
        }
    };
    let (g, blocks) = build_block_construction(&spec)?;
    let delta_star = min_multipartite_degree(&g)?;
    let threshold = degree_threshold(&profile, n);
    let hv = profile.h;
    let total = profile.r * n;
    let divisibility_note = match family {
        CertifiedFamily::GcdObstruction if total % hv == 0 && n % hv != 0 => Some(format!(
            "h = {hv} divides rn = {total} but not n = {n}; gcd(H) > 1 needs h | n"
        )),
        _ => None,
    };
    if total % hv != 0 {
        return Err(HarnessError::Config(format!(
            "perfect tiling undefined: h = {hv} does not divide rn = {total}"
        )));
    }
    let perfect_copies = (total / hv) as u64;
    let host = Host::Partite(&g);

    let report = match family {
        CertifiedFamily::GcdObstruction => {
            let rows = spec.row_sizes();
            let obstruction = format!(
                "|V^1| - |V^2| = {} not divisible by gcd(H) = {}",
                rows[0] as i64 - rows[1] as i64,
                profile.gcd
            );
            let outcome = perfect_h_tiling(&host, h, &profile, Some(&blocks), copy_cap, budget)?;
            let (verdict, certified, inconclusive) = match outcome {
                PerfectOutcome::Tiling(_) => ("perfect tiling found".into(), false, false),
                PerfectOutcome::NoneExists => ("no perfect H-tiling".into(), true, false),
                PerfectOutcome::Unknown { nodes } => {
                    (format!("search budget exhausted after {nodes} nodes"), false, true)
                }
            };
            CertifyReport {
                family,
                n,
                delta_star,
                threshold: format_rational(&threshold),
                perfect_copies,
                obstruction,
                max_tiling_size: None,
                verdict,
                certified,
                inconclusive,
                divisibility_note,
            }
        }
        CertifiedFamily::SigmaObstruction => {
            let row_bound = row_tiling_upper_bound(&blocks, &profile);
            let obstruction = format!("row counting bound: at most {row_bound} copies");
            let out = max_h_tiling(&host, h, &profile, Some(&blocks), None, copy_cap, budget)?;
            let size = out.tiling.copies.len() as u64;
            let (verdict, certified, inconclusive) = if !out.optimal {
                (
                    format!("search budget exhausted after {} nodes", out.nodes),
                    false,
                    true,
                )
            } else if size < perfect_copies {
                (
                    format!("max tiling {size} < {perfect_copies} copies needed"),
                    true,
                    false,
                )
            } else {
                ("perfect tiling exists".into(), false, false)
            };
            CertifyReport {
                family,
                n,
                delta_star,
                threshold: format_rational(&threshold),
                perfect_copies,
                obstruction,
                max_tiling_size: Some(size),
                verdict,
                certified,
                inconclusive,
                divisibility_note,
            }
        }
    };
    Ok(report)
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub csv: String,
    /// Cells skipped with the reason; these do not appear in the CSV.
    pub skipped: Vec<String>,
}

/// For each (n, alpha) cell, sample hosts with
/// delta* >= ceil((1 - 1/chi*(H) + alpha) n) and tabulate the exact
/// search verdicts. Fractions and mean node counts are exact rationals.
pub fn sweep_threshold(
    h: &Graph,
    cfg: &CampaignConfig,
    copy_cap: usize,
) -> Result<SweepReport, HarnessError> {
    cfg.validate()?;
    let profile = chromatic_profile(h)?;
    let alphas = cfg.parsed_alphas()?;
    if alphas.is_empty() {
        return Err(HarnessError::Config("sweep needs a non-empty alpha grid".into()));
    }
    let r = profile.r;
    let hv = profile.h;
    let base = int(1) - int(1) / profile.chi_star.clone();
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["n", "alpha", "trials", "tiled", "untiled", "unknown", "mean_nodes"])
        .expect("csv write");
    let mut skipped = Vec::new();
    let mut trial_index: u64 = 0;
    for &n in &cfg.ns {
        if (r * n) % hv != 0 {
            skipped.push(format!("n={n}: h = {hv} does not divide rn = {}", r * n));
            continue;
        }
        for alpha in &alphas {
            let target_q = (base.clone() + alpha) * int(n as i64);
            let target = ceil_usize(&target_q);
            if target > n {
                skipped.push(format!(
                    "n={n} alpha={}: degree target {target} exceeds class size",
                    format_rational(alpha)
                ));
                continue;
            }
            let mut tiled = 0usize;
            let mut untiled = 0usize;
            let mut unknown = 0usize;
            let mut total_nodes: u64 = 0;
            for _ in 0..cfg.trials {
                let g = random_partite_graph(
                    r,
                    n,
                    target,
                    cfg.extra_edge_prob,
                    trial_seed(cfg.seed, trial_index),
                )?;
                trial_index += 1;
                let host = Host::Partite(&g);
                match perfect_h_tiling(&host, h, &profile, None, copy_cap, cfg.node_budget)? {
                    PerfectOutcome::Tiling(_) => tiled += 1,
                    PerfectOutcome::NoneExists => untiled += 1,
                    PerfectOutcome::Unknown { nodes } => {
                        unknown += 1;
                        total_nodes += nodes;
                    }
                }
            }
            let trials = int(cfg.trials as i64);
            let frac = |c: usize| format_rational(&(int(c as i64) / trials.clone()));
            let mean_nodes = format_rational(&(int(total_nodes as i64) / trials.clone()));
            wtr.write_record([
                n.to_string(),
                format_rational(alpha),
                cfg.trials.to_string(),
                frac(tiled),
                frac(untiled),
                frac(unknown),
                mean_nodes,
            ])
            .expect("csv write");
        }
    }
    let csv = String::from_utf8(wtr.into_inner().expect("csv flush")).expect("csv utf8");
    Ok(SweepReport { csv, skipped })
}
