//! Generators for the extremal and auxiliary hosts: block-construction
//! graphs, the gcd and sigma lower-bound families, U(H), dummy-augmented
//! hosts, and seeded random r-partite instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{pattern_tiling_complete_multipartite, PatternSolution};
use crate::graph::{BlockStructure, MultipartiteGraph};
use crate::params::{ChromaticProfile, Gcd};
use crate::rational::ceil_usize;
use crate::{int, Rational};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("family requires finite gcd(H) > 1, but gcd(H) = {0}")]
    GcdFamilyNotApplicable(Gcd),
    #[error("family requires gcd(H) = 1, but gcd(H) = {0}")]
    SigmaFamilyNotApplicable(Gcd),
    #[error("family requires chi(H) = r >= 3, got r = {0}")]
    ChromaticTooSmall(usize),
    #[error("need ceil(sigma(H) n) >= 1, got 0 for n = {0}")]
    SigmaRowEmpty(usize),
    #[error("column {0} sums to {1}, expected n = {2}")]
    ColumnSum(usize, usize, usize),
    #[error("degree target {target} exceeds class size {n}")]
    UnsatisfiableDegree { target: usize, n: usize },
    #[error("dummy augmentation needs a balanced host")]
    NotBalanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Custom,
    GcdObstruction,
    SigmaObstruction,
}

/// An r x r block-size matrix n_ij (column i, row j) with every column
/// summing to n.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub r: usize,
    pub n: usize,
    /// block_sizes[i][j] = n_ij
    pub block_sizes: Vec<Vec<usize>>,
    pub family: Family,
}

impl ConstructionSpec {
    pub fn validate(&self) -> Result<(), ConstructionError> {
        for (i, col) in self.block_sizes.iter().enumerate() {
            let sum: usize = col.iter().sum();
            if sum != self.n {
                return Err(ConstructionError::ColumnSum(i, sum, self.n));
            }
        }
        Ok(())
    }

    /// |V^j| for each row j.
    pub fn row_sizes(&self) -> Vec<usize> {
        let mut rows = vec![0usize; self.r];
        for col in &self.block_sizes {
            for (j, &s) in col.iter().enumerate() {
                rows[j] += s;
            }
        }
        rows
    }
}

/// Materialise a block construction: vertices grouped into blocks V_i^j,
/// adjacency exactly "different row and different column", classes = the
/// columns.
pub fn build_block_construction(
    spec: &ConstructionSpec,
) -> Result<(MultipartiteGraph, BlockStructure), ConstructionError> {
    spec.validate()?;
    let r = spec.r;
    let mut membership: Vec<(usize, usize)> = Vec::new();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); r];
    for (i, col) in spec.block_sizes.iter().enumerate() {
        for (j, &size) in col.iter().enumerate() {
            for _ in 0..size {
                let v = membership.len();
                membership.push((i, j));
                classes[i].push(v);
            }
        }
    }
    let n_total = membership.len();
    let mut edges = Vec::new();
    for u in 0..n_total {
        for v in u + 1..n_total {
            let (ci, ri) = membership[u];
            let (cj, rj) = membership[v];
            if ci != cj && ri != rj {
                edges.push((u, v));
            }
        }
    }
    let g = MultipartiteGraph::new(classes, &edges).expect("block construction is valid");
    let blocks = BlockStructure::new(spec.block_sizes.clone(), membership);
    Ok((g, blocks))
}

/// The gcd > 1 lower-bound family: blocks as equal as possible with
/// |V^1| - |V^2| = 1, so any H-tiling hits the divisibility obstruction.
pub fn gcd_lower_bound_spec(
    profile: &ChromaticProfile,
    n: usize,
) -> Result<ConstructionSpec, ConstructionError> {
    match profile.gcd {
        Gcd::Finite(g) if g > 1 => {}
        other => return Err(ConstructionError::GcdFamilyNotApplicable(other)),
    }
    let r = profile.r;
    if r < 3 {
        return Err(ConstructionError::ChromaticTooSmall(r));
    }
    let mut block_sizes = vec![vec![n / r; r]; r];
    if n % r == 0 {
        block_sizes[0][0] = n / r + 1;
        block_sizes[0][2] = n / r - 1;
    } else {
        // q + 0/1 cells: each column gets s cells of q+1; rows receive
        // s+1, s, ..., s, s-1 of them so that |V^1| - |V^2| = 1.
        let s = n % r;
        let mut demand: Vec<i64> = vec![s as i64; r];
        demand[0] = s as i64 + 1;
        demand[r - 1] = s as i64 - 1;
        for col in block_sizes.iter_mut() {
            let mut rows: Vec<usize> = (0..r).collect();
            rows.sort_by_key(|&j| (std::cmp::Reverse(demand[j]), j));
            for &j in rows.iter().take(s) {
                col[j] += 1;
                demand[j] -= 1;
            }
        }
        debug_assert!(demand.iter().all(|&d| d == 0));
    }
    let spec = ConstructionSpec {
        r,
        n,
        block_sizes,
        family: Family::GcdObstruction,
    };
    spec.validate()?;
    let rows = spec.row_sizes();
    debug_assert_eq!(rows[0] as i64 - rows[1] as i64, 1);
    Ok(spec)
}

/// The gcd = 1 lower-bound family: a starved first row of size
/// r(ceil(sigma n) - 1), so the sigma(H)h-per-row counting bound bites.
pub fn sigma_lower_bound_spec(
    profile: &ChromaticProfile,
    n: usize,
) -> Result<ConstructionSpec, ConstructionError> {
    if !profile.gcd.is_one() {
        return Err(ConstructionError::SigmaFamilyNotApplicable(profile.gcd));
    }
    let r = profile.r;
    if r < 3 {
        return Err(ConstructionError::ChromaticTooSmall(r));
    }
    let sigma_n = ceil_usize(&(profile.sigma.clone() * int(n as i64)));
    if sigma_n < 1 {
        return Err(ConstructionError::SigmaRowEmpty(n));
    }
    let first = sigma_n - 1;
    let rest = n - first;
    let mut block_sizes = Vec::with_capacity(r);
    for _ in 0..r {
        let mut col = vec![first];
        // Split `rest` over rows 2..r as equally as possible, larger
        // shares to lower row indices.
        let q = rest / (r - 1);
        let extra = rest % (r - 1);
        for j in 0..r - 1 {
            col.push(q + usize::from(j < extra));
        }
        block_sizes.push(col);
    }
    let spec = ConstructionSpec {
        r,
        n,
        block_sizes,
        family: Family::SigmaObstruction,
    };
    spec.validate()?;
    Ok(spec)
}

/// Threshold quantity (1 - 1/chi*(H)) n as an exact rational.
pub fn degree_threshold(profile: &ChromaticProfile, n: usize) -> Rational {
    (int(1) - int(1) / profile.chi_star.clone()) * int(n as i64)
}

/// Class sizes of U(H): (srh+1, srh, ..., srh, srh-1).
pub fn build_u(profile: &ChromaticProfile, s: usize) -> Result<Vec<usize>, ConstructionError> {
    if !profile.gcd.is_one() {
        return Err(ConstructionError::SigmaFamilyNotApplicable(profile.gcd));
    }
    if profile.r < 3 {
        return Err(ConstructionError::ChromaticTooSmall(profile.r));
    }
    assert!(s >= 1, "U(H) needs s >= 1");
    let base = s * profile.r * profile.h;
    let mut sizes = vec![base; profile.r];
    sizes[0] = base + 1;
    sizes[profile.r - 1] = base - 1;
    Ok(sizes)
}

/// Smallest s <= s_max for which U(H) is pattern-feasible, with the
/// witness pattern counts.
pub fn find_min_s_for_u(
    profile: &ChromaticProfile,
    s_max: usize,
) -> Result<Option<(usize, PatternSolution)>, ConstructionError> {
    for s in 1..=s_max {
        let sizes = build_u(profile, s)?;
        if let Some(sol) = pattern_tiling_complete_multipartite(&sizes, profile) {
            return Ok(Some((s, sol)));
        }
    }
    Ok(None)
}

/// Add m dummy vertices to each class, adjacent to everything outside
/// their own class. Returns the augmented host and the dummy vertex ids.
pub fn augment_with_dummies(
    g: &MultipartiteGraph,
    m: usize,
) -> Result<(MultipartiteGraph, Vec<usize>), ConstructionError> {
    if !g.balanced() {
        return Err(ConstructionError::NotBalanced);
    }
    if m == 0 {
        return Ok((g.clone(), Vec::new()));
    }
    let n0 = g.vertex_count();
    let mut classes = g.classes().to_vec();
    let mut dummies = Vec::with_capacity(g.r() * m);
    let mut next = n0;
    for class in classes.iter_mut() {
        for _ in 0..m {
            class.push(next);
            dummies.push(next);
            next += 1;
        }
    }
    let mut class_of = vec![0usize; next];
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            class_of[v] = ci;
        }
    }
    let mut edges = g.edges().to_vec();
    for &d in &dummies {
        for v in 0..d {
            if class_of[v] != class_of[d] {
                edges.push((v, d));
            }
        }
    }
    let aug = MultipartiteGraph::new(classes, &edges).expect("augmented host is valid");
    Ok((aug, dummies))
}

/// Balanced r-partite random host with delta*(G) >= delta_target: each
/// cross-class pair gets delta_target random neighbours per vertex in both
/// directions, plus independent extra edges with probability `extra_p`.
/// Deterministic per seed.
pub fn random_partite_graph(
    r: usize,
    n: usize,
    delta_target: usize,
    extra_p: f64,
    seed: u64,
) -> Result<MultipartiteGraph, ConstructionError> {
    if delta_target > n {
        return Err(ConstructionError::UnsatisfiableDegree {
            target: delta_target,
            n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes: Vec<Vec<usize>> = (0..r).map(|i| (i * n..(i + 1) * n).collect()).collect();
    let total = r * n;
    let mut present = vec![false; total * total];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let add = |present: &mut Vec<bool>, edges: &mut Vec<(usize, usize)>, u: usize, v: usize| {
        let (a, b) = (u.min(v), u.max(v));
        if !present[a * total + b] {
            present[a * total + b] = true;
            edges.push((a, b));
        }
    };
    for ci in 0..r {
        for cj in 0..r {
            if ci == cj {
                continue;
            }
            // delta_target-regular-ish seeding from side ci to side cj
            for &u in &classes[ci] {
                let mut picked = vec![false; n];
                let mut count = 0;
                while count < delta_target {
                    let t = rng.gen_range(0..n);
                    if !picked[t] {
                        picked[t] = true;
                        count += 1;
                        add(&mut present, &mut edges, u, classes[cj][t]);
                    }
                }
            }
        }
    }
    if extra_p > 0.0 {
        for ci in 0..r {
            for cj in ci + 1..r {
                for &u in &classes[ci] {
                    for &v in &classes[cj] {
                        if rng.gen_bool(extra_p) {
                            add(&mut present, &mut edges, u, v);
                        }
                    }
                }
            }
        }
    }
    Ok(MultipartiteGraph::new(classes, &edges).expect("random host is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::min_multipartite_degree;
    use crate::params::{chromatic_profile, k113};
    use crate::Graph;

    #[test]
    fn balanced_blocks() {
        let spec = ConstructionSpec {
            r: 3,
            n: 6,
            block_sizes: vec![vec![2, 2, 2]; 3],
            family: Family::Custom,
        };
        let (g, blocks) = build_block_construction(&spec).unwrap();
        assert_eq!(min_multipartite_degree(&g).unwrap(), 4);
        assert_eq!(blocks.row_sizes(), vec![6, 6, 6]);
    }

    #[test]
    fn adjacency_matches_rule_exhaustively() {
        let spec = ConstructionSpec {
            r: 3,
            n: 6,
            block_sizes: vec![vec![3, 2, 1], vec![2, 2, 2], vec![1, 2, 3]],
            family: Family::Custom,
        };
        let (g, blocks) = build_block_construction(&spec).unwrap();
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                if u == v {
                    continue;
                }
                let (cu, ru) = blocks.membership()[u];
                let (cv, rv) = blocks.membership()[v];
                assert_eq!(g.has_edge(u, v), cu != cv && ru != rv);
            }
        }
    }

    #[test]
    fn unbalanced_rows_example_n6() {
        // r = 3, n = 6, n_11 = 3, n_13 = 1, others 2.
        let spec = ConstructionSpec {
            r: 3,
            n: 6,
            block_sizes: vec![vec![3, 2, 1], vec![2, 2, 2], vec![2, 2, 2]],
            family: Family::Custom,
        };
        let (g, blocks) = build_block_construction(&spec).unwrap();
        assert_eq!(blocks.row_sizes(), vec![7, 6, 5]);
        assert_eq!(min_multipartite_degree(&g).unwrap(), 3);
    }

    #[test]
    fn gcd_spec_divisible_branch() {
        let profile = chromatic_profile(&k113()).unwrap();
        let spec = gcd_lower_bound_spec(&profile, 9).unwrap();
        assert_eq!(spec.block_sizes[0], vec![4, 3, 2]);
        assert_eq!(spec.block_sizes[1], vec![3, 3, 3]);
        let rows = spec.row_sizes();
        assert_eq!(rows[0] - rows[1], 1);
        let (g, _) = build_block_construction(&spec).unwrap();
        assert_eq!(min_multipartite_degree(&g).unwrap(), 5);
    }

    #[test]
    fn gcd_spec_indivisible_branch() {
        let profile = chromatic_profile(&k113()).unwrap();
        let spec = gcd_lower_bound_spec(&profile, 10).unwrap();
        for col in &spec.block_sizes {
            assert_eq!(col.iter().sum::<usize>(), 10);
            for &b in col {
                assert!(b == 3 || b == 4);
            }
        }
        let rows = spec.row_sizes();
        assert_eq!(rows[0] as i64 - rows[1] as i64, 1);
    }

    #[test]
    fn gcd_spec_rejects_gcd_one() {
        let profile = chromatic_profile(&Graph::cycle(5)).unwrap();
        assert!(gcd_lower_bound_spec(&profile, 10).is_err());
        let k3 = chromatic_profile(&Graph::complete(3)).unwrap();
        assert!(gcd_lower_bound_spec(&k3, 9).is_err());
    }

    #[test]
    fn sigma_spec_c5_n10() {
        let profile = chromatic_profile(&Graph::cycle(5)).unwrap();
        let spec = sigma_lower_bound_spec(&profile, 10).unwrap();
        for col in &spec.block_sizes {
            assert_eq!(col, &vec![1, 5, 4]);
        }
        let (g, _) = build_block_construction(&spec).unwrap();
        assert_eq!(min_multipartite_degree(&g).unwrap(), 5);
    }

    #[test]
    fn u_sizes_c5() {
        let profile = chromatic_profile(&Graph::cycle(5)).unwrap();
        assert_eq!(build_u(&profile, 1).unwrap(), vec![16, 15, 14]);
        assert_eq!(build_u(&profile, 2).unwrap(), vec![31, 30, 29]);
    }

    #[test]
    fn u_rejects_gcd_two() {
        let profile = chromatic_profile(&k113()).unwrap();
        assert!(build_u(&profile, 1).is_err());
    }

    #[test]
    fn min_s_for_u_c5_is_one() {
        let profile = chromatic_profile(&Graph::cycle(5)).unwrap();
        let (s, sol) = find_min_s_for_u(&profile, 3).unwrap().unwrap();
        assert_eq!(s, 1);
        assert_eq!(sol.counts.iter().sum::<usize>(), 9);
    }

    #[test]
    fn min_s_not_found_at_zero_budget() {
        let profile = chromatic_profile(&Graph::cycle(5)).unwrap();
        assert!(find_min_s_for_u(&profile, 0).unwrap().is_none());
    }

    #[test]
    fn dummies_raise_degree_exactly() {
        let g = random_partite_graph(3, 4, 2, 0.1, 11).unwrap();
        let before = min_multipartite_degree(&g).unwrap();
        let (aug, dummies) = augment_with_dummies(&g, 3).unwrap();
        assert_eq!(dummies.len(), 9);
        assert!(aug.balanced());
        assert_eq!(min_multipartite_degree(&aug).unwrap(), before + 3);
    }

    #[test]
    fn dummies_zero_is_identity() {
        let g = MultipartiteGraph::complete(&[2, 2, 2]);
        let (aug, dummies) = augment_with_dummies(&g, 0).unwrap();
        assert!(dummies.is_empty());
        assert_eq!(aug.edges(), g.edges());
    }

    #[test]
    fn random_graph_determinism_and_target() {
        let a = random_partite_graph(3, 6, 4, 0.2, 42).unwrap();
        let b = random_partite_graph(3, 6, 4, 0.2, 42).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert!(min_multipartite_degree(&a).unwrap() >= 4);
        let c = random_partite_graph(3, 6, 4, 0.2, 43).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn random_graph_full_target_is_complete() {
        let g = random_partite_graph(3, 3, 3, 0.0, 7).unwrap();
        assert_eq!(g.edges().len(), 27);
    }

    #[test]
    fn random_graph_zero_target_zero_p_is_empty() {
        let g = random_partite_graph(3, 3, 0, 0.0, 7).unwrap();
        assert!(g.edges().is_empty());
    }

    #[test]
    fn random_graph_rejects_impossible_target() {
        assert!(random_partite_graph(3, 3, 4, 0.0, 7).is_err());
    }
}
