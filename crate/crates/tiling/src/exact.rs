//! Exact H-tiling machinery: subgraph-isomorphism enumeration of H-copies,
//! perfect and maximum tiling search by exact cover with counting prunes,
//! and a pattern integer-feasibility solver for complete multipartite
//! hosts.

use std::collections::BTreeMap;

use num_traits::Signed;
use thiserror::Error;

use crate::graph::{Adjacency, BlockStructure, Graph, MultipartiteGraph};
use crate::params::{colouring_patterns, enumerate_r_colourings, ChromaticProfile, Gcd};
use crate::{int, Rational};

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("H-copy enumeration exceeded the cap of {cap} images; try a smaller host")]
    CopyCap { cap: usize },
}

/// Either a plain host or an r-partite host. The partite form carries its
/// class partition, which the search uses as a counting prune.
pub enum Host<'a> {
    Plain(&'a Graph),
    Partite(&'a MultipartiteGraph),
}

impl<'a> Host<'a> {
    pub fn vertex_count(&self) -> usize {
        match self {
            Host::Plain(g) => g.vertex_count(),
            Host::Partite(g) => g.vertex_count(),
        }
    }

    pub fn adj(&self) -> &Adjacency {
        match self {
            Host::Plain(g) => g.adj(),
            Host::Partite(g) => g.adj(),
        }
    }

    fn class_partition(&self) -> Option<Vec<usize>> {
        match self {
            Host::Plain(_) => None,
            Host::Partite(g) => {
                Some((0..g.vertex_count()).map(|v| g.class_of(v)).collect())
            }
        }
    }
}

/// A copy of H in the host: its vertex image plus one witness embedding.
/// Copies are deduplicated by image set.
#[derive(Debug, Clone)]
pub struct HCopy {
    /// Sorted host vertex indices.
    pub image: Vec<usize>,
    /// witness[i] = host vertex that H-vertex i maps to.
    pub witness: Vec<usize>,
}

/// A set of pairwise vertex-disjoint copies.
#[derive(Debug, Clone, Default)]
pub struct Tiling {
    pub copies: Vec<HCopy>,
}

impl Tiling {
    pub fn covered(&self) -> usize {
        self.copies.iter().map(|c| c.image.len()).sum()
    }

    pub fn is_perfect(&self, host_vertices: usize) -> bool {
        self.covered() == host_vertices
    }
}

/// Independent tiling verifier: disjointness, per-copy embedding validity
/// (injective homomorphism), and coverage count.
pub fn verify_tiling(host: &Host, h: &Graph, t: &Tiling) -> bool {
    let n = host.vertex_count();
    let mut used = vec![false; n];
    for copy in &t.copies {
        if copy.witness.len() != h.vertex_count() {
            return false;
        }
        let mut image: Vec<usize> = copy.witness.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != h.vertex_count() || image != copy.image {
            return false;
        }
        for &v in &copy.image {
            if v >= n || used[v] {
                return false;
            }
            used[v] = true;
        }
        for &(u, v) in h.edges() {
            if !host.adj().has_edge(copy.witness[u], copy.witness[v]) {
                return false;
            }
        }
    }
    true
}

/// Order H's vertices so each one after the first has a previously-placed
/// neighbour where possible; anchors the backtracking.
fn embed_order(h: &Graph) -> Vec<usize> {
    let n = h.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let pick = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let attached = (0..n)
                    .filter(|&u| placed[u] && h.has_edge(u, v))
                    .count();
                (attached, h.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[pick] = true;
        order.push(pick);
    }
    order
}

/// Every h-vertex subset of the host carrying an embedded copy of H,
/// exactly once with one witness, in deterministic order.
pub fn enumerate_h_copies(host: &Host, h: &Graph, cap: usize) -> Result<Vec<HCopy>, ExactError> {
    let n = host.vertex_count();
    let hn = h.vertex_count();
    if hn > n {
        return Ok(Vec::new());
    }
    let order = embed_order(h);
    let adj = host.adj();
    let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut map = vec![usize::MAX; hn];
    let mut used = vec![false; n];

    fn rec(
        h: &Graph,
        adj: &Adjacency,
        n: usize,
        order: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut BTreeMap<Vec<usize>, Vec<usize>>,
        cap: usize,
    ) -> Result<(), ExactError> {
        if depth == order.len() {
            let mut image: Vec<usize> = map.clone();
            image.sort_unstable();
            if !found.contains_key(&image) {
                if found.len() >= cap {
                    return Err(ExactError::CopyCap { cap });
                }
                found.insert(image, map.clone());
            }
            return Ok(());
        }
        let hv = order[depth];
        let hdeg = h.degree(hv);
        'cand: for g_v in 0..n {
            if used[g_v] || adj.row(g_v).iter().map(|w| w.count_ones() as usize).sum::<usize>() < hdeg
            {
                continue;
            }
            for &hu in &order[..depth] {
                if h.has_edge(hu, hv) && !adj.has_edge(map[hu], g_v) {
                    continue 'cand;
                }
            }
            map[hv] = g_v;
            used[g_v] = true;
            rec(h, adj, n, order, depth + 1, map, used, found, cap)?;
            used[g_v] = false;
            map[hv] = usize::MAX;
        }
        Ok(())
    }
    rec(h, adj, n, &order, 0, &mut map, &mut used, &mut found, cap)?;
    Ok(found
        .into_iter()
        .map(|(image, witness)| HCopy { image, witness })
        .collect())
}

/// Search verdicts for the perfect-tiling decision.
pub enum PerfectOutcome {
    Tiling(Tiling),
    NoneExists,
    Unknown { nodes: u64 },
}

/// A counting prune derived from a vertex partition of the host into
/// independent sets (host classes, or the rows of a block construction):
/// every copy meets the parts in a colouring pattern of H, so remaining
/// part counts must stay consistent with sigma(H)h per part and with
/// gcd(H) divisibility of part differences.
struct PartitionPrune {
    part_of: Vec<usize>,
    parts: usize,
}

struct SearchCtx<'a> {
    h_size: usize,
    copies: &'a [HCopy],
    /// incidence[v] = indices of copies containing v
    incidence: Vec<Vec<usize>>,
    copy_masks: Vec<Vec<u64>>,
    words: usize,
    n: usize,
    prunes: Vec<PartitionPrune>,
    /// sigma(H) * h as an exact rational
    sigma_h: Rational,
    /// h - (r-1) sigma(H) h: the largest share of one copy a part can take
    max_per_part: Rational,
    gcd: Gcd,
    budget: u64,
    nodes: u64,
}

impl<'a> SearchCtx<'a> {
    fn new(
        n: usize,
        copies: &'a [HCopy],
        profile: &ChromaticProfile,
        prunes: Vec<PartitionPrune>,
        budget: u64,
    ) -> Self {
        let words = n.div_ceil(64);
        let mut incidence = vec![Vec::new(); n];
        let mut copy_masks = Vec::with_capacity(copies.len());
        for (ci, c) in copies.iter().enumerate() {
            let mut mask = vec![0u64; words];
            for &v in &c.image {
                mask[v / 64] |= 1 << (v % 64);
                incidence[v].push(ci);
            }
            copy_masks.push(mask);
        }
        let sigma_h = profile.sigma.clone() * int(profile.h as i64);
        let max_per_part =
            int(profile.h as i64) - int(profile.r as i64 - 1) * sigma_h.clone();
        SearchCtx {
            h_size: profile.h,
            copies,
            incidence,
            copy_masks,
            words,
            n,
            prunes,
            sigma_h,
            max_per_part,
            gcd: profile.gcd,
            budget,
            nodes: 0,
        }
    }

    fn disjoint(&self, ci: usize, covered: &[u64]) -> bool {
        self.copy_masks[ci]
            .iter()
            .zip(covered)
            .all(|(a, b)| a & b == 0)
    }

    /// Necessary conditions for the remaining (uncovered, unexcluded)
    /// vertices to admit a perfect tiling: counts per part of each
    /// partition must be achievable by remaining_total/h copies.
    fn remaining_feasible(&self, part_counts: &[Vec<i64>], remaining: i64) -> bool {
        if remaining % self.h_size as i64 != 0 {
            return false;
        }
        let t = int(remaining / self.h_size as i64);
        for counts in part_counts {
            for &c in counts.iter() {
                let c = int(c);
                if c < self.sigma_h.clone() * t.clone()
                    || c > self.max_per_part.clone() * t.clone()
                {
                    return false;
                }
            }
            match self.gcd {
                Gcd::Infinite => {
                    // every colouring equitable: all parts must be equal
                    if counts.iter().any(|&c| c != counts[0]) {
                        return false;
                    }
                }
                Gcd::Finite(g) => {
                    let g = g as i64;
                    if counts
                        .iter()
                        .any(|&c| (c - counts[0]).rem_euclid(g) != 0)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Upper bound on how many further copies fit, from the per-part
    /// sigma(H)h consumption.
    fn part_bound(&self, part_counts: &[Vec<i64>]) -> Option<u64> {
        let mut best: Option<u64> = None;
        for counts in part_counts {
            for &c in counts {
                // floor(c / sigma_h)
                let q = (int(c) / self.sigma_h.clone()).floor().to_integer();
                let q: u64 = q.try_into().unwrap_or(0);
                best = Some(best.map_or(q, |b| b.min(q)));
            }
        }
        best
    }
}

fn apply_copy(ctx: &SearchCtx, ci: usize, covered: &mut [u64], part_counts: &mut [Vec<i64>], sign: i64) {
    for (w, m) in covered.iter_mut().zip(&ctx.copy_masks[ci]) {
        *w ^= m;
    }
    for &v in &ctx.copies[ci].image {
        for (p, prune) in ctx.prunes.iter().enumerate() {
            part_counts[p][prune.part_of[v]] -= sign;
        }
    }
}

fn perfect_rec(
    ctx: &mut SearchCtx,
    covered: &mut Vec<u64>,
    part_counts: &mut Vec<Vec<i64>>,
    remaining: i64,
    chosen: &mut Vec<usize>,
) -> Option<bool> {
    // Some(true): tiling found (chosen holds it); Some(false): exhausted;
    // None: budget out.
    if remaining == 0 {
        return Some(true);
    }
    ctx.nodes += 1;
    if ctx.nodes > ctx.budget {
        return None;
    }
    if !ctx.remaining_feasible(part_counts, remaining) {
        return Some(false);
    }
    // Branch on the uncovered vertex with the fewest available copies.
    let mut best_v = None;
    let mut best_count = usize::MAX;
    for v in 0..ctx.n {
        if covered[v / 64] >> (v % 64) & 1 == 1 {
            continue;
        }
        let count = ctx.incidence[v]
            .iter()
            .filter(|&&ci| ctx.disjoint(ci, covered))
            .count();
        if count < best_count {
            best_count = count;
            best_v = Some(v);
            if count == 0 {
                break;
            }
        }
    }
    let v = best_v.expect("remaining > 0 implies an uncovered vertex");
    if best_count == 0 {
        return Some(false);
    }
    let candidates: Vec<usize> = ctx.incidence[v]
        .iter()
        .copied()
        .filter(|&ci| ctx.disjoint(ci, covered))
        .collect();
    for ci in candidates {
        apply_copy(ctx, ci, covered, part_counts, 1);
        chosen.push(ci);
        match perfect_rec(ctx, covered, part_counts, remaining - ctx.h_size as i64, chosen) {
            Some(true) => return Some(true),
            Some(false) => {}
            None => return None,
        }
        chosen.pop();
        apply_copy(ctx, ci, covered, part_counts, -1);
    }
    Some(false)
}

fn initial_part_counts(n: usize, prunes: &[PartitionPrune]) -> Vec<Vec<i64>> {
    prunes
        .iter()
        .map(|p| {
            let mut counts = vec![0i64; p.parts];
            for v in 0..n {
                counts[p.part_of[v]] += 1;
            }
            counts
        })
        .collect()
}

/// The counting prunes are valid only when the partition has exactly
/// chi(H) parts, each an independent set: then every copy meets the parts
/// in a colouring pattern of H.
fn build_prunes(
    host: &Host,
    profile: &ChromaticProfile,
    blocks: Option<&BlockStructure>,
) -> Vec<PartitionPrune> {
    let mut prunes = Vec::new();
    if let Some(part_of) = host.class_partition() {
        let parts = part_of.iter().max().map_or(0, |m| m + 1);
        if parts == profile.r {
            prunes.push(PartitionPrune { part_of, parts });
        }
    }
    if let Some(b) = blocks {
        if b.r() == profile.r {
            let part_of: Vec<usize> = (0..host.vertex_count()).map(|v| b.row_of(v)).collect();
            prunes.push(PartitionPrune {
                part_of,
                parts: b.r(),
            });
        }
    }
    prunes
}

/// Decide/construct a perfect H-tiling by exact-cover search. `NoneExists`
/// is returned only after exhaustive search (counting prunes are proofs,
/// not heuristics); budget exhaustion yields `Unknown`.
pub fn perfect_h_tiling(
    host: &Host,
    h: &Graph,
    profile: &ChromaticProfile,
    blocks: Option<&BlockStructure>,
    copy_cap: usize,
    budget: u64,
) -> Result<PerfectOutcome, ExactError> {
    let n = host.vertex_count();
    if n % h.vertex_count() != 0 {
        return Ok(PerfectOutcome::NoneExists);
    }
    let copies = enumerate_h_copies(host, h, copy_cap)?;
    let prunes = build_prunes(host, profile, blocks);
    let mut ctx = SearchCtx::new(n, &copies, profile, prunes, budget);
    let mut covered = vec![0u64; ctx.words];
    let mut part_counts = initial_part_counts(n, &ctx.prunes);
    let mut chosen = Vec::new();
    match perfect_rec(&mut ctx, &mut covered, &mut part_counts, n as i64, &mut chosen) {
        Some(true) => {
            let tiling = Tiling {
                copies: chosen.iter().map(|&ci| copies[ci].clone()).collect(),
            };
            debug_assert!(verify_tiling(host, h, &tiling));
            Ok(PerfectOutcome::Tiling(tiling))
        }
        Some(false) => Ok(PerfectOutcome::NoneExists),
        None => Ok(PerfectOutcome::Unknown { nodes: ctx.nodes }),
    }
}

/// Result of the maximum-tiling branch and bound.
pub struct MaxOutcome {
    pub tiling: Tiling,
    /// true iff the search closed the gap against its upper bounds.
    pub optimal: bool,
    pub nodes: u64,
}

fn max_rec(
    ctx: &mut SearchCtx,
    covered: &mut Vec<u64>,
    excluded: &mut Vec<u64>,
    part_counts: &mut Vec<Vec<i64>>,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
    global_cap: u64,
) -> bool {
    // returns false when the budget ran out somewhere below
    ctx.nodes += 1;
    if ctx.nodes > ctx.budget {
        return false;
    }
    if chosen.len() > best.len() {
        *best = chosen.clone();
    }
    // Upper bound on additional copies.
    let free: i64 = (0..ctx.n)
        .filter(|&v| {
            covered[v / 64] >> (v % 64) & 1 == 0 && excluded[v / 64] >> (v % 64) & 1 == 0
        })
        .count() as i64;
    let mut bound = (free / ctx.h_size as i64) as u64;
    if let Some(pb) = ctx.part_bound(part_counts) {
        bound = bound.min(pb);
    }
    let total_bound = (chosen.len() as u64 + bound).min(global_cap);
    if total_bound <= best.len() as u64 {
        return true;
    }
    // Branch vertex: free vertex with the fewest available copies.
    let mut best_v = None;
    let mut best_count = usize::MAX;
    for v in 0..ctx.n {
        if covered[v / 64] >> (v % 64) & 1 == 1 || excluded[v / 64] >> (v % 64) & 1 == 1 {
            continue;
        }
        let count = ctx.incidence[v]
            .iter()
            .filter(|&&ci| {
                ctx.disjoint(ci, covered)
                    && ctx.copy_masks[ci]
                        .iter()
                        .zip(excluded.iter())
                        .all(|(a, b)| a & b == 0)
            })
            .count();
        if count < best_count {
            best_count = count;
            best_v = Some(v);
            if count == 0 {
                break;
            }
        }
    }
    let Some(v) = best_v else {
        return true; // nothing free
    };
    let mut complete = true;
    let candidates: Vec<usize> = ctx.incidence[v]
        .iter()
        .copied()
        .filter(|&ci| {
            ctx.disjoint(ci, covered)
                && ctx.copy_masks[ci]
                    .iter()
                    .zip(excluded.iter())
                    .all(|(a, b)| a & b == 0)
        })
        .collect();
    for ci in candidates {
        apply_copy(ctx, ci, covered, part_counts, 1);
        chosen.push(ci);
        complete &= max_rec(ctx, covered, excluded, part_counts, chosen, best, global_cap);
        chosen.pop();
        apply_copy(ctx, ci, covered, part_counts, -1);
        if !complete {
            return false;
        }
    }
    // Or leave v uncovered. It still counts against no part budget: the
    // part counters track coverable mass, so excluding v removes it.
    excluded[v / 64] |= 1 << (v % 64);
    for (p, prune) in ctx.prunes.iter().enumerate() {
        part_counts[p][prune.part_of[v]] -= 1;
    }
    complete &= max_rec(ctx, covered, excluded, part_counts, chosen, best, global_cap);
    for (p, prune) in ctx.prunes.iter().enumerate() {
        part_counts[p][prune.part_of[v]] += 1;
    }
    excluded[v / 64] &= !(1 << (v % 64));
    complete
}

/// Largest H-tiling found by branch and bound. `optimal` is true iff the
/// search proved no larger tiling exists. `lp_bound`, when given, caps the
/// tiling size from the fractional relaxation.
pub fn max_h_tiling(
    host: &Host,
    h: &Graph,
    profile: &ChromaticProfile,
    blocks: Option<&BlockStructure>,
    lp_bound: Option<&Rational>,
    copy_cap: usize,
    budget: u64,
) -> Result<MaxOutcome, ExactError> {
    let n = host.vertex_count();
    let copies = enumerate_h_copies(host, h, copy_cap)?;
    let prunes = build_prunes(host, profile, blocks);
    let mut ctx = SearchCtx::new(n, &copies, profile, prunes, budget);
    let mut covered = vec![0u64; ctx.words];
    let mut excluded = vec![0u64; ctx.words];
    let mut part_counts = initial_part_counts(n, &ctx.prunes);
    let global_cap: u64 = match lp_bound {
        Some(v) => {
            assert!(!v.is_negative());
            v.floor().to_integer().try_into().unwrap_or(u64::MAX)
        }
        None => u64::MAX,
    };
    let mut chosen = Vec::new();
    let mut best = Vec::new();
    let complete = max_rec(
        &mut ctx,
        &mut covered,
        &mut excluded,
        &mut part_counts,
        &mut chosen,
        &mut best,
        global_cap,
    );
    let tiling = Tiling {
        copies: best.iter().map(|&ci| copies[ci].clone()).collect(),
    };
    debug_assert!(verify_tiling(host, h, &tiling));
    Ok(MaxOutcome {
        tiling,
        optimal: complete,
        nodes: ctx.nodes,
    })
}

/// One copy-count per achievable colouring pattern, realizing a complete
/// multipartite host's class sizes exactly.
#[derive(Debug, Clone)]
pub struct PatternSolution {
    pub patterns: Vec<Vec<usize>>,
    pub counts: Vec<usize>,
}

/// Decide perfect H-tilability of the complete r-partite host with the
/// given class sizes by integer feasibility over colouring patterns.
/// Exhaustive: `None` means no perfect tiling exists.
pub fn pattern_tiling_complete_multipartite(
    sizes: &[usize],
    profile: &ChromaticProfile,
) -> Option<PatternSolution> {
    let total: usize = sizes.iter().sum();
    if total % profile.h != 0 || sizes.len() != profile.r {
        return None;
    }
    let patterns: Vec<Vec<usize>> = colouring_patterns(profile).into_iter().collect();
    let t = total / profile.h;
    let mut counts = vec![0usize; patterns.len()];
    let mut remaining: Vec<i64> = sizes.iter().map(|&s| s as i64).collect();

    fn rec(
        patterns: &[Vec<usize>],
        idx: usize,
        copies_left: usize,
        remaining: &mut Vec<i64>,
        counts: &mut Vec<usize>,
    ) -> bool {
        if copies_left == 0 {
            return remaining.iter().all(|&r| r == 0);
        }
        if idx == patterns.len() {
            return false;
        }
        // Reachability prune over the remaining pattern suffix.
        for (c, &rem) in remaining.iter().enumerate() {
            let max_c = patterns[idx..]
                .iter()
                .map(|p| p[c] as i64)
                .max()
                .unwrap_or(0);
            let min_c = patterns[idx..]
                .iter()
                .map(|p| p[c] as i64)
                .min()
                .unwrap_or(0);
            if rem > max_c * copies_left as i64 || rem < min_c * copies_left as i64 {
                return false;
            }
        }
        let max_count = remaining
            .iter()
            .enumerate()
            .filter(|(c, _)| patterns[idx][*c] > 0)
            .map(|(c, &rem)| (rem.max(0) as usize) / patterns[idx][c])
            .min()
            .unwrap_or(copies_left)
            .min(copies_left);
        // Lexicographic: try the largest count of the current pattern first.
        for k in (0..=max_count).rev() {
            for (c, rem) in remaining.iter_mut().enumerate() {
                *rem -= (patterns[idx][c] * k) as i64;
            }
            counts[idx] = k;
            if rec(patterns, idx + 1, copies_left - k, remaining, counts) {
                return true;
            }
            counts[idx] = 0;
            for (c, rem) in remaining.iter_mut().enumerate() {
                *rem += (patterns[idx][c] * k) as i64;
            }
        }
        false
    }

    if rec(&patterns, 0, t, &mut remaining, &mut counts) {
        Some(PatternSolution { patterns, counts })
    } else {
        None
    }
}

impl PatternSolution {
    /// Materialise the pattern counts as a concrete tiling of the complete
    /// multipartite host by greedy slot assignment.
    pub fn to_tiling(&self, sizes: &[usize], h: &Graph, profile: &ChromaticProfile) -> Tiling {
        // class c occupies indices class_start[c]..class_start[c]+sizes[c]
        let mut class_start = vec![0usize; sizes.len()];
        for c in 1..sizes.len() {
            class_start[c] = class_start[c - 1] + sizes[c - 1];
        }
        let mut next_slot = class_start.clone();
        // For each pattern find one colouring of H with those class sizes.
        let colourings = enumerate_r_colourings(h, profile.r);
        let mut copies = Vec::new();
        for (pi, &count) in self.counts.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let pattern = &self.patterns[pi];
            let col = colourings
                .iter()
                .position(|c| &c.class_sizes == pattern)
                .expect("pattern came from a colouring");
            // Recover the actual vertex->colour map for that colouring.
            let assignment = nth_colouring_assignment(h, profile.r, col);
            for _ in 0..count {
                let mut witness = vec![0usize; h.vertex_count()];
                let mut cursor = next_slot.clone();
                for (hv, &colour) in assignment.iter().enumerate() {
                    witness[hv] = cursor[colour];
                    cursor[colour] += 1;
                }
                next_slot = cursor;
                let mut image = witness.clone();
                image.sort_unstable();
                copies.push(HCopy { image, witness });
            }
        }
        Tiling { copies }
    }
}

/// The colour assignment of the idx-th labelled colouring in enumeration
/// order; mirrors `enumerate_r_colourings`.
fn nth_colouring_assignment(h: &Graph, r: usize, idx: usize) -> Vec<usize> {
    let mut found = None;
    let mut count = 0usize;
    let n = h.vertex_count();
    let mut colour = vec![usize::MAX; n];
    fn rec(
        h: &Graph,
        r: usize,
        colour: &mut Vec<usize>,
        v: usize,
        idx: usize,
        count: &mut usize,
        found: &mut Option<Vec<usize>>,
    ) {
        if found.is_some() {
            return;
        }
        if v == h.vertex_count() {
            if *count == idx {
                *found = Some(colour.clone());
            }
            *count += 1;
            return;
        }
        'next: for c in 0..r {
            for u in 0..v {
                if colour[u] == c && h.has_edge(u, v) {
                    continue 'next;
                }
            }
            colour[v] = c;
            rec(h, r, colour, v + 1, idx, count, found);
            colour[v] = usize::MAX;
        }
    }
    rec(h, r, &mut colour, 0, idx, &mut count, &mut found);
    found.expect("index within enumeration")
}

/// floor(min_j |V^j| / sigma(H)h): the row counting bound on any H-tiling
/// of a block-construction host.
pub fn row_tiling_upper_bound(blocks: &BlockStructure, profile: &ChromaticProfile) -> u64 {
    let sigma_h = profile.sigma.clone() * int(profile.h as i64);
    assert!(sigma_h >= int(1), "row bound needs sigma(H)h >= 1");
    blocks
        .row_sizes()
        .iter()
        .map(|&row| {
            (int(row as i64) / sigma_h.clone())
                .floor()
                .to_integer()
                .try_into()
                .unwrap_or(0u64)
        })
        .min()
        .unwrap_or(0)
}
