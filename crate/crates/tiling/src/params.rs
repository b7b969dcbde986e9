//! Chromatic profile of a pattern graph H: chromatic number, colour-class
//! size data over all proper chi(H)-colourings, the class-size difference
//! set and its gcd, sigma, the critical chromatic number, chi*, and the
//! derived (a, b) split.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::graph::Graph;
use crate::{int, ratio, Rational};

/// Profiles are exhaustive over all colourings, so the pattern graph must
/// stay desk-scale.
pub const MAX_PROFILE_VERTICES: usize = 16;

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("pattern graph has no vertices")]
    EmptyGraph,
    #[error("pattern graph has {0} vertices; profile computation is capped at {MAX_PROFILE_VERTICES}")]
    TooLarge(usize),
}

/// One proper r-colouring reported through its colour-class sizes, in the
/// order colours were assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    pub class_sizes: Vec<usize>,
}

/// gcd(H): greatest common divisor of the class-size difference set, or
/// infinite when every colouring is equitable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gcd {
    Finite(u64),
    Infinite,
}

impl Gcd {
    pub fn is_one(self) -> bool {
        self == Gcd::Finite(1)
    }
}

impl fmt::Display for Gcd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gcd::Finite(g) => write!(f, "{g}"),
            Gcd::Infinite => write!(f, "inf"),
        }
    }
}

/// The full per-H parameter record.
#[derive(Debug, Clone)]
pub struct ChromaticProfile {
    /// |V(H)|
    pub h: usize,
    /// chi(H)
    pub r: usize,
    /// Sorted class-size tuples over all proper r-colourings.
    pub size_multisets: BTreeSet<Vec<usize>>,
    /// D(H): all pairwise class-size differences over all colourings.
    pub difference_set: BTreeSet<i64>,
    pub gcd: Gcd,
    /// sigma(H) = min class size / h.
    pub sigma: Rational,
    /// chi_cr(H) = (r - 1) / (1 - sigma).
    pub chi_cr: Rational,
    /// chi*(H) = chi_cr if gcd = 1, else r.
    pub chi_star: Rational,
    /// a = sigma * h
    pub a: Rational,
    /// b = (1 - sigma) * h / (r - 1)
    pub b: Rational,
}

fn colour_backtrack<F: FnMut(&[usize])>(
    h: &Graph,
    r: usize,
    fixed: Option<usize>,
    emit: &mut F,
) {
    let n = h.vertex_count();
    let mut colour = vec![usize::MAX; n];
    // recursion over vertex index
    fn rec<F: FnMut(&[usize])>(
        h: &Graph,
        r: usize,
        fixed: Option<usize>,
        colour: &mut Vec<usize>,
        v: usize,
        emit: &mut F,
    ) {
        let n = h.vertex_count();
        if v == n {
            emit(colour);
            return;
        }
        let choices: &[usize] = if fixed == Some(v) { &[0] } else { &[] };
        let all: Vec<usize> = if choices.is_empty() {
            (0..r).collect()
        } else {
            choices.to_vec()
        };
        'next: for c in all {
            for u in 0..v {
                if colour[u] == c && h.has_edge(u, v) {
                    continue 'next;
                }
            }
            colour[v] = c;
            rec(h, r, fixed, colour, v + 1, emit);
            colour[v] = usize::MAX;
        }
    }
    rec(h, r, fixed, &mut colour, 0, emit);
}

/// Decide whether H is properly k-colourable, with symmetry breaking on
/// the colours.
fn colourable(h: &Graph, k: usize) -> bool {
    let n = h.vertex_count();
    let mut colour = vec![usize::MAX; n];
    fn rec(h: &Graph, k: usize, colour: &mut Vec<usize>, v: usize, used: usize) -> bool {
        if v == h.vertex_count() {
            return true;
        }
        let limit = (used + 1).min(k);
        'next: for c in 0..limit {
            for u in 0..v {
                if colour[u] == c && h.has_edge(u, v) {
                    continue 'next;
                }
            }
            colour[v] = c;
            if rec(h, k, colour, v + 1, used.max(c + 1)) {
                return true;
            }
            colour[v] = usize::MAX;
        }
        false
    }
    rec(h, k, &mut colour, 0, 0)
}

/// chi(H), by iterative-deepening exact search.
pub fn chromatic_number(h: &Graph) -> usize {
    assert!(h.vertex_count() >= 1, "chromatic number of empty graph");
    (1..).find(|&k| colourable(h, k)).unwrap()
}

/// All labelled proper r-colourings of H, reported via class-size vectors
/// in deterministic order. Callers must pass r = chi(H); a smaller r yields
/// the empty sequence.
pub fn enumerate_r_colourings(h: &Graph, r: usize) -> Vec<Colouring> {
    let mut out = Vec::new();
    colour_backtrack(h, r, None, &mut |colour| {
        let mut sizes = vec![0usize; r];
        for &c in colour {
            sizes[c] += 1;
        }
        out.push(Colouring { class_sizes: sizes });
    });
    out
}

/// Greedy maximum clique, used to fix one vertex's colour when profiling.
fn greedy_clique(h: &Graph) -> Vec<usize> {
    let n = h.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let mut best: Vec<usize> = Vec::new();
    for &start in &order {
        let mut clique = vec![start];
        for &v in &order {
            if v != start && clique.iter().all(|&u| h.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// Full chromatic profile of H.
///
/// The colouring enumeration fixes the colour of one vertex of a greedy
/// maximum clique; D(H) and the size multisets are closed under colour
/// permutations, so this loses nothing and cuts the search r-fold.
pub fn chromatic_profile(h: &Graph) -> Result<ChromaticProfile, ParamsError> {
    let n = h.vertex_count();
    if n == 0 {
        return Err(ParamsError::EmptyGraph);
    }
    if n > MAX_PROFILE_VERTICES {
        return Err(ParamsError::TooLarge(n));
    }
    let r = chromatic_number(h);
    let fixed = greedy_clique(h).first().copied();

    let mut size_multisets = BTreeSet::new();
    let mut difference_set = BTreeSet::new();
    let mut min_class = usize::MAX;
    colour_backtrack(h, r, fixed, &mut |colour| {
        let mut sizes = vec![0usize; r];
        for &c in colour {
            sizes[c] += 1;
        }
        for &si in &sizes {
            min_class = min_class.min(si);
            for &sj in &sizes {
                difference_set.insert(si as i64 - sj as i64);
            }
        }
        let mut sorted = sizes;
        sorted.sort_unstable();
        size_multisets.insert(sorted);
    });
    assert!(
        !size_multisets.is_empty(),
        "a chi(H)-colouring always exists"
    );

    let gcd = difference_set
        .iter()
        .filter(|&&d| d != 0)
        .map(|&d| d.unsigned_abs())
        .fold(None, |acc: Option<u64>, d| {
            Some(acc.map_or(d, |a| a.gcd(&d)))
        })
        .map_or(Gcd::Infinite, Gcd::Finite);

    let sigma = ratio(min_class as i64, n as i64);
    let chi_cr = int(r as i64 - 1) / (int(1) - sigma.clone());
    let chi_star = if gcd.is_one() {
        chi_cr.clone()
    } else {
        int(r as i64)
    };
    let a = sigma.clone() * int(n as i64);
    let b = (int(1) - sigma.clone()) * int(n as i64) / int(r as i64 - 1);

    Ok(ChromaticProfile {
        h: n,
        r,
        size_multisets,
        difference_set,
        gcd,
        sigma,
        chi_cr,
        chi_star,
        a,
        b,
    })
}

/// All per-class size vectors a copy of H can realize in an r-partite
/// host whose classes it meets as colour classes: every permutation of
/// every achievable class-size multiset.
pub fn colouring_patterns(profile: &ChromaticProfile) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for multiset in &profile.size_multisets {
        permute_into(multiset, &mut out);
    }
    out
}

fn permute_into(sorted: &[usize], out: &mut BTreeSet<Vec<usize>>) {
    let mut v = sorted.to_vec();
    loop {
        out.insert(v.clone());
        if !next_permutation(&mut v) {
            break;
        }
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// K_{1,1,3}: complete 3-partite with class sizes 1, 1, 3.
pub fn k113() -> Graph {
    Graph::complete_multipartite(&[1, 1, 3])
}
