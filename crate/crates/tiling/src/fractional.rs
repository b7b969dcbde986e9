//! The perfect (a, b)-weighted fractional K_r-tiling feasibility LP in
//! exact rational arithmetic: either a verified perfect tiling or a
//! verified Farkas certificate, never an unverified answer. Also the
//! maximum fractional H-tiling LP used as a search bound.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{iter_bits, mask_of, MultipartiteGraph};
use crate::simplex::{
    solve_equality_feasibility, solve_max_under_capacity, Phase1Result, SparseCol,
};
use crate::{int, Rational};

/// Default cap on the number of LP columns (rooted cliques); dense hosts
/// have on the order of n^r of them.
pub const DEFAULT_COLUMN_CAP: usize = 2_000_000;

#[derive(Debug, Error)]
pub enum FractionalError {
    #[error("rooted-clique enumeration exceeded the column cap of {cap}; try a smaller host")]
    ColumnCap { cap: usize },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal: solver output failed independent verification")]
    VerificationFailed,
}

/// A K_r copy in G, one vertex per class, with a designated root. The
/// (a, b) labels live on the enclosing problem, not the copy.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightedRootedClique {
    /// Sorted vertex indices, one per class of G.
    pub vertices: Vec<usize>,
    pub root: usize,
}

/// Non-negative weights on rooted cliques; perfect when every vertex load
/// equals 1 exactly.
#[derive(Debug, Clone)]
pub struct FractionalTiling {
    pub weights: BTreeMap<WeightedRootedClique, Rational>,
    pub perfect: bool,
}

/// A vertex vector x with x.1 > 0 and non-positive dot product with every
/// weighted characteristic vector, witnessing LP infeasibility.
#[derive(Debug, Clone)]
pub struct FarkasCertificate {
    pub x: Vec<Rational>,
}

/// Enumerate the transversal K_r copies of G (in an r-partite graph every
/// K_r meets each class at most once, so a K_r on r vertices is
/// automatically transversal). Deterministic order.
pub fn enumerate_unrooted_cliques(g: &MultipartiteGraph, cap: usize) -> Result<Vec<Vec<usize>>, FractionalError> {
    let n = g.vertex_count();
    let r = g.r();
    let full = mask_of(n, 0..n);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(r);
    fn rec(
        g: &MultipartiteGraph,
        class: usize,
        common: &[u64],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), FractionalError> {
        if class == g.r() {
            if out.len() >= cap {
                return Err(FractionalError::ColumnCap { cap });
            }
            out.push(stack.clone());
            return Ok(());
        }
        let class_mask = mask_of(g.vertex_count(), g.classes()[class].iter().copied());
        let candidates: Vec<usize> = iter_bits(common)
            .filter(|&v| class_mask[v / 64] >> (v % 64) & 1 == 1)
            .collect();
        for v in candidates {
            let mut next = common.to_vec();
            g.adj().intersect_row(v, &mut next);
            stack.push(v);
            rec(g, class + 1, &next, stack, out, cap)?;
            stack.pop();
        }
        Ok(())
    }
    rec(g, 0, &full, &mut stack, &mut out, cap)?;
    Ok(out)
}

/// All (a, b)-weighted rooted K_r copies. When a != b each clique appears
/// once per root choice; when a = b the roots are indistinguishable and
/// one canonical rooted copy (root = lowest index) is emitted per clique.
pub fn enumerate_rooted_cliques(
    g: &MultipartiteGraph,
    a: &Rational,
    b: &Rational,
    cap: usize,
) -> Result<Vec<WeightedRootedClique>, FractionalError> {
    let cliques = enumerate_unrooted_cliques(g, cap)?;
    let mut out = Vec::new();
    for verts in cliques {
        let mut sorted = verts;
        sorted.sort_unstable();
        if a == b {
            out.push(WeightedRootedClique {
                root: sorted[0],
                vertices: sorted,
            });
        } else {
            for &root in &sorted {
                if out.len() >= cap {
                    return Err(FractionalError::ColumnCap { cap });
                }
                out.push(WeightedRootedClique {
                    vertices: sorted.clone(),
                    root,
                });
            }
        }
    }
    Ok(out)
}

fn clique_column(k: &WeightedRootedClique, a: &Rational, b: &Rational) -> SparseCol {
    SparseCol {
        entries: k
            .vertices
            .iter()
            .map(|&v| (v, if v == k.root { a.clone() } else { b.clone() }))
            .collect(),
    }
}

/// Weighted dot product x . 1_{a,b,G}(K).
fn clique_dot(k: &WeightedRootedClique, a: &Rational, b: &Rational, x: &[Rational]) -> Rational {
    k.vertices
        .iter()
        .map(|&v| &x[v] * if v == k.root { a } else { b })
        .sum()
}

/// Check that `k` names an actual rooted K_r copy of G.
fn valid_rooted_clique(g: &MultipartiteGraph, k: &WeightedRootedClique) -> bool {
    if k.vertices.len() != g.r() || !k.vertices.contains(&k.root) {
        return false;
    }
    let mut seen_class = vec![false; g.r()];
    for &v in &k.vertices {
        if v >= g.vertex_count() {
            return false;
        }
        let c = g.class_of(v);
        if seen_class[c] {
            return false;
        }
        seen_class[c] = true;
    }
    for (i, &u) in k.vertices.iter().enumerate() {
        for &v in &k.vertices[i + 1..] {
            if !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// Outcome of the perfect weighted tiling solve.
pub enum TilingOutcome {
    Feasible(FractionalTiling),
    Infeasible(FarkasCertificate),
}

/// Solve the feasibility LP {sum w(K) 1_{a,b,G}(K) = 1, w >= 0} exactly.
/// The returned object, whichever branch, has already passed the
/// independent verifier.
pub fn solve_perfect_weighted_tiling(
    g: &MultipartiteGraph,
    a: &Rational,
    b: &Rational,
    column_cap: usize,
) -> Result<TilingOutcome, FractionalError> {
    if !a.is_positive() {
        return Err(FractionalError::Contract(format!(
            "need a > 0, got {a}"
        )));
    }
    let cliques = enumerate_rooted_cliques(g, a, b, column_cap)?;
    let cols: Vec<SparseCol> = cliques.iter().map(|k| clique_column(k, a, b)).collect();
    let n = g.vertex_count();
    let ones = vec![Rational::one(); n];
    match solve_equality_feasibility(n, &cols, &ones) {
        Phase1Result::Feasible(w) => {
            let weights: BTreeMap<WeightedRootedClique, Rational> = cliques
                .into_iter()
                .zip(w)
                .filter(|(_, wi)| !wi.is_zero())
                .collect();
            let tiling = FractionalTiling {
                weights,
                perfect: true,
            };
            if !verify_fractional_tiling(g, a, b, &tiling) {
                return Err(FractionalError::VerificationFailed);
            }
            Ok(TilingOutcome::Feasible(tiling))
        }
        Phase1Result::Infeasible(y) => {
            let cert = FarkasCertificate { x: y };
            if !verify_farkas_certificate(g, a, b, &cert) {
                return Err(FractionalError::VerificationFailed);
            }
            Ok(TilingOutcome::Infeasible(cert))
        }
    }
}

/// Check all per-vertex load inequalities of a fractional tiling (with
/// equality when it claims to be perfect), re-deriving clique validity
/// from G rather than trusting the solver.
pub fn verify_fractional_tiling(
    g: &MultipartiteGraph,
    a: &Rational,
    b: &Rational,
    t: &FractionalTiling,
) -> bool {
    let n = g.vertex_count();
    let mut load = vec![Rational::zero(); n];
    for (k, w) in &t.weights {
        if w.is_negative() || !valid_rooted_clique(g, k) {
            return false;
        }
        for &v in &k.vertices {
            let coeff = if v == k.root { a } else { b };
            load[v] += w * coeff;
        }
    }
    let one = Rational::one();
    load.iter().all(|l| if t.perfect { *l == one } else { *l <= one })
}

/// Check both Farkas conditions by full independent re-enumeration of the
/// rooted cliques of G.
pub fn verify_farkas_certificate(
    g: &MultipartiteGraph,
    a: &Rational,
    b: &Rational,
    cert: &FarkasCertificate,
) -> bool {
    if cert.x.len() != g.vertex_count() {
        return false;
    }
    let total: Rational = cert.x.iter().cloned().sum();
    if !total.is_positive() {
        return false;
    }
    let cliques = match enumerate_unrooted_cliques(g, usize::MAX) {
        Ok(c) => c,
        Err(_) => return false,
    };
    let zero = Rational::zero();
    for verts in cliques {
        // Check every root choice, regardless of how the solver deduped.
        for &root in &verts {
            let k = WeightedRootedClique {
                vertices: verts.clone(),
                root,
            };
            if clique_dot(&k, a, b, &cert.x) > zero {
                return false;
            }
        }
    }
    true
}

/// Maximum fractional H-tiling value: max sum of weights over H-copies
/// subject to per-vertex load <= 1, as an exact rational.
pub fn max_fractional_h_tiling(vertex_count: usize, copies: &[Vec<usize>]) -> Rational {
    if copies.is_empty() {
        return Rational::zero();
    }
    let cols: Vec<SparseCol> = copies
        .iter()
        .map(|image| SparseCol {
            entries: image.iter().map(|&v| (v, Rational::one())).collect(),
        })
        .collect();
    let b = vec![Rational::one(); vertex_count];
    let obj = vec![Rational::one(); copies.len()];
    let (value, _) = solve_max_under_capacity(vertex_count, &cols, &b, &obj);
    value
}

/// Project a perfect fractional tiling of the m-fold blow-up of G back to
/// G: the weight of a rooted clique of G is the summed weight of its
/// rooted lifts, divided by m.
pub fn average_blowup_tiling(m: usize, blown: &FractionalTiling) -> FractionalTiling {
    let mut weights: BTreeMap<WeightedRootedClique, Rational> = BTreeMap::new();
    for (k, w) in &blown.weights {
        // Vertex v of G was cloned to v*m .. v*m + m - 1.
        let mut verts: Vec<usize> = k.vertices.iter().map(|&u| u / m).collect();
        verts.sort_unstable();
        let key = WeightedRootedClique {
            vertices: verts,
            root: k.root / m,
        };
        *weights.entry(key).or_insert_with(Rational::zero) += w;
    }
    let scale = int(m as i64);
    for w in weights.values_mut() {
        *w /= &scale;
    }
    FractionalTiling {
        weights,
        perfect: blown.perfect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn complete3(n: usize) -> MultipartiteGraph {
        MultipartiteGraph::complete(&[n, n, n])
    }

    #[test]
    fn rooted_count_single_triangle() {
        let g = complete3(1);
        let a = int(1);
        let b = int(2);
        assert_eq!(enumerate_rooted_cliques(&g, &a, &b, 1000).unwrap().len(), 3);
        assert_eq!(enumerate_rooted_cliques(&g, &a, &a, 1000).unwrap().len(), 1);
    }

    #[test]
    fn rooted_count_n2() {
        let g = complete3(2);
        assert_eq!(enumerate_unrooted_cliques(&g, 1000).unwrap().len(), 8);
        let (a, b) = (int(1), int(2));
        assert_eq!(enumerate_rooted_cliques(&g, &a, &b, 1000).unwrap().len(), 24);
    }

    #[test]
    fn column_cap_is_an_error() {
        let g = complete3(3);
        assert!(matches!(
            enumerate_unrooted_cliques(&g, 5),
            Err(FractionalError::ColumnCap { cap: 5 })
        ));
    }

    #[test]
    fn feasible_on_complete_host() {
        let g = complete3(2);
        let (a, b) = (int(1), int(2));
        match solve_perfect_weighted_tiling(&g, &a, &b, DEFAULT_COLUMN_CAP).unwrap() {
            TilingOutcome::Feasible(t) => {
                assert!(t.perfect);
                assert!(verify_fractional_tiling(&g, &a, &b, &t));
            }
            TilingOutcome::Infeasible(_) => panic!("complete host must be feasible"),
        }
    }

    #[test]
    fn infeasible_when_vertex_in_no_clique() {
        // Third class vertex 4 sees nothing: no triangle contains it.
        let g = MultipartiteGraph::new(
            vec![vec![0, 1], vec![2, 3], vec![4, 5]],
            &[
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (0, 5),
                (1, 5),
                (2, 5),
                (3, 5),
            ],
        )
        .unwrap();
        let (a, b) = (int(1), int(1));
        match solve_perfect_weighted_tiling(&g, &a, &b, DEFAULT_COLUMN_CAP).unwrap() {
            TilingOutcome::Feasible(_) => panic!("expected infeasible"),
            TilingOutcome::Infeasible(cert) => {
                assert!(verify_farkas_certificate(&g, &a, &b, &cert));
            }
        }
    }

    #[test]
    fn indicator_of_uncoverable_vertex_is_a_certificate() {
        let g = MultipartiteGraph::new(vec![vec![0], vec![1], vec![2]], &[(0, 1)]).unwrap();
        let mut x = vec![Rational::zero(); 3];
        x[2] = Rational::one();
        let cert = FarkasCertificate { x };
        assert!(verify_farkas_certificate(&g, &int(1), &int(2), &cert));
    }

    #[test]
    fn all_ones_is_not_a_certificate() {
        let g = complete3(1);
        let cert = FarkasCertificate {
            x: vec![Rational::one(); 3],
        };
        assert!(!verify_farkas_certificate(&g, &int(1), &int(2), &cert));
    }

    #[test]
    fn perturbed_tiling_fails_verification() {
        let g = complete3(2);
        let (a, b) = (int(1), int(2));
        let TilingOutcome::Feasible(mut t) =
            solve_perfect_weighted_tiling(&g, &a, &b, DEFAULT_COLUMN_CAP).unwrap()
        else {
            panic!("feasible instance");
        };
        let key = t.weights.keys().next().unwrap().clone();
        *t.weights.get_mut(&key).unwrap() += ratio(1, 1000);
        assert!(!verify_fractional_tiling(&g, &a, &b, &t));
    }

    #[test]
    fn empty_tiling_verifies_as_imperfect() {
        let g = complete3(1);
        let t = FractionalTiling {
            weights: BTreeMap::new(),
            perfect: false,
        };
        assert!(verify_fractional_tiling(&g, &int(1), &int(2), &t));
    }

    #[test]
    fn max_fractional_no_copies_is_zero() {
        assert_eq!(max_fractional_h_tiling(6, &[]), Rational::zero());
    }
}
