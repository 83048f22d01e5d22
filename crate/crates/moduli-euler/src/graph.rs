//! Brute-force enumeration of connected stable graphs with automorphism
//! counting, and the direct graph-sum evaluation of the refined invariants.
//!
//! This is the ground-truth oracle for small types: correctness over speed.
//! Deduplication works by a canonical encoding minimized over all vertex
//! relabelings, and |Aut| is an explicit count of structure-preserving vertex
//! permutations times the local half-edge symmetries (leg permutations, loop
//! half-edge swaps, parallel-edge permutations).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::initial::{chi_open, is_stable};
use crate::kpoly::KPoly;
use crate::rat::Rat;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A connected stable graph: genus-labeled vertices, an internal edge
/// multiset (loops and parallel edges allowed, `edges[i][j]` is the
/// multiplicity, diagonal entries count loops), and unlabeled external legs
/// recorded per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableGraph {
    genera: Vec<u32>,
    legs: Vec<u32>,
    edges: Vec<Vec<u32>>,
}

impl StableGraph {
    pub fn new(genera: Vec<u32>, legs: Vec<u32>, edges: Vec<Vec<u32>>) -> Self {
        let m = genera.len();
        assert_eq!(legs.len(), m);
        assert_eq!(edges.len(), m);
        assert!(edges.iter().all(|row| row.len() == m));
        for i in 0..m {
            for j in 0..m {
                assert_eq!(edges[i][j], edges[j][i], "edge matrix must be symmetric");
            }
        }
        StableGraph { genera, legs, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn genus_of(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn legs_at(&self, v: usize) -> u32 {
        self.legs[v]
    }

    pub fn edge_multiplicity(&self, i: usize, j: usize) -> u32 {
        self.edges[i][j]
    }

    /// Number of internal edges, loops counted once.
    pub fn num_edges(&self) -> usize {
        let mut e = 0;
        for i in 0..self.num_vertices() {
            for j in i..self.num_vertices() {
                e += self.edges[i][j] as usize;
            }
        }
        e
    }

    pub fn num_legs(&self) -> u32 {
        self.legs.iter().sum()
    }

    /// Valence of a vertex: legs plus incident internal half-edges
    /// (each loop contributes two).
    pub fn valence(&self, v: usize) -> u32 {
        let mut val = self.legs[v] + self.edges[v][v];
        for j in 0..self.num_vertices() {
            val += self.edges[v][j];
        }
        val
    }

    /// Total genus: first Betti number plus the sum of vertex genera.
    pub fn genus(&self) -> u32 {
        let h1 = self.num_edges() as i64 - self.num_vertices() as i64 + 1;
        (h1 + self.genera.iter().map(|&g| g as i64).sum::<i64>()) as u32
    }

    pub fn is_connected(&self) -> bool {
        let m = self.num_vertices();
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for j in 0..m {
                if !seen[j] && (self.edges[v][j] > 0) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every vertex satisfies 2 g_v - 2 + val(v) > 0.
    pub fn all_vertices_stable(&self) -> bool {
        (0..self.num_vertices()).all(|v| is_stable(self.genera[v], self.valence(v)))
    }

    /// Full structural re-validation against a claimed type.
    pub fn validate(&self, g: u32, n: u32) -> bool {
        self.is_connected() && self.all_vertices_stable() && self.genus() == g && self.num_legs() == n
    }

    fn encoding_under(&self, perm: &[usize]) -> Vec<u32> {
        let m = self.num_vertices();
        let mut key = Vec::with_capacity(m * (m + 5) / 2);
        for &v in perm {
            key.push(self.genera[v]);
            key.push(self.legs[v]);
        }
        for i in 0..m {
            for j in i..m {
                key.push(self.edges[perm[i]][perm[j]]);
            }
        }
        key
    }

    /// Minimal encoding over all vertex relabelings; equal keys mean
    /// isomorphic graphs.
    pub fn canonical_key(&self) -> Vec<u32> {
        let m = self.num_vertices();
        let mut best: Option<Vec<u32>> = None;
        for perm in permutations(m) {
            let key = self.encoding_under(&perm);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.expect("at least one vertex")
    }

    /// Order of the automorphism group: genus- and structure-preserving vertex
    /// permutations, times leg permutations, loop half-edge swaps, and
    /// parallel-edge permutations.
    pub fn aut_order(&self) -> u64 {
        let m = self.num_vertices();
        let identity = self.encoding_under(&(0..m).collect::<Vec<_>>());
        let vertex_auts = permutations(m)
            .filter(|perm| self.encoding_under(perm) == identity)
            .count() as u64;
        let mut local = 1u64;
        for v in 0..m {
            local *= fact_u64(self.legs[v] as u64);
            let loops = self.edges[v][v] as u64;
            local *= fact_u64(loops) << loops;
        }
        for i in 0..m {
            for j in (i + 1)..m {
                local *= fact_u64(self.edges[i][j] as u64);
            }
        }
        vertex_auts * local
    }

    /// One catalog record: vertex genera, internal edges expanded by
    /// multiplicity, leg attachment points, and |Aut|.
    pub fn catalog_record(&self, aut: u64) -> CatalogRecord {
        let mut edge_list = Vec::new();
        for i in 0..self.num_vertices() {
            for j in i..self.num_vertices() {
                for _ in 0..self.edges[i][j] {
                    edge_list.push([i, j]);
                }
            }
        }
        let mut leg_list = Vec::new();
        for (v, &l) in self.legs.iter().enumerate() {
            for _ in 0..l {
                leg_list.push(v);
            }
        }
        CatalogRecord {
            vertices: self.genera.clone(),
            edges: edge_list,
            legs: leg_list,
            aut,
        }
    }

    /// Graphviz rendering; legs are drawn as edges to invisible stubs.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{name}\" {{\n"));
        for (v, &g) in self.genera.iter().enumerate() {
            out.push_str(&format!("  v{v} [label=\"{g}\", shape=circle];\n"));
        }
        let mut stub = 0;
        for (v, &l) in self.legs.iter().enumerate() {
            for _ in 0..l {
                out.push_str(&format!("  ext{stub} [shape=none, label=\"\"];\n"));
                out.push_str(&format!("  v{v} -- ext{stub};\n"));
                stub += 1;
            }
        }
        for i in 0..self.num_vertices() {
            for j in i..self.num_vertices() {
                for _ in 0..self.edges[i][j] {
                    out.push_str(&format!("  v{i} -- v{j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// JSON-serializable description of one isomorphism class.
#[derive(Serialize)]
pub struct CatalogRecord {
    pub vertices: Vec<u32>,
    pub edges: Vec<[usize; 2]>,
    pub legs: Vec<usize>,
    pub aut: u64,
}

/// An isomorphism class representative with its automorphism count.
#[derive(Clone, Debug)]
pub struct GraphClass {
    pub graph: StableGraph,
    pub aut: u64,
}

fn fact_u64(n: u64) -> u64 {
    (2..=n).product::<u64>().max(1)
}

fn permutations(m: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut all = Vec::new();
    let mut items: Vec<usize> = (0..m).collect();
    heap_recurse(m, &mut items, &mut all);
    all.into_iter()
}

fn heap_recurse(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_recurse(k - 1, items, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// The default enumeration budget: all types of dimension 3g - 3 + n <= 3.
pub const DEFAULT_MAX_DIM: u32 = 3;

/// Enumerate one representative per isomorphism class of connected stable
/// graphs of type (g, n), each with |Aut|, ordered by canonical key.
pub fn enumerate_stable_graphs(g: u32, n: u32, max_dim: u32) -> Result<Vec<GraphClass>, Error> {
    let branches = enumeration_branches(g, n, max_dim)?;
    #[cfg(feature = "parallel")]
    let maps: Vec<BTreeMap<Vec<u32>, GraphClass>> = branches
        .into_par_iter()
        .map(|b| enumerate_branch(g, n, &b))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let maps: Vec<BTreeMap<Vec<u32>, GraphClass>> =
        branches.into_iter().map(|b| enumerate_branch(g, n, &b)).collect();

    let mut classes = BTreeMap::new();
    for map in maps {
        classes.extend(map);
    }
    Ok(classes.into_values().collect())
}

/// Sequential twin of [`enumerate_stable_graphs`]; used by benchmarks to
/// compare against the data-parallel path.
pub fn enumerate_stable_graphs_sequential(g: u32, n: u32, max_dim: u32) -> Result<Vec<GraphClass>, Error> {
    let branches = enumeration_branches(g, n, max_dim)?;
    let mut classes = BTreeMap::new();
    for b in branches {
        classes.extend(enumerate_branch(g, n, &b));
    }
    Ok(classes.into_values().collect())
}

/// One unit of enumeration work: vertex count, genus assignment, and leg
/// distribution; the matching edge matrices are filled in by the branch run.
struct Branch {
    genera: Vec<u32>,
    legs: Vec<u32>,
    num_edges: u32,
}

fn enumeration_branches(g: u32, n: u32, max_dim: u32) -> Result<Vec<Branch>, Error> {
    if !is_stable(g, n) {
        return Err(Error::Unstable(g, n));
    }
    let dim = 3 * g + n - 3;
    if dim > max_dim {
        return Err(Error::BudgetExceeded { g, n, dim, limit: max_dim });
    }
    let mut branches = Vec::new();
    let max_vertices = (2 * g as i64 - 2 + n as i64) as u32;
    for m in 1..=max_vertices {
        for genera in nonincreasing_tuples(g, m) {
            let total_genus: u32 = genera.iter().sum();
            let num_edges = g - total_genus + m - 1;
            for legs in compositions(n, m) {
                branches.push(Branch {
                    genera: genera.clone(),
                    legs,
                    num_edges,
                });
            }
        }
    }
    Ok(branches)
}

/// All nonincreasing tuples of length m with entries summing to at most max.
fn nonincreasing_tuples(max: u32, m: u32) -> Vec<Vec<u32>> {
    fn recurse(max_entry: u32, budget: u32, slots: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            out.push(current.clone());
            return;
        }
        for v in (0..=max_entry.min(budget)).rev() {
            current.push(v);
            recurse(v, budget - v, slots - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    recurse(max, max, m, &mut Vec::with_capacity(m as usize), &mut out);
    out
}

/// All ordered tuples of length m of nonnegative integers summing to n.
fn compositions(n: u32, m: u32) -> Vec<Vec<u32>> {
    fn recurse(n: u32, slots: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            current.push(n);
            out.push(current.clone());
            current.pop();
            return;
        }
        for v in 0..=n {
            current.push(v);
            recurse(n - v, slots - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    recurse(n, m, &mut Vec::with_capacity(m as usize), &mut out);
    out
}

fn enumerate_branch(g: u32, n: u32, branch: &Branch) -> BTreeMap<Vec<u32>, GraphClass> {
    let m = branch.genera.len();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i..m {
            pairs.push((i, j));
        }
    }
    let mut classes = BTreeMap::new();
    let mut matrix = vec![vec![0u32; m]; m];
    fill_edges(g, n, branch, &pairs, 0, branch.num_edges, &mut matrix, &mut classes);
    classes
}

#[allow(clippy::too_many_arguments)]
fn fill_edges(
    g: u32,
    n: u32,
    branch: &Branch,
    pairs: &[(usize, usize)],
    index: usize,
    remaining: u32,
    matrix: &mut Vec<Vec<u32>>,
    classes: &mut BTreeMap<Vec<u32>, GraphClass>,
) {
    if index == pairs.len() {
        if remaining != 0 {
            return;
        }
        let graph = StableGraph::new(branch.genera.clone(), branch.legs.clone(), matrix.clone());
        if !graph.validate(g, n) {
            return;
        }
        let key = graph.canonical_key();
        classes.entry(key).or_insert_with(|| {
            let aut = graph.aut_order();
            GraphClass { graph, aut }
        });
        return;
    }
    let (i, j) = pairs[index];
    for mult in 0..=remaining {
        matrix[i][j] = mult;
        matrix[j][i] = mult;
        fill_edges(g, n, branch, pairs, index + 1, remaining - mult, matrix, classes);
    }
    matrix[i][j] = 0;
    matrix[j][i] = 0;
}

/// Direct evaluation of the graph sum: sum over classes of
/// kappa^{#edges}/|Aut| times the product of vertex weights, with the common
/// t-exponent 2 - 2g - n factored out.
pub fn feynman_sum(g: u32, n: u32, max_dim: u32) -> Result<(KPoly, i64), Error> {
    let classes = enumerate_stable_graphs(g, n, max_dim)?;
    let mut total = KPoly::zero();
    for class in &classes {
        let mut weight = Rat::one();
        for v in 0..class.graph.num_vertices() {
            weight *= &chi_open(class.graph.genus_of(v), class.graph.valence(v))
                .expect("enumerated vertices are stable");
        }
        weight = weight / Rat::from_int(class.aut as i64);
        total = &total + &KPoly::monomial(weight, class.graph.num_edges());
    }
    Ok((total, 2 - 2 * g as i64 - n as i64))
}

/// Number of isomorphism classes per internal-edge count.
pub fn stratum_census(g: u32, n: u32, max_dim: u32) -> Result<BTreeMap<usize, usize>, Error> {
    let classes = enumerate_stable_graphs(g, n, max_dim)?;
    let mut census = BTreeMap::new();
    for class in &classes {
        *census.entry(class.graph.num_edges()).or_insert(0) += 1;
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chi::chi_tilde_quadratic;

    fn aut_multiset(g: u32, n: u32) -> Vec<u64> {
        let mut auts: Vec<u64> = enumerate_stable_graphs(g, n, 3)
            .unwrap()
            .iter()
            .map(|c| c.aut)
            .collect();
        auts.sort_unstable();
        auts
    }

    #[test]
    fn classes_at_2_0() {
        // Seven classes with symmetry factors 1, 1/2, 1/2, 1/8, 1/2, 1/8, 1/12.
        assert_eq!(aut_multiset(2, 0), vec![1, 2, 2, 2, 8, 8, 12]);
    }

    #[test]
    fn classes_at_1_1_and_0_4() {
        assert_eq!(aut_multiset(1, 1), vec![1, 2]);
        assert_eq!(aut_multiset(0, 4), vec![8, 24]);
        // Five classes at (1,2) with factors 1/2, 1/4, 1/2, 1/4, 1/4.
        assert_eq!(aut_multiset(1, 2), vec![2, 2, 4, 4, 4]);
    }

    #[test]
    fn census_values() {
        let c = stratum_census(0, 4, 3).unwrap();
        assert_eq!(c, BTreeMap::from([(0, 1), (1, 1)]));
        let c = stratum_census(1, 1, 3).unwrap();
        assert_eq!(c, BTreeMap::from([(0, 1), (1, 1)]));
        let c = stratum_census(2, 0, 3).unwrap();
        assert_eq!(c, BTreeMap::from([(0, 1), (1, 2), (2, 2), (3, 2)]));
    }

    #[test]
    fn smooth_stratum_is_unique() {
        for (g, n) in [(0u32, 4u32), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (2, 0)] {
            let classes = enumerate_stable_graphs(g, n, 3).unwrap();
            let smooth: Vec<_> = classes.iter().filter(|c| c.graph.num_edges() == 0).collect();
            assert_eq!(smooth.len(), 1);
            let v = &smooth[0].graph;
            assert_eq!(v.num_vertices(), 1);
            assert_eq!(v.genus_of(0), g);
        }
    }

    #[test]
    fn graph_sum_matches_quadratic_recursion() {
        for (g, n) in [(0u32, 4u32), (0, 5), (1, 1), (1, 2), (2, 0)] {
            let (sum, t_exp) = feynman_sum(g, n, 3).unwrap();
            assert_eq!(sum, chi_tilde_quadratic(g, n).unwrap(), "mismatch at ({g},{n})");
            assert_eq!(t_exp, 2 - 2 * g as i64 - n as i64);
        }
    }

    #[test]
    fn budget_is_enforced() {
        match enumerate_stable_graphs(2, 1, 3) {
            Err(Error::BudgetExceeded { g: 2, n: 1, dim: 4, limit: 3 }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
        // Raising the budget lets the same type through.
        assert!(enumerate_stable_graphs(2, 1, 4).is_ok());
    }

    #[test]
    fn enumerated_graphs_revalidate() {
        for (g, n) in [(0u32, 6u32), (1, 3), (2, 0)] {
            for class in enumerate_stable_graphs(g, n, 3).unwrap() {
                assert!(class.graph.validate(g, n));
                // |Aut| divides the order of the full symmetry group used in
                // the search.
                let mut bound = fact_u64(class.graph.num_vertices() as u64);
                for v in 0..class.graph.num_vertices() {
                    bound *= fact_u64(class.graph.legs_at(v) as u64);
                    let loops = class.graph.edge_multiplicity(v, v) as u64;
                    bound *= fact_u64(loops) << loops;
                }
                for i in 0..class.graph.num_vertices() {
                    for j in (i + 1)..class.graph.num_vertices() {
                        bound *= fact_u64(class.graph.edge_multiplicity(i, j) as u64);
                    }
                }
                assert_eq!(bound % class.aut, 0);
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = enumerate_stable_graphs(1, 3, 3).unwrap();
        let b = enumerate_stable_graphs_sequential(1, 3, 3).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.graph, y.graph);
            assert_eq!(x.aut, y.aut);
        }
    }

    #[test]
    fn theta_graph_symmetry() {
        // Two genus-0 vertices joined by three parallel edges.
        let theta = StableGraph::new(vec![0, 0], vec![0, 0], vec![vec![0, 3], vec![3, 0]]);
        assert!(theta.validate(2, 0));
        assert_eq!(theta.aut_order(), 12);
        // One genus-0 vertex with two loops.
        let two_loops = StableGraph::new(vec![0], vec![0], vec![vec![2]]);
        assert!(two_loops.validate(2, 0));
        assert_eq!(two_loops.aut_order(), 8);
    }

    #[test]
    fn dot_and_catalog_outputs() {
        let classes = enumerate_stable_graphs(1, 1, 3).unwrap();
        let rec = classes[1].graph.catalog_record(classes[1].aut);
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"vertices\""));
        let dot = classes[0].graph.to_dot("g1n1");
        assert!(dot.starts_with("graph"));
        assert!(dot.contains("--"));
    }
}
