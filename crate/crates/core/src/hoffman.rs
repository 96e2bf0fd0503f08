//! Hoffman graphs: slim/fat labeled graphs, special matrices, generated
//! subgraphs, clique expansion and label-preserving isomorphism.

use crate::error::{input_err, resource_err, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectral::SymMatrix;
use std::collections::BTreeMap;

/// A Hoffman graph: a slim graph plus fat vertices, each fat vertex given by
/// its (nonempty) set of slim neighbors. Fat-fat edges cannot be represented,
/// matching the definition. Two distinct fat vertices may carry identical
/// neighborhoods; the fat list has multiset semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoffmanGraph {
    slim: Graph,
    fats: Vec<VertexSet>,
}

impl HoffmanGraph {
    pub fn new(slim: Graph, fats: Vec<VertexSet>) -> Result<Self> {
        for (i, f) in fats.iter().enumerate() {
            if f.is_empty() {
                return input_err(format!("fat vertex {i} has no slim neighbor"));
            }
            if let Some(v) = f.iter().find(|&v| v >= slim.n()) {
                return input_err(format!("fat vertex {i} adjacent to unknown slim vertex {v}"));
            }
        }
        Ok(HoffmanGraph { slim, fats })
    }

    pub fn slim_count(&self) -> usize {
        self.slim.n()
    }

    pub fn fat_count(&self) -> usize {
        self.fats.len()
    }

    /// The slim graph, as an ordinary graph.
    pub fn slim_graph(&self) -> &Graph {
        &self.slim
    }

    pub fn fats(&self) -> &[VertexSet] {
        &self.fats
    }

    /// Fat neighbors of slim vertex `x` (fat indices).
    pub fn fat_neighbors(&self, x: usize) -> Vec<usize> {
        (0..self.fats.len())
            .filter(|&i| self.fats[i].contains(x))
            .collect()
    }

    pub fn fat_degree(&self, x: usize) -> usize {
        self.fats.iter().filter(|f| f.contains(x)).count()
    }

    /// Number of common fat neighbors of slim vertices `x` and `y`.
    pub fn common_fat_count(&self, x: usize, y: usize) -> usize {
        self.fats
            .iter()
            .filter(|f| f.contains(x) && f.contains(y))
            .count()
    }

    /// True iff every slim vertex has at least `t` fat neighbors.
    pub fn is_t_fat(&self, t: usize) -> bool {
        let mut degs = vec![0usize; self.slim.n()];
        for f in &self.fats {
            for v in f.iter() {
                degs[v] += 1;
            }
        }
        degs.iter().all(|&d| d >= t)
    }

    /// Common-fat-neighbor counts for all slim pairs sharing at least one
    /// fat vertex, keyed (x, y) with x < y. Built by inverting the fat
    /// lists, so the cost scales with the incidence size, not with n^2.
    pub fn shared_fat_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for f in &self.fats {
            let members = f.members();
            for (a, &x) in members.iter().enumerate() {
                for &y in &members[a + 1..] {
                    *counts.entry((x, y)).or_insert(0) += 1;
                }
            }
        }
        counts
    }

    /// All nonzero off-diagonal special matrix entries, keyed (x, y) with
    /// x < y, without forming the dense matrix.
    pub fn sparse_special_entries(&self) -> BTreeMap<(usize, usize), i64> {
        let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (u, v) in self.slim.edges() {
            entries.insert((u, v), 1);
        }
        for (pair, c) in self.shared_fat_counts() {
            let e = entries.entry(pair).or_insert(0);
            *e -= c as i64;
        }
        entries.retain(|_, &mut v| v != 0);
        entries
    }

    /// The special matrix `S = A_slim - C C^T` with integer entries.
    pub fn special_matrix(&self) -> SpecialMatrix {
        let n = self.slim.n();
        let mut entries = vec![0i64; n * n];
        for x in 0..n {
            entries[x * n + x] = -(self.fat_degree(x) as i64);
            for y in x + 1..n {
                let a = if self.slim.has_edge(x, y) { 1 } else { 0 };
                let s = a - self.common_fat_count(x, y) as i64;
                entries[x * n + y] = s;
                entries[y * n + x] = s;
            }
        }
        SpecialMatrix { dim: n, entries }
    }

    /// Smallest eigenvalue of the special matrix.
    pub fn lambda_min(&self) -> Result<f64> {
        self.special_matrix().to_sym().lambda_min()
    }

    /// The induced Hoffman subgraph generated by the slim set `w`: slim
    /// vertices `w` (reindexed in sorted order) together with every fat
    /// vertex meeting `w`, neighborhoods restricted to `w`.
    pub fn generated_subgraph(&self, w: &VertexSet) -> Result<HoffmanGraph> {
        if w.is_empty() {
            return input_err("generated subgraph needs a nonempty slim set");
        }
        if let Some(v) = w.iter().find(|&v| v >= self.slim.n()) {
            return input_err(format!("slim vertex {v} out of range"));
        }
        let slim = self.slim.induced_subgraph(w)?;
        let verts = w.members();
        let mut fats = Vec::new();
        for f in &self.fats {
            let restricted: Vec<usize> = verts
                .iter()
                .enumerate()
                .filter(|&(_, &v)| f.contains(v))
                .map(|(i, _)| i)
                .collect();
            if !restricted.is_empty() {
                fats.push(VertexSet::new(restricted));
            }
        }
        HoffmanGraph::new(slim, fats)
    }

    /// Replaces each fat vertex in `sizes` by a slim clique of the given
    /// size, joining all former neighbors of the fat vertex to the clique.
    /// Slim vertices keep their indices; clique vertices are appended in
    /// fat-index order. Unselected fat vertices are kept.
    pub fn clique_expand(&self, sizes: &BTreeMap<usize, usize>) -> Result<HoffmanGraph> {
        for (&f, &sz) in sizes {
            if f >= self.fats.len() {
                return input_err(format!("fat vertex {f} out of range"));
            }
            if sz == 0 {
                return input_err("clique size must be positive");
            }
        }
        let n0 = self.slim.n();
        let total: usize = sizes.values().sum();
        let mut slim = Graph::new(n0 + total);
        for (u, v) in self.slim.edges() {
            slim.add_edge(u, v)?;
        }
        let mut next = n0;
        for (&f, &sz) in sizes {
            let clique: Vec<usize> = (next..next + sz).collect();
            next += sz;
            for (i, &u) in clique.iter().enumerate() {
                for &v in &clique[i + 1..] {
                    slim.add_edge(u, v)?;
                }
            }
            for x in self.fats[f].iter() {
                for &u in &clique {
                    slim.add_edge(x, u)?;
                }
            }
        }
        let fats: Vec<VertexSet> = self
            .fats
            .iter()
            .enumerate()
            .filter(|(i, _)| !sizes.contains_key(i))
            .map(|(_, f)| f.clone())
            .collect();
        HoffmanGraph::new(slim, fats)
    }

    /// Expands every fat vertex with the same clique size.
    pub fn clique_expand_all(&self, size: usize) -> Result<HoffmanGraph> {
        let sizes: BTreeMap<usize, usize> = (0..self.fats.len()).map(|f| (f, size)).collect();
        self.clique_expand(&sizes)
    }

    /// Canonical multiset of fat neighborhoods, for comparisons.
    fn sorted_fats(&self) -> Vec<VertexSet> {
        let mut fs = self.fats.clone();
        fs.sort();
        fs
    }
}

/// `h^(t)`: one slim vertex adjacent to `t` fat vertices; special matrix `(-t)`.
pub fn cherry(t: usize) -> Result<HoffmanGraph> {
    if t == 0 {
        return input_err("cherry needs t >= 1");
    }
    HoffmanGraph::new(Graph::new(1), vec![VertexSet::new(vec![0]); t])
}

/// Integer special matrix of a Hoffman graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl SpecialMatrix {
    pub fn from_entries(dim: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return input_err("entry count does not match dimension");
        }
        for i in 0..dim {
            for j in 0..i {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return input_err("special matrix must be symmetric");
                }
            }
        }
        Ok(SpecialMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn to_sym(&self) -> SymMatrix {
        SymMatrix::from_fn(self.dim, |i, j| self.get(i, j) as f64)
    }

    /// Principal submatrix on the given (sorted) indices.
    pub fn principal_submatrix(&self, indices: &VertexSet) -> SpecialMatrix {
        let idx = indices.members();
        let d = idx.len();
        let mut entries = vec![0i64; d * d];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                entries[a * d + b] = self.get(i, j);
            }
        }
        SpecialMatrix { dim: d, entries }
    }

    /// The four structural properties every special matrix satisfies:
    /// integral (by representation), `S_xx <= 0`, `S_xy <= 1`, `S_xx <= S_xy`.
    pub fn satisfies_special_properties(&self) -> bool {
        for x in 0..self.dim {
            if self.get(x, x) > 0 {
                return false;
            }
            for y in 0..self.dim {
                if x != y && self.get(x, y) > 1 {
                    return false;
                }
                if self.get(x, x) > self.get(x, y) {
                    return false;
                }
            }
        }
        true
    }
}

/// Label-preserving isomorphism test by backtracking over slim bijections;
/// fat vertices are compared as multisets of slim neighborhoods.
pub fn hoffman_isomorphic(h1: &HoffmanGraph, h2: &HoffmanGraph) -> Result<bool> {
    if h1.slim_count() != h2.slim_count() || h1.fat_count() != h2.fat_count() {
        return Ok(false);
    }
    if h1.slim_count() + h1.fat_count() > 32 {
        return resource_err("isomorphism search limited to 32 combined vertices");
    }
    let n = h1.slim_count();
    // invariant per slim vertex: (slim degree, fat degree)
    let inv1: Vec<(usize, usize)> = (0..n).map(|v| (h1.slim.degree(v), h1.fat_degree(v))).collect();
    let inv2: Vec<(usize, usize)> = (0..n).map(|v| (h2.slim.degree(v), h2.fat_degree(v))).collect();
    {
        let mut s1 = inv1.clone();
        let mut s2 = inv2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return Ok(false);
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(hoffman_iso_backtrack(
        h1, h2, &inv1, &inv2, 0, &mut map, &mut used,
    ))
}

fn hoffman_iso_backtrack(
    h1: &HoffmanGraph,
    h2: &HoffmanGraph,
    inv1: &[(usize, usize)],
    inv2: &[(usize, usize)],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = h1.slim_count();
    if v == n {
        // all slim vertices mapped: compare fat multisets under the map
        let mapped: Vec<VertexSet> = h1
            .fats
            .iter()
            .map(|f| f.iter().map(|x| map[x]).collect())
            .collect();
        let mut mapped = mapped;
        mapped.sort();
        return mapped == h2.sorted_fats();
    }
    for w in 0..n {
        if used[w] || inv1[v] != inv2[w] {
            continue;
        }
        let slim_ok = (0..v).all(|u| h1.slim.has_edge(u, v) == h2.slim.has_edge(map[u], w));
        let fat_ok =
            (0..v).all(|u| h1.common_fat_count(u, v) == h2.common_fat_count(map[u], w));
        if slim_ok && fat_ok {
            map[v] = w;
            used[w] = true;
            if hoffman_iso_backtrack(h1, h2, inv1, inv2, v + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
    }
    false
}
