//! Finite simple undirected graphs with bitset adjacency, plus local graphs
//! and p-plex search.

use crate::error::{input_err, resource_err, Result};
use num_rational::Ratio;

const WORD: usize = 64;

/// A sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Sorts and deduplicates the input.
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn intersection_size(&self, other: &VertexSet) -> usize {
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>, // n rows of `words` u64 each
    degrees: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = (n + WORD - 1) / WORD;
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            degrees: vec![0; n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u,v}`; rejects loops, duplicates and out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return input_err(format!("edge ({u},{v}) out of range for n={}", self.n));
        }
        if u == v {
            return input_err(format!("loop at vertex {u}"));
        }
        if self.has_edge(u, v) {
            return input_err(format!("duplicate edge ({u},{v})"));
        }
        self.adj[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.adj[v * self.words + u / WORD] |= 1 << (u % WORD);
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.edge_count += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Bitset row of neighbors of `v`.
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degrees[v]);
        for (w, &bits) in self.row(v).iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                let k = b.trailing_zeros() as usize;
                out.push(w * WORD + k);
                b &= b - 1;
            }
        }
        out
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_regular(&self) -> Option<usize> {
        let k = *self.degrees.first()?;
        self.degrees.iter().all(|&d| d == k).then_some(k)
    }

    /// Induced subgraph on `w`, reindexed by the sorted order of `w`.
    pub fn induced_subgraph(&self, w: &VertexSet) -> Result<Graph> {
        if let Some(v) = w.iter().find(|&v| v >= self.n) {
            return input_err(format!("vertex {v} out of range for n={}", self.n));
        }
        let verts = w.members();
        let mut g = Graph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// The local graph `G_x`: induced subgraph on the neighbors of `x`,
    /// in sorted neighbor order.
    pub fn local_graph(&self, x: usize) -> Result<Graph> {
        if x >= self.n {
            return input_err(format!("vertex {x} out of range for n={}", self.n));
        }
        self.induced_subgraph(&VertexSet::new(self.neighbors(x)))
    }

    /// Average degree of the local graph at `x`, as an exact rational.
    /// Defined as 0 for an isolated vertex.
    pub fn average_local_degree(&self, x: usize) -> Result<Ratio<i64>> {
        if x >= self.n {
            return input_err(format!("vertex {x} out of range for n={}", self.n));
        }
        if self.degrees[x] == 0 {
            return Ok(Ratio::new(0, 1));
        }
        let local = self.local_graph(x)?;
        Ok(Ratio::new(
            2 * local.edge_count() as i64,
            self.degrees[x] as i64,
        ))
    }

    /// True iff every `w` in `w_set` has at least `|W| - p` neighbors inside `w_set`.
    pub fn is_p_plex(&self, w_set: &VertexSet, p: usize) -> Result<bool> {
        if p == 0 {
            return input_err("p must be positive");
        }
        if w_set.is_empty() {
            return input_err("plex vertex set must be nonempty");
        }
        if let Some(v) = w_set.iter().find(|&v| v >= self.n) {
            return input_err(format!("vertex {v} out of range for n={}", self.n));
        }
        let size = w_set.len();
        for w in w_set.iter() {
            let inside = w_set.iter().filter(|&v| self.has_edge(w, v)).count();
            if inside + p < size {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Maximum order of a p-plex, by exact branch-and-bound.
    /// p-plexes are closed under taking subsets (dropping vertices cannot
    /// increase a deficiency), so include/exclude search with the size bound
    /// is exact.
    pub fn max_plex_order(&self, p: usize) -> Result<usize> {
        if p == 0 {
            return input_err("p must be positive");
        }
        if self.n > 30 {
            return resource_err(format!(
                "exhaustive plex search limited to 30 vertices, got {}",
                self.n
            ));
        }
        if self.n == 0 {
            return Ok(0);
        }
        let mut best = 1usize;
        let mut chosen: Vec<usize> = Vec::new();
        // deficiency of each chosen vertex = non-neighbors among chosen (excl. self)
        let mut defic: Vec<usize> = Vec::new();
        self.plex_search(p, 0, &mut chosen, &mut defic, &mut best);
        Ok(best)
    }

    fn plex_search(
        &self,
        p: usize,
        next: usize,
        chosen: &mut Vec<usize>,
        defic: &mut Vec<usize>,
        best: &mut usize,
    ) {
        if chosen.len() > *best {
            *best = chosen.len();
        }
        if next >= self.n || chosen.len() + (self.n - next) <= *best {
            return;
        }
        // include `next` if it keeps every deficiency within p-1
        let mut ok = true;
        let mut v_def = 0usize;
        for (i, &u) in chosen.iter().enumerate() {
            if !self.has_edge(u, next) {
                v_def += 1;
                if defic[i] + 1 > p - 1 {
                    ok = false;
                    break;
                }
            }
        }
        if ok && v_def <= p - 1 {
            for (i, &u) in chosen.iter().enumerate() {
                if !self.has_edge(u, next) {
                    defic[i] += 1;
                }
            }
            chosen.push(next);
            defic.push(v_def);
            self.plex_search(p, next + 1, chosen, defic, best);
            chosen.pop();
            defic.pop();
            for (i, &u) in chosen.iter().enumerate() {
                if !self.has_edge(u, next) {
                    defic[i] -= 1;
                }
            }
        }
        self.plex_search(p, next + 1, chosen, defic, best);
    }

    /// Complement graph.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("complement edge");
                }
            }
        }
        g
    }
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("complete edge");
        }
    }
    g
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return input_err("cycle needs at least 3 vertices");
    }
    let mut g = Graph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n)?;
    }
    Ok(g)
}

/// Path on `n >= 1` vertices.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v).expect("path edge");
    }
    g
}

/// Graph isomorphism by backtracking, for small graphs.
pub fn graphs_isomorphic(g1: &Graph, g2: &Graph, budget: usize) -> Result<bool> {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    if g1.n() > budget {
        return resource_err(format!("isomorphism search limited to {budget} vertices"));
    }
    let mut d1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; g1.n()];
    let mut used = vec![false; g1.n()];
    Ok(iso_backtrack(g1, g2, 0, &mut map, &mut used))
}

fn iso_backtrack(g1: &Graph, g2: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == g1.n() {
        return true;
    }
    for w in 0..g2.n() {
        if used[w] || g1.degree(v) != g2.degree(w) {
            continue;
        }
        let consistent = (0..v).all(|u| g1.has_edge(u, v) == g2.has_edge(map[u], w));
        if consistent {
            map[v] = w;
            used[w] = true;
            if iso_backtrack(g1, g2, v + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
pub(crate) fn petersen() -> Graph {
    // Kneser graph K(5,2): vertices are 2-subsets of {0..4}, adjacent iff disjoint.
    let mut pairs = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            pairs.push((a, b));
        }
    }
    let mut g = Graph::new(10);
    for i in 0..10 {
        for j in i + 1..10 {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a != c && a != d && b != c && b != d {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}
