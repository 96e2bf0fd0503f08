//! Generators for the classical graph families with closed-form spectra,
//! hypergraphs, intersection graphs, and hypergraph extraction from a
//! Hoffman graph covered by cherries.

use crate::error::{input_err, resource_err, Result};
use crate::graph::{Graph, VertexSet};
use crate::hoffman::HoffmanGraph;
use crate::spectral::Spectrum;
use std::collections::HashMap;

const VERTEX_BUDGET: usize = 1 << 20;

/// A hypergraph: a vertex count and a list of nonempty edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<VertexSet>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return input_err(format!("hyperedge {i} is empty"));
            }
            if let Some(v) = e.iter().find(|&v| v >= vertex_count) {
                return input_err(format!("hyperedge {i} contains unknown vertex {v}"));
            }
        }
        Ok(Hypergraph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }
}

/// A supported graph family with parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    /// Hamming graph H(D, q).
    Hamming { d: usize, q: usize },
    /// Johnson graph J(v, p).
    Johnson { v: usize, p: usize },
    /// The (t1 x t2)-grid, K_t1 x K_t2.
    Grid { t1: usize, t2: usize },
    /// 2-clique extension of the (t1 x t2)-grid.
    Grid2Clique { t1: usize, t2: usize },
}

/// Hamming graph H(D,q) on q^D tuples in lexicographic order; adjacency is
/// Hamming distance one.
pub fn hamming(d: usize, q: usize) -> Result<Graph> {
    if d < 1 || q < 2 {
        return input_err("hamming needs D >= 1, q >= 2");
    }
    let n = q.checked_pow(d as u32).filter(|&n| n <= VERTEX_BUDGET);
    let Some(n) = n else {
        return resource_err(format!("q^D exceeds the vertex budget {VERTEX_BUDGET}"));
    };
    let mut g = Graph::new(n);
    // tuple index is the base-q number with the first coordinate most
    // significant; changing one coordinate moves along one "axis line"
    let mut stride = 1;
    let mut strides = vec![0; d];
    for i in (0..d).rev() {
        strides[i] = stride;
        stride *= q;
    }
    for v in 0..n {
        for &s in &strides {
            let digit = v / s % q;
            for other in digit + 1..q {
                g.add_edge(v, v + (other - digit) * s)?;
            }
        }
    }
    Ok(g)
}

/// Johnson graph J(v,p) on all p-subsets in colexicographic order;
/// adjacency is intersection of size p-1.
pub fn johnson(v: usize, p: usize) -> Result<Graph> {
    if p < 1 || v < 2 * p {
        return input_err("johnson needs 1 <= p and v >= 2p");
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        subsets.push(cur.clone());
        if subsets.len() > VERTEX_BUDGET {
            return resource_err(format!("C(v,p) exceeds the vertex budget {VERTEX_BUDGET}"));
        }
        // next p-subset in colex order
        let mut i = 0;
        while i < p {
            let cap = if i + 1 < p { cur[i + 1] } else { v };
            if cur[i] + 1 < cap {
                cur[i] += 1;
                for j in 0..i {
                    cur[j] = j;
                }
                break;
            }
            i += 1;
        }
        if i == p {
            break;
        }
    }
    let n = subsets.len();
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            let inter = subsets[a]
                .iter()
                .filter(|x| subsets[b].contains(x))
                .count();
            if inter == p - 1 {
                g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

/// The (t1 x t2)-grid K_t1 x K_t2, pairs in row-major order.
pub fn grid(t1: usize, t2: usize) -> Result<Graph> {
    if t1 < 2 || t2 < 2 {
        return input_err("grid needs t1, t2 >= 2");
    }
    let mut g = Graph::new(t1 * t2);
    for r in 0..t1 {
        for c in 0..t2 {
            let v = r * t2 + c;
            for c2 in c + 1..t2 {
                g.add_edge(v, r * t2 + c2)?;
            }
            for r2 in r + 1..t1 {
                g.add_edge(v, r2 * t2 + c)?;
            }
        }
    }
    Ok(g)
}

/// The 2-clique extension: each vertex v becomes the pair (v, v+n) of
/// adjacent vertices; copies of adjacent originals are joined completely.
pub fn clique_extension_2(g: &Graph) -> Result<Graph> {
    let n = g.n();
    let mut h = Graph::new(2 * n);
    for v in 0..n {
        h.add_edge(v, v + n)?;
    }
    for (u, v) in g.edges() {
        h.add_edge(u, v)?;
        h.add_edge(u, v + n)?;
        h.add_edge(u + n, v)?;
        h.add_edge(u + n, v + n)?;
    }
    Ok(h)
}

/// Line graph: vertices are the edges of `g` in lexicographic order,
/// adjacent when they share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let edges = g.edges();
    let m = edges.len();
    let mut lg = Graph::new(m);
    for i in 0..m {
        let (a, b) = edges[i];
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                lg.add_edge(i, j)?;
            }
        }
    }
    Ok(lg)
}

/// Intersection graph of a hypergraph: vertices are the edges in list
/// order, adjacent when they intersect.
pub fn intersection_graph(h: &Hypergraph) -> Result<Graph> {
    let m = h.edges.len();
    let mut g = Graph::new(m);
    for i in 0..m {
        for j in i + 1..m {
            if h.edges[i].intersection_size(&h.edges[j]) > 0 {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// True iff every edge has size `h` and every vertex pair lies in at most
/// one edge.
pub fn is_linear_uniform(hg: &Hypergraph, h: usize) -> Result<bool> {
    if h < 2 {
        return input_err("uniformity needs h >= 2");
    }
    if hg.edges.iter().any(|e| e.len() != h) {
        return Ok(false);
    }
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for e in &hg.edges {
        let verts = e.members();
        for (a, &x) in verts.iter().enumerate() {
            for &y in &verts[a + 1..] {
                let c = seen.entry((x, y)).or_insert(0);
                *c += 1;
                if *c > 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Extracts the hypergraph of fat covers: vertex set = fat vertices, one
/// edge per slim vertex, its set of fat neighbors. Requires every slim
/// vertex to have exactly t+1 fat neighbors and every slim pair to share
/// at most one; the result is then a linear (t+1)-uniform hypergraph whose
/// intersection graph is the slim graph (both rechecked).
pub fn hypergraph_from_cover(h: &HoffmanGraph, t: usize) -> Result<Hypergraph> {
    if t == 0 {
        return input_err("t must be positive");
    }
    let n = h.slim_count();
    for x in 0..n {
        let deg = h.fat_degree(x);
        if deg != t + 1 {
            return input_err(format!(
                "slim vertex {x} has {deg} fat neighbors, expected {}",
                t + 1
            ));
        }
    }
    for (&(x, y), &c) in h.shared_fat_counts().iter() {
        if c >= 2 {
            return input_err(format!(
                "slim vertices {x} and {y} share {c} fat neighbors"
            ));
        }
    }
    let edges: Vec<VertexSet> = (0..n).map(|x| VertexSet::new(h.fat_neighbors(x))).collect();
    let hg = Hypergraph::new(h.fat_count(), edges)?;
    if !is_linear_uniform(&hg, t + 1)? {
        return input_err("extracted hypergraph is not linear uniform");
    }
    if &intersection_graph(&hg)? != h.slim_graph() {
        return input_err("intersection graph of the extraction differs from the slim graph");
    }
    Ok(hg)
}

/// Generates the graph of a family spec.
pub fn generate(spec: FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Hamming { d, q } => hamming(d, q),
        FamilySpec::Johnson { v, p } => johnson(v, p),
        FamilySpec::Grid { t1, t2 } => grid(t1, t2),
        FamilySpec::Grid2Clique { t1, t2 } => clique_extension_2(&grid(t1, t2)?),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: usize = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Closed-form spectrum of a family, as exact integers with multiplicities.
pub fn family_spectrum(spec: FamilySpec) -> Result<Spectrum> {
    let pairs: Vec<(i64, usize)> = match spec {
        FamilySpec::Hamming { d, q } => {
            if d < 1 || q < 2 {
                return input_err("hamming needs D >= 1, q >= 2");
            }
            (0..=d)
                .map(|i| {
                    (
                        (q * (d - i)) as i64 - d as i64,
                        binomial(d, i) * (q - 1).pow(i as u32),
                    )
                })
                .collect()
        }
        FamilySpec::Johnson { v, p } => {
            if p < 1 || v < 2 * p {
                return input_err("johnson needs 1 <= p and v >= 2p");
            }
            (0..=p.min(v - p))
                .map(|i| {
                    let lam = (p - i) as i64 * (v - p - i) as i64 - i as i64;
                    let mult = binomial(v, i) - if i == 0 { 0 } else { binomial(v, i - 1) };
                    (lam, mult)
                })
                .collect()
        }
        FamilySpec::Grid { t1, t2 } => {
            if t1 < 2 || t2 < 2 {
                return input_err("grid needs t1, t2 >= 2");
            }
            vec![
                ((t1 + t2) as i64 - 2, 1),
                (t1 as i64 - 2, t2 - 1),
                (t2 as i64 - 2, t1 - 1),
                (-2, (t1 - 1) * (t2 - 1)),
            ]
        }
        FamilySpec::Grid2Clique { t1, t2 } => {
            // lambda -> 2 lambda + 1 plus (-1) with multiplicity n
            let base = family_spectrum(FamilySpec::Grid { t1, t2 })?;
            let mut pairs: Vec<(i64, usize)> = base
                .pairs
                .iter()
                .map(|&(lam, m)| (2 * lam.round() as i64 + 1, m))
                .collect();
            pairs.push((-1, t1 * t2));
            pairs
        }
    };
    let mut merged: HashMap<i64, usize> = HashMap::new();
    for (lam, m) in pairs {
        if m > 0 {
            *merged.entry(lam).or_insert(0) += m;
        }
    }
    let mut pairs: Vec<(f64, usize)> = merged
        .into_iter()
        .map(|(lam, m)| (lam as f64, m))
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    Ok(Spectrum { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, graphs_isomorphic};
    use crate::spectral::{is_cospectral, spectrum, DEFAULT_GROUP_TOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spectra_match(g: &Graph, spec: FamilySpec) {
        let s = spectrum(g, DEFAULT_GROUP_TOL).unwrap();
        let f = family_spectrum(spec).unwrap();
        assert_eq!(s.pairs.len(), f.pairs.len(), "{spec:?}");
        for (a, b) in s.pairs.iter().zip(&f.pairs) {
            assert!((a.0 - b.0).abs() < 1e-6, "{spec:?}: {a:?} vs {b:?}");
            assert_eq!(a.1, b.1, "{spec:?}");
        }
    }

    #[test]
    fn hamming_basics() {
        let g = hamming(1, 5).unwrap();
        assert!(graphs_isomorphic(&g, &complete(5), 1_000_000).unwrap());
        let cube = hamming(3, 2).unwrap();
        assert_eq!((cube.n(), cube.edge_count()), (8, 12));
    }

    #[test]
    fn hamming_spectra() {
        for q in 2..=5 {
            spectra_match(&hamming(3, q).unwrap(), FamilySpec::Hamming { d: 3, q });
        }
        spectra_match(&hamming(2, 4).unwrap(), FamilySpec::Hamming { d: 2, q: 4 });
    }

    #[test]
    fn johnson_basics() {
        let g = johnson(4, 2).unwrap();
        // octahedron: 6 vertices, 12 edges, spectrum {4, 0^3, -2^2}
        assert_eq!((g.n(), g.edge_count()), (6, 12));
        let s = spectrum(&g, DEFAULT_GROUP_TOL).unwrap();
        let expect = [(4.0, 1), (0.0, 3), (-2.0, 2)];
        for (a, b) in s.pairs.iter().zip(expect) {
            assert!((a.0 - b.0).abs() < 1e-9);
            assert_eq!(a.1, b.1);
        }
    }

    #[test]
    fn johnson_spectra() {
        for v in 6..=9 {
            spectra_match(&johnson(v, 3).unwrap(), FamilySpec::Johnson { v, p: 3 });
        }
        spectra_match(&johnson(6, 2).unwrap(), FamilySpec::Johnson { v: 6, p: 2 });
    }

    #[test]
    fn grid_basics_and_spectra() {
        let g = grid(2, 2).unwrap();
        assert!(graphs_isomorphic(&g, &cycle(4).unwrap(), 1_000_000).unwrap());
        for (t1, t2) in [(3, 3), (4, 3), (5, 5)] {
            spectra_match(&grid(t1, t2).unwrap(), FamilySpec::Grid { t1, t2 });
        }
    }

    #[test]
    fn grid_is_line_graph_of_complete_bipartite() {
        let mut kb = Graph::new(7);
        for u in 0..3 {
            for v in 3..7 {
                kb.add_edge(u, v).unwrap();
            }
        }
        let lg = line_graph(&kb).unwrap();
        let g = grid(3, 4).unwrap();
        assert!(is_cospectral(&lg, &g, 1e-8).unwrap());
        assert!(graphs_isomorphic(&lg, &g, 1_000_000).unwrap());
    }

    #[test]
    fn clique_extension_small() {
        let e = clique_extension_2(&complete(1)).unwrap();
        assert!(graphs_isomorphic(&e, &complete(2), 1_000_000).unwrap());
        // C4 -> {5, 1^2, -1^4, -3}
        let e = clique_extension_2(&cycle(4).unwrap()).unwrap();
        let s = spectrum(&e, DEFAULT_GROUP_TOL).unwrap();
        let expect = [(5.0, 1), (1.0, 2), (-1.0, 4), (-3.0, 1)];
        for (a, b) in s.pairs.iter().zip(expect) {
            assert!((a.0 - b.0).abs() < 1e-9, "{:?}", s.pairs);
            assert_eq!(a.1, b.1);
        }
    }

    #[test]
    fn clique_extension_grid_spectrum() {
        spectra_match(
            &clique_extension_2(&grid(5, 5).unwrap()).unwrap(),
            FamilySpec::Grid2Clique { t1: 5, t2: 5 },
        );
        let f = family_spectrum(FamilySpec::Grid2Clique { t1: 5, t2: 5 }).unwrap();
        let expect = [(17.0, 1), (7.0, 8), (-1.0, 25), (-3.0, 16)];
        for (a, b) in f.pairs.iter().zip(expect) {
            assert!((a.0 - b.0).abs() < 1e-12);
            assert_eq!(a.1, b.1);
        }
    }

    #[test]
    fn clique_extension_lambda_min_mapping() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let n = rng.gen_range(2..8);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let lm = spectrum(&g, DEFAULT_GROUP_TOL).unwrap().lambda_min();
            let elm = spectrum(&clique_extension_2(&g).unwrap(), DEFAULT_GROUP_TOL)
                .unwrap()
                .lambda_min();
            let expect = if lm <= -1.0 { 2.0 * lm + 1.0 } else { -1.0 };
            assert!((elm - expect).abs() < 1e-8, "lm={lm} elm={elm}");
        }
    }

    #[test]
    fn line_graph_basics() {
        let lg = line_graph(&cycle(5).unwrap()).unwrap();
        assert!(graphs_isomorphic(&lg, &cycle(5).unwrap(), 1_000_000).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let n = rng.gen_range(3..8);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            if g.edge_count() == 0 {
                continue;
            }
            let lm = spectrum(&line_graph(&g).unwrap(), DEFAULT_GROUP_TOL)
                .unwrap()
                .lambda_min();
            assert!(lm >= -2.0 - 1e-9);
        }
    }

    #[test]
    fn intersection_graph_basics() {
        // 2-uniform hypergraph = graph; intersection graph = line graph
        let g = cycle(4).unwrap();
        let hg = Hypergraph::new(
            4,
            g.edges()
                .into_iter()
                .map(|(u, v)| VertexSet::new(vec![u, v]))
                .collect(),
        )
        .unwrap();
        let ig = intersection_graph(&hg).unwrap();
        assert_eq!(ig, line_graph(&g).unwrap());
        // disjoint edges -> empty graph
        let hg = Hypergraph::new(
            6,
            vec![VertexSet::new(vec![0, 1]), VertexSet::new(vec![2, 3])],
        )
        .unwrap();
        assert_eq!(intersection_graph(&hg).unwrap().edge_count(), 0);
    }

    #[test]
    fn linear_uniform_checks() {
        let single = Hypergraph::new(3, vec![VertexSet::new(vec![0, 1, 2])]).unwrap();
        assert!(is_linear_uniform(&single, 3).unwrap());
        let dup = Hypergraph::new(
            3,
            vec![VertexSet::new(vec![0, 1, 2]), VertexSet::new(vec![0, 1, 2])],
        )
        .unwrap();
        assert!(!is_linear_uniform(&dup, 3).unwrap());
    }

    #[test]
    fn linear_intersection_lambda_min_bound() {
        // random linear (t+1)-uniform hypergraphs: intersection graph has
        // smallest eigenvalue >= -t-1
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in 1..=3usize {
            for _ in 0..5 {
                // enough room for 6 pairwise almost-disjoint (t+1)-edges
                let nv = rng.gen_range(6 * (t + 1)..8 * (t + 1));
                let mut edges: Vec<VertexSet> = Vec::new();
                'grow: while edges.len() < 6 {
                    let mut e: Vec<usize> = Vec::new();
                    while e.len() < t + 1 {
                        let v = rng.gen_range(0..nv);
                        if !e.contains(&v) {
                            e.push(v);
                        }
                    }
                    let e = VertexSet::new(e);
                    for old in &edges {
                        if old.intersection_size(&e) >= 2 {
                            continue 'grow;
                        }
                    }
                    edges.push(e);
                }
                let hg = Hypergraph::new(nv, edges).unwrap();
                assert!(is_linear_uniform(&hg, t + 1).unwrap());
                let lm = spectrum(&intersection_graph(&hg).unwrap(), DEFAULT_GROUP_TOL)
                    .unwrap()
                    .lambda_min();
                assert!(lm >= -(t as f64) - 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn cover_extraction_disjoint_cherries() {
        // n disjoint cherries h^(t+1): n disjoint edges, empty intersection graph
        let t = 2;
        let n = 3;
        let slim = Graph::new(n);
        let mut fats = Vec::new();
        for x in 0..n {
            for _ in 0..=t {
                fats.push(VertexSet::new(vec![x]));
            }
        }
        let h = HoffmanGraph::new(slim, fats).unwrap();
        let hg = hypergraph_from_cover(&h, t).unwrap();
        assert_eq!(hg.edges().len(), n);
        assert!(is_linear_uniform(&hg, t + 1).unwrap());
        assert_eq!(intersection_graph(&hg).unwrap().edge_count(), 0);
    }

    #[test]
    fn cover_extraction_rejects_wrong_degree() {
        let h = HoffmanGraph::new(Graph::new(1), vec![VertexSet::new(vec![0])]).unwrap();
        assert!(hypergraph_from_cover(&h, 2).is_err());
    }
}
