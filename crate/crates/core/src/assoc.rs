//! Maximal cliques, the equivalence of big cliques, quasi-cliques, the
//! associated Hoffman graph g(G,m,n), the graphs K~_{2m} and the threshold
//! m(t), and the Theorem-4.2 condition checks.

use crate::error::{input_err, resource_err, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hoffman::HoffmanGraph;
use std::collections::HashMap;

const CLIQUE_BUDGET: usize = 1_000_000;
const KTILDE_BUDGET: usize = 10_000_000;

/// All maximal cliques of `g`, each sorted, listed lexicographically.
/// Bron-Kerbosch with pivoting; aborts past a fixed recursion budget.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    let words = n.div_ceil(64).max(1);
    let adj: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut row = vec![0u64; words];
            for u in g.neighbors(v) {
                row[u / 64] |= 1 << (u % 64);
            }
            row
        })
        .collect();
    let mut p = vec![0u64; words];
    for v in 0..n {
        p[v / 64] |= 1 << (v % 64);
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    let mut budget = CLIQUE_BUDGET;
    bron_kerbosch(&adj, &mut r, p, vec![0u64; words], &mut out, &mut budget)?;
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out.into_iter().map(VertexSet::new).collect())
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        (0..64)
            .filter(move |b| word >> b & 1 == 1)
            .map(move |b| w * 64 + b)
    })
}

fn bron_kerbosch(
    adj: &[Vec<u64>],
    r: &mut Vec<usize>,
    p: Vec<u64>,
    x: Vec<u64>,
    out: &mut Vec<Vec<usize>>,
    budget: &mut usize,
) -> Result<()> {
    if *budget == 0 {
        return resource_err("maximal clique enumeration budget exceeded");
    }
    *budget -= 1;
    if p.iter().all(|&w| w == 0) {
        if x.iter().all(|&w| w == 0) {
            out.push(r.clone());
        }
        return Ok(());
    }
    // pivot: vertex of P ∪ X with the most neighbors in P
    let pivot = bits(&p)
        .chain(bits(&x))
        .max_by_key(|&u| {
            p.iter()
                .zip(&adj[u])
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
        })
        .expect("P nonempty");
    let candidates: Vec<usize> = bits(&p)
        .filter(|&v| adj[pivot][v / 64] >> (v % 64) & 1 == 0)
        .collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let np: Vec<u64> = p.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        let nx: Vec<u64> = x.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        r.push(v);
        bron_kerbosch(adj, r, np, nx, out, budget)?;
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
    Ok(())
}

/// The two-sided relation: every vertex of each clique has at most m-1
/// non-neighbors in the other.
pub fn cliques_equivalent(g: &Graph, c1: &VertexSet, c2: &VertexSet, m: usize) -> bool {
    let side = |a: &VertexSet, b: &VertexSet| {
        a.iter().all(|x| {
            let non = b
                .iter()
                .filter(|&y| y != x && !g.has_edge(x, y))
                .count();
            non <= m - 1
        })
    };
    side(c1, c2) && side(c2, c1)
}

/// An equivalence class of big maximal cliques.
#[derive(Debug, Clone)]
pub struct CliqueClass {
    /// Member cliques, sorted lexicographically.
    pub members: Vec<VertexSet>,
    /// Index of the lexicographically least member (always 0 after sorting).
    pub representative: usize,
}

/// Classes of the maximal cliques of size >= n. In strict mode (default)
/// n >= (m+1)^2 is required and the relation is asserted to already be
/// transitive; relaxed mode takes the transitive closure and reports
/// whether a violation was patched over.
pub fn clique_classes(g: &Graph, m: usize, n: usize) -> Result<Vec<CliqueClass>> {
    let (classes, _) = clique_classes_mode(g, m, n, false)?;
    Ok(classes)
}

/// Relaxed-mode classes; the flag is true iff the raw relation was not
/// transitive and the transitive closure was used.
pub fn clique_classes_relaxed(g: &Graph, m: usize, n: usize) -> Result<(Vec<CliqueClass>, bool)> {
    clique_classes_mode(g, m, n, true)
}

fn clique_classes_mode(
    g: &Graph,
    m: usize,
    n: usize,
    relaxed: bool,
) -> Result<(Vec<CliqueClass>, bool)> {
    if m < 2 {
        return input_err("clique classes need m >= 2");
    }
    if !relaxed && n < (m + 1) * (m + 1) {
        return input_err(format!(
            "strict mode needs n >= (m+1)^2 = {}; got n = {n}",
            (m + 1) * (m + 1)
        ));
    }
    let big: Vec<VertexSet> = maximal_cliques(g)?
        .into_iter()
        .filter(|c| c.len() >= n)
        .collect();
    let k = big.len();
    // union-find over the raw relation
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..k {
        for j in i + 1..k {
            if cliques_equivalent(g, &big[i], &big[j], m) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..k {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    // transitivity: every in-class pair must be directly related
    let mut violated = false;
    'outer: for idxs in groups.values() {
        for (a, &i) in idxs.iter().enumerate() {
            for &j in &idxs[a + 1..] {
                if !cliques_equivalent(g, &big[i], &big[j], m) {
                    violated = true;
                    break 'outer;
                }
            }
        }
    }
    if violated && !relaxed {
        return Err(Error::Internal(format!(
            "clique equivalence is not transitive at m = {m}, n = {n}"
        )));
    }
    let mut classes: Vec<CliqueClass> = groups
        .into_values()
        .map(|idxs| {
            let mut members: Vec<VertexSet> = idxs.into_iter().map(|i| big[i].clone()).collect();
            members.sort();
            CliqueClass {
                members,
                representative: 0,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok((classes, violated))
}

/// A quasi-clique: the vertices with at most m-1 non-neighbors in a class
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiClique {
    pub vertices: VertexSet,
}

/// Quasi-clique of a class plus the member indices whose own computation
/// disagrees with the representative's (surfaced, not silently resolved).
pub fn quasi_clique(g: &Graph, cls: &CliqueClass, m: usize) -> Result<(QuasiClique, Vec<usize>)> {
    if cls.members.is_empty() {
        return input_err("quasi-clique of an empty class");
    }
    let against = |c: &VertexSet| -> VertexSet {
        (0..g.n())
            .filter(|&x| {
                c.iter().filter(|&y| y != x && !g.has_edge(x, y)).count() <= m - 1
            })
            .collect()
    };
    let rep = against(&cls.members[cls.representative]);
    let disagreeing: Vec<usize> = cls
        .members
        .iter()
        .enumerate()
        .filter(|&(i, c)| i != cls.representative && against(c) != rep)
        .map(|(i, _)| i)
        .collect();
    Ok((QuasiClique { vertices: rep }, disagreeing))
}

/// The graph K~_{2m}: a complete graph on 2m vertices plus a vertex
/// (index 2m) adjacent to vertices 0..m-1.
pub fn k_tilde(m: usize) -> Result<Graph> {
    if m == 0 {
        return input_err("k_tilde needs m >= 1");
    }
    let mut g = Graph::new(2 * m + 1);
    for u in 0..2 * m {
        for v in u + 1..2 * m {
            g.add_edge(u, v)?;
        }
    }
    for v in 0..m {
        g.add_edge(v, 2 * m)?;
    }
    Ok(g)
}

/// Searches for an induced K~_{2m}: an m-clique inside a vertex's
/// neighborhood and an m-clique outside it, joined completely. Returns the
/// witness vertices (clique then the split vertex) if one exists.
/// Candidate sets are tracked as bitsets, so the common-neighbor steps are
/// word operations.
pub fn find_induced_k_tilde(g: &Graph, m: usize) -> Result<Option<Vec<usize>>> {
    if m == 0 {
        return input_err("m must be positive");
    }
    let n = g.n();
    let words = n.div_ceil(64).max(1);
    let mut budget = KTILDE_BUDGET;
    let mut all = vec![u64::MAX; words];
    if n % 64 != 0 {
        all[words - 1] = (1u64 << (n % 64)) - 1;
    }
    for z in 0..n {
        let inside = g.row(z).to_vec();
        // complement of N(z) ∪ {z}
        let mut outside_base: Vec<u64> = all.iter().zip(&inside).map(|(a, b)| a & !b).collect();
        outside_base[z / 64] &= !(1 << (z % 64));
        let mut a = Vec::new();
        if let Some(w) =
            grow_split_clique(g, z, &inside, &outside_base, 0, m, &mut a, &mut budget)?
        {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Extends `a` (a clique inside N(z), restricted to `cand`) one vertex at a
/// time; once |a| = m, looks for an m-clique among the common neighbors of
/// `a` outside N(z) ∪ {z}.
#[allow(clippy::too_many_arguments)]
fn grow_split_clique(
    g: &Graph,
    z: usize,
    cand: &[u64],
    outside: &[u64],
    from: usize,
    m: usize,
    a: &mut Vec<usize>,
    budget: &mut usize,
) -> Result<Option<Vec<usize>>> {
    if *budget == 0 {
        return resource_err("induced K~ search budget exceeded");
    }
    *budget -= 1;
    if a.len() == m {
        let mut b = Vec::new();
        if grow_plain_clique(g, outside, 0, m, &mut b, budget)? {
            let mut witness = a.clone();
            witness.extend(&b);
            witness.push(z);
            return Ok(Some(witness));
        }
        return Ok(None);
    }
    for v in from..g.n() {
        if cand[v / 64] >> (v % 64) & 1 == 0 {
            continue;
        }
        let ncand: Vec<u64> = cand.iter().zip(g.row(v)).map(|(c, r)| c & r).collect();
        let noutside: Vec<u64> = outside.iter().zip(g.row(v)).map(|(c, r)| c & r).collect();
        a.push(v);
        if let Some(w) = grow_split_clique(g, z, &ncand, &noutside, v + 1, m, a, budget)? {
            return Ok(Some(w));
        }
        a.pop();
    }
    Ok(None)
}

fn grow_plain_clique(
    g: &Graph,
    cand: &[u64],
    from: usize,
    m: usize,
    b: &mut Vec<usize>,
    budget: &mut usize,
) -> Result<bool> {
    if *budget == 0 {
        return resource_err("induced K~ search budget exceeded");
    }
    *budget -= 1;
    if b.len() == m {
        return Ok(true);
    }
    for v in from..g.n() {
        if cand[v / 64] >> (v % 64) & 1 == 0 {
            continue;
        }
        let ncand: Vec<u64> = cand.iter().zip(g.row(v)).map(|(c, r)| c & r).collect();
        b.push(v);
        if grow_plain_clique(g, &ncand, v + 1, m, b, budget)? {
            return Ok(true);
        }
        b.pop();
    }
    Ok(false)
}

/// Everything built while assembling the associated Hoffman graph.
#[derive(Debug, Clone)]
pub struct AssocBuild {
    pub hoffman: HoffmanGraph,
    pub clique_count: usize,
    pub classes: Vec<CliqueClass>,
    pub quasi_cliques: Vec<QuasiClique>,
    /// (class index, member index) pairs whose quasi-clique disagrees with
    /// the representative's.
    pub disagreements: Vec<(usize, usize)>,
}

/// The associated Hoffman graph g(G,m,n): slim graph G, one fat vertex per
/// clique class, adjacent to the class's quasi-clique. Errors if G contains
/// an induced K~_{2m} (the construction's hypothesis), naming the witness.
pub fn associated_hoffman(g: &Graph, m: usize, n: usize) -> Result<AssocBuild> {
    if let Some(witness) = find_induced_k_tilde(g, m)? {
        return input_err(format!(
            "graph contains an induced K~_{} on vertices {witness:?}",
            2 * m
        ));
    }
    let clique_count = maximal_cliques(g)?.len();
    let classes = clique_classes(g, m, n)?;
    let mut quasi_cliques = Vec::new();
    let mut disagreements = Vec::new();
    let mut fats = Vec::new();
    for (ci, cls) in classes.iter().enumerate() {
        let (q, bad) = quasi_clique(g, cls, m)?;
        disagreements.extend(bad.into_iter().map(|mi| (ci, mi)));
        fats.push(q.vertices.clone());
        quasi_cliques.push(q);
    }
    let hoffman = HoffmanGraph::new(g.clone(), fats)?;
    Ok(AssocBuild {
        hoffman,
        clique_count,
        classes,
        quasi_cliques,
        disagreements,
    })
}

/// The threshold m(t): the least m with lambda_min(K~_{2m}) < -t-1,
/// scanned up to `m_budget`.
pub fn m_of_t(t: usize, m_budget: usize) -> Result<usize> {
    if t == 0 {
        return input_err("t must be positive");
    }
    let threshold = -(t as f64) - 1.0;
    for m in 1..=m_budget {
        let g = k_tilde(m)?;
        let lm = crate::spectral::spectrum(&g, crate::spectral::DEFAULT_GROUP_TOL)?.lambda_min();
        if lm < threshold {
            return Ok(m);
        }
    }
    resource_err(format!("no m <= {m_budget} with lambda_min(K~_2m) < {threshold}"))
}

/// Condition values from Theorem 4.2: complement degrees inside each
/// quasi-clique (against t^2) and pairwise quasi-clique intersections
/// (against t). Pairwise data is summarized by the maximum and the list of
/// violating pairs.
#[derive(Debug, Clone, serde::Serialize)]
pub struct QuasiCliqueReport {
    /// Max complement-degree inside each quasi-clique.
    pub complement_degrees: Vec<usize>,
    pub max_complement_degree: usize,
    pub max_intersection: usize,
    /// Quasi-cliques whose complement degree exceeds t^2.
    pub degree_violations: Vec<usize>,
    /// Pairs (i, j, size) with intersection size exceeding t.
    pub intersection_violations: Vec<(usize, usize, usize)>,
    pub pass: bool,
}

pub fn quasi_clique_conditions(
    g: &Graph,
    quasi_cliques: &[QuasiClique],
    t: usize,
) -> QuasiCliqueReport {
    let mut complement_degrees = Vec::new();
    let mut degree_violations = Vec::new();
    for (i, q) in quasi_cliques.iter().enumerate() {
        let verts = q.vertices.members();
        let max_def = verts
            .iter()
            .map(|&x| {
                verts
                    .iter()
                    .filter(|&&y| y != x && !g.has_edge(x, y))
                    .count()
            })
            .max()
            .unwrap_or(0);
        if max_def > t * t {
            degree_violations.push(i);
        }
        complement_degrees.push(max_def);
    }
    // pairwise intersections via an inverted index over vertices
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, q) in quasi_cliques.iter().enumerate() {
        for v in q.vertices.iter() {
            containing[v].push(i);
        }
    }
    let mut pair_sizes: HashMap<(usize, usize), usize> = HashMap::new();
    for list in &containing {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                *pair_sizes.entry((i, j)).or_insert(0) += 1;
            }
        }
    }
    let max_intersection = pair_sizes.values().copied().max().unwrap_or(0);
    let mut intersection_violations: Vec<(usize, usize, usize)> = pair_sizes
        .iter()
        .filter(|&(_, &s)| s > t)
        .map(|(&(i, j), &s)| (i, j, s))
        .collect();
    intersection_violations.sort_unstable();
    let max_complement_degree = complement_degrees.iter().copied().max().unwrap_or(0);
    QuasiCliqueReport {
        pass: degree_violations.is_empty() && intersection_violations.is_empty(),
        complement_degrees,
        max_complement_degree,
        max_intersection,
        degree_violations,
        intersection_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    /// Two K9s glued on 8 shared vertices: 10 vertices, all pairs adjacent
    /// except {8, 9}.
    fn glued_k9() -> Graph {
        let mut g = complete(10);
        let mut h = Graph::new(10);
        for (u, v) in g.edges() {
            if (u, v) != (8, 9) {
                h.add_edge(u, v).unwrap();
            }
        }
        std::mem::swap(&mut g, &mut h);
        g
    }

    #[test]
    fn cliques_of_k4_and_c5() {
        let cs = maximal_cliques(&complete(4)).unwrap();
        assert_eq!(cs, vec![VertexSet::new(vec![0, 1, 2, 3])]);
        let cs = maximal_cliques(&cycle(5).unwrap()).unwrap();
        assert_eq!(cs.len(), 5);
        assert!(cs.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn petersen_maximal_cliques_are_edges() {
        let g = crate::graph::petersen();
        let cs = maximal_cliques(&g).unwrap();
        assert_eq!(cs.len(), 15);
    }

    #[test]
    fn equivalence_basics() {
        let g = complete(6);
        let c = VertexSet::new(vec![0, 1, 2, 3, 4, 5]);
        assert!(cliques_equivalent(&g, &c, &c, 2));
        // two disjoint cliques with no cross edges
        let mut g2 = Graph::new(8);
        for u in 0..4 {
            for v in u + 1..4 {
                g2.add_edge(u, v).unwrap();
                g2.add_edge(u + 4, v + 4).unwrap();
            }
        }
        let c1 = VertexSet::new(vec![0, 1, 2, 3]);
        let c2 = VertexSet::new(vec![4, 5, 6, 7]);
        assert!(!cliques_equivalent(&g2, &c1, &c2, 2));
    }

    #[test]
    fn complete_graph_single_class() {
        let g = complete(10);
        let classes = clique_classes(&g, 2, 9).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members.len(), 1);
        let (q, warn) = quasi_clique(&g, &classes[0], 2).unwrap();
        assert!(warn.is_empty());
        assert_eq!(q.vertices.len(), 10);
    }

    #[test]
    fn glued_k9_one_class_two_members() {
        let g = glued_k9();
        let classes = clique_classes(&g, 2, 9).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members.len(), 2);
        let (q, warn) = quasi_clique(&g, &classes[0], 2).unwrap();
        assert!(warn.is_empty());
        assert_eq!(q.vertices.len(), 10);
        let report = quasi_clique_conditions(&g, &[q], 2);
        assert_eq!(report.complement_degrees, vec![1]);
        assert!(report.pass);
    }

    #[test]
    fn strict_mode_threshold() {
        assert!(clique_classes(&complete(5), 2, 4).is_err());
        let (classes, flagged) = clique_classes_relaxed(&complete(5), 2, 4).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(!flagged);
    }

    #[test]
    fn k_tilde_shapes() {
        let g = k_tilde(1).unwrap();
        // P3: 3 vertices, 2 edges
        assert_eq!((g.n(), g.edge_count()), (3, 2));
        let s = crate::spectral::spectrum(&g, 1e-6).unwrap();
        assert!((s.lambda_min() + 2f64.sqrt()).abs() < 1e-9);
        let g = k_tilde(2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 8));
    }

    #[test]
    fn induced_k_tilde_detection() {
        // K~_4 contains itself
        let g = k_tilde(2).unwrap();
        let w = find_induced_k_tilde(&g, 2).unwrap().unwrap();
        assert_eq!(w.len(), 5);
        // a complete graph has no split vertex
        assert!(find_induced_k_tilde(&complete(8), 2).unwrap().is_none());
        // glued K9s: vertex 8 sees exactly 8 of K9 {0..7,9}; m=4 needs a
        // 4-clique inside and outside the neighborhood; outside is just {9}
        assert!(find_induced_k_tilde(&glued_k9(), 4).unwrap().is_none());
        // C5 has no K4 at all
        assert!(find_induced_k_tilde(&cycle(5).unwrap(), 2).unwrap().is_none());
    }

    #[test]
    fn m_of_t_golden_values() {
        // frozen after inspecting the eigensolver scan
        assert_eq!(m_of_t(1, 64).unwrap(), 4);
        assert_eq!(m_of_t(2, 64).unwrap(), 12);
        assert_eq!(m_of_t(3, 64).unwrap(), 23);
        assert_eq!(m_of_t(4, 64).unwrap(), 39);
        assert!(m_of_t(4, 5).is_err());
    }

    #[test]
    fn associated_hoffman_complete_graph() {
        let b = associated_hoffman(&complete(10), 2, 9).unwrap();
        assert_eq!(b.hoffman.fat_count(), 1);
        assert_eq!(b.hoffman.fats()[0].len(), 10);
        assert!(b.disagreements.is_empty());
    }

    #[test]
    fn associated_hoffman_no_big_cliques() {
        let b = associated_hoffman(&cycle(5).unwrap(), 2, 9).unwrap();
        assert_eq!(b.hoffman.fat_count(), 0);
        assert_eq!(b.hoffman.slim_count(), 5);
    }

    #[test]
    fn associated_hoffman_rejects_k_tilde() {
        let g = k_tilde(2).unwrap();
        match associated_hoffman(&g, 2, 9) {
            Err(Error::Input(msg)) => assert!(msg.contains("K~_4")),
            other => panic!("expected input error, got {other:?}"),
        }
    }
}
