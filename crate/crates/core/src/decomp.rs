//! Decomposition of Hoffman graphs into indecomposable parts: the special
//! matrix must be block diagonal with respect to the slim partition.

use crate::error::{input_err, Result};
use crate::graph::VertexSet;
use crate::hoffman::HoffmanGraph;

/// A decomposition: a partition of the slim vertex set whose generated
/// subgraphs make the special matrix block diagonal.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub parts: Vec<VertexSet>,
    pub part_graphs: Vec<HoffmanGraph>,
}

/// The finest decomposition: connected components of the interaction graph
/// with an edge wherever `S_xy != 0`. Parts are sorted by least vertex.
pub fn decompose(h: &HoffmanGraph) -> Result<Decomposition> {
    let n = h.slim_count();
    if n == 0 {
        return input_err("decompose needs at least one slim vertex");
    }
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (&(x, y), _) in h.sparse_special_entries().iter() {
        nbrs[x].push(y);
        nbrs[y].push(x);
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = count;
        while let Some(x) = stack.pop() {
            for &y in &nbrs[x] {
                if comp[y] == usize::MAX {
                    comp[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    let mut parts: Vec<VertexSet> = (0..count)
        .map(|c| (0..n).filter(|&v| comp[v] == c).collect())
        .collect();
    parts.sort();
    let part_graphs = parts
        .iter()
        .map(|p| h.generated_subgraph(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition { parts, part_graphs })
}

pub fn is_indecomposable(h: &HoffmanGraph) -> Result<bool> {
    Ok(decompose(h)?.parts.len() == 1)
}

/// Combinatorial decomposition criterion for the family of generated
/// subgraphs of `parts`: the parts must partition the slim vertices, and
/// slim vertices in different parts must have at most one common fat
/// neighbor, with exactly one iff they are adjacent.
pub fn check_decomposition(h: &HoffmanGraph, parts: &[VertexSet]) -> Result<bool> {
    let n = h.slim_count();
    let mut owner = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return input_err("decomposition parts must be nonempty");
        }
        for v in p.iter() {
            if v >= n {
                return input_err(format!("slim vertex {v} out of range"));
            }
            if owner[v] != usize::MAX {
                return input_err(format!("slim vertex {v} in two parts"));
            }
            owner[v] = i;
        }
    }
    if owner.iter().any(|&o| o == usize::MAX) {
        return input_err("parts do not cover the slim vertex set");
    }
    // conditions (i)-(iii) hold by construction for generated subgraphs;
    // check the cross-part common-fat-neighbor condition. Only pairs with
    // a shared fat or a slim edge can violate it, so only those are visited.
    let shared = h.shared_fat_counts();
    for (&(x, y), &common) in shared.iter() {
        if owner[x] == owner[y] {
            continue;
        }
        if common > 1 || !h.slim_graph().has_edge(x, y) {
            return Ok(false);
        }
    }
    for (x, y) in h.slim_graph().edges() {
        if owner[x] == owner[y] {
            continue;
        }
        let key = if x < y { (x, y) } else { (y, x) };
        if shared.get(&key).copied().unwrap_or(0) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hoffman::{cherry, fixtures, HoffmanGraph};

    fn two_disjoint_cherries() -> HoffmanGraph {
        HoffmanGraph::new(
            Graph::new(2),
            vec![VertexSet::new(vec![0]), VertexSet::new(vec![1])],
        )
        .unwrap()
    }

    /// Two adjacent slim vertices with exactly one common fat neighbor:
    /// S_xy = 1 - 1 = 0, so it splits into two parts.
    fn adjacent_one_common_fat() -> HoffmanGraph {
        HoffmanGraph::new(
            Graph::from_edges(2, &[(0, 1)]).unwrap(),
            vec![VertexSet::new(vec![0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn disjoint_cherries_decompose() {
        let d = decompose(&two_disjoint_cherries()).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert!(!is_indecomposable(&two_disjoint_cherries()).unwrap());
    }

    #[test]
    fn adjacent_pair_with_one_shared_fat_splits() {
        let h = adjacent_one_common_fat();
        let d = decompose(&h).unwrap();
        assert_eq!(d.parts.len(), 2);
        // each part keeps the shared fat
        for pg in &d.part_graphs {
            assert_eq!((pg.slim_count(), pg.fat_count()), (1, 1));
        }
        assert!(check_decomposition(&h, &d.parts).unwrap());
    }

    #[test]
    fn indecomposable_cases() {
        assert!(is_indecomposable(&cherry(3).unwrap()).unwrap());
        assert!(is_indecomposable(&fixtures::shared_two_fats()).unwrap());
    }

    #[test]
    fn trivial_partition_checks() {
        let h = fixtures::shared_two_fats();
        let all = VertexSet::new(vec![0, 1]);
        assert!(check_decomposition(&h, &[all]).unwrap());
        // splitting two slim vertices with two common fats is invalid
        let split = [VertexSet::new(vec![0]), VertexSet::new(vec![1])];
        assert!(!check_decomposition(&h, &split).unwrap());
    }

    #[test]
    fn check_rejects_non_partition() {
        let h = two_disjoint_cherries();
        assert!(check_decomposition(&h, &[VertexSet::new(vec![0])]).is_err());
    }

    #[test]
    fn block_diagonal_lambda_min() {
        let h = two_disjoint_cherries();
        let d = decompose(&h).unwrap();
        let whole = h.lambda_min().unwrap();
        let min_part = d
            .part_graphs
            .iter()
            .map(|p| p.lambda_min().unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!((whole - min_part).abs() < 1e-9);
    }
}
