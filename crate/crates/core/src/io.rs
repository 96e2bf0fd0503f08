//! Text formats for graphs and Hoffman graphs.
//!
//! Graph files: a header line `graph <n>` followed by `e <u> <v>` lines
//! with 0-based endpoints. Hoffman files: `hoffman <n_slim> <n_fat>`, then
//! `e <u> <v>` slim edges and `f <i> <u>` fat adjacencies; every fat vertex
//! needs at least one slim neighbor. `#` starts a comment; LF, ASCII.

use crate::error::{input_err, Result};
use crate::graph::{Graph, VertexSet};
use crate::hoffman::HoffmanGraph;

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_fields(lineno: usize, line: &str, tag: &str, count: usize) -> Result<Vec<usize>> {
    let mut it = line.split_whitespace();
    let first = it.next().unwrap_or("");
    if first != tag {
        return input_err(format!("line {lineno}: expected `{tag}`, found `{first}`"));
    }
    let fields: Vec<&str> = it.collect();
    if fields.len() != count {
        return input_err(format!(
            "line {lineno}: `{tag}` takes {count} fields, found {}",
            fields.len()
        ));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| crate::Error::Input(format!("line {lineno}: `{f}` is not a number")))
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = meaningful_lines(text);
    let Some((lineno, header)) = lines.next() else {
        return input_err("empty graph file");
    };
    let fields = parse_fields(lineno, header, "graph", 1)?;
    let mut g = Graph::new(fields[0]);
    for (lineno, line) in lines {
        let fields = parse_fields(lineno, line, "e", 2)?;
        g.add_edge(fields[0], fields[1])
            .map_err(|e| crate::Error::Input(format!("line {lineno}: {e}")))?;
    }
    Ok(g)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

pub fn parse_hoffman(text: &str) -> Result<HoffmanGraph> {
    let mut lines = meaningful_lines(text);
    let Some((lineno, header)) = lines.next() else {
        return input_err("empty hoffman file");
    };
    let fields = parse_fields(lineno, header, "hoffman", 2)?;
    let (n_slim, n_fat) = (fields[0], fields[1]);
    let mut slim = Graph::new(n_slim);
    let mut fat_members: Vec<Vec<usize>> = vec![Vec::new(); n_fat];
    for (lineno, line) in lines {
        match line.split_whitespace().next() {
            Some("e") => {
                let fields = parse_fields(lineno, line, "e", 2)?;
                slim.add_edge(fields[0], fields[1])
                    .map_err(|e| crate::Error::Input(format!("line {lineno}: {e}")))?;
            }
            Some("f") => {
                let fields = parse_fields(lineno, line, "f", 2)?;
                let (i, u) = (fields[0], fields[1]);
                if i >= n_fat {
                    return input_err(format!("line {lineno}: fat vertex {i} out of range"));
                }
                if u >= n_slim {
                    return input_err(format!("line {lineno}: slim vertex {u} out of range"));
                }
                if fat_members[i].contains(&u) {
                    return input_err(format!(
                        "line {lineno}: duplicate fat adjacency {i} {u}"
                    ));
                }
                fat_members[i].push(u);
            }
            other => {
                return input_err(format!(
                    "line {lineno}: expected `e` or `f`, found `{}`",
                    other.unwrap_or("")
                ))
            }
        }
    }
    for (i, members) in fat_members.iter().enumerate() {
        if members.is_empty() {
            return input_err(format!("fat vertex {i} has no slim neighbor"));
        }
    }
    HoffmanGraph::new(
        slim,
        fat_members.into_iter().map(VertexSet::new).collect(),
    )
}

pub fn serialize_hoffman(h: &HoffmanGraph) -> String {
    let mut out = format!("hoffman {} {}\n", h.slim_count(), h.fat_count());
    for (u, v) in h.slim_graph().edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for (i, f) in h.fats().iter().enumerate() {
        for u in f.iter() {
            out.push_str(&format!("f {i} {u}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;
    use crate::hoffman::cherry;

    #[test]
    fn parse_p3() {
        let g = parse_graph("graph 3\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 2));
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(parse_graph("graph 2\ne 0 0\n").is_err()); // loop
        assert!(parse_graph("graph 2\ne 0 1\ne 0 1\n").is_err()); // duplicate
        assert!(parse_graph("graph 2\ne 0 5\n").is_err()); // range
        assert!(parse_graph("graph 2\nv 0 1\n").is_err()); // tag
        assert!(parse_graph("").is_err());
        let err = parse_graph("graph 3\ne 0 1\ne 0 x\n").unwrap_err();
        assert!(err.to_string().contains("line 3"));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let g = parse_graph("# a comment\n\ngraph 2 # trailing\ne 0 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn graph_round_trip_petersen() {
        let g = petersen();
        let text = serialize_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(serialize_graph(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn parse_hoffman_cherry() {
        let h = parse_hoffman("hoffman 1 2\nf 0 0\nf 1 0\n").unwrap();
        assert_eq!(h, cherry(2).unwrap());
    }

    #[test]
    fn hoffman_rejects_isolated_fat() {
        let err = parse_hoffman("hoffman 1 2\nf 0 0\n").unwrap_err();
        assert!(err.to_string().contains("fat vertex 1"));
        assert!(parse_hoffman("hoffman 1 1\nf 0 0\nf 0 0\n").is_err());
    }

    #[test]
    fn hoffman_round_trip_gt_members() {
        for member in crate::forbidden::enumerate_gt(2).unwrap() {
            let text = serialize_hoffman(&member);
            assert_eq!(parse_hoffman(&text).unwrap(), member);
        }
    }
}
