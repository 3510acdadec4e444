//! Edge-labeled permutation representation graphs.
//!
//! A graph on `degree` vertices with edges labeled `0..rank`, each label
//! class a nonempty partial perfect matching. Parallel edges with distinct
//! labels are allowed. The text format is line-oriented:
//!
//! ```text
//! # optional comments
//! cpr <n> <r>
//! <u> <v> <label>
//! ```
//!
//! with 1-based vertices and 0-based labels.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sggi::Sggi;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: usize,
}

/// A validated edge-labeled graph; edges are stored sorted by
/// `(label, u, v)` with `u < v`, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CprGraph {
    degree: usize,
    rank: usize,
    edges: Vec<Edge>,
}

impl CprGraph {
    pub fn new(degree: usize, rank: usize, raw_edges: &[(usize, usize, usize)]) -> Result<CprGraph> {
        let mut edges = Vec::with_capacity(raw_edges.len());
        for &(a, b, label) in raw_edges {
            if a >= degree {
                return Err(Error::PointOutOfRange {
                    point: a + 1,
                    degree,
                });
            }
            if b >= degree {
                return Err(Error::PointOutOfRange {
                    point: b + 1,
                    degree,
                });
            }
            if a == b {
                return Err(Error::InvalidEdge {
                    u: a + 1,
                    v: b + 1,
                    detail: "loops are not allowed".to_string(),
                });
            }
            if label >= rank {
                return Err(Error::LabelOutOfRange { label, rank });
            }
            edges.push(Edge {
                u: a.min(b),
                v: a.max(b),
                label,
            });
        }
        edges.sort_unstable_by_key(|e| (e.label, e.u, e.v));
        // Each label class must be a nonempty partial matching.
        let mut covered = vec![usize::MAX; degree];
        for label in 0..rank {
            let mut any = false;
            for e in edges.iter().filter(|e| e.label == label) {
                any = true;
                for vertex in [e.u, e.v] {
                    if covered[vertex] == label {
                        return Err(Error::NotAMatching {
                            label,
                            vertex: vertex + 1,
                        });
                    }
                    covered[vertex] = label;
                }
            }
            if !any {
                return Err(Error::EmptyLabelClass { label });
            }
        }
        Ok(CprGraph {
            degree,
            rank,
            edges,
        })
    }

    /// A path on `labels.len() + 1` vertices, edge `k` labeled `labels[k]`.
    pub fn path(labels: &[usize]) -> Result<CprGraph> {
        let rank = labels.iter().copied().max().map_or(0, |m| m + 1);
        let edges: Vec<(usize, usize, usize)> = labels
            .iter()
            .enumerate()
            .map(|(k, &l)| (k, k + 1, l))
            .collect();
        CprGraph::new(labels.len() + 1, rank, &edges)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label_edges(&self, label: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.label == label)
    }

    /// The involution whose 2-cycles are the label's edges.
    pub fn involution(&self, label: usize) -> Permutation {
        let mut images: Vec<usize> = (0..self.degree).collect();
        for e in self.label_edges(label) {
            images.swap(e.u, e.v);
        }
        Permutation::from_images(images).expect("matching gives a bijection")
    }

    /// The generator sequence read off the labels; fails when the result
    /// violates the string conditions (e.g. a commuting-property breach).
    pub fn to_sggi(&self) -> Result<Sggi> {
        let gens = (0..self.rank).map(|l| self.involution(l)).collect();
        Sggi::new(self.degree, gens)
    }

    pub fn vertex_degree(&self, vertex: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.u == vertex || e.v == vertex)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(p) = stack.pop() {
            for e in &self.edges {
                for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                    if x == p && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Applies a vertex relabeling.
    pub fn relabel(&self, relabeling: &Permutation) -> Result<CprGraph> {
        if relabeling.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: relabeling.degree(),
            });
        }
        let edges: Vec<(usize, usize, usize)> = self
            .edges
            .iter()
            .map(|e| (relabeling.apply(e.u), relabeling.apply(e.v), e.label))
            .collect();
        CprGraph::new(self.degree, self.rank, &edges)
    }

    pub fn parse(text: &str) -> Result<CprGraph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |detail: String| Error::GraphParse {
                line: lineno + 1,
                detail,
            };
            if header.is_none() {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("cpr") {
                    return Err(parse_err("expected header `cpr <n> <r>`".to_string()));
                }
                let n: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err("bad vertex count".to_string()))?;
                let r: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err("bad rank".to_string()))?;
                if parts.next().is_some() {
                    return Err(parse_err("trailing tokens in header".to_string()));
                }
                header = Some((n, r));
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(parse_err(format!(
                    "expected `<u> <v> <label>`, got {line:?}"
                )));
            }
            let parse_num = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| parse_err(format!("bad number {s:?}")))
            };
            let u = parse_num(fields[0])?;
            let v = parse_num(fields[1])?;
            let label = parse_num(fields[2])?;
            if u == 0 || v == 0 {
                return Err(parse_err("vertices are 1-based".to_string()));
            }
            edges.push((u - 1, v - 1, label));
        }
        let (n, r) = header.ok_or(Error::GraphParse {
            line: 0,
            detail: "missing header".to_string(),
        })?;
        CprGraph::new(n, r, &edges)
    }

    /// The text form; parses back to an equal graph.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("cpr {} {}\n", self.degree, self.rank);
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.label);
        }
        out
    }

    /// DOT rendering: circle vertices, labels as edge text, parallel labels
    /// joined by commas.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph cpr {\n  node [shape=circle];\n");
        for v in 0..self.degree {
            let _ = writeln!(out, "  {};", v + 1);
        }
        for ((u, v), labels) in self.grouped_pairs() {
            let text: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", u + 1, v + 1, text.join(","));
        }
        out.push_str("}\n");
        out
    }

    /// Edge pairs with their label lists, sorted by vertex pair.
    pub fn grouped_pairs(&self) -> Vec<((usize, usize), Vec<usize>)> {
        let mut map: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
            std::collections::BTreeMap::new();
        for e in &self.edges {
            map.entry((e.u, e.v)).or_default().push(e.label);
        }
        map.into_iter()
            .map(|(pair, mut labels)| {
                labels.sort_unstable();
                (pair, labels)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_to_sggi() {
        let g = CprGraph::path(&[0, 1]).unwrap();
        let s = g.to_sggi().unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(
            s.generators()[0],
            Permutation::parse("(1 2)", 3).unwrap()
        );
        assert_eq!(
            s.generators()[1],
            Permutation::parse("(2 3)", 3).unwrap()
        );
    }

    #[test]
    fn alternating_square_is_valid_sggi() {
        // Square 1-2-3-4 with labels 0,2,0,2 plus a far 1-edge on 5-6.
        let g = CprGraph::new(
            6,
            3,
            &[(0, 1, 0), (1, 2, 2), (2, 3, 0), (3, 0, 2), (4, 5, 1)],
        )
        .unwrap();
        let s = g.to_sggi().unwrap();
        let r0 = &s.generators()[0];
        let r2 = &s.generators()[2];
        let prod = r0.compose(r2).unwrap();
        assert_eq!(prod.order(), 2);
    }

    #[test]
    fn empty_label_class_is_rejected() {
        let err = CprGraph::new(5, 3, &[(0, 1, 0), (1, 2, 2)]).unwrap_err();
        assert!(matches!(err, Error::EmptyLabelClass { label: 1 }));
    }

    #[test]
    fn matching_violation_is_rejected() {
        let err = CprGraph::new(4, 1, &[(0, 1, 0), (1, 2, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotAMatching { label: 0, vertex: 2 }));
    }

    #[test]
    fn commuting_violation_is_reported_with_labels() {
        // Edges 0 and 2 sharing one vertex break the commuting property.
        let g = CprGraph::new(5, 3, &[(0, 1, 0), (1, 2, 2), (3, 4, 1)]).unwrap();
        let err = g.to_sggi().unwrap_err();
        assert!(matches!(err, Error::CommutingViolation { i: 0, j: 2 }));
    }

    #[test]
    fn file_format_round_trip() {
        let g = CprGraph::new(
            6,
            3,
            &[(0, 1, 0), (1, 2, 2), (2, 3, 0), (3, 0, 2), (4, 5, 1)],
        )
        .unwrap();
        let text = g.to_file_string();
        let parsed = CprGraph::parse(&text).unwrap();
        assert_eq!(parsed, g);

        let with_comments = format!("# a graph\n{text}# done\n");
        assert_eq!(CprGraph::parse(&with_comments).unwrap(), g);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(CprGraph::parse("nope 3 2\n").is_err());
        assert!(CprGraph::parse("cpr 3 2\n0 1 0\n").is_err()); // 0 is not 1-based
        assert!(CprGraph::parse("cpr 3 2\n1 2\n").is_err());
        assert!(CprGraph::parse("").is_err());
    }

    #[test]
    fn dot_groups_parallel_labels() {
        let g = CprGraph::new(3, 3, &[(0, 1, 0), (0, 1, 2), (1, 2, 1)]).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("1 -- 2 [label=\"0,2\"]"));
        assert!(dot.contains("2 -- 3 [label=\"1\"]"));
    }
}
