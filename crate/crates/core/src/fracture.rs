//! Parabolic subgroups and fracture graphs.
//!
//! A fracture graph picks one edge per label from a permutation
//! representation graph, the chosen `i`-edge joining two vertices that lie
//! in distinct orbits of the maximal parabolic subgroup dropping generator
//! `i`. Such a choice exists iff every maximal parabolic is intransitive,
//! and every valid choice is a forest with exactly `degree - rank`
//! components.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cpr::{CprGraph, Edge};
use crate::error::{Error, Result};
use crate::group::{orbits, PermGroup};
use crate::perm::Permutation;
use crate::sggi::Sggi;

/// Subgroup generated by the generators whose indices are *not* listed in
/// `removed`.
pub fn parabolic(s: &Sggi, removed: &[usize]) -> Result<PermGroup> {
    for &k in removed {
        if k >= s.rank() {
            return Err(Error::RankIndexOutOfRange {
                index: k,
                rank: s.rank(),
            });
        }
    }
    let gens: Vec<Permutation> = s
        .generators()
        .iter()
        .enumerate()
        .filter(|(k, _)| !removed.contains(k))
        .map(|(_, g)| g.clone())
        .collect();
    if gens.is_empty() {
        return Err(Error::EmptyParabolic);
    }
    PermGroup::new(s.degree(), gens)
}

/// The maximal parabolic subgroup dropping generator `i`.
pub fn maximal_parabolic(s: &Sggi, i: usize) -> Result<PermGroup> {
    parabolic(s, &[i])
}

/// Subgroup generated by the generators with index `< j`.
pub fn below(s: &Sggi, j: usize) -> Result<PermGroup> {
    parabolic(s, &(j..s.rank()).collect::<Vec<_>>())
}

/// Subgroup generated by the generators with index `> j`.
pub fn above(s: &Sggi, j: usize) -> Result<PermGroup> {
    parabolic(s, &(0..=j.min(s.rank() - 1)).collect::<Vec<_>>())
}

/// Subgroup generated by the generators with index in `a..=b`.
pub fn interval(s: &Sggi, a: usize, b: usize) -> Result<PermGroup> {
    let removed: Vec<usize> = (0..s.rank()).filter(|&k| k < a || k > b).collect();
    parabolic(s, &removed)
}

fn parabolic_orbit_ids(s: &Sggi, dropped: usize) -> Vec<usize> {
    let gens: Vec<Permutation> = s
        .generators()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != dropped)
        .map(|(_, g)| g.clone())
        .collect();
    let mut ids = vec![0usize; s.degree()];
    for (bid, block) in orbits(&gens, s.degree()).into_iter().enumerate() {
        for p in block {
            ids[p] = bid;
        }
    }
    ids
}

/// True iff every maximal parabolic subgroup has at least two orbits.
/// Fracture graphs exist exactly in this case.
pub fn all_maximal_parabolics_intransitive(s: &Sggi) -> bool {
    (0..s.rank()).all(|i| {
        let ids = parabolic_orbit_ids(s, i);
        ids.iter().any(|&b| b != ids[0])
    })
}

/// One chosen edge per label, satisfying the distinct-orbit condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractureGraph {
    base: CprGraph,
    chosen: BTreeMap<usize, Edge>,
}

impl FractureGraph {
    fn validate(base: &CprGraph, chosen: &BTreeMap<usize, Edge>) -> Result<()> {
        let n = base.degree();
        let r = base.rank();
        if chosen.len() != r {
            return Err(Error::FractureInvariant {
                detail: format!("{} edges chosen, rank is {}", chosen.len(), r),
            });
        }
        // Forest check and component count via union-find.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for e in chosen.values() {
            let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if ru == rv {
                return Err(Error::FractureInvariant {
                    detail: format!("edge ({}, {}) closes a cycle", e.u + 1, e.v + 1),
                });
            }
            parent[ru] = rv;
        }
        let components = (0..n)
            .filter(|&x| find(&mut parent, x) == x)
            .count();
        if n != r + components {
            return Err(Error::FractureInvariant {
                detail: format!("{components} components on {n} vertices with {r} edges"),
            });
        }
        Ok(())
    }

    pub fn base(&self) -> &CprGraph {
        &self.base
    }

    pub fn chosen(&self) -> &BTreeMap<usize, Edge> {
        &self.chosen
    }

    pub fn chosen_edge(&self, label: usize) -> Option<&Edge> {
        self.chosen.get(&label)
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Connected components of the chosen subgraph, blocks sorted by least
    /// vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.base.degree();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in self.chosen.values() {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut block = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < block.len() {
                let p = block[head];
                head += 1;
                for &q in &adj[p] {
                    if !seen[q] {
                        seen[q] = true;
                        block.push(q);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// Maximum vertex degree in the chosen subgraph.
    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.base.degree()];
        for e in self.chosen.values() {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// The chosen subgraph as a graph in its own right.
    pub fn chosen_graph(&self) -> CprGraph {
        let edges: Vec<(usize, usize, usize)> = self
            .chosen
            .values()
            .map(|e| (e.u, e.v, e.label))
            .collect();
        CprGraph::new(self.base.degree(), self.base.rank(), &edges)
            .expect("one edge per label is a valid graph")
    }

    /// DOT rendering with chosen edges solid and the rest dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph fracture {\n  node [shape=circle];\n");
        for v in 0..self.base.degree() {
            let _ = writeln!(out, "  {};", v + 1);
        }
        for e in self.base.edges() {
            let style = if self.chosen.get(&e.label) == Some(e) {
                "solid"
            } else {
                "dashed"
            };
            let _ = writeln!(
                out,
                "  {} -- {} [label=\"{}\", style={}];",
                e.u + 1,
                e.v + 1,
                e.label,
                style
            );
        }
        out.push_str("}\n");
        out
    }
}

/// The canonical fracture graph: for each label, the first edge in
/// `(label, u, v)` order whose endpoints lie in distinct orbits of the
/// corresponding maximal parabolic.
pub fn fracture_graph(s: &Sggi) -> Result<FractureGraph> {
    let base = s.to_graph();
    let mut chosen = BTreeMap::new();
    for label in 0..s.rank() {
        let ids = parabolic_orbit_ids(s, label);
        let edge = base
            .label_edges(label)
            .find(|e| ids[e.u] != ids[e.v])
            .ok_or(Error::TransitiveParabolic { label })?;
        chosen.insert(label, *edge);
    }
    FractureGraph::validate(&base, &chosen)?;
    Ok(FractureGraph { base, chosen })
}

/// Every label-wise choice satisfying the distinct-orbit condition, in
/// lexicographic order of the choices. Errors when more than `cap` graphs
/// exist.
pub fn enumerate_fracture_graphs(s: &Sggi, cap: u64) -> Result<Vec<FractureGraph>> {
    let base = s.to_graph();
    let mut per_label: Vec<Vec<Edge>> = Vec::with_capacity(s.rank());
    for label in 0..s.rank() {
        let ids = parabolic_orbit_ids(s, label);
        let qualifying: Vec<Edge> = base
            .label_edges(label)
            .filter(|e| ids[e.u] != ids[e.v])
            .copied()
            .collect();
        if qualifying.is_empty() {
            return Err(Error::TransitiveParabolic { label });
        }
        per_label.push(qualifying);
    }
    let total: u64 = per_label
        .iter()
        .map(|v| v.len() as u64)
        .try_fold(1u64, u64::checked_mul)
        .unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::FractureOverflow { cap });
    }
    let mut graphs = Vec::with_capacity(total as usize);
    let mut picks = vec![0usize; s.rank()];
    loop {
        let chosen: BTreeMap<usize, Edge> = picks
            .iter()
            .enumerate()
            .map(|(label, &k)| (label, per_label[label][k]))
            .collect();
        FractureGraph::validate(&base, &chosen)?;
        graphs.push(FractureGraph {
            base: base.clone(),
            chosen,
        });
        // next choice vector
        let mut pos = s.rank();
        loop {
            if pos == 0 {
                return Ok(graphs);
            }
            pos -= 1;
            picks[pos] += 1;
            if picks[pos] < per_label[pos].len() {
                break;
            }
            picks[pos] = 0;
        }
    }
}

/// True iff every pair of edges sharing a vertex has labels differing by
/// exactly one.
pub fn is_linear(g: &CprGraph) -> bool {
    let edges = g.edges();
    for (a, ea) in edges.iter().enumerate() {
        for eb in edges.iter().skip(a + 1) {
            let shares = ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v;
            if shares && ea.label.abs_diff(eb.label) != 1 {
                return false;
            }
        }
    }
    true
}

/// All simple cycles of the graph as edge lists, intended for small graphs
/// only. Parallel edges with distinct labels count as 2-cycles.
pub fn simple_cycles(g: &CprGraph) -> Vec<Vec<Edge>> {
    let n = g.degree();
    let edges = g.edges();
    let mut found: std::collections::BTreeSet<Vec<Edge>> = std::collections::BTreeSet::new();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, edge idx)
    for (idx, e) in edges.iter().enumerate() {
        adj[e.u].push((e.v, idx));
        adj[e.v].push((e.u, idx));
    }
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        start: usize,
        current: usize,
        path: &mut Vec<usize>,
        path_edges: &mut Vec<usize>,
        adj: &[Vec<(usize, usize)>],
        edges: &[Edge],
        found: &mut std::collections::BTreeSet<Vec<Edge>>,
    ) {
        for &(next, eidx) in &adj[current] {
            if path_edges.contains(&eidx) || next < start {
                continue;
            }
            if next == start {
                if path.len() >= 2 {
                    let mut cycle: Vec<Edge> =
                        path_edges.iter().map(|&k| edges[k]).collect();
                    cycle.push(edges[eidx]);
                    cycle.sort_unstable();
                    found.insert(cycle);
                }
                continue;
            }
            if path.contains(&next) {
                continue;
            }
            path_edges.push(eidx);
            path.push(next);
            dfs(start, next, path, path_edges, adj, edges, found);
            path.pop();
            path_edges.pop();
        }
    }
    for start in 0..n {
        let mut path = vec![start];
        let mut path_edges = Vec::new();
        dfs(start, start, &mut path, &mut path_edges, &adj, edges, &mut found);
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(n: usize) -> Sggi {
        CprGraph::path(&(0..n - 1).collect::<Vec<_>>())
            .unwrap()
            .to_sggi()
            .unwrap()
    }

    #[test]
    fn parabolic_examples() {
        let s = simplex(5);
        let full = parabolic(&s, &[]).unwrap();
        assert_eq!(full.order(), 120u32.into());

        let g0 = maximal_parabolic(&s, 0).unwrap();
        assert_eq!(g0.order(), 24u32.into());
        assert!((0..5).any(|p| g0.generators().iter().all(|g| g.apply(p) == p)));

        assert!(matches!(
            parabolic(&s, &[0, 1, 2, 3]),
            Err(Error::EmptyParabolic)
        ));
        assert!(matches!(
            parabolic(&s, &[7]),
            Err(Error::RankIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn simplex_fracture_is_the_whole_path() {
        let s = simplex(5);
        assert!(all_maximal_parabolics_intransitive(&s));
        let f = fracture_graph(&s).unwrap();
        assert_eq!(f.chosen().len(), 4);
        assert_eq!(f.component_count(), 1);
        assert_eq!(f.max_degree(), 2);
        let all = enumerate_fracture_graphs(&s, 100).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn single_edge_rank_one() {
        let s = Sggi::new(2, vec![Permutation::parse("(1 2)", 2).unwrap()]).unwrap();
        let f = fracture_graph(&s).unwrap();
        assert_eq!(f.max_degree(), 1);
        assert_eq!(f.component_count(), 1);
    }

    #[test]
    fn linearity_examples() {
        assert!(is_linear(&CprGraph::path(&[0, 1, 2, 3]).unwrap()));
        assert!(is_linear(&CprGraph::path(&[1, 0, 1, 2]).unwrap()));
        // labels 0 and 2 meeting at a vertex
        let g = CprGraph::new(5, 3, &[(0, 1, 0), (1, 2, 2), (3, 4, 1)]).unwrap();
        assert!(!is_linear(&g));
    }

    #[test]
    fn enumeration_cap() {
        let s = simplex(4);
        assert!(matches!(
            enumerate_fracture_graphs(&s, 0),
            Err(Error::FractureOverflow { cap: 0 })
        ));
    }

    #[test]
    fn cycles_of_a_square_with_double_edge() {
        let g = CprGraph::new(
            4,
            3,
            &[(0, 1, 0), (1, 2, 2), (2, 3, 0), (0, 3, 2), (0, 1, 1)],
        )
        .unwrap();
        let cycles = simple_cycles(&g);
        assert!(cycles.iter().any(|c| c.len() == 2)); // parallel 0/1 edges
        assert!(cycles.iter().any(|c| c.len() == 4)); // the square
    }
}
