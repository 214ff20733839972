//! Plain undirected graphs on dense vertex ids, backed by one bitset row per vertex.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A simple graph on vertices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<FixedBitSet>,
}

impl SimpleGraph {
    pub fn empty(order: usize) -> Self {
        SimpleGraph {
            adj: vec![FixedBitSet::with_capacity(order); order],
        }
    }

    /// Builds a graph from an edge list. Self-loops and out-of-range ids are
    /// rejected; repeated edges collapse.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = SimpleGraph::empty(order);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(order: usize) -> Self {
        let mut g = SimpleGraph::empty(order);
        for u in 0..order {
            for v in u + 1..order {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::complete_multipartite(&[a, b])
    }

    /// Complete multipartite graph; part `i` occupies a contiguous id range.
    pub fn complete_multipartite(sizes: &[usize]) -> Self {
        let order = sizes.iter().sum();
        let mut part_of = Vec::with_capacity(order);
        for (i, &s) in sizes.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, s));
        }
        let mut g = SimpleGraph::empty(order);
        for u in 0..order {
            for v in u + 1..order {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn cycle(order: usize) -> Self {
        let mut g = SimpleGraph::empty(order);
        if order >= 3 {
            for u in 0..order {
                g.add_edge(u, (u + 1) % order);
            }
        }
        g
    }

    pub fn path(order: usize) -> Self {
        let mut g = SimpleGraph::empty(order);
        for u in 1..order {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub(crate) fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Minimum degree; 0 for the null graph.
    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.adj[u]
                .ones()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.adj[x].ones() {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Largest component order; 0 for the null graph.
    pub fn largest_component(&self) -> usize {
        self.components().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// A proper 2-coloring as `(side_0, side_1)`, or `None` if the graph has an
    /// odd cycle. Each component's smallest vertex goes to side 0.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.order();
        let mut side = vec![u8::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.adj[x].ones() {
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return None;
                    }
                }
            }
        }
        let left = (0..n).filter(|&v| side[v] == 0).collect();
        let right = (0..n).filter(|&v| side[v] == 1).collect();
        Some((left, right))
    }

    /// Vertices with at least one neighbor.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) > 0).collect()
    }

    /// Subgraph induced on `keep`, relabeled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_families() {
        assert_eq!(SimpleGraph::complete(5).edge_count(), 10);
        assert_eq!(SimpleGraph::complete_bipartite(3, 4).edge_count(), 12);
        assert_eq!(SimpleGraph::cycle(6).edge_count(), 6);
        assert_eq!(SimpleGraph::path(4).min_degree(), 1);
        assert_eq!(
            SimpleGraph::complete_multipartite(&[3, 3, 1]).edge_count(),
            9 + 3 + 3
        );
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            SimpleGraph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        ));
        assert!(matches!(
            SimpleGraph::from_edges(3, [(1, 1)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bipartition_and_components() {
        let k33 = SimpleGraph::complete_bipartite(3, 3);
        let (l, r) = k33.bipartition().unwrap();
        assert_eq!(l, vec![0, 1, 2]);
        assert_eq!(r, vec![3, 4, 5]);
        assert!(SimpleGraph::cycle(5).bipartition().is_none());

        let g = SimpleGraph::from_edges(6, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3, 4], vec![5]]);
        assert_eq!(g.largest_component(), 3);
        assert_eq!(g.non_isolated(), vec![0, 1, 2, 3, 4]);
    }
}
