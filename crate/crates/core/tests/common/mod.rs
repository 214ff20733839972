//! Brute-force oracles shared by the integration tests. Each one is written
//! from the definitions alone and shares no code with the library's search
//! or decomposition routines.
#![allow(dead_code)]

use gallai::{ColoredKn, SimpleGraph};

/// Whether `g` has a cycle through exactly `len` distinct vertices, by trying
/// every vertex sequence that starts at its smallest member.
pub fn brute_has_cycle(g: &SimpleGraph, len: usize) -> bool {
    let n = g.order();
    if len < 3 || len > n {
        return false;
    }
    fn extend(g: &SimpleGraph, path: &mut Vec<usize>, used: &mut [bool], len: usize) -> bool {
        let last = *path.last().unwrap();
        if path.len() == len {
            return g.has_edge(last, path[0]);
        }
        for v in path[0] + 1..g.order() {
            if !used[v] && g.has_edge(last, v) {
                used[v] = true;
                path.push(v);
                if extend(g, path, used, len) {
                    return true;
                }
                path.pop();
                used[v] = false;
            }
        }
        false
    }
    (0..n).any(|start| {
        let mut used = vec![false; n];
        used[start] = true;
        extend(g, &mut vec![start], &mut used, len)
    })
}

/// Checks a vertex list is a cycle of `g` of the given length.
pub fn is_cycle_in(g: &SimpleGraph, cycle: &[usize], len: usize) -> bool {
    let mut seen = vec![false; g.order()];
    cycle.len() == len
        && cycle
            .iter()
            .all(|&v| v < g.order() && !std::mem::replace(&mut seen[v], true))
        && (0..len).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % len]))
}

/// Whether any triangle has three distinct colors.
pub fn brute_has_rainbow(c: &ColoredKn) -> bool {
    let n = c.order();
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                let (x, y, z) = (c.color(a, b), c.color(a, d), c.color(b, d));
                if x != y && x != z && y != z {
                    return true;
                }
            }
        }
    }
    false
}

/// All Gallai colorings of `K_order` with colors `1..=k`, as edge-color
/// vectors in lexicographic pair order, by filtering every `k^m` coloring.
pub fn brute_gallai_colorings(order: usize, k: usize) -> Vec<Vec<u8>> {
    let m = order * order.saturating_sub(1) / 2;
    let total = (k as u64).pow(m as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut edges = Vec::with_capacity(m);
        let mut x = code;
        for _ in 0..m {
            edges.push((x % k as u64) as u8 + 1);
            x /= k as u64;
        }
        edges.reverse();
        let c = ColoredKn::from_edge_colors(order, k, edges.clone()).unwrap();
        if !brute_has_rainbow(&c) {
            out.push(edges);
        }
    }
    out.sort();
    out
}

/// Whether colors appear in first-use order 1, 2, 3, ….
pub fn is_color_canonical(edges: &[u8]) -> bool {
    let mut next = 1;
    for &e in edges {
        if e > next {
            return false;
        }
        if e == next {
            next += 1;
        }
    }
    true
}

/// Components of the graph on `0..size` with the given edges, via union-find.
pub fn uf_component_count(size: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..size).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut count = size;
    for (u, v) in edges {
        let (a, b) = (root(&mut parent, u), root(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Whether `g` is exactly the complete bipartite graph between `left` and `right`.
pub fn is_complete_bipartite_on(g: &SimpleGraph, left: &[usize], right: &[usize]) -> bool {
    let mut side = vec![None; g.order()];
    for &v in left {
        side[v] = Some(0);
    }
    for &v in right {
        side[v] = Some(1);
    }
    left.len() + right.len() == g.order()
        && side.iter().all(Option::is_some)
        && (0..g.order())
            .all(|u| (u + 1..g.order()).all(|v| g.has_edge(u, v) == (side[u] != side[v])))
}
