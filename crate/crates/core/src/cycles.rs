//! Exact fixed-length cycle search and the cycle-existence primitives built on it.
//!
//! The search is plain backtracking from an anchor vertex (the smallest vertex
//! on the cycle), restricted to the 2-core of the vertices not below the
//! anchor, with a BFS distance bound back to the anchor and a parity cut on
//! bipartite components. Every node expansion is charged against a budget so
//! that pathological inputs fail loudly instead of hanging.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, ColoredKn};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Default node-expansion budget for a single search call.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A cycle, given as its vertices in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    /// The color class the cycle lives in, when searched inside a coloring.
    pub color: Option<Color>,
    pub vertices: Vec<usize>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.vertices.len();
        (0..l).map(move |i| (self.vertices[i], self.vertices[(i + 1) % l]))
    }

    fn has_distinct_vertices(&self, order: usize) -> bool {
        let mut seen = vec![false; order];
        self.vertices
            .iter()
            .all(|&v| v < order && !std::mem::replace(&mut seen[v], true))
    }

    /// Checks the witness is a cycle of exactly `len` vertices in `g`.
    pub fn validate_in_graph(&self, g: &SimpleGraph, len: usize) -> bool {
        self.len() == len
            && len >= 3
            && self.has_distinct_vertices(g.order())
            && self.edges().all(|(u, v)| g.has_edge(u, v))
    }

    /// Checks the witness is a cycle of exactly `len` vertices whose edges all
    /// carry the witness color.
    pub fn validate_in_coloring(&self, c: &ColoredKn, len: usize) -> bool {
        let Some(color) = self.color else {
            return false;
        };
        self.len() == len
            && len >= 3
            && self.has_distinct_vertices(c.order())
            && self.edges().all(|(u, v)| c.color(u, v) == color)
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))?;
        if let Some(c) = self.color {
            write!(f, " (color {c})")?;
        }
        Ok(())
    }
}

/// Result of a single exhaustive search, including the work it took.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub cycle: Option<Vec<usize>>,
    pub expansions: u64,
}

/// 2-core of the subgraph induced on `allowed`.
fn two_core(g: &SimpleGraph, allowed: &FixedBitSet) -> FixedBitSet {
    let mut alive = allowed.clone();
    let mut deg: Vec<usize> = (0..g.order())
        .map(|v| {
            if alive.contains(v) {
                g.neighbor_set(v).intersection(&alive).count()
            } else {
                0
            }
        })
        .collect();
    let mut stack: Vec<usize> = alive.ones().filter(|&v| deg[v] < 2).collect();
    while let Some(v) = stack.pop() {
        if !alive.contains(v) {
            continue;
        }
        alive.set(v, false);
        for w in g.neighbor_set(v).ones() {
            if alive.contains(w) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    alive
}

/// BFS distances from `s` inside `allowed`, plus whether that component is bipartite.
fn distances(g: &SimpleGraph, s: usize, allowed: &FixedBitSet) -> (Vec<usize>, usize, bool) {
    let mut dist = vec![usize::MAX; g.order()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut reached = 1;
    let mut bipartite = true;
    while let Some(x) = queue.pop_front() {
        for y in g.neighbor_set(x).ones() {
            if !allowed.contains(y) {
                continue;
            }
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                reached += 1;
                queue.push_back(y);
            } else if dist[y] % 2 == dist[x] % 2 {
                bipartite = false;
            }
        }
    }
    (dist, reached, bipartite)
}

struct Search<'a> {
    g: &'a SimpleGraph,
    len: usize,
    anchor: usize,
    allowed: FixedBitSet,
    dist: Vec<usize>,
    path: Vec<usize>,
    on_path: FixedBitSet,
    scratch: Vec<FixedBitSet>,
    expansions: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self) -> Result<bool> {
        let depth = self.path.len();
        let x = self.path[depth - 1];
        // candidates = N(x) ∩ allowed ∖ path
        let mut cand = std::mem::take(&mut self.scratch[depth]);
        cand.clone_from(self.g.neighbor_set(x));
        cand.intersect_with(&self.allowed);
        cand.difference_with(&self.on_path);
        let remaining = self.len - depth;
        let mut found = false;
        for y in cand.ones() {
            if self.dist[y] > remaining {
                continue;
            }
            if depth + 1 == self.len && y < self.path[1] {
                // each cycle is met in both directions; keep one
                continue;
            }
            self.expansions += 1;
            if self.expansions > self.budget {
                self.scratch[depth] = cand;
                return Err(Error::BudgetExceeded(self.budget));
            }
            self.path.push(y);
            if depth + 1 == self.len {
                found = true;
                break;
            }
            self.on_path.insert(y);
            if self.extend()? {
                found = true;
                break;
            }
            self.on_path.set(y, false);
            self.path.pop();
        }
        self.scratch[depth] = cand;
        Ok(found)
    }
}

/// Exhaustive search for a cycle on exactly `len` vertices, reporting the
/// number of node expansions spent.
pub fn search_cycle(g: &SimpleGraph, len: usize, budget: u64) -> Result<SearchOutcome> {
    if len < 3 {
        return Err(Error::Precondition(format!("cycle length {len} < 3")));
    }
    let n = g.order();
    let mut expansions = 0;
    if len > n {
        return Ok(SearchOutcome {
            cycle: None,
            expansions,
        });
    }
    let mut everything = FixedBitSet::with_capacity(n);
    everything.insert_range(..);
    let core = two_core(g, &everything);
    for anchor in core.ones() {
        let mut above = core.clone();
        above.set_range(..anchor, false);
        let allowed = two_core(g, &above);
        if !allowed.contains(anchor) {
            continue;
        }
        let (dist, reached, bipartite) = distances(g, anchor, &allowed);
        if reached < len || (bipartite && len % 2 == 1) {
            continue;
        }
        let mut on_path = FixedBitSet::with_capacity(n);
        on_path.insert(anchor);
        let mut search = Search {
            g,
            len,
            anchor,
            allowed,
            dist,
            path: vec![anchor],
            on_path,
            scratch: vec![FixedBitSet::with_capacity(n); len + 1],
            expansions,
            budget,
        };
        let found = search.extend()?;
        expansions = search.expansions;
        if found {
            debug_assert!(g.has_edge(*search.path.last().unwrap(), search.anchor));
            return Ok(SearchOutcome {
                cycle: Some(search.path),
                expansions,
            });
        }
    }
    Ok(SearchOutcome {
        cycle: None,
        expansions,
    })
}

/// A cycle on exactly `len` vertices of `g`, or `None` if there is none.
pub fn has_cycle_length(g: &SimpleGraph, len: usize) -> Result<Option<CycleWitness>> {
    has_cycle_length_with_budget(g, len, DEFAULT_BUDGET)
}

pub fn has_cycle_length_with_budget(
    g: &SimpleGraph,
    len: usize,
    budget: u64,
) -> Result<Option<CycleWitness>> {
    Ok(search_cycle(g, len, budget)?
        .cycle
        .map(|vertices| CycleWitness {
            color: None,
            vertices,
        }))
}

/// A monochromatic cycle on `len` vertices, in `color` or in any color when
/// `color` is `None`. The budget covers the whole call.
pub fn find_mono_cycle(
    c: &ColoredKn,
    len: usize,
    color: Option<Color>,
) -> Result<Option<CycleWitness>> {
    find_mono_cycle_with_budget(c, len, color, DEFAULT_BUDGET)
}

pub fn find_mono_cycle_with_budget(
    c: &ColoredKn,
    len: usize,
    color: Option<Color>,
    budget: u64,
) -> Result<Option<CycleWitness>> {
    if len < 3 {
        return Err(Error::Precondition(format!("cycle length {len} < 3")));
    }
    let mut classes: Vec<(Color, SimpleGraph)> = match color {
        Some(col) => vec![(col, c.color_class(col)?)],
        None => c
            .color_classes()
            .into_iter()
            .enumerate()
            .map(|(i, g)| ((i + 1) as Color, g))
            .collect(),
    };
    // dense classes first: cycles there are found fastest
    classes.sort_by_key(|(col, g)| (std::cmp::Reverse(g.edge_count()), *col));
    let mut left = budget;
    for (col, g) in classes {
        if g.largest_component() < len {
            continue;
        }
        let outcome = search_cycle(&g, len, left)?;
        if let Some(vertices) = outcome.cycle {
            return Ok(Some(CycleWitness {
                color: Some(col),
                vertices,
            }));
        }
        left -= outcome.expansions;
    }
    Ok(None)
}

/// Outcome of checking a graph against the minimum-degree pancyclicity theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BondyOutcome {
    /// One cycle for every length `3..=|G|`, keyed by length.
    Pancyclic(BTreeMap<usize, CycleWitness>),
    /// `G` is `K_{n/2,n/2}` with these sides.
    BalancedBipartite { left: Vec<usize>, right: Vec<usize> },
    /// `δ(G) < |G|/2`.
    NotApplicable,
}

fn balanced_complete_bipartite(g: &SimpleGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    if !n.is_multiple_of(2) {
        return None;
    }
    let (left, right) = g.bipartition()?;
    let complete = left.len() == n / 2
        && left
            .iter()
            .all(|&u| right.iter().all(|&v| g.has_edge(u, v)));
    complete.then_some((left, right))
}

/// Shortcut along a chord of a Hamilton cycle: if `ham[i]` and
/// `ham[i + len - 1]` are adjacent, the arc between them closes a `C_len`.
fn chord_cycle(g: &SimpleGraph, ham: &[usize], len: usize) -> Option<Vec<usize>> {
    let n = ham.len();
    (0..n).find_map(|i| {
        let j = (i + len - 1) % n;
        g.has_edge(ham[i], ham[j])
            .then(|| (0..len).map(|t| ham[(i + t) % n]).collect())
    })
}

/// Certifies a graph with `δ(G) ≥ |G|/2`: either cycles of every length
/// `3..=|G|`, or an identification with the balanced complete bipartite graph.
pub fn bondy_certificate(g: &SimpleGraph) -> Result<BondyOutcome> {
    let n = g.order();
    if n < 2 || 2 * g.min_degree() < n {
        return Ok(BondyOutcome::NotApplicable);
    }
    if let Some((left, right)) = balanced_complete_bipartite(g) {
        return Ok(BondyOutcome::BalancedBipartite { left, right });
    }
    let mut cycles = BTreeMap::new();
    let Some(ham) = has_cycle_length(g, n)? else {
        return Err(Error::LemmaRefuted(format!(
            "δ ≥ n/2 graph on {n} vertices without a Hamilton cycle"
        )));
    };
    for len in (3..n).rev() {
        let vertices = match chord_cycle(g, &ham.vertices, len) {
            Some(v) => v,
            None => match has_cycle_length(g, len)? {
                Some(w) => w.vertices,
                None => {
                    return Err(Error::LemmaRefuted(format!(
                        "δ ≥ n/2 graph on {n} vertices, not K_{{n/2,n/2}}, without a C_{len}"
                    )))
                }
            },
        };
        cycles.insert(
            len,
            CycleWitness {
                color: None,
                vertices,
            },
        );
    }
    cycles.insert(n, ham);
    Ok(BondyOutcome::Pancyclic(cycles))
}

/// Identification of a bipartite graph with the five-part gadget: `A1` complete
/// to `B1 ∪ {b3}`, `A2` complete to `B2 ∪ {b3}`, nothing else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G0Witness {
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub b3: usize,
}

impl G0Witness {
    /// Structural match against the gadget. `a_side` and `b_side` are the two
    /// sides of the declared bipartition.
    pub fn recognize(g: &SimpleGraph, a_side: &[usize], b_side: &[usize]) -> Option<G0Witness> {
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for &a in a_side {
            groups.entry(g.neighbors(a).collect()).or_default().push(a);
        }
        if groups.len() != 2 {
            return None;
        }
        let mut it = groups.into_iter();
        let (n1, mut a1) = it.next().unwrap();
        let (n2, mut a2) = it.next().unwrap();
        let shared: Vec<usize> = n1.iter().copied().filter(|v| n2.contains(v)).collect();
        let &[b3] = shared.as_slice() else {
            return None;
        };
        let mut b1: Vec<usize> = n1.into_iter().filter(|&v| v != b3).collect();
        let mut b2: Vec<usize> = n2.into_iter().filter(|&v| v != b3).collect();
        if a1.iter().min() > a2.iter().min() {
            std::mem::swap(&mut a1, &mut a2);
            std::mem::swap(&mut b1, &mut b2);
        }
        let w = G0Witness { a1, a2, b1, b2, b3 };
        let covers_b = b_side.len() == w.b1.len() + w.b2.len() + 1;
        (covers_b && w.validate(g)).then_some(w)
    }

    /// Checks every structural property against `g`: parts nonempty and
    /// disjoint, `|B1| = |B2|`, they cover all vertices, and the edge set is
    /// exactly the two complete joins.
    pub fn validate(&self, g: &SimpleGraph) -> bool {
        let n = g.order();
        let parts: [&[usize]; 5] = [
            &self.a1,
            &self.a2,
            &self.b1,
            &self.b2,
            std::slice::from_ref(&self.b3),
        ];
        if parts.iter().any(|p| p.is_empty()) || self.b1.len() != self.b2.len() {
            return false;
        }
        let mut label = vec![usize::MAX; n];
        for (i, p) in parts.iter().enumerate() {
            for &v in *p {
                if v >= n || label[v] != usize::MAX {
                    return false;
                }
                label[v] = i;
            }
        }
        if label.contains(&usize::MAX) {
            return false;
        }
        // A1=0 A2=1 B1=2 B2=3 B3=4
        let should_touch = |x: usize, y: usize| {
            let (a, b) = if x < y { (x, y) } else { (y, x) };
            matches!((a, b), (0, 2) | (0, 4) | (1, 3) | (1, 4))
        };
        (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == should_touch(label[u], label[v])))
    }
}

/// Either outcome of the bipartite even-cycle dichotomy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvenCycleOutcome {
    Cycle(CycleWitness),
    G0(G0Witness),
}

/// Finds a `C_{2·half_len}` in a bipartite graph with sides `a_side`,
/// `b_side`, or identifies the graph as the gadget `G0`.
///
/// Preconditions: `|A| ≥ 2`, `|B| ≥ 4`, every vertex of `A` has degree at
/// least `⌈(|B|+1)/2⌉`, `2 ≤ half_len ≤ min(|A|, (|B|-1)/2)`, and every edge
/// runs between the sides. A violated precondition is reported as
/// [`Error::Precondition`]; if both outcomes fail under valid preconditions the
/// result is [`Error::LemmaRefuted`].
pub fn bipartite_even_cycle(
    g: &SimpleGraph,
    a_side: &[usize],
    b_side: &[usize],
    half_len: usize,
) -> Result<EvenCycleOutcome> {
    let n = g.order();
    let (na, nb) = (a_side.len(), b_side.len());
    let pre = |m: String| Err(Error::Precondition(m));
    if na < 2 || nb < 4 {
        return pre(format!("need |A| ≥ 2 and |B| ≥ 4, got {na} and {nb}"));
    }
    let mut side = vec![u8::MAX; n];
    for (s, vs) in [(0u8, a_side), (1u8, b_side)] {
        for &v in vs {
            if v >= n || side[v] != u8::MAX {
                return pre(format!("vertex {v} out of range or listed twice"));
            }
            side[v] = s;
        }
    }
    if side.contains(&u8::MAX) {
        return pre("bipartition does not cover every vertex".into());
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return pre(format!("edge {{{u}, {v}}} inside one side"));
    }
    let min_deg = (nb + 2) / 2; // ⌈(|B|+1)/2⌉
    if let Some(&a) = a_side.iter().find(|&&a| g.degree(a) < min_deg) {
        return pre(format!("vertex {a} has degree {} < {min_deg}", g.degree(a)));
    }
    if half_len < 2 || half_len > na || 2 * half_len + 1 > nb {
        return pre(format!(
            "half length {half_len} outside 2..=min(|A|, (|B|-1)/2)"
        ));
    }
    if let Some(w) = has_cycle_length(g, 2 * half_len)? {
        return Ok(EvenCycleOutcome::Cycle(w));
    }
    match G0Witness::recognize(g, a_side, b_side) {
        Some(w) => Ok(EvenCycleOutcome::G0(w)),
        None => Err(Error::LemmaRefuted(format!(
            "bipartite graph with |A|={na}, |B|={nb} has no C_{} and is not G0",
            2 * half_len
        ))),
    }
}

/// A `C_{2n+1}` in the complete multipartite graph over `parts`, using only
/// edges between different parts.
///
/// Requires at least `2n+1` vertices in total and every part of size at most
/// `n`. The cycle is written down directly: list the chosen vertices grouped
/// by part and place the `i`-th at cycle position `2i mod (2n+1)`; cyclic
/// neighbors are then `n` or `n+1` apart in the list, so never in one part.
pub fn multipartite_odd_cycle(parts: &[Vec<usize>], n: usize) -> Result<CycleWitness> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let total: usize = parts.iter().map(Vec::len).sum();
    let largest = parts.iter().map(Vec::len).max().unwrap_or(0);
    let len = 2 * n + 1;
    if total < len {
        return Err(Error::Precondition(format!(
            "{total} vertices < 2n+1 = {len}"
        )));
    }
    if largest > n {
        return Err(Error::Precondition(format!(
            "largest part {largest} > n = {n}"
        )));
    }
    let mut seen = std::collections::HashSet::new();
    if !parts.iter().flatten().all(|v| seen.insert(*v)) {
        return Err(Error::Precondition("parts are not disjoint".into()));
    }
    let listed: Vec<usize> = parts.iter().flatten().copied().take(len).collect();
    let mut cycle = vec![0; len];
    for (i, &v) in listed.iter().enumerate() {
        cycle[(2 * i) % len] = v;
    }
    Ok(CycleWitness {
        color: None,
        vertices: cycle,
    })
}
