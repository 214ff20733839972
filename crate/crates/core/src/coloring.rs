//! Edge colorings of complete graphs and the primitive queries on them.
//!
//! Vertices are `0..N`, colors are `1..=k`. Edge colors live in a flat
//! upper-triangular array, so the natural index order of the array is the
//! lexicographic order on pairs `(u, v)` with `u < v`.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub type Color = u8;

/// Largest supported palette.
pub const MAX_COLORS: usize = Color::MAX as usize;

/// Number of unordered pairs on `order` vertices.
pub const fn pair_count(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

/// Position of the pair `{u, v}` (`u < v`) in lexicographic pair order.
#[inline]
pub(crate) fn pair_index(order: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < order);
    u * (2 * order - u - 1) / 2 + (v - u - 1)
}

/// A `k`-edge-coloring of `K_N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredKn {
    order: usize,
    color_count: usize,
    edges: Vec<Color>,
}

/// A triangle whose three edges carry three distinct colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleWitness {
    pub vertices: (usize, usize, usize),
    /// Colors of the edges `ab`, `ac`, `bc`.
    pub colors: (Color, Color, Color),
}

impl fmt::Display for TriangleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.vertices;
        let (x, y, z) = self.colors;
        write!(f, "({a}, {b}, {c}) with colors {x}, {y}, {z}")
    }
}

fn check_palette(color_count: usize) -> Result<()> {
    if color_count == 0 || color_count > MAX_COLORS {
        return Err(Error::Precondition(format!(
            "color count {color_count} outside 1..={MAX_COLORS}"
        )));
    }
    Ok(())
}

impl ColoredKn {
    /// `K_order` with every edge in `color`.
    pub fn monochromatic(order: usize, color_count: usize, color: Color) -> Result<Self> {
        Self::from_fn(order, color_count, |_, _| color)
    }

    /// Builds a coloring by asking `f(u, v)` (with `u < v`) for every pair.
    pub fn from_fn<F>(order: usize, color_count: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Color,
    {
        check_palette(color_count)?;
        let mut edges = Vec::with_capacity(pair_count(order));
        for u in 0..order {
            for v in u + 1..order {
                edges.push(f(u, v));
            }
        }
        Self::from_edge_colors(order, color_count, edges)
    }

    /// Builds a coloring from colors listed in lexicographic pair order.
    pub fn from_edge_colors(order: usize, color_count: usize, edges: Vec<Color>) -> Result<Self> {
        check_palette(color_count)?;
        if order == 0 {
            return Err(Error::Precondition(
                "a coloring needs at least one vertex".into(),
            ));
        }
        if edges.len() != pair_count(order) {
            return Err(Error::Precondition(format!(
                "expected {} edge colors for order {order}, got {}",
                pair_count(order),
                edges.len()
            )));
        }
        if let Some(&bad) = edges.iter().find(|&&c| c == 0 || c as usize > color_count) {
            return Err(Error::ColorOutOfRange {
                color: bad as usize,
                max: color_count,
            });
        }
        Ok(ColoredKn {
            order,
            color_count,
            edges,
        })
    }

    pub(crate) fn from_raw(order: usize, color_count: usize, edges: Vec<Color>) -> Self {
        debug_assert_eq!(edges.len(), pair_count(order));
        ColoredKn {
            order,
            color_count,
            edges,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    /// Edge colors in lexicographic pair order.
    pub fn edge_colors(&self) -> &[Color] {
        &self.edges
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v, "no loop at vertex {u}");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges[pair_index(self.order, a, b)]
    }

    /// Same coloring with the palette widened to `color_count`.
    pub fn with_color_count(&self, color_count: usize) -> Result<Self> {
        Self::from_edge_colors(self.order, color_count, self.edges.clone())
    }

    /// Sorted list of colors that appear on at least one edge.
    pub fn used_colors(&self) -> Vec<Color> {
        let mut seen = vec![false; self.color_count + 1];
        for &c in &self.edges {
            seen[c as usize] = true;
        }
        (1..=self.color_count)
            .filter(|&c| seen[c])
            .map(|c| c as Color)
            .collect()
    }

    /// Whether every color in `1..=k` is used.
    pub fn is_surjective(&self) -> bool {
        self.used_colors().len() == self.color_count
    }

    /// Lexicographically least rainbow triangle, if any.
    pub fn find_rainbow_triangle(&self) -> Option<TriangleWitness> {
        let n = self.order;
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.edges[pair_index(n, a, b)];
                for c in b + 1..n {
                    let ac = self.edges[pair_index(n, a, c)];
                    if ac == ab {
                        continue;
                    }
                    let bc = self.edges[pair_index(n, b, c)];
                    if bc != ab && bc != ac {
                        return Some(TriangleWitness {
                            vertices: (a, b, c),
                            colors: (ab, ac, bc),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_gallai(&self) -> bool {
        self.find_rainbow_triangle().is_none()
    }

    /// Errors with the least rainbow triangle if this is not a Gallai coloring.
    pub fn ensure_gallai(&self) -> Result<()> {
        match self.find_rainbow_triangle() {
            Some(t) => Err(Error::RainbowTriangle(t)),
            None => Ok(()),
        }
    }

    /// The spanning subgraph formed by the edges of `color`.
    pub fn color_class(&self, color: Color) -> Result<SimpleGraph> {
        if color == 0 || color as usize > self.color_count {
            return Err(Error::ColorOutOfRange {
                color: color as usize,
                max: self.color_count,
            });
        }
        let mut g = SimpleGraph::empty(self.order);
        for (u, v, c) in self.iter_edges() {
            if c == color {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// All color classes, indexed by `color - 1`.
    pub fn color_classes(&self) -> Vec<SimpleGraph> {
        let mut classes = vec![SimpleGraph::empty(self.order); self.color_count];
        for (u, v, c) in self.iter_edges() {
            classes[c as usize - 1].add_edge(u, v);
        }
        classes
    }

    /// Number of colors whose color class has a component on at least `n`
    /// vertices. Components without edges are not counted, so for `n = 1` this
    /// is the number of used colors.
    pub fn q_value(&self, n: usize) -> usize {
        let threshold = n.max(2);
        self.color_classes()
            .iter()
            .filter(|g| g.largest_component() >= threshold)
            .count()
    }

    /// `(u, v, color)` for every pair, `u < v`, lexicographically.
    pub fn iter_edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        let n = self.order;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .zip(self.edges.iter().copied())
            .map(|((u, v), c)| (u, v, c))
    }

    /// Restriction to `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Precondition(
                "cannot restrict to an empty vertex set".into(),
            ));
        }
        let mut seen = vec![false; self.order];
        for &v in vertices {
            if v >= self.order {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: self.order,
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Precondition(format!("vertex {v} repeated")));
            }
        }
        Ok(Self::from_raw(
            vertices.len(),
            self.color_count,
            (0..vertices.len())
                .flat_map(|i| (i + 1..vertices.len()).map(move |j| (i, j)))
                .map(|(i, j)| self.color(vertices[i], vertices[j]))
                .collect(),
        ))
    }

    /// Renames vertex `i` to `labels[i]`. `labels` must be a permutation of `0..N`.
    pub fn relabeled(&self, labels: &[usize]) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::Precondition(
                "label list length differs from order".into(),
            ));
        }
        let mut inverse = vec![usize::MAX; self.order];
        for (i, &l) in labels.iter().enumerate() {
            if l >= self.order || inverse[l] != usize::MAX {
                return Err(Error::Precondition("labels are not a permutation".into()));
            }
            inverse[l] = i;
        }
        self.induced(&inverse)
    }

    /// Serializes in the interchange text format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Debug for ColoredKn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ColoredKn(N={}, k={}, {:?})",
            self.order, self.color_count, self.edges
        )
    }
}

/// The text format: `N k`, then one `u v c` line per pair.
impl fmt::Display for ColoredKn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.order, self.color_count)?;
        for (u, v, c) in self.iter_edges() {
            writeln!(f, "{u} {v} {c}")?;
        }
        Ok(())
    }
}

fn parse_fields(line: &str, lineno: usize, expected: usize) -> Result<Vec<usize>> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != expected {
        return Err(Error::Parse {
            line: lineno,
            message: format!("expected {expected} integers, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|s| {
            s.parse::<usize>().map_err(|e| Error::Parse {
                line: lineno,
                message: format!("{s:?}: {e}"),
            })
        })
        .collect()
}

/// Reads a coloring in the interchange text format. Blank lines and lines
/// starting with `#` are skipped; edges may appear in any order but each pair
/// must appear exactly once.
pub fn load_coloring<R: BufRead>(source: R) -> Result<ColoredKn> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Color> = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match header {
            None => {
                let f = parse_fields(trimmed, lineno, 2)?;
                let (order, k) = (f[0], f[1]);
                if order == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "order must be at least 1".into(),
                    });
                }
                check_palette(k).map_err(|e| Error::Parse {
                    line: lineno,
                    message: e.to_string(),
                })?;
                header = Some((order, k));
                edges = vec![0; pair_count(order)];
            }
            Some((order, k)) => {
                let f = parse_fields(trimmed, lineno, 3)?;
                let (u, v, c) = (f[0], f[1], f[2]);
                for w in [u, v] {
                    if w >= order {
                        return Err(Error::VertexOutOfRange { vertex: w, order });
                    }
                }
                if u == v {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("loop at vertex {u}"),
                    });
                }
                if c == 0 || c > k {
                    return Err(Error::ColorOutOfRange { color: c, max: k });
                }
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                let slot = &mut edges[pair_index(order, a, b)];
                if *slot != 0 {
                    return Err(Error::DuplicateEdge(a, b));
                }
                *slot = c as Color;
            }
        }
    }
    let Some((order, k)) = header else {
        return Err(Error::Parse {
            line: 0,
            message: "missing header line".into(),
        });
    };
    if let Some(pos) = edges.iter().position(|&c| c == 0) {
        let (u, v) = pair_at(order, pos);
        return Err(Error::MissingEdge(u, v));
    }
    Ok(ColoredKn::from_raw(order, k, edges))
}

/// Inverse of [`pair_index`].
pub(crate) fn pair_at(order: usize, mut index: usize) -> (usize, usize) {
    for u in 0..order {
        let row = order - u - 1;
        if index < row {
            return (u, u + 1 + index);
        }
        index -= row;
    }
    unreachable!("pair index out of range")
}

impl FromStr for ColoredKn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        load_coloring(s.as_bytes())
    }
}
