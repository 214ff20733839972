//! Gallai partitions, reduced graphs, and the substitution that inverts them.
//!
//! The canonical partition is the one given by the maximal strong modules of
//! the coloring, viewed as a symmetric 2-structure:
//!
//! * if for some color `c` the graph of non-`c` edges is disconnected, its
//!   components are the blocks and every between-block edge has color `c`;
//! * otherwise the quotient is prime, the blocks are the maximal proper color
//!   modules, and for a Gallai coloring the quotient uses exactly two colors.
//!
//! Modules are found by pair closure: the smallest module containing `{u, v}`
//! is grown by absorbing any outside vertex that sees two members in
//! different colors.

use std::fmt;
use std::ops::Deref;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{pair_count, pair_index, Color, ColoredKn};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// A partition of the vertex set into `p ≥ 2` blocks such that every block
/// pair is joined in a single color and at most two colors appear between
/// blocks. Blocks are sorted by size, then by smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiPartition {
    blocks: Vec<Vec<usize>>,
    between: Vec<Color>,
    color_count: usize,
}

impl GallaiPartition {
    /// Builds a partition from arbitrary blocks of `c`, reading the between
    /// colors off the coloring and checking every partition invariant.
    pub fn from_blocks(c: &ColoredKn, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = c.order();
        if blocks.len() < 2 {
            return Err(Error::Precondition(
                "a Gallai partition needs at least two blocks".into(),
            ));
        }
        let mut owner = vec![usize::MAX; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            block.sort_unstable();
        }
        blocks.sort_by_key(|b| (b.len(), b[0]));
        for (i, block) in blocks.iter().enumerate() {
            for &v in block {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        order: n,
                    });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::Precondition(format!("vertex {v} in two blocks")));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Precondition(format!("vertex {v} in no block")));
        }
        let p = blocks.len();
        let mut between = vec![0; pair_count(p)];
        for i in 0..p {
            for j in i + 1..p {
                between[pair_index(p, i, j)] = c.color(blocks[i][0], blocks[j][0]);
            }
        }
        let part = GallaiPartition {
            blocks,
            between,
            color_count: c.color_count(),
        };
        part.check_against(c)?;
        Ok(part)
    }

    fn check_against(&self, c: &ColoredKn) -> Result<()> {
        for (u, v, col) in c.iter_edges() {
            let (bu, bv) = (self.block_of(u), self.block_of(v));
            if bu != bv && self.between_color(bu, bv) != col {
                return Err(Error::Precondition(format!(
                    "blocks {bu} and {bv} are not joined monochromatically (edge {{{u}, {v}}})"
                )));
            }
        }
        if self.between_colors().len() > 2 {
            return Err(Error::Precondition(
                "more than two colors between blocks".into(),
            ));
        }
        Ok(())
    }

    fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&v).is_ok())
            .expect("vertex in some block")
    }

    /// Checks all partition invariants against `c` by a direct edge scan.
    pub fn is_valid_for(&self, c: &ColoredKn) -> bool {
        let sorted = self
            .blocks
            .windows(2)
            .all(|w| (w[0].len(), w[0][0]) <= (w[1].len(), w[1][0]));
        let covers = self.blocks.iter().map(Vec::len).sum::<usize>() == c.order();
        self.blocks.len() >= 2 && sorted && covers && self.check_against(c).is_ok()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn between_color(&self, i: usize, j: usize) -> Color {
        assert!(i != j);
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.between[pair_index(self.blocks.len(), a, b)]
    }

    /// Distinct colors used between blocks, sorted.
    pub fn between_colors(&self) -> Vec<Color> {
        let mut cs = self.between.clone();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    /// Vertices listed block by block; this is the vertex order produced by
    /// composing the reduced graph with the block restrictions.
    pub fn vertex_order(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// The coloring restricted to each block.
    pub fn restrictions(&self, c: &ColoredKn) -> Result<Vec<ColoredKn>> {
        self.blocks.iter().map(|b| c.induced(b)).collect()
    }

    pub fn reduced_graph(&self) -> ReducedColoring {
        ReducedColoring(ColoredKn::from_raw(
            self.blocks.len(),
            self.color_count,
            self.between.clone(),
        ))
    }
}

impl fmt::Display for GallaiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            let ids: Vec<String> = b.iter().map(ToString::to_string).collect();
            writeln!(f, "V{}: {}", i + 1, ids.join(" "))?;
        }
        let p = self.blocks.len();
        for i in 0..p {
            for j in i + 1..p {
                writeln!(f, "V{} - V{}: {}", i + 1, j + 1, self.between_color(i, j))?;
            }
        }
        Ok(())
    }
}

/// The coloring of `K_p` on one representative per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedColoring(ColoredKn);

impl ReducedColoring {
    pub fn into_inner(self) -> ColoredKn {
        self.0
    }
}

impl Deref for ReducedColoring {
    type Target = ColoredKn;

    fn deref(&self) -> &ColoredKn {
        &self.0
    }
}

pub fn reduced_graph(p: &GallaiPartition) -> ReducedColoring {
    p.reduced_graph()
}

/// Smallest module containing `u` and `v`, as a membership vector.
fn module_closure(c: &ColoredKn, u: usize, v: usize) -> (Vec<bool>, usize) {
    let n = c.order();
    let mut inside = vec![false; n];
    let mut queued = vec![false; n];
    inside[u] = true;
    inside[v] = true;
    let reference: Vec<Color> = (0..n)
        .map(|w| if w == u { 0 } else { c.color(w, u) })
        .collect();
    let mut pending: Vec<usize> = (0..n)
        .filter(|&w| !inside[w] && c.color(w, v) != reference[w])
        .collect();
    for &w in &pending {
        queued[w] = true;
    }
    let mut size = 2;
    while let Some(w) = pending.pop() {
        inside[w] = true;
        size += 1;
        if size == n {
            break;
        }
        for x in 0..n {
            if !inside[x] && !queued[x] && c.color(x, w) != reference[x] {
                queued[x] = true;
                pending.push(x);
            }
        }
    }
    (inside, size)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Blocks of the canonical partition (unsorted).
fn maximal_strong_modules(c: &ColoredKn) -> Vec<Vec<usize>> {
    let n = c.order();
    for col in 1..=c.color_count() as Color {
        let others = SimpleGraph::from_edges(
            n,
            c.iter_edges()
                .filter(|e| e.2 != col)
                .map(|(u, v, _)| (u, v)),
        )
        .expect("edges of a coloring are valid");
        let comps = others.components();
        if comps.len() > 1 {
            return comps;
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for u in 0..n {
        for v in u + 1..n {
            if find(&mut parent, u) == find(&mut parent, v) {
                continue;
            }
            let (inside, size) = module_closure(c, u, v);
            if size < n {
                let root = find(&mut parent, u);
                for w in (0..n).filter(|&w| inside[w]) {
                    let r = find(&mut parent, w);
                    parent[r] = root;
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = find(&mut parent, v);
        blocks[r].push(v);
    }
    blocks.retain(|b| !b.is_empty());
    blocks
}

/// The canonical Gallai partition of a Gallai coloring with at least two vertices.
pub fn gallai_partition(c: &ColoredKn) -> Result<GallaiPartition> {
    if c.order() < 2 {
        return Err(Error::Precondition(
            "a Gallai partition needs at least two vertices".into(),
        ));
    }
    c.ensure_gallai()?;
    GallaiPartition::from_blocks(c, maximal_strong_modules(c))
}

/// Coarsens `p` until, for every color between blocks, the edges of that color
/// in the reduced graph form a connected spanning subgraph.
///
/// While some between color has a disconnected reduced subgraph, the blocks
/// inside each of its components are merged; all edges between those
/// components carry the other color, so one pass suffices in practice and the
/// loop always ends with `p ≥ 2`.
pub fn refine_connected(c: &ColoredKn, p: &GallaiPartition) -> Result<GallaiPartition> {
    if !p.is_valid_for(c) {
        return Err(Error::Precondition(
            "partition is not a Gallai partition of the coloring".into(),
        ));
    }
    let mut current = p.clone();
    loop {
        let reduced = current.reduced_graph();
        let split = current.between_colors().into_iter().find_map(|col| {
            let comps = reduced
                .color_class(col)
                .expect("between color in range")
                .components();
            (comps.len() > 1).then_some(comps)
        });
        let Some(comps) = split else {
            return Ok(current);
        };
        let merged: Vec<Vec<usize>> = comps
            .iter()
            .map(|comp| {
                comp.iter()
                    .flat_map(|&i| current.blocks[i].iter().copied())
                    .collect()
            })
            .collect();
        current = GallaiPartition::from_blocks(c, merged)?;
    }
}

/// Substitution: vertex `i` of `base` is replaced by `parts[i]`. Vertices of
/// the result are numbered part by part. The palette is the widest one among
/// the inputs.
pub fn compose(base: &ColoredKn, parts: &[ColoredKn]) -> Result<ColoredKn> {
    if parts.len() != base.order() {
        return Err(Error::ArityMismatch {
            expected: base.order(),
            got: parts.len(),
        });
    }
    let k = parts
        .iter()
        .map(ColoredKn::color_count)
        .chain([base.color_count()])
        .max()
        .unwrap();
    let mut owner = Vec::new();
    let mut local = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for v in 0..part.order() {
            owner.push(i);
            local.push(v);
        }
    }
    let n = owner.len();
    let mut edges = Vec::with_capacity(pair_count(n));
    for u in 0..n {
        for v in u + 1..n {
            edges.push(if owner[u] == owner[v] {
                parts[owner[u]].color(local[u], local[v])
            } else {
                base.color(owner[u], owner[v])
            });
        }
    }
    Ok(ColoredKn::from_raw(n, k, edges))
}

/// One level of a full decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeNode {
    /// An original vertex.
    Leaf(usize),
    /// A reduced coloring of order `p` with one subtree per block.
    Node {
        reduced: ColoredKn,
        children: Vec<TreeNode>,
    },
}

/// The recursive Gallai decomposition of a coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiTree {
    pub color_count: usize,
    pub root: TreeNode,
}

impl TreeNode {
    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 1,
            TreeNode::Node { children, .. } => children.iter().map(TreeNode::leaf_count).sum(),
        }
    }

    /// Number of internal levels on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 0,
            TreeNode::Node { children, .. } => {
                1 + children.iter().map(TreeNode::depth).max().unwrap_or(0)
            }
        }
    }

    fn leaves_into(&self, out: &mut Vec<usize>) {
        match self {
            TreeNode::Leaf(v) => out.push(*v),
            TreeNode::Node { children, .. } => children.iter().for_each(|c| c.leaves_into(out)),
        }
    }

    fn compose_local(&self, color_count: usize) -> Result<ColoredKn> {
        match self {
            TreeNode::Leaf(_) => ColoredKn::from_edge_colors(1, color_count, Vec::new()),
            TreeNode::Node { reduced, children } => {
                let parts = children
                    .iter()
                    .map(|ch| ch.compose_local(color_count))
                    .collect::<Result<Vec<_>>>()?;
                compose(reduced, &parts)
            }
        }
    }
}

impl GallaiTree {
    pub fn leaf_count(&self) -> usize {
        self.root.leaf_count()
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// Leaf ids in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.root.leaves_into(&mut out);
        out
    }

    /// Rebuilds the coloring the tree describes.
    pub fn compose(&self) -> Result<ColoredKn> {
        self.root
            .compose_local(self.color_count)?
            .relabeled(&self.leaves())
    }

    /// Parses the nested text form produced by `Display`.
    pub fn parse(text: &str, color_count: usize) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let root = parse_node(&tokens, &mut pos, color_count)?;
        if pos != tokens.len() {
            return Err(Error::Parse {
                line: 1,
                message: "trailing input after tree".into(),
            });
        }
        Ok(GallaiTree { color_count, root })
    }
}

/// Leaf: the vertex id. Node: `(c c c … | child, child, …)` where the colors
/// are the reduced coloring's upper triangle in lexicographic pair order.
impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeNode::Leaf(v) => write!(f, "{v}"),
            TreeNode::Node { reduced, children } => {
                let colors: Vec<String> = reduced
                    .edge_colors()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                write!(f, "({} | ", colors.join(" "))?;
                for (i, ch) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{ch}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for GallaiTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Bar,
    Comma,
    Num(usize),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            '|' => out.push(Token::Bar),
            ',' => out.push(Token::Comma),
            d if d.is_ascii_digit() => {
                let mut value = 0usize;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    value = value * 10 + d as usize;
                    chars.next();
                }
                out.push(Token::Num(value));
                continue;
            }
            w if w.is_whitespace() => {}
            other => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
        chars.next();
    }
    Ok(out)
}

fn parse_node(tokens: &[Token], pos: &mut usize, color_count: usize) -> Result<TreeNode> {
    let err = |m: &str| Error::Parse {
        line: 1,
        message: m.to_string(),
    };
    match tokens.get(*pos) {
        Some(Token::Num(v)) => {
            *pos += 1;
            Ok(TreeNode::Leaf(*v))
        }
        Some(Token::Open) => {
            *pos += 1;
            let mut colors = Vec::new();
            while let Some(Token::Num(c)) = tokens.get(*pos) {
                colors.push(u8::try_from(*c).map_err(|_| err("color too large"))?);
                *pos += 1;
            }
            if tokens.get(*pos) != Some(&Token::Bar) {
                return Err(err("expected '|'"));
            }
            *pos += 1;
            let mut children = vec![parse_node(tokens, pos, color_count)?];
            while tokens.get(*pos) == Some(&Token::Comma) {
                *pos += 1;
                children.push(parse_node(tokens, pos, color_count)?);
            }
            if tokens.get(*pos) != Some(&Token::Close) {
                return Err(err("expected ')'"));
            }
            *pos += 1;
            let reduced = ColoredKn::from_edge_colors(children.len(), color_count, colors)?;
            Ok(TreeNode::Node { reduced, children })
        }
        _ => Err(err("expected vertex id or '('")),
    }
}

fn decompose_rec(c: &ColoredKn, labels: &[usize]) -> Result<TreeNode> {
    if c.order() == 1 {
        return Ok(TreeNode::Leaf(labels[0]));
    }
    let part = gallai_partition(c)?;
    let children = part
        .blocks()
        .iter()
        .map(|block| {
            let sub_labels: Vec<usize> = block.iter().map(|&v| labels[v]).collect();
            decompose_rec(&c.induced(block)?, &sub_labels)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeNode::Node {
        reduced: part.reduced_graph().into_inner(),
        children,
    })
}

/// Recursively decomposes a Gallai coloring down to single vertices.
pub fn decompose_full(c: &ColoredKn) -> Result<GallaiTree> {
    c.ensure_gallai()?;
    let labels: Vec<usize> = (0..c.order()).collect();
    Ok(GallaiTree {
        color_count: c.color_count(),
        root: decompose_rec(c, &labels)?,
    })
}

/// Largest part count drawn by [`random_gallai`].
const MAX_RANDOM_PARTS: usize = 8;

fn random_rec<R: Rng>(rng: &mut R, order: usize, k: usize) -> ColoredKn {
    if order == 1 {
        return ColoredKn::from_raw(1, k, Vec::new());
    }
    let p = if order == 2 || rng.gen_bool(0.5) {
        2
    } else {
        rng.gen_range(3..=order.min(MAX_RANDOM_PARTS))
    };
    let a = rng.gen_range(1..=k) as Color;
    let b = rng.gen_range(1..=k) as Color;
    let base = ColoredKn::from_raw(
        p,
        k,
        (0..pair_count(p))
            .map(|_| if rng.gen_bool(0.5) { a } else { b })
            .collect(),
    );
    let mut cuts: Vec<usize> = sample(rng, order - 1, p - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(order);
    let mut prev = 0;
    let parts: Vec<ColoredKn> = cuts
        .into_iter()
        .map(|cut| {
            let size = cut - prev;
            prev = cut;
            random_rec(rng, size, k)
        })
        .collect();
    compose(&base, &parts).expect("arity matches by construction")
}

/// A random Gallai `k`-coloring of `K_order`, built by recursive substitution
/// into two-colored bases and then shuffled. Deterministic in `seed`.
pub fn random_gallai(order: usize, k: usize, seed: u64) -> Result<ColoredKn> {
    if order == 0 || k == 0 || k > crate::coloring::MAX_COLORS {
        return Err(Error::Precondition(format!(
            "need order ≥ 1 and 1 ≤ k ≤ 255, got {order}, {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = random_rec(&mut rng, order, k);
    let mut labels: Vec<usize> = (0..order).collect();
    labels.shuffle(&mut rng);
    c.relabeled(&labels)
}

/// Whether enumeration yields every coloring or one per color-permutation class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    Raw,
    /// Colors appear in first-use order along the lexicographic edge order.
    UpToColorPermutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub max_order: usize,
    pub max_colors: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_order: 7,
            max_colors: 3,
        }
    }
}

/// Backtracking enumerator over Gallai colorings; see [`enumerate_gallai`].
pub struct GallaiEnumerator {
    order: usize,
    k: usize,
    mode: EnumerationMode,
    /// For each edge position, the earlier edge pairs that close a triangle with it.
    closers: Vec<Vec<(usize, usize)>>,
    assign: Vec<Color>,
    prefix_max: Vec<Color>,
    pos: usize,
    done: bool,
}

impl GallaiEnumerator {
    fn limit(&self, pos: usize) -> Color {
        match self.mode {
            EnumerationMode::Raw => self.k as Color,
            EnumerationMode::UpToColorPermutation => {
                let prev = if pos == 0 {
                    0
                } else {
                    self.prefix_max[pos - 1]
                };
                (prev as usize + 1).min(self.k) as Color
            }
        }
    }

    fn consistent(&self, pos: usize) -> bool {
        let c = self.assign[pos];
        self.closers[pos].iter().all(|&(i, j)| {
            let (x, y) = (self.assign[i], self.assign[j]);
            x == y || x == c || y == c
        })
    }

    fn emit(&self) -> ColoredKn {
        ColoredKn::from_raw(self.order, self.k, self.assign.clone())
    }
}

impl Iterator for GallaiEnumerator {
    type Item = ColoredKn;

    fn next(&mut self) -> Option<ColoredKn> {
        if self.done {
            return None;
        }
        let m = self.assign.len();
        if m == 0 {
            self.done = true;
            return Some(self.emit());
        }
        loop {
            let pos = self.pos;
            if self.assign[pos] >= self.limit(pos) {
                self.assign[pos] = 0;
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                self.pos -= 1;
                continue;
            }
            self.assign[pos] += 1;
            if !self.consistent(pos) {
                continue;
            }
            let prev = if pos == 0 {
                0
            } else {
                self.prefix_max[pos - 1]
            };
            self.prefix_max[pos] = prev.max(self.assign[pos]);
            if pos + 1 == m {
                return Some(self.emit());
            }
            self.pos += 1;
        }
    }
}

/// Every Gallai coloring of `K_order` with colors in `1..=k` (not necessarily
/// all used), produced by backtracking over edges in lexicographic order with
/// a rainbow check each time an edge completes a triangle.
pub fn enumerate_gallai(
    order: usize,
    k: usize,
    mode: EnumerationMode,
    caps: EnumerationCaps,
) -> Result<GallaiEnumerator> {
    if order == 0 || k == 0 {
        return Err(Error::Precondition("need order ≥ 1 and k ≥ 1".into()));
    }
    if order > caps.max_order || k > caps.max_colors {
        return Err(Error::CapExceeded(format!(
            "order {order} (cap {}), colors {k} (cap {})",
            caps.max_order, caps.max_colors
        )));
    }
    let m = pair_count(order);
    let mut closers = vec![Vec::new(); m];
    for u in 0..order {
        for v in u + 1..order {
            closers[pair_index(order, u, v)] = (0..u)
                .map(|a| (pair_index(order, a, u), pair_index(order, a, v)))
                .collect();
        }
    }
    Ok(GallaiEnumerator {
        order,
        k,
        mode,
        closers,
        assign: vec![0; m],
        prefix_max: vec![0; m],
        pos: 0,
        done: false,
    })
}
