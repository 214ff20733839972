//! Extremal Gallai colorings for the odd- and even-cycle lower bounds, the
//! `G0` gadget, and checkable certificates that a color class has no cycle of
//! a given length.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coloring::{Color, ColoredKn};
use crate::cycles::{search_cycle, CycleWitness, DEFAULT_BUDGET};
use crate::decomposition::compose;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Odd,
    Even,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Family::Odd),
            "even" => Ok(Family::Even),
            other => Err(Error::Precondition(format!("unknown family {other:?}"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Odd => "odd",
            Family::Even => "even",
        })
    }
}

/// Parameters of an extremal construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
}

impl ConstructionSpec {
    /// `n·2^k` for the odd family, `(n-1)k + n` for the even family.
    pub fn order(&self) -> usize {
        match self.family {
            Family::Odd => self.n << self.k,
            Family::Even => (self.n - 1) * self.k + self.n,
        }
    }

    /// The cycle length the construction avoids: `2n+1` or `2n`.
    pub fn target_length(&self) -> usize {
        match self.family {
            Family::Odd => 2 * self.n + 1,
            Family::Even => 2 * self.n,
        }
    }

    pub fn build(&self) -> Result<ColoredKn> {
        match self.family {
            Family::Odd => build_odd_extremal(self.n, self.k),
            Family::Even => build_even_extremal(self.n, self.k),
        }
    }
}

/// Largest `k` accepted by the odd construction; keeps the order addressable.
const MAX_ODD_LEVELS: usize = 20;

/// Gallai `k`-coloring of `K_{n·2^k}` with no monochromatic `C_{2n+1}`.
///
/// Level 1 is `K_{2n}` in color 1; level `i+1` is two copies of level `i`
/// joined completely in color `i+1`. Color 1 lives on cliques of order `2n`,
/// every other color class is a disjoint union of complete bipartite graphs.
pub fn build_odd_extremal(n: usize, k: usize) -> Result<ColoredKn> {
    if n < 2 || k < 1 || k > MAX_ODD_LEVELS.min(crate::coloring::MAX_COLORS) {
        return Err(Error::Precondition(format!(
            "odd construction needs n ≥ 2 and 1 ≤ k ≤ {MAX_ODD_LEVELS}, got n={n}, k={k}"
        )));
    }
    let mut level = ColoredKn::monochromatic(2 * n, k, 1)?;
    for color in 2..=k {
        let join = ColoredKn::monochromatic(2, k, color as Color)?;
        level = compose(&join, &[level.clone(), level])?;
    }
    Ok(level)
}

/// Gallai `k`-coloring of `K_{(n-1)k+n}` with no monochromatic `C_{2n}`.
///
/// Starts from `K_{2n-1}` in color 1; for each color `i = 2..=k`, `n-1` new
/// vertices are added and every edge touching them gets color `i`. Those new
/// vertices cover color class `i`, so its cycles have at most `2(n-1)` vertices.
pub fn build_even_extremal(n: usize, k: usize) -> Result<ColoredKn> {
    if n < 3 || !(1..=crate::coloring::MAX_COLORS).contains(&k) {
        return Err(Error::Precondition(format!(
            "even construction needs n ≥ 3 and k ≥ 1, got n={n}, k={k}"
        )));
    }
    let base = 2 * n - 1;
    let order = base + (k - 1) * (n - 1);
    let color_of = |v: usize| -> Color {
        if v < base {
            1
        } else {
            (2 + (v - base) / (n - 1)) as Color
        }
    };
    // an edge takes the color of its later endpoint's level
    ColoredKn::from_fn(order, k, |_, v| color_of(v))
}

/// The gadget `G0` with its declared bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G0Graph {
    pub graph: SimpleGraph,
    /// `A1 ∪ A2`.
    pub a_side: Vec<usize>,
    /// `B1 ∪ B2 ∪ B3`.
    pub b_side: Vec<usize>,
}

/// Builds `G0` with `|B1| = |B2| = b`, `|A1| = a1`, `|A2| = a2`.
///
/// Vertex layout: `A1`, then `A2`, then `B1`, then `B2`, then the single `B3`.
pub fn build_g0(b: usize, a1: usize, a2: usize) -> Result<G0Graph> {
    if b == 0 || a1 == 0 || a2 == 0 {
        return Err(Error::Precondition(format!(
            "G0 needs every part nonempty, got b={b}, a1={a1}, a2={a2}"
        )));
    }
    let a1s: Vec<usize> = (0..a1).collect();
    let a2s: Vec<usize> = (a1..a1 + a2).collect();
    let b1s: Vec<usize> = (a1 + a2..a1 + a2 + b).collect();
    let b2s: Vec<usize> = (a1 + a2 + b..a1 + a2 + 2 * b).collect();
    let b3 = a1 + a2 + 2 * b;
    let mut edges = Vec::new();
    for &x in &a1s {
        edges.extend(b1s.iter().chain([&b3]).map(|&y| (x, y)));
    }
    for &x in &a2s {
        edges.extend(b2s.iter().chain([&b3]).map(|&y| (x, y)));
    }
    let graph = SimpleGraph::from_edges(b3 + 1, edges)?;
    Ok(G0Graph {
        graph,
        a_side: a1s.into_iter().chain(a2s).collect(),
        b_side: b1s.into_iter().chain(b2s).chain([b3]).collect(),
    })
}

/// A polynomially checkable reason why a color class has no `C_len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "payload")]
pub enum AbsenceCertificate {
    /// Every edge lies inside one of these vertex sets, each smaller than `len`.
    ComponentBound { components: Vec<Vec<usize>> },
    /// Every edge crosses between the two sides; rules out odd lengths.
    Bipartite { left: Vec<usize>, right: Vec<usize> },
    /// Every edge touches `cover`, and `2·|cover| < len`. Cycle vertices
    /// outside the cover are pairwise non-adjacent, so a cycle has at most
    /// `2·|cover|` vertices.
    Cover { cover: Vec<usize> },
    /// Exhaustive search found nothing; `transcript` hashes the class, the
    /// length and the number of expansions spent.
    Exhaustive { transcript: String, expansions: u64 },
}

impl AbsenceCertificate {
    pub fn variant(&self) -> &'static str {
        match self {
            AbsenceCertificate::ComponentBound { .. } => "ComponentBound",
            AbsenceCertificate::Bipartite { .. } => "Bipartite",
            AbsenceCertificate::Cover { .. } => "Cover",
            AbsenceCertificate::Exhaustive { .. } => "Exhaustive",
        }
    }

    /// Re-checks the certificate against a color class. The checks use only
    /// the payload and an edge scan; `Exhaustive` re-runs the search.
    pub fn validate(&self, class: &SimpleGraph, len: usize) -> bool {
        let n = class.order();
        let membership = |sets: &[&[usize]]| -> Option<Vec<usize>> {
            let mut owner = vec![usize::MAX; n];
            for (i, set) in sets.iter().enumerate() {
                for &v in *set {
                    if v >= n || owner[v] != usize::MAX {
                        return None;
                    }
                    owner[v] = i;
                }
            }
            Some(owner)
        };
        match self {
            AbsenceCertificate::ComponentBound { components } => {
                let sets: Vec<&[usize]> = components.iter().map(Vec::as_slice).collect();
                let Some(owner) = membership(&sets) else {
                    return false;
                };
                components.iter().all(|c| c.len() < len)
                    && class
                        .edges()
                        .all(|(u, v)| owner[u] != usize::MAX && owner[u] == owner[v])
            }
            AbsenceCertificate::Bipartite { left, right } => {
                let Some(owner) = membership(&[left, right]) else {
                    return false;
                };
                len % 2 == 1
                    && class.edges().all(|(u, v)| {
                        owner[u] != usize::MAX && owner[v] != usize::MAX && owner[u] != owner[v]
                    })
            }
            AbsenceCertificate::Cover { cover } => {
                let Some(owner) = membership(&[cover]) else {
                    return false;
                };
                2 * cover.len() < len && class.edges().all(|(u, v)| owner[u] == 0 || owner[v] == 0)
            }
            AbsenceCertificate::Exhaustive {
                transcript,
                expansions,
            } => match search_cycle(class, len, DEFAULT_BUDGET) {
                Ok(out) => {
                    out.cycle.is_none()
                        && out.expansions == *expansions
                        && *transcript == transcript_hash(class, len, out.expansions)
                }
                Err(_) => false,
            },
        }
    }
}

fn transcript_hash(class: &SimpleGraph, len: usize, expansions: u64) -> String {
    let mut h = Sha256::new();
    h.update((class.order() as u64).to_le_bytes());
    h.update((len as u64).to_le_bytes());
    for (u, v) in class.edges() {
        h.update((u as u64).to_le_bytes());
        h.update((v as u64).to_le_bytes());
    }
    h.update(expansions.to_le_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn component_bound(class: &SimpleGraph, len: usize) -> Option<AbsenceCertificate> {
    let components: Vec<Vec<usize>> = class
        .components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect();
    components
        .iter()
        .all(|c| c.len() < len)
        .then_some(AbsenceCertificate::ComponentBound { components })
}

fn bipartite(class: &SimpleGraph, len: usize) -> Option<AbsenceCertificate> {
    if len.is_multiple_of(2) {
        return None;
    }
    let (left, right) = class.bipartition()?;
    let keep = |side: Vec<usize>| side.into_iter().filter(|&v| class.degree(v) > 0).collect();
    Some(AbsenceCertificate::Bipartite {
        left: keep(left),
        right: keep(right),
    })
}

/// Greedy cover by highest remaining degree, abandoned once it would exceed
/// `⌊(len-1)/2⌋` vertices.
fn greedy_cover(class: &SimpleGraph, len: usize) -> Option<AbsenceCertificate> {
    let limit = (len - 1) / 2;
    let n = class.order();
    let mut removed = vec![false; n];
    let mut residual: Vec<usize> = (0..n).map(|v| class.degree(v)).collect();
    let mut cover = Vec::new();
    loop {
        let (best, &deg) = residual
            .iter()
            .enumerate()
            .max_by_key(|&(v, d)| (*d, std::cmp::Reverse(v)))?;
        if deg == 0 {
            break;
        }
        if cover.len() == limit {
            return None;
        }
        cover.push(best);
        removed[best] = true;
        residual[best] = 0;
        for w in class.neighbors(best) {
            if !removed[w] {
                residual[w] -= 1;
            }
        }
    }
    cover.sort_unstable();
    Some(AbsenceCertificate::Cover { cover })
}

/// Certifies that no color class of `c` contains a cycle on `len` vertices.
///
/// For each color the strategies are tried in order: component bound,
/// bipartition (odd lengths only), greedy cover, exhaustive search. A cycle
/// turned up by the exhaustive search is returned as [`Error::CycleFound`].
pub fn certify_no_mono_cycle(
    c: &ColoredKn,
    len: usize,
) -> Result<BTreeMap<Color, AbsenceCertificate>> {
    certify_no_mono_cycle_with_budget(c, len, DEFAULT_BUDGET)
}

pub fn certify_no_mono_cycle_with_budget(
    c: &ColoredKn,
    len: usize,
    budget: u64,
) -> Result<BTreeMap<Color, AbsenceCertificate>> {
    if len < 3 {
        return Err(Error::Precondition(format!("cycle length {len} < 3")));
    }
    let mut out = BTreeMap::new();
    for (i, class) in c.color_classes().into_iter().enumerate() {
        let color = (i + 1) as Color;
        let cert = match component_bound(&class, len)
            .or_else(|| bipartite(&class, len))
            .or_else(|| greedy_cover(&class, len))
        {
            Some(cert) => cert,
            None => {
                let outcome = search_cycle(&class, len, budget)?;
                if let Some(vertices) = outcome.cycle {
                    return Err(Error::CycleFound {
                        color,
                        witness: CycleWitness {
                            color: Some(color),
                            vertices,
                        },
                    });
                }
                AbsenceCertificate::Exhaustive {
                    transcript: transcript_hash(&class, len, outcome.expansions),
                    expansions: outcome.expansions,
                }
            }
        };
        out.insert(color, cert);
    }
    Ok(out)
}

/// One line of the certificate JSON file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    #[serde(flatten)]
    pub certificate: AbsenceCertificate,
    pub valid: bool,
}

/// Certificate JSON: one `{variant, payload, valid}` object per color,
/// keyed by color, together with the order and target length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub order: usize,
    pub length: usize,
    pub colors: BTreeMap<Color, CertificateRecord>,
}

impl CertificateReport {
    /// Validates each certificate against `c` and records the outcome.
    pub fn new(
        c: &ColoredKn,
        length: usize,
        certs: BTreeMap<Color, AbsenceCertificate>,
    ) -> Result<Self> {
        let mut colors = BTreeMap::new();
        for (color, certificate) in certs {
            let valid = certificate.validate(&c.color_class(color)?, length);
            colors.insert(color, CertificateRecord { certificate, valid });
        }
        Ok(CertificateReport {
            order: c.order(),
            length,
            colors,
        })
    }

    pub fn all_valid(&self) -> bool {
        self.colors.values().all(|r| r.valid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{find_mono_cycle, G0Witness};

    #[test]
    fn odd_construction_shapes() {
        let c = build_odd_extremal(3, 1).unwrap();
        assert_eq!(c, ColoredKn::monochromatic(6, 1, 1).unwrap());

        let c = build_odd_extremal(3, 2).unwrap();
        assert_eq!(c.order(), 12);
        let blue = c.color_class(2).unwrap();
        assert_eq!(blue, SimpleGraph::complete_bipartite(6, 6));
        let red = c.color_class(1).unwrap();
        assert_eq!(
            red.components().iter().map(Vec::len).collect::<Vec<_>>(),
            vec![6, 6]
        );

        let c = build_odd_extremal(3, 3).unwrap();
        assert_eq!(c.order(), 24);
        assert_eq!(c.q_value(3), 3);
        assert!(build_odd_extremal(1, 2).is_err());
        assert!(build_odd_extremal(3, 0).is_err());
    }

    #[test]
    fn even_construction_shapes() {
        assert_eq!(
            build_even_extremal(3, 1).unwrap(),
            ColoredKn::monochromatic(5, 1, 1).unwrap()
        );
        let c = build_even_extremal(3, 2).unwrap();
        assert_eq!(c.order(), 7);
        assert!(c.is_gallai());
        assert_eq!(find_mono_cycle(&c, 6, None).unwrap(), None);

        let c = build_even_extremal(4, 3).unwrap();
        assert_eq!(c.order(), 13);
        let cover = AbsenceCertificate::Cover {
            cover: vec![10, 11, 12],
        };
        assert!(cover.validate(&c.color_class(3).unwrap(), 8));
        assert!(build_even_extremal(2, 3).is_err());
    }

    #[test]
    fn g0_examples() {
        let g0 = build_g0(3, 1, 1).unwrap();
        assert_eq!((g0.graph.order(), g0.graph.edge_count()), (9, 8));
        let w = G0Witness::recognize(&g0.graph, &g0.a_side, &g0.b_side).unwrap();
        assert_eq!((w.a1.clone(), w.a2.clone(), w.b3), (vec![0], vec![1], 8));

        let tiny = build_g0(1, 1, 1).unwrap();
        assert_eq!((tiny.graph.order(), tiny.graph.edge_count()), (5, 4));
        assert!(build_g0(0, 1, 1).is_err());
    }

    #[test]
    fn certificates_for_odd_construction() {
        let c = build_odd_extremal(3, 5).unwrap();
        let certs = certify_no_mono_cycle(&c, 7).unwrap();
        assert_eq!(certs[&1].variant(), "ComponentBound");
        for color in 2..=5 {
            assert_eq!(certs[&color].variant(), "Bipartite");
        }
        let report = CertificateReport::new(&c, 7, certs).unwrap();
        assert!(report.all_valid());
    }

    #[test]
    fn certificates_for_even_construction() {
        let c = build_even_extremal(3, 4).unwrap();
        let certs = certify_no_mono_cycle(&c, 6).unwrap();
        assert_eq!(
            certs[&1],
            AbsenceCertificate::ComponentBound {
                components: vec![vec![0, 1, 2, 3, 4]]
            }
        );
        for color in 2..=4u8 {
            match &certs[&color] {
                AbsenceCertificate::Cover { cover } => assert_eq!(cover.len(), 2),
                other => panic!("color {color}: {other:?}"),
            }
        }
    }

    #[test]
    fn certify_reports_cycles() {
        let k7 = ColoredKn::monochromatic(7, 1, 1).unwrap();
        match certify_no_mono_cycle(&k7, 7) {
            Err(Error::CycleFound { color: 1, witness }) => {
                assert!(witness.validate_in_coloring(&k7, 7))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exhaustive_fallback_and_validation() {
        // pentagon and pentagram: neither has a C4, and no cheap certificate applies
        let g = SimpleGraph::cycle(5);
        let c = ColoredKn::from_fn(5, 2, |u, v| if g.has_edge(u, v) { 1 } else { 2 }).unwrap();
        let certs = certify_no_mono_cycle(&c, 4).unwrap();
        assert_eq!(certs[&1].variant(), "Exhaustive");
        assert_eq!(certs[&2].variant(), "Exhaustive");
        assert!(certs[&2].validate(&c.color_class(2).unwrap(), 4));
        assert!(!certs[&2].validate(&c.color_class(1).unwrap(), 4));
    }

    #[test]
    fn forged_certificates_fail() {
        let class = SimpleGraph::complete(5);
        assert!(!AbsenceCertificate::ComponentBound {
            components: vec![vec![0, 1, 2, 3, 4]]
        }
        .validate(&class, 5));
        assert!(!AbsenceCertificate::Bipartite {
            left: vec![0, 1],
            right: vec![2, 3, 4]
        }
        .validate(&class, 5));
        assert!(!AbsenceCertificate::Cover { cover: vec![0, 1] }.validate(&class, 5));
        assert!(!AbsenceCertificate::Cover { cover: vec![0, 0] }.validate(&class, 9));
    }

    #[test]
    fn certificate_json_shape() {
        let c = build_even_extremal(3, 2).unwrap();
        let report = CertificateReport::new(&c, 6, certify_no_mono_cycle(&c, 6).unwrap()).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["colors"]["1"]["variant"], "ComponentBound");
        assert_eq!(v["colors"]["2"]["variant"], "Cover");
        assert_eq!(
            v["colors"]["2"]["payload"]["cover"],
            serde_json::json!([5, 6])
        );
        assert_eq!(v["colors"]["2"]["valid"], true);
        let back: CertificateReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, report);
    }
}
