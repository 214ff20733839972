//! Claim-level verification harness: each check runs a family of instances
//! against a proved statement and records any instance that disagrees.
//!
//! All randomness flows from a master seed through per-instance sub-seeds, so
//! a report is reproducible regardless of how many workers ran it.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::{index::sample, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coloring::{Color, ColoredKn};
use crate::constructions::{certify_no_mono_cycle_with_budget, ConstructionSpec, Family};
use crate::cycles::{find_mono_cycle_with_budget, CycleWitness, DEFAULT_BUDGET};
use crate::decomposition::{
    compose, decompose_full, enumerate_gallai, gallai_partition, random_gallai, refine_connected,
    EnumerationCaps, EnumerationMode, GallaiPartition, TreeNode,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimId {
    Theorem6,
    GrOddLower,
    GrEvenLower,
    GrExactSmall,
    LemmaMcComplete,
    DecompRoundtrip,
}

impl ClaimId {
    pub const ALL: [ClaimId; 6] = [
        ClaimId::Theorem6,
        ClaimId::GrOddLower,
        ClaimId::GrEvenLower,
        ClaimId::GrExactSmall,
        ClaimId::LemmaMcComplete,
        ClaimId::DecompRoundtrip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Theorem6 => "theorem6",
            ClaimId::GrOddLower => "gr-odd-lower",
            ClaimId::GrEvenLower => "gr-even-lower",
            ClaimId::GrExactSmall => "gr-exact-small",
            ClaimId::LemmaMcComplete => "lemma-mc-complete",
            ClaimId::DecompRoundtrip => "decomp-roundtrip",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown claim {s:?}")))
    }
}

/// Ordered from best to worst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    BudgetExceeded,
    Fail,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::BudgetExceeded => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Pass => "pass",
            Verdict::BudgetExceeded => "budget-exceeded",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// File name the instance is written to when the report is persisted.
    pub instance_file: String,
    pub explanation: String,
    /// The offending coloring in the interchange format.
    #[serde(skip)]
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: ClaimId,
    pub parameters: BTreeMap<String, Value>,
    pub instances_run: u64,
    pub failures: Vec<Failure>,
    pub wall_time_ms: u64,
    pub verdict: Verdict,
    /// Counters beyond `instances_run` (skipped instances, budget events, …).
    #[serde(default)]
    pub tallies: BTreeMap<String, u64>,
}

impl VerificationReport {
    fn new(claim_id: ClaimId, parameters: BTreeMap<String, Value>) -> Self {
        VerificationReport {
            claim_id,
            parameters,
            instances_run: 0,
            failures: Vec::new(),
            wall_time_ms: 0,
            verdict: Verdict::Pass,
            tallies: BTreeMap::new(),
        }
    }

    fn fail(&mut self, instance: &ColoredKn, explanation: String) {
        let idx = self.failures.len();
        self.failures.push(Failure {
            instance_file: format!("{}-failure-{idx}.txt", self.claim_id),
            explanation,
            instance: instance.to_text(),
        });
    }

    fn tally(&mut self, key: &str, by: u64) {
        *self.tallies.entry(key.to_string()).or_default() += by;
    }

    fn finish(mut self, started: Instant) -> Self {
        self.wall_time_ms = started.elapsed().as_millis() as u64;
        let budget_events = self.tallies.get("budget_events").copied().unwrap_or(0);
        self.verdict = if !self.failures.is_empty() {
            Verdict::Fail
        } else if budget_events > 0 {
            Verdict::BudgetExceeded
        } else {
            Verdict::Pass
        };
        self
    }

    /// Same report with the wall time zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            wall_time_ms: 0,
            ..self.clone()
        }
    }

    /// Combines reports for several parameter points of one claim.
    pub fn merge(claim_id: ClaimId, parts: Vec<VerificationReport>) -> VerificationReport {
        let mut out = VerificationReport::new(claim_id, BTreeMap::new());
        out.parameters.insert(
            "points".into(),
            Value::Array(parts.iter().map(|r| json!(r.parameters)).collect()),
        );
        out.verdict = Verdict::Pass;
        for r in parts {
            out.instances_run += r.instances_run;
            out.wall_time_ms += r.wall_time_ms;
            out.verdict = out.verdict.max(r.verdict);
            for (k, v) in r.tallies {
                *out.tallies.entry(k).or_default() += v;
            }
            for f in r.failures {
                let idx = out.failures.len();
                out.failures.push(Failure {
                    instance_file: format!("{claim_id}-failure-{idx}.txt"),
                    ..f
                });
            }
        }
        out
    }
}

/// SplitMix64 finalizer over `master ⊕ index`; decorrelates per-instance seeds.
pub fn sub_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        ^ index
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// What a single instance check concluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceOutcome {
    /// The hypothesis does not apply; nothing to check.
    Skipped,
    /// The claimed structure was found.
    Holds(CycleWitness),
    /// The claim failed on this instance.
    Failed(String),
    BudgetExceeded,
}

/// Checks the even-cycle sufficient condition on one coloring: if
/// `N ≥ (n-1)·q + 2n + 2` with `q = q_value(n)`, a monochromatic `C_{2n}`
/// must exist.
pub fn theorem6_instance(c: &ColoredKn, n: usize, budget: u64) -> InstanceOutcome {
    let q = c.q_value(n);
    let threshold = (n - 1) * q + 2 * n + 2;
    if c.order() < threshold {
        return InstanceOutcome::Skipped;
    }
    match find_mono_cycle_with_budget(c, 2 * n, None, budget) {
        Ok(Some(w)) if w.validate_in_coloring(c, 2 * n) => InstanceOutcome::Holds(w),
        Ok(Some(w)) => InstanceOutcome::Failed(format!("search returned an invalid witness {w}")),
        Ok(None) => InstanceOutcome::Failed(format!(
            "N={} ≥ (n-1)q+2n+2={threshold} with q={q}, but no monochromatic C_{}",
            c.order(),
            2 * n
        )),
        Err(Error::BudgetExceeded(_)) => InstanceOutcome::BudgetExceeded,
        Err(e) => InstanceOutcome::Failed(format!("search error: {e}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem6Params {
    pub n: usize,
    /// Number of instances meeting the hypothesis to check.
    pub samples: usize,
    pub seed: u64,
    /// Extra room above the largest possible threshold when drawing `N`.
    pub slack: usize,
    pub max_order: usize,
    pub max_colors: usize,
    pub workers: usize,
    pub budget: u64,
}

impl Theorem6Params {
    pub fn new(n: usize, samples: usize, seed: u64) -> Self {
        Theorem6Params {
            n,
            samples,
            seed,
            slack: 4,
            max_order: 40,
            max_colors: 5,
            workers: 4,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Draws an instance for attempt `index`: `k` uniform in `1..=max_colors`,
/// `N` uniform between `2n+2` and the largest possible threshold plus slack.
fn theorem6_draw(p: &Theorem6Params, index: u64) -> Result<ColoredKn> {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(p.seed, index));
    let k = rng.gen_range(1..=p.max_colors);
    let lo = 2 * p.n + 2;
    let hi = ((p.n - 1) * k + 2 * p.n + 2 + p.slack)
        .min(p.max_order)
        .max(lo);
    let order = rng.gen_range(lo..=hi);
    random_gallai(order, k, rng.gen())
}

/// Random-instance check of the even-cycle sufficient condition. Instances
/// are drawn until `samples` of them meet the hypothesis (or 50·samples
/// attempts were made).
pub fn check_theorem6(p: &Theorem6Params) -> Result<VerificationReport> {
    let started = Instant::now();
    if p.n < 3 || p.samples == 0 || p.max_colors == 0 {
        return Err(Error::Precondition(
            "theorem6 needs n ≥ 3, samples ≥ 1, max_colors ≥ 1".into(),
        ));
    }
    if p.max_order < 2 * p.n + 2 {
        return Err(Error::InvalidConfig(format!(
            "max_order {} < 2n+2",
            p.max_order
        )));
    }
    let mut report = VerificationReport::new(ClaimId::Theorem6, params_map(p));
    let max_attempts = 50 * p.samples as u64;
    let batch = 512u64;
    let mut next = 0u64;
    while report.instances_run < p.samples as u64 && next < max_attempts {
        let end = (next + batch).min(max_attempts);
        let outcomes: Vec<(ColoredKn, InstanceOutcome)> = with_workers(p.workers, || {
            (next..end)
                .into_par_iter()
                .map(|i| {
                    let c = theorem6_draw(p, i)?;
                    let out = theorem6_instance(&c, p.n, p.budget);
                    Ok((c, out))
                })
                .collect::<Result<Vec<_>>>()
        })??;
        for (c, out) in outcomes {
            if report.instances_run >= p.samples as u64 {
                break;
            }
            report.tally("generated", 1);
            match out {
                InstanceOutcome::Skipped => report.tally("skipped", 1),
                InstanceOutcome::Holds(_) => report.instances_run += 1,
                InstanceOutcome::Failed(why) => {
                    report.instances_run += 1;
                    report.fail(&c, why);
                }
                InstanceOutcome::BudgetExceeded => {
                    report.instances_run += 1;
                    report.tally("budget_events", 1);
                }
            }
        }
        next = end;
    }
    Ok(report.finish(started))
}

fn params_map<T: Serialize>(p: &T) -> BTreeMap<String, Value> {
    match serde_json::to_value(p) {
        Ok(Value::Object(m)) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

/// Largest order at which the lower-bound check also runs a plain exhaustive search.
const EXHAUSTIVE_CROSS_CHECK_ORDER: usize = 24;

/// Builds the extremal coloring for `(family, n, k)` and checks its order,
/// that it is Gallai, and that every color class has a valid absence
/// certificate for the target cycle.
pub fn check_gr_lower(
    family: Family,
    n: usize,
    k: usize,
    budget: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let spec = ConstructionSpec { family, n, k };
    let claim = match family {
        Family::Odd => ClaimId::GrOddLower,
        Family::Even => ClaimId::GrEvenLower,
    };
    let mut report = VerificationReport::new(
        claim,
        params_map(&json!({ "family": family, "n": n, "k": k })),
    );
    let c = spec.build()?;
    let len = spec.target_length();
    report.instances_run = 1;
    if c.order() != spec.order() {
        report.fail(
            &c,
            format!("order {} ≠ expected {}", c.order(), spec.order()),
        );
    }
    if let Some(t) = c.find_rainbow_triangle() {
        report.fail(&c, format!("rainbow triangle {t}"));
    }
    match certify_no_mono_cycle_with_budget(&c, len, budget) {
        Ok(certs) => {
            for (color, cert) in &certs {
                if !cert.validate(&c.color_class(*color)?, len) {
                    report.fail(
                        &c,
                        format!(
                            "color {color}: {} certificate does not validate",
                            cert.variant()
                        ),
                    );
                }
                report.tally(&format!("certificates_{}", cert.variant()), 1);
            }
        }
        Err(Error::CycleFound { color, witness }) => {
            report.fail(&c, format!("color {color} contains C_{len}: {witness}"));
        }
        Err(Error::BudgetExceeded(_)) => report.tally("budget_events", 1),
        Err(e) => return Err(e),
    }
    if c.order() <= EXHAUSTIVE_CROSS_CHECK_ORDER {
        match find_mono_cycle_with_budget(&c, len, None, budget) {
            Ok(None) => report.tally("exhaustive_cross_checks", 1),
            Ok(Some(w)) => report.fail(&c, format!("exhaustive search found C_{len}: {w}")),
            Err(Error::BudgetExceeded(_)) => report.tally("budget_events", 1),
            Err(e) => return Err(e),
        }
    }
    Ok(report.finish(started))
}

/// Lower-bound check over a grid of `(n, k)`, merged into a single report.
pub fn check_gr_lower_grid(
    family: Family,
    ns: &[usize],
    ks: &[usize],
    budget: u64,
) -> Result<VerificationReport> {
    let claim = match family {
        Family::Odd => ClaimId::GrOddLower,
        Family::Even => ClaimId::GrEvenLower,
    };
    let mut parts = Vec::new();
    for &n in ns {
        for &k in ks {
            parts.push(check_gr_lower(family, n, k, budget)?);
        }
    }
    Ok(VerificationReport::merge(claim, parts))
}

/// Enumerates the Gallai `k`-colorings of `K_order` (one per color
/// permutation class) and checks each contains a monochromatic `C_{2n+1}`.
/// Stops at the first coloring that avoids it, which is recorded as the
/// failure: below the Gallai-Ramsey number such a coloring must exist.
pub fn check_gr_exact_small(
    n: usize,
    k: usize,
    order: usize,
    caps: EnumerationCaps,
    budget: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        ClaimId::GrExactSmall,
        params_map(
            &json!({ "n": n, "k": k, "N": order, "caps": [caps.max_order, caps.max_colors] }),
        ),
    );
    if n < 1 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let len = 2 * n + 1;
    for c in enumerate_gallai(order, k, EnumerationMode::UpToColorPermutation, caps)? {
        report.instances_run += 1;
        match find_mono_cycle_with_budget(&c, len, None, budget) {
            Ok(Some(_)) => {}
            Ok(None) => {
                report.fail(
                    &c,
                    format!("Gallai {k}-coloring of K_{order} without a monochromatic C_{len}; bound is tight at this scale"),
                );
                break;
            }
            Err(Error::BudgetExceeded(_)) => report.tally("budget_events", 1),
            Err(e) => return Err(e),
        }
    }
    Ok(report.finish(started))
}

/// Vertex sets of the children of every internal node, in global ids.
fn node_blocks(node: &TreeNode, out: &mut Vec<(Vec<Vec<usize>>, ColoredKn)>) -> Vec<usize> {
    match node {
        TreeNode::Leaf(v) => vec![*v],
        TreeNode::Node { reduced, children } => {
            let blocks: Vec<Vec<usize>> = children.iter().map(|ch| node_blocks(ch, out)).collect();
            let all = blocks.iter().flatten().copied().collect();
            out.push((blocks, reduced.clone()));
            all
        }
    }
}

/// Largest child count for which all block-union pairs are tried.
const MAX_SUBSET_BLOCKS: usize = 8;

/// Pairs of disjoint block selections `(Y, Z)` at one tree node.
fn block_pairs(p: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    if p <= MAX_SUBSET_BLOCKS {
        let total = 3usize.pow(p as u32);
        for code in 0..total {
            let (mut y, mut z) = (Vec::new(), Vec::new());
            let mut c = code;
            for i in 0..p {
                match c % 3 {
                    1 => y.push(i),
                    2 => z.push(i),
                    _ => {}
                }
                c /= 3;
            }
            // unordered pairs: Y holds the smallest selected block
            if !y.is_empty() && !z.is_empty() && y[0] < z[0] {
                out.push((y, z));
            }
        }
    } else {
        for i in 0..p {
            for j in i + 1..p {
                out.push((vec![i], vec![j]));
            }
            out.push((vec![i], (0..p).filter(|&j| j != i).collect()));
        }
    }
    out
}

/// Checks the mc-complete pair properties on one coloring known to have no
/// monochromatic `C_{2n+1}`. Returns the number of pairs examined or the
/// first violation.
pub fn mc_complete_instance(c: &ColoredKn, n: usize) -> Result<std::result::Result<u64, String>> {
    let tree = decompose_full(c)?;
    let mut nodes = Vec::new();
    node_blocks(&tree.root, &mut nodes);
    let mut examined = 0;
    for (blocks, reduced) in nodes {
        for (ys, zs) in block_pairs(blocks.len()) {
            let first = reduced.color(ys[0], zs[0]);
            if !ys
                .iter()
                .all(|&i| zs.iter().all(|&j| reduced.color(i, j) == first))
            {
                continue;
            }
            let y: Vec<usize> = ys.iter().flat_map(|&i| blocks[i].iter().copied()).collect();
            let z: Vec<usize> = zs.iter().flat_map(|&i| blocks[i].iter().copied()).collect();
            if y.len() < n || z.len() < n {
                continue;
            }
            examined += 1;
            if let Some(msg) = mc_complete_violation(c, &y, &z, first, n) {
                return Ok(Err(msg));
            }
        }
    }
    Ok(Ok(examined))
}

fn mc_complete_violation(
    c: &ColoredKn,
    y: &[usize],
    z: &[usize],
    color: Color,
    n: usize,
) -> Option<String> {
    // direct re-check that Y is color-complete to Z
    if !y.iter().all(|&a| z.iter().all(|&b| c.color(a, b) == color)) {
        return Some("pair selected as mc-complete is not".into());
    }
    let mut in_yz = vec![false; c.order()];
    for &v in y.iter().chain(z) {
        in_yz[v] = true;
    }
    if let Some(v) =
        (0..c.order()).find(|&v| !in_yz[v] && y.iter().chain(z).all(|&w| c.color(v, w) == color))
    {
        return Some(format!(
            "vertex {v} is {color}-complete to Y ∪ Z (|Y|={}, |Z|={})",
            y.len(),
            z.len()
        ));
    }
    for side in [y, z] {
        if side.len() > n {
            for (i, &a) in side.iter().enumerate() {
                if let Some(&b) = side[i + 1..].iter().find(|&&b| c.color(a, b) == color) {
                    return Some(format!(
                        "side of size {} ≥ n+1 has a color-{color} edge {{{a}, {b}}}",
                        side.len()
                    ));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaParams {
    pub n: usize,
    /// Number of colorings without a monochromatic `C_{2n+1}` to examine.
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
    pub budget: u64,
}

impl LemmaParams {
    pub fn new(n: usize, samples: usize, seed: u64) -> Self {
        LemmaParams {
            n,
            samples,
            seed,
            workers: 4,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Draws either a plain random Gallai coloring or a random restriction of an
/// odd extremal coloring under a random color permutation.
fn lemma_draw(p: &LemmaParams, index: u64) -> Result<ColoredKn> {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(p.seed, index));
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=4);
        let order = rng.gen_range(2 * p.n..=4 * p.n + 4);
        random_gallai(order, k, rng.gen())
    } else {
        let k = rng.gen_range(1..=3usize);
        let full = crate::constructions::build_odd_extremal(p.n, k)?;
        let keep_count = rng.gen_range(2 * p.n..=full.order());
        let mut keep: Vec<usize> = sample(&mut rng, full.order(), keep_count).into_vec();
        keep.shuffle(&mut rng);
        let sub = full.induced(&keep)?;
        let mut perm: Vec<Color> = (1..=k as Color).collect();
        perm.shuffle(&mut rng);
        ColoredKn::from_fn(sub.order(), k, |u, v| perm[sub.color(u, v) as usize - 1])
    }
}

/// Sampled check of the mc-complete pair properties over colorings without
/// a monochromatic `C_{2n+1}`; candidate pairs are unions of Gallai-partition
/// blocks at every level of the decomposition.
pub fn check_lemma_mc_complete(p: &LemmaParams) -> Result<VerificationReport> {
    let started = Instant::now();
    if p.n < 3 || p.samples == 0 {
        return Err(Error::Precondition(
            "lemma check needs n ≥ 3 and samples ≥ 1".into(),
        ));
    }
    let mut report = VerificationReport::new(ClaimId::LemmaMcComplete, params_map(p));
    let max_attempts = 50 * p.samples as u64;
    let batch = 256u64;
    let mut next = 0u64;
    while report.instances_run < p.samples as u64 && next < max_attempts {
        let end = (next + batch).min(max_attempts);
        let outcomes = with_workers(p.workers, || {
            (next..end)
                .into_par_iter()
                .map(|i| -> Result<_> {
                    let c = lemma_draw(p, i)?;
                    match find_mono_cycle_with_budget(&c, 2 * p.n + 1, None, p.budget) {
                        Ok(Some(_)) => Ok((c, None)),
                        Ok(None) => {
                            let res = mc_complete_instance(&c, p.n)?;
                            Ok((c, Some(Ok(res))))
                        }
                        Err(Error::BudgetExceeded(_)) => Ok((c, Some(Err(())))),
                        Err(e) => Err(e),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })??;
        for (c, out) in outcomes {
            if report.instances_run >= p.samples as u64 {
                break;
            }
            report.tally("generated", 1);
            match out {
                None => report.tally("skipped_has_cycle", 1),
                Some(Err(())) => report.tally("budget_events", 1),
                Some(Ok(Ok(pairs))) => {
                    report.instances_run += 1;
                    report.tally("pairs_checked", pairs);
                }
                Some(Ok(Err(why))) => {
                    report.instances_run += 1;
                    report.fail(&c, why);
                }
            }
        }
        next = end;
    }
    Ok(report.finish(started))
}

/// Whether each between color spans a connected subgraph of the reduced
/// graph; union-find over the reduced edges.
pub fn spanning_connected(p: &GallaiPartition) -> bool {
    let reduced = p.reduced_graph();
    let size = reduced.order();
    p.between_colors().into_iter().all(|col| {
        let mut parent: Vec<usize> = (0..size).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                x = parent[x];
            }
            x
        }
        for (u, v, c) in reduced.iter_edges() {
            if c == col {
                let (a, b) = (root(&mut parent, u), root(&mut parent, v));
                parent[a] = b;
            }
        }
        let r0 = root(&mut parent, 0);
        (0..size).all(|v| root(&mut parent, v) == r0)
    })
}

/// Round-trip checks on one Gallai coloring. `Err` carries the explanation.
pub fn roundtrip_instance(c: &ColoredKn) -> Result<std::result::Result<(), String>> {
    if c.order() < 2 {
        return Ok(Ok(()));
    }
    let p = gallai_partition(c)?;
    if !p.is_valid_for(c) {
        return Ok(Err("partition invariants violated".into()));
    }
    let rebuilt = compose(&p.reduced_graph(), &p.restrictions(c)?)?.relabeled(&p.vertex_order())?;
    if &rebuilt != c {
        return Ok(Err(
            "compose(reduced, restrictions) differs from the input".into()
        ));
    }
    let refined = refine_connected(c, &p)?;
    if !refined.is_valid_for(c) {
        return Ok(Err("refined partition invariants violated".into()));
    }
    if !spanning_connected(&refined) {
        return Ok(Err(
            "refined partition has a between color that does not span".into(),
        ));
    }
    let tree = decompose_full(c)?;
    if tree.leaf_count() != c.order() || &tree.compose()? != c {
        return Ok(Err(
            "full decomposition does not compose back to the input".into()
        ));
    }
    Ok(Ok(()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripParams {
    pub samples: usize,
    pub seed: u64,
    pub max_order: usize,
    pub max_colors: usize,
    pub workers: usize,
}

impl RoundtripParams {
    pub fn new(samples: usize, seed: u64) -> Self {
        RoundtripParams {
            samples,
            seed,
            max_order: 40,
            max_colors: 5,
            workers: 4,
        }
    }
}

pub fn roundtrip_draw(p: &RoundtripParams, index: u64) -> Result<ColoredKn> {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(p.seed, index));
    let order = rng.gen_range(1..=p.max_order);
    let k = rng.gen_range(1..=p.max_colors);
    random_gallai(order, k, rng.gen())
}

/// Decomposition round trip over random Gallai colorings.
pub fn check_decomp_roundtrip(p: &RoundtripParams) -> Result<VerificationReport> {
    let started = Instant::now();
    if p.max_order == 0 || p.max_colors == 0 {
        return Err(Error::InvalidConfig(
            "max_order and max_colors must be positive".into(),
        ));
    }
    let mut report = VerificationReport::new(ClaimId::DecompRoundtrip, params_map(p));
    let outcomes = with_workers(p.workers, || {
        (0..p.samples as u64)
            .into_par_iter()
            .map(|i| {
                let c = roundtrip_draw(p, i)?;
                let res = roundtrip_instance(&c)?;
                Ok((c, res))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    for (c, res) in outcomes {
        report.instances_run += 1;
        if let Err(why) = res {
            report.fail(&c, why);
        }
    }
    Ok(report.finish(started))
}

/// Suite configuration. Accepts JSON or `key = value` lines (lists
/// comma-separated, `#` comments).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub claims: Vec<ClaimId>,
    pub seed: u64,
    pub workers: usize,
    pub budget: u64,
    pub out_dir: PathBuf,
    pub theorem6_n: Vec<usize>,
    pub theorem6_samples: usize,
    pub slack: usize,
    pub max_order: usize,
    pub max_colors: usize,
    pub gr_n: Vec<usize>,
    pub gr_k: Vec<usize>,
    pub exact_n: usize,
    pub exact_k: usize,
    pub exact_order: usize,
    pub lemma_n: Vec<usize>,
    pub lemma_samples: usize,
    pub roundtrip_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            claims: vec![
                ClaimId::Theorem6,
                ClaimId::GrOddLower,
                ClaimId::GrEvenLower,
                ClaimId::DecompRoundtrip,
            ],
            seed: 1,
            workers: 4,
            budget: DEFAULT_BUDGET,
            out_dir: PathBuf::from("reports"),
            theorem6_n: vec![3, 4],
            theorem6_samples: 1000,
            slack: 4,
            max_order: 40,
            max_colors: 5,
            gr_n: vec![3, 4, 5],
            gr_k: vec![1, 2, 3, 4, 5],
            exact_n: 3,
            exact_k: 1,
            exact_order: 7,
            lemma_n: vec![3],
            lemma_samples: 200,
            roundtrip_samples: 1000,
        }
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::InvalidConfig(format!("{key}: cannot parse {s:?}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("{key}: cannot parse {value:?}")))
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()));
        }
        let mut cfg = SuiteConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::InvalidConfig(format!(
                    "line {}: expected key = value",
                    i + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "claims" => cfg.claims = parse_list(key, value)?,
                "seed" => cfg.seed = parse_one(key, value)?,
                "workers" => cfg.workers = parse_one(key, value)?,
                "budget" => cfg.budget = parse_one(key, value)?,
                "out_dir" => cfg.out_dir = PathBuf::from(value),
                "theorem6_n" => cfg.theorem6_n = parse_list(key, value)?,
                "theorem6_samples" => cfg.theorem6_samples = parse_one(key, value)?,
                "slack" => cfg.slack = parse_one(key, value)?,
                "max_order" => cfg.max_order = parse_one(key, value)?,
                "max_colors" => cfg.max_colors = parse_one(key, value)?,
                "gr_n" => cfg.gr_n = parse_list(key, value)?,
                "gr_k" => cfg.gr_k = parse_list(key, value)?,
                "exact_n" => cfg.exact_n = parse_one(key, value)?,
                "exact_k" => cfg.exact_k = parse_one(key, value)?,
                "exact_order" => cfg.exact_order = parse_one(key, value)?,
                "lemma_n" => cfg.lemma_n = parse_list(key, value)?,
                "lemma_samples" => cfg.lemma_samples = parse_one(key, value)?,
                "roundtrip_samples" => cfg.roundtrip_samples = parse_one(key, value)?,
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "line {}: unknown key {other:?}",
                        i + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

/// Runs one claim with the suite's parameters.
pub fn run_claim(cfg: &SuiteConfig, claim: ClaimId) -> Result<VerificationReport> {
    match claim {
        ClaimId::Theorem6 => {
            let parts = cfg
                .theorem6_n
                .iter()
                .map(|&n| {
                    check_theorem6(&Theorem6Params {
                        slack: cfg.slack,
                        max_order: cfg.max_order,
                        max_colors: cfg.max_colors,
                        workers: cfg.workers,
                        budget: cfg.budget,
                        ..Theorem6Params::new(n, cfg.theorem6_samples, cfg.seed)
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(VerificationReport::merge(claim, parts))
        }
        ClaimId::GrOddLower => check_gr_lower_grid(Family::Odd, &cfg.gr_n, &cfg.gr_k, cfg.budget),
        ClaimId::GrEvenLower => check_gr_lower_grid(Family::Even, &cfg.gr_n, &cfg.gr_k, cfg.budget),
        ClaimId::GrExactSmall => check_gr_exact_small(
            cfg.exact_n,
            cfg.exact_k,
            cfg.exact_order,
            EnumerationCaps::default(),
            cfg.budget,
        ),
        ClaimId::LemmaMcComplete => {
            let parts = cfg
                .lemma_n
                .iter()
                .map(|&n| {
                    check_lemma_mc_complete(&LemmaParams {
                        workers: cfg.workers,
                        budget: cfg.budget,
                        ..LemmaParams::new(n, cfg.lemma_samples, cfg.seed)
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(VerificationReport::merge(claim, parts))
        }
        ClaimId::DecompRoundtrip => check_decomp_roundtrip(&RoundtripParams {
            max_order: cfg.max_order,
            max_colors: cfg.max_colors,
            workers: cfg.workers,
            ..RoundtripParams::new(cfg.roundtrip_samples, cfg.seed)
        }),
    }
}

/// Worst verdict across reports; `Pass` for none.
pub fn worst_verdict(reports: &[VerificationReport]) -> Verdict {
    reports
        .iter()
        .map(|r| r.verdict)
        .max()
        .unwrap_or(Verdict::Pass)
}

/// Fails early if `dir` cannot be created or written to.
fn ensure_writable(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let probe = dir.join(format!(".write-probe-{}", std::process::id()));
    fs::write(&probe, b"")?;
    fs::remove_file(&probe)?;
    Ok(())
}

fn timestamp() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

/// A path in `dir` that does not exist yet: `stem.ext`, `stem-1.ext`, …
fn fresh_path(dir: &Path, stem: &str, ext: &str) -> PathBuf {
    let mut candidate = dir.join(format!("{stem}.{ext}"));
    let mut i = 1;
    while candidate.exists() {
        candidate = dir.join(format!("{stem}-{i}.{ext}"));
        i += 1;
    }
    candidate
}

/// Writes a report (and any failing instances) into `dir`; returns the report path.
pub fn write_report(dir: &Path, report: &VerificationReport) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let stem = format!("{}-{}", report.claim_id, timestamp());
    let path = fresh_path(dir, &stem, "json");
    let base = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(&stem)
        .to_string();
    let mut persisted = report.clone();
    for (i, f) in persisted.failures.iter_mut().enumerate() {
        let name = format!("{base}-failure-{i}.txt");
        fs::write(dir.join(&name), &f.instance)?;
        f.instance_file = name;
    }
    fs::write(&path, serde_json::to_string_pretty(&persisted)?)?;
    Ok(path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub reports: Vec<SummaryLine>,
    pub total_instances: u64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryLine {
    pub claim_id: ClaimId,
    pub verdict: Verdict,
    pub instances_run: u64,
    pub file: String,
}

/// Runs every configured claim and writes one JSON report per claim plus a
/// summary into `cfg.out_dir`. The directory is probed before any work, and
/// nothing is written until all claims have finished.
pub fn run_suite(cfg: &SuiteConfig) -> Result<(Vec<VerificationReport>, Option<SuiteSummary>)> {
    if cfg.claims.is_empty() {
        return Ok((Vec::new(), None));
    }
    ensure_writable(&cfg.out_dir)?;
    let reports = cfg
        .claims
        .iter()
        .map(|&claim| run_claim(cfg, claim))
        .collect::<Result<Vec<_>>>()?;
    let mut lines = Vec::new();
    for r in &reports {
        let path = write_report(&cfg.out_dir, r)?;
        lines.push(SummaryLine {
            claim_id: r.claim_id,
            verdict: r.verdict,
            instances_run: r.instances_run,
            file: path
                .file_name()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string(),
        });
    }
    let summary = SuiteSummary {
        total_instances: reports.iter().map(|r| r.instances_run).sum(),
        verdict: worst_verdict(&reports),
        reports: lines,
    };
    let path = fresh_path(&cfg.out_dir, &format!("summary-{}", timestamp()), "json");
    fs::write(path, serde_json::to_string_pretty(&summary)?)?;
    Ok((reports, Some(summary)))
}
