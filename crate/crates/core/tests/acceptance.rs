//! Acceptance gate: eight criteria, one PASS/FAIL line each. Runs without
//! the libtest harness so the lines always reach stdout.

mod common;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use gallai::cycles::find_mono_cycle_with_budget;
use gallai::verify::{check_theorem6, roundtrip_draw, RoundtripParams, Theorem6Params, Verdict};
use gallai::{
    bipartite_even_cycle, bondy_certificate, build_even_extremal, build_g0, build_odd_extremal,
    certify_no_mono_cycle, compose, enumerate_gallai, gallai_partition, has_cycle_length,
    refine_connected, BondyOutcome, ColoredKn, EnumerationCaps, EnumerationMode, EvenCycleOutcome,
    SimpleGraph,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn certify_grid(
    build: fn(usize, usize) -> gallai::Result<ColoredKn>,
    order: fn(usize, usize) -> usize,
    len: fn(usize) -> usize,
) -> Check {
    let mut colorings = 0;
    for n in 3..=5 {
        for k in 1..=5 {
            let c = build(n, k).map_err(|e| format!("build({n},{k}): {e}"))?;
            ensure(c.order() == order(n, k), || {
                format!("({n},{k}): order {} ≠ {}", c.order(), order(n, k))
            })?;
            ensure(
                c.find_rainbow_triangle().is_none() && !brute_has_rainbow(&c),
                || format!("({n},{k}): rainbow triangle"),
            )?;
            let certs =
                certify_no_mono_cycle(&c, len(n)).map_err(|e| format!("certify({n},{k}): {e}"))?;
            ensure(certs.len() == c.used_colors().len(), || {
                format!("({n},{k}): a color lacks a certificate")
            })?;
            for (&color, cert) in &certs {
                let class = c.color_class(color).unwrap();
                ensure(cert.validate(&class, len(n)), || {
                    format!(
                        "({n},{k}) color {color}: {} certificate invalid",
                        cert.variant()
                    )
                })?;
            }
            colorings += 1;
        }
    }
    Ok(format!("{colorings} colorings certified"))
}

fn odd_grid() -> Check {
    certify_grid(build_odd_extremal, |n, k| n << k, |n| 2 * n + 1)
}

fn even_grid() -> Check {
    certify_grid(build_even_extremal, |n, k| (n - 1) * k + n, |n| 2 * n)
}

fn classical_ramsey_witness() -> Check {
    let c = build_odd_extremal(3, 2).map_err(|e| e.to_string())?;
    ensure(c.order() == 12 && c.used_colors().len() == 2, || {
        "not a 2-coloring of K12".into()
    })?;
    let found = find_mono_cycle_with_budget(&c, 7, None, 100_000_000).map_err(|e| e.to_string())?;
    ensure(found.is_none(), || format!("found {:?}", found))?;
    // independent confirmation on each color class
    for color in [1, 2] {
        let class = c.color_class(color).unwrap();
        ensure(!brute_has_cycle(&class, 7), || {
            format!("oracle found a C7 in color {color}")
        })?;
    }
    Ok("K12 has no monochromatic C7, so R2(C7) ≥ 13 = 4n+1".into())
}

fn theorem6_harness() -> Check {
    let mut total = 0;
    for n in [3, 4] {
        let p = Theorem6Params {
            workers: 4,
            ..Theorem6Params::new(n, 10_000, 20_240 + n as u64)
        };
        let r = check_theorem6(&p).map_err(|e| e.to_string())?;
        ensure(r.instances_run == 10_000, || {
            format!(
                "n={n}: only {} instances met the hypothesis",
                r.instances_run
            )
        })?;
        ensure(r.verdict == Verdict::Pass, || {
            format!(
                "n={n}: verdict {} with failures {:?}, tallies {:?}",
                r.verdict, r.failures, r.tallies
            )
        })?;
        total += r.instances_run;
    }
    Ok(format!(
        "{total} instances, all contain a monochromatic C_2n"
    ))
}

fn decomposition_round_trip() -> Check {
    let p = RoundtripParams::new(1000, 77);
    for i in 0..1000 {
        let c = roundtrip_draw(&p, i).map_err(|e| e.to_string())?;
        ensure(c.order() <= 40 && c.color_count() <= 5, || {
            "instance outside N ≤ 40, k ≤ 5".into()
        })?;
        if c.order() < 2 {
            continue;
        }
        let part = gallai_partition(&c).map_err(|e| format!("instance {i}: {e}"))?;
        let restrictions = part.restrictions(&c).unwrap();
        let rebuilt = compose(&part.reduced_graph(), &restrictions)
            .and_then(|x| x.relabeled(&part.vertex_order()))
            .map_err(|e| format!("instance {i}: {e}"))?;
        ensure(rebuilt == c, || format!("instance {i}: round trip differs"))?;
        let refined = refine_connected(&c, &part).map_err(|e| format!("instance {i}: {e}"))?;
        let reduced = refined.reduced_graph();
        for color in refined.between_colors() {
            let edges = reduced
                .iter_edges()
                .filter(|e| e.2 == color)
                .map(|(u, v, _)| (u, v));
            ensure(uf_component_count(reduced.order(), edges) == 1, || {
                format!("instance {i}: color {color} does not span the reduced graph")
            })?;
        }
    }
    Ok("1000 instances round-trip; refined colors span".into())
}

fn random_small_graph(rng: &mut ChaCha8Rng) -> SimpleGraph {
    let n = rng.gen_range(1..=8);
    let p: f64 = rng.gen_range(0.15..0.9);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    SimpleGraph::from_edges(n, edges).unwrap()
}

fn agree_on(g: &SimpleGraph) -> Result<(), String> {
    for len in 3..=8 {
        let got = has_cycle_length(g, len).map_err(|e| e.to_string())?;
        let want = brute_has_cycle(g, len);
        ensure(got.is_some() == want, || {
            format!(
                "ℓ={len} disagreement on {:?}",
                g.edges().collect::<Vec<_>>()
            )
        })?;
        if let Some(w) = got {
            ensure(is_cycle_in(g, &w.vertices, len), || {
                format!("invalid witness {w}")
            })?;
        }
    }
    Ok(())
}

fn cycle_oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5000);
    for _ in 0..5000 {
        agree_on(&random_small_graph(&mut rng))?;
    }
    let mut classes = 0;
    for c in enumerate_gallai(5, 3, EnumerationMode::Raw, EnumerationCaps::default())
        .map_err(|e| e.to_string())?
    {
        for g in c.color_classes() {
            agree_on(&g)?;
            classes += 1;
        }
    }
    Ok(format!(
        "5000 random graphs and {classes} color classes agree for ℓ = 3..8"
    ))
}

fn relabel(g: &SimpleGraph, perm: &[usize]) -> SimpleGraph {
    SimpleGraph::from_edges(g.order(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

#[allow(clippy::needless_range_loop)]
fn lemma_dichotomies() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let (mut cycles, mut gadgets) = (0, 0);
    for i in 0..1000 {
        let (g, a_side, b_side, half) = if i % 5 == 0 {
            // the gadget with both A-parts too small to carry a C_{2ℓ}
            let half = rng.gen_range(2..=4);
            let b = rng.gen_range(half..=5);
            let g0 = build_g0(b, half - 1, half - 1).unwrap();
            let mut perm: Vec<usize> = (0..g0.graph.order()).collect();
            perm.shuffle(&mut rng);
            let a: Vec<usize> = g0.a_side.iter().map(|&v| perm[v]).collect();
            let bs: Vec<usize> = g0.b_side.iter().map(|&v| perm[v]).collect();
            (relabel(&g0.graph, &perm), a, bs, half)
        } else {
            let na = rng.gen_range(2..=6);
            let nb = rng.gen_range(5..=9);
            let order = na + nb;
            let mut perm: Vec<usize> = (0..order).collect();
            perm.shuffle(&mut rng);
            let a: Vec<usize> = perm[..na].to_vec();
            let bs: Vec<usize> = perm[na..].to_vec();
            let mut edges = Vec::new();
            for &x in &a {
                let deg = rng.gen_range((nb + 2) / 2..=nb);
                edges.extend(bs.choose_multiple(&mut rng, deg).map(|&y| (x, y)));
            }
            let half = rng.gen_range(2..=na.min((nb - 1) / 2));
            (SimpleGraph::from_edges(order, edges).unwrap(), a, bs, half)
        };
        match bipartite_even_cycle(&g, &a_side, &b_side, half)
            .map_err(|e| format!("instance {i}: {e}"))?
        {
            EvenCycleOutcome::Cycle(w) => {
                ensure(is_cycle_in(&g, &w.vertices, 2 * half), || {
                    format!("instance {i}: bad cycle {w}")
                })?;
                cycles += 1;
            }
            EvenCycleOutcome::G0(w) => {
                ensure(w.validate(&g), || format!("instance {i}: bad G0 witness"))?;
                ensure(!brute_has_cycle(&g, 2 * half), || {
                    format!("instance {i}: G0 reported but C_{} exists", 2 * half)
                })?;
                gadgets += 1;
            }
        }
    }
    ensure(gadgets >= 200, || format!("only {gadgets} gadget outcomes"))?;

    let (mut pancyclic, mut balanced) = (0, 0);
    for i in 0..1000 {
        let g = if i % 10 == 0 {
            let m = rng.gen_range(2..=6);
            let mut perm: Vec<usize> = (0..2 * m).collect();
            perm.shuffle(&mut rng);
            relabel(&SimpleGraph::complete_bipartite(m, m), &perm)
        } else {
            let n = rng.gen_range(3..=12);
            let p: f64 = rng.gen_range(0.3..0.8);
            let mut adj = vec![vec![false; n]; n];
            for u in 0..n {
                for v in u + 1..n {
                    let e = rng.gen_bool(p);
                    adj[u][v] = e;
                    adj[v][u] = e;
                }
            }
            // raise every degree to at least n/2
            for u in 0..n {
                let mut others: Vec<usize> = (0..n).filter(|&v| v != u && !adj[u][v]).collect();
                others.shuffle(&mut rng);
                while 2 * adj[u].iter().filter(|&&e| e).count() < n {
                    let v = others.pop().unwrap();
                    adj[u][v] = true;
                    adj[v][u] = true;
                }
            }
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| adj[u][v])
                .collect();
            SimpleGraph::from_edges(n, edges).unwrap()
        };
        match bondy_certificate(&g).map_err(|e| format!("bondy instance {i}: {e}"))? {
            BondyOutcome::Pancyclic(cycles) => {
                for len in 3..=g.order() {
                    let w = cycles
                        .get(&len)
                        .ok_or(format!("bondy instance {i}: no C_{len}"))?;
                    ensure(is_cycle_in(&g, &w.vertices, len), || {
                        format!("bondy instance {i}: bad C_{len}")
                    })?;
                }
                pancyclic += 1;
            }
            BondyOutcome::BalancedBipartite { left, right } => {
                ensure(
                    left.len() == right.len() && is_complete_bipartite_on(&g, &left, &right),
                    || format!("bondy instance {i}: not K_m,m"),
                )?;
                balanced += 1;
            }
            BondyOutcome::NotApplicable => {
                return Err(format!("bondy instance {i}: degree condition not met"))
            }
        }
    }
    Ok(format!(
        "even-cycle: {cycles} cycles, {gadgets} gadgets; min-degree: {pancyclic} pancyclic, {balanced} balanced bipartite"
    ))
}

fn enumeration_counts() -> Check {
    let caps = EnumerationCaps::default();
    let raw33 = enumerate_gallai(3, 3, EnumerationMode::Raw, caps)
        .map_err(|e| e.to_string())?
        .count();
    ensure(raw33 == 21, || {
        format!("enumerate_gallai(3,3) gave {raw33}")
    })?;
    for order in 1..=5 {
        for k in 1..=3 {
            let brute = brute_gallai_colorings(order, k);
            let mut raw: Vec<Vec<u8>> = enumerate_gallai(order, k, EnumerationMode::Raw, caps)
                .map_err(|e| e.to_string())?
                .map(|c| c.edge_colors().to_vec())
                .collect();
            raw.sort();
            ensure(raw == brute, || {
                format!(
                    "raw set differs at N={order}, k={k}: {} vs {}",
                    raw.len(),
                    brute.len()
                )
            })?;
            let canonical = brute.iter().filter(|e| is_color_canonical(e)).count();
            let up_to = enumerate_gallai(order, k, EnumerationMode::UpToColorPermutation, caps)
                .map_err(|e| e.to_string())?
                .count();
            ensure(up_to == canonical, || {
                format!("up-to-permutation count at N={order}, k={k}: {up_to} vs {canonical}")
            })?;
        }
    }
    Ok("raw(3,3) = 21; N ≤ 5, k ≤ 3 match brute force".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "1 odd lower-bound witnesses",
            odd_grid,
            Duration::from_secs(60),
        ),
        (
            "2 even lower-bound witnesses",
            even_grid,
            Duration::from_secs(30),
        ),
        (
            "3 classical Ramsey witness R2(C7) ≥ 13",
            classical_ramsey_witness,
            Duration::from_secs(120),
        ),
        (
            "4 even-cycle sufficient condition harness",
            theorem6_harness,
            Duration::from_secs(15 * 60),
        ),
        (
            "5 decomposition round trip",
            decomposition_round_trip,
            Duration::from_secs(120),
        ),
        (
            "6 cycle-search oracle equivalence",
            cycle_oracle_equivalence,
            Duration::from_secs(300),
        ),
        (
            "7 lemma dichotomies",
            lemma_dichotomies,
            Duration::from_secs(300),
        ),
        (
            "8 enumeration counts",
            enumeration_counts,
            Duration::from_secs(120),
        ),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("{msg}, but took {elapsed:.1?} > {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({elapsed:.1?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({elapsed:.1?}) {msg}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
