//! The bipartite even-cycle dichotomy: a dense-enough bipartite graph has a
//! C_2l unless it is the five-part gadget G0.

use gallai::{bipartite_even_cycle, build_g0, EvenCycleOutcome, SimpleGraph};

fn show(name: &str, outcome: EvenCycleOutcome) {
    match outcome {
        EvenCycleOutcome::Cycle(w) => println!("{name}: cycle {w}"),
        EvenCycleOutcome::G0(w) => println!(
            "{name}: G0 with A1={:?} A2={:?} B1={:?} B2={:?} B3={}",
            w.a1, w.a2, w.b1, w.b2, w.b3
        ),
    }
}

fn main() -> gallai::Result<()> {
    let g = SimpleGraph::complete_bipartite(3, 5);
    let (a, b): (Vec<usize>, Vec<usize>) = ((0..3).collect(), (3..8).collect());
    show("K(3,5), l=2", bipartite_even_cycle(&g, &a, &b, 2)?);

    // each A-part has a single vertex, so no C4 fits
    let g0 = build_g0(2, 1, 1)?;
    show(
        "G0(b=2), l=2",
        bipartite_even_cycle(&g0.graph, &g0.a_side, &g0.b_side, 2)?,
    );

    let g0 = build_g0(3, 3, 2)?;
    show(
        "G0(b=3, |A1|=3), l=3",
        bipartite_even_cycle(&g0.graph, &g0.a_side, &g0.b_side, 3)?,
    );

    match bipartite_even_cycle(&SimpleGraph::path(6), &[0, 2], &[1, 3, 4, 5], 2) {
        Err(e) => println!("path P6: {e}"),
        Ok(o) => show("path P6", o),
    }
    Ok(())
}
