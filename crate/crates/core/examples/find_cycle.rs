//! Monochromatic cycle search with witnesses, plus the two structural cycle
//! results: minimum-degree pancyclicity and odd cycles in complete
//! multipartite graphs.

use gallai::cycles::find_mono_cycle_with_budget;
use gallai::{
    bondy_certificate, build_odd_extremal, multipartite_odd_cycle, BondyOutcome, SimpleGraph,
};

fn main() -> gallai::Result<()> {
    let c = build_odd_extremal(3, 2)?;
    for len in 3..=8 {
        match find_mono_cycle_with_budget(&c, len, None, 1_000_000)? {
            Some(w) => println!("C_{len}: {w}"),
            None => println!("C_{len}: none"),
        }
    }

    let g = SimpleGraph::complete_multipartite(&[3, 3, 2]);
    match bondy_certificate(&g)? {
        BondyOutcome::Pancyclic(cycles) => {
            println!(
                "\nK(3,3,2) has min degree {} ≥ 8/2; one cycle per length:",
                g.min_degree()
            );
            for (len, w) in cycles {
                println!("  {len}: {w}");
            }
        }
        other => println!("\nunexpected: {other:?}"),
    }
    if let BondyOutcome::BalancedBipartite { left, right } =
        bondy_certificate(&SimpleGraph::complete_bipartite(3, 3))?
    {
        println!("K(3,3) is the exception: sides {left:?} / {right:?}");
    }

    let parts = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7]];
    println!(
        "\nC7 across parts {parts:?}: {}",
        multipartite_odd_cycle(&parts, 3)?
    );
    Ok(())
}
