//! Gallai partition, connected refinement and full decomposition tree of a
//! random Gallai coloring, followed by the round trip back to the input.
//!
//!     cargo run --example decompose -- [ORDER] [COLORS] [SEED]

use gallai::{compose, decompose_full, gallai_partition, random_gallai, refine_connected};

fn main() -> gallai::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let order = args.first().copied().unwrap_or(14) as usize;
    let colors = args.get(1).copied().unwrap_or(3) as usize;
    let seed = args.get(2).copied().unwrap_or(7);

    let c = random_gallai(order, colors, seed)?;
    println!(
        "random Gallai {colors}-coloring of K_{order} (seed {seed}), q(·,3) = {}",
        c.q_value(3)
    );

    let p = gallai_partition(&c)?;
    println!(
        "\npartition ({} blocks, between colors {:?}):\n{p}",
        p.len(),
        p.between_colors()
    );

    let refined = refine_connected(&c, &p)?;
    println!(
        "connected refinement ({} blocks):\n{refined}",
        refined.len()
    );

    let tree = decompose_full(&c)?;
    println!("tree of depth {}:\n{tree}", tree.depth());

    let rebuilt =
        compose(&p.reduced_graph(), &p.restrictions(&c)?)?.relabeled(&p.vertex_order())?;
    println!(
        "\nsubstituting the blocks back gives the input: {}",
        rebuilt == c
    );
    println!(
        "composing the tree gives the input: {}",
        tree.compose()? == c
    );
    Ok(())
}
