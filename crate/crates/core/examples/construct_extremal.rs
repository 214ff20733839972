//! Builds both extremal families and prints their sizes next to the cycle
//! length they avoid.
//!
//!     cargo run --example construct_extremal

use gallai::{build_even_extremal, build_odd_extremal, find_mono_cycle};

fn main() -> gallai::Result<()> {
    println!("odd family: n·2^k vertices, no monochromatic C_(2n+1)");
    for n in 3..=4 {
        for k in 1..=4 {
            let c = build_odd_extremal(n, k)?;
            println!("  n={n} k={k}: K_{:<3} gallai={}", c.order(), c.is_gallai());
        }
    }
    println!("even family: (n-1)k+n vertices, no monochromatic C_2n");
    for n in 3..=4 {
        for k in 1..=4 {
            let c = build_even_extremal(n, k)?;
            let absent = find_mono_cycle(&c, 2 * n, None)?.is_none();
            println!(
                "  n={n} k={k}: K_{:<3} gallai={} no C_{}={absent}",
                c.order(),
                c.is_gallai(),
                2 * n
            );
        }
    }
    let c = build_odd_extremal(3, 2)?;
    print!("\nthe 2-colored K12 (no monochromatic C7):\n{c}");
    Ok(())
}
