//! Counts Gallai colorings of small complete graphs, raw and up to color
//! permutation, and uses the enumeration to find a 3-colored K7 without a
//! monochromatic C7.

use gallai::{enumerate_gallai, find_mono_cycle, EnumerationCaps, EnumerationMode};

fn main() -> gallai::Result<()> {
    let caps = EnumerationCaps::default();
    println!("{:>2} {:>2} {:>8} {:>10}", "N", "k", "raw", "up to perm");
    for order in 2..=5 {
        for k in 1..=3 {
            let raw = enumerate_gallai(order, k, EnumerationMode::Raw, caps)?.count();
            let classes =
                enumerate_gallai(order, k, EnumerationMode::UpToColorPermutation, caps)?.count();
            println!("{order:>2} {k:>2} {raw:>8} {classes:>10}");
        }
    }

    let mut seen = 0;
    for c in enumerate_gallai(7, 3, EnumerationMode::UpToColorPermutation, caps)? {
        seen += 1;
        if find_mono_cycle(&c, 7, None)?.is_none() {
            print!("\nafter {seen} colorings, one with no monochromatic C7:\n{c}");
            break;
        }
    }
    Ok(())
}
