//! Runs each claim check at a small size and prints the JSON reports.
//!
//!     cargo run --release --example verify_claims

use gallai::verify::{
    check_decomp_roundtrip, check_gr_exact_small, check_gr_lower, check_lemma_mc_complete,
    check_theorem6, LemmaParams, RoundtripParams, Theorem6Params,
};
use gallai::{EnumerationCaps, Family, DEFAULT_BUDGET};

fn main() -> gallai::Result<()> {
    let reports = [
        check_theorem6(&Theorem6Params::new(3, 500, 1))?,
        check_gr_lower(Family::Odd, 3, 3, DEFAULT_BUDGET)?,
        check_gr_lower(Family::Even, 4, 2, DEFAULT_BUDGET)?,
        check_gr_exact_small(3, 1, 7, EnumerationCaps::default(), DEFAULT_BUDGET)?,
        check_lemma_mc_complete(&LemmaParams::new(3, 50, 9))?,
        check_decomp_roundtrip(&RoundtripParams::new(200, 3))?,
    ];
    for r in &reports {
        println!(
            "{:<18} {:<6} {:>5} instances {:>5} ms",
            r.claim_id, r.verdict, r.instances_run, r.wall_time_ms
        );
    }
    println!("\n{}", serde_json::to_string_pretty(&reports[0])?);
    Ok(())
}
