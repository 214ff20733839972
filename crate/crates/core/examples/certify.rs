//! Absence certificates for every color class of an extremal coloring, in
//! the same JSON shape the `certify` subcommand writes.

use gallai::constructions::{certify_no_mono_cycle, CertificateReport};
use gallai::{build_even_extremal, build_odd_extremal, ColoredKn, SimpleGraph};

fn main() -> gallai::Result<()> {
    for (name, c, len) in [
        ("odd n=3 k=3", build_odd_extremal(3, 3)?, 7),
        ("even n=4 k=3", build_even_extremal(4, 3)?, 8),
    ] {
        let certs = certify_no_mono_cycle(&c, len)?;
        println!("{name} (K_{}), no monochromatic C_{len}:", c.order());
        for (color, cert) in &certs {
            let ok = cert.validate(&c.color_class(*color)?, len);
            println!("  color {color}: {} (valid: {ok})", cert.variant());
        }
    }

    // pentagon and its complement: only an exhaustive search rules out C4
    let g = SimpleGraph::cycle(5);
    let c = ColoredKn::from_fn(5, 2, |u, v| if g.has_edge(u, v) { 1 } else { 2 })?;
    let report = CertificateReport::new(&c, 4, certify_no_mono_cycle(&c, 4)?)?;
    println!("\n{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
