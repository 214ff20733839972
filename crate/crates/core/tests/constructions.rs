mod common;

use common::*;
use gallai::{
    build_even_extremal, build_odd_extremal, certify_no_mono_cycle, decompose_full, ColoredKn,
};

#[test]
fn odd_family_grid_with_small_n() {
    for n in 2..=5 {
        for k in 1..=6 {
            let c = build_odd_extremal(n, k).unwrap();
            assert_eq!(c.order(), n << k);
            assert!(c.find_rainbow_triangle().is_none());
            let certs = certify_no_mono_cycle(&c, 2 * n + 1).unwrap();
            for (&col, cert) in &certs {
                assert!(cert.validate(&c.color_class(col).unwrap(), 2 * n + 1));
            }
        }
    }
}

#[test]
fn even_family_grid() {
    for n in 3..=5 {
        for k in 1..=6 {
            let c = build_even_extremal(n, k).unwrap();
            assert_eq!(c.order(), (n - 1) * k + n);
            assert!(!brute_has_rainbow(&c));
            let certs = certify_no_mono_cycle(&c, 2 * n).unwrap();
            assert_eq!(certs.len(), k);
        }
    }
}

#[test]
fn odd_family_has_one_join_level_per_color() {
    for k in 1..=5 {
        let tree = decompose_full(&build_odd_extremal(3, k).unwrap()).unwrap();
        assert_eq!(tree.depth(), k, "k = {k}");
        assert_eq!(tree.leaf_count(), 3 << k);
    }
}

#[test]
fn smallest_odd_instance_is_maximal() {
    // K6 in one color: every one-vertex extension is K7 in that color
    let base = build_odd_extremal(3, 1).unwrap();
    let extended =
        ColoredKn::from_fn(7, 1, |u, v| if v < 6 { base.color(u, v) } else { 1 }).unwrap();
    assert!(extended.is_gallai());
    assert!(brute_has_cycle(&extended.color_class(1).unwrap(), 7));
}
