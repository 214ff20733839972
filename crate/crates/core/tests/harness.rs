use std::fs;

use gallai::verify::{
    check_decomp_roundtrip, check_gr_lower_grid, check_lemma_mc_complete, check_theorem6,
    run_suite, LemmaParams, RoundtripParams, SuiteConfig, Theorem6Params, Verdict,
    VerificationReport,
};
use gallai::{Error, Family, DEFAULT_BUDGET};

#[test]
fn theorem6_default_point_passes() {
    let r = check_theorem6(&Theorem6Params::new(4, 500, 1)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.instances_run, 500);
}

#[test]
fn theorem6_rejects_small_n() {
    assert!(matches!(
        check_theorem6(&Theorem6Params::new(2, 10, 1)),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn lower_bound_grids_pass() {
    let ks = [1, 2, 3, 4, 5];
    for family in [Family::Odd, Family::Even] {
        let r = check_gr_lower_grid(family, &[3, 4, 5], &ks, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{family}: {:?}", r.failures);
        assert_eq!(r.instances_run, 15);
    }
}

#[test]
fn lemma_default_grid_passes() {
    let r = check_lemma_mc_complete(&LemmaParams::new(3, 200, 9)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);
    assert_eq!(r.instances_run, 200);
    assert!(r.tallies["pairs_checked"] > 0);
}

#[test]
fn reports_reproduce_from_their_parameters() {
    let p = RoundtripParams::new(200, 5);
    let a = check_decomp_roundtrip(&p).unwrap();
    let embedded: RoundtripParams =
        serde_json::from_value(serde_json::to_value(&a.parameters).unwrap()).unwrap();
    let b = check_decomp_roundtrip(&embedded).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
    assert_eq!(a.verdict, Verdict::Pass);
}

#[test]
fn suite_writes_reports_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SuiteConfig::parse(&format!(
        "claims = theorem6, gr-even-lower, decomp-roundtrip\ntheorem6_samples = 50\nroundtrip_samples = 50\nout_dir = {}\n",
        dir.path().display()
    ))
    .unwrap();
    let (reports, summary) = run_suite(&cfg).unwrap();
    let summary = summary.unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(
        summary.total_instances,
        reports.iter().map(|r| r.instances_run).sum::<u64>()
    );
    assert_eq!(summary.verdict, Verdict::Pass);
    for line in &summary.reports {
        let text = fs::read_to_string(dir.path().join(&line.file)).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.claim_id, line.claim_id);
        assert_eq!(back.instances_run, line.instances_run);
    }
    let files = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 4);
}

#[test]
fn empty_suite_is_a_no_op() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SuiteConfig {
        claims: vec![],
        out_dir: dir.path().join("never"),
        ..SuiteConfig::default()
    };
    let (reports, summary) = run_suite(&cfg).unwrap();
    assert!(reports.is_empty() && summary.is_none());
    assert!(!cfg.out_dir.exists());
}

#[test]
fn unwritable_output_fails_before_any_work() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let cfg = SuiteConfig {
        claims: vec![gallai::verify::ClaimId::GrOddLower],
        out_dir: blocker.join("reports"),
        ..SuiteConfig::default()
    };
    assert!(matches!(run_suite(&cfg), Err(Error::Io(_))));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
