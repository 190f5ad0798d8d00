use lottogap::ingest::serialize_draws;
use lottogap::montecarlo::draw_history;
use lottogap::{
    audit, gap_probability, parse_draws, simulate, DrawRecord, DrawSpec, SimConfig, Topology,
};

fn spec(n: u32, m: u32) -> DrawSpec {
    DrawSpec::new(n, m).unwrap()
}

fn history(s: DrawSpec, draws: usize, seed: u64) -> Vec<DrawRecord> {
    draw_history(s, draws, seed)
        .into_iter()
        .enumerate()
        .map(|(i, numbers)| DrawRecord {
            label: format!("draw-{i:06}"),
            numbers,
        })
        .collect()
}

#[test]
fn wilson_coverage_is_calibrated() {
    let s = spec(20, 4);
    let exact = gap_probability(s, 3, Topology::Line).unwrap().p.to_f64();
    let run = |offset: u64| {
        (0..100u64)
            .filter(|seed| {
                let r =
                    simulate(&SimConfig::new(s, 3, Topology::Line, 10_000, seed + offset)).unwrap();
                r.ci_low <= exact && exact <= r.ci_high
            })
            .count()
    };
    // One rerun with fresh seeds is allowed.
    let covered = run(0);
    assert!(
        covered >= 90 || run(1_000) >= 90,
        "first pass covered {covered}/100"
    );
}

#[test]
fn estimates_stay_within_five_sigma() {
    for (n, m, k, topo) in [
        (49, 6, 2, Topology::Line),
        (49, 6, 3, Topology::Cycle),
        (30, 5, 4, Topology::Line),
        (12, 3, 2, Topology::Cycle),
    ] {
        let s = spec(n, m);
        let p = gap_probability(s, k, topo).unwrap().p.to_f64();
        let trials = 100_000;
        let r = simulate(&SimConfig::new(s, k, topo, trials, 7).with_workers(3)).unwrap();
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (r.estimate - p).abs() < 5.0 * sigma,
            "{n} {m} {k} {topo}: {} vs {p}",
            r.estimate
        );
    }
}

#[test]
fn synthetic_history_audits_clean() {
    let s = spec(49, 6);
    let text = serialize_draws(&history(s, 10_000, 11));
    let records = parse_draws(text.as_bytes(), s).unwrap();
    assert_eq!(records.len(), 10_000);
    for topo in [Topology::Line, Topology::Cycle] {
        let report = audit(&records, s, topo, 8).unwrap();
        for row in &report.rows {
            assert!(row.exact_inside, "{topo} k={}: {row:?}", row.k);
        }
    }
}

#[test]
fn audit_deviation_shrinks_with_history_length() {
    let s = spec(49, 6);
    let mean_dev = |draws: usize| {
        (0..5u64)
            .map(|seed| {
                let report = audit(&history(s, draws, 500 + seed), s, Topology::Line, 6).unwrap();
                report.rows.iter().map(|r| r.deviation).sum::<f64>() / report.rows.len() as f64
            })
            .sum::<f64>()
            / 5.0
    };
    let small = mean_dev(1_000);
    let large = mean_dev(100_000);
    // Expected ratio is sqrt(100) = 10; require a clear shrink.
    assert!(large * 3.0 < small, "1e3: {small}, 1e5: {large}");
}
