//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line. Randomized suites use a fixed seed so failures
//! reproduce.

use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linkvol::bounds::{
    self, constants, two_bridge_values, JonesFamily, REFERENCE_V3, REFERENCE_V8,
};
use linkvol::braid::{braid_to_diagram, BraidWord, Closure};
use linkvol::corpus::{batch, read_corpus};
use linkvol::jones;
use linkvol::plat::{plat_closure, PlatClass, PlatSpec};
use linkvol::report::{analyze, AnalysisInput, AnalysisOptions};
use linkvol::state::{all_a_state, check_telc, is_a_adequate};
use linkvol::twist::{classify_regions, detect_twist_regions};

fn corpus_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus.csv")
}

fn random_strongly_negative(rng: &mut ChaCha8Rng) -> PlatSpec {
    let n = rng.gen_range(3..=6);
    let k = rng.gen_range(1..=4);
    let mut rows = Vec::new();
    for i in 1..=(2 * k + 1) {
        let width = if i % 2 == 1 { n - 1 } else { n };
        let row: Vec<i32> = (0..width)
            .map(|_| {
                if i % 2 == 1 {
                    -rng.gen_range(3..=6)
                } else {
                    -rng.gen_range(2..=6)
                }
            })
            .collect();
        rows.push(row);
    }
    PlatSpec::new(n, k, rows).expect("generated spec is well formed")
}

fn random_mixed_sign(rng: &mut ChaCha8Rng) -> PlatSpec {
    let n = rng.gen_range(3..=6);
    let k = rng.gen_range(1..=4);
    let mut rows = Vec::new();
    for i in 1..=(2 * k + 1) {
        let width = if i % 2 == 1 { n - 1 } else { n };
        let row: Vec<i32> = (0..width)
            .map(|_| {
                if i % 2 == 1 {
                    if rng.gen_bool(0.35) {
                        rng.gen_range(1..=6)
                    } else {
                        -rng.gen_range(3..=6)
                    }
                } else {
                    -rng.gen_range(2..=6)
                }
            })
            .collect();
        rows.push(row);
    }
    // Force at least one positive entry so the spec is genuinely mixed.
    let mut spec_rows = rows;
    if !spec_rows.iter().flatten().any(|&a| a > 0) {
        spec_rows[0][0] = rng.gen_range(1..=6);
    }
    PlatSpec::new(n, k, spec_rows).expect("generated spec is well formed")
}

#[test]
fn criterion_1_strongly_negative_identity_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for trial in 0..200 {
        let spec = random_strongly_negative(&mut rng);
        assert_eq!(spec.classify(), PlatClass::StronglyNegative);
        let report = analyze(&AnalysisInput::Plat(spec.clone()), &AnalysisOptions::default())
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        let h = report.hypotheses;
        assert!(h.connected, "trial {trial}: not connected");
        assert!(h.prime, "trial {trial}: not prime");
        assert!(h.a_adequate, "trial {trial}: not A-adequate");
        assert!(h.telc, "trial {trial}: TELC fails");
        assert_eq!(report.census.special_count, Some(0), "trial {trial}: st != 0");
        assert!(report.census.t >= 7, "trial {trial}: t = {} < 7", report.census.t);
        assert_eq!(
            report.graph.neg_euler_char,
            report.census.t as i64 - report.census.oc_count as i64,
            "trial {trial}: chi identity fails"
        );
        // The grid count is exact for strongly negative specs.
        assert_eq!(report.census.t, spec.grid_region_count(), "trial {trial}");
        assert_eq!(report.census.oc_count, spec.k() + 1, "trial {trial}");
        assert!(!report.falsified, "trial {trial}: report falsified");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "identity suite took {elapsed:?}, budget is 10 s"
    );
    println!(
        "[criterion 1] PASS: 200 strongly negative plats satisfy connected/prime/adequate/TELC, st = 0, t >= 7, -chi = t - #OC ({elapsed:?})"
    );
}

#[test]
fn criterion_2_mixed_sign_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for trial in 0..200 {
        let spec = random_mixed_sign(&mut rng);
        assert_eq!(spec.classify(), PlatClass::MixedSign);
        let report = analyze(&AnalysisInput::Plat(spec.clone()), &AnalysisOptions::default())
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        let st = report
            .census
            .special_count
            .unwrap_or_else(|| panic!("trial {trial}: st undefined on a mixed-sign plat"));
        assert!(st <= 4, "trial {trial}: st = {st} > 4");
        assert!(report.census.t >= 3, "trial {trial}: t = {}", report.census.t);
        if spec.row_count() >= 2 * spec.n() - 1 {
            let t_neg = report.census.t_negative.unwrap();
            let t_pos = report.census.t_positive.unwrap();
            assert!(
                t_neg >= t_pos,
                "trial {trial}: m >= 2n-1 but t_neg = {t_neg} < t_pos = {t_pos}"
            );
        }
        assert!(!report.falsified, "trial {trial}: report falsified");
    }
    println!("[criterion 2] PASS: 200 mixed-sign plats satisfy st <= 4, t >= 3, and t_neg >= t_pos when m >= 2n-1");
}

#[test]
fn criterion_3_counting_identities_on_corpus() {
    let records = read_corpus(&corpus_path()).expect("corpus loads");
    assert!(records.len() >= 30, "corpus has only {} records", records.len());
    let mut applicable = 0usize;
    for record in &records {
        let report = analyze(
            &record.input().expect("corpus record parses"),
            &AnalysisOptions::default(),
        )
        .unwrap_or_else(|e| panic!("{}: {e}", record.id));
        for identity in &report.identities {
            if identity.applicable {
                applicable += 1;
                assert_eq!(
                    identity.holds,
                    Some(true),
                    "{}: identity {} gave {} vs {}",
                    record.id,
                    identity.name,
                    identity.lhs,
                    identity.rhs
                );
            }
        }
    }
    assert!(applicable >= 150, "only {applicable} identity instances were applicable");
    println!(
        "[criterion 3] PASS: {} corpus diagrams, {applicable} applicable counting identities all exact",
        records.len()
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let records = read_corpus(&corpus_path()).expect("corpus loads");
    let mut checked = 0usize;
    for record in &records {
        let input = record.input().unwrap();
        let report = analyze(&input, &AnalysisOptions::default()).unwrap();
        if report.diagram.crossings > 16 || !report.hypotheses.a_adequate || !report.hypotheses.connected
        {
            continue;
        }
        let with_oracle = analyze(
            &input,
            &AnalysisOptions {
                oracle: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            with_oracle.beta_prime.matches,
            Some(true),
            "{}: bracket disagrees with 1 + (-chi)",
            record.id
        );
        checked += 1;
    }
    assert!(checked >= 15, "only {checked} corpus diagrams were oracle-checked");

    // The 18-crossing minimal strongly negative plat, at the oracle scale.
    let started = Instant::now();
    let spec = PlatSpec::new(3, 1, vec![vec![-3, -3], vec![-2, -2, -2], vec![-3, -3]]).unwrap();
    let plat = plat_closure(&spec).unwrap();
    assert_eq!(plat.diagram.crossing_count(), 18);
    let check = jones::verify_stable_coefficient(&plat.diagram, 20).unwrap();
    assert_eq!(check.expected, 6);
    assert_eq!(check.observed, 6);
    assert!(check.matches);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "18-crossing oracle took {elapsed:?}");
    println!(
        "[criterion 4] PASS: stable coefficient matches on {checked} small corpus diagrams and the 18-crossing plat gives 6 ({elapsed:?})"
    );
}

#[test]
fn criterion_5_bound_formula_regression() {
    let c = constants();
    let (lo, up) = bounds::main_theorem_values(2, 0);
    assert!((lo - 2.4425749178).abs() < 1e-9, "lower = {lo}");
    assert!((up - 10.1494160641).abs() < 1e-9, "upper = {up}");

    let (corollary_lo, _) = bounds::corollary_m_values(3, 6);
    assert!((corollary_lo - 2.0 * c.v8).abs() < 1e-12);

    let (sn_lo, _) = bounds::strongly_negative_values(7);
    assert!((sn_lo - 5.0 * c.v8).abs() < 1e-12);

    // Internal consistency on the minimal plat: the stable-coefficient
    // upper bound for strongly negative plats equals 10 v3 (t - 1) there.
    let beta = 6i64;
    let jones_up = bounds::jones_upper(JonesFamily::StronglyNegative, beta, None, None).unwrap();
    let (_, sn_up) = bounds::strongly_negative_values(7);
    assert!((jones_up - sn_up).abs() < 1e-9, "{jones_up} vs {sn_up}");

    let (tb_lo, tb_up) = two_bridge_values(2);
    assert!((tb_lo - (4.0 * c.v3 - 2.7066)).abs() < 1e-12);
    assert!((tb_up - 2.0 * c.v8).abs() < 1e-12);

    println!("[criterion 5] PASS: bound formulas reproduce their anchor values to 1e-9");
}

#[test]
fn criterion_6_sandwich_with_ingested_volumes() {
    let records = read_corpus(&corpus_path()).expect("corpus loads");
    let with_volume = records.iter().filter(|r| r.known_volume.is_some()).count();
    assert!(with_volume >= 5, "only {with_volume} corpus rows carry volumes");
    for r in records.iter().filter(|r| r.known_volume.is_some()) {
        assert!(
            !r.source.trim().is_empty(),
            "{}: a known volume must carry a source citation",
            r.id
        );
    }
    let summary = batch(&records, 16, None).expect("batch runs");
    assert_eq!(summary.errors, 0);
    assert_eq!(summary.sandwich_checked, with_volume);
    assert_eq!(
        summary.sandwich_passed, summary.sandwich_checked,
        "sandwich failures: {:?}",
        summary
            .outcomes
            .iter()
            .filter(|o| o.sandwich_pass == Some(false))
            .map(|o| o.id.clone())
            .collect::<Vec<_>>()
    );
    assert!(summary.all_pass());
    println!(
        "[criterion 6] PASS: {}/{} ingested volumes sit inside every applicable bound pair",
        summary.sandwich_passed, summary.sandwich_checked
    );
}

#[test]
fn criterion_7_constants_from_the_series_oracle() {
    let c = constants();
    assert!((c.v3 - 1.0149416064).abs() < 1e-10, "v3 = {}", c.v3);
    assert!((c.v8 - 3.6638623767).abs() < 1e-10, "v8 = {}", c.v8);
    assert!((c.v3 - REFERENCE_V3).abs() < 1e-12);
    assert!((c.v8 - REFERENCE_V8).abs() < 1e-12);
    assert_eq!((c.v3 * 1e4).trunc() / 1e4, 1.0149);
    assert_eq!((c.v8 * 1e4).trunc() / 1e4, 3.6638);
    println!("[criterion 7] PASS: series oracle gives v3 = {:.12}, v8 = {:.12}", c.v3, c.v8);
}

#[test]
fn criterion_8_telc_and_adequacy_fixtures() {
    // Left-handed Hopf: adequate but the two-edge loop comes from a chain
    // that closes up, so the TELC fails.
    let hopf = braid_to_diagram(&BraidWord::new(2, vec![-1, -1]).unwrap(), Closure::Trace).unwrap();
    let h = all_a_state(&hopf);
    let regions = classify_regions(
        &hopf,
        &h,
        detect_twist_regions(&hopf).unwrap(),
        None,
    )
    .unwrap();
    assert!(is_a_adequate(&h));
    assert!(!check_telc(&h, &regions).unwrap(), "left Hopf must fail the TELC");

    // One positive kink, plat closed: fails A-adequacy.
    let kink = braid_to_diagram(&BraidWord::new(2, vec![1]).unwrap(), Closure::Plat).unwrap();
    assert!(!is_a_adequate(&all_a_state(&kink)), "kinked unknot must fail A-adequacy");

    // Right-handed trefoil: passes both, but has a single twist region.
    let trefoil =
        braid_to_diagram(&BraidWord::new(2, vec![1, 1, 1]).unwrap(), Closure::Trace).unwrap();
    let h = all_a_state(&trefoil);
    let regions = classify_regions(
        &trefoil,
        &h,
        detect_twist_regions(&trefoil).unwrap(),
        None,
    )
    .unwrap();
    assert!(is_a_adequate(&h));
    assert!(check_telc(&h, &regions).unwrap());
    assert_eq!(regions.len(), 1, "right trefoil has t = 1");

    println!("[criterion 8] PASS: left Hopf fails TELC, kinked unknot fails adequacy, right trefoil passes both with t = 1");
}
