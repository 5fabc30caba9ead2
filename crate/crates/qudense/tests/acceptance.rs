//! Acceptance suite: one test per criterion, each printing a verdict line
//! (run with `--nocapture` to see them all).

use std::time::Instant;

use qudense_core::bell::{bell_state, inner_product, symbol_to_bell, BellLabel, ALPHABET};
use qudense_core::bootstrap::bootstrap_error;
use qudense_core::channel::{
    confusion_from_sim, AnalyzerModel, ChannelMatrix, CountsTable, InconclusivePolicy, NoiseModel,
    Prior, SimMode, N_OUTCOMES,
};
use qudense_core::encoder::{apply_alice, encoder_unitary, u_gate, EncoderSetting};
use qudense_core::image::{
    decode_ppm, encode_ppm, expected_fidelity, generate_test_image, transmit, Palette,
};
use qudense_core::info::{capacity_of, entropy_bits, log2_5, mutual_information, reference_limits};
use qudense_core::photonic::{
    classify, embed, hom_visibility, pattern_table, run_network, validate_netlist, Classification,
    CoincidenceEvent, Netlist,
};
use qudense_core::rng::stream;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion}: {detail}");
}

#[test]
fn c01_bell_basis_orthonormality() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for a in BellLabel::all() {
        for b in BellLabel::all() {
            let expect = if a == b { 1.0 } else { 0.0 };
            let ip = inner_product(&bell_state(a), &bell_state(b));
            worst = worst.max((ip.re - expect).abs().max(ip.im.abs()));
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-12 && elapsed.as_secs_f64() < 1.0;
    verdict(
        "1",
        pass,
        &format!("256 inner products, worst deviation {worst:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn c02_encoder_suite() {
    let tol = 1e-12;
    let psi11 = bell_state(BellLabel::new(1, 1).unwrap());
    let mut ok = true;
    let mut detail = String::new();
    for symbol in 0..ALPHABET as u8 {
        let setting = EncoderSetting::canonical(symbol).unwrap();
        let got = apply_alice(&psi11, &encoder_unitary(&setting));
        let want = bell_state(symbol_to_bell(symbol).unwrap());
        if !got.equal_up_to_phase(&want, tol) {
            ok = false;
            detail = format!("symbol {symbol} misses its target state");
        }
    }
    // the swap-gate route: Psi13 phases, then the gate
    let psi13 = apply_alice(
        &psi11,
        &encoder_unitary(&EncoderSetting::canonical(2).unwrap()),
    );
    let reached = apply_alice(&psi13, &u_gate());
    let psi43 = bell_state(BellLabel::new(4, 3).unwrap());
    if !reached.equal_up_to_phase(&psi43, tol) {
        ok = false;
        detail = "swap gate after the Psi13 setting misses Psi43".into();
    }
    if ok {
        detail = "five canonical settings and the swap-gate route all land exactly".into();
    }
    verdict("2", ok, &detail);
}

#[test]
fn c03_analyzer_oracle() {
    let start = Instant::now();
    let netlist = Netlist::bundled();
    let tol = 1e-12;

    // (a) per-state uniform supports at lambda = 1
    let mut supports = Vec::new();
    for label in BellLabel::all() {
        let dist = run_network(&embed(&bell_state(label)), &netlist, 1.0).unwrap();
        let support = dist.support(tol);
        let doubles = support.iter().all(|e| e.is_same_detector());
        let expected_len = if doubles { 8 } else { 4 };
        assert_eq!(support.len(), expected_len, "{label} support size");
        for e in &support {
            assert!(
                (dist.prob(*e) - 1.0 / expected_len as f64).abs() < tol,
                "{label} event {e} not uniform"
            );
        }
        supports.push((label, support));
    }

    // (b) exactly 7 classes, classes 1..6 pairwise disjoint
    let table = pattern_table(&netlist).unwrap();
    assert_eq!(table.class_count(), 7);
    for a in 1..=6 {
        for b in (a + 1)..=6 {
            assert!(
                table
                    .events_of_class(a)
                    .is_disjoint(table.events_of_class(b)),
                "classes {a} and {b} overlap"
            );
        }
    }
    assert_eq!(table.events_of_class(7).len(), 8);
    assert!(table
        .events_of_class(7)
        .iter()
        .all(|e| e.is_same_detector()));

    // (c) the anchor event
    let anchor = classify(CoincidenceEvent::of(1, 5), &table, false);
    assert_eq!(
        anchor,
        Classification::Class(table.class_of_state(BellLabel::new(1, 1).unwrap()))
    );

    // (d) agreement with the reference listings, every pinned inconsistency
    // detected and reported
    let report = validate_netlist(&netlist);
    assert!(
        report.passed(),
        "validator failure: {:?}",
        report.first_failure()
    );
    let contexts: Vec<&str> = report
        .deviations
        .iter()
        .map(|d| d.context.as_str())
        .collect();
    for required in ["class 3 events", "class 7 members", "trace Psi11 line d"] {
        assert!(
            contexts.contains(&required),
            "deviation `{required}` not detected"
        );
    }
    let class_deviations = contexts.iter().filter(|c| c.starts_with("class")).count();

    let elapsed = start.elapsed();
    verdict(
        "3",
        elapsed.as_secs_f64() < 5.0,
        &format!(
            "16 uniform supports, 7 classes, anchor (D1,D5)->Psi11, listings matched with \
             {class_deviations} documented inconsistencies detected (three flagged plus the \
             Psi33/Psi34 membership swap), {elapsed:.2?}"
        ),
    );
}

#[test]
fn c04_intermediate_traces() {
    let report = validate_netlist(&Netlist::bundled());
    let trace_checks: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("trace"))
        .collect();
    assert_eq!(trace_checks.len(), 28, "7 states x 4 lines");
    for check in &trace_checks {
        assert!(check.passed, "{}: {}", check.name, check.detail);
    }
    let exact = trace_checks
        .iter()
        .filter(|c| c.detail.contains("printed"))
        .count();
    let corrected = trace_checks.len() - exact;
    let a2_line_d_detected = report
        .deviations
        .iter()
        .any(|d| d.context == "trace Psi11 line d");
    verdict(
        "4",
        a2_line_d_detected,
        &format!(
            "all 28 tabulated lines matched at 1e-12 ({exact} as printed, {corrected} via \
             pinned corrections, each deviation reported; the Psi11 line-d term deviation \
             is among them)"
        ),
    );
}

#[test]
fn c05_ideal_capacity() {
    let model = AnalyzerModel::bundled().unwrap();
    let ch = confusion_from_sim(&model, &NoiseModel::noiseless(), SimMode::Exact).unwrap();
    let mi = mutual_information(&Prior::uniform(), &ch);
    let limits = reference_limits();
    let pass = (mi - log2_5()).abs() < 1e-9
        && limits.qubit_sdc == 2.0
        && limits.single_ququart == 2.0
        && (limits.five_state - log2_5()).abs() < 1e-15;
    verdict(
        "5",
        pass,
        &format!(
            "noiseless uniform-prior MI = {mi:.9} vs log2(5) = {:.9}; limits {} / {} / {:.4}",
            log2_5(),
            limits.qubit_sdc,
            limits.single_ququart,
            limits.five_state
        ),
    );
}

/// Exact-channel diagonals as a function of (lambda, prep mixing).
fn diagonals(model: &AnalyzerModel, lambda: f64, eps: f64) -> (f64, f64) {
    let noise = NoiseModel {
        lambda,
        prep_mixing: eps,
        ..NoiseModel::noiseless()
    };
    let ch = confusion_from_sim(model, &noise, SimMode::Exact).unwrap();
    (ch.mean_low_diagonal(), ch.diagonal(4))
}

/// Grid-plus-refinement search for the measured diagonals.
fn calibrate(model: &AnalyzerModel) -> (f64, f64, f64) {
    let objective = |l: f64, e: f64| {
        let (m, d4) = diagonals(model, l, e);
        (m - 0.926).abs().max((d4 - 0.972).abs())
    };
    let mut best = (f64::INFINITY, 0.962, 0.0213);
    let (mut lo_l, mut hi_l, mut lo_e, mut hi_e) = (0.80, 1.0, 0.0, 0.10);
    for _ in 0..3 {
        let mut local = best;
        for i in 0..=20 {
            let l = lo_l + (hi_l - lo_l) * i as f64 / 20.0;
            for j in 0..=20 {
                let e = lo_e + (hi_e - lo_e) * j as f64 / 20.0;
                let err = objective(l, e);
                if err < local.0 {
                    local = (err, l, e);
                }
            }
        }
        best = local;
        let dl = (hi_l - lo_l) / 10.0;
        let de = (hi_e - lo_e) / 10.0;
        lo_l = (best.1 - dl).max(0.0);
        hi_l = (best.1 + dl).min(1.0);
        lo_e = (best.2 - de).max(0.0);
        hi_e = (best.2 + de).min(1.0);
    }
    best
}

#[test]
fn c06a_calibration_diagonals() {
    let start = Instant::now();
    let model = AnalyzerModel::bundled().unwrap();
    let (err, l, e) = calibrate(&model);
    let (mean03, diag4) = diagonals(&model, l, e);
    let elapsed = start.elapsed();
    let pass = err <= 0.005 && elapsed.as_secs_f64() < 60.0;
    // Both ideal-analyzer success probabilities are (1+lambda)/2 + O(eps) in
    // this model, for the phase-read and the polarization-read symbols
    // alike, so no (lambda, eps) can split them by the measured 0.046.
    verdict(
        "6a",
        pass,
        &format!(
            "search over (lambda, eps) in [0.80,1.00]x[0,0.10]: best at ({l:.4}, {e:.4}) gives \
             mean(0..3) = {mean03:.4} and diag(4) = {diag4:.4} vs targets 0.926 / 0.972 \
             (max error {err:.4}, tolerance 0.005), {elapsed:.2?}"
        ),
    );
}

#[test]
fn c06b_calibrated_mi_band() {
    let model = AnalyzerModel::bundled().unwrap();
    let (_, l, e) = calibrate(&model);
    let fitted = NoiseModel {
        lambda: l,
        prep_mixing: e,
        ..NoiseModel::noiseless()
    };
    let ch_fit = confusion_from_sim(&model, &fitted, SimMode::Exact).unwrap();
    let mi_fit = mutual_information(&Prior::uniform(), &ch_fit);
    let ch_nominal = confusion_from_sim(&model, &NoiseModel::calibrated(), SimMode::Exact).unwrap();
    let mi_nominal = mutual_information(&Prior::uniform(), &ch_nominal);
    let pass = mi_fit > 2.0 && (1.95..=2.20).contains(&mi_fit);
    verdict(
        "6b",
        pass,
        &format!(
            "calibrated uniform-prior MI = {mi_fit:.4} bits (> 2.0, inside [1.95, 2.20]); \
             gap to the measured 2.09 is {:+.4}, attributed to the unknown off-diagonal \
             structure; at the nominal operating point the model gives {mi_nominal:.4} \
             (gap {:+.4})",
            mi_fit - 2.09,
            mi_nominal - 2.09
        ),
    );
}

#[test]
fn c07_bootstrap_error_bar() {
    let model = AnalyzerModel::bundled().unwrap();
    let ch = confusion_from_sim(&model, &NoiseModel::calibrated(), SimMode::Exact).unwrap();
    let counts = CountsTable::from_channel(&ch, 20_000);
    let sigma = bootstrap_error(&counts, 400, 2024).unwrap();
    let pass = (0.005..=0.02).contains(&sigma);
    verdict(
        "7",
        pass,
        &format!(
            "bootstrap sigma of MI at 20000 counts/symbol = {sigma:.4} bits vs the reported \
             0.01 (factor-2 band [0.005, 0.02]); the model concentrates its off-diagonal \
             mass on one partner symbol, which yields a smaller statistical error than the \
             experiment's unknown spread"
        ),
    );
}

#[test]
fn c08_blahut_arimoto() {
    // closed-form oracle: the binary symmetric channel
    let flip = 0.11f64;
    let rows = vec![vec![1.0 - flip, flip], vec![flip, 1.0 - flip]];
    let cap = capacity_of(&rows, 1e-9).unwrap();
    let closed_form = 1.0 - entropy_bits(&[flip, 1.0 - flip]);
    let bsc_ok = (cap.capacity_bits - closed_form).abs() < 1e-6;

    // dominance over the uniform prior on 100 random channels
    let mut rng = stream(88, &[0xacce97]);
    let mut dominated = 0;
    for _ in 0..100 {
        let mut rows = [[0.0; N_OUTCOMES]; ALPHABET];
        for row in rows.iter_mut() {
            let mut total = 0.0;
            for p in row.iter_mut() {
                *p = rng.f64() + 1e-6;
                total += *p;
            }
            for p in row.iter_mut() {
                *p /= total;
            }
        }
        let ch = ChannelMatrix::from_rows(rows).unwrap();
        let mi = mutual_information(&Prior::uniform(), &ch);
        let cap = qudense_core::info::capacity_blahut_arimoto(&ch, 1e-7).unwrap();
        if cap.capacity_bits >= mi - 1e-6 {
            dominated += 1;
        }
    }
    let pass = bsc_ok && dominated == 100;
    verdict(
        "8",
        pass,
        &format!(
            "BSC(0.11) capacity {:.9} vs closed form {closed_form:.9}; uniform-prior MI \
             dominated on {dominated}/100 random channels",
            cap.capacity_bits
        ),
    );
}

#[test]
fn c09_hom_visibility_and_affinity() {
    let mut worst_vis = 0.0f64;
    for k in 0..=10 {
        let lambda = k as f64 / 10.0;
        worst_vis = worst_vis.max((hom_visibility(lambda).unwrap() - lambda).abs());
    }
    worst_vis = worst_vis.max((hom_visibility(0.962).unwrap() - 0.962).abs());

    // Psi11 success probability over an 11-point lambda grid
    let netlist = Netlist::bundled();
    let table = pattern_table(&netlist).unwrap();
    let class1 = table.events_of_class(1).clone();
    let input = embed(&bell_state(BellLabel::new(1, 1).unwrap()));
    let success: Vec<f64> = (0..=10)
        .map(|k| {
            let dist = run_network(&input, &netlist, k as f64 / 10.0).unwrap();
            class1.iter().map(|e| dist.prob(*e)).sum()
        })
        .collect();
    let mut affine = true;
    let mut monotone = true;
    for k in 1..success.len() {
        if success[k] + 1e-12 < success[k - 1] {
            monotone = false;
        }
        if k + 1 < success.len() {
            let second_difference = success[k + 1] - 2.0 * success[k] + success[k - 1];
            if second_difference.abs() > 1e-12 {
                affine = false;
            }
        }
    }
    let pass = worst_vis < 1e-9 && affine && monotone;
    verdict(
        "9",
        pass,
        &format!(
            "visibility matches lambda to {worst_vis:.2e}; Psi11 success runs {:.3} -> {:.3} \
             affinely and non-decreasingly over 11 points",
            success[0], success[10]
        ),
    );
}

#[test]
fn c10_image_pipeline() {
    let start = Instant::now();
    let palette = Palette::standard();
    let image = generate_test_image(palette.clone());

    // the shipped asset is exactly the generated pattern, and the codec
    // round-trips bit-exactly
    let asset = std::fs::read(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../assets/test_image_53x188.ppm"
    ))
    .expect("bundled test image exists");
    assert_eq!(
        asset,
        encode_ppm(&image),
        "shipped asset matches the generator"
    );
    let round = decode_ppm(&encode_ppm(&image), &palette, false).unwrap();
    assert_eq!(round, image, "PPM round trip is bit-exact");

    let model = AnalyzerModel::bundled().unwrap();
    let noise = NoiseModel::calibrated();
    let policy = InconclusivePolicy::RetryUntilConclusive;
    let exact = confusion_from_sim(&model, &noise, SimMode::Exact).unwrap();
    let expectation = expected_fidelity(&image, &exact, policy).unwrap();

    let fidelities: Vec<f64> = (0..30)
        .map(|seed| {
            transmit(&image, &model, &noise, policy, seed)
                .unwrap()
                .1
                .fidelity
        })
        .collect();
    let mean = fidelities.iter().sum::<f64>() / 30.0;
    let std = qudense_core::bootstrap::sample_std(&fidelities);
    let margin = 3.0 * std / (30.0f64).sqrt();
    let elapsed = start.elapsed();

    let pass = (mean - expectation).abs() <= margin
        && (0.92..=0.98).contains(&mean)
        && elapsed.as_secs_f64() < 60.0;
    verdict(
        "10",
        pass,
        &format!(
            "mean fidelity over 30 seeds = {mean:.4} vs analytic expectation {expectation:.4} \
             (margin {margin:.4}), inside [0.92, 0.98]; round trip bit-exact; {elapsed:.2?}"
        ),
    );
}

#[test]
fn c11_thread_determinism() {
    use qudense::parallel::{bootstrap_mc, confusion_mc, transmit_mc};
    let model = AnalyzerModel::bundled().unwrap();
    let noise = NoiseModel::calibrated();
    let image = generate_test_image(Palette::standard());
    let counts = {
        let ch = confusion_from_sim(&model, &noise, SimMode::Exact).unwrap();
        CountsTable::from_channel(&ch, 20_000)
    };

    let channel_ref = confusion_mc(&model, &noise, 100_000, 31, 1).unwrap();
    let transmit_ref = transmit_mc(
        &image,
        &model,
        &noise,
        InconclusivePolicy::RetryUntilConclusive,
        31,
        1,
    )
    .unwrap();
    let sigma_ref = bootstrap_mc(&counts, 200, 31, 1).unwrap();

    let mut pass = true;
    for threads in [2usize, 8] {
        let ch = confusion_mc(&model, &noise, 100_000, 31, threads).unwrap();
        pass &= ch == channel_ref;
        let tx = transmit_mc(
            &image,
            &model,
            &noise,
            InconclusivePolicy::RetryUntilConclusive,
            31,
            threads,
        )
        .unwrap();
        pass &= tx == transmit_ref;
        pass &= encode_ppm(&tx.0) == encode_ppm(&transmit_ref.0);
        let sigma = bootstrap_mc(&counts, 200, 31, threads).unwrap();
        pass &= sigma.to_bits() == sigma_ref.to_bits();
    }
    verdict(
        "11",
        pass,
        "Monte Carlo channel, image transmission and bootstrap are byte-identical across \
         1, 2 and 8 worker threads",
    );
}
