//! End-to-end acceptance checks for the whole stack, one test per
//! criterion. Every test prints a single verdict line (run with
//! `--nocapture` to see them); all tolerances and operating points
//! are pinned here in code.

use std::process::Command;
use std::sync::LazyLock;

use gpt_core::construct::{pw_reliability, select_frozen, DEFAULT_PW_BETA};
use gpt_core::{
    bit_level_capacities, build_constellation, build_scheme, gpt_encode, hd_msd_decode,
    hd_msd_decode_with_ensemble, msc_decode, pmi_scl_decode, pmi_scl_decode_with_ensemble,
    polar_transform, scl_decode, CapacityParams, ChannelModel, DemapMethod, GptScheme, Labeling,
    LlrVector, PolarCodeSpec, SchemeConfig,
};
use gpt_sim::{run_selftest, sigma2_from_snr_db, trial_seed, Lane};
use gpt_testkit::ml::{gpt_ml, polar_ml};
use gpt_testkit::quadrature::{biawgn_capacity_from_mean, level_capacities, GhRule, GH_POINTS};
use gpt_testkit::stats::two_proportion_z;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_core::RngCore;
use rayon::prelude::*;

/// One-sided 95% normal quantile for the statistical comparisons.
const Z_95: f64 = 1.645;

fn verdict(number: u32, name: &str, pass: bool, detail: String) {
    let word = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {number:02} {name}: {word} ({detail})");
    assert!(pass, "acceptance {number:02} {name}: {detail}");
}

fn random_info(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(len);
    let mut word = 0u64;
    for i in 0..len {
        if i % 64 == 0 {
            word = rng.next_u64();
        }
        out.push((word & 1) as u8);
        word >>= 1;
    }
    out
}

/// Encodes a seeded random block and passes it through the channel.
fn transmit(
    scheme: &GptScheme,
    sigma2: f64,
    master: u64,
    point: u64,
    trial: u64,
) -> (Vec<u8>, gpt_core::Codeword, Vec<Complex64>) {
    let info = random_info(
        scheme.total_info(),
        trial_seed(master, point, trial, Lane::Data),
    );
    let cw = gpt_encode(&info, scheme).unwrap();
    let mut ch = ChannelModel::new(sigma2, trial_seed(master, point, trial, Lane::Noise)).unwrap();
    let obs = ch.awgn(&cw.symbols, scheme.constellation());
    (info, cw, obs)
}

/// Per-level decision vectors of the transmitted word, the form the
/// list ensembles carry.
fn truth_decisions(cw: &gpt_core::Codeword) -> Vec<Vec<u8>> {
    cw.level_bits
        .iter()
        .map(|x| polar_transform(x).unwrap())
        .collect()
}

#[test]
fn c01_small_code_list_decoding_is_maximum_likelihood() {
    const TOL: f64 = 1e-9;
    let mut checked = 0u32;
    let mut mismatches = 0u32;
    for n in [4usize, 8, 16] {
        for k in 1..=n.min(8) {
            let profile = pw_reliability(n, DEFAULT_PW_BETA).unwrap();
            let mask = select_frozen(k, &profile).unwrap();
            let spec = PolarCodeSpec::new(n, mask, vec![0; n], None).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(0xACC0 + (n * 100 + k) as u64);
            for _ in 0..200 {
                let llrs: Vec<f64> = (0..n).map(|_| rng.random_range(-8.0..8.0)).collect();
                let ml = polar_ml(&llrs, &spec);
                let ens =
                    scl_decode(&LlrVector::new(llrs).unwrap(), &spec, 1 << k, None).unwrap();
                // Only instances whose likelihood winner is unique
                // identify the decoder's answer.
                if ml.gap <= TOL {
                    continue;
                }
                checked += 1;
                let best = ens.best();
                let ok = (best.metric - ml.cost).abs() <= TOL
                    && spec.extract_payload(best.decisions.last().unwrap()) == ml.info_bits;
                mismatches += u32::from(!ok);
            }
        }
    }
    verdict(
        1,
        "full-list decoding matches exhaustive search on small codes",
        mismatches == 0 && checked >= 3000,
        format!("{checked} unique instances, {mismatches} mismatches"),
    );
}

#[test]
fn c02_compound_list_decoding_matches_euclidean_search() {
    const TRIALS: u64 = 600;
    const NEEDED: u32 = 500;
    // With max-log demapping the accumulated path metric is an affine
    // function of squared Euclidean distance, so the full-list winner
    // and the nearest-codeword search must name the same word.
    let mut cfg = SchemeConfig::new(2, 8, 8);
    cfg.demap = DemapMethod::MaxLog;
    let scheme = build_scheme(&cfg).unwrap();
    let sigma2 = sigma2_from_snr_db(4.0);
    let mut checked = 0u32;
    let mut mismatches = 0u32;
    for t in 0..TRIALS {
        let (_, _, obs) = transmit(&scheme, sigma2, 0xBEAD, 0, t);
        let res = pmi_scl_decode(&obs, &scheme, sigma2, 256).unwrap();
        let ml = gpt_ml(&obs, &scheme);
        if ml.gap <= 1e-6 {
            continue;
        }
        checked += 1;
        mismatches += u32::from(res.info_bits != ml.info_bits);
    }
    verdict(
        2,
        "compound full-list decoding matches nearest-codeword search",
        mismatches == 0 && checked >= NEEDED,
        format!("{checked} unique instances, {mismatches} mismatches"),
    );
}

#[test]
fn c03_level_capacities_sum_to_the_symbol_capacity() {
    const TOL: f64 = 1e-2;
    let rule = GhRule::new(GH_POINTS);
    let params = CapacityParams::default();
    let mut worst = 0.0f64;
    for m in [2usize, 4] {
        let c = build_constellation(m, Labeling::SetPartitioning).unwrap();
        for snr_db in [0.0, 3.0, 6.0, 10.0] {
            let sigma2 = sigma2_from_snr_db(snr_db);
            let mc_sum = bit_level_capacities(&c, sigma2, &params).unwrap().total;
            let gh_total: f64 = level_capacities(&c, sigma2, &rule).iter().sum();
            worst = worst.max((mc_sum - gh_total).abs());
        }
    }
    verdict(
        3,
        "per-level capacities conserve the symbol capacity",
        worst <= TOL,
        format!("max |sum - total| = {worst:.2e}, tolerance {TOL:.0e}"),
    );
}

#[test]
fn c04_rate_filling_conserves_the_budget_and_hits_the_target() {
    const TOL: f64 = 1e-3;
    let cfg = SchemeConfig::new(2, 256, 256);
    let scheme = build_scheme(&cfg).unwrap();
    let filled: usize = scheme.level_info().iter().sum();
    // The design variance must round-trip: re-evaluating the total
    // capacity there should give back the target rate.
    let total = bit_level_capacities(
        scheme.constellation(),
        scheme.design_sigma2(),
        &cfg.capacity,
    )
    .unwrap()
    .total;
    let target = cfg.info_len as f64 / cfg.block_length as f64;
    let gap = (total - target).abs();
    verdict(
        4,
        "one-shot construction conserves the bit budget and its design point",
        filled == cfg.info_len && gap <= TOL,
        format!(
            "levels {:?} sum to {filled}, capacity at design variance off by {gap:.2e}",
            scheme.level_info()
        ),
    );
}

#[test]
fn c05_unit_list_receivers_collapse_to_multistage_sc() {
    const TRIALS: u64 = 10_000;
    let scheme = build_scheme(&SchemeConfig::new(2, 64, 64)).unwrap();
    let sigma2 = scheme.design_sigma2();
    let bad: u64 = (0..TRIALS)
        .into_par_iter()
        .map(|t| {
            let (_, _, obs) = transmit(&scheme, sigma2, 0xC5, 0, t);
            let a = msc_decode(&obs, &scheme, sigma2).unwrap();
            let b = hd_msd_decode(&obs, &scheme, sigma2, 1).unwrap();
            let c = pmi_scl_decode(&obs, &scheme, sigma2, 1).unwrap();
            let bits_equal = a.info_bits == b.info_bits && a.info_bits == c.info_bits;
            let metrics_close = (a.metric - b.metric).abs() <= 1e-9
                && (a.metric - c.metric).abs() <= 1e-9;
            u64::from(!(bits_equal && metrics_close))
        })
        .sum();
    verdict(
        5,
        "unit-list receivers reproduce multistage successive cancellation",
        bad == 0,
        format!("{bad} of {TRIALS} noisy blocks disagreed"),
    );
}

/// Shared operating point for the receiver comparisons: a plain
/// scheme (no CRC), at an SNR where the hard-commit receiver's block
/// error rate sits near 1e-2. Each receiver runs on its own noise
/// stream so the error counts are independent.
const COMPARISON_SNR_DB: f64 = 5.0;
const COMPARISON_TRIALS: u64 = 40_000;
const COMPARISON_LIST: usize = 8;

struct ReceiverRun {
    errors: u64,
    retained: u64,
}

fn run_receiver(
    scheme: &GptScheme,
    sigma2: f64,
    point: u64,
    list_size: usize,
    hard_commit: bool,
) -> ReceiverRun {
    let (errors, retained) = (0..COMPARISON_TRIALS)
        .into_par_iter()
        .map(|t| {
            let (info, cw, obs) = transmit(scheme, sigma2, 0x6A11, point, t);
            let (res, ens) = if hard_commit {
                hd_msd_decode_with_ensemble(&obs, scheme, sigma2, list_size).unwrap()
            } else {
                pmi_scl_decode_with_ensemble(&obs, scheme, sigma2, list_size).unwrap()
            };
            let truth = truth_decisions(&cw);
            let err = u64::from(res.info_bits != info);
            let kept = u64::from(ens.paths.iter().any(|p| p.decisions == truth));
            (err, kept)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    ReceiverRun { errors, retained }
}

/// Hard-commit L=8, carried-list L=8, carried-list L=1, in that
/// order, all at the shared operating point.
static COMPARISON: LazyLock<[ReceiverRun; 3]> = LazyLock::new(|| {
    let scheme = build_scheme(&SchemeConfig::new(2, 128, 128)).unwrap();
    let sigma2 = sigma2_from_snr_db(COMPARISON_SNR_DB);
    [
        run_receiver(&scheme, sigma2, 0, COMPARISON_LIST, true),
        run_receiver(&scheme, sigma2, 1, COMPARISON_LIST, false),
        run_receiver(&scheme, sigma2, 2, 1, false),
    ]
});

#[test]
fn c06_carried_list_metrics_beat_hard_commits() {
    let [hd, pmi, _] = &*COMPARISON;
    let n = COMPARISON_TRIALS;
    let z_bler = two_proportion_z(hd.errors, n, pmi.errors, n);
    let z_kept = two_proportion_z(n - hd.retained, n, n - pmi.retained, n);
    let enough = hd.errors >= 100 && pmi.errors >= 100;
    verdict(
        6,
        "carrying the list across levels beats committing between them",
        enough && z_bler >= Z_95 && z_kept >= Z_95,
        format!(
            "errors {} vs {} (z={z_bler:.1}), lost paths {} vs {} (z={z_kept:.1}), {n} trials each",
            hd.errors,
            pmi.errors,
            n - hd.retained,
            n - pmi.retained
        ),
    );
}

#[test]
fn c07_larger_lists_lower_the_error_rate() {
    let [_, pmi8, pmi1] = &*COMPARISON;
    let n = COMPARISON_TRIALS;
    let z = two_proportion_z(pmi1.errors, n, pmi8.errors, n);
    let enough = pmi1.errors >= 100 && pmi8.errors >= 100;
    verdict(
        7,
        "a larger list lowers the block error rate",
        enough && z >= Z_95,
        format!(
            "errors {} (L=1) vs {} (L={COMPARISON_LIST}), z={z:.1}, {n} trials each",
            pmi1.errors, pmi8.errors
        ),
    );
}

#[test]
fn c08_uncoded_error_rate_matches_theory() {
    let report = run_selftest(0, 1_000_000).unwrap();
    let detail = report
        .points
        .iter()
        .map(|p| format!("{} dB z={:+.2}", p.snr_db, p.z))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(
        8,
        "uncoded error rate matches the closed form within 3 standard errors",
        report.pass,
        detail,
    );
}

#[test]
fn c09_reports_are_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
  "scheme": {
    "bits_per_symbol": 2,
    "block_length": 64,
    "rate": 0.5,
    "construction": { "method": "ga" }
  },
  "decoder": { "kind": "pmi_scl", "list_size": 4 },
  "snr_db": [3.0, 5.0],
  "stop": { "max_trials": 3000, "min_block_errors": 80 },
  "seed": 31
}
"#;
    let config_path = dir.path().join("sweep.json");
    std::fs::write(&config_path, config).unwrap();
    let run = |threads: &str| -> Vec<String> {
        let out_path = dir.path().join(format!("out{threads}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_gpt"))
            .args(["sim", "--config"])
            .arg(&config_path)
            .args(["--threads", threads, "--out"])
            .arg(&out_path)
            .status()
            .unwrap();
        assert!(status.success(), "sweep with {threads} workers failed");
        let text = std::fs::read_to_string(&out_path).unwrap();
        // Wall time is the one permitted difference; it is the last
        // column, so compare everything before it.
        text.lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    let one = run("1");
    let four = run("4");
    verdict(
        9,
        "sweeps are identical for any worker count",
        one == four && one.len() == 3,
        format!("{} report lines compared less wall time", one.len()),
    );
}

#[test]
fn c10_bit_channels_polarize_past_the_level_split() {
    const LO: f64 = 0.1;
    const HI: f64 = 0.9;
    let scheme = build_scheme(&SchemeConfig::new(2, 64, 64)).unwrap();
    let c = scheme.constellation();
    let sigma2 = scheme.design_sigma2();
    let params = CapacityParams::default();
    let rule = GhRule::new(GH_POINTS);
    // Gaussian-approximation capacities of all mN bit channels,
    // seeded from the same per-level design means the construction
    // uses.
    let means =
        gpt_core::level_llr_magnitude_means(c, sigma2, 100_000, params.seed).unwrap();
    let bit_caps: Vec<f64> = means
        .iter()
        .flat_map(|&mean| {
            gpt_core::ga_reliability(scheme.block_length(), mean)
                .unwrap()
                .scores()
                .iter()
                .map(|&m| biawgn_capacity_from_mean(m, &rule))
                .collect::<Vec<_>>()
        })
        .collect();
    let level_caps = bit_level_capacities(c, sigma2, &params).unwrap().level_capacity;
    let extreme = |caps: &[f64]| {
        caps.iter().filter(|&&x| x < LO || x > HI).count() as f64 / caps.len() as f64
    };
    let frac_bits = extreme(&bit_caps);
    let frac_levels = extreme(&level_caps);
    verdict(
        10,
        "bit channels concentrate at the extremes more than the levels do",
        frac_bits > frac_levels,
        format!(
            "near-extreme fraction {frac_bits:.3} over {} bit channels vs {frac_levels:.3} over {} levels",
            bit_caps.len(),
            level_caps.len()
        ),
    );
}
