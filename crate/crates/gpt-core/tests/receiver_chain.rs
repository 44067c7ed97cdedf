//! End-to-end receiver checks: the demapper against direct
//! enumeration, compound path metrics against forced replay, and the
//! strength ordering of the three receivers under shared noise.

use gpt_core::codec::{
    gpt_encode, hd_msd_decode_with_ensemble, msc_decode, pmi_scl_decode,
    pmi_scl_decode_with_ensemble,
};
use gpt_core::construct::GptScheme;
use gpt_core::modem::{
    awgn, build_constellation, stage_llr, stage_llr_with, ChannelModel, DemapMethod, Labeling,
};
use gpt_core::polar::{polar_transform, PolarCodeSpec};
use gpt_core::LLR_CLAMP;
use gpt_testkit::ml::gpt_ml;
use gpt_testkit::reference::{compound_replay_metric, naive_stage_llr};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pam4_scheme() -> GptScheme {
    let c = build_constellation(2, Labeling::SetPartitioning).unwrap();
    let l0 = PolarCodeSpec::new(8, vec![1, 1, 1, 1, 1, 1, 0, 0], vec![0; 8], None).unwrap();
    let l1 = PolarCodeSpec::new(8, vec![1, 1, 1, 0, 0, 0, 0, 0], vec![0; 8], None).unwrap();
    GptScheme::from_parts(c, vec![l0, l1], 0.4, DemapMethod::Exact).unwrap()
}

#[test]
fn engine_demapper_matches_direct_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x21);
    let c = build_constellation(4, Labeling::SetPartitioning).unwrap();
    let sigma2 = 0.3;
    let n = 16;
    let obs: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)))
        .collect();
    let mut priors: Vec<Vec<u8>> = Vec::new();
    for level in 0..4 {
        let engine = stage_llr(&obs, level, &priors, &c, sigma2).unwrap();
        let maxlog = stage_llr_with(DemapMethod::MaxLog, &obs, level, &priors, &c, sigma2).unwrap();
        let direct = naive_stage_llr(DemapMethod::Exact, &obs, level, &priors, &c, sigma2);
        let direct_ml = naive_stage_llr(DemapMethod::MaxLog, &obs, level, &priors, &c, sigma2);
        for t in 0..n {
            assert!((engine[t] - direct[t].clamp(-LLR_CLAMP, LLR_CLAMP)).abs() < 1e-9);
            assert!((maxlog[t] - direct_ml[t].clamp(-LLR_CLAMP, LLR_CLAMP)).abs() < 1e-9);
        }
        priors.push((0..n).map(|_| rng.random_range(0..2u8)).collect());
    }
}

#[test]
fn compound_path_metrics_replay_under_forced_decisions() {
    let scheme = pam4_scheme();
    let sigma2 = 0.5;
    let mut channel = ChannelModel::new(sigma2, 0x22).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x23);
    for _ in 0..15 {
        let info: Vec<u8> = (0..scheme.total_info())
            .map(|_| rng.random_range(0..2u8))
            .collect();
        let cw = gpt_encode(&info, &scheme).unwrap();
        let obs = awgn(&cw.symbols, &mut channel, scheme.constellation());
        let (_, pens) = pmi_scl_decode_with_ensemble(&obs, &scheme, sigma2, 4).unwrap();
        let (_, hens) = hd_msd_decode_with_ensemble(&obs, &scheme, sigma2, 4).unwrap();
        for ens in [&pens, &hens] {
            for path in &ens.paths {
                let replayed = compound_replay_metric(&obs, &scheme, sigma2, &path.decisions);
                assert!(
                    (replayed - path.metric).abs() < 1e-9,
                    "inherited {} vs replayed {replayed}",
                    path.metric
                );
            }
        }
    }
}

#[test]
fn compound_list_decoding_finds_the_euclidean_ml_word_at_high_snr() {
    let scheme = pam4_scheme();
    let sigma2 = 0.02;
    let mut channel = ChannelModel::new(sigma2, 0x24).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x25);
    for _ in 0..25 {
        let info: Vec<u8> = (0..scheme.total_info())
            .map(|_| rng.random_range(0..2u8))
            .collect();
        let cw = gpt_encode(&info, &scheme).unwrap();
        let obs = awgn(&cw.symbols, &mut channel, scheme.constellation());
        let ml = gpt_ml(&obs, &scheme);
        let got = pmi_scl_decode(&obs, &scheme, sigma2, 32).unwrap();
        if ml.gap > 1e-6 {
            assert_eq!(got.info_bits, ml.info_bits);
        }
    }
}

#[test]
fn receivers_order_by_strength_under_shared_noise() {
    let scheme = pam4_scheme();
    let sigma2 = 0.45;
    let mut channel = ChannelModel::new(sigma2, 0x26).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x27);
    let trials = 400;
    let (mut e_msc, mut e_hd, mut e_pmi) = (0u32, 0u32, 0u32);
    let (mut kept_hd, mut kept_pmi) = (0u32, 0u32);
    for _ in 0..trials {
        let info: Vec<u8> = (0..scheme.total_info())
            .map(|_| rng.random_range(0..2u8))
            .collect();
        let cw = gpt_encode(&info, &scheme).unwrap();
        let obs = awgn(&cw.symbols, &mut channel, scheme.constellation());
        let m = msc_decode(&obs, &scheme, sigma2).unwrap();
        let (h, hens) = hd_msd_decode_with_ensemble(&obs, &scheme, sigma2, 8).unwrap();
        let (p, pens) = pmi_scl_decode_with_ensemble(&obs, &scheme, sigma2, 8).unwrap();
        e_msc += u32::from(m.info_bits != info);
        e_hd += u32::from(h.info_bits != info);
        e_pmi += u32::from(p.info_bits != info);
        // Track whether the transmitted path is still in the final
        // survivor list; inherited metrics should retain it at least
        // as often as hard commitment does.
        let truth: Vec<Vec<u8>> = cw
            .level_bits
            .iter()
            .map(|x| polar_transform(x).unwrap())
            .collect();
        kept_hd += u32::from(hens.paths.iter().any(|p| p.decisions == truth));
        kept_pmi += u32::from(pens.paths.iter().any(|p| p.decisions == truth));
    }
    assert!(e_msc > 0, "noise level too benign to compare receivers");
    assert!(e_hd <= e_msc, "list committing lost to single-path: {e_hd} vs {e_msc}");
    assert!(e_pmi <= e_hd, "inheritance lost to hard commitment: {e_pmi} vs {e_hd}");
    assert!(
        kept_pmi >= kept_hd,
        "retention {kept_pmi} fell below hard commitment {kept_hd}"
    );
}
