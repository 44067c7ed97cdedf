//! The three receivers for the compound chain.
//!
//! All three walk levels in order and condition each level's
//! demapping on re-encoded code bits of the levels below it. They
//! differ in what survives between levels: a single hard path
//! ([`msc_decode`]), a hard commitment chosen from a fresh list per
//! level ([`hd_msd_decode`]), or the whole list with its metrics
//! ([`pmi_scl_decode`]).

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::{assemble_result, check_observation, transformed_levels, DecodeResult, DecoderKind};
use crate::construct::GptScheme;
use crate::modem::stage_llr_with;
use crate::polar::{
    check_list_size, scl_decode, scl_run, sc_decode_u, ListPath, PathEnsemble, PolarCodeSpec,
    SclSeed,
};
use crate::Result;

/// Multistage successive cancellation: one SC pass per level, each
/// conditioned on the hard decisions of the levels before it.
pub fn msc_decode(obs: &[Complex64], scheme: &GptScheme, sigma2: f64) -> Result<DecodeResult> {
    check_observation(scheme, obs)?;
    let c = scheme.constellation();
    let mut priors: Vec<Vec<u8>> = Vec::with_capacity(scheme.bits_per_symbol());
    let mut decisions = Vec::with_capacity(scheme.bits_per_symbol());
    let mut metric = 0.0;
    for (j, spec) in scheme.components().iter().enumerate() {
        let llrs = stage_llr_with(scheme.demap(), obs, j, &priors, c, sigma2)?;
        let (u, level_metric) = sc_decode_u(&llrs, spec)?;
        metric += level_metric;
        priors.push(crate::polar::polar_transform(&u)?);
        decisions.push(u);
    }
    Ok(assemble_result(scheme, &decisions, metric, DecoderKind::Msc))
}

/// Hard-decision multistage list decoding: each level runs a fresh
/// list decoder, commits one survivor, and discards the rest before
/// moving on.
///
/// The committed survivor is the lowest-metric path whose payload
/// passes the level's CRC, or the lowest-metric path outright when
/// none passes or the level has no CRC.
pub fn hd_msd_decode(
    obs: &[Complex64],
    scheme: &GptScheme,
    sigma2: f64,
    list_size: usize,
) -> Result<DecodeResult> {
    hd_msd_decode_with_ensemble(obs, scheme, sigma2, list_size).map(|(r, _)| r)
}

/// [`hd_msd_decode`], also returning the final level's survivor list.
///
/// Each returned path carries the committed decisions of the earlier
/// levels as its prefix and the committed metric folded into its own,
/// so paths compare on the same scale as the result. The result
/// reports the CRC-preferred member, which need not be the list head.
pub fn hd_msd_decode_with_ensemble(
    obs: &[Complex64],
    scheme: &GptScheme,
    sigma2: f64,
    list_size: usize,
) -> Result<(DecodeResult, PathEnsemble)> {
    check_observation(scheme, obs)?;
    check_list_size(list_size)?;
    let c = scheme.constellation();
    let levels = scheme.bits_per_symbol();
    let mut committed: Vec<Vec<u8>> = Vec::with_capacity(levels);
    let mut priors: Vec<Vec<u8>> = Vec::with_capacity(levels);
    let mut committed_metric = 0.0;
    let mut final_ensemble = None;
    for (j, spec) in scheme.components().iter().enumerate() {
        let llrs = stage_llr_with(scheme.demap(), obs, j, &priors, c, sigma2)?;
        let ensemble = scl_decode(&llrs, spec, list_size, None)?;
        let pick = crc_preferred_index(&ensemble, spec);
        let u = ensemble.paths[pick].decisions[0].clone();
        let pick_metric = ensemble.paths[pick].metric;
        if j + 1 == levels {
            let paths = ensemble
                .paths
                .iter()
                .map(|p| ListPath {
                    metric: committed_metric + p.metric,
                    decisions: committed
                        .iter()
                        .cloned()
                        .chain(p.decisions.iter().cloned())
                        .collect(),
                })
                .collect();
            final_ensemble = Some(PathEnsemble {
                paths,
                list_size: ensemble.list_size,
            });
        }
        committed_metric += pick_metric;
        priors.push(crate::polar::polar_transform(&u)?);
        committed.push(u);
    }
    let result = assemble_result(scheme, &committed, committed_metric, DecoderKind::HdMsd);
    Ok((result, final_ensemble.expect("at least one level")))
}

/// Compound list decoding: the survivor list of each level seeds the
/// next, carrying its accumulated metrics, and every path demaps the
/// next level conditioned on its own re-encoded history.
///
/// The result is the lowest-metric path passing every level's CRC, or
/// the lowest-metric path outright when none does.
pub fn pmi_scl_decode(
    obs: &[Complex64],
    scheme: &GptScheme,
    sigma2: f64,
    list_size: usize,
) -> Result<DecodeResult> {
    pmi_scl_decode_with_ensemble(obs, scheme, sigma2, list_size).map(|(r, _)| r)
}

/// [`pmi_scl_decode`], also returning the full final survivor list.
pub fn pmi_scl_decode_with_ensemble(
    obs: &[Complex64],
    scheme: &GptScheme,
    sigma2: f64,
    list_size: usize,
) -> Result<(DecodeResult, PathEnsemble)> {
    check_observation(scheme, obs)?;
    check_list_size(list_size)?;
    let c = scheme.constellation();
    let mut ensemble: Option<PathEnsemble> = None;
    for (j, spec) in scheme.components().iter().enumerate() {
        let seeds = match &ensemble {
            None => {
                let llrs = stage_llr_with(scheme.demap(), obs, 0, &[], c, sigma2)?;
                vec![SclSeed {
                    metric: 0.0,
                    decisions: Vec::new(),
                    llrs,
                }]
            }
            Some(prev) => prev
                .paths
                .iter()
                .map(|p| {
                    let priors = transformed_levels(&p.decisions)?;
                    let llrs = stage_llr_with(scheme.demap(), obs, j, &priors, c, sigma2)?;
                    Ok(SclSeed {
                        metric: p.metric,
                        decisions: p.decisions.clone(),
                        llrs,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        ensemble = Some(scl_run(seeds, spec, list_size)?);
    }
    let ensemble = ensemble.expect("at least one level");
    let pick = ensemble
        .paths
        .iter()
        .position(|p| all_levels_pass_crc(scheme, &p.decisions))
        .unwrap_or(0);
    let selected = &ensemble.paths[pick];
    let result = assemble_result(
        scheme,
        &selected.decisions,
        selected.metric,
        DecoderKind::PmiScl,
    );
    Ok((result, ensemble))
}

/// Index of the lowest-metric path whose freshly decoded component
/// passes `spec`'s CRC; the list head when none does or there is no
/// CRC. Paths arrive sorted by metric, so the first hit wins.
fn crc_preferred_index(ensemble: &PathEnsemble, spec: &PolarCodeSpec) -> usize {
    if spec.crc().is_none() {
        return 0;
    }
    ensemble
        .paths
        .iter()
        .position(|p| {
            let u = p.decisions.last().expect("decoded component");
            spec.payload_passes_crc(&spec.extract_payload(u))
        })
        .unwrap_or(0)
}

fn all_levels_pass_crc(scheme: &GptScheme, decisions: &[Vec<u8>]) -> bool {
    scheme
        .components()
        .iter()
        .zip(decisions)
        .all(|(spec, u)| spec.payload_passes_crc(&spec.extract_payload(u)))
}
