//! Successive-cancellation list decoding with seedable path
//! ensembles. Seeding lets a caller carry metrics and decision
//! history across several component codes, which is how the compound
//! receiver inherits soft information between demapping stages.

use alloc::vec;
use alloc::vec::Vec;

use super::{
    check_list_size, f_update, g_update, penalty, LlrVector, PolarCodeSpec,
};
use crate::{config_err, Result};

/// One surviving decoding path: its accumulated metric and the
/// u-domain decision vector of every component decoded so far
/// (oldest first).
#[derive(Debug, Clone, PartialEq)]
pub struct ListPath {
    /// Sum of per-bit penalties over all components, never reset.
    pub metric: f64,
    /// Full decision vectors (frozen bits included), one per
    /// completed component.
    pub decisions: Vec<Vec<u8>>,
}

/// The surviving paths of a list decode, sorted by ascending metric
/// (ties keep the earlier path first).
#[derive(Debug, Clone, PartialEq)]
pub struct PathEnsemble {
    pub paths: Vec<ListPath>,
    pub list_size: usize,
}

impl PathEnsemble {
    /// The best (smallest-metric) path.
    pub fn best(&self) -> &ListPath {
        &self.paths[0]
    }
}

/// A starting point for a component decode: inherited metric and
/// history, plus the channel LLRs this path sees for the component.
/// Seeds may carry per-path LLRs because a path's earlier decisions
/// condition its demapping.
#[derive(Debug, Clone)]
pub(crate) struct SclSeed {
    pub metric: f64,
    pub decisions: Vec<Vec<u8>>,
    pub llrs: LlrVector,
}

struct LivePath {
    metric: f64,
    /// Row r holds the LLRs of all depth-r nodes, concatenated.
    llr: Vec<f64>,
    /// Row r holds the re-encoded code bits of all depth-r nodes.
    bit: Vec<u8>,
    u: Vec<u8>,
    history: Vec<Vec<u8>>,
}

impl Clone for LivePath {
    fn clone(&self) -> Self {
        Self {
            metric: self.metric,
            llr: self.llr.clone(),
            bit: self.bit.clone(),
            u: self.u.clone(),
            history: self.history.clone(),
        }
    }
}

impl LivePath {
    fn from_seed(seed: SclSeed, n: usize, stages: usize) -> Self {
        let mut llr = vec![0.0; (stages + 1) * n];
        llr[..n].copy_from_slice(seed.llrs.as_slice());
        Self {
            metric: seed.metric,
            llr,
            bit: vec![0; (stages + 1) * n],
            u: Vec::with_capacity(n),
            history: seed.decisions,
        }
    }

    /// Brings the decision-point LLR for leaf `i` up to date. For
    /// i = 0 this is the full left spine of f-updates; otherwise the
    /// node at depth `stages - trailing_zeros(i)` turns from left to
    /// right sibling (one g-update) and deeper nodes are f-updates.
    fn refresh_llr(&mut self, i: usize, n: usize, stages: usize) {
        let start_depth = if i == 0 {
            1
        } else {
            stages - i.trailing_zeros() as usize
        };
        for depth in start_depth..=stages {
            let size = n >> depth;
            let node = i >> (stages - depth);
            let start = node * size;
            let parent_start = (node >> 1) * size * 2;
            let row = (depth - 1) * n;
            let child_row = depth * n;
            if node & 1 == 0 {
                for j in 0..size {
                    let a = self.llr[row + parent_start + j];
                    let b = self.llr[row + parent_start + size + j];
                    self.llr[child_row + start + j] = f_update(a, b);
                }
            } else {
                let sibling = (node - 1) * size;
                for j in 0..size {
                    let a = self.llr[row + parent_start + j];
                    let b = self.llr[row + parent_start + size + j];
                    let u = self.bit[child_row + sibling + j];
                    self.llr[child_row + start + j] = g_update(a, b, u);
                }
            }
        }
    }

    /// Records the decision for leaf `i` and folds completed right
    /// siblings into their parents' partial sums.
    fn commit_bit(&mut self, i: usize, value: u8, n: usize, stages: usize) {
        self.u.push(value);
        self.bit[stages * n + i] = value;
        let mut depth = stages;
        let mut node = i;
        while node & 1 == 1 && depth > 0 {
            let size = n >> depth;
            let left = (node - 1) * size;
            let right = node * size;
            let parent_start = (node >> 1) * size * 2;
            let row = (depth - 1) * n;
            let child_row = depth * n;
            for j in 0..size {
                let l = self.bit[child_row + left + j];
                let r = self.bit[child_row + right + j];
                self.bit[row + parent_start + j] = l ^ r;
                self.bit[row + parent_start + size + j] = r;
            }
            node >>= 1;
            depth -= 1;
        }
    }

    fn leaf_llr(&self, i: usize, n: usize, stages: usize) -> f64 {
        self.llr[stages * n + i]
    }
}

/// Runs list decoding of one component from the given seeds. Forks at
/// every unfrozen position, keeps the `list_size` smallest metrics
/// (ties keep the lower path index, and bit 0 before bit 1), and
/// returns the survivors sorted by ascending metric with the new
/// component's decisions appended to each path's history.
pub(crate) fn scl_run(
    seeds: Vec<SclSeed>,
    spec: &PolarCodeSpec,
    list_size: usize,
) -> Result<PathEnsemble> {
    check_list_size(list_size)?;
    if seeds.is_empty() {
        return config_err("list decoding requires at least one seed path");
    }
    if seeds.len() > list_size {
        return config_err("seed ensemble exceeds list size");
    }
    let n = spec.block_length();
    let stages = spec.stages();
    for s in &seeds {
        spec.check_llr_len(&s.llrs)?;
    }

    let mut paths: Vec<LivePath> = seeds
        .into_iter()
        .map(|s| LivePath::from_seed(s, n, stages))
        .collect();

    for i in 0..n {
        for p in paths.iter_mut() {
            p.refresh_llr(i, n, stages);
        }
        if spec.is_frozen(i) {
            let value = spec.frozen_values()[i];
            for p in paths.iter_mut() {
                p.metric += penalty(p.leaf_llr(i, n, stages), value);
                p.commit_bit(i, value, n, stages);
            }
        } else {
            // Candidate order (path 0 bit 0, path 0 bit 1, path 1 bit
            // 0, ...) plus a stable sort gives the documented
            // tie-break for free.
            let mut cand: Vec<(f64, usize, u8)> = Vec::with_capacity(2 * paths.len());
            for (pi, p) in paths.iter().enumerate() {
                let l = p.leaf_llr(i, n, stages);
                cand.push((p.metric + penalty(l, 0), pi, 0));
                cand.push((p.metric + penalty(l, 1), pi, 1));
            }
            cand.sort_by(|a, b| a.0.total_cmp(&b.0));
            cand.truncate(list_size);

            let mut uses = vec![0u8; paths.len()];
            for &(_, pi, _) in &cand {
                uses[pi] += 1;
            }
            let mut pool: Vec<Option<LivePath>> = paths.drain(..).map(Some).collect();
            let mut next = Vec::with_capacity(cand.len());
            for &(metric, pi, bit) in &cand {
                let mut p = if uses[pi] > 1 {
                    uses[pi] -= 1;
                    pool[pi].as_ref().expect("parent path present").clone()
                } else {
                    pool[pi].take().expect("parent path present")
                };
                p.metric = metric;
                p.commit_bit(i, bit, n, stages);
                next.push(p);
            }
            paths = next;
        }
    }

    let mut out: Vec<ListPath> = paths
        .into_iter()
        .map(|p| {
            let mut decisions = p.history;
            decisions.push(p.u);
            ListPath {
                metric: p.metric,
                decisions,
            }
        })
        .collect();
    out.sort_by(|a, b| a.metric.total_cmp(&b.metric));
    Ok(PathEnsemble {
        paths: out,
        list_size,
    })
}

/// List decoding of one component code.
///
/// Without a seed, decoding starts from a single zero-metric path.
/// With a seed, every seed path's metric and decision history carry
/// into its descendants; all seed paths share the supplied channel
/// LLRs. The returned ensemble holds at most `list_size` paths sorted
/// by ascending metric, each with this component's decision vector
/// appended to its history.
pub fn scl_decode(
    llrs: &LlrVector,
    spec: &PolarCodeSpec,
    list_size: usize,
    seed: Option<&PathEnsemble>,
) -> Result<PathEnsemble> {
    let seeds = match seed {
        None => vec![SclSeed {
            metric: 0.0,
            decisions: Vec::new(),
            llrs: llrs.clone(),
        }],
        Some(ens) => {
            if ens.paths.is_empty() {
                return config_err("seed ensemble has no paths");
            }
            ens.paths
                .iter()
                .map(|p| SclSeed {
                    metric: p.metric,
                    decisions: p.decisions.clone(),
                    llrs: llrs.clone(),
                })
                .collect()
        }
    };
    scl_run(seeds, spec, list_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::{embed_info, polar_transform, sc_decode};
    use alloc::vec;

    fn llr(v: &[f64]) -> LlrVector {
        LlrVector::new(v.to_vec()).unwrap()
    }

    fn random_llrs(n: usize, state: &mut u64) -> Vec<f64> {
        (0..n)
            .map(|_| {
                *state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let u = ((*state >> 11) as f64) / (1u64 << 53) as f64;
                (u - 0.5) * 12.0
            })
            .collect()
    }

    fn test_spec(n: usize, payload: usize) -> PolarCodeSpec {
        // Freeze the positions with the fewest set index bits; crude
        // but adequate for kernel-level tests.
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&i| (i.count_ones(), core::cmp::Reverse(i)));
        let mut mask = vec![0u8; n];
        for &i in idx.iter().take(n - payload) {
            mask[i] = 1;
        }
        PolarCodeSpec::new(n, mask, vec![0; n], None).unwrap()
    }

    #[test]
    fn list_size_one_matches_sc_exactly() {
        let mut state = 7u64;
        for n in [2usize, 4, 8, 16, 32] {
            let spec = test_spec(n, n / 2);
            for _ in 0..50 {
                let l = llr(&random_llrs(n, &mut state));
                let sc = sc_decode(&l, &spec).unwrap();
                let ens = scl_decode(&l, &spec, 1, None).unwrap();
                assert_eq!(ens.paths.len(), 1);
                let best = ens.best();
                assert_eq!(spec.extract_payload(&best.decisions[0]), sc.info_bits);
                assert_eq!(best.metric, sc.metric);
            }
        }
    }

    #[test]
    fn larger_lists_never_worsen_the_best_metric() {
        let mut state = 99u64;
        for _ in 0..30 {
            let spec = test_spec(16, 8);
            let l = llr(&random_llrs(16, &mut state));
            let mut prev = f64::INFINITY;
            for list in [1usize, 2, 4, 8, 16] {
                let ens = scl_decode(&l, &spec, list, None).unwrap();
                let best = ens.best().metric;
                assert!(best <= prev + 1e-12);
                prev = best;
            }
        }
    }

    #[test]
    fn ensemble_is_sorted_and_bounded() {
        let mut state = 3u64;
        let spec = test_spec(16, 8);
        let l = llr(&random_llrs(16, &mut state));
        let ens = scl_decode(&l, &spec, 4, None).unwrap();
        assert!(ens.paths.len() <= 4);
        for w in ens.paths.windows(2) {
            assert!(w[0].metric <= w[1].metric);
        }
        for p in &ens.paths {
            assert!(p.metric >= 0.0);
        }
    }

    #[test]
    fn noiseless_decode_recovers_codeword_with_zero_metric() {
        let spec = test_spec(16, 6);
        let payload = [1u8, 0, 1, 1, 0, 1];
        let u = embed_info(&payload, &spec).unwrap();
        let x = polar_transform(&u).unwrap();
        let l: Vec<f64> = x.iter().map(|&b| if b == 0 { 8.0 } else { -8.0 }).collect();
        let ens = scl_decode(&llr(&l), &spec, 4, None).unwrap();
        assert_eq!(ens.best().metric, 0.0);
        assert_eq!(ens.best().decisions[0], u);
    }

    #[test]
    fn seed_metric_biases_final_selection() {
        // Two seed paths with metrics 0 and 100 over the same LLRs:
        // every descendant of the metric-100 seed keeps that offset,
        // so the winner descends from the metric-0 seed.
        let spec = test_spec(8, 4);
        let payload = [1u8, 1, 0, 1];
        let u = embed_info(&payload, &spec).unwrap();
        let x = polar_transform(&u).unwrap();
        let l: Vec<f64> = x.iter().map(|&b| if b == 0 { 6.0 } else { -6.0 }).collect();
        let seed = PathEnsemble {
            paths: vec![
                ListPath {
                    metric: 0.0,
                    decisions: vec![vec![0u8]],
                },
                ListPath {
                    metric: 100.0,
                    decisions: vec![vec![1u8]],
                },
            ],
            list_size: 4,
        };
        let ens = scl_decode(&llr(&l), &spec, 4, Some(&seed)).unwrap();
        let best = ens.best();
        assert_eq!(best.decisions[0], vec![0u8]);
        assert_eq!(best.decisions[1], u);
        assert_eq!(best.metric, 0.0);
    }

    #[test]
    fn seed_larger_than_list_is_rejected() {
        let spec = test_spec(4, 2);
        let seed = PathEnsemble {
            paths: vec![
                ListPath { metric: 0.0, decisions: vec![] },
                ListPath { metric: 1.0, decisions: vec![] },
            ],
            list_size: 2,
        };
        let l = llr(&[1.0, -1.0, 2.0, -2.0]);
        assert!(scl_decode(&l, &spec, 1, Some(&seed)).is_err());
        assert!(scl_decode(&l, &spec, 0, None).is_err());
    }
}
