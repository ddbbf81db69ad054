//! Correlators, the tripartite correlation inequality and its statistics.
//!
//! The quantity of interest is
//! `I = (1/8) * sum_j | sum_k (-1)^(k.j) E_k |` over the eight settings
//! `k in {0,1}^3`, bounded by 1 for deterministic local strategies and
//! reaching 3/2 for the scenario's quantum statistics.

use serde::Serialize;

use crate::circuit::{MeasurementSetting, WPrepMethod};
use crate::sampling::{run_exact, run_sampled, CountsTable, OutcomeTriple, RunConfig, SamplingMode};
use crate::{Error, Result};

/// A correlator estimate for one setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelatorEstimate {
    pub e: f64,
    pub sigma: f64,
    pub valid_shots: u64,
}

/// The eight correlators in canonical table order; entries may be missing
/// while a set is under construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorSet {
    entries: [Option<CorrelatorEstimate>; 8],
}

impl CorrelatorSet {
    pub fn empty() -> Self {
        Self { entries: [None; 8] }
    }

    pub fn insert(&mut self, setting: MeasurementSetting, est: CorrelatorEstimate) {
        self.entries[setting.table_index()] = Some(est);
    }

    pub fn get(&self, setting: MeasurementSetting) -> Option<CorrelatorEstimate> {
        self.entries[setting.table_index()]
    }

    fn complete(&self) -> Result<[CorrelatorEstimate; 8]> {
        let mut out = [CorrelatorEstimate { e: 0.0, sigma: 0.0, valid_shots: 0 }; 8];
        for (i, entry) in self.entries.iter().enumerate() {
            out[i] = entry.ok_or_else(|| {
                Error::MissingSetting(MeasurementSetting::ALL[i].label())
            })?;
        }
        Ok(out)
    }
}

/// Sample correlator and its multinomial standard error from a counts table:
/// `E = sum(v1 v2 v3 * count) / valid_shots`, `sigma = sqrt((1 - E^2)/N)`.
pub fn correlator_from_counts(table: &CountsTable) -> Result<(f64, f64)> {
    if table.valid_shots == 0 {
        return Err(Error::EmptyCounts);
    }
    let n = table.valid_shots as f64;
    let sum: f64 = OutcomeTriple::ALL
        .iter()
        .map(|t| f64::from(t.product()) * table.counts[t.index()] as f64)
        .sum();
    let e = sum / n;
    let var = ((1.0 - e * e) / n).max(0.0);
    Ok((e, var.sqrt()))
}

/// The closed-form correlators of the postselected six-particle state:
/// `E_000 = -cos2t`, `E_100 = -sin2t`, `E_010 = E_001 = E_111 = (2/3)sin2t`,
/// `E_011 = -E_110 = -E_101 = (2/3)cos2t`.
pub fn analytic_correlators(theta: f64) -> CorrelatorSet {
    let c2 = (2.0 * theta).cos();
    let s2 = (2.0 * theta).sin();
    let value = |k: &MeasurementSetting| -> f64 {
        match (k.k1, k.k2, k.k3) {
            (0, 0, 0) => -c2,
            (1, 0, 0) => -s2,
            (0, 1, 0) | (0, 0, 1) | (1, 1, 1) => (2.0 / 3.0) * s2,
            (0, 1, 1) => (2.0 / 3.0) * c2,
            (1, 1, 0) | (1, 0, 1) => -(2.0 / 3.0) * c2,
            _ => unreachable!("bits are 0 or 1"),
        }
    };
    let mut set = CorrelatorSet::empty();
    for k in MeasurementSetting::ALL {
        set.insert(k, CorrelatorEstimate { e: value(&k), sigma: 0.0, valid_shots: 0 });
    }
    set
}

fn parity_sign(kbits: usize, j: usize) -> f64 {
    if (kbits & j).count_ones() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn setting_bits(k: &MeasurementSetting) -> usize {
    ((k.k1 as usize) << 2) | ((k.k2 as usize) << 1) | k.k3 as usize
}

/// The eight signed sums `sum_k (-1)^(k.j) E_k`, indexed by `j` as a 3-bit
/// integer `j1 j2 j3`.
fn signed_terms(entries: &[CorrelatorEstimate; 8]) -> [f64; 8] {
    let mut terms = [0.0f64; 8];
    for (j, term) in terms.iter_mut().enumerate() {
        for k in MeasurementSetting::ALL {
            *term += parity_sign(setting_bits(&k), j) * entries[k.table_index()].e;
        }
    }
    terms
}

/// Evaluate the inequality's left-hand side from a complete correlator set.
pub fn inequality_value(set: &CorrelatorSet) -> Result<f64> {
    let entries = set.complete()?;
    Ok(signed_terms(&entries).iter().map(|t| t.abs()).sum::<f64>() / 8.0)
}

/// The same quantity from its six-absolute-value closed form in theta; must
/// agree with [`inequality_value`] of [`analytic_correlators`] to roundoff.
pub fn inequality_closed_form(theta: f64) -> f64 {
    let c2 = (2.0 * theta).cos();
    let s2 = (2.0 * theta).sin();
    ((s2 - 5.0 / 3.0 * c2).abs()
        + (s2 + 5.0 / 3.0 * c2).abs()
        + (c2 + 5.0 / 3.0 * s2).abs()
        + (c2 - 5.0 / 3.0 * s2).abs()
        + 10.0 / 3.0 * (c2 + s2).abs()
        + 10.0 / 3.0 * (c2 - s2).abs())
        / 8.0
}

/// First-order error propagation through the absolute values:
/// `sigma_I^2 = sum_k (dI/dE_k)^2 sigma_k^2` with
/// `dI/dE_k = (1/8) sum_j (-1)^(k.j) sgn(term_j)` and `sgn(0) = 0`.
pub fn propagate_uncertainty(set: &CorrelatorSet) -> Result<f64> {
    let entries = set.complete()?;
    let terms = signed_terms(&entries);
    let mut var = 0.0;
    for k in MeasurementSetting::ALL {
        let kbits = setting_bits(&k);
        let mut grad = 0.0;
        for (j, term) in terms.iter().enumerate() {
            let sgn = if *term == 0.0 { 0.0 } else { term.signum() };
            grad += parity_sign(kbits, j) * sgn;
        }
        grad /= 8.0;
        let sigma = entries[k.table_index()].sigma;
        var += grad * grad * sigma * sigma;
    }
    Ok(var.sqrt())
}

/// Exhaustive check of the classical bound: every assignment of +/-1 values
/// to the six observables gives exactly I = 1, so the maximum over all 64
/// deterministic strategies is 1.
pub fn classical_bound_oracle() -> ClassicalBound {
    let mut max = f64::NEG_INFINITY;
    let mut values = Vec::with_capacity(64);
    for mask in 0u32..64 {
        let v = |bit: u32| if mask & (1 << bit) == 0 { 1.0 } else { -1.0 };
        // bit order: A0 A1 B0 B1 C0 C1
        let mut set = CorrelatorSet::empty();
        for k in MeasurementSetting::ALL {
            let e = v(k.k1 as u32) * v(2 + k.k2 as u32) * v(4 + k.k3 as u32);
            set.insert(k, CorrelatorEstimate { e, sigma: 0.0, valid_shots: 0 });
        }
        let i = inequality_value(&set).expect("set is complete");
        values.push(i);
        max = max.max(i);
    }
    ClassicalBound { max, strategy_values: values }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalBound {
    pub max: f64,
    /// I for each of the 64 strategies, mask-ordered over (A0 A1 B0 B1 C0 C1).
    pub strategy_values: Vec<f64>,
}

/// How correlators are produced for a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalMode {
    Analytic,
    Sampled { shots: u64, seed: u64, mode: SamplingMode, workers: usize },
}

/// One evaluated point of the scenario, serializable as the `v1` report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub schema: String,
    pub theta: f64,
    pub i_value: f64,
    pub sigma_i: f64,
    /// True when `I - sigma_I` exceeds the classical bound of 1.
    pub violated: bool,
    pub mode: String,
    pub w_method: String,
    pub shots_per_setting: u64,
    pub seed: Option<u64>,
    pub correlators: Vec<ReportCorrelator>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<ReportCounts>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportCorrelator {
    pub setting: String,
    pub e: f64,
    pub sigma_e: f64,
    pub valid_shots: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportCounts {
    pub setting: String,
    /// Outcome columns in table order +++ ... ---.
    pub counts: [u64; 8],
    pub valid_shots: u64,
    pub attempted_shots: u64,
}

pub const REPORT_SCHEMA: &str = "wfsim-report/v1";

/// Evaluate all eight settings at one theta and assemble the report.
pub fn evaluate(theta: f64, w_method: WPrepMethod, eval: &EvalMode) -> Result<InequalityReport> {
    let mut set = CorrelatorSet::empty();
    let mut counts_out = Vec::new();
    match eval {
        EvalMode::Analytic => {
            set = analytic_correlators(theta);
        }
        EvalMode::Sampled { shots, seed, mode, workers } => {
            for setting in MeasurementSetting::ALL {
                let cfg = RunConfig {
                    shots: *shots,
                    seed: *seed,
                    mode: *mode,
                    theta,
                    setting,
                    w_method,
                    workers: *workers,
                };
                let table = run_sampled(&cfg)?;
                let (e, sigma) = correlator_from_counts(&table)?;
                set.insert(
                    setting,
                    CorrelatorEstimate { e, sigma, valid_shots: table.valid_shots },
                );
                counts_out.push(ReportCounts {
                    setting: setting.label(),
                    counts: table.counts,
                    valid_shots: table.valid_shots,
                    attempted_shots: table.attempted_shots,
                });
            }
        }
    }
    let i_value = inequality_value(&set)?;
    let sigma_i = propagate_uncertainty(&set)?;
    let correlators = MeasurementSetting::ALL
        .iter()
        .map(|s| {
            let est = set.get(*s).expect("set is complete");
            ReportCorrelator {
                setting: s.label(),
                e: est.e,
                sigma_e: est.sigma,
                valid_shots: est.valid_shots,
            }
        })
        .collect();
    let (mode, shots_per_setting, seed) = match eval {
        EvalMode::Analytic => ("analytic".to_string(), 0, None),
        EvalMode::Sampled { shots, seed, mode, .. } => {
            (mode.label().to_string(), *shots, Some(*seed))
        }
    };
    Ok(InequalityReport {
        schema: REPORT_SCHEMA.to_string(),
        theta,
        i_value,
        sigma_i,
        violated: i_value - sigma_i > 1.0,
        mode,
        w_method: w_method.label().to_string(),
        shots_per_setting,
        seed,
        correlators,
        counts: if counts_out.is_empty() { None } else { Some(counts_out) },
    })
}

impl InequalityReport {
    /// Canonical JSON rendering; identical inputs produce identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Evaluate a grid of theta values in order.
pub fn theta_sweep(
    grid: &[f64],
    w_method: WPrepMethod,
    eval: &EvalMode,
) -> Result<Vec<InequalityReport>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.iter().map(|&theta| evaluate(theta, w_method, eval)).collect()
}

/// Exact per-triple distribution as a report, for the analytic columns of
/// histograms.
pub fn exact_triple_probabilities(
    theta: f64,
    setting: MeasurementSetting,
    w_method: WPrepMethod,
) -> Result<[f64; 8]> {
    run_exact(theta, setting, w_method)
}
