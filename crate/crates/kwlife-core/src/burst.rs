//! Kleinberg two-state burst detection.
//!
//! A keyword's yearly document counts are modeled by a two-state automaton:
//! a baseline state emits documents at the series-wide rate p0 = Σr/Σd and
//! an elevated state at rate p1 = s·p0. Each year in state p costs the
//! negative binomial log-likelihood of its count, and entering the elevated
//! state costs gamma·ln(n). The cheapest state sequence segments the series
//! into quiet stretches and bursts; maximal elevated runs become
//! [`BurstInterval`]s weighted by how much emission cost the elevated state
//! saves over the baseline.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use libm::log;

use crate::error::{Error, Result};
use crate::timeseries::KeywordMatrix;

/// Emission probabilities are kept below 1 by this margin so their
/// logarithms stay finite.
pub const P_CLAMP_EPS: f64 = 1e-9;

/// Burst model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurstParams {
    s: f64,
    gamma: f64,
}

impl BurstParams {
    /// Create parameters: `s` finite and > 1, `gamma` finite and ≥ 0.
    ///
    /// `s` is the rate ratio between the elevated and baseline states;
    /// `gamma` scales the elevated-state entry cost gamma·ln(n). Errors with
    /// [`Error::InvalidBurstParams`] outside those ranges.
    pub fn new(s: f64, gamma: f64) -> Result<BurstParams> {
        if !(s.is_finite() && s > 1.0 && gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::InvalidBurstParams { s, gamma });
        }
        Ok(BurstParams { s, gamma })
    }

    /// Rate ratio between the elevated and baseline states.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Scale of the elevated-state entry cost.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl Default for BurstParams {
    /// s = 2.0, gamma = 1.0.
    fn default() -> BurstParams {
        BurstParams { s: 2.0, gamma: 1.0 }
    }
}

/// Why a fitted sequence is trivially all-baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// The series has no occurrences at all (Σr = 0); there is no rate to
    /// elevate.
    NoOccurrences,
    /// The baseline rate reached 1 and was clamped to 1 − [`P_CLAMP_EPS`].
    /// Baseline and elevated rates then coincide, so no year prefers the
    /// elevated state.
    SaturatedRate,
}

/// Fitted state sequence for one series.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSequence {
    /// Per-timestep state, `true` = elevated.
    pub states: Vec<bool>,
    /// Baseline emission probability Σr/Σd (0 when Σr = 0).
    pub p0: f64,
    /// Elevated emission probability min(s·p0, 1 − [`P_CLAMP_EPS`]).
    pub p1: f64,
    /// Set when the fit was degenerate; `None` for a regular fit.
    pub degeneracy: Option<Degeneracy>,
}

/// One maximal elevated-state run for a keyword.
#[derive(Debug, Clone, PartialEq)]
pub struct BurstInterval {
    /// Canonical keyword the burst belongs to.
    pub keyword: String,
    /// First year of the run, inclusive.
    pub start_year: i32,
    /// Last year of the run, inclusive.
    pub end_year: i32,
    /// Summed emission-cost savings of the elevated state across the run.
    pub weight: f64,
}

/// Emission costs of one timestep in the baseline and elevated states.
///
/// For a year with `d` eligible papers of which `r` contain the keyword, a
/// state with emission probability p costs −(r·ln p + (d−r)·ln(1−p)). The
/// binomial coefficient of the full likelihood is omitted: it is identical
/// in both states, so it cancels in every sequence comparison and in weight
/// differences.
///
/// Errors when `r > d` or either probability lies outside the open interval
/// (0, 1).
pub fn state_costs(r: u32, d: u32, p0: f64, p1: f64) -> Result<(f64, f64)> {
    if r > d {
        return Err(Error::CountExceedsTotal { count: r, total: d });
    }
    check_probability(p0)?;
    check_probability(p1)?;
    Ok((
        emission(r as f64, d as f64, log(p0), log(1.0 - p0)),
        emission(r as f64, d as f64, log(p1), log(1.0 - p1)),
    ))
}

/// Cost of entering the elevated state: gamma·ln(n) for a length-n series.
pub fn transition_cost(n: usize, params: &BurstParams) -> f64 {
    params.gamma * log(n as f64)
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

fn emission(r: f64, d: f64, ln_p: f64, ln_q: f64) -> f64 {
    -(r * ln_p + (d - r) * ln_q)
}

/// Fit the cheapest state sequence for one series.
///
/// Minimizes total cost over all 2^n sequences: per-year emission cost (see
/// [`state_costs`]) plus gamma·ln(n) for every transition from baseline to
/// elevated. An implicit baseline state precedes the series, so starting
/// elevated pays the entry cost too. Down transitions and staying put are
/// free. Cost ties are broken toward the baseline state at each step, which
/// makes the result deterministic and prefers the quieter explanation.
///
/// Two degenerate inputs return an all-baseline sequence with a flag instead
/// of an error: a series with no occurrences ([`Degeneracy::NoOccurrences`])
/// and a series whose baseline rate reaches 1 ([`Degeneracy::SaturatedRate`],
/// rate clamped to 1 − [`P_CLAMP_EPS`]).
///
/// Errors on mismatched or empty series and when any `r[t] > d[t]`.
pub fn optimal_state_sequence(r: &[u32], d: &[u32], params: &BurstParams) -> Result<StateSequence> {
    if r.len() != d.len() {
        return Err(Error::LengthMismatch {
            left: r.len(),
            right: d.len(),
        });
    }
    if r.is_empty() {
        return Err(Error::EmptySeries);
    }
    for (&rt, &dt) in r.iter().zip(d) {
        if rt > dt {
            return Err(Error::CountExceedsTotal {
                count: rt,
                total: dt,
            });
        }
    }
    let n = r.len();
    let sum_r: u64 = r.iter().map(|&x| u64::from(x)).sum();
    let sum_d: u64 = d.iter().map(|&x| u64::from(x)).sum();
    if sum_r == 0 {
        return Ok(StateSequence {
            states: vec![false; n],
            p0: 0.0,
            p1: 0.0,
            degeneracy: Some(Degeneracy::NoOccurrences),
        });
    }

    let ceiling = 1.0 - P_CLAMP_EPS;
    let raw_p0 = sum_r as f64 / sum_d as f64;
    let (p0, degeneracy) = if raw_p0 >= ceiling {
        (ceiling, Some(Degeneracy::SaturatedRate))
    } else {
        (raw_p0, None)
    };
    let p1 = (params.s * p0).min(ceiling);

    let tau = transition_cost(n, params);
    let ln_p0 = log(p0);
    let ln_q0 = log(1.0 - p0);
    let ln_p1 = log(p1);
    let ln_q1 = log(1.0 - p1);

    // suffix0[t] / suffix1[t]: cheapest completion of the series from t on,
    // given the state at t, including t's own emission cost.
    let mut suffix0 = vec![0.0f64; n];
    let mut suffix1 = vec![0.0f64; n];
    for t in (0..n).rev() {
        let rf = r[t] as f64;
        let df = d[t] as f64;
        let c0 = emission(rf, df, ln_p0, ln_q0);
        let c1 = emission(rf, df, ln_p1, ln_q1);
        if t + 1 == n {
            suffix0[t] = c0;
            suffix1[t] = c1;
        } else {
            suffix0[t] = c0 + f64::min(suffix0[t + 1], tau + suffix1[t + 1]);
            suffix1[t] = c1 + f64::min(suffix0[t + 1], suffix1[t + 1]);
        }
    }

    // Walk forward, staying baseline whenever that still attains the
    // optimum. The strict comparison is the tie-break.
    let mut states = Vec::with_capacity(n);
    let mut prev_elevated = false;
    for t in 0..n {
        let entry = if prev_elevated { 0.0 } else { tau };
        let elevated = suffix0[t] > entry + suffix1[t];
        states.push(elevated);
        prev_elevated = elevated;
    }

    Ok(StateSequence {
        states,
        p0,
        p1,
        degeneracy,
    })
}

/// Turn a state sequence into burst intervals.
///
/// Each maximal elevated run becomes one interval spanning the matching
/// entries of `years`, weighted by Σ (c0(t) − c1(t)) over the run. For
/// sequences produced by [`optimal_state_sequence`] the weight is
/// non-negative: a run only enters the optimum when its savings repay the
/// entry cost.
///
/// All-baseline sequences yield an empty list without touching the
/// probabilities, so degenerate fits pass through cleanly.
pub fn enumerate_bursts(
    keyword: &str,
    states: &[bool],
    r: &[u32],
    d: &[u32],
    p0: f64,
    p1: f64,
    years: &[i32],
) -> Result<Vec<BurstInterval>> {
    let n = states.len();
    for len in [r.len(), d.len(), years.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: len,
            });
        }
    }
    let mut bursts = Vec::new();
    let mut t = 0;
    while t < n {
        if !states[t] {
            t += 1;
            continue;
        }
        let start = t;
        while t < n && states[t] {
            t += 1;
        }
        let end = t - 1;
        let mut weight = 0.0;
        for k in start..=end {
            let (c0, c1) = state_costs(r[k], d[k], p0, p1)?;
            weight += c0 - c1;
        }
        bursts.push(BurstInterval {
            keyword: keyword.to_string(),
            start_year: years[start],
            end_year: years[end],
            weight,
        });
    }
    Ok(bursts)
}

/// Detect bursts for every keyword in a matrix.
///
/// Runs the fit-and-enumerate pipeline per keyword row against the shared
/// yearly totals, then sorts all intervals into one deterministic order:
/// weight descending, then keyword ascending, then start year ascending.
/// Keywords with degenerate fits contribute no intervals rather than
/// failing the run. A matrix whose rows were all dropped by thresholding
/// yields an empty list.
pub fn detect_bursts(matrix: &KeywordMatrix, params: &BurstParams) -> Result<Vec<BurstInterval>> {
    let years: Vec<i32> = matrix.years().collect();
    let d = matrix.totals();
    let mut bursts = Vec::new();
    for (keyword, r) in matrix.rows() {
        let seq = optimal_state_sequence(r, d, params)?;
        bursts.extend(enumerate_bursts(
            keyword,
            &seq.states,
            r,
            d,
            seq.p0,
            seq.p1,
            &years,
        )?);
    }
    bursts.sort_by(|a, b| {
        b.weight
            .total_cmp(&a.weight)
            .then_with(|| a.keyword.cmp(&b.keyword))
            .then_with(|| a.start_year.cmp(&b.start_year))
    });
    Ok(bursts)
}
