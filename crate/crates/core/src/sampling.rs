//! Random physical covariance matrices and the absolute-separability census.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::{SearchConfig, TpsSearch, Verdict, ABS_SEPARABILITY_TOL};
use crate::symplectic::{CovarianceMatrix, StandardFormParams, PHYSICAL_TOL};
use crate::transforms::{ModeEuler, SymplecticMatrix};

/// Entry ranges for random draws. Collapsed ranges (`lo == hi`) are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRanges {
    pub diag_lo: f64,
    pub diag_hi: f64,
    pub offdiag_lo: f64,
    pub offdiag_hi: f64,
}

impl Default for SampleRanges {
    fn default() -> Self {
        Self {
            diag_lo: 0.5,
            diag_hi: 1.5,
            offdiag_lo: -1.0,
            offdiag_hi: 1.0,
        }
    }
}

impl SampleRanges {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.diag_lo, self.diag_hi, self.offdiag_lo, self.offdiag_hi]
            .iter()
            .all(|x| x.is_finite());
        if !finite
            || self.diag_lo <= 0.0
            || self.diag_lo > self.diag_hi
            || self.offdiag_lo > self.offdiag_hi
        {
            return Err(Error::InvalidParameter(format!(
                "bad sample ranges {self:?}"
            )));
        }
        Ok(())
    }
}

/// Outcome of one draw.
#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    Accepted(CovarianceMatrix),
    /// Fails the uncertainty relation; carries the raw draw.
    Rejected(Matrix4<f64>),
}

impl Sample {
    pub fn accepted(self) -> Option<CovarianceMatrix> {
        match self {
            Sample::Accepted(v) => Some(v),
            Sample::Rejected(_) => None,
        }
    }
}

fn filter(m: Matrix4<f64>) -> Sample {
    let v = CovarianceMatrix::new(m, 0.0).expect("sampled matrices are finite and symmetric");
    if v.is_physical(PHYSICAL_TOL) {
        Sample::Accepted(v)
    } else {
        Sample::Rejected(m)
    }
}

/// Draws `(a, b, c_plus, c_minus)` in that order and assembles the standard form.
pub fn sample_standard<R: Rng + ?Sized>(rng: &mut R, ranges: &SampleRanges) -> Sample {
    let p = draw_standard(rng, ranges);
    filter(*p.to_covariance().matrix())
}

fn draw_standard<R: Rng + ?Sized>(rng: &mut R, r: &SampleRanges) -> StandardFormParams {
    let a = rng.random_range(r.diag_lo..=r.diag_hi);
    let b = rng.random_range(r.diag_lo..=r.diag_hi);
    let c_plus = rng.random_range(r.offdiag_lo..=r.offdiag_hi);
    let c_minus = rng.random_range(r.offdiag_lo..=r.offdiag_hi);
    StandardFormParams::new(a, b, c_plus, c_minus)
}

/// Draws the four diagonal entries, then the six upper-triangle entries in
/// row-major order, and mirrors them.
pub fn sample_generic<R: Rng + ?Sized>(rng: &mut R, ranges: &SampleRanges) -> Sample {
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        m[(i, i)] = rng.random_range(ranges.diag_lo..=ranges.diag_hi);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let x = rng.random_range(ranges.offdiag_lo..=ranges.offdiag_hi);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    filter(m)
}

/// A standard-form draw dressed with a random local symplectic: per mode a
/// squeeze log-uniform in `[1/2, 2]` between two uniform rotations.
pub fn sample_generic_via_t<R: Rng + ?Sized>(rng: &mut R, ranges: &SampleRanges) -> Sample {
    let p = draw_standard(rng, ranges);
    let mut euler = || {
        let out = rng.random_range(0.0..TAU);
        let squeeze = rng
            .random_range(-std::f64::consts::LN_2..=std::f64::consts::LN_2)
            .exp();
        let inn = rng.random_range(0.0..TAU);
        ModeEuler::new(out, squeeze, inn)
    };
    let (ea, eb) = (euler(), euler());
    match filter(*p.to_covariance().matrix()) {
        Sample::Accepted(v) => {
            let t = SymplecticMatrix::local_symplectic(ea, eb).expect("squeeze is positive");
            Sample::Accepted(t.apply(&v))
        }
        rejected => rejected,
    }
}

/// Pure two-mode squeezed vacuum: `a = b = cosh(2r)/2`, `c_plus = -c_minus = sinh(2r)/2`.
pub fn pure_tms(r: f64) -> Result<CovarianceMatrix> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "squeeze parameter must be finite and >= 0, got {r}"
        )));
    }
    let a = (2.0 * r).cosh() / 2.0;
    let c = (2.0 * r).sinh() / 2.0;
    Ok(StandardFormParams::symmetric(a, c).to_covariance())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    Standard,
    Generic,
    /// Standard-form draws under a random local symplectic.
    GenericViaT,
}

impl SampleMode {
    pub fn draw<R: Rng + ?Sized>(self, rng: &mut R, ranges: &SampleRanges) -> Sample {
        match self {
            SampleMode::Standard => sample_standard(rng, ranges),
            SampleMode::Generic => sample_generic(rng, ranges),
            SampleMode::GenericViaT => sample_generic_via_t(rng, ranges),
        }
    }
}

impl FromStr for SampleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(SampleMode::Standard),
            "generic" => Ok(SampleMode::Generic),
            "generic-via-t" | "generic_via_t" => Ok(SampleMode::GenericViaT),
            other => Err(Error::InvalidParameter(format!(
                "unknown sample mode '{other}'"
            ))),
        }
    }
}

impl fmt::Display for SampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleMode::Standard => "standard",
            SampleMode::Generic => "generic",
            SampleMode::GenericViaT => "generic_via_t",
        })
    }
}

/// The generator for draw number `index`: the master seed with `index` as
/// the ChaCha stream, so every draw is reproducible on its own.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub mode: SampleMode,
    /// Number of physical states to classify.
    pub n_physical: usize,
    pub ranges: SampleRanges,
    pub seed: u64,
    /// Threshold on `E+` in bits.
    pub tol: f64,
    pub search: SearchConfig,
    /// Give up after this many raw draws.
    pub max_draws: u64,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self {
            mode: SampleMode::Standard,
            n_physical: 7746,
            ranges: SampleRanges::default(),
            seed: 0,
            tol: ABS_SEPARABILITY_TOL,
            search: SearchConfig::default(),
            max_draws: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    /// Raw draws, rejects included.
    pub generated: u64,
    pub physical: u64,
    pub abs_separable: u64,
    /// `abs_separable / physical`.
    pub fraction: f64,
    pub seed: u64,
    pub mode: SampleMode,
    /// States whose search hit the budget; classified from the best value found.
    pub unconverged: u64,
}

/// Draws until `n_physical` states pass the physicality filter and classifies
/// each one. Classification runs in parallel; the report does not depend on
/// the thread count.
pub fn census(config: &CensusConfig) -> Result<CensusReport> {
    census_with(config, &TpsSearch::new(config.search)?)
}

pub fn census_with(config: &CensusConfig, search: &TpsSearch) -> Result<CensusReport> {
    if config.n_physical == 0 {
        return Err(Error::InvalidParameter(
            "census needs n_physical >= 1".into(),
        ));
    }
    config.ranges.validate()?;
    let states = collect_physical(config)?;
    let generated = states.generated;
    let verdicts: Vec<(bool, bool)> = states
        .accepted
        .par_iter()
        .map(|v| {
            let c = search.classify_best_effort(v, config.tol)?;
            Ok((c.verdict == Verdict::AbsolutelySeparable, c.converged))
        })
        .collect::<Result<_>>()?;
    let physical = verdicts.len() as u64;
    let abs_separable = verdicts.iter().filter(|(sep, _)| *sep).count() as u64;
    let unconverged = verdicts.iter().filter(|(_, conv)| !conv).count() as u64;
    Ok(CensusReport {
        generated,
        physical,
        abs_separable,
        fraction: abs_separable as f64 / physical as f64,
        seed: config.seed,
        mode: config.mode,
        unconverged,
    })
}

struct Drawn {
    generated: u64,
    accepted: Vec<CovarianceMatrix>,
}

fn collect_physical(config: &CensusConfig) -> Result<Drawn> {
    let mut accepted = Vec::with_capacity(config.n_physical);
    let mut index = 0u64;
    while accepted.len() < config.n_physical {
        if index >= config.max_draws {
            return Err(Error::SamplingStalled(index));
        }
        let mut rng = draw_rng(config.seed, index);
        index += 1;
        if let Some(v) = config.mode.draw(&mut rng, &config.ranges).accepted() {
            accepted.push(v);
        }
    }
    Ok(Drawn {
        generated: index,
        accepted,
    })
}
