//! Entanglement across all number-conserving mode redefinitions.
//!
//! Every chart of `U(2)` defines a bipartition of the two-mode system. The
//! functions here sweep the log-negativity along one chart angle, tabulate it
//! over a local squeeze and a mixing angle, and find its supremum `E+` and
//! infimum `E-` over the whole group.
//!
//! The global search evaluates a coarse grid on the 4-torus of chart angles and
//! polishes the best grid points with Nelder-Mead. The objective is the
//! smaller partial-transpose symplectic eigenvalue, which stays informative
//! where `E_N` is zero.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entanglement::{
    is_separable, log_negativity, negativity_from_nu, pt_spectrum_of, SEPARABILITY_TOL,
};
use crate::error::{Error, Result};
use crate::simplex::{self, SimplexOptions};
use crate::symplectic::{CovarianceMatrix, StandardFormParams, PHYSICAL_TOL};
use crate::transforms::{LocalSqueezeParams, SymplecticMatrix, U2Chart};

/// Default threshold on `E+` (bits) below which a state is absolutely separable.
pub const ABS_SEPARABILITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Theta,
    Phi,
    Phi1,
    Phi2,
}

impl SweepAxis {
    fn index(self) -> usize {
        match self {
            SweepAxis::Theta => 0,
            SweepAxis::Phi => 1,
            SweepAxis::Phi1 => 2,
            SweepAxis::Phi2 => 3,
        }
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta" => Ok(SweepAxis::Theta),
            "phi" => Ok(SweepAxis::Phi),
            "phi1" => Ok(SweepAxis::Phi1),
            "phi2" => Ok(SweepAxis::Phi2),
            other => Err(Error::InvalidParameter(format!(
                "unknown sweep axis '{other}'"
            ))),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::Theta => "theta",
            SweepAxis::Phi => "phi",
            SweepAxis::Phi1 => "phi1",
            SweepAxis::Phi2 => "phi2",
        })
    }
}

/// One-dimensional scan of a chart angle with the other three held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub steps: usize,
    /// Values of the non-swept angles; the swept one is ignored.
    pub fixed: U2Chart,
    pub range: (f64, f64),
}

impl SweepSpec {
    /// `theta` over `[0, pi/2]` with all phases zero.
    pub fn theta(steps: usize) -> Self {
        Self {
            axis: SweepAxis::Theta,
            steps,
            fixed: U2Chart::new(0.0, 0.0, 0.0, 0.0),
            range: (0.0, FRAC_PI_2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        let (lo, hi) = self.range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "sweep range [{lo}, {hi}] is empty"
            )));
        }
        Ok(())
    }

    pub fn angles(&self) -> Vec<f64> {
        linspace(self.range.0, self.range.1, self.steps)
    }

    fn chart_at(&self, angle: f64) -> U2Chart {
        let mut x = self.fixed.to_array();
        x[self.axis.index()] = angle;
        U2Chart::from_array(x)
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + i as f64 * h })
                .collect()
        }
    }
}

fn require_physical(v: &CovarianceMatrix) -> Result<()> {
    if v.is_physical(PHYSICAL_TOL) {
        Ok(())
    } else {
        Err(Error::NotPhysical)
    }
}

/// `(angle, E_N)` along the sweep, in grid order.
pub fn sweep(v: &CovarianceMatrix, spec: &SweepSpec) -> Result<Vec<(f64, f64)>> {
    spec.validate()?;
    require_physical(v)?;
    spec.angles()
        .into_iter()
        .map(|angle| {
            let s = SymplecticMatrix::passive(&spec.chart_at(angle));
            Ok((angle, log_negativity(&s.apply(v))?.log_negativity))
        })
        .collect()
}

/// `E_N` over a grid of symmetric local squeezes `eta` and mixing angles `theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Surface {
    pub etas: Vec<f64>,
    pub thetas: Vec<f64>,
    /// Row per `eta`, column per `theta`.
    pub values: Vec<Vec<f64>>,
}

/// Squeezes the standard-form state with `local_squeeze(eta, eta)`, then mixes
/// the modes with the chart `(theta, phases[0], phases[1], phases[2])`.
pub fn surface(
    params: &StandardFormParams,
    etas: &[f64],
    thetas: &[f64],
    phases: [f64; 3],
) -> Result<Surface> {
    let v = params.to_covariance();
    require_physical(&v)?;
    let mixers: Vec<SymplecticMatrix> = thetas
        .iter()
        .map(|&t| SymplecticMatrix::passive(&U2Chart::new(t, phases[0], phases[1], phases[2])))
        .collect();
    let values = etas
        .iter()
        .map(|&eta| {
            let squeezed =
                SymplecticMatrix::local_squeeze(LocalSqueezeParams::symmetric(eta)?)?.apply(&v);
            mixers
                .iter()
                .map(|s| Ok(log_negativity(&s.apply(&squeezed))?.log_negativity))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Surface {
        etas: etas.to_vec(),
        thetas: thetas.to_vec(),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Grid points along `(theta, phi, phi1, phi2)`. `theta` spans `[0, pi/2]`
    /// inclusive, the phases span `[0, 2 pi)`.
    pub grid: [usize; 4],
    /// Number of best grid points polished by the simplex.
    pub top_k: usize,
    /// Additional simplex starts drawn uniformly on the torus from `seed`.
    pub random_starts: usize,
    pub seed: u64,
    /// Cap on objective evaluations per extremum.
    pub budget: usize,
    /// A refinement has converged once its simplex is smaller than this (radians).
    pub converge_tol: f64,
    /// Refinement keeps polishing down to this simplex size.
    pub refine_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid: [9, 8, 8, 8],
            top_k: 5,
            random_starts: 0,
            seed: 0,
            budget: 20_000,
            converge_tol: 1e-6,
            refine_tol: 1e-10,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid[0] < 2 || self.grid[1..].iter().any(|&n| n < 1) {
            return Err(Error::InvalidParameter(format!(
                "bad search grid {:?}",
                self.grid
            )));
        }
        if self.top_k + self.random_starts == 0 {
            return Err(Error::InvalidParameter(
                "search needs at least one refinement start".into(),
            ));
        }
        if !(self.converge_tol > 0.0 && self.refine_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "search tolerances must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn grid_size(&self) -> usize {
        self.grid.iter().product()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub sense: Sense,
    /// Log-negativity at `chart`, in bits.
    pub value: f64,
    pub chart: U2Chart,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AbsolutelySeparable,
    RelativelyEntangled,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AbsolutelySeparable => "absolutely_separable",
            Verdict::RelativelyEntangled => "relatively_entangled",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub e_plus: f64,
    pub e_minus: f64,
    pub max_chart: U2Chart,
    pub min_chart: U2Chart,
    /// The state passes the PPT test in the `min_chart` bipartition.
    pub separable_chart_found: bool,
    pub evaluations: usize,
    pub converged: bool,
}

/// Grid-plus-simplex optimizer over the chart torus. Build once and reuse:
/// the grid mixers are precomputed.
#[derive(Debug, Clone)]
pub struct TpsSearch {
    config: SearchConfig,
    grid: Vec<(U2Chart, Matrix4<f64>)>,
}

struct Candidate {
    chart: U2Chart,
    nu: f64,
}

impl TpsSearch {
    pub fn new(config: SearchConfig) -> Result<Self> {
        config.validate()?;
        let [nt, np, np1, np2] = config.grid;
        let thetas = linspace(0.0, FRAC_PI_2, nt);
        let phases = |n: usize| (0..n).map(move |i| i as f64 * TAU / n as f64);
        let mut grid = Vec::with_capacity(config.grid_size());
        for &t in &thetas {
            for p in phases(np) {
                for p1 in phases(np1) {
                    for p2 in phases(np2) {
                        let chart = U2Chart::new(t, p, p1, p2);
                        grid.push((chart, *SymplecticMatrix::passive(&chart).matrix()));
                    }
                }
            }
        }
        Ok(Self { config, grid })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    /// `E+` (`Sense::Max`) or `E-` (`Sense::Min`) with the chart attaining it.
    ///
    /// Fails with `BudgetExhausted` (carrying the best result) when a
    /// refinement did not converge within the evaluation budget.
    pub fn extremal(&self, v: &CovarianceMatrix, sense: Sense) -> Result<ExtremalResult> {
        let res = self.extremal_best_effort(v, sense)?;
        if res.converged {
            Ok(res)
        } else {
            Err(Error::BudgetExhausted(Box::new(res)))
        }
    }

    /// Like [`TpsSearch::extremal`] but returns unconverged results with
    /// `converged = false` instead of failing.
    pub fn extremal_best_effort(
        &self,
        v: &CovarianceMatrix,
        sense: Sense,
    ) -> Result<ExtremalResult> {
        require_physical(v)?;
        let vm = *v.matrix();
        // Minimized by the search: nu_minus for E+, -nu_minus for E-.
        let sign = match sense {
            Sense::Max => 1.0,
            Sense::Min => -1.0,
        };
        let nu_at = |s: &Matrix4<f64>| -> f64 {
            let w = s * vm * s.transpose();
            pt_spectrum_of(&(0.5 * (w + w.transpose()))).map_or(f64::NAN, |sp| sp.nu_minus)
        };
        let budget = self.config.budget;

        // Grid phase.
        let mut evaluations = 0usize;
        let mut scores: Vec<(usize, f64)> = Vec::with_capacity(self.grid.len());
        let mut separable_slice: Option<f64> = None;
        for (i, (chart, s)) in self.grid.iter().enumerate() {
            if evaluations >= budget {
                break;
            }
            if let Some(theta) = separable_slice {
                if chart.theta != theta {
                    break;
                }
            }
            let nu = nu_at(s);
            evaluations += 1;
            scores.push((i, sign * nu));
            if sense == Sense::Min && nu >= 0.5 && separable_slice.is_none() {
                // E- = 0 is attained; finish this theta slice for tie-breaking.
                separable_slice = Some(chart.theta);
            }
        }
        let grid_done = scores.len() == self.grid.len() || separable_slice.is_some();

        if separable_slice.is_some() {
            let best = scores
                .iter()
                .filter(|(_, score)| -score >= 0.5)
                .map(|&(i, score)| Candidate {
                    chart: self.grid[i].0.canonical(),
                    nu: -score,
                })
                .reduce(|a, b| pick(sense, a, b))
                .expect("a separable grid point was recorded");
            return Ok(self.finish(sense, best, evaluations, true));
        }

        let grid_best = scores
            .iter()
            .filter(|(_, s)| !s.is_nan())
            .map(|&(i, score)| Candidate {
                chart: self.grid[i].0.canonical(),
                nu: sign * score,
            })
            .reduce(|a, b| pick(sense, a, b));
        let Some(grid_best) = grid_best else {
            return Ok(self.finish(
                sense,
                Candidate {
                    chart: U2Chart::IDENTITY,
                    nu: f64::NAN,
                },
                evaluations,
                false,
            ));
        };
        if !grid_done {
            return Ok(self.finish(sense, grid_best, evaluations, false));
        }

        let (lo, hi) = scores
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, s)| {
                (lo.min(s), hi.max(s))
            });
        if hi - lo <= 1e-15 {
            // Constant objective, e.g. a thermal state a*I: nothing to refine.
            return Ok(self.finish(sense, grid_best, evaluations, true));
        }

        let mut starts: Vec<[f64; 4]> = {
            let mut ranked: Vec<(usize, f64)> = scores
                .iter()
                .copied()
                .filter(|(_, s)| !s.is_nan())
                .collect();
            ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            ranked
                .iter()
                .take(self.config.top_k)
                .map(|&(i, _)| self.grid[i].0.to_array())
                .collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        for _ in 0..self.config.random_starts {
            starts.push([
                rng.random_range(0.0..FRAC_PI_2),
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..TAU),
            ]);
        }

        let [nt, np, np1, np2] = self.config.grid;
        let initial_step = [
            FRAC_PI_2 / (nt - 1) as f64 / 2.0,
            TAU / np as f64 / 2.0,
            TAU / np1 as f64 / 2.0,
            TAU / np2 as f64 / 2.0,
        ];
        let per_start = budget.saturating_sub(evaluations) / starts.len();
        let target = match sense {
            Sense::Max => None,
            Sense::Min => Some(-0.5),
        };

        let mut best = grid_best;
        let mut converged = true;
        for x0 in starts {
            if per_start <= 5 {
                converged = false;
                break;
            }
            let opts = SimplexOptions {
                initial_step,
                step_tol: self.config.refine_tol,
                // A shrink step costs up to 4 evaluations past the cap.
                max_evals: per_start - 4,
                target,
            };
            let out = simplex::minimize(
                |x: &[f64; 4]| {
                    sign * nu_at(SymplecticMatrix::passive(&U2Chart::from_array(*x)).matrix())
                },
                x0,
                &opts,
            );
            evaluations += out.evaluations;
            let reached_target = target.is_some_and(|t| out.value <= t);
            converged &= out.size < self.config.converge_tol || reached_target;
            let chart = U2Chart::from_array(out.best).canonical();
            // Value at the canonical chart itself.
            let nu = nu_at(SymplecticMatrix::passive(&chart).matrix());
            evaluations += 1;
            best = pick(sense, best, Candidate { chart, nu });
            if sense == Sense::Min && best.nu >= 0.5 {
                break;
            }
        }
        Ok(self.finish(sense, best, evaluations, converged))
    }

    fn finish(
        &self,
        sense: Sense,
        best: Candidate,
        evaluations: usize,
        converged: bool,
    ) -> ExtremalResult {
        ExtremalResult {
            sense,
            value: if best.nu.is_nan() {
                f64::NAN
            } else {
                negativity_from_nu(best.nu)
            },
            chart: best.chart,
            evaluations,
            converged,
        }
    }

    /// Runs both extrema; absolutely separable iff `E+ <= tol`.
    pub fn classify(&self, v: &CovarianceMatrix, tol: f64) -> Result<Classification> {
        let c = self.classify_best_effort(v, tol)?;
        if c.converged {
            Ok(c)
        } else {
            let max = self.extremal_best_effort(v, Sense::Max)?;
            let res = if max.converged {
                self.extremal_best_effort(v, Sense::Min)?
            } else {
                max
            };
            Err(Error::BudgetExhausted(Box::new(res)))
        }
    }

    pub fn classify_best_effort(&self, v: &CovarianceMatrix, tol: f64) -> Result<Classification> {
        let max = self.extremal_best_effort(v, Sense::Max)?;
        let min = self.extremal_best_effort(v, Sense::Min)?;
        let at_min = SymplecticMatrix::passive(&min.chart).apply(v);
        Ok(Classification {
            verdict: if max.value <= tol {
                Verdict::AbsolutelySeparable
            } else {
                Verdict::RelativelyEntangled
            },
            e_plus: max.value,
            e_minus: min.value,
            max_chart: max.chart,
            min_chart: min.chart,
            separable_chart_found: is_separable(&at_min, SEPARABILITY_TOL)?,
            evaluations: max.evaluations + min.evaluations,
            converged: max.converged && min.converged,
        })
    }
}

/// Better of two candidates for `sense`; exact ties in `E_N` go to the
/// lexicographically smaller chart.
fn pick(sense: Sense, a: Candidate, b: Candidate) -> Candidate {
    let (ea, eb) = (negativity_from_nu(a.nu), negativity_from_nu(b.nu));
    let by_value = match sense {
        Sense::Max => eb.total_cmp(&ea),
        Sense::Min => ea.total_cmp(&eb),
    };
    let by_nu = match sense {
        Sense::Max => a.nu.total_cmp(&b.nu),
        Sense::Min => b.nu.total_cmp(&a.nu),
    };
    let order = if ea == eb && ea > 0.0 {
        by_nu
    } else {
        by_value
    };
    match order.then_with(|| a.chart.lex_cmp(&b.chart)) {
        Ordering::Greater => b,
        _ => a,
    }
}

/// `E+` or `E-` of `v` with a one-off search.
pub fn extremal(
    v: &CovarianceMatrix,
    sense: Sense,
    config: SearchConfig,
) -> Result<ExtremalResult> {
    TpsSearch::new(config)?.extremal(v, sense)
}

pub fn classify(v: &CovarianceMatrix, tol: f64, config: SearchConfig) -> Result<Classification> {
    TpsSearch::new(config)?.classify(v, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::pure_tms;
    use std::f64::consts::FRAC_PI_4;

    fn searcher() -> TpsSearch {
        TpsSearch::new(SearchConfig::default()).unwrap()
    }

    #[test]
    fn tms_theta_sweep() {
        let v = pure_tms(0.5).unwrap();
        let e0 = log_negativity(&v).unwrap().log_negativity;
        let pts = sweep(&v, &SweepSpec::theta(181)).unwrap();
        assert_eq!(pts.len(), 181);
        assert!(pts[90].1 <= 1e-9);
        assert!((pts[90].0 - FRAC_PI_4).abs() < 1e-15);
        assert!((pts[0].1 - e0).abs() < 1e-9);
        assert!((pts[180].1 - e0).abs() < 1e-9);
        for i in 0..181 {
            assert!((pts[i].1 - pts[180 - i].1).abs() < 1e-9);
        }
    }

    #[test]
    fn thermal_sweep_is_flat_zero() {
        let v = CovarianceMatrix::thermal(1.3);
        for axis in [
            SweepAxis::Theta,
            SweepAxis::Phi,
            SweepAxis::Phi1,
            SweepAxis::Phi2,
        ] {
            let spec = SweepSpec {
                axis,
                steps: 17,
                fixed: U2Chart::new(0.3, 0.2, 0.1, 0.0),
                range: (0.0, TAU),
            };
            assert!(sweep(&v, &spec).unwrap().iter().all(|&(_, e)| e == 0.0));
        }
    }

    #[test]
    fn sweep_rejects_bad_specs() {
        let v = CovarianceMatrix::vacuum();
        assert!(matches!(
            sweep(&v, &SweepSpec::theta(1)),
            Err(Error::InvalidParameter(_))
        ));
        let spec = SweepSpec {
            range: (1.0, 1.0),
            ..SweepSpec::theta(5)
        };
        assert!(matches!(sweep(&v, &spec), Err(Error::InvalidParameter(_))));
        let bad = StandardFormParams::new(1.0, 1.0, 0.95, -0.95).to_covariance();
        assert!(matches!(
            sweep(&bad, &SweepSpec::theta(5)),
            Err(Error::NotPhysical)
        ));
    }

    #[test]
    fn mixed_symmetric_state_has_a_plateau() {
        let v = StandardFormParams::symmetric(1.0, 0.6).to_covariance();
        let pts = sweep(&v, &SweepSpec::theta(181)).unwrap();
        let zeros: Vec<usize> = (0..pts.len()).filter(|&i| pts[i].1 <= 1e-12).collect();
        assert!(zeros.len() > 1);
        assert_eq!(zeros.last().unwrap() - zeros[0] + 1, zeros.len());
    }

    #[test]
    fn unit_squeeze_surface_row_is_the_sweep() {
        let p = StandardFormParams::symmetric((1.0f64).cosh() / 2.0, (1.0f64).sinh() / 2.0);
        let thetas = linspace(0.0, FRAC_PI_2, 31);
        let s = surface(&p, &[0.5, 1.0, 2.0], &thetas, [0.0; 3]).unwrap();
        let line = sweep(&p.to_covariance(), &SweepSpec::theta(31)).unwrap();
        for (j, &(_, e)) in line.iter().enumerate() {
            assert!((s.values[1][j] - e).abs() < 1e-12);
        }
        for row in &s.values {
            assert!(row.iter().any(|&e| e <= 1e-7));
        }
        assert!(surface(&p, &[0.0], &thetas, [0.0; 3]).is_err());
    }

    #[test]
    fn grid_contains_the_identity() {
        let s = searcher();
        assert_eq!(s.grid.len(), 9 * 8 * 8 * 8);
        assert!(s.grid.iter().any(|(c, _)| *c == U2Chart::IDENTITY));
    }

    #[test]
    fn pure_state_extrema() {
        let s = searcher();
        for r in [0.1, 0.5, 1.0] {
            let v = pure_tms(r).unwrap();
            let e0 = log_negativity(&v).unwrap().log_negativity;
            let max = s.extremal(&v, Sense::Max).unwrap();
            assert!(max.converged);
            assert!(
                (max.value - e0).abs() < 1e-7,
                "r={r}: {} vs {e0}",
                max.value
            );
            let min = s.extremal(&v, Sense::Min).unwrap();
            assert!(min.value <= 1e-7);
            let at = log_negativity(&SymplecticMatrix::passive(&min.chart).apply(&v)).unwrap();
            assert!((at.log_negativity - min.value).abs() < 1e-12);
        }
    }

    #[test]
    fn thermal_search_stops_after_grid() {
        let s = searcher();
        let v = CovarianceMatrix::thermal(0.9);
        let max = s.extremal(&v, Sense::Max).unwrap();
        assert_eq!(max.value, 0.0);
        assert!(max.converged);
        assert_eq!(max.evaluations, s.config.grid_size());
        assert_eq!(max.chart, U2Chart::SWAP);
    }

    #[test]
    fn classification_examples() {
        let s = searcher();
        let c = s
            .classify(&CovarianceMatrix::vacuum(), ABS_SEPARABILITY_TOL)
            .unwrap();
        assert_eq!(c.verdict, Verdict::AbsolutelySeparable);
        assert!(c.separable_chart_found);
        let c = s
            .classify(&pure_tms(0.5).unwrap(), ABS_SEPARABILITY_TOL)
            .unwrap();
        assert_eq!(c.verdict, Verdict::RelativelyEntangled);
        assert!(c.e_minus <= 1e-7);
        assert!(c.e_minus <= c.e_plus);
        assert!(c.separable_chart_found);
    }

    #[test]
    fn extrema_are_swap_invariant() {
        let s = searcher();
        let v = StandardFormParams::new(1.2, 0.8, 0.5, -0.3).to_covariance();
        let w = SymplecticMatrix::passive(&U2Chart::SWAP).apply(&v);
        for sense in [Sense::Max, Sense::Min] {
            let a = s.extremal(&v, sense).unwrap().value;
            let b = s.extremal(&w, sense).unwrap().value;
            assert!((a - b).abs() < 1e-6, "{sense:?}: {a} vs {b}");
        }
    }

    #[test]
    fn max_is_at_least_identity_value() {
        let s = searcher();
        let v = StandardFormParams::new(1.0, 1.3, 0.6, -0.4).to_covariance();
        let e0 = log_negativity(&v).unwrap().log_negativity;
        assert!(s.extremal(&v, Sense::Max).unwrap().value >= e0 - 1e-12);
    }

    #[test]
    fn small_budget_reports_best_so_far() {
        let config = SearchConfig {
            budget: 100,
            ..SearchConfig::default()
        };
        let v = pure_tms(0.3).unwrap();
        match extremal(&v, Sense::Max, config) {
            Err(Error::BudgetExhausted(best)) => {
                assert!(!best.converged);
                assert_eq!(best.evaluations, 100);
                assert!(best.value > 0.0);
            }
            other => panic!("expected BudgetExhausted, got {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        assert!(TpsSearch::new(SearchConfig {
            grid: [1, 8, 8, 8],
            ..SearchConfig::default()
        })
        .is_err());
        assert!(TpsSearch::new(SearchConfig {
            top_k: 0,
            ..SearchConfig::default()
        })
        .is_err());
        assert!(TpsSearch::new(SearchConfig {
            top_k: 0,
            random_starts: 2,
            ..SearchConfig::default()
        })
        .is_ok());
    }

    #[test]
    fn random_starts_are_seeded() {
        let config = SearchConfig {
            random_starts: 3,
            seed: 11,
            ..SearchConfig::default()
        };
        let v = StandardFormParams::new(1.1, 0.9, 0.4, -0.35).to_covariance();
        let a = extremal(&v, Sense::Max, config).unwrap();
        let b = extremal(&v, Sense::Max, config).unwrap();
        assert_eq!(a, b);
    }
}
