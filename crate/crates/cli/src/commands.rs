use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write as _;
use std::path::Path;

use gauss_tps::{
    census as run_census, linspace, log_negativity, pt_symplectic_spectrum, pure_tms,
    standard_form, CensusConfig, CensusReport, Classification, CovarianceMatrix, SampleMode,
    SampleRanges, SearchConfig, StandardFormParams, SweepAxis, SweepSpec, SymplecticSpectrum,
    TpsSearch, U2Chart, Verdict,
};
use serde::Serialize;

use crate::files::{emit, read_matrix, to_json, Csv, MatrixFile};
use crate::{CliError, RunConfig};

fn pair(values: &[f64], flag: &str) -> Result<(f64, f64), CliError> {
    match values {
        [lo, hi] => Ok((*lo, *hi)),
        _ => Err(CliError::Usage(format!(
            "{flag} needs two comma-separated values"
        ))),
    }
}

fn check_physical(v: &CovarianceMatrix, tol: f64) -> Result<(), CliError> {
    if v.is_physical(tol) {
        Ok(())
    } else {
        Err(CliError::NotPhysical(
            "state violates the uncertainty relation".into(),
        ))
    }
}

pub fn tms(run: &RunConfig, r: f64, label: Option<String>) -> Result<(), CliError> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(CliError::Usage(format!(
            "squeeze parameter must be >= 0, got {r}"
        )));
    }
    let v = pure_tms(r)?;
    let label = label.or_else(|| Some(format!("two-mode squeezed vacuum r={r}")));
    emit(
        run.out.as_deref(),
        &to_json(&MatrixFile::from_covariance(&v, label)),
    )
}

#[derive(Serialize)]
struct AnalyzeReport {
    label: Option<String>,
    symplectic_spectrum: SymplecticSpectrum,
    pt_spectrum: SymplecticSpectrum,
    log_negativity: f64,
    pure: bool,
    standard_form: StandardFormParams,
    e_plus: f64,
    e_minus: f64,
    max_chart: U2Chart,
    min_chart: U2Chart,
    verdict: Verdict,
    separable_chart_found: bool,
    evaluations: usize,
    config: AnalyzeConfig,
}

#[derive(Serialize)]
struct AnalyzeConfig {
    tol: f64,
    abs_tol: f64,
    search: SearchConfig,
}

pub fn analyze(run: &RunConfig, input: &Path, json: bool, abs_tol: f64) -> Result<(), CliError> {
    let search = run.search()?;
    let (v, label) = read_matrix(input)?;
    check_physical(&v, run.tol)?;
    let spectrum = v.symplectic_spectrum()?;
    let neg = log_negativity(&v)?;
    let (params, _) = standard_form(&v)?;
    let c: Classification = TpsSearch::new(search)?.classify(&v, abs_tol)?;
    let report = AnalyzeReport {
        label,
        symplectic_spectrum: spectrum,
        pt_spectrum: pt_symplectic_spectrum(&v)?,
        log_negativity: neg.log_negativity,
        pure: v.is_pure(gauss_tps::PURITY_TOL),
        standard_form: params,
        e_plus: c.e_plus,
        e_minus: c.e_minus,
        max_chart: c.max_chart,
        min_chart: c.min_chart,
        verdict: c.verdict,
        separable_chart_found: c.separable_chart_found,
        evaluations: c.evaluations,
        config: AnalyzeConfig {
            tol: run.tol,
            abs_tol,
            search,
        },
    };
    if let Some(path) = run.out.as_deref() {
        emit(Some(path), &to_json(&report))?;
    }
    if json {
        emit(None, &to_json(&report))
    } else {
        emit(None, text_report(&report).as_bytes())
    }
}

fn chart_str(c: &U2Chart) -> String {
    format!(
        "theta={:.9} phi={:.9} phi1={:.9} phi2={:.9}",
        c.theta, c.phi, c.phi1, c.phi2
    )
}

fn text_report(r: &AnalyzeReport) -> String {
    let mut s = String::new();
    if let Some(label) = &r.label {
        let _ = writeln!(s, "state            {label}");
    }
    let sf = &r.standard_form;
    let _ = writeln!(
        s,
        "spectrum         nu+={:.12} nu-={:.12}",
        r.symplectic_spectrum.nu_plus, r.symplectic_spectrum.nu_minus
    );
    let _ = writeln!(
        s,
        "pt spectrum      nu+={:.12} nu-={:.12}",
        r.pt_spectrum.nu_plus, r.pt_spectrum.nu_minus
    );
    let _ = writeln!(s, "log-negativity   {:.12} bits", r.log_negativity);
    let _ = writeln!(s, "pure             {}", r.pure);
    let _ = writeln!(
        s,
        "standard form    a={:.12} b={:.12} c+={:.12} c-={:.12}",
        sf.a, sf.b, sf.c_plus, sf.c_minus
    );
    let _ = writeln!(
        s,
        "E+               {:.12} bits at {}",
        r.e_plus,
        chart_str(&r.max_chart)
    );
    let _ = writeln!(
        s,
        "E-               {:.12} bits at {}",
        r.e_minus,
        chart_str(&r.min_chart)
    );
    let _ = writeln!(s, "verdict          {}", r.verdict);
    s
}

pub fn sweep(
    run: &RunConfig,
    input: &Path,
    axis: SweepAxis,
    steps: usize,
    fixed: &[f64],
    range: Option<&[f64]>,
) -> Result<(), CliError> {
    let fixed: [f64; 4] = fixed
        .try_into()
        .map_err(|_| CliError::Usage("--fixed needs theta,phi,phi1,phi2".into()))?;
    let range = match range {
        Some(r) => pair(r, "--range")?,
        None if axis == SweepAxis::Theta => (0.0, FRAC_PI_2),
        None => (0.0, TAU),
    };
    let spec = SweepSpec {
        axis,
        steps,
        fixed: U2Chart::from_array(fixed),
        range,
    };
    spec.validate()?;
    let (v, _) = read_matrix(input)?;
    check_physical(&v, run.tol)?;
    let points = gauss_tps::sweep(&v, &spec)?;
    let meta = format!(
        "sweep input={} axis={axis} steps={steps} fixed={},{},{},{} range={},{}",
        input.display(),
        fixed[0],
        fixed[1],
        fixed[2],
        fixed[3],
        range.0,
        range.1
    );
    let mut csv = Csv::new(&meta, "angle,log_negativity");
    for (angle, e) in points {
        csv.row(&[angle, e]);
    }
    emit(run.out.as_deref(), &csv.into_bytes())
}

pub fn surface(
    run: &RunConfig,
    r: f64,
    eta: &[f64],
    eta_steps: usize,
    theta_steps: usize,
    phases: &[f64],
) -> Result<(), CliError> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(CliError::Usage(format!(
            "squeeze parameter must be >= 0, got {r}"
        )));
    }
    let (lo, hi) = pair(eta, "--eta")?;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(CliError::Usage(format!(
            "eta range must satisfy 0 < lo <= hi, got {lo},{hi}"
        )));
    }
    if eta_steps < 1 || theta_steps < 2 {
        return Err(CliError::Usage(
            "need --eta-steps >= 1 and --theta-steps >= 2".into(),
        ));
    }
    let phases: [f64; 3] = phases
        .try_into()
        .map_err(|_| CliError::Usage("--phases needs phi,phi1,phi2".into()))?;
    let params = StandardFormParams::symmetric((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
    let etas = linspace(lo, hi, eta_steps);
    let thetas = linspace(0.0, FRAC_PI_2, theta_steps);
    let s = gauss_tps::surface(&params, &etas, &thetas, phases)?;
    let meta = format!(
        "surface r={r} eta={lo},{hi} eta_steps={eta_steps} theta_steps={theta_steps} phases={},{},{}",
        phases[0], phases[1], phases[2]
    );
    let mut csv = Csv::new(&meta, "eta,theta,log_negativity");
    for (i, &eta) in s.etas.iter().enumerate() {
        for (j, &theta) in s.thetas.iter().enumerate() {
            csv.row(&[eta, theta, s.values[i][j]]);
        }
    }
    emit(run.out.as_deref(), &csv.into_bytes())
}

#[derive(Serialize)]
struct CensusOutput {
    #[serde(flatten)]
    report: CensusReport,
    config: CensusConfig,
}

pub fn census(
    run: &RunConfig,
    mode: SampleMode,
    n: usize,
    diag: &[f64],
    offdiag: &[f64],
    abs_tol: f64,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let (diag_lo, diag_hi) = pair(diag, "--diag")?;
    let (offdiag_lo, offdiag_hi) = pair(offdiag, "--offdiag")?;
    let ranges = SampleRanges {
        diag_lo,
        diag_hi,
        offdiag_lo,
        offdiag_hi,
    };
    ranges.validate()?;
    let config = CensusConfig {
        mode,
        n_physical: n,
        ranges,
        seed: run.seed,
        tol: abs_tol,
        search: run.search()?,
        ..CensusConfig::default()
    };
    let report = run_census(&config)?;
    emit(
        run.out.as_deref(),
        &to_json(&CensusOutput { report, config }),
    )
}
