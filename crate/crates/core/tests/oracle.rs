//! Closed-form spectra against dense eigensolvers.

use gauss_tps::{
    draw_rng, partial_transpose, pt_symplectic_spectrum, CovarianceMatrix, SampleMode,
    SampleRanges, SymplecticForm, PHYSICAL_TOL,
};
use nalgebra::{Matrix4, SMatrix};

/// Moduli of the eigenvalues of `sigma^-1 m`, ascending; each appears twice.
fn dense_moduli(m: &Matrix4<f64>) -> [f64; 4] {
    let sigma_inv = SymplecticForm::matrix().try_inverse().unwrap();
    let ev = (sigma_inv * m).complex_eigenvalues();
    let mut out = [0.0; 4];
    for (o, z) in out.iter_mut().zip(ev.iter()) {
        *o = z.norm();
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Smallest eigenvalue of the Hermitian `V + (i/2) sigma`, via its real 8x8 embedding.
fn heisenberg_min_eigenvalue(v: &Matrix4<f64>) -> f64 {
    let re = *v;
    let im = SymplecticForm::matrix() * 0.5;
    let mut big = SMatrix::<f64, 8, 8>::zeros();
    big.fixed_view_mut::<4, 4>(0, 0).copy_from(&re);
    big.fixed_view_mut::<4, 4>(4, 4).copy_from(&re);
    big.fixed_view_mut::<4, 4>(0, 4).copy_from(&(-im));
    big.fixed_view_mut::<4, 4>(4, 0).copy_from(&im);
    big.symmetric_eigen().eigenvalues.min()
}

fn physical_states(n: usize) -> Vec<CovarianceMatrix> {
    let ranges = SampleRanges::default();
    let modes = [
        SampleMode::Standard,
        SampleMode::Generic,
        SampleMode::GenericViaT,
    ];
    let mut out = Vec::with_capacity(n);
    let mut i = 0u64;
    while out.len() < n {
        let mode = modes[(i % 3) as usize];
        if let Some(v) = mode.draw(&mut draw_rng(99, i), &ranges).accepted() {
            out.push(v);
        }
        i += 1;
    }
    out
}

#[test]
fn symplectic_spectrum_matches_dense_eigensolver() {
    for v in physical_states(1000) {
        let s = v.symplectic_spectrum().unwrap();
        let d = dense_moduli(v.matrix());
        assert!(
            (s.nu_minus - d[0]).abs() < 1e-9 && (s.nu_minus - d[1]).abs() < 1e-9,
            "{s:?} vs {d:?}"
        );
        assert!(
            (s.nu_plus - d[2]).abs() < 1e-9 && (s.nu_plus - d[3]).abs() < 1e-9,
            "{s:?} vs {d:?}"
        );
    }
}

#[test]
fn pt_spectrum_matches_dense_eigensolver() {
    for v in physical_states(1000) {
        let s = pt_symplectic_spectrum(&v).unwrap();
        let d = dense_moduli(&partial_transpose(&v));
        assert!((s.nu_minus - d[0]).abs() < 1e-9, "{s:?} vs {d:?}");
        assert!((s.nu_plus - d[3]).abs() < 1e-9, "{s:?} vs {d:?}");
    }
}

#[test]
fn physicality_matches_heisenberg_test() {
    let ranges = SampleRanges::default();
    let mut disagreements = 0;
    for i in 0..3000u64 {
        let mode = if i % 2 == 0 {
            SampleMode::Standard
        } else {
            SampleMode::Generic
        };
        let m = match mode.draw(&mut draw_rng(5, i), &ranges) {
            gauss_tps::Sample::Accepted(v) => *v.matrix(),
            gauss_tps::Sample::Rejected(m) => m,
        };
        let v = CovarianceMatrix::new(m, 0.0).unwrap();
        let lam = heisenberg_min_eigenvalue(&m);
        let pd = m.cholesky().is_some();
        // Skip draws within rounding of the boundary.
        if lam.abs() < 1e-8 {
            continue;
        }
        if v.is_physical(PHYSICAL_TOL) != (pd && lam >= -PHYSICAL_TOL) {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
}
