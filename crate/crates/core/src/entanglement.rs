//! Partial-transpose spectrum, logarithmic negativity and the PPT
//! separability test.

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::symplectic::{
    spectrum_from_invariants, CovarianceMatrix, Invariants, SymplecticSpectrum,
};

/// Default tolerance on `1/2 - nu_minus` of the partial transpose.
pub const SEPARABILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegativityResult {
    /// In bits.
    pub log_negativity: f64,
    pub pt_spectrum: SymplecticSpectrum,
}

/// Partial transposition of mode A: `p_A -> -p_A`.
pub fn partial_transpose(v: &CovarianceMatrix) -> Matrix4<f64> {
    let flip = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 1.0, 1.0));
    flip * v.matrix() * flip
}

/// Symplectic eigenvalues of the partially transposed state, from
/// `nu^4 - (det A + det B - 2 det C) nu^2 + det V = 0`.
pub fn pt_symplectic_spectrum(v: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    pt_spectrum_of(v.matrix())
}

pub(crate) fn pt_spectrum_of(m: &Matrix4<f64>) -> Result<SymplecticSpectrum> {
    let inv = Invariants::of(m);
    spectrum_from_invariants(inv.pt_seralian(), inv.det_v)
}

/// `E_N = max(0, -log2(2 nu_minus))`, the only nonzero term of
/// `(1/2) sum_i max(0, -log2(2 |lambda_i|))` over the four eigenvalues
/// `+-i nu_plus, +-i nu_minus` of a physical state.
pub fn log_negativity(v: &CovarianceMatrix) -> Result<NegativityResult> {
    let s = pt_symplectic_spectrum(v)?;
    Ok(NegativityResult {
        log_negativity: negativity_from_nu(s.nu_plus) + negativity_from_nu(s.nu_minus),
        pt_spectrum: s,
    })
}

pub(crate) fn negativity_from_nu(nu: f64) -> f64 {
    (-(2.0 * nu).log2()).max(0.0)
}

/// PPT criterion: `nu_minus` of the partial transpose is at least `1/2 - tol`.
pub fn is_separable(v: &CovarianceMatrix, tol: f64) -> Result<bool> {
    Ok(pt_symplectic_spectrum(v)?.nu_minus >= 0.5 - tol)
}
