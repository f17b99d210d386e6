//! Covariance matrices of two-mode Gaussian states and their symplectic
//! invariants.
//!
//! Storage ordering is always `(q_A, p_A, q_B, p_B)`. Units are `hbar = 1`:
//! the vacuum is `I/2`, the uncertainty relation reads `V >= (i/2) sigma`, and
//! every symplectic eigenvalue of a physical state is at least `1/2`.
//!
//! The symplectic spectrum is computed in closed form from the local
//! invariants `det A`, `det B`, `det C` and `det V`. Those determinants are
//! accumulated in double-double arithmetic: near a degenerate spectrum the
//! closed form takes the square root of a quantity that cancels down to
//! rounding level, and plain `f64` evaluation would leave errors of order
//! `sqrt(eps) ~ 1e-8` in the smaller eigenvalue.

use std::f64::consts::PI;

use nalgebra::{Cholesky, Matrix2, Matrix4, Vector4};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Default absolute tolerance on `nu_minus - 1/2` for the physicality test.
pub const PHYSICAL_TOL: f64 = 1e-9;
/// Default absolute tolerance on `det V - 1/16` for the purity test.
pub const PURITY_TOL: f64 = 1e-8;
/// Relative slack on the discriminant before a spectrum is declared complex.
pub const SPECTRUM_TOL: f64 = 1e-12;

/// The two-mode symplectic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm;

impl SymplecticForm {
    #[rustfmt::skip]
    pub fn matrix() -> Matrix4<f64> {
        Matrix4::new(
             0.0, 1.0, 0.0, 0.0,
            -1.0, 0.0, 0.0, 0.0,
             0.0, 0.0, 0.0, 1.0,
             0.0, 0.0,-1.0, 0.0,
        )
    }
}

/// Symplectic eigenvalues, `nu_plus >= nu_minus >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub nu_plus: f64,
    pub nu_minus: f64,
}

/// Parameters of a covariance matrix in standard form:
/// `A = a I`, `B = b I`, `C = diag(c_plus, c_minus)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardFormParams {
    pub a: f64,
    pub b: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

impl StandardFormParams {
    pub fn new(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Self {
        Self {
            a,
            b,
            c_plus,
            c_minus,
        }
    }

    /// Symmetric states `a = b` with `c_plus = -c_minus = c`.
    pub fn symmetric(a: f64, c: f64) -> Self {
        Self::new(a, a, c, -c)
    }

    #[rustfmt::skip]
    pub fn to_covariance(&self) -> CovarianceMatrix {
        let Self { a, b, c_plus: cp, c_minus: cm } = *self;
        CovarianceMatrix::from_symmetric(Matrix4::new(
            a,   0.0, cp,  0.0,
            0.0, a,   0.0, cm,
            cp,  0.0, b,   0.0,
            0.0, cm,  0.0, b,
        ))
    }
}

/// The 2x2 blocks of `V = [[A, C], [C^T, B]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blocks {
    pub a: Matrix2<f64>,
    pub b: Matrix2<f64>,
    pub c: Matrix2<f64>,
}

impl Blocks {
    pub fn assemble(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.c);
        m.fixed_view_mut::<2, 2>(2, 0)
            .copy_from(&self.c.transpose());
        m
    }
}

/// Covariance matrix of a zero-mean two-mode Gaussian state.
///
/// Always exactly symmetric. Physicality is not enforced at construction;
/// use [`CovarianceMatrix::is_physical`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    m: Matrix4<f64>,
}

impl CovarianceMatrix {
    /// Validates and symmetrizes a raw matrix.
    ///
    /// Fails on non-finite entries or when `max |raw_ij - raw_ji| > tol`;
    /// otherwise returns `(raw + raw^T) / 2`.
    pub fn new(raw: Matrix4<f64>, tol: f64) -> Result<Self> {
        for row in 0..4 {
            for col in 0..4 {
                if !raw[(row, col)].is_finite() {
                    return Err(Error::NonFiniteEntry { row, col });
                }
            }
        }
        let asymmetry = (raw - raw.transpose()).amax();
        if asymmetry > tol {
            return Err(Error::AsymmetricInput { asymmetry, tol });
        }
        Ok(Self::from_symmetric(raw))
    }

    pub fn from_rows(rows: [[f64; 4]; 4], tol: f64) -> Result<Self> {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]), tol)
    }

    pub(crate) fn from_symmetric(m: Matrix4<f64>) -> Self {
        Self {
            m: (m + m.transpose()) * 0.5,
        }
    }

    pub fn vacuum() -> Self {
        Self::thermal(0.5)
    }

    /// `a I_4`: a product of two identical thermal states.
    pub fn thermal(a: f64) -> Self {
        Self {
            m: Matrix4::identity() * a,
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        let mut rows = [[0.0; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.m[(i, j)];
            }
        }
        rows
    }

    pub fn blocks(&self) -> Blocks {
        Blocks {
            a: self.m.fixed_view::<2, 2>(0, 0).into_owned(),
            b: self.m.fixed_view::<2, 2>(2, 2).into_owned(),
            c: self.m.fixed_view::<2, 2>(0, 2).into_owned(),
        }
    }

    pub fn det(&self) -> f64 {
        Invariants::of(&self.m).det_v.hi()
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    pub fn is_positive_definite(&self) -> bool {
        Cholesky::new(self.m).is_some()
    }

    /// Symplectic eigenvalues: moduli of the eigenvalues of `sigma^-1 V`,
    /// `nu^2 = [D +- sqrt(D^2 - 4 det V)] / 2` with
    /// `D = det A + det B + 2 det C`.
    pub fn symplectic_spectrum(&self) -> Result<SymplecticSpectrum> {
        let inv = Invariants::of(&self.m);
        spectrum_from_invariants(inv.seralian(), inv.det_v)
    }

    /// `V > 0` and `nu_minus >= 1/2 - tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        if !self.is_positive_definite() {
            return false;
        }
        match self.symplectic_spectrum() {
            Ok(s) => s.nu_minus >= 0.5 - tol,
            Err(_) => false,
        }
    }

    /// Physical with `|det V - 1/16| <= tol`, i.e. both symplectic
    /// eigenvalues equal to 1/2.
    pub fn is_pure(&self, tol: f64) -> bool {
        self.is_physical(PHYSICAL_TOL) && (self.det() - 1.0 / 16.0).abs() <= tol
    }

    /// Zero-mean Wigner function `(4 pi^2 sqrt(det V))^-1 exp(-x^T V^-1 x / 2)`.
    pub fn wigner_density(&self, x: &Vector4<f64>) -> Result<f64> {
        let det = self.det();
        if det <= 0.0 {
            return Err(Error::SingularCovariance { det });
        }
        let inv = self
            .m
            .try_inverse()
            .ok_or(Error::SingularCovariance { det })?;
        let quad = x.dot(&(inv * x));
        Ok((-0.5 * quad).exp() / (4.0 * PI * PI * det.sqrt()))
    }
}

/// Local symplectic invariants, each accumulated in double-double precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Invariants {
    pub det_a: TwoFloat,
    pub det_b: TwoFloat,
    pub det_c: TwoFloat,
    pub det_v: TwoFloat,
}

impl Invariants {
    pub fn of(m: &Matrix4<f64>) -> Self {
        // 2x2 minors of rows {0,1} and of rows {2,3}, Laplace expansion.
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            TwoFloat::new_mul(m[(r0, c0)], m[(r1, c1)])
                - TwoFloat::new_mul(m[(r0, c1)], m[(r1, c0)])
        };
        let top = |c0, c1| minor(0, 1, c0, c1);
        let bot = |c0, c1| minor(2, 3, c0, c1);
        let s23 = top(2, 3);
        let c01 = bot(0, 1);
        let det_v = top(0, 1) * bot(2, 3) - top(0, 2) * bot(1, 3)
            + top(0, 3) * bot(1, 2)
            + top(1, 2) * bot(0, 3)
            - top(1, 3) * bot(0, 2)
            + s23 * c01;
        Self {
            det_a: top(0, 1),
            det_b: bot(2, 3),
            det_c: s23,
            det_v,
        }
    }

    /// `det A + det B + 2 det C`.
    pub fn seralian(&self) -> TwoFloat {
        self.det_a + self.det_b + self.det_c * 2.0
    }

    /// The same invariant for the partial transpose: `det C` flips sign.
    pub fn pt_seralian(&self) -> TwoFloat {
        self.det_a + self.det_b - self.det_c * 2.0
    }
}

/// Roots of `nu^4 - delta nu^2 + det_v = 0`, returned as moduli.
pub(crate) fn spectrum_from_invariants(
    delta: TwoFloat,
    det_v: TwoFloat,
) -> Result<SymplecticSpectrum> {
    let disc = delta * delta - det_v * 4.0;
    let scale = 1.0 + (delta * delta).hi().abs();
    if disc.hi() < -SPECTRUM_TOL * scale {
        return Err(Error::ComplexSpectrum {
            discriminant: disc.hi(),
        });
    }
    let root = if disc.hi() > 0.0 {
        disc.sqrt()
    } else {
        TwoFloat::from(0.0)
    };
    let mu_plus = ((delta + root) * 0.5).hi();
    let mu_minus = ((delta - root) * 0.5).hi();
    let (x, y) = (mu_plus.abs().sqrt(), mu_minus.abs().sqrt());
    Ok(SymplecticSpectrum {
        nu_plus: x.max(y),
        nu_minus: x.min(y),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tms(r: f64) -> CovarianceMatrix {
        StandardFormParams::symmetric((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0)
            .to_covariance()
    }

    #[test]
    fn symplectic_form_is_antisymmetric_and_squares_to_minus_identity() {
        let s = SymplecticForm::matrix();
        assert_eq!(s.transpose(), -s);
        assert_eq!(s * s, -Matrix4::identity());
    }

    #[test]
    fn make_covariance_accepts_vacuum() {
        let v = CovarianceMatrix::new(Matrix4::identity() * 0.5, 1e-12).unwrap();
        assert_eq!(v, CovarianceMatrix::vacuum());
    }

    #[test]
    fn make_covariance_symmetrizes_small_asymmetry() {
        let mut raw = Matrix4::identity();
        raw[(0, 1)] = 0.1;
        raw[(1, 0)] = 0.100_000_000_1;
        let v = CovarianceMatrix::new(raw, 1e-6).unwrap();
        let m = v.matrix();
        assert_eq!(m[(0, 1)], m[(1, 0)]);
        assert_relative_eq!(m[(0, 1)], 0.100_000_000_05, epsilon = 1e-15);
    }

    #[test]
    fn make_covariance_rejects_asymmetric() {
        let mut raw = Matrix4::identity();
        raw[(0, 1)] = 0.5;
        raw[(1, 0)] = -0.5;
        match CovarianceMatrix::new(raw, 1e-6) {
            Err(Error::AsymmetricInput { asymmetry, .. }) => assert_eq!(asymmetry, 1.0),
            other => panic!("expected AsymmetricInput, got {other:?}"),
        }
    }

    #[test]
    fn make_covariance_rejects_non_finite() {
        let mut raw = Matrix4::identity();
        raw[(2, 3)] = f64::NAN;
        assert!(matches!(
            CovarianceMatrix::new(raw, 1e-6),
            Err(Error::NonFiniteEntry { row: 2, col: 3 })
        ));
        raw[(2, 3)] = f64::INFINITY;
        assert!(CovarianceMatrix::new(raw, 1e-6).is_err());
    }

    #[test]
    fn blocks_of_vacuum_and_standard_form() {
        let b = CovarianceMatrix::vacuum().blocks();
        assert_eq!(b.a, Matrix2::identity() * 0.5);
        assert_eq!(b.b, Matrix2::identity() * 0.5);
        assert_eq!(b.c, Matrix2::zeros());

        let p = StandardFormParams::new(1.2, 0.9, 0.4, -0.3);
        let b = p.to_covariance().blocks();
        assert_eq!(b.a, Matrix2::identity() * 1.2);
        assert_eq!(b.b, Matrix2::identity() * 0.9);
        assert_eq!(b.c, Matrix2::new(0.4, 0.0, 0.0, -0.3));
    }

    #[test]
    fn blocks_reassemble_exactly() {
        let v = CovarianceMatrix::from_rows(
            [
                [1.1, 0.2, -0.3, 0.05],
                [0.2, 0.9, 0.1, 0.7],
                [-0.3, 0.1, 1.3, -0.2],
                [0.05, 0.7, -0.2, 0.8],
            ],
            0.0,
        )
        .unwrap();
        assert_eq!(v.blocks().assemble(), *v.matrix());
    }

    #[test]
    fn spectrum_of_vacuum() {
        let s = CovarianceMatrix::vacuum().symplectic_spectrum().unwrap();
        assert_eq!((s.nu_plus, s.nu_minus), (0.5, 0.5));
    }

    #[test]
    fn spectrum_of_correlated_thermal_pair() {
        // Delta = 2.18, sqrt(Delta^2 - 4 det V) = 1.2
        let s = StandardFormParams::new(1.0, 1.0, 0.3, 0.3)
            .to_covariance()
            .symplectic_spectrum()
            .unwrap();
        assert_relative_eq!(s.nu_plus, 1.3, epsilon = 1e-14);
        assert_relative_eq!(s.nu_minus, 0.7, epsilon = 1e-14);
    }

    #[test]
    fn spectrum_of_two_mode_squeezed_is_pure() {
        for r in [0.1, 0.5, 1.0, 2.0] {
            let s = tms(r).symplectic_spectrum().unwrap();
            assert_relative_eq!(s.nu_plus, 0.5, epsilon = 1e-12);
            assert_relative_eq!(s.nu_minus, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn complex_spectrum_is_an_error() {
        // D = 0, det V = 3/16: D^2 - 4 det V < 0.
        let v = CovarianceMatrix::from_rows(
            [
                [0.5, 0.0, -0.5, 0.0],
                [0.0, 0.5, -0.5, 0.0],
                [-0.5, -0.5, 0.0, -0.5],
                [0.0, 0.0, -0.5, -1.0],
            ],
            0.0,
        )
        .unwrap();
        assert!(matches!(
            v.symplectic_spectrum(),
            Err(Error::ComplexSpectrum { .. })
        ));
        assert!(!v.is_physical(PHYSICAL_TOL));
    }

    #[test]
    fn physicality_examples() {
        assert!(CovarianceMatrix::vacuum().is_physical(PHYSICAL_TOL));
        let bad = StandardFormParams::new(1.0, 1.0, 0.95, -0.95).to_covariance();
        assert!(!bad.is_physical(PHYSICAL_TOL));
        assert_relative_eq!(
            bad.symplectic_spectrum().unwrap().nu_minus,
            (1.0f64 - 0.9025).sqrt(),
            epsilon = 1e-12
        );
        let good = StandardFormParams::new(1.0, 1.0, 0.8, -0.5).to_covariance();
        assert!(good.is_physical(PHYSICAL_TOL));
        assert_relative_eq!(
            good.symplectic_spectrum().unwrap().nu_minus,
            0.3f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn non_positive_definite_is_not_physical() {
        assert!(!CovarianceMatrix::thermal(-0.5).is_physical(PHYSICAL_TOL));
        assert!(!CovarianceMatrix::thermal(0.0).is_physical(PHYSICAL_TOL));
    }

    #[test]
    fn purity_examples() {
        assert!(CovarianceMatrix::vacuum().is_pure(PURITY_TOL));
        let v = tms(0.5);
        assert_relative_eq!(v.matrix()[(0, 0)], 1f64.cosh() / 2.0, epsilon = 1e-15);
        assert_relative_eq!(v.det(), 1.0 / 16.0, epsilon = 1e-14);
        assert!(v.is_pure(PURITY_TOL));
        assert!(!CovarianceMatrix::thermal(1.0).is_pure(PURITY_TOL));
    }

    #[test]
    fn wigner_density_of_vacuum() {
        let v = CovarianceMatrix::vacuum();
        let w0 = v.wigner_density(&Vector4::zeros()).unwrap();
        assert_relative_eq!(w0, 1.0 / (PI * PI), epsilon = 1e-15);
        let w1 = v.wigner_density(&Vector4::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_relative_eq!(w1, (-1.0f64).exp() / (PI * PI), epsilon = 1e-15);
    }

    #[test]
    fn wigner_density_rejects_singular() {
        let v = CovarianceMatrix::thermal(0.0);
        assert!(matches!(
            v.wigner_density(&Vector4::zeros()),
            Err(Error::SingularCovariance { .. })
        ));
    }

    #[test]
    fn wigner_density_integrates_to_one() {
        // Midpoint rule on a box of +-6 standard deviations per axis.
        let v = StandardFormParams::new(0.8, 0.6, 0.3, -0.2).to_covariance();
        assert!(v.is_physical(PHYSICAL_TOL));
        let n = 28usize;
        let half: Vec<f64> = (0..4).map(|i| 6.0 * v.matrix()[(i, i)].sqrt()).collect();
        let h: Vec<f64> = half.iter().map(|w| 2.0 * w / n as f64).collect();
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let idx = [i, j, k, l];
                        let x = Vector4::from_fn(|d, _| -half[d] + (idx[d] as f64 + 0.5) * h[d]);
                        total += v.wigner_density(&x).unwrap();
                    }
                }
            }
        }
        total *= h.iter().product::<f64>();
        assert!((total - 1.0).abs() < 1e-2, "integral = {total}");
    }

    #[test]
    fn product_of_symplectic_eigenvalues_is_sqrt_det() {
        let v = StandardFormParams::new(1.3, 0.7, 0.4, 0.1).to_covariance();
        let s = v.symplectic_spectrum().unwrap();
        assert_relative_eq!(s.nu_plus * s.nu_minus, v.det().sqrt(), max_relative = 1e-12);
    }
}
