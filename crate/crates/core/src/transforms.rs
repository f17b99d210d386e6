//! Number-conserving mode redefinitions, local symplectic operations, and the
//! reduction of a covariance matrix to standard form.
//!
//! A mode mixer `b_i = sum_j U_ij a_j` with `U = X + iY` acts on the grouped
//! quadratures `(q_A, q_B, p_A, p_B)` as `[[X, -Y], [Y, X]]`. It is conjugated
//! here by a fixed permutation into the canonical `(q_A, p_A, q_B, p_B)`
//! ordering used for storage.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::{Complex, Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{CovarianceMatrix, StandardFormParams, SymplecticForm, PHYSICAL_TOL};

/// Canonical index `i` holds grouped coordinate `GROUPED[i]`.
const GROUPED: [usize; 4] = [0, 2, 1, 3];

/// Four angles parametrizing a 2x2 unitary mode mixer:
///
/// ```text
/// U = [[ sin(theta) e^{i phi},      cos(theta) e^{i phi1}                    ],
///      [ cos(theta) e^{i phi2},     sin(theta) e^{i(-phi + phi1 + phi2 - pi)} ]]
/// ```
///
/// Canonical charts have `theta` in `[0, pi/2]` and the phases in `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct U2Chart {
    pub theta: f64,
    pub phi: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl U2Chart {
    /// `U = I`.
    pub const IDENTITY: U2Chart = U2Chart {
        theta: FRAC_PI_2,
        phi: 0.0,
        phi1: 0.0,
        phi2: PI,
    };
    /// `U = [[0, 1], [1, 0]]`: exchanges the two modes.
    pub const SWAP: U2Chart = U2Chart {
        theta: 0.0,
        phi: 0.0,
        phi1: 0.0,
        phi2: 0.0,
    };

    pub const fn new(theta: f64, phi: f64, phi1: f64, phi2: f64) -> Self {
        Self {
            theta,
            phi,
            phi1,
            phi2,
        }
    }

    pub fn from_array(x: [f64; 4]) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.theta, self.phi, self.phi1, self.phi2]
    }

    /// The unitary of this chart. Unitary for any finite angles.
    pub fn unitary(&self) -> Matrix2<Complex<f64>> {
        let (s, c) = self.theta.sin_cos();
        let e = |x: f64| Complex::from_polar(1.0, x);
        Matrix2::new(
            e(self.phi) * s,
            e(self.phi1) * c,
            e(self.phi2) * c,
            e(-self.phi + self.phi1 + self.phi2 - PI) * s,
        )
    }

    /// Canonical chart of a 2x2 unitary. Phases that the unitary does not
    /// determine (when `sin theta` or `cos theta` vanishes) are set so that
    /// `phi = 0` or `phi1 = 0`.
    pub fn from_unitary(u: &Matrix2<Complex<f64>>) -> Self {
        const EPS: f64 = 1e-12;
        let s = u[(0, 0)].norm();
        let c = u[(0, 1)].norm();
        let theta = s.atan2(c);
        let phi = if s > EPS { u[(0, 0)].arg() } else { 0.0 };
        let (phi1, phi2) = if c > EPS {
            (u[(0, 1)].arg(), u[(1, 0)].arg())
        } else {
            // det U = -e^{i(phi1 + phi2)}
            let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
            (0.0, (-det).arg())
        };
        Self::new(theta, wrap_angle(phi), wrap_angle(phi1), wrap_angle(phi2))
    }

    /// The same unitary expressed with angles inside the canonical ranges.
    pub fn canonical(&self) -> Self {
        Self::from_unitary(&self.unitary())
    }

    /// Lexicographic order on `(theta, phi, phi1, phi2)`.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

pub(crate) fn wrap_angle(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    /// Number conserving: symplectic and orthogonal.
    Passive,
    /// Block diagonal in the two modes.
    Local,
    General,
}

/// Single-mode squeeze factors, `diag(sqrt(eta), 1/sqrt(eta))` per mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSqueezeParams {
    pub eta_a: f64,
    pub eta_b: f64,
}

impl LocalSqueezeParams {
    pub fn new(eta_a: f64, eta_b: f64) -> Result<Self> {
        for eta in [eta_a, eta_b] {
            if !(eta > 0.0 && eta.is_finite()) {
                return Err(Error::NonPositiveSqueeze(eta));
            }
        }
        Ok(Self { eta_a, eta_b })
    }

    pub fn symmetric(eta: f64) -> Result<Self> {
        Self::new(eta, eta)
    }
}

/// Euler decomposition of one mode's `Sp(2, R)` element:
/// `R(rotate_out) diag(sqrt(squeeze), 1/sqrt(squeeze)) R(rotate_in)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeEuler {
    pub rotate_out: f64,
    pub squeeze: f64,
    pub rotate_in: f64,
}

impl ModeEuler {
    pub fn new(rotate_out: f64, squeeze: f64, rotate_in: f64) -> Self {
        Self {
            rotate_out,
            squeeze,
            rotate_in,
        }
    }

    pub fn rotation(angle: f64) -> Self {
        Self::new(angle, 1.0, 0.0)
    }

    fn matrix(&self) -> Result<Matrix2<f64>> {
        if !(self.squeeze > 0.0 && self.squeeze.is_finite()) {
            return Err(Error::NonPositiveSqueeze(self.squeeze));
        }
        let r = self.squeeze.sqrt();
        Ok(rotation(self.rotate_out)
            * Matrix2::new(r, 0.0, 0.0, 1.0 / r)
            * rotation(self.rotate_in))
    }
}

/// Phase-space rotation `[[cos, -sin], [sin, cos]]`.
pub fn rotation(angle: f64) -> Matrix2<f64> {
    let (s, c) = angle.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// A 4x4 real symplectic matrix in `(q_A, p_A, q_B, p_B)` ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticMatrix {
    m: Matrix4<f64>,
    kind: TransformKind,
}

impl SymplecticMatrix {
    pub fn identity() -> Self {
        Self {
            m: Matrix4::identity(),
            kind: TransformKind::Passive,
        }
    }

    /// The passive transformation `S_U` of a mode mixer.
    pub fn passive(chart: &U2Chart) -> Self {
        let u = chart.unitary();
        let x = u.map(|z| z.re);
        let y = u.map(|z| z.im);
        let mut grouped = Matrix4::zeros();
        grouped.fixed_view_mut::<2, 2>(0, 0).copy_from(&x);
        grouped.fixed_view_mut::<2, 2>(0, 2).copy_from(&(-y));
        grouped.fixed_view_mut::<2, 2>(2, 0).copy_from(&y);
        grouped.fixed_view_mut::<2, 2>(2, 2).copy_from(&x);
        let m = Matrix4::from_fn(|i, j| grouped[(GROUPED[i], GROUPED[j])]);
        Self {
            m,
            kind: TransformKind::Passive,
        }
    }

    /// `diag(sqrt(eta_a), 1/sqrt(eta_a), sqrt(eta_b), 1/sqrt(eta_b))`.
    pub fn local_squeeze(p: LocalSqueezeParams) -> Result<Self> {
        let p = LocalSqueezeParams::new(p.eta_a, p.eta_b)?;
        let (ra, rb) = (p.eta_a.sqrt(), p.eta_b.sqrt());
        Ok(Self {
            m: Matrix4::from_diagonal(&nalgebra::Vector4::new(ra, 1.0 / ra, rb, 1.0 / rb)),
            kind: TransformKind::Local,
        })
    }

    /// A general element of `Sp(2, R) + Sp(2, R)` from per-mode Euler angles.
    pub fn local_symplectic(mode_a: ModeEuler, mode_b: ModeEuler) -> Result<Self> {
        Ok(Self::from_mode_blocks(&mode_a.matrix()?, &mode_b.matrix()?))
    }

    pub(crate) fn from_mode_blocks(a: &Matrix2<f64>, b: &Matrix2<f64>) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
        Self {
            m,
            kind: TransformKind::Local,
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    /// `S V S^T`, re-symmetrized.
    pub fn apply(&self, v: &CovarianceMatrix) -> CovarianceMatrix {
        CovarianceMatrix::from_symmetric(self.m * v.matrix() * self.m.transpose())
    }

    /// `self * other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        let kind = if self.kind == other.kind {
            self.kind
        } else {
            TransformKind::General
        };
        Self {
            m: self.m * other.m,
            kind,
        }
    }

    pub fn is_symplectic(&self, tol: f64) -> bool {
        let s = SymplecticForm::matrix();
        (self.m * s * self.m.transpose() - s).amax() <= tol
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        (self.m * self.m.transpose() - Matrix4::identity()).amax() <= tol
    }
}

/// Reduces `V` to standard form by a local symplectic `L`.
///
/// Returns the parameters `(a, b, c_plus, c_minus)` with `a = sqrt(det A)`,
/// `b = sqrt(det B)`, `c_plus >= |c_minus|`, `c_plus * c_minus` of the sign of
/// `det C`, together with `L` such that `L V L^T` has that form.
pub fn standard_form(v: &CovarianceMatrix) -> Result<(StandardFormParams, SymplecticMatrix)> {
    if !v.is_physical(PHYSICAL_TOL) {
        return Err(Error::NotPhysical);
    }
    let blocks = v.blocks();
    let (to_a, a) = normalize_block(&blocks.a);
    let (to_b, b) = normalize_block(&blocks.b);
    let c = to_a * blocks.c * to_b.transpose();
    let svd = SignedSvd2::of(&c);
    let la = rotation(svd.left).transpose() * to_a;
    let lb = rotation(svd.right) * to_b;
    let params = StandardFormParams::new(a, b, svd.s_max, svd.s_min);
    Ok((params, SymplecticMatrix::from_mode_blocks(&la, &lb)))
}

/// For a symmetric positive-definite 2x2 block `M`, the symplectic
/// `S = sqrt(d) M^{-1/2}` with `d = sqrt(det M)`, so that `S M S^T = d I`.
fn normalize_block(m: &Matrix2<f64>) -> (Matrix2<f64>, f64) {
    let d = m.determinant().sqrt();
    // sqrt(M) = (M + d I) / sqrt(tr M + 2 d), and det sqrt(M) = d.
    let root = (m + Matrix2::identity() * d) / (m.trace() + 2.0 * d).sqrt();
    let adj = Matrix2::new(root[(1, 1)], -root[(0, 1)], -root[(1, 0)], root[(0, 0)]);
    (adj / d.sqrt(), d)
}

/// `M = R(left) diag(s_max, s_min) R(right)` with `s_max >= |s_min|`.
#[derive(Debug, Clone, Copy)]
struct SignedSvd2 {
    left: f64,
    right: f64,
    s_max: f64,
    s_min: f64,
}

impl SignedSvd2 {
    fn of(m: &Matrix2<f64>) -> Self {
        let e = (m[(0, 0)] + m[(1, 1)]) / 2.0;
        let f = (m[(0, 0)] - m[(1, 1)]) / 2.0;
        let g = (m[(1, 0)] + m[(0, 1)]) / 2.0;
        let h = (m[(1, 0)] - m[(0, 1)]) / 2.0;
        let q = e.hypot(h);
        let r = f.hypot(g);
        let a1 = g.atan2(f);
        let a2 = h.atan2(e);
        Self {
            left: (a2 + a1) / 2.0,
            right: (a2 - a1) / 2.0,
            s_max: q + r,
            s_min: q - r,
        }
    }
}
