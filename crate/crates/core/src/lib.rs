//! Two-mode bosonic Gaussian states as 4x4 covariance matrices, and their
//! entanglement under every number-conserving redefinition of the modes.
//!
//! Conventions: `hbar = 1`, quadratures ordered `(q_A, p_A, q_B, p_B)`, the
//! vacuum has `V = I/2`, and a state is physical iff `V > 0` and its smaller
//! symplectic eigenvalue is at least `1/2`. Log-negativities are in bits.
//!
//! ```
//! use gauss_tps::{pure_tms, log_negativity, SearchConfig, TpsSearch, Sense};
//!
//! let v = pure_tms(0.5).unwrap();
//! let e = log_negativity(&v).unwrap().log_negativity;
//! assert!((e - 1.4427).abs() < 1e-4);
//!
//! let search = TpsSearch::new(SearchConfig::default()).unwrap();
//! let e_min = search.extremal(&v, Sense::Min).unwrap();
//! assert!(e_min.value < 1e-7);
//! ```

mod entanglement;
mod error;
mod sampling;
mod search;
mod simplex;
mod symplectic;
mod transforms;

pub use entanglement::{
    is_separable, log_negativity, partial_transpose, pt_symplectic_spectrum, NegativityResult,
    SEPARABILITY_TOL,
};
pub use error::{Error, Result};
pub use sampling::{
    census, census_with, draw_rng, pure_tms, sample_generic, sample_generic_via_t, sample_standard,
    CensusConfig, CensusReport, Sample, SampleMode, SampleRanges,
};
pub use search::{
    classify, extremal, linspace, surface, sweep, Classification, ExtremalResult, SearchConfig,
    Sense, Surface, SweepAxis, SweepSpec, TpsSearch, Verdict, ABS_SEPARABILITY_TOL,
};
pub use symplectic::{
    Blocks, CovarianceMatrix, StandardFormParams, SymplecticForm, SymplecticSpectrum, PHYSICAL_TOL,
    PURITY_TOL, SPECTRUM_TOL,
};
pub use transforms::{
    rotation, standard_form, LocalSqueezeParams, ModeEuler, SymplecticMatrix, TransformKind,
    U2Chart,
};
