//! Closed-form spectra, wavefunctions and overlap integrals of the Scarf II
//! potential in its Hermitian and PT-symmetric versions, each paired with an
//! independent check: adaptive quadrature for the integrals and exact
//! rational arithmetic for the binomial identities behind them.
//!
//! Module map:
//!
//! * [`special`]: complex gamma function, gamma ratios, Jacobi polynomials
//! * [`model`]: parameters, regimes, energies, potential, wavefunctions
//! * [`quadrature`]: the numerical oracle
//! * [`closed_forms`]: analytic integrals (A0, Q, pseudo-norm, norms, L, J)
//! * [`identities`]: exact binomial sums
//! * [`verification`]: closed form vs oracle reports, sign tables, sweeps

pub mod closed_forms;
pub mod complex;
pub mod error;
pub mod identities;
pub mod model;
pub mod quadrature;
pub mod special;
pub mod verification;

pub use closed_forms::{
    a0, a1, hermitian_norm, im_energy_relation, j_w_element_sum, l_norm_sum, normalization_constant, pseudo_inner,
    q_closed, q_sum, ImEnergyRelation, OverlapSpec, PseudoNormResult, VanishingReason,
};
pub use complex::{ComplexScalar, C64};
pub use error::{Error, Result};
pub use model::{
    bound_state_count, classify_regime, energy, potential, wavefunction_normalized, wavefunction_unnormalized,
    PotentialValue, QuasiParity, Regime, ScarfParams, StateIndex,
};
pub use quadrature::{integrate_line, overlap_numeric, IntegralEstimate, Mapping, QuadratureControls};
pub use special::{gamma_ratio, gen_binomial, jacobi_poly, log_gamma, GammaRatioSpec};
pub use verification::{
    orthogonality_matrix, pt_breaking_sweep, schrodinger_residual, sign_table, verify_closed_forms, ComparisonReport,
    InnerProduct, ParameterGrid, SweepRecord, Tolerances,
};
