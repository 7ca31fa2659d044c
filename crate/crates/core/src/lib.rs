//! Generalized weighted Hilbert matrices `b_{mn} = c_m c_n / (x_m − x_n)`:
//! construction, skew spectra, matching determinants, identity checks,
//! Toeplitz symbols and gap experiments.

pub mod determinants;
pub mod error;
pub mod gap_experiments;
pub mod identities;
mod lu;
pub mod matrices;
pub mod numeric;
pub mod quadrature;
pub mod random;
pub mod spectra;
pub mod symbols;

pub use error::{Error, Result};
pub use matrices::{
    build_a, build_b, build_h, build_prolate, build_t, build_toeplitz, min_gaps, remove_index,
    ComplexMatrix, DenseMatrix, GapReport, NodeVector, SkewMatrix, SymMatrix, WeightVector,
};
pub use spectra::{skew_spectrum, spectral_norm, spectral_norm_trace, EigenPair, SpectralDecomposition};
pub use symbols::{SymbolSeries, TrigPolynomial};
