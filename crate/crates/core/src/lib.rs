//! Spectral analysis of Boolean functions on F₂ⁿ.
//!
//! The crate covers the fast Walsh–Hadamard and Möbius transforms,
//! bent and `s`-plateaued classification, derivatives and hyperplane
//! restrictions, exhaustive bent enumeration at small `n`, and exact
//! big-integer counting of degree-bounded functions by weight.
//!
//! ```
//! use bentforge::{classify, Anf, Kind};
//!
//! let f = Anf::parse("x1*x2 + x3*x4", 4)?.to_function();
//! assert_eq!(classify(&f).kind(), Kind::Bent);
//! # Ok::<(), bentforge::Error>(())
//! ```
//!
//! Truth tables index inputs with `x₁` in the least significant bit; see
//! [`BooleanFunction`]. The guide under `book/` walks through each module.

#![forbid(unsafe_code)]

pub mod anf;
pub mod census;
pub mod classify;
pub mod counting;
mod error;
pub mod function;
pub mod linear;
pub mod spectral;
mod text;

pub use anf::{degree, mobius, Anf};
pub use census::{
    derivative_census, enumerate_bent, is_derivative_of_some_bent, sample_mm_bent,
    verify_double_count, BentSet, CensusReport,
};
pub use classify::{
    classify, support_fraction_check, verify_derivative_support, verify_restriction_plateaued,
    Classification, Kind,
};
pub use counting::{
    bound_report, cauchy_schwarz_bound, convolution_bound, exact_distribution, total_count,
    BoundReport, WeightDistribution,
};
pub use error::{Error, Result};
pub use function::{BooleanFunction, HyperplaneSpec, MAX_VARIABLES};
pub use linear::{AffineMap, BitMatrix, Subspace};
pub use spectral::{
    convolve, coset_sum, dual_bent, fourier, inverse_wht, wht, RealFunction, Spectrum,
};

// Every chapter of the guide is compiled and run as a doctest.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../README.md")]
    pub mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/truth-tables.md")]
    pub mod truth_tables {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    pub mod spectra {}
    #[doc = include_str!("../../../book/src/anf.md")]
    pub mod anf {}
    #[doc = include_str!("../../../book/src/plateaued.md")]
    pub mod plateaued {}
    #[doc = include_str!("../../../book/src/derivatives.md")]
    pub mod derivatives {}
    #[doc = include_str!("../../../book/src/census.md")]
    pub mod census {}
    #[doc = include_str!("../../../book/src/counting.md")]
    pub mod counting {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
