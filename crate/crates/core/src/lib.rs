//! Constructions, verification, and optimality certification for
//! constant-weight ternary codes built from weighing matrices.
//!
//! The crate covers:
//!
//! - [`field`]: exact GF(q) arithmetic and the quadratic character for odd
//!   prime powers,
//! - [`matrix`]: (0, ±1)-matrices with Jacobsthal/conference constructions,
//!   normal-form decomposition, and block assembly,
//! - [`oa`]: strength-2 orthogonal arrays from linear functionals over
//!   projective points, with full verification reports,
//! - [`code`]: exhaustive Hamming-distance and weight spectra,
//! - [`bounds`]: exact integer Johnson bounds and the balanced-weighing
//!   formulas,
//! - [`construct`]: the recursive family of weighing matrices, the derived
//!   codes, and matching lower/upper-bound certificates,
//! - [`io`]: deterministic text formats for matrices, codes, and arrays.
//!
//! ```
//! use weighcode::{construct, SizeCap};
//!
//! let cert = construct::certify(3, 2, SizeCap::default())?;
//! assert_eq!((cert.n, cert.d, cert.w), (13, 9, 9));
//! assert_eq!((cert.lower, cert.upper), (26, 26));
//! assert!(cert.optimal);
//! # Ok::<(), weighcode::Error>(())
//! ```

pub mod bounds;
pub mod code;
pub mod construct;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod oa;

pub use bounds::{
    bw_derived_bound, bw_distances, bw_params, bw_range, family_upper, johnson_restricted,
    johnson_step, substitution_upper, BoundResult, BwParams,
};
pub use code::{double, hamming, CodeStats, TernaryCode};
pub use construct::{
    build_family_code, build_family_matrix, build_substitution_code, bw_derived_code, certify,
    certify_substitution, Certificate, ChainStep,
};
pub use error::{Error, Result};
pub use field::{factor_prime_power, FieldElement, FiniteField, PrimePower};
pub use matrix::{DesignParams, GramDefect, NormalFormParts, TernaryMatrix};
pub use oa::{oa_build, projective_points, OaReport, OrthogonalArray};

/// Upper limit on the number of entries a constructed object may hold.
///
/// Everything in this crate is desk scale; the cap turns runaway parameters
/// into an error instead of an allocation storm.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SizeCap(pub u64);

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(10_000_000)
    }
}

impl SizeCap {
    pub fn check(&self, entries: u64) -> Result<()> {
        if entries > self.0 {
            return Err(Error::SizeCapExceeded {
                entries,
                cap: self.0,
            });
        }
        Ok(())
    }
}
