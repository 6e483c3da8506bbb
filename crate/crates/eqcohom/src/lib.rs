//! Equivariant cohomology of finite Z2-CW complexes.
//!
//! The crate computes Bredon cohomology with respect to coefficient systems
//! on the orbit category of Z2, and Borel (homotopy-quotient) cohomology
//! with integer coefficients twisted by a sign representation, for spaces
//! carrying a cellular involution. A catalog of standard involutive spaces
//! (spheres with various actions, tori, lens spaces, complex projective
//! line) feeds the test oracles, the verification suites, and a small CLI
//! that classifies involution-protected phases from the computed groups.
//!
//! Layering, bottom up:
//!
//! * [`abelian`]: exact integer linear algebra (Smith normal form,
//!   cohomology of cochain complexes, induced maps, kernels/cokernels).
//! * [`zcw`]: finite Z2-CW complexes, their validation, products,
//!   quotients, fixed subcomplexes, and JSON serialization.
//! * [`coeff`]: coefficient systems on the orbit category of Z2.
//! * [`bredon`]: the Bredon cochain complex and its cohomology.
//! * [`borel`]: Borel cohomology via finite free approximations, twisted
//!   coefficients, and the forgetful comparison map.
//! * [`sequences`]: long exact sequences of pairs and exactness checking.
//! * [`catalog`]: named example spaces.
//! * [`cache`], [`verify`], [`cli`]: persistence, cross-validation suites,
//!   and the command-line interface.

pub mod abelian;
pub mod borel;
pub mod bredon;
pub mod cache;
pub mod catalog;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod sequences;
pub mod verify;
pub mod zcw;
