//! Exact-arithmetic invariants of n-fold covers of split reductive p-adic
//! groups: dual root data, twisted-Weyl fixed points, exceptional points,
//! Poincaré series, and symbolic scattering / local-coefficients matrices
//! for unramified principal series.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactlin`]: arbitrary-precision integer/rational linear algebra
//!   (Hermite and Smith normal forms, lattice quotients, affine congruence
//!   systems);
//! - [`rootdata`]: root data in Bourbaki coordinates and Weyl group
//!   machinery;
//! - [`cover`]: the cover datum (D, Q, B, n), the lattice Y_{Q,n}, the dual
//!   root datum with its center and fundamental group, and dual-group
//!   periodicity;
//! - [`orbits`]: the finite coset space Y/Y_{Q,n} with the twisted Weyl
//!   action, coset classification, fixed-point counts and exceptional
//!   points;
//! - [`poincare`]: n-sweeps, recurrence detection, and rational Poincaré
//!   series;
//! - [`symlcm`]: the exact symbolic ring (Gauss-sum symbols, torus
//!   indeterminates, q^{1/2}) and the scattering / change-of-basis / local
//!   coefficients matrices with their determinant, trace,
//!   Casselman-Shalika and adjoint gamma-product identities;
//! - [`gl2sl2`]: Kazhdan-Patterson covers of GL(2): tame restriction
//!   bookkeeping, the explicit 4|n matrices, and the determinant/trace
//!   identity suite;
//! - [`cli`]: cover specification input, rendering, and the verification
//!   suites behind the `metacoeff` binary.

pub mod cli;
pub mod cover;
pub mod exactlin;
pub mod gl2sl2;
pub mod orbits;
pub mod poincare;
pub mod rootdata;
pub mod symlcm;
pub mod verify;
