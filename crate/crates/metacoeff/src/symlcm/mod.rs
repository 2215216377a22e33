//! The symbolic layer: the exact ring of local-coefficients entries and the
//! paper-level matrices and identities built on it.

pub mod cyclotomic;
pub mod freudenthal;
pub mod matrix;
pub mod ops;
pub mod ring;
pub mod whittaker;

pub use matrix::SymMatrix;
pub use ops::{
    change_basis_matrix, local_coeff_matrix, scattering_matrix, trace_closed_form,
    verify_det_t_m1, Character, DetVerdict, GammaBundle,
};
pub use ring::{Gens, Mono, Ring, RingRef, SymExpr, SymPoly};
pub use whittaker::{
    adjoint_gamma_product, casselman_shalika_check, weyl_char_trace, whittaker_value,
};
