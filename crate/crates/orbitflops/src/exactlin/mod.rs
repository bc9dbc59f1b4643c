//! Exact linear algebra over the rationals and small prime fields: Jordan
//! models, compatible bilinear forms, explicit flags and flag moves,
//! stabilizer/centralizer dimensions, and finite-field fiber counting.

pub mod dims;
pub mod fiber;
pub mod flag;
pub mod form;
pub mod jordan;
pub mod matrix;
pub mod model;
pub mod moves;
pub mod scalar;
pub mod subspace;

pub use fiber::count_fiber_points;
pub use flag::{construct_flag_a, construct_flag_iso, construct_flag_iso_all, verify_flag, Flag};
pub use form::{beta_candidates, build_form, component_sign, standard_form, BilinearForm, Sign};
pub use jordan::{jordan_matrix, jordan_type_of_nilpotent, JordanData};
pub use matrix::Matrix;
pub use model::OrbitModel;
pub use moves::{flag_flip_d, flag_swap};
pub use scalar::{Field, Fp, Rat};
pub use subspace::Subspace;
