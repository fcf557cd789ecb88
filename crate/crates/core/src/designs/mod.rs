//! Block designs and their parameter arithmetic.

mod block;
mod params;

pub use block::{complete_design, derived_design, verify_design, BlockDesign};
pub use params::{
    classify_lambda, divisibility_check, lambda_s, massey_schobi_bound, optimality_class,
    teirlinck_modulus, teirlinck_params, teirlinck_smallest_v, DesignParameters, Divisibility,
    OptimalityClass, TeirlinckParams,
};
