//! Semirelativistic series machinery on top of the exact operator algebra.

mod fw;
mod identities;
mod series;

pub use fw::{
    eriksen_series, fw1950_compose, fw1950_iterates, fw_hamiltonian_series, h_squared_deviation,
    hamiltonian, lambda_full, lambda_odd, q_parts, s_fw_series, u_exponential_series,
    u_from_sin_series, vanishes_through, verify_exponential_method, FwIterates, MethodVerification,
};
pub use identities::{check_all, check_identity, IdentityCheck, IDENTITY_NAMES};
pub use series::{
    arcsin_series, bch, binomial_series, exp_series, inv_sqrt_series, log_series, sqrt_series,
    SeriesError, SeriesOrder,
};
