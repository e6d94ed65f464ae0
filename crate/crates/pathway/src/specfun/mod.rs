//! Special functions underlying the distribution layer.

pub mod gamma;
pub mod hyper;
pub mod mellin;
pub mod mittag;

pub use gamma::{log_gamma, log_gamma_complex, matrix_gamma_p, pochhammer, reg_inc_beta, reg_lower_gamma};
pub use hyper::{hyp0f1, hyp2f1};
pub use mellin::{g_function_eval, g_function_spec, mellin_barnes_eval, HFunctionSpec};
pub use mittag::{mittag_leffler_3p, MittagLefflerParams};
