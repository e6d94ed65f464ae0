pub mod cli;
pub mod error;
pub mod fracint;
pub mod multivar;
pub mod pathway;
pub mod quad;
pub mod reactions;
pub mod specfun;
pub mod superstat;
pub mod transforms;
