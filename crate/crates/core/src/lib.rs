//! Nonclassical symmetries of the fast diffusion equation `u_t = (u⁻¹u_x)_x`
//! and its potential form `v_t = v_xx/v_x`: a small symbolic engine, jet
//! calculus, operator and solution catalogs, reductions to ODEs, and
//! finite-difference cross-checks.

pub mod expr;
pub mod jets;
pub mod eqcat;
pub mod opcat;
pub mod solcat;
pub mod reduce;
pub mod fdsim;
pub mod cli;
