//! Exact solver for standard quadratic equations `z^2 + mu*z + nu = 0` over a
//! quaternion division algebra in characteristic 2.
//!
//! The scalar tower is GF(2^k) ([`gf2k`]), GF(2^k)[T] ([`poly`]) and the
//! rational function field F = GF(2^k)(T) ([`ratfun`]). The algebra
//! `[alpha, beta)` with `x^2 + x = alpha`, `y^2 = beta`, `xy + yx = y` lives in
//! [`quat`], and the solver itself in [`quadroots`].

pub mod checks;
pub mod cli;
pub mod error;
pub mod expr;
pub mod fieldsolve;
pub mod gf2k;
pub mod gf2lin;
pub mod oracle;
pub mod poly;
pub mod quadroots;
pub mod quat;
pub mod ratfun;

pub use error::{Error, Result};
