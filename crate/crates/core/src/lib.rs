//! Numerical toolkit for orthogonally constant mappings and the orthogonal
//! stability of the Pexiderized quadratic equation
//! `f(x+y) + g(x-y) = h(x) + k(y)` over finite-dimensional real normed
//! spaces equipped with isosceles orthogonality (`x ⊥ y` iff
//! `‖x+y‖ = ‖x−y‖`).
//!
//! The crate is organised bottom-up:
//!
//! * [`normed_space`]: vectors, weighted p-norms, tolerance rules.
//! * [`ortho`]: the isosceles defect, pair generators and the bisection solver.
//! * [`funcdsl`]: a small expression language for declaring maps.
//! * [`maps`]: representable maps and the even/odd, constant-approximant,
//!   radial-profile and `u`/`v` constructions, plus residual functionals.
//! * [`verify`]: sup-residual estimation and the stability-chain checks.
//! * [`report`] and [`cli`]: serialisation and the command-line front end.

pub mod cli;
pub mod error;
pub mod funcdsl;
pub mod maps;
pub mod normed_space;
pub mod ortho;
pub mod report;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use maps::{MapSpec, PexiderQuadruple};
pub use normed_space::{NormSpec, Space, Tolerance, Vector};
pub use ortho::{Generator, OrthoPair};
