//! Closed-form evaluation of generalized Selberg integrals attached to fusion
//! channels `V_λ ⊗ V_{Λ₁} ⊗ … ⊗ V_{Λ₁}` of type `A`, together with the numerical
//! machinery used to check every closed form independently: doubly-exponential
//! quadrature on ordered simplices, loop contours with continuous branch
//! tracking, truncated Harish-Chandra series and Sekiguchi eigen-residuals.
//!
//! The modules mirror the layers of the computation:
//!
//! * [`rootsys`] exact root/weight combinatorics,
//! * [`channel`] fusion-path bookkeeping (`s(k)`, `a(p)`, `μ`, `η`, phase),
//! * [`special`] complex log-Γ, Γ-products and the Gauss series,
//! * [`closedform`] every closed-form value,
//! * [`oracle`] quadrature oracles,
//! * [`hgsys`] series solutions of the hypergeometric system,
//! * [`identities`] standalone Γ-identities and consistency chains,
//! * [`sampling`] seeded parameter draws,
//! * [`cli`] the batch command-line front end.

pub mod channel;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod hgsys;
pub mod identities;
pub mod oracle;
pub mod report;
pub mod rootsys;
pub mod sampling;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;
