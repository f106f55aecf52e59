//! Pullback of Schubert classes along `G -> G/B` in Chow rings with `F_p`
//! coefficients, and the comodule expansion of the action map
//! `G x G/B -> G/B`.
//!
//! The pipeline is:
//!
//! 1. [`rootsys`] builds exact root data for a simple Cartan type.
//! 2. [`weyl`] enumerates the Weyl group stratum by stratum (by length).
//! 3. [`pullback`] assembles the Chevalley relation matrix in each degree,
//!    quotients by it over `F_p` ([`fplinalg`]) and labels the surviving
//!    classes as signed monomials in the generators of `CH*(G; F_p)`.
//! 4. [`comodule`] expands `[Σ_w]` over length-additive factorizations.
//! 5. [`veritab`] compares computed classifications against embedded tables.

pub mod cli;
pub mod comodule;
pub mod error;
pub mod fplinalg;
pub mod pullback;
pub mod rootsys;
pub mod veritab;
pub mod weyl;

pub use error::{Error, Result};
