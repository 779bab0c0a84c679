//! Numerical engine for the sieve-decomposition loss integrals behind
//! lower/upper bounds on the count of primes in short intervals
//! `[x - x^theta, x]` for `theta` in `[0.52, 0.525)`.
//!
//! Modules:
//! * [`params`] — sieve parameters (`gamma`, `nu`, `alpha_star`);
//! * [`buchstab`] — the Buchstab function envelopes;
//! * [`regions`] — membership tests for the decomposition regions;
//! * [`quadrature`] — deterministic Monte Carlo / adaptive integration;
//! * [`integrals`] — the catalog of loss integrals;
//! * [`bounds`] — assembly of the final lower/upper bounds.

pub mod bounds;
pub mod buchstab;
pub mod integrals;
pub mod params;
pub mod quadrature;
pub mod reference;
pub mod regions;
pub mod tables;
