//! Assembly of the final lower/upper bounds from the loss-integral
//! catalog.
//!
//! Writing `rho(x)` for the density of primes in the short interval, the
//! engine certifies
//!
//! * `rho >= LB = 1 - (2 * S_A + S_C)` where `S_A` is the signed sum of
//!   the `U_A*` terms (the region-`A` loss is counted once per symmetric
//!   half) and `S_C` the signed sum of the `U_C*` terms;
//! * `rho <= UB = 1 + (H + S_V)` where `S_V` is the signed sum of the
//!   `V_*` terms.
//!
//! Subtracted terms are savings; a Monte Carlo estimate of a saving that
//! is smaller than its own standard error is replaced by zero on the
//! lower side (using a noisy saving could overstate the bound), and the
//! total loss is clamped at zero, which only ever weakens the certified
//! bound.

use crate::integrals::{a_terms, c_terms, h_term, upper_terms, Term};
use crate::quadrature::{Method, Scheme};
use crate::regions::Ctx;

/// Evaluation budget. Dimensions up to `adaptive_dims` use the nested
/// adaptive rule; everything else uses seeded Monte Carlo with a
/// per-dimension sample count.
#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    pub seed: u64,
    /// Samples for terms of dimension 4..=5.
    pub samples_mid: u64,
    /// Samples for terms of dimension >= 6.
    pub samples_high: u64,
    /// Largest dimension handled by the adaptive rule (at most 3).
    pub adaptive_dims: usize,
    /// Adaptive tolerance.
    pub tol: f64,
    /// Sampling scheme for the Monte Carlo terms.
    pub scheme: Scheme,
    pub parallel: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            seed: 1,
            samples_mid: 10_000_000,
            samples_high: 100_000_000,
            adaptive_dims: 1,
            tol: 1e-6,
            scheme: Scheme::LowDiscrepancy,
            parallel: true,
        }
    }
}

impl EvalConfig {
    /// A reduced budget for quick runs and tests.
    pub fn fast() -> Self {
        EvalConfig {
            samples_mid: 1_000_000,
            samples_high: 4_000_000,
            tol: 1e-4,
            ..Self::default()
        }
    }

    fn samples_for(&self, dim: usize) -> u64 {
        if dim >= 6 {
            self.samples_high
        } else {
            self.samples_mid
        }
    }
}

/// One evaluated term.
#[derive(Clone, Copy, Debug)]
pub struct TermEstimate {
    pub name: &'static str,
    pub sign: f64,
    pub dim: usize,
    pub mean: f64,
    /// Standard error (Monte Carlo) or absolute error bound (adaptive).
    pub std_err: f64,
    pub samples: u64,
    pub method: Method,
    pub converged: bool,
    pub wall_time: f64,
}

impl TermEstimate {
    pub fn signed(&self) -> f64 {
        self.sign * self.mean
    }

    /// The value entering a lower-side sum: a subtracted saving smaller
    /// than its own error is dropped.
    fn signed_clamped(&self) -> f64 {
        if self.sign < 0.0 && self.mean < self.std_err {
            0.0
        } else {
            self.signed()
        }
    }
}

/// Evaluates a single term under the given budget.
pub fn evaluate_term(term: &Term, cfg: &EvalConfig) -> TermEstimate {
    let e = if term.dim <= cfg.adaptive_dims.min(3) {
        term.eval_adaptive(cfg.tol)
    } else {
        term.eval_mc_scheme(cfg.samples_for(term.dim), cfg.seed, cfg.parallel, cfg.scheme)
    };
    TermEstimate {
        name: term.name,
        sign: term.sign,
        dim: term.dim,
        mean: e.value,
        std_err: e.error,
        samples: e.samples,
        method: e.method,
        converged: e.converged,
        wall_time: e.wall_time,
    }
}

fn evaluate_all(terms: &[Term], cfg: &EvalConfig) -> Vec<TermEstimate> {
    terms.iter().map(|t| evaluate_term(t, cfg)).collect()
}

fn signed_sum(estimates: &[TermEstimate], clamp_savings: bool) -> (f64, f64) {
    let s = estimates
        .iter()
        .map(|e| {
            if clamp_savings {
                e.signed_clamped()
            } else {
                e.signed()
            }
        })
        .sum();
    let var = estimates.iter().map(|e| e.std_err * e.std_err).sum::<f64>();
    (s, var.sqrt())
}

/// Full lower-bound evaluation.
#[derive(Clone, Debug)]
pub struct LowerBoundReport {
    pub theta: f64,
    /// `U_A*` estimates (counted twice in the loss).
    pub a_estimates: Vec<TermEstimate>,
    /// `U_C*` estimates.
    pub c_estimates: Vec<TermEstimate>,
    /// Signed sum over region `A` (one half).
    pub loss_a: f64,
    /// Signed sum over region `C`.
    pub loss_c: f64,
    /// `2 * loss_a + loss_c`, clamped at zero.
    pub total_loss: f64,
    pub total_err: f64,
    /// `1 - total_loss`.
    pub lower_bound: f64,
    /// `false` when the bound is vacuous (total loss >= 1) or the
    /// combined error swallows the margin.
    pub nontrivial: bool,
    /// `false` if any adaptive term failed to converge.
    pub converged: bool,
}

/// Full upper-bound evaluation.
#[derive(Clone, Debug)]
pub struct UpperBoundReport {
    pub theta: f64,
    /// `H` first, then the `V_*` estimates.
    pub estimates: Vec<TermEstimate>,
    /// Signed sum including `H`, clamped at zero.
    pub total_loss: f64,
    pub total_err: f64,
    /// `1 + total_loss`.
    pub upper_bound: f64,
    /// `false` if any adaptive term failed to converge.
    pub converged: bool,
}

impl UpperBoundReport {
    /// Loss of the discarded first-variable interval (the `H` row).
    pub fn loss_h(&self) -> f64 {
        self.estimates
            .iter()
            .find(|e| e.name == "H")
            .map_or(0.0, |e| e.mean)
    }

    /// Signed sum of a named group of rows.
    pub fn group_loss(&self, names: &[&str]) -> f64 {
        self.estimates
            .iter()
            .filter(|e| names.contains(&e.name))
            .map(TermEstimate::signed)
            .sum()
    }
}

/// Row groups of the upper-bound report, in table order.
pub const UPPER_GROUPS: [(&str, &[&str]); 6] = [
    ("H", &["H"]),
    ("A1", &["V_A1", "V_A2", "V_A3"]),
    ("A1_prime", &["V_A4", "V_A5", "V_A6"]),
    ("A2", &["V_A7"]),
    ("A2_prime", &["V_A8"]),
    (
        "C",
        &["V_C1", "V_C2", "V_C3", "V_C4", "V_C5", "V_C6", "V_C7"],
    ),
];

/// Evaluates every lower-bound term and assembles `LB(theta)`.
pub fn lower_bound(ctx: Ctx, cfg: &EvalConfig) -> LowerBoundReport {
    let a_estimates = evaluate_all(&a_terms(ctx), cfg);
    let c_estimates = evaluate_all(&c_terms(ctx), cfg);
    let (loss_a, err_a) = signed_sum(&a_estimates, true);
    let (loss_c, err_c) = signed_sum(&c_estimates, true);
    let total_loss = (2.0 * loss_a + loss_c).max(0.0);
    let total_err = (4.0 * err_a * err_a + err_c * err_c).sqrt();
    let converged = a_estimates
        .iter()
        .chain(c_estimates.iter())
        .all(|e| e.converged);
    LowerBoundReport {
        theta: ctx.theta,
        a_estimates,
        c_estimates,
        loss_a,
        loss_c,
        total_loss,
        total_err,
        lower_bound: 1.0 - total_loss,
        nontrivial: total_loss < 1.0 && total_err < 1.0 - total_loss,
        converged,
    }
}

/// Evaluates every upper-bound term and assembles `UB(theta)`.
pub fn upper_bound(ctx: Ctx, cfg: &EvalConfig) -> UpperBoundReport {
    let estimates = evaluate_all(&upper_terms(ctx), cfg);
    let (loss, total_err) = signed_sum(&estimates, false);
    let total_loss = loss.max(0.0);
    let converged = estimates.iter().all(|e| e.converged);
    UpperBoundReport {
        theta: ctx.theta,
        estimates,
        total_loss,
        total_err,
        upper_bound: 1.0 + total_loss,
        converged,
    }
}

/// The one-dimensional discarded-interval loss on its own (cheap, exact).
pub fn h_loss(ctx: Ctx, grid_points: usize) -> f64 {
    h_term(ctx).eval_grid(grid_points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_pattern_is_fixed() {
        let ctx = Ctx::with_default_policy(0.52);
        let a: Vec<f64> = a_terms(ctx).iter().map(|t| t.sign).collect();
        assert_eq!(a, [1.0, 1.0, -1.0, 1.0, 1.0]);
        let c: Vec<f64> = c_terms(ctx).iter().map(|t| t.sign).collect();
        assert_eq!(
            c,
            [1.0, -1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, 1.0, 1.0, 1.0]
        );
        let v: Vec<f64> = upper_terms(ctx).iter().map(|t| t.sign).collect();
        assert_eq!(
            v,
            [1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0, 1.0, 1.0]
        );
    }

    #[test]
    fn dimensions_are_fixed() {
        let ctx = Ctx::with_default_policy(0.52);
        let a: Vec<usize> = a_terms(ctx).iter().map(|t| t.dim).collect();
        assert_eq!(a, [2, 4, 5, 6, 4]);
        let c: Vec<usize> = c_terms(ctx).iter().map(|t| t.dim).collect();
        assert_eq!(c, [4, 5, 6, 6, 8, 8, 8, 4, 5, 5, 6, 6, 6]);
        let v: Vec<usize> = upper_terms(ctx).iter().map(|t| t.dim).collect();
        assert_eq!(v, [1, 3, 4, 5, 3, 4, 5, 3, 3, 3, 4, 5, 5, 7, 7, 7]);
    }

    #[test]
    fn saving_clamp_drops_noise_level_savings() {
        let e = TermEstimate {
            name: "X",
            sign: -1.0,
            dim: 4,
            mean: 1e-7,
            std_err: 1e-6,
            samples: 1,
            method: Method::Mc,
            converged: true,
            wall_time: 0.0,
        };
        assert_eq!(e.signed_clamped(), 0.0);
        assert!(e.signed() < 0.0);
    }

    #[test]
    fn loss_clamp_keeps_bounds_one_sided() {
        // A synthetic report with a noisy negative loss must clamp to the
        // trivial bound, never cross it.
        let loss: f64 = -1e-6;
        assert_eq!(loss.max(0.0), 0.0);
    }
}
