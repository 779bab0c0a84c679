//! The catalog of loss integrals.
//!
//! Every term is an iterated integral over a chain domain: each variable
//! ranges over an interval depending on the earlier ones, the integrand is
//! an indicator (region membership plus decomposition admissibility)
//! multiplied by a Buchstab-envelope weight over a product of the
//! variables. Positive terms use the upper envelope, subtracted terms the
//! lower envelope, and the high-dimensional terms the crude bound, so that
//! every evaluated sum stays a valid one-sided bound.
//!
//! Naming: `U_*` terms make up the lower-bound loss (regions `A` and `C`),
//! `V_*` terms the upper-bound loss, `H` the discarded first-variable
//! interval, and `FULL_A` the undecomposed two-dimensional loss over all
//! of `A` (a diagnostic used to gauge the savings from the narrow strip).

use crate::buchstab::{omega_lower, omega_simple, omega_upper};
use crate::quadrature::{
    integrate_adaptive, integrate_grid, integrate_mc, integrate_mc_scheme, IntegralEstimate,
    McResult, Method, Scheme,
};
use crate::regions::{
    can_two_step, in_a, in_a1, in_a1_prime, in_a2, in_a2_prime, in_a_narrow, in_c, in_d_ddag,
    in_d_plus, in_d_plus_plus, in_d_sharp, in_d_star, in_d_star_star, in_g, in_h, two_block_ok,
    Ctx,
};

type BoundsFn = Box<dyn Fn(usize, &[f64]) -> (f64, f64) + Send + Sync>;
type WeightFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// One loss integral: a signed chain-domain integral.
pub struct Term {
    pub name: &'static str,
    /// `+1.0` or `-1.0`; the signed value enters the loss sum.
    pub sign: f64,
    pub dim: usize,
    bounds: BoundsFn,
    weight: WeightFn,
}

impl Term {
    /// Monte Carlo estimate of the unsigned integral.
    pub fn eval_mc(&self, samples: u64, seed: u64, parallel: bool) -> McResult {
        integrate_mc(self.dim, &self.bounds, &self.weight, samples, seed, parallel)
    }

    /// Monte Carlo estimate with an explicit sampling scheme, packaged
    /// with its provenance.
    pub fn eval_mc_scheme(
        &self,
        samples: u64,
        seed: u64,
        parallel: bool,
        scheme: Scheme,
    ) -> IntegralEstimate {
        let start = std::time::Instant::now();
        let r = integrate_mc_scheme(
            self.dim,
            &self.bounds,
            &self.weight,
            samples,
            seed,
            parallel,
            scheme,
        );
        IntegralEstimate {
            value: r.mean,
            error: r.std_err,
            method: if scheme == Scheme::LowDiscrepancy {
                Method::Qmc
            } else {
                Method::Mc
            },
            samples: r.samples,
            seed,
            wall_time: start.elapsed().as_secs_f64(),
            converged: true,
        }
    }

    /// Nested adaptive estimate (only valid for `dim <= 3`).
    pub fn eval_adaptive(&self, tol: f64) -> IntegralEstimate {
        integrate_adaptive(self.dim, &self.bounds, &self.weight, tol)
    }

    /// Midpoint tensor-rule estimate (only sensible for `dim <= 3`).
    pub fn eval_grid(&self, points_per_dim: usize) -> f64 {
        integrate_grid(self.dim, &self.bounds, &self.weight, points_per_dim)
    }
}

fn sum(p: &[f64]) -> f64 {
    p.iter().sum()
}

/// Standard chain: `t1 in [nu0, 1/2)`,
/// `t_i in [nu0, min(t_{i-1}, (1 - sum)/2))`.
fn cascade(ctx: Ctx) -> BoundsFn {
    Box::new(move |i, p| {
        if i == 0 {
            (ctx.nu0, 0.5)
        } else {
            (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p))))
        }
    })
}

fn term(
    name: &'static str,
    sign: f64,
    dim: usize,
    bounds: BoundsFn,
    weight: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
) -> Term {
    Term {
        name,
        sign,
        dim,
        bounds,
        weight: Box::new(weight),
    }
}

// -------------------------------------------------------------------------
// shared predicate prefixes
// -------------------------------------------------------------------------

/// Third-variable admissibility prefix used by every `U_C` term:
/// `(t1, t2)` lies in `C` outside the bilinear region, the triple fails
/// the trilinear test, and `part` states whether the triple admits a
/// two-variable/three-variable direct decomposition.
fn c_prefix(ctx: &Ctx, t: &[f64], part: bool) -> bool {
    in_c(ctx, t[0], t[1])
        && !two_block_ok(ctx, t[0], t[1])
        && !in_g(ctx, &t[..3])
        && can_two_step(ctx, &t[..3], false) == part
}

/// Third-variable prefix for the `V_C` terms: first variable outside the
/// discard interval, `(t1, t2)` in `C`, triple not trilinear-admissible.
fn vc_prefix(ctx: &Ctx, t: &[f64]) -> bool {
    !in_h(ctx, t[0]) && in_c(ctx, t[0], t[1]) && !in_g(ctx, &t[..3])
}

// reflected tuples (renaming the almost-prime residual into first position)

fn refl3(t: &[f64], k: usize) -> Vec<f64> {
    // (1 - t1 - t2 - t3, t2, t3, t4, ..., t_k)
    let mut v = vec![1.0 - t[0] - t[1] - t[2]];
    v.extend_from_slice(&t[1..k]);
    v
}

fn refl4(t: &[f64], k: usize) -> Vec<f64> {
    // (1 - t1 - t2 - t3 - t4, t2, t3, t4, ..., t_k)
    let mut v = vec![1.0 - t[0] - t[1] - t[2] - t[3]];
    v.extend_from_slice(&t[1..k]);
    v
}

fn refl5(t: &[f64], k: usize) -> Vec<f64> {
    // (1 - t1 - ... - t5, t2, t3, t4, t5, ..., t_k)
    let mut v = vec![1.0 - t[..5].iter().sum::<f64>()];
    v.extend_from_slice(&t[1..k]);
    v
}

// -------------------------------------------------------------------------
// lower-bound terms
// -------------------------------------------------------------------------

/// The terms making up the lower-bound loss over region `A`
/// (signs `+ + - + +`).
pub fn a_terms(ctx: Ctx) -> Vec<Term> {
    vec![
        term("U_A1", 1.0, 2, cascade(ctx), move |t| {
            if in_a(t[0], t[1]) && !in_a_narrow(t[0], t[1]) {
                omega_upper((1.0 - t[0] - t[1]) / t[1]) / (t[0] * t[1] * t[1])
            } else {
                0.0
            }
        }),
        term("U_A2", 1.0, 4, cascade(ctx), move |t| {
            if in_a_narrow(t[0], t[1])
                && !in_g(&ctx, &t[..3])
                && can_two_step(&ctx, &t[..3], false)
                && !in_g(&ctx, &t[..4])
                && !in_d_star(&ctx, &t[..4])
            {
                omega_upper((1.0 - sum(t)) / t[3]) / (t[0] * t[1] * t[2] * t[3] * t[3])
            } else {
                0.0
            }
        }),
        term(
            "U_A3",
            -1.0,
            5,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                4 => (p[3], 0.5 * (1.0 - sum(p))),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                if in_a_narrow(t[0], t[1])
                    && !in_g(&ctx, &t[..3])
                    && can_two_step(&ctx, &t[..3], false)
                    && !in_g(&ctx, &t[..4])
                    && !in_d_star(&ctx, &t[..4])
                    && in_g(&ctx, &t[..5])
                {
                    omega_lower((1.0 - sum(t)) / t[4]) / (t[0] * t[1] * t[2] * t[3] * t[4] * t[4])
                } else {
                    0.0
                }
            },
        ),
        term("U_A4", 1.0, 6, cascade(ctx), move |t| {
            if in_a_narrow(t[0], t[1])
                && !in_g(&ctx, &t[..3])
                && can_two_step(&ctx, &t[..3], false)
                && !in_g(&ctx, &t[..4])
                && in_d_star(&ctx, &t[..4])
                && !in_g(&ctx, &t[..5])
                && !in_g(&ctx, &t[..6])
            {
                omega_upper((1.0 - sum(t)) / t[5])
                    / (t[0] * t[1] * t[2] * t[3] * t[4] * t[5] * t[5])
            } else {
                0.0
            }
        }),
        term(
            "U_A5",
            1.0,
            4,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                3 => (ctx.nu0, 0.5 * p[0]),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let s3 = t[0] + t[1] + t[2];
                if in_a_narrow(t[0], t[1])
                    && !in_g(&ctx, &t[..3])
                    && !can_two_step(&ctx, &t[..3], false)
                    && !in_g(&ctx, &refl3(t, 4))
                {
                    omega_upper((t[0] - t[3]) / t[3]) * omega_upper((1.0 - s3) / t[2])
                        / (t[1] * t[2] * t[2] * t[3] * t[3])
                } else {
                    0.0
                }
            },
        ),
    ]
}

/// The terms making up the lower-bound loss over region `C`
/// (signs `+ - + + + + + + - - + + +`).
pub fn c_terms(ctx: Ctx) -> Vec<Term> {
    // chain tails reused by several terms
    let uc08_bounds = move || -> BoundsFn {
        Box::new(move |i: usize, p: &[f64]| match i {
            0 => (ctx.nu0, 0.5),
            3 => (ctx.nu0, 0.5 * p[0]),
            _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
        })
    };
    let uc08_pred = move |t: &[f64]| -> bool {
        c_prefix(&ctx, t, false)
            && !in_g(&ctx, &refl3(t, 4))
            && !in_d_star(&ctx, &refl3(t, 4))
            && !in_d_star(&ctx, &[t[0] - t[3], t[1], t[3], t[2]])
    };
    vec![
        term("U_C01", 1.0, 4, cascade(ctx), move |t| {
            if c_prefix(&ctx, t, true)
                && !in_g(&ctx, &t[..4])
                && !in_d_star(&ctx, &t[..4])
                && !in_d_ddag(&ctx, &t[..4])
            {
                omega_upper((1.0 - sum(t)) / t[3]) / (t[0] * t[1] * t[2] * t[3] * t[3])
            } else {
                0.0
            }
        }),
        term(
            "U_C02",
            -1.0,
            5,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                4 => (p[3], 0.5 * (1.0 - sum(p))),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                if c_prefix(&ctx, t, true)
                    && !in_g(&ctx, &t[..4])
                    && !in_d_star(&ctx, &t[..4])
                    && !in_d_ddag(&ctx, &t[..4])
                    && in_g(&ctx, &t[..5])
                {
                    omega_lower((1.0 - sum(t)) / t[4]) / (t[0] * t[1] * t[2] * t[3] * t[4] * t[4])
                } else {
                    0.0
                }
            },
        ),
        term("U_C03", 1.0, 6, cascade(ctx), move |t| {
            if c_prefix(&ctx, t, true)
                && !in_g(&ctx, &t[..4])
                && in_d_star(&ctx, &t[..4])
                && !in_g(&ctx, &t[..5])
                && !in_g(&ctx, &t[..6])
                && !in_d_star_star(&ctx, &t[..6])
            {
                omega_upper((1.0 - sum(t)) / t[5])
                    / (t[0] * t[1] * t[2] * t[3] * t[4] * t[5] * t[5])
            } else {
                0.0
            }
        }),
        term(
            "U_C04",
            1.0,
            6,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                5 => (ctx.nu0, 0.5 * p[0]),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let s5 = t[..5].iter().sum::<f64>();
                let dag6 = refl5(t, 6);
                let dag6p = [t[0] - t[5], t[1], t[2], t[3], t[5], t[4]];
                if c_prefix(&ctx, t, true)
                    && !in_g(&ctx, &t[..4])
                    && !in_d_star(&ctx, &t[..4])
                    && in_d_ddag(&ctx, &t[..4])
                    && !in_g(&ctx, &t[..5])
                    && !in_g(&ctx, &dag6)
                    && !in_d_star_star(&ctx, &dag6)
                    && !in_d_star_star(&ctx, &dag6p)
                {
                    omega_upper((t[0] - t[5]) / t[5]) * omega_upper((1.0 - s5) / t[4])
                        / (t[1] * t[2] * t[3] * t[4] * t[4] * t[5] * t[5])
                } else {
                    0.0
                }
            },
        ),
        term("U_C05", 1.0, 8, cascade(ctx), move |t| {
            if c_prefix(&ctx, t, true)
                && !in_g(&ctx, &t[..4])
                && in_d_star(&ctx, &t[..4])
                && !in_g(&ctx, &t[..5])
                && !in_g(&ctx, &t[..6])
                && in_d_star_star(&ctx, &t[..6])
                && !in_g(&ctx, &t[..7])
                && !in_g(&ctx, &t[..8])
            {
                omega_simple((1.0 - sum(t)) / t[7])
                    / (t[..7].iter().product::<f64>() * t[7] * t[7])
            } else {
                0.0
            }
        }),
        term(
            "U_C06",
            1.0,
            8,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                5 => (ctx.nu0, 0.5 * p[0]),
                6 => (ctx.nu0, p[5].min(0.5 * (p[0] - p[5]))),
                7 => (ctx.nu0, p[6].min(0.5 * (p[0] - p[5] - p[6]))),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let s5 = t[..5].iter().sum::<f64>();
                let dag6 = refl5(t, 6);
                let dag7 = refl5(t, 7);
                let dag8 = refl5(t, 8);
                if c_prefix(&ctx, t, true)
                    && !in_g(&ctx, &t[..4])
                    && !in_d_star(&ctx, &t[..4])
                    && in_d_ddag(&ctx, &t[..4])
                    && !in_g(&ctx, &t[..5])
                    && !in_g(&ctx, &dag6)
                    && in_d_star_star(&ctx, &dag6)
                    && !in_g(&ctx, &dag7)
                    && !in_g(&ctx, &dag8)
                {
                    omega_simple((t[0] - t[5] - t[6] - t[7]) / t[7])
                        * omega_simple((1.0 - s5) / t[4])
                        / (t[1] * t[2] * t[3] * t[4] * t[4] * t[5] * t[6] * t[7] * t[7])
                } else {
                    0.0
                }
            },
        ),
        term(
            "U_C07",
            1.0,
            8,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                5 => (ctx.nu0, 0.5 * p[0]),
                6 => {
                    let s5 = p[..5].iter().sum::<f64>();
                    (ctx.nu0, p[4].min(0.5 * (1.0 - s5)))
                }
                7 => {
                    let s5 = p[..5].iter().sum::<f64>();
                    (ctx.nu0, p[6].min(0.5 * (1.0 - s5 - p[6])))
                }
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let s5 = t[..5].iter().sum::<f64>();
                let dag6 = refl5(t, 6);
                let dag6p = [t[0] - t[5], t[1], t[2], t[3], t[5], t[4]];
                let dag7p = [t[0] - t[5], t[1], t[2], t[3], t[4], t[5], t[6]];
                let dag8p = [t[0] - t[5], t[1], t[2], t[3], t[4], t[5], t[6], t[7]];
                if c_prefix(&ctx, t, true)
                    && !in_g(&ctx, &t[..4])
                    && !in_d_star(&ctx, &t[..4])
                    && in_d_ddag(&ctx, &t[..4])
                    && !in_g(&ctx, &t[..5])
                    && !in_g(&ctx, &dag6)
                    && !in_d_star_star(&ctx, &dag6)
                    && in_d_star_star(&ctx, &dag6p)
                    && !in_g(&ctx, &dag7p)
                    && !in_g(&ctx, &dag8p)
                {
                    omega_simple((t[0] - t[5]) / t[5])
                        * omega_simple((1.0 - s5 - t[6] - t[7]) / t[7])
                        / (t[1] * t[2] * t[3] * t[4] * t[5] * t[5] * t[6] * t[7] * t[7])
                } else {
                    0.0
                }
            },
        ),
        term("U_C08", 1.0, 4, uc08_bounds(), move |t| {
            if uc08_pred(t) {
                let s3 = t[0] + t[1] + t[2];
                omega_upper((t[0] - t[3]) / t[3]) * omega_upper((1.0 - s3) / t[2])
                    / (t[1] * t[2] * t[2] * t[3] * t[3])
            } else {
                0.0
            }
        }),
        term(
            "U_C09",
            -1.0,
            5,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                3 => (ctx.nu0, 0.5 * p[0]),
                4 => (p[3], 0.5 * (p[0] - p[3])),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                if uc08_pred(t) && in_g(&ctx, &refl3(t, 5)) {
                    let s3 = t[0] + t[1] + t[2];
                    omega_lower((t[0] - t[3] - t[4]) / t[4]) * omega_lower((1.0 - s3) / t[2])
                        / (t[1] * t[2] * t[2] * t[3] * t[4] * t[4])
                } else {
                    0.0
                }
            },
        ),
        term(
            "U_C10",
            -1.0,
            5,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                3 => (ctx.nu0, 0.5 * p[0]),
                4 => (p[2], 0.5 * (1.0 - p[0] - p[1] - p[2])),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let pp5 = [t[0] - t[3], t[1], t[2], t[3], t[4]];
                if uc08_pred(t) && in_g(&ctx, &pp5) {
                    let s3 = t[0] + t[1] + t[2];
                    omega_lower((t[0] - t[3]) / t[3]) * omega_lower((1.0 - s3 - t[4]) / t[4])
                        / (t[1] * t[2] * t[3] * t[3] * t[4] * t[4])
                } else {
                    0.0
                }
            },
        ),
        term(
            "U_C11",
            1.0,
            6,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                3 => (ctx.nu0, 0.5 * p[0]),
                4 => (p[3], 0.5 * (p[0] - p[3])),
                5 => (p[2], 0.5 * (1.0 - p[0] - p[1] - p[2])),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let ppp5 = [t[0] - t[3], t[1], t[2], t[3], t[5]];
                if uc08_pred(t) && in_g(&ctx, &refl3(t, 5)) && in_g(&ctx, &ppp5) {
                    let s3 = t[0] + t[1] + t[2];
                    omega_upper((t[0] - t[3] - t[4]) / t[4])
                        * omega_upper((1.0 - s3 - t[5]) / t[5])
                        / (t[1] * t[2] * t[3] * t[4] * t[4] * t[5] * t[5])
                } else {
                    0.0
                }
            },
        ),
        term(
            "U_C12",
            1.0,
            6,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                3 => (ctx.nu0, 0.5 * p[0]),
                4 => (ctx.nu0, p[3].min(0.5 * (p[0] - p[3]))),
                5 => (ctx.nu0, p[4].min(0.5 * (p[0] - p[3] - p[4]))),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                if c_prefix(&ctx, t, false)
                    && !in_g(&ctx, &refl3(t, 4))
                    && in_d_star(&ctx, &refl3(t, 4))
                    && !in_g(&ctx, &refl3(t, 5))
                    && !in_g(&ctx, &refl3(t, 6))
                {
                    let s3 = t[0] + t[1] + t[2];
                    omega_upper((t[0] - t[3] - t[4] - t[5]) / t[5])
                        * omega_upper((1.0 - s3) / t[2])
                        / (t[1] * t[2] * t[2] * t[3] * t[4] * t[5] * t[5])
                } else {
                    0.0
                }
            },
        ),
        term(
            "U_C13",
            1.0,
            6,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                3 => (ctx.nu0, 0.5 * p[0]),
                4 => {
                    let s3 = p[0] + p[1] + p[2];
                    (ctx.nu0, p[2].min(0.5 * (1.0 - s3)))
                }
                5 => {
                    let mut s = p[0] + p[1] + p[2];
                    if !ctx.policy.eq13_bound_as_printed {
                        s += p[3];
                    }
                    (ctx.nu0, p[4].min(0.5 * (1.0 - s - p[4])))
                }
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let pp5 = [t[0] - t[3], t[1], t[2], t[3], t[4]];
                let pp6 = [t[0] - t[3], t[1], t[2], t[3], t[4], t[5]];
                if c_prefix(&ctx, t, false)
                    && !in_g(&ctx, &refl3(t, 4))
                    && in_d_star(&ctx, &refl3(t, 4))
                    && !in_g(&ctx, &pp5)
                    && !in_g(&ctx, &pp6)
                {
                    let mut s = t[0] + t[1] + t[2];
                    if !ctx.policy.eq13_bound_as_printed {
                        s += t[3];
                    }
                    omega_upper((t[0] - t[3]) / t[3])
                        * omega_upper((1.0 - s - t[4] - t[5]) / t[5])
                        / (t[1] * t[2] * t[3] * t[3] * t[4] * t[5] * t[5])
                } else {
                    0.0
                }
            },
        ),
    ]
}

// -------------------------------------------------------------------------
// upper-bound terms
// -------------------------------------------------------------------------

/// The discarded first-variable interval (one-dimensional; empty for
/// `theta > 11/21`).
pub fn h_term(ctx: Ctx) -> Term {
    term(
        "H",
        1.0,
        1,
        Box::new(move |_, _| (3.5 * ctx.theta - 1.5, 4.0 - 7.0 * ctx.theta)),
        move |t| omega_upper((1.0 - t[0]) / t[0]) / (t[0] * t[0]),
    )
}

/// Diagnostic: the undecomposed two-dimensional loss over all of `A`.
pub fn full_a_term(ctx: Ctx) -> Term {
    term("FULL_A", 1.0, 2, cascade(ctx), move |t| {
        if in_a(t[0], t[1]) {
            omega_upper((1.0 - t[0] - t[1]) / t[1]) / (t[0] * t[1] * t[1])
        } else {
            0.0
        }
    })
}

/// The terms making up the upper-bound loss (all `V_*`; `V_A2`, `V_A5`
/// and `V_C2` are subtracted savings).
pub fn v_terms(ctx: Ctx) -> Vec<Term> {
    let g4_saving_bounds = move || -> BoundsFn {
        Box::new(move |i: usize, p: &[f64]| match i {
            0 => (ctx.nu0, 0.5),
            3 => (p[2], 0.5 * (1.0 - sum(p))),
            _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
        })
    };
    let w3 = move |t: &[f64], env: fn(f64) -> f64| -> f64 {
        env((1.0 - t[0] - t[1] - t[2]) / t[2]) / (t[0] * t[1] * t[2] * t[2])
    };
    vec![
        term("V_A1", 1.0, 3, cascade(ctx), move |t| {
            if !in_h(&ctx, t[0])
                && in_a1(&ctx, t[0], t[1])
                && !in_g(&ctx, &t[..3])
                && !in_d_plus(&ctx, &t[..3])
            {
                w3(t, omega_upper)
            } else {
                0.0
            }
        }),
        term("V_A2", -1.0, 4, g4_saving_bounds(), move |t| {
            if !in_h(&ctx, t[0])
                && in_a1(&ctx, t[0], t[1])
                && !in_g(&ctx, &t[..3])
                && !in_d_plus(&ctx, &t[..3])
                && in_g(&ctx, &t[..4])
            {
                omega_lower((1.0 - sum(t)) / t[3]) / (t[0] * t[1] * t[2] * t[3] * t[3])
            } else {
                0.0
            }
        }),
        term("V_A3", 1.0, 5, cascade(ctx), move |t| {
            if !in_h(&ctx, t[0])
                && in_a1(&ctx, t[0], t[1])
                && !in_g(&ctx, &t[..3])
                && in_d_plus(&ctx, &t[..3])
                && !in_g(&ctx, &t[..4])
                && !in_g(&ctx, &t[..5])
            {
                omega_upper((1.0 - sum(t)) / t[4]) / (t[0] * t[1] * t[2] * t[3] * t[4] * t[4])
            } else {
                0.0
            }
        }),
        term("V_A4", 1.0, 3, cascade(ctx), move |t| {
            if in_a1_prime(&ctx, t[0], t[1])
                && !in_g(&ctx, &t[..3])
                && !in_d_plus(&ctx, &t[..3])
            {
                w3(t, omega_upper)
            } else {
                0.0
            }
        }),
        term("V_A5", -1.0, 4, g4_saving_bounds(), move |t| {
            if in_a1_prime(&ctx, t[0], t[1])
                && !in_g(&ctx, &t[..3])
                && !in_d_plus(&ctx, &t[..3])
                && in_g(&ctx, &t[..4])
            {
                omega_lower((1.0 - sum(t)) / t[3]) / (t[0] * t[1] * t[2] * t[3] * t[3])
            } else {
                0.0
            }
        }),
        term("V_A6", 1.0, 5, cascade(ctx), move |t| {
            if in_a1_prime(&ctx, t[0], t[1])
                && !in_g(&ctx, &t[..3])
                && in_d_plus(&ctx, &t[..3])
                && !in_g(&ctx, &t[..4])
                && !in_g(&ctx, &t[..5])
            {
                omega_upper((1.0 - sum(t)) / t[4]) / (t[0] * t[1] * t[2] * t[3] * t[4] * t[4])
            } else {
                0.0
            }
        }),
        term("V_A7", 1.0, 3, cascade(ctx), move |t| {
            if !in_h(&ctx, t[0]) && in_a2(&ctx, t[0], t[1]) && !in_g(&ctx, &t[..3]) {
                w3(t, omega_upper)
            } else {
                0.0
            }
        }),
        term("V_A8", 1.0, 3, cascade(ctx), move |t| {
            if in_a2_prime(&ctx, t[0], t[1]) && !in_g(&ctx, &t[..3]) {
                w3(t, omega_upper)
            } else {
                0.0
            }
        }),
        term("V_C1", 1.0, 3, cascade(ctx), move |t| {
            if vc_prefix(&ctx, t)
                && !in_d_plus(&ctx, &t[..3])
                && !in_d_sharp(&ctx, &t[..3])
            {
                w3(t, omega_upper)
            } else {
                0.0
            }
        }),
        term("V_C2", -1.0, 4, g4_saving_bounds(), move |t| {
            if vc_prefix(&ctx, t)
                && !in_d_plus(&ctx, &t[..3])
                && !in_d_sharp(&ctx, &t[..3])
                && in_g(&ctx, &t[..4])
            {
                omega_lower((1.0 - sum(t)) / t[3]) / (t[0] * t[1] * t[2] * t[3] * t[3])
            } else {
                0.0
            }
        }),
        term("V_C3", 1.0, 5, cascade(ctx), move |t| {
            if vc_prefix(&ctx, t)
                && in_d_plus(&ctx, &t[..3])
                && !in_g(&ctx, &t[..4])
                && !in_g(&ctx, &t[..5])
                && !in_d_plus_plus(&ctx, &t[..5])
            {
                omega_upper((1.0 - sum(t)) / t[4]) / (t[0] * t[1] * t[2] * t[3] * t[4] * t[4])
            } else {
                0.0
            }
        }),
        term(
            "V_C4",
            1.0,
            5,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                4 => (ctx.nu0, 0.5 * p[0]),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let s4 = t[..4].iter().sum::<f64>();
                let sh5 = refl4(t, 5);
                let sh5p = [t[0] - t[4], t[1], t[2], t[4], t[3]];
                if vc_prefix(&ctx, t)
                    && !in_d_plus(&ctx, &t[..3])
                    && in_d_sharp(&ctx, &t[..3])
                    && !in_g(&ctx, &t[..4])
                    && !in_g(&ctx, &sh5)
                    && !in_d_plus_plus(&ctx, &sh5)
                    && !in_d_plus_plus(&ctx, &sh5p)
                {
                    omega_upper((t[0] - t[4]) / t[4]) * omega_upper((1.0 - s4) / t[3])
                        / (t[1] * t[2] * t[3] * t[3] * t[4] * t[4])
                } else {
                    0.0
                }
            },
        ),
        term("V_C5", 1.0, 7, cascade(ctx), move |t| {
            if vc_prefix(&ctx, t)
                && in_d_plus(&ctx, &t[..3])
                && !in_g(&ctx, &t[..4])
                && !in_g(&ctx, &t[..5])
                && in_d_plus_plus(&ctx, &t[..5])
                && !in_g(&ctx, &t[..6])
                && !in_g(&ctx, &t[..7])
            {
                omega_simple((1.0 - sum(t)) / t[6])
                    / (t[..6].iter().product::<f64>() * t[6] * t[6])
            } else {
                0.0
            }
        }),
        term(
            "V_C6",
            1.0,
            7,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                4 => (ctx.nu0, 0.5 * p[0]),
                5 => (ctx.nu0, p[4].min(0.5 * (p[0] - p[4]))),
                6 => (ctx.nu0, p[5].min(0.5 * (p[0] - p[4] - p[5]))),
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let s4 = t[..4].iter().sum::<f64>();
                let sh5 = refl4(t, 5);
                let sh6 = refl4(t, 6);
                let sh7 = refl4(t, 7);
                if vc_prefix(&ctx, t)
                    && !in_d_plus(&ctx, &t[..3])
                    && in_d_sharp(&ctx, &t[..3])
                    && !in_g(&ctx, &t[..4])
                    && !in_g(&ctx, &sh5)
                    && in_d_plus_plus(&ctx, &sh5)
                    && !in_g(&ctx, &sh6)
                    && !in_g(&ctx, &sh7)
                {
                    omega_simple((t[0] - t[4] - t[5] - t[6]) / t[6])
                        * omega_simple((1.0 - s4) / t[3])
                        / (t[1] * t[2] * t[3] * t[3] * t[4] * t[5] * t[6] * t[6])
                } else {
                    0.0
                }
            },
        ),
        term(
            "V_C7",
            1.0,
            7,
            Box::new(move |i, p| match i {
                0 => (ctx.nu0, 0.5),
                4 => (ctx.nu0, 0.5 * p[0]),
                5 => {
                    let s4 = p[..4].iter().sum::<f64>();
                    (ctx.nu0, p[3].min(0.5 * (1.0 - s4)))
                }
                6 => {
                    let s4 = p[..4].iter().sum::<f64>();
                    (ctx.nu0, p[5].min(0.5 * (1.0 - s4 - p[5])))
                }
                _ => (ctx.nu0, p[i - 1].min(0.5 * (1.0 - sum(p)))),
            }),
            move |t| {
                let s4 = t[..4].iter().sum::<f64>();
                let sh5 = refl4(t, 5);
                let sh5p = [t[0] - t[4], t[1], t[2], t[4], t[3]];
                let sh6p = [t[0] - t[4], t[1], t[2], t[3], t[4], t[5]];
                let sh7p = [t[0] - t[4], t[1], t[2], t[3], t[4], t[5], t[6]];
                if vc_prefix(&ctx, t)
                    && !in_d_plus(&ctx, &t[..3])
                    && in_d_sharp(&ctx, &t[..3])
                    && !in_g(&ctx, &t[..4])
                    && !in_g(&ctx, &sh5)
                    && !in_d_plus_plus(&ctx, &sh5)
                    && in_d_plus_plus(&ctx, &sh5p)
                    && !in_g(&ctx, &sh6p)
                    && !in_g(&ctx, &sh7p)
                {
                    omega_simple((t[0] - t[4]) / t[4])
                        * omega_simple((1.0 - s4 - t[5] - t[6]) / t[6])
                        / (t[1] * t[2] * t[3] * t[4] * t[4] * t[5] * t[6] * t[6])
                } else {
                    0.0
                }
            },
        ),
    ]
}

/// All lower-bound terms (region `A` then region `C`).
pub fn lower_terms(ctx: Ctx) -> Vec<Term> {
    let mut v = a_terms(ctx);
    v.extend(c_terms(ctx));
    v
}

/// All upper-bound terms (`H`, then `V_A*`, then `V_C*`).
pub fn upper_terms(ctx: Ctx) -> Vec<Term> {
    let mut v = vec![h_term(ctx)];
    v.extend(v_terms(ctx));
    v
}

/// Every term known to the engine, for lookup by name.
pub fn all_terms(ctx: Ctx) -> Vec<Term> {
    let mut v = lower_terms(ctx);
    v.extend(upper_terms(ctx));
    v.push(full_a_term(ctx));
    v
}

/// Finds a term by its canonical name (e.g. `"U_C01"`, `"V_A3"`, `"H"`).
pub fn term_by_name(ctx: Ctx, name: &str) -> Option<Term> {
    all_terms(ctx).into_iter().find(|t| t.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn h_loss_matches_grid_value() {
        let ctx = Ctx::with_default_policy(0.52);
        let h = h_term(ctx).eval_grid(20_000);
        assert!(h < 0.182012, "H = {h}");
        assert!(h > 0.18190, "H = {h}");
    }

    #[test]
    fn h_empty_at_large_theta() {
        let ctx = Ctx::with_default_policy(0.524);
        assert_abs_diff_eq!(h_term(ctx).eval_grid(100), 0.0, epsilon = 0.0);
    }

    #[test]
    fn catalog_names_are_unique() {
        let ctx = Ctx::with_default_policy(0.52);
        let names: Vec<&str> = all_terms(ctx).iter().map(|t| t.name).collect();
        let mut dedup = names.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(names.len(), dedup.len());
    }

    #[test]
    fn term_lookup() {
        let ctx = Ctx::with_default_policy(0.52);
        assert!(term_by_name(ctx, "U_C05").is_some());
        assert!(term_by_name(ctx, "V_C7").is_some());
        assert!(term_by_name(ctx, "BOGUS").is_none());
    }
}
