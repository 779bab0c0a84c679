//! The Buchstab function `omega(u)` and the two-sided envelopes
//! `omega_lower(u)` / `omega_upper(u)` used to bound loss integrals,
//! plus the crude bound `omega_simple(u)` for high-dimensional terms.
//!
//! On `[1, 4)` the envelopes agree with the exact delay-differential
//! solution (piecewise closed form); for `u >= 4` they are the constants
//! 0.5612 and 0.5617 bracketing the limit value.

/// Lower envelope constant for `u >= 4`.
pub const OMEGA_LOWER_TAIL: f64 = 0.5612;
/// Upper envelope constant for `u >= 4`.
pub const OMEGA_UPPER_TAIL: f64 = 0.5617;
/// Constant in the crude bound `max(1/u, 0.5672)`.
pub const OMEGA_SIMPLE_TAIL: f64 = 0.5672;

/// `int_2^{u-1} ln(t-1)/t dt` for `u` in `[3, 4)`, via composite Simpson.
fn log_integral(u: f64) -> f64 {
    let (a, b) = (2.0, u - 1.0);
    if b <= a {
        return 0.0;
    }
    let n = 64;
    let h = (b - a) / f64::from(n);
    let f = |t: f64| (t - 1.0).ln() / t;
    let mut s = 0.0;
    for i in 0..n {
        let x0 = a + f64::from(i) * h;
        let x1 = x0 + h;
        s += (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1)) * h / 6.0;
    }
    s
}

fn envelope(u: f64, tail: f64) -> f64 {
    if u < 1.0 {
        0.0
    } else if u < 2.0 {
        1.0 / u
    } else if u < 3.0 {
        (1.0 + (u - 1.0).ln()) / u
    } else if u < 4.0 {
        (1.0 + (u - 1.0).ln() + log_integral(u)) / u
    } else {
        tail
    }
}

/// Lower envelope of the Buchstab function.
pub fn omega_lower(u: f64) -> f64 {
    envelope(u, OMEGA_LOWER_TAIL)
}

/// Upper envelope of the Buchstab function.
pub fn omega_upper(u: f64) -> f64 {
    envelope(u, OMEGA_UPPER_TAIL)
}

/// Crude upper bound `max(1/u, 0.5672)`, cheap enough for
/// high-dimensional integrands.
pub fn omega_simple(u: f64) -> f64 {
    if u > 0.0 {
        (1.0 / u).max(OMEGA_SIMPLE_TAIL)
    } else {
        OMEGA_SIMPLE_TAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exact_values_on_first_ranges() {
        assert_abs_diff_eq!(omega_lower(2.0), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(
            omega_lower(3.0),
            (1.0 + 2.0f64.ln()) / 3.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(omega_upper(1.5), 1.0 / 1.5, epsilon = 1e-12);
    }

    #[test]
    fn continuity_at_breakpoints() {
        for eps in [1e-9, 1e-10] {
            assert_abs_diff_eq!(omega_lower(2.0 - eps), omega_lower(2.0 + eps), epsilon = 1e-6);
            assert_abs_diff_eq!(omega_lower(3.0 - eps), omega_lower(3.0 + eps), epsilon = 1e-6);
        }
    }

    #[test]
    fn envelopes_are_ordered() {
        for i in 0..400 {
            let u = 1.0 + f64::from(i) * 0.01;
            assert!(omega_lower(u) <= omega_upper(u) + 1e-15);
            assert!(omega_upper(u) <= omega_simple(u) + 1e-12);
        }
    }

    #[test]
    fn tail_constants() {
        assert_abs_diff_eq!(omega_lower(4.0), 0.5612, epsilon = 0.0);
        assert_abs_diff_eq!(omega_upper(5.7), 0.5617, epsilon = 0.0);
        assert_abs_diff_eq!(omega_simple(10.0), 0.5672, epsilon = 0.0);
    }

    #[test]
    fn value_near_3_5() {
        // Independent check of the integral piece: at u = 3.5,
        // omega(u)*u = 1 + ln 2.5 + int_2^{2.5} ln(t-1)/t dt.
        let by_quad = {
            // very fine trapezoid
            let n = 200_000;
            let (a, b) = (2.0, 2.5);
            let h: f64 = (b - a) / n as f64;
            let f = |t: f64| (t - 1.0f64).ln() / t;
            let mut s = 0.5 * (f(a) + f(b));
            for i in 1..n {
                s += f(a + h * i as f64);
            }
            s * h
        };
        let expect = (1.0 + 2.5f64.ln() + by_quad) / 3.5;
        assert_abs_diff_eq!(omega_lower(3.5), expect, epsilon = 1e-9);
    }
}
