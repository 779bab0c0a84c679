//! Sieve parameters: the Type-II width `gamma(theta)`, the interval index,
//! the admissible sieving limit `nu(alpha)` and the reflection point
//! `alpha_star(alpha)`.
//!
//! All functions operate on interval exponents `theta` in `[0.52, 0.525)`
//! (the supported window) and first-variable exponents `alpha` in `[0, 1/2]`.

/// Maximum index scanned when maximising `gamma_g` over `g`.
///
/// The maximiser is `g = 5` or `g = 6` throughout the supported window;
/// 64 leaves a wide safety margin while staying cheap.
pub const G_MAX: u32 = 64;

/// Inclusive lower end of the supported `theta` window.
pub const THETA_MIN: f64 = 0.52;
/// Exclusive upper end of the supported `theta` window.
pub const THETA_MAX: f64 = 0.525;

/// Returns true when `theta` lies in the supported window.
pub fn theta_supported(theta: f64) -> bool {
    (THETA_MIN..THETA_MAX).contains(&theta)
}

/// The candidate width for a single index `g`.
pub fn gamma_g(theta: f64, g: u32) -> f64 {
    let g = f64::from(g);
    let a = 4.0 * theta - 2.0;
    let b = ((8.0 * g - 4.0) * theta - (4.0 * g - 3.0)) / (4.0 * g - 1.0);
    let c = (24.0 * g * theta - (12.0 * g + 1.0)) / (4.0 * g - 1.0);
    a.min(b).min(c)
}

/// The Type-II information width `gamma(theta) = max_g gamma_g(theta)`.
pub fn gamma(theta: f64) -> f64 {
    (1..=G_MAX)
        .map(|g| gamma_g(theta, g))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Index `h` of the dyadic-style interval containing `alpha`:
/// `I_h = [1/2 - 2h(theta - 1/2), 1/2 - (2h-2)(theta - 1/2))`, clamped to 1.
pub fn interval_index(theta: f64, alpha: f64) -> u32 {
    if alpha >= 0.5 {
        return 1;
    }
    let d = theta - 0.5;
    let h = ((0.5 - alpha) / (2.0 * d)).ceil();
    (h as u32).max(1)
}

/// The admissible sieving limit for the second variable once the first
/// variable has exponent `alpha`.
pub fn nu(theta: f64, alpha: f64) -> f64 {
    let h = f64::from(interval_index(theta, alpha));
    (2.0 * (theta - alpha) / (2.0 * h - 1.0)).min(gamma(theta))
}

/// The reflection point `alpha_star(alpha)` used in the two-sided
/// decomposition conditions.
pub fn alpha_star(theta: f64, alpha: f64) -> f64 {
    let h = f64::from(interval_index(theta, alpha));
    let left = (2.0 * h * (1.0 - theta) - alpha) / (2.0 * h - 1.0);
    let right = (2.0 * (h - 1.0) * theta + alpha) / (2.0 * h - 1.0);
    left.max(right)
}

/// Shorthand for the minimal sieving exponent `2*theta - 1`.
pub fn nu_min(theta: f64) -> f64 {
    2.0 * theta - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gamma_matches_piecewise_closed_form() {
        // The maximised width follows a four-branch rational formula over
        // the supported window; check a dense grid against it.
        let branch = |theta: f64| -> f64 {
            if theta < 25.0 / 48.0 {
                4.0 * theta - 2.0
            } else if theta < 251.0 / 481.0 {
                (44.0 * theta - 21.0) / 23.0
            } else if theta < 23.0 / 44.0 {
                (120.0 * theta - 61.0) / 19.0
            } else {
                4.0 * theta - 2.0
            }
        };
        for i in 0..=50 {
            let theta = 0.52 + 0.005 * f64::from(i) / 50.0 * 0.999;
            assert_abs_diff_eq!(gamma(theta), branch(theta), epsilon = 1e-12);
        }
    }

    #[test]
    fn gamma_at_endpoints() {
        assert_abs_diff_eq!(gamma(0.52), 0.08, epsilon = 1e-12);
    }

    #[test]
    fn nu_range_and_plateau() {
        // nu is the full width 0.08 on the first interval and never
        // falls below 2*(theta - 1/2)*... ~ 0.0416 at theta = 0.52.
        let theta = 0.52;
        assert_abs_diff_eq!(nu(theta, 0.47), 0.08, epsilon = 1e-12);
        assert_abs_diff_eq!(nu(theta, 0.46), 0.08, epsilon = 1e-12);
        let lo = nu(theta, 0.0);
        assert!(lo > 0.0416 - 1e-9 && lo < 0.08 + 1e-12);
    }

    #[test]
    fn alpha_star_at_zero() {
        assert_abs_diff_eq!(alpha_star(0.52, 0.0), 0.4992, epsilon = 1e-12);
    }

    #[test]
    fn interval_index_basics() {
        assert_eq!(interval_index(0.52, 0.5), 1);
        assert_eq!(interval_index(0.52, 0.46), 1);
        assert_eq!(interval_index(0.52, 0.459), 2);
    }
}
