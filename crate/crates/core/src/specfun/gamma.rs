//! Gamma function via the Lanczos approximation (g = 607/128, 15 terms),
//! with reflection for arguments below 1/2.

use super::{SpecFunError, SpecialValue};

/// Lanczos g parameter.
const G: f64 = 607.0 / 128.0;

/// Godfrey's 15-term coefficient set for g = 607/128; relative error of the
/// rational part is a few ulps across the right half-plane.
const LANCZOS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// sin(πx) computed with argument reduction so large |x| keeps full accuracy.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    // r in [0, 2); reduce to [-1/2, 1/2] around the nearest integer.
    if r < 0.5 {
        (std::f64::consts::PI * r).sin()
    } else if r < 1.5 {
        (std::f64::consts::PI * (1.0 - r)).sin()
    } else {
        -(std::f64::consts::PI * (2.0 - r)).sin()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.5 && (x - x.round()).abs() < 1e-12 && x.round() <= 0.0
}

fn lanczos_sum(x: f64) -> f64 {
    // x >= 0.5 assumed; series in 1/(x + k).
    let mut s = LANCZOS[0];
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (x - 1.0 + k as f64);
    }
    s
}

fn gamma_positive(x: f64) -> f64 {
    // Γ(x) for x >= 0.5.
    let xm1 = x - 1.0;
    let t = xm1 + G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(xm1 + 0.5) * (-t).exp() * lanczos_sum(x)
}

/// Γ(x) for real x away from the poles at 0, -1, -2, ...
pub fn gamma_fn(x: f64) -> Result<SpecialValue, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::BadArgument(format!("gamma of non-finite {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::GammaPole(x));
    }
    let value = if x >= 0.5 {
        gamma_positive(x)
    } else {
        // Reflection: Γ(x) = π / (sin(πx) Γ(1-x)).
        std::f64::consts::PI / (sin_pi(x) * gamma_positive(1.0 - x))
    };
    if !value.is_finite() {
        return Err(SpecFunError::Overflow(format!("gamma({x})")));
    }
    // A few ulps from the rational part plus pole amplification near the axis.
    let dist = if x >= 0.5 { 1.0 } else { (x - x.round()).abs().min(1.0) };
    Ok(SpecialValue { value, est_error: 5e-15 * value.abs() / dist.max(1e-8) })
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<SpecialValue, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::BadArgument(format!("ln_gamma needs x > 0, got {x}")));
    }
    let xm1 = x - 1.0;
    let t = xm1 + G + 0.5;
    let value =
        0.5 * (2.0 * std::f64::consts::PI).ln() + (xm1 + 0.5) * t.ln() - t + lanczos_sum(x).ln();
    Ok(SpecialValue { value, est_error: 1e-14 * value.abs().max(1.0) })
}

/// 1/Γ(x), entire: returns 0 at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        1.0 / gamma_positive(x)
    } else {
        sin_pi(x) * gamma_positive(1.0 - x) / std::f64::consts::PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn integer_and_half_values() {
        assert!(rel(gamma_fn(1.0).unwrap().value, 1.0) < 1e-14);
        assert!(rel(gamma_fn(0.5).unwrap().value, std::f64::consts::PI.sqrt()) < 1e-14);
        assert!(rel(gamma_fn(5.0).unwrap().value, 24.0) < 1e-14);
    }

    #[test]
    fn recursion_from_half() {
        // Γ(7.5) by Γ(x+1) = xΓ(x) up from Γ(0.5).
        let mut expect = std::f64::consts::PI.sqrt();
        let mut x = 0.5;
        while x < 7.0 {
            expect *= x;
            x += 1.0;
        }
        assert!(rel(gamma_fn(7.5).unwrap().value, expect) < 1e-13);
    }

    #[test]
    fn recursion_grid_up_to_50() {
        // Relative error < 1e-12 over |x| <= 50, checked by functional equation.
        for i in 0..200 {
            let x = 0.5 + 0.2481 * i as f64 % 49.0;
            let g1 = gamma_fn(x).unwrap().value;
            let g2 = gamma_fn(x + 1.0).unwrap().value;
            assert!(rel(g2, x * g1) < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn negative_arguments_via_reflection() {
        // Γ(-0.5) = -2√π, Γ(-1.5) = 4√π/3.
        let sp = std::f64::consts::PI.sqrt();
        assert!(rel(gamma_fn(-0.5).unwrap().value, -2.0 * sp) < 1e-13);
        assert!(rel(gamma_fn(-1.5).unwrap().value, 4.0 * sp / 3.0) < 1e-13);
    }

    #[test]
    fn poles_are_errors_never_infinities() {
        for x in [0.0, -1.0, -2.0, -7.0] {
            assert!(matches!(gamma_fn(x), Err(SpecFunError::GammaPole(_))));
        }
    }

    #[test]
    fn rgamma_zero_at_poles_and_reciprocal_elsewhere() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!(rel(rgamma(2.5), 1.0 / gamma_fn(2.5).unwrap().value) < 1e-13);
        assert!(rel(rgamma(-0.5), 1.0 / gamma_fn(-0.5).unwrap().value) < 1e-13);
    }

    #[test]
    fn ln_gamma_consistency() {
        for x in [0.7, 1.3, 4.2, 17.0, 49.5] {
            let lg = ln_gamma(x).unwrap().value;
            let g = gamma_fn(x).unwrap().value;
            assert!((lg - g.ln()).abs() < 1e-12 * lg.abs().max(1.0), "x = {x}");
        }
        // Large argument where Γ itself would overflow.
        let lg = ln_gamma(200.0).unwrap().value;
        // Stirling check.
        let stirling = 199.5 * 200.0f64.ln() - 200.0 + 0.5 * (2.0 * std::f64::consts::PI).ln();
        assert!((lg - stirling).abs() / lg < 1e-3);
    }

    #[test]
    fn sin_pi_accuracy() {
        assert_eq!(sin_pi(1.0), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-15);
        assert!((sin_pi(-2.5) + 1.0).abs() < 1e-15);
        assert!((sin_pi(1e8 + 0.25) - (std::f64::consts::PI * 0.25).sin()).abs() < 1e-12);
    }
}
