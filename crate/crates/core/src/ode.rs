//! Adaptive integration of linear complex systems dC/dt = A(t)·C where
//! A(t) = A₀ + A₁/(νt).
//!
//! Everything runs in the substituted variable u = ln t, where
//! dC/du = t·A(t)·C = (e^u A₀ + A₁/ν)·C. The 1/t coefficient that is
//! pathological for fixed steps at t ~ 1e-5 becomes a constant in u, and the
//! Hamiltonian part grows as e^u, so step control automatically tracks the
//! oscillation period as it shrinks in lab time. The stepper is the
//! Dormand-Prince 5(4) pair with FSAL, PI step-size control and the standard
//! 5-coefficient dense interpolant evaluated at requested output times.

use crate::C64;

/// Integrator tolerances, window and output request.
#[derive(Debug, Clone)]
pub struct IntegrationSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// (t_init, t_final), both positive, ordered.
    pub t_span: (f64, f64),
    pub max_steps: usize,
    /// Output times, ascending, inside t_span (ends included).
    pub dense_samples: Vec<f64>,
}

impl IntegrationSpec {
    pub fn new(t_init: f64, t_final: f64) -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-11,
            t_span: (t_init, t_final),
            max_steps: 10_000_000,
            dense_samples: Vec::new(),
        }
    }

    /// Log-spaced output times across the whole span.
    pub fn with_log_samples(mut self, n: usize) -> Self {
        let (a, b) = self.t_span;
        let (la, lb) = (a.ln(), b.ln());
        self.dense_samples =
            (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect();
        // Guard the ends against rounding past the span.
        self.dense_samples[0] = a;
        *self.dense_samples.last_mut().unwrap() = b;
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OdeError {
    #[error("step size underflow at t = {t:.6e}")]
    StepUnderflow { t: f64 },
    #[error("max step count {max_steps} exceeded at t = {t:.6e}")]
    MaxSteps { t: f64, max_steps: usize },
    #[error("invalid integration spec: {0}")]
    BadSpec(String),
}

/// Work counters for a completed integration.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegrationStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evals: usize,
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Dense-output coefficients.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

struct Work {
    k: [Vec<C64>; 7],
    y_stage: Vec<C64>,
    tmp: Vec<C64>,
    cont: [Vec<C64>; 5],
}

impl Work {
    fn new(n: usize) -> Self {
        let z = vec![C64::new(0.0, 0.0); n];
        Self {
            k: std::array::from_fn(|_| z.clone()),
            y_stage: z.clone(),
            tmp: z.clone(),
            cont: std::array::from_fn(|_| z.clone()),
        }
    }
}

/// Integrate dC/dt = A(t)·C with `apply` computing A(t)·x into its output
/// buffer. Returns the state at each requested dense-sample time.
pub fn integrate<F>(
    mut apply: F,
    initial: &[C64],
    spec: &IntegrationSpec,
) -> Result<(Vec<(f64, Vec<C64>)>, IntegrationStats), OdeError>
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    let (t0, t1) = spec.t_span;
    if !(t0 > 0.0 && t1 > t0) {
        return Err(OdeError::BadSpec(format!("t_span ({t0}, {t1}) must be positive and ordered")));
    }
    if !(spec.rel_tol > 0.0 && spec.abs_tol > 0.0) {
        return Err(OdeError::BadSpec("tolerances must be positive".into()));
    }
    let eps = 1e-12 * (1.0 + t1.ln().abs().max(t0.ln().abs()));
    for w in spec.dense_samples.windows(2) {
        if w[1] < w[0] {
            return Err(OdeError::BadSpec("dense_samples must be ascending".into()));
        }
    }
    if let (Some(&first), Some(&last)) = (spec.dense_samples.first(), spec.dense_samples.last()) {
        if first.ln() < t0.ln() - eps || last.ln() > t1.ln() + eps {
            return Err(OdeError::BadSpec("dense_samples outside t_span".into()));
        }
    }

    let n = initial.len();
    let mut work = Work::new(n);
    let mut stats = IntegrationStats::default();

    // Right-hand side in u = ln t: f(u, y) = e^u · A(e^u) · y.
    let mut rhs = |u: f64, y: &[C64], out: &mut [C64], stats: &mut IntegrationStats| {
        let t = u.exp();
        apply(t, y, out);
        let tc = C64::new(t, 0.0);
        for v in out.iter_mut() {
            *v *= tc;
        }
        stats.evals += 1;
    };

    let u0 = t0.ln();
    let u1 = t1.ln();
    let mut u = u0;
    let mut y = initial.to_vec();
    let mut out: Vec<(f64, Vec<C64>)> = Vec::with_capacity(spec.dense_samples.len());
    let mut sample_iter = spec.dense_samples.iter().peekable();

    // Samples at (or numerically before) the initial time.
    while let Some(&&ts) = sample_iter.peek() {
        if ts.ln() <= u0 + eps {
            out.push((ts, y.clone()));
            sample_iter.next();
        } else {
            break;
        }
    }

    let mut k1_buf = vec![C64::new(0.0, 0.0); n];
    rhs(u, &y, &mut k1_buf, &mut stats);

    let sc = |yi: C64| spec.abs_tol + spec.rel_tol * yi.norm();
    // Initial step size: crude second-derivative probe, then clamped.
    let mut h = {
        let d0 = y.iter().map(|&v| (v.norm() / sc(v)).powi(2)).sum::<f64>().sqrt()
            / (n as f64).sqrt();
        let d1 = y
            .iter()
            .zip(k1_buf.iter())
            .map(|(&v, &f)| (f.norm() / sc(v)).powi(2))
            .sum::<f64>()
            .sqrt()
            / (n as f64).sqrt();
        let mut h0 = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * d0 / d1 };
        h0 = h0.min(u1 - u0);
        let mut y1: Vec<C64> = y
            .iter()
            .zip(k1_buf.iter())
            .map(|(&v, &f)| v + C64::new(h0, 0.0) * f)
            .collect();
        let mut f1 = vec![C64::new(0.0, 0.0); n];
        rhs(u + h0, &y1, &mut f1, &mut stats);
        let d2 = f1
            .iter()
            .zip(k1_buf.iter())
            .zip(y.iter())
            .map(|((&a, &b), &v)| ((a - b).norm() / sc(v)).powi(2))
            .sum::<f64>()
            .sqrt()
            / (n as f64).sqrt()
            / h0;
        let h1 = if d1.max(d2) < 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        y1.clear();
        (100.0 * h0).min(h1).min(u1 - u0)
    };

    work.k[0].copy_from_slice(&k1_buf);

    // PI controller state (Hairer's dopri5 defaults).
    const BETA: f64 = 0.04;
    const SAFE: f64 = 0.9;
    const FAC1: f64 = 0.2;
    const FAC2: f64 = 10.0;
    let expo1 = 0.2 - BETA * 0.75;
    let mut facold: f64 = 1e-4;

    let mut steps = 0usize;
    while u < u1 - eps {
        if steps >= spec.max_steps {
            return Err(OdeError::MaxSteps { t: u.exp(), max_steps: spec.max_steps });
        }
        steps += 1;
        if u + h > u1 {
            h = u1 - u;
        }
        if h < 1e-14 * u.abs().max(1.0) {
            return Err(OdeError::StepUnderflow { t: u.exp() });
        }
        let hc = |x: f64| C64::new(h * x, 0.0);

        // Stages 2..6.
        for i in 0..n {
            work.y_stage[i] = y[i] + hc(A21) * work.k[0][i];
        }
        {
            let (ks, rest) = work.k.split_at_mut(1);
            let _ = ks;
            rhs(u + C2 * h, &work.y_stage, &mut rest[0], &mut stats);
        }
        for i in 0..n {
            work.y_stage[i] = y[i] + hc(A31) * work.k[0][i] + hc(A32) * work.k[1][i];
        }
        {
            let (head, rest) = work.k.split_at_mut(2);
            let _ = head;
            rhs(u + C3 * h, &work.y_stage, &mut rest[0], &mut stats);
        }
        for i in 0..n {
            work.y_stage[i] =
                y[i] + hc(A41) * work.k[0][i] + hc(A42) * work.k[1][i] + hc(A43) * work.k[2][i];
        }
        {
            let (head, rest) = work.k.split_at_mut(3);
            let _ = head;
            rhs(u + C4 * h, &work.y_stage, &mut rest[0], &mut stats);
        }
        for i in 0..n {
            work.y_stage[i] = y[i]
                + hc(A51) * work.k[0][i]
                + hc(A52) * work.k[1][i]
                + hc(A53) * work.k[2][i]
                + hc(A54) * work.k[3][i];
        }
        {
            let (head, rest) = work.k.split_at_mut(4);
            let _ = head;
            rhs(u + C5 * h, &work.y_stage, &mut rest[0], &mut stats);
        }
        for i in 0..n {
            work.y_stage[i] = y[i]
                + hc(A61) * work.k[0][i]
                + hc(A62) * work.k[1][i]
                + hc(A63) * work.k[2][i]
                + hc(A64) * work.k[3][i]
                + hc(A65) * work.k[4][i];
        }
        {
            let (head, rest) = work.k.split_at_mut(5);
            let _ = head;
            rhs(u + h, &work.y_stage, &mut rest[0], &mut stats);
        }
        // 5th-order solution into tmp; k7 = f(u+h, y_new) (FSAL).
        for i in 0..n {
            work.tmp[i] = y[i]
                + hc(B1) * work.k[0][i]
                + hc(B3) * work.k[2][i]
                + hc(B4) * work.k[3][i]
                + hc(B5) * work.k[4][i]
                + hc(B6) * work.k[5][i];
        }
        {
            let (head, rest) = work.k.split_at_mut(6);
            let _ = head;
            rhs(u + h, &work.tmp, &mut rest[0], &mut stats);
        }

        // Embedded error estimate, component-wise mixed norm.
        let mut err: f64 = 0.0;
        for i in 0..n {
            let e = hc(E1) * work.k[0][i]
                + hc(E3) * work.k[2][i]
                + hc(E4) * work.k[3][i]
                + hc(E5) * work.k[4][i]
                + hc(E6) * work.k[5][i]
                + hc(E7) * work.k[6][i];
            let scale = spec.abs_tol + spec.rel_tol * y[i].norm().max(work.tmp[i].norm());
            err = err.max(e.norm() / scale);
        }

        let fac11 = err.max(1e-30).powf(expo1);
        if err <= 1.0 {
            // Accept. Prepare dense output over [u, u+h].
            stats.accepted += 1;
            let any_samples = sample_iter
                .peek()
                .map(|&&ts| ts.ln() <= u + h + eps)
                .unwrap_or(false);
            if any_samples {
                for i in 0..n {
                    let ydiff = work.tmp[i] - y[i];
                    let bspl = hc(1.0) * work.k[0][i] - ydiff;
                    work.cont[0][i] = y[i];
                    work.cont[1][i] = ydiff;
                    work.cont[2][i] = bspl;
                    work.cont[3][i] = ydiff - hc(1.0) * work.k[6][i] - bspl;
                    work.cont[4][i] = hc(D1) * work.k[0][i]
                        + hc(D3) * work.k[2][i]
                        + hc(D4) * work.k[3][i]
                        + hc(D5) * work.k[4][i]
                        + hc(D6) * work.k[5][i]
                        + hc(D7) * work.k[6][i];
                }
                while let Some(&&ts) = sample_iter.peek() {
                    let us = ts.ln();
                    if us > u + h + eps {
                        break;
                    }
                    let theta = ((us - u) / h).clamp(0.0, 1.0);
                    let th = C64::new(theta, 0.0);
                    let th1 = C64::new(1.0 - theta, 0.0);
                    let mut ys = vec![C64::new(0.0, 0.0); n];
                    for i in 0..n {
                        ys[i] = work.cont[0][i]
                            + th * (work.cont[1][i]
                                + th1 * (work.cont[2][i]
                                    + th * (work.cont[3][i] + th1 * work.cont[4][i])));
                    }
                    out.push((ts, ys));
                    sample_iter.next();
                }
            }
            u += h;
            y.copy_from_slice(&work.tmp);
            let k7 = work.k[6].clone();
            work.k[0].copy_from_slice(&k7);
            let fac = (fac11 / facold.powf(BETA)).max(1.0 / FAC2).min(1.0 / FAC1) / SAFE;
            facold = err.max(1e-4);
            h /= fac.max(1e-12);
        } else {
            stats.rejected += 1;
            h /= (fac11 / SAFE).min(1.0 / FAC1);
        }
    }

    // Any samples that numerically round past the end get the final state.
    for &ts in sample_iter {
        out.push((ts, y.clone()));
    }
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// n=1 c_z equation: dC/dt = -2/(νt) C, exact C(t) = C0 (t/t0)^(-2/ν).
    fn cz_rhs(nu: f64) -> impl FnMut(f64, &[C64], &mut [C64]) {
        move |t, x, out| {
            out[0] = c(-2.0 / (nu * t), 0.0) * x[0];
        }
    }

    #[test]
    fn power_law_over_seven_decades() {
        let nu = 6.0;
        let spec = IntegrationSpec::new(1e-5, 1e2).with_log_samples(30);
        let (samples, stats) = integrate(cz_rhs(nu), &[c(1.0, 0.0)], &spec).unwrap();
        for (t, v) in &samples {
            let exact = (t / 1e-5_f64).powf(-2.0 / nu);
            assert!(
                (v[0].re - exact).abs() <= 20.0 * spec.rel_tol * exact,
                "t={t}: got {} want {exact}",
                v[0].re
            );
            assert!(v[0].im.abs() < 1e-12);
        }
        // Log-grid efficiency: far fewer than 1e4 accepted steps.
        assert!(stats.accepted < 10_000, "accepted = {}", stats.accepted);
    }

    #[test]
    fn zero_generator_is_constant() {
        let spec = IntegrationSpec::new(0.5, 50.0).with_log_samples(9);
        let (samples, _) = integrate(
            |_t, _x, out| out.fill(c(0.0, 0.0)),
            &[c(1.5, -0.5), c(0.0, 2.0)],
            &spec,
        )
        .unwrap();
        for (_, v) in &samples {
            assert_eq!(v[0], c(1.5, -0.5));
            assert_eq!(v[1], c(0.0, 2.0));
        }
    }

    #[test]
    fn oscillator_magnitude_and_phase() {
        // dC/dt = i ω C with ω = 2ε; run ~64 periods.
        let omega = 2.0 * 3.0;
        let t0 = 1.0;
        let t1 = t0 + 64.0 * std::f64::consts::TAU / omega;
        let spec = IntegrationSpec::new(t0, t1).with_log_samples(5);
        let (samples, _) = integrate(
            move |_t, x, out| {
                out[0] = c(0.0, omega) * x[0];
            },
            &[c(1.0, 0.0)],
            &spec,
        )
        .unwrap();
        let (tf, vf) = samples.last().unwrap();
        // Magnitude drift accumulates roughly one local tolerance per period.
        assert!((vf[0].norm() - 1.0).abs() < 64.0 * 10.0 * spec.rel_tol);
        let exact_phase = omega * (tf - t0);
        let got_phase = vf[0].arg();
        let mut dphi = (got_phase - exact_phase) % std::f64::consts::TAU;
        if dphi > std::f64::consts::PI {
            dphi -= std::f64::consts::TAU;
        }
        if dphi < -std::f64::consts::PI {
            dphi += std::f64::consts::TAU;
        }
        assert!(dphi.abs() / 64.0 < 1e-6, "phase error per period {}", dphi.abs() / 64.0);
    }

    #[test]
    fn tighter_tolerance_reduces_error() {
        let nu = 4.0;
        let run = |rtol: f64| {
            let mut spec = IntegrationSpec::new(1e-4, 1e2);
            spec.rel_tol = rtol;
            spec.abs_tol = rtol * 1e-2;
            spec.dense_samples = vec![1e2];
            let (samples, _) = integrate(cz_rhs(nu), &[c(1.0, 0.0)], &spec).unwrap();
            let exact = (1e2f64 / 1e-4).powf(-2.0 / nu);
            (samples[0].1[0].re - exact).abs() / exact
        };
        let e1 = run(1e-6);
        let e2 = run(1e-8);
        let e3 = run(1e-10);
        assert!(e2 < e1 / 5.0, "e1={e1:.3e} e2={e2:.3e}");
        assert!(e3 < e2 / 5.0, "e2={e2:.3e} e3={e3:.3e}");
    }

    #[test]
    fn linearity_in_initial_conditions() {
        let nu = 2.5;
        let eps = 1.3;
        let mut gen = move |t: f64, x: &[C64], out: &mut [C64]| {
            // 2x2: diagonal phase + ramped mixing.
            let g = 1.0 / (nu * t);
            out[0] = c(0.0, 2.0 * eps) * x[0] - c(g, 0.0) * x[1];
            out[1] = -c(g, 0.0) * x[0] - c(0.0, 2.0 * eps) * x[1];
        };
        let spec = IntegrationSpec::new(1e-3, 20.0).with_log_samples(7);
        let y1 = [c(1.0, 0.0), c(0.0, 0.0)];
        let y2 = [c(0.0, 0.0), c(1.0, 0.0)];
        let (alpha, beta) = (c(0.7, -0.2), c(-1.1, 0.4));
        let combo: Vec<C64> = (0..2).map(|i| alpha * y1[i] + beta * y2[i]).collect();
        let (s1, _) = integrate(&mut gen, &y1, &spec).unwrap();
        let (s2, _) = integrate(&mut gen, &y2, &spec).unwrap();
        let (sc_, _) = integrate(&mut gen, &combo, &spec).unwrap();
        for ((a, b), combined) in s1.iter().zip(s2.iter()).zip(sc_.iter()) {
            for i in 0..2 {
                let lin = alpha * a.1[i] + beta * b.1[i];
                assert!((lin - combined.1[i]).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn reports_failing_time_on_max_steps() {
        let mut spec = IntegrationSpec::new(1.0, 1e3);
        spec.max_steps = 3;
        let err = integrate(
            |_t, x, out| {
                out[0] = c(0.0, 50.0) * x[0];
            },
            &[c(1.0, 0.0)],
            &spec,
        )
        .unwrap_err();
        match err {
            OdeError::MaxSteps { t, .. } => assert!(t >= 1.0 && t <= 1e3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_sample_ranges() {
        let mut spec = IntegrationSpec::new(1.0, 10.0);
        spec.dense_samples = vec![0.5];
        assert!(matches!(
            integrate(|_, _, out| out.fill(c(0.0, 0.0)), &[c(1.0, 0.0)], &spec),
            Err(OdeError::BadSpec(_))
        ));
    }
}
