//! Closed-form correlator evolution for n ≤ 2, the exact late-time
//! asymptotics of the two-point channels (including both competing c_zz
//! exponents), and the decay-exponent predictor
//!     ν ≥ 2:  α = (n + N₁)/ν,
//!     ν ≤ 2:  α = k(1 − 2/ν) + (n + N₁)/ν,   k = ⌊N₁/2⌋.
//!
//! The two-point generator block-diagonalizes by J^z into 1-1-3-2-2-sized
//! blocks (in slot order). Sectors ±2 integrate to an exponential times a
//! power; sectors ±1 reduce to Bessel J/Y of order ±1/2 − 2/ν in the
//! rescaled variables r = (ε_p+ε_q)/(ε_q−ε_p), τ = (ε_q−ε_p)t; sector 0 is
//! spanned by three ₁F₂ Frobenius modes. Closed forms are refused at
//! resonant ν (hypergeometric parameter poles or vanishing coefficient
//! denominators) with an explicit error directing to the numeric route —
//! the limits there are removable but delicate, and the integrator is the
//! safer oracle.
//!
//! Sector internals work throughout in (r, τ); lab time enters only at the
//! module boundary.

use crate::rg::{sector_slots, RgError};
use crate::specfun::{bessel_jy_full, gamma_fn, hyp1f2, rgamma, sin_pi, SpecFunError};
use crate::{C64, RampConfig};

#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error("resonant nu = {nu}: {detail}; use the numeric route")]
    ResonantNu { nu: f64, detail: String },
    #[error("singular boundary system at tau0 = {tau0:.3e}")]
    SingularBoundary { tau0: f64 },
    #[error("no temporal transition for n1 = {n1} (single branch, k = 0)")]
    NoTransition { n1: usize },
    #[error("special function failure: {0}")]
    SpecFun(SpecFunError),
    #[error(transparent)]
    Rg(#[from] RgError),
    #[error("bad input: {0}")]
    BadInput(String),
}

impl From<SpecFunError> for ExactError {
    fn from(e: SpecFunError) -> Self {
        match e {
            SpecFunError::ParamPole { .. } | SpecFunError::GammaPole(_) => {
                ExactError::ResonantNu { nu: f64::NAN, detail: e.to_string() }
            }
            other => ExactError::SpecFun(other),
        }
    }
}

/// Predicted decay exponent for an (n, N₁) correlator at ramp rate ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPrediction {
    pub n: usize,
    pub n1: usize,
    pub nu: f64,
    /// k = ⌊N₁/2⌋, the pair count driving the ν ≤ 2 branch.
    pub k: usize,
    pub alpha: f64,
}

/// The piecewise exponent law; the branches agree at ν = 2.
pub fn predict_alpha(n: usize, n1: usize, nu: f64) -> ExponentPrediction {
    assert!(n1 <= n, "n1 = {n1} exceeds n = {n}");
    assert!(nu > 0.0, "nu must be positive");
    let k = n1 / 2;
    let base = (n + n1) as f64 / nu;
    let alpha = if nu >= 2.0 { base } else { k as f64 * (1.0 - 2.0 / nu) + base };
    ExponentPrediction { n, n1, nu, k, alpha }
}

/// One-sided dα/dν at ν = 2: ((2k − n − N₁)/4, −(n + N₁)/4).
pub fn alpha_derivative_jump(n: usize, n1: usize) -> Result<(f64, f64), ExactError> {
    if n1 < 2 {
        return Err(ExactError::NoTransition { n1 });
    }
    let k = (n1 / 2) as f64;
    let s = (n + n1) as f64;
    Ok(((2.0 * k - s) / 4.0, -s / 4.0))
}

/// n = 1 closed form: amplitudes at slots (+1, 0, -1), i.e.
/// (∝c_-, c_z, ∝c_+):
///   a_±1(t) = a_±1(t0) e^(∓2iε(t-t0)) (t/t0)^(-1/ν),
///   a_0(t)  = a_0(t0) (t/t0)^(-2/ν).
pub fn solve_n1(
    config: &RampConfig,
    site: usize,
    initial: &[C64; 3],
    times: &[f64],
) -> Result<Vec<(f64, [C64; 3])>, ExactError> {
    if site >= config.n_sites() {
        return Err(ExactError::BadInput(format!("site {site} out of range")));
    }
    let eps = config.epsilons[site];
    let t0 = config.t_init;
    let out = times
        .iter()
        .map(|&t| {
            let pw1 = (t / t0).powf(-1.0 / config.nu);
            let pw2 = (t / t0).powf(-2.0 / config.nu);
            let phase = 2.0 * eps * (t - t0);
            (
                t,
                [
                    initial[0] * C64::from_polar(pw1, -phase),
                    initial[1] * pw2,
                    initial[2] * C64::from_polar(pw1, phase),
                ],
            )
        })
        .collect();
    Ok(out)
}

/// Rescaled two-point variables r = (ε_p+ε_q)/(ε_q−ε_p), τ = (ε_q−ε_p)·t.
pub fn rescale(config: &RampConfig, sites: (usize, usize)) -> Result<(f64, f64), ExactError> {
    let (p, q) = sites;
    if p >= config.n_sites() || q >= config.n_sites() || p == q {
        return Err(ExactError::BadInput(format!("bad site pair ({p}, {q})")));
    }
    let (ep, eq) = (config.epsilons[p.min(q)], config.epsilons[p.max(q)]);
    Ok(((ep + eq) / (eq - ep), eq - ep))
}

// -- sector 0 Frobenius modes --------------------------------------------

/// Base ₁F₂ parameters of the three sector-0 modes; the j-th coefficient
/// function of each mode uses the shifted triple (a+j; b+j, c+j).
fn mode_params(nu: f64, mode: usize) -> (f64, f64, f64) {
    match mode {
        0 => ((nu + 2.0) / nu, (3.0 * nu + 2.0) / (2.0 * nu), (2.0 * nu + 3.0) / nu),
        1 => (-1.0 / nu, (nu - 4.0) / (2.0 * nu), -3.0 / nu),
        2 => ((nu + 2.0) / (2.0 * nu), (nu - 2.0) / (2.0 * nu), (3.0 * nu + 4.0) / (2.0 * nu)),
        _ => unreachable!(),
    }
}

/// Leading τ-power of each mode.
fn mode_power(nu: f64, mode: usize) -> f64 {
    match mode {
        0 => 2.0,
        1 => -6.0 / nu,
        2 => 1.0 - 2.0 / nu,
        _ => unreachable!(),
    }
}

fn shifted_f(nu: f64, mode: usize, shift: usize, tau: f64) -> Result<f64, ExactError> {
    let (a, b, c) = mode_params(nu, mode);
    let j = shift as f64;
    hyp1f2(a + j, b + j, c + j, -tau * tau).map(|v| v.value).map_err(|e| match e {
        SpecFunError::ParamPole { name, value } => ExactError::ResonantNu {
            nu,
            detail: format!("sector-0 mode {mode} shift {shift}: parameter {name} = {value}"),
        },
        other => other.into(),
    })
}

fn check_denominators(nu: f64, denoms: &[(&str, f64)]) -> Result<(), ExactError> {
    for (what, d) in denoms {
        if d.abs() < 1e-9 {
            return Err(ExactError::ResonantNu {
                nu,
                detail: format!("vanishing denominator {what}"),
            });
        }
    }
    Ok(())
}

/// (c1, c2, c3) of one Frobenius mode at τ; the general sector-0 solution is
/// Σ_m k_m · mode_m(τ).
pub(crate) fn sector0_mode(nu: f64, mode: usize, tau: f64) -> Result<[C64; 3], ExactError> {
    let i = C64::new(0.0, 1.0);
    let s3 = 3.0f64.sqrt();
    let s2 = std::f64::consts::SQRT_2;
    let t2 = tau * tau;
    match mode {
        0 => {
            check_denominators(
                nu,
                &[
                    ("(3+2nu)(2+3nu)", (3.0 + 2.0 * nu) * (2.0 + 3.0 * nu)),
                    ("(2nu+3)(3nu+2)(5nu+2)", (2.0 * nu + 3.0) * (3.0 * nu + 2.0) * (5.0 * nu + 2.0)),
                ],
            )?;
            let f0 = shifted_f(nu, 0, 0, tau)?;
            let f1 = shifted_f(nu, 0, 1, tau)?;
            let f2 = shifted_f(nu, 0, 2, tau)?;
            let c1 = C64::new(t2 * f0, 0.0);
            // The τ²F₁ coefficient is 2ν²(ν+2)/((3+2ν)(2+3ν)): it follows
            // from c₁ and the component equations via the contiguous
            // derivative identity, and the numeric oracle confirms it.
            let c2 = i * (s3 * tau / nu)
                * (2.0 * nu * nu * (nu + 2.0) * t2 / ((3.0 + 2.0 * nu) * (2.0 + 3.0 * nu)) * f1
                    - (3.0 + nu) * f0);
            let c3 = C64::new(
                (2.0 * nu * nu * t2 + 3.0 * (nu + 2.0) * (nu + 3.0)) / (2.0 * s2 * nu * nu) * f0
                    - 3.0 * (nu + 2.0) * (5.0 * nu + 8.0) * t2
                        / (s2 * (2.0 * nu + 3.0) * (3.0 * nu + 2.0))
                        * f1
                    + 4.0 * s2 * nu * nu * (nu + 2.0) * t2 * t2
                        / ((2.0 * nu + 3.0) * (3.0 * nu + 2.0) * (5.0 * nu + 2.0))
                        * f2,
                0.0,
            );
            Ok([c1, c2, c3])
        }
        1 => {
            check_denominators(
                nu,
                &[
                    ("3(nu-4)", 3.0 * (nu - 4.0)),
                    ("(nu-4)(nu-3)(3nu-4)", (nu - 4.0) * (nu - 3.0) * (3.0 * nu - 4.0)),
                ],
            )?;
            let pw = tau.powf(-6.0 / nu);
            let f0 = shifted_f(nu, 1, 0, tau)?;
            let f1 = shifted_f(nu, 1, 1, tau)?;
            let c1 = C64::new(pw * f0, 0.0);
            let c2 = i * (2.0 * s3 * nu / (3.0 * nu - 12.0)) * tau * pw * f1;
            let coef2 = 4.0 * (nu - 1.0) * nu * nu / ((nu - 4.0) * (nu - 3.0) * (3.0 * nu - 4.0));
            let f2 = if coef2 == 0.0 { 0.0 } else { shifted_f(nu, 1, 2, tau)? };
            let c3 = C64::new(pw / s2 * (f0 - f1 + coef2 * t2 * f2), 0.0);
            Ok([c1, c2, c3])
        }
        2 => {
            check_denominators(
                nu,
                &[
                    ("(nu-2)(3nu+4)", (nu - 2.0) * (3.0 * nu + 4.0)),
                    (
                        "(nu-2)(3nu-2)(3nu+4)(5nu+4)",
                        (nu - 2.0) * (3.0 * nu - 2.0) * (3.0 * nu + 4.0) * (5.0 * nu + 4.0),
                    ),
                ],
            )?;
            let pw = tau.powf(1.0 - 2.0 / nu);
            let f0 = shifted_f(nu, 2, 0, tau)?;
            let f1 = shifted_f(nu, 2, 1, tau)?;
            let f2 = shifted_f(nu, 2, 2, tau)?;
            let c1 = C64::new(pw * f0, 0.0);
            let c2 = -i * (s3 * tau.powf(-2.0 / nu) / (2.0 * nu))
                * ((4.0 + nu) * f0
                    - 4.0 * nu * nu * (2.0 + nu) * t2 / ((nu - 2.0) * (3.0 * nu + 4.0)) * f1);
            // The F₁ coefficient is -3(ν+2)/(ν-2): eliminating c₃ from the
            // component equations fixes the sign, and the numeric oracle
            // agrees.
            let c3 = C64::new(
                pw / s2
                    * (f0
                        - 3.0 * (nu + 2.0) / (nu - 2.0) * f1
                        + 12.0 * nu * nu * (nu + 2.0) * (3.0 * nu + 2.0) * t2
                            / ((nu - 2.0)
                                * (3.0 * nu - 2.0)
                                * (3.0 * nu + 4.0)
                                * (5.0 * nu + 4.0))
                            * f2),
                0.0,
            );
            Ok([c1, c2, c3])
        }
        _ => unreachable!(),
    }
}

/// Rotation from sector-0 slot amplitudes (A1, A2, A3) at slots
/// (|+1,-1⟩, |0,0⟩, |-1,+1⟩) to the (c1, c2, c3) mode space. Orthogonal;
/// its conjugate transposes the generator into the displayed tridiagonal
/// form with diagonal (-6g, -2g, 0).
const SECTOR0_ROT: [[f64; 3]; 3] = [
    // c1 = -(A1 + 2 A2 + A3)/√6
    [-0.4082482904638630, -0.8164965809277260, -0.4082482904638630],
    // c2 = (A3 - A1)/√2
    [-0.7071067811865476, 0.0, 0.7071067811865476],
    // c3 = (A1 - A2 + A3)/√3
    [0.5773502691896258, -0.5773502691896258, 0.5773502691896258],
];

pub(crate) fn rot_to_modes(a: &[C64; 3]) -> [C64; 3] {
    std::array::from_fn(|r| {
        (0..3).map(|c| a[c] * SECTOR0_ROT[r][c]).sum()
    })
}

pub(crate) fn rot_to_slots(c: &[C64; 3]) -> [C64; 3] {
    std::array::from_fn(|r| {
        (0..3).map(|m| c[m] * SECTOR0_ROT[m][r]).sum()
    })
}

/// Complex coefficients fixing a sector's closed form from its boundary
/// data; `k3` is zero for the two-dimensional sectors.
#[derive(Debug, Clone, Copy)]
pub struct SectorBoundary {
    pub k1: C64,
    pub k2: C64,
    pub k3: C64,
    pub tau0: f64,
}

/// Solve a small column-equilibrated complex linear system (n ≤ 3).
fn solve_small(a: &mut [Vec<C64>], b: &mut [C64]) -> Result<Vec<C64>, ExactError> {
    let n = b.len();
    // Column scaling: the Frobenius modes differ by enormous powers of τ0.
    let mut scale = vec![0.0f64; n];
    for (j, s) in scale.iter_mut().enumerate() {
        *s = (0..n).map(|r| a[r][j].norm()).fold(0.0, f64::max);
        if *s == 0.0 {
            return Err(ExactError::SingularBoundary { tau0: f64::NAN });
        }
        for r in 0..n {
            a[r][j] /= *s;
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let (piv, piv_norm) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if piv_norm < 1e-14 {
            return Err(ExactError::SingularBoundary { tau0: f64::NAN });
        }
        a.swap(col, piv);
        b.swap(col, piv);
        perm.swap(col, piv);
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            for c2 in col..n {
                let v = a[col][c2];
                a[r][c2] -= f * v;
            }
            let bv = b[col];
            b[r] -= f * bv;
        }
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for c2 in (col + 1)..n {
            acc -= a[col][c2] * x[c2];
        }
        x[col] = acc / a[col][col];
    }
    for (j, xv) in x.iter_mut().enumerate() {
        *xv /= scale[j];
    }
    Ok(x)
}

/// Boundary coefficients of the sector-0 closed form from slot amplitudes at
/// τ0.
pub fn sector0_boundary(
    nu: f64,
    initial: &[C64; 3],
    tau0: f64,
) -> Result<SectorBoundary, ExactError> {
    let c_target = rot_to_modes(initial);
    let m0 = sector0_mode(nu, 0, tau0)?;
    let m1 = sector0_mode(nu, 1, tau0)?;
    let m2 = sector0_mode(nu, 2, tau0)?;
    let mut a: Vec<Vec<C64>> =
        (0..3).map(|r| vec![m0[r], m1[r], m2[r]]).collect();
    let mut b = c_target.to_vec();
    let k = solve_small(&mut a, &mut b).map_err(|e| match e {
        ExactError::SingularBoundary { .. } => ExactError::SingularBoundary { tau0 },
        other => other,
    })?;
    Ok(SectorBoundary { k1: k[0], k2: k[1], k3: k[2], tau0 })
}

/// Boundary coefficients of a ±1 sector. `upper` selects the c_{z+}/c_{+z}
/// family (J^z = -1); lower is the conjugate family (J^z = +1).
pub fn sector1_boundary(
    nu: f64,
    r: f64,
    upper: bool,
    initial_u: &[C64; 2],
    tau0: f64,
) -> Result<SectorBoundary, ExactError> {
    // Row r is the (J, Y)-mode pair of component u_{r+1}.
    let [u1, u2] = sector1_basis(nu, r, upper, tau0)?;
    let mut a: Vec<Vec<C64>> = vec![vec![u1[0], u1[1]], vec![u2[0], u2[1]]];
    let mut b = initial_u.to_vec();
    let k = solve_small(&mut a, &mut b).map_err(|e| match e {
        ExactError::SingularBoundary { .. } => ExactError::SingularBoundary { tau0 },
        other => other,
    })?;
    Ok(SectorBoundary { k1: k[0], k2: k[1], k3: C64::new(0.0, 0.0), tau0 })
}

/// The two fundamental (u1, u2) solutions of a ±1 sector at τ: column j is
/// the mode multiplying k_{j+1}:
///   u1 = ∓i e^(±irτ) τ^(1/2-3/ν) F_a(τ),
///   u2 =    e^(±irτ) τ^(1/2-3/ν) F_b(τ),   a = -1/2-2/ν, b = a+1.
///
/// The first pair is (F_a, F_b) = (J_a, J_b). For non-integer order the
/// second is (J_{-a}, -J_{-b}) — at small τ, Y_a of negative order is
/// numerically parallel to J_a (Y_a ≈ cot(aπ)J_a up to a τ^{-a} tail), so a
/// (J, Y) boundary system there loses every digit to cancellation, while
/// J_{-a} scales as τ^{-a} and stays independent. Near-integer orders fall
/// back to (Y_a, Y_b), where the scale separation does the same job.
fn sector1_basis(nu: f64, r: f64, upper: bool, tau: f64) -> Result<[[C64; 2]; 2], ExactError> {
    let order_a = -0.5 - 2.0 / nu;
    let order_b = 0.5 - 2.0 / nu;
    let ba = bessel_jy_full(order_a, tau).map_err(ExactError::from)?;
    let bb = bessel_jy_full(order_b, tau).map_err(ExactError::from)?;
    let integer_order = (order_a - order_a.round()).abs() < 1e-6;
    let (f2a, f2b) = if integer_order {
        (ba.y, bb.y)
    } else {
        let ja = bessel_jy_full(-order_a, tau).map_err(ExactError::from)?.j;
        let jb = bessel_jy_full(-order_b, tau).map_err(ExactError::from)?.j;
        (ja, -jb)
    };
    let pw = tau.powf(0.5 - 3.0 / nu);
    let sgn = if upper { 1.0 } else { -1.0 };
    let carrier = C64::from_polar(pw, sgn * r * tau);
    let i = C64::new(0.0, 1.0);
    Ok([
        [-sgn * i * carrier * ba.j, -sgn * i * carrier * f2a],
        [carrier * bb.j, carrier * f2b],
    ])
}

/// Exact sector trajectories at `times` (lab time), given lab-frame slot
/// amplitudes at t_init. Slot order matches [`sector_slots`].
pub fn solve_n2_sector(
    config: &RampConfig,
    sites: (usize, usize),
    jz: i64,
    initial: &[C64],
    times: &[f64],
) -> Result<Vec<(f64, Vec<C64>)>, ExactError> {
    let (r, delta) = rescale(config, sites)?;
    let eps_sum = r * delta;
    let t0 = config.t_init;
    let tau0 = delta * t0;
    let expected_dim = sector_slots(2, jz).len();
    if initial.len() != expected_dim {
        return Err(ExactError::BadInput(format!(
            "sector {jz} needs {expected_dim} amplitudes, got {}",
            initial.len()
        )));
    }
    match jz {
        2 | -2 => {
            // a(t) = a(t0) e^(∓2i(ε_p+ε_q)(t-t0)) (t/t0)^(-2/ν); the phase
            // carries the factor 2 the generator dictates.
            let a0 = initial[0];
            Ok(times
                .iter()
                .map(|&t| {
                    let pw = (t / t0).powf(-2.0 / config.nu);
                    let phase = -2.0 * (jz as f64 / 2.0) * eps_sum * (t - t0);
                    (t, vec![a0 * C64::from_polar(pw, phase)])
                })
                .collect())
        }
        1 | -1 => {
            // upper = the c_{z+}/c_{+z} family = J^z = -1.
            let upper = jz == -1;
            // Slot order: J^z=-1 -> [|0,-1>, |-1,0>] = (∝c_{z+}, ∝c_{+z});
            //             J^z=+1 -> [|+1,0>, |0,+1>] = (∝c_{-z}, ∝c_{z-}).
            // u1 = (x + y)/√2, u2 = (x - y)/√2 where x is the c_{z±} slot.
            let (x0, y0) = if upper {
                (initial[0], initial[1])
            } else {
                (initial[1], initial[0])
            };
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let u0 = [(x0 + y0) * s, (x0 - y0) * s];
            let bnd = sector1_boundary(config.nu, r, upper, &u0, tau0)?;
            let mut out = Vec::with_capacity(times.len());
            for &t in times {
                let tau = delta * t;
                let basis = sector1_basis(config.nu, r, upper, tau)?;
                let u1 = bnd.k1 * basis[0][0] + bnd.k2 * basis[0][1];
                let u2 = bnd.k1 * basis[1][0] + bnd.k2 * basis[1][1];
                let x = (u1 + u2) * s;
                let y = (u1 - u2) * s;
                let amps = if upper { vec![x, y] } else { vec![y, x] };
                out.push((t, amps));
            }
            Ok(out)
        }
        0 => {
            let init3: [C64; 3] = [initial[0], initial[1], initial[2]];
            let bnd = sector0_boundary(config.nu, &init3, tau0)?;
            let mut out = Vec::with_capacity(times.len());
            for &t in times {
                let tau = delta * t;
                let m0 = sector0_mode(config.nu, 0, tau)?;
                let m1 = sector0_mode(config.nu, 1, tau)?;
                let m2 = sector0_mode(config.nu, 2, tau)?;
                let c: [C64; 3] = std::array::from_fn(|idx| {
                    bnd.k1 * m0[idx] + bnd.k2 * m1[idx] + bnd.k3 * m2[idx]
                });
                out.push((t, rot_to_slots(&c).to_vec()));
            }
            Ok(out)
        }
        _ => Err(ExactError::BadInput(format!("|jz| = {jz} out of range for n = 2"))),
    }
}

// -- late-time asymptotics -------------------------------------------------

/// Which two-point channel an asymptote describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum N2Channel {
    Zz,
    /// c_{+p -q}.
    PlusMinus,
    /// c_{-p +q}.
    MinusPlus,
    /// c_{z_p +_q}.
    ZPlus,
    /// c_{+_p z_q}.
    PlusZ,
    /// c_{z_p -_q}.
    ZMinus,
    /// c_{-_p z_q}.
    MinusZ,
}

/// One power-law term: coef · e^(i·freq·τ) · τ^(-power).
#[derive(Debug, Clone, Copy)]
pub struct AsymptoteTerm {
    pub coef: C64,
    pub freq: f64,
    pub power: f64,
}

/// Late-time form of one channel: a sum of oscillating power laws in τ.
#[derive(Debug, Clone)]
pub struct N2Asymptote {
    pub channel: N2Channel,
    pub terms: Vec<AsymptoteTerm>,
}

impl N2Asymptote {
    pub fn eval(&self, tau: f64) -> C64 {
        self.terms
            .iter()
            .map(|t| t.coef * C64::from_polar(tau.powf(-t.power), t.freq * tau))
            .sum()
    }

    /// Smallest decay power present with a non-negligible coefficient.
    pub fn dominant_power(&self) -> f64 {
        let cmax = self.terms.iter().map(|t| t.coef.norm()).fold(0.0, f64::max);
        self.terms
            .iter()
            .filter(|t| t.coef.norm() > 1e-12 * cmax)
            .map(|t| t.power)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Map the boundary coefficients of the ±1 fundamental pair to (cos χ_a,
/// sin χ_a) amplitudes at large τ: the identity for the (Y_a, Y_b) pair,
/// and (k1 + cos(aπ)k2, -sin(aπ)k2) for the (J_{-a}, -J_{-b}) pair.
fn effective_jy_coeffs(nu: f64, k1: C64, k2: C64) -> (C64, C64) {
    let order_a = -0.5 - 2.0 / nu;
    if (order_a - order_a.round()).abs() < 1e-6 {
        (k1, k2)
    } else {
        (k1 + sin_pi(order_a + 0.5) * k2, -sin_pi(order_a) * k2)
    }
}

/// sin(pπu)/sin(qπu) with the joint near-integer limit (±p/q) taken along
/// the u-path; an isolated zero denominator is a resonance.
fn trig_ratio(p: u32, q: u32, u: f64) -> Result<f64, ExactError> {
    let qu = q as f64 * u;
    let mq = qu.round();
    if (qu - mq).abs() < 1e-9 {
        let pu = p as f64 * u;
        let mp = pu.round();
        if (pu - mp).abs() < 1e-9 {
            let sign = if ((mp - mq) as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            return Ok(sign * p as f64 / q as f64);
        }
        return Err(ExactError::ResonantNu {
            nu: f64::NAN,
            detail: format!("sin({q}π/ν) vanishes in an asymptotic coefficient"),
        });
    }
    Ok(sin_pi(p as f64 * u) / sin_pi(qu))
}

fn gamma_or_resonant(nu: f64, x: f64) -> Result<f64, ExactError> {
    gamma_fn(x).map(|v| v.value).map_err(|_| ExactError::ResonantNu {
        nu,
        detail: format!("gamma pole at {x} in an asymptotic coefficient"),
    })
}

/// Two-term c_zz asymptote and single-term c_{±∓}/c_{z±}/c_{±z} asymptotes,
/// with every Γ of a negative argument rewritten by reflection so the
/// ν-path limits (e.g. ν = 1) come out finite automatically.
pub fn asymptotic_n2(
    config: &RampConfig,
    sites: (usize, usize),
    boundary: &SectorBoundary,
    channel: N2Channel,
) -> Result<N2Asymptote, ExactError> {
    let nu = config.nu;
    let u = 1.0 / nu;
    let (r, _delta) = rescale(config, sites)?;
    let (k1, k2, k3) = (boundary.k1, boundary.k2, boundary.k3);
    let pi = std::f64::consts::PI;
    let i = C64::new(0.0, 1.0);
    // 1/ν a positive integer makes the second Frobenius mode terminate: it
    // is then a pure polynomial × power with no oscillatory part, and the
    // generic Γ-coefficients below are the wrong τ→∞/ν→limit order. Its
    // flat coefficient is read off the exact polynomial instead.
    let terminating = (u - u.round()).abs() < 1e-9 && u.round() >= 1.0;
    match channel {
        N2Channel::Zz => {
            // Flat τ^(-4/ν) coefficient. The overall sign relative to the
            // k-normalization used here is fixed against the closed form.
            let c1f = gamma_or_resonant(nu, (3.0 * nu + 2.0) / (2.0 * nu))?
                * gamma_or_resonant(nu, (2.0 * nu + 3.0) / nu)?
                * rgamma((nu - 2.0) / (2.0 * nu))
                * rgamma((nu + 1.0) / nu);
            let c2f = if terminating {
                terminating_zz_flat(nu)? / (1.5f64).sqrt()
            } else {
                let g_m3_over_m2 = trig_ratio(2, 3, u)?
                    * gamma_or_resonant(nu, 1.0 + 2.0 * u)?
                    / gamma_or_resonant(nu, 1.0 + 3.0 * u)?;
                -sin_pi(u + 0.5) // -cos(π/ν)
                    * gamma_or_resonant(nu, (nu - 4.0) / (2.0 * nu))?
                    * gamma_or_resonant(nu, (nu + 2.0) / (2.0 * nu))?
                    * g_m3_over_m2
                    / pi
            };
            let c3f = 2f64.powf((nu + 2.0) / nu) * sin_pi(u)
                * gamma_or_resonant(nu, (3.0 * nu + 4.0) / (2.0 * nu))?
                / pi.sqrt();
            let flat = (1.5f64).sqrt() * (-k1 * c1f + k2 * c2f + k3 * c3f);

            // Oscillatory τ^(-(ν+2)/ν) pieces; sin(πu)Γ(-ku) folded by
            // reflection: sin(πu)Γ(-u) = -π/Γ(1+u),
            //             sin(πu)Γ(-3u) = -π·[sin(πu)/sin(3πu)]/Γ(1+3u).
            let osc_norm = (3.0 / (2.0 * pi.powi(3) * nu.powi(4))).sqrt();
            let sg1 = -pi / gamma_or_resonant(nu, 1.0 + u)?;
            let o1_amp = k1
                * (sg1
                    * pi.sqrt()
                    * (nu + 2.0)
                    * gamma_or_resonant(nu, (2.0 * nu + 3.0) / nu)?
                    / 4f64.powf(u));
            let sg3 = -pi * trig_ratio(1, 3, u)? / gamma_or_resonant(nu, 1.0 + 3.0 * u)?;
            let o2_amp = k2
                * (2.0
                    * sg3
                    * gamma_or_resonant(nu, (nu - 4.0) / (2.0 * nu))?
                    * gamma_or_resonant(nu, u)?);
            let o3_amp = k3
                * (2.0 * pi * nu * gamma_or_resonant(nu, (nu - 2.0) / (2.0 * nu))?
                    * gamma_or_resonant(nu, (3.0 * nu + 4.0) / (2.0 * nu))?
                    / gamma_or_resonant(nu, (nu + 2.0) / (2.0 * nu))?);

            // sin(πu - 2τ), sin(2πu + 2τ), cos(2τ) as e^(±2iτ) pairs.
            let p_flat = 4.0 / nu;
            let p_osc = (nu + 2.0) / nu;
            let mut terms = vec![AsymptoteTerm { coef: flat, freq: 0.0, power: p_flat }];
            let half_i = C64::new(0.0, 0.5);
            // sin(x - 2τ) = (e^{i(x-2τ)} - e^{-i(x-2τ)})/(2i)
            let e1 = C64::from_polar(1.0, pi * u);
            terms.push(AsymptoteTerm {
                coef: osc_norm * o1_amp * e1 * (-half_i) * C64::new(-1.0, 0.0),
                freq: -2.0,
                power: p_osc,
            });
            terms.push(AsymptoteTerm {
                coef: osc_norm * o1_amp * e1.conj() * (-half_i),
                freq: 2.0,
                power: p_osc,
            });
            // sin(y + 2τ)
            let e2 = C64::from_polar(1.0, 2.0 * pi * u);
            terms.push(AsymptoteTerm {
                coef: osc_norm * o2_amp * e2 * (-half_i) * C64::new(-1.0, 0.0),
                freq: 2.0,
                power: p_osc,
            });
            terms.push(AsymptoteTerm {
                coef: osc_norm * o2_amp * e2.conj() * (-half_i),
                freq: -2.0,
                power: p_osc,
            });
            // cos(2τ)
            terms.push(AsymptoteTerm {
                coef: osc_norm * o3_amp * 0.5,
                freq: 2.0,
                power: p_osc,
            });
            terms.push(AsymptoteTerm {
                coef: osc_norm * o3_amp * 0.5,
                freq: -2.0,
                power: p_osc,
            });
            Ok(N2Asymptote { channel, terms })
        }
        N2Channel::PlusMinus | N2Channel::MinusPlus => {
            let sgn = if channel == N2Channel::PlusMinus { 1.0 } else { -1.0 };
            let p1 = (3.0 / (2.0 * pi)).sqrt()
                * gamma_or_resonant(nu, (3.0 * nu + 2.0) / (2.0 * nu))?
                * gamma_or_resonant(nu, (2.0 * nu + 3.0) / nu)?
                * rgamma((nu + 2.0) / nu);
            // Γ((ν-3)/ν)/Γ((ν-1)/ν) = [sin(πu)/sin(3πu)]·Γ(u)/Γ(3u).
            let gr = trig_ratio(1, 3, u)? * gamma_or_resonant(nu, u)?
                / gamma_or_resonant(nu, 3.0 * u)?;
            let p2 = -gamma_or_resonant(nu, (nu - 4.0) / (2.0 * nu))? * gr / (6.0 * pi).sqrt();
            let p3 = (3.0 / (2.0 * pi)).sqrt()
                * gamma_or_resonant(nu, (3.0 * nu + 4.0) / (2.0 * nu))?
                * gamma_or_resonant(nu, (nu - 2.0) / (2.0 * nu))?
                * rgamma((nu + 2.0) / (2.0 * nu));
            // Overall factor 2: the displayed prefactors are normalized to
            // the paper's doubled mode coordinates.
            let coef = 2.0
                * (k1 * p1 * C64::from_polar(1.0, -sgn * pi * u)
                    + k2 * p2 * C64::from_polar(1.0, sgn * 2.0 * pi * u)
                    + k3 * p3 * (sgn * i));
            Ok(N2Asymptote {
                channel,
                terms: vec![AsymptoteTerm { coef, freq: sgn * 2.0, power: 2.0 / nu }],
            })
        }
        N2Channel::ZPlus | N2Channel::PlusZ | N2Channel::ZMinus | N2Channel::MinusZ => {
            // From the large-τ Bessel forms of the ±1 closed modes:
            //   c_{z±} → ∓i(K1 ∓ iK2) e^(±iπ/ν) e^(±i(1+r)τ) τ^(-3/ν)/√π,
            //   c_{±z} → ∓i(K1 ± iK2) e^(∓iπ/ν) e^(±i(r-1)τ) τ^(-3/ν)/√π,
            // where (K1, K2) are the coefficients of (cos χ_a, sin χ_a) in
            // the large-τ form of the fundamental pair actually used by the
            // boundary solve. (These carry the generator's factor-2 phase
            // frequencies 2ε_q and 2ε_p.)
            let upper = matches!(channel, N2Channel::ZPlus | N2Channel::PlusZ);
            let sgn = if upper { 1.0 } else { -1.0 };
            let (k1c, k2c) = effective_jy_coeffs(nu, boundary.k1, boundary.k2);
            let (combo, phase, freq) = match channel {
                N2Channel::ZPlus | N2Channel::ZMinus => {
                    (k1c - sgn * i * k2c, sgn * pi * u, sgn * (1.0 + r))
                }
                _ => (k1c + sgn * i * k2c, -sgn * pi * u, sgn * (r - 1.0)),
            };
            let coef = -sgn * i * combo * C64::from_polar(1.0, phase) / pi.sqrt();
            Ok(N2Asymptote {
                channel,
                terms: vec![AsymptoteTerm { coef, freq, power: 3.0 / nu }],
            })
        }
    }
}


// Small debug re-exports used by dev examples.
#[doc(hidden)]
pub fn dbg_mode(nu: f64, mode: usize, tau: f64) -> [C64; 3] {
    sector0_mode(nu, mode, tau).unwrap()
}
#[doc(hidden)]
pub fn dbg_rot_to_slots(c: &[C64; 3]) -> [C64; 3] {
    rot_to_slots(c)
}
