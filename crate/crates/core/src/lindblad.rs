//! Vectorized Lindblad dynamics of N dissipative spin-1/2 particles:
//!     ∂t ρ = -i[H, ρ] + Σ_a D_a[ρ],   H = Σ_j 2ε_j s^z_j,
//! with collective jump operators L_± = √(g(t)) Σ_j s^±_j ramped as
//! g(t) = 1/(νt), plus the (inactive, g_z = 0) collective dephasing channel
//! L_z. The density matrix is flattened row-major, vec(AρB) = (A ⊗ Bᵀ)vec(ρ),
//! so the generator acts as an ordinary sparse matrix on the 4^N amplitudes.
//!
//! Correlation functions are read out as c = tr(ρ · ⊗_j O_j) with O_j = σ^z
//! for z assignments and 2σ^± for ± assignments: the ½ in σ± = ½(σˣ ± iσʸ)
//! must be compensated by a factor 2 under the trace.

use crate::ode::{integrate, IntegrationSpec, OdeError};
use crate::sparse::SparseComplexOperator;
use crate::spin::{pauli, site_operator, PauliKind};
use crate::{C64, CorrelatorLabel, RampConfig};

#[derive(Debug, thiserror::Error)]
pub enum LindbladError {
    #[error("config has {0} epsilons but {1} spins were requested")]
    SpinCountMismatch(usize, usize),
    #[error("state dimension {0} is not 4^N for N = {1}")]
    BadStateDim(usize, usize),
    #[error("site {site} out of range for {n_spins} spins")]
    SiteOutOfRange { site: usize, n_spins: usize },
    #[error("initial state is not a density matrix: {0}")]
    InvalidState(String),
    #[error("sample times must be sorted and >= t_init")]
    BadSampleTimes,
    #[error("integrator failure: {0}")]
    Integrator(#[from] OdeError),
    #[error("density-matrix invariant violated at t = {time:.6e}: {what}")]
    InvariantViolated { time: f64, what: String },
}

/// Row-major vectorized density matrix of N spins at one time.
#[derive(Debug, Clone)]
pub struct DensityState {
    pub n_spins: usize,
    /// Length 4^N: ρ_{ij} = amplitudes[i * 2^N + j].
    pub amplitudes: Vec<C64>,
    pub time: f64,
}

impl DensityState {
    pub fn from_dense(n_spins: usize, rho: Vec<C64>, time: f64) -> Result<Self, LindbladError> {
        let dim = 1usize << n_spins;
        if rho.len() != dim * dim {
            return Err(LindbladError::BadStateDim(rho.len(), n_spins));
        }
        let state = Self { n_spins, amplitudes: rho, time };
        state.validate(1e-10, 1e-10, 1e-8)?;
        Ok(state)
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_spins
    }

    pub fn trace(&self) -> C64 {
        let d = self.dim();
        (0..d).map(|i| self.amplitudes[i * d + i]).sum()
    }

    pub fn hermiticity_violation(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let v = (self.amplitudes[i * d + j] - self.amplitudes[j * d + i].conj()).norm();
                worst = worst.max(v);
            }
        }
        worst / 2.0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.amplitudes, self.dim())
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    fn validate(&self, trace_tol: f64, herm_tol: f64, pos_tol: f64) -> Result<(), LindbladError> {
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > trace_tol {
            return Err(LindbladError::InvariantViolated {
                time: self.time,
                what: format!("trace = {tr}"),
            });
        }
        let herm = self.hermiticity_violation();
        if herm > herm_tol {
            return Err(LindbladError::InvariantViolated {
                time: self.time,
                what: format!("hermiticity violation {herm:.3e}"),
            });
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < -pos_tol {
            return Err(LindbladError::InvariantViolated {
                time: self.time,
                what: format!("negative eigenvalue {min_eig:.3e}"),
            });
        }
        Ok(())
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Intended for the small dimensions of this crate (<= 4^4).
pub fn hermitian_eigenvalues(dense: &[C64], dim: usize) -> Vec<f64> {
    assert_eq!(dense.len(), dim * dim);
    let mut a = dense.to_vec();
    let scale = a.iter().map(|v| v.norm()).fold(0.0f64, f64::max).max(1e-300);
    for _sweep in 0..200 {
        let mut off = 0.0f64;
        for p in 0..dim {
            for q in (p + 1)..dim {
                off = off.max(a[p * dim + q].norm());
            }
        }
        if off < 1e-14 * scale {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let gpq = a[p * dim + q];
                let g = gpq.norm();
                if g < 1e-300 {
                    continue;
                }
                let alpha = a[p * dim + p].re;
                let beta = a[q * dim + q].re;
                let u = gpq / g;
                let phi = 0.5 * (2.0 * g).atan2(alpha - beta);
                let (s, c) = phi.sin_cos();
                for k in 0..dim {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * dim + p];
                    let akq = a[k * dim + q];
                    let new_kp = akp * c + akq * u.conj() * s;
                    let new_kq = akq * c - akp * u * s;
                    a[k * dim + p] = new_kp;
                    a[k * dim + q] = new_kq;
                    a[p * dim + k] = new_kp.conj();
                    a[q * dim + k] = new_kq.conj();
                }
                let app = alpha * c * c + beta * s * s + 2.0 * g * s * c;
                let aqq = alpha * s * s + beta * c * c - 2.0 * g * s * c;
                a[p * dim + p] = C64::new(app, 0.0);
                a[q * dim + q] = C64::new(aqq, 0.0);
                a[p * dim + q] = C64::new(0.0, 0.0);
                a[q * dim + p] = C64::new(0.0, 0.0);
            }
        }
    }
    (0..dim).map(|i| a[i * dim + i].re).collect()
}

/// Cached pieces of the vectorized generator
/// G(t) = G_ham + g(t)·G_diss + g_z·G_deph.
pub struct LindbladGenerator {
    pub n_spins: usize,
    pub ham: SparseComplexOperator,
    pub diss: SparseComplexOperator,
    pub deph: SparseComplexOperator,
    pub nu: f64,
    pub g_z: f64,
}

fn dissipator_superop(l: &SparseComplexOperator) -> SparseComplexOperator {
    // vec(LρL†) - ½vec(L†Lρ) - ½vec(ρL†L) with vec(AρB) = (A ⊗ Bᵀ) vec ρ.
    let dim = l.nrows();
    let id = SparseComplexOperator::identity(dim);
    let ldag = l.dagger();
    let ldl = ldag.matmul(l).expect("dims");
    let jump = l.kron(&ldag.transpose());
    let left = ldl.kron(&id);
    let right = id.kron(&ldl.transpose());
    let half = C64::new(-0.5, 0.0);
    jump.add(&left.scale(half)).expect("dims").add(&right.scale(half)).expect("dims")
}

impl LindbladGenerator {
    pub fn new(config: &RampConfig, n_spins: usize) -> Result<Self, LindbladError> {
        if config.n_sites() != n_spins {
            return Err(LindbladError::SpinCountMismatch(config.n_sites(), n_spins));
        }
        let dim = 1usize << n_spins;
        let id = SparseComplexOperator::identity(dim);
        let mut h = SparseComplexOperator::zeros(dim, dim);
        let mut j_plus = SparseComplexOperator::zeros(dim, dim);
        let mut j_minus = SparseComplexOperator::zeros(dim, dim);
        let mut j_z = SparseComplexOperator::zeros(dim, dim);
        for site in 0..n_spins {
            let sz = site_operator(&pauli(PauliKind::Z), site, n_spins)
                .expect("site < n")
                .scale(C64::new(0.5, 0.0));
            h = h.add(&sz.scale(C64::new(2.0 * config.epsilons[site], 0.0))).expect("dims");
            j_z = j_z.add(&sz).expect("dims");
            j_plus = j_plus
                .add(&site_operator(&pauli(PauliKind::Plus), site, n_spins).expect("site < n"))
                .expect("dims");
            j_minus = j_minus
                .add(&site_operator(&pauli(PauliKind::Minus), site, n_spins).expect("site < n"))
                .expect("dims");
        }
        // -i[H, ·] -> -i(H⊗I - I⊗Hᵀ).
        let ham = h
            .kron(&id)
            .add(&id.kron(&h.transpose()).scale(C64::new(-1.0, 0.0)))
            .expect("dims")
            .scale(C64::new(0.0, -1.0));
        let diss =
            dissipator_superop(&j_plus).add(&dissipator_superop(&j_minus)).expect("dims");
        let deph = dissipator_superop(&j_z);
        Ok(Self { n_spins, ham, diss, deph, nu: config.nu, g_z: config.g_z })
    }

    pub fn dim(&self) -> usize {
        self.ham.nrows()
    }

    /// G(t)·x into `out`.
    pub fn apply(&self, t: f64, x: &[C64], out: &mut [C64]) {
        self.ham.apply_into(x, out);
        self.diss.apply_scaled_add(C64::new(1.0 / (self.nu * t), 0.0), x, out);
        if self.g_z != 0.0 {
            self.deph.apply_scaled_add(C64::new(self.g_z, 0.0), x, out);
        }
    }

    /// Full sparse G(t) at one time.
    pub fn at_time(&self, t: f64) -> SparseComplexOperator {
        let mut g =
            self.ham.add(&self.diss.scale(C64::new(1.0 / (self.nu * t), 0.0))).expect("dims");
        if self.g_z != 0.0 {
            g = g.add(&self.deph.scale(C64::new(self.g_z, 0.0))).expect("dims");
        }
        g
    }
}

/// The 4^N × 4^N generator G(t) with d(vec ρ)/dt = G(t)·vec ρ.
pub fn build_superoperator(
    config: &RampConfig,
    n_spins: usize,
    time: f64,
) -> Result<SparseComplexOperator, LindbladError> {
    Ok(LindbladGenerator::new(config, n_spins)?.at_time(time))
}

/// Integration controls for [`evolve_density`].
#[derive(Debug, Clone)]
pub struct EvolveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    /// Check trace/hermiticity/positivity at every sample.
    pub check_invariants: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-9, abs_tol: 1e-11, max_steps: 10_000_000, check_invariants: true }
    }
}

/// Integrate the master equation, returning states at `sample_times`.
pub fn evolve_density(
    config: &RampConfig,
    initial: &DensityState,
    sample_times: &[f64],
    opts: &EvolveOptions,
) -> Result<Vec<DensityState>, LindbladError> {
    if sample_times.windows(2).any(|w| w[1] < w[0])
        || sample_times.first().map(|&t| t < config.t_init).unwrap_or(false)
    {
        return Err(LindbladError::BadSampleTimes);
    }
    let gen = LindbladGenerator::new(config, initial.n_spins)?;
    if gen.dim() != initial.amplitudes.len() {
        return Err(LindbladError::BadStateDim(initial.amplitudes.len(), initial.n_spins));
    }
    let t_final = sample_times.last().copied().unwrap_or(config.t_final);
    let mut spec = IntegrationSpec::new(initial.time, t_final.max(initial.time * (1.0 + 1e-9)));
    spec.rel_tol = opts.rel_tol;
    spec.abs_tol = opts.abs_tol;
    spec.max_steps = opts.max_steps;
    spec.dense_samples = sample_times.to_vec();
    let (samples, _) = integrate(|t, x, out| gen.apply(t, x, out), &initial.amplitudes, &spec)?;
    let mut out = Vec::with_capacity(samples.len());
    for (t, v) in samples {
        let state = DensityState { n_spins: initial.n_spins, amplitudes: v, time: t };
        if opts.check_invariants {
            // Looser than the construction tolerances: integrator drift over
            // many decades accumulates one local tolerance per step.
            state.validate(1e-8, 1e-8, 1e-7)?;
        }
        out.push(state);
    }
    Ok(out)
}

/// tr(ρ · ⊗_j O_j): O = σ^z on z sites, 2σ± on ± sites, identity elsewhere.
pub fn extract_correlator(
    state: &DensityState,
    label: &CorrelatorLabel,
) -> Result<C64, LindbladError> {
    if label.max_site() >= state.n_spins {
        return Err(LindbladError::SiteOutOfRange {
            site: label.max_site(),
            n_spins: state.n_spins,
        });
    }
    let op = observable_operator(label, state.n_spins);
    let d = state.dim();
    // tr(ρO) = Σ_{ij} ρ_ij O_ji.
    let mut acc = C64::new(0.0, 0.0);
    for &(j, i, v) in op.entries() {
        acc += state.amplitudes[i * d + j] * v;
    }
    Ok(acc)
}

/// The observable ⊗_j O_j as a sparse 2^N operator.
pub fn observable_operator(label: &CorrelatorLabel, n_spins: usize) -> SparseComplexOperator {
    use crate::SpinIndex;
    let mut op = SparseComplexOperator::identity(1usize << n_spins);
    for &(site, a) in label.assignments() {
        let factor = match a {
            SpinIndex::Z => pauli(PauliKind::Z),
            SpinIndex::Plus => pauli(PauliKind::Plus).scale(C64::new(2.0, 0.0)),
            SpinIndex::Minus => pauli(PauliKind::Minus).scale(C64::new(2.0, 0.0)),
        };
        let embedded = site_operator(&factor, site, n_spins).expect("site < n");
        op = op.matmul(&embedded).expect("dims");
    }
    op
}

/// Dual tensor element for rebuilding ρ from correlators: c_+ multiplies σ⁻
/// and c_- multiplies σ⁺ in the spherical-tensor expansion of ρ.
fn dual_operator(label: &CorrelatorLabel, n_spins: usize) -> SparseComplexOperator {
    use crate::SpinIndex;
    let mut op = SparseComplexOperator::identity(1usize << n_spins);
    for &(site, a) in label.assignments() {
        let factor = match a {
            SpinIndex::Z => pauli(PauliKind::Z),
            SpinIndex::Plus => pauli(PauliKind::Minus),
            SpinIndex::Minus => pauli(PauliKind::Plus),
        };
        let embedded = site_operator(&factor, site, n_spins).expect("site < n");
        op = op.matmul(&embedded).expect("dims");
    }
    op
}

/// Every correlator label on every non-empty subset of the first N sites.
pub fn all_labels(n_spins: usize) -> Vec<CorrelatorLabel> {
    use crate::SpinIndex;
    let mut out = Vec::new();
    // Each site carries one of {identity, z, +, -}; skip the all-identity word.
    let mut word = vec![0u8; n_spins];
    loop {
        if word.iter().any(|&w| w != 0) {
            let assignment: Vec<(usize, SpinIndex)> = word
                .iter()
                .enumerate()
                .filter(|(_, &w)| w != 0)
                .map(|(site, &w)| {
                    let idx = match w {
                        1 => SpinIndex::Z,
                        2 => SpinIndex::Plus,
                        _ => SpinIndex::Minus,
                    };
                    (site, idx)
                })
                .collect();
            out.push(CorrelatorLabel::new(assignment).expect("distinct sites"));
        }
        let mut i = 0;
        loop {
            if i == n_spins {
                return out;
            }
            word[i] += 1;
            if word[i] < 4 {
                break;
            }
            word[i] = 0;
            i += 1;
        }
    }
}

/// Build ρ = 2^-N (I + Σ c_label T_label) from a correlator assignment.
pub fn density_from_correlators(
    n_spins: usize,
    time: f64,
    mut value_of: impl FnMut(&CorrelatorLabel) -> C64,
) -> Result<DensityState, LindbladError> {
    let d = 1usize << n_spins;
    let mut rho = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        rho[i * d + i] = C64::new(1.0, 0.0);
    }
    for label in all_labels(n_spins) {
        let c = value_of(&label);
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let t_op = dual_operator(&label, n_spins);
        for &(r, col, v) in t_op.entries() {
            rho[r * d + col] += c * v;
        }
    }
    let norm = C64::new(1.0 / d as f64, 0.0);
    for v in rho.iter_mut() {
        *v *= norm;
    }
    DensityState::from_dense(n_spins, rho, time)
}

/// Named initial-state presets accepted by the CLI.
pub mod presets {
    use super::*;
    use crate::rg::{sector_sum_state, state_correlator, Frame};

    /// ρ = I / 2^N.
    pub fn maximally_mixed(n_spins: usize, time: f64) -> DensityState {
        let d = 1usize << n_spins;
        let mut rho = vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            rho[i * d + i] = C64::new(1.0 / d as f64, 0.0);
        }
        DensityState { n_spins, amplitudes: rho, time }
    }

    /// Tensor product of single-spin coherent states
    /// ψ = exp(½θ e^{iφ} s⁻ − ½θ e^{-iφ} s⁺)|↓⟩.
    pub fn spin_coherent(n_spins: usize, theta: f64, phi: f64, time: f64) -> DensityState {
        // Closed form of the 2x2 exponential: ψ = (-e^{-iφ} sin(θ/2), cos(θ/2)).
        let up = -C64::from_polar(1.0, -phi) * (theta / 2.0).sin();
        let down = C64::new((theta / 2.0).cos(), 0.0);
        let single = [up * up.conj(), up * down.conj(), down * up.conj(), down * down.conj()];
        let mut rho = vec![C64::new(1.0, 0.0)];
        let mut d = 1usize;
        for _ in 0..n_spins {
            let nd = d * 2;
            let mut next = vec![C64::new(0.0, 0.0); nd * nd];
            for i in 0..d {
                for j in 0..d {
                    for a in 0..2 {
                        for b in 0..2 {
                            next[(i * 2 + a) * nd + (j * 2 + b)] =
                                rho[i * d + j] * single[a * 2 + b];
                        }
                    }
                }
            }
            rho = next;
            d = nd;
        }
        DensityState { n_spins, amplitudes: rho, time }
    }

    /// Density matrix whose N-point correlators realize the equal-weight
    /// sector-sum correlator state (all lower-order correlators vanish).
    pub fn sector_sum(n_spins: usize, time: f64) -> Result<DensityState, LindbladError> {
        let sites: Vec<usize> = (0..n_spins).collect();
        let st = sector_sum_state(&sites, time, Frame::Lab)
            .map_err(|e| LindbladError::InvalidState(e.to_string()))?;
        density_from_correlators(n_spins, time, |label| {
            if label.n() == n_spins {
                state_correlator(&st, label).expect("full-site label")
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// ρ = M M† / tr(M M†) from a complex Ginibre draw: positive by
    /// construction, unit trace.
    pub fn random_density(n_spins: usize, time: f64, rng: &mut impl rand::Rng) -> DensityState {
        let d = 1usize << n_spins;
        let mut m = vec![C64::new(0.0, 0.0); d * d];
        for v in m.iter_mut() {
            *v = C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
        let mut rho = vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..d {
                    acc += m[i * d + k] * m[j * d + k].conj();
                }
                rho[i * d + j] = acc;
            }
        }
        let tr: f64 = (0..d).map(|i| rho[i * d + i].re).sum();
        for v in rho.iter_mut() {
            *v /= tr;
        }
        DensityState { n_spins, amplitudes: rho, time }
    }
}
