//! The n-site non-Hermitian spin-1 Richardson-Gaudin generator of the
//! correlator dynamics, the co-moving frame transformation, translation
//! between correlator labels and spin-1 product-basis amplitudes, and
//! block-diagonalization by total magnetization.
//!
//! The generator is
//!     ℒ(t) = -i Σ_j [i g(t) + 2ε_j] S^z_j - g(t) Σ_{j,k} S^+_j S^-_k,
//! with g(t) = 1/(νt) and the i·g(t) term optional: dropping it gives the
//! co-moving-frame form.
//!
//! Basis slots use the per-site ordering (+1, 0, -1), site-major. A slot with
//! magnetizations (m_1..m_n) holds w(m_1)···w(m_n) times the correlator whose
//! index at site j is { -1 -> +, 0 -> z, +1 -> - }, with the single weight
//! table
//!     w(+1) = -1/√2 (on c_-),  w(0) = 1 (on c_z),  w(-1) = +1/√2 (on c_+).
//! Both translation directions derive from this table and nothing else.

use crate::sparse::SparseComplexOperator;
use crate::spin::{site_operator, spin1, Spin1Kind};
use crate::{C64, CorrelatorLabel, RampConfig, SpinIndex};

#[derive(Debug, thiserror::Error)]
pub enum RgError {
    #[error("site list must be non-empty")]
    EmptySites,
    #[error("duplicate site {0}")]
    DuplicateSite(usize),
    #[error("site {0} has no epsilon in the ramp config ({1} available)")]
    SiteWithoutEpsilon(usize, usize),
    #[error("state is in the {actual:?} frame, operation needs {expected:?}")]
    FrameMismatch { expected: Frame, actual: Frame },
    #[error("time {0} precedes t_init {1}")]
    TimeBeforeInit(f64, f64),
    #[error("|jz| = {0} out of range for n = {1}")]
    JzOutOfRange(i64, usize),
    #[error("amplitude/operator dimension {0} does not match 3^n for n = {1}")]
    BadLength(usize, usize),
    #[error("label sites {0:?} do not match the state's site set")]
    InconsistentSites(Vec<usize>),
}

/// Which frame a correlator state's amplitudes are expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Lab,
    Comoving,
}

/// Complex amplitude vector for an n-point correlator family on a fixed site
/// set, in the spin-1 product basis.
#[derive(Debug, Clone)]
pub struct CorrelatorState {
    /// Sites of the physical chain this family lives on, ascending.
    pub sites: Vec<usize>,
    /// Length 3^n, site-major, per-site order (+1, 0, -1).
    pub amplitudes: Vec<C64>,
    pub time: f64,
    pub frame: Frame,
}

/// A total-magnetization block label. For spin-1, N₊ = n + J^z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorLabel {
    pub jz: i64,
    pub n_plus: usize,
}

impl SectorLabel {
    pub fn from_jz(jz: i64, n: usize) -> Result<Self, RgError> {
        if jz.unsigned_abs() as usize > n {
            return Err(RgError::JzOutOfRange(jz, n));
        }
        Ok(Self { jz, n_plus: (n as i64 + jz) as usize })
    }

    pub fn from_n_plus(n_plus: usize, n: usize) -> Result<Self, RgError> {
        Self::from_jz(n_plus as i64 - n as i64, n)
    }
}

/// Per-site translation weight: amplitude(slot m) = w(m) · c_(index(m)).
pub fn slot_weight(m: i8) -> C64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match m {
        1 => C64::new(-s, 0.0),
        0 => C64::new(1.0, 0.0),
        -1 => C64::new(s, 0.0),
        _ => unreachable!("spin-1 magnetization"),
    }
}

/// Which correlator index a slot magnetization carries.
pub fn slot_index(m: i8) -> SpinIndex {
    match m {
        1 => SpinIndex::Minus,
        0 => SpinIndex::Z,
        -1 => SpinIndex::Plus,
        _ => unreachable!("spin-1 magnetization"),
    }
}

fn code_of(m: i8) -> usize {
    (1 - m) as usize
}

fn m_of_code(code: usize) -> i8 {
    1 - code as i8
}

/// Per-slot magnetizations (m_1..m_n) for a site-major slot index.
pub fn slot_magnetizations(slot: usize, n: usize) -> Vec<i8> {
    let mut out = vec![0i8; n];
    let mut rest = slot;
    for i in (0..n).rev() {
        out[i] = m_of_code(rest % 3);
        rest /= 3;
    }
    out
}

/// Total magnetization Σ S^z of a slot.
pub fn slot_jz(slot: usize, n: usize) -> i64 {
    slot_magnetizations(slot, n).into_iter().map(|m| m as i64).sum()
}

fn check_sites(config: &RampConfig, sites: &[usize]) -> Result<(), RgError> {
    if sites.is_empty() {
        return Err(RgError::EmptySites);
    }
    let mut sorted = sites.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(RgError::DuplicateSite(w[0]));
        }
    }
    for &s in sites {
        if s >= config.n_sites() {
            return Err(RgError::SiteWithoutEpsilon(s, config.n_sites()));
        }
    }
    Ok(())
}

/// Time-independent pieces of ℒ(t) = ham + g(t)·diss, cached once per site
/// set so evolutions never re-tensor.
pub struct RgGenerator {
    pub sites: Vec<usize>,
    /// -2i Σ ε_j S^z_j.
    pub ham: SparseComplexOperator,
    /// flag·Σ S^z_j - Σ_{j,k} S^+_j S^-_k (scaled by g(t) at call time).
    pub diss: SparseComplexOperator,
    pub nu: f64,
    pub include_ig_term: bool,
}

impl RgGenerator {
    pub fn new(
        config: &RampConfig,
        sites: &[usize],
        include_ig_term: bool,
    ) -> Result<Self, RgError> {
        check_sites(config, sites)?;
        let mut sorted = sites.to_vec();
        sorted.sort_unstable();
        let n = sorted.len();
        let dim = 3usize.pow(n as u32);
        let mut ham = SparseComplexOperator::zeros(dim, dim);
        let mut sz_total = SparseComplexOperator::zeros(dim, dim);
        let mut splus: Vec<SparseComplexOperator> = Vec::with_capacity(n);
        let mut sminus: Vec<SparseComplexOperator> = Vec::with_capacity(n);
        for (pos, &site) in sorted.iter().enumerate() {
            let sz = site_operator(&spin1(Spin1Kind::Z), pos, n).expect("pos < n");
            let eps = config.epsilons[site];
            ham = ham.add(&sz.scale(C64::new(0.0, -2.0 * eps))).expect("dims");
            sz_total = sz_total.add(&sz).expect("dims");
            splus.push(site_operator(&spin1(Spin1Kind::Plus), pos, n).expect("pos < n"));
            sminus.push(site_operator(&spin1(Spin1Kind::Minus), pos, n).expect("pos < n"));
        }
        let mut pairing = SparseComplexOperator::zeros(dim, dim);
        for j in 0..n {
            for k in 0..n {
                pairing =
                    pairing.add(&splus[j].matmul(&sminus[k]).expect("dims")).expect("dims");
            }
        }
        let diss = if include_ig_term {
            sz_total.add(&pairing.scale(C64::new(-1.0, 0.0))).expect("dims")
        } else {
            pairing.scale(C64::new(-1.0, 0.0))
        };
        Ok(Self { sites: sorted, ham, diss, nu: config.nu, include_ig_term })
    }

    pub fn dim(&self) -> usize {
        self.ham.nrows()
    }

    /// ℒ(t)·x into `out`.
    pub fn apply(&self, t: f64, x: &[C64], out: &mut [C64]) {
        self.ham.apply_into(x, out);
        self.diss.apply_scaled_add(C64::new(1.0 / (self.nu * t), 0.0), x, out);
    }

    /// The full sparse generator at one time.
    pub fn at_time(&self, t: f64) -> SparseComplexOperator {
        self.ham.add(&self.diss.scale(C64::new(1.0 / (self.nu * t), 0.0))).expect("dims")
    }
}

/// The generator ℒ(t) as a sparse matrix at a single time.
pub fn build_rg_generator(
    config: &RampConfig,
    sites: &[usize],
    time: f64,
    include_ig_term: bool,
) -> Result<SparseComplexOperator, RgError> {
    if time < config.t_init {
        return Err(RgError::TimeBeforeInit(time, config.t_init));
    }
    Ok(RgGenerator::new(config, sites, include_ig_term)?.at_time(time))
}

/// Direction of the co-moving transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameChange {
    ToComoving,
    ToLab,
}

/// Multiply each amplitude by (t/t_init)^(∓ΣS^z/ν). The co-moving frame
/// removes the +g(t)ΣS^z piece of the lab generator, so going to it divides
/// that accumulated factor out ((t/t_init)^(-ΣS^z/ν)) and going back to the
/// lab multiplies it in; evolving with the ig-term dropped between the two
/// reproduces the lab evolution exactly. The frame operator's integral has
/// its lower limit at t_init; the constant this drops relative to a lower
/// limit at 0 cancels in round trips and never touches fitted exponents.
pub fn comoving_transform(
    state: &CorrelatorState,
    config: &RampConfig,
    direction: FrameChange,
) -> Result<CorrelatorState, RgError> {
    let expected = match direction {
        FrameChange::ToComoving => Frame::Lab,
        FrameChange::ToLab => Frame::Comoving,
    };
    if state.frame != expected {
        return Err(RgError::FrameMismatch { expected, actual: state.frame });
    }
    let n = state.sites.len();
    let dim = 3usize.pow(n as u32);
    if state.amplitudes.len() != dim {
        return Err(RgError::BadLength(state.amplitudes.len(), n));
    }
    let sign = match direction {
        FrameChange::ToComoving => -1.0,
        FrameChange::ToLab => 1.0,
    };
    let ratio = state.time / config.t_init;
    let amplitudes = state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(slot, &a)| a * ratio.powf(sign * slot_jz(slot, n) as f64 / config.nu))
        .collect();
    Ok(CorrelatorState {
        sites: state.sites.clone(),
        amplitudes,
        time: state.time,
        frame: match direction {
            FrameChange::ToComoving => Frame::Comoving,
            FrameChange::ToLab => Frame::Lab,
        },
    })
}

/// Assemble a correlator state from the values of every label on a site set.
///
/// `values` is called once per assignment pattern with labels whose site set
/// equals `sites` (sorted ascending).
pub fn labels_to_state(
    sites: &[usize],
    time: f64,
    frame: Frame,
    mut values: impl FnMut(&CorrelatorLabel) -> C64,
) -> Result<CorrelatorState, RgError> {
    let mut sorted = sites.to_vec();
    sorted.sort_unstable();
    if sorted.is_empty() {
        return Err(RgError::EmptySites);
    }
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(RgError::DuplicateSite(w[0]));
        }
    }
    let n = sorted.len();
    let dim = 3usize.pow(n as u32);
    let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
    for (slot, amp) in amplitudes.iter_mut().enumerate() {
        let ms = slot_magnetizations(slot, n);
        let mut weight = C64::new(1.0, 0.0);
        let mut assignment = Vec::with_capacity(n);
        for (pos, &m) in ms.iter().enumerate() {
            weight *= slot_weight(m);
            assignment.push((sorted[pos], slot_index(m)));
        }
        let label = CorrelatorLabel::new(assignment).expect("sites distinct");
        *amp = weight * values(&label);
    }
    Ok(CorrelatorState { sites: sorted, amplitudes, time, frame })
}

/// Read every correlator value out of a state (inverse of
/// [`labels_to_state`]: weights divide back out of the amplitudes).
pub fn state_to_labels(state: &CorrelatorState) -> Vec<(CorrelatorLabel, C64)> {
    let n = state.sites.len();
    let mut out = Vec::with_capacity(state.amplitudes.len());
    for (slot, &amp) in state.amplitudes.iter().enumerate() {
        let ms = slot_magnetizations(slot, n);
        let mut weight = C64::new(1.0, 0.0);
        let mut assignment = Vec::with_capacity(n);
        for (pos, &m) in ms.iter().enumerate() {
            weight *= slot_weight(m);
            assignment.push((state.sites[pos], slot_index(m)));
        }
        let label = CorrelatorLabel::new(assignment).expect("sites distinct");
        out.push((label, amp / weight));
    }
    out
}

/// Slot index and accumulated weight for a label (site-major packing).
pub fn label_slot(label: &CorrelatorLabel) -> (usize, C64) {
    let mut slot = 0usize;
    let mut weight = C64::new(1.0, 0.0);
    for &(_, a) in label.assignments() {
        let m = match a {
            SpinIndex::Minus => 1i8,
            SpinIndex::Z => 0,
            SpinIndex::Plus => -1,
        };
        slot = slot * 3 + code_of(m);
        weight *= slot_weight(m);
    }
    (slot, weight)
}

/// Value of one labelled correlator in a state.
pub fn state_correlator(state: &CorrelatorState, label: &CorrelatorLabel) -> Result<C64, RgError> {
    if label.sites() != state.sites {
        return Err(RgError::InconsistentSites(label.sites()));
    }
    let (slot, weight) = label_slot(label);
    Ok(state.amplitudes[slot] / weight)
}

/// Restrict a 3^n generator to one magnetization sector; returns the block
/// and the list of full-basis slots its rows map to.
pub fn sector_project(
    generator: &SparseComplexOperator,
    n: usize,
    sector: SectorLabel,
) -> Result<(SparseComplexOperator, Vec<usize>), RgError> {
    let dim = 3usize.pow(n as u32);
    if generator.nrows() != dim || generator.ncols() != dim {
        return Err(RgError::BadLength(generator.nrows(), n));
    }
    if sector.jz.unsigned_abs() as usize > n {
        return Err(RgError::JzOutOfRange(sector.jz, n));
    }
    let slots = sector_slots(n, sector.jz);
    let index_of: std::collections::HashMap<usize, usize> =
        slots.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut triplets = Vec::new();
    for &(r, c, v) in generator.entries() {
        if let (Some(&ri), Some(&ci)) = (index_of.get(&r), index_of.get(&c)) {
            triplets.push((ri, ci, v));
        }
    }
    let block = SparseComplexOperator::from_triplets(slots.len(), slots.len(), triplets)
        .expect("indices in range");
    Ok((block, slots))
}

/// All slots of the J^z sector, ascending.
pub fn sector_slots(n: usize, jz: i64) -> Vec<usize> {
    (0..3usize.pow(n as u32)).filter(|&s| slot_jz(s, n) == jz).collect()
}

/// (Σ_j S^+_j)^(N₊) |-1,...,-1⟩, normalized: the pseudo-vacuum-raised state
/// for which the saddle-point asymptote is strictly derived.
pub fn pseudo_vacuum_raised(
    sites: &[usize],
    n_plus: usize,
    time: f64,
    frame: Frame,
) -> Result<CorrelatorState, RgError> {
    let n = sites.len();
    if n == 0 {
        return Err(RgError::EmptySites);
    }
    if n_plus > 2 * n {
        return Err(RgError::JzOutOfRange(n_plus as i64 - n as i64, n));
    }
    let dim = 3usize.pow(n as u32);
    let mut raise_total = SparseComplexOperator::zeros(dim, dim);
    for pos in 0..n {
        raise_total = raise_total
            .add(&site_operator(&spin1(Spin1Kind::Plus), pos, n).expect("pos < n"))
            .expect("dims");
    }
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[dim - 1] = C64::new(1.0, 0.0); // |-1,...,-1>
    for _ in 0..n_plus {
        v = raise_total.apply(&v).expect("dims");
    }
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for a in v.iter_mut() {
            *a /= norm;
        }
    }
    let mut sorted = sites.to_vec();
    sorted.sort_unstable();
    Ok(CorrelatorState { sites: sorted, amplitudes: v, time, frame })
}

/// Equal-magnitude sum of the normalized sector pseudo-vacuums, normalized
/// and rescaled by 1/2. Each sector carries the phase i^((J^z)²): mirror
/// sectors must be conjugate up to the sign the ± translation weights pick
/// up, or no Hermitian density matrix realizes these correlators. The 1/2
/// keeps the reconstructed density matrix positive semi-definite.
pub fn sector_sum_state(
    sites: &[usize],
    time: f64,
    frame: Frame,
) -> Result<CorrelatorState, RgError> {
    let n = sites.len();
    if n == 0 {
        return Err(RgError::EmptySites);
    }
    let dim = 3usize.pow(n as u32);
    let mut total = vec![C64::new(0.0, 0.0); dim];
    for n_plus in 0..=(2 * n) {
        let jz = n_plus as i64 - n as i64;
        let phase = match (jz * jz).rem_euclid(4) {
            0 => C64::new(1.0, 0.0),
            _ => C64::new(0.0, 1.0),
        };
        let s = pseudo_vacuum_raised(sites, n_plus, time, frame)?;
        for (t, a) in total.iter_mut().zip(s.amplitudes.iter()) {
            *t += phase * a;
        }
    }
    let norm = total.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in total.iter_mut() {
        *a *= 0.5 / norm;
    }
    let mut sorted = sites.to_vec();
    sorted.sort_unstable();
    Ok(CorrelatorState { sites: sorted, amplitudes: total, time, frame })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{integrate, IntegrationSpec};

    fn config(nu: f64, eps: &[f64]) -> RampConfig {
        RampConfig::new(nu, eps.to_vec(), 1e-5, 1e2).unwrap()
    }

    #[test]
    fn n1_generator_is_diagonal_with_known_entries() {
        let cfg = config(4.0, &[0.7]);
        let t = 2.0;
        let g = cfg.g(t);
        let l = build_rg_generator(&cfg, &[0], t, true).unwrap();
        // Slots (+1, 0, -1) carry (c_-, c_z, c_+):
        // dc_-/dt = (-2iε - g)c_-, dc_z/dt = -2g c_z, dc_+/dt = (2iε - g)c_+.
        assert!((l.get(0, 0) - C64::new(-g, -2.0 * 0.7)).norm() < 1e-15);
        assert!((l.get(1, 1) - C64::new(-2.0 * g, 0.0)).norm() < 1e-15);
        assert!((l.get(2, 2) - C64::new(-g, 2.0 * 0.7)).norm() < 1e-15);
        for &(r, c, _) in l.entries() {
            assert_eq!(r, c, "off-diagonal entry in n=1 generator");
        }
    }

    #[test]
    fn magnetization_is_conserved_exactly() {
        let cfg = config(3.0, &[0.2, 0.9, 1.7]);
        let l = build_rg_generator(&cfg, &[0, 1, 2], 0.37, true).unwrap();
        let dim = 27;
        let mut sz = SparseComplexOperator::zeros(dim, dim);
        for pos in 0..3 {
            sz = sz.add(&site_operator(&spin1(Spin1Kind::Z), pos, 3).unwrap()).unwrap();
        }
        let comm = l
            .matmul(&sz)
            .unwrap()
            .add(&sz.matmul(&l).unwrap().scale(C64::new(-1.0, 0.0)))
            .unwrap();
        assert_eq!(comm.max_abs(), 0.0);
    }

    #[test]
    fn n2_sector_dimensions_and_cross_sector_zeros() {
        let cfg = config(2.5, &[0.3, 1.1]);
        let l = build_rg_generator(&cfg, &[0, 1], 1.0, true).unwrap();
        let dims: Vec<usize> = (-2..=2)
            .map(|jz| {
                sector_project(&l, 2, SectorLabel::from_jz(jz, 2).unwrap()).unwrap().0.nrows()
            })
            .collect();
        assert_eq!(dims, vec![1, 2, 3, 2, 1]);
        // J^z = 0 block covers |+1,-1>, |0,0>, |-1,+1> (slots 2, 4, 6).
        let (_, slots) = sector_project(&l, 2, SectorLabel::from_jz(0, 2).unwrap()).unwrap();
        assert_eq!(slots, vec![2, 4, 6]);
        let (_, top) = sector_project(&l, 2, SectorLabel::from_jz(2, 2).unwrap()).unwrap();
        assert_eq!(top, vec![0]);
        // Every entry of the full generator joins slots of equal J^z.
        for &(r, c, v) in l.entries() {
            assert_eq!(slot_jz(r, 2), slot_jz(c, 2), "cross-sector entry ({r},{c}) = {v}");
        }
    }

    #[test]
    fn translation_table_examples() {
        // All-z value 1 -> amplitude 1 at the all-|0> slot, zero elsewhere.
        let st = labels_to_state(&[0, 1], 1.0, Frame::Lab, |l| {
            if l.n1() == 2 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .unwrap();
        assert!((st.amplitudes[4] - C64::new(1.0, 0.0)).norm() < 1e-15);
        for (slot, a) in st.amplitudes.iter().enumerate() {
            if slot != 4 {
                assert_eq!(*a, C64::new(0.0, 0.0));
            }
        }

        // Single-site c_+ = 1 -> amplitude w(-1) = 1/√2 at |-1>.
        let st = labels_to_state(&[3], 1.0, Frame::Lab, |l| {
            if l.indices()[0] == SpinIndex::Plus {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .unwrap();
        assert!(
            (st.amplitudes[2] - C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15
        );

        // |+1> amplitude -1/√2 (n=1) -> c_- = 1.
        let st = CorrelatorState {
            sites: vec![0],
            amplitudes: vec![
                C64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
            time: 1.0,
            frame: Frame::Lab,
        };
        for (l, v) in state_to_labels(&st) {
            if l.indices()[0] == SpinIndex::Minus {
                assert!((v - C64::new(1.0, 0.0)).norm() < 1e-15);
            } else {
                assert_eq!(v, C64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn label_round_trip() {
        let dim = 27;
        let mut amplitudes = Vec::with_capacity(dim);
        for i in 0..dim {
            amplitudes.push(C64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()));
        }
        let st = CorrelatorState {
            sites: vec![0, 2, 5],
            amplitudes: amplitudes.clone(),
            time: 0.5,
            frame: Frame::Lab,
        };
        let vals: std::collections::HashMap<_, _> = state_to_labels(&st).into_iter().collect();
        let back = labels_to_state(&[0, 2, 5], 0.5, Frame::Lab, |l| vals[l]).unwrap();
        for (a, b) in back.amplitudes.iter().zip(amplitudes.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn comoving_round_trip_and_direction() {
        let cfg = config(3.0, &[0.4]);
        let t = cfg.t_init * std::f64::consts::E.powf(cfg.nu);
        let st = CorrelatorState {
            sites: vec![0],
            amplitudes: vec![C64::new(1.0, 0.0); 3],
            time: t,
            frame: Frame::Comoving,
        };
        // to_lab multiplies |+1> by (t/t_init)^(1/ν) = e and |-1> by 1/e.
        let lab = comoving_transform(&st, &cfg, FrameChange::ToLab).unwrap();
        assert!((lab.amplitudes[0].re - std::f64::consts::E).abs() < 1e-12);
        assert_eq!(lab.amplitudes[1], C64::new(1.0, 0.0));
        assert!((lab.amplitudes[2].re - 1.0 / std::f64::consts::E).abs() < 1e-14);
        // Round trip is the identity to 1e-14.
        let back = comoving_transform(&lab, &cfg, FrameChange::ToComoving).unwrap();
        for (a, b) in back.amplitudes.iter().zip(st.amplitudes.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
        assert!(matches!(
            comoving_transform(&lab, &cfg, FrameChange::ToLab),
            Err(RgError::FrameMismatch { .. })
        ));
        // ΣS^z = 0 slots are untouched at any time.
        let st2 = CorrelatorState {
            sites: vec![0],
            amplitudes: vec![C64::new(0.0, 0.0), C64::new(2.0, 1.0), C64::new(0.0, 0.0)],
            time: t,
            frame: Frame::Lab,
        };
        let co = comoving_transform(&st2, &cfg, FrameChange::ToComoving).unwrap();
        assert_eq!(co.amplitudes[1], C64::new(2.0, 1.0));
    }

    #[test]
    fn frame_equivalence_of_evolutions() {
        // Lab evolution (ig-term on) == to_lab ∘ co-moving evolution
        // (ig-term off) ∘ to_comoving, over several decades for n = 2.
        let cfg = RampConfig::new(2.2, vec![0.5, 1.3], 1e-4, 50.0).unwrap();
        let sites = [0usize, 1];
        let dim = 9;
        let mut init = Vec::with_capacity(dim);
        for i in 0..dim {
            init.push(C64::new((0.3 + i as f64 * 0.21).cos(), (i as f64 * 0.17).sin()));
        }
        let lab_gen = RgGenerator::new(&cfg, &sites, true).unwrap();
        let com_gen = RgGenerator::new(&cfg, &sites, false).unwrap();
        let spec = IntegrationSpec::new(cfg.t_init, cfg.t_final).with_log_samples(12);
        let (lab_out, _) = integrate(|t, x, out| lab_gen.apply(t, x, out), &init, &spec).unwrap();
        let (com_out, _) = integrate(|t, x, out| com_gen.apply(t, x, out), &init, &spec).unwrap();
        for ((t, lab_v), (_, com_v)) in lab_out.iter().zip(com_out.iter()) {
            let com_state = CorrelatorState {
                sites: sites.to_vec(),
                amplitudes: com_v.clone(),
                time: *t,
                frame: Frame::Comoving,
            };
            let to_lab = comoving_transform(&com_state, &cfg, FrameChange::ToLab).unwrap();
            for (a, b) in lab_v.iter().zip(to_lab.amplitudes.iter()) {
                assert!((a - b).norm() < 1e-8, "t = {t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn pseudo_vacuum_states() {
        // n=2, N₊=2 is (1,2,1)/√6 on slots |+1,-1>, |0,0>, |-1,+1>.
        let st = pseudo_vacuum_raised(&[0, 1], 2, 1.0, Frame::Lab).unwrap();
        let w = 1.0 / 6.0f64.sqrt();
        assert!((st.amplitudes[2].re - w).abs() < 1e-14);
        assert!((st.amplitudes[4].re - 2.0 * w).abs() < 1e-14);
        assert!((st.amplitudes[6].re - w).abs() < 1e-14);
        // N₊ = 0 is the vacuum itself.
        let st = pseudo_vacuum_raised(&[0, 1], 0, 1.0, Frame::Lab).unwrap();
        assert_eq!(st.amplitudes[8], C64::new(1.0, 0.0));
        // Sector-sum state carries the documented 1/2 rescaling.
        let ss = sector_sum_state(&[0, 1, 2], 1.0, Frame::Lab).unwrap();
        let norm = ss.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 0.5).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_site_lists() {
        let cfg = config(2.0, &[0.1, 0.2]);
        assert!(matches!(build_rg_generator(&cfg, &[], 1.0, true), Err(RgError::EmptySites)));
        assert!(matches!(
            build_rg_generator(&cfg, &[0, 0], 1.0, true),
            Err(RgError::DuplicateSite(0))
        ));
        assert!(matches!(
            build_rg_generator(&cfg, &[0, 5], 1.0, true),
            Err(RgError::SiteWithoutEpsilon(5, 2))
        ));
    }
}
