//! Dissipative spin ensembles with collective noise ramped down as 1/(νt).
//!
//! The crate simulates N spin-1/2 particles under a Lindblad master equation
//! whose collective raising/lowering dissipators weaken in time,
//! g±(t) = 1/(νt), and independently evolves their n-point correlation
//! functions with the equivalent non-Hermitian spin-1 Richardson-Gaudin
//! generator. Late-time correlators decay as power laws t^(-α); the exponent
//! α(ν) has a cusp at ν = 2 (a temporal phase transition), which the
//! [`exact`] closed forms, the [`saddle`] asymptotics and the [`fit`]
//! extraction machinery all expose.
//!
//! Module map:
//! - [`sparse`], [`spin`]: sparse complex matrices and the spin operator zoo
//! - [`ode`]: adaptive Dormand-Prince integration in logarithmic time
//! - [`specfun`]: Γ, Bessel J/Y of real order, generalized hypergeometric ₁F₂
//! - [`lindblad`]: vectorized master equation for the physical spins
//! - [`rg`]: spin-1 Richardson-Gaudin correlator dynamics and translations
//! - [`exact`]: closed-form n ≤ 2 solutions and decay-exponent predictions
//! - [`saddle`]: Yang-Yang saddle-point asymptote of the correlator state
//! - [`fit`]: log-log power-law fitting with envelope handling
//! - [`config`], [`report`]: run configuration and CSV/manifest output

pub mod config;
pub mod exact;
pub mod fit;
pub mod lindblad;
pub mod ode;
pub mod report;
pub mod rg;
pub mod saddle;
pub mod sparse;
pub mod specfun;
pub mod spin;

pub use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub type C64 = num_complex::Complex64;

/// One index of a correlation function: which operator sits on a site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinIndex {
    Z,
    Plus,
    Minus,
}

impl SpinIndex {
    /// The conjugate label (+ <-> -, z fixed).
    pub fn conjugate(self) -> Self {
        match self {
            SpinIndex::Z => SpinIndex::Z,
            SpinIndex::Plus => SpinIndex::Minus,
            SpinIndex::Minus => SpinIndex::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            SpinIndex::Z => 'z',
            SpinIndex::Plus => '+',
            SpinIndex::Minus => '-',
        }
    }
}

/// Which sites of the chain carry which index in {z, +, -}.
///
/// The assignment list is kept sorted by site; `n` is the order of the
/// correlator and `n1` counts the z entries, the pair that fixes the
/// predicted decay exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorrelatorLabel {
    assignments: Vec<(usize, SpinIndex)>,
}

#[derive(Debug, thiserror::Error)]
pub enum LabelError {
    #[error("correlator label needs at least one site")]
    Empty,
    #[error("duplicate site {0} in correlator label")]
    DuplicateSite(usize),
    #[error("site {site} out of range for {n_sites} spins")]
    SiteOutOfRange { site: usize, n_sites: usize },
}

impl CorrelatorLabel {
    pub fn new(mut assignments: Vec<(usize, SpinIndex)>) -> Result<Self, LabelError> {
        if assignments.is_empty() {
            return Err(LabelError::Empty);
        }
        assignments.sort_by_key(|&(s, _)| s);
        for w in assignments.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(LabelError::DuplicateSite(w[0].0));
            }
        }
        Ok(Self { assignments })
    }

    pub fn assignments(&self) -> &[(usize, SpinIndex)] {
        &self.assignments
    }

    pub fn sites(&self) -> Vec<usize> {
        self.assignments.iter().map(|&(s, _)| s).collect()
    }

    pub fn indices(&self) -> Vec<SpinIndex> {
        self.assignments.iter().map(|&(_, a)| a).collect()
    }

    /// Order of the correlator.
    pub fn n(&self) -> usize {
        self.assignments.len()
    }

    /// Number of z assignments.
    pub fn n1(&self) -> usize {
        self.assignments.iter().filter(|&&(_, a)| a == SpinIndex::Z).count()
    }

    /// Largest referenced site.
    pub fn max_site(&self) -> usize {
        self.assignments.last().map(|&(s, _)| s).unwrap_or(0)
    }

    /// The label with every + flipped to - and vice versa.
    pub fn conjugate(&self) -> Self {
        Self {
            assignments: self.assignments.iter().map(|&(s, a)| (s, a.conjugate())).collect(),
        }
    }
}

impl std::fmt::Display for CorrelatorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "c_")?;
        for &(site, a) in &self.assignments {
            write!(f, "{}{}", a.symbol(), site)?;
        }
        Ok(())
    }
}

/// Ramp parameters shared by every generator in the crate.
///
/// The dissipative couplings are g±(t) = 1/(nu·t); g_z is carried for
/// completeness but frozen at zero (collective dephasing is present in the
/// model yet inactive throughout).
#[derive(Debug, Clone, PartialEq)]
pub struct RampConfig {
    /// Ramp rate ν > 0.
    pub nu: f64,
    /// Zeeman fields ε_1 < ε_2 < ... < ε_N.
    pub epsilons: Vec<f64>,
    /// Start of the time window; g(t) is singular at t = 0, so t_init > 0.
    pub t_init: f64,
    /// End of the time window.
    pub t_final: f64,
    /// Collective dephasing strength, fixed at 0.
    pub g_z: f64,
}

/// Validation failures for [`RampConfig`].
#[derive(Debug, thiserror::Error)]
pub enum RampConfigError {
    #[error("ramp rate nu must be positive, got {0}")]
    NonPositiveNu(f64),
    #[error("t_init must be positive, got {0}")]
    NonPositiveTInit(f64),
    #[error("time window must be ordered: t_init = {0}, t_final = {1}")]
    BadWindow(f64, f64),
    #[error("epsilons must be strictly increasing (violated at index {0})")]
    EpsilonOrder(usize),
    #[error("at least one epsilon is required")]
    NoEpsilons,
}

impl RampConfig {
    /// Build a validated config with g_z = 0.
    pub fn new(
        nu: f64,
        epsilons: Vec<f64>,
        t_init: f64,
        t_final: f64,
    ) -> Result<Self, RampConfigError> {
        if !(nu > 0.0) {
            return Err(RampConfigError::NonPositiveNu(nu));
        }
        if !(t_init > 0.0) {
            return Err(RampConfigError::NonPositiveTInit(t_init));
        }
        if !(t_final > t_init) {
            return Err(RampConfigError::BadWindow(t_init, t_final));
        }
        if epsilons.is_empty() {
            return Err(RampConfigError::NoEpsilons);
        }
        for i in 1..epsilons.len() {
            if !(epsilons[i] > epsilons[i - 1]) {
                return Err(RampConfigError::EpsilonOrder(i));
            }
        }
        Ok(Self { nu, epsilons, t_init, t_final, g_z: 0.0 })
    }

    /// Number of spins / sites carried by this config.
    pub fn n_sites(&self) -> usize {
        self.epsilons.len()
    }

    /// The ramped coupling g(t) = 1/(νt).
    pub fn g(&self, t: f64) -> f64 {
        1.0 / (self.nu * t)
    }
}
