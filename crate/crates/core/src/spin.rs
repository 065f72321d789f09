//! The fixed spin-operator zoo: spin-1/2 Pauli/ladder matrices, spin-1
//! matrices in the spherical basis, and tensor embedding into a chain.
//!
//! Conventions used by the whole crate:
//! - σ± = ½(σˣ ± iσʸ), so tr(ρσ±) picks up a compensating factor 2 when
//!   read as a correlation function (see [`crate::lindblad`]).
//! - Spin-1 basis ordering is (+1, 0, −1) top to bottom, S^z = diag(1, 0, −1).
//!   The correlator translation tables in [`crate::rg`] depend on this
//!   ordering; it is fixed here once.

use crate::sparse::SparseComplexOperator;
use crate::C64;

/// Which spin representation an operator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinKind {
    /// 2x2 spin-1/2 (Pauli) operators.
    Half,
    /// 3x3 spin-1 operators.
    One,
}

impl SpinKind {
    pub fn dim(self) -> usize {
        match self {
            SpinKind::Half => 2,
            SpinKind::One => 3,
        }
    }
}

/// Index into the Pauli family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliKind {
    X,
    Y,
    Z,
    /// 2x2 identity.
    Zero,
    Plus,
    Minus,
}

/// Index into the spin-1 family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin1Kind {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// 2x2 Pauli-family matrix; σ± carry the factor ½.
pub fn pauli(kind: PauliKind) -> SparseComplexOperator {
    let t = match kind {
        PauliKind::X => vec![(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))],
        PauliKind::Y => vec![(0, 1, c(0.0, -1.0)), (1, 0, c(0.0, 1.0))],
        PauliKind::Z => vec![(0, 0, c(1.0, 0.0)), (1, 1, c(-1.0, 0.0))],
        PauliKind::Zero => vec![(0, 0, c(1.0, 0.0)), (1, 1, c(1.0, 0.0))],
        PauliKind::Plus => vec![(0, 1, c(1.0, 0.0))],
        PauliKind::Minus => vec![(1, 0, c(1.0, 0.0))],
    };
    SparseComplexOperator::from_triplets(2, 2, t).expect("static 2x2")
}

/// 3x3 spin-1 matrix in the (+1, 0, −1) spherical basis.
pub fn spin1(kind: Spin1Kind) -> SparseComplexOperator {
    let s = std::f64::consts::SQRT_2;
    let t = match kind {
        Spin1Kind::X => vec![
            (0, 1, c(1.0 / s, 0.0)),
            (1, 0, c(1.0 / s, 0.0)),
            (1, 2, c(1.0 / s, 0.0)),
            (2, 1, c(1.0 / s, 0.0)),
        ],
        Spin1Kind::Y => vec![
            (0, 1, c(0.0, -1.0 / s)),
            (1, 0, c(0.0, 1.0 / s)),
            (1, 2, c(0.0, -1.0 / s)),
            (2, 1, c(0.0, 1.0 / s)),
        ],
        Spin1Kind::Z => vec![(0, 0, c(1.0, 0.0)), (2, 2, c(-1.0, 0.0))],
        Spin1Kind::Plus => vec![(0, 1, c(s, 0.0)), (1, 2, c(s, 0.0))],
        Spin1Kind::Minus => vec![(1, 0, c(s, 0.0)), (2, 1, c(s, 0.0))],
    };
    SparseComplexOperator::from_triplets(3, 3, t).expect("static 3x3")
}

#[derive(Debug, thiserror::Error)]
#[error("site {site} out of range for chain of {n_sites}")]
pub struct SiteOutOfRange {
    pub site: usize,
    pub n_sites: usize,
}

/// Embed `op` at `site` in an `n_sites` chain: I ⊗ ... ⊗ op ⊗ ... ⊗ I.
///
/// Site 0 is the leftmost tensor factor.
pub fn site_operator(
    op: &SparseComplexOperator,
    site: usize,
    n_sites: usize,
) -> Result<SparseComplexOperator, SiteOutOfRange> {
    if site >= n_sites {
        return Err(SiteOutOfRange { site, n_sites });
    }
    let d = op.nrows();
    let left = SparseComplexOperator::identity(d.pow(site as u32));
    let right = SparseComplexOperator::identity(d.pow((n_sites - site - 1) as u32));
    Ok(left.kron(op).kron(&right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commutator(
        a: &SparseComplexOperator,
        b: &SparseComplexOperator,
    ) -> SparseComplexOperator {
        let ab = a.matmul(b).unwrap();
        let ba = b.matmul(a).unwrap();
        ab.add(&ba.scale(C64::new(-1.0, 0.0))).unwrap()
    }

    #[test]
    fn pauli_z_and_identity() {
        let z = pauli(PauliKind::Z).to_dense();
        assert_eq!(z[0], C64::new(1.0, 0.0));
        assert_eq!(z[3], C64::new(-1.0, 0.0));
        assert_eq!(pauli(PauliKind::Zero), SparseComplexOperator::identity(2));
    }

    #[test]
    fn pauli_ladder_anticommutator_is_identity() {
        // With σ± = ½(σˣ ± iσʸ): σ+σ− + σ−σ+ = I.
        let p = pauli(PauliKind::Plus);
        let m = pauli(PauliKind::Minus);
        let anti = p.matmul(&m).unwrap().add(&m.matmul(&p).unwrap()).unwrap();
        assert!(anti.max_abs_diff(&SparseComplexOperator::identity(2)) < 1e-15);
    }

    #[test]
    fn pauli_pm_from_xy() {
        let x = pauli(PauliKind::X);
        let y = pauli(PauliKind::Y);
        let half = C64::new(0.5, 0.0);
        let i_half = C64::new(0.0, 0.5);
        let plus = x.scale(half).add(&y.scale(i_half)).unwrap();
        assert!(plus.max_abs_diff(&pauli(PauliKind::Plus)) < 1e-15);
    }

    #[test]
    fn spin1_z_is_diag_1_0_m1() {
        let z = spin1(Spin1Kind::Z).to_dense();
        assert_eq!(z[0], C64::new(1.0, 0.0));
        assert_eq!(z[4], C64::new(0.0, 0.0));
        assert_eq!(z[8], C64::new(-1.0, 0.0));
    }

    #[test]
    fn spin1_ladder_normalization() {
        // S+ |−1⟩ = √2 |0⟩.
        let plus = spin1(Spin1Kind::Plus);
        let minus_one = [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        let v = plus.apply(&minus_one).unwrap();
        assert!((v[1] - C64::new(std::f64::consts::SQRT_2, 0.0)).norm() < 1e-15);
        assert!(v[0].norm() < 1e-15 && v[2].norm() < 1e-15);
    }

    #[test]
    fn su2_commutators_both_kinds() {
        // [S^z, S^±] = ±S^±, [S^+, S^−] = 2 S^z, exactly.
        let half = (
            pauli(PauliKind::Z).scale(C64::new(0.5, 0.0)), // s^z = σ^z/2
            pauli(PauliKind::Plus),
            pauli(PauliKind::Minus),
        );
        let one = (spin1(Spin1Kind::Z), spin1(Spin1Kind::Plus), spin1(Spin1Kind::Minus));
        for (z, p, m) in [half, one] {
            assert!(commutator(&z, &p).max_abs_diff(&p) < 1e-15);
            assert!(commutator(&z, &m).max_abs_diff(&m.scale(C64::new(-1.0, 0.0))) < 1e-15);
            assert!(commutator(&p, &m).max_abs_diff(&z.scale(C64::new(2.0, 0.0))) < 1e-15);
        }
    }

    #[test]
    fn spin1_pm_match_xy() {
        let x = spin1(Spin1Kind::X);
        let y = spin1(Spin1Kind::Y);
        let plus = x.add(&y.scale(C64::new(0.0, 1.0))).unwrap();
        let minus = x.add(&y.scale(C64::new(0.0, -1.0))).unwrap();
        assert!(plus.max_abs_diff(&spin1(Spin1Kind::Plus)) < 1e-15);
        assert!(minus.max_abs_diff(&spin1(Spin1Kind::Minus)) < 1e-15);
    }

    #[test]
    fn site_operator_embedding() {
        // σᶻ ⊗ I = diag(1, 1, −1, −1).
        let sz = site_operator(&pauli(PauliKind::Z), 0, 2).unwrap();
        let d = sz.to_dense();
        assert_eq!(d[0], C64::new(1.0, 0.0));
        assert_eq!(d[5], C64::new(1.0, 0.0));
        assert_eq!(d[10], C64::new(-1.0, 0.0));
        assert_eq!(d[15], C64::new(-1.0, 0.0));

        // Identity embeds to identity for any site.
        for k in 0..3 {
            let id = site_operator(&pauli(PauliKind::Zero), k, 3).unwrap();
            assert_eq!(id, SparseComplexOperator::identity(8));
        }

        // S^z at site 1 of 2 on |0, −1⟩ gives eigenvalue −1.
        let szq = site_operator(&spin1(Spin1Kind::Z), 1, 2).unwrap();
        let mut v = vec![C64::new(0.0, 0.0); 9];
        v[1 * 3 + 2] = C64::new(1.0, 0.0); // |0, −1⟩
        let w = szq.apply(&v).unwrap();
        assert!((w[5] - C64::new(-1.0, 0.0)).norm() < 1e-15);

        assert!(site_operator(&pauli(PauliKind::Z), 2, 2).is_err());
    }

    #[test]
    fn distinct_sites_commute() {
        let n = 3;
        let a = site_operator(&spin1(Spin1Kind::Plus), 0, n).unwrap();
        let b = site_operator(&spin1(Spin1Kind::Minus), 2, n).unwrap();
        assert!(commutator(&a, &b).max_abs() == 0.0);
        let c_ = site_operator(&pauli(PauliKind::Plus), 1, n).unwrap();
        let d = site_operator(&pauli(PauliKind::Y), 2, n).unwrap();
        assert!(commutator(&c_, &d).max_abs() == 0.0);
    }
}
