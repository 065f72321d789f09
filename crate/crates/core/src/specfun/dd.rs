//! Minimal double-double arithmetic (~31 significant digits).
//!
//! Used only to push alternating-series summation (₁F₂ at z = -τ²) a decade
//! or two past where f64 cancellation destroys it. Algorithms are the
//! standard error-free transformations (Knuth two-sum, FMA two-product).

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * x);
        Dd { hi, lo }
    }

    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let (p1, p2) = two_prod(q1, x);
        let r = (self.hi - p1) + (self.lo - p2);
        let q2 = r / x;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_survives() {
        // (1e16 + 1) - 1e16 == 1 in dd, == 0-or-2 territory in f64.
        let a = Dd::from_f64(1e16).add(Dd::ONE);
        let b = a.add(Dd::from_f64(-1e16));
        assert_eq!(b.to_f64(), 1.0);
    }

    #[test]
    fn mul_keeps_extra_digits() {
        // (1 + 2^-60)^2 = 1 + 2^-59 + 2^-120; f64 sees exactly 1.
        let x = Dd { hi: 1.0, lo: (2.0f64).powi(-60) };
        let y = x.mul(x);
        assert!((y.lo - (2.0f64).powi(-59)).abs() < 1e-24);
    }

    #[test]
    fn exp_series_matches_std() {
        // Σ 1/k! in dd should hit e to ~1e-30; check f64 round.
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for k in 1..30 {
            term = term.div_f64(k as f64);
            sum = sum.add(term);
        }
        assert!((sum.to_f64() - std::f64::consts::E).abs() < 1e-15);
    }
}
