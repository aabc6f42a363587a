use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// A real/reactive component pair in per unit.
///
/// Used both for powers (P, Q) and for the dual multipliers paired with the
/// power-balance constraints.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PqPair {
    pub p: f64,
    pub q: f64,
}

impl PqPair {
    pub const ZERO: PqPair = PqPair { p: 0.0, q: 0.0 };

    pub fn new(p: f64, q: f64) -> Self {
        Self { p, q }
    }

    pub fn norm(self) -> f64 {
        self.p.hypot(self.q)
    }

    pub fn norm_sq(self) -> f64 {
        self.p * self.p + self.q * self.q
    }

    pub fn is_finite(self) -> bool {
        self.p.is_finite() && self.q.is_finite()
    }

    pub fn scale(self, w: f64) -> Self {
        Self::new(self.p * w, self.q * w)
    }
}

impl Add for PqPair {
    type Output = PqPair;
    fn add(self, rhs: PqPair) -> PqPair {
        PqPair::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl AddAssign for PqPair {
    fn add_assign(&mut self, rhs: PqPair) {
        self.p += rhs.p;
        self.q += rhs.q;
    }
}

impl Sub for PqPair {
    type Output = PqPair;
    fn sub(self, rhs: PqPair) -> PqPair {
        PqPair::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl Neg for PqPair {
    type Output = PqPair;
    fn neg(self) -> PqPair {
        PqPair::new(-self.p, -self.q)
    }
}

impl Mul<f64> for PqPair {
    type Output = PqPair;
    fn mul(self, w: f64) -> PqPair {
        self.scale(w)
    }
}

impl fmt::Display for PqPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}
