use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Serialize};

/// An element of the two-real-dimensional carrier, realized as the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Amplitude {
    pub re: f64,
    pub im: f64,
}

impl Amplitude {
    pub const ZERO: Amplitude = Amplitude { re: 0.0, im: 0.0 };
    pub const ONE: Amplitude = Amplitude { re: 1.0, im: 0.0 };
    /// The quarter-turn `u(pi/2)`, used for reflections at a symmetric splitter.
    pub const I: Amplitude = Amplitude { re: 0.0, im: 1.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Amplitude { re, im }
    }

    pub fn real(re: f64) -> Self {
        Amplitude { re, im: 0.0 }
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn scale(self, k: f64) -> Self {
        Amplitude {
            re: self.re * k,
            im: self.im * k,
        }
    }
}

impl Add for Amplitude {
    type Output = Amplitude;

    fn add(self, rhs: Amplitude) -> Amplitude {
        Amplitude {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Mul for Amplitude {
    type Output = Amplitude;

    fn mul(self, rhs: Amplitude) -> Amplitude {
        Amplitude {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Neg for Amplitude {
    type Output = Amplitude;

    fn neg(self) -> Amplitude {
        Amplitude {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// The unit carrier element `u(phi) = (cos phi, sin phi)`.
pub fn phase(phi: f64) -> Amplitude {
    let (s, c) = phi.sin_cos();
    Amplitude { re: c, im: s }
}

/// Amplitude of "either alternative" when no record tells them apart.
pub fn sum_alternatives(a: Amplitude, b: Amplitude) -> Amplitude {
    a + b
}

/// Amplitude of traversing `a` and then `b`.
pub fn concat(a: Amplitude, b: Amplitude) -> Amplitude {
    a * b
}
