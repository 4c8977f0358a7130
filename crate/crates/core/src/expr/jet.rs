use std::ops::{Add, Mul, Neg, Sub};

/// A value with its first three derivatives with respect to the curve
/// parameter, composed by truncated Taylor arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet3 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet3 {
    pub const fn new(v: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Jet3 { v, d1, d2, d3 }
    }

    pub const fn constant(v: f64) -> Self {
        Jet3::new(v, 0.0, 0.0, 0.0)
    }

    /// The independent variable at `t`.
    pub const fn variable(t: f64) -> Self {
        Jet3::new(t, 1.0, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.v, self.d1, self.d2, self.d3]
    }

    /// Applies a scalar function given its value and first three derivatives
    /// at `self.v` (Faà di Bruno to third order).
    pub fn compose(&self, phi: [f64; 4]) -> Jet3 {
        let [p0, p1, p2, p3] = phi;
        let (d1, d2, d3) = (self.d1, self.d2, self.d3);
        Jet3 {
            v: p0,
            d1: p1 * d1,
            d2: p2 * d1 * d1 + p1 * d2,
            d3: p3 * d1 * d1 * d1 + 3.0 * p2 * d1 * d2 + p1 * d3,
        }
    }

    /// `1/self`; `None` when the value is zero.
    pub fn recip(&self) -> Option<Jet3> {
        let x = self.v;
        if x == 0.0 {
            return None;
        }
        let r = 1.0 / x;
        Some(self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]))
    }

    /// Integer power by binary exponentiation (non-negative exponent).
    pub fn powu(&self, mut n: u64) -> Jet3 {
        let mut base = *self;
        let mut acc = Jet3::constant(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            n >>= 1;
            if n > 0 {
                base = base * base;
            }
        }
        acc
    }

    pub fn sin(&self) -> Jet3 {
        let (s, c) = self.v.sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Jet3 {
        let (s, c) = self.v.sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn exp(&self) -> Jet3 {
        let e = self.v.exp();
        self.compose([e, e, e, e])
    }

    pub fn sinh(&self) -> Jet3 {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.compose([s, c, s, c])
    }

    pub fn cosh(&self) -> Jet3 {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.compose([c, s, c, s])
    }

    pub fn atan(&self) -> Jet3 {
        let x = self.v;
        let q = 1.0 / (1.0 + x * x);
        self.compose([
            x.atan(),
            q,
            -2.0 * x * q * q,
            (6.0 * x * x - 2.0) * q * q * q,
        ])
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        Jet3::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        Jet3::new(-self.v, -self.d1, -self.d2, -self.d3)
    }
}

/// Leibniz rule truncated at order 3.
impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, o: Jet3) -> Jet3 {
        Jet3 {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
            d3: self.d3 * o.v + 3.0 * self.d2 * o.d1 + 3.0 * self.d1 * o.d2 + self.v * o.d3,
        }
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;
    fn mul(self, k: f64) -> Jet3 {
        Jet3::new(self.v * k, self.d1 * k, self.d2 * k, self.d3 * k)
    }
}
