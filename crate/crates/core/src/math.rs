//! Small numeric helpers shared across modules.

use num_complex::Complex64;

/// Neumaier-compensated running sum. Order of `add` calls fixes the result bit for bit.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

/// `conj(a) * b`, written out so that `conj_mul(a, b)` and `conj_mul(b, a)` are
/// exact complex conjugates of each other.
#[inline]
pub fn conj_mul(a: Complex64, b: Complex64) -> Complex64 {
    Complex64::new(a.re * b.re + a.im * b.im, a.re * b.im - a.im * b.re)
}
