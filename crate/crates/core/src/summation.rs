//! Compensated summation.
//!
//! Every finite spectral sum in the crate goes through [`ComplexSum`], which
//! applies Neumaier's variant of Kahan summation to the real and imaginary
//! parts separately. Terms are added in the caller's order, so results are
//! bitwise reproducible for a fixed order.

use num_complex::Complex64;

/// Complex value in binary64.
pub type ComplexScalar = Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = Self::new();
        iter.into_iter().for_each(|z| s.add(z));
        s
    }
}

/// Compensated sum of real terms.
pub fn sum_f64<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    terms.into_iter().collect::<NeumaierSum>().value()
}

/// Compensated sum of complex terms.
pub fn sum_complex<I: IntoIterator<Item = Complex64>>(terms: I) -> Complex64 {
    terms.into_iter().collect::<ComplexSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let v = sum_f64([1e100, 1.0, -1e100]);
        assert_eq!(v, 1.0);
        let z = sum_complex([
            Complex64::new(1e20, -1e20),
            Complex64::new(3.0, 2.0),
            Complex64::new(-1e20, 1e20),
        ]);
        assert_eq!(z, Complex64::new(3.0, 2.0));
    }
}
