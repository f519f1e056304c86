use num_complex::Complex64;
use std::fmt;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Dense complex polynomial, coefficients in ascending degree order.
///
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial, dropping trailing coefficients that are exactly zero.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial, dropping trailing coefficients with modulus at most
    /// `leading * max |c_k|`.
    pub fn trimmed(mut coeffs: Vec<Complex64>, leading: f64) -> Self {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while coeffs.last().is_some_and(|c| c.norm() <= leading * scale) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(ONE)
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = ONE;
        Poly { coeffs }
    }

    /// Monic polynomial with the given roots, each listed once per multiplicity.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Complex64>) -> Self {
        let mut coeffs = vec![ONE];
        for &r in roots {
            coeffs.push(ZERO);
            for k in (1..coeffs.len()).rev() {
                coeffs[k] = coeffs[k - 1] - r * coeffs[k];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `sum |c_k| |z|^k`, the natural scale for the residual at `z`.
    pub fn abs_eval(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Coefficients of `p(z + c)`; entry `m` equals `p^(m)(c) / m!`.
    pub fn taylor_at(&self, c: Complex64) -> Vec<Complex64> {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let next = a[k + 1];
                a[k] += c * next;
            }
        }
        a
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Coefficient vector padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Complex64> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), ZERO);
        v
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.im == 0.0 {
                format!("{}", c.re)
            } else {
                format!("({}{:+}i)", c.re, c.im)
            };
            match k {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}z")?,
                _ => write!(f, "{coef}z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn from_roots_expands() {
        let p = Poly::from_roots(&[c(1.0), c(-1.0)]);
        assert_eq!(p.coeffs(), &[c(-1.0), c(0.0), c(1.0)]);
    }

    #[test]
    fn taylor_at_gives_scaled_derivatives() {
        // (z - 1/2)^3 around 1/2 is z^3
        let p = Poly::from_roots(&[c(0.5), c(0.5), c(0.5)]);
        let t = p.taylor_at(c(0.5));
        assert!(t[0].norm() < 1e-15 && t[1].norm() < 1e-15 && t[2].norm() < 1e-15);
        assert!((t[3] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn trimmed_drops_noise() {
        let p = Poly::trimmed(vec![c(1.0), c(2.0), c(1e-17)], 1e-13);
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(Poly::from_real(&[0.0, 4.0, 1.0]).to_string(), "1z^2 + 4z");
    }
}
