//! Complex polynomials and rational functions.
//!
//! A [`RatFun`] always carries both its coefficient form (numerator and monic
//! denominator) and its factored form (gain, zeros, poles). Products,
//! composition and conjugate reflection are carried out on the factored form
//! so that roots never have to be re-extracted from expanded products.

mod poly;
mod roots;

pub use poly::Poly;
pub use roots::{poly_roots, RootMultiset};

use num_complex::Complex64;
use std::fmt;

use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Normalized rational function `num / den`.
///
/// Invariants: `den` is monic, `num` and `den` share no root within
/// `root_match`, and `gain` is the leading coefficient of `num`.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
    gain: Complex64,
    zeros: RootMultiset,
    poles: RootMultiset,
}

impl RatFun {
    /// Normalizes `num / den`: cancels common roots and makes `den` monic.
    pub fn new(num: Poly, den: Poly, tol: &ToleranceConfig) -> Result<Self> {
        let den = Poly::trimmed(den.into_coeffs(), tol.leading);
        if den.is_zero() {
            return Err(Error::DegenerateInput("zero denominator".into()));
        }
        let num = Poly::trimmed(num.into_coeffs(), tol.leading);
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let zeros = poly_roots(&num, tol)?;
        let poles = poly_roots(&den, tol)?;
        Ok(RatFun::from_factors(
            num.leading() / den.leading(),
            zeros,
            poles,
            tol,
        ))
    }

    pub fn from_poly(p: Poly, tol: &ToleranceConfig) -> Result<Self> {
        RatFun::new(p, Poly::one(), tol)
    }

    /// `gain * prod (z - zero) / prod (z - pole)`, with common roots cancelled.
    pub fn from_factors(
        gain: Complex64,
        zeros: RootMultiset,
        poles: RootMultiset,
        tol: &ToleranceConfig,
    ) -> Self {
        if gain == ZERO {
            return RatFun::zero();
        }
        let mut zeros = zeros;
        let mut poles = poles;
        RootMultiset::cancel_common(&mut zeros, &mut poles, tol);
        let num = zeros.to_poly().scale(gain);
        let den = poles.to_poly();
        RatFun {
            num,
            den,
            gain,
            zeros,
            poles,
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
            gain: ZERO,
            zeros: RootMultiset::new(),
            poles: RootMultiset::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        if c == ZERO {
            return RatFun::zero();
        }
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
            gain: c,
            zeros: RootMultiset::new(),
            poles: RootMultiset::new(),
        }
    }

    pub fn one() -> Self {
        RatFun::constant(ONE)
    }

    /// `z^k` for any integer `k`.
    pub fn z_power(k: i32) -> Self {
        let (zeros, poles) = if k >= 0 {
            (RootMultiset::single(ZERO, k as usize), RootMultiset::new())
        } else {
            (
                RootMultiset::new(),
                RootMultiset::single(ZERO, (-k) as usize),
            )
        };
        RatFun {
            num: zeros.to_poly(),
            den: poles.to_poly(),
            gain: ONE,
            zeros,
            poles,
        }
    }

    pub fn z() -> Self {
        RatFun::z_power(1)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn gain(&self) -> Complex64 {
        self.gain
    }

    pub fn zeros(&self) -> &RootMultiset {
        &self.zeros
    }

    pub fn poles(&self) -> &RootMultiset {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.gain == ZERO
    }

    pub fn is_constant(&self) -> bool {
        self.zeros.is_empty() && self.poles.is_empty()
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.zeros.degree().max(self.poles.degree())
    }

    /// Order of the zero (positive) or pole (negative) at the origin.
    pub fn origin_order(&self, tol: &ToleranceConfig) -> i64 {
        self.zeros.multiplicity_of(ZERO, tol) as i64 - self.poles.multiplicity_of(ZERO, tol) as i64
    }

    /// Horner evaluation; errors at (numerical) poles.
    pub fn eval(&self, z: Complex64, tol: &ToleranceConfig) -> Result<Complex64> {
        let d = self.den.eval(z);
        let scale = self.den.abs_eval(z).max(self.den.norm());
        if d.norm() < tol.eval_pole * scale {
            return Err(Error::PoleEvaluation {
                magnitude: d.norm(),
            });
        }
        Ok(self.num.eval(z) / d)
    }

    /// Horner evaluation without the pole check.
    /// Value at `z` from the factored form, which keeps full relative
    /// accuracy when expanded coefficients are much larger than the values.
    pub fn value(&self, z: Complex64) -> Complex64 {
        let mut v = self.gain;
        for &(r, m) in self.zeros.iter() {
            v *= (z - r).powu(m as u32);
        }
        for &(p, m) in self.poles.iter() {
            v /= (z - p).powu(m as u32);
        }
        v
    }

    /// Value at infinity (`None` when there is a pole at infinity).
    pub fn value_at_infinity(&self) -> Option<Complex64> {
        use std::cmp::Ordering;
        match self.zeros.degree().cmp(&self.poles.degree()) {
            Ordering::Less => Some(ZERO),
            Ordering::Equal => Some(self.gain),
            Ordering::Greater => None,
        }
    }

    pub fn scale(&self, s: Complex64) -> RatFun {
        if s == ZERO || self.is_zero() {
            return RatFun::zero();
        }
        if s == ONE {
            return self.clone();
        }
        let mut out = self.clone();
        out.gain *= s;
        out.num = out.num.scale(s);
        out
    }

    pub fn mul(&self, other: &RatFun, tol: &ToleranceConfig) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        if other.is_constant() {
            return self.scale(other.gain);
        }
        if self.is_constant() {
            return other.scale(self.gain);
        }
        RatFun::from_factors(
            self.gain * other.gain,
            self.zeros.union(&other.zeros, tol),
            self.poles.union(&other.poles, tol),
            tol,
        )
    }

    pub fn inv(&self, tol: &ToleranceConfig) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DegenerateInput("reciprocal of zero".into()));
        }
        Ok(RatFun::from_factors(
            ONE / self.gain,
            self.poles.clone(),
            self.zeros.clone(),
            tol,
        ))
    }

    pub fn div(&self, other: &RatFun, tol: &ToleranceConfig) -> Result<RatFun> {
        Ok(self.mul(&other.inv(tol)?, tol))
    }

    pub fn powi(&self, k: i32, tol: &ToleranceConfig) -> Result<RatFun> {
        let base = if k < 0 { self.inv(tol)? } else { self.clone() };
        let k = k.unsigned_abs() as usize;
        if base.is_zero() {
            return Ok(if k == 0 {
                RatFun::one()
            } else {
                RatFun::zero()
            });
        }
        let rep =
            |m: &RootMultiset| RootMultiset::from_pairs(m.iter().map(|&(r, n)| (r, n * k)), tol);
        Ok(RatFun::from_factors(
            base.gain.powu(k as u32),
            rep(&base.zeros),
            rep(&base.poles),
            tol,
        ))
    }

    /// Multiplies by `z^k`.
    pub fn mul_z_power(&self, k: i32, tol: &ToleranceConfig) -> RatFun {
        self.mul(&RatFun::z_power(k), tol)
    }

    fn combine(&self, other: &RatFun, sign: f64, tol: &ToleranceConfig) -> Result<RatFun> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.scale(Complex64::new(sign, 0.0)));
        }
        let lcm = self.poles.join(&other.poles, tol);
        let qa = lcm
            .difference(&self.poles, tol)
            .expect("join contains each operand")
            .to_poly();
        let qb = lcm
            .difference(&other.poles, tol)
            .expect("join contains each operand")
            .to_poly();
        let num = self
            .num
            .mul(&qa)
            .add(&other.num.mul(&qb).scale(Complex64::new(sign, 0.0)));
        let scale = self.num.max_abs().max(other.num.max_abs()) * qa.max_abs().max(qb.max_abs());
        let num = Poly::trimmed(num.into_coeffs(), tol.leading);
        if num.is_zero() || num.max_abs() <= tol.leading * scale {
            return Ok(RatFun::zero());
        }
        let zeros = poly_roots(&num, tol)?;
        Ok(RatFun::from_factors(num.leading(), zeros, lcm, tol))
    }

    pub fn add(&self, other: &RatFun, tol: &ToleranceConfig) -> Result<RatFun> {
        self.combine(other, 1.0, tol)
    }

    pub fn sub(&self, other: &RatFun, tol: &ToleranceConfig) -> Result<RatFun> {
        self.combine(other, -1.0, tol)
    }

    pub fn add_constant(&self, c: Complex64, tol: &ToleranceConfig) -> Result<RatFun> {
        self.add(&RatFun::constant(c), tol)
    }

    /// `self(g(z))`.
    pub fn compose(&self, g: &RatFun, tol: &ToleranceConfig) -> Result<RatFun> {
        rat_compose(self, g, tol)
    }

    /// The rational function equal to `conj(self)` on the unit circle.
    pub fn conj_reflect(&self, tol: &ToleranceConfig) -> RatFun {
        conj_reflect(self, tol)
    }

    /// Maximum of `|self - other|` over `n` equispaced circle points.
    pub fn circle_distance(&self, other: &RatFun, n: usize) -> f64 {
        circle_points(n)
            .map(|z| (self.value(z) - other.value(z)).norm())
            .fold(0.0, f64::max)
    }

    /// Maximum of `|self|` over `n` equispaced circle points.
    pub fn circle_max(&self, n: usize) -> f64 {
        circle_points(n)
            .map(|z| self.value(z).norm())
            .fold(0.0, f64::max)
    }

    /// Zeros and poles all at modulus at least `radius`.
    pub fn roots_outside(&self, radius: f64) -> bool {
        self.zeros.iter().all(|(r, _)| r.norm() >= radius)
            && self.poles.iter().all(|(r, _)| r.norm() >= radius)
    }
}

/// `n` equispaced points on the unit circle starting at 1.
pub fn circle_points(n: usize) -> impl Iterator<Item = Complex64> {
    (0..n)
        .map(move |j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
}

/// `f(g(z))` as a normalized rational function.
pub fn rat_compose(f: &RatFun, g: &RatFun, tol: &ToleranceConfig) -> Result<RatFun> {
    if f.is_zero() || f.is_constant() {
        return Ok(f.clone());
    }
    let ng = &g.num;
    let dg = &g.den;
    let mut gain = f.gain;
    let mut zeros = RootMultiset::new();
    let mut poles = RootMultiset::new();

    // roots of Ng - r Dg and the leading coefficient of that polynomial
    let solve = |r: Complex64| -> Result<Option<(Complex64, RootMultiset)>> {
        if r == ZERO {
            if g.is_zero() {
                return Ok(None);
            }
            return Ok(Some((g.gain, g.zeros.clone())));
        }
        let p = Poly::trimmed(ng.sub(&dg.scale(r)).into_coeffs(), tol.leading);
        if p.is_zero() {
            return Ok(None);
        }
        Ok(Some((p.leading(), poly_roots(&p, tol)?)))
    };

    for &(r, m) in f.zeros.iter() {
        match solve(r)? {
            None => return Ok(RatFun::zero()),
            Some((lead, roots)) => {
                gain *= lead.powu(m as u32);
                for &(s, k) in roots.iter() {
                    zeros.insert(s, k * m, tol);
                }
            }
        }
    }
    for &(p, n) in f.poles.iter() {
        match solve(p)? {
            None => {
                return Err(Error::DegenerateInput(
                    "composition with a constant equal to a pole".into(),
                ))
            }
            Some((lead, roots)) => {
                gain /= lead.powu(n as u32);
                for &(s, k) in roots.iter() {
                    poles.insert(s, k * n, tol);
                }
            }
        }
    }
    let excess = f.poles.degree() as i64 - f.zeros.degree() as i64;
    for &(s, k) in g.poles.iter() {
        if excess > 0 {
            zeros.insert(s, k * excess as usize, tol);
        } else if excess < 0 {
            poles.insert(s, k * (-excess) as usize, tol);
        }
    }
    Ok(RatFun::from_factors(gain, zeros, poles, tol))
}

/// The rational function `f~` with `f~(z) = conj(f(1/conj z))`, so that
/// `f~ = conj(f)` on the unit circle.
pub fn conj_reflect(f: &RatFun, tol: &ToleranceConfig) -> RatFun {
    if f.is_zero() {
        return RatFun::zero();
    }
    let mut gain = f.gain.conj();
    let mut zeros = RootMultiset::new();
    let mut poles = RootMultiset::new();
    for &(r, m) in f.zeros.iter() {
        if r != ZERO {
            gain *= (-r.conj()).powu(m as u32);
            zeros.insert(ONE / r.conj(), m, tol);
        }
    }
    for &(p, n) in f.poles.iter() {
        if p != ZERO {
            gain /= (-p.conj()).powu(n as u32);
            poles.insert(ONE / p.conj(), n, tol);
        }
    }
    let shift = f.poles.degree() as i64 - f.zeros.degree() as i64;
    if shift > 0 {
        zeros.insert(ZERO, shift as usize, tol);
    } else if shift < 0 {
        poles.insert(ZERO, (-shift) as usize, tol);
    }
    RatFun::from_factors(gain, zeros, poles, tol)
}

/// Value of `f` at `z`; errors when `z` is a pole.
pub fn rat_eval(f: &RatFun, z: Complex64, tol: &ToleranceConfig) -> Result<Complex64> {
    f.eval(z, tol)
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests;
