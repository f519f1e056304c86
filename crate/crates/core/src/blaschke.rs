//! Finite Blaschke products, rational outer functions and inner-outer
//! factorization of rational H2 functions.

use num_complex::Complex64;
use std::fmt;

use crate::error::{Error, Result};
use crate::ratfun::{circle_points, Poly, RatFun, RootMultiset};
use crate::tolerance::ToleranceConfig;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `unimodular * prod ((z - a) / (1 - conj(a) z))^m` over zeros in the disc.
#[derive(Clone, Debug)]
pub struct BlaschkeProduct {
    zeros: RootMultiset,
    unimodular: Complex64,
}

impl BlaschkeProduct {
    /// Validates zero locations against the disc margin and the constant
    /// against the unit circle.
    pub fn new(zeros: RootMultiset, unimodular: Complex64, tol: &ToleranceConfig) -> Result<Self> {
        if ((unimodular.norm() - 1.0).abs()) >= 1e-12 {
            return Err(Error::InvalidBlaschke(format!(
                "constant has modulus {}",
                unimodular.norm()
            )));
        }
        for &(a, _) in zeros.iter() {
            if !a.is_finite() || a.norm() > 1.0 - tol.disc_margin {
                return Err(Error::InvalidBlaschke(format!(
                    "zero {a} has modulus {} beyond the disc margin",
                    a.norm()
                )));
            }
        }
        Ok(BlaschkeProduct { zeros, unimodular })
    }

    /// Blaschke product with constant 1 and the given `(zero, multiplicity)` pairs.
    pub fn from_zeros(zeros: &[(Complex64, usize)], tol: &ToleranceConfig) -> Result<Self> {
        BlaschkeProduct::new(
            RootMultiset::from_pairs(zeros.iter().copied(), tol),
            ONE,
            tol,
        )
    }

    /// The single factor `(z - a) / (1 - conj(a) z)`.
    pub fn factor(a: Complex64, tol: &ToleranceConfig) -> Result<Self> {
        BlaschkeProduct::new(RootMultiset::single(a, 1), ONE, tol)
    }

    /// The constant inner function 1.
    pub fn one() -> Self {
        BlaschkeProduct {
            zeros: RootMultiset::new(),
            unimodular: ONE,
        }
    }

    /// `z^n`.
    pub fn z_power(n: usize) -> Self {
        BlaschkeProduct {
            zeros: RootMultiset::single(ZERO, n),
            unimodular: ONE,
        }
    }

    pub fn zeros(&self) -> &RootMultiset {
        &self.zeros
    }

    pub fn unimodular(&self) -> Complex64 {
        self.unimodular
    }

    pub fn degree(&self) -> usize {
        self.zeros.degree()
    }

    pub fn with_unimodular(&self, unimodular: Complex64) -> Self {
        BlaschkeProduct {
            zeros: self.zeros.clone(),
            unimodular,
        }
    }

    /// Same zeros, constant 1.
    pub fn normalized(&self) -> Self {
        self.with_unimodular(ONE)
    }

    /// Direct evaluation of the factored product.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros.iter().fold(self.unimodular, |acc, &(a, m)| {
            acc * ((z - a) / (ONE - a.conj() * z)).powu(m as u32)
        })
    }

    pub fn value_at_zero(&self) -> Complex64 {
        self.eval(ZERO)
    }

    pub fn to_ratfun(&self, tol: &ToleranceConfig) -> RatFun {
        let mut gain = self.unimodular;
        let mut poles = RootMultiset::new();
        for &(a, m) in self.zeros.iter() {
            if a != ZERO {
                gain /= (-a.conj()).powu(m as u32);
                poles.insert(ONE / a.conj(), m, tol);
            }
        }
        RatFun::from_factors(gain, self.zeros.clone(), poles, tol)
    }

    /// Largest deviation of `|B|` from 1 over `n` circle samples.
    pub fn circle_modulus_defect(&self, n: usize) -> f64 {
        circle_points(n)
            .map(|z| (self.eval(z).norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &BlaschkeProduct, tol: &ToleranceConfig) -> BlaschkeProduct {
        BlaschkeProduct {
            zeros: self.zeros.union(&other.zeros, tol),
            unimodular: self.unimodular * other.unimodular,
        }
    }

    /// Exact quotient `self / other`.
    pub fn div(&self, other: &BlaschkeProduct, tol: &ToleranceConfig) -> Result<BlaschkeProduct> {
        let zeros = self
            .zeros
            .difference(&other.zeros, tol)
            .ok_or_else(|| Error::NotDivisible(format!("{other} does not divide {self}")))?;
        Ok(BlaschkeProduct {
            zeros,
            unimodular: self.unimodular / other.unimodular,
        })
    }

    /// `self(psi(z))`.
    pub fn compose(&self, psi: &BlaschkeProduct, tol: &ToleranceConfig) -> Result<BlaschkeProduct> {
        blaschke_compose(self, psi, tol)
    }

    pub fn divides(&self, other: &BlaschkeProduct, tol: &ToleranceConfig) -> bool {
        blaschke_divides(self, other, tol)
    }

    /// Same zero multiset (unimodular constants ignored).
    pub fn same_zeros(&self, other: &BlaschkeProduct, tol: &ToleranceConfig) -> bool {
        self.divides(other, tol) && other.divides(self, tol)
    }

    pub fn is_automorphism(&self) -> bool {
        is_automorphism(self)
    }
}

impl fmt::Display for BlaschkeProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[")?;
        for (i, (a, m)) in self.zeros.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, "]")
    }
}

/// `theta(psi(z))` as a Blaschke product.
///
/// Each zero `a` of `theta` contributes the `deg psi` solutions of
/// `psi(z) = a`; every claimed preimage is checked by evaluating `psi`.
pub fn blaschke_compose(
    theta: &BlaschkeProduct,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<BlaschkeProduct> {
    if psi.degree() == 0 {
        if theta.degree() == 0 {
            return Ok(theta.clone());
        }
        return Err(Error::DegenerateInput(
            "composition with a constant inner function is not inner".into(),
        ));
    }
    let psi_rat = psi.to_ratfun(tol);
    let mut zeros = RootMultiset::new();
    for &(a, m) in theta.zeros.iter() {
        let pre = if a == ZERO {
            psi.zeros.clone()
        } else {
            let p = psi_rat.num().sub(&psi_rat.den().scale(a));
            let p = Poly::trimmed(p.into_coeffs(), tol.leading);
            crate::ratfun::poly_roots(&p, tol)?
        };
        if pre.degree() != psi.degree() {
            return Err(Error::RootFinding(format!(
                "expected {} preimages of {a}, found {}",
                psi.degree(),
                pre.degree()
            )));
        }
        for &(z, k) in pre.iter() {
            let miss = (psi.eval(z) - a).norm();
            if miss > tol.root_residual.sqrt() {
                return Err(Error::RootFinding(format!(
                    "preimage {z} of {a} misses by {miss:e}"
                )));
            }
            zeros.insert(z, k * m, tol);
        }
    }
    let bare = BlaschkeProduct {
        zeros,
        unimodular: ONE,
    };
    let at_one = theta.eval(psi.eval(ONE)) / bare.eval(ONE);
    BlaschkeProduct::new(bare.zeros, normalize_phase(at_one)?, tol)
}

fn normalize_phase(c: Complex64) -> Result<Complex64> {
    if !c.is_finite() || (c.norm() - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidBlaschke(format!(
            "constant {c} is not unimodular"
        )));
    }
    Ok(c / c.norm())
}

/// Zero multiset of `b1` contained in that of `b2`.
pub fn blaschke_divides(b1: &BlaschkeProduct, b2: &BlaschkeProduct, tol: &ToleranceConfig) -> bool {
    b1.zeros.is_submultiset(&b2.zeros, tol)
}

/// Greatest common divisor and least common multiple, both with constant 1.
pub fn blaschke_gcd_lcm(
    bs: &[BlaschkeProduct],
    tol: &ToleranceConfig,
) -> Result<(BlaschkeProduct, BlaschkeProduct)> {
    let (first, rest) = bs
        .split_first()
        .ok_or_else(|| Error::DegenerateInput("empty list of Blaschke products".into()))?;
    let mut gcd = first.zeros.clone();
    let mut lcm = first.zeros.clone();
    for b in rest {
        gcd = gcd.meet(&b.zeros, tol);
        lcm = lcm.join(&b.zeros, tol);
    }
    Ok((
        BlaschkeProduct {
            zeros: gcd,
            unimodular: ONE,
        },
        BlaschkeProduct {
            zeros: lcm,
            unimodular: ONE,
        },
    ))
}

pub fn is_automorphism(psi: &BlaschkeProduct) -> bool {
    psi.degree() == 1
}

/// Rational function with no zeros or poles in the closed disc.
#[derive(Clone, Debug)]
pub struct OuterRational {
    value: RatFun,
}

impl OuterRational {
    pub fn new(value: RatFun, tol: &ToleranceConfig) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::DegenerateInput("zero is not outer".into()));
        }
        let bound = 1.0 + tol.disc_margin;
        if let Some(&(r, _)) = value.zeros().iter().find(|(r, _)| r.norm() < bound) {
            return Err(Error::HypothesisViolated(format!(
                "outer function has a zero at {r} (modulus {})",
                r.norm()
            )));
        }
        if let Some(&(p, _)) = value.poles().iter().find(|(p, _)| p.norm() < bound) {
            return Err(Error::NotInH2 { modulus: p.norm() });
        }
        Ok(OuterRational { value })
    }

    pub fn one() -> Self {
        OuterRational {
            value: RatFun::one(),
        }
    }

    pub fn value(&self) -> &RatFun {
        &self.value
    }

    pub fn into_value(self) -> RatFun {
        self.value
    }
}

/// Rational H2 function with its cached inner-outer factorization.
#[derive(Clone, Debug)]
pub struct H2Rational {
    value: RatFun,
    inner: BlaschkeProduct,
    outer: OuterRational,
}

impl H2Rational {
    pub fn new(value: RatFun, tol: &ToleranceConfig) -> Result<Self> {
        inner_outer_factorize(&value, tol)
    }

    pub fn value(&self) -> &RatFun {
        &self.value
    }

    pub fn inner(&self) -> &BlaschkeProduct {
        &self.inner
    }

    pub fn outer(&self) -> &OuterRational {
        &self.outer
    }

    pub fn into_value(self) -> RatFun {
        self.value
    }
}

/// Splits `f` into a Blaschke product over its zeros in the disc and an
/// outer factor normalized to be positive at the origin.
pub fn inner_outer_factorize(f: &RatFun, tol: &ToleranceConfig) -> Result<H2Rational> {
    if f.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero function has no inner-outer factorization".into(),
        ));
    }
    if let Some(&(p, _)) = f
        .poles()
        .iter()
        .find(|(p, _)| p.norm() < 1.0 + tol.disc_margin)
    {
        return Err(Error::NotInH2 { modulus: p.norm() });
    }
    if let Some(&(r, _)) = f
        .zeros()
        .iter()
        .find(|(r, _)| (r.norm() - 1.0).abs() < tol.disc_margin)
    {
        return Err(Error::CircleZero { modulus: r.norm() });
    }
    let inside = f.zeros().filter(|r| r.norm() < 1.0);
    let mut outer_zeros = f.zeros().filter(|r| r.norm() > 1.0);
    let mut gain = f.gain();
    for &(a, m) in inside.iter() {
        if a != ZERO {
            gain *= (-a.conj()).powu(m as u32);
            outer_zeros.insert(ONE / a.conj(), m, tol);
        }
    }
    let outer = RatFun::from_factors(gain, outer_zeros, f.poles().clone(), tol);
    let at_zero = outer.value(ZERO);
    let phase = at_zero / at_zero.norm();
    let outer = outer.scale(phase.conj());
    Ok(H2Rational {
        value: f.clone(),
        inner: BlaschkeProduct::new(inside, phase, tol)?,
        outer: OuterRational::new(outer, tol)?,
    })
}

/// Whether `r` lies in the conjugate Smirnov class: its reflection may have
/// poles on the circle but none in the open disc.
pub fn smirnov_conj_member(r: &RatFun, tol: &ToleranceConfig) -> Result<bool> {
    if r.is_zero() {
        return Err(Error::DegenerateInput(
            "Smirnov membership of the zero function".into(),
        ));
    }
    let reflected = r.conj_reflect(tol);
    let member = reflected
        .poles()
        .iter()
        .all(|(p, _)| p.norm() >= 1.0 - tol.disc_margin);
    Ok(member)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn factorizes_mixed_zeros() {
        let t = tol();
        let f = RatFun::from_poly(Poly::from_real(&[0.0, 2.0, 1.0]), &t).unwrap();
        let h = inner_outer_factorize(&f, &t).unwrap();
        assert_eq!(h.inner().degree(), 1);
        assert_eq!(h.inner().zeros().multiplicity_of(c(0.0, 0.0), &t), 1);
        let outer = h.outer().value();
        assert!((outer.value(c(0.0, 0.0)) - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn outer_square_has_trivial_inner() {
        let t = tol();
        let f = RatFun::from_poly(Poly::from_real(&[4.0, 4.0, 1.0]), &t).unwrap();
        let h = inner_outer_factorize(&f, &t).unwrap();
        assert_eq!(h.inner().degree(), 0);
        assert!(h.outer().value().circle_distance(&f, 64) < 1e-12);
    }

    #[test]
    fn factorization_reproduces_input() {
        let t = tol();
        let num = Poly::from_roots(&[c(0.5, 0.0), c(3.0, 0.0)]);
        let den = Poly::from_roots(&[c(4.0, 0.0)]);
        let f = RatFun::new(num, den, &t).unwrap();
        let h = inner_outer_factorize(&f, &t).unwrap();
        assert!(h.inner().circle_modulus_defect(64) < 1e-12);
        let outer = h.outer().value();
        assert!(outer.roots_outside(1.0 + t.disc_margin));
        let product = h.inner().to_ratfun(&t).mul(outer, &t);
        assert!(product.circle_distance(&f, 64) < 1e-9);
    }

    #[test]
    fn factorization_rejects_interior_pole_and_circle_zero() {
        let t = tol();
        let f = RatFun::new(Poly::one(), Poly::from_real(&[-0.5, 1.0]), &t).unwrap();
        assert!(matches!(
            inner_outer_factorize(&f, &t),
            Err(Error::NotInH2 { .. })
        ));
        let g = RatFun::from_poly(Poly::from_real(&[-1.0, 1.0]), &t).unwrap();
        assert!(matches!(
            inner_outer_factorize(&g, &t),
            Err(Error::CircleZero { .. })
        ));
    }

    #[test]
    fn compose_with_z_squared() {
        let t = tol();
        let b = BlaschkeProduct::factor(c(-0.5, 0.0), &t).unwrap();
        let psi = BlaschkeProduct::z_power(2);
        let r = blaschke_compose(&b, &psi, &t).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(r.degree(), 2);
        assert_eq!(r.zeros().multiplicity_of(c(0.0, s), &t), 1);
        assert_eq!(r.zeros().multiplicity_of(c(0.0, -s), &t), 1);
        for z in [c(0.1, 0.3), c(-0.6, 0.2), c(0.9, 0.0)] {
            assert!((r.eval(z) - b.eval(psi.eval(z))).norm() < 1e-12);
        }
    }

    #[test]
    fn compose_keeps_value_at_origin() {
        let t = tol();
        let theta = BlaschkeProduct::factor(c(0.3, 0.4), &t).unwrap();
        let psi = BlaschkeProduct::from_zeros(&[(c(0.0, 0.0), 1), (c(0.5, -0.2), 1)], &t).unwrap();
        let r = blaschke_compose(&theta, &psi, &t).unwrap();
        assert!((r.value_at_zero() - theta.value_at_zero()).norm() < 1e-12);
        assert_eq!(r.degree(), 2);
        assert!(r.circle_modulus_defect(64) < 1e-9);
        let direct = theta.to_ratfun(&t).compose(&psi.to_ratfun(&t), &t).unwrap();
        assert!(direct.circle_distance(&r.to_ratfun(&t), 64) < 1e-9);
    }

    #[test]
    fn divisibility_and_lattice() {
        let t = tol();
        let z = BlaschkeProduct::z_power(1);
        let z2 = BlaschkeProduct::z_power(2);
        assert!(blaschke_divides(&z, &z2, &t));
        assert!(!blaschke_divides(&z2, &z, &t));
        let b = BlaschkeProduct::factor(c(0.5, 0.0), &t).unwrap();
        let b2 = b.mul(&BlaschkeProduct::factor(c(0.0, 1.0 / 3.0), &t).unwrap(), &t);
        assert!(blaschke_divides(&b, &b2, &t));

        let zb = z.mul(&b, &t);
        let (g, l) = blaschke_gcd_lcm(&[zb, z2.clone()], &t).unwrap();
        assert!(g.same_zeros(&z, &t));
        assert!(l.same_zeros(&z2.mul(&b, &t), &t));
        let (g, l) = blaschke_gcd_lcm(&[b.clone(), b.clone()], &t).unwrap();
        assert!(g.same_zeros(&b, &t) && l.same_zeros(&b, &t));
    }

    #[test]
    fn automorphism_is_degree_one() {
        let t = tol();
        let psi =
            BlaschkeProduct::new(RootMultiset::single(c(0.5, 0.0), 1), c(-1.0, 0.0), &t).unwrap();
        assert!(psi.is_automorphism());
        assert!(!BlaschkeProduct::z_power(2).is_automorphism());
    }

    #[test]
    fn rejects_zero_near_circle() {
        let t = tol();
        assert!(BlaschkeProduct::factor(c(0.9995, 0.0), &t).is_err());
        assert!(BlaschkeProduct::new(RootMultiset::new(), c(2.0, 0.0), &t).is_err());
    }

    #[test]
    fn smirnov_membership() {
        let t = tol();
        // reflection equals 1/(1 - z): pole on the circle is allowed
        let target = RatFun::new(Poly::one(), Poly::from_real(&[1.0, -1.0]), &t).unwrap();
        assert!(smirnov_conj_member(&target.conj_reflect(&t), &t).unwrap());
        let inside = RatFun::new(Poly::one(), Poly::from_real(&[-0.5, 1.0]), &t).unwrap();
        assert!(!smirnov_conj_member(&inside.conj_reflect(&t), &t).unwrap());
        assert!(smirnov_conj_member(&RatFun::zero(), &t).is_err());
    }
}
