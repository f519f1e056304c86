//! Toeplitz symbols `conj(A) * B * z^k` with rational `A` and `B`.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

use crate::blaschke::{smirnov_conj_member, BlaschkeProduct};
use crate::error::{Error, Result};
use crate::ratfun::{circle_points, RatFun, RootMultiset};
use crate::tolerance::ToleranceConfig;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Samples used by the argument-principle cross-check of the winding number.
pub const WINDING_SAMPLES: usize = 4096;

/// The symbol `conj(anti) * ana * z^power` on the unit circle.
///
/// After construction neither `anti` nor `ana` has a zero or pole at the
/// origin; such factors are moved into `power`.
#[derive(Clone, Debug)]
pub struct ToeplitzSymbol {
    anti: RatFun,
    ana: RatFun,
    power: i32,
}

/// `sigma = sigma_minus * z^kappa * sigma_plus` on the circle.
#[derive(Clone, Debug)]
pub struct WienerHopfFactorization {
    /// Zeros and poles inside the disc, value 1 at infinity.
    pub sigma_minus: RatFun,
    pub kappa: i64,
    /// Zeros and poles outside the closed disc.
    pub sigma_plus: RatFun,
}

/// Witness of `G1 = h_minus * G2 * h_plus`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub h_plus: RatFun,
    pub h_minus: RatFun,
}

impl ToeplitzSymbol {
    pub fn new(anti: RatFun, ana: RatFun, power: i32, tol: &ToleranceConfig) -> Result<Self> {
        if anti.is_zero() || ana.is_zero() {
            return Err(Error::CircleSingularity(
                "symbol vanishes identically".into(),
            ));
        }
        let a0 = anti.origin_order(tol);
        let b0 = ana.origin_order(tol);
        let anti = anti.mul_z_power(-a0 as i32, tol);
        let ana = ana.mul_z_power(-b0 as i32, tol);
        let power = power + (b0 - a0) as i32;
        for (name, f) in [("anti", &anti), ("ana", &ana)] {
            for &(r, _) in f.zeros().iter().chain(f.poles().iter()) {
                if (r.norm() - 1.0).abs() < tol.disc_margin {
                    return Err(Error::CircleSingularity(format!(
                        "{name} part has a root at {r} (modulus {})",
                        r.norm()
                    )));
                }
            }
        }
        Ok(ToeplitzSymbol { anti, ana, power })
    }

    /// `conj(a)`.
    pub fn conj_of(a: RatFun, tol: &ToleranceConfig) -> Result<Self> {
        ToeplitzSymbol::new(a, RatFun::one(), 0, tol)
    }

    /// `b`, an analytic symbol.
    pub fn analytic(b: RatFun, tol: &ToleranceConfig) -> Result<Self> {
        ToeplitzSymbol::new(RatFun::one(), b, 0, tol)
    }

    /// `conj(theta)`, whose Toeplitz kernel is the model space of `theta`.
    pub fn conj_inner(theta: &BlaschkeProduct, tol: &ToleranceConfig) -> Result<Self> {
        ToeplitzSymbol::conj_of(theta.to_ratfun(tol), tol)
    }

    /// `z^k`.
    pub fn monomial(k: i32) -> Self {
        ToeplitzSymbol {
            anti: RatFun::one(),
            ana: RatFun::one(),
            power: k,
        }
    }

    pub fn anti(&self) -> &RatFun {
        &self.anti
    }

    pub fn ana(&self) -> &RatFun {
        &self.ana
    }

    pub fn power(&self) -> i32 {
        self.power
    }

    /// Value at a point of the unit circle.
    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        self.anti.value(zeta).conj() * self.ana.value(zeta) * zeta.powi(self.power)
    }

    /// The rational function agreeing with the symbol on the circle.
    pub fn realize(&self, tol: &ToleranceConfig) -> RatFun {
        self.anti
            .conj_reflect(tol)
            .mul(&self.ana, tol)
            .mul_z_power(self.power, tol)
    }

    pub fn mul(&self, other: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<Self> {
        symbol_mul(self, other, tol)
    }

    /// Reciprocal: zeros and poles swap, the power is negated.
    pub fn inv(&self, tol: &ToleranceConfig) -> Result<Self> {
        ToeplitzSymbol::new(self.anti.inv(tol)?, self.ana.inv(tol)?, -self.power, tol)
    }

    pub fn div(&self, other: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<Self> {
        self.mul(&other.inv(tol)?, tol)
    }

    /// Multiplies the analytic part by `c`.
    pub fn scale(&self, c: Complex64, tol: &ToleranceConfig) -> Result<Self> {
        ToeplitzSymbol::new(self.anti.clone(), self.ana.scale(c), self.power, tol)
    }

    pub fn mul_z_power(&self, k: i32) -> Self {
        ToeplitzSymbol {
            power: self.power + k,
            ..self.clone()
        }
    }

    /// Multiplies the analytic part by `f`.
    pub fn mul_analytic(&self, f: &RatFun, tol: &ToleranceConfig) -> Result<Self> {
        ToeplitzSymbol::new(self.anti.clone(), self.ana.mul(f, tol), self.power, tol)
    }

    /// Multiplies by `conj(f)`.
    pub fn mul_anti(&self, f: &RatFun, tol: &ToleranceConfig) -> Result<Self> {
        ToeplitzSymbol::new(self.anti.mul(f, tol), self.ana.clone(), self.power, tol)
    }

    pub fn compose(&self, psi: &BlaschkeProduct, tol: &ToleranceConfig) -> Result<Self> {
        symbol_compose(self, psi, tol)
    }

    pub fn winding(&self, tol: &ToleranceConfig) -> Result<i64> {
        winding_number(self, tol)
    }

    pub fn wiener_hopf(&self, tol: &ToleranceConfig) -> Result<WienerHopfFactorization> {
        wiener_hopf(self, tol)
    }

    /// Largest relative deviation from `other` over `n` circle samples.
    pub fn circle_distance(&self, other: &ToeplitzSymbol, n: usize) -> f64 {
        circle_points(n)
            .map(|z| {
                let a = self.eval(z);
                (a - other.eval(z)).norm() / a.norm().max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for ToeplitzSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conj[{}] * [{}] * z^{}", self.anti, self.ana, self.power)
    }
}

/// Product of symbols; origin factors are collected into the power.
pub fn symbol_mul(
    s1: &ToeplitzSymbol,
    s2: &ToeplitzSymbol,
    tol: &ToleranceConfig,
) -> Result<ToeplitzSymbol> {
    ToeplitzSymbol::new(
        s1.anti.mul(&s2.anti, tol),
        s1.ana.mul(&s2.ana, tol),
        s1.power + s2.power,
        tol,
    )
}

/// `sigma o psi`; the power `z^k` becomes `psi^k` in the analytic part
/// (or `conj(psi)^|k|` in the conjugate part).
pub fn symbol_compose(
    s: &ToeplitzSymbol,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<ToeplitzSymbol> {
    let p = psi.to_ratfun(tol);
    let mut anti = s.anti.compose(&p, tol)?;
    let mut ana = s.ana.compose(&p, tol)?;
    let k = s.power;
    if k >= 0 {
        ana = ana.mul(&p.powi(k, tol)?, tol);
    } else {
        anti = anti.mul(&p.powi(-k, tol)?, tol);
    }
    ToeplitzSymbol::new(anti, ana, 0, tol)
}

fn inside_count(f: &RatFun) -> i64 {
    f.zeros().count(|r| r.norm() < 1.0) as i64 - f.poles().count(|r| r.norm() < 1.0) as i64
}

/// Winding number about the origin of the symbol along the circle.
///
/// Computed by root localization and checked against a discrete
/// argument-principle sum; the two must agree exactly.
pub fn winding_number(s: &ToeplitzSymbol, _tol: &ToleranceConfig) -> Result<i64> {
    let by_roots = s.power as i64 + inside_count(&s.ana) - inside_count(&s.anti);
    let by_integral = argument_principle(s, WINDING_SAMPLES)?;
    if by_roots != by_integral {
        return Err(Error::WindingMismatch {
            root_count: by_roots,
            integral: by_integral,
        });
    }
    Ok(by_roots)
}

fn argument_principle(s: &ToeplitzSymbol, n: usize) -> Result<i64> {
    let values: Vec<Complex64> = circle_points(n).map(|z| s.eval(z)).collect();
    if let Some(v) = values.iter().find(|v| !v.is_finite() || v.norm() == 0.0) {
        return Err(Error::CircleSingularity(format!(
            "symbol takes the value {v} on the circle"
        )));
    }
    let total: f64 = (0..n)
        .map(|j| (values[(j + 1) % n] / values[j]).arg())
        .sum();
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Splits the realized symbol into factors inside and outside the disc.
pub fn wiener_hopf(s: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<WienerHopfFactorization> {
    let kappa = winding_number(s, tol)?;
    let r = s.realize(tol);
    for &(x, _) in r.zeros().iter().chain(r.poles().iter()) {
        if (x.norm() - 1.0).abs() < tol.disc_margin {
            return Err(Error::CircleSingularity(format!(
                "root {x} within the disc margin"
            )));
        }
    }
    let inside = |x: Complex64| x.norm() < 1.0;
    let zin = r.zeros().filter(inside);
    let pin = r.poles().filter(inside);
    let zout = r.zeros().filter(|x| !inside(x));
    let pout = r.poles().filter(|x| !inside(x));
    let split = zin.degree() as i64 - pin.degree() as i64;
    if split != kappa {
        return Err(Error::WindingMismatch {
            root_count: split,
            integral: kappa,
        });
    }
    let mut minus_zeros = zin.clone();
    let mut minus_poles = pin.clone();
    minus_zeros.insert(ZERO, pin.degree(), tol);
    minus_poles.insert(ZERO, zin.degree(), tol);
    let sigma_minus = RatFun::from_factors(ONE, minus_zeros, minus_poles, tol);
    let sigma_plus = RatFun::from_factors(r.gain(), zout, pout, tol);
    Ok(WienerHopfFactorization {
        sigma_minus,
        kappa,
        sigma_plus,
    })
}

impl WienerHopfFactorization {
    /// `sigma_minus * z^kappa * sigma_plus` at a point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.sigma_minus.value(z) * z.powi(self.kappa as i32) * self.sigma_plus.value(z)
    }
}

/// Kernel equality test by the outer-conjugate ratio criterion.
///
/// Two trivial kernels are equal; a trivial and a nontrivial kernel are not.
/// For nontrivial kernels the reflection of `g / h` must have no zeros and
/// no poles in the open disc.
pub fn kernels_equal_symbolic(
    g: &ToeplitzSymbol,
    h: &ToeplitzSymbol,
    tol: &ToleranceConfig,
) -> Result<bool> {
    let wg = g.winding(tol)?;
    let wh = h.winding(tol)?;
    match (wg >= 0, wh >= 0) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let reflected = g.div(h, tol)?.realize(tol).conj_reflect(tol);
    let clear = |m: &RootMultiset| m.iter().all(|(x, _)| x.norm() >= 1.0);
    Ok(clear(reflected.zeros()) && clear(reflected.poles()))
}

/// Whether `Ker T_g` is contained in `Ker T_h`: `h / g` must lie in the
/// conjugate Smirnov class. Both kernels must be nontrivial.
pub fn kernel_included_symbolic(
    g: &ToeplitzSymbol,
    h: &ToeplitzSymbol,
    tol: &ToleranceConfig,
) -> Result<bool> {
    for s in [g, h] {
        let w = s.winding(tol)?;
        if w >= 0 {
            return Err(Error::TrivialKernel { winding: w });
        }
    }
    smirnov_conj_member(&h.div(g, tol)?.realize(tol), tol)
}

/// A witness of `g1 = h_minus * g2 * h_plus` when one exists.
pub fn symbols_equivalent(
    g1: &ToeplitzSymbol,
    g2: &ToeplitzSymbol,
    tol: &ToleranceConfig,
) -> Result<Option<EquivalenceWitness>> {
    let wh = g1.div(g2, tol)?.wiener_hopf(tol)?;
    if wh.kappa != 0 {
        return Ok(None);
    }
    Ok(Some(EquivalenceWitness {
        h_plus: wh.sigma_plus,
        h_minus: wh.sigma_minus,
    }))
}
