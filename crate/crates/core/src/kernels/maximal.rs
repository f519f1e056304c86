use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::{BlaschkeProduct, H2Rational, OuterRational};
use crate::error::{Error, Result};
use crate::ratfun::RatFun;
use crate::symbols::{symbol_compose, EquivalenceWitness, ToeplitzSymbol};
use crate::tolerance::ToleranceConfig;

use super::construct::{circle_relative_gap, toeplitz_kernel};
use super::subspace::{membership, Subspace};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Evidence that `vector` is a maximal vector of `Ker T_symbol`.
#[derive(Clone, Debug)]
pub struct MaximalityCertificate {
    pub vector: RatFun,
    pub symbol: ToeplitzSymbol,
    pub outer_witness: OuterRational,
}

impl MaximalityCertificate {
    /// Largest relative deviation of `vector` from
    /// `symbol^-1 * conj(z) * conj(outer_witness)` over circle samples.
    pub fn defect(&self, n: usize) -> f64 {
        let p = self.outer_witness.value();
        circle_relative_gap(
            &self.vector,
            |z| (z.conj() * p.value(z).conj()) / self.symbol.eval(z),
            n,
        )
    }
}

/// Which maximal vector a transport produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TransportVariant {
    /// `h_plus^-1 (k o psi) psi`.
    TimesPsi,
    /// `h_plus^-1 (k o psi)`.
    Plain,
    /// `h_plus^-1 (k o psi) psi / z`, for `psi(0) = 0`.
    PsiOverZ,
}

/// The smallest Toeplitz kernel containing `h`, with symbol
/// `conj(z) conj(I O) / O` written as `conj(z h) * (1 / O)`.
pub fn minimal_kernel_of_vector(
    h: &H2Rational,
    tol: &ToleranceConfig,
) -> Result<(ToeplitzSymbol, Subspace)> {
    let anti = h.value().mul_z_power(1, tol);
    let ana = h.outer().value().inv(tol)?;
    let s = ToeplitzSymbol::new(anti, ana, 0, tol)?;
    let kernel = toeplitz_kernel(&s, tol)?;
    Ok((s, kernel))
}

/// Certificate that `k` is maximal for `Ker T_s`, if it is.
///
/// On the circle `z s k = conj(p)`; `k` is maximal exactly when `p` is outer.
/// Zeros of `p` within the disc margin of the circle are treated as failures.
pub fn is_maximal_vector(
    k: &RatFun,
    s: &ToeplitzSymbol,
    tol: &ToleranceConfig,
) -> Result<Option<MaximalityCertificate>> {
    if k.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero vector is never maximal".into(),
        ));
    }
    let kernel = toeplitz_kernel(s, tol)?;
    if !membership(k, &kernel, tol) {
        return Err(Error::NotInKernel);
    }
    let zsk = s.realize(tol).mul(k, tol).mul_z_power(1, tol);
    let p = zsk.conj_reflect(tol);
    Ok(OuterRational::new(p, tol)
        .ok()
        .map(|outer_witness| MaximalityCertificate {
            vector: k.clone(),
            symbol: s.clone(),
            outer_witness,
        }))
}

/// Moves a maximal vector of `Ker T_g` to a maximal vector of the kernel of
/// the transformed symbol, using `h_minus (g o psi) h_plus` as the base.
pub fn transport_maximal_vector(
    k: &RatFun,
    g: &ToeplitzSymbol,
    psi: &BlaschkeProduct,
    w: &EquivalenceWitness,
    variant: TransportVariant,
    tol: &ToleranceConfig,
) -> Result<(RatFun, ToeplitzSymbol)> {
    if is_maximal_vector(k, g, tol)?.is_none() {
        return Err(Error::HypothesisViolated(
            "the input vector is not maximal for its kernel".into(),
        ));
    }
    if variant == TransportVariant::PsiOverZ && psi.value_at_zero().norm() > tol.root_match {
        return Err(Error::HypothesisViolated("psi(0) must vanish".into()));
    }
    let p = psi.to_ratfun(tol);
    let base = symbol_compose(g, psi, tol)?
        .mul_anti(&w.h_minus.conj_reflect(tol), tol)?
        .mul_analytic(&w.h_plus, tol)?;
    let moved = k.compose(&p, tol)?.div(&w.h_plus, tol)?;
    Ok(match variant {
        TransportVariant::TimesPsi => (moved.mul(&p, tol), base.mul_z_power(-1)),
        TransportVariant::Plain => (moved, base.mul_analytic(&p, tol)?.mul_z_power(-1)),
        TransportVariant::PsiOverZ => (moved.mul(&p, tol).mul_z_power(-1, tol), base),
    })
}

/// `h_plus / (1 - conj(a) theta) * theta / z` with
/// `h_plus = (1 + conj(a) beta)^-1` and `beta` the Frostman shift
/// `(theta - a) / (1 - conj(a) theta)`.
pub fn crofoot_maximal_vector(
    theta: &BlaschkeProduct,
    a: Complex64,
    tol: &ToleranceConfig,
) -> Result<RatFun> {
    if theta.value_at_zero().norm() > tol.root_match {
        return Err(Error::HypothesisViolated("theta(0) must vanish".into()));
    }
    if a.norm() >= 1.0 - tol.disc_margin {
        return Err(Error::HypothesisViolated(format!(
            "parameter {a} is not inside the disc margin"
        )));
    }
    let th = theta.to_ratfun(tol);
    let denom = th.scale(-a.conj()).add_constant(ONE, tol)?;
    let beta = th.add_constant(-a, tol)?.div(&denom, tol)?;
    let h_plus = beta.scale(a.conj()).add_constant(ONE, tol)?.inv(tol)?;
    Ok(h_plus.div(&denom, tol)?.mul(&th, tol).mul_z_power(-1, tol))
}
