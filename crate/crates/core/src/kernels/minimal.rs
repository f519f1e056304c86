use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::{BlaschkeProduct, H2Rational};
use crate::error::{Error, Result};
use crate::ratfun::{RatFun, RootMultiset};
use crate::symbols::{symbol_compose, ToeplitzSymbol};
use crate::tolerance::ToleranceConfig;

use super::construct::model_space;
use super::subspace::{subspace_relations, Subspace};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Which of the three formulas produced a minimal model space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ModelBranch {
    /// The composed function vanishes at the origin: `z (theta o psi) / psi`.
    ThetaVanishes,
    /// Only `psi` vanishes at the origin: `theta o psi`.
    PsiVanishes,
    /// Neither vanishes: `z (theta o psi)`.
    NeitherVanishes,
}

/// Containment of an image in `K_v` together with the failures of every
/// divisor obtained by dropping one zero of `v`.
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub contained: bool,
    pub divisors_checked: usize,
    /// A zero whose removal still leaves the image inside the model space.
    pub removable_zero: Option<Complex64>,
}

impl MinimalityReport {
    pub fn minimal(&self) -> bool {
        self.contained && self.removable_zero.is_none()
    }
}

fn require_kernel(s: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<()> {
    let w = s.winding(tol)?;
    if w >= 0 {
        return Err(Error::TrivialKernel { winding: w });
    }
    Ok(())
}

fn vanishes_at_origin(b: &BlaschkeProduct, tol: &ToleranceConfig) -> bool {
    b.zeros().multiplicity_of(ZERO, tol) > 0
}

/// `(F o psi) psi / z`, whose kernel is the smallest Toeplitz kernel
/// containing `C_psi(Ker T_F)`.
pub fn minimal_kernel_of_composed(
    f: &ToeplitzSymbol,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<ToeplitzSymbol> {
    require_kernel(f, tol)?;
    Ok(symbol_compose(f, psi, tol)?
        .mul_analytic(&psi.to_ratfun(tol), tol)?
        .mul_z_power(-1))
}

/// Branch taken by [`minimal_model_containing_composition`].
pub fn model_branch(
    theta_vanishes: bool,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> ModelBranch {
    if theta_vanishes {
        ModelBranch::ThetaVanishes
    } else if vanishes_at_origin(psi, tol) {
        ModelBranch::PsiVanishes
    } else {
        ModelBranch::NeitherVanishes
    }
}

/// Applies the branch formula to `product`, which is `theta o psi` possibly
/// times further inner factors.
fn branch_formula(
    branch: ModelBranch,
    product: &BlaschkeProduct,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<BlaschkeProduct> {
    let z = BlaschkeProduct::z_power(1);
    let v = match branch {
        ModelBranch::ThetaVanishes => z.mul(product, tol).div(psi, tol)?,
        ModelBranch::PsiVanishes => product.clone(),
        ModelBranch::NeitherVanishes => z.mul(product, tol),
    };
    Ok(v.normalized())
}

/// The inner function `v` of the smallest model space containing
/// `C_psi(K_theta)`.
pub fn minimal_model_containing_composition(
    theta: &BlaschkeProduct,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<BlaschkeProduct> {
    if theta.degree() == 0 {
        return Err(Error::DegenerateInput("theta must have a zero".into()));
    }
    let composed = theta.compose(psi, tol)?;
    let branch = model_branch(vanishes_at_origin(theta, tol), psi, tol);
    branch_formula(branch, &composed, psi, tol)
}

/// Smallest model space containing `C_psi(u K_theta)`.
pub fn minimal_model_weighted_pre(
    u: &BlaschkeProduct,
    theta: &BlaschkeProduct,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<BlaschkeProduct> {
    if theta.degree() == 0 {
        return Err(Error::DegenerateInput("theta must have a zero".into()));
    }
    let product = theta.compose(psi, tol)?.mul(&u.compose(psi, tol)?, tol);
    let vanish = vanishes_at_origin(theta, tol) || vanishes_at_origin(u, tol);
    branch_formula(model_branch(vanish, psi, tol), &product, psi, tol)
}

/// Smallest model space containing `u C_psi(K_theta)`.
pub fn minimal_model_weighted_post(
    u: &BlaschkeProduct,
    theta: &BlaschkeProduct,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<BlaschkeProduct> {
    if theta.degree() == 0 {
        return Err(Error::DegenerateInput("theta must have a zero".into()));
    }
    let product = theta.compose(psi, tol)?.mul(u, tol);
    branch_formula(
        model_branch(vanishes_at_origin(theta, tol), psi, tol),
        &product,
        psi,
        tol,
    )
}

/// Checks `image` against `K_v` and against `K_v'` for every `v'` obtained
/// from `v` by removing one zero (with multiplicity decremented).
pub fn certify_minimal_model(
    image: &Subspace,
    v: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<MinimalityReport> {
    let contained = subspace_relations(image, &model_space(v, tol)?, tol).included;
    let mut removable_zero = None;
    let mut divisors_checked = 0;
    for &(a, _) in v.zeros().iter() {
        let mut zeros = v.zeros().clone();
        zeros.remove(a, 1, tol);
        let divisor = BlaschkeProduct::new(zeros, v.unimodular(), tol)?;
        divisors_checked += 1;
        if subspace_relations(image, &model_space(&divisor, tol)?, tol).included {
            removable_zero = Some(a);
            break;
        }
    }
    Ok(MinimalityReport {
        contained,
        divisors_checked,
        removable_zero,
    })
}

/// `g conj(u) / u_o`, whose kernel is the smallest Toeplitz kernel
/// containing `u Ker T_g`.
pub fn minimal_kernel_of_multiplied(
    u: &H2Rational,
    g: &ToeplitzSymbol,
    tol: &ToleranceConfig,
) -> Result<ToeplitzSymbol> {
    require_kernel(g, tol)?;
    g.mul_anti(u.value(), tol)?
        .mul_analytic(&u.outer().value().inv(tol)?, tol)
}

/// `F / u`, valid when `u` is outer and invertible on the closed disc; then
/// `u Ker T_F = Ker T_{F/u}`.
pub fn multiplied_kernel_exact(
    u: &H2Rational,
    f: &ToeplitzSymbol,
    tol: &ToleranceConfig,
) -> Result<ToeplitzSymbol> {
    if u.inner().degree() > 0 {
        return Err(Error::HypothesisViolated(format!(
            "multiplier has inner factor {}",
            u.inner()
        )));
    }
    if let Some(&(r, _)) = u
        .value()
        .zeros()
        .iter()
        .find(|(r, _)| r.norm() < 1.0 + tol.disc_margin)
    {
        return Err(Error::HypothesisViolated(format!(
            "multiplier vanishes at {r} in the closed disc"
        )));
    }
    f.mul_analytic(&u.value().inv(tol)?, tol)
}

/// `psi (F o psi) (conj(u) o psi) / (z (u_o o psi))`, the symbol of the
/// smallest kernel containing `C_psi(u Ker T_F)`.
pub fn minimal_kernel_pre_multiplied_composed(
    u: &H2Rational,
    f: &ToeplitzSymbol,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<ToeplitzSymbol> {
    require_kernel(f, tol)?;
    let p = psi.to_ratfun(tol);
    let u_psi = u.value().compose(&p, tol)?;
    let uo_psi = u.outer().value().compose(&p, tol)?;
    symbol_compose(f, psi, tol)?
        .mul_analytic(&p, tol)?
        .mul_anti(&u_psi, tol)?
        .mul_analytic(&uo_psi.inv(tol)?, tol)
        .map(|s| s.mul_z_power(-1))
}

/// `psi (F o psi) conj(u) / (z u_o)`, the symbol of the smallest kernel
/// containing `u C_psi(Ker T_F)`.
pub fn minimal_kernel_post_multiplied_composed(
    u: &H2Rational,
    f: &ToeplitzSymbol,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<ToeplitzSymbol> {
    require_kernel(f, tol)?;
    symbol_compose(f, psi, tol)?
        .mul_analytic(&psi.to_ratfun(tol), tol)?
        .mul_anti(u.value(), tol)?
        .mul_analytic(&u.outer().value().inv(tol)?, tol)
        .map(|s| s.mul_z_power(-1))
}

/// The automorphism parameter: the zero of a degree-one `psi`.
pub fn automorphism_zero(psi: &BlaschkeProduct) -> Result<Complex64> {
    match psi.zeros().as_slice() {
        [(a, 1)] => Ok(*a),
        _ => Err(Error::HypothesisViolated(format!(
            "{psi} is not an automorphism"
        ))),
    }
}

/// `1 - conj(a) z`, proportional to `1 / sqrt(psi')` for the automorphism
/// with zero `a`.
pub fn automorphism_weight(psi: &BlaschkeProduct, tol: &ToleranceConfig) -> Result<RatFun> {
    let a = automorphism_zero(psi)?;
    if a == ZERO {
        return Ok(RatFun::one());
    }
    Ok(RatFun::from_factors(
        -a.conj(),
        RootMultiset::single(Complex64::new(1.0, 0.0) / a.conj(), 1),
        RootMultiset::new(),
        tol,
    ))
}
