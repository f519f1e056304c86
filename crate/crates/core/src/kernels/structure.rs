use nalgebra::DVector;
use num_complex::Complex64;

use crate::blaschke::{blaschke_gcd_lcm, smirnov_conj_member, BlaschkeProduct};
use crate::error::{Error, Result};
use crate::oracle::{gram_matrix, h2_inner_product, OracleConfig};
use crate::ratfun::RatFun;
use crate::symbols::{symbol_compose, ToeplitzSymbol};
use crate::tolerance::ToleranceConfig;

use super::construct::{
    apply_composition, is_nearly_sstar_invariant, kernel_maximal_vector, model_space,
    toeplitz_kernel,
};
use super::subspace::{membership, subspace_relations, Subspace};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Three independent answers to whether `C_psi` maps `Ker T_F` into `Ker T_H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionInclusion {
    pub holds: bool,
    pub via_smirnov: bool,
    pub via_maximal_vector: bool,
}

/// Result of the least-common-multiple construction for a family of model
/// spaces.
#[derive(Clone, Debug)]
pub struct LcmFamilyReport {
    pub kernel: Subspace,
    pub theta: BlaschkeProduct,
    /// `K` equals the sum of the members' minimal model spaces.
    pub sum_matches: bool,
    /// One entry per member: the orthogonal splitting of `K` holds.
    pub decomposition_checks: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoburnReport {
    pub kernel_dim: usize,
    pub adjoint_kernel_dim: usize,
}

impl CoburnReport {
    /// At least one of the two kernels is trivial.
    pub fn holds(&self) -> bool {
        self.kernel_dim.min(self.adjoint_kernel_dim) == 0
    }
}

/// `M = u K` with `u` the normalized projection of 1 onto `M`.
#[derive(Clone, Debug)]
pub struct HittDecomposition {
    pub u: RatFun,
    pub k: Vec<RatFun>,
    /// Largest deviation between the Gram matrices of `u K` and `K`; present
    /// only when every element of `K` is analytic on the closed disc.
    pub isometry_defect: Option<f64>,
}

/// Answers the inclusion `C_psi(Ker T_F) in Ker T_H` by direct subspace
/// containment, by the conjugate Smirnov test on `H (F^-1 o psi) z / psi`,
/// and by testing a single maximal vector. Disagreement is an error.
pub fn composition_maps_into(
    f: &ToeplitzSymbol,
    psi: &BlaschkeProduct,
    h: &ToeplitzSymbol,
    tol: &ToleranceConfig,
) -> Result<CompositionInclusion> {
    for s in [f, h] {
        let w = s.winding(tol)?;
        if w >= 0 {
            return Err(Error::TrivialKernel { winding: w });
        }
    }
    let kf = toeplitz_kernel(f, tol)?;
    let kh = toeplitz_kernel(h, tol)?;
    let holds = subspace_relations(&apply_composition(&kf, psi, tol)?, &kh, tol).included;

    let p = psi.to_ratfun(tol);
    let expr = h
        .mul(&symbol_compose(&f.inv(tol)?, psi, tol)?, tol)?
        .mul_analytic(&p.inv(tol)?, tol)?
        .mul_z_power(1);
    let via_smirnov = smirnov_conj_member(&expr.realize(tol), tol)?;

    let top = kernel_maximal_vector(f, tol)?;
    let via_maximal_vector = membership(&top.compose(&p, tol)?, &kh, tol);

    if holds != via_smirnov || holds != via_maximal_vector {
        return Err(Error::InconsistencyDetected(format!(
            "containment {holds}, Smirnov test {via_smirnov}, maximal vector {via_maximal_vector}"
        )));
    }
    Ok(CompositionInclusion {
        holds,
        via_smirnov,
        via_maximal_vector,
    })
}

/// `K = K_{z (theta o psi)}` for `theta` the least common multiple of the
/// family, checked against the sum of the members' spaces and against the
/// splitting `K = K_{z (theta_i o psi)} (+) z (theta_i o psi) K_{(theta / theta_i) o psi}`.
pub fn lcm_minimal_kernel_family(
    thetas: &[BlaschkeProduct],
    psi: &BlaschkeProduct,
    oracle: &OracleConfig,
    tol: &ToleranceConfig,
) -> Result<LcmFamilyReport> {
    let (_, theta) = blaschke_gcd_lcm(thetas, tol)?;
    let z = BlaschkeProduct::z_power(1);
    let kernel = model_space(&z.mul(&theta.compose(psi, tol)?, tol), tol)?;

    let mut sum = Subspace::zero();
    let mut decomposition_checks = Vec::with_capacity(thetas.len());
    for ti in thetas {
        let lead = z.mul(&ti.compose(psi, tol)?, tol);
        let ki = model_space(&lead, tol)?;
        sum = subspace_relations(&sum, &ki, tol).sum;

        let rest = model_space(&theta.div(ti, tol)?.compose(psi, tol)?, tol)?;
        let lead_fn = lead.to_ratfun(tol);
        let wi: Vec<RatFun> = rest.functions().map(|f| lead_fn.mul(f, tol)).collect();
        let wi = Subspace::new(wi, tol)?;
        let dims_add = ki.dim() + wi.dim() == kernel.dim();
        let inside = subspace_relations(&ki, &kernel, tol).included
            && subspace_relations(&wi, &kernel, tol).included;
        let mut orthogonal = true;
        for a in ki.functions() {
            for b in wi.functions() {
                let ip = h2_inner_product(a, b, oracle)?;
                let na = h2_inner_product(a, a, oracle)?.re.sqrt();
                let nb = h2_inner_product(b, b, oracle)?.re.sqrt();
                if ip.norm() >= 1e-9 * na * nb {
                    orthogonal = false;
                }
            }
        }
        decomposition_checks.push(dims_add && inside && orthogonal);
    }
    let sum_matches = subspace_relations(&sum, &kernel, tol).equal;
    Ok(LcmFamilyReport {
        kernel,
        theta,
        sum_matches,
        decomposition_checks,
    })
}

/// Dimensions of `Ker T_sigma` and of the kernel of its adjoint.
pub fn coburn_check(s: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<CoburnReport> {
    let adjoint = ToeplitzSymbol::new(s.ana().clone(), s.anti().clone(), -s.power(), tol)?;
    Ok(CoburnReport {
        kernel_dim: toeplitz_kernel(s, tol)?.dim(),
        adjoint_kernel_dim: toeplitz_kernel(&adjoint, tol)?.dim(),
    })
}

/// Writes a nearly S*-invariant `M` as `u K`.
///
/// `u` is the projection of the reproducing kernel at the origin (the
/// constant 1) onto `M`, scaled to unit norm; it is orthogonal to the
/// elements of `M` vanishing at 0 and satisfies `u(0) > 0`.
pub fn hitt_decomposition(
    m: &Subspace,
    oracle: &OracleConfig,
    tol: &ToleranceConfig,
) -> Result<HittDecomposition> {
    let values: Vec<Complex64> = m.functions().map(|f| f.value(ZERO)).collect();
    let scale = m.functions().map(|f| f.circle_max(64)).fold(0.0, f64::max);
    if values.iter().all(|v| v.norm() <= 1e-12 * scale) {
        return Err(Error::AllVanishAtOrigin);
    }
    if !is_nearly_sstar_invariant(m, tol)?.invariant {
        return Err(Error::NotNearlyInvariant);
    }
    let fs: Vec<&RatFun> = m.functions().collect();
    let gram = gram_matrix(&fs, oracle)?;
    // sum_i c_i <f_i, f_j> = conj(f_j(0))
    let rhs = DVector::from_iterator(values.len(), values.iter().map(|v| v.conj()));
    let c = gram
        .transpose()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::DegenerateInput("singular Gram matrix".into()))?;
    let mut u = RatFun::zero();
    for (ci, f) in c.iter().zip(fs.iter()) {
        u = u.add(&f.scale(*ci), tol)?;
    }
    let at_zero = u.value(ZERO);
    // ||P 1||^2 = <P 1, 1> = (P 1)(0)
    let u = u.scale(Complex64::new(
        1.0 / at_zero.re.max(f64::MIN_POSITIVE).sqrt(),
        0.0,
    ));
    let k = fs
        .iter()
        .map(|f| f.div(&u, tol))
        .collect::<Result<Vec<_>>>()?;
    let analytic = k.iter().all(|f| {
        f.poles()
            .iter()
            .all(|(p, _)| p.norm() >= 1.0 + tol.disc_margin)
    });
    let isometry_defect = if analytic {
        let kr: Vec<&RatFun> = k.iter().collect();
        let gk = gram_matrix(&kr, oracle)?;
        Some((&gram - &gk).iter().map(|x| x.norm()).fold(0.0, f64::max))
    } else {
        None
    };
    Ok(HittDecomposition {
        u,
        k,
        isometry_defect,
    })
}
