use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::ratfun::{circle_points, poly_roots, Poly, RatFun, RootMultiset};
use crate::symbols::ToeplitzSymbol;
use crate::tolerance::ToleranceConfig;

use super::subspace::{membership, Subspace};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Result of the near S*-invariance test.
#[derive(Clone, Debug)]
pub struct NearInvarianceReport {
    pub invariant: bool,
    /// An element vanishing at the origin whose backward shift leaves the
    /// space, scaled to have a monic numerator.
    pub witness: Option<RatFun>,
}

/// Kernel of `T_sigma` from the Wiener-Hopf factorization: the functions
/// `p / sigma_plus` with `deg p < -kappa`, or `{0}` when `kappa >= 0`.
///
/// The numerators are chosen orthonormal for the weight `|1/sigma_plus|^2`
/// so the basis stays well conditioned at high dimension.
pub fn toeplitz_kernel(s: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<Subspace> {
    let Some((weight, n)) = kernel_weight(s, tol)? else {
        return Ok(Subspace::zero());
    };
    Subspace::new(weighted_polynomial_basis(n, &weight, tol)?, tol)
}

/// `z^(n-1) / sigma_plus`, a maximal vector of a nontrivial `Ker T_sigma`
/// of dimension `n`.
pub fn kernel_maximal_vector(s: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<RatFun> {
    match kernel_weight(s, tol)? {
        Some((weight, n)) => Ok(weight.mul_z_power(n as i32 - 1, tol)),
        None => Err(Error::TrivialKernel {
            winding: s.winding(tol)?,
        }),
    }
}

fn kernel_weight(s: &ToeplitzSymbol, tol: &ToleranceConfig) -> Result<Option<(RatFun, usize)>> {
    let wh = s.wiener_hopf(tol)?;
    if wh.kappa >= 0 {
        return Ok(None);
    }
    let sp = &wh.sigma_plus;
    let weight = RatFun::from_factors(ONE, sp.poles().clone(), sp.zeros().clone(), tol);
    Ok(Some((weight, (-wh.kappa) as usize)))
}

/// `p_j w` for `j < d`, where `p_j` has degree `j` and the products are
/// orthonormal in H2 up to roundoff. Two Gram-Schmidt passes over circle
/// samples; the span is exactly `{p w : deg p < d}` whatever the rounding.
fn weighted_polynomial_basis(d: usize, w: &RatFun, tol: &ToleranceConfig) -> Result<Vec<RatFun>> {
    let rho = w
        .poles()
        .iter()
        .map(|(p, _)| p.norm())
        .fold(f64::INFINITY, f64::min)
        .max(1.0 + tol.disc_margin);
    let mut n = 256usize.max(8 * d);
    if rho.is_finite() {
        n = n.max(((36.0 / rho.ln()).ceil() as usize).min(16384));
    }
    let pts: Vec<Complex64> = circle_points(n).collect();
    let scale = 1.0 / (n as f64).sqrt();
    let wv: Vec<Complex64> = pts.iter().map(|&z| w.value(z) * scale).collect();
    let mut c = DMatrix::<Complex64>::identity(d, d);
    for _ in 0..2 {
        let a = DMatrix::from_fn(n, d, |k, j| {
            let p = c.column(j);
            let v = (0..=j).rev().fold(ZERO, |acc, i| acc * pts[k] + p[i]);
            v * wv[k]
        });
        let r = a.qr().r();
        let rinv = r
            .solve_upper_triangular(&DMatrix::identity(d, d))
            .ok_or_else(|| Error::RankLoss {
                expected: d,
                found: (0..d).filter(|&i| r[(i, i)].norm() > 0.0).count(),
            })?;
        c *= rinv;
    }
    (0..d)
        .map(|j| {
            let lead = c[(j, j)];
            let phase = lead / lead.norm();
            let coeffs: Vec<Complex64> = (0..=j).map(|i| c[(i, j)] / phase).collect();
            Ok(RatFun::from_poly(Poly::new(coeffs), tol)?.mul(w, tol))
        })
        .collect()
}

/// Whether `sigma * f` lies in `conj(z H2)`: the realization has every pole
/// strictly inside the disc and vanishes at infinity.
pub fn annihilates(s: &ToeplitzSymbol, f: &RatFun, tol: &ToleranceConfig) -> bool {
    let r = s.realize(tol).mul(f, tol);
    if r.is_zero() {
        return true;
    }
    r.poles().iter().all(|(p, _)| p.norm() < 1.0) && r.num().degree() < r.den().degree()
}

/// `K_theta` with its Takenaka-Malmquist basis
/// `e_k = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} b_{a_j}`,
/// which is orthonormal in H2.
pub fn model_space(theta: &BlaschkeProduct, tol: &ToleranceConfig) -> Result<Subspace> {
    let seq: Vec<Complex64> = theta
        .zeros()
        .iter()
        .flat_map(|&(a, m)| std::iter::repeat_n(a, m))
        .collect();
    let mut basis = Vec::with_capacity(seq.len());
    for (k, &ak) in seq.iter().enumerate() {
        let mut gain = Complex64::new((1.0 - ak.norm_sqr()).sqrt(), 0.0);
        let mut zeros = RootMultiset::new();
        let mut poles = RootMultiset::new();
        for &aj in &seq[..k] {
            zeros.insert(aj, 1, tol);
            if aj != ZERO {
                gain /= -aj.conj();
                poles.insert(ONE / aj.conj(), 1, tol);
            }
        }
        if ak != ZERO {
            gain /= -ak.conj();
            poles.insert(ONE / ak.conj(), 1, tol);
        }
        basis.push(RatFun::from_factors(gain, zeros, poles, tol));
    }
    Subspace::new(basis, tol)
}

/// `(f - f(0)) / z`, computed on the numerator so the constant term cancels
/// exactly.
pub fn backward_shift(f: &RatFun, tol: &ToleranceConfig) -> Result<RatFun> {
    if f.is_zero() {
        return Ok(RatFun::zero());
    }
    let c = f.eval(ZERO, tol)?;
    let mut p = f.num().sub(&f.den().scale(c)).into_coeffs();
    if p.len() <= 1 {
        return Ok(RatFun::zero());
    }
    p.remove(0);
    let p = Poly::trimmed(p, tol.leading);
    let scale = f.num().max_abs().max(f.den().max_abs() * c.norm());
    if p.is_zero() || p.max_abs() <= tol.leading * scale {
        return Ok(RatFun::zero());
    }
    let zeros = poly_roots(&p, tol)?;
    Ok(RatFun::from_factors(
        p.leading(),
        zeros,
        f.poles().clone(),
        tol,
    ))
}

/// Basis of `{f in M : f(0) = 0}` built by eliminating the value at the
/// origin against the element with the largest one. `None` when every basis
/// element already vanishes there.
pub(crate) fn vanishing_part(
    m: &Subspace,
    tol: &ToleranceConfig,
) -> Result<Option<(Vec<RatFun>, usize)>> {
    let values: Vec<Complex64> = m.functions().map(|f| f.value(ZERO)).collect();
    let scales: Vec<f64> = m.functions().map(|f| f.circle_max(64)).collect();
    let (pivot, best) = values
        .iter()
        .zip(scales.iter())
        .map(|(v, s)| v.norm() / s.max(f64::MIN_POSITIVE))
        .enumerate()
        .fold((0, 0.0), |acc, (i, r)| if r > acc.1 { (i, r) } else { acc });
    if best < 1e-12 {
        return Ok(None);
    }
    let fp = &m.basis()[pivot];
    let mut out = Vec::new();
    for (i, f) in m.functions().enumerate() {
        if i != pivot {
            out.push(f.sub(&fp.scale(values[i] / values[pivot]), tol)?);
        }
    }
    Ok(Some((out, pivot)))
}

/// Tests whether `S* f` stays in `M` for every `f` in `M` vanishing at 0.
pub fn is_nearly_sstar_invariant(
    m: &Subspace,
    tol: &ToleranceConfig,
) -> Result<NearInvarianceReport> {
    if m.dim() == 0 {
        return Err(Error::DegenerateInput(
            "near invariance of the zero subspace".into(),
        ));
    }
    let m0 = match vanishing_part(m, tol)? {
        Some((fs, _)) => fs,
        None => m.basis().to_vec(),
    };
    for g in m0 {
        if g.is_zero() {
            continue;
        }
        let shifted = backward_shift(&g, tol)?;
        if !membership(&shifted, m, tol) {
            let witness = g.scale(ONE / g.gain());
            return Ok(NearInvarianceReport {
                invariant: false,
                witness: Some(witness),
            });
        }
    }
    Ok(NearInvarianceReport {
        invariant: true,
        witness: None,
    })
}

/// `C_psi(M)`: the span of `f o psi`.
pub fn apply_composition(
    m: &Subspace,
    psi: &BlaschkeProduct,
    tol: &ToleranceConfig,
) -> Result<Subspace> {
    let p = psi.to_ratfun(tol);
    let basis = m
        .functions()
        .map(|f| f.compose(&p, tol))
        .collect::<Result<Vec<_>>>()?;
    Subspace::new(basis, tol)
}

/// `uM`: the span of `u f`.
pub fn multiply_subspace(u: &RatFun, m: &Subspace, tol: &ToleranceConfig) -> Result<Subspace> {
    if u.is_zero() {
        return Err(Error::DegenerateInput("multiplication by zero".into()));
    }
    Subspace::new(m.functions().map(|f| u.mul(f, tol)).collect(), tol)
}

/// Largest deviation between two functions over `n` circle samples,
/// relative to the size of `a`.
pub(crate) fn circle_relative_gap(a: &RatFun, b: impl Fn(Complex64) -> Complex64, n: usize) -> f64 {
    let scale = a.circle_max(n).max(f64::MIN_POSITIVE);
    circle_points(n)
        .map(|z| (a.value(z) - b(z)).norm())
        .fold(0.0, f64::max)
        / scale
}
