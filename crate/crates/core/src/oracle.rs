//! Independent numeric engine: truncated Toeplitz matrices, SVD null spaces,
//! Taylor embeddings, inner products and principal angles.
//!
//! Nothing here feeds back into the exact engine; it only confirms or refutes.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::Subspace;
use crate::ratfun::{circle_points, RatFun};
use crate::symbols::ToeplitzSymbol;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Required ratio between the smallest kept and largest rejected singular value.
pub const REQUIRED_GAP: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct OracleConfig {
    pub truncation: usize,
    pub fft_size: usize,
    pub svd_gap_tol: f64,
    pub angle_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            truncation: 256,
            fft_size: 4096,
            svd_gap_tol: 1e-6,
            angle_tol: 1e-8,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |message: &str| {
            Err(Error::Validation {
                path: "oracle".into(),
                message: message.into(),
            })
        };
        if self.truncation < 64 {
            return bad("truncation must be at least 64");
        }
        if !self.fft_size.is_power_of_two() {
            return bad("fftSize must be a power of two");
        }
        if self.fft_size < 4 * self.truncation {
            return bad("fftSize must be at least 4 * truncation");
        }
        Ok(())
    }
}

/// Orthonormal columns of Taylor coefficients, truncated to `N` rows.
#[derive(Debug, Clone)]
pub struct NumericSubspace {
    columns: DMatrix<Complex64>,
}

impl NumericSubspace {
    pub fn columns(&self) -> &DMatrix<Complex64> {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    pub fn truncation(&self) -> usize {
        self.columns.nrows()
    }
}

/// Fourier coefficients `c_k`, `-N <= k <= N`.
#[derive(Debug, Clone)]
pub struct FourierCoefficients {
    coeffs: Vec<Complex64>,
    n: usize,
    pub truncation_warning: Option<String>,
}

impl FourierCoefficients {
    pub fn get(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.n {
            return ZERO;
        }
        self.coeffs[(k + self.n as i64) as usize]
    }

    pub fn max_index(&self) -> usize {
        self.n
    }
}

/// Coefficients of the symbol from an FFT of equispaced circle samples.
pub fn fourier_coefficients(s: &ToeplitzSymbol, cfg: &OracleConfig) -> Result<FourierCoefficients> {
    cfg.validate()?;
    let n = 2 * cfg.truncation;
    let coeffs = raw_coefficients(|z| s.eval(z), cfg.fft_size, n);
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let edge = coeffs[0].norm().max(coeffs[2 * n].norm());
    let truncation_warning = (edge >= 1e-9 * max)
        .then(|| format!("coefficients at index +-{n} reach {edge:e} relative to max {max:e}"));
    Ok(FourierCoefficients {
        coeffs,
        n,
        truncation_warning,
    })
}

fn raw_coefficients(f: impl Fn(Complex64) -> Complex64, m: usize, n: usize) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = circle_points(m).map(f).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    (-(n as i64)..=n as i64)
        .map(|k| buf[k.rem_euclid(m as i64) as usize] * scale)
        .collect()
}

/// Numeric kernel of the Toeplitz operator from a finite section.
///
/// The section has `2N` rows and `N` columns so that the image of every
/// truncated vector is captured; a square section would add spurious null
/// vectors at the tail when the winding number is positive.
pub fn truncated_kernel(s: &ToeplitzSymbol, cfg: &OracleConfig) -> Result<NumericSubspace> {
    let c = fourier_coefficients(s, cfg)?;
    let n = cfg.truncation;
    let t = DMatrix::from_fn(2 * n, n, |i, j| c.get(i as i64 - j as i64));
    let r = t.qr().r();
    let sv = r.singular_values();
    let smax = sv.max();
    let threshold = cfg.svd_gap_tol * smax;
    let dim = sv.iter().filter(|&&x| x < threshold).count();
    let kept_min = sv
        .iter()
        .copied()
        .filter(|&x| x >= threshold)
        .fold(f64::INFINITY, f64::min);
    let rejected_max = sv
        .iter()
        .copied()
        .filter(|&x| x < threshold)
        .fold(0.0, f64::max);
    if dim > 0 && kept_min.is_finite() {
        let gap = kept_min / rejected_max.max(f64::MIN_POSITIVE);
        if gap < REQUIRED_GAP {
            return Err(Error::GapFailure {
                gap,
                required: REQUIRED_GAP,
            });
        }
    }
    let columns = null_vectors(r, dim, smax);
    Ok(NumericSubspace { columns })
}

/// Orthonormal basis of the `dim` smallest right singular directions of the
/// upper triangular `r`, by block inverse iteration on `r^H r`. The singular
/// value gap of at least `REQUIRED_GAP` makes each sweep contract the
/// unwanted components by `1e-6` or better.
fn null_vectors(mut r: DMatrix<Complex64>, dim: usize, smax: f64) -> DMatrix<Complex64> {
    let n = r.ncols();
    if dim == 0 {
        return DMatrix::zeros(n, 0);
    }
    let floor = f64::EPSILON * smax.max(f64::MIN_POSITIVE);
    for i in 0..n {
        if r[(i, i)].norm() < floor {
            r[(i, i)] = Complex64::new(floor, 0.0);
        }
    }
    let rh = r.adjoint();
    let mut x = orthonormal_columns(DMatrix::from_fn(n, dim, |i, j| {
        let t = (i * (j + 1)) as f64;
        Complex64::new((0.7 * t + j as f64).sin(), (1.3 * t + 0.5).cos())
    }));
    for _ in 0..INVERSE_SWEEPS {
        let y = rh.solve_lower_triangular(&x).expect("diagonal is floored");
        x = orthonormal_columns(r.solve_upper_triangular(&y).expect("diagonal is floored"));
    }
    x
}

const INVERSE_SWEEPS: usize = 4;

/// First `n` Taylor coefficients of a rational function analytic on the disc.
pub fn taylor_coefficients(f: &RatFun, n: usize) -> Vec<Complex64> {
    let num = f.num();
    let den = f.den();
    let d0 = den.coeff(0);
    let mut a = vec![ZERO; n];
    for k in 0..n {
        let mut acc = num.coeff(k);
        for j in 1..=den.degree().min(k) {
            acc -= den.coeff(j) * a[k - j];
        }
        a[k] = acc / d0;
    }
    a
}

/// Orthonormalized Taylor coefficients of the basis of `m`.
pub fn taylor_embed(m: &Subspace, cfg: &OracleConfig) -> Result<NumericSubspace> {
    cfg.validate()?;
    let n = cfg.truncation;
    let cols: Vec<Vec<Complex64>> = m.functions().map(|f| taylor_coefficients(f, n)).collect();
    let raw = DMatrix::from_fn(n, cols.len(), |i, j| cols[j][i]);
    Ok(NumericSubspace {
        columns: orthonormal_columns(raw),
    })
}

/// Orthonormal basis of the column space (columns assumed independent).
pub fn orthonormal_columns(raw: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let d = raw.ncols();
    if d == 0 {
        return raw;
    }
    let svd = raw.svd(true, false);
    let u = svd.u.expect("requested left singular vectors");
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    DMatrix::from_fn(u.nrows(), d, |i, j| u[(i, order[j])])
}

/// Principal angles in ascending order.
///
/// When the dimensions agree each angle is `atan2(sine, cosine)` from the
/// singular values of `B - A A^H B` and `A^H B`, which keeps small angles
/// accurate; otherwise the cosines alone are used.
pub fn principal_angles(a: &NumericSubspace, b: &NumericSubspace) -> Result<Vec<f64>> {
    if a.truncation() != b.truncation() {
        return Err(Error::DimensionMismatch {
            left: a.truncation(),
            right: b.truncation(),
        });
    }
    let (qa, qb) = (&a.columns, &b.columns);
    let k = a.dim().min(b.dim());
    if k == 0 {
        return Ok(Vec::new());
    }
    let cross = qa.adjoint() * qb;
    let mut cos: Vec<f64> = cross.singular_values().iter().copied().collect();
    cos.sort_by(|x, y| y.total_cmp(x));
    cos.truncate(k);
    if a.dim() != b.dim() {
        return Ok(cos.iter().map(|c| c.clamp(0.0, 1.0).acos()).collect());
    }
    let residual = qb - qa * &cross;
    let mut sin: Vec<f64> = residual.singular_values().iter().copied().collect();
    sin.sort_by(|x, y| x.total_cmp(y));
    Ok(cos
        .iter()
        .zip(sin.iter())
        .map(|(c, s)| s.atan2(*c).clamp(0.0, std::f64::consts::FRAC_PI_2))
        .collect())
}

/// Largest principal angle, requiring equal dimensions.
pub fn subspace_distance(a: &NumericSubspace, b: &NumericSubspace) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(principal_angles(a, b)?.into_iter().fold(0.0, f64::max))
}

/// `<f, g>` in H2, by Taylor coefficients and by circle quadrature; the two
/// must agree to `1e-9` relative to `||f|| ||g||`.
pub fn h2_inner_product(f: &RatFun, g: &RatFun, cfg: &OracleConfig) -> Result<Complex64> {
    cfg.validate()?;
    let n = cfg.truncation;
    let a = taylor_coefficients(f, n);
    let b = taylor_coefficients(g, n);
    let taylor: Complex64 = a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum();
    let m = cfg.fft_size;
    let quad: Complex64 = circle_points(m)
        .map(|z| f.value(z) * g.value(z).conj())
        .sum::<Complex64>()
        / m as f64;
    let norm = |c: &[Complex64]| c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let scale = (norm(&a) * norm(&b)).max(f64::MIN_POSITIVE);
    let difference = (taylor - quad).norm();
    if difference > 1e-9 * scale {
        return Err(Error::QuadratureMismatch { difference });
    }
    Ok(taylor)
}

/// Gram matrix `G[i][j] = <f_i, f_j>`.
pub fn gram_matrix(fs: &[&RatFun], cfg: &OracleConfig) -> Result<DMatrix<Complex64>> {
    let d = fs.len();
    let mut g = DMatrix::from_element(d, d, ZERO);
    for i in 0..d {
        for j in i..d {
            let v = h2_inner_product(fs[i], fs[j], cfg)?;
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::BlaschkeProduct;
    use crate::ratfun::Poly;
    use crate::ToleranceConfig;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn b_half(t: &ToleranceConfig) -> BlaschkeProduct {
        BlaschkeProduct::factor(c(-0.5, 0.0), t).unwrap()
    }

    fn final_example_symbol(t: &ToleranceConfig) -> ToeplitzSymbol {
        let b = b_half(t);
        ToeplitzSymbol::new(RatFun::z_power(3), b.mul(&b, t).to_ratfun(t), 0, t).unwrap()
    }

    #[test]
    fn coefficients_of_simple_symbols() {
        let t = tol();
        let cfg = OracleConfig::default();
        let cz = ToeplitzSymbol::conj_of(RatFun::z(), &t).unwrap();
        let f = fourier_coefficients(&cz, &cfg).unwrap();
        assert!((f.get(-1) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(f.get(0).norm() < 1e-14 && f.get(1).norm() < 1e-14);
        let one = ToeplitzSymbol::monomial(0);
        let f = fourier_coefficients(&one, &cfg).unwrap();
        assert!((f.get(0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(f.truncation_warning.is_none());
    }

    #[test]
    fn coefficients_of_shifted_blaschke_square() {
        // b^2 = (z + 1/2)^2 (1 + z/2)^-2; expand directly as a power series
        let t = tol();
        let cfg = OracleConfig::default();
        let f = fourier_coefficients(&final_example_symbol(&t), &cfg).unwrap();
        let b2 = b_half(&t).mul(&b_half(&t), &t).to_ratfun(&t);
        let series = taylor_coefficients(&b2, 12);
        for k in [0usize, 1, 2, 5, 9] {
            assert!((f.get(k as i64 - 3) - series[k]).norm() < 1e-12);
        }
        assert!(f.get(-4).norm() < 1e-14);
    }

    #[test]
    fn truncated_kernels_have_expected_dimension() {
        let t = tol();
        let cfg = OracleConfig {
            truncation: 64,
            fft_size: 256,
            ..OracleConfig::default()
        };
        let cz = ToeplitzSymbol::conj_of(RatFun::z(), &t).unwrap();
        let k = truncated_kernel(&cz, &cfg).unwrap();
        assert_eq!(k.dim(), 1);
        assert!((k.columns()[(0, 0)].norm() - 1.0).abs() < 1e-12);
        assert_eq!(
            truncated_kernel(&ToeplitzSymbol::monomial(1), &cfg)
                .unwrap()
                .dim(),
            0
        );
    }

    #[test]
    fn final_example_kernel_is_z_plus_two_squared() {
        let t = tol();
        let cfg = OracleConfig::default();
        let k = truncated_kernel(&final_example_symbol(&t), &cfg).unwrap();
        assert_eq!(k.dim(), 1);
        let u = RatFun::from_poly(Poly::from_real(&[4.0, 4.0, 1.0]), &t).unwrap();
        let m = Subspace::new(vec![u], &t).unwrap();
        let e = taylor_embed(&m, &cfg).unwrap();
        assert!(subspace_distance(&k, &e).unwrap() < 1e-8);
    }

    #[test]
    fn principal_angles_of_coordinate_axes() {
        let e = |k: usize| NumericSubspace {
            columns: DMatrix::from_fn(64, 1, |i, _| if i == k { c(1.0, 0.0) } else { ZERO }),
        };
        assert!(principal_angles(&e(0), &e(0)).unwrap()[0].abs() < 1e-15);
        let a = principal_angles(&e(0), &e(1)).unwrap()[0];
        assert!((a - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn inner_products() {
        let t = tol();
        let cfg = OracleConfig::default();
        let z2 = RatFun::z_power(2);
        let z3 = RatFun::z_power(3);
        assert!((h2_inner_product(&z2, &z2, &cfg).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        assert!(h2_inner_product(&z2, &z3, &cfg).unwrap().norm() < 1e-14);

        let kernel = |a: Complex64| {
            RatFun::new(Poly::one(), Poly::new(vec![c(1.0, 0.0), -a.conj()]), &t).unwrap()
        };
        let (a, b) = (c(0.3, -0.4), c(-0.5, 0.1));
        let ip = h2_inner_product(&kernel(a), &kernel(b), &cfg).unwrap();
        let expected = c(1.0, 0.0) / (c(1.0, 0.0) - a.conj() * b);
        // <k_a, k_b> = k_a(b) = 1 / (1 - conj(a) b)
        assert!((ip - expected).norm() < 1e-12);

        let u = RatFun::from_poly(Poly::from_real(&[4.0, 4.0, 1.0]), &t).unwrap();
        assert!((h2_inner_product(&u, &u, &cfg).unwrap() - c(33.0, 0.0)).norm() < 1e-11);
    }

    #[test]
    fn config_validation() {
        let bad = OracleConfig {
            fft_size: 512,
            ..OracleConfig::default()
        };
        assert!(bad.validate().is_err());
        assert!(OracleConfig::default().validate().is_ok());
    }
}
