use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;

use crate::error::{Error, Result};
use crate::ratfun::{circle_points, Poly, RatFun, RootMultiset};
use crate::tolerance::ToleranceConfig;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// A finite-dimensional subspace of H2 spanned by rational functions.
///
/// The basis is kept as given (it is never re-orthonormalized); all rank and
/// membership decisions are made in the H2 geometry, using circle samples of
/// the basis functions.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Vec<RatFun>,
    den_roots: RootMultiset,
    common_den: Poly,
    coeffs: DMatrix<Complex64>,
}

/// Outcome of comparing two subspaces.
#[derive(Clone, Debug)]
pub struct SubspaceRelations {
    /// `M1` is contained in `M2`.
    pub included: bool,
    pub equal: bool,
    pub sum: Subspace,
    pub intersection_dim: usize,
}

impl Subspace {
    /// Span of `functions`, which must be linearly independent and have all
    /// poles outside the closed disc.
    pub fn new(functions: Vec<RatFun>, tol: &ToleranceConfig) -> Result<Self> {
        for f in &functions {
            if let Some(&(p, _)) = f
                .poles()
                .iter()
                .find(|(p, _)| p.norm() < 1.0 + tol.disc_margin)
            {
                return Err(Error::NotInH2 { modulus: p.norm() });
            }
        }
        let mut den_roots = RootMultiset::new();
        for f in &functions {
            den_roots = den_roots.join(f.poles(), tol);
        }
        let common_den = den_roots.to_poly();
        let rows: Vec<Poly> = functions
            .iter()
            .map(|f| {
                let extra = den_roots
                    .difference(f.poles(), tol)
                    .expect("joined denominator contains every pole set");
                f.num().mul(&extra.to_poly())
            })
            .collect();
        let width = rows.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let coeffs = DMatrix::from_fn(rows.len(), width, |i, j| rows[i].coeff(j));
        let space = Subspace {
            basis: functions,
            den_roots,
            common_den,
            coeffs,
        };
        let d = space.dim();
        if d > 0 {
            let n = sample_count(space.basis.iter(), tol);
            let found = numeric_rank(&sample_rows(space.basis.iter(), n), tol);
            if found < d {
                return Err(Error::RankLoss { expected: d, found });
            }
        }
        Ok(space)
    }

    /// The zero subspace.
    pub fn zero() -> Self {
        Subspace {
            basis: Vec::new(),
            den_roots: RootMultiset::new(),
            common_den: Poly::one(),
            coeffs: DMatrix::from_element(0, 0, ZERO),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatFun] {
        &self.basis
    }

    pub fn functions(&self) -> impl Iterator<Item = &RatFun> {
        self.basis.iter()
    }

    pub fn into_basis(self) -> Vec<RatFun> {
        self.basis
    }

    /// Least common denominator of the basis.
    pub fn common_den(&self) -> &Poly {
        &self.common_den
    }

    /// Rows are the basis numerators over the common denominator.
    pub fn coeff_matrix(&self) -> &DMatrix<Complex64> {
        &self.coeffs
    }

    pub fn contains(&self, f: &RatFun, tol: &ToleranceConfig) -> bool {
        membership(f, self, tol)
    }

    /// `self` is contained in `other`.
    pub fn is_subspace_of(&self, other: &Subspace, tol: &ToleranceConfig) -> bool {
        subspace_relations(self, other, tol).included
    }

    pub fn same_as(&self, other: &Subspace, tol: &ToleranceConfig) -> bool {
        subspace_relations(self, other, tol).equal
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, g) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// Samples needed to resolve the functions on the circle: at least four per
/// numerator coefficient, and enough that the Fourier tails decay below
/// roundoff given the pole closest to the circle.
fn sample_count<'a>(fs: impl Iterator<Item = &'a RatFun>, tol: &ToleranceConfig) -> usize {
    let mut width = 1usize;
    let mut rho = f64::INFINITY;
    for f in fs {
        width = width.max(f.num().degree() + 1).max(f.den().degree() + 1);
        for &(p, _) in f.poles().iter() {
            rho = rho.min(p.norm());
        }
    }
    let mut n = 256usize.max(4 * width);
    if rho.is_finite() {
        let rho = rho.max(1.0 + tol.disc_margin);
        n = n.max(((36.0 / rho.ln()).ceil() as usize).min(16384));
    }
    n
}

/// Row `i` holds the normalized circle samples of `f_i`.
fn sample_rows<'a>(fs: impl Iterator<Item = &'a RatFun>, n: usize) -> DMatrix<Complex64> {
    let pts: Vec<Complex64> = circle_points(n).collect();
    let rows: Vec<Vec<Complex64>> = fs
        .map(|f| {
            let mut v: Vec<Complex64> = pts.iter().map(|&z| f.value(z)).collect();
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.0 {
                v.iter_mut().for_each(|x| *x /= norm);
            }
            v
        })
        .collect();
    DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j])
}

fn numeric_rank(m: &DMatrix<Complex64>, tol: &ToleranceConfig) -> usize {
    rank_of(&singular_values_direct(m), tol.rank)
}

fn rank_of(sv: &[f64], rel: f64) -> usize {
    let Some(&top) = sv.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel * top).count()
}

/// Singular values from an SVD of the (short, wide) matrix itself, which
/// keeps the full dynamic range needed for a relative threshold of `1e-9`.
fn singular_values_direct(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let t = m.adjoint();
    let r = t.qr().r();
    let mut sv: Vec<f64> = r.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Orthonormal rows spanning the row space of the sample matrix.
fn orthonormal_rows(m: &DMatrix<Complex64>, tol: &ToleranceConfig) -> DMatrix<Complex64> {
    if m.nrows() == 0 {
        return DMatrix::from_element(0, m.ncols(), ZERO);
    }
    let q = m.adjoint().qr();
    let r = q.r();
    let svd = r.svd(true, false);
    let u = svd.u.expect("requested left singular vectors");
    let sv = &svd.singular_values;
    let top = sv.max();
    let keep: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] > tol.rank * top).collect();
    let basis = q.q() * u;
    DMatrix::from_fn(keep.len(), m.ncols(), |i, j| basis[(j, keep[i])].conj())
}

/// Whether `f` lies in the span of `m`.
///
/// The poles of `f` must be among the roots of the common denominator; the
/// relative least-squares residual of the circle samples must then be below
/// `membership`. The zero function belongs to every subspace.
pub fn membership(f: &RatFun, m: &Subspace, tol: &ToleranceConfig) -> bool {
    if f.is_zero() {
        return true;
    }
    if m.dim() == 0 || !f.poles().is_submultiset(&m.den_roots, tol) {
        return false;
    }
    let n = sample_count(m.basis.iter().chain(std::iter::once(f)), tol);
    let q = orthonormal_rows(&sample_rows(m.basis.iter(), n), tol);
    let v = sample_rows(std::iter::once(f), n);
    let proj = (&v * q.adjoint()) * &q;
    let residual = (&v - proj).norm();
    residual < tol.membership
}

/// Inclusion, equality, sum and intersection dimension of two subspaces.
pub fn subspace_relations(
    m1: &Subspace,
    m2: &Subspace,
    tol: &ToleranceConfig,
) -> SubspaceRelations {
    let (d1, d2) = (m1.dim(), m2.dim());
    let all: Vec<&RatFun> = m1.basis.iter().chain(m2.basis.iter()).collect();
    if all.is_empty() {
        return SubspaceRelations {
            included: true,
            equal: true,
            sum: Subspace::zero(),
            intersection_dim: 0,
        };
    }
    let n = sample_count(all.iter().copied(), tol);
    let q1 = orthonormal_rows(&sample_rows(m1.basis.iter(), n), tol);
    let q2 = orthonormal_rows(&sample_rows(m2.basis.iter(), n), tol);
    let mut stacked = DMatrix::from_element(q1.nrows() + q2.nrows(), n, ZERO);
    stacked.rows_mut(0, q1.nrows()).copy_from(&q1);
    stacked.rows_mut(q1.nrows(), q2.nrows()).copy_from(&q2);
    // singular values of stacked orthonormal rows are sqrt(1 -+ cos(angle))
    let rank = rank_of(&singular_values_direct(&stacked), tol.membership);
    let included = rank == q2.nrows();
    let equal = included && q1.nrows() == q2.nrows();

    // greedy selection of original basis elements that raise the rank
    let rows = sample_rows(all.iter().copied(), n);
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..all.len() {
        if chosen.len() == rank {
            break;
        }
        let sub = DMatrix::from_fn(chosen.len(), n, |r, c| rows[(chosen[r], c)]);
        let q = orthonormal_rows(&sub, tol);
        let v = rows.rows(i, 1).into_owned();
        let residual = (&v - (&v * q.adjoint()) * &q).norm();
        if residual >= tol.membership {
            chosen.push(i);
        }
    }
    let sum_basis: Vec<RatFun> = chosen.iter().map(|&i| all[i].clone()).collect();
    let sum =
        Subspace::new(sum_basis, tol).expect("selected functions are independent H2 functions");
    SubspaceRelations {
        included,
        equal,
        intersection_dim: d1 + d2 - sum.dim(),
        sum,
    }
}
