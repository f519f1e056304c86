//! Root localization: companion-matrix eigenvalues, Newton polishing and
//! multiplicity-aware clustering.

use num_complex::Complex64;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Distinct root locations with multiplicities.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RootMultiset {
    roots: Vec<(Complex64, usize)>,
}

impl RootMultiset {
    pub fn new() -> Self {
        RootMultiset { roots: Vec::new() }
    }

    /// Builds a multiset, merging locations that coincide within `root_match`.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (Complex64, usize)>,
        tol: &ToleranceConfig,
    ) -> Self {
        let mut out = RootMultiset::new();
        for (r, m) in pairs {
            out.insert(r, m, tol);
        }
        out
    }

    pub fn single(r: Complex64, m: usize) -> Self {
        if m == 0 {
            return RootMultiset::new();
        }
        RootMultiset {
            roots: vec![(r, m)],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Complex64, usize)> {
        self.roots.iter()
    }

    pub fn as_slice(&self) -> &[(Complex64, usize)] {
        &self.roots
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Number of distinct locations.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    /// Sum of multiplicities.
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Each location repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|&(r, m)| std::iter::repeat_n(r, m))
            .collect()
    }

    pub fn multiplicity_of(&self, r: Complex64, tol: &ToleranceConfig) -> usize {
        self.roots
            .iter()
            .find(|(s, _)| tol.same_point(*s, r))
            .map_or(0, |(_, m)| *m)
    }

    pub fn insert(&mut self, r: Complex64, m: usize, tol: &ToleranceConfig) {
        if m == 0 {
            return;
        }
        if let Some(entry) = self.roots.iter_mut().find(|(s, _)| tol.same_point(*s, r)) {
            entry.1 += m;
        } else {
            self.roots.push((r, m));
        }
    }

    /// Removes up to `m` copies of `r`; returns how many were removed.
    pub fn remove(&mut self, r: Complex64, m: usize, tol: &ToleranceConfig) -> usize {
        if let Some(idx) = self.roots.iter().position(|(s, _)| tol.same_point(*s, r)) {
            let take = m.min(self.roots[idx].1);
            self.roots[idx].1 -= take;
            if self.roots[idx].1 == 0 {
                self.roots.remove(idx);
            }
            take
        } else {
            0
        }
    }

    /// Multiset sum (multiplicities add).
    pub fn union(&self, other: &RootMultiset, tol: &ToleranceConfig) -> RootMultiset {
        let mut out = self.clone();
        for &(r, m) in &other.roots {
            out.insert(r, m, tol);
        }
        out
    }

    /// Multiset join (maximum multiplicity).
    pub fn join(&self, other: &RootMultiset, tol: &ToleranceConfig) -> RootMultiset {
        let mut out = self.clone();
        for &(r, m) in &other.roots {
            let have = out.multiplicity_of(r, tol);
            if m > have {
                out.insert(r, m - have, tol);
            }
        }
        out
    }

    /// Multiset meet (minimum multiplicity).
    pub fn meet(&self, other: &RootMultiset, tol: &ToleranceConfig) -> RootMultiset {
        let mut out = RootMultiset::new();
        for &(r, m) in &self.roots {
            let k = m.min(other.multiplicity_of(r, tol));
            out.insert(r, k, tol);
        }
        out
    }

    /// True iff every root of `self` occurs in `other` with at least the same multiplicity.
    pub fn is_submultiset(&self, other: &RootMultiset, tol: &ToleranceConfig) -> bool {
        self.roots
            .iter()
            .all(|&(r, m)| other.multiplicity_of(r, tol) >= m)
    }

    /// `self - other`, or `None` when `other` is not contained in `self`.
    pub fn difference(&self, other: &RootMultiset, tol: &ToleranceConfig) -> Option<RootMultiset> {
        let mut out = self.clone();
        for &(r, m) in &other.roots {
            if out.remove(r, m, tol) != m {
                return None;
            }
        }
        Some(out)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> RootMultiset {
        RootMultiset {
            roots: self.roots.iter().map(|&(r, m)| (f(r), m)).collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(Complex64) -> bool) -> RootMultiset {
        RootMultiset {
            roots: self
                .roots
                .iter()
                .copied()
                .filter(|&(r, _)| keep(r))
                .collect(),
        }
    }

    /// Number of roots (with multiplicity) satisfying `pred`.
    pub fn count(&self, pred: impl Fn(Complex64) -> bool) -> usize {
        self.roots
            .iter()
            .filter(|(r, _)| pred(*r))
            .map(|(_, m)| m)
            .sum()
    }

    /// Removes common roots of `a` and `b` from both (with multiplicity).
    pub fn cancel_common(a: &mut RootMultiset, b: &mut RootMultiset, tol: &ToleranceConfig) {
        let mut i = 0;
        while i < a.roots.len() {
            let (r, m) = a.roots[i];
            let removed = b.remove(r, m, tol);
            if removed > 0 {
                a.roots[i].1 -= removed;
                if a.roots[i].1 == 0 {
                    a.roots.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    /// Monic polynomial with these roots.
    pub fn to_poly(&self) -> Poly {
        Poly::from_roots(self.expanded().iter())
    }

    /// Canonical ordering (by modulus, then argument) for stable output.
    pub fn sorted(&self) -> RootMultiset {
        let mut roots = self.roots.clone();
        roots.sort_by(|a, b| {
            a.0.norm()
                .total_cmp(&b.0.norm())
                .then(a.0.arg().total_cmp(&b.0.arg()))
        });
        RootMultiset { roots }
    }
}

/// Roots of `p` with multiplicities.
///
/// Eigenvalues of the balanced companion matrix are computed by a shifted QR
/// iteration, polished by Newton steps, then clustered: a group of `m` nearby
/// eigenvalues is merged into one root of multiplicity `m` when its spread is
/// compatible with the splitting an `m`-fold root suffers under rounding.
/// Only simple roots are polished; the centroid of a cluster is already
/// accurate and Newton steps would scatter it.
pub fn poly_roots(p: &Poly, tol: &ToleranceConfig) -> Result<RootMultiset> {
    let p = Poly::trimmed(p.coeffs().to_vec(), tol.leading);
    if p.is_zero() {
        return Err(Error::DegenerateInput(
            "roots of the zero polynomial".into(),
        ));
    }
    let n = p.degree();
    if n == 0 {
        return Ok(RootMultiset::new());
    }
    if p.coeffs()
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::DegenerateInput("non-finite coefficient".into()));
    }

    // zeros at the origin, including low coefficients lost in rounding
    let floor = tol.leading * p.max_abs();
    let low = p.coeffs().iter().take_while(|c| c.norm() <= floor).count();
    let reduced = Poly::new(p.coeffs()[low..].to_vec());

    let raw = if reduced.degree() > 0 {
        companion_eigenvalues(&reduced)?
    } else {
        Vec::new()
    };
    let mut clusters = cluster_roots(&reduced, &raw, tol);
    for (r, m) in clusters.iter_mut() {
        if *m == 1 {
            *r = newton_polish(&reduced, *r);
        }
    }
    let mut out = RootMultiset::new();
    if low > 0 {
        out.insert(ZERO, low, tol);
    }
    for (mut r, m) in clusters {
        let residual = p.eval(r).norm() / p.abs_eval(r).max(f64::MIN_POSITIVE);
        if m == 1 && residual > tol.root_residual {
            return Err(Error::RootFinding(format!(
                "residual {residual:e} at root {r} exceeds tolerance"
            )));
        }
        if r.norm() <= tol.root_match {
            r = ZERO;
        }
        out.insert(r, m, tol);
    }
    if out.degree() != n {
        return Err(Error::RootFinding(format!(
            "found {} roots for degree {n}",
            out.degree()
        )));
    }
    Ok(out)
}

fn newton_polish(p: &Poly, mut r: Complex64) -> Complex64 {
    let dp = p.derivative();
    let mut best = p.eval(r).norm();
    for _ in 0..4 {
        let d = dp.eval(r);
        if d.norm() == 0.0 {
            break;
        }
        let next = r - p.eval(r) / d;
        let val = p.eval(next).norm();
        if val.is_nan() || val >= best {
            break;
        }
        best = val;
        r = next;
    }
    r
}

fn cluster_roots(p: &Poly, raw: &[Complex64], tol: &ToleranceConfig) -> Vec<(Complex64, usize)> {
    let n = p.degree().max(1);
    let noise = 64.0 * n as f64 * f64::EPSILON;
    let mut clusters: Vec<Vec<Complex64>> = raw.iter().map(|&r| vec![r]).collect();

    let centroid = |c: &[Complex64]| c.iter().sum::<Complex64>() / c.len() as f64;

    let accepts = |members: &[Complex64]| -> bool {
        let c = centroid(members);
        let m = members.len();
        let spread = members.iter().map(|r| (r - c).norm()).fold(0.0, f64::max);
        let scale = c.norm().max(1.0);
        if spread <= tol.root_match * scale {
            return true;
        }
        let taylor = p.taylor_at(c);
        let am = taylor.get(m).map_or(0.0, |a| a.norm());
        let lower_small = taylor.iter().take(m).enumerate().all(|(j, a)| {
            a.norm() <= spread.powi((m - j) as i32) * am * 4.0 * m as f64 + noise * p.abs_eval(c)
        });
        if am == 0.0 {
            return lower_small;
        }
        let delta = (noise * p.abs_eval(c) / am).powf(1.0 / m as f64);
        spread <= 10.0 * delta && lower_small
    };

    loop {
        let mut pairs = Vec::new();
        for i in 0..clusters.len() {
            for j in (i + 1)..clusters.len() {
                let ci = centroid(&clusters[i]);
                let cj = centroid(&clusters[j]);
                let d = (ci - cj).norm();
                if d <= 1e-2 * ci.norm().max(1.0) {
                    pairs.push((d, i, j));
                }
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged = false;
        for (_, i, j) in pairs {
            let mut members = clusters[i].clone();
            members.extend_from_slice(&clusters[j]);
            if accepts(&members) {
                clusters[i] = members;
                clusters.remove(j);
                merged = true;
                break;
            }
        }
        if !merged {
            break;
        }
    }
    clusters
        .into_iter()
        .map(|c| (centroid(&c), c.len()))
        .collect()
}

/// Eigenvalues of the companion matrix of `p` (degree >= 1).
fn companion_eigenvalues(p: &Poly) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let lead = p.leading();
    // upper Hessenberg companion: first row holds -c_{n-1-j}/c_n, ones on the subdiagonal
    let mut h = vec![vec![ZERO; n]; n];
    for j in 0..n {
        h[0][j] = -p.coeff(n - 1 - j) / lead;
    }
    for i in 1..n {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    balance(&mut h);
    hessenberg_qr(h)
}

/// Parlett–Reinsch diagonal balancing with radix 2.
fn balance(h: &mut [Vec<Complex64>]) {
    let n = h.len();
    let l1 = |c: Complex64| c.re.abs() + c.im.abs();
    let mut converged = false;
    let mut sweeps = 0;
    while !converged && sweeps < 100 {
        converged = true;
        sweeps += 1;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += l1(h[j][i]);
                    row += l1(h[i][j]);
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut c = col;
            let mut r = row;
            while c < r / 2.0 {
                c *= 4.0;
                r /= 4.0;
                f *= 2.0;
            }
            while c >= r * 2.0 {
                c /= 4.0;
                r *= 4.0;
                f /= 2.0;
            }
            if (c + r) < 0.95 * total {
                converged = false;
                for j in 0..n {
                    h[i][j] /= f;
                    h[j][i] *= f;
                }
            }
        }
    }
}

/// Single-shift complex QR iteration on an upper Hessenberg matrix.
fn hessenberg_qr(mut h: Vec<Vec<Complex64>>) -> Result<Vec<Complex64>> {
    let n = h.len();
    let mut eig = vec![ZERO; n];
    let mut hi = n as isize - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi >= 0 {
        let hiu = hi as usize;
        if hiu == 0 {
            eig[0] = h[0][0];
            break;
        }
        // deflation search
        let mut l = hiu;
        while l > 0 {
            let s = h[l - 1][l - 1].norm() + h[l][l].norm();
            let s = if s == 0.0 { 1.0 } else { s };
            if h[l][l - 1].norm() <= f64::EPSILON * s {
                h[l][l - 1] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hiu {
            eig[hiu] = h[hiu][hiu];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 100 * n.max(10) {
            return Err(Error::RootFinding("QR iteration did not converge".into()));
        }
        // Wilkinson shift from the trailing 2x2 block
        let a = h[hiu - 1][hiu - 1];
        let b = h[hiu - 1][hiu];
        let c = h[hiu][hiu - 1];
        let d = h[hiu][hiu];
        let mut mu = if iter % 11 == 10 {
            // exceptional shift
            d + Complex64::new(0.75 * c.norm(), 0.4 * c.norm())
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() < (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        if !mu.re.is_finite() || !mu.im.is_finite() {
            mu = d;
        }
        for k in l..=hiu {
            h[k][k] -= mu;
        }
        let mut rots = Vec::with_capacity(hiu - l);
        for k in l..hiu {
            let x = h[k][k];
            let y = h[k + 1][k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), ZERO)
            } else {
                (x / r, y / r)
            };
            for j in k..=hiu {
                let u = h[k][j];
                let v = h[k + 1][j];
                h[k][j] = cs.conj() * u + sn.conj() * v;
                h[k + 1][j] = -sn * u + cs * v;
            }
            rots.push((cs, sn));
        }
        for (idx, k) in (l..hiu).enumerate() {
            let (cs, sn) = rots[idx];
            let top = (k + 2).min(hiu);
            for row in h.iter_mut().take(top + 1).skip(l) {
                let u = row[k];
                let v = row[k + 1];
                row[k] = u * cs + v * sn;
                row[k + 1] = -u * sn.conj() + v * cs.conj();
            }
        }
        for k in l..=hiu {
            h[k][k] += mu;
        }
    }
    Ok(eig)
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
    fn simple_quadratic() {
        let r = poly_roots(&Poly::from_real(&[-1.0, 0.0, 1.0]), &tol()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.multiplicity_of(c(1.0, 0.0), &tol()), 1);
        assert_eq!(r.multiplicity_of(c(-1.0, 0.0), &tol()), 1);
    }

    #[test]
    fn triple_root_is_merged() {
        let p = Poly::from_roots(&[c(0.5, 0.0); 3]);
        let r = poly_roots(&p, &tol()).unwrap();
        assert_eq!(r.len(), 1);
        let (loc, m) = r.as_slice()[0];
        assert_eq!(m, 3);
        assert!((loc - c(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn residuals_small_for_quartic() {
        let p = Poly::from_real(&[1.0, 1.0, 0.0, 0.0, 1.0]);
        let r = poly_roots(&p, &tol()).unwrap();
        assert_eq!(r.len(), 4);
        for &(z, _) in r.iter() {
            assert!(p.eval(z).norm() < 1e-10);
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            poly_roots(&Poly::zero(), &tol()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn noisy_zero_roots_snap_to_origin() {
        let mut coeffs = Poly::monomial(3)
            .mul(&Poly::from_real(&[2.0, 1.0]))
            .into_coeffs();
        coeffs[0] = c(1e-18, 0.0);
        let r = poly_roots(&Poly::new(coeffs), &tol()).unwrap();
        assert_eq!(r.multiplicity_of(c(0.0, 0.0), &tol()), 3);
    }

    #[test]
    fn multiset_join_meet() {
        let t = tol();
        let a = RootMultiset::from_pairs([(c(0.0, 0.0), 1), (c(0.5, 0.0), 1)], &t);
        let b = RootMultiset::from_pairs([(c(0.0, 0.0), 2)], &t);
        assert_eq!(a.join(&b, &t).degree(), 3);
        assert_eq!(a.meet(&b, &t).degree(), 1);
        assert!(a.meet(&b, &t).is_submultiset(&a, &t));
        assert!(a.difference(&b, &t).is_none());
    }
}
