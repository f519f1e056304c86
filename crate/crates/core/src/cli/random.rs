//! Seeded generators for random suite instances.
//!
//! All zeros inside the disc have modulus in `[0.05, 0.85]`, all roots
//! outside have modulus in `[1.2, 3]`, and distinct roots of one instance
//! stay at least `0.08` apart.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blaschke::{BlaschkeProduct, H2Rational};
use crate::error::Result;
use crate::ratfun::{RatFun, RootMultiset};
use crate::symbols::ToeplitzSymbol;
use crate::tolerance::ToleranceConfig;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

pub const INNER_MIN: f64 = 0.05;
pub const INNER_MAX: f64 = 0.85;
pub const OUTER_MIN: f64 = 1.2;
pub const OUTER_MAX: f64 = 3.0;
const SEPARATION: f64 = 0.08;

/// Smallest distance between distinct zeros of a composed product below
/// which an instance is redrawn.
pub const MIN_COMPOSED_GAP: f64 = 0.02;

/// Per-trial generator: stream `trial` of the ChaCha8 generator seeded with
/// `seed`, so trials are independent of scheduling.
pub struct InstanceRng {
    rng: ChaCha8Rng,
}

impl InstanceRng {
    pub fn new(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        InstanceRng { rng }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Integer in `lo..=hi`.
    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn unimodular(&mut self) -> Complex64 {
        Complex64::from_polar(1.0, self.uniform(0.0, TAU))
    }

    /// A point with modulus in `[rmin, rmax]` at least [`SEPARATION`] from
    /// every point of `avoid`; the point is appended to `avoid`.
    pub fn point(&mut self, rmin: f64, rmax: f64, avoid: &mut Vec<Complex64>) -> Complex64 {
        let mut z = ZERO;
        for _ in 0..200 {
            z = Complex64::from_polar(self.uniform(rmin, rmax), self.uniform(0.0, TAU));
            if avoid.iter().all(|a| (a - z).norm() >= SEPARATION) {
                break;
            }
        }
        avoid.push(z);
        z
    }

    /// `deg` zeros inside the disc, counted with multiplicity; a double zero
    /// appears with probability 0.15 whenever two slots remain.
    pub fn disc_zeros(
        &mut self,
        deg: usize,
        avoid: &mut Vec<Complex64>,
    ) -> Vec<(Complex64, usize)> {
        let mut out = Vec::new();
        let mut left = deg;
        while left > 0 {
            let m = if left >= 2 && self.chance(0.15) { 2 } else { 1 };
            out.push((self.point(INNER_MIN, INNER_MAX, avoid), m));
            left -= m;
        }
        out
    }

    /// Blaschke product of degree `deg` with a random unimodular constant.
    /// `origin` forces (`Some(true)`) or forbids (`Some(false)`) a zero at 0.
    pub fn blaschke(
        &mut self,
        deg: usize,
        origin: Option<bool>,
        tol: &ToleranceConfig,
    ) -> Result<BlaschkeProduct> {
        let mut avoid = Vec::new();
        let mut zeros = RootMultiset::new();
        let mut deg = deg;
        let force = match origin {
            Some(true) => true,
            Some(false) => false,
            None => deg > 0 && self.chance(0.25),
        };
        if force && deg > 0 {
            zeros.insert(ZERO, 1, tol);
            avoid.push(ZERO);
            deg -= 1;
        } else {
            avoid.push(ZERO);
        }
        for (a, m) in self.disc_zeros(deg, &mut avoid) {
            zeros.insert(a, m, tol);
        }
        BlaschkeProduct::new(zeros, self.unimodular(), tol)
    }

    /// Rational function with numerator and denominator degrees at most
    /// `max_deg`, roots in the outer annulus and gain of modulus in `[0.5, 2]`.
    pub fn outer(&mut self, max_deg: usize, tol: &ToleranceConfig) -> RatFun {
        let mut avoid = Vec::new();
        let mut zeros = RootMultiset::new();
        let mut poles = RootMultiset::new();
        for _ in 0..self.int(0, max_deg) {
            zeros.insert(self.point(OUTER_MIN, OUTER_MAX, &mut avoid), 1, tol);
        }
        for _ in 0..self.int(0, max_deg) {
            poles.insert(self.point(OUTER_MIN, OUTER_MAX, &mut avoid), 1, tol);
        }
        let mut gain = Complex64::from_polar(self.uniform(0.5, 2.0), self.uniform(0.0, TAU));
        // scale so that |value at 0| is in [0.5, 2]
        for &(r, m) in zeros.iter() {
            gain /= r.norm().powi(m as i32);
        }
        for &(p, m) in poles.iter() {
            gain *= p.norm().powi(m as i32);
        }
        RatFun::from_factors(gain, zeros, poles, tol)
    }

    /// `B O` with `B` of degree at most `max_inner` and `O` from [`Self::outer`].
    pub fn h2(&mut self, max_inner: usize, tol: &ToleranceConfig) -> Result<H2Rational> {
        let deg = self.int(0, max_inner);
        let b = self.blaschke(deg, None, tol)?;
        let o = self.outer(3, tol);
        H2Rational::new(b.to_ratfun(tol).mul(&o, tol), tol)
    }

    /// Unit-free function with zeros and poles inside the disc and equal
    /// degrees, so that its reflection is invertible in `H^inf`.
    pub fn anti_unit(&mut self, max_deg: usize, tol: &ToleranceConfig) -> RatFun {
        let mut avoid = vec![ZERO];
        let d = self.int(0, max_deg);
        let mut zeros = RootMultiset::new();
        let mut poles = RootMultiset::new();
        for _ in 0..d {
            zeros.insert(self.point(INNER_MIN, INNER_MAX, &mut avoid), 1, tol);
            poles.insert(self.point(INNER_MIN, INNER_MAX, &mut avoid), 1, tol);
        }
        let gain = Complex64::from_polar(self.uniform(0.5, 2.0), self.uniform(0.0, TAU));
        RatFun::from_factors(gain, zeros, poles, tol)
    }

    /// Symbol `conj(anti) ana z^power` with total root count at most 4,
    /// `|power| <= 3` and every root inside modulus 0.85 or outside 1.2.
    pub fn symbol(&mut self, tol: &ToleranceConfig) -> Result<ToeplitzSymbol> {
        let total = self.int(0, 4);
        let mut avoid = vec![ZERO];
        let mut parts = [
            (RootMultiset::new(), RootMultiset::new()),
            (RootMultiset::new(), RootMultiset::new()),
        ];
        for _ in 0..total {
            let which = self.int(0, 1);
            let as_zero = self.chance(0.5);
            let inside = self.chance(0.5);
            let r = if inside {
                self.point(INNER_MIN, INNER_MAX, &mut avoid)
            } else {
                self.point(OUTER_MIN, OUTER_MAX, &mut avoid)
            };
            // keep the reflected position of anti roots separated as well
            if which == 0 {
                avoid.push(ONE / r.conj());
            }
            let part = &mut parts[which];
            if as_zero {
                part.0.insert(r, 1, tol);
            } else {
                part.1.insert(r, 1, tol);
            }
        }
        let [(az, ap), (bz, bp)] = parts;
        let anti = RatFun::from_factors(ONE, az, ap, tol);
        let ana = RatFun::from_factors(self.unimodular(), bz, bp, tol);
        let power = self.int(0, 6) as i32 - 3;
        ToeplitzSymbol::new(anti, ana, power, tol)
    }

    /// [`Self::symbol`] redrawn until its winding number is at most `max_winding`.
    pub fn symbol_with_winding(
        &mut self,
        max_winding: i64,
        tol: &ToleranceConfig,
    ) -> Result<ToeplitzSymbol> {
        loop {
            let s = self.symbol(tol)?;
            if s.winding(tol)? <= max_winding {
                return Ok(s);
            }
        }
    }
}

/// Smallest distance between distinct zeros of `b`.
pub fn zero_gap(b: &BlaschkeProduct) -> f64 {
    let zs = b.zeros().as_slice();
    let mut gap = f64::INFINITY;
    for (i, (a, _)) in zs.iter().enumerate() {
        for (c, _) in &zs[i + 1..] {
            gap = gap.min((a - c).norm());
        }
    }
    gap
}

/// Smallest distance between distinct roots (zeros and poles together) of `f`.
pub fn root_gap(f: &RatFun) -> f64 {
    let rs: Vec<Complex64> = f
        .zeros()
        .iter()
        .chain(f.poles().iter())
        .map(|&(r, _)| r)
        .collect();
    let mut gap = f64::INFINITY;
    for (i, a) in rs.iter().enumerate() {
        for c in &rs[i + 1..] {
            gap = gap.min((a - c).norm());
        }
    }
    gap
}
