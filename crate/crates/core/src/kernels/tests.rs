use num_complex::Complex64;

use super::*;
use crate::blaschke::{BlaschkeProduct, H2Rational};
use crate::error::Error;
use crate::oracle::OracleConfig;
use crate::ratfun::{circle_points, Poly, RatFun};
use crate::symbols::{symbols_equivalent, ToeplitzSymbol};
use crate::tolerance::ToleranceConfig;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn poly(cs: &[f64], t: &ToleranceConfig) -> RatFun {
    RatFun::from_poly(Poly::from_real(cs), t).unwrap()
}

fn b_half(t: &ToleranceConfig) -> BlaschkeProduct {
    BlaschkeProduct::factor(c(-0.5, 0.0), t).unwrap()
}

fn span(fs: Vec<RatFun>, t: &ToleranceConfig) -> Subspace {
    Subspace::new(fs, t).unwrap()
}

fn conj_z(t: &ToleranceConfig) -> ToeplitzSymbol {
    ToeplitzSymbol::conj_of(RatFun::z(), t).unwrap()
}

fn theta3(t: &ToleranceConfig) -> BlaschkeProduct {
    BlaschkeProduct::from_zeros(&[(c(0.3, 0.2), 1), (c(-0.5, 0.1), 1), (c(0.1, -0.6), 1)], t)
        .unwrap()
}

fn shift_inner(theta: &BlaschkeProduct, t: &ToleranceConfig) -> RatFun {
    backward_shift(&theta.to_ratfun(t), t).unwrap()
}

#[test]
fn kernel_of_conj_z_is_constants() {
    let t = tol();
    let k = toeplitz_kernel(&conj_z(&t), &t).unwrap();
    assert_eq!(k.dim(), 1);
    assert!(k.same_as(&span(vec![RatFun::one()], &t), &t));
    assert!(annihilates(&conj_z(&t), &k.basis()[0], &t));
    assert!(!annihilates(&conj_z(&t), &RatFun::z(), &t));
}

#[test]
fn final_example_kernel() {
    let t = tol();
    let b = b_half(&t);
    let s = ToeplitzSymbol::new(RatFun::z_power(3), b.mul(&b, &t).to_ratfun(&t), 0, &t).unwrap();
    let k = toeplitz_kernel(&s, &t).unwrap();
    assert_eq!(k.dim(), 1);
    assert!(k.same_as(&span(vec![poly(&[4.0, 4.0, 1.0], &t)], &t), &t));
}

#[test]
fn model_spaces() {
    let t = tol();
    let kz2 = model_space(&BlaschkeProduct::z_power(2), &t).unwrap();
    assert!(kz2.same_as(&span(vec![RatFun::one(), RatFun::z()], &t), &t));
    let b = b_half(&t);
    let b2 = b.mul(&b, &t);
    let kb2 = model_space(&b2, &t).unwrap();
    let kernel = toeplitz_kernel(&ToeplitzSymbol::conj_inner(&b2, &t).unwrap(), &t).unwrap();
    assert!(kb2.same_as(&kernel, &t));
    let th = theta3(&t);
    let k3 = toeplitz_kernel(&ToeplitzSymbol::conj_inner(&th, &t).unwrap(), &t).unwrap();
    assert_eq!(k3.dim(), 3);
    assert!(k3.same_as(&model_space(&th, &t).unwrap(), &t));
}

#[test]
fn membership_in_final_example_sum() {
    let t = tol();
    let m = span(vec![RatFun::one(), poly(&[4.0, 4.0, 1.0], &t)], &t);
    assert!(membership(&poly(&[0.0, 4.0, 1.0], &t), &m, &t));
    assert!(!membership(&poly(&[4.0, 1.0], &t), &m, &t));
    assert!(membership(&RatFun::zero(), &m, &t));
    assert!(membership(&RatFun::zero(), &Subspace::zero(), &t));
    // poles outside the common denominator rule membership out
    let f = RatFun::new(Poly::one(), Poly::from_real(&[3.0, 1.0]), &t).unwrap();
    assert!(!membership(&f, &m, &t));
}

#[test]
fn relations() {
    let t = tol();
    let kz = model_space(&BlaschkeProduct::z_power(1), &t).unwrap();
    let kz2 = model_space(&BlaschkeProduct::z_power(2), &t).unwrap();
    let r = subspace_relations(&kz, &kz2, &t);
    assert!(r.included && !r.equal);
    assert_eq!(r.intersection_dim, 1);
    assert!(r.sum.same_as(&kz2, &t));
    let u = span(vec![poly(&[4.0, 4.0, 1.0], &t)], &t);
    let r = subspace_relations(&kz, &u, &t);
    assert!(!r.included);
    assert_eq!(r.intersection_dim, 0);
    assert_eq!(r.sum.dim(), 2);
}

#[test]
fn dependent_basis_is_rank_loss() {
    let t = tol();
    let err = Subspace::new(vec![RatFun::z(), RatFun::z().scale(c(2.0, 0.0))], &t).unwrap_err();
    assert_eq!(
        err,
        Error::RankLoss {
            expected: 2,
            found: 1
        }
    );
    let inside = RatFun::new(Poly::one(), Poly::from_real(&[-0.5, 1.0]), &t).unwrap();
    assert!(matches!(
        Subspace::new(vec![inside], &t),
        Err(Error::NotInH2 { .. })
    ));
}

#[test]
fn backward_shift_examples() {
    let t = tol();
    let f = backward_shift(&poly(&[0.0, 4.0, 1.0], &t), &t).unwrap();
    assert!(f.circle_distance(&poly(&[4.0, 1.0], &t), 64) < 1e-14);
    assert!(backward_shift(&RatFun::one(), &t).unwrap().is_zero());
    // S* theta = theta conj(z p) with p = 1 - conj(theta(0)) theta
    let th = theta3(&t);
    let s = shift_inner(&th, &t);
    let t0 = th.value_at_zero();
    for z in circle_points(64) {
        let p = c(1.0, 0.0) - t0.conj() * th.eval(z);
        let rhs = th.eval(z) * (z * p).conj();
        assert!((s.value(z) - rhs).norm() < 1e-12);
    }
}

#[test]
fn near_invariance() {
    let t = tol();
    let kz2 = model_space(&BlaschkeProduct::z_power(2), &t).unwrap();
    assert!(is_nearly_sstar_invariant(&kz2, &t).unwrap().invariant);
    let m = span(vec![RatFun::one(), poly(&[4.0, 4.0, 1.0], &t)], &t);
    let r = is_nearly_sstar_invariant(&m, &t).unwrap();
    assert!(!r.invariant);
    let w = r.witness.unwrap();
    assert!(w.circle_distance(&poly(&[0.0, 4.0, 1.0], &t), 64) < 1e-12);

    let th = BlaschkeProduct::from_zeros(&[(c(0.3, 0.0), 1), (c(-0.2, 0.4), 1)], &t).unwrap();
    let image = apply_composition(
        &model_space(&th, &t).unwrap(),
        &BlaschkeProduct::z_power(2),
        &t,
    )
    .unwrap();
    let r = is_nearly_sstar_invariant(&image, &t).unwrap();
    assert!(!r.invariant);
    let w = r.witness.unwrap();
    assert!(w.value(c(0.0, 0.0)).norm() < 1e-12);
    assert!(!membership(&backward_shift(&w, &t).unwrap(), &image, &t));
}

#[test]
fn composition_and_multiplication() {
    let t = tol();
    let kz = model_space(&BlaschkeProduct::z_power(1), &t).unwrap();
    let psi = theta3(&t);
    assert!(apply_composition(&kz, &psi, &t).unwrap().same_as(&kz, &t));
    let kz2 = model_space(&BlaschkeProduct::z_power(2), &t).unwrap();
    let img = apply_composition(&kz2, &BlaschkeProduct::z_power(2), &t).unwrap();
    assert!(img.same_as(&span(vec![RatFun::one(), RatFun::z_power(2)], &t), &t));

    let u = poly(&[4.0, 4.0, 1.0], &t);
    assert!(multiply_subspace(&u, &kz, &t)
        .unwrap()
        .same_as(&span(vec![u.clone()], &t), &t));
    let same = multiply_subspace(&RatFun::one(), &kz2, &t).unwrap();
    assert!(same.same_as(&kz2, &t));
}

#[test]
fn automorphic_composition_matches_minimal_kernel() {
    let t = tol();
    let th = theta3(&t);
    let psi = BlaschkeProduct::factor(c(0.4, -0.3), &t).unwrap();
    let f = ToeplitzSymbol::conj_inner(&th, &t).unwrap();
    let g = minimal_kernel_of_composed(&f, &psi, &t).unwrap();
    let img = apply_composition(&model_space(&th, &t).unwrap(), &psi, &t).unwrap();
    assert!(img.same_as(&toeplitz_kernel(&g, &t).unwrap(), &t));

    // the kernel is (1 - conj(a) z) K_{theta o psi}
    let w = automorphism_weight(&psi, &t).unwrap();
    let weighted = multiply_subspace(
        &w,
        &model_space(&th.compose(&psi, &t).unwrap(), &t).unwrap(),
        &t,
    )
    .unwrap();
    assert!(weighted.same_as(&img, &t));
    let inverse = multiply_subspace(
        &w.inv(&t).unwrap(),
        &model_space(&th.compose(&psi, &t).unwrap(), &t).unwrap(),
        &t,
    )
    .unwrap();
    assert!(!inverse.same_as(&img, &t));
}

#[test]
fn higher_degree_composition_is_strict() {
    let t = tol();
    let th = BlaschkeProduct::from_zeros(&[(c(0.3, 0.0), 1), (c(-0.2, 0.4), 1)], &t).unwrap();
    let psi = BlaschkeProduct::z_power(2);
    let f = ToeplitzSymbol::conj_inner(&th, &t).unwrap();
    let g = minimal_kernel_of_composed(&f, &psi, &t).unwrap();
    let img = apply_composition(&model_space(&th, &t).unwrap(), &psi, &t).unwrap();
    let kg = toeplitz_kernel(&g, &t).unwrap();
    let r = subspace_relations(&img, &kg, &t);
    assert!(r.included && !r.equal);
    assert!(matches!(
        minimal_kernel_of_composed(&ToeplitzSymbol::monomial(1), &psi, &t),
        Err(Error::TrivialKernel { winding: 1 })
    ));
}

#[test]
fn minimal_kernel_of_vectors() {
    let t = tol();
    let (_, k) =
        minimal_kernel_of_vector(&H2Rational::new(RatFun::one(), &t).unwrap(), &t).unwrap();
    assert!(k.same_as(&model_space(&BlaschkeProduct::z_power(1), &t).unwrap(), &t));
    let th = theta3(&t);
    let s = shift_inner(&th, &t);
    let (_, k) = minimal_kernel_of_vector(&H2Rational::new(s.clone(), &t).unwrap(), &t).unwrap();
    assert!(k.same_as(&model_space(&th, &t).unwrap(), &t));
    assert!(membership(&s, &k, &t));
    let u = poly(&[4.0, 4.0, 1.0], &t);
    let (_, k) = minimal_kernel_of_vector(&H2Rational::new(u.clone(), &t).unwrap(), &t).unwrap();
    assert_eq!(k.dim(), 1);
    assert!(membership(&u, &k, &t));
}

#[test]
fn maximal_vectors() {
    let t = tol();
    let th = theta3(&t);
    let sigma = ToeplitzSymbol::conj_inner(&th, &t).unwrap();
    let cert = is_maximal_vector(&shift_inner(&th, &t), &sigma, &t)
        .unwrap()
        .unwrap();
    assert!(cert.defect(256) < 1e-9);
    let expected = th
        .to_ratfun(&t)
        .scale(-th.value_at_zero().conj())
        .add_constant(c(1.0, 0.0), &t)
        .unwrap();
    assert!(cert.outer_witness.value().circle_distance(&expected, 128) < 1e-9);

    let cz2 = ToeplitzSymbol::conj_of(RatFun::z_power(2), &t).unwrap();
    assert!(is_maximal_vector(&RatFun::one(), &cz2, &t)
        .unwrap()
        .is_none());
    assert_eq!(
        is_maximal_vector(&RatFun::z_power(2), &cz2, &t).unwrap_err(),
        Error::NotInKernel
    );

    let psi = BlaschkeProduct::from_zeros(&[(c(0.2, 0.1), 1), (c(-0.3, 0.0), 1)], &t).unwrap();
    let g = minimal_kernel_of_composed(&sigma, &psi, &t).unwrap();
    let k = shift_inner(&th, &t)
        .compose(&psi.to_ratfun(&t), &t)
        .unwrap();
    assert!(is_maximal_vector(&k, &g, &t).unwrap().is_some());
}

#[test]
fn transports_are_maximal() {
    let t = tol();
    let th = theta3(&t);
    let g = ToeplitzSymbol::conj_inner(&th, &t).unwrap();
    let k = shift_inner(&th, &t);
    let trivial = symbols_equivalent(&g, &g, &t).unwrap().unwrap();
    let psi = BlaschkeProduct::from_zeros(&[(c(0.0, 0.0), 1), (c(0.4, 0.2), 1)], &t).unwrap();
    for variant in [
        TransportVariant::TimesPsi,
        TransportVariant::Plain,
        TransportVariant::PsiOverZ,
    ] {
        let (v, s) = transport_maximal_vector(&k, &g, &psi, &trivial, variant, &t).unwrap();
        let cert = is_maximal_vector(&v, &s, &t).unwrap();
        assert!(cert.is_some(), "{variant:?}");
        assert!(cert.unwrap().defect(256) < 1e-9);
    }
    // times-psi transport lands in K_{z (theta o psi)}
    let (v, _) =
        transport_maximal_vector(&k, &g, &psi, &trivial, TransportVariant::TimesPsi, &t).unwrap();
    let zt = BlaschkeProduct::z_power(1).mul(&th.compose(&psi, &t).unwrap(), &t);
    let (_, kmin) = minimal_kernel_of_vector(&H2Rational::new(v, &t).unwrap(), &t).unwrap();
    assert!(kmin.same_as(&model_space(&zt, &t).unwrap(), &t));

    let no_origin = BlaschkeProduct::factor(c(0.4, 0.2), &t).unwrap();
    assert!(matches!(
        transport_maximal_vector(&k, &g, &no_origin, &trivial, TransportVariant::PsiOverZ, &t),
        Err(Error::HypothesisViolated(_))
    ));
}

#[test]
fn crofoot_vectors() {
    let t = tol();
    let th = BlaschkeProduct::from_zeros(&[(c(0.0, 0.0), 1), (c(0.3, -0.4), 1)], &t).unwrap();
    let sigma = ToeplitzSymbol::conj_inner(&th, &t).unwrap();
    let v0 = crofoot_maximal_vector(&th, c(0.0, 0.0), &t).unwrap();
    assert!(v0.circle_distance(&shift_inner(&th, &t), 64) < 1e-12);
    let z2 = BlaschkeProduct::z_power(2);
    let v = crofoot_maximal_vector(&z2, c(1.0 / 3.0, 0.0), &t).unwrap();
    let cz2 = ToeplitzSymbol::conj_inner(&z2, &t).unwrap();
    assert!(is_maximal_vector(&v, &cz2, &t).unwrap().is_some());
    let v = crofoot_maximal_vector(&th, c(0.2, 0.5), &t).unwrap();
    assert!(is_maximal_vector(&v, &sigma, &t).unwrap().is_some());
    assert!(matches!(
        crofoot_maximal_vector(&b_half(&t), c(0.1, 0.0), &t),
        Err(Error::HypothesisViolated(_))
    ));
}

#[test]
fn minimal_model_spaces() {
    let t = tol();
    let b = b_half(&t);
    let z2 = BlaschkeProduct::z_power(2);
    let v = minimal_model_containing_composition(&b, &z2, &t).unwrap();
    assert!(v.same_zeros(&b.compose(&z2, &t).unwrap(), &t));

    let psi = BlaschkeProduct::factor(c(0.3, 0.3), &t).unwrap();
    let v = minimal_model_containing_composition(&b, &psi, &t).unwrap();
    assert!(v.same_zeros(
        &BlaschkeProduct::z_power(1).mul(&b.compose(&psi, &t).unwrap(), &t),
        &t
    ));

    let z = BlaschkeProduct::z_power(1);
    let v = minimal_model_containing_composition(&z, &theta3(&t), &t).unwrap();
    assert!(v.same_zeros(&z, &t));

    for (theta, psi) in [
        (b.clone(), z2.clone()),
        (b.clone(), psi.clone()),
        (
            theta3(&t),
            BlaschkeProduct::from_zeros(&[(c(0.0, 0.0), 1), (c(0.5, 0.0), 1)], &t).unwrap(),
        ),
        (
            BlaschkeProduct::from_zeros(&[(c(0.0, 0.0), 1), (c(0.2, 0.3), 1)], &t).unwrap(),
            psi.clone(),
        ),
    ] {
        let v = minimal_model_containing_composition(&theta, &psi, &t).unwrap();
        let image = apply_composition(&model_space(&theta, &t).unwrap(), &psi, &t).unwrap();
        let report = certify_minimal_model(&image, &v, &t).unwrap();
        assert!(report.minimal(), "{theta} o {psi}: {report:?}");
        assert_eq!(report.divisors_checked, v.zeros().len());
    }
}

#[test]
fn weighted_model_spaces() {
    let t = tol();
    let z = BlaschkeProduct::z_power(1);
    let z2 = BlaschkeProduct::z_power(2);
    let eta = minimal_model_weighted_pre(&z, &z, &z2, &t).unwrap();
    assert!(eta.same_zeros(&BlaschkeProduct::z_power(3), &t));
    let image = apply_composition(
        &multiply_subspace(&RatFun::z(), &model_space(&z, &t).unwrap(), &t).unwrap(),
        &z2,
        &t,
    )
    .unwrap();
    assert!(certify_minimal_model(&image, &eta, &t).unwrap().minimal());

    let b = b_half(&t);
    let eta = minimal_model_weighted_post(&b, &z, &z2, &t).unwrap();
    assert!(eta.same_zeros(&z.mul(&b, &t), &t));
    let image = multiply_subspace(
        &b.to_ratfun(&t),
        &apply_composition(&model_space(&z, &t).unwrap(), &z2, &t).unwrap(),
        &t,
    )
    .unwrap();
    assert!(certify_minimal_model(&image, &eta, &t).unwrap().minimal());

    // u = 1 reproduces the unweighted result exactly
    let th = theta3(&t);
    let psi = BlaschkeProduct::factor(c(0.1, 0.6), &t).unwrap();
    let plain = minimal_model_containing_composition(&th, &psi, &t).unwrap();
    let pre = minimal_model_weighted_pre(&BlaschkeProduct::one(), &th, &psi, &t).unwrap();
    let post = minimal_model_weighted_post(&BlaschkeProduct::one(), &th, &psi, &t).unwrap();
    assert_eq!(plain.zeros().as_slice(), pre.zeros().as_slice());
    assert_eq!(plain.zeros().as_slice(), post.zeros().as_slice());
}

#[test]
fn multiplied_kernels() {
    let t = tol();
    let u = H2Rational::new(poly(&[4.0, 4.0, 1.0], &t), &t).unwrap();
    let cz = conj_z(&t);
    let g = minimal_kernel_of_multiplied(&u, &cz, &t).unwrap();
    let kg = toeplitz_kernel(&g, &t).unwrap();
    assert!(kg.same_as(&span(vec![u.value().clone()], &t), &t));

    let exact = multiplied_kernel_exact(&u, &cz, &t).unwrap();
    assert!(toeplitz_kernel(&exact, &t).unwrap().same_as(&kg, &t));

    let zin = H2Rational::new(RatFun::z(), &t).unwrap();
    assert!(matches!(
        multiplied_kernel_exact(&zin, &cz, &t),
        Err(Error::HypothesisViolated(_))
    ));

    let b = H2Rational::new(b_half(&t).to_ratfun(&t), &t).unwrap();
    let g = minimal_kernel_of_multiplied(&b, &cz, &t).unwrap();
    let zb = BlaschkeProduct::z_power(1).mul(&b_half(&t), &t);
    assert!(toeplitz_kernel(&g, &t)
        .unwrap()
        .same_as(&model_space(&zb, &t).unwrap(), &t));
}

#[test]
fn pre_and_post_multiplied_compositions() {
    let t = tol();
    let u = H2Rational::new(poly(&[4.0, 4.0, 1.0], &t), &t).unwrap();
    let psi = BlaschkeProduct::z_power(2);
    let th = BlaschkeProduct::from_zeros(&[(c(0.3, 0.0), 1), (c(-0.2, 0.4), 1)], &t).unwrap();
    let f = ToeplitzSymbol::conj_inner(&th, &t).unwrap();
    let kf = toeplitz_kernel(&f, &t).unwrap();

    let h = minimal_kernel_pre_multiplied_composed(&u, &f, &psi, &t).unwrap();
    let image =
        apply_composition(&multiply_subspace(u.value(), &kf, &t).unwrap(), &psi, &t).unwrap();
    assert!(image.is_subspace_of(&toeplitz_kernel(&h, &t).unwrap(), &t));
    let k = shift_inner(&th, &t);
    let moved = u
        .value()
        .mul(&k, &t)
        .compose(&psi.to_ratfun(&t), &t)
        .unwrap();
    assert!(is_maximal_vector(&moved, &h, &t).unwrap().is_some());

    let g = minimal_kernel_post_multiplied_composed(&u, &f, &psi, &t).unwrap();
    let image =
        multiply_subspace(u.value(), &apply_composition(&kf, &psi, &t).unwrap(), &t).unwrap();
    assert!(image.is_subspace_of(&toeplitz_kernel(&g, &t).unwrap(), &t));
    let moved = u
        .value()
        .mul(&k.compose(&psi.to_ratfun(&t), &t).unwrap(), &t);
    assert!(is_maximal_vector(&moved, &g, &t).unwrap().is_some());
}

#[test]
fn composition_inclusion_routes_agree() {
    let t = tol();
    let cz = conj_z(&t);
    let z2 = BlaschkeProduct::z_power(2);
    let r = composition_maps_into(&cz, &z2, &cz, &t).unwrap();
    assert!(r.holds && r.via_smirnov && r.via_maximal_vector);
    let cz2 = ToeplitzSymbol::conj_of(RatFun::z_power(2), &t).unwrap();
    let r = composition_maps_into(&cz2, &z2, &cz, &t).unwrap();
    assert!(!r.holds && !r.via_smirnov && !r.via_maximal_vector);

    let th = theta3(&t);
    let psi = BlaschkeProduct::from_zeros(&[(c(0.1, 0.1), 1), (c(-0.4, 0.2), 1)], &t).unwrap();
    let v = minimal_model_containing_composition(&th, &psi, &t).unwrap();
    let f = ToeplitzSymbol::conj_inner(&th, &t).unwrap();
    let h = ToeplitzSymbol::conj_inner(&v, &t).unwrap();
    let r = composition_maps_into(&f, &psi, &h, &t).unwrap();
    assert!(r.holds && r.via_smirnov && r.via_maximal_vector);
}

#[test]
fn lcm_family() {
    let t = tol();
    let cfg = OracleConfig::default();
    let z = BlaschkeProduct::z_power(1);
    let r = lcm_minimal_kernel_family(std::slice::from_ref(&z), &z, &cfg, &t).unwrap();
    assert!(r
        .kernel
        .same_as(&model_space(&BlaschkeProduct::z_power(2), &t).unwrap(), &t));
    assert!(r.sum_matches && r.decomposition_checks == vec![true]);

    let b = b_half(&t);
    let r = lcm_minimal_kernel_family(&[z.clone(), b.clone()], &z, &cfg, &t).unwrap();
    assert!(r.theta.same_zeros(&z.mul(&b, &t), &t));
    assert_eq!(r.kernel.dim(), 3);
    assert!(r.sum_matches && r.decomposition_checks.iter().all(|&x| x));

    let th = theta3(&t);
    let psi = BlaschkeProduct::factor(c(0.2, 0.2), &t).unwrap();
    let once = lcm_minimal_kernel_family(std::slice::from_ref(&th), &psi, &cfg, &t).unwrap();
    let twice = lcm_minimal_kernel_family(&[th.clone(), th.clone()], &psi, &cfg, &t).unwrap();
    assert!(once.kernel.same_as(&twice.kernel, &t));
}

#[test]
fn coburn() {
    let t = tol();
    let r = coburn_check(&conj_z(&t), &t).unwrap();
    assert_eq!((r.kernel_dim, r.adjoint_kernel_dim), (1, 0));
    assert!(r.holds());
    let r = coburn_check(&ToeplitzSymbol::monomial(0), &t).unwrap();
    assert_eq!((r.kernel_dim, r.adjoint_kernel_dim), (0, 0));
}

#[test]
fn hitt() {
    let t = tol();
    let cfg = OracleConfig::default();
    let kz2 = model_space(&BlaschkeProduct::z_power(2), &t).unwrap();
    let h = hitt_decomposition(&kz2, &cfg, &t).unwrap();
    assert!(h.u.circle_distance(&RatFun::one(), 64) < 1e-12);
    assert!(h.isometry_defect.unwrap() < 1e-12);

    let u2 = poly(&[4.0, 4.0, 1.0], &t);
    let h = hitt_decomposition(&span(vec![u2.clone()], &t), &cfg, &t).unwrap();
    assert!(h.u.circle_distance(&u2.scale(c(1.0 / 33f64.sqrt(), 0.0)), 64) < 1e-12);
    assert!(h.k[0].is_constant());

    let b = b_half(&t).to_ratfun(&t);
    let h = hitt_decomposition(&span(vec![b.clone()], &t), &cfg, &t).unwrap();
    assert!(h.u.value(c(0.0, 0.0)).re > 0.0);
    assert!(h.u.circle_distance(&b, 64) < 1e-12);

    let m = span(vec![RatFun::one(), u2], &t);
    assert_eq!(
        hitt_decomposition(&m, &cfg, &t).unwrap_err(),
        Error::NotNearlyInvariant
    );
    let zs = span(vec![RatFun::z()], &t);
    assert_eq!(
        hitt_decomposition(&zs, &cfg, &t).unwrap_err(),
        Error::AllVanishAtOrigin
    );
}
