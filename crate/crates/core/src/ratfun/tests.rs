use super::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

#[test]
fn normalization_cancels_common_roots() {
    let t = tol();
    // (z^2 - 1) / (z - 1) = z + 1
    let f = RatFun::new(
        Poly::from_real(&[-1.0, 0.0, 1.0]),
        Poly::from_real(&[-1.0, 1.0]),
        &t,
    )
    .unwrap();
    assert_eq!(f.den().degree(), 0);
    assert!((f.num().coeff(0) - c(1.0, 0.0)).norm() < 1e-12);
    assert!((f.num().coeff(1) - c(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn denominator_is_monic() {
    let t = tol();
    let f = RatFun::new(Poly::from_real(&[1.0]), Poly::from_real(&[2.0, 4.0]), &t).unwrap();
    assert!((f.den().leading() - c(1.0, 0.0)).norm() < 1e-15);
    assert!((f.value(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-14);
}

#[test]
fn eval_at_pole_fails() {
    let t = tol();
    let f = RatFun::new(Poly::one(), Poly::from_real(&[-0.5, 1.0]), &t).unwrap();
    assert!(matches!(
        f.eval(c(0.5, 0.0), &t),
        Err(Error::PoleEvaluation { .. })
    ));
}

#[test]
fn conj_reflect_of_affine() {
    let t = tol();
    // 1 - (i/2) z reflects to (2z + i) / (2z)
    let f = RatFun::from_poly(Poly::new(vec![c(1.0, 0.0), c(0.0, -0.5)]), &t).unwrap();
    let g = f.conj_reflect(&t);
    let expected = RatFun::new(
        Poly::new(vec![c(0.0, 1.0), c(2.0, 0.0)]),
        Poly::new(vec![c(0.0, 0.0), c(2.0, 0.0)]),
        &t,
    )
    .unwrap();
    assert!(g.circle_distance(&expected, 64) < 1e-13);
    for z in circle_points(17) {
        assert!((g.value(z) - f.value(z).conj()).norm() < 1e-13);
    }
}

#[test]
fn conj_reflect_is_involution() {
    let t = tol();
    let f = RatFun::new(
        Poly::new(vec![c(0.3, 0.1), c(0.0, 0.0), c(1.0, -2.0)]),
        Poly::new(vec![c(0.0, 0.0), c(-2.0, 0.5), c(1.0, 0.0)]),
        &t,
    )
    .unwrap();
    let back = f.conj_reflect(&t).conj_reflect(&t);
    assert!(back.circle_distance(&f, 64) < 1e-12);
}

#[test]
fn compose_matches_pointwise() {
    let t = tol();
    let f = RatFun::new(
        Poly::from_real(&[1.0, -3.0, 1.0]),
        Poly::from_real(&[2.0, 0.0, 0.0, 1.0]),
        &t,
    )
    .unwrap();
    let g = RatFun::new(
        Poly::new(vec![c(0.2, 0.1), c(1.0, 0.0)]),
        Poly::new(vec![c(1.0, 0.0), c(-0.3, 0.2)]),
        &t,
    )
    .unwrap();
    let h = f.compose(&g, &t).unwrap();
    for z in [c(0.1, 0.2), c(-0.4, 0.3), c(0.7, -0.1)] {
        let direct = f.value(g.value(z));
        assert!((h.value(z) - direct).norm() < 1e-10 * direct.norm().max(1.0));
    }
}

#[test]
fn compose_with_constant_at_zero_vanishes() {
    let t = tol();
    let f = RatFun::z();
    let g = RatFun::zero();
    assert!(f.compose(&g, &t).unwrap().is_zero());
}

#[test]
fn add_and_sub_cancel() {
    let t = tol();
    let f = RatFun::new(Poly::from_real(&[1.0]), Poly::from_real(&[-0.5, 1.0]), &t).unwrap();
    let g = RatFun::new(
        Poly::from_real(&[2.0, 1.0]),
        Poly::from_real(&[3.0, 1.0]),
        &t,
    )
    .unwrap();
    let s = f.add(&g, &t).unwrap();
    let back = s.sub(&g, &t).unwrap();
    assert!(back.circle_distance(&f, 64) < 1e-12);
    assert!(f.sub(&f, &t).unwrap().is_zero());
}

#[test]
fn negative_z_power_is_pole_at_origin() {
    let t = tol();
    let f = RatFun::from_poly(Poly::from_real(&[0.0, 1.0, 1.0]), &t).unwrap();
    let g = f.mul_z_power(-1, &t);
    assert_eq!(g.den().degree(), 0);
    assert_eq!(g.origin_order(&t), 0);
    let h = f.mul_z_power(-3, &t);
    assert_eq!(h.origin_order(&t), -2);
}
