//! Smallest model space containing the image of a model space under a
//! composition operator, with the divisor-by-divisor minimality certificate.

use num_complex::Complex64;
use tklab::blaschke::BlaschkeProduct;
use tklab::kernels::{
    apply_composition, certify_minimal_model, minimal_model_containing_composition, model_space,
};
use tklab::ToleranceConfig;

fn main() -> tklab::Result<()> {
    let tol = ToleranceConfig::default();
    let cases = [
        (
            "theta = b_{1/2}, psi = z^2",
            BlaschkeProduct::factor(Complex64::new(0.5, 0.0), &tol)?,
            BlaschkeProduct::z_power(2),
        ),
        (
            "theta = z, psi = b_{1/3} b_{-1/4}",
            BlaschkeProduct::z_power(1),
            BlaschkeProduct::from_zeros(
                &[
                    (Complex64::new(1.0 / 3.0, 0.0), 1),
                    (Complex64::new(-0.25, 0.0), 1),
                ],
                &tol,
            )?,
        ),
        (
            "theta = z b_{i/2}, psi = z b_{0.3}",
            BlaschkeProduct::from_zeros(
                &[(Complex64::new(0.0, 0.0), 1), (Complex64::new(0.0, 0.5), 1)],
                &tol,
            )?,
            BlaschkeProduct::from_zeros(
                &[(Complex64::new(0.0, 0.0), 1), (Complex64::new(0.3, 0.0), 1)],
                &tol,
            )?,
        ),
    ];
    for (label, theta, psi) in cases {
        let v = minimal_model_containing_composition(&theta, &psi, &tol)?;
        let image = apply_composition(&model_space(&theta, &tol)?, &psi, &tol)?;
        let report = certify_minimal_model(&image, &v, &tol)?;
        println!("{label}");
        println!("  v = {v}");
        println!(
            "  contained {}, divisors checked {}, removable zero {:?}",
            report.contained, report.divisors_checked, report.removable_zero
        );
    }
    Ok(())
}
