//! Smallest model spaces containing weighted composition images
//! C_psi(u K_theta) and u C_psi(K_theta), and the reduction at u = 1.

use num_complex::Complex64;
use tklab::blaschke::BlaschkeProduct;
use tklab::kernels::{
    minimal_model_containing_composition, minimal_model_weighted_post, minimal_model_weighted_pre,
};
use tklab::ToleranceConfig;

fn main() -> tklab::Result<()> {
    let tol = ToleranceConfig::default();
    let theta = BlaschkeProduct::from_zeros(
        &[
            (Complex64::new(0.5, 0.2), 1),
            (Complex64::new(-0.3, 0.0), 1),
        ],
        &tol,
    )?;
    let psi = BlaschkeProduct::from_zeros(
        &[
            (Complex64::new(0.1, -0.4), 1),
            (Complex64::new(0.6, 0.0), 1),
        ],
        &tol,
    )?;
    let u = BlaschkeProduct::from_zeros(
        &[(Complex64::new(0.0, 0.0), 1), (Complex64::new(0.2, 0.7), 1)],
        &tol,
    )?;

    println!("theta = {theta}");
    println!("psi   = {psi}");
    println!("u     = {u}");
    println!(
        "C_psi(u K_theta)  in K_v, v = {}",
        minimal_model_weighted_pre(&u, &theta, &psi, &tol)?
    );
    println!(
        "u C_psi(K_theta)  in K_v, v = {}",
        minimal_model_weighted_post(&u, &theta, &psi, &tol)?
    );

    let one = BlaschkeProduct::one();
    let plain = minimal_model_containing_composition(&theta, &psi, &tol)?;
    let reduced = minimal_model_weighted_pre(&one, &theta, &psi, &tol)?;
    println!(
        "u = 1 reproduces the unweighted answer: {}",
        reduced.zeros().as_slice() == plain.zeros().as_slice()
    );
    Ok(())
}
