//! Near S*-invariance: a sum of two kernels that fails it, and the Hitt
//! decomposition of a subspace that has it.

use num_complex::Complex64;
use tklab::blaschke::BlaschkeProduct;
use tklab::kernels::{
    hitt_decomposition, is_nearly_sstar_invariant, model_space, subspace_relations, toeplitz_kernel,
};
use tklab::oracle::OracleConfig;
use tklab::ratfun::RatFun;
use tklab::symbols::ToeplitzSymbol;
use tklab::ToleranceConfig;

fn main() -> tklab::Result<()> {
    let tol = ToleranceConfig::default();

    // Ker T_{conj(z^3) b^2} = span{(z+2)^2} with b = (z + 1/2)/(1 + z/2), plus K_z
    let b = BlaschkeProduct::factor(Complex64::new(-0.5, 0.0), &tol)?;
    let s = ToeplitzSymbol::new(RatFun::z_power(3), b.mul(&b, &tol).to_ratfun(&tol), 0, &tol)?;
    let m1 = toeplitz_kernel(&s, &tol)?;
    let m2 = model_space(&BlaschkeProduct::z_power(1), &tol)?;
    let rel = subspace_relations(&m1, &m2, &tol);
    let report = is_nearly_sstar_invariant(&rel.sum, &tol)?;
    println!("M1 + M2 = {}", rel.sum);
    println!(
        "  intersection dim {}, nearly invariant {}",
        rel.intersection_dim, report.invariant
    );
    if let Some(w) = &report.witness {
        println!("  witness {w} vanishes at 0 but its backward shift leaves the sum");
    }

    let theta = BlaschkeProduct::from_zeros(
        &[
            (Complex64::new(0.3, 0.1), 1),
            (Complex64::new(-0.5, 0.2), 1),
        ],
        &tol,
    )?;
    let k = model_space(&theta, &tol)?;
    let d = hitt_decomposition(&k, &OracleConfig::default(), &tol)?;
    println!("K_theta = u K with u = {}", d.u);
    println!(
        "  K has dimension {}, isometry defect {:?}",
        d.k.len(),
        d.isometry_defect
    );
    Ok(())
}
