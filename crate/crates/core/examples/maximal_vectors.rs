//! Maximal vectors: the backward shift of an inner function, its transports
//! under composition, and the Frostman-shift family.

use num_complex::Complex64;
use tklab::blaschke::BlaschkeProduct;
use tklab::kernels::{
    backward_shift, crofoot_maximal_vector, is_maximal_vector, transport_maximal_vector,
    TransportVariant,
};
use tklab::ratfun::RatFun;
use tklab::symbols::{EquivalenceWitness, ToeplitzSymbol};
use tklab::ToleranceConfig;

fn main() -> tklab::Result<()> {
    let tol = ToleranceConfig::default();
    let theta = BlaschkeProduct::from_zeros(
        &[(Complex64::new(0.0, 0.0), 1), (Complex64::new(0.4, 0.3), 1)],
        &tol,
    )?;
    let g = ToeplitzSymbol::conj_inner(&theta, &tol)?;
    let k = backward_shift(&theta.to_ratfun(&tol), &tol)?;
    let cert = is_maximal_vector(&k, &g, &tol)?.expect("S* theta is maximal");
    println!("k = S* theta = {k}");
    println!("  outer witness {}", cert.outer_witness.value());
    println!("  defect {:.2e}", cert.defect(256));

    let psi = BlaschkeProduct::z_power(2);
    let w = EquivalenceWitness {
        h_plus: RatFun::one(),
        h_minus: RatFun::one(),
    };
    for variant in [
        TransportVariant::TimesPsi,
        TransportVariant::Plain,
        TransportVariant::PsiOverZ,
    ] {
        let (moved, target) = transport_maximal_vector(&k, &g, &psi, &w, variant, &tol)?;
        let ok = is_maximal_vector(&moved, &target, &tol)?.is_some();
        println!("{variant:?}: maximal for {target}: {ok}");
    }

    for a in [Complex64::new(0.2, 0.0), Complex64::new(-0.1, 0.6)] {
        let m = crofoot_maximal_vector(&theta, a, &tol)?;
        let ok = is_maximal_vector(&m, &g, &tol)?.is_some();
        println!("Frostman shift a = {a}: maximal {ok}");
    }
    Ok(())
}
