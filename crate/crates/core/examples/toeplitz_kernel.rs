//! Kernel of a Toeplitz operator with rational symbol, checked against the
//! winding number and the truncated-section oracle.

use num_complex::Complex64;
use tklab::kernels::toeplitz_kernel;
use tklab::oracle::{principal_angles, taylor_embed, truncated_kernel, OracleConfig};
use tklab::ratfun::{Poly, RatFun};
use tklab::symbols::ToeplitzSymbol;
use tklab::ToleranceConfig;

fn main() -> tklab::Result<()> {
    let tol = ToleranceConfig::default();
    let oracle = OracleConfig::default();

    // conj(z^2 (z - 1/3)) (z - 2) / (1 - z/3)
    let anti = RatFun::from_poly(Poly::from_real(&[0.0, 0.0, -1.0 / 3.0, 1.0]), &tol)?;
    let ana = RatFun::new(
        Poly::from_real(&[-2.0, 1.0]),
        Poly::from_real(&[1.0, -1.0 / 3.0]),
        &tol,
    )?;
    let s = ToeplitzSymbol::new(anti, ana, 0, &tol)?;

    let w = s.winding(&tol)?;
    let k = toeplitz_kernel(&s, &tol)?;
    println!("symbol   {s}");
    println!("winding  {w}");
    println!("kernel   dim {} = max(-winding, 0)", k.dim());
    for (i, f) in k.functions().enumerate() {
        println!("  e{i} = {f}");
    }

    let numeric = truncated_kernel(&s, &oracle)?;
    let angles = principal_angles(&taylor_embed(&k, &oracle)?, &numeric)?;
    let worst = angles.iter().copied().fold(0.0, f64::max);
    println!(
        "oracle   dim {} at N = {}, largest principal angle {worst:.2e}",
        numeric.dim(),
        oracle.truncation
    );

    let f0 = k.basis()[0].value(Complex64::new(0.0, 0.0));
    println!("e0(0)    {f0:.6}");
    Ok(())
}
