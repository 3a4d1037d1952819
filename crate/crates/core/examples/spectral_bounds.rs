//! Certified operator-norm bounds for the neck transfer matrix.

use lambda_sw::interval::Ctx;
use lambda_sw::poly::Poly;
use lambda_sw::rational::{int, ratio};
use lambda_sw::spectral::{adiabatic_threshold_report, b_matrix, norm_bounds_check, SpectralSample};

fn main() -> lambda_sw::Result<()> {
    let mut ctx = Ctx::with_digits(40)?;
    for r in [ratio(1, 10), int(1), int(5), int(50)] {
        let s = SpectralSample::new(int(1), int(1), r.clone())?;
        let b = b_matrix(&mut ctx, &s)?;
        let rep = norm_bounds_check(&mut ctx, &s, &ratio(1, 2))?;
        println!(
            "R = {:>4}  diag {}  offdiag {}  chains hold: {}",
            lambda_sw::rational::format(&r),
            ctx.render(&b.diag, 12),
            ctx.render(&b.offdiag, 12),
            rep.all_hold
        );
    }
    let adiabatic = adiabatic_threshold_report(&mut ctx, &ratio(1, 2), &Poly::var(0), &[ratio(1, 2)])?;
    println!("adiabatic threshold at ε = 1/2: {}", adiabatic.holds);
    Ok(())
}
