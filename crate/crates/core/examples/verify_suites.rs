//! Run each named verification suite and print a one-line verdict.

use lambda_sw::verify;

fn main() -> lambda_sw::Result<()> {
    let outcomes = [
        verify::sw_identity(&verify::sw_corpus())?,
        verify::correction_r_independence(),
        verify::transgression(7, 10, &[2, 3, 4])?,
        verify::dirac_path()?,
        verify::eq1_torsion()?,
        verify::fiber_metric(),
        verify::spectral(30, None)?,
    ];
    for o in &outcomes {
        println!("{:<28} {}", o.suite, if o.passed { "pass" } else { "FAIL" });
    }
    Ok(())
}
