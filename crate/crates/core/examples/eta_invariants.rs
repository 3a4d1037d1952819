//! Eta invariants of circle bundles and the correction term.

use lambda_sw::eta::{correction_term, eta_dirac, eta_signature, BundleGeometry, CorrectionInput};
use lambda_sw::rational::{format, ratio};

fn main() -> lambda_sw::Result<()> {
    for r in [ratio(1, 4), ratio(1, 1), ratio(5, 3)] {
        let g = BundleGeometry::new(1, -2, r.clone(), 1)?;
        let c = correction_term(&CorrectionInput {
            geometry: g.clone(),
            h_dirac: 2,
        })?;
        println!(
            "r = {:>4}  η(D) = {:>9}  η(S) = {:>9}  ω = {}",
            format(&r),
            format(&eta_dirac(&g)?),
            format(&eta_signature(&g)?),
            format(&c.omega)
        );
    }
    Ok(())
}
