//! The full λ_SW report for a knot, as JSON.

use lambda_sw::knots::{corpus, KnotPresentation};
use lambda_sw::lambda::{lambda_sw, LambdaInput};

fn main() -> lambda_sw::Result<()> {
    let mut input = LambdaInput::new(KnotPresentation::Braid(corpus::figure_eight_braid()));
    input.h_dirac = 2;
    let report = lambda_sw(&input)?;
    report.validate()?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
