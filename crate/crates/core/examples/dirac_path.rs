//! Clifford symbol of the connection difference along the path of metrics.

use lambda_sw::clifford::{dirac_path_report, Convention, Metric, TwoFormSign, FROZEN};

fn main() -> lambda_sw::Result<()> {
    let flipped = Convention {
        metric: Metric::Negative,
        two_form_sign: TwoFormSign::Minus,
    };
    for conv in [FROZEN, flipped] {
        let rep = dirac_path_report(conv)?;
        println!("{conv:?}");
        println!("  σ(ω - ω̃) = {:?}", rep.sigma_omega);
        println!("  target    = {:?}", rep.target);
        println!(
            "  identity {}  pin-down {}  t=0 {}",
            rep.holds, rep.pin_down_holds, rep.t_zero_holds
        );
        println!("  via the 1-form display: {}", rep.display_route_holds);
    }
    Ok(())
}
