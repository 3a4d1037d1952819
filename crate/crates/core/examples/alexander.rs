//! Alexander polynomials from Seifert matrices and from braid closures.

use lambda_sw::knots::{parse_braid, parse_seifert, KnotPresentation};

fn main() -> lambda_sw::Result<()> {
    let trefoil = KnotPresentation::Seifert(parse_seifert("[[-1,1],[0,-1]]")?);
    let fig8 = KnotPresentation::Braid(parse_braid("1 -2 1 -2", 3)?);
    let five_two = KnotPresentation::Seifert(parse_seifert("[[-1,1],[0,-2]]")?);

    for (name, k) in [("3_1", trefoil), ("4_1", fig8), ("5_2", five_two)] {
        let a = k.alexander()?;
        println!(
            "{name:>4}  {}  Δ''(1) = {}",
            serde_json::to_string(&a)?,
            a.poly().second_derivative_at_one()
        );
    }

    // a two-component closure is rejected
    if let Err(e) = parse_braid("1 1", 2) {
        println!("hopf link: {e}");
    }
    Ok(())
}
