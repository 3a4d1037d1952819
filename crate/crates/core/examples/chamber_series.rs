//! Chamber Seiberg-Witten invariants of 0-surgery and the wall-crossing check.

use lambda_sw::knots::{corpus, KnotPresentation};
use lambda_sw::sw3d::{sw_minus, sw_plus, sw_zero, theorem1_check, SpinCIndex};

fn main() -> lambda_sw::Result<()> {
    let alex = KnotPresentation::Seifert(corpus::five_two_seifert()).alexander()?;
    println!("k     SW-   SW+   SW0");
    for k in -4..=4 {
        let s = SpinCIndex(k);
        println!(
            "{k:>2} {:>5} {:>5} {:>5}",
            sw_minus(&alex, s),
            sw_plus(&alex, s),
            sw_zero(&alex, s)
        );
    }
    let t = theorem1_check(&alex);
    println!(
        "sum = {}, Δ''(1) = {}, matches half: {}, matches full: {}",
        t.sw_sum, t.delta_second, t.matches_half, t.matches_full
    );
    Ok(())
}
