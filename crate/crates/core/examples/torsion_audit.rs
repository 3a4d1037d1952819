//! Torsion of the displayed 3d connection matrix and its sign variant.

use lambda_sw::clifford::torsion_check_eq1;

fn main() -> lambda_sw::Result<()> {
    let rep = torsion_check_eq1();
    for t in [&rep.displayed, &rep.sign_variant] {
        println!("{} ({:?})", t.variant, t.indexing);
        for (i, ti) in t.torsion.iter().enumerate() {
            println!("  T{i} = {ti:?}");
        }
        println!("  forced dη_r = {:?}", t.forced_deta);
    }
    Ok(())
}
