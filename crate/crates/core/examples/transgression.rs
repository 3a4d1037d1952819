//! Transgression of a characteristic form between two connections.

use lambda_sw::forms::{
    characteristic_difference, curvature, random_connection, transgression_form, InvariantPolynomial,
};
use rand::SeedableRng;

fn main() -> lambda_sw::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let w0 = random_connection(&mut rng, 4, 3, 1);
    let w1 = random_connection(&mut rng, 4, 3, 1);
    let f = InvariantPolynomial::trace(2);

    let tf = transgression_form(&w0, &w1, &f)?;
    let lhs = tf.d(4);
    let rhs = characteristic_difference(&w0, &w1, &f)?;
    println!("curvature degree {}", curvature(&w0)?.degree());
    println!(
        "TF has {} terms, d(TF) = F(Ω₁) - F(Ω₀): {}",
        tf.terms().count(),
        lhs == rhs
    );
    Ok(())
}
