//! Batch evaluation of a knot table with an on-disk report cache.

use lambda_sw::batch::{run_batch, BatchOptions, Cache};

const TABLE: &str = "name,type,payload,strands
unknot,seifert,[],
trefoil,braid,1 1 1,2
figure-eight,seifert,\"[[1,1],[0,-1]]\",
two-component,braid,1 1,2
";

fn main() -> lambda_sw::Result<()> {
    let dir = tempfile::tempdir()?;
    let cache = Cache::new(dir.path())?;
    for pass in 1..=2 {
        let (lines, summary) = run_batch(TABLE.as_bytes(), &BatchOptions::default(), Some(&cache))?;
        println!("pass {pass}: {summary:?}");
        if pass == 2 {
            lines
                .iter()
                .for_each(|l| println!("  {}", l.json.chars().take(110).collect::<String>()));
        }
    }
    Ok(())
}
