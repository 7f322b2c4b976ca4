//! Count integral honeycombs and compare with the tableau count.

use mobius_honeycomb::honeycomb::{count_lr, lr_honeycombs, lr_oracle};
use mobius_honeycomb::partition::Partition;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let lambda: Partition = "3,2,1".parse()?;
    let mu: Partition = "2,1".parse()?;
    let nu: Partition = "2,1".parse()?;
    let n = 3;
    let count = count_lr(&lambda, &mu, &nu, n)?;
    println!("c^{lambda}_{{{mu},{nu}}} = {count} (tableaux: {})", lr_oracle(&lambda, &mu, &nu));
    for h in lr_honeycombs(&lambda, &mu, &nu, n)? {
        println!("{}", serde_json::to_string(&h)?);
    }
    Ok(())
}
