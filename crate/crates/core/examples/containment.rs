//! Every reconstructed vertex lies in its rhombus.

use mobius_honeycomb::moebius::{containment_violations, nl_honeycombs};
use mobius_honeycomb::partition::Partition;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let p: Partition = "2,1".parse()?;
    let q: Partition = "2".parse()?;
    for h in nl_honeycombs(&p, &p, &q, 2, 2)? {
        let bad = containment_violations(&h, 2)?;
        println!("{} vertices outside their rhombus", bad.len());
    }
    Ok(())
}
