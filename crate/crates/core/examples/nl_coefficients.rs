//! The 20 integral Möbius honeycombs for (3,2,1)³ and the closed formula.

use mobius_honeycomb::moebius::{count_nl, nl_honeycombs, nl_oracle, split};
use mobius_honeycomb::partition::Partition;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let p: Partition = "3,2,1".parse()?;
    let count = count_nl(&p, &p, &p, 3)?;
    println!("enumerated: {count}");
    println!("formula:    {}", nl_oracle(&p, &p, &p));
    for h in nl_honeycombs(&p, &p, &p, 3, 3)? {
        let s = split(&h)?;
        println!("alpha={:?} beta={:?} gamma={:?}", s.alpha, s.beta, s.gamma);
    }
    Ok(())
}
