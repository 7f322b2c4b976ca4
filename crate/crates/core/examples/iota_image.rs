//! Hexagon perimeters determine a Möbius honeycomb.

use mobius_honeycomb::lift::{from_iota, iota};
use mobius_honeycomb::moebius::nl_honeycombs;
use mobius_honeycomb::partition::Partition;
use mobius_honeycomb::rational::Rational;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let p: Partition = "3,2,1".parse()?;
    let hs = nl_honeycombs(&p, &p, &p, 3, 3)?;
    let images: Vec<_> = hs.iter().map(iota).collect::<Result<_, _>>()?;
    let mut distinct = images.iter().map(|i| i.perimeter_vec()).collect::<Vec<_>>();
    distinct.sort();
    distinct.dedup();
    println!("{} honeycombs, {} distinct perimeter vectors", hs.len(), distinct.len());
    let back = from_iota(&images[0], &Rational::from_int(3), 3)?;
    println!("recovered the first: {}", back.as_ref() == Some(&hs[0]));
    Ok(())
}
