//! Shift the lines of a largest-lift onto the lattice.

use mobius_honeycomb::breaking::integralize;
use mobius_honeycomb::lift::largest_lift;
use mobius_honeycomb::moebius::{boundary_mh, MoebiusBoundary};
use mobius_honeycomb::partition::Partition;
use mobius_honeycomb::rational::Rational;
use mobius_honeycomb::tinkertoy::quotient;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let p: Partition = "3,2,1".parse()?;
    let xi = MoebiusBoundary::for_nl(&p, &p, &p, 3, 3)?;
    let h = largest_lift(&xi, &Rational::from_int(3), 3)?.honeycomb;
    let out = integralize(&h)?;
    let g = quotient(3)?;
    for b in &out.breaks {
        println!("double break at {}", g.edges[b.crossing].id);
    }
    println!("shift: {:?}", out.phi.labelled(&g));
    println!("integral: {}", out.honeycomb.is_integral());
    println!("same boundary: {}", boundary_mh(&out.honeycomb)? == xi);
    Ok(())
}
