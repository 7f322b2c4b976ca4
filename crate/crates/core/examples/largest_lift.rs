//! Largest-lift of an integral boundary, its perimeters and inflation test.

use mobius_honeycomb::lift::{is_inflatable, largest_lift};
use mobius_honeycomb::moebius::MoebiusBoundary;
use mobius_honeycomb::partition::Partition;
use mobius_honeycomb::rational::Rational;
use mobius_honeycomb::tinkertoy::quotient;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let p: Partition = "3,2,1".parse()?;
    let xi = MoebiusBoundary::for_nl(&p, &p, &p, 3, 3)?;
    let ll = largest_lift(&xi, &Rational::from_int(3), 3)?;
    println!("weighted perimeter {}", ll.wperim);
    println!("half-integral: {}", ll.honeycomb.is_half_integral());
    for (slot, per) in &ll.iota.perimeters {
        println!("hexagon {slot}: perimeter {per}");
    }
    let g = quotient(3)?;
    let mut any = false;
    for hx in 0..g.hexagons.len() {
        any |= is_inflatable(&ll.honeycomb, hx)?;
    }
    println!("some hexagon inflatable: {any}");
    Ok(())
}
