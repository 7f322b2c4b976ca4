//! Write SVG pictures of a honeycomb and a colored largest-lift.

use std::fs;

use mobius_honeycomb::breaking::color;
use mobius_honeycomb::honeycomb::lr_honeycombs;
use mobius_honeycomb::lift::largest_lift;
use mobius_honeycomb::moebius::MoebiusBoundary;
use mobius_honeycomb::partition::Partition;
use mobius_honeycomb::rational::Rational;
use mobius_honeycomb::svg::{render_gl, render_mh};

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let dir = std::env::temp_dir();
    let p: Partition = "3,2,1".parse()?;
    let q: Partition = "2,1".parse()?;
    let h = lr_honeycombs(&p, &q, &q, 3)?.remove(0);
    let gl = dir.join("honeycomb.svg");
    fs::write(&gl, render_gl(&h)?)?;
    let ll = largest_lift(&MoebiusBoundary::for_nl(&p, &p, &p, 3, 3)?, &Rational::from_int(3), 3)?.honeycomb;
    let mh = dir.join("largest_lift.svg");
    fs::write(&mh, render_mh(&ll, Some(&color(&ll)?))?)?;
    println!("{}\n{}", gl.display(), mh.display());
    Ok(())
}
