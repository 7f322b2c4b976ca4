//! Black/white coloring, contraction and white loops of a largest-lift.

use mobius_honeycomb::breaking::{color, contract, white_loops};
use mobius_honeycomb::lift::largest_lift;
use mobius_honeycomb::moebius::MoebiusBoundary;
use mobius_honeycomb::partition::Partition;
use mobius_honeycomb::rational::Rational;
use mobius_honeycomb::tinkertoy::quotient;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let p: Partition = "3,2,1".parse()?;
    let h = largest_lift(&MoebiusBoundary::for_nl(&p, &p, &p, 3, 3)?, &Rational::from_int(3), 3)?.honeycomb;
    let c = color(&h)?;
    println!("white vertices: {}", c.white_vertex_count());
    let cg = contract(&h, &c)?;
    for cl in &cg.clusters {
        if cl.members.len() > 1 {
            println!("{:?} from {:?}", cl.kind, cl.members);
        }
    }
    let g = quotient(3)?;
    for lp in white_loops(&h, &c, &cg)? {
        let names: Vec<String> = lp.edges.iter().map(|&e| g.edges[e].id.to_string()).collect();
        println!("loop of {} edges (orientable {}): {}", lp.len(), lp.orientable, names.join(" "));
    }
    Ok(())
}
