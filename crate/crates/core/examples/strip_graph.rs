//! The quotient graph of the Möbius strip tinkertoy and its vertex classes.

use mobius_honeycomb::tinkertoy::{class_of, quotient, VertexId};

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let n = 3;
    let g = quotient(n)?;
    println!(
        "n={n}: {} vertices, {} edges, {} hexagons",
        g.vertex_count(),
        g.edges.len(),
        g.hexagons.len()
    );
    for (m, v) in [(3, VertexId::a(2, 14)), (3, VertexId::b(1, 8)), (5, VertexId::b(1, 6)), (3, VertexId::a(4, 2))] {
        match class_of(m, v) {
            Ok(c) => println!("n={m}: {v} sits at T^{} of A:{}:{}", -c.sigma, c.i, c.j),
            Err(e) => println!("n={m}: {v}: {e}"),
        }
    }
    let hx = &g.hexagons[0];
    let names: Vec<String> = hx.vertices.iter().map(|v| v.to_string()).collect();
    println!("first hexagon: {}", names.join(" "));
    Ok(())
}
