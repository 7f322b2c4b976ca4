//! From an integral honeycomb for (kλ, kμ, kν) to one for (λ, μ, ν).

use mobius_honeycomb::breaking::saturation_witness;
use mobius_honeycomb::oracle::nl_oracle;
use mobius_honeycomb::partition::Partition;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let p = |s: &str| s.parse::<Partition>();
    for (l, m, v) in [("2,2", "1,1", "1,1"), ("2,1", "2,1", "2"), ("2", "2", "")] {
        let (l, m, v) = (p(l)?, p(m)?, p(v)?);
        match saturation_witness(&l, &m, &v, 2)? {
            Some(w) => println!(
                "{l} {m} {v}: witness via alpha={:?} beta={:?} gamma={:?}, N={}",
                w.pieces.alpha,
                w.pieces.beta,
                w.pieces.gamma,
                nl_oracle(&l, &m, &v)
            ),
            None => println!("{l} {m} {v}: N=0 even after doubling"),
        }
    }
    Ok(())
}
