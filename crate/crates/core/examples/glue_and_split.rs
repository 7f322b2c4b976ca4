//! Glue three honeycombs into a Möbius honeycomb and take it apart again.

use mobius_honeycomb::honeycomb::lr_honeycombs;
use mobius_honeycomb::moebius::{glue, split, validate_mh};
use mobius_honeycomb::partition::Partition;
use mobius_honeycomb::rational::Rational;

fn main() -> Result<(), mobius_honeycomb::error::Error> {
    let p = |s: &str| s.parse::<Partition>();
    let (alpha, beta, gamma) = (p("1")?, p("1")?, p("1")?);
    let (lambda, mu, nu) = (p("1,1")?, p("2")?, p("1,1")?);
    // λ = β ⊗ γ, μ = γ ⊗ α, ν = α ⊗ β
    let h_l = lr_honeycombs(&lambda, &beta, &gamma, 2)?.remove(0);
    let h_m = lr_honeycombs(&mu, &gamma, &alpha, 2)?.remove(0);
    let h_n = lr_honeycombs(&nu, &alpha, &beta, 2)?.remove(0);
    let h = glue(&h_l, &h_m, &h_n, &Rational::from_int(2))?;
    println!("glued, valid: {}", validate_mh(&h)?);
    let s = split(&h)?;
    println!("alpha={:?} beta={:?} gamma={:?}", s.alpha, s.beta, s.gamma);
    println!("round trip: {}", s.h_lambda == h_l && s.h_mu == h_m && s.h_nu == h_n);
    Ok(())
}
