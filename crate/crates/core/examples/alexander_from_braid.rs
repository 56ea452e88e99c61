//! Alexander polynomials of braid closures via Fox calculus.

use cjones::alexander::{alexander_poly, odd_at_pm1};
use cjones::knotlang::{parse_braid, presentation_from_braid};

fn main() -> cjones::Result<()> {
    let words = [
        ("3_1", "s1 s1 s1"),
        ("4_1", "s1 s2^-1 s1 s2^-1"),
        ("5_1", "s1 s1 s1 s1 s1"),
        ("5_2", "s1 s1 s1 s2 s1^-1 s2"),
        ("6_1", "s1 s1 s2 s1^-1 s3^-1 s2 s3^-1"),
        ("T(3,4)", "s1 s2 s1 s2 s1 s2 s1 s2"),
    ];
    for (name, word) in words {
        let braid = parse_braid(word)?;
        let delta = alexander_poly(&presentation_from_braid(&braid)?)?;
        println!(
            "{name:>7}  Δ = {delta:<40} Δ(-1) = {:>3}  odd at ±1: {}",
            delta.eval_int(-1),
            odd_at_pm1(&delta)
        );
    }

    // Two-component closures are rejected.
    let hopf = parse_braid("s1 s1")?;
    println!("s1 s1: {}", presentation_from_braid(&hopf).unwrap_err());
    Ok(())
}
