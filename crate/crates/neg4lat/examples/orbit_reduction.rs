//! Cremona reduction and bounded orbit search.
//!
//! Run with `cargo run --example orbit_reduction`.

use neg4lat::lattice::LatticeClass;
use neg4lat::weyl::{apply_moves, orbit_equivalent, reduce_with_moves, OrbitStatus};

fn main() {
    // greedy descent with the group word that realizes it
    for (a, b) in [
        (5i64, vec![4i64, 2, 2, 2, 1]),
        (2, vec![2, 1, 1, 1, 1]),
        (6, vec![2; 10]),
    ] {
        let x = LatticeClass::from_i64(a, &b);
        let (r, word) = reduce_with_moves(&x);
        let steps: Vec<String> = word.iter().map(|m| m.to_string()).collect();
        println!("reduce {x} -> {r}   via [{}]", steps.join(", "));
        assert_eq!(apply_moves(&x, &word).unwrap(), r);
    }

    // bounded orbit equivalence with a replayable witness
    let x = LatticeClass::from_i64(0, &[1, 1, 1, 1]);
    let y = LatticeClass::from_i64(3, &[2, 2, 2, 1]);
    let verdict = orbit_equivalent(&x, &y, 12, true).unwrap();
    match verdict.status {
        OrbitStatus::Equivalent => {
            let word = verdict.witness.unwrap();
            let steps: Vec<String> = word.iter().map(|m| m.to_string()).collect();
            println!("{x} ~ {y}   witness [{}]", steps.join(", "));
            assert_eq!(apply_moves(&x, &word).unwrap(), y);
        }
        OrbitStatus::DistinctWithinBound => {
            println!(
                "{x} vs {y}: distinct within |a| <= {} ({} classes explored)",
                verdict.bound, verdict.explored
            );
        }
    }
}
