//! Adjunction value sets: the attainable K_st-pairings of the forced-sign
//! variants of a −4-class. A class whose set omits 2 cannot be represented
//! by an embedded symplectic sphere.
//!
//! Run with `cargo run --example value_sets`.

use neg4lat::lattice::LatticeClass;
use neg4lat::spheres::{value_set, witness_class};

fn main() {
    for (a, b) in [
        (2i64, vec![2i64, 1, 1, 1, 1]),
        (3, vec![2, 2, 1, 1, 1, 1, 1]),
        (5, vec![4, 2, 2, 2, 1]),
        (0, vec![2]),
    ] {
        let xi = LatticeClass::from_i64(a, &b);
        let vs = value_set(&xi).expect("valid -4 class");
        let shown: Vec<String> = vs.values.iter().map(|v| v.to_string()).collect();
        println!("{xi}: {{{}}}", shown.join(", "));
        for (v, assignment) in &vs.witnesses {
            let w = witness_class(&xi, assignment).unwrap();
            println!("    {v:>4}  realized by {w}");
        }
    }
}
