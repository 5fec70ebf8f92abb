//! Screen −4-classes for symplectic representability.
//!
//! Run with `cargo run --example screen_class`.

use neg4lat::lattice::LatticeClass;
use neg4lat::spheres::{screen, ScreenOutcome};

fn main() {
    let classes = [
        LatticeClass::from_i64(5, &[4, 2, 2, 2, 1]),
        LatticeClass::from_i64(4, &[2, 2, 2, 2, 2]),
        LatticeClass::from_i64(3, &[2, 2, 2, 1]),
        LatticeClass::from_i64(6, &[2; 10]),
    ];
    for xi in &classes {
        let v = screen(xi, 6).expect("valid -4 class");
        println!("{xi}  ->  {}", v.outcome.as_str());
        match v.outcome {
            ScreenOutcome::NotRepresentable => {
                let shown: Vec<String> = v.values.iter().map(|x| x.to_string()).collect();
                println!("    adjunction values {{{}}} omit 2", shown.join(", "));
            }
            ScreenOutcome::MultipleOfExceptional => {
                for (m, e, w) in &v.multiples {
                    println!("    witness {w} = {m} * ({e})");
                }
            }
            ScreenOutcome::NsmPositive => {
                let (xi_t, e) = v.nsm_witness.as_ref().unwrap();
                println!("    witness {xi_t} meets exceptional {e} in one point");
            }
            ScreenOutcome::Inconclusive => {
                println!("    {} surviving sign assignment(s); no obstruction found", v.survivors.len());
            }
        }
    }
}
