//! The −4-blow-down classifier: Kodaira dimension and structure of the
//! blown-down manifold from (κ(X), unit-intersection count, k).
//!
//! Run with `cargo run --example classify_blowdown`.

use neg4lat::surgery::{
    classify_minus4, BlowdownScenario, ClassifyOutcome, Kappa, Ruled, UnitCount,
};

fn main() {
    let scenarios = [
        ("K3 # 1, cusp-fiber sphere", BlowdownScenario {
            kappa_x: Kappa::Zero,
            n_sm: UnitCount::Finite(0),
            k: 1,
            artificial: false,
            ruled: Ruled::NotRuled,
        }),
        ("kappa 0 with two unit intersections", BlowdownScenario {
            kappa_x: Kappa::Zero,
            n_sm: UnitCount::Finite(2),
            k: 2,
            artificial: false,
            ruled: Ruled::NotRuled,
        }),
        ("minimal elliptic, E(4)-type", BlowdownScenario {
            kappa_x: Kappa::One,
            n_sm: UnitCount::Finite(0),
            k: 0,
            artificial: false,
            ruled: Ruled::NotRuled,
        }),
        ("irrational ruled", BlowdownScenario {
            kappa_x: Kappa::NegInfinity,
            n_sm: UnitCount::Finite(4),
            k: 4,
            artificial: true,
            ruled: Ruled::IrrationalRuled,
        }),
        ("rational, a unit intersection", BlowdownScenario {
            kappa_x: Kappa::NegInfinity,
            n_sm: UnitCount::Finite(1),
            k: 3,
            artificial: false,
            ruled: Ruled::Rational,
        }),
        ("infeasible: minimal kappa 0", BlowdownScenario {
            kappa_x: Kappa::Zero,
            n_sm: UnitCount::Finite(0),
            k: 0,
            artificial: false,
            ruled: Ruled::NotRuled,
        }),
    ];

    for (name, s) in &scenarios {
        print!("{name:40} ");
        match classify_minus4(s) {
            Ok(ClassifyOutcome::Classified {
                kappa_m,
                structure,
                rule,
            }) => println!("kappa(M) = {kappa_m}   [{rule}] {structure}"),
            Ok(ClassifyOutcome::NotCovered { reason, rule }) => {
                println!("not covered [{rule}]: {reason}")
            }
            Err(e) => println!("rejected: {e}"),
        }
    }
}
