//! Exact (K², K·ω) bookkeeping: the two-round blow-up / −4-blow-down pipeline
//! that turns E(1) into the Enriques surface, ending at K² = 0, K·ω = 0.
//!
//! Run with `cargo run --example surgery_pipeline`.

use num::{BigInt, BigRational};

use neg4lat::surgery::{
    run_pipeline, InvariantState, Pipeline, PipelineEntry, PipelineStep,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    let step = |s: PipelineStep, minimal: Option<bool>, label: &str| PipelineEntry {
        step: s,
        minimal,
        label: Some(label.to_string()),
    };

    let pipeline = Pipeline {
        // E(1) with fiber area 2: K = -F, so K·ω = -2
        start: InvariantState::new(BigInt::from(0), rat(-2, 1), false, "E(1)"),
        steps: vec![
            step(PipelineStep::BlowUp { area: rat(1, 2) }, None, "E(1) # 1"),
            step(PipelineStep::Minus4 { area: rat(1, 1) }, None, "E(1)_2"),
            step(PipelineStep::BlowUp { area: rat(1, 2) }, None, "E(1)_2 # 1"),
            step(
                PipelineStep::Minus4 { area: rat(1, 1) },
                Some(true),
                "E(1)_{2,2}",
            ),
        ],
    };

    let trace = run_pipeline(&pipeline).expect("pipeline runs");
    for (i, s) in trace.states.iter().enumerate() {
        println!(
            "step {i}: {:12}  K² = {:>3}   K·ω = {}",
            s.label, s.k_sq, s.k_omega
        );
    }
    match &trace.final_kappa {
        Ok(kappa) => println!("final Kodaira dimension: {kappa}"),
        Err(note) => println!("final Kodaira dimension unavailable: {note}"),
    }
}
