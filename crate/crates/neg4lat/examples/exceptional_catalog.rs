//! Enumerate exceptional classes (square −1, canonical pairing −1) and group
//! them by shape.
//!
//! Run with `cargo run --example exceptional_catalog`.

use std::collections::BTreeMap;

use neg4lat::lattice::LatticeClass;
use neg4lat::weyl::enumerate_exceptional;

fn main() {
    for (k, a_max) in [(5usize, 2i64), (7, 3), (10, 4)] {
        let catalog = enumerate_exceptional(k, a_max);
        println!("k = {k}, a <= {a_max}: {} classes", catalog.len());
        let mut shapes: BTreeMap<String, usize> = BTreeMap::new();
        for e in &catalog {
            *shapes.entry(shape_of(e)).or_insert(0) += 1;
        }
        for (shape, count) in shapes {
            println!("    {count:>6} x  {shape}");
        }
    }
}

/// Normal form of the b-vector, as a readable shape label.
fn shape_of(e: &LatticeClass) -> String {
    let n = e.normalize_trivial();
    let parts: Vec<String> = n
        .b()
        .iter()
        .filter(|v| !num::Zero::is_zero(*v))
        .map(|v| v.to_string())
        .collect();
    format!("{}H - ({})", e.a(), parts.join(","))
}
