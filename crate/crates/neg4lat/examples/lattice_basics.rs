//! Core lattice arithmetic: pairing, squares, canonical pairings and the
//! adjunction genus in H₂(ℂP² # kℂP̄²) with the diagonal form.
//!
//! Run with `cargo run --example lattice_basics`.

use neg4lat::lattice::{canonical_std, LatticeClass};

fn main() {
    let h = LatticeClass::hyperplane();
    println!("H·H = {}", h.pair(&h).unwrap());

    let e1 = LatticeClass::exceptional(2, 0).unwrap();
    let e2 = LatticeClass::exceptional(2, 1).unwrap();
    println!("e1·e1 = {}, e1·e2 = {}", e1.square(), e1.pair(&e2).unwrap());

    // twice the anticanonical class of the ten-fold blow-up
    let v = LatticeClass::from_i64(6, &[2; 10]);
    println!(
        "V = {v}:  V² = {}, K_st·V = {}, genus {}",
        v.square(),
        v.k_dot(),
        v.adjunction_genus()
    );
    assert_eq!(canonical_std(10).scale(&num::BigInt::from(-2)), v);
    assert!(v.is_sphere_class());

    // trivial normalization and zero-dropping
    let x = LatticeClass::from_i64(-3, &[-2, 0, -2, 1, -2]);
    let n = x.normalize_trivial();
    println!("{x}  normalizes to  {n}  and projects to  {}", n.drop_zeros());
}
