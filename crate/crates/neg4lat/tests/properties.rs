//! Property suites for the spec'd invariants: bilinearity, normalization,
//! adjunction parity, reduction idempotence, value-set symmetry and witness
//! replay.

use std::sync::OnceLock;

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;

use neg4lat::lattice::{LatticeClass, RationalClass};
use neg4lat::spheres::{value_set, witness_class, witnesses_of_value, SignConvention};
use neg4lat::weyl::{self, reduce, reflect, Reflection};

fn coeffs(k: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, k)
}

fn int_class(k: usize) -> impl Strategy<Value = LatticeClass> {
    (-9i64..=9, coeffs(k)).prop_map(|(a, b)| LatticeClass::from_i64(a, &b))
}

fn rational(den_max: i64) -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=den_max)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn rat_class(k: usize) -> impl Strategy<Value = RationalClass> {
    (rational(7), prop::collection::vec(rational(7), k))
        .prop_map(|(a, b)| RationalClass::new(a, b))
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear(
        x in int_class(6),
        y in int_class(6),
        z in int_class(6),
        m in -5i64..=5,
    ) {
        prop_assert_eq!(x.pair(&y).unwrap(), y.pair(&x).unwrap());
        let xz = x.add(&z.scale(&BigInt::from(m))).unwrap();
        prop_assert_eq!(
            xz.pair(&y).unwrap(),
            x.pair(&y).unwrap() + BigInt::from(m) * z.pair(&y).unwrap()
        );
        prop_assert_eq!(x.pair(&x).unwrap(), x.square());
    }

    #[test]
    fn rational_pairing_is_symmetric(x in rat_class(5), y in rat_class(5)) {
        prop_assert_eq!(x.pair(&y).unwrap(), y.pair(&x).unwrap());
    }

    #[test]
    fn normalization_invariants(x in int_class(7)) {
        let n = x.normalize_trivial();
        prop_assert!(n.is_trivial_normal());
        prop_assert_eq!(n.square(), x.square());
        let mut mags: Vec<BigInt> = x.b().iter().map(num::Signed::abs).collect();
        mags.sort();
        let mut nmags = n.b().to_vec();
        nmags.sort();
        prop_assert_eq!(mags, nmags);
        prop_assert_eq!(n.normalize_trivial(), n);
    }

    #[test]
    fn adjunction_parity_and_sphere_test(x in int_class(6)) {
        let even = ((x.square() + x.k_dot()) % BigInt::from(2)).is_zero();
        prop_assert_eq!(x.adjunction_genus().is_integer(), even);
        prop_assert_eq!(x.is_sphere_class(), x.adjunction_genus().is_zero());
    }

    #[test]
    fn drop_zeros_preserves_products(x in int_class(6)) {
        let d = x.drop_zeros();
        prop_assert_eq!(d.square(), x.square());
        prop_assert_eq!(d.k_dot(), x.k_dot());
        prop_assert_eq!(d.k(), x.nonzero_count());
    }

    #[test]
    fn words_of_reflections_preserve_pairing(
        x in int_class(5),
        y in int_class(5),
        picks in prop::collection::vec((0usize..5, 0usize..5, 0usize..5), 1..6),
    ) {
        let mut rx = x.clone();
        let mut ry = y.clone();
        for (i, j, l) in picks {
            if i == j || j == l || i == l {
                continue;
            }
            let r = Reflection::cremona(i, j, l).unwrap();
            rx = reflect(&rx, &r).unwrap();
            ry = reflect(&ry, &r).unwrap();
        }
        prop_assert_eq!(rx.pair(&ry).unwrap(), x.pair(&y).unwrap());
    }

    #[test]
    fn reduce_idempotent_on_random_classes(x in int_class(6)) {
        let r = reduce(&x);
        prop_assert_eq!(reduce(&r), r.clone());
        prop_assert_eq!(r.square(), x.square());
    }

    #[test]
    fn reduce_word_replays(x in int_class(5)) {
        let (r, word) = weyl::reduce_with_moves(&x);
        prop_assert_eq!(weyl::apply_moves(&x, &word).unwrap(), r);
    }
}

/// Pool of −4 classes in trivial-normal form for the screening properties.
fn minus4_pool() -> &'static Vec<LatticeClass> {
    static POOL: OnceLock<Vec<LatticeClass>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool = Vec::new();
        for k in 1..=6usize {
            for x in weyl::enumerate_reduced(k, -4, 6) {
                pool.push(x);
            }
        }
        // include non-reduced normal forms from the shipped catalog
        for e in neg4lat::spheres::builtin_table() {
            pool.push(e.xi.clone());
        }
        pool
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_realize_their_values(idx in 0usize..1000) {
        let pool = minus4_pool();
        let xi = &pool[idx % pool.len()];
        let vs = value_set(xi).unwrap();
        for (v, assignment) in &vs.witnesses {
            let w = witness_class(xi, assignment).unwrap();
            prop_assert_eq!(w.k_dot(), v.clone());
            prop_assert_eq!(w.square(), BigInt::from(-4));
        }
        for v in &vs.values {
            for w in witnesses_of_value(xi, v, SignConvention::OnesNegative).unwrap() {
                prop_assert_eq!(w.k_dot(), v.clone());
                prop_assert_eq!(w.square(), BigInt::from(-4));
            }
        }
    }

    #[test]
    fn value_set_ignores_order_of_equal_entries(idx in 0usize..1000, seed in 0u64..1000) {
        use rand::{seq::SliceRandom, SeedableRng};
        let pool = minus4_pool();
        let xi = &pool[idx % pool.len()];
        // permuting b arbitrarily and renormalizing gives the same value set
        let mut b: Vec<BigInt> = xi.b().to_vec();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        b.shuffle(&mut rng);
        let shuffled = LatticeClass::new(xi.a().clone(), b).normalize_trivial();
        prop_assert_eq!(
            value_set(&shuffled).unwrap().values,
            value_set(xi).unwrap().values
        );
    }

    #[test]
    fn orbit_equivalence_is_symmetric(i in 0usize..40, j in 0usize..40) {
        let pool: Vec<&LatticeClass> = minus4_pool().iter().filter(|x| x.k() == 4).collect();
        let x = pool[i % pool.len()];
        let y = pool[j % pool.len()];
        let cap = 8;
        let xy = weyl::orbit_equivalent(x, y, cap, true).unwrap();
        let yx = weyl::orbit_equivalent(y, x, cap, true).unwrap();
        prop_assert_eq!(xy.status, yx.status);
        if let Some(w) = xy.witness {
            prop_assert_eq!(&weyl::apply_moves(x, &w).unwrap(), y);
        }
    }
}

#[test]
fn exceptional_classes_have_unit_k_dot_sign() {
    // the K·E = −1 condition orients the catalog: no class and its negative
    // both appear
    let cat = weyl::enumerate_exceptional(6, 4);
    for e in &cat {
        assert_eq!(e.k_dot(), BigInt::from(-1));
        assert_eq!(e.square(), BigInt::from(-1));
        assert!(!cat.contains(&e.neg()));
    }
    assert!(!cat.is_empty());
}
