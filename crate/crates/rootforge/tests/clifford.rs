use proptest::prelude::*;
use rootforge::clifford::{blade_sign, grade_of, Multivector};
use rootforge::scalars::{dot, GoldenNumber, Scalar};

type Mv = Multivector<GoldenNumber>;

fn coeff() -> impl Strategy<Value = GoldenNumber> {
    (-5i64..=5, -3i64..=3, 1i64..=3).prop_map(|(a, b, d)| GoldenNumber::from_ratios(a, d, b, 1))
}

fn multivector(dim: usize) -> impl Strategy<Value = Mv> {
    proptest::collection::vec(coeff(), 1 << dim).prop_map(move |c| Mv::from_coeffs(dim, c).unwrap())
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<GoldenNumber>> {
    proptest::collection::vec(coeff(), dim).prop_filter("nonzero", |v| v.iter().any(|x| !x.is_zero()))
}

fn triple() -> impl Strategy<Value = (Mv, Mv, Mv)> {
    (1usize..=5).prop_flat_map(|d| (multivector(d), multivector(d), multivector(d)))
}

/// Sign of reordering blade `a` past blade `b`, by counting transpositions.
fn oracle_sign(a: usize, b: usize) -> i32 {
    let mut swaps = 0;
    for i in 0..8 {
        if b & (1 << i) != 0 {
            swaps += (a >> (i + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn blade_signs_match_transposition_count() {
    for a in 0..32 {
        for b in 0..32 {
            assert_eq!(blade_sign(a, b), oracle_sign(a, b), "{a} {b}");
        }
        assert_eq!(grade_of(a), a.count_ones() as usize);
    }
}

#[test]
fn vector_square_is_norm() {
    let v = vec![GoldenNumber::from_ints(1, 1), GoldenNumber::from_ints(0, 1), GoldenNumber::from_ints(-2, 0)];
    let m = Mv::vector(&v).unwrap();
    assert_eq!(m.mul(&m), Mv::scalar(3, dot(&v, &v)));
    assert_eq!(m.vector_inner(&m), dot(&v, &v));
}

#[test]
fn rotor_exp_rotates_by_twice_the_angle() {
    let b = Multivector::<f64>::blade(3, 0b011, 1.0);
    let theta = 0.3;
    let r = Multivector::rotor_exp(&b, theta).unwrap();
    let e1 = Multivector::<f64>::basis(3, 0);
    let img = r.sandwich(&e1).unwrap().vector_part();
    let angle = img[0].clamp(-1.0, 1.0).acos();
    assert!((angle - 2.0 * theta).abs() < 1e-9);
    assert!((r.norm() - 1.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn reverse_and_involute((a, b, _c) in triple()) {
        prop_assert_eq!(a.reverse().reverse(), a.clone());
        prop_assert_eq!(a.mul(&b).reverse(), b.reverse().mul(&a.reverse()));
        prop_assert_eq!(a.involute().involute(), a.clone());
        prop_assert_eq!(a.mul(&b).involute(), a.involute().mul(&b.involute()));
        prop_assert_eq!(a.even_part().add(&a.odd_part()), a);
    }

    #[test]
    fn versor_sandwich_preserves_norms(
        (vs, x) in (2usize..=5).prop_flat_map(|d| (proptest::collection::vec(vector(d), 1..4), vector(d)))
    ) {
        let a = Mv::product_of_vectors(&vs).unwrap();
        let xm = Mv::vector(&x).unwrap();
        let y = a.sandwich(&xm).unwrap();
        prop_assert!(y.is_vector());
        prop_assert_eq!(y.norm2(), xm.norm2());
        // A single vector acts as the reflection x − 2(x|a)/(a|a)·a.
        let r = Mv::reflect(&Mv::vector(&vs[0]).unwrap(), &xm).unwrap();
        let k = GoldenNumber::from_ints(2, 0).mul(&dot(&x, &vs[0])).div(&dot(&vs[0], &vs[0])).unwrap();
        let expected: Vec<GoldenNumber> = x.iter().zip(&vs[0]).map(|(xi, ai)| xi.sub(&k.mul(ai))).collect();
        prop_assert_eq!(r.vector_part(), expected);
    }

    #[test]
    fn versor_norm_is_multiplicative(
        (vs, ws) in (1usize..=4).prop_flat_map(|d| (proptest::collection::vec(vector(d), 1..3), proptest::collection::vec(vector(d), 1..3)))
    ) {
        let a = Mv::product_of_vectors(&vs).unwrap();
        let b = Mv::product_of_vectors(&ws).unwrap();
        prop_assert_eq!(a.mul(&b).norm2(), a.norm2().mul(&b.norm2()));
        prop_assert_eq!(a.mul(&a.versor_inverse().unwrap()), Mv::one(a.dim()));
    }
}
