use proptest::prelude::*;
use rootforge::induce::{
    e8_from_h3, induce_2d_selfdual, induce_4d, pin_h3, rotor_from4, spinor4, spinor_inner, unreduced_split,
    ReductionScheme,
};
use rootforge::linalg::gram;
use rootforge::roots::{close, close_catalog, recognize, AnyRootSystem, DEFAULT_ROOT_CAP};
use rootforge::cover::PinorGroup;
use rootforge::scalars::{dot, GoldenNumber, Scalar};
use std::sync::OnceLock;

fn spin_h3() -> &'static PinorGroup<GoldenNumber> {
    static G: OnceLock<PinorGroup<GoldenNumber>> = OnceLock::new();
    G.get_or_init(|| pin_h3().unwrap().spin().unwrap())
}

#[test]
fn exceptional_triple_from_3d_systems() {
    for (from, to, count) in [("A3", "D4", 24), ("B3", "F4", 48), ("H3", "H4", 120), ("A1×A1×A1", "A1×A1×A1×A1", 8)] {
        let ind = induce_4d(&close_catalog(from).unwrap()).unwrap();
        assert_eq!(ind.label, to, "{from}");
        assert_eq!(ind.system.len(), count, "{from}");
        assert_eq!(ind.system.dim(), 4);
        ind.system.check_axioms().unwrap();
    }
    assert!(induce_4d(&close_catalog("H3").unwrap()).unwrap().system.is_exact());
}

#[test]
fn doubling_of_dihedral_family() {
    for n in 3..=8 {
        let ind = induce_4d(&close_catalog(&format!("A1×I2({n})")).unwrap()).unwrap();
        assert_eq!(ind.label, format!("I2({n})×I2({n})"));
        assert_eq!(ind.system.len(), 4 * n);
    }
}

#[test]
fn induced_sets_match_independent_closure() {
    // Closing the extracted simples again reproduces the same set.
    let AnyRootSystem::Exact(h4) = induce_4d(&close_catalog("H3").unwrap()).unwrap().system else { panic!() };
    let again = close(&h4.simples, DEFAULT_ROOT_CAP).unwrap();
    assert_eq!(again.roots, h4.roots);
}

#[test]
fn self_dual_planar_family() {
    for n in 2..=9 {
        let ind = induce_2d_selfdual(&close_catalog(&format!("I2({n})")).unwrap()).unwrap();
        assert_eq!(ind.system.len(), 2 * n);
        let expect = if n == 2 { "A1×A1".to_string() } else { format!("I2({n})") };
        assert_eq!(ind.label, expect);
    }
    let h2 = induce_2d_selfdual(&close_catalog("H2").unwrap());
    assert!(h2.is_err(), "H2 is embedded in 3D");
}

#[test]
fn e8_from_pinors() {
    let e8 = e8_from_h3().unwrap();
    assert_eq!(e8.system.len(), 240);
    assert_eq!(e8.label, "E8");
    assert_eq!(e8.scheme, ReductionScheme::HodgeFoldTau);
    assert!(e8.attempts[..2].iter().all(|a| !a.accepted && a.rank == 16));
    // Independent check of the Gram values of the full set.
    let mut vals = std::collections::BTreeSet::new();
    for x in &e8.system.roots {
        for y in &e8.system.roots {
            vals.insert(Scalar::to_integer(&dot(x, y)).unwrap());
        }
    }
    assert_eq!(vals.into_iter().collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
    // Cartan matrix agrees with the catalog E8 under the permutation.
    let AnyRootSystem::Exact(cat) = close_catalog("E8").unwrap() else { panic!() };
    let (c, f) = (cat.cartan_matrix(), e8.system.cartan_matrix());
    let p = &e8.cartan_permutation;
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(c[i][j], f[p[i]][p[j]]);
        }
    }
    e8.system.check_axioms().unwrap();
}

#[test]
fn unreduced_form_gives_two_orthogonal_h4() {
    let s = unreduced_split().unwrap();
    assert!(s.cross_orthogonal);
    assert_eq!(s.label, "H4×H4");
    assert_eq!(recognize(&s.even.roots).unwrap(), "H4");
    assert_eq!(recognize(&s.odd.roots).unwrap(), "H4");
    assert_eq!((s.even.len(), s.odd.len()), (120, 120));
}

#[test]
fn spinor_gram_is_positive_definite() {
    let spin = spin_h3();
    let basis: Vec<Vec<GoldenNumber>> = vec![
        vec![GoldenNumber::one(), GoldenNumber::zero(), GoldenNumber::zero(), GoldenNumber::zero()],
        vec![GoldenNumber::zero(), GoldenNumber::one(), GoldenNumber::zero(), GoldenNumber::zero()],
        vec![GoldenNumber::zero(), GoldenNumber::zero(), GoldenNumber::one(), GoldenNumber::zero()],
        vec![GoldenNumber::zero(), GoldenNumber::zero(), GoldenNumber::zero(), GoldenNumber::one()],
    ];
    let g = gram(&basis);
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            assert_eq!(spinor_inner(&rotor_from4(bi), &rotor_from4(bj)), g[i][j]);
        }
    }
    for r in spin.elements() {
        let a = spinor4(r).unwrap();
        assert_eq!(dot(&a, &a), GoldenNumber::one());
    }
}

proptest! {
    #[test]
    fn spinor_inner_matches_euclidean(i in 0usize..120, j in 0usize..120) {
        let spin = spin_h3();
        let (r1, r2) = (&spin.elements()[i], &spin.elements()[j]);
        prop_assert_eq!(spinor_inner(r1, r2), dot(&spinor4(r1).unwrap(), &spinor4(r2).unwrap()));
        prop_assert_eq!(spinor_inner(r1, r2), spinor_inner(r2, r1));
    }
}
