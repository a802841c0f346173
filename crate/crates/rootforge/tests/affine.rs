use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootforge::affine::{
    affine_reflection, affine_translation, extend, extend_f64, find_folding, fullerene_onion, project_affine_root,
    start_cage, validate_shell, AxisClass, FoldingPair, DEFAULT_SHELL_TOLERANCES,
};
use rootforge::polyhedra::{five_fold_axis, orbit, pentagon_circumradius, OrbitGroup};
use rootforge::roots::{close_catalog, highest_root, AnyRootSystem, RootSystem};
use rootforge::scalars::{dot, vec_add, vec_scale, vec_sub, GoldenNumber, Scalar};

fn g(a: i64, b: i64) -> GoldenNumber {
    GoldenNumber::from_ints(a, b)
}

fn exact(name: &str) -> RootSystem<GoldenNumber> {
    match close_catalog(name).unwrap() {
        AnyRootSystem::Exact(r) => r,
        AnyRootSystem::Float(_) => panic!("{name} is exact"),
    }
}

fn random_golden(rng: &mut ChaCha8Rng) -> GoldenNumber {
    GoldenNumber::from_ratios(rng.random_range(-20..=20), rng.random_range(1..=7), rng.random_range(-20..=20), rng.random_range(1..=7))
}

#[test]
fn affine_reflection_generates_translation_by_highest_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["A3", "H3", "H4", "D4", "E8"] {
        let rs = exact(name);
        let ah = highest_root(&rs).unwrap().root;
        assert_eq!(affine_reflection(&ah, &vec![GoldenNumber::zero(); rs.dim]).unwrap(), ah);
        for _ in 0..100 {
            let lam: Vec<GoldenNumber> = (0..rs.dim).map(|_| random_golden(&mut rng)).collect();
            assert_eq!(vec_sub(&affine_translation(&ah, &lam).unwrap(), &lam), ah, "{name}");
            let twice = affine_reflection(&ah, &affine_reflection(&ah, &lam).unwrap()).unwrap();
            assert_eq!(twice, lam);
        }
    }
    assert!(affine_reflection(&[g(0, 0), g(0, 0)], &[g(1, 0), g(0, 0)]).is_err());
}

/// Rotation by `angle` about the unit vector `n`.
fn rodrigues(n: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let (c, s) = (angle.cos(), angle.sin());
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let k = [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]][i][j];
            m[i][j] = c * f64::from(i == j) + (1.0 - c) * n[i] * n[j] + s * k;
        }
    }
    m
}

fn mm(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

fn rkey(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * 1e6).round() as i64).collect()
}

/// The rotation group rebuilt from a 5-fold and a 3-fold rotation.
fn oracle_rotations() -> Vec<[[f64; 3]; 3]> {
    let s3 = 3f64.sqrt();
    let gens = [rodrigues(five_fold_axis(), 0.4 * std::f64::consts::PI), rodrigues([1.0 / s3; 3], 2.0 * std::f64::consts::PI / 3.0)];
    let mut seen = std::collections::BTreeSet::new();
    let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut out = vec![id];
    seen.insert(rkey(&id.concat()));
    let mut k = 0;
    while k < out.len() {
        for gm in &gens {
            let m = mm(&out[k], gm);
            if seen.insert(rkey(&m.concat())) {
                out.push(m);
            }
        }
        k += 1;
    }
    out
}

fn oracle_extend_count(seed: &[Vec<f64>], t: &[f64]) -> usize {
    let group = oracle_rotations();
    assert_eq!(group.len(), 60);
    let mut set: std::collections::BTreeSet<Vec<i64>> = seed.iter().map(|p| rkey(p)).collect();
    for p in seed {
        let q: Vec<f64> = (0..3).map(|i| p[i] + t[i]).collect();
        for m in &group {
            let r: Vec<f64> = (0..3).map(|i| (0..3).map(|j| m[i][j] * q[j]).sum()).collect();
            set.insert(rkey(&r));
        }
    }
    set.len()
}

#[test]
fn extension_cardinalities() {
    let ico = orbit(&[g(0, 0), g(0, 1), g(1, 0)]).unwrap();
    let ico_f: Vec<Vec<f64>> = ico.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect();
    // Translation along the vertex axis by the vertex distance.
    let v0 = vec![g(0, 0), g(0, 1), g(1, 0)];
    let axial = extend(&ico, &v0, OrbitGroup::Rotations).unwrap();
    assert!(axial.degenerate);
    assert!(axial.points.len() < 12 * 60 + 12);
    let v0f: Vec<f64> = v0.iter().map(|x| x.to_f64()).collect();
    assert_eq!(axial.points.len(), oracle_extend_count(&ico_f, &v0f));
    // Generic direction and length.
    let t = vec![g(1, 0), GoldenNumber::from_ratios(1, 3, 0, 1), GoldenNumber::from_ratios(2, 7, 1, 5)];
    let generic = extend(&ico, &t, OrbitGroup::Rotations).unwrap();
    assert!(!generic.degenerate);
    assert_eq!(generic.points.len(), 732);
    let tf: Vec<f64> = t.iter().map(|x| x.to_f64()).collect();
    assert_eq!(oracle_extend_count(&ico_f, &tf), 732);
    assert_eq!(extend_f64(&ico_f, &tf).unwrap().points.len(), 732);
    // Zero translation.
    let same = extend(&ico, &[g(0, 0), g(0, 0), g(0, 0)], OrbitGroup::Rotations).unwrap();
    assert_eq!(same.points, ico);
    assert!(!same.degenerate);
    // Exact invariance under every group element.
    for m in rootforge::cover::icosahedral_rotations().elements() {
        let set = rootforge::scalars::PointSet::from_points(generic.points.iter().cloned());
        assert!(generic.points.iter().all(|p| set.contains(&rootforge::linalg::mat_vec(&m.0, p))));
    }
}

#[test]
fn folded_roots_are_target_roots_or_tau_multiples() {
    for (pair, big, small) in [(FoldingPair::A4H2, "A4", "H2"), (FoldingPair::D6H3, "D6", "H3"), (FoldingPair::E8H4, "E8", "H4")] {
        let (b, s) = (exact(big), exact(small));
        let f = find_folding(&b.cartan_matrix(), &s.cartan_matrix()).expect("folding");
        let image = |coef: &[GoldenNumber]| -> Vec<GoldenNumber> {
            let mut v = vec![GoldenNumber::zero(); s.dim];
            for (k, c) in coef.iter().enumerate() {
                let ck = if f.tau_scaled[k] { g(0, 1) } else { g(1, 0) };
                v = vec_add(&v, &vec_scale(&s.simples[f.target[k]], &c.mul(&ck)));
            }
            v
        };
        // Oracle: the projection maps the crystallographic roots onto
        // Φ ∪ τΦ of the target, each exactly once.
        let target = s.point_set();
        let mut hits = (0usize, 0usize);
        for r in &b.roots {
            let v = image(&b.simple_coords(r).unwrap());
            if target.contains(&v) {
                hits.0 += 1;
            } else {
                let back = vec_scale(&v, &g(0, 1).inv().unwrap());
                assert!(target.contains(&back), "{big}: image is neither a root nor τ·root");
                hits.1 += 1;
            }
        }
        assert_eq!(hits, (s.len(), s.len()), "{big}");
        let p = project_affine_root(pair).unwrap();
        assert_eq!(p.vector, image(&highest_root(&b).unwrap().coefficients));
        assert!(matches!(p.axis, AxisClass::TwoFold | AxisClass::FiveFold), "{big}");
    }
    let e8 = project_affine_root(FoldingPair::E8H4).unwrap();
    assert_eq!(e8.input_coefficients, vec![2, 3, 4, 5, 6, 4, 2, 3]);
    // Mismatched sizes have no folding.
    assert!(find_folding(&exact("A3").cartan_matrix(), &exact("H2").cartan_matrix()).is_none());
    assert!(FoldingPair::parse("E8->H4").is_ok() && FoldingPair::parse("E7->H4").is_err());
}

#[test]
fn validity_predicate_accepts_start_cages() {
    let c60 = start_cage("C60").unwrap();
    let s = validate_shell(&c60, &DEFAULT_SHELL_TOLERANCES).unwrap();
    assert_eq!((s.t, s.bonds.len(), s.faces.len()), (3, 90, 32));
    let c80 = start_cage("C80").unwrap();
    assert_eq!(validate_shell(&c80, &DEFAULT_SHELL_TOLERANCES).unwrap().t, 4);
    // Twelve disjoint copies of C60 are trivalent with uniform bonds but
    // disconnected.
    let mut copies = Vec::new();
    for k in 0..12 {
        copies.extend(c60.iter().map(|p| [p[0] + 20.0 * k as f64, p[1], p[2]]));
    }
    assert!(validate_shell(&copies, &DEFAULT_SHELL_TOLERANCES).is_none());
    assert!(validate_shell(&c60[..40], &DEFAULT_SHELL_TOLERANCES).is_none());
}

#[test]
fn c60_onion() {
    let o = fullerene_onion("C60", 3).unwrap();
    let counts: Vec<usize> = o.shells.iter().map(|s| s.atoms.len()).collect();
    assert_eq!(counts, vec![60, 240, 540]);
    assert_eq!(o.shells.iter().map(|s| s.t).collect::<Vec<_>>(), vec![3, 12, 27]);
    for s in &o.shells {
        let mut deg = vec![0; s.atoms.len()];
        for &(a, b) in &s.bonds {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert!(deg.iter().all(|&d| d == 3));
        assert!(s.bond_spread <= 0.05);
        assert_eq!(s.faces.iter().filter(|f| f.len() == 5).count(), 12);
    }
    // One translation per step: 1.5·√5 pentagon circumradii.
    let rho = pentagon_circumradius(2.0);
    for st in &o.steps {
        assert_eq!(st.refined.len(), 1);
        assert!((st.chosen / rho - 1.5 * 5f64.sqrt()).abs() < 1e-9);
    }
    // Shells are nested.
    let rmax = |s: &rootforge::affine::FullereneShell| s.atoms.iter().map(|p| dot(p, p).sqrt()).fold(0.0, f64::max);
    assert!(rmax(&o.shells[0]) < rmax(&o.shells[1]) && rmax(&o.shells[1]) < rmax(&o.shells[2]));
}

#[test]
fn onion_errors() {
    assert!(fullerene_onion("C70", 2).is_err());
    assert!(fullerene_onion("C60", 0).is_err());
    assert_eq!(fullerene_onion("C60", 1).unwrap().shells.len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn translation_identity_exact(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in 1i64..9) {
        let ah = highest_root(&exact("H3")).unwrap().root;
        let lam = vec![GoldenNumber::from_ratios(a, d, b, 1), GoldenNumber::from_ratios(c, 1, a, d), g(b, c)];
        prop_assert_eq!(vec_sub(&affine_translation(&ah, &lam).unwrap(), &lam), ah);
    }
}
