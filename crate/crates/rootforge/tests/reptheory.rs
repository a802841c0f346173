use num_complex::Complex64;
use rootforge::polyhedra::{catalog_solid, ms2_generic_seeds, orbit};
use rootforge::reptheory::{
    a5_table, character_table, displacement_decomposition, permutation_character, solid_decomposition,
    spinor_group, GroupLabel, RepDecomposition,
};
use rootforge::scalars::{GoldenNumber, Scalar};
use rootforge::Error;

const ALL: [&str; 10] = ["A5", "2T", "2O", "2I", "C1", "C5", "C6", "Dic2", "Dic3", "Dic5"];

fn g(a: i64, b: i64) -> GoldenNumber {
    GoldenNumber::from_ints(a, b)
}

fn label(s: &str) -> GroupLabel {
    s.parse().unwrap()
}

fn counts(d: &RepDecomposition) -> Vec<u64> {
    d.counts()
}

#[test]
fn orthogonality_relations() {
    for name in ALL {
        let t = character_table(label(name)).unwrap();
        let n = t.order as f64;
        assert_eq!(t.classes.iter().map(|c| c.size).sum::<usize>(), t.order, "{name}");
        assert_eq!(t.irreps.iter().map(|r| r.dim * r.dim).sum::<usize>(), t.order, "{name}");
        for i in 0..t.irreps.len() {
            for j in 0..t.irreps.len() {
                let s: Complex64 = (0..t.classes.len())
                    .map(|k| t.values[i][k] * t.values[j][k].conj() * t.classes[k].size as f64)
                    .sum::<Complex64>()
                    / n;
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((s - e).norm() < 1e-9, "{name} rows {i},{j}");
            }
        }
        for a in 0..t.classes.len() {
            for b in 0..t.classes.len() {
                let s: Complex64 = (0..t.irreps.len()).map(|i| t.values[i][a] * t.values[i][b].conj()).sum();
                let e = if a == b { n / t.classes[a].size as f64 } else { 0.0 };
                assert!((s - e).norm() < 1e-9, "{name} columns {a},{b}");
            }
        }
    }
}

/// Spin-j characters of SU(2): `sin(nφ)/sin φ` at the spinor `cos φ + …`.
fn chebyshev_u(n: usize, c: f64) -> f64 {
    let (mut u0, mut u1) = (1.0, 2.0 * c);
    if n == 0 {
        return u0;
    }
    for _ in 1..n {
        (u0, u1) = (u1, 2.0 * c * u1 - u0);
    }
    u1
}

#[test]
fn binary_icosahedral_symmetric_powers() {
    let t = character_table(GroupLabel::BinaryIcosahedral).unwrap();
    let grp = spinor_group(GroupLabel::BinaryIcosahedral).unwrap();
    assert_eq!(grp.order(), 120);
    for (dim, row) in [(1, "1"), (2, "2"), (3, "3"), (4, "4p"), (5, "5"), (6, "6")] {
        let i = t.irrep_index(row).unwrap();
        for (k, cls) in grp.classes.iter().enumerate() {
            let c = grp.elements[cls[0]][0];
            assert!((t.values[i][k].re - chebyshev_u(dim - 1, c)).abs() < 1e-9, "row {row} class {k}");
        }
    }
    // Lifts of A5 irreps are trivial on −1; the faithful ones are odd.
    for (row, sign) in [("1", 1.0), ("2", -1.0), ("2p", -1.0), ("3", 1.0), ("3p", 1.0), ("4", 1.0), ("4p", -1.0), ("5", 1.0), ("6", -1.0)] {
        let i = t.irrep_index(row).unwrap();
        assert!((t.values[i][1].re - sign * t.irreps[i].dim as f64).abs() < 1e-9, "{row}");
    }
    // The explicit classes agree with the table's column data.
    for (k, cls) in grp.classes.iter().enumerate() {
        assert_eq!(cls.len(), t.classes[k].size);
        assert!((grp.elements[cls[0]][0] - t.classes[k].representative[0]).abs() < 1e-9);
    }
}

#[test]
fn spinor_character_is_in_every_binary_table() {
    for name in ["2T", "2O", "2I", "C4", "Dic3"] {
        let t = character_table(label(name)).unwrap();
        let grp = spinor_group(label(name)).unwrap();
        let chi: Vec<Complex64> = grp.classes.iter().map(|c| Complex64::new(2.0 * grp.elements[c[0]][0], 0.0)).collect();
        let d = t.decompose_complex(&chi).unwrap();
        assert_eq!(counts(&d).iter().sum::<u64>(), if name == "C4" { 2 } else { 1 }, "{name}");
    }
}

/// Rotation angle of a 3×3 rotation measured on a vector orthogonal to its axis.
fn rotation_angle(m: &[f64]) -> f64 {
    let r = |i: usize, j: usize| m[3 * i + j];
    let mut best = (0.0, [0.0; 3]);
    for i in 0..3 {
        let rows: Vec<[f64; 3]> =
            (0..3).filter(|&k| k != i).map(|k| [r(k, 0) - f64::from(k == 0), r(k, 1) - f64::from(k == 1), r(k, 2) - f64::from(k == 2)]).collect();
        let (a, b) = (rows[0], rows[1]);
        let axis = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let n = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > best.0 {
            best = (n, axis.map(|x| x / n));
        }
    }
    if best.0 < 1e-9 {
        return 0.0;
    }
    let ax = best.1;
    let trial = if ax[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d: f64 = (0..3).map(|i| trial[i] * ax[i]).sum();
    let u: Vec<f64> = (0..3).map(|i| trial[i] - d * ax[i]).collect();
    let mu: Vec<f64> = (0..3).map(|i| (0..3).map(|j| r(i, j) * u[j]).sum()).collect();
    let uu: f64 = u.iter().map(|x| x * x).sum();
    ((0..3).map(|i| u[i] * mu[i]).sum::<f64>() / uu).clamp(-1.0, 1.0).acos()
}

#[test]
fn a5_rotation_row_is_one_plus_two_cos() {
    let t = a5_table();
    let i = t.irrep_index("Γ3").unwrap();
    for (k, c) in t.classes.iter().enumerate() {
        let theta = rotation_angle(&c.representative);
        assert!((t.values[i][k].re - (1.0 + 2.0 * theta.cos())).abs() < 1e-9, "class {}", c.name);
    }
    let exact = t.exact.as_ref().unwrap();
    assert_eq!(exact[i], vec![g(3, 0), g(-1, 0), g(0, 0), g(0, 1), g(1, -1)]);
}

#[test]
fn permutation_characters() {
    let t = a5_table();
    for (name, expected) in [
        ("icosahedron", [12, 0, 0, 2, 2]),
        ("dodecahedron", [20, 0, 2, 0, 0]),
        ("icosidodecahedron", [30, 2, 0, 0, 0]),
    ] {
        let s = catalog_solid(name).unwrap();
        let p = permutation_character(s.exact.as_ref().unwrap()).unwrap();
        assert_eq!(p, expected.map(|x| g(x, 0)).to_vec(), "{name}");
        // Burnside: a single orbit.
        let orbits: usize = expected.iter().zip(&t.classes).map(|(x, c)| *x as usize * c.size).sum::<usize>() / 60;
        assert_eq!(orbits, 1);
    }
}

fn assert_decomposition(name: &str, expected: [u64; 5]) {
    let d = solid_decomposition(name).unwrap();
    assert_eq!(counts(&d), expected, "{name}");
    let s = catalog_solid(name).unwrap();
    assert_eq!(d.dimension(a5_table()), 3 * s.vertices.len() as u64, "{name}");
}

#[test]
fn displacement_decompositions() {
    assert_decomposition("icosahedron", [1, 3, 1, 2, 3]);
    assert_decomposition("dodecahedron", [1, 3, 3, 4, 5]);
    assert_decomposition("icosidodecahedron", [1, 5, 5, 6, 7]);
    assert_decomposition("rhombic_triacontahedron", [2, 6, 4, 6, 8]);
    assert_decomposition("truncated_icosahedron", [3, 9, 9, 12, 15]);
    assert_decomposition("MS2_tiling_vertices", [8, 24, 22, 30, 38]);
    assert_eq!(solid_decomposition("icosahedron").unwrap().to_string(), "Γ1+3Γ3+Γ3p+2Γ4+3Γ5");
}

fn generic_seed(k: i64) -> Vec<GoldenNumber> {
    vec![GoldenNumber::from_ratios(k + 1, 1, 1, 3), GoldenNumber::from_ratios(2, 7, k, 5), GoldenNumber::from_ratios(1, 11, 0, 1)]
}

#[test]
fn free_orbits_give_multiples_of_the_regular_displacement() {
    for t in 1..=3u64 {
        let mut pts = Vec::new();
        for k in 0..t {
            pts.extend(orbit(&generic_seed(k as i64)).unwrap());
        }
        assert_eq!(pts.len() as u64, 60 * t);
        let d = displacement_decomposition(&pts).unwrap();
        assert_eq!(counts(&d), [3, 9, 9, 12, 15].map(|x| x * t).to_vec());
        // Float backend agrees.
        let pf: Vec<Vec<f64>> = pts.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect();
        assert_eq!(displacement_decomposition(&pf).unwrap(), d);
    }
}

#[test]
fn ms2_decomposition_depends_only_on_orbit_types() {
    let base = solid_decomposition("MS2_tiling_vertices").unwrap();
    let [s1, s2] = ms2_generic_seeds();
    for (a, b) in [(generic_seed(5), generic_seed(9)), (s2.clone(), s1.clone())] {
        let mut pts = orbit(&[g(0, 0), g(0, 1), g(1, 0)]).unwrap();
        pts.extend(orbit(&[g(1, 0), g(1, 0), g(1, 0)]).unwrap());
        pts.extend(orbit(&a).unwrap());
        pts.extend(orbit(&b).unwrap());
        assert_eq!(displacement_decomposition(&pts).unwrap(), base);
    }
}

#[test]
fn galois_conjugate_swaps_the_three_dimensional_irreps() {
    let t = a5_table();
    let exact = t.exact.as_ref().unwrap();
    let (i3, i3p) = (t.irrep_index("Γ3").unwrap(), t.irrep_index("Γ3p").unwrap());
    for name in ["icosahedron", "dodecahedron", "icosidodecahedron", "rhombic_triacontahedron"] {
        let s = catalog_solid(name).unwrap();
        let p = permutation_character(s.exact.as_ref().unwrap()).unwrap();
        let via_3p: Vec<GoldenNumber> = p.iter().zip(&exact[i3p]).map(|(a, b)| a.mul(b)).collect();
        let mut swapped = counts(&t.decompose(&via_3p).unwrap());
        swapped.swap(i3, i3p);
        assert_eq!(swapped, counts(&solid_decomposition(name).unwrap()), "{name}");
    }
}

#[test]
fn errors() {
    let lone = vec![vec![g(1, 0), g(0, 0), g(0, 0)]];
    assert_eq!(permutation_character(&lone).unwrap_err(), Error::NotInvariant);
    let t = character_table(GroupLabel::BinaryIcosahedral).unwrap();
    let mut chi = vec![Complex64::new(0.0, 0.0); t.classes.len()];
    chi[0] = Complex64::new(1.0, 0.0);
    assert!(matches!(t.decompose_complex(&chi), Err(Error::NonIntegralMultiplicity(_))));
    assert!("Dic1".parse::<GroupLabel>().is_err());
    assert!("C0".parse::<GroupLabel>().is_err());
    assert!("Q8".parse::<GroupLabel>().is_err());
    assert_eq!("Dic7".parse::<GroupLabel>().unwrap().order(), 28);
}

#[test]
fn csv_has_one_line_per_irrep() {
    let t = character_table(GroupLabel::BinaryOctahedral).unwrap();
    assert_eq!(t.to_csv().lines().count(), t.irreps.len() + 1);
}
