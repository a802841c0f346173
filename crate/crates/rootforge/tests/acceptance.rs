//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process fails if any criterion outside `KNOWN_RED` fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootforge::affine::{affine_translation, extend, fullerene_onion, FullereneShell};
use rootforge::clifford::Multivector;
use rootforge::cover::generate_pin;
use rootforge::hamilton::{enumerate_hamiltonian_cycles, named_graph, PolyGraph};
use rootforge::induce::{e8_from_h3, induce_4d, unreduced_split};
use rootforge::mckay::{coxeter_number_identity, leg_triple_correspondence, mckay_graph, AdeType, Family};
use rootforge::polyhedra::{caspar_klug, catalog_solid, orbit, OrbitGroup};
use rootforge::reptheory::{a5_table, character_table, displacement_decomposition, solid_decomposition, spinor_group, GroupLabel};
use rootforge::roots::{bivector_factorization, close_catalog, coxeter_element, exponents, highest_root, AnyRootSystem, RootSystem};
use rootforge::scalars::{dot, vec_sub, GoldenNumber, Scalar};

/// Numerical tolerance for float comparisons.
const EPS: f64 = 1e-9;
/// Maximal relative bond-length spread of a fullerene shell.
const BOND_SPREAD: f64 = 0.05;
/// Criteria that are implemented but currently fail; see the README.
const KNOWN_RED: [usize; 1] = [9];

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn g(a: i64, b: i64) -> GoldenNumber {
    GoldenNumber::from_ints(a, b)
}

fn exact(name: &str) -> RootSystem<GoldenNumber> {
    match close_catalog(name).unwrap() {
        AnyRootSystem::Exact(r) => r,
        AnyRootSystem::Float(_) => panic!("{name} is not exact"),
    }
}

fn root_counts() -> Outcome {
    let mut cases: Vec<(String, usize)> =
        [("A3", 12), ("B3", 18), ("H3", 30), ("D4", 24), ("F4", 48), ("H4", 120), ("E8", 240)]
            .iter()
            .map(|&(n, c)| (n.to_string(), c))
            .collect();
    cases.extend((2..=12).map(|n| (format!("I2({n})"), 2 * n)));
    for (name, expected) in &cases {
        let got = close_catalog(name).map_err(|e| format!("{name}: {e}"))?.len();
        ensure!(got == *expected, "{name}: {got} roots, expected {expected}");
    }
    Ok(format!("{} systems", cases.len()))
}

fn double_covers() -> Outcome {
    let pin = generate_pin(&exact("H3").roots).map_err(|e| e.to_string())?;
    let spin = pin.spin().map_err(|e| e.to_string())?;
    ensure!(pin.order() == 240, "|Pin(H3)| = {}", pin.order());
    ensure!(spin.order() == 120, "|Spin(H3)| = {}", spin.order());
    let two_i = spinor_group(GroupLabel::BinaryIcosahedral).map_err(|e| e.to_string())?;
    ensure!(two_i.order() == 120, "|2I| = {}", two_i.order());
    // The kernel of the cover is {±1}.
    let minus_one = Multivector::<GoldenNumber>::one(3).scale(&g(-1, 0));
    ensure!(spin.contains(&minus_one), "−1 ∉ Spin(H3)");
    let mut a5: Vec<usize> = a5_table().classes.iter().map(|c| c.size).collect();
    a5.sort_unstable();
    ensure!(a5 == [1, 12, 12, 15, 20], "A5 class sizes {a5:?}");
    let spin_classes = spin.conjugacy_classes().len();
    let t = character_table(GroupLabel::BinaryIcosahedral).map_err(|e| e.to_string())?;
    ensure!(t.classes.len() == 9 && spin_classes == 9, "2I classes: table {}, Spin(H3) {spin_classes}", t.classes.len());
    Ok("240/120, A5 1+15+20+12+12, 2I 9 classes".into())
}

fn spinor_induction() -> Outcome {
    let mut cases: Vec<(String, String, usize)> =
        vec![("A3".into(), "D4".into(), 24), ("B3".into(), "F4".into(), 48), ("H3".into(), "H4".into(), 120)];
    cases.extend((3..=8).map(|n| (format!("A1×I2({n})"), format!("I2({n})×I2({n})"), 4 * n)));
    for (from, to, count) in &cases {
        let ind = induce_4d(&close_catalog(from).map_err(|e| e.to_string())?).map_err(|e| format!("{from}: {e}"))?;
        ensure!(ind.label == *to, "{from} → {}, expected {to}", ind.label);
        ensure!(ind.system.len() == *count, "{from}: {} roots", ind.system.len());
        ind.system.check_axioms().map_err(|e| format!("{from}: {e}"))?;
    }
    Ok(format!("{} inductions, axioms exhaustive", cases.len()))
}

fn e8_construction() -> Outcome {
    let e8 = e8_from_h3().map_err(|e| e.to_string())?;
    ensure!(e8.system.len() == 240, "{} vectors", e8.system.len());
    let mut vals = std::collections::BTreeSet::new();
    for x in &e8.system.roots {
        for y in &e8.system.roots {
            let d = dot(x, y);
            vals.insert(d.to_integer().ok_or_else(|| format!("non-integral Gram entry {d}"))?.to_string());
        }
    }
    ensure!(vals.iter().all(|v| ["-2", "-1", "0", "1", "2"].contains(&v.as_str())), "Gram values {vals:?}");
    let (c, f) = (exact("E8").cartan_matrix(), e8.system.cartan_matrix());
    let p = &e8.cartan_permutation;
    for i in 0..8 {
        for j in 0..8 {
            ensure!(c[i][j] == f[p[i]][p[j]], "Cartan mismatch at ({i},{j})");
        }
    }
    let split = unreduced_split().map_err(|e| e.to_string())?;
    ensure!(split.cross_orthogonal && split.label == "H4×H4", "unreduced split {}", split.label);
    ensure!((split.even.len(), split.odd.len()) == (120, 120), "split sizes");
    Ok("240 roots, Cartan = E8, unreduced = H4⊥H4".into())
}

fn max_abs(m: &Multivector<f64>) -> f64 {
    m.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max)
}

fn coxeter_exponents() -> Outcome {
    let mut worst = 0.0f64;
    for (name, h, exps) in [("D4", 6, vec![1, 3, 3, 5]), ("F4", 12, vec![1, 5, 7, 11]), ("H4", 30, vec![1, 11, 19, 29])] {
        let rs = close_catalog(name).map_err(|e| e.to_string())?.to_f64();
        let rep = exponents(&rs).map_err(|e| e.to_string())?;
        ensure!(rep.h == h && rep.exponents == exps, "{name}: h {} exponents {:?}", rep.h, rep.exponents);
        let w = coxeter_element(&rs.simples).map_err(|e| e.to_string())?.versor.ok_or("no versor")?;
        let (factors, sign) = bivector_factorization(&w, h).map_err(|e| e.to_string())?;
        let mut prod = Multivector::one(4);
        for f in &factors {
            prod = prod.mul(&f.rotor);
        }
        let r = max_abs(&prod.scale(&(sign as f64)).sub(&w));
        ensure!(r <= EPS, "{name}: residual {r:e}");
        worst = worst.max(r);
    }
    for n in 3..=12 {
        let rep = exponents(&close_catalog(&format!("I2({n})")).map_err(|e| e.to_string())?.to_f64()).map_err(|e| e.to_string())?;
        ensure!(rep.h == n && rep.exponents == [1, n as u32 - 1], "I2({n}): {:?}", rep.exponents);
    }
    Ok(format!("D4/F4/H4/I2(3..12), residual {worst:.1e}"))
}

fn character_decompositions() -> Outcome {
    let cases: [(&str, [u64; 5]); 5] = [
        ("icosahedron", [1, 3, 1, 2, 3]),
        ("dodecahedron", [1, 3, 3, 4, 5]),
        ("icosidodecahedron", [1, 5, 5, 6, 7]),
        ("rhombic_triacontahedron", [2, 6, 4, 6, 8]),
        ("MS2_tiling_vertices", [8, 24, 22, 30, 38]),
    ];
    for (name, expected) in cases {
        let d = solid_decomposition(name).map_err(|e| format!("{name}: {e}"))?;
        ensure!(d.counts() == expected, "{name}: {d}");
    }
    // 60T free orbits: T copies of the regular displacement 3Γ1+9Γ3+9Γ3′+12Γ4+15Γ5.
    for t in 1..=3i64 {
        let mut pts = Vec::new();
        for k in 0..t {
            let seed = [GoldenNumber::from_ratios(k + 1, 1, 1, 3), GoldenNumber::from_ratios(2, 7, k, 5), GoldenNumber::from_ratios(1, 11, 0, 1)];
            pts.extend(orbit(&seed).map_err(|e| e.to_string())?);
        }
        ensure!(pts.len() as i64 == 60 * t, "orbit sizes {}", pts.len());
        let d = displacement_decomposition(&pts).map_err(|e| e.to_string())?;
        ensure!(d.counts() == [3, 9, 9, 12, 15].map(|x| x * t as u64), "60T with T={t}: {d}");
    }
    Ok("5 solids, free-orbit rule T = 1..3".into())
}

fn mckay() -> Outcome {
    let ade = |family, rank| AdeType { family, rank, affine: true };
    let mut cases = vec![("2T".to_string(), ade(Family::E, 6)), ("2O".into(), ade(Family::E, 7)), ("2I".into(), ade(Family::E, 8))];
    cases.extend((2..=8).map(|n| (format!("C{n}"), ade(Family::A, n - 1))));
    cases.extend((2..=6).map(|n| (format!("Dic{n}"), ade(Family::D, n + 2))));
    for (name, expected) in &cases {
        let label: GroupLabel = name.parse().map_err(|e: rootforge::Error| e.to_string())?;
        let mg = mckay_graph(label).map_err(|e| format!("{name}: {e}"))?;
        ensure!(mg.diagram == Some(*expected), "{name}: {:?}", mg.diagram);
        ensure!(mg.dims_in_kernel(), "{name}: dimension vector not in the kernel");
    }
    for (label, triple) in [
        (GroupLabel::BinaryTetrahedral, (12, 12, 12)),
        (GroupLabel::BinaryOctahedral, (18, 18, 18)),
        (GroupLabel::BinaryIcosahedral, (30, 30, 30)),
    ] {
        let got = coxeter_number_identity(label).map_err(|e| e.to_string())?;
        ensure!(got == triple, "{label:?}: {got:?}");
    }
    for (rs, legs, ty) in [
        ("A3", vec![2, 3, 3], "E6"),
        ("B3", vec![2, 3, 4], "E7"),
        ("H3", vec![2, 3, 5], "E8"),
        ("I2(5)", vec![5], "A5"),
        ("I2(6)", vec![6], "A6"),
        ("A1×I2(4)", vec![2, 2, 4], "D6"),
        ("A1×I2(5)", vec![2, 2, 5], "D7"),
    ] {
        let (orders, _, t) = leg_triple_correspondence(rs).map_err(|e| format!("{rs}: {e}"))?;
        ensure!(orders == legs && t.to_string() == ty, "{rs}: {orders:?} → {t}");
    }
    Ok(format!("{} groups, identities, 7 leg triples", cases.len()))
}

fn affine_extension() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for name in ["A3", "H3", "D4", "H4", "E8"] {
        let rs = exact(name);
        let ah = highest_root(&rs).map_err(|e| e.to_string())?.root;
        for _ in 0..50 {
            let lam: Vec<GoldenNumber> = (0..rs.dim)
                .map(|_| GoldenNumber::from_ratios(rng.random_range(-9..=9), rng.random_range(1..=5), rng.random_range(-9..=9), rng.random_range(1..=5)))
                .collect();
            let t = affine_translation(&ah, &lam).map_err(|e| e.to_string())?;
            ensure!(vec_sub(&t, &lam) == ah, "{name}: s∘s^aff is not translation by α_H");
        }
    }
    let ico = orbit(&[g(0, 0), g(0, 1), g(1, 0)]).map_err(|e| e.to_string())?;
    let generic = [g(1, 0), GoldenNumber::from_ratios(1, 3, 0, 1), GoldenNumber::from_ratios(2, 7, 1, 5)];
    let a = extend(&ico, &generic, OrbitGroup::Rotations).map_err(|e| e.to_string())?;
    ensure!(a.points.len() == a.max_cardinality && !a.degenerate, "generic: {} of {}", a.points.len(), a.max_cardinality);
    let mut axial = Vec::new();
    for k in 1..=3 {
        let t = [g(0, 0), g(0, k), g(k, 0)];
        let b = extend(&ico, &t, OrbitGroup::Rotations).map_err(|e| e.to_string())?;
        ensure!(b.points.len() < b.max_cardinality && b.degenerate, "axis ×{k}: {} of {}", b.points.len(), b.max_cardinality);
        axial.push(b.points.len());
    }
    Ok(format!("identity on 250 probes, generic {}, axial {axial:?}", a.points.len()))
}

fn check_shells(shells: &[FullereneShell]) -> Result<(), String> {
    for (i, s) in shells.iter().enumerate() {
        let mut deg = vec![0; s.atoms.len()];
        for &(a, b) in &s.bonds {
            deg[a] += 1;
            deg[b] += 1;
        }
        ensure!(deg.iter().all(|&d| d == 3), "shell {i} is not trivalent");
        ensure!(s.bond_spread <= BOND_SPREAD, "shell {i}: bond spread {:.3}", s.bond_spread);
    }
    Ok(())
}

fn fullerene_onions() -> Outcome {
    let c60 = fullerene_onion("C60", 3).map_err(|e| format!("C60: {e}"))?;
    let counts: Vec<usize> = c60.shells.iter().map(|s| s.atoms.len()).collect();
    ensure!(counts == [60, 240, 540], "C60 shells {counts:?}");
    check_shells(&c60.shells)?;
    for st in &c60.steps {
        ensure!(st.refined.len() == 1, "C60 step {}: {} surviving translations", st.step, st.refined.len());
    }
    let c80 = fullerene_onion("C80", 3).map_err(|e| format!("C60 {counts:?} ok; C80: {e}"))?;
    let counts80: Vec<usize> = c80.shells.iter().map(|s| s.atoms.len()).collect();
    ensure!(counts80 == [80, 180, 320], "C80 shells {counts80:?}");
    check_shells(&c80.shells)?;
    for st in &c80.steps {
        ensure!(st.refined.len() == 1, "C80 step {}: {} surviving translations", st.step, st.refined.len());
    }
    Ok(format!("C60 {counts:?}, C80 {counts80:?}"))
}

fn caspar_klug_table() -> Outcome {
    let mut n = 0;
    for h in 0..=5u64 {
        for k in 0..=5u64 {
            if h + k == 0 {
                continue;
            }
            let t = h * h + h * k + k * k;
            let got = caspar_klug(h, k).map_err(|e| e.to_string())?;
            ensure!(got == (t, 60 * t, 12, 10 * (t - 1)), "({h},{k}): {got:?}");
            n += 1;
        }
    }
    Ok(format!("{n} lattice vectors"))
}

/// Undirected Hamiltonian cycles by trying every ordering of vertices 1..n.
fn brute_force_cycles(g: &PolyGraph) -> u64 {
    fn go(g: &PolyGraph, rest: &mut Vec<usize>, k: usize, count: &mut u64) {
        if k == rest.len() {
            let ok = std::iter::once(0).chain(rest.iter().copied()).chain(std::iter::once(0)).collect::<Vec<_>>().windows(2).all(|w| g.has_edge(w[0], w[1]));
            *count += u64::from(ok);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            let prev = if k == 0 { 0 } else { rest[k - 1] };
            if g.has_edge(prev, rest[k]) {
                go(g, rest, k + 1, count);
            }
            rest.swap(k, i);
        }
    }
    let mut rest: Vec<usize> = (1..g.len()).collect();
    let mut count = 0;
    go(g, &mut rest, 0, &mut count);
    count / 2
}

/// The dodecahedron with antipodal vertices identified.
fn antipodal_quotient(name: &str) -> Result<PolyGraph, String> {
    let s = catalog_solid(name).map_err(|e| e.to_string())?;
    let n = s.vertices.len();
    let anti: Vec<usize> = (0..n)
        .map(|i| (0..n).find(|&j| (0..3).all(|k| (s.vertices[i][k] + s.vertices[j][k]).abs() < 1e-6)).expect("centrally symmetric"))
        .collect();
    let mut rep = vec![usize::MAX; n];
    let mut m = 0;
    for i in 0..n {
        if rep[i] == usize::MAX {
            rep[i] = m;
            rep[anti[i]] = m;
            m += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = s.edges.iter().map(|&(a, b)| (rep[a].min(rep[b]), rep[a].max(rep[b]))).collect();
    edges.sort_unstable();
    edges.dedup();
    PolyGraph::from_edges(m, &edges).map_err(|e| e.to_string())
}

fn hamiltonian_cycles() -> Outcome {
    let mut graphs: Vec<(String, PolyGraph)> = Vec::new();
    for name in ["tetrahedron", "cube", "petersen"] {
        graphs.push((name.into(), named_graph(name).map_err(|e| e.to_string())?));
    }
    graphs.push(("dodecahedron/±1".into(), antipodal_quotient("dodecahedron")?));
    graphs.push(("icosahedron/±1".into(), antipodal_quotient("icosahedron")?));
    // Pentagonal prism: one pentagonal face ring of the dodecahedron with its neighbours' ring.
    let prism: Vec<(usize, usize)> = (0..5).flat_map(|i| [(i, (i + 1) % 5), (5 + i, 5 + (i + 1) % 5), (i, 5 + i)]).collect();
    graphs.push(("pentagonal prism".into(), PolyGraph::from_edges(10, &prism).map_err(|e| e.to_string())?));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    while graphs.len() < 16 {
        let n = rng.random_range(5..=10);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.random_bool(0.45)).collect();
        if let Ok(gr) = PolyGraph::from_edges(n, &edges) {
            graphs.push((format!("random n={n}"), gr));
        }
    }
    let mut summary = Vec::new();
    for (name, gr) in &graphs {
        ensure!(gr.len() <= 10, "{name} has {} vertices", gr.len());
        let got = enumerate_hamiltonian_cycles(gr, false).map_err(|e| format!("{name}: {e}"))?.count;
        let oracle = brute_force_cycles(gr);
        ensure!(got == oracle, "{name}: {got} cycles, oracle {oracle}");
        if !name.starts_with("random") {
            summary.push(format!("{name} {got}"));
        }
    }
    Ok(format!("{} graphs; {}", graphs.len(), summary.join(", ")))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let rg = |rng: &mut ChaCha8Rng| GoldenNumber::from_ratios(rng.random_range(-9..=9), rng.random_range(1..=4), rng.random_range(-9..=9), rng.random_range(1..=4));
    for _ in 0..200 {
        let (x, y, z) = (rg(&mut rng), rg(&mut rng), rg(&mut rng));
        ensure!(x.mul(&y.add(&z)) == x.mul(&y).add(&x.mul(&z)), "distributivity");
        ensure!(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), "field associativity");
        if !x.is_zero() {
            ensure!(x.mul(&x.inv().unwrap()) == GoldenNumber::one(), "inverse");
        }
    }
    for _ in 0..60 {
        let dim = rng.random_range(1..=5);
        let mv = |rng: &mut ChaCha8Rng| Multivector::from_coeffs(dim, (0..1 << dim).map(|_| rg(rng)).collect()).unwrap();
        let (a, b, c) = (mv(&mut rng), mv(&mut rng), mv(&mut rng));
        ensure!(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), "Clifford associativity in dim {dim}");
        ensure!(a.mul(&b).reverse() == b.reverse().mul(&a.reverse()), "reverse");
        ensure!(a.mul(&b).involute() == a.involute().mul(&b.involute()), "involute");
        let vs: Vec<Vec<GoldenNumber>> = (0..3).map(|k| (0..dim).map(|i| if i == k % dim { g(1, 1) } else { rg(&mut rng) }).collect()).collect();
        let v = Multivector::product_of_vectors(&vs).unwrap();
        let x = Multivector::vector(&(0..dim).map(|_| rg(&mut rng)).collect::<Vec<_>>()).unwrap();
        if !v.norm2().is_zero() {
            ensure!(v.sandwich(&x).unwrap().norm2() == x.norm2(), "sandwich norm in dim {dim}");
        }
    }
    for name in ["A3", "B3", "H3", "D4", "F4", "H4", "E8", "D6", "A4", "I2(7)", "A1×I2(5)"] {
        close_catalog(name).map_err(|e| e.to_string())?.check_axioms().map_err(|e| format!("{name}: {e}"))?;
    }
    let commands: &[&[&str]] = &[
        &["roots", "--type", "H3"],
        &["induce", "--from", "A3"],
        &["exponents", "--type", "F4", "--verbose"],
        &["affine", "--group", "H3", "--axis", "2fold", "--len", "1"],
        &["solids", "--name", "icosidodecahedron"],
        &["chars", "--solid", "dodecahedron"],
        &["mckay", "--group", "2I", "--identity"],
        &["hamilton", "--graph", "cube", "--quotient"],
    ];
    for args in commands {
        let run = || {
            let mut out = Vec::new();
            let code = rootforge::cli::dispatch(std::iter::once("rootforge").chain(args.iter().copied()), &mut out, &mut Vec::new());
            (code, out)
        };
        let (a, b) = (run(), run());
        ensure!(a.0 == 0 && a == b, "{args:?} not deterministic");
    }
    Ok("field, Clifford, closure axioms, CLI determinism".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("root counts", root_counts),
        ("double covers", double_covers),
        ("spinor induction", spinor_induction),
        ("E8 construction", e8_construction),
        ("exponents", coxeter_exponents),
        ("character decompositions", character_decompositions),
        ("McKay correspondence", mckay),
        ("affine extension", affine_extension),
        ("fullerene onions", fullerene_onions),
        ("Caspar-Klug", caspar_klug_table),
        ("Hamiltonian cycles", hamiltonian_cycles),
        ("property suites", property_suites),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {k:>2} PASS  {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                let note = if KNOWN_RED.contains(&k) { " [known]" } else { "" };
                println!("criterion {k:>2} FAIL  {name}: {why}{note} ({secs:.1}s)");
                if !KNOWN_RED.contains(&k) {
                    unexpected.push(k);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
