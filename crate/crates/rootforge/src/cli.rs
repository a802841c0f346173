//! Command-line front end. `dispatch` parses arguments, runs one subcommand
//! and writes its output; exit codes are 0 (success), 1 (domain error) and
//! 2 (usage error).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::affine::{self, FoldingPair};
use crate::cover::{pin_of, summarize_pinor_classes};
use crate::error::{Error, Result};
use crate::hamilton::{self, PolyGraph};
use crate::induce;
use crate::mckay;
use crate::polyhedra::{self, OrbitGroup, Solid};
use crate::reptheory::{self, GroupLabel};
use crate::roots::{
    self, bivector_factorization, close_catalog, coxeter_element, coxeter_matrix, diagram_dot, highest_root,
    AnyRootSystem, RootSystem,
};
use crate::scalars::{vec_to_f64, GoldenNumber, Scalar};

#[derive(Parser, Debug)]
#[command(name = "rootforge", version, about = "Root systems, versor groups, icosahedral representations and point arrays")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; each subcommand supports a subset.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Scalar backend. Defaults to exact where the catalog entry is exact.
    #[arg(long, global = true, value_enum)]
    backend: Option<Backend>,
    /// Float values below this magnitude are printed as 0.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps: f64,
    /// Add a Unix timestamp to JSON output.
    #[arg(long, global = true)]
    stamp: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Close a catalog root system (json, csv Cartan matrix, dot diagram).
    Roots(RootsArgs),
    /// Induce a 4D (or 2D) root system from the spinors of a 3D (or 2D) one.
    Induce(InduceArgs),
    /// E8 from the H3 pinors under the reduced inner product.
    E8(E8Args),
    /// Coxeter number and exponents.
    Exponents(ExponentsArgs),
    /// Affine reflections, extended point arrays and folded affine roots.
    Affine(AffineArgs),
    /// Nested fullerene cages (json, csv atoms, off meshes).
    Fullerene(FullereneArgs),
    /// Icosahedral solids and Caspar–Klug numbers (json, csv, off).
    Solids(SolidsArgs),
    /// Character tables, displacement decompositions and Pin/Spin classes.
    Chars(CharsArgs),
    /// McKay graphs, the Coxeter-number identity and leg triples.
    Mckay(McKayArgs),
    /// Hamiltonian cycles and paths.
    Hamilton(HamiltonArgs),
}

#[derive(Args, Debug)]
struct RootsArgs {
    /// Catalog name: A1, I2(n), H2, A3, B3, H3, A4, D4, D6, F4, H4, E8, A1×I2(n).
    #[arg(long = "type")]
    ty: String,
    /// Check the root-system axioms exhaustively.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct InduceArgs {
    /// 3D or rank-2 catalog system.
    #[arg(long)]
    from: String,
}

#[derive(Args, Debug)]
struct E8Args {
    /// Fail unless the result has 240 roots and the catalog E8 Cartan matrix.
    #[arg(long)]
    verify: bool,
    /// Also report the split under the unreduced form.
    #[arg(long)]
    split: bool,
}

#[derive(Args, Debug)]
struct ExponentsArgs {
    #[arg(long = "type")]
    ty: String,
    /// Add degrees, eigenplanes and (in 4D) the rotor factorization.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct AffineArgs {
    /// Root system whose highest root defines the affine reflection.
    #[arg(long, default_value = "H3")]
    group: String,
    /// Comma-separated point to reflect and translate.
    #[arg(long)]
    lambda: Option<String>,
    /// Extend a seed along a symmetry axis: 5fold, 3fold or 2fold.
    #[arg(long)]
    axis: Option<String>,
    /// Translation as a multiple of the axis vector (0,τ,1), (1,1,1) or (1,0,0).
    #[arg(long, default_value = "1")]
    len: String,
    /// Seed solid for the extension.
    #[arg(long, default_value = "icosahedron")]
    seed: String,
    /// Use the full icosahedral group (order 120) instead of the rotations.
    #[arg(long)]
    full: bool,
    /// Project the affine root of a folding pair: A4->H2, D6->H3 or E8->H4.
    #[arg(long)]
    fold: Option<String>,
}

#[derive(Args, Debug)]
struct FullereneArgs {
    /// C60 or C80.
    #[arg(long, default_value = "C60")]
    start: String,
    #[arg(long, default_value_t = 3)]
    shells: usize,
    /// Restrict csv/off output to one shell (0-based).
    #[arg(long)]
    shell: Option<usize>,
    /// Include atom coordinates in JSON.
    #[arg(long)]
    coords: bool,
}

#[derive(Args, Debug)]
struct SolidsArgs {
    /// Catalog solid.
    #[arg(long)]
    name: Option<String>,
    /// Replace the solid by its dual.
    #[arg(long)]
    dual: bool,
    /// List the catalog.
    #[arg(long)]
    list: bool,
    /// Caspar–Klug counts for `h,k`.
    #[arg(long = "caspar-klug")]
    caspar_klug: Option<String>,
    /// Caspar–Klug table for all h, k ≤ N.
    #[arg(long = "ck-table")]
    ck_table: Option<u64>,
}

#[derive(Args, Debug)]
struct CharsArgs {
    /// A5, 2T, 2O, 2I, Cn or Dicn.
    #[arg(long)]
    group: Option<String>,
    /// Displacement decomposition of a catalog solid.
    #[arg(long)]
    solid: Option<String>,
    /// Pin/Spin groups and conjugacy classes of a root system.
    #[arg(long)]
    pin: Option<String>,
}

#[derive(Args, Debug)]
struct McKayArgs {
    /// 2T, 2O, 2I, Cn or Dicn.
    #[arg(long)]
    group: Option<String>,
    /// Check Σ dims = h = number of roots of the 3D partner.
    #[arg(long)]
    identity: bool,
    /// Rotation orders of I2(n), A1×I2(n), A3, B3 or H3 against diagram legs.
    #[arg(long)]
    legs: Option<String>,
}

#[derive(Args, Debug)]
struct HamiltonArgs {
    /// K4, cube, petersen, or a catalog solid.
    #[arg(long)]
    graph: Option<String>,
    /// Graph file: JSON adjacency or `u v` edge lines.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Use the dual of the named solid.
    #[arg(long)]
    dual: bool,
    /// Count orbits under the automorphisms.
    #[arg(long)]
    quotient: bool,
    /// Quotient by the full automorphism group found by search.
    #[arg(long = "all-automorphisms")]
    all_automorphisms: bool,
    /// Count Hamiltonian paths from this vertex instead of cycles.
    #[arg(long)]
    start: Option<usize>,
    /// Required end vertex of the paths.
    #[arg(long)]
    end: Option<usize>,
    /// Vertex cap.
    #[arg(long, default_value_t = hamilton::DEFAULT_VERTEX_CAP)]
    cap: usize,
}

/// Rendered output of a subcommand in every format it supports.
#[derive(Default)]
struct Rendered {
    json: Value,
    csv: Option<String>,
    dot: Option<String>,
    off: Option<String>,
}

impl Rendered {
    fn json(json: Value) -> Self {
        Rendered { json, ..Default::default() }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = std::result::Result<Rendered, Failure>;

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                0
            } else {
                let _ = err.write_all(text.as_bytes());
                2
            };
        }
    };
    configure_threads();
    if !(cli.eps >= 0.0 && cli.eps.is_finite()) {
        let _ = writeln!(err, "error: --eps must be a nonnegative number");
        return 2;
    }
    let fmt = Fmt { eps: cli.eps };
    let result = match &cli.cmd {
        Cmd::Roots(a) => cmd_roots(a, cli.backend, &fmt),
        Cmd::Induce(a) => cmd_induce(a, cli.backend, &fmt),
        Cmd::E8(a) => cmd_e8(a, &fmt),
        Cmd::Exponents(a) => cmd_exponents(a, cli.backend, &fmt),
        Cmd::Affine(a) => cmd_affine(a, cli.backend, &fmt),
        Cmd::Fullerene(a) => cmd_fullerene(a, &fmt),
        Cmd::Solids(a) => cmd_solids(a, &fmt),
        Cmd::Chars(a) => cmd_chars(a, &fmt),
        Cmd::Mckay(a) => cmd_mckay(a),
        Cmd::Hamilton(a) => cmd_hamilton(a),
    };
    let rendered = match result {
        Ok(r) => r,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            return 2;
        }
        Err(Failure::Domain(e)) => {
            let v = json!({ "error": error_kind(&e), "message": e.to_string() });
            let _ = writeln!(err, "{v}");
            return 1;
        }
    };
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = rendered.json;
            if cli.stamp {
                if let Value::Object(m) = &mut v {
                    let now = std::time::SystemTime::now()
                        .duration_since(std::time::UNIX_EPOCH)
                        .map(|d| d.as_secs())
                        .unwrap_or(0);
                    m.insert("stamp".into(), json!(now));
                }
            }
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
        f => {
            let (name, text) = match f {
                Format::Csv => ("csv", rendered.csv),
                Format::Dot => ("dot", rendered.dot),
                Format::Off => ("off", rendered.off),
                Format::Json => unreachable!(),
            };
            match text {
                Some(t) => t,
                None => {
                    let _ = writeln!(err, "error: this subcommand has no {name} output");
                    return 2;
                }
            }
        }
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, text.as_bytes()),
        None => out.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": "Io", "message": e.to_string() }));
            1
        }
    }
}

/// Caps rayon's global pool at `ROOTFORGE_THREADS` when set.
fn configure_threads() {
    if let Some(n) = std::env::var("ROOTFORGE_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // The global pool can be built once per process; later calls keep it.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch(..) => "DimensionMismatch",
        Error::ZeroVector => "ZeroVector",
        Error::DivisionByZero => "DivisionByZero",
        Error::NotAVersor => "NotAVersor",
        Error::NotUnitBivector => "NotUnitBivector",
        Error::NotUnitRotor => "NotUnitRotor",
        Error::UnknownName(_) => "UnknownName",
        Error::ClosureBudgetExceeded(_) => "ClosureBudgetExceeded",
        Error::NonUnitSimples => "NonUnitSimples",
        Error::EigensolverFailure(_) => "EigensolverFailure",
        Error::FactorizationFailure(_) => "FactorizationFailure",
        Error::NotIrreducible => "NotIrreducible",
        Error::UnrecognizedType(_) => "UnrecognizedType",
        Error::AxiomViolation(_) => "AxiomViolation",
        Error::ReducedFormDegenerate => "ReducedFormDegenerate",
        Error::FoldingNotFound(_) => "FoldingNotFound",
        Error::NoValidShell { .. } => "NoValidShell",
        Error::NoFaces => "NoFaces",
        Error::ValidationFailure(_) => "ValidationFailure",
        Error::NotInvariant => "NotInvariant",
        Error::NonIntegralMultiplicity(_) => "NonIntegralMultiplicity",
        Error::IdentityViolation(_) => "IdentityViolation",
        Error::NoMatch(_) => "NoMatch",
        Error::GraphTooLarge(..) => "GraphTooLarge",
        Error::Disconnected => "Disconnected",
        Error::InvalidInput(_) => "InvalidInput",
    }
}

/// Number formatting: exact scalars as `p/q+r/s τ`, floats rounded to 12
/// significant digits with magnitudes below `eps` printed as 0.
struct Fmt {
    eps: f64,
}

impl Fmt {
    fn round(&self, x: f64) -> f64 {
        if x.abs() < self.eps || x == 0.0 {
            return 0.0;
        }
        format!("{x:.11e}").parse().unwrap_or(x)
    }

    fn f(&self, x: f64) -> Value {
        serde_json::Number::from_f64(self.round(x)).map_or(Value::Null, Value::Number)
    }

    fn ftext(&self, x: f64) -> String {
        format!("{}", self.round(x))
    }

    fn s<S: Scalar>(&self, x: &S) -> Value {
        if S::EXACT {
            Value::String(x.to_string())
        } else {
            self.f(x.to_f64())
        }
    }

    fn stext<S: Scalar>(&self, x: &S) -> String {
        if S::EXACT {
            x.to_string()
        } else {
            self.ftext(x.to_f64())
        }
    }

    fn vec<S: Scalar>(&self, v: &[S]) -> Value {
        Value::Array(v.iter().map(|x| self.s(x)).collect())
    }

    fn vecs<S: Scalar>(&self, vs: &[Vec<S>]) -> Value {
        Value::Array(vs.iter().map(|v| self.vec(v)).collect())
    }

    fn fvec(&self, v: &[f64]) -> Value {
        Value::Array(v.iter().map(|&x| self.f(x)).collect())
    }

    fn csv<S: Scalar>(&self, rows: &[Vec<S>]) -> String {
        let mut s = String::new();
        for r in rows {
            let cells: Vec<String> = r.iter().map(|x| self.stext(x)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

/// Catalog system on the requested backend.
fn load_system(name: &str, backend: Option<Backend>) -> Result<AnyRootSystem> {
    let rs = close_catalog(name)?;
    match (backend, &rs) {
        (Some(Backend::Float), AnyRootSystem::Exact(r)) => Ok(AnyRootSystem::Float(r.to_f64())),
        (Some(Backend::Exact), AnyRootSystem::Float(_)) => {
            Err(Error::InvalidInput(format!("{name} needs the float backend")))
        }
        _ => Ok(rs),
    }
}

fn backend_name(rs: &AnyRootSystem) -> &'static str {
    if rs.is_exact() {
        "exact"
    } else {
        "float"
    }
}

fn root_report<S: Scalar>(rs: &RootSystem<S>, fmt: &Fmt, check: bool) -> Result<(Value, String, String)> {
    if check {
        rs.check_axioms()?;
    }
    let label = roots::recognize(&rs.roots)?;
    let cm = coxeter_matrix(&rs.simples);
    let cartan = rs.cartan_matrix();
    let hr = highest_root(rs).ok();
    let v = json!({
        "label": label,
        "dim": rs.dim,
        "rank": rs.rank(),
        "count": rs.len(),
        "axioms_checked": check,
        "simples": fmt.vecs(&rs.simples),
        "cartan": fmt.vecs(&cartan),
        "coxeter_matrix": cm,
        "highest_root": hr.as_ref().map(|h| json!({ "root": fmt.vec(&h.root), "coefficients": fmt.vec(&h.coefficients) })),
        "roots": fmt.vecs(&rs.roots),
    });
    Ok((v, fmt.csv(&cartan), diagram_dot(&label, &cm)))
}

fn cmd_roots(a: &RootsArgs, backend: Option<Backend>, fmt: &Fmt) -> CmdResult {
    let rs = load_system(&a.ty, backend)?;
    let (mut v, csv, dot) = match &rs {
        AnyRootSystem::Exact(r) => root_report(r, fmt, a.check)?,
        AnyRootSystem::Float(r) => root_report(r, fmt, a.check)?,
    };
    v["name"] = json!(rs.name().unwrap_or(&a.ty));
    v["backend"] = json!(backend_name(&rs));
    Ok(Rendered { json: v, csv: Some(csv), dot: Some(dot), off: None })
}

/// Gram matrix of the simple roots.
fn gram_csv<S: Scalar>(simples: &[Vec<S>], fmt: &Fmt) -> String {
    let gram: Vec<Vec<S>> =
        simples.iter().map(|x| simples.iter().map(|y| crate::scalars::dot(x, y)).collect()).collect();
    fmt.csv(&gram)
}

fn cmd_induce(a: &InduceArgs, backend: Option<Backend>, fmt: &Fmt) -> CmdResult {
    let rs = load_system(&a.from, backend)?;
    let ind = if rs.dim() == 3 { induce::induce_4d(&rs)? } else { induce::induce_2d_selfdual(&rs)? };
    let (roots_v, simples_v, csv) = match &ind.system {
        AnyRootSystem::Exact(r) => (fmt.vecs(&r.roots), fmt.vecs(&r.simples), gram_csv(&r.simples, fmt)),
        AnyRootSystem::Float(r) => (fmt.vecs(&r.roots), fmt.vecs(&r.simples), gram_csv(&r.simples, fmt)),
    };
    let v = json!({
        "from": rs.name().unwrap_or(&a.from),
        "from_label": rs.recognize()?,
        "label": ind.label,
        "backend": backend_name(&ind.system),
        "dim": ind.system.dim(),
        "count": ind.system.len(),
        "simples": simples_v,
        "roots": roots_v,
    });
    Ok(Rendered { json: v, csv: Some(csv), ..Default::default() })
}

fn cmd_e8(a: &E8Args, fmt: &Fmt) -> CmdResult {
    let c = induce::e8_from_h3()?;
    let gram = induce::e8_simple_gram(&c);
    let entries_ok = gram.iter().flatten().all(|x| [-2, -1, 0, 1, 2].contains(x));
    let verified = c.system.len() == 240 && c.label == "E8" && entries_ok && !c.cartan_permutation.is_empty();
    if a.verify && !verified {
        return Err(Error::IdentityViolation(format!("E8 check failed: {} roots, label {}", c.system.len(), c.label)).into());
    }
    let mut v = json!({
        "count": c.system.len(),
        "label": c.label,
        "scheme": c.scheme,
        "attempts": c.attempts,
        "cartan_permutation": c.cartan_permutation,
        "simple_gram": gram,
        "verified": verified,
        "simples": fmt.vecs(&c.system.simples),
        "roots": fmt.vecs(&c.system.roots),
    });
    if a.split {
        let s = induce::unreduced_split()?;
        v["unreduced_split"] = json!({
            "label": s.label,
            "cross_orthogonal": s.cross_orthogonal,
            "even": { "count": s.even.len(), "label": s.even.name },
            "odd": { "count": s.odd.len(), "label": s.odd.name },
        });
    }
    let csv = gram.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") + "\n").collect();
    Ok(Rendered { json: v, csv: Some(csv), ..Default::default() })
}

fn exponents_of<S: Scalar>(rs: &RootSystem<S>, verbose: bool, fmt: &Fmt) -> Result<Value> {
    let rep = roots::exponents(rs)?;
    let mut v = json!({ "h": rep.h, "exponents": rep.exponents });
    if !verbose {
        return Ok(v);
    }
    v["degrees"] = json!(rep.degrees);
    v["eigenplanes"] = Value::Array(
        rep.eigenplanes.iter().map(|(b, m)| json!({ "bivector": fmt.fvec(b), "exponent": m })).collect(),
    );
    if rs.dim == 4 {
        let ce = coxeter_element(&rs.simples)?;
        let w = ce.versor.ok_or_else(|| Error::FactorizationFailure("no versor".into()))?;
        let (factors, sign) = bivector_factorization(&w, rep.h)?;
        let mut prod = crate::clifford::Multivector::<f64>::one(4);
        for f in &factors {
            prod = prod.mul(&f.rotor);
        }
        let prod = prod.scale(&f64::from(sign));
        let residual = w.coeffs().iter().zip(prod.coeffs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        v["factorization"] = json!({
            "sign": sign,
            "residual": fmt.f(residual),
            "factors": factors.iter().map(|f| json!({
                "angle": fmt.f(f.angle),
                "exponent": f.exponent,
                "bivector": fmt.fvec(f.bivector.coeffs()),
            })).collect::<Vec<_>>(),
        });
    }
    Ok(v)
}

fn cmd_exponents(a: &ExponentsArgs, backend: Option<Backend>, fmt: &Fmt) -> CmdResult {
    let rs = load_system(&a.ty, backend)?;
    let v = match &rs {
        AnyRootSystem::Exact(r) => exponents_of(r, a.verbose, fmt)?,
        AnyRootSystem::Float(r) => exponents_of(r, a.verbose, fmt)?,
    };
    Ok(Rendered::json(v))
}

fn parse_list<S: std::str::FromStr<Err = Error>>(s: &str) -> Result<Vec<S>> {
    s.split(',').map(|x| x.trim().parse()).collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("not a number: {x:?}"))))
        .collect()
}

fn affine_section<S: Scalar>(rs: &RootSystem<S>, lambda: Option<Vec<S>>, fmt: &Fmt) -> Result<Value> {
    let hr = highest_root(rs)?;
    let mut simples = rs.simples.clone();
    simples.push(crate::scalars::vec_neg(&hr.root));
    let extended = roots::cartan_matrix(&simples);
    let mut v = json!({
        "highest_root": fmt.vec(&hr.root),
        "coefficients": fmt.vec(&hr.coefficients),
        "affine_cartan": fmt.vecs(&extended),
    });
    if let Some(l) = lambda {
        if l.len() != rs.dim {
            return Err(Error::DimensionMismatch(rs.dim, l.len()));
        }
        v["lambda"] = fmt.vec(&l);
        v["affine_reflection"] = fmt.vec(&affine::affine_reflection(&hr.root, &l)?);
        v["translation"] = fmt.vec(&affine::affine_translation(&hr.root, &l)?);
    }
    Ok(v)
}

fn axis_vector(name: &str) -> Result<Vec<GoldenNumber>> {
    let g = GoldenNumber::from_ints;
    match name {
        "5fold" | "5" => Ok(vec![g(0, 0), g(0, 1), g(1, 0)]),
        "3fold" | "3" => Ok(vec![g(1, 0), g(1, 0), g(1, 0)]),
        "2fold" | "2" => Ok(vec![g(1, 0), g(0, 0), g(0, 0)]),
        other => Err(Error::UnknownName(other.into())),
    }
}

fn cmd_affine(a: &AffineArgs, backend: Option<Backend>, fmt: &Fmt) -> CmdResult {
    let rs = load_system(&a.group, backend)?;
    let mut v = match &rs {
        AnyRootSystem::Exact(r) => {
            let l = a.lambda.as_deref().map(parse_list::<GoldenNumber>).transpose()?;
            affine_section(r, l, fmt)?
        }
        AnyRootSystem::Float(r) => {
            let l = a.lambda.as_deref().map(parse_f64_list).transpose()?;
            affine_section(r, l, fmt)?
        }
    };
    v["group"] = json!(rs.name().unwrap_or(&a.group));
    let mut csv = None;
    if let Some(ax) = &a.axis {
        if rs.dim() != 3 || !rs.recognize()?.starts_with('H') {
            return Err(usage("--axis extends under the icosahedral group; use --group H3"));
        }
        let seed = polyhedra::catalog_solid(&a.seed)?
            .exact
            .ok_or_else(|| Error::InvalidInput(format!("{} has no exact vertices", a.seed)))?;
        let len: GoldenNumber = a.len.parse()?;
        let t: Vec<GoldenNumber> = axis_vector(ax)?.iter().map(|x| x.mul(&len)).collect();
        let group = if a.full { OrbitGroup::Full } else { OrbitGroup::Rotations };
        let arr = if backend == Some(Backend::Float) {
            if a.full {
                return Err(usage("--full needs the exact backend"));
            }
            let pa = affine::extend_f64(&seed.iter().map(|p| vec_to_f64(p)).collect::<Vec<_>>(), &vec_to_f64(&t))?;
            csv = Some(fmt.csv(&pa.points));
            json!({
                "group": pa.group, "seed": a.seed, "seed_len": pa.seed_len, "translation": fmt.vec(&pa.translation),
                "count": pa.points.len(), "max_cardinality": pa.max_cardinality, "degenerate": pa.degenerate,
                "points": fmt.vecs(&pa.points),
            })
        } else {
            let pa = affine::extend(&seed, &t, group)?;
            csv = Some(fmt.csv(&pa.points));
            json!({
                "group": pa.group, "seed": a.seed, "seed_len": pa.seed_len, "translation": fmt.vec(&pa.translation),
                "count": pa.points.len(), "max_cardinality": pa.max_cardinality, "degenerate": pa.degenerate,
                "points": fmt.vecs(&pa.points),
            })
        };
        v["extension"] = arr;
    }
    if let Some(pair) = &a.fold {
        let p = affine::project_affine_root(FoldingPair::parse(pair)?)?;
        let (big, small) = p.pair.names();
        v["folding"] = json!({
            "from": big,
            "to": small,
            "target": p.folding.target,
            "tau_scaled": p.folding.tau_scaled,
            "input_coefficients": p.input_coefficients,
            "coefficients": fmt.vec(&p.coefficients),
            "vector": fmt.vec(&p.vector),
            "axis": p.axis,
        });
    }
    Ok(Rendered { json: v, csv, ..Default::default() })
}

fn shell_json(i: usize, s: &affine::FullereneShell, coords: bool, fmt: &Fmt) -> Value {
    let radius = s.atoms.iter().map(|p| (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()).fold(0.0, f64::max);
    let mut v = json!({
        "index": i,
        "atoms": s.atoms.len(),
        "bonds": s.bonds.len(),
        "faces": s.faces.len(),
        "pentagons": s.faces.iter().filter(|f| f.len() == 5).count(),
        "hexagons": s.faces.iter().filter(|f| f.len() == 6).count(),
        "t": s.t,
        "bond_spread": fmt.f(s.bond_spread),
        "max_angle_deviation_deg": fmt.f(s.max_angle_deviation_deg),
        "translation": s.translation.map(|t| fmt.f(t)),
        "radius": fmt.f(radius),
    });
    if coords {
        v["coordinates"] = Value::Array(s.atoms.iter().map(|p| fmt.fvec(p)).collect());
    }
    v
}

fn cmd_fullerene(a: &FullereneArgs, fmt: &Fmt) -> CmdResult {
    let o = affine::fullerene_onion(&a.start, a.shells)?;
    let selected: Vec<(usize, &affine::FullereneShell)> = match a.shell {
        Some(k) => vec![(k, o.shells.get(k).ok_or_else(|| usage(format!("--shell {k} out of range")))?)],
        None => o.shells.iter().enumerate().collect(),
    };
    let v = json!({
        "start": o.start,
        "shells": o.shells.iter().enumerate().map(|(i, s)| shell_json(i, s, a.coords, fmt)).collect::<Vec<_>>(),
        "steps": o.steps.iter().map(|st| json!({
            "step": st.step,
            "grid_survivors": st.grid_survivors.iter().map(|(m, q, n)| json!({ "m": m, "q": q, "atoms": n })).collect::<Vec<_>>(),
            "refined": st.refined.iter().map(|&x| fmt.f(x)).collect::<Vec<_>>(),
            "chosen": fmt.f(st.chosen),
        })).collect::<Vec<_>>(),
    });
    let mut csv = String::from("shell,x,y,z\n");
    let (mut nv, mut nf) = (0, 0);
    let mut verts = String::new();
    let mut faces = String::new();
    for (i, s) in &selected {
        for p in &s.atoms {
            let _ = writeln!(csv, "{i},{},{},{}", fmt.ftext(p[0]), fmt.ftext(p[1]), fmt.ftext(p[2]));
            let _ = writeln!(verts, "{} {} {}", fmt.ftext(p[0]), fmt.ftext(p[1]), fmt.ftext(p[2]));
        }
        for f in &s.faces {
            let idx: Vec<String> = f.iter().map(|k| (k + nv).to_string()).collect();
            let _ = writeln!(faces, "{} {}", f.len(), idx.join(" "));
        }
        nv += s.atoms.len();
        nf += s.faces.len();
    }
    let ne: usize = selected.iter().map(|(_, s)| s.bonds.len()).sum();
    let off = format!("OFF\n{nv} {nf} {ne}\n{verts}{faces}");
    Ok(Rendered { json: v, csv: Some(csv), off: Some(off), ..Default::default() })
}

fn solid_json(s: &Solid, fmt: &Fmt) -> Value {
    let mut degrees = std::collections::BTreeMap::new();
    for d in s.degrees() {
        *degrees.entry(d.to_string()).or_insert(0usize) += 1;
    }
    let coords = match &s.exact {
        Some(ex) => fmt.vecs(ex),
        None => fmt.vecs(&s.vertices),
    };
    json!({
        "name": s.name,
        "vertices": s.vertices.len(),
        "edges": s.edges.len(),
        "faces": s.faces.len(),
        "euler_characteristic": if s.faces.is_empty() { Value::Null } else { json!(s.euler_characteristic()) },
        "face_sizes": s.face_sizes(),
        "degrees": degrees,
        "orbits": s.orbits,
        "coordinates": coords,
    })
}

fn parse_hk(s: &str) -> Result<(u64, u64)> {
    let v: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::InvalidInput(format!("bad h,k: {s:?}"))))
        .collect::<Result<_>>()?;
    match v.as_slice() {
        [h, k] => Ok((*h, *k)),
        _ => Err(Error::InvalidInput(format!("bad h,k: {s:?}"))),
    }
}

fn cmd_solids(a: &SolidsArgs, fmt: &Fmt) -> CmdResult {
    if a.list {
        return Ok(Rendered::json(json!({ "solids": polyhedra::SOLID_NAMES })));
    }
    if let Some(hk) = &a.caspar_klug {
        let (h, k) = parse_hk(hk)?;
        let (t, sub, pent, hex) = polyhedra::caspar_klug(h, k)?;
        return Ok(Rendered::json(json!({ "h": h, "k": k, "T": t, "subunits": sub, "pentamers": pent, "hexamers": hex })));
    }
    if let Some(n) = a.ck_table {
        let mut rows = Vec::new();
        let mut csv = String::from("h,k,T,subunits,pentamers,hexamers\n");
        for h in 0..=n {
            for k in 0..=n {
                if (h, k) == (0, 0) {
                    continue;
                }
                let (t, sub, pent, hex) = polyhedra::caspar_klug(h, k)?;
                rows.push(json!({ "h": h, "k": k, "T": t, "subunits": sub, "pentamers": pent, "hexamers": hex }));
                let _ = writeln!(csv, "{h},{k},{t},{sub},{pent},{hex}");
            }
        }
        return Ok(Rendered { json: json!({ "table": rows }), csv: Some(csv), ..Default::default() });
    }
    let name = a.name.as_deref().ok_or_else(|| usage("solids needs --name, --list, --caspar-klug or --ck-table"))?;
    let mut s = polyhedra::catalog_solid(name)?;
    if a.dual {
        s = polyhedra::dual(&s)?;
    }
    let csv: String = s.vertices.iter().map(|v| v.iter().map(|&x| fmt.ftext(x)).collect::<Vec<_>>().join(",") + "\n").collect();
    let off = (!s.faces.is_empty()).then(|| polyhedra::to_off(&s));
    Ok(Rendered { json: solid_json(&s, fmt), csv: Some(csv), off, ..Default::default() })
}

fn cmd_chars(a: &CharsArgs, fmt: &Fmt) -> CmdResult {
    match (&a.group, &a.solid, &a.pin) {
        (Some(g), None, None) => {
            let label: GroupLabel = g.parse()?;
            let t = reptheory::character_table(label)?;
            let mut v = json!({
                "group": label.to_string(),
                "order": t.order,
                "classes": t.classes.iter().map(|c| json!({
                    "name": c.name, "size": c.size, "order": c.order, "representative": fmt.fvec(&c.representative),
                })).collect::<Vec<_>>(),
                "irreps": t.irreps,
                "values": t.values.iter().map(|r| r.iter().map(|z| reptheory::fmt_complex(*z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            if let Some(ex) = &t.exact {
                v["exact"] = fmt.vecs(ex);
            }
            Ok(Rendered { json: v, csv: Some(t.to_csv()), ..Default::default() })
        }
        (None, Some(name), None) => {
            let s = polyhedra::catalog_solid(name)?;
            let perm = match &s.exact {
                Some(ex) => reptheory::permutation_character(ex)?,
                None => reptheory::permutation_character(&s.vertices)?,
            };
            let d = reptheory::solid_decomposition(name)?;
            let mut m = Map::new();
            for (n, k) in &d.multiplicities {
                m.insert(n.clone(), json!(k));
            }
            let table = reptheory::a5_table();
            let v = json!({
                "solid": name,
                "vertices": s.vertices.len(),
                "classes": table.classes.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
                "permutation_character": fmt.vec(&perm),
                "multiplicities": m,
                "decomposition": d.to_string(),
                "dimension": d.dimension(table),
            });
            let csv = format!(
                "irrep,multiplicity\n{}",
                d.multiplicities.iter().map(|(n, k)| format!("{n},{k}\n")).collect::<String>()
            );
            Ok(Rendered { json: v, csv: Some(csv), ..Default::default() })
        }
        (None, None, Some(rs)) => {
            let sys = close_catalog(rs)?;
            let pin = pin_of(&sys)?;
            let spin = pin.spin()?;
            let classes = |g: &crate::cover::AnyPinorGroup| match g {
                crate::cover::AnyPinorGroup::Exact(x) => summarize_pinor_classes(&x.conjugacy_classes()),
                crate::cover::AnyPinorGroup::Float(x) => summarize_pinor_classes(&x.conjugacy_classes()),
            };
            let (pc, sc) = (classes(&pin), classes(&spin));
            let cls = |cs: &[crate::cover::ClassSummary]| -> Value {
                Value::Array(
                    cs.iter()
                        .map(|c| json!({
                            "size": c.size, "order": c.order, "scalar_part": fmt.f(c.scalar_part),
                            "trace3": c.trace3.map(|t| fmt.f(t)),
                        }))
                        .collect(),
                )
            };
            let mut csv = String::from("group,size,order,trace3,scalar_part\n");
            for (g, cs) in [("pin", &pc), ("spin", &sc)] {
                for c in cs.iter() {
                    let tr = c.trace3.map(|t| fmt.ftext(t)).unwrap_or_default();
                    let _ = writeln!(csv, "{g},{},{},{tr},{}", c.size, c.order, fmt.ftext(c.scalar_part));
                }
            }
            let v = json!({
                "system": sys.name().unwrap_or(rs),
                "backend": if pin.is_exact() { "exact" } else { "float" },
                "pin_order": pin.order(),
                "spin_order": spin.order(),
                "pin_classes": cls(&pc),
                "spin_classes": cls(&sc),
            });
            Ok(Rendered { json: v, csv: Some(csv), ..Default::default() })
        }
        _ => Err(usage("chars needs exactly one of --group, --solid, --pin")),
    }
}

fn cmd_mckay(a: &McKayArgs) -> CmdResult {
    match (&a.group, &a.legs) {
        (Some(g), None) => {
            let label: GroupLabel = g.parse()?;
            let m = mckay::mckay_graph(label)?;
            let mut v = json!({
                "group": label.to_string(),
                "nodes": m.nodes,
                "adjacency": m.adjacency,
                "diagram": m.diagram.map(|d| d.to_string()),
                "dims_in_kernel": m.dims_in_kernel(),
                "outside_root_correspondence": m.outside_root_correspondence,
            });
            if a.identity {
                let (sum, h, roots) = mckay::coxeter_number_identity(label)?;
                v["identity"] = json!({ "sum_of_dims": sum, "coxeter_number": h, "roots": roots });
            }
            Ok(Rendered { json: v, dot: Some(m.to_dot()), ..Default::default() })
        }
        (None, Some(rs)) => {
            let (orders, legs, t) = mckay::leg_triple_correspondence(rs)?;
            Ok(Rendered::json(json!({ "system": rs, "rotation_orders": orders, "legs": legs.legs, "diagram": t.to_string() })))
        }
        _ => Err(usage("mckay needs exactly one of --group, --legs")),
    }
}

fn cmd_hamilton(a: &HamiltonArgs) -> CmdResult {
    let (name, mut g) = match (&a.graph, &a.input) {
        (Some(n), None) => {
            if a.dual {
                let s = polyhedra::dual(&polyhedra::catalog_solid(n)?)?;
                (format!("dual({n})"), PolyGraph::from_solid(&s)?)
            } else {
                (n.clone(), hamilton::named_graph(n).or_else(|_| PolyGraph::from_solid(&polyhedra::catalog_solid(n)?))?)
            }
        }
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
            (p.display().to_string(), PolyGraph::parse(&text)?)
        }
        _ => return Err(usage("hamilton needs exactly one of --graph, --input")),
    };
    if a.all_automorphisms {
        g.automorphisms = hamilton::graph_automorphisms(&g);
    }
    let mut v = json!({ "graph": name, "vertices": g.len(), "edges": g.edges().len() });
    if let Some(s) = a.start {
        if g.len() > a.cap {
            return Err(Error::GraphTooLarge(g.len(), a.cap).into());
        }
        v["start"] = json!(s);
        v["end"] = json!(a.end);
        v["paths"] = json!(hamilton::enumerate_hamiltonian_paths(&g, s, a.end)?);
    } else {
        if a.end.is_some() {
            return Err(usage("--end needs --start"));
        }
        let quotient = a.quotient || a.all_automorphisms;
        let h = hamilton::enumerate_hamiltonian_cycles_filtered(&g, quotient, a.cap, None)?;
        v["automorphisms"] = json!(hamilton::generated_group(&g.automorphisms, g.len()).len());
        v["cycles"] = json!(h.count);
        v["orbits"] = json!(h.orbits);
        v["representatives"] = json!(h.representatives);
    }
    Ok(Rendered::json(v))
}
