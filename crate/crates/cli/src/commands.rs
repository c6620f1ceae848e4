//! Command definitions and their reports.
//!
//! Every command produces a text report and a JSON report carrying the same
//! data, including witnesses. Exit codes: 0 success, 1 validation or
//! mathematical failure, 2 usage error.

use std::ffi::OsString;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use grcat_core::algebra::{find_isomorphism, AutStructure, FiniteGroup, PiModule};
use grcat_core::cohomology::{
    canonical_representative, cohomology_group, Cochain, Method, DEFAULT_BOUND,
};
use grcat_core::extension::{
    adjust, build_extension, factor_set_by, kernel_obstruction, kernel_search,
    verify_strictification, AbstractKernel,
};
use grcat_core::functor::{
    automorphisms, classify, congruent, obstruction, realizable, FunctorData,
};
use grcat_core::gr::{aut_gr_category, compare_reductions_with, GrType};

use crate::catalog;
use crate::format::{self, Object, Workspace};

#[derive(Debug, Parser)]
#[command(
    name = "grcat",
    version,
    about = "Gr-categories, their functors and group extensions"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized choices (stick and factor-set tie-breaks).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest number of cochains a brute-force run may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: u128,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Snf,
    BruteForce,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and validate any object file.
    Validate { path: String },
    /// Cohomology of a module (or of the module of a type).
    Cohomology {
        module: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "snf")]
        method: MethodArg,
    },
    /// Obstruction of a functor and a monoidal structure when it vanishes.
    Obstruction { functor: String },
    /// One monoidal structure per congruence class.
    Classify { functor: String },
    /// Whether two monoidal functors are congruent.
    Congruent { first: String, second: String },
    /// Monoidal automorphisms of a functor.
    Automorphisms { functor: String },
    /// Reduced type of a group, checked against the reduction of its
    /// automorphism category.
    Reduce { group: String },
    /// Listing of the automorphism category of a group.
    AutCategory { group: String },
    /// Strictification checks for an abstract kernel.
    Strictify { kernel: String },
    /// Extension realizing an abstract kernel.
    Extension { kernel: String },
    /// Catalog groups whose kernels realize a type.
    KernelSearch {
        grtype: String,
        /// Only search catalog groups up to this order.
        #[arg(long, default_value_t = 16)]
        max_order: usize,
    },
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    lines: Vec<String>,
    json: Value,
}

impl Report {
    fn emit(&self, json: bool) -> String {
        if json {
            format::render(&self.json)
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}

enum Failure {
    Usage(String),
    Error(String),
    /// A completed report whose verdict is negative.
    Report(Report),
}

impl From<format::FormatError> for Failure {
    fn from(e: format::FormatError) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<grcat_core::Error> for Failure {
    fn from(e: grcat_core::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

type Result<T> = std::result::Result<T, Failure>;

/// Parses arguments and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => Outcome {
            code: 0,
            stdout: report.emit(cli.json),
            stderr: String::new(),
        },
        Err(Failure::Report(report)) => Outcome {
            code: 1,
            stdout: report.emit(cli.json),
            stderr: String::new(),
        },
        Err(Failure::Usage(message)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
        Err(Failure::Error(message)) => Outcome {
            code: 1,
            stdout: if cli.json {
                format::render(&json!({ "error": message }))
            } else {
                String::new()
            },
            stderr: format!("error: {message}\n"),
        },
    }
}

/// Choices made by `pick` callbacks: the first candidate, or a seeded
/// random one.
fn picker(seed: Option<u64>) -> impl FnMut(&[usize]) -> usize {
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    move |candidates: &[usize]| match &mut rng {
        Some(rng) => rng.gen_range(0..candidates.len()),
        None => 0,
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let mut ws = Workspace::new();
    match &cli.command {
        Command::Validate { path } => validate(&mut ws, path),
        Command::Cohomology {
            module,
            degree,
            method,
        } => {
            let m = load_module(&mut ws, module)?;
            cohomology(&m, *degree, *method, cli.bound)
        }
        Command::Obstruction { functor } => cmd_obstruction(&load_functor(&mut ws, functor)?),
        Command::Classify { functor } => cmd_classify(&load_functor(&mut ws, functor)?),
        Command::Congruent { first, second } => {
            let a = load_functor(&mut ws, first)?;
            let b = load_functor(&mut ws, second)?;
            cmd_congruent(&a, &b)
        }
        Command::Automorphisms { functor } => cmd_automorphisms(&load_functor(&mut ws, functor)?),
        Command::Reduce { group } => reduce(load_group(&mut ws, group)?, cli.seed),
        Command::AutCategory { group } => aut_category(load_group(&mut ws, group)?),
        Command::Strictify { kernel } => strictify(&load_kernel(&mut ws, kernel)?),
        Command::Extension { kernel } => extension(&load_kernel(&mut ws, kernel)?, cli.seed),
        Command::KernelSearch { grtype, max_order } => {
            search(&load_grtype(&mut ws, grtype)?, *max_order)
        }
    }
}

fn wrong_kind(spec: &str, found: &Object, wanted: &str) -> Failure {
    Failure::Usage(format!(
        "{spec} is a {}, expected {wanted}",
        found.kind().name()
    ))
}

fn load_module(ws: &mut Workspace, spec: &str) -> Result<PiModule> {
    match ws.load_spec(spec)? {
        Object::Module(m) => Ok(m),
        Object::GrType(t) => Ok(t.module().clone()),
        other => Err(wrong_kind(spec, &other, "a module")),
    }
}

fn load_functor(ws: &mut Workspace, spec: &str) -> Result<FunctorData> {
    match ws.load_spec(spec)? {
        Object::Functor(f) => Ok(f),
        other => Err(wrong_kind(spec, &other, "a functor")),
    }
}

fn load_group(ws: &mut Workspace, spec: &str) -> Result<Arc<FiniteGroup>> {
    match ws.load_spec(spec)? {
        Object::Group(g) => Ok(g),
        other => Err(wrong_kind(spec, &other, "a group")),
    }
}

fn load_kernel(ws: &mut Workspace, spec: &str) -> Result<AbstractKernel> {
    match ws.load_spec(spec)? {
        Object::Kernel(k) => Ok(k),
        other => Err(wrong_kind(spec, &other, "an abstract kernel")),
    }
}

fn load_grtype(ws: &mut Workspace, spec: &str) -> Result<GrType> {
    match ws.load_spec(spec)? {
        Object::GrType(t) => Ok(t),
        other => Err(wrong_kind(spec, &other, "a Gr-category type")),
    }
}

/// `Z/2 ⊕ Z/4`, or `0`.
fn factors_text<T: std::fmt::Display + PartialEq + From<u8>>(factors: &[T]) -> String {
    let parts: Vec<String> = factors
        .iter()
        .filter(|&d| *d != T::from(1))
        .map(|d| format!("Z/{d}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn values(m: &PiModule, c: &Cochain) -> Value {
    format::cochain_values(m, c)
}

fn values_text(m: &PiModule, c: &Cochain) -> String {
    values(m, c).to_string()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe(o: &Object) -> String {
    match o {
        Object::Group(g) => format!(
            "group of order {} ({})",
            g.order(),
            if g.is_abelian() {
                "abelian"
            } else {
                "nonabelian"
            }
        ),
        Object::AbelianGroup(a) => format!("abelian group {}", factors_text(a.invariant_factors())),
        Object::Module(m) => format!(
            "module: group of order {} acting {} on {}",
            m.group().order(),
            if m.is_trivial_action() {
                "trivially"
            } else {
                "nontrivially"
            },
            factors_text(m.carrier().invariant_factors())
        ),
        Object::Cochain(m, c) => format!(
            "normalized {}-cochain over a group of order {} (cocycle: {})",
            c.degree(),
            m.group().order(),
            yes(grcat_core::cohomology::is_cocycle(m, c))
        ),
        Object::GrType(t) => format!(
            "Gr-category type: Π of order {}, A = {}, ξ {}",
            t.pi().order(),
            factors_text(t.carrier().invariant_factors()),
            if grcat_core::cohomology::is_coboundary(t.module(), t.xi()) {
                "cohomologous to 0"
            } else {
                "not cohomologous to 0"
            }
        ),
        Object::Functor(f) => format!(
            "functor of type (φ, f) {} a monoidal structure",
            if f.g().is_some() { "with" } else { "without" }
        ),
        Object::Kernel(k) => format!(
            "abstract kernel: Π of order {}, G of order {}, ψ = {:?}",
            k.pi().order(),
            k.g().order(),
            k.psi().images()
        ),
    }
}

fn validate(ws: &mut Workspace, path: &str) -> Result<Report> {
    match ws.load_spec(path) {
        Ok(o) => Ok(Report {
            lines: vec![format!("valid {}", describe(&o))],
            json: json!({ "valid": true, "kind": o.kind().name(), "summary": describe(&o), "object": format::object_value(&o) }),
        }),
        Err(e) => Err(Failure::Report(Report {
            lines: vec![format!("invalid: {e}")],
            json: json!({ "valid": false, "error": e.to_string() }),
        })),
    }
}

fn cohomology(m: &PiModule, degree: usize, method: MethodArg, bound: u128) -> Result<Report> {
    let methods: &[(Method, &str)] = match method {
        MethodArg::Snf => &[(Method::Snf, "snf")],
        MethodArg::BruteForce => &[(Method::BruteForce, "brute-force")],
        MethodArg::Both => &[(Method::Snf, "snf"), (Method::BruteForce, "brute-force")],
    };
    let results = methods
        .iter()
        .map(|&(mt, _)| cohomology_group(m, degree, mt, bound))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let h = &results[0];
    let mut lines = vec![format!(
        "H^{degree} ≅ {}",
        factors_text(&h.invariant_factors)
    )];
    if !h.representatives.is_empty() {
        lines.push("generators:".into());
        for (d, z) in h.invariant_factors.iter().zip(&h.representatives) {
            lines.push(format!("  order {d}: {}", values_text(m, z)));
        }
    }
    let agree = results
        .iter()
        .all(|r| r.invariant_factors == h.invariant_factors);
    if results.len() > 1 {
        lines.push(if agree {
            "methods agree: snf, brute-force".into()
        } else {
            format!(
                "methods disagree: snf gives {}, brute-force gives {}",
                factors_text(&results[0].invariant_factors),
                factors_text(&results[1].invariant_factors)
            )
        });
    }
    let json = json!({
        "degree": degree,
        "invariant_factors": h.invariant_factors,
        "order": h.order(),
        "generators": h.representatives.iter().map(|z| values(m, z)).collect::<Vec<_>>(),
        "methods": methods.iter().zip(&results).map(|(&(_, name), r)| json!({ "method": name, "invariant_factors": r.invariant_factors })).collect::<Vec<_>>(),
        "agree": agree,
    });
    let report = Report { lines, json };
    if agree {
        Ok(report)
    } else {
        Err(Failure::Report(report))
    }
}

fn cmd_obstruction(f: &FunctorData) -> Result<Report> {
    let m = f.pulled_module();
    let k = obstruction(f);
    let class = canonical_representative(m, &k);
    let g = realizable(f)?;
    let class_text = if class.is_zero() {
        "0".to_string()
    } else {
        values_text(m, &class)
    };
    let mut lines = vec![
        format!("obstruction cocycle: {}", values_text(m, &k)),
        format!(
            "obstruction class: {class_text}; realizable: {}",
            yes(g.is_some())
        ),
    ];
    if let Some(g) = &g {
        lines.push(format!(
            "monoidal structure g (δg = k): {}",
            values_text(m, g)
        ));
    }
    Ok(Report {
        lines,
        json: json!({
            "obstruction": values(m, &k),
            "class_representative": values(m, &class),
            "class_is_zero": class.is_zero(),
            "realizable": g.is_some(),
            "g": g.as_ref().map(|g| values(m, g)),
        }),
    })
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn cmd_classify(f: &FunctorData) -> Result<Report> {
    let m = f.pulled_module();
    let classes = classify(f)?;
    let mut lines = vec![plural(
        classes.len(),
        "congruence class",
        "congruence classes",
    )];
    if classes.is_empty() {
        lines[0].push_str(" (obstruction class nonzero)");
    }
    let gs: Vec<&Cochain> = classes.iter().filter_map(FunctorData::g).collect();
    for (i, g) in gs.iter().enumerate() {
        lines.push(format!("  class {i}: g = {}", values_text(m, g)));
    }
    Ok(Report {
        lines,
        json: json!({ "classes": gs.iter().map(|g| values(m, g)).collect::<Vec<_>>() }),
    })
}

fn cmd_congruent(a: &FunctorData, b: &FunctorData) -> Result<Report> {
    let m = a.pulled_module();
    let alpha = congruent(a, b)?;
    let mut lines = vec![format!("congruent: {}", yes(alpha.is_some()))];
    if let Some(alpha) = &alpha {
        lines.push(format!(
            "natural isomorphism α (g − g′ = δα): {}",
            values_text(m, alpha)
        ));
    }
    Ok(Report {
        lines,
        json: json!({ "congruent": alpha.is_some(), "alpha": alpha.as_ref().map(|c| values(m, c)) }),
    })
}

fn cmd_automorphisms(f: &FunctorData) -> Result<Report> {
    let m = f.pulled_module();
    let autos = automorphisms(f)?;
    let mut lines = vec![plural(
        autos.len(),
        "monoidal automorphism",
        "monoidal automorphisms",
    )];
    for alpha in &autos {
        lines.push(format!("  α = {}", values_text(m, alpha)));
    }
    Ok(Report {
        lines,
        json: json!({ "automorphisms": autos.iter().map(|c| values(m, c)).collect::<Vec<_>>() }),
    })
}

fn reduce(g: Arc<FiniteGroup>, seed: Option<u64>) -> Result<Report> {
    let st = Arc::new(AutStructure::new(g)?);
    let cmp = compare_reductions_with(st.clone(), &mut picker(seed))?;
    let t = &cmp.direct;
    let r = &cmp.reduction.ty;
    let mut lines = vec![
        format!(
            "|Aut(G)| = {}, |Inn(G)| = {}",
            st.aut.maps.len(),
            st.inner
                .mu
                .iter()
                .collect::<std::collections::BTreeSet<_>>()
                .len()
        ),
        format!(
            "Out(G) of order {}; Z(G) ≅ {}; action {}",
            t.pi().order(),
            factors_text(t.carrier().invariant_factors()),
            if t.module().is_trivial_action() {
                "trivial"
            } else {
                "nontrivial"
            }
        ),
        format!("ξ′ = {}", values_text(t.module(), t.xi())),
        format!(
            "ξ′ class: {}",
            if grcat_core::cohomology::is_coboundary(t.module(), t.xi()) {
                "0"
            } else {
                "nonzero"
            }
        ),
        format!(
            "strict reduction: |Π₀| = {}, Π₁ ≅ {}",
            r.pi().order(),
            factors_text(r.carrier().invariant_factors())
        ),
        format!(
            "Π₀ ≅ Out(G): {}; Π₁ ≅ Z(G): {}",
            yes(cmp.lambda.is_some()),
            yes(cmp.iso.is_some())
        ),
        format!("agrees with strict reduction: {}", yes(cmp.agrees())),
    ];
    if let Some(w) = &cmp.witness {
        lines.push(format!(
            "witness (moved ξ − ξ′ = δα): {}",
            values_text(t.module(), w)
        ));
    }
    let report = Report {
        lines,
        json: json!({
            "type": format::grtype_value(t),
            "xi_is_coboundary": grcat_core::cohomology::is_coboundary(t.module(), t.xi()),
            "strict_reduction": format::grtype_value(r),
            "stick_representatives": cmp.reduction.stick.representative,
            "lambda": cmp.lambda.as_ref().map(|l| l.images().to_vec()),
            "iso": cmp.iso.as_ref().map(|a| a.images().to_vec()),
            "moved_xi": cmp.moved.as_ref().map(|c| values(t.module(), c)),
            "witness": cmp.witness.as_ref().map(|c| values(t.module(), c)),
            "agrees": cmp.agrees(),
        }),
    };
    if cmp.agrees() {
        Ok(report)
    } else {
        Err(Failure::Report(report))
    }
}

fn aut_category(g: Arc<FiniteGroup>) -> Result<Report> {
    let st = Arc::new(AutStructure::new(g)?);
    let cat = aut_gr_category(st.clone())?;
    let c = &cat.category;
    let n = c.object_count();
    let mut lines = vec![
        format!("objects: {n}; arrows: {}", c.arrow_count()),
        "objects:".into(),
    ];
    for (i, &(_, a)) in cat.objects.iter().enumerate() {
        lines.push(format!("  {} = {:?}", c.object_label(i), st.aut.maps[a]));
    }
    let hom: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| c.hom(x, y).count()).collect())
        .collect();
    let tensor: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| c.tensor(x, y)).collect())
        .collect();
    lines.push("hom sizes:".into());
    lines.extend(hom.iter().map(|row| format!("  {row:?}")));
    lines.push("tensor:".into());
    lines.extend(tensor.iter().map(|row| format!("  {row:?}")));
    Ok(Report {
        lines,
        json: json!({
            "objects": cat.objects.iter().map(|&(_, a)| st.aut.maps[a].clone()).collect::<Vec<_>>(),
            "arrows": c.arrow_count(),
            "hom_sizes": hom,
            "tensor": tensor,
        }),
    })
}

fn strictify(k: &AbstractKernel) -> Result<Report> {
    let r = verify_strictification(k)?;
    let m = k.module();
    let opt = |c: &Option<Cochain>| c.as_ref().map(|c| values(&m, c));
    let mut lines = vec![
        format!(
            "strictification checks: {} ({}/3)",
            if r.is_pass() { "PASS" } else { "FAIL" },
            r.passed()
        ),
        format!("Π₀ ≅ Π: {}", yes(r.pi0_iso)),
        format!("Π₁ ≅ Z(G): {}", yes(r.pi1_iso)),
        format!("ξ ~ ψ*ξ′: {}", yes(r.xi_witness.is_some())),
    ];
    if let Some(w) = &r.xi_witness {
        lines.push(format!("  witness (ξ − ψ*ξ′ = δα): {}", values_text(&m, w)));
    }
    lines.push(format!(
        "kernel obstruction k: {}",
        values_text(&m, &r.obstruction)
    ));
    lines.push(format!(
        "[k] = −[ψ*ξ′]: {}",
        yes(r.obstruction_witness.is_some())
    ));
    if let Some(w) = &r.obstruction_witness {
        lines.push(format!("  witness (k + ψ*ξ′ = δβ): {}", values_text(&m, w)));
    }
    lines.push(format!(
        "[k] = [ψ*ξ′]: {}",
        yes(r.obstruction_equals_pulled)
    ));
    let report = Report {
        lines,
        json: json!({
            "pass": r.is_pass(),
            "passed": r.passed(),
            "pi0_iso": r.pi0_iso,
            "pi1_iso": r.pi1_iso,
            "xi": opt(&r.xi),
            "pulled_xi": values(&m, &r.pulled_xi),
            "xi_witness": opt(&r.xi_witness),
            "obstruction": values(&m, &r.obstruction),
            "obstruction_witness": opt(&r.obstruction_witness),
            "obstruction_equals_pulled": r.obstruction_equals_pulled,
        }),
    };
    if r.is_pass() {
        Ok(report)
    } else {
        Err(Failure::Report(report))
    }
}

fn extension(k: &AbstractKernel, seed: Option<u64>) -> Result<Report> {
    let m = k.module();
    let fs = factor_set_by(k, &mut picker(seed));
    let obstruction = kernel_obstruction(k, &fs)?;
    let zero = grcat_core::cohomology::is_coboundary(&m, &obstruction);
    let mut lines = vec![
        format!("factor set: φ = {:?}, f = {:?}", fs.phi, fs.f),
        format!("obstruction cocycle: {}", values_text(&m, &obstruction)),
        format!("obstruction class: {}", if zero { "0" } else { "nonzero" }),
    ];
    if !zero {
        lines.push("no extension realizes this kernel".into());
        return Err(Failure::Report(Report {
            lines,
            json: json!({ "phi": fs.phi, "f": fs.f, "obstruction": values(&m, &obstruction), "realizable": false }),
        }));
    }
    let adjusted = adjust(k, &fs)?;
    let e = build_extension(k, &adjusted)?;
    let order = e.group.order();
    let known = catalog::groups()
        .into_iter()
        .filter(|(_, h)| h.order() == order)
        .find(|(_, h)| find_isomorphism(&e.group, h).is_some())
        .map(|(name, _)| name);
    lines.push(format!("adjusted f = {:?}", adjusted.f));
    lines.push(format!(
        "extension of order {order}; isomorphic to {}",
        known.as_deref().unwrap_or("no catalog group")
    ));
    Ok(Report {
        lines,
        json: json!({
            "phi": fs.phi,
            "f": fs.f,
            "obstruction": values(&m, &obstruction),
            "realizable": true,
            "adjusted_f": adjusted.f,
            "extension": format::group_value(&e.group),
            "embed": e.embed,
            "project": e.project,
            "catalog_match": known,
        }),
    })
}

fn search(t: &GrType, max_order: usize) -> Result<Report> {
    let result = kernel_search(t, &catalog::up_to_order(max_order));
    let mut lines = Vec::new();
    if result.found.is_empty() {
        lines.push("no realization in catalog".into());
    } else {
        lines.push(plural(result.found.len(), "realization", "realizations"));
        for r in &result.found {
            lines.push(format!(
                "  G = {}, ψ = {:?}, A → Z(G): {:?}",
                r.group,
                r.psi,
                r.iso.images()
            ));
        }
    }
    for (name, e) in &result.skipped {
        lines.push(format!("skipped {name}: {e}"));
    }
    Ok(Report {
        lines,
        json: json!({
            "realizations": result.found.iter().map(|r| json!({ "group": r.group, "psi": r.psi, "iso": r.iso.images() })).collect::<Vec<_>>(),
            "skipped": result.skipped.iter().map(|(n, e)| json!({ "group": n, "reason": e.to_string() })).collect::<Vec<_>>(),
        }),
    })
}
