//! JSON file formats, `$ref` resolution and canonical rendering.
//!
//! Any nested object may be replaced by `{"$ref": "relative/path.json"}`
//! (relative to the referring file) or `{"$ref": "catalog:NAME"}`. The kind
//! of an object is read off its keys.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use grcat_core::algebra::{FiniteAbelianGroup, FiniteGroup, PiModule};
use grcat_core::cohomology::{tuples, Cochain, FullCochain};
use grcat_core::extension::AbstractKernel;
use grcat_core::functor::{check_monoidal, FunctorData};
use grcat_core::gr::{validate_gr_type, GrType};

use crate::catalog;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: parse error: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: {message}")]
    Malformed { path: String, message: String },
    #[error("{path}: {source}")]
    Invalid {
        path: String,
        source: grcat_core::Error,
    },
}

type Result<T> = std::result::Result<T, FormatError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Group,
    AbelianGroup,
    Module,
    Cochain,
    GrType,
    Functor,
    Kernel,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::AbelianGroup => "abelian group",
            Kind::Module => "module",
            Kind::Cochain => "cochain",
            Kind::GrType => "Gr-category type",
            Kind::Functor => "functor",
            Kind::Kernel => "abstract kernel",
        }
    }

    fn detect(map: &Map<String, Value>) -> Option<Kind> {
        let has = |k: &str| map.contains_key(k);
        Some(if has("table") || has("permutation_generators") {
            Kind::Group
        } else if has("invariant_factors") {
            Kind::AbelianGroup
        } else if has("carrier") {
            Kind::Module
        } else if has("values") {
            Kind::Cochain
        } else if has("xi") {
            Kind::GrType
        } else if has("phi") {
            Kind::Functor
        } else if has("psi") {
            Kind::Kernel
        } else {
            return None;
        })
    }
}

#[derive(Debug, Clone)]
pub enum Object {
    Group(Arc<FiniteGroup>),
    AbelianGroup(FiniteAbelianGroup),
    Module(PiModule),
    Cochain(PiModule, Cochain),
    GrType(GrType),
    Functor(FunctorData),
    Kernel(AbstractKernel),
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Group(_) => Kind::Group,
            Object::AbelianGroup(_) => Kind::AbelianGroup,
            Object::Module(_) => Kind::Module,
            Object::Cochain(..) => Kind::Cochain,
            Object::GrType(_) => Kind::GrType,
            Object::Functor(_) => Kind::Functor,
            Object::Kernel(_) => Kind::Kernel,
        }
    }
}

/// Where a value came from: the directory for relative references and a
/// display name for messages.
#[derive(Debug, Clone)]
struct Origin {
    dir: PathBuf,
    name: String,
}

impl Origin {
    fn malformed<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(FormatError::Malformed {
            path: self.name.clone(),
            message: message.into(),
        })
    }

    fn invalid(&self, source: grcat_core::Error) -> FormatError {
        FormatError::Invalid {
            path: self.name.clone(),
            source,
        }
    }
}

/// Files loaded so far, by path, so shared references are read once.
#[derive(Debug, Default)]
pub struct Workspace {
    files: BTreeMap<PathBuf, Value>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Paths of every file read, references included.
    pub fn files(&self) -> impl Iterator<Item = &Path> {
        self.files.keys().map(PathBuf::as_path)
    }

    fn read(&mut self, path: &Path) -> Result<Value> {
        if let Some(v) = self.files.get(path) {
            return Ok(v.clone());
        }
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: name.clone(),
            source,
        })?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|source| FormatError::Parse { path: name, source })?;
        self.files.insert(path.to_path_buf(), v.clone());
        Ok(v)
    }

    /// Loads any object file.
    pub fn load(&mut self, path: &Path) -> Result<Object> {
        let v = self.read(path)?;
        let origin = Origin {
            dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
            name: path.display().to_string(),
        };
        self.object(&v, &origin)
    }

    /// Loads a file, or a bundled group when `spec` is `catalog:NAME`.
    pub fn load_spec(&mut self, spec: &str) -> Result<Object> {
        if spec.starts_with("catalog:") {
            let origin = Origin {
                dir: PathBuf::new(),
                name: spec.into(),
            };
            return self.object(&json!({ "$ref": spec }), &origin);
        }
        self.load(Path::new(spec))
    }

    /// Follows `$ref` chains to a concrete value.
    fn resolve(&mut self, v: &Value, origin: &Origin) -> Result<(Value, Origin)> {
        let mut v = v.clone();
        let mut origin = origin.clone();
        for _ in 0..64 {
            let Some(target) = v.as_object().and_then(|m| m.get("$ref")) else {
                return Ok((v, origin));
            };
            let Some(target) = target.as_str().map(str::to_owned) else {
                return origin.malformed("$ref must be a string");
            };
            if let Some(name) = target.strip_prefix("catalog:") {
                let Some((_, text)) = catalog::BUNDLED.iter().find(|(n, _)| *n == name) else {
                    return origin.malformed(format!("no catalog group named {name}"));
                };
                v = serde_json::from_str(text).expect("bundled catalog is valid JSON");
                origin.name = target;
            } else {
                let path = origin.dir.join(&target);
                v = self.read(&path)?;
                origin = Origin {
                    dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
                    name: path.display().to_string(),
                };
            }
        }
        origin.malformed("$ref chain too long")
    }

    fn object(&mut self, v: &Value, origin: &Origin) -> Result<Object> {
        let (v, origin) = self.resolve(v, origin)?;
        let Some(map) = v.as_object() else {
            return origin.malformed("expected an object");
        };
        let Some(kind) = Kind::detect(map) else {
            return origin.malformed("cannot tell what kind of object this is from its keys");
        };
        Ok(match kind {
            Kind::Group => Object::Group(self.group(&v, &origin)?),
            Kind::AbelianGroup => Object::AbelianGroup(self.abelian(&v, &origin)?),
            Kind::Module => Object::Module(self.module(&v, &origin)?),
            Kind::Cochain => {
                let (m, c) = self.cochain(&v, &origin, None)?;
                let c = c.normalize(&m).map_err(|e| origin.invalid(e))?;
                Object::Cochain(m, c)
            }
            Kind::GrType => Object::GrType(self.grtype(&v, &origin)?),
            Kind::Functor => Object::Functor(self.functor(&v, &origin)?),
            Kind::Kernel => Object::Kernel(self.kernel(&v, &origin)?),
        })
    }

    fn field<'a>(&self, map: &'a Value, key: &str, origin: &Origin) -> Result<&'a Value> {
        match map.get(key) {
            Some(v) => Ok(v),
            None => origin.malformed(format!("missing field \"{key}\"")),
        }
    }

    fn group(&mut self, v: &Value, origin: &Origin) -> Result<Arc<FiniteGroup>> {
        let (v, origin) = self.resolve(v, origin)?;
        if let Some(gens) = v.get("permutation_generators") {
            let gens: Vec<Vec<usize>> = decode(gens, &origin, "permutation_generators")?;
            let degree: usize = decode(self.field(&v, "degree", &origin)?, &origin, "degree")?;
            let g = FiniteGroup::from_permutations(degree, &gens).map_err(|e| origin.invalid(e))?;
            return Ok(Arc::new(g));
        }
        let table: Vec<Vec<usize>> = decode(self.field(&v, "table", &origin)?, &origin, "table")?;
        let names: Vec<String> = match v.get("names") {
            Some(n) => decode(n, &origin, "names")?,
            None => (0..table.len()).map(|i| i.to_string()).collect(),
        };
        FiniteGroup::from_table(names, table)
            .map(Arc::new)
            .map_err(|e| origin.invalid(e))
    }

    fn abelian(&mut self, v: &Value, origin: &Origin) -> Result<FiniteAbelianGroup> {
        let (v, origin) = self.resolve(v, origin)?;
        let factors: Vec<u32> = decode(
            self.field(&v, "invariant_factors", &origin)?,
            &origin,
            "invariant_factors",
        )?;
        FiniteAbelianGroup::new(factors).map_err(|e| origin.invalid(e))
    }

    /// `action` maps element indices to generator images; absent elements
    /// act trivially, and an absent `action` is the trivial action.
    fn module(&mut self, v: &Value, origin: &Origin) -> Result<PiModule> {
        let (v, origin) = self.resolve(v, origin)?;
        let group = self.group(self.field(&v, "group", &origin)?, &origin)?;
        let carrier = self.abelian(self.field(&v, "carrier", &origin)?, &origin)?;
        let identity: Vec<Vec<u32>> = (0..carrier.rank()).map(|i| carrier.basis(i)).collect();
        let mut action = vec![identity; group.order()];
        if let Some(table) = v.get("action") {
            let Some(table) = table.as_object() else {
                return origin.malformed("\"action\" must map element indices to generator images");
            };
            for (key, images) in table {
                let x: usize = match key.parse() {
                    Ok(x) if x < group.order() => x,
                    _ => {
                        return origin
                            .malformed(format!("action key \"{key}\" is not an element index"))
                    }
                };
                action[x] = decode(images, &origin, "action")?;
            }
        }
        PiModule::new(group, carrier, action).map_err(|e| origin.invalid(e))
    }

    /// A cochain on all tuples. Inside a type or functor the module is
    /// implied and may be omitted; if given it must agree.
    fn cochain(
        &mut self,
        v: &Value,
        origin: &Origin,
        implied: Option<&PiModule>,
    ) -> Result<(PiModule, FullCochain)> {
        let (v, origin) = self.resolve(v, origin)?;
        let degree: usize = decode(self.field(&v, "degree", &origin)?, &origin, "degree")?;
        if degree > 4 {
            return Err(origin.invalid(grcat_core::Error::DegreeTooHigh(degree)));
        }
        let module = match (v.get("module"), implied) {
            (Some(m), implied) => {
                let m = self.module(m, &origin)?;
                if implied.is_some_and(|i| *i != m) {
                    return origin
                        .malformed("cochain module differs from the module it is used with");
                }
                m
            }
            (None, Some(m)) => m.clone(),
            (None, None) => return origin.malformed("missing field \"module\""),
        };
        let Some(values) = self.field(&v, "values", &origin)?.as_object() else {
            return origin.malformed("\"values\" must map tuples to residue vectors");
        };
        let n = module.group().order();
        let mut entries = BTreeMap::new();
        for (key, value) in values {
            let tuple: Vec<usize> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| s.trim().parse().ok().filter(|&x| x < n))
                    .collect::<Option<_>>()
                    .map_or_else(|| origin.malformed(format!("bad tuple key \"{key}\"")), Ok)?
            };
            if tuple.len() != degree {
                return origin.malformed(format!("tuple \"{key}\" does not have length {degree}"));
            }
            let residues: Vec<u32> = decode(value, &origin, "values")?;
            if !module.carrier().is_element(&residues) {
                return origin.malformed(format!(
                    "value at \"{key}\" is not an element of the carrier"
                ));
            }
            entries.insert(tuple, residues);
        }
        let zero = module.carrier().zero();
        let full = FullCochain::from_fn(&module, degree, |t| {
            entries.get(t).cloned().unwrap_or_else(|| zero.clone())
        });
        Ok((module, full))
    }

    fn grtype(&mut self, v: &Value, origin: &Origin) -> Result<GrType> {
        let (v, origin) = self.resolve(v, origin)?;
        let module = self.module(self.field(&v, "module", &origin)?, &origin)?;
        let (_, xi) = self.cochain(self.field(&v, "xi", &origin)?, &origin, Some(&module))?;
        if xi.degree() != 3 {
            return origin.malformed("\"xi\" must have degree 3");
        }
        let report = validate_gr_type(&module, &xi);
        if !report.is_valid() {
            return Err(origin.invalid(match report.normalization_failures.first() {
                Some(t) => grcat_core::Error::NotNormalized(t.clone()),
                None => grcat_core::Error::NotACocycle(report.pentagon_failures[0].to_vec()),
            }));
        }
        let xi = xi.normalize(&module).map_err(|e| origin.invalid(e))?;
        GrType::new(module, xi).map_err(|e| origin.invalid(e))
    }

    fn functor(&mut self, v: &Value, origin: &Origin) -> Result<FunctorData> {
        let (v, origin) = self.resolve(v, origin)?;
        let source = self.grtype(self.field(&v, "source", &origin)?, &origin)?;
        let target = self.grtype(self.field(&v, "target", &origin)?, &origin)?;
        let phi: Vec<usize> = decode(self.field(&v, "phi", &origin)?, &origin, "phi")?;
        let f: Vec<Vec<u32>> = decode(self.field(&v, "f", &origin)?, &origin, "f")?;
        let func = FunctorData::new(source, target, &phi, &f).map_err(|e| origin.invalid(e))?;
        let Some(g) = v.get("g") else {
            return Ok(func);
        };
        let (m, g) = self.cochain(g, &origin, Some(func.pulled_module()))?;
        if g.degree() != 2 {
            return origin.malformed("\"g\" must have degree 2");
        }
        let report = check_monoidal(&func, &g);
        if let Some(t) = report.unit_failures.first() {
            return Err(origin.invalid(grcat_core::Error::NotNormalized(t.clone())));
        }
        if let Some(t) = report.failures.first() {
            return Err(origin.invalid(grcat_core::Error::InvalidPair(format!(
                "monoidal equation fails at {t:?}"
            ))));
        }
        let g = g.normalize(&m).map_err(|e| origin.invalid(e))?;
        func.with_g(g).map_err(|e| origin.invalid(e))
    }

    fn kernel(&mut self, v: &Value, origin: &Origin) -> Result<AbstractKernel> {
        let (v, origin) = self.resolve(v, origin)?;
        let pi = self.group(self.field(&v, "pi", &origin)?, &origin)?;
        let g = self.group(self.field(&v, "g", &origin)?, &origin)?;
        let psi: Vec<usize> = decode(self.field(&v, "psi", &origin)?, &origin, "psi")?;
        AbstractKernel::from_group(pi, g, &psi).map_err(|e| origin.invalid(e))
    }
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value, origin: &Origin, what: &str) -> Result<T> {
    serde_json::from_value(v.clone())
        .map_or_else(|e| origin.malformed(format!("field \"{what}\": {e}")), Ok)
}

/// Parses a group file's text (used for the bundled catalog).
pub fn parse_group_text(text: &str) -> Result<FiniteGroup> {
    let origin = Origin {
        dir: PathBuf::new(),
        name: "<group>".into(),
    };
    let v: Value = serde_json::from_str(text).map_err(|source| FormatError::Parse {
        path: origin.name.clone(),
        source,
    })?;
    Workspace::new().group(&v, &origin).map(|g| (*g).clone())
}

pub fn group_value(g: &FiniteGroup) -> Value {
    json!({ "names": g.names(), "table": g.rows() })
}

pub fn abelian_value(a: &FiniteAbelianGroup) -> Value {
    json!({ "invariant_factors": a.invariant_factors() })
}

pub fn module_value(m: &PiModule) -> Value {
    let mut action = Map::new();
    for x in m.group().elements() {
        action.insert(x.to_string(), json!(m.action_images(x)));
    }
    json!({
        "group": group_value(m.group()),
        "carrier": abelian_value(m.carrier()),
        "action": action,
    })
}

pub fn tuple_key(t: &[usize]) -> String {
    t.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Nonzero values only, in storage order.
pub fn cochain_values(m: &PiModule, c: &Cochain) -> Value {
    let mut values = Map::new();
    for t in tuples(m, c.degree()) {
        let v = c.value(m, &t);
        if v.iter().any(|&x| x != 0) {
            values.insert(tuple_key(&t), json!(v));
        }
    }
    Value::Object(values)
}

pub fn cochain_value(m: &PiModule, c: &Cochain, with_module: bool) -> Value {
    let mut map = Map::new();
    map.insert("degree".into(), json!(c.degree()));
    if with_module {
        map.insert("module".into(), module_value(m));
    }
    map.insert("values".into(), cochain_values(m, c));
    Value::Object(map)
}

pub fn grtype_value(t: &GrType) -> Value {
    json!({ "module": module_value(t.module()), "xi": cochain_value(t.module(), t.xi(), false) })
}

pub fn functor_value(f: &FunctorData) -> Value {
    let mut map = Map::new();
    map.insert("source".into(), grtype_value(f.source()));
    map.insert("target".into(), grtype_value(f.target()));
    map.insert("phi".into(), json!(f.phi().images()));
    map.insert("f".into(), json!(f.f().images()));
    if let Some(g) = f.g() {
        map.insert("g".into(), cochain_value(f.pulled_module(), g, false));
    }
    Value::Object(map)
}

pub fn kernel_value(k: &AbstractKernel) -> Value {
    json!({ "pi": group_value(k.pi()), "g": group_value(k.g()), "psi": k.psi().images() })
}

pub fn object_value(o: &Object) -> Value {
    match o {
        Object::Group(g) => group_value(g),
        Object::AbelianGroup(a) => abelian_value(a),
        Object::Module(m) => module_value(m),
        Object::Cochain(m, c) => cochain_value(m, c, true),
        Object::GrType(t) => grtype_value(t),
        Object::Functor(f) => functor_value(f),
        Object::Kernel(k) => kernel_value(k),
    }
}

/// Canonical text: two-space indentation, short arrays of scalars (and
/// arrays of those) on one line, trailing newline.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

const LINE: usize = 100;

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_scalar),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(compact).collect();
            format!("[{}]", inner.join(", "))
        }
        Value::Object(map) if map.is_empty() => "{}".into(),
        _ => serde_json::to_string(v).expect("scalar"),
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent + 2);
    match v {
        Value::Array(items) if items.iter().all(is_flat) => {
            let line = compact(v);
            if line.len() + indent <= LINE || items.iter().all(is_scalar) {
                out.push_str(&line);
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                let sep = if i + 1 < items.len() { "," } else { "" };
                let _ = writeln!(out, "{pad}{}{sep}", compact(item));
            }
            let _ = write!(out, "{}]", " ".repeat(indent));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, indent + 2);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", " ".repeat(indent));
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                let _ = write!(
                    out,
                    "{pad}{}: ",
                    serde_json::to_string(key).expect("string")
                );
                write_value(out, item, indent + 2);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", " ".repeat(indent));
        }
        _ => out.push_str(&compact(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_layout() {
        let v = json!({ "a": [1, 2], "b": { "c": [[0, 1], [1, 0]] }, "d": {} });
        assert_eq!(
            render(&v),
            "{\n  \"a\": [1, 2],\n  \"b\": {\n    \"c\": [[0, 1], [1, 0]]\n  },\n  \"d\": {}\n}\n"
        );
    }

    #[test]
    fn kind_detection() {
        let detect = |v: Value| Kind::detect(v.as_object().unwrap());
        assert_eq!(detect(json!({"table": []})), Some(Kind::Group));
        assert_eq!(
            detect(json!({"invariant_factors": []})),
            Some(Kind::AbelianGroup)
        );
        assert_eq!(
            detect(json!({"group": {}, "carrier": {}})),
            Some(Kind::Module)
        );
        assert_eq!(
            detect(json!({"degree": 2, "values": {}})),
            Some(Kind::Cochain)
        );
        assert_eq!(detect(json!({"module": {}, "xi": {}})), Some(Kind::GrType));
        assert_eq!(detect(json!({"phi": []})), Some(Kind::Functor));
        assert_eq!(detect(json!({"psi": []})), Some(Kind::Kernel));
        assert_eq!(detect(json!({"x": 1})), None);
    }

    #[test]
    fn catalog_reference() {
        let mut ws = Workspace::new();
        match ws.load_spec("catalog:S3").unwrap() {
            Object::Group(g) => assert_eq!(g.order(), 6),
            other => panic!("unexpected {:?}", other.kind()),
        }
        assert!(ws.load_spec("catalog:nope").is_err());
    }
}
