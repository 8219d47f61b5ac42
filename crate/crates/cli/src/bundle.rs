//! Problem bundles: a JSON object with a `task` name, optional common
//! settings, and task fields at the top level.

use std::fmt;
use std::marker::PhantomData;

use crossmod::grpcore::{AbelianCoefficients, FiniteGroup};
use crossmod::obstr::{cyclic_extension, heisenberg_extension, CentralXModExtension};
use crossmod::unitary::Tolerances;
use crossmod::xmod::{Cocycle1, CrossedModule};
use crossmod::Budget;
use serde::de::{self, DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// Settings shared by every task.
#[derive(Clone, Debug)]
pub struct Common {
    pub task: String,
    pub seed: u64,
    pub budget: Budget,
    pub tolerances: Tolerances,
}

/// A malformed bundle, located by a JSON pointer.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleError {
    pub pointer: String,
    pub message: String,
}

impl BundleError {
    pub fn at(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        BundleError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for BundleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pointer.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.pointer, self.message)
        }
    }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    path.iter()
        .filter_map(|s| match s {
            Segment::Seq { index } => Some(format!("/{index}")),
            Segment::Map { key } => Some(format!("/{}", escape(key))),
            Segment::Enum { .. } | Segment::Unknown => None,
        })
        .collect()
}

/// Deserializes `value`, reporting failures with a pointer under `prefix`.
pub fn parse<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T, BundleError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let pointer = format!("{prefix}{}", pointer_of(e.path()));
        BundleError::at(pointer, e.into_inner().to_string())
    })
}

/// Splits a bundle into its common settings and the task fields.
pub fn split(text: &str) -> Result<(Common, Map<String, Value>), BundleError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| BundleError::at("", format!("malformed JSON: {e}")))?;
    let Value::Object(mut map) = value else {
        return Err(BundleError::at("", "a bundle must be a JSON object"));
    };
    if let Some(v) = map.remove("schema") {
        let version: u64 = parse(v, "/schema")?;
        if version != SCHEMA_VERSION {
            return Err(BundleError::at(
                "/schema",
                format!("unsupported schema version {version}, expected {SCHEMA_VERSION}"),
            ));
        }
    }
    let task: String = match map.remove("task") {
        Some(v) => parse(v, "/task")?,
        None => return Err(BundleError::at("/task", "missing field `task`")),
    };
    let seed = map
        .remove("seed")
        .map(|v| parse(v, "/seed"))
        .transpose()?
        .unwrap_or(0);
    let budget = map
        .remove("budget")
        .map(|v| parse(v, "/budget"))
        .transpose()?
        .unwrap_or_default();
    let tolerances = map
        .remove("tolerances")
        .map(|v| parse(v, "/tolerances"))
        .transpose()?
        .unwrap_or_default();
    Ok((
        Common {
            task,
            seed,
            budget,
            tolerances,
        },
        map,
    ))
}

/// Either a preset name or a full JSON description.
#[derive(Clone, Debug)]
pub enum Named<T> {
    Name(String),
    Full(T),
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Named<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Named<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a preset name or an object")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Self::Value, E> {
                Ok(Named::Name(s.to_string()))
            }
            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Self::Value, A::Error> {
                T::deserialize(de::value::MapAccessDeserializer::new(map)).map(Named::Full)
            }
        }
        d.deserialize_any(V(PhantomData))
    }
}

pub type GroupSpec = Named<FiniteGroup>;
pub type ModuleSpec = Named<AbelianCoefficients>;
pub type XModSpec = Named<CrossedModule>;

fn number(s: &str, what: &str, max: usize) -> Result<usize, String> {
    let n: usize = s
        .parse()
        .map_err(|_| format!("`{what}` needs a number, got `{s}`"))?;
    if n == 0 || n > max {
        return Err(format!("`{what}{n}` is outside 1..={max}"));
    }
    Ok(n)
}

/// `1`, `C<n>`/`Z<n>`, `S<k>`, `D<m>` (order `2m`), `V4`, and `A x B` products.
pub fn group_by_name(name: &str) -> Result<FiniteGroup, String> {
    let parts: Vec<&str> = name.split('x').map(str::trim).collect();
    if parts.len() > 1 {
        let mut g = group_by_name(parts[0])?;
        for p in &parts[1..] {
            g = FiniteGroup::product(&g, &group_by_name(p)?);
        }
        return Ok(g);
    }
    let name = name.trim();
    match name {
        "1" | "trivial" => return Ok(FiniteGroup::trivial()),
        "V4" => return group_by_name("C2xC2").map(|g| g.with_label("V4")),
        _ => {}
    }
    let (head, tail) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    match head {
        "C" | "Z" => Ok(FiniteGroup::cyclic(number(tail, head, 1024)?)),
        "S" => Ok(FiniteGroup::symmetric(number(tail, head, 5)?)),
        "D" => Ok(FiniteGroup::dihedral(number(tail, head, 256)?)),
        _ => Err(format!(
            "unknown group `{name}`; use 1, C<n>, Z<n>, S<k>, D<m>, V4 or products AxB"
        )),
    }
}

/// `Z<n>-trivial`, `Z<a>xZ<b>-trivial`, and `Q/Z` (trivial action).
pub fn module_by_name(name: &str) -> Result<AbelianCoefficients, String> {
    let base = name.strip_suffix("-trivial").unwrap_or(name);
    if base == "Q/Z" || base == "QZ" {
        return Ok(AbelianCoefficients::circle());
    }
    let factors = base
        .split('x')
        .map(|p| {
            let p = p.trim();
            p.strip_prefix('Z')
                .or_else(|| p.strip_prefix('C'))
                .ok_or_else(|| {
                    format!("unknown module `{name}`; use Z<n>-trivial, Z<a>xZ<b>-trivial or Q/Z")
                })
                .and_then(|n| number(n, "Z", 1 << 20))
                .map(|n| n as u64)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AbelianCoefficients::finite(&factors))
}

/// `abelian:<H>` for `H -> 1`, `group:<G>` for `1 -> G`, `identity:<G>` for `G -> G`.
pub fn xmod_by_name(name: &str) -> Result<CrossedModule, String> {
    let (kind, group) = name.split_once(':').ok_or_else(|| {
        format!("unknown crossed module `{name}`; use abelian:<H>, group:<G> or identity:<G>")
    })?;
    let g = group_by_name(group)?;
    match kind {
        "abelian" => CrossedModule::abelian(g).map_err(|e| e.to_string()),
        "group" => Ok(CrossedModule::of_group(g)),
        "identity" => Ok(CrossedModule::identity(g)),
        _ => Err(format!("unknown crossed module kind `{kind}`")),
    }
}

pub fn group(spec: &GroupSpec, at: &str) -> Result<FiniteGroup, BundleError> {
    match spec {
        Named::Name(n) => group_by_name(n).map_err(|m| BundleError::at(at, m)),
        Named::Full(g) => Ok(g.clone()),
    }
}

pub fn module(spec: &ModuleSpec, at: &str) -> Result<AbelianCoefficients, BundleError> {
    match spec {
        Named::Name(n) => module_by_name(n).map_err(|m| BundleError::at(at, m)),
        Named::Full(m) => Ok(m.clone()),
    }
}

pub fn xmod(spec: &XModSpec, at: &str) -> Result<CrossedModule, BundleError> {
    match spec {
        Named::Name(n) => xmod_by_name(n).map_err(|m| BundleError::at(at, m)),
        Named::Full(x) => Ok(x.clone()),
    }
}

/// `Z/k -> Z/(k·m) -> Z/m` over `G`, each element acting by its sign.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicSpec {
    pub k: usize,
    pub m: usize,
    #[serde(rename = "G")]
    pub g: GroupSpec,
    #[serde(default)]
    pub signs: Option<Vec<i64>>,
}

/// An extension given by its two crossed modules and `φ0`, as a cyclic
/// extension, or as the Heisenberg extension of odd degree `n`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub xmod0: Option<XModSpec>,
    pub xmod1: Option<XModSpec>,
    pub phi0: Option<Vec<usize>>,
    pub cyclic: Option<CyclicSpec>,
    pub heisenberg: Option<usize>,
}

pub fn extension(spec: &ExtensionSpec, at: &str) -> Result<CentralXModExtension, BundleError> {
    let fail = |m: String| BundleError::at(at, m);
    match (spec, &spec.cyclic, spec.heisenberg) {
        (
            ExtensionSpec {
                xmod0: Some(a),
                xmod1: Some(b),
                phi0: Some(p),
                ..
            },
            None,
            None,
        ) => {
            let x0 = xmod(a, &format!("{at}/xmod0"))?;
            let x1 = xmod(b, &format!("{at}/xmod1"))?;
            CentralXModExtension::new(x0, x1, p.clone()).map_err(|e| fail(e.to_string()))
        }
        (
            ExtensionSpec {
                xmod0: None,
                xmod1: None,
                phi0: None,
                ..
            },
            Some(c),
            None,
        ) => {
            let g = group(&c.g, &format!("{at}/cyclic/G"))?;
            let signs = c.signs.clone().unwrap_or_else(|| vec![1; g.order()]);
            if signs.len() != g.order() || signs.iter().any(|s| s.abs() != 1) {
                return Err(BundleError::at(
                    format!("{at}/cyclic/signs"),
                    "one sign ±1 per element of G",
                ));
            }
            cyclic_extension(c.k, c.m, &g, &signs).map_err(|e| fail(e.to_string()))
        }
        (
            ExtensionSpec {
                xmod0: None,
                xmod1: None,
                phi0: None,
                ..
            },
            None,
            Some(n),
        ) => heisenberg_extension(n)
            .map(|(e, _)| e)
            .map_err(|e| fail(e.to_string())),
        _ => Err(fail(
            "give either xmod0, xmod1 and phi0, or cyclic, or heisenberg".into(),
        )),
    }
}

/// `α` and `u` tables, `u[g][h]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    pub alpha: Vec<usize>,
    pub u: Vec<Vec<usize>>,
}

pub fn cocycle(
    spec: &CocycleSpec,
    gamma: &FiniteGroup,
    x: &CrossedModule,
    at: &str,
) -> Result<Cocycle1, BundleError> {
    Cocycle1::new(gamma, x, spec.alpha.clone(), spec.u.clone())
        .map_err(|e| BundleError::at(at, e.to_string()))
}
