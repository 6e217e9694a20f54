//! The JSON session format and its resolution into library objects.
//!
//! Every structure table is a sparse list of entries `{args, value}`: `args`
//! names one basis element per slot and `value` maps target basis names to
//! polynomial strings in `D` and `L1, L2, …`. Missing entries are zero.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use confext::cdmod::{CdLinearMap, FreeCdModule, ModElement};
use confext::conformal::{Bimodule, ConformalAlgebra, SesqMap};
use confext::hochschild::Cochain;
use confext::homotopy::{CrossedExtension, CrossedModule, HomotopyError, TwoTermSHAC};
use confext::nonabelian::{canonical_maps, Extension, NonAbelianCocycle, NonAbelianError};
use confext::symexpr::{parse, Poly, SymError};

pub type Matrix = Vec<Vec<String>>;
pub type Table = Vec<Entry>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cochains: BTreeMap<String, CochainSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cocycles: BTreeMap<String, CocycleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extensions: BTreeMap<String, ExtensionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, Matrix>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pairs: BTreeMap<String, PairSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crossed_modules: BTreeMap<String, CrossedSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crossed_extensions: BTreeMap<String, CrossedExtSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub shacs: BTreeMap<String, ShacSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub args: Vec<String>,
    pub value: BTreeMap<String, String>,
}

/// A basis given inline or by the name of an entry in `modules`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Basis {
    Names(Vec<String>),
    Module(String),
}

/// A matrix given inline or by the name of an entry in `maps`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapRef {
    Inline(Matrix),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub basis: Basis,
    #[serde(default)]
    pub products: Table,
}

/// Either `regular: true` (the algebra acting on itself) or explicit actions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Table,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainSpec {
    pub bimodule: String,
    pub degree: usize,
    #[serde(default)]
    pub values: Table,
}

/// `left: B × A → A`, `right: A × B → A`, `chi: B × B → A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    pub a: String,
    pub b: String,
    #[serde(default)]
    pub left: Table,
    #[serde(default)]
    pub right: Table,
    #[serde(default)]
    pub chi: Table,
}

/// Maps default to the canonical ones when `E` has basis `A` then `B`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub a: String,
    pub b: String,
    pub e: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<MapRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<MapRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<MapRef>,
}

/// A pair of maps on `A` and on `B`: automorphisms or derivations depending
/// on the command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<MapRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<MapRef>,
}

/// `left: X × Y → Y`, `right: Y × X → Y`, `rho: Y → X`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedSpec {
    pub x: String,
    pub y: String,
    pub rho: MapRef,
    #[serde(default)]
    pub left: Table,
    #[serde(default)]
    pub right: Table,
}

/// `0 → M → Y → X → A → 0`; `m` names a bimodule over `A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedExtSpec {
    pub m: String,
    pub crossed: String,
    pub alpha: MapRef,
    pub gamma: MapRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub varrho: Option<MapRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im_basis: Option<MapRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub varsigma: Option<MapRef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShacSpec {
    pub a1: Basis,
    pub a0: Basis,
    pub fd: MapRef,
    #[serde(default)]
    pub m00: Table,
    #[serde(default)]
    pub m01: Table,
    #[serde(default)]
    pub m10: Table,
    #[serde(default)]
    pub m3: Table,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ddeg: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ldeg: Option<u32>,
}

/// Malformed input, with the file and the position inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub file: String,
    pub location: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}: {}", self.file, self.message)
        } else {
            write!(f, "{}: at {}: {}", self.file, self.location, self.message)
        }
    }
}

impl std::error::Error for InputError {}

impl SessionFile {
    pub fn from_json(text: &str, file: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError {
            file: file.to_string(),
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| InputError {
            file: name.clone(),
            location: String::new(),
            message: e.to_string(),
        })?;
        Self::from_json(&text, &name)
    }

    /// Add every object of `other`; names already present are replaced.
    pub fn merge(&mut self, other: SessionFile) {
        self.modules.extend(other.modules);
        self.algebras.extend(other.algebras);
        self.bimodules.extend(other.bimodules);
        self.cochains.extend(other.cochains);
        self.cocycles.extend(other.cocycles);
        self.extensions.extend(other.extensions);
        self.maps.extend(other.maps);
        self.pairs.extend(other.pairs);
        self.crossed_modules.extend(other.crossed_modules);
        self.crossed_extensions.extend(other.crossed_extensions);
        self.shacs.extend(other.shacs);
        if other.bounds.is_some() {
            self.bounds = other.bounds;
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == SessionFile::default()
    }
}

/// Objects of one kind, used to pick the unique object when no name is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Bimodule,
    Cochain,
    Cocycle,
    Extension,
    Map,
    Pair,
    Crossed,
    CrossedExtension,
    Shac,
}

impl Kind {
    pub fn section(self) -> &'static str {
        match self {
            Kind::Algebra => "algebras",
            Kind::Bimodule => "bimodules",
            Kind::Cochain => "cochains",
            Kind::Cocycle => "cocycles",
            Kind::Extension => "extensions",
            Kind::Map => "maps",
            Kind::Pair => "pairs",
            Kind::Crossed => "crossed_modules",
            Kind::CrossedExtension => "crossed_extensions",
            Kind::Shac => "shacs",
        }
    }
}

/// A loaded session file together with its path, resolving names into
/// library objects. Structures are built without their axiom checks; the
/// commands decide what to verify.
pub struct Session {
    pub file: SessionFile,
    pub path: PathBuf,
}

/// `path` or `path#name`.
pub fn split_ref(r: &str) -> (&str, Option<&str>) {
    match r.rsplit_once('#') {
        Some((p, n)) if !n.is_empty() => (p, Some(n)),
        _ => (r, None),
    }
}

impl Session {
    pub fn load(path: &Path) -> Result<Self, InputError> {
        Ok(Session {
            file: SessionFile::load(path)?,
            path: path.to_path_buf(),
        })
    }

    pub fn new(file: SessionFile, path: &str) -> Self {
        Session {
            file,
            path: PathBuf::from(path),
        }
    }

    pub fn err(&self, location: impl Into<String>, message: impl Into<String>) -> InputError {
        InputError {
            file: self.path.display().to_string(),
            location: location.into(),
            message: message.into(),
        }
    }

    fn names(&self, kind: Kind) -> Vec<&String> {
        let f = &self.file;
        match kind {
            Kind::Algebra => f.algebras.keys().collect(),
            Kind::Bimodule => f.bimodules.keys().collect(),
            Kind::Cochain => f.cochains.keys().collect(),
            Kind::Cocycle => f.cocycles.keys().collect(),
            Kind::Extension => f.extensions.keys().collect(),
            Kind::Map => f.maps.keys().collect(),
            Kind::Pair => f.pairs.keys().collect(),
            Kind::Crossed => f.crossed_modules.keys().collect(),
            Kind::CrossedExtension => f.crossed_extensions.keys().collect(),
            Kind::Shac => f.shacs.keys().collect(),
        }
    }

    pub fn has(&self, kind: Kind, name: &str) -> bool {
        self.names(kind).iter().any(|n| n.as_str() == name)
    }

    /// `name` if given and present, otherwise the only object of `kind`.
    pub fn pick(&self, kind: Kind, name: Option<&str>) -> Result<String, InputError> {
        let names = self.names(kind);
        match name {
            Some(n) if names.iter().any(|m| m.as_str() == n) => Ok(n.to_string()),
            Some(n) => Err(self.err(kind.section(), format!("no object named '{n}'"))),
            None if names.len() == 1 => Ok(names[0].clone()),
            None if names.is_empty() => Err(self.err("", format!("no {} in file", kind.section()))),
            None => Err(self.err(
                kind.section(),
                format!("several objects, choose one with #name: {}", join(&names)),
            )),
        }
    }

    pub fn bounds(&self) -> Bounds {
        self.file.bounds.unwrap_or_default()
    }

    fn basis(&self, b: &Basis, loc: &str) -> Result<FreeCdModule, InputError> {
        let names = match b {
            Basis::Names(n) => n.clone(),
            Basis::Module(m) => self
                .file
                .modules
                .get(m)
                .cloned()
                .ok_or_else(|| self.err(loc, format!("unknown module '{m}'")))?,
        };
        FreeCdModule::new(names).map_err(|e| self.err(loc, e.to_string()))
    }

    fn poly(&self, text: &str, arity: usize, loc: &str) -> Result<Poly, InputError> {
        parse(text, arity).map_err(|e| match e {
            SymError::Syntax { position, expected } => self.err(
                loc,
                format!("in \"{text}\" at character {position}: expected {expected}"),
            ),
            other => self.err(loc, format!("in \"{text}\": {other}")),
        })
    }

    fn element(
        &self,
        value: &BTreeMap<String, String>,
        target: &FreeCdModule,
        arity: usize,
        loc: &str,
    ) -> Result<ModElement, InputError> {
        let mut v = ModElement::zero(target.rank(), arity);
        for (name, text) in value {
            let vloc = format!("{loc}.value.{name}");
            let i = target
                .index_of(name)
                .ok_or_else(|| self.err(&vloc, format!("'{name}' is not in the target basis")))?;
            v.set(i, self.poly(text, arity, &vloc)?);
        }
        Ok(v)
    }

    /// A table over the given slot bases; unlisted entries are zero.
    pub fn table(
        &self,
        entries: &[Entry],
        slots: &[&FreeCdModule],
        target: &FreeCdModule,
        loc: &str,
    ) -> Result<SesqMap, InputError> {
        let n = slots.len();
        let arity = n.saturating_sub(1);
        let mut m = SesqMap::zero(slots.iter().map(|s| s.rank()).collect(), target.rank());
        let mut seen = std::collections::BTreeSet::new();
        for (k, e) in entries.iter().enumerate() {
            let eloc = format!("{loc}[{k}]");
            if e.args.len() != n {
                return Err(self.err(&eloc, format!("expected {n} arguments, found {}", e.args.len())));
            }
            let mut tuple = Vec::with_capacity(n);
            for (s, (name, basis)) in e.args.iter().zip(slots).enumerate() {
                let i = basis.index_of(name).ok_or_else(|| {
                    self.err(format!("{eloc}.args[{s}]"), format!("'{name}' is not in the basis of this slot"))
                })?;
                tuple.push(i);
            }
            if !seen.insert(tuple.clone()) {
                return Err(self.err(&eloc, "duplicate entry"));
            }
            m.set(&tuple, self.element(&e.value, target, arity, &eloc)?);
        }
        Ok(m)
    }

    pub fn matrix(&self, r: &MapRef, loc: &str) -> Result<CdLinearMap, InputError> {
        let (rows, loc) = match r {
            MapRef::Inline(m) => (m, loc.to_string()),
            MapRef::Name(n) => (
                self.file
                    .maps
                    .get(n)
                    .ok_or_else(|| self.err(loc, format!("unknown map '{n}'")))?,
                format!("maps.{n}"),
            ),
        };
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(self.err(format!("{loc}[{i}]"), format!("expected {cols} entries, found {}", row.len())));
            }
            let ps = row
                .iter()
                .enumerate()
                .map(|(j, s)| self.poly(s, 0, &format!("{loc}[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            entries.push(ps);
        }
        CdLinearMap::new(entries, rows.len(), cols).map_err(|e| self.err(loc, e.to_string()))
    }

    /// A matrix with a required shape.
    pub fn matrix_of(&self, r: &MapRef, rows: usize, cols: usize, loc: &str) -> Result<CdLinearMap, InputError> {
        let m = self.matrix(r, loc)?;
        // An empty inline matrix stands for any shape with a zero dimension.
        if rows * cols == 0 && m.rows() * m.cols() == 0 {
            return Ok(CdLinearMap::zero(rows, cols));
        }
        if (m.rows(), m.cols()) != (rows, cols) {
            return Err(self.err(
                loc,
                format!("expected a {rows}×{cols} matrix, found {}×{}", m.rows(), m.cols()),
            ));
        }
        Ok(m)
    }

    pub fn algebra(&self, name: &str) -> Result<ConformalAlgebra, InputError> {
        let loc = format!("algebras.{name}");
        let spec = self
            .file
            .algebras
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown algebra '{name}'")))?;
        let carrier = self.basis(&spec.basis, &format!("{loc}.basis"))?;
        let mult = self.table(&spec.products, &[&carrier, &carrier], &carrier, &format!("{loc}.products"))?;
        Ok(ConformalAlgebra::from_mult(carrier, mult))
    }

    pub fn bimodule(&self, name: &str) -> Result<Bimodule, InputError> {
        let loc = format!("bimodules.{name}");
        let spec = self
            .file
            .bimodules
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown bimodule '{name}'")))?;
        let a = self.algebra(&spec.algebra)?;
        if spec.regular {
            if spec.basis.is_some() || !spec.left.is_empty() || !spec.right.is_empty() {
                return Err(self.err(loc, "a regular bimodule takes no basis or actions"));
            }
            return Ok(Bimodule::regular(&a));
        }
        let basis = spec
            .basis
            .as_ref()
            .ok_or_else(|| self.err(&loc, "missing 'basis' (or set 'regular': true)"))?;
        let carrier = self.basis(basis, &format!("{loc}.basis"))?;
        let left = self.table(&spec.left, &[a.carrier(), &carrier], &carrier, &format!("{loc}.left"))?;
        let right = self.table(&spec.right, &[&carrier, a.carrier()], &carrier, &format!("{loc}.right"))?;
        Ok(Bimodule::from_maps(a, carrier, left, right))
    }

    pub fn cochain(&self, name: &str) -> Result<(Bimodule, Cochain), InputError> {
        let loc = format!("cochains.{name}");
        let spec = self
            .file
            .cochains
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown cochain '{name}'")))?;
        let m = self.bimodule(&spec.bimodule)?;
        let slots = vec![m.algebra().carrier(); spec.degree];
        let c = self.table(&spec.values, &slots, m.carrier(), &format!("{loc}.values"))?;
        Ok((m, c))
    }

    pub fn cocycle(&self, name: &str) -> Result<NonAbelianCocycle, InputError> {
        let loc = format!("cocycles.{name}");
        let spec = self
            .file
            .cocycles
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown cocycle '{name}'")))?;
        let (a, b) = (self.algebra(&spec.a)?, self.algebra(&spec.b)?);
        let (ca, cb) = (a.carrier().clone(), b.carrier().clone());
        let left = self.table(&spec.left, &[&cb, &ca], &ca, &format!("{loc}.left"))?;
        let right = self.table(&spec.right, &[&ca, &cb], &ca, &format!("{loc}.right"))?;
        let chi = self.table(&spec.chi, &[&cb, &cb], &ca, &format!("{loc}.chi"))?;
        NonAbelianCocycle::new_unchecked(a, b, left, right, chi).map_err(|e| self.err(loc, e.to_string()))
    }

    pub fn extension(&self, name: &str) -> Result<Result<Extension, NonAbelianError>, InputError> {
        let loc = format!("extensions.{name}");
        let spec = self
            .file
            .extensions
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown extension '{name}'")))?;
        let (a, b, e) = (self.algebra(&spec.a)?, self.algebra(&spec.b)?, self.algebra(&spec.e)?);
        let (ra, rb, re) = (a.rank(), b.rank(), e.rank());
        let (ca, cb, cg) = canonical_maps(ra, rb);
        let pick = |r: &Option<MapRef>, rows, cols, default: CdLinearMap, field: &str| match r {
            Some(r) => self.matrix_of(r, rows, cols, &format!("{loc}.{field}")),
            None if re == ra + rb => Ok(default),
            None => Err(self.err(&loc, format!("'{field}' is required unless rank E = rank A + rank B"))),
        };
        let alpha = pick(&spec.alpha, re, ra, ca, "alpha")?;
        let beta = pick(&spec.beta, rb, re, cb, "beta")?;
        let gamma = pick(&spec.gamma, re, rb, cg, "gamma")?;
        Ok(Extension::new(a, b, e, alpha, beta, gamma))
    }

    /// The two maps of a pair, each checked against its rank.
    pub fn pair(&self, name: &str, ra: usize, rb: usize) -> Result<(Option<CdLinearMap>, Option<CdLinearMap>), InputError> {
        let loc = format!("pairs.{name}");
        let spec = self
            .file
            .pairs
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown pair '{name}'")))?;
        let a = spec.a.as_ref().map(|r| self.matrix_of(r, ra, ra, &format!("{loc}.a"))).transpose()?;
        let b = spec.b.as_ref().map(|r| self.matrix_of(r, rb, rb, &format!("{loc}.b"))).transpose()?;
        Ok((a, b))
    }

    pub fn crossed(&self, name: &str) -> Result<CrossedModule, InputError> {
        let loc = format!("crossed_modules.{name}");
        let spec = self
            .file
            .crossed_modules
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown crossed module '{name}'")))?;
        let (x, y) = (self.algebra(&spec.x)?, self.algebra(&spec.y)?);
        let (cx, cy) = (x.carrier().clone(), y.carrier().clone());
        let rho = self.matrix_of(&spec.rho, x.rank(), y.rank(), &format!("{loc}.rho"))?;
        let left = self.table(&spec.left, &[&cx, &cy], &cy, &format!("{loc}.left"))?;
        let right = self.table(&spec.right, &[&cy, &cx], &cy, &format!("{loc}.right"))?;
        CrossedModule::new_unchecked(x, y, rho, left, right).map_err(|e| self.err(loc, e.to_string()))
    }

    pub fn crossed_extension(&self, name: &str) -> Result<Result<CrossedExtension, HomotopyError>, InputError> {
        let loc = format!("crossed_extensions.{name}");
        let spec = self
            .file
            .crossed_extensions
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown crossed extension '{name}'")))?;
        let m = self.bimodule(&spec.m)?;
        let c = self.crossed(&spec.crossed)?;
        let (rm, ry, rx, ra) = (m.rank(), c.y().rank(), c.x().rank(), m.algebra().rank());
        let alpha = self.matrix_of(&spec.alpha, ry, rm, &format!("{loc}.alpha"))?;
        let gamma = self.matrix_of(&spec.gamma, ra, rx, &format!("{loc}.gamma"))?;
        let base = match CrossedExtension::new(m, c, alpha, gamma) {
            Ok(s) => s,
            Err(e) => return Ok(Err(e)),
        };
        let Some(varrho) = &spec.varrho else {
            return Ok(Ok(base));
        };
        let varrho = self.matrix_of(varrho, rx, ra, &format!("{loc}.varrho"))?;
        Ok(match (&spec.im_basis, &spec.varsigma) {
            (None, None) => base.with_default_sections(varrho),
            (Some(ib), Some(vs)) => {
                let ib = self.matrix(ib, &format!("{loc}.im_basis"))?;
                if ib.rows() != rx {
                    return Err(self.err(format!("{loc}.im_basis"), format!("expected {rx} rows")));
                }
                let vs = self.matrix_of(vs, ry, ib.cols(), &format!("{loc}.varsigma"))?;
                base.with_sections(varrho, ib, vs)
            }
            _ => return Err(self.err(loc, "'im_basis' and 'varsigma' go together")),
        })
    }

    pub fn shac(&self, name: &str) -> Result<TwoTermSHAC, InputError> {
        let loc = format!("shacs.{name}");
        let spec = self
            .file
            .shacs
            .get(name)
            .ok_or_else(|| self.err("", format!("unknown 2-term structure '{name}'")))?;
        let a1 = self.basis(&spec.a1, &format!("{loc}.a1"))?;
        let a0 = self.basis(&spec.a0, &format!("{loc}.a0"))?;
        let fd = self.matrix_of(&spec.fd, a0.rank(), a1.rank(), &format!("{loc}.fd"))?;
        let m00 = self.table(&spec.m00, &[&a0, &a0], &a0, &format!("{loc}.m00"))?;
        let m01 = self.table(&spec.m01, &[&a0, &a1], &a1, &format!("{loc}.m01"))?;
        let m10 = self.table(&spec.m10, &[&a1, &a0], &a1, &format!("{loc}.m10"))?;
        let m3 = self.table(&spec.m3, &[&a0, &a0, &a0], &a1, &format!("{loc}.m3"))?;
        TwoTermSHAC::new_unchecked(a1, a0, fd, m00, m01, m10, m3).map_err(|e| self.err(loc, e.to_string()))
    }
}

fn join(names: &[&String]) -> String {
    names.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ")
}

// Serialization of library objects back into session entries.

pub fn matrix_spec(m: &CdLinearMap) -> Matrix {
    m.entries().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
}

pub fn table_spec(m: &SesqMap, slots: &[&FreeCdModule], target: &FreeCdModule) -> Table {
    m.tuples()
        .into_iter()
        .filter_map(|t| {
            let v = m.get(&t);
            if v.is_zero() {
                return None;
            }
            let value = v
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(i, p)| (target.names()[i].clone(), p.to_string()))
                .collect();
            let args = t.iter().zip(slots).map(|(&i, s)| s.names()[i].clone()).collect();
            Some(Entry { args, value })
        })
        .collect()
}

pub fn algebra_spec(a: &ConformalAlgebra) -> AlgebraSpec {
    let c = a.carrier();
    AlgebraSpec {
        basis: Basis::Names(c.names().to_vec()),
        products: table_spec(a.mult(), &[c, c], c),
    }
}

pub fn cocycle_spec(c: &NonAbelianCocycle, a: &str, b: &str) -> CocycleSpec {
    let (ca, cb) = (c.a().carrier(), c.b().carrier());
    CocycleSpec {
        a: a.to_string(),
        b: b.to_string(),
        left: table_spec(c.left(), &[cb, ca], ca),
        right: table_spec(c.right(), &[ca, cb], ca),
        chi: table_spec(c.chi(), &[cb, cb], ca),
    }
}

pub fn cochain_spec(m: &Bimodule, c: &Cochain, bimodule: &str) -> CochainSpec {
    let slots = vec![m.algebra().carrier(); c.degree()];
    CochainSpec {
        bimodule: bimodule.to_string(),
        degree: c.degree(),
        values: table_spec(c, &slots, m.carrier()),
    }
}

pub fn shac_spec(t: &TwoTermSHAC) -> ShacSpec {
    let (a1, a0) = (t.a1(), t.a0());
    ShacSpec {
        a1: Basis::Names(a1.names().to_vec()),
        a0: Basis::Names(a0.names().to_vec()),
        fd: MapRef::Inline(matrix_spec(t.fd())),
        m00: table_spec(t.m2_00(), &[a0, a0], a0),
        m01: table_spec(t.m2_01(), &[a0, a1], a1),
        m10: table_spec(t.m2_10(), &[a1, a0], a1),
        m3: table_spec(t.m3(), &[a0, a0, a0], a1),
    }
}

pub fn crossed_spec(c: &CrossedModule, x: &str, y: &str) -> CrossedSpec {
    let (cx, cy) = (c.x().carrier(), c.y().carrier());
    CrossedSpec {
        x: x.to_string(),
        y: y.to_string(),
        rho: MapRef::Inline(matrix_spec(c.rho())),
        left: table_spec(c.left(), &[cx, cy], cy),
        right: table_spec(c.right(), &[cy, cx], cy),
    }
}

pub fn bimodule_spec(m: &Bimodule, algebra: &str) -> BimoduleSpec {
    let (ca, cm) = (m.algebra().carrier(), m.carrier());
    BimoduleSpec {
        algebra: algebra.to_string(),
        regular: false,
        basis: Some(Basis::Names(cm.names().to_vec())),
        left: table_spec(m.left(), &[ca, cm], cm),
        right: table_spec(m.right(), &[cm, ca], cm),
    }
}
