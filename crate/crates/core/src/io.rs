//! JSON file formats for groups, homomorphisms, degrees, bundles and actions.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bundle::{LeviInducedBundle, SplitBundle};
use crate::change_of_group::{HomData, RationalDegree};
use crate::error::{Error, Result};
use crate::exact_linalg::{QMat, QVec, Rational};
use crate::groups;
use crate::kirwan::LinearizedAction;
use crate::root_datum::{invariant_norm, ComponentAction, GroupData, InvariantNorm, RootDatum};

/// A group given inline or as a builtin name such as `"gl3"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Builtin { builtin: String },
    Explicit(GroupFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub rank: usize,
    #[serde(default)]
    pub roots: Vec<QVec>,
    #[serde(default)]
    pub coroots: Vec<QVec>,
    #[serde(default)]
    pub base: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi0: Option<Pi0File>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pi0File {
    pub elements: Vec<String>,
    pub table: Vec<Vec<TableEntry>>,
    pub action: BTreeMap<String, QMat>,
}

/// Multiplication table entries may name elements by label or by position.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableEntry {
    Index(usize),
    Label(String),
}

/// Either a path (relative to the referencing file) or an inline group.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(GroupSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomFile {
    pub source: GroupRef,
    pub target: GroupRef,
    pub tau: QMat,
    #[serde(default)]
    pub phi0: HashMap<String, String>,
}

/// `{"F": labels, "d": vector}` or `{"F": labels, "characters": [...], "values": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeFile {
    #[serde(rename = "F")]
    pub subgroup: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<QVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<QVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Rational>>,
}

/// A norm matrix or the string `"average-identity"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormSpec {
    Named(String),
    Matrix(QMat),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BundleFile {
    Split {
        group: GroupRef,
        delta: QVec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        norm: Option<NormSpec>,
    },
    Levi {
        group: GroupRef,
        lambda: QVec,
        #[serde(rename = "F", default)]
        subgroup: Vec<String>,
        d: QVec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner_semistable: Option<bool>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub group: GroupRef,
    pub weights: Vec<QVec>,
    pub shift: QVec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSpec>,
}

/// A parsed bundle file.
#[derive(Clone, Debug)]
pub enum Bundle {
    Split { bundle: SplitBundle, norm: InvariantNorm },
    Levi(LeviInducedBundle),
}

/// Reading context: base directory for relative paths and the closure cap.
#[derive(Clone, Debug)]
pub struct Loader {
    base: PathBuf,
    closure_cap: usize,
}

impl Default for Loader {
    fn default() -> Self {
        Loader { base: PathBuf::from("."), closure_cap: crate::exact_linalg::DEFAULT_CLOSURE_CAP }
    }
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>, closure_cap: usize) -> Self {
        Loader { base: base.into(), closure_cap }
    }

    /// A loader resolving paths relative to `file`'s directory.
    fn beside(&self, file: &Path) -> Loader {
        let dir = file.parent().map(Path::to_path_buf).unwrap_or_default();
        Loader { base: dir, closure_cap: self.closure_cap }
    }

    fn resolve(&self, p: &str) -> PathBuf {
        self.base.join(p)
    }

    pub fn group(&self, spec: &GroupSpec) -> Result<GroupData> {
        let g = match spec {
            GroupSpec::Builtin { builtin } => builtin_group(builtin)?,
            GroupSpec::Explicit(f) => group_from_file(f)?,
        };
        Ok(g.with_closure_cap(self.closure_cap))
    }

    pub fn group_ref(&self, r: &GroupRef) -> Result<GroupData> {
        match r {
            GroupRef::Inline(spec) => self.group(spec),
            GroupRef::Path(p) => self.group_path(&self.resolve(p)),
        }
    }

    pub fn group_path(&self, path: &Path) -> Result<GroupData> {
        let spec: GroupSpec = parse(&read_file(path)?, &path.display().to_string())?;
        self.beside(path).group(&spec).map_err(|e| located(e, path))
    }

    pub fn group_str(&self, text: &str) -> Result<GroupData> {
        self.group(&parse(text, "group")?)
    }

    pub fn hom(&self, f: &HomFile) -> Result<HomData> {
        let source = self.group_ref(&f.source)?;
        let target = self.group_ref(&f.target)?;
        HomData::from_labels(&source, &target, f.tau.clone(), &f.phi0)
    }

    pub fn hom_path(&self, path: &Path) -> Result<HomData> {
        let f: HomFile = parse(&read_file(path)?, &path.display().to_string())?;
        self.beside(path).hom(&f).map_err(|e| located(e, path))
    }

    pub fn hom_str(&self, text: &str) -> Result<HomData> {
        self.hom(&parse(text, "homomorphism")?)
    }

    pub fn bundle(&self, f: &BundleFile) -> Result<Bundle> {
        match f {
            BundleFile::Split { group, delta, norm } => {
                let g = self.group_ref(group)?;
                let norm = norm_from_spec(&g, norm.as_ref())?;
                Ok(Bundle::Split { bundle: SplitBundle::new(&g, delta.clone())?, norm })
            }
            BundleFile::Levi { group, lambda, subgroup, d, inner_semistable } => {
                let g = self.group_ref(group)?;
                let labels: Vec<String> = if subgroup.is_empty() {
                    vec![g.components().label(g.components().identity()).to_string()]
                } else {
                    subgroup.clone()
                };
                Ok(Bundle::Levi(LeviInducedBundle::new(&g, lambda.clone(), &labels, d.clone(), *inner_semistable)?))
            }
        }
    }

    pub fn bundle_path(&self, path: &Path) -> Result<Bundle> {
        let f: BundleFile = parse(&read_file(path)?, &path.display().to_string())?;
        self.beside(path).bundle(&f).map_err(|e| located(e, path))
    }

    pub fn action(&self, f: &ActionFile) -> Result<LinearizedAction> {
        let g = self.group_ref(&f.group)?;
        let norm = norm_from_spec(&g, f.norm.as_ref())?;
        LinearizedAction::new(&g, f.weights.clone(), f.shift.clone(), norm)
    }

    pub fn action_path(&self, path: &Path) -> Result<LinearizedAction> {
        let f: ActionFile = parse(&read_file(path)?, &path.display().to_string())?;
        self.beside(path).action(&f).map_err(|e| located(e, path))
    }

    pub fn action_str(&self, text: &str) -> Result<LinearizedAction> {
        self.action(&parse(text, "action")?)
    }
}

fn located(e: Error, path: &Path) -> Error {
    let p = path.display();
    match e {
        Error::DimensionMismatch(m) => Error::DimensionMismatch(format!("{p}: {m}")),
        Error::InvalidDatum(m) => Error::InvalidDatum(format!("{p}: {m}")),
        Error::InvalidComponentAction(m) => Error::InvalidComponentAction(format!("{p}: {m}")),
        Error::NotPositiveDefinite(m) => Error::NotPositiveDefinite(format!("{p}: {m}")),
        Error::InvalidHom(m) => Error::InvalidHom(format!("{p}: {m}")),
        Error::NotASubgroup(m) => Error::NotASubgroup(format!("{p}: {m}")),
        Error::GroupMismatch(m) => Error::GroupMismatch(format!("{p}: {m}")),
        Error::InvariantBroken(m) => Error::InvariantBroken(format!("{p}: {m}")),
        Error::InvalidAction(m) => Error::InvalidAction(format!("{p}: {m}")),
        Error::Parse(m) if !m.starts_with(&p.to_string()) => Error::Parse(format!("{p}: {m}")),
        other => other,
    }
}

pub fn norm_from_spec(g: &GroupData, spec: Option<&NormSpec>) -> Result<InvariantNorm> {
    match spec {
        None => invariant_norm(g, &QMat::identity(g.rank())),
        Some(NormSpec::Named(n)) if n == "average-identity" => invariant_norm(g, &QMat::identity(g.rank())),
        Some(NormSpec::Named(n)) => Err(Error::Parse(format!("unknown norm {n:?}; expected a matrix or \"average-identity\""))),
        Some(NormSpec::Matrix(m)) => InvariantNorm::new(g, m.clone()),
    }
}

/// Reads a degree file for a subgroup of `g`'s components.
pub fn degree_from_file(g: &GroupData, f: &DegreeFile) -> Result<RationalDegree> {
    match (&f.d, &f.characters, &f.values) {
        (Some(d), None, None) => RationalDegree::from_labels(g, &f.subgroup, d.clone()),
        (None, Some(chars), Some(vals)) => {
            let sub = g.components().subgroup_from_labels(&f.subgroup)?;
            RationalDegree::from_character_values(g, &sub, chars, vals)
        }
        _ => Err(Error::Parse("degree needs either \"d\" or both \"characters\" and \"values\"".into())),
    }
}

pub fn degree_path(g: &GroupData, path: &Path) -> Result<RationalDegree> {
    let f: DegreeFile = parse(&read_file(path)?, &path.display().to_string())?;
    degree_from_file(g, &f).map_err(|e| located(e, path))
}

pub fn degree_str(g: &GroupData, text: &str) -> Result<RationalDegree> {
    degree_from_file(g, &parse(text, "degree")?)
}

impl DegreeFile {
    pub fn from_degree(deg: &RationalDegree) -> Self {
        DegreeFile { subgroup: deg.subgroup_labels(), d: Some(deg.d().clone()), characters: None, values: None }
    }
}

pub fn group_from_file(f: &GroupFile) -> Result<GroupData> {
    let datum = RootDatum::new(f.rank, f.roots.clone(), f.coroots.clone(), f.base.clone())?;
    let components = match &f.pi0 {
        None => ComponentAction::trivial(f.rank),
        Some(p) => {
            let index = |e: &TableEntry| -> Result<usize> {
                match e {
                    TableEntry::Index(i) if *i < p.elements.len() => Ok(*i),
                    TableEntry::Index(i) => Err(Error::InvalidComponentAction(format!("table index {i} out of range"))),
                    TableEntry::Label(l) => p
                        .elements
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| Error::InvalidComponentAction(format!("unknown label {l:?} in table"))),
                }
            };
            let table = p.table.iter().map(|row| row.iter().map(index).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            if let Some(extra) = p.action.keys().find(|k| !p.elements.contains(k)) {
                return Err(Error::InvalidComponentAction(format!("action given for unknown label {extra:?}")));
            }
            let matrices = p
                .elements
                .iter()
                .map(|l| p.action.get(l).cloned().ok_or_else(|| Error::InvalidComponentAction(format!("missing action for {l:?}"))))
                .collect::<Result<Vec<_>>>()?;
            ComponentAction::new(p.elements.clone(), table, matrices)?
        }
    };
    GroupData::new(datum, components)
}

/// The inverse of `group_from_file`.
pub fn group_to_file(g: &GroupData) -> GroupFile {
    let d = g.datum();
    let c = g.components();
    let pi0 = (c.order() > 1).then(|| Pi0File {
        elements: c.labels().to_vec(),
        table: c.table().iter().map(|row| row.iter().map(|&j| TableEntry::Label(c.label(j).to_string())).collect()).collect(),
        action: (0..c.order()).map(|a| (c.label(a).to_string(), c.matrix(a).clone())).collect(),
    });
    GroupFile { rank: d.rank(), roots: d.roots().to_vec(), coroots: d.coroots().to_vec(), base: d.base().to_vec(), pi0 }
}

/// `gl<n>`, `sl<n>`, `sp4`, `torus<n>`, `normalizer<n>` (torus of rank `n` extended by
/// `S_n`), `gl<n>-outer` (with the inverse-transpose outer automorphism).
pub fn builtin_group(name: &str) -> Result<GroupData> {
    let num = |prefix: &str, suffix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.strip_suffix(suffix)?.parse().ok().filter(|&n| n >= 1)
    };
    if name == "sp4" {
        return Ok(groups::sp4());
    }
    if let Some(n) = num("gl", "-outer") {
        return Ok(groups::gl_outer(n));
    }
    if let Some(n) = num("gl", "") {
        return Ok(groups::gl(n));
    }
    if let Some(n) = num("sl", "").filter(|&n| n >= 2) {
        return Ok(groups::sl(n));
    }
    if let Some(n) = num("torus", "") {
        return Ok(groups::torus(n));
    }
    if let Some(n) = num("normalizer", "") {
        return Ok(groups::torus_normalizer(n));
    }
    Err(Error::Parse(format!("unknown builtin group {name:?}")))
}
