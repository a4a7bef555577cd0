//! The algebra registry: realizations, gradings and data files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use superlie::element::AlgebraElement;
use superlie::formsreal::{DiffForm, E510Element};
use superlie::genfun::{ContactRealization, Pairing, RealizationKind};
use superlie::grading::Grading;
use superlie::presentations::{GenTable, RelationRecord};
use superlie::prolong::Ambient;
use superlie::vfield::{Subalgebra, VectorField};
use superlie::{Ring, RingRef, SuperPoly};

use crate::CliError;

fn default_pairing() -> Pairing {
    Pairing::Theta
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RealizationSpec {
    Vect {
        even: Vec<String>,
        #[serde(default)]
        odd: Vec<String>,
    },
    E510 {
        coords: Vec<String>,
    },
    Generating {
        kind: RealizationKind,
        #[serde(default)]
        n: usize,
        #[serde(default)]
        m: usize,
        #[serde(default = "default_pairing")]
        pairing: Pairing,
        #[serde(default = "one")]
        base: usize,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct SideEntry {
    pub generators: String,
    /// Restricts the generator file to these names.
    #[serde(default)]
    pub names: Option<Vec<String>>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub homology: bool,
}

/// Named `g_0`-submodules of `g_1` and the seed of a partial prolong.
#[derive(Clone, Debug, Deserialize)]
pub struct PartialEntry {
    pub modules: BTreeMap<String, String>,
    pub seed: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AlgebraEntry {
    pub title: String,
    pub realization: RealizationSpec,
    pub default_grading: String,
    pub gradings: BTreeMap<String, Grading>,
    #[serde(default)]
    pub cartan: Vec<String>,
    pub sides: BTreeMap<String, SideEntry>,
    #[serde(default)]
    pub partial: Option<PartialEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Registry {
    pub algebras: BTreeMap<String, AlgebraEntry>,
    #[serde(skip)]
    pub root: PathBuf,
}

#[derive(Debug, Deserialize)]
struct GenRecord {
    name: String,
    #[serde(default)]
    kind: Option<String>,
    expr: String,
}

/// The data directory: `SUPERLIE_DATA` or the `data/` tree of the workspace.
pub fn data_dir() -> PathBuf {
    std::env::var_os("SUPERLIE_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

impl Registry {
    pub fn load(root: &Path) -> Result<Registry, CliError> {
        let mut r: Registry = parse_json(&root.join("registry.json"))?;
        r.root = root.to_path_buf();
        Ok(r)
    }

    pub fn load_default() -> Result<Registry, CliError> {
        Registry::load(&data_dir())
    }

    pub fn algebra(&self, id: &str) -> Result<Algebra<'_>, CliError> {
        let entry = self
            .algebras
            .get(id)
            .ok_or_else(|| CliError::Usage(format!("unknown algebra `{id}`")))?;
        Ok(Algebra {
            id: id.to_string(),
            entry,
            root: &self.root,
            built: Built::new(&entry.realization)?,
        })
    }
}

/// A realization with its coordinate ring.
#[derive(Clone, Debug)]
pub enum Built {
    Vect(RingRef),
    E510(RingRef),
    Gen(Arc<ContactRealization>),
}

impl Built {
    fn new(spec: &RealizationSpec) -> Result<Built, CliError> {
        Ok(match spec {
            RealizationSpec::Vect { even, odd } => {
                let names: Vec<(&str, bool)> = even
                    .iter()
                    .map(|s| (s.as_str(), false))
                    .chain(odd.iter().map(|s| (s.as_str(), true)))
                    .collect();
                Built::Vect(Ring::from_names(&names)?)
            }
            RealizationSpec::E510 { coords } => {
                let names: Vec<(&str, bool)> = coords.iter().map(|s| (s.as_str(), false)).collect();
                Built::E510(Ring::from_names(&names)?)
            }
            RealizationSpec::Generating {
                kind,
                n,
                m,
                pairing,
                base,
            } => Built::Gen(Arc::new(ContactRealization::build(*kind, *n, *m, *pairing, *base)?)),
        })
    }

    pub fn ring(&self) -> &RingRef {
        match self {
            Built::Vect(r) | Built::E510(r) => r,
            Built::Gen(g) => g.ring(),
        }
    }

    /// Parses a generator; e(5|10) elements need `kind` to be `field` or `form`.
    pub fn element(&self, kind: Option<&str>, expr: &str) -> Result<AlgebraElement, CliError> {
        Ok(match self {
            Built::Vect(r) => AlgebraElement::Field(VectorField::parse(r, expr)?),
            Built::Gen(g) => AlgebraElement::gen(g, SuperPoly::parse(g.ring(), expr)?),
            Built::E510(r) => {
                let el = match kind {
                    Some("field") => E510Element::new(VectorField::parse(r, expr)?, DiffForm::zero(r)?)?,
                    Some("form") => E510Element::new(VectorField::zero(r), DiffForm::parse(r, expr)?)?,
                    _ => return Err(CliError::Usage(format!("e(5|10) generator `{expr}` needs kind field or form"))),
                };
                AlgebraElement::E510(el)
            }
        })
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            Built::Vect(r) => Ambient::Vect {
                ring: r.clone(),
                constraint: Subalgebra::Vect,
            },
            Built::E510(r) => Ambient::E510(r.clone()),
            Built::Gen(g) => Ambient::Gen(g.clone()),
        }
    }
}

/// A registry entry with its realization built.
pub struct Algebra<'a> {
    pub id: String,
    pub entry: &'a AlgebraEntry,
    root: &'a Path,
    pub built: Built,
}

impl Algebra<'_> {
    pub fn side(&self, side: &str) -> Result<&SideEntry, CliError> {
        self.entry
            .sides
            .get(side)
            .ok_or_else(|| CliError::Usage(format!("`{}` has no side `{side}`", self.id)))
    }

    pub fn grading(&self, label: Option<&str>) -> Result<Grading, CliError> {
        let label = label.unwrap_or(&self.entry.default_grading);
        self.entry
            .gradings
            .get(label)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("`{}` has no grading `{label}`", self.id)))
    }

    /// Every generator in a file, in file order.
    fn load_generators(&self, file: &str) -> Result<GenTable, CliError> {
        let recs: Vec<GenRecord> = parse_json(&self.root.join(file))?;
        let mut t = GenTable::new();
        for r in recs {
            t.insert(&r.name, self.built.element(r.kind.as_deref(), &r.expr)?);
        }
        Ok(t)
    }

    /// The generators of one side, restricted to its listed names.
    pub fn generators(&self, side: &str) -> Result<GenTable, CliError> {
        let s = self.side(side)?;
        let all = self.load_generators(&s.generators)?;
        let Some(names) = &s.names else {
            return Ok(all);
        };
        let mut t = GenTable::new();
        for n in names {
            t.insert(n, all.get(n)?.clone());
        }
        Ok(t)
    }

    /// The full generator table of a side's file, for relations that refer
    /// to generators outside the side.
    pub fn file_table(&self, side: &str) -> Result<GenTable, CliError> {
        self.load_generators(&self.side(side)?.generators)
    }

    pub fn relations(&self, side: &str) -> Result<Vec<RelationRecord>, CliError> {
        let mut out = Vec::new();
        for f in &self.side(side)?.relations {
            let recs: Vec<RelationRecord> = parse_json(&self.root.join(f))?;
            out.extend(recs);
        }
        Ok(out)
    }

    /// Every generator of every side, without repeats.
    pub fn all_generators(&self) -> Result<Vec<AlgebraElement>, CliError> {
        let mut out: Vec<AlgebraElement> = Vec::new();
        for s in self.entry.sides.keys() {
            for el in self.generators(s)?.elements() {
                if !out.contains(el) {
                    out.push(el.clone());
                }
            }
        }
        Ok(out)
    }
}
