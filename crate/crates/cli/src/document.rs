//! JSON documents: the on-disk form of monoids, rings, spaces and maps.

use std::fs;
use std::path::{Path, PathBuf};

use filtrum::{ElementSet, Error as CoreError, FiniteMonoid, FiniteRing, FiniteSpace, MonoidHom};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Monoid(MonoidDoc),
    Ring(RingDoc),
    Space(SpaceDoc),
    MonoidHom(MapDoc),
    ContinuousMap(MapDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDoc {
    pub size: usize,
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
    #[serde(default)]
    pub zero: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    pub opens: Vec<Vec<usize>>,
}

/// A map between two structures, each given inline or as a path relative to
/// the document that mentions it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub source: Part,
    pub target: Part,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Part {
    File(String),
    Inline(Box<Document>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::Ring(_) => "ring",
            Document::Space(_) => "space",
            Document::MonoidHom(_) => "monoid_hom",
            Document::ContinuousMap(_) => "continuous_map",
        }
    }
}

/// A parsed document with the directory its relative references resolve against.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub doc: Document,
    pub base: PathBuf,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let doc = parse(&text).map_err(|message| CliError::Parse {
        path: path.to_path_buf(),
        message,
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Loaded { doc, base })
}

pub fn parse(text: &str) -> Result<Document, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

impl Loaded {
    fn part(&self, part: &Part) -> Result<Loaded, CliError> {
        match part {
            Part::File(p) => load(&self.base.join(p)),
            Part::Inline(doc) => Ok(Loaded {
                doc: (**doc).clone(),
                base: self.base.clone(),
            }),
        }
    }
}

fn expected(what: &str, doc: &Document) -> CliError {
    CliError::Kind(format!("expected {what}, found a {} document", doc.kind()))
}

pub fn monoid_shape(d: &MonoidDoc) -> Result<(), CoreError> {
    table_shape("mul", d.size, &d.mul)
}

fn table_shape(name: &str, size: usize, table: &[Vec<usize>]) -> Result<(), CoreError> {
    if table.len() != size {
        return Err(CoreError::Shape(format!(
            "{name} has {} rows, size is {size}",
            table.len()
        )));
    }
    Ok(())
}

/// The monoid of a monoid document, or the multiplicative monoid of a ring.
pub fn monoid(doc: &Document) -> Result<FiniteMonoid, CliError> {
    match doc {
        Document::Monoid(d) => {
            monoid_shape(d)?;
            let m = FiniteMonoid::validate(&d.mul, d.one, d.zero)?;
            if d.zero.is_none() {
                if let Some(x) = m.undeclared_annihilator() {
                    crate::warn(
                        "UndeclaredZero",
                        &format!("element {x} absorbs every product but no zero is declared"),
                    );
                }
            }
            Ok(m)
        }
        Document::Ring(_) => Ok(ring(doc)?.mult_monoid()),
        other => Err(expected("a monoid or ring", other)),
    }
}

pub fn ring_shape(d: &RingDoc) -> Result<(), CoreError> {
    table_shape("add", d.size, &d.add)?;
    table_shape("mul", d.size, &d.mul)
}

pub fn ring(doc: &Document) -> Result<FiniteRing, CliError> {
    match doc {
        Document::Ring(d) => {
            ring_shape(d)?;
            Ok(FiniteRing::new(&d.add, &d.mul)?)
        }
        other => Err(expected("a ring", other)),
    }
}

pub fn open_sets(d: &SpaceDoc) -> Result<Vec<ElementSet>, CoreError> {
    let n = d.points.len();
    d.opens
        .iter()
        .map(|o| {
            o.iter()
                .map(|&p| {
                    if p < n {
                        Ok(p)
                    } else {
                        Err(CoreError::IndexOutOfRange { index: p, size: n })
                    }
                })
                .collect()
        })
        .collect()
}

pub fn space(doc: &Document) -> Result<FiniteSpace, CliError> {
    match doc {
        Document::Space(d) => Ok(FiniteSpace::new(d.points.clone(), open_sets(d)?)?),
        other => Err(expected("a space", other)),
    }
}

/// Source and target monoids and the assignment of a `monoid_hom` document.
pub fn hom_parts(loaded: &Loaded) -> Result<(FiniteMonoid, FiniteMonoid, Vec<usize>), CliError> {
    match &loaded.doc {
        Document::MonoidHom(d) => {
            let source = monoid(&loaded.part(&d.source)?.doc)?;
            let target = monoid(&loaded.part(&d.target)?.doc)?;
            Ok((source, target, d.map.clone()))
        }
        other => Err(expected("a monoid_hom", other)),
    }
}

pub fn hom(loaded: &Loaded) -> Result<MonoidHom, CliError> {
    let (source, target, map) = hom_parts(loaded)?;
    Ok(MonoidHom::new(source, target, map)?)
}

pub fn map_parts(loaded: &Loaded) -> Result<(FiniteSpace, FiniteSpace, Vec<usize>), CliError> {
    match &loaded.doc {
        Document::ContinuousMap(d) => {
            let source = space(&loaded.part(&d.source)?.doc)?;
            let target = space(&loaded.part(&d.target)?.doc)?;
            Ok((source, target, d.map.clone()))
        }
        other => Err(expected("a continuous_map", other)),
    }
}

pub fn monoid_doc(m: &FiniteMonoid) -> Document {
    Document::Monoid(MonoidDoc {
        size: m.size(),
        mul: m.table(),
        one: m.one(),
        zero: m.zero(),
    })
}

pub fn space_doc(x: &FiniteSpace) -> Document {
    Document::Space(SpaceDoc {
        points: x.names().to_vec(),
        opens: x.opens().iter().map(ElementSet::to_vec).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = FiniteMonoid::integers_mod(4).unwrap();
        let doc = monoid_doc(&m);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"kind\":\"monoid\""));
        let back = parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(monoid(&back).unwrap(), m);
    }

    #[test]
    fn nullable_zero_and_inline_parts() {
        let text = r#"{"kind":"monoid_hom","source":{"kind":"monoid","size":1,"mul":[[0]],"one":0,"zero":null},
                       "target":"z4.json","map":[1]}"#;
        let Document::MonoidHom(d) = parse(text).unwrap() else {
            panic!()
        };
        assert!(matches!(d.source, Part::Inline(_)));
        assert_eq!(d.target, Part::File("z4.json".into()));
    }
}
