//! JSON file formats and source resolution.
//!
//! * semigroup: `{"name": "Z3", "order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}`
//! * morphism: `{"kind": "automorphism", "map": [0,2,1]}`
//! * character: `{"values": [[1,0],[-1,0]], "exact": [{"zero":false,"order":1,"exp":0}, ...]}`
//!
//! Morphisms and multiplicative functions can also be named by their position
//! in [`all_involutive_morphisms`] and [`admissible_mus`].

use std::fs;
use std::path::Path;

use kvlab_core::morphism::all_involutive_morphisms;
use kvlab_core::{admissible_mus, Character, InvolutiveMorphism, MorphismKind, RootOrZero, Semigroup};
use serde::{Deserialize, Serialize};

use crate::{corpus, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<i64>>,
}

impl From<&Semigroup> for SemigroupFile {
    fn from(s: &Semigroup) -> Self {
        SemigroupFile {
            name: s.name().to_string(),
            order: s.order(),
            table: s.table().iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect(),
        }
    }
}

impl SemigroupFile {
    pub fn into_semigroup(self) -> Result<Semigroup> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!("order is {} but the table has {} rows", self.order, self.table.len())));
        }
        if let Some(x) = self.table.iter().position(|r| r.len() != self.order) {
            return Err(Error::Parse(format!(
                "row {x} has {} entries, expected {}",
                self.table[x].len(),
                self.order
            )));
        }
        Ok(Semigroup::from_raw(self.name, &self.table)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub kind: MorphismKind,
    pub map: Vec<usize>,
}

impl From<&InvolutiveMorphism> for MorphismFile {
    fn from(t: &InvolutiveMorphism) -> Self {
        MorphismFile { kind: t.kind, map: t.map.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub zero: bool,
    pub order: u32,
    pub exp: u32,
}

impl From<RootOrZero> for ExactValue {
    fn from(v: RootOrZero) -> Self {
        match v {
            RootOrZero::Zero => ExactValue { zero: true, order: 1, exp: 0 },
            RootOrZero::Root { order, exp } => ExactValue { zero: false, order, exp },
        }
    }
}

impl ExactValue {
    pub fn to_root(self) -> Result<RootOrZero> {
        match (self.zero, self.order) {
            (true, _) => Ok(RootOrZero::Zero),
            (false, 0) => Err(Error::Parse("root of unity of order 0".into())),
            (false, order) => Ok(RootOrZero::root(order, self.exp)),
        }
    }
}

/// A multiplicative function; `exact` is authoritative and `values` is its
/// floating-point rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterFile {
    pub values: Vec<[f64; 2]>,
    pub exact: Vec<ExactValue>,
}

impl From<&Character> for CharacterFile {
    fn from(c: &Character) -> Self {
        CharacterFile {
            values: c.to_complex().iter().map(|v| [v.re, v.im]).collect(),
            exact: c.values().into_iter().map(ExactValue::from).collect(),
        }
    }
}

impl CharacterFile {
    pub fn to_character(&self, s: &Semigroup) -> Result<Character> {
        let values = self.exact.iter().map(|e| e.to_root()).collect::<Result<Vec<_>>>()?;
        Ok(Character::from_values(s, &values)?)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_semigroup(text: &str) -> Result<Semigroup> {
    parse_json::<SemigroupFile>(text)?.into_semigroup()
}

pub fn semigroup_to_json(s: &Semigroup) -> String {
    serde_json::to_string_pretty(&SemigroupFile::from(s)).expect("serializable")
}

/// `corpus:NAME` or a path to a semigroup file.
pub fn load_semigroup(source: &str) -> Result<Semigroup> {
    match source.strip_prefix("corpus:") {
        Some(name) => corpus::entry(name)
            .map(|e| e.semigroup)
            .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string())),
        None => parse_semigroup(&read(Path::new(source))?),
    }
}

pub fn parse_morphism(s: &Semigroup, text: &str) -> Result<InvolutiveMorphism> {
    let file: MorphismFile = parse_json(text)?;
    Ok(InvolutiveMorphism::new(s, file.kind, file.map)?)
}

pub fn parse_character(s: &Semigroup, text: &str) -> Result<Character> {
    parse_json::<CharacterFile>(text)?.to_character(s)
}

/// A `tau` or `mu` argument: an enumeration index or a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    Index(usize),
    File(String),
}

impl std::str::FromStr for Selector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse() {
            Ok(i) => Selector::Index(i),
            Err(_) => Selector::File(s.to_string()),
        })
    }
}

fn pick<T: Clone>(items: &[T], index: usize, what: &'static str) -> Result<T> {
    items.get(index).cloned().ok_or(Error::IndexOutOfRange { what, index, count: items.len() })
}

/// The morphism and its enumeration index (if it has one).
pub fn resolve_tau(s: &Semigroup, sel: &Selector) -> Result<(InvolutiveMorphism, Option<usize>)> {
    let all = all_involutive_morphisms(s)?;
    match sel {
        Selector::Index(i) => Ok((pick(&all, *i, "tau")?, Some(*i))),
        Selector::File(path) => {
            let tau = parse_morphism(s, &read(Path::new(path))?)?;
            let index = all.iter().position(|t| *t == tau);
            Ok((tau, index))
        }
    }
}

pub fn resolve_mu(s: &Semigroup, tau: &InvolutiveMorphism, sel: &Selector) -> Result<(Character, Option<usize>)> {
    let all = admissible_mus(s, tau);
    match sel {
        Selector::Index(i) => Ok((pick(&all, *i, "mu")?, Some(*i))),
        Selector::File(path) => {
            let mu = parse_character(s, &read(Path::new(path))?)?;
            let index = all.iter().position(|m| *m == mu);
            Ok((mu, index))
        }
    }
}
