//! The problem file: a TOML document whose field order is fixed by the
//! structs below, so `parse → to_canonical_string` reproduces a canonical file byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::brackets::GradedEndo;
use crate::deformation::{Ambient, FormalSeries, StructureTheta};
use crate::error::{Error, Result};
use crate::grading::Multidegree;
use crate::gspace::{Coords, GradedSpace};
use crate::multimap::{AltMap, Cochain, MultiMap};
use crate::scalar::{format_q, parse_q};
use crate::structures::{AlgebraStructure, BimoduleStructure, LieModuleStructure};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    pub basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub module_basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<Roles>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deform: Option<DeformSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapTable>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub degree: Vec<i64>,
}

/// Names of the maps playing each role.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct Roles {
    pub mu: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DeformSection {
    pub theta: Vec<i64>,
    pub p: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<SeriesTerm>,
}

/// `λ^power` coefficient of the cocycle series: the sum of the named maps.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeriesTerm {
    pub power: usize,
    pub maps: Vec<String>,
}

/// A map table. For `alternating` maps any argument order may be given;
/// for action maps (`left`, `right`, `action`) `args = [algebra, module]`
/// and values are in the module.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MapTable {
    pub name: String,
    pub arity: usize,
    pub weight: Vec<i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub alternating: bool,
    #[serde(default)]
    pub entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub args: Vec<String>,
    pub value: Vec<(String, String)>,
}

fn parse_error(at: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {msg}"))
}

fn build_space(n: usize, basis: &[BasisEntry], field: &str) -> Result<Arc<GradedSpace>> {
    let mut out = Vec::with_capacity(basis.len());
    for (i, b) in basis.iter().enumerate() {
        if b.degree.len() != n {
            return Err(parse_error(
                &format!("{field}[{i}] ({})", b.name),
                format!("degree has length {}, expected n = {n}", b.degree.len()),
            ));
        }
        out.push((b.name.clone(), Multidegree(b.degree.clone())));
    }
    GradedSpace::new(n, out).map(Arc::new).map_err(|e| parse_error(field, e))
}

fn lookup(space: &GradedSpace, name: &str, at: &str) -> Result<usize> {
    space.index_of(name).map_err(|_| parse_error(at, format!("unknown basis name '{name}'")))
}

fn coords(space: &GradedSpace, terms: &[(String, String)], at: &str) -> Result<Coords> {
    let mut c = Coords::default();
    for (name, coef) in terms {
        let i = lookup(space, name, at)?;
        let x = parse_q(coef).map_err(|_| parse_error(at, format!("bad coefficient '{coef}'")))?;
        c.add_term(i, &x);
    }
    Ok(c)
}

fn terms(space: &GradedSpace, c: &Coords) -> Vec<(String, String)> {
    c.iter().map(|(i, x)| (space.name(i).to_string(), format_q(x))).collect()
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ProblemFile = toml::from_str(text).map_err(|e| {
            let at = match e.span() {
                Some(span) => {
                    let line = text[..span.start.min(text.len())].matches('\n').count() + 1;
                    format!("line {line}")
                }
                None => "file".to_string(),
            };
            Error::Parse(format!("{at}: {}", e.message()))
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_canonical_string(&self) -> String {
        toml::to_string(self).expect("problem files always serialize")
    }

    /// Builds every space and map once, surfacing the first error with its location.
    pub fn validate(&self) -> Result<()> {
        self.space()?;
        if !self.module_basis.is_empty() {
            self.module_space()?;
        }
        let mut seen = std::collections::HashSet::new();
        for (i, m) in self.maps.iter().enumerate() {
            if !seen.insert(m.name.as_str()) {
                return Err(parse_error(&format!("maps[{i}]"), format!("duplicate map name '{}'", m.name)));
            }
            if self.is_action(&m.name) {
                self.action(&m.name)?;
            } else if m.alternating {
                self.altmap(&m.name)?;
            } else {
                self.multimap(&m.name)?;
            }
        }
        if let Some(r) = &self.structure {
            self.table(&r.mu)?;
        }
        if let Some(d) = &self.deform {
            if d.theta.len() != self.n {
                return Err(parse_error("deform.theta", format!("length {}, expected n = {}", d.theta.len(), self.n)));
            }
            coords(&*self.space()?, &d.p, "deform.p")?;
            for (i, t) in d.series.iter().enumerate() {
                for name in &t.maps {
                    self.table(name).map_err(|_| parse_error(&format!("deform.series[{i}]"), format!("unknown map '{name}'")))?;
                }
            }
        }
        Ok(())
    }

    fn is_action(&self, name: &str) -> bool {
        self.structure.as_ref().is_some_and(|r| {
            [&r.left, &r.right, &r.action].iter().any(|x| x.as_deref() == Some(name))
        })
    }

    pub fn space(&self) -> Result<Arc<GradedSpace>> {
        build_space(self.n, &self.basis, "basis")
    }

    pub fn module_space(&self) -> Result<Arc<GradedSpace>> {
        if self.module_basis.is_empty() {
            return Err(parse_error("module_basis", "missing"));
        }
        build_space(self.n, &self.module_basis, "module_basis")
    }

    fn table(&self, name: &str) -> Result<(usize, &MapTable)> {
        self.maps
            .iter()
            .enumerate()
            .find(|(_, m)| m.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    fn raw_entries(&self, name: &str) -> Result<(String, &MapTable, Vec<(Vec<usize>, Coords)>)> {
        let (i, m) = self.table(name)?;
        let at = format!("maps[{i}] ({name})");
        if m.weight.len() != self.n {
            return Err(parse_error(&at, format!("weight has length {}, expected n = {}", m.weight.len(), self.n)));
        }
        let space = self.space()?;
        let mut out = Vec::with_capacity(m.entries.len());
        for (j, e) in m.entries.iter().enumerate() {
            let at = format!("{at}.entries[{j}]");
            if e.args.len() != m.arity {
                return Err(parse_error(&at, format!("{} arguments, arity is {}", e.args.len(), m.arity)));
            }
            let key = e.args.iter().map(|a| lookup(&space, a, &at)).collect::<Result<Vec<_>>>()?;
            out.push((key, coords(&space, &e.value, &at)?));
        }
        Ok((at, m, out))
    }

    /// A map on the basis space.
    pub fn multimap(&self, name: &str) -> Result<MultiMap> {
        let (at, m, entries) = self.raw_entries(name)?;
        MultiMap::from_entries(&self.space()?, m.arity as i64 - 1, Multidegree(m.weight.clone()), entries)
            .map_err(|e| parse_error(&at, e))
    }

    /// An alternating map on the basis space.
    pub fn altmap(&self, name: &str) -> Result<AltMap> {
        let (at, m, entries) = self.raw_entries(name)?;
        if !m.alternating {
            return AltMap::canonicalize(&self.multimap(name)?).map_err(|e| parse_error(&at, e));
        }
        AltMap::from_canonical_entries(&self.space()?, m.arity as i64 - 1, Multidegree(m.weight.clone()), entries)
            .map_err(|e| parse_error(&at, e))
    }

    /// An action `X ↦ (Y ↦ value)` of the basis space on the module space.
    pub fn action(&self, name: &str) -> Result<Vec<GradedEndo>> {
        let (i, m) = self.table(name)?;
        let at = format!("maps[{i}] ({name})");
        if m.arity != 2 || m.weight.iter().any(|&w| w != 0) || m.weight.len() != self.n {
            return Err(parse_error(&at, "an action has arity 2 and weight 0"));
        }
        let v = self.space()?;
        let w = self.module_space()?;
        let mut images: Vec<Vec<(usize, Coords)>> = vec![Vec::new(); v.dim()];
        for (j, e) in m.entries.iter().enumerate() {
            let at = format!("{at}.entries[{j}]");
            if e.args.len() != 2 {
                return Err(parse_error(&at, "an action entry has two arguments"));
            }
            let x = lookup(&v, &e.args[0], &at)?;
            let y = lookup(&w, &e.args[1], &at)?;
            images[x].push((y, coords(&w, &e.value, &at)?));
        }
        images
            .into_iter()
            .enumerate()
            .map(|(x, imgs)| GradedEndo::new(&w, v.degree(x).clone(), imgs).map_err(|e| parse_error(&at, e)))
            .collect()
    }

    fn roles(&self) -> Result<&Roles> {
        self.structure.as_ref().ok_or_else(|| parse_error("structure", "missing"))
    }

    fn role<'a>(name: &'a Option<String>, what: &str) -> Result<&'a str> {
        name.as_deref().ok_or_else(|| parse_error("structure", format!("missing '{what}'")))
    }

    pub fn algebra(&self) -> Result<AlgebraStructure> {
        AlgebraStructure::new(self.multimap(&self.roles()?.mu)?)
    }

    pub fn lie_bracket(&self) -> Result<AltMap> {
        self.altmap(&self.roles()?.mu)
    }

    pub fn bimodule(&self) -> Result<BimoduleStructure> {
        let r = self.roles()?;
        let lam = self.action(Self::role(&r.left, "left")?)?;
        let rho = self.action(Self::role(&r.right, "right")?)?;
        BimoduleStructure::new(self.multimap(&r.mu)?, self.module_space()?, lam, rho)
    }

    pub fn lie_module(&self) -> Result<LieModuleStructure> {
        let r = self.roles()?;
        let pi = self.action(Self::role(&r.action, "action")?)?;
        LieModuleStructure::new(self.lie_bracket()?, self.module_space()?, pi)
    }

    fn deform_section(&self) -> Result<&DeformSection> {
        self.deform.as_ref().ok_or_else(|| parse_error("deform", "missing"))
    }

    pub fn structure_theta(&self) -> Result<StructureTheta> {
        let d = self.deform_section()?;
        let amb = Ambient::new(self.lie_bracket()?)?;
        let p = coords(&*self.space()?, &d.p, "deform.p")?;
        StructureTheta::new(amb, Multidegree(d.theta.clone()), p)
    }

    pub fn cocycle_series(&self, n: usize) -> Result<FormalSeries<Cochain<AltMap>>> {
        let d = self.deform_section()?;
        let mut coeffs = vec![Cochain::zero(); n + 1];
        for t in &d.series {
            if t.power > n {
                continue;
            }
            for name in &t.maps {
                coeffs[t.power].push(self.altmap(name)?)?;
            }
        }
        Ok(FormalSeries::new(coeffs))
    }
}

/// Canonical encoders used to generate the shipped fixture files.
pub mod encode {
    use super::*;

    pub fn basis(space: &GradedSpace) -> Vec<BasisEntry> {
        space
            .basis()
            .iter()
            .map(|b| BasisEntry { name: b.name.clone(), degree: b.degree.components().to_vec() })
            .collect()
    }

    pub fn multimap(name: &str, m: &MultiMap) -> MapTable {
        let space = m.space();
        let entries = m
            .entries()
            .iter()
            .map(|(k, v)| Entry {
                args: k.iter().map(|&i| space.name(i).to_string()).collect(),
                value: terms(space, v),
            })
            .collect();
        MapTable {
            name: name.to_string(),
            arity: m.arity(),
            weight: m.weight().components().to_vec(),
            alternating: false,
            entries,
        }
    }

    pub fn altmap(name: &str, m: &AltMap) -> MapTable {
        MapTable { alternating: true, ..multimap(name, m.canonical()) }
    }

    pub fn action(name: &str, v: &GradedSpace, fam: &[GradedEndo]) -> MapTable {
        let mut entries = Vec::new();
        for (x, e) in fam.iter().enumerate() {
            let w = e.space();
            for y in 0..w.dim() {
                let img = e.image(y);
                if !img.is_zero() {
                    entries.push(Entry {
                        args: vec![v.name(x).to_string(), w.name(y).to_string()],
                        value: terms(w, &img),
                    });
                }
            }
        }
        MapTable { name: name.to_string(), arity: 2, weight: vec![0; v.n()], alternating: false, entries }
    }

    pub fn vector(space: &GradedSpace, c: &Coords) -> Vec<(String, String)> {
        terms(space, c)
    }

    pub fn algebra(title: &str, a: &AlgebraStructure) -> ProblemFile {
        ProblemFile {
            n: a.space.n(),
            title: Some(title.to_string()),
            basis: basis(&a.space),
            module_basis: vec![],
            structure: Some(Roles { mu: "mu".into(), ..Roles::default() }),
            deform: None,
            maps: vec![multimap("mu", &a.mu)],
        }
    }

    pub fn lie(title: &str, mu: &AltMap) -> ProblemFile {
        ProblemFile {
            n: mu.space().n(),
            title: Some(title.to_string()),
            basis: basis(mu.space()),
            module_basis: vec![],
            structure: Some(Roles { mu: "mu".into(), ..Roles::default() }),
            deform: None,
            maps: vec![altmap("mu", mu)],
        }
    }

    pub fn bimodule(title: &str, b: &BimoduleStructure) -> ProblemFile {
        let mut f = algebra(title, &AlgebraStructure { space: b.v.clone(), mu: b.mu.clone() });
        f.module_basis = basis(&b.w);
        f.structure = Some(Roles {
            mu: "mu".into(),
            left: Some("left".into()),
            right: Some("right".into()),
            action: None,
        });
        f.maps.push(action("left", &b.v, &b.lam));
        f.maps.push(action("right", &b.v, &b.rho));
        f
    }

    pub fn lie_module(title: &str, l: &LieModuleStructure) -> ProblemFile {
        let mut f = lie(title, &l.mu);
        f.module_basis = basis(&l.w);
        f.structure = Some(Roles { mu: "mu".into(), action: Some("action".into()), ..Roles::default() });
        f.maps.push(action("action", &l.g, &l.pi));
        f
    }
}
