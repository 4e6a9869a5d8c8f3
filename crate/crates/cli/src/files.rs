//! Input files for actions (σ, ψ) and extensions.
//!
//! Action file:
//!
//! ```json
//! {"K": "Z2", "H": "Z3", "sigma": {"1": {"0": "0", "1": "2", "2": "1"}}}
//! ```
//!
//! Each K label maps to a value table on H, given either as an object from
//! H labels to H labels or as a list of image labels in H's element order.
//! Omitted K elements act trivially. ψ files use the key `psi` instead.
//!
//! Extension file: `{"H": .., "G": .., "K": .., "alpha": table, "beta": table}`
//! with value tables in the same two forms.

use std::collections::BTreeMap;
use std::path::Path;

use gyro_core::catalog::Catalog;
use gyro_core::{Error, ExtensionRecord, FiniteGroup, GroupMap, Result};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ValueTable {
    List(Vec<String>),
    Map(BTreeMap<String, String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    #[serde(rename = "K")]
    k: String,
    #[serde(rename = "H")]
    h: String,
    sigma: Option<BTreeMap<String, ValueTable>>,
    psi: Option<BTreeMap<String, ValueTable>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionFile {
    #[serde(rename = "H")]
    h: String,
    #[serde(rename = "G")]
    g: String,
    #[serde(rename = "K")]
    k: String,
    alpha: ValueTable,
    beta: ValueTable,
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, source: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("{source}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn bad(source: &str, field: String, message: String) -> Error {
    Error::Parse {
        location: format!("{source}: {field}"),
        message,
    }
}

/// Resolves a value table from `dom` to `cod`.
pub fn resolve(t: &ValueTable, dom: &FiniteGroup, cod: &FiniteGroup, source: &str, field: &str) -> Result<Vec<usize>> {
    let look = |label: &str, g: &FiniteGroup, at: String| {
        g.index_of(label)
            .ok_or_else(|| bad(source, at, format!("{label:?} is not an element of {}", g.name())))
    };
    match t {
        ValueTable::List(v) => {
            if v.len() != dom.order() {
                return Err(bad(source, field.into(), format!("{} values for {} elements", v.len(), dom.order())));
            }
            v.iter()
                .enumerate()
                .map(|(i, l)| look(l, cod, format!("{field}[{i}]")))
                .collect()
        }
        ValueTable::Map(m) => {
            let mut out = vec![usize::MAX; dom.order()];
            for (a, b) in m {
                let x = look(a, dom, format!("{field}.{a}"))?;
                out[x] = look(b, cod, format!("{field}.{a}"))?;
            }
            if let Some(x) = out.iter().position(|&v| v == usize::MAX) {
                return Err(bad(source, field.into(), format!("no value for {:?}", dom.label(x))));
            }
            Ok(out)
        }
    }
}

/// An action `K → (value tables on H)`.
pub struct Action {
    pub k: FiniteGroup,
    pub h: FiniteGroup,
    pub tables: Vec<Vec<usize>>,
}

pub fn load_action(path: &Path, key: &str, catalog: &Catalog) -> Result<(Action, String)> {
    let text = read(path)?;
    let source = path.display().to_string();
    let f: ActionFile = parse(&text, &source)?;
    let map = match key {
        "sigma" => f.sigma,
        _ => f.psi,
    }
    .ok_or_else(|| bad(&source, key.into(), "field is missing".into()))?;
    let (k, h) = (catalog.get(&f.k)?, catalog.get(&f.h)?);
    let mut tables: Vec<Vec<usize>> = k.elements().map(|_| h.elements().collect()).collect();
    for (label, t) in &map {
        let x = k
            .index_of(label)
            .ok_or_else(|| bad(&source, format!("{key}.{label}"), format!("not an element of {}", k.name())))?;
        tables[x] = resolve(t, &h, &h, &source, &format!("{key}.{label}"))?;
    }
    Ok((Action { k, h, tables }, text))
}

/// The kernel `σ` of an action file, as automorphisms of `H`.
pub fn sigma_maps(a: &Action) -> Result<Vec<GroupMap>> {
    a.tables
        .iter()
        .map(|t| GroupMap::new(a.h.clone(), a.h.clone(), t.clone()))
        .collect()
}

pub fn load_extension(path: &Path, catalog: &Catalog) -> Result<(ExtensionRecord, String)> {
    let text = read(path)?;
    let source = path.display().to_string();
    let f: ExtensionFile = parse(&text, &source)?;
    let (h, g, k) = (catalog.get(&f.h)?, catalog.get(&f.g)?, catalog.get(&f.k)?);
    let alpha = GroupMap::new(h.clone(), g.clone(), resolve(&f.alpha, &h, &g, &source, "alpha")?)?;
    let beta = GroupMap::new(g.clone(), k.clone(), resolve(&f.beta, &g, &k, &source, "beta")?)?;
    Ok((ExtensionRecord::new(alpha, beta, None)?, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_and_map_tables_agree() {
        let c = Catalog::builtin();
        let z3 = c.get("Z3").unwrap();
        let list = ValueTable::List(vec!["0".into(), "2".into(), "1".into()]);
        let map = ValueTable::Map([("0", "0"), ("1", "2"), ("2", "1")].map(|(a, b)| (a.to_string(), b.to_string())).into());
        assert_eq!(resolve(&list, &z3, &z3, "t", "f").unwrap(), resolve(&map, &z3, &z3, "t", "f").unwrap());
    }

    #[test]
    fn unknown_label_is_named() {
        let c = Catalog::builtin();
        let z3 = c.get("Z3").unwrap();
        let list = ValueTable::List(vec!["0".into(), "2".into(), "x".into()]);
        match resolve(&list, &z3, &z3, "t", "sigma.1") {
            Err(Error::Parse { location, .. }) => assert!(location.ends_with("sigma.1[2]")),
            other => panic!("{other:?}"),
        }
    }
}
