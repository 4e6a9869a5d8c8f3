//! Group catalogs: JSON files of Cayley tables or permutation generators, and
//! the built-in default catalog.
//!
//! A file holds one entry or an array of entries:
//!
//! ```json
//! [{"name": "Z3", "kind": "table", "labels": ["e", "a", "b"],
//!   "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
//!  {"name": "S3", "kind": "perm", "degree": 3, "generators": [[[0, 1]], [[0, 1, 2]]]}]
//! ```
//!
//! Table cells are element indices or labels. Permutation generators are
//! lists of cycles.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    alternating, cyclic, dihedral, direct_product, extraspecial27, heisenberg_mod_p, quaternion8, symmetric,
    FiniteGroup, Permutation, PERM_CAP,
};
use crate::loops::RightLoopTable;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    /// File the entry came from, or `builtin`.
    pub source: String,
    pub group: FiniteGroup,
    pub notes: String,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum Cell {
    Index(usize),
    Label(String),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    kind: String,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    table: Option<Vec<Vec<Cell>>>,
    #[serde(default)]
    degree: Option<usize>,
    #[serde(default)]
    generators: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default)]
    notes: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawFile {
    Many(Vec<RawEntry>),
    One(Box<RawEntry>),
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

/// Parses catalog text. `source` is used in diagnostics.
pub fn parse_catalog(text: &str, source: &str) -> Result<Vec<CatalogEntry>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raw: RawFile = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("{source}:{}:{}", e.line(), e.column()), e.to_string()))?;
    let raws = match raw {
        RawFile::Many(v) => v,
        RawFile::One(e) => vec![*e],
    };
    let mut out: Vec<CatalogEntry> = Vec::with_capacity(raws.len());
    for (i, r) in raws.into_iter().enumerate() {
        let at = format!("{source}: entry {i} ({:?})", r.name);
        if out.iter().any(|e| e.name == r.name) {
            return Err(parse_err(at, "duplicate name"));
        }
        let group = build(&r, &at)?.named(&r.name);
        out.push(CatalogEntry {
            name: r.name,
            source: source.to_string(),
            group,
            notes: r.notes.unwrap_or_default(),
        });
    }
    Ok(out)
}

fn build(r: &RawEntry, at: &str) -> Result<FiniteGroup> {
    match r.kind.as_str() {
        "table" => {
            let table = r.table.as_ref().ok_or_else(|| parse_err(at, "field \"table\" is missing"))?;
            let n = table.len();
            let labels = match &r.labels {
                Some(l) => l.clone(),
                None => (0..n).map(|i| i.to_string()).collect(),
            };
            let mut rows = Vec::with_capacity(n);
            for (i, row) in table.iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (j, cell) in row.iter().enumerate() {
                    let v = match cell {
                        Cell::Index(v) => *v,
                        Cell::Label(s) => labels.iter().position(|l| l == s).ok_or_else(|| {
                            parse_err(format!("{at}, table[{i}][{j}]"), format!("unknown label {s:?}"))
                        })?,
                    };
                    if v >= n {
                        return Err(parse_err(format!("{at}, table[{i}][{j}]"), format!("index {v} out of range")));
                    }
                    out.push(v);
                }
                rows.push(out);
            }
            FiniteGroup::from_table(labels, rows).map_err(|e| match e {
                Error::NotAssociative { a, b, c } => parse_err(
                    format!("{at}, table[{a}][{b}]"),
                    format!("associativity fails for ({a}·{b})·{c}"),
                ),
                Error::NoInverse(x) => parse_err(format!("{at}, table[{x}]"), "element has no inverse"),
                Error::MalformedTable(m) => parse_err(at, m),
                Error::NoIdentity => parse_err(at, "no identity element"),
                other => other,
            })
        }
        "perm" => {
            let degree = r.degree.ok_or_else(|| parse_err(at, "field \"degree\" is missing"))?;
            let gens = r
                .generators
                .as_ref()
                .ok_or_else(|| parse_err(at, "field \"generators\" is missing"))?;
            let perms = gens
                .iter()
                .enumerate()
                .map(|(i, cycles)| {
                    Permutation::from_cycles(degree, cycles)
                        .map_err(|e| parse_err(format!("{at}, generators[{i}]"), e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            let (g, _) = FiniteGroup::from_permutations_capped(degree, &perms, PERM_CAP)?;
            Ok(g)
        }
        other => Err(parse_err(at, format!("unknown kind {other:?}, expected \"table\" or \"perm\""))),
    }
}

/// Reads and validates every entry of a catalog file.
pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text, &path.display().to_string())
}

/// Serializes a group as a table entry.
pub fn group_entry_json(g: &FiniteGroup) -> serde_json::Value {
    serde_json::json!({
        "name": g.name(),
        "kind": "table",
        "labels": g.labels(),
        "table": g.table(),
    })
}

/// Serializes a right loop in the catalog format with `"kind": "loop"`.
pub fn loop_entry_json(name: &str, s: &RightLoopTable) -> serde_json::Value {
    serde_json::json!({
        "name": name,
        "kind": "loop",
        "labels": s.labels(),
        "table": s.table(),
    })
}

/// Named groups, with aliases.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    aliases: BTreeMap<String, String>,
}

impl Catalog {
    /// Cyclic groups up to 16, small products, the order-27 groups, `A4`, `A5`
    /// and the unitriangular groups over `Z3`, `Z5`.
    pub fn builtin() -> Self {
        let z = |n| cyclic(n).expect("small cyclic");
        let mut groups: Vec<(FiniteGroup, &str)> = (1..=16).map(|n| (z(n), "cyclic")).collect();
        let z2z2 = direct_product(&z(2), &z(2)).expect("V4");
        let z3z3 = direct_product(&z(3), &z(3)).expect("Z3^2");
        let z3z3z3 = direct_product(&z3z3, &z(3)).expect("Z3^3").named("Z3xZ3xZ3");
        groups.extend([
            (z2z2, "Klein four-group"),
            (z3z3, "elementary abelian of order 9"),
            (z3z3z3, "elementary abelian of order 27"),
            (symmetric(3).expect("S3"), "symmetric group on 3 points"),
            (dihedral(4).expect("D4").named("D4"), "dihedral of order 8"),
            (quaternion8(), "quaternion group"),
            (alternating(4).expect("A4"), "alternating group on 4 points"),
            (extraspecial27(3).expect("E27"), "extraspecial of order 27, exponent 3"),
            (extraspecial27(9).expect("M27"), "extraspecial of order 27, exponent 9"),
            (heisenberg_mod_p(3).expect("U3Z3"), "unitriangular 3x3 over Z3"),
            (heisenberg_mod_p(5).expect("U3Z5"), "unitriangular 3x3 over Z5"),
            (alternating(5).expect("A5"), "alternating group on 5 points"),
        ]);
        let entries = groups
            .into_iter()
            .map(|(g, notes)| CatalogEntry {
                name: g.name().to_string(),
                source: "builtin".into(),
                group: g,
                notes: notes.into(),
            })
            .collect();
        let aliases = [("E27x", "E27"), ("V4", "Z2xZ2"), ("M27x", "M27")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Catalog { entries, aliases }
    }

    /// The built-in catalog plus every `*.json` group file in `dir`.
    /// Non-group JSON files (σ, ψ, extensions) are skipped.
    pub fn with_dir(dir: &Path) -> Result<Self> {
        let mut c = Self::builtin();
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            if !looks_like_catalog(&text) {
                continue;
            }
            for e in parse_catalog(&text, &p.display().to_string())? {
                c.insert(e)?;
            }
        }
        Ok(c)
    }

    pub fn insert(&mut self, e: CatalogEntry) -> Result<()> {
        if self.entries.iter().any(|x| x.name == e.name) || self.aliases.contains_key(&e.name) {
            return Err(parse_err(e.source.clone(), format!("duplicate name {:?}", e.name)));
        }
        self.entries.push(e);
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        let name = self.aliases.get(name).map_or(name, String::as_str);
        self.entries.iter().find(|e| e.name == name)
    }

    /// Looks a group up by name or alias.
    pub fn get(&self, name: &str) -> Result<FiniteGroup> {
        self.entry(name)
            .map(|e| e.group.clone())
            .ok_or_else(|| Error::UnknownGroup(name.to_string()))
    }

    /// Groups of order at most `n`.
    pub fn up_to(&self, n: usize) -> impl Iterator<Item = &FiniteGroup> {
        self.entries.iter().map(|e| &e.group).filter(move |g| g.order() <= n)
    }
}

fn looks_like_catalog(text: &str) -> bool {
    match serde_json::from_str::<serde_json::Value>(text) {
        Ok(serde_json::Value::Array(v)) => v.iter().all(|x| x.get("kind").is_some()),
        Ok(serde_json::Value::Object(m)) => m.contains_key("kind"),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_empty_catalog() {
        assert!(parse_catalog("", "t").unwrap().is_empty());
        assert!(parse_catalog("[]", "t").unwrap().is_empty());
    }

    #[test]
    fn builtin_entries_validate() {
        let c = Catalog::builtin();
        assert_eq!(c.entries().len(), 28);
        assert!(["S3", "D4", "Q8", "A4", "A5", "E27", "M27", "U3Z3", "U3Z5", "Z2xZ2", "Z3xZ3"].iter().all(|n| c.entry(n).is_some()), "{:?}", c.names());
        for e in c.entries() {
            if e.group.order() <= 64 {
                e.group.validate().unwrap();
            }
        }
        assert_eq!(c.get("E27x").unwrap().order(), 27);
        assert_eq!(c.get("Z3xZ3xZ3").unwrap().order(), 27);
        assert!(matches!(c.get("nope"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn table_entry_with_labels() {
        let text = r#"{"name": "Z3", "kind": "table", "labels": ["e", "a", "b"],
                       "table": [["e", "a", "b"], ["a", "b", "e"], ["b", "e", "a"]]}"#;
        let v = parse_catalog(text, "t").unwrap();
        assert_eq!(v[0].group.order(), 3);
        assert_eq!(v[0].group.name(), "Z3");
    }

    #[test]
    fn typo_names_the_cell() {
        let text = r#"[{"name": "Z3", "kind": "table", "table": [[0, 1, 2], [1, 2, 0], [2, 0, 7]]}]"#;
        match parse_catalog(text, "t") {
            Err(Error::Parse { location, .. }) => assert!(location.contains("table[2][2]"), "{location}"),
            other => panic!("{other:?}"),
        }
        let text = r#"[{"name": "Z3", "kind": "table", "labels": ["e","a","b"], "table": [["e","a","b"],["a","b","e"],["b","e","c"]]}]"#;
        match parse_catalog(text, "t") {
            Err(Error::Parse { location, message }) => {
                assert!(location.contains("table[2][2]") && message.contains("\"c\""))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // A Latin square with identity 0 that is not associative.
        let text = r#"{"name": "L5", "kind": "table", "table": [
            [0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#;
        assert!(matches!(parse_catalog(text, "t"), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_errors_carry_line_and_column() {
        match parse_catalog("[{\"name\": \"x\",\n \"kind\": }]", "f.json") {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("f.json:2:"), "{location}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn perm_entry_and_duplicates() {
        let text = r#"[{"name": "S3", "kind": "perm", "degree": 3, "generators": [[[0, 1]], [[0, 1, 2]]]},
                       {"name": "S3", "kind": "perm", "degree": 3, "generators": [[[0, 1]]]}]"#;
        assert!(matches!(parse_catalog(text, "t"), Err(Error::Parse { .. })));
        let v = parse_catalog(&text.replacen("\"S3\"", "\"S3a\"", 1), "t").unwrap();
        assert_eq!(v[0].group.order(), 6);
        assert_eq!(v[1].group.order(), 2);
    }

    #[test]
    fn round_trip_through_json() {
        let g = quaternion8();
        let text = group_entry_json(&g).to_string();
        let back = parse_catalog(&text, "t").unwrap().remove(0).group;
        assert_eq!(back.table(), g.table());
    }
}
