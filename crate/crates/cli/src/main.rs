//! `gyro`: command-line front end for gyro-core.
//!
//! Exit codes: 0 ok, 1 usage, 2 input, 3 cap exceeded, 4 property violation.

mod files;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gyro_core::catalog::Catalog;
use gyro_core::cohomology::{
    classify_gext, cocycle_spaces, gyro_crossed_homs, obstruction_realizable, AbstractKernel, AutData, OuterAction,
};
use gyro_core::group::isomorphism_search;
use gyro_core::loops::circ_n;
use gyro_core::morphism::{are_gyro_isomorphic, find_gyro_splitting, sub_right_loops, subgroups};
use gyro_core::square::{boxed_square, gyro_schur_multiplier};
use gyro_core::{regress, Error, FiniteGroup, GroupMap, Result};
use serde_json::{json, Value};

use report::Report;

/// Groups up to this order get their automorphisms enumerated directly.
const AUT_ENUM_ORDER: usize = 64;
/// Largest number of subloops listed as witnesses.
const WITNESS_LIMIT: usize = 64;

#[derive(Parser)]
#[command(name = "gyro", version, about = "Right gyrogroups, gyro-split extensions and gyro-cohomology of finite groups")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory of extra catalog files (default: $GYRO_CATALOG, then ./catalog).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Omit timing so identical inputs give byte-identical reports.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether (G, ∘ₙ) is a right gyrogroup.
    CheckGyrogroup {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Search for a gyro-isomorphism between two groups.
    GyroIso {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// Count sub right loops of (G, ∘₁), with the subgroups for comparison.
    Subloops {
        #[arg(long)]
        group: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// H² and GH² of K with coefficients in H.
    Gh2 {
        #[arg(long = "K")]
        k: String,
        #[arg(long = "H")]
        h: String,
        /// Action file; the action is trivial without one.
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// One gyro-split extension per class of GH², with its middle group.
    ClassifyGext {
        #[arg(long = "K", default_value = "Z3xZ3")]
        k: String,
        #[arg(long = "H", default_value = "Z3")]
        h: String,
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Search for a gyro-homomorphic section of an extension.
    GyroSplit {
        #[arg(long)]
        ext: PathBuf,
    },
    /// The gyro-square K⊠K.
    BoxedSquare {
        #[arg(long)]
        group: String,
    },
    /// The gyro-Schur multiplier of K.
    Schur {
        #[arg(long)]
        group: String,
    },
    /// Gyro-crossed and crossed homomorphisms K → H.
    Crossed {
        #[arg(long = "K")]
        k: String,
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Realizability of ψ : K → Out(H) by an extension, and by a gyro-lifting.
    Obstruction {
        #[arg(long = "H")]
        h: String,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        psi: PathBuf,
    },
    /// Run the acceptance checks.
    #[command(alias = "regress")]
    PaperRegress {
        /// Run only these checks (id or name).
        #[arg(long)]
        only: Vec<String>,
    },
}

/// What a command produced, before it becomes a [`Report`].
#[derive(Default)]
struct Output {
    results: Value,
    witnesses: Value,
    annotations: Vec<String>,
    inputs: Vec<Vec<u8>>,
    violation: Option<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OrderCapExceeded { .. } | Error::CapExceeded { .. } => 3,
        Error::RelationViolation(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let out = open_catalog(cli.catalog.clone()).and_then(|c| dispatch(&cli.command, &c));
    let out = match out {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut inputs: Vec<&[u8]> = vec![name(&cli.command).as_bytes()];
    inputs.extend(out.inputs.iter().map(Vec::as_slice));
    let report = Report {
        command: std::env::args().collect(),
        inputs_digest: report::digest(inputs),
        results: out.results,
        witnesses: out.witnesses,
        annotations: out.annotations,
        timing_ms: (!cli.deterministic).then(|| start.elapsed().as_millis() as u64),
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    match out.violation {
        Some(v) => {
            eprintln!("property violation: {v}");
            ExitCode::from(4)
        }
        None => ExitCode::SUCCESS,
    }
}

fn open_catalog(dir: Option<PathBuf>) -> Result<Catalog> {
    let dir = dir
        .or_else(|| std::env::var_os("GYRO_CATALOG").map(PathBuf::from))
        .or_else(|| Some(PathBuf::from("catalog")).filter(|p| p.is_dir()));
    match dir {
        Some(d) => Catalog::with_dir(&d),
        None => Ok(Catalog::builtin()),
    }
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::CheckGyrogroup { .. } => "check-gyrogroup",
        Command::GyroIso { .. } => "gyro-iso",
        Command::Subloops { .. } => "subloops",
        Command::Gh2 { .. } => "gh2",
        Command::ClassifyGext { .. } => "classify-gext",
        Command::GyroSplit { .. } => "gyro-split",
        Command::BoxedSquare { .. } => "boxed-square",
        Command::Schur { .. } => "schur",
        Command::Crossed { .. } => "crossed",
        Command::Obstruction { .. } => "obstruction",
        Command::PaperRegress { .. } => "paper-regress",
    }
}

fn dispatch(cmd: &Command, c: &Catalog) -> Result<Output> {
    match cmd {
        Command::CheckGyrogroup { group, n } => check_gyrogroup(&c.get(group)?, *n),
        Command::GyroIso { g1, g2 } => gyro_iso(&c.get(g1)?, &c.get(g2)?),
        Command::Subloops { group, order } => subloops(&c.get(group)?, *order),
        Command::Gh2 { k, h, sigma } => gh2(c, k, h, sigma.as_ref()),
        Command::ClassifyGext { k, h, sigma } => classify(c, k, h, sigma.as_ref()),
        Command::GyroSplit { ext } => gyro_split(c, ext),
        Command::BoxedSquare { group } => square(&c.get(group)?),
        Command::Schur { group } => schur(&c.get(group)?),
        Command::Crossed { k, h, sigma } => crossed(c, k, h, sigma.as_ref()),
        Command::Obstruction { h, k, psi } => obstruction(c, h, k, psi),
        Command::PaperRegress { only } => paper_regress(c, only),
    }
}

fn labels(g: &FiniteGroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

fn map_json(f: &GroupMap) -> Value {
    let (d, c) = (f.domain(), f.codomain());
    let m: serde_json::Map<String, Value> = d
        .elements()
        .map(|x| (d.label(x).to_string(), Value::from(c.label(f.apply(x)))))
        .collect();
    Value::Object(m)
}

fn check_gyrogroup(g: &FiniteGroup, n: i64) -> Result<Output> {
    let s = circ_n(g, n);
    let r = s.is_right_gyrogroup();
    let l = |x: usize| s.label(x).to_string();
    Ok(Output {
        results: json!({
            "group": g.name(),
            "n": n,
            "order": s.order(),
            "verdict": r.verdict(),
            "is_right_loop": r.is_right_loop,
            "inner_maps_are_automorphisms": r.inner_maps_are_automorphisms,
            "f_leftinv_identity": r.f_leftinv_identity,
            "associative": s.is_associative(),
            "distinct_inner_maps": s.distinct_inner_maps().len(),
        }),
        witnesses: json!({
            "automorphism": r.automorphism_witness.map(|(y, z, a, b)| [l(y), l(z), l(a), l(b)]),
            "leftinv": r.leftinv_witness.map(l),
        }),
        inputs: vec![g.canonical_bytes(), n.to_le_bytes().to_vec()],
        ..Output::default()
    })
}

fn gyro_iso(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Output> {
    let (gyro, search) = if g1.order() == g2.order() {
        are_gyro_isomorphic(g1, g2)?
    } else {
        (None, Default::default())
    };
    let (iso, _) = isomorphism_search(g1, g2);
    Ok(Output {
        results: json!({
            "g1": g1.name(),
            "g2": g2.name(),
            "gyro_isomorphic": gyro.is_some(),
            "isomorphic": iso.is_some(),
            "nodes": search.nodes,
        }),
        witnesses: json!({ "gyro_isomorphism": gyro.as_ref().map(map_json) }),
        inputs: vec![g1.canonical_bytes(), g2.canonical_bytes()],
        ..Output::default()
    })
}

fn subloops(g: &FiniteGroup, order: Option<usize>) -> Result<Output> {
    let loops = sub_right_loops(&circ_n(g, 1), order)?;
    let groups = subgroups(g, order)?;
    let listed: Vec<Value> = loops
        .iter()
        .take(WITNESS_LIMIT)
        .map(|s| json!({ "elements": labels(g, s), "subgroup": g.is_subgroup(s) }))
        .collect();
    Ok(Output {
        results: json!({
            "group": g.name(),
            "order": order,
            "count": loops.len(),
            "subgroup_count": groups.len(),
        }),
        witnesses: json!({ "subloops": listed, "truncated": loops.len() > WITNESS_LIMIT }),
        inputs: vec![g.canonical_bytes(), order.unwrap_or(0).to_le_bytes().to_vec()],
        ..Output::default()
    })
}

/// The kernel for `K`, `H` and an optional action file, with the inputs to digest.
fn kernel(c: &Catalog, k: &str, h: &str, sigma: Option<&PathBuf>) -> Result<(AbstractKernel, Vec<Vec<u8>>)> {
    let (k, h) = (c.get(k)?, c.get(h)?);
    let mut inputs = vec![k.canonical_bytes(), h.canonical_bytes()];
    let Some(path) = sigma else {
        return Ok((AbstractKernel::trivial(&k, &h)?, inputs));
    };
    let (a, text) = files::load_action(path, "sigma", c)?;
    if a.k.canonical_bytes() != inputs[0] || a.h.canonical_bytes() != inputs[1] {
        return Err(Error::InvalidParameter(format!(
            "{} acts {} on {}, not {} on {}",
            path.display(),
            a.k.name(),
            a.h.name(),
            k.name(),
            h.name()
        )));
    }
    inputs.push(text.into_bytes());
    Ok((AbstractKernel::new(&k, &h, files::sigma_maps(&a)?)?, inputs))
}

fn gh2(c: &Catalog, k: &str, h: &str, sigma: Option<&PathBuf>) -> Result<Output> {
    let (kernel, inputs) = kernel(c, k, h, sigma)?;
    let spaces = cocycle_spaces(&kernel)?;
    let mut results = serde_json::to_value(spaces.summary()).expect("summary serializes");
    let generators = results.as_object_mut().and_then(|m| m.remove("gh2_generators"));
    let mut annotations = Vec::new();
    let z3 = c.get("Z3")?.canonical_bytes();
    if kernel.is_trivial_action() && kernel.h().canonical_bytes() == z3 && kernel.k().canonical_bytes() == c.get("Z3xZ3")?.canonical_bytes() {
        annotations.push(format!(
            "FLAG: GH2(Z3xZ3, Z3) computes to invariant factors {:?}; the source states it is isomorphic to Z2",
            spaces.gh2_invariants()
        ));
        annotations.push(format!(
            "FLAG: H2(Z3xZ3, Z3) computes to invariant factors {:?}; the source states it is isomorphic to V4",
            spaces.h2_invariants()
        ));
    }
    Ok(Output {
        results,
        witnesses: json!({ "gh2_generators": generators }),
        annotations,
        inputs,
        ..Output::default()
    })
}

/// Name of the first catalog group isomorphic to `g`.
fn identify(c: &Catalog, g: &FiniteGroup) -> Option<String> {
    c.entries()
        .iter()
        .filter(|e| e.group.order() == g.order())
        .find(|e| isomorphism_search(&e.group, g).0.is_some())
        .map(|e| e.name.clone())
}

fn classify(c: &Catalog, k: &str, h: &str, sigma: Option<&PathBuf>) -> Result<Output> {
    let (kernel, inputs) = kernel(c, k, h, sigma)?;
    let spaces = cocycle_spaces(&kernel)?;
    let classes = classify_gext(&spaces)?;
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    let mut uncertified = 0;
    for cl in &classes {
        let e = &cl.extension;
        let g = e.record.g();
        if !(e.gyro_cocycle && e.section_certified) {
            uncertified += 1;
        }
        rows.push(json!({
            "coords": cl.coords,
            "middle_group": identify(c, g),
            "middle_order": g.order(),
            "abelian": g.is_abelian(),
            "splits": e.record.splits(),
            "gyro_cocycle": e.gyro_cocycle,
            "section_certified": e.section_certified,
        }));
        let kk = kernel.k();
        let hh = kernel.h();
        witnesses.push(json!({
            "coords": cl.coords,
            "cocycle": kk.elements().map(|x| kk.elements().map(|y| hh.label(cl.cocycle.get(x, y)).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }));
    }
    Ok(Output {
        results: json!({
            "k": kernel.k().name(),
            "h": kernel.h().name(),
            "gh2_invariants": spaces.gh2_invariants(),
            "class_count": classes.len(),
            "classes": rows,
        }),
        witnesses: Value::Array(witnesses),
        inputs,
        violation: (uncertified > 0).then(|| format!("{uncertified} class(es) without a certified gyro section")),
        ..Output::default()
    })
}

fn gyro_split(c: &Catalog, path: &PathBuf) -> Result<Output> {
    let (e, text) = files::load_extension(path, c)?;
    let found = find_gyro_splitting(&e)?;
    Ok(Output {
        results: json!({
            "h": e.h().name(),
            "g": e.g().name(),
            "k": e.k().name(),
            "central": e.is_central(),
            "splits": e.splits(),
            "gyro_splits": found.section.is_some(),
            "nodes": found.nodes,
        }),
        witnesses: json!({ "section": found.section.as_ref().map(map_json) }),
        inputs: vec![text.into_bytes()],
        ..Output::default()
    })
}

fn square(k: &FiniteGroup) -> Result<Output> {
    let bs = boxed_square(k)?;
    if let Some(v) = bs.relation_violation() {
        return Err(Error::RelationViolation(v));
    }
    let r = bs.report();
    let (gyro_crossed, crossed) = bs.diagonal_map();
    Ok(Output {
        results: json!({
            "group": r.group,
            "modulus": r.modulus,
            "invariants": r.invariants,
            "order": r.order,
            "diagonal_gyro_crossed": gyro_crossed,
            "diagonal_crossed": crossed,
        }),
        witnesses: json!({ "canonical_form": r.canonical_form }),
        inputs: vec![k.canonical_bytes()],
        ..Output::default()
    })
}

fn schur(k: &FiniteGroup) -> Result<Output> {
    let r = gyro_schur_multiplier(k)?;
    let violation = (!r.consistent).then(|| "multiplier disagrees with GH2".to_string());
    Ok(Output {
        results: serde_json::to_value(r).expect("report serializes"),
        witnesses: Value::Null,
        inputs: vec![k.canonical_bytes()],
        violation,
        ..Output::default()
    })
}

fn crossed(c: &Catalog, k: &str, h: &str, sigma: Option<&PathBuf>) -> Result<Output> {
    let (kernel, inputs) = kernel(c, k, h, sigma)?;
    let r = gyro_crossed_homs(&kernel)?;
    let violation = r
        .sequence
        .as_ref()
        .filter(|s| !s.exact())
        .map(|_| "sequence is not exact".to_string());
    let mut results = serde_json::to_value(r).expect("report serializes");
    if let Some(m) = results.as_object_mut() {
        m.insert("k".into(), kernel.k().name().into());
        m.insert("h".into(), kernel.h().name().into());
    }
    Ok(Output {
        results,
        witnesses: Value::Null,
        inputs,
        violation,
        ..Output::default()
    })
}

fn aut_data(c: &Catalog, h: &FiniteGroup, name: &str) -> Result<AutData> {
    if h.order() <= AUT_ENUM_ORDER {
        return AutData::enumerate(h);
    }
    let aut = c
        .entry(&format!("Aut{name}"))
        .ok_or_else(|| Error::AutDataMissing(format!("no catalog entry Aut{name}")))?;
    let elems: Vec<usize> = h
        .labels()
        .iter()
        .map(|l| aut.group.index_of(l).ok_or_else(|| Error::AutDataMissing(format!("{l} is not in Aut{name}"))))
        .collect::<Result<_>>()?;
    AutData::from_overgroup(&aut.group, &elems)
}

fn obstruction(c: &Catalog, h: &str, k: &str, path: &PathBuf) -> Result<Output> {
    let (a, text) = files::load_action(path, "psi", c)?;
    let (hg, kg) = (c.get(h)?, c.get(k)?);
    if a.k.canonical_bytes() != kg.canonical_bytes() || a.h.canonical_bytes() != hg.canonical_bytes() {
        return Err(Error::InvalidParameter(format!("{} is for {} and {}", path.display(), a.k.name(), a.h.name())));
    }
    let name = c.entry(h).map_or(h, |e| e.name.as_str());
    let data = aut_data(c, &hg, name)?;
    let dh = data.h();
    let to_data: Vec<usize> = hg
        .labels()
        .iter()
        .map(|l| dh.index_of(l).ok_or_else(|| Error::AutDataMissing(format!("{l} is not in the automorphism data"))))
        .collect::<Result<_>>()?;
    let mut from_data = vec![0; dh.order()];
    for (y, &i) in to_data.iter().enumerate() {
        from_data[i] = y;
    }
    let index: std::collections::HashMap<Vec<usize>, usize> = data
        .aut()
        .elements()
        .map(|a| (to_data.iter().map(|&i| from_data[data.act(a, i)]).collect(), a))
        .collect();
    let reps = a
        .tables
        .iter()
        .enumerate()
        .map(|(x, t)| {
            index
                .get(t)
                .copied()
                .ok_or_else(|| Error::InvalidMap(format!("psi.{} is not an automorphism of {}", kg.label(x), hg.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    let r = obstruction_realizable(&data, &OuterAction { k: kg.clone(), reps }, true)?;
    let realizable = r.realizable();
    let gyro = r.gyro.clone();
    let mut results = serde_json::to_value(&r).expect("report serializes");
    if let Some(m) = results.as_object_mut() {
        m.insert("h".into(), hg.name().into());
        m.insert("realizable".into(), realizable.into());
        m.insert("aut_order".into(), data.aut().order().into());
    }
    Ok(Output {
        results,
        witnesses: json!({ "lifting": gyro.and_then(|g| g.lifting) }),
        inputs: vec![hg.canonical_bytes(), kg.canonical_bytes(), text.into_bytes()],
        ..Output::default()
    })
}

fn paper_regress(c: &Catalog, only: &[String]) -> Result<Output> {
    let checks = if only.is_empty() {
        regress::run_all(c).checks
    } else {
        only.iter().map(|k| regress::run_check(c, k)).collect::<Result<_>>()?
    };
    let report = regress::RegressReport { checks };
    let failed: Vec<&str> = report.checks.iter().filter(|r| r.gating && !r.passed).map(|r| r.id).collect();
    let summary: Vec<Value> = report
        .checks
        .iter()
        .map(|r| json!({ "id": r.id, "name": r.name, "gating": r.gating, "passed": r.passed }))
        .collect();
    let details: Vec<Value> = report.checks.iter().map(|r| json!({ "id": r.id, "detail": r.detail })).collect();
    let annotations = report.checks.iter().flat_map(|r| r.annotations.iter().map(move |a| format!("{}: {a}", r.id))).collect();
    let inputs = c.entries().iter().map(|e| e.group.canonical_bytes()).collect();
    Ok(Output {
        results: json!({ "passed": report.passed(), "checks": summary }),
        witnesses: Value::Array(details),
        annotations,
        inputs,
        violation: (!failed.is_empty()).then(|| format!("failed: {}", failed.join(", "))),
    })
}
