//! The regression corpus: every worked example, each checked by the library
//! and, where it is cheap, by an independent brute-force oracle.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::Catalog;
use crate::cohomology::{
    classify_gext, cocycle_spaces, connecting_delta, extension_from_factor_system, extension_types,
    gyro_crossed_homs, obstruction_realizable, AbstractKernel, AutData, Cochain2, GyroCrossedHom, OuterAction,
};
use crate::error::{Error, Result};
use crate::group::{
    cyclic, direct_product, extraspecial27, heisenberg_mod_p, isomorphism_search, quaternion8, symmetric,
    ExtensionRecord, FiniteGroup, GroupMap,
};
use crate::loops::{circ_n, loop_property_candidates, trivial_relations_witness, LoopProperty};
use crate::morphism::{find_gyro_splitting, is_gyro_hom, sub_right_loops, subgroups, Criterion, HOM_CAP};
use crate::square::{boxed_square, free_morphism_to, gyro_schur_multiplier, u_group};

/// Seed for every sampled check.
pub const SEED: u64 = 0x6779_726f;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub gating: bool,
    pub passed: bool,
    pub detail: Value,
    /// Flagged discrepancies with the source, reported but not reconciled.
    pub annotations: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegressReport {
    pub checks: Vec<CheckResult>,
}

impl RegressReport {
    /// All gating checks passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.gating)
    }
}

type CheckFn = fn(&Catalog) -> Result<Outcome>;

struct Outcome {
    passed: bool,
    detail: Value,
    annotations: Vec<String>,
}

fn outcome(passed: bool, detail: Value) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail,
        annotations: Vec::new(),
    })
}

/// `(id, name, gating, check)`.
const CHECKS: [(&str, &str, bool, CheckFn); 14] = [
    ("C01", "circ-n-universality", true, circ_n_universality),
    ("C02", "q8-law", true, q8_law),
    ("C03", "e27-suite", true, e27_suite),
    ("C04", "gyro-split-examples", true, gyro_split_examples),
    ("C05", "unitriangular-formula", true, unitriangular_formula),
    ("C06", "cohomology-dual-path", true, cohomology_dual_path),
    ("C07", "gh2-z3-squared", true, gh2_z3_squared),
    ("C08", "fundamental-sequence", true, fundamental_sequence),
    ("C09", "gyro-square", true, gyro_square),
    ("C10", "schur-consistency", true, schur_consistency),
    ("C11", "crossed-sequence", true, crossed_sequence),
    ("C12", "trivial-relations-and-criteria", true, trivial_relations_and_criteria),
    ("C13", "foguel-ungar", true, foguel_ungar),
    ("C14", "a6-no-gyro-splitting", false, a6_no_gyro_splitting),
];

/// `(id, name, gating)` for every check, in run order.
pub fn checks() -> impl Iterator<Item = (&'static str, &'static str, bool)> {
    CHECKS.iter().map(|c| (c.0, c.1, c.2))
}

/// Runs one check by id or name.
pub fn run_check(catalog: &Catalog, key: &str) -> Result<CheckResult> {
    let (id, name, gating, f) = CHECKS
        .iter()
        .find(|c| c.0.eq_ignore_ascii_case(key) || c.1 == key)
        .ok_or_else(|| Error::InvalidParameter(format!("no check named {key:?}")))?;
    let start = Instant::now();
    let (passed, detail, annotations) = match f(catalog) {
        Ok(o) => (o.passed, o.detail, o.annotations),
        Err(e) => (false, json!({ "error": e.to_string() }), Vec::new()),
    };
    Ok(CheckResult {
        id,
        name,
        gating: *gating,
        passed,
        detail,
        annotations,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_all(catalog: &Catalog) -> RegressReport {
    RegressReport {
        checks: CHECKS
            .iter()
            .map(|c| run_check(catalog, c.0).expect("listed check"))
            .collect(),
    }
}

fn z(n: usize) -> FiniteGroup {
    cyclic(n).expect("small cyclic group")
}

fn builtin(catalog: &Catalog) -> impl Iterator<Item = &FiniteGroup> {
    catalog.entries().iter().filter(|e| e.source == "builtin").map(|e| &e.group)
}

fn circ_n_universality(catalog: &Catalog) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for g in builtin(catalog) {
        for n in -2..=2 {
            checked += 1;
            if !circ_n(g, n).is_right_gyrogroup().verdict() {
                failures.push(format!("{} n={n}", g.name()));
            }
        }
    }
    outcome(failures.is_empty(), json!({ "checked": checked, "failures": failures }))
}

fn q8_law(_: &Catalog) -> Result<Outcome> {
    let q = quaternion8();
    let s = circ_n(&q, 1);
    let law = q.elements().all(|x| q.elements().all(|y| s.op(x, y) == q.mul(y, x)));
    let loop_group = s.as_group();
    let iso = loop_group
        .as_ref()
        .is_some_and(|l| isomorphism_search(l, &q).0.is_some());
    outcome(law && iso, json!({ "law_holds_on_64_pairs": law, "isomorphic_to_q8": iso }))
}

fn e27_suite(_: &Catalog) -> Result<Outcome> {
    let e = extraspecial27(3)?;
    let s = circ_n(&e, 1);
    let l = s.as_group();
    let elementary = l
        .as_ref()
        .is_some_and(|l| l.order() == 27 && l.is_abelian() && l.exponent() == 3);
    let subloops = sub_right_loops(&s, Some(9))?.len();
    let subgroups9 = subgroups(&e, Some(9))?.len();
    outcome(
        elementary && subloops == 13 && subgroups9 == 4,
        json!({
            "loop_is_elementary_abelian": elementary,
            "subloops_of_order_9": subloops,
            "subgroups_of_order_9": subgroups9,
        }),
    )
}

fn central_quotient(g: &FiniteGroup, normal: &[usize]) -> Result<ExtensionRecord> {
    ExtensionRecord::from_normal_subgroup(g, normal)
}

fn gyro_split_examples(_: &Catalog) -> Result<Outcome> {
    let e27 = extraspecial27(3)?;
    let u5 = heisenberg_mod_p(5)?;
    let z4 = z(4);
    let cases = [
        ("Z3 -> E27 -> Z3xZ3", central_quotient(&e27, &e27.center())?, true),
        ("Z(U3Z5) -> U3Z5 -> Z5xZ5", central_quotient(&u5, &u5.center())?, false),
        ("Z2 -> Z4 -> Z2", central_quotient(&z4, &[0, 2])?, false),
    ];
    let mut passed = true;
    let mut rows = Vec::new();
    for (name, e, expect) in cases {
        let out = find_gyro_splitting(&e)?;
        let certified = out.section.as_ref().is_none_or(|t| {
            is_gyro_hom(t, Criterion::Definition).verdict
                && e.k().elements().all(|x| e.beta.apply(t.apply(x)) == x)
        });
        let found = out.section.is_some();
        passed &= found == expect && certified;
        rows.push(json!({ "extension": name, "gyro_split": found, "expected": expect, "nodes": out.nodes }));
    }
    outcome(passed, Value::Array(rows))
}

type Mat = [[u64; 3]; 3];

fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p;
        }
    }
    c
}

fn unitriangular(a: [u64; 3]) -> Mat {
    [[1, a[0], a[1]], [0, 1, a[2]], [0, 0, 1]]
}

fn unitriangular_formula(_: &Catalog) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    for p in [3u64, 5, 7] {
        let coords: Vec<[u64; 3]> = (0..p * p * p).map(|i| [i / (p * p), (i / p) % p, i % p]).collect();
        let mats: Vec<Mat> = coords.iter().map(|&a| unitriangular(a)).collect();
        let ident = unitriangular([0, 0, 0]);
        let inverse: Vec<Mat> = mats
            .iter()
            .map(|m| *mats.iter().find(|x| mat_mul(m, x, p) == ident).expect("unitriangular is invertible"))
            .collect();
        // x∘₁y = y⁻¹xy² with x = U(a), y = U(b).
        let formula = |a: [u64; 3], b: [u64; 3]| {
            let m = |v: u64| v % p;
            [
                m(a[0] + b[0]),
                m(b[1] + 2 * a[0] * b[2] + (p - m(b[0] * a[2])) + a[1]),
                m(b[2] + a[2]),
            ]
        };
        let mut matrix_agrees = true;
        for (i, &a) in coords.iter().enumerate() {
            for (j, &b) in coords.iter().enumerate() {
                let y2 = mat_mul(&mats[j], &mats[j], p);
                let direct = mat_mul(&mat_mul(&inverse[j], &mats[i], p), &y2, p);
                matrix_agrees &= direct == unitriangular(formula(a, b));
            }
        }
        let g = heisenberg_mod_p(p as usize)?;
        let s = circ_n(&g, 1);
        let idx = |c: [u64; 3]| (c[0] * p * p + c[1] * p + c[2]) as usize;
        let table_agrees = coords
            .iter()
            .all(|&a| coords.iter().all(|&b| s.op(idx(a), idx(b)) == idx(formula(a, b))));
        let loop_group = s.as_group();
        let abelian = loop_group.as_ref().map(|l| l.is_abelian());
        let isomorphic = match (&loop_group, p) {
            (Some(l), 5) => Some(isomorphism_search(l, &g).0.is_some()),
            _ => None,
        };
        let expect_abelian = p == 3;
        passed &= matrix_agrees && table_agrees && abelian == Some(expect_abelian) && isomorphic != Some(false);
        rows.push(json!({
            "p": p,
            "formula_matches_matrices": matrix_agrees,
            "formula_matches_loop_table": table_agrees,
            "loop_abelian": abelian,
            "loop_isomorphic_to_group": isomorphic,
        }));
    }
    outcome(passed, Value::Array(rows))
}

fn dual_path_pairs() -> Vec<(FiniteGroup, FiniteGroup)> {
    let ks = [
        z(2),
        z(3),
        direct_product(&z(2), &z(2)).expect("V4"),
        direct_product(&z(3), &z(3)).expect("Z3^2"),
        symmetric(3).expect("S3"),
    ];
    ks.iter().flat_map(|k| [2, 3, 4].map(|n| (k.clone(), z(n)))).collect()
}

fn cohomology_dual_path(_: &Catalog) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (k, h) in dual_path_pairs() {
        let spaces = cocycle_spaces(&AbstractKernel::trivial(&k, &h)?)?;
        let mut cochains = spaces.z2_spanning_set();
        // Random combinations exercise sums of generators too.
        for _ in 0..4 {
            let mut f = Cochain2::zero(k.order());
            for g in &cochains.clone() {
                for _ in 0..rng.gen_range(0..h.order()) {
                    f = spaces.add(&f, g);
                }
            }
            cochains.push(f);
        }
        let (mut agree, mut split) = (0, 0);
        for f in &cochains {
            let linear = spaces.is_gyro_split_class(f);
            let e = extension_from_factor_system(spaces.kernel(), f)?;
            let search = find_gyro_splitting(&e.record)?.section.is_some();
            agree += usize::from(linear == search);
            split += usize::from(search);
        }
        passed &= agree == cochains.len();
        rows.push(json!({
            "K": k.name(), "H": h.name(),
            "cochains": cochains.len(), "agreements": agree, "gyro_split": split,
            "gh2": spaces.gh2_invariants(), "h2": spaces.h2_invariants(),
        }));
    }
    outcome(passed, Value::Array(rows))
}

fn gh2_z3_squared(_: &Catalog) -> Result<Outcome> {
    let k = direct_product(&z(3), &z(3))?;
    let spaces = cocycle_spaces(&AbstractKernel::trivial(&k, &z(3))?)?;
    let z3 = z(3);
    let candidates = [
        direct_product(&direct_product(&z3, &z3)?, &z3)?.named("Z3xZ3xZ3"),
        direct_product(&z(9), &z3)?,
        extraspecial27(3)?,
        extraspecial27(9)?,
    ];
    let types = extension_types(&spaces, &candidates)?;
    let split_types: Vec<&str> = types
        .iter()
        .filter(|t| t.gyro_split_classes > 0)
        .map(|t| t.name.as_str())
        .collect();
    let all_types_seen = types.iter().all(|t| t.classes > 0);
    let gh2 = spaces.gh2_invariants().to_vec();
    let h2 = spaces.h2_invariants().to_vec();
    let mut annotations = Vec::new();
    if gh2 != [2] {
        annotations.push(format!(
            "FLAG: GH2(Z3xZ3, Z3) computes to invariant factors {gh2:?}, an elementary abelian 3-group; the source states it is isomorphic to Z2"
        ));
    }
    if h2 != [2, 2] {
        annotations.push(format!(
            "FLAG: H2(Z3xZ3, Z3) computes to invariant factors {h2:?}; the source states it is isomorphic to V4"
        ));
    }
    Ok(Outcome {
        passed: split_types.len() == 2 && all_types_seen,
        detail: json!({
            "gh2_invariants": gh2,
            "h2_invariants": h2,
            "types": types,
            "gyro_split_types": split_types,
            "gyro_split_type_count": split_types.len(),
        }),
        annotations,
    })
}

fn with_gyro_section(e: ExtensionRecord) -> Result<ExtensionRecord> {
    let t = find_gyro_splitting(&e)?.section.ok_or(Error::NoSection)?;
    e.with_section(t)
}

fn fundamental_sequence(_: &Catalog) -> Result<Outcome> {
    let e27 = extraspecial27(3)?;
    let mut cases = vec![
        ("E27", with_gyro_section(central_quotient(&e27, &e27.center())?)?, z(3)),
        ("E27", with_gyro_section(central_quotient(&e27, &e27.center())?)?, z(9)),
    ];
    for k in [direct_product(&z(2), &z(2))?, symmetric(3)?] {
        let g = direct_product(&z(2), &k)?;
        let h: Vec<usize> = (0..2).map(|a| a * k.order()).collect();
        let e = with_gyro_section(central_quotient(&g, &h)?)?;
        cases.push(("Z2 x K", e.clone(), z(2)));
        cases.push(("Z2 x K", e, z(4)));
    }
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, e, a) in cases {
        let seq = connecting_delta(&e, &a)?.fundamental_sequence()?;
        passed &= seq.exact_at_hom_h && seq.exact();
        rows.push(json!({ "extension": name, "K": e.k().name(), "A": a.name(), "sequence": seq }));
    }
    outcome(passed, Value::Array(rows))
}

fn gyro_square(_: &Catalog) -> Result<Outcome> {
    let cyclic_trivial: Vec<bool> = (1..=8).map(|n| boxed_square(&z(n)).map(|b| b.is_trivial())).collect::<Result<_>>()?;
    let mut passed = cyclic_trivial.iter().all(|&t| t);
    let mut u_rows = Vec::new();
    for k in [direct_product(&z(2), &z(2))?, direct_product(&z(3), &z(3))?, symmetric(3)?, quaternion8()] {
        let u = u_group(&boxed_square(&k)?)?;
        let valid = u.group.validate().is_ok();
        passed &= valid && u.section_certified;
        u_rows.push(json!({ "K": k.name(), "order": u.group.order(), "valid": valid, "section_certified": u.section_certified }));
    }
    let (mut morphisms, mut failures) = (0, Vec::new());
    for (k, h) in dual_path_pairs() {
        let u = u_group(&boxed_square(&k)?)?;
        let spaces = cocycle_spaces(&AbstractKernel::trivial(&k, &h)?)?;
        for class in classify_gext(&spaces)? {
            match free_morphism_to(&u, &class.extension.record, &GroupMap::identity(&k)) {
                Ok(_) => morphisms += 1,
                Err(e) => failures.push(format!("{} {} {:?}: {e}", k.name(), h.name(), class.coords)),
            }
        }
    }
    passed &= failures.is_empty();
    outcome(
        passed,
        json!({
            "cyclic_squares_trivial": cyclic_trivial,
            "u_groups": u_rows,
            "free_morphisms": morphisms,
            "free_morphism_failures": failures,
        }),
    )
}

fn schur_consistency(_: &Catalog) -> Result<Outcome> {
    let ks = [
        z(2),
        z(3),
        direct_product(&z(2), &z(2))?,
        direct_product(&z(3), &z(3))?,
        symmetric(3)?,
        quaternion8(),
    ];
    let mut rows = Vec::new();
    let mut passed = true;
    for k in ks {
        let r = gyro_schur_multiplier(&k)?;
        passed &= r.consistent;
        rows.push(serde_json::to_value(&r).expect("serializable"));
    }
    outcome(passed, Value::Array(rows))
}

/// Normalized maps `K → H`, as value vectors with `g(e) = 0`.
fn normalized_maps(n: usize, m: usize, slots: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = m.pow(slots as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; n];
        for x in v.iter_mut().skip(1).take(slots) {
            *x = code % m;
            code /= m;
        }
        v
    })
}

/// The four-term sequence by enumerating every map and every cochain.
fn crossed_sequence_by_enumeration(k: &FiniteGroup, h: &FiniteGroup) -> Result<Value> {
    let kernel = AbstractKernel::trivial(k, h)?;
    let spaces = cocycle_spaces(&kernel)?;
    let n = k.order();
    let mut c = HashSet::new();
    let mut gc = Vec::new();
    for values in normalized_maps(n, h.order(), n - 1) {
        let g = GyroCrossedHom::new(&kernel, values)?;
        if g.is_crossed {
            c.insert(g.values.clone());
        }
        if g.is_gyro_crossed {
            gc.push(g.values);
        }
    }
    let boundary = |g: &[usize]| Cochain2::from_fn(n, |x, y| h.mul(h.mul(g[y], h.inv(g[k.mul(x, y)])), g[x]));
    let relations = |f: &Cochain2| {
        let two = (1..n).all(|x| {
            (1..n).all(|y| {
                (1..n).all(|z| {
                    h.mul(f.get(x, y), f.get(k.mul(x, y), z)) == h.mul(f.get(y, z), f.get(x, k.mul(y, z)))
                })
            })
        });
        let three = k.elements().all(|x| {
            k.elements().all(|y| {
                let yi = k.inv(y);
                h.mul(f.get(yi, x), f.get(k.mul(yi, x), k.mul(y, y))) == 0
            })
        });
        two && three
    };
    let mut hom = Vec::new();
    let cells = (n - 1) * (n - 1);
    for values in normalized_maps(cells + 1, h.order(), cells) {
        let f = Cochain2::from_fn(n, |x, y| if x == 0 || y == 0 { 0 } else { values[1 + (x - 1) * (n - 1) + (y - 1)] });
        if relations(&f) {
            hom.push(f);
        }
    }
    let closed: HashSet<Vec<usize>> = gc
        .iter()
        .filter(|g| boundary(g).values().iter().all(|&v| v == 0))
        .cloned()
        .collect();
    let image: BTreeSet<Vec<usize>> = gc.iter().map(|g| boundary(g).values().to_vec()).collect();
    let hom_set: BTreeSet<Vec<usize>> = hom.iter().map(|f| f.values().to_vec()).collect();
    let zero = vec![0i64; spaces.gh2_invariants().len()];
    let mut lambda_kernel = BTreeSet::new();
    let mut lambda_image = BTreeSet::new();
    for f in &hom {
        let class = spaces
            .gh2_class(f)
            .ok_or_else(|| Error::RelationViolation("a homomorphism out of K⊠K is not a gyro-cocycle".into()))?;
        if class == zero {
            lambda_kernel.insert(f.values().to_vec());
        }
        lambda_image.insert(class);
    }
    let gext: BTreeSet<Vec<i64>> = spaces.gh2_elements().into_iter().collect();
    let c_in_gc = c.iter().all(|g| gc.contains(g));
    let exact_at_gc = c_in_gc && closed == c;
    let exact_at_hom = image.is_subset(&hom_set) && image == lambda_kernel;
    let surjective = lambda_image == gext;
    let square_order = boxed_square(k)?
        .invariants()
        .iter()
        .map(|e| num_integer::gcd(*e as usize, h.order()))
        .product::<usize>();
    let lattice = gyro_crossed_homs(&kernel)?.sequence.ok_or(Error::InvalidParameter("nontrivial action".into()))?;
    let lattice_agrees = lattice.exact()
        && lattice.c_order as usize == c.len()
        && lattice.gc_order as usize == gc.len()
        && lattice.hom_order as usize == hom.len()
        && lattice.gext_order as usize == gext.len();
    Ok(json!({
        "K": k.name(), "H": h.name(),
        "c": c.len(), "gc": gc.len(), "hom": hom.len(), "hom_from_square": square_order,
        "image": image.len(), "gext": gext.len(),
        "exact_at_gc": exact_at_gc, "exact_at_hom": exact_at_hom, "surjective": surjective,
        "lattice_agrees": lattice_agrees,
        "ok": exact_at_gc && exact_at_hom && surjective && square_order == hom.len() && lattice_agrees,
    }))
}

fn crossed_sequence(_: &Catalog) -> Result<Outcome> {
    let cases = [(z(2), z(2)), (z(3), z(3)), (direct_product(&z(2), &z(2))?, z(2))];
    let rows = cases
        .iter()
        .map(|(k, h)| crossed_sequence_by_enumeration(k, h))
        .collect::<Result<Vec<_>>>()?;
    let passed = rows.iter().all(|r| r["ok"] == true);
    outcome(passed, Value::Array(rows))
}

/// Exhaustive limit and sample count for the criterion-agreement check.
const EXHAUSTIVE_CHECKS: u64 = 1_000_000;
const SAMPLES: usize = 100_000;

fn trivial_relations_and_criteria(catalog: &Catalog) -> Result<Outcome> {
    let groups: Vec<&FiniteGroup> = builtin(catalog).filter(|g| g.order() <= 27).collect();
    let relation_failures: Vec<&str> = groups
        .iter()
        .filter(|g| trivial_relations_witness(g).is_some())
        .map(|g| g.name())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut exhaustive_pairs, mut sampled_pairs, mut maps_checked, mut gyro_maps) = (0, 0, 0u64, 0u64);
    let mut disagreements = Vec::new();
    let mut sampled = Vec::new();
    for g in &groups {
        for k in &groups {
            let (n, m) = (g.order() as u64, k.order() as u64);
            let maps = m.checked_pow(n as u32 - 1).unwrap_or(u64::MAX);
            if maps.saturating_mul(n * n) <= EXHAUSTIVE_CHECKS {
                exhaustive_pairs += 1;
                for values in normalized_maps(g.order(), k.order(), g.order() - 1) {
                    maps_checked += 1;
                    let (agree, verdict) = criteria_agree(g, k, values)?;
                    gyro_maps += u64::from(verdict);
                    if !agree {
                        disagreements.push(format!("{} -> {}", g.name(), k.name()));
                    }
                }
            } else {
                sampled_pairs += 1;
                sampled.push((*g, *k));
            }
        }
    }
    // Every pair too large to exhaust gets its own samples: half perturb a
    // gyro-homomorphism at one point, half are uniform.
    let homs: Vec<Vec<Vec<usize>>> = sampled
        .iter()
        .map(|(g, k)| {
            crate::morphism::enumerate_gyro_homs(g, k, HOM_CAP)
                .map(|s| s.maps.into_iter().map(|m| m.values().to_vec()).collect())
                .unwrap_or_default()
        })
        .collect();
    for ((g, k), hs) in sampled.iter().zip(&homs) {
        for values in hs {
            maps_checked += 1;
            let (agree, verdict) = criteria_agree(g, k, values.clone())?;
            gyro_maps += u64::from(verdict);
            if !agree || !verdict {
                disagreements.push(format!("{} -> {} (enumerated gyro-hom)", g.name(), k.name()));
            }
        }
        for s in 0..SAMPLES {
            let mut values: Vec<usize> = match hs.is_empty() || s % 2 == 1 {
                true => (0..g.order()).map(|x| if x == 0 { 0 } else { rng.gen_range(0..k.order()) }).collect(),
                false => hs[rng.gen_range(0..hs.len())].clone(),
            };
            if s % 2 == 0 && g.order() > 1 {
                values[rng.gen_range(1..g.order())] = rng.gen_range(0..k.order());
            }
            maps_checked += 1;
            let (agree, verdict) = criteria_agree(g, k, values)?;
            gyro_maps += u64::from(verdict);
            if !agree {
                disagreements.push(format!("{} -> {} (sample {s})", g.name(), k.name()));
            }
        }
    }
    outcome(
        relation_failures.is_empty() && disagreements.is_empty(),
        json!({
            "groups": groups.len(),
            "trivial_relation_failures": relation_failures,
            "exhaustive_pairs": exhaustive_pairs,
            "sampled_pairs": sampled_pairs,
            "samples_per_sampled_pair": SAMPLES,
            "maps_checked": maps_checked,
            "gyro_homomorphisms_seen": gyro_maps,
            "disagreements": disagreements.iter().take(20).collect::<Vec<_>>(),
        }),
    )
}

/// Whether the three criteria agree on `values`, and their common verdict.
fn criteria_agree(g: &FiniteGroup, k: &FiniteGroup, values: Vec<usize>) -> Result<(bool, bool)> {
    let f = GroupMap::new(g.clone(), k.clone(), values)?;
    let v: Vec<bool> = Criterion::ALL.iter().map(|&c| is_gyro_hom(&f, c).verdict).collect();
    Ok((v.iter().all(|&x| x == v[0]), v[0]))
}

fn foguel_ungar(catalog: &Catalog) -> Result<Outcome> {
    let mut agreeing: Vec<LoopProperty> = LoopProperty::ALL.to_vec();
    let mut rows = Vec::new();
    for e in catalog.entries() {
        let (predicate, props) = loop_property_candidates(&e.group);
        for (p, holds) in &props {
            if *holds != predicate {
                agreeing.retain(|q| q != p);
            }
        }
        rows.push(json!({
            "group": e.name,
            "central_by_2_engel": predicate,
            "candidates": props.iter().map(|(p, h)| json!({ "identity": p.formula(), "holds": h })).collect::<Vec<_>>(),
        }));
    }
    let named: Vec<&str> = agreeing.iter().map(|p| p.formula()).collect();
    outcome(agreeing.len() == 1, json!({ "matching_identity": named, "groups": rows }))
}

fn a6_no_gyro_splitting(catalog: &Catalog) -> Result<Outcome> {
    let (Some(h), Some(aut)) = (catalog.entry("A6"), catalog.entry("AutA6")) else {
        return outcome(false, json!({ "skipped": "A6/AutA6 catalog files not loaded" }));
    };
    let (h, aut) = (&h.group, &aut.group);
    let h_elems: Vec<usize> = h
        .labels()
        .iter()
        .map(|l| aut.index_of(l).ok_or_else(|| Error::NotSubgroup(format!("{l} is not in AutA6"))))
        .collect::<Result<_>>()?;
    let e = ExtensionRecord::from_normal_subgroup(aut, &h_elems)?;
    let search = find_gyro_splitting(&e)?;
    let data = AutData::from_overgroup(aut, &h_elems)?;
    let out = e.k().clone();
    let fibers = e.fibers();
    let psi = OuterAction {
        k: out.clone(),
        reps: out.elements().map(|x| fibers[x][0]).collect(),
    };
    let obstruction = obstruction_realizable(&data, &psi, true)?;
    let no_lifting = obstruction.gyro.as_ref().is_some_and(|g| !g.found);
    outcome(
        search.section.is_none() && no_lifting,
        json!({
            "out_order": out.order(),
            "gyro_splitting_found": search.section.is_some(),
            "nodes": search.nodes,
            "obstruction": obstruction,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_have_unique_ids() {
        let ids: HashSet<&str> = CHECKS.iter().map(|c| c.0).collect();
        assert_eq!(ids.len(), CHECKS.len());
        assert!(matches!(run_check(&Catalog::default(), "C99"), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn missing_a6_files_are_reported_not_fatal() {
        let r = run_check(&Catalog::builtin(), "C14").unwrap();
        assert!(!r.passed && !r.gating);
        assert!(r.detail.get("skipped").is_some());
    }

    #[test]
    fn enumeration_of_normalized_maps() {
        let all: Vec<Vec<usize>> = normalized_maps(3, 2, 2).collect();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|v| v[0] == 0));
    }
}
