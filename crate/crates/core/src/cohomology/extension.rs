use serde::Serialize;

use super::{cocycle_witness, gyro_witness, AbstractKernel, Cochain2, CocycleSpaces};
use crate::error::{Error, Result};
use crate::group::{isomorphism_search, ExtensionRecord, FiniteGroup, GroupMap, TABLE_CAP};
use crate::morphism::{is_gyro_hom, Criterion};

/// The extension `H → H ×_f K → K` with its canonical section `x ↦ (0, x)`.
#[derive(Clone, Debug)]
pub struct FactorExtension {
    pub record: ExtensionRecord,
    /// `f` satisfies both gyro conditions.
    pub gyro_cocycle: bool,
    /// The canonical section passed the gyro-homomorphism test.
    pub section_certified: bool,
}

/// Builds `(a, x)(b, y) = (a + σ_x(b) + f(x, y), xy)` on `H × K`.
///
/// The pair `(a, x)` sits at index `x·|H| + a`.
pub fn extension_from_factor_system(kernel: &AbstractKernel, f: &Cochain2) -> Result<FactorExtension> {
    let (h, k) = (kernel.h(), kernel.k());
    if let Some((x, y, z)) = cocycle_witness(kernel, f) {
        return Err(Error::NotACocycle(format!(
            "cocycle identity fails at ({}, {}, {})",
            k.label(x),
            k.label(y),
            k.label(z)
        )));
    }
    let m = h.order();
    let n = m * k.order();
    if n > TABLE_CAP {
        return Err(Error::OrderCapExceeded { cap: TABLE_CAP });
    }
    let labels = (0..n).map(|i| format!("({},{})", h.label(i % m), k.label(i / m))).collect();
    let g = FiniteGroup::from_fn_unchecked(&format!("{}.{}", h.name(), k.name()), labels, |i, j| {
        let (a, x) = (i % m, i / m);
        let (b, y) = (j % m, j / m);
        let c = h.mul(h.mul(a, kernel.sigma(x).apply(b)), f.get(x, y));
        k.mul(x, y) * m + c
    });
    g.validate()?;
    let alpha = GroupMap::new(h.clone(), g.clone(), (0..m).collect())?;
    let beta = GroupMap::new(g.clone(), k.clone(), (0..n).map(|i| i / m).collect())?;
    let section = GroupMap::new(k.clone(), g.clone(), k.elements().map(|x| x * m).collect())?;
    let section_certified = is_gyro_hom(&section, Criterion::Definition).verdict;
    let gyro_cocycle = gyro_witness(kernel, f).is_none();
    if section_certified != gyro_cocycle {
        return Err(Error::RelationViolation(format!(
            "section test ({section_certified}) disagrees with the gyro conditions ({gyro_cocycle})"
        )));
    }
    Ok(FactorExtension {
        record: ExtensionRecord::new(alpha, beta, Some(section))?,
        gyro_cocycle,
        section_certified,
    })
}

/// One gyro-split extension per element of `GH²`.
#[derive(Clone, Debug)]
pub struct GextClass {
    pub coords: Vec<i64>,
    pub cocycle: Cochain2,
    pub extension: FactorExtension,
}

pub fn classify_gext(spaces: &CocycleSpaces) -> Result<Vec<GextClass>> {
    spaces
        .gh2_elements()
        .into_iter()
        .map(|coords| {
            let cocycle = spaces.gh2_element(&coords);
            let extension = extension_from_factor_system(spaces.kernel(), &cocycle)?;
            Ok(GextClass {
                coords,
                cocycle,
                extension,
            })
        })
        .collect()
}

/// How many `H²` classes have a middle group of the given type, and how many
/// of those admit a gyro-splitting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCount {
    pub name: String,
    pub classes: usize,
    pub gyro_split_classes: usize,
}

/// Sorts every extension class by the isomorphism type of its middle group.
pub fn extension_types(spaces: &CocycleSpaces, candidates: &[FiniteGroup]) -> Result<Vec<TypeCount>> {
    let mut out: Vec<TypeCount> = candidates
        .iter()
        .map(|c| TypeCount {
            name: c.name().to_string(),
            classes: 0,
            gyro_split_classes: 0,
        })
        .collect();
    for coords in spaces.h2_elements() {
        let f = spaces.h2_element(&coords);
        let e = extension_from_factor_system(spaces.kernel(), &f)?;
        let g = e.record.g();
        let i = candidates
            .iter()
            .position(|c| c.order() == g.order() && isomorphism_search(g, c).0.is_some())
            .ok_or_else(|| Error::InvalidParameter(format!("class {coords:?} matches no candidate")))?;
        out[i].classes += 1;
        if spaces.is_gyro_split_class(&f) {
            out[i].gyro_split_classes += 1;
        }
    }
    Ok(out)
}
