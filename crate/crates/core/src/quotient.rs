//! Quotient category modulo homotopy, and homotopy equivalence of objects.
//!
//! The congruence induces a quotient of the full subcategory on the base
//! objects (only there is the relation defined on every hom-set involved).
//! Class representatives are the lexicographically smallest morphism ids;
//! well-definedness of the descended composition is checked exhaustively
//! rather than assumed.
//!
//! Object-level notions piggyback on the relation: `X` and `Y` are
//! homotopy equivalent when some `u : X → Y`, `v : Y → X` satisfy
//! `v∘u ∼ id_X` and `u∘v ∼ id_Y`; `X` is contractible when it is
//! equivalent to a caller-designated point object. Both definitions use
//! only the relation and composition, so they make sense in any structured
//! category.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{EngineError, Result};
use crate::fincat::{CategoryData, FinCategory, MorId, MorphismData, ObjId};
use crate::homotopy::{
    close_witnesses, homotopy_classes, verify_congruence, HomotopyPartition, HomotopyWitness,
};
use crate::hstruct::{AxiomReport, HomotopicalStructure};

/// The quotient of the base subcategory, plus the map sending each original
/// morphism to its class representative.
#[derive(Debug, Clone)]
pub struct QuotientCategory {
    pub category: FinCategory,
    pub class_map: BTreeMap<String, String>,
}

/// A homotopy equivalence between two objects: `v∘u ∼ id` and `u∘v ∼ id`,
/// with replayable witnesses for both.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalencePair {
    pub u: String,
    pub v: String,
    pub vu_witness: WitnessDoc,
    pub uv_witness: WitnessDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDoc {
    pub phi: String,
    pub psi: String,
    pub h: String,
}

fn witness_doc(cat: &FinCategory, w: &HomotopyWitness) -> WitnessDoc {
    WitnessDoc {
        phi: cat.morphism_name(w.phi).to_string(),
        psi: cat.morphism_name(w.psi).to_string(),
        h: cat.morphism_name(w.h).to_string(),
    }
}

/// Builds the quotient of the full subcategory on the base objects.
/// Verifies the congruence first and refuses to quotient when it fails.
pub fn quotient_category(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
) -> Result<QuotientCategory> {
    let congruence = verify_congruence(cat, hs, report)?;
    if !congruence.pass {
        return Err(EngineError::CongruenceNotVerified(
            "the homotopy relation is not a congruence on this structure".into(),
        ));
    }

    let base: Vec<ObjId> = hs.base().to_vec();
    let mut partitions: HashMap<(ObjId, ObjId), HomotopyPartition> = HashMap::new();
    for &x in &base {
        for &y in &base {
            partitions.insert((x, y), homotopy_classes(cat, hs, x, y)?);
        }
    }

    // Representative = lexicographically smallest id in the class (classes
    // are already sorted that way).
    let mut class_map: BTreeMap<String, String> = BTreeMap::new();
    let mut rep_of: HashMap<MorId, MorId> = HashMap::new();
    for partition in partitions.values() {
        for class in &partition.classes {
            let rep = class[0];
            for &m in class {
                rep_of.insert(m, rep);
                class_map
                    .insert(cat.morphism_name(m).to_string(), cat.morphism_name(rep).to_string());
            }
        }
    }

    // Composition must descend: the class of g∘f may not depend on the
    // chosen members. Checked over every member pair.
    for &x in &base {
        for &y in &base {
            for &z in &base {
                for &f in cat.hom_set(x, y) {
                    for &g in cat.hom_set(y, z) {
                        let expected = rep_of[&cat.compose(g, f)?];
                        let (rf, rg) = (rep_of[&f], rep_of[&g]);
                        let got = rep_of[&cat.compose(rg, rf)?];
                        if got != expected {
                            return Err(EngineError::CongruenceNotVerified(format!(
                                "composition does not descend at ({}, {})",
                                cat.morphism_name(g),
                                cat.morphism_name(f)
                            )));
                        }
                    }
                }
            }
        }
    }

    let mut morphisms = Vec::new();
    for &x in &base {
        for &y in &base {
            for class in &partitions[&(x, y)].classes {
                morphisms.push(MorphismData {
                    id: cat.morphism_name(class[0]).to_string(),
                    src: cat.object_name(x).to_string(),
                    dst: cat.object_name(y).to_string(),
                });
            }
        }
    }
    let mut composition = Vec::new();
    for &x in &base {
        for &y in &base {
            for &z in &base {
                for class_f in &partitions[&(x, y)].classes {
                    for class_g in &partitions[&(y, z)].classes {
                        let (rf, rg) = (class_f[0], class_g[0]);
                        let comp_rep = rep_of[&cat.compose(rg, rf)?];
                        composition.push((
                            cat.morphism_name(rg).to_string(),
                            cat.morphism_name(rf).to_string(),
                            cat.morphism_name(comp_rep).to_string(),
                        ));
                    }
                }
            }
        }
    }
    let data = CategoryData {
        objects: base.iter().map(|&x| cat.object_name(x).to_string()).collect(),
        morphisms,
        identities: base
            .iter()
            .map(|&x| {
                (
                    cat.object_name(x).to_string(),
                    cat.morphism_name(rep_of[&cat.identity(x)]).to_string(),
                )
            })
            .collect(),
        composition,
    };
    let category = FinCategory::from_data(data)?;
    Ok(QuotientCategory { category, class_map })
}

/// All pairs `(u, v)` exhibiting `x ≃ y`, found by scanning
/// `C(x, y) × C(y, x)` and testing membership in the identity classes.
pub fn homotopy_equivalences(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
    x: ObjId,
    y: ObjId,
) -> Result<Vec<EquivalencePair>> {
    if !hs.in_base(x) {
        return Err(EngineError::NotInBase(cat.object_name(x).to_string()));
    }
    if !hs.in_base(y) {
        return Err(EngineError::NotInBase(cat.object_name(y).to_string()));
    }
    let pxx = homotopy_classes(cat, hs, x, x)?;
    let pyy = homotopy_classes(cat, hs, y, y)?;
    let cxx = close_witnesses(cat, hs, report, x, x)?;
    let cyy = close_witnesses(cat, hs, report, y, y)?;
    let (id_x, id_y) = (cat.identity(x), cat.identity(y));

    let mut out = Vec::new();
    for &u in cat.hom_set(x, y) {
        for &v in cat.hom_set(y, x) {
            let vu = cat.compose(v, u)?;
            let uv = cat.compose(u, v)?;
            if pxx.same_class(vu, id_x) && pyy.same_class(uv, id_y) {
                let w_vu = cxx.get(&(vu, id_x)).ok_or_else(|| {
                    EngineError::Contract("class membership without closure witness".into())
                })?;
                let w_uv = cyy.get(&(uv, id_y)).ok_or_else(|| {
                    EngineError::Contract("class membership without closure witness".into())
                })?;
                out.push(EquivalencePair {
                    u: cat.morphism_name(u).to_string(),
                    v: cat.morphism_name(v).to_string(),
                    vu_witness: witness_doc(cat, w_vu),
                    uv_witness: witness_doc(cat, w_uv),
                });
            }
        }
    }
    Ok(out)
}

/// `x` is contractible relative to the designated point object `z` when
/// `x ≃ z`; returns the first equivalence pair as evidence.
pub fn is_contractible(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
    x: ObjId,
    z: ObjId,
) -> Result<(bool, Option<EquivalencePair>)> {
    let mut pairs = homotopy_equivalences(cat, hs, report, x, z)?;
    if pairs.is_empty() {
        Ok((false, None))
    } else {
        Ok((true, Some(pairs.remove(0))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{validate_category, CategoryData};
    use crate::hstruct::check_axioms;
    use crate::instances::gen_trivial;

    fn t1() -> FinCategory {
        FinCategory::from_data(
            CategoryData::from_json(
                r#"{"objects":["*"],"morphisms":[{"id":"id","src":"*","dst":"*"}],
                    "identities":{"*":"id"},"composition":[]}"#,
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn p2() -> FinCategory {
        FinCategory::from_data(
            CategoryData::from_json(
                r#"{"objects":["A","B"],
                    "morphisms":[{"id":"id_A","src":"A","dst":"A"},
                                 {"id":"id_B","src":"B","dst":"B"},
                                 {"id":"f","src":"A","dst":"B"},
                                 {"id":"g","src":"A","dst":"B"}],
                    "identities":{"A":"id_A","B":"id_B"},"composition":[]}"#,
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn quotient_of_trivial_structure_is_isomorphic_copy() {
        for cat in [t1(), p2()] {
            let bundle = gen_trivial(&cat);
            let report = check_axioms(&cat, &bundle.hs);
            let q = quotient_category(&cat, &bundle.hs, &report).unwrap();
            assert_eq!(q.category.object_count(), cat.object_count());
            assert_eq!(q.category.morphism_count(), cat.morphism_count());
            // Everything is its own representative.
            for (m, rep) in &q.class_map {
                assert_eq!(m, rep);
            }
            assert!(validate_category(&q.category.to_data()).ok);
        }
    }

    #[test]
    fn terminal_object_is_self_equivalent() {
        let cat = t1();
        let bundle = gen_trivial(&cat);
        let report = check_axioms(&cat, &bundle.hs);
        let star = cat.object("*").unwrap();
        let pairs = homotopy_equivalences(&cat, &bundle.hs, &report, star, star).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].u, "id");
        let (yes, first) = is_contractible(&cat, &bundle.hs, &report, star, star).unwrap();
        assert!(yes);
        assert!(first.is_some());
    }

    #[test]
    fn parallel_pair_objects_are_not_equivalent() {
        let cat = p2();
        let bundle = gen_trivial(&cat);
        let report = check_axioms(&cat, &bundle.hs);
        let a = cat.object("A").unwrap();
        let b = cat.object("B").unwrap();
        // C(B, A) is empty, so no pair can exist.
        let pairs = homotopy_equivalences(&cat, &bundle.hs, &report, a, b).unwrap();
        assert!(pairs.is_empty());
        let (yes, _) = is_contractible(&cat, &bundle.hs, &report, a, b).unwrap();
        assert!(!yes);
    }
}
