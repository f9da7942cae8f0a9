//! The homotopy relation on hom-sets, its witnesses, and the congruence
//! check.
//!
//! Two morphisms `φ, ψ : R → Q` (with `R` in the structured base) are
//! homotopic when some `h : R̂ → Q` has `h∘i_R = φ` and `h∘j_R = ψ`. The
//! relation on a hom-set is computed forward: enumerate every
//! `h ∈ C(X̂, Y)`, emit the edge `(h∘i_X, h∘j_X)`, and take connected
//! components. When the axioms hold the raw edge set is already an
//! equivalence; [`homotopy_classes`] records whether that is the case so
//! any discrepancy is visible.
//!
//! The witness constructions mirror the axiom witnesses: reflexivity
//! composes with the retraction (`h = u∘p`), symmetry with the end swap
//! (`h* = h∘k`), transitivity goes through the axiom III pasting, and
//! compatibility whiskers with a lifted morphism (`h* = g∘h∘f̂`). Every
//! constructed witness is re-verified against the composition table;
//! constructions are never trusted blindly.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{EngineError, Result};
use crate::fincat::{FinCategory, MorId, ObjId};
use crate::hstruct::{AxiomReport, HomotopicalStructure, PairIndex};
use crate::union_find::UnionFind;

/// A homotopy `h` between `phi` and `psi`: `h∘i = phi`, `h∘j = psi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub phi: MorId,
    pub psi: MorId,
    pub h: MorId,
}

/// Whether the raw edge relation is already an equivalence, before any
/// closure. Violations carry the offending morphism pair.
#[derive(Debug, Clone, Serialize)]
pub struct RelationLaws {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

impl RelationLaws {
    pub fn all(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }
}

/// Partition of one hom-set `C(X, Y)` into homotopy classes.
#[derive(Debug, Clone)]
pub struct HomotopyPartition {
    pub src: ObjId,
    pub dst: ObjId,
    /// Disjoint classes covering the hom-set. Class members are sorted by
    /// morphism id string, classes by their first member.
    pub classes: Vec<Vec<MorId>>,
    /// One edge per `h ∈ C(X̂, Y)`, in input order of `h`.
    pub witness_edges: Vec<HomotopyWitness>,
    pub raw_laws: RelationLaws,
}

impl HomotopyPartition {
    /// Index of the class containing `m`, if `m` lies in this hom-set.
    pub fn class_of(&self, m: MorId) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&m))
    }

    pub fn same_class(&self, a: MorId, b: MorId) -> bool {
        match (self.class_of(a), self.class_of(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    /// When the per-object axioms I–III hold, the raw edge relation must
    /// already be an equivalence; anything else is an engine bug surfaced
    /// to the caller.
    pub fn discrepancy_with(&self, report: &AxiomReport) -> Option<String> {
        if report.axiom_i.pass()
            && report.axiom_ii.pass()
            && report.axiom_iii.pass()
            && !self.raw_laws.all()
        {
            Some(format!(
                "axioms I-III hold but raw relation laws are {:?} on hom-set ({:?}, {:?})",
                self.raw_laws, self.src, self.dst
            ))
        } else {
            None
        }
    }
}

fn require_parallel(cat: &FinCategory, phi: MorId, psi: MorId) -> Result<(ObjId, ObjId)> {
    if cat.src(phi) != cat.src(psi) || cat.dst(phi) != cat.dst(psi) {
        return Err(EngineError::Contract(format!(
            "`{}` and `{}` are not parallel",
            cat.morphism_name(phi),
            cat.morphism_name(psi)
        )));
    }
    Ok((cat.src(phi), cat.dst(phi)))
}

/// First `h ∈ C(R̂, Q)` with `h∘i_R = phi` and `h∘j_R = psi`, in input
/// order; `None` when the morphisms are not homotopic by any single `h`.
pub fn find_homotopy(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    phi: MorId,
    psi: MorId,
) -> Result<Option<HomotopyWitness>> {
    let (r, q) = require_parallel(cat, phi, psi)?;
    let index = PairIndex::build(cat, hs, r, q)?;
    Ok(index.lookup(phi, psi).map(|h| HomotopyWitness { phi, psi, h }))
}

/// Homotopy classes of `C(x, y)` via union-find over the raw edges.
pub fn homotopy_classes(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    x: ObjId,
    y: ObjId,
) -> Result<HomotopyPartition> {
    let index = PairIndex::build(cat, hs, x, y)?;
    let hom: Vec<MorId> = cat.hom_set(x, y).to_vec();
    let pos: HashMap<MorId, usize> = hom.iter().enumerate().map(|(n, &m)| (m, n)).collect();

    let mut witness_edges = Vec::with_capacity(index.hom.len());
    let mut uf = UnionFind::new(hom.len());
    let mut edge_set: HashSet<(MorId, MorId)> = HashSet::new();
    for (n, &h) in index.hom.iter().enumerate() {
        let (phi, psi) = index.restrictions[n];
        witness_edges.push(HomotopyWitness { phi, psi, h });
        uf.union(pos[&phi], pos[&psi]);
        edge_set.insert((phi, psi));
    }

    let reflexive = hom.iter().all(|&m| edge_set.contains(&(m, m)));
    let symmetric = edge_set.iter().all(|&(a, b)| edge_set.contains(&(b, a)));
    let transitive = edge_set
        .iter()
        .all(|&(a, b)| edge_set.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| edge_set.contains(&(a, d))));

    let mut classes: Vec<Vec<MorId>> = uf
        .classes()
        .into_iter()
        .map(|class| {
            let mut ids: Vec<MorId> = class.into_iter().map(|n| hom[n]).collect();
            ids.sort_by(|&a, &b| cat.morphism_name(a).cmp(cat.morphism_name(b)));
            ids
        })
        .collect();
    classes.sort_by(|a, b| cat.morphism_name(a[0]).cmp(cat.morphism_name(b[0])));

    Ok(HomotopyPartition {
        src: x,
        dst: y,
        classes,
        witness_edges,
        raw_laws: RelationLaws { reflexive, symmetric, transitive },
    })
}

fn verify_witness(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    w: &HomotopyWitness,
    context: &str,
) -> Result<()> {
    let (r, _) = require_parallel(cat, w.phi, w.psi)?;
    let i = hs.end_i(cat, r)?;
    let j = hs.end_j(cat, r)?;
    let at_i = cat.compose(w.h, i)?;
    let at_j = cat.compose(w.h, j)?;
    if at_i != w.phi || at_j != w.psi {
        return Err(EngineError::Contract(format!(
            "{context}: witness `{}` restricts to ({}, {}), expected ({}, {})",
            cat.morphism_name(w.h),
            cat.morphism_name(at_i),
            cat.morphism_name(at_j),
            cat.morphism_name(w.phi),
            cat.morphism_name(w.psi),
        )));
    }
    Ok(())
}

/// `u ∼ u`, witnessed by `u∘p` with `p` the axiom I retraction.
pub fn witness_reflexive(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
    u: MorId,
) -> Result<HomotopyWitness> {
    let p = report.retraction(cat, cat.src(u))?;
    let h = cat.compose(u, p)?;
    let w = HomotopyWitness { phi: u, psi: u, h };
    verify_witness(cat, hs, &w, "reflexivity construction")?;
    Ok(w)
}

/// From a witness for `(φ, ψ)`, the witness `h∘k` for `(ψ, φ)` with `k`
/// the axiom II end swap.
pub fn witness_symmetric(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
    w: &HomotopyWitness,
) -> Result<HomotopyWitness> {
    let (r, _) = require_parallel(cat, w.phi, w.psi)?;
    let k = report.end_swap(cat, r)?;
    let h = cat.compose(w.h, k)?;
    let swapped = HomotopyWitness { phi: w.psi, psi: w.phi, h };
    verify_witness(cat, hs, &swapped, "symmetry construction")?;
    Ok(swapped)
}

/// From witnesses for `(u, v)` and `(v, w)`, the axiom III pasting gives a
/// witness for `(u, w)`.
pub fn witness_transitive(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
    first: &HomotopyWitness,
    second: &HomotopyWitness,
) -> Result<HomotopyWitness> {
    if first.psi != second.phi {
        return Err(EngineError::WitnessChainMismatch(
            cat.morphism_name(first.psi).to_string(),
            cat.morphism_name(second.phi).to_string(),
        ));
    }
    let h = report.pasting(cat, cat.src(first.phi), first.h, second.h)?;
    let w = HomotopyWitness { phi: first.phi, psi: second.psi, h };
    verify_witness(cat, hs, &w, "transitivity construction")?;
    Ok(w)
}

/// From a witness for `u ∼ v` in `C(X, Y)`, `f : X′ → X` (both ends in the
/// base) and `g : Y → Y′`, the witness `g∘h∘f̂` for `g∘u∘f ∼ g∘v∘f`.
pub fn witness_whisker(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
    g: MorId,
    w: &HomotopyWitness,
    f: MorId,
) -> Result<HomotopyWitness> {
    let f_hat = report.lift(cat, f)?;
    let h = cat.compose(g, cat.compose(w.h, f_hat)?)?;
    let phi = cat.compose(g, cat.compose(w.phi, f)?)?;
    let psi = cat.compose(g, cat.compose(w.psi, f)?)?;
    let out = HomotopyWitness { phi, psi, h };
    verify_witness(cat, hs, &out, "whiskering construction")?;
    Ok(out)
}

/// All-pairs witnesses on `C(x, y)`, produced by closing the raw edges
/// under the reflexive, symmetric and transitive constructions. The key set
/// equals the same-class relation of [`homotopy_classes`] whenever the
/// axioms hold.
pub fn close_witnesses(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
    x: ObjId,
    y: ObjId,
) -> Result<BTreeMap<(MorId, MorId), HomotopyWitness>> {
    let index = PairIndex::build(cat, hs, x, y)?;
    let mut map: BTreeMap<(MorId, MorId), HomotopyWitness> = BTreeMap::new();
    for (n, &h) in index.hom.iter().enumerate() {
        let (phi, psi) = index.restrictions[n];
        map.entry((phi, psi)).or_insert(HomotopyWitness { phi, psi, h });
    }
    for &u in cat.hom_set(x, y) {
        if let std::collections::btree_map::Entry::Vacant(slot) = map.entry((u, u)) {
            slot.insert(witness_reflexive(cat, hs, report, u)?);
        }
    }
    loop {
        let mut added = Vec::new();
        for (&(a, b), w) in &map {
            if !map.contains_key(&(b, a)) {
                added.push(((b, a), witness_symmetric(cat, hs, report, w)?));
            }
        }
        for (&(a, b), w1) in &map {
            for (&(c, d), w2) in &map {
                if b == c && !map.contains_key(&(a, d)) && !added.iter().any(|(k, _)| *k == (a, d))
                {
                    added.push(((a, d), witness_transitive(cat, hs, report, w1, w2)?));
                }
            }
        }
        if added.is_empty() {
            return Ok(map);
        }
        map.extend(added);
    }
}

// ---------------------------------------------------------------------------
// Congruence verification
// ---------------------------------------------------------------------------

/// Equivalence laws on one hom-set, checked through the constructions.
#[derive(Debug, Clone, Serialize)]
pub struct HomSetCongruence {
    pub src: String,
    pub dst: String,
    pub class_count: usize,
    pub reflexive_ok: bool,
    pub symmetric_ok: bool,
    pub transitive_ok: bool,
    /// Union-find partition agrees with the constructive closure.
    pub closure_agrees: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatibilityCell {
    pub hom_src: String,
    pub hom_dst: String,
    pub pre_src: String,
    pub post_dst: String,
    pub configurations: u64,
    pub witnessed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatibilityCounterexample {
    pub f: String,
    pub g: String,
    pub u: String,
    pub v: String,
    pub reason: String,
}

/// Outcome of the full congruence check: equivalence laws per hom-set with
/// base domain, plus two-sided compatibility with composition. Witness
/// construction is exercised on every configuration; the report keeps
/// counts and counterexamples rather than materializing every witness.
#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub pass: bool,
    pub hom_sets: Vec<HomSetCongruence>,
    pub compatibility_cells: Vec<CompatibilityCell>,
    pub counterexamples: Vec<CompatibilityCounterexample>,
    /// Compatibility is checked for `f` with both endpoints in the base
    /// (the lift `f̂` needs both cylinders).
    pub scope_note: String,
}

/// Exhaustively verifies that the homotopy relation is a congruence:
/// reflexive, symmetric, transitive on every base-domain hom-set, and
/// compatible with composition on both sides. Witnesses come from the four
/// constructions above, never from fresh search.
pub fn verify_congruence(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
    report: &AxiomReport,
) -> Result<CongruenceReport> {
    if !report.pass() {
        return Err(EngineError::AxiomsNotSatisfied(
            "verify_congruence needs all four axioms to hold on the base".into(),
        ));
    }

    let mut partitions: HashMap<(ObjId, ObjId), HomotopyPartition> = HashMap::new();
    let mut closures: HashMap<(ObjId, ObjId), BTreeMap<(MorId, MorId), HomotopyWitness>> =
        HashMap::new();
    for &x in hs.base() {
        for y in cat.objects() {
            partitions.insert((x, y), homotopy_classes(cat, hs, x, y)?);
            closures.insert((x, y), close_witnesses(cat, hs, report, x, y)?);
        }
    }

    let mut hom_sets = Vec::new();
    for &x in hs.base() {
        for y in cat.objects() {
            let partition = &partitions[&(x, y)];
            let closure = &closures[&(x, y)];
            let mut failures = Vec::new();

            let mut reflexive_ok = true;
            for &u in cat.hom_set(x, y) {
                match witness_reflexive(cat, hs, report, u) {
                    Ok(_) => {}
                    Err(e) => {
                        reflexive_ok = false;
                        failures.push(format!("reflexivity at `{}`: {e}", cat.morphism_name(u)));
                    }
                }
            }

            let mut symmetric_ok = true;
            let mut transitive_ok = true;
            for (&(a, b), w) in closure {
                match witness_symmetric(cat, hs, report, w) {
                    Ok(sw) => {
                        if !partition.same_class(sw.phi, sw.psi) {
                            symmetric_ok = false;
                        }
                    }
                    Err(e) => {
                        symmetric_ok = false;
                        failures.push(format!(
                            "symmetry at ({}, {}): {e}",
                            cat.morphism_name(a),
                            cat.morphism_name(b)
                        ));
                    }
                }
            }
            'outer: for (&(a, b), w1) in closure {
                for (&(c, d), w2) in closure {
                    if b != c {
                        continue;
                    }
                    match witness_transitive(cat, hs, report, w1, w2) {
                        Ok(tw) => {
                            if !partition.same_class(tw.phi, tw.psi) {
                                transitive_ok = false;
                            }
                        }
                        Err(e) => {
                            transitive_ok = false;
                            failures.push(format!(
                                "transitivity at ({}, {}) · ({}, {}): {e}",
                                cat.morphism_name(a),
                                cat.morphism_name(b),
                                cat.morphism_name(c),
                                cat.morphism_name(d)
                            ));
                            break 'outer;
                        }
                    }
                }
            }

            // The union-find partition and the constructive closure must
            // describe the same relation.
            let mut closure_agrees = true;
            for &a in cat.hom_set(x, y) {
                for &b in cat.hom_set(x, y) {
                    let related = closure.contains_key(&(a, b));
                    if related != partition.same_class(a, b) {
                        closure_agrees = false;
                        failures.push(format!(
                            "closure/partition mismatch at ({}, {})",
                            cat.morphism_name(a),
                            cat.morphism_name(b)
                        ));
                    }
                }
            }

            if let Some(d) = partition.discrepancy_with(report) {
                failures.push(d);
            }

            hom_sets.push(HomSetCongruence {
                src: cat.object_name(x).to_string(),
                dst: cat.object_name(y).to_string(),
                class_count: partition.classes.len(),
                reflexive_ok,
                symmetric_ok,
                transitive_ok,
                closure_agrees,
                failures,
            });
        }
    }

    // Compatibility: g∘u∘f ∼ g∘v∘f for every configuration with f between
    // base objects. Cells are independent; merge deterministically.
    let mut cell_list = Vec::new();
    for &x in hs.base() {
        for y in cat.objects() {
            for &x2 in hs.base() {
                for y2 in cat.objects() {
                    cell_list.push((x, y, x2, y2));
                }
            }
        }
    }
    let cell_results: Vec<(CompatibilityCell, Vec<CompatibilityCounterexample>)> = cell_list
        .par_iter()
        .map(|&(x, y, x2, y2)| {
            let closure = &closures[&(x, y)];
            let target_partition = &partitions[&(x2, y2)];
            let mut configurations = 0u64;
            let mut witnessed = 0u64;
            let mut counterexamples = Vec::new();
            for &f in cat.hom_set(x2, x) {
                for &g in cat.hom_set(y, y2) {
                    for (&(u, v), w) in closure {
                        configurations += 1;
                        match witness_whisker(cat, hs, report, g, w, f) {
                            Ok(ww) => {
                                if target_partition.same_class(ww.phi, ww.psi) {
                                    witnessed += 1;
                                } else {
                                    counterexamples.push(CompatibilityCounterexample {
                                        f: cat.morphism_name(f).to_string(),
                                        g: cat.morphism_name(g).to_string(),
                                        u: cat.morphism_name(u).to_string(),
                                        v: cat.morphism_name(v).to_string(),
                                        reason: "whiskered pair lands in different classes".into(),
                                    });
                                }
                            }
                            Err(e) => counterexamples.push(CompatibilityCounterexample {
                                f: cat.morphism_name(f).to_string(),
                                g: cat.morphism_name(g).to_string(),
                                u: cat.morphism_name(u).to_string(),
                                v: cat.morphism_name(v).to_string(),
                                reason: e.to_string(),
                            }),
                        }
                    }
                }
            }
            (
                CompatibilityCell {
                    hom_src: cat.object_name(x).to_string(),
                    hom_dst: cat.object_name(y).to_string(),
                    pre_src: cat.object_name(x2).to_string(),
                    post_dst: cat.object_name(y2).to_string(),
                    configurations,
                    witnessed,
                },
                counterexamples,
            )
        })
        .collect();

    let mut compatibility_cells = Vec::new();
    let mut counterexamples = Vec::new();
    for (cell, cex) in cell_results {
        compatibility_cells.push(cell);
        counterexamples.extend(cex);
    }

    let pass = hom_sets.iter().all(|h| {
        h.reflexive_ok && h.symmetric_ok && h.transitive_ok && h.closure_agrees && h.failures.is_empty()
    }) && counterexamples.is_empty();

    Ok(CongruenceReport {
        pass,
        hom_sets,
        compatibility_cells,
        counterexamples,
        scope_note: "compatibility is checked for f whose endpoints both lie in the base".into(),
    })
}
