//! Homotopical structures and the four axiom checks.
//!
//! A structure assigns to each object `S` of a declared base a cylinder
//! object `Ŝ` and two end inclusions `i_S, j_S : S → Ŝ`. The axioms are
//! decided by exhaustive witness search over the composition table:
//!
//! * I   — some `p : Ŝ → S` retracts both ends: `p∘i_S = p∘j_S = id_S`;
//! * II  — some `k : Ŝ → Ŝ` swaps the ends: `k∘i_S = j_S`, `k∘j_S = i_S`;
//! * III — for `h, h* : Ŝ → T` with `h*∘i_S = h∘j_S` there is `h**` with
//!   `h**∘i_S = h∘i_S` and `h**∘j_S = h*∘j_S`;
//! * IV  — every `u : S → T` between base objects lifts to `û : Ŝ → T̂`
//!   with `û∘i_S = i_T∘u` and `û∘j_S = j_T∘u`.
//!
//! Structures may be partial (base-restricted): one cylinder level is
//! enough to compute the congruence on hom-sets whose domain lies in the
//! base, and cylinder-style instances would otherwise need infinite hat
//! towers. Axiom IV is accordingly checked only for morphisms between base
//! objects; reports carry a note to that effect.
//!
//! Every witness is found as the first candidate in input order and then
//! re-verified against the composition table before it is recorded.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::fincat::{FinCategory, MorId, ObjId};

/// Scope note attached to every axiom report.
pub const AXIOM_IV_SCOPE: &str =
    "axiom IV is checked for morphisms whose endpoints both lie in the structured base";

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

/// On-disk structure format: `base` lists the structured objects, and
/// `hat`/`i`/`j` map each of them to the cylinder object and end inclusions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureData {
    pub base: Vec<String>,
    pub hat: BTreeMap<String, String>,
    pub i: BTreeMap<String, String>,
    pub j: BTreeMap<String, String>,
}

impl StructureData {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure serializes")
    }
}

#[derive(Debug, Clone)]
pub struct HomotopicalStructure {
    base: Vec<ObjId>,
    hat: HashMap<ObjId, ObjId>,
    i_map: HashMap<ObjId, MorId>,
    j_map: HashMap<ObjId, MorId>,
}

impl HomotopicalStructure {
    pub fn from_data(cat: &FinCategory, data: &StructureData) -> Result<Self> {
        let mut base = Vec::new();
        let mut hat = HashMap::new();
        let mut i_map = HashMap::new();
        let mut j_map = HashMap::new();
        for name in &data.base {
            let s = cat.object(name)?;
            if base.contains(&s) {
                return Err(EngineError::MalformedStructure(format!(
                    "base object `{name}` listed twice"
                )));
            }
            base.push(s);
            let missing = |what: &str| {
                EngineError::MalformedStructure(format!("no `{what}` entry for base object `{name}`"))
            };
            let hat_name = data.hat.get(name).ok_or_else(|| missing("hat"))?;
            let i_name = data.i.get(name).ok_or_else(|| missing("i"))?;
            let j_name = data.j.get(name).ok_or_else(|| missing("j"))?;
            let s_hat = cat.object(hat_name)?;
            let i = cat.morphism(i_name)?;
            let j = cat.morphism(j_name)?;
            for (label, m) in [("i", i), ("j", j)] {
                if cat.src(m) != s || cat.dst(m) != s_hat {
                    return Err(EngineError::MalformedStructure(format!(
                        "`{label}` of `{name}` must run {name} → {hat_name}, got {} → {}",
                        cat.object_name(cat.src(m)),
                        cat.object_name(cat.dst(m)),
                    )));
                }
            }
            hat.insert(s, s_hat);
            i_map.insert(s, i);
            j_map.insert(s, j);
        }
        for (key, map_name) in
            [(&data.hat, "hat"), (&data.i, "i"), (&data.j, "j")].map(|(m, n)| (m.keys(), n))
        {
            for k in key {
                if !data.base.contains(k) {
                    return Err(EngineError::MalformedStructure(format!(
                        "`{map_name}` has an entry for `{k}` which is not in the base"
                    )));
                }
            }
        }
        Ok(HomotopicalStructure { base, hat, i_map, j_map })
    }

    /// The degenerate structure `Ŝ = S`, `i_S = j_S = id_S` on every object.
    pub fn trivial(cat: &FinCategory) -> Self {
        let base: Vec<ObjId> = cat.objects().collect();
        let hat = base.iter().map(|&s| (s, s)).collect();
        let i_map: HashMap<_, _> = base.iter().map(|&s| (s, cat.identity(s))).collect();
        let j_map = i_map.clone();
        HomotopicalStructure { base, hat, i_map, j_map }
    }

    pub fn new(
        cat: &FinCategory,
        entries: &[(ObjId, ObjId, MorId, MorId)],
    ) -> Result<Self> {
        let data = StructureData {
            base: entries.iter().map(|&(s, ..)| cat.object_name(s).to_string()).collect(),
            hat: entries
                .iter()
                .map(|&(s, h, ..)| (cat.object_name(s).to_string(), cat.object_name(h).to_string()))
                .collect(),
            i: entries
                .iter()
                .map(|&(s, _, i, _)| (cat.object_name(s).to_string(), cat.morphism_name(i).to_string()))
                .collect(),
            j: entries
                .iter()
                .map(|&(s, _, _, j)| (cat.object_name(s).to_string(), cat.morphism_name(j).to_string()))
                .collect(),
        };
        Self::from_data(cat, &data)
    }

    pub fn to_data(&self, cat: &FinCategory) -> StructureData {
        StructureData {
            base: self.base.iter().map(|&s| cat.object_name(s).to_string()).collect(),
            hat: self
                .base
                .iter()
                .map(|&s| {
                    (cat.object_name(s).to_string(), cat.object_name(self.hat[&s]).to_string())
                })
                .collect(),
            i: self
                .base
                .iter()
                .map(|&s| {
                    (cat.object_name(s).to_string(), cat.morphism_name(self.i_map[&s]).to_string())
                })
                .collect(),
            j: self
                .base
                .iter()
                .map(|&s| {
                    (cat.object_name(s).to_string(), cat.morphism_name(self.j_map[&s]).to_string())
                })
                .collect(),
        }
    }

    pub fn base(&self) -> &[ObjId] {
        &self.base
    }

    pub fn in_base(&self, s: ObjId) -> bool {
        self.hat.contains_key(&s)
    }

    fn require(&self, cat: &FinCategory, s: ObjId) -> Result<()> {
        if self.in_base(s) {
            Ok(())
        } else {
            Err(EngineError::NotInBase(cat.object_name(s).to_string()))
        }
    }

    pub fn hat(&self, cat: &FinCategory, s: ObjId) -> Result<ObjId> {
        self.require(cat, s)?;
        Ok(self.hat[&s])
    }

    pub fn end_i(&self, cat: &FinCategory, s: ObjId) -> Result<MorId> {
        self.require(cat, s)?;
        Ok(self.i_map[&s])
    }

    pub fn end_j(&self, cat: &FinCategory, s: ObjId) -> Result<MorId> {
        self.require(cat, s)?;
        Ok(self.j_map[&s])
    }
}

// ---------------------------------------------------------------------------
// Restriction index
// ---------------------------------------------------------------------------

/// For fixed base object `S` and target `T`, indexes `C(Ŝ, T)` by the pair
/// of end restrictions `(h∘i_S, h∘j_S)` so witness searches are lookups.
#[derive(Debug, Clone)]
pub struct PairIndex {
    /// `C(Ŝ, T)` in input order.
    pub hom: Vec<MorId>,
    /// End restrictions, parallel to `hom`.
    pub restrictions: Vec<(MorId, MorId)>,
    /// `(h∘i_S, h∘j_S) → [h]`, lists in input order.
    pub by_pair: HashMap<(MorId, MorId), Vec<MorId>>,
    /// `h∘i_S → [h]`, lists in input order.
    pub by_i: HashMap<MorId, Vec<MorId>>,
}

impl PairIndex {
    pub fn build(
        cat: &FinCategory,
        hs: &HomotopicalStructure,
        s: ObjId,
        t: ObjId,
    ) -> Result<PairIndex> {
        let s_hat = hs.hat(cat, s)?;
        let i = hs.end_i(cat, s)?;
        let j = hs.end_j(cat, s)?;
        let hom: Vec<MorId> = cat.hom_set(s_hat, t).to_vec();
        let mut restrictions = Vec::with_capacity(hom.len());
        let mut by_pair: HashMap<(MorId, MorId), Vec<MorId>> = HashMap::new();
        let mut by_i: HashMap<MorId, Vec<MorId>> = HashMap::new();
        for &h in &hom {
            let hi = cat.try_compose(h, i).expect("total on composable pairs");
            let hj = cat.try_compose(h, j).expect("total on composable pairs");
            restrictions.push((hi, hj));
            by_pair.entry((hi, hj)).or_default().push(h);
            by_i.entry(hi).or_default().push(h);
        }
        Ok(PairIndex { hom, restrictions, by_pair, by_i })
    }

    /// First `h` with `h∘i_S = at_i` and `h∘j_S = at_j`, in input order.
    pub fn lookup(&self, at_i: MorId, at_j: MorId) -> Option<MorId> {
        self.by_pair.get(&(at_i, at_j)).and_then(|v| v.first().copied())
    }
}

// ---------------------------------------------------------------------------
// Axiom checks
// ---------------------------------------------------------------------------

/// Outcome of a per-object axiom (I or II): a witness per base object, or
/// the objects for which the full candidate hom-set contains none.
#[derive(Debug, Clone)]
pub struct UnaryAxiomCheck {
    pub witnesses: BTreeMap<ObjId, MorId>,
    pub counterexamples: Vec<ObjId>,
}

impl UnaryAxiomCheck {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct PastingEntry {
    pub s: ObjId,
    pub t: ObjId,
    pub h: MorId,
    pub h_star: MorId,
    pub witness: MorId,
}

/// Outcome of axiom III. `witness_for` is keyed by `(S, h, h*)` — the base
/// object matters because hats need not be injective, so the same pair of
/// morphisms out of a shared cylinder can need different witnesses for
/// different end inclusions. The ordered `entries` list preserves
/// enumeration order for reporting.
#[derive(Debug, Clone, Default)]
pub struct PastingAxiomCheck {
    pub entries: Vec<PastingEntry>,
    pub witness_for: HashMap<(ObjId, MorId, MorId), MorId>,
    pub counterexamples: Vec<(ObjId, ObjId, MorId, MorId)>,
}

impl PastingAxiomCheck {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Outcome of axiom IV: a lift `û` per base-to-base morphism `u`.
#[derive(Debug, Clone)]
pub struct LiftAxiomCheck {
    pub witnesses: BTreeMap<MorId, MorId>,
    pub counterexamples: Vec<MorId>,
}

impl LiftAxiomCheck {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub axiom_i: UnaryAxiomCheck,
    pub axiom_ii: UnaryAxiomCheck,
    pub axiom_iii: PastingAxiomCheck,
    pub axiom_iv: LiftAxiomCheck,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.axiom_i.pass() && self.axiom_ii.pass() && self.axiom_iii.pass() && self.axiom_iv.pass()
    }

    /// Axiom I witness `p : Ŝ → S`.
    pub fn retraction(&self, cat: &FinCategory, s: ObjId) -> Result<MorId> {
        self.axiom_i.witnesses.get(&s).copied().ok_or_else(|| EngineError::MissingWitness {
            axiom: "axiom I".into(),
            key: cat.object_name(s).to_string(),
        })
    }

    /// Axiom II witness `k : Ŝ → Ŝ`.
    pub fn end_swap(&self, cat: &FinCategory, s: ObjId) -> Result<MorId> {
        self.axiom_ii.witnesses.get(&s).copied().ok_or_else(|| EngineError::MissingWitness {
            axiom: "axiom II".into(),
            key: cat.object_name(s).to_string(),
        })
    }

    /// Axiom III witness `h**` for the pair `(h, h*)` over base object `s`.
    pub fn pasting(&self, cat: &FinCategory, s: ObjId, h: MorId, h_star: MorId) -> Result<MorId> {
        self.axiom_iii.witness_for.get(&(s, h, h_star)).copied().ok_or_else(|| {
            EngineError::MissingWitness {
                axiom: "axiom III".into(),
                key: format!(
                    "({}, {}) over {}",
                    cat.morphism_name(h),
                    cat.morphism_name(h_star),
                    cat.object_name(s)
                ),
            }
        })
    }

    /// Axiom IV witness `û` for a base-to-base morphism `u`.
    pub fn lift(&self, cat: &FinCategory, u: MorId) -> Result<MorId> {
        self.axiom_iv.witnesses.get(&u).copied().ok_or_else(|| EngineError::MissingWitness {
            axiom: "axiom IV".into(),
            key: cat.morphism_name(u).to_string(),
        })
    }
}

fn expect_eq(cat: &FinCategory, label: &str, got: MorId, want: MorId) {
    assert!(
        got == want,
        "witness replay failed for {label}: got `{}`, want `{}`",
        cat.morphism_name(got),
        cat.morphism_name(want),
    );
}

/// Axiom I: for each base `S`, the first `p ∈ C(Ŝ, S)` with
/// `p∘i_S = p∘j_S = id_S`.
pub fn check_axiom_i(cat: &FinCategory, hs: &HomotopicalStructure) -> UnaryAxiomCheck {
    let found: Vec<(ObjId, Option<MorId>)> = hs
        .base()
        .par_iter()
        .map(|&s| {
            let s_hat = hs.hat(cat, s).expect("base object");
            let i = hs.end_i(cat, s).expect("base object");
            let j = hs.end_j(cat, s).expect("base object");
            let id_s = cat.identity(s);
            let p = cat
                .hom_set(s_hat, s)
                .iter()
                .copied()
                .find(|&p| {
                    cat.try_compose(p, i) == Some(id_s) && cat.try_compose(p, j) == Some(id_s)
                });
            (s, p)
        })
        .collect();
    let mut witnesses = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (s, p) in found {
        match p {
            Some(p) => {
                witnesses.insert(s, p);
            }
            None => counterexamples.push(s),
        }
    }
    UnaryAxiomCheck { witnesses, counterexamples }
}

/// Axiom II: for each base `S`, the first `k ∈ C(Ŝ, Ŝ)` with
/// `k∘i_S = j_S` and `k∘j_S = i_S`.
pub fn check_axiom_ii(cat: &FinCategory, hs: &HomotopicalStructure) -> UnaryAxiomCheck {
    let found: Vec<(ObjId, Option<MorId>)> = hs
        .base()
        .par_iter()
        .map(|&s| {
            let s_hat = hs.hat(cat, s).expect("base object");
            let i = hs.end_i(cat, s).expect("base object");
            let j = hs.end_j(cat, s).expect("base object");
            let k = cat
                .hom_set(s_hat, s_hat)
                .iter()
                .copied()
                .find(|&k| cat.try_compose(k, i) == Some(j) && cat.try_compose(k, j) == Some(i));
            (s, k)
        })
        .collect();
    let mut witnesses = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (s, k) in found {
        match k {
            Some(k) => {
                witnesses.insert(s, k);
            }
            None => counterexamples.push(s),
        }
    }
    UnaryAxiomCheck { witnesses, counterexamples }
}

/// Axiom III over every base `S`, every object `T`, and every pair
/// `h, h* ∈ C(Ŝ, T)` with `h*∘i_S = h∘j_S`. The candidate hom-set is
/// indexed by end restrictions so each witness is a hash lookup.
pub fn check_axiom_iii(cat: &FinCategory, hs: &HomotopicalStructure) -> PastingAxiomCheck {
    let cells: Vec<(ObjId, ObjId)> = hs
        .base()
        .iter()
        .flat_map(|&s| cat.objects().map(move |t| (s, t)))
        .collect();
    let per_cell: Vec<PastingAxiomCheck> = cells
        .par_iter()
        .map(|&(s, t)| {
            let mut cell = PastingAxiomCheck::default();
            let index = PairIndex::build(cat, hs, s, t).expect("base object");
            let pos_of: HashMap<MorId, usize> =
                index.hom.iter().enumerate().map(|(n, &h)| (h, n)).collect();
            for (pos, &h) in index.hom.iter().enumerate() {
                let (hi, hj) = index.restrictions[pos];
                let Some(partners) = index.by_i.get(&hj) else { continue };
                for &h_star in partners {
                    let h_star_j = index.restrictions[pos_of[&h_star]].1;
                    match index.lookup(hi, h_star_j) {
                        Some(w) => {
                            let i = hs.end_i(cat, s).expect("base object");
                            let j = hs.end_j(cat, s).expect("base object");
                            expect_eq(cat, "axiom III (i side)", cat.compose(w, i).unwrap(), hi);
                            expect_eq(
                                cat,
                                "axiom III (j side)",
                                cat.compose(w, j).unwrap(),
                                h_star_j,
                            );
                            cell.entries.push(PastingEntry { s, t, h, h_star, witness: w });
                            cell.witness_for.insert((s, h, h_star), w);
                        }
                        None => cell.counterexamples.push((s, t, h, h_star)),
                    }
                }
            }
            cell
        })
        .collect();
    let mut out = PastingAxiomCheck::default();
    for cell in per_cell {
        out.entries.extend(cell.entries);
        out.witness_for.extend(cell.witness_for);
        out.counterexamples.extend(cell.counterexamples);
    }
    out
}

/// Axiom IV for every `u` between base objects: the first
/// `û ∈ C(Ŝ, T̂)` with `û∘i_S = i_T∘u` and `û∘j_S = j_T∘u`.
pub fn check_axiom_iv(cat: &FinCategory, hs: &HomotopicalStructure) -> LiftAxiomCheck {
    type PairOutcome = (Vec<(MorId, MorId)>, Vec<MorId>);
    let pairs: Vec<(ObjId, ObjId)> = hs
        .base()
        .iter()
        .flat_map(|&s| hs.base().iter().map(move |&t| (s, t)))
        .collect();
    let per_pair: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|&(s, t)| {
            let t_hat = hs.hat(cat, t).expect("base object");
            let i_t = hs.end_i(cat, t).expect("base object");
            let j_t = hs.end_j(cat, t).expect("base object");
            let index = PairIndex::build(cat, hs, s, t_hat).expect("base object");
            let mut witnesses = Vec::new();
            let mut counterexamples = Vec::new();
            for &u in cat.hom_set(s, t) {
                let want_i = cat.try_compose(i_t, u).expect("total");
                let want_j = cat.try_compose(j_t, u).expect("total");
                match index.lookup(want_i, want_j) {
                    Some(w) => witnesses.push((u, w)),
                    None => counterexamples.push(u),
                }
            }
            (witnesses, counterexamples)
        })
        .collect();
    let mut witnesses = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (ws, cs) in per_pair {
        witnesses.extend(ws);
        counterexamples.extend(cs);
    }
    counterexamples.sort();
    LiftAxiomCheck { witnesses, counterexamples }
}

/// All four axioms; overall pass means pass on the declared base.
pub fn check_axioms(cat: &FinCategory, hs: &HomotopicalStructure) -> AxiomReport {
    AxiomReport {
        axiom_i: check_axiom_i(cat, hs),
        axiom_ii: check_axiom_ii(cat, hs),
        axiom_iii: check_axiom_iii(cat, hs),
        axiom_iv: check_axiom_iv(cat, hs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryData;

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
    fn trivial_structure_passes_all_axioms_on_t1() {
        let cat = t1();
        let hs = HomotopicalStructure::trivial(&cat);
        let report = check_axioms(&cat, &hs);
        assert!(report.pass());
        let star = cat.object("*").unwrap();
        let id = cat.morphism("id").unwrap();
        assert_eq!(report.retraction(&cat, star).unwrap(), id);
        assert_eq!(report.end_swap(&cat, star).unwrap(), id);
        assert_eq!(report.lift(&cat, id).unwrap(), id);
    }

    #[test]
    fn trivial_structure_passes_all_axioms_on_p2() {
        let cat = p2();
        let hs = HomotopicalStructure::trivial(&cat);
        let report = check_axioms(&cat, &hs);
        assert!(report.pass());
        let a = cat.object("A").unwrap();
        let b = cat.object("B").unwrap();
        assert_eq!(report.retraction(&cat, a).unwrap(), cat.morphism("id_A").unwrap());
        assert_eq!(report.retraction(&cat, b).unwrap(), cat.morphism("id_B").unwrap());
        // With i = j = id, every u lifts to itself.
        let f = cat.morphism("f").unwrap();
        assert_eq!(report.lift(&cat, f).unwrap(), f);
        // Axiom III pairs require h* = h; the witness is h itself.
        for entry in &report.axiom_iii.entries {
            assert_eq!(entry.h, entry.h_star);
            assert_eq!(entry.witness, entry.h);
        }
    }

    #[test]
    fn bad_hat_structure_fails_axiom_i_with_counterexample_a() {
        let cat = p2();
        let data = StructureData {
            base: vec!["A".into()],
            hat: [("A".to_string(), "B".to_string())].into(),
            i: [("A".to_string(), "f".to_string())].into(),
            j: [("A".to_string(), "g".to_string())].into(),
        };
        let hs = HomotopicalStructure::from_data(&cat, &data).unwrap();
        let report = check_axioms(&cat, &hs);
        assert!(!report.pass());
        let a = cat.object("A").unwrap();
        assert_eq!(report.axiom_i.counterexamples, vec![a]);
        // C(B,B) = {id_B} cannot swap f and g either.
        assert_eq!(report.axiom_ii.counterexamples, vec![a]);
        // No pair in C(B,·) meets the axiom III precondition, and the only
        // base-to-base morphism id_A lifts to id_B.
        assert!(report.axiom_iii.pass());
        assert!(report.axiom_iv.pass());
    }

    #[test]
    fn shared_hat_objects_get_separate_pasting_tables() {
        // hat(A) = hat(B) = A with B a retract of A: hats need not be
        // injective, and the pasting table must key witnesses per base
        // object even when both scan the same candidate hom-set.
        let data = CategoryData::from_json(
            r#"{"objects":["A","B","T"],
                "morphisms":[{"id":"id_A","src":"A","dst":"A"},
                             {"id":"id_B","src":"B","dst":"B"},
                             {"id":"id_T","src":"T","dst":"T"},
                             {"id":"a","src":"A","dst":"B"},
                             {"id":"b","src":"B","dst":"A"},
                             {"id":"t1","src":"A","dst":"T"},
                             {"id":"t2","src":"A","dst":"T"},
                             {"id":"u1","src":"B","dst":"T"},
                             {"id":"u2","src":"B","dst":"T"}],
                "identities":{"A":"id_A","B":"id_B","T":"id_T"},
                "composition":[["b","a","id_A"],["a","b","id_B"],
                               ["t1","b","u1"],["t2","b","u2"],
                               ["u1","a","t1"],["u2","a","t2"]]}"#,
        )
        .unwrap();
        let cat = FinCategory::from_data(data).unwrap();
        let hs = HomotopicalStructure::from_data(
            &cat,
            &StructureData {
                base: vec!["A".into(), "B".into()],
                hat: [("A".to_string(), "A".to_string()), ("B".to_string(), "A".to_string())]
                    .into(),
                i: [("A".to_string(), "id_A".to_string()), ("B".to_string(), "b".to_string())]
                    .into(),
                j: [("A".to_string(), "id_A".to_string()), ("B".to_string(), "b".to_string())]
                    .into(),
            },
        )
        .unwrap();
        let report = check_axioms(&cat, &hs);
        assert!(report.pass(), "{:?}", report.axiom_iii.counterexamples);

        let a = cat.object("A").unwrap();
        let b = cat.object("B").unwrap();
        let t1 = cat.morphism("t1").unwrap();
        // The same candidate pair is witnessed in both base contexts.
        assert_eq!(report.pasting(&cat, a, t1, t1).unwrap(), t1);
        assert_eq!(report.pasting(&cat, b, t1, t1).unwrap(), t1);
        let entries_a = report.axiom_iii.entries.iter().filter(|e| e.s == a).count();
        let entries_b = report.axiom_iii.entries.iter().filter(|e| e.s == b).count();
        assert!(entries_a > 0 && entries_b > 0);

        // The downstream pipeline accepts non-injective hats too.
        let congruence = crate::homotopy::verify_congruence(&cat, &hs, &report).unwrap();
        assert!(congruence.pass);
        let quotient = crate::quotient::quotient_category(&cat, &hs, &report).unwrap();
        assert_eq!(quotient.category.object_count(), 2);
    }

    #[test]
    fn pasting_counterexample_is_confirmed_by_brute_force() {
        // C(Ŝ, T) = {h, h*} with restrictions (x, y) and (y, z): the pair
        // (h, h*) meets the precondition but no candidate has restrictions
        // (x, z), so the indexed search must report it.
        let data = CategoryData::from_json(
            r#"{"objects":["S","Shat","T"],
                "morphisms":[{"id":"id_S","src":"S","dst":"S"},
                             {"id":"id_Shat","src":"Shat","dst":"Shat"},
                             {"id":"id_T","src":"T","dst":"T"},
                             {"id":"i","src":"S","dst":"Shat"},
                             {"id":"j","src":"S","dst":"Shat"},
                             {"id":"h","src":"Shat","dst":"T"},
                             {"id":"hstar","src":"Shat","dst":"T"},
                             {"id":"x","src":"S","dst":"T"},
                             {"id":"y","src":"S","dst":"T"},
                             {"id":"z","src":"S","dst":"T"}],
                "identities":{"S":"id_S","Shat":"id_Shat","T":"id_T"},
                "composition":[["h","i","x"],["h","j","y"],
                               ["hstar","i","y"],["hstar","j","z"]]}"#,
        )
        .unwrap();
        let cat = FinCategory::from_data(data).unwrap();
        let hs = HomotopicalStructure::from_data(
            &cat,
            &StructureData {
                base: vec!["S".into()],
                hat: [("S".to_string(), "Shat".to_string())].into(),
                i: [("S".to_string(), "i".to_string())].into(),
                j: [("S".to_string(), "j".to_string())].into(),
            },
        )
        .unwrap();
        let check = check_axiom_iii(&cat, &hs);
        let s = cat.object("S").unwrap();
        let t = cat.object("T").unwrap();
        let h = cat.morphism("h").unwrap();
        let h_star = cat.morphism("hstar").unwrap();
        assert_eq!(check.counterexamples, vec![(s, t, h, h_star)]);

        // Independent confirmation: scan the full candidate hom-set.
        let i = hs.end_i(&cat, s).unwrap();
        let j = hs.end_j(&cat, s).unwrap();
        let want_i = cat.compose(h, i).unwrap();
        let want_j = cat.compose(h_star, j).unwrap();
        let s_hat = hs.hat(&cat, s).unwrap();
        for &candidate in cat.hom_set(s_hat, t) {
            assert!(
                cat.compose(candidate, i).unwrap() != want_i
                    || cat.compose(candidate, j).unwrap() != want_j,
                "brute force found a witness the indexed search missed"
            );
        }
    }

    #[test]
    fn structure_endpoints_are_validated() {
        let cat = p2();
        let data = StructureData {
            base: vec!["B".into()],
            hat: [("B".to_string(), "A".to_string())].into(),
            i: [("B".to_string(), "f".to_string())].into(),
            j: [("B".to_string(), "f".to_string())].into(),
        };
        assert!(matches!(
            HomotopicalStructure::from_data(&cat, &data),
            Err(EngineError::MalformedStructure(_))
        ));
    }
}
