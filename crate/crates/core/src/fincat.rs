//! Finite categories: data model, validation, and composition indexes.
//!
//! A category is given extensionally: object ids, morphism ids with
//! endpoints, an identity morphism per object, and a composition table that
//! is total exactly on composable pairs. The composition convention is
//! `g∘f` = "apply `f` first"; the table is keyed `(g, f)`.
//!
//! Morphism identity is id-string equality. Validation is exhaustive over
//! all pairs and triples — every later search trusts the table.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};

/// Index of an object in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub u32);

/// Index of a morphism in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
pub struct Morphism {
    pub id: String,
    pub src: ObjId,
    pub dst: ObjId,
}

// ---------------------------------------------------------------------------
// Raw (file-level) form
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismData {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// The on-disk category format. Identity compositions may be omitted;
/// [`CategoryData::complete_identities`] fills them in from the unit laws.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryData {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismData>,
    pub identities: BTreeMap<String, String>,
    /// Triples `[g, f, gf]` meaning `g∘f = gf` (`f` first).
    pub composition: Vec<(String, String, String)>,
}

impl CategoryData {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("category serializes")
    }

    /// Adds the unit-law compositions `(m, id_src) ↦ m` and `(id_dst, m) ↦ m`
    /// for every morphism, without overwriting entries already present.
    /// Entries that conflict with the unit laws are left alone so that
    /// validation can report them.
    pub fn complete_identities(&mut self) {
        let endpoints: HashMap<&str, (&str, &str)> = self
            .morphisms
            .iter()
            .map(|m| (m.id.as_str(), (m.src.as_str(), m.dst.as_str())))
            .collect();
        let present: HashSet<(String, String)> = self
            .composition
            .iter()
            .map(|(g, f, _)| (g.clone(), f.clone()))
            .collect();
        let mut extra = Vec::new();
        for m in &self.morphisms {
            let Some(&(src, dst)) = endpoints.get(m.id.as_str()) else {
                continue;
            };
            if let Some(id_src) = self.identities.get(src) {
                if endpoints.contains_key(id_src.as_str())
                    && !present.contains(&(m.id.clone(), id_src.clone()))
                {
                    extra.push((m.id.clone(), id_src.clone(), m.id.clone()));
                }
            }
            if let Some(id_dst) = self.identities.get(dst) {
                if endpoints.contains_key(id_dst.as_str())
                    && *id_dst != m.id
                    && !present.contains(&(id_dst.clone(), m.id.clone()))
                {
                    extra.push((id_dst.clone(), m.id.clone(), m.id.clone()));
                }
            }
        }
        self.composition.extend(extra);
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ViolationRule {
    UnitLaw,
    Associativity,
    Totality,
    Endpoint,
    DanglingId,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub rule: ViolationRule,
    pub morphisms: Vec<String>,
    pub message: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        ValidationReport { ok: violations.is_empty(), violations }
    }
}

fn violation(rule: ViolationRule, morphisms: &[&str], message: String) -> Violation {
    Violation { rule, morphisms: morphisms.iter().map(|s| s.to_string()).collect(), message }
}

/// Exhaustive law check on the raw data. Never fails: every problem becomes
/// a report entry, ordered by rule then by the morphism ids involved.
pub fn validate_category(data: &CategoryData) -> ValidationReport {
    let mut out = Vec::new();

    let mut obj_idx: HashMap<&str, usize> = HashMap::new();
    for (n, o) in data.objects.iter().enumerate() {
        if obj_idx.insert(o.as_str(), n).is_some() {
            out.push(violation(ViolationRule::DanglingId, &[], format!("duplicate object id `{o}`")));
        }
    }
    let mut mor_idx: HashMap<&str, usize> = HashMap::new();
    for (n, m) in data.morphisms.iter().enumerate() {
        if mor_idx.insert(m.id.as_str(), n).is_some() {
            out.push(violation(
                ViolationRule::DanglingId,
                &[&m.id],
                format!("duplicate morphism id `{}`", m.id),
            ));
        }
        if !obj_idx.contains_key(m.src.as_str()) {
            out.push(violation(
                ViolationRule::DanglingId,
                &[&m.id],
                format!("morphism `{}` has unknown source object `{}`", m.id, m.src),
            ));
        }
        if !obj_idx.contains_key(m.dst.as_str()) {
            out.push(violation(
                ViolationRule::DanglingId,
                &[&m.id],
                format!("morphism `{}` has unknown target object `{}`", m.id, m.dst),
            ));
        }
    }

    let endpoints = |id: &str| -> Option<(&str, &str)> {
        mor_idx.get(id).map(|&n| {
            let m = &data.morphisms[n];
            (m.src.as_str(), m.dst.as_str())
        })
    };

    // Identities: one per object, with matching endpoints.
    for o in &data.objects {
        match data.identities.get(o) {
            None => out.push(violation(
                ViolationRule::DanglingId,
                &[],
                format!("object `{o}` has no identity morphism"),
            )),
            Some(id) => match endpoints(id) {
                None => out.push(violation(
                    ViolationRule::DanglingId,
                    &[id],
                    format!("identity of `{o}` refers to unknown morphism `{id}`"),
                )),
                Some((s, d)) => {
                    if s != o || d != o {
                        out.push(violation(
                            ViolationRule::Endpoint,
                            &[id],
                            format!("identity `{id}` of `{o}` has endpoints {s} → {d}"),
                        ));
                    }
                }
            },
        }
    }
    for key in data.identities.keys() {
        if !obj_idx.contains_key(key.as_str()) {
            out.push(violation(
                ViolationRule::DanglingId,
                &[],
                format!("identity declared for unknown object `{key}`"),
            ));
        }
    }

    // Composition table: known ids, composable keys, endpoint-correct results,
    // no duplicate keys.
    let mut table: HashMap<(&str, &str), &str> = HashMap::new();
    for (g, f, gf) in &data.composition {
        let mut known = true;
        for id in [g, f, gf] {
            if !mor_idx.contains_key(id.as_str()) {
                out.push(violation(
                    ViolationRule::DanglingId,
                    &[id],
                    format!("composition entry ({g}, {f}) ↦ {gf} refers to unknown morphism `{id}`"),
                ));
                known = false;
            }
        }
        if !known {
            continue;
        }
        if let Some(prev) = table.insert((g.as_str(), f.as_str()), gf.as_str()) {
            if prev != gf {
                out.push(violation(
                    ViolationRule::Totality,
                    &[g, f],
                    format!("composition ({g}, {f}) defined twice: `{prev}` and `{gf}`"),
                ));
            }
            continue;
        }
        let (fs, fd) = endpoints(f).unwrap();
        let (gs, gd) = endpoints(g).unwrap();
        let (cs, cd) = endpoints(gf).unwrap();
        if fd != gs {
            out.push(violation(
                ViolationRule::Endpoint,
                &[g, f],
                format!("entry ({g}, {f}) is not composable: dst({f}) = {fd}, src({g}) = {gs}"),
            ));
        } else if cs != fs || cd != gd {
            out.push(violation(
                ViolationRule::Endpoint,
                &[g, f, gf],
                format!("composite `{gf}` of ({g}, {f}) has endpoints {cs} → {cd}, expected {fs} → {gd}"),
            ));
        }
    }

    // Law checks run on an interned view: morphisms with unknown endpoint
    // refs are excluded, everything else becomes an index so the exhaustive
    // pair/triple scans stay cheap on large categories.
    let n = data.morphisms.len();
    let mut ep: Vec<Option<(usize, usize)>> = Vec::with_capacity(n);
    for m in &data.morphisms {
        ep.push(match (obj_idx.get(m.src.as_str()), obj_idx.get(m.dst.as_str())) {
            (Some(&s), Some(&d)) => Some((s, d)),
            _ => None,
        });
    }
    let dense = n <= 2048;
    let mut dense_table = if dense { vec![u32::MAX; n * n] } else { Vec::new() };
    let mut sparse_table: HashMap<(u32, u32), u32> = HashMap::new();
    for ((g, f), gf) in &table {
        let (g, f, gf) = (mor_idx[g], mor_idx[f], mor_idx[gf]);
        if dense {
            dense_table[g * n + f] = gf as u32;
        } else {
            sparse_table.insert((g as u32, f as u32), gf as u32);
        }
    }
    let lookup = |g: usize, f: usize| -> Option<usize> {
        if dense {
            let raw = dense_table[g * n + f];
            (raw != u32::MAX).then_some(raw as usize)
        } else {
            sparse_table.get(&(g as u32, f as u32)).map(|&v| v as usize)
        }
    };
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); data.objects.len()];
    for (m, e) in ep.iter().enumerate() {
        if let Some((s, _)) = e {
            by_src[*s].push(m);
        }
    }
    let identity_of: Vec<Option<usize>> = data
        .objects
        .iter()
        .map(|o| data.identities.get(o).and_then(|id| mor_idx.get(id.as_str()).copied()))
        .collect();

    // Totality on composable pairs.
    for (f, e) in ep.iter().enumerate() {
        let Some((_, fd)) = *e else { continue };
        for &g in &by_src[fd] {
            if lookup(g, f).is_none() {
                out.push(violation(
                    ViolationRule::Totality,
                    &[&data.morphisms[g].id, &data.morphisms[f].id],
                    format!(
                        "composable pair ({}, {}) has no composition entry",
                        data.morphisms[g].id, data.morphisms[f].id
                    ),
                ));
            }
        }
    }

    // Unit laws, against the table as given.
    for (m, e) in ep.iter().enumerate() {
        let Some((src, dst)) = *e else { continue };
        let m_id = &data.morphisms[m].id;
        if let Some(id_src) = identity_of[src] {
            if let Some(got) = lookup(m, id_src) {
                if got != m {
                    out.push(violation(
                        ViolationRule::UnitLaw,
                        &[m_id],
                        format!(
                            "{}∘{} = {}, unit law requires {}",
                            m_id, data.morphisms[id_src].id, data.morphisms[got].id, m_id
                        ),
                    ));
                }
            }
        }
        if let Some(id_dst) = identity_of[dst] {
            if let Some(got) = lookup(id_dst, m) {
                if got != m {
                    out.push(violation(
                        ViolationRule::UnitLaw,
                        &[m_id],
                        format!(
                            "{}∘{} = {}, unit law requires {}",
                            data.morphisms[id_dst].id, m_id, data.morphisms[got].id, m_id
                        ),
                    ));
                }
            }
        }
    }

    // Associativity on every triple where both sides are defined.
    for (f, e) in ep.iter().enumerate() {
        let Some((_, fd)) = *e else { continue };
        for &g in &by_src[fd] {
            let Some(gf) = lookup(g, f) else { continue };
            let gd = ep[g].expect("grouped by src").1;
            for &h in &by_src[gd] {
                let Some(hg) = lookup(h, g) else { continue };
                if let (Some(l), Some(r)) = (lookup(h, gf), lookup(hg, f)) {
                    if l != r {
                        let (h_id, g_id, f_id) =
                            (&data.morphisms[h].id, &data.morphisms[g].id, &data.morphisms[f].id);
                        out.push(violation(
                            ViolationRule::Associativity,
                            &[h_id, g_id, f_id],
                            format!(
                                "({h_id}∘{g_id})∘{f_id} = {} but {h_id}∘({g_id}∘{f_id}) = {}",
                                data.morphisms[r].id, data.morphisms[l].id
                            ),
                        ));
                    }
                }
            }
        }
    }

    ValidationReport::from_violations(out)
}

// ---------------------------------------------------------------------------
// Interned category
// ---------------------------------------------------------------------------

const DENSE_LIMIT: usize = 2048;

#[derive(Debug, Clone)]
enum Table {
    /// `n*n` entries, `u32::MAX` = undefined. Only for small categories.
    Dense(Vec<u32>, usize),
    Sparse(HashMap<(MorId, MorId), MorId>),
}

impl Table {
    fn get(&self, g: MorId, f: MorId) -> Option<MorId> {
        match self {
            Table::Dense(v, n) => {
                let raw = v[g.idx() * n + f.idx()];
                (raw != u32::MAX).then_some(MorId(raw))
            }
            Table::Sparse(m) => m.get(&(g, f)).copied(),
        }
    }
}

/// A validated finite category with interned ids and hom-set indexes.
/// Immutable after construction; safe to share across worker threads.
#[derive(Debug, Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    obj_lookup: HashMap<String, ObjId>,
    morphisms: Vec<Morphism>,
    mor_lookup: HashMap<String, MorId>,
    identities: Vec<MorId>,
    table: Table,
    hom: HashMap<(ObjId, ObjId), Vec<MorId>>,
}

impl FinCategory {
    /// Completes identity compositions, validates exhaustively, and interns.
    pub fn from_data(mut data: CategoryData) -> Result<Self> {
        data.complete_identities();
        let report = validate_category(&data);
        if !report.ok {
            let first = report.violations.first().map(|v| v.message.clone()).unwrap_or_default();
            return Err(EngineError::InvalidCategory(report.violations.len(), first));
        }

        let objects = data.objects.clone();
        let obj_lookup: HashMap<String, ObjId> =
            objects.iter().enumerate().map(|(n, o)| (o.clone(), ObjId(n as u32))).collect();
        let morphisms: Vec<Morphism> = data
            .morphisms
            .iter()
            .map(|m| Morphism {
                id: m.id.clone(),
                src: obj_lookup[&m.src],
                dst: obj_lookup[&m.dst],
            })
            .collect();
        let mor_lookup: HashMap<String, MorId> =
            morphisms.iter().enumerate().map(|(n, m)| (m.id.clone(), MorId(n as u32))).collect();
        let identities: Vec<MorId> =
            objects.iter().map(|o| mor_lookup[&data.identities[o]]).collect();

        let n = morphisms.len();
        let table = if n <= DENSE_LIMIT {
            let mut v = vec![u32::MAX; n * n];
            for (g, f, gf) in &data.composition {
                v[mor_lookup[g].idx() * n + mor_lookup[f].idx()] = mor_lookup[gf].0;
            }
            Table::Dense(v, n)
        } else {
            Table::Sparse(
                data.composition
                    .iter()
                    .map(|(g, f, gf)| ((mor_lookup[g], mor_lookup[f]), mor_lookup[gf]))
                    .collect(),
            )
        };

        let mut hom: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
        for (n, m) in morphisms.iter().enumerate() {
            hom.entry((m.src, m.dst)).or_default().push(MorId(n as u32));
        }

        Ok(FinCategory { objects, obj_lookup, morphisms, mor_lookup, identities, table, hom })
    }

    pub fn to_data(&self) -> CategoryData {
        let mut composition = Vec::new();
        for g in 0..self.morphisms.len() {
            for f in 0..self.morphisms.len() {
                let (g, f) = (MorId(g as u32), MorId(f as u32));
                if let Some(gf) = self.table.get(g, f) {
                    composition.push((
                        self.morphism_name(g).to_string(),
                        self.morphism_name(f).to_string(),
                        self.morphism_name(gf).to_string(),
                    ));
                }
            }
        }
        CategoryData {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismData {
                    id: m.id.clone(),
                    src: self.object_name(m.src).to_string(),
                    dst: self.object_name(m.dst).to_string(),
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .enumerate()
                .map(|(n, o)| (o.clone(), self.morphism_name(self.identities[n]).to_string()))
                .collect(),
            composition,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(|n| ObjId(n as u32))
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(|n| MorId(n as u32))
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x.idx()]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.idx()].id
    }

    pub fn object(&self, name: &str) -> Result<ObjId> {
        self.obj_lookup.get(name).copied().ok_or_else(|| EngineError::UnknownObject(name.into()))
    }

    pub fn morphism(&self, name: &str) -> Result<MorId> {
        self.mor_lookup
            .get(name)
            .copied()
            .ok_or_else(|| EngineError::UnknownMorphism(name.into()))
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m.idx()].src
    }

    pub fn dst(&self, m: MorId) -> ObjId {
        self.morphisms[m.idx()].dst
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x.idx()]
    }

    /// The morphisms from `x` to `y` in input order.
    pub fn hom_set(&self, x: ObjId, y: ObjId) -> &[MorId] {
        self.hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `hom_set` by object name, for callers starting from strings.
    pub fn hom_set_named(&self, x: &str, y: &str) -> Result<&[MorId]> {
        Ok(self.hom_set(self.object(x)?, self.object(y)?))
    }

    /// `g∘f` (`f` first). Errors when the endpoints do not meet.
    pub fn compose(&self, g: MorId, f: MorId) -> Result<MorId> {
        self.table.get(g, f).ok_or_else(|| EngineError::NotComposable {
            g: self.morphism_name(g).to_string(),
            f: self.morphism_name(f).to_string(),
        })
    }

    /// Table lookup without the composability check; `None` off-domain.
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.table.get(g, f)
    }

    /// Map `h ↦ h∘m` over all `h` with `src(h) = dst(m)`, as a vector of
    /// `(h, h∘m)` pairs in input order of `h`.
    pub fn precompose_all(&self, m: MorId, target: ObjId) -> Vec<(MorId, MorId)> {
        self.hom_set(self.dst(m), target)
            .iter()
            .map(|&h| (h, self.try_compose(h, m).expect("validated table is total")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn t1_data() -> CategoryData {
        CategoryData {
            objects: vec!["*".into()],
            morphisms: vec![MorphismData { id: "id".into(), src: "*".into(), dst: "*".into() }],
            identities: [("*".to_string(), "id".to_string())].into(),
            composition: vec![],
        }
    }

    pub(crate) fn p2_data() -> CategoryData {
        CategoryData {
            objects: vec!["A".into(), "B".into()],
            morphisms: vec![
                MorphismData { id: "id_A".into(), src: "A".into(), dst: "A".into() },
                MorphismData { id: "id_B".into(), src: "B".into(), dst: "B".into() },
                MorphismData { id: "f".into(), src: "A".into(), dst: "B".into() },
                MorphismData { id: "g".into(), src: "A".into(), dst: "B".into() },
            ],
            identities: [("A".to_string(), "id_A".to_string()), ("B".to_string(), "id_B".to_string())]
                .into(),
            composition: vec![],
        }
    }

    #[test]
    fn terminal_category_validates() {
        let mut data = t1_data();
        data.complete_identities();
        let report = validate_category(&data);
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn parallel_pair_validates() {
        let mut data = p2_data();
        data.complete_identities();
        let report = validate_category(&data);
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn broken_unit_law_is_reported_on_f() {
        let mut data = p2_data();
        // Force f∘id_A = g; completion must not overwrite it.
        data.composition.push(("f".into(), "id_A".into(), "g".into()));
        data.complete_identities();
        let report = validate_category(&data);
        assert!(!report.ok);
        let unit: Vec<_> =
            report.violations.iter().filter(|v| v.rule == ViolationRule::UnitLaw).collect();
        assert_eq!(unit.len(), 1);
        assert_eq!(unit[0].morphisms, vec!["f".to_string()]);
    }

    #[test]
    fn missing_composition_is_totality_violation() {
        let data = CategoryData {
            objects: vec!["X".into(), "Y".into(), "Z".into()],
            morphisms: vec![
                MorphismData { id: "ix".into(), src: "X".into(), dst: "X".into() },
                MorphismData { id: "iy".into(), src: "Y".into(), dst: "Y".into() },
                MorphismData { id: "iz".into(), src: "Z".into(), dst: "Z".into() },
                MorphismData { id: "a".into(), src: "X".into(), dst: "Y".into() },
                MorphismData { id: "b".into(), src: "Y".into(), dst: "Z".into() },
            ],
            identities: [
                ("X".to_string(), "ix".to_string()),
                ("Y".to_string(), "iy".to_string()),
                ("Z".to_string(), "iz".to_string()),
            ]
            .into(),
            composition: vec![],
        };
        let mut completed = data.clone();
        completed.complete_identities();
        let report = validate_category(&completed);
        assert!(!report.ok);
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == ViolationRule::Totality && v.morphisms == vec!["b", "a"]));
    }

    #[test]
    fn dangling_ids_are_reported() {
        let data = CategoryData {
            objects: vec!["A".into()],
            morphisms: vec![MorphismData { id: "m".into(), src: "A".into(), dst: "Nope".into() }],
            identities: [("A".to_string(), "ghost".to_string())].into(),
            composition: vec![],
        };
        let report = validate_category(&data);
        assert!(!report.ok);
        assert!(report.violations.iter().all(|v| v.rule == ViolationRule::DanglingId));
        assert_eq!(report.violations.len(), 2); // unknown dst, unknown identity morphism
    }

    #[test]
    fn violations_are_sorted_by_rule_then_ids() {
        let mut data = p2_data();
        data.composition.push(("g".into(), "id_A".into(), "f".into()));
        data.composition.push(("f".into(), "id_A".into(), "g".into()));
        data.complete_identities();
        let report = validate_category(&data);
        let ids: Vec<_> = report.violations.iter().map(|v| v.morphisms.clone()).collect();
        let mut sorted = report.violations.clone();
        sorted.sort();
        assert_eq!(
            ids,
            sorted.iter().map(|v| v.morphisms.clone()).collect::<Vec<_>>(),
            "violations must come out sorted"
        );
        assert_eq!(report.violations[0].morphisms, vec!["f".to_string()]);
        assert_eq!(report.violations[1].morphisms, vec!["g".to_string()]);
    }

    #[test]
    fn hom_sets_follow_input_order() {
        let cat = FinCategory::from_data(p2_data()).unwrap();
        let a = cat.object("A").unwrap();
        let b = cat.object("B").unwrap();
        let names: Vec<_> =
            cat.hom_set(a, b).iter().map(|&m| cat.morphism_name(m)).collect();
        assert_eq!(names, vec!["f", "g"]);
        assert!(cat.hom_set(b, a).is_empty());
        let t1 = FinCategory::from_data(t1_data()).unwrap();
        let star = t1.object("*").unwrap();
        assert_eq!(t1.hom_set(star, star).len(), 1);
    }

    #[test]
    fn compose_follows_table_and_rejects_mismatches() {
        let cat = FinCategory::from_data(p2_data()).unwrap();
        let f = cat.morphism("f").unwrap();
        let g = cat.morphism("g").unwrap();
        let id_b = cat.morphism("id_B").unwrap();
        assert_eq!(cat.compose(id_b, f).unwrap(), f);
        assert!(matches!(cat.compose(f, g), Err(EngineError::NotComposable { .. })));
        let t1 = FinCategory::from_data(t1_data()).unwrap();
        let id = t1.morphism("id").unwrap();
        assert_eq!(t1.compose(id, id).unwrap(), id);
    }

    #[test]
    fn hom_sets_partition_the_morphisms() {
        let cat = FinCategory::from_data(p2_data()).unwrap();
        let mut seen = Vec::new();
        for x in cat.objects() {
            for y in cat.objects() {
                seen.extend(cat.hom_set(x, y).iter().copied());
            }
        }
        seen.sort();
        let all: Vec<_> = cat.morphisms().collect();
        assert_eq!(seen, all);
    }

    #[test]
    fn roundtrip_through_data_revalidates() {
        let cat = FinCategory::from_data(p2_data()).unwrap();
        let data = cat.to_data();
        let report = validate_category(&data);
        assert!(report.ok);
        let again = FinCategory::from_data(data).unwrap();
        assert_eq!(again.morphism_count(), cat.morphism_count());
    }
}
