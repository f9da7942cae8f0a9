//! Instance generators: the trivial structure on any category, and the
//! groupoid-cylinder instance.
//!
//! The cylinder instance replaces the unit interval by the interval groupoid
//! `I` (two objects, one isomorphism between them). For finite groupoids
//! `G`, the assignment `Ĝ = G×I` with the two end inclusions is a
//! homotopical structure on the category whose objects are the chosen
//! groupoids plus their cylinders and whose morphisms are *all* functors
//! between them, found by brute-force enumeration. Homotopy through `G×I`
//! coincides with natural isomorphism, which gives this module its
//! independent oracle: [`natural_iso_classes`] partitions a functor set by
//! direct search for invertible natural transformations, with no reference
//! to cylinders or the composition-table engine.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::fincat::{CategoryData, FinCategory, MorphismData};
use crate::hstruct::HomotopicalStructure;
use crate::union_find::UnionFind;

// ---------------------------------------------------------------------------
// Finite groupoids
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidArrowData {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// On-disk groupoid format. The composition table must be complete
/// (including identity compositions); identities are inferred from it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidData {
    #[serde(default)]
    pub name: Option<String>,
    pub objects: Vec<String>,
    pub arrows: Vec<GroupoidArrowData>,
    pub composition: Vec<(String, String, String)>,
    pub inverses: BTreeMap<String, String>,
}

impl GroupoidData {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone)]
pub struct GArrow {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite groupoid with a dense composition table, a two-sided inverse
/// per arrow, and one identity per object (inferred from the table).
#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<GArrow>,
    table: Vec<u32>,
    pub inverses: Vec<usize>,
    pub identities: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn from_data(data: &GroupoidData, fallback_name: &str) -> Result<Self> {
        let name = data.name.clone().unwrap_or_else(|| fallback_name.to_string());
        let bad = |msg: String| EngineError::InvalidGroupoid(name.clone(), msg);

        let mut obj_idx = HashMap::new();
        for (n, o) in data.objects.iter().enumerate() {
            if obj_idx.insert(o.as_str(), n).is_some() {
                return Err(bad(format!("duplicate object `{o}`")));
            }
        }
        let mut arr_idx = HashMap::new();
        let mut arrows = Vec::new();
        for (n, a) in data.arrows.iter().enumerate() {
            if arr_idx.insert(a.id.as_str(), n).is_some() {
                return Err(bad(format!("duplicate arrow `{}`", a.id)));
            }
            let src =
                *obj_idx.get(a.src.as_str()).ok_or_else(|| bad(format!("unknown object `{}`", a.src)))?;
            let dst =
                *obj_idx.get(a.dst.as_str()).ok_or_else(|| bad(format!("unknown object `{}`", a.dst)))?;
            arrows.push(GArrow { id: a.id.clone(), src, dst });
        }

        let n = arrows.len();
        let mut table = vec![u32::MAX; n * n];
        for (g, f, gf) in &data.composition {
            let look = |id: &str| {
                arr_idx.get(id).copied().ok_or_else(|| bad(format!("unknown arrow `{id}`")))
            };
            let (g, f, gf) = (look(g)?, look(f)?, look(gf)?);
            table[g * n + f] = gf as u32;
        }
        let mut inverses = vec![usize::MAX; n];
        for (a, b) in &data.inverses {
            let look = |id: &str| {
                arr_idx.get(id).copied().ok_or_else(|| bad(format!("unknown arrow `{id}`")))
            };
            inverses[look(a)?] = look(b)?;
        }
        if let Some(missing) = inverses.iter().position(|&v| v == usize::MAX) {
            return Err(bad(format!("arrow `{}` has no inverse entry", arrows[missing].id)));
        }

        let g = FiniteGroupoid::finish(name, data.objects.clone(), arrows, table, inverses)?;
        Ok(g)
    }

    /// Infers identities and checks all the laws.
    fn finish(
        name: String,
        objects: Vec<String>,
        arrows: Vec<GArrow>,
        table: Vec<u32>,
        inverses: Vec<usize>,
    ) -> Result<Self> {
        let bad = |msg: String| EngineError::InvalidGroupoid(name.clone(), msg);
        let n = arrows.len();
        let get = |g: usize, f: usize| -> Option<usize> {
            let raw = table[g * n + f];
            (raw != u32::MAX).then_some(raw as usize)
        };

        // Identity of x = the unique loop acting as a two-sided unit.
        let mut identities = Vec::with_capacity(objects.len());
        for (x, objname) in objects.iter().enumerate() {
            let mut found = Vec::new();
            'cand: for (e, arr) in arrows.iter().enumerate() {
                if arr.src != x || arr.dst != x || get(e, e) != Some(e) {
                    continue;
                }
                for (a, arr_a) in arrows.iter().enumerate() {
                    if arr_a.dst == x && get(e, a) != Some(a) {
                        continue 'cand;
                    }
                    if arr_a.src == x && get(a, e) != Some(a) {
                        continue 'cand;
                    }
                }
                found.push(e);
            }
            match found.as_slice() {
                [e] => identities.push(*e),
                [] => return Err(bad(format!("object `{objname}` has no identity arrow"))),
                _ => return Err(bad(format!("object `{objname}` has several unit arrows"))),
            }
        }

        // Table defined exactly on composable pairs, with correct endpoints.
        for g in 0..n {
            for f in 0..n {
                let composable = arrows[f].dst == arrows[g].src;
                match get(g, f) {
                    Some(gf) if composable => {
                        if arrows[gf].src != arrows[f].src || arrows[gf].dst != arrows[g].dst {
                            return Err(bad(format!(
                                "composite `{}` of ({}, {}) has wrong endpoints",
                                arrows[gf].id, arrows[g].id, arrows[f].id
                            )));
                        }
                    }
                    Some(_) => {
                        return Err(bad(format!(
                            "({}, {}) is not composable but has a table entry",
                            arrows[g].id, arrows[f].id
                        )))
                    }
                    None if composable => {
                        return Err(bad(format!(
                            "composable pair ({}, {}) missing from the table",
                            arrows[g].id, arrows[f].id
                        )))
                    }
                    None => {}
                }
            }
        }

        // Associativity.
        for f in 0..n {
            for g in 0..n {
                let Some(gf) = get(g, f) else { continue };
                for h in 0..n {
                    let Some(hg) = get(h, g) else { continue };
                    if get(h, gf) != get(hg, f) {
                        return Err(bad(format!(
                            "associativity fails on ({}, {}, {})",
                            arrows[h].id, arrows[g].id, arrows[f].id
                        )));
                    }
                }
            }
        }

        // Two-sided inverses.
        for (a, arr) in arrows.iter().enumerate() {
            let inv = inverses[a];
            if arrows[inv].src != arr.dst || arrows[inv].dst != arr.src {
                return Err(bad(format!("inverse of `{}` has wrong endpoints", arr.id)));
            }
            if get(a, inv) != Some(identities[arr.dst]) || get(inv, a) != Some(identities[arr.src])
            {
                return Err(bad(format!("`{}` and `{}` are not inverse", arr.id, arrows[inv].id)));
            }
        }

        Ok(FiniteGroupoid { name, objects, arrows, table, inverses, identities })
    }

    pub fn to_data(&self) -> GroupoidData {
        let n = self.arrows.len();
        let mut composition = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.compose(g, f) {
                    composition.push((
                        self.arrows[g].id.clone(),
                        self.arrows[f].id.clone(),
                        self.arrows[gf].id.clone(),
                    ));
                }
            }
        }
        GroupoidData {
            name: Some(self.name.clone()),
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| GroupoidArrowData {
                    id: a.id.clone(),
                    src: self.objects[a.src].clone(),
                    dst: self.objects[a.dst].clone(),
                })
                .collect(),
            composition,
            inverses: self
                .arrows
                .iter()
                .enumerate()
                .map(|(a, arr)| (arr.id.clone(), self.arrows[self.inverses[a]].id.clone()))
                .collect(),
        }
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let raw = self.table[g * self.arrows.len() + f];
        (raw != u32::MAX).then_some(raw as usize)
    }

    /// Arrows from `x` to `y`, in input order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.src == x && a.dst == y)
            .map(|(n, _)| n)
            .collect()
    }

    /// The interval groupoid: objects `0`, `1` and a single isomorphism.
    pub fn interval() -> Self {
        let objects = vec!["0".to_string(), "1".to_string()];
        let arrows = vec![
            GArrow { id: "e0".into(), src: 0, dst: 0 },
            GArrow { id: "e1".into(), src: 1, dst: 1 },
            GArrow { id: "up".into(), src: 0, dst: 1 },
            GArrow { id: "dn".into(), src: 1, dst: 0 },
        ];
        let entries: &[(usize, usize, usize)] = &[
            (0, 0, 0),
            (1, 1, 1),
            (2, 0, 2),
            (1, 2, 2),
            (3, 1, 3),
            (0, 3, 3),
            (3, 2, 0),
            (2, 3, 1),
        ];
        let mut table = vec![u32::MAX; 16];
        for &(g, f, gf) in entries {
            table[g * 4 + f] = gf as u32;
        }
        FiniteGroupoid::finish("I".into(), objects, arrows, table, vec![0, 1, 3, 2])
            .expect("interval groupoid is valid")
    }

    /// The cyclic group of order `n` as a one-object groupoid.
    pub fn cyclic(name: &str, n: usize) -> Self {
        assert!(n >= 1);
        let objects = vec!["*".to_string()];
        let arrows: Vec<GArrow> =
            (0..n).map(|k| GArrow { id: format!("r{k}"), src: 0, dst: 0 }).collect();
        let mut table = vec![u32::MAX; n * n];
        for g in 0..n {
            for f in 0..n {
                table[g * n + f] = ((g + f) % n) as u32;
            }
        }
        let inverses = (0..n).map(|k| (n - k) % n).collect();
        FiniteGroupoid::finish(name.into(), objects, arrows, table, inverses)
            .expect("cyclic groupoid is valid")
    }

    /// Componentwise product. Objects and arrows are ordered row-major with
    /// `self` outer, so index arithmetic stays transparent.
    pub fn product(&self, other: &FiniteGroupoid, name: &str) -> Self {
        let bo = other.objects.len();
        let ba = other.arrows.len();
        let objects: Vec<String> = self
            .objects
            .iter()
            .flat_map(|x| other.objects.iter().map(move |y| format!("{x}|{y}")))
            .collect();
        let arrows: Vec<GArrow> = self
            .arrows
            .iter()
            .flat_map(|u| {
                other.arrows.iter().map(move |v| GArrow {
                    id: format!("{}|{}", u.id, v.id),
                    src: u.src * bo + v.src,
                    dst: u.dst * bo + v.dst,
                })
            })
            .collect();
        let n = arrows.len();
        let mut table = vec![u32::MAX; n * n];
        for g1 in 0..self.arrows.len() {
            for g2 in 0..ba {
                for f1 in 0..self.arrows.len() {
                    for f2 in 0..ba {
                        if let (Some(c1), Some(c2)) =
                            (self.compose(g1, f1), other.compose(g2, f2))
                        {
                            table[(g1 * ba + g2) * n + (f1 * ba + f2)] = (c1 * ba + c2) as u32;
                        }
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| self.inverses[a / ba] * ba + other.inverses[a % ba])
            .collect();
        FiniteGroupoid::finish(name.into(), objects, arrows, table, inverses)
            .expect("product of valid groupoids is valid")
    }
}

// ---------------------------------------------------------------------------
// Functor enumeration
// ---------------------------------------------------------------------------

/// A functor stored extensionally: image object per source object, image
/// arrow per source arrow. Equality and ordering are extensional.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        Functor { objects: (0..g.objects.len()).collect(), arrows: (0..g.arrows.len()).collect() }
    }

    /// `self` followed by `then` (i.e. `then ∘ self`).
    pub fn then(&self, then: &Functor) -> Functor {
        Functor {
            objects: self.objects.iter().map(|&x| then.objects[x]).collect(),
            arrows: self.arrows.iter().map(|&a| then.arrows[a]).collect(),
        }
    }
}

/// Spanning data for one connected component of a groupoid: a base object,
/// an arrow `base → x` for every member, and the non-identity loops at the
/// base. These generate the component, so a functor is determined by its
/// object map plus images for tree arrows and base loops.
struct Component {
    base: usize,
    members: Vec<usize>,
    tree: Vec<usize>, // arrow base → x, indexed like `members`; identity at base
    loops: Vec<usize>,
}

fn components(g: &FiniteGroupoid) -> Vec<Component> {
    let mut uf = UnionFind::new(g.objects.len());
    for a in &g.arrows {
        uf.union(a.src, a.dst);
    }
    let classes = uf.classes();
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); g.objects.len()];
    for (n, a) in g.arrows.iter().enumerate() {
        adj[a.src].push((a.dst, n, true));
        adj[a.dst].push((a.src, n, false));
    }
    classes
        .into_iter()
        .map(|members| {
            let base = members[0];
            let mut tree_by_obj: Vec<Option<usize>> = vec![None; g.objects.len()];
            tree_by_obj[base] = Some(g.identities[base]);
            let mut queue = std::collections::VecDeque::from([base]);
            while let Some(x) = queue.pop_front() {
                let t_x = tree_by_obj[x].unwrap();
                for &(nbr, a, forward) in &adj[x] {
                    if tree_by_obj[nbr].is_some() {
                        continue;
                    }
                    let step = if forward { a } else { g.inverses[a] };
                    tree_by_obj[nbr] = Some(g.compose(step, t_x).expect("path composes"));
                    queue.push_back(nbr);
                }
            }
            let tree = members.iter().map(|&x| tree_by_obj[x].expect("connected")).collect();
            let loops = g
                .arrows
                .iter()
                .enumerate()
                .filter(|(n, a)| a.src == base && a.dst == base && *n != g.identities[base])
                .map(|(n, _)| n)
                .collect();
            Component { base, members, tree, loops }
        })
        .collect()
}

/// All functors from `src` to `dst`, complete and duplicate-free, in a
/// canonical (extensional) order. Fails once the number of examined
/// candidates exceeds `budget`.
pub fn enumerate_functors(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    budget: usize,
) -> Result<Vec<Functor>> {
    let comps = components(src);
    let over_budget = || EngineError::BudgetExceeded {
        src: src.name.clone(),
        dst: dst.name.clone(),
        budget,
    };

    let dst_hom: HashMap<(usize, usize), Vec<usize>> = {
        let mut m: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (n, a) in dst.arrows.iter().enumerate() {
            m.entry((a.src, a.dst)).or_default().push(n);
        }
        m
    };
    let hom_of = |x: usize, y: usize| -> &[usize] {
        dst_hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    };

    let mut out = Vec::new();
    let mut examined: usize = 0;

    // Odometer over object maps.
    let n_obj = src.objects.len();
    let n_dst_obj = dst.objects.len();
    if n_dst_obj == 0 && n_obj > 0 {
        return Ok(out);
    }
    let mut obj_map = vec![0usize; n_obj];
    'obj_maps: loop {
        examined = examined.saturating_add(1);
        if examined > budget {
            return Err(over_budget());
        }

        // Choice slots: per component, tree arrows (members after the base)
        // then base loops.
        let mut slots: Vec<&[usize]> = Vec::new();
        let mut feasible = true;
        for comp in &comps {
            let fb = obj_map[comp.base];
            for &x in comp.members.iter().skip(1) {
                let choices = hom_of(fb, obj_map[x]);
                if choices.is_empty() {
                    feasible = false;
                }
                slots.push(choices);
            }
            for _ in &comp.loops {
                let choices = hom_of(fb, fb);
                if choices.is_empty() {
                    feasible = false;
                }
                slots.push(choices);
            }
        }

        if feasible {
            let combos = slots.iter().fold(1usize, |acc, s| acc.saturating_mul(s.len()));
            examined = examined.saturating_add(combos);
            if examined > budget {
                return Err(over_budget());
            }
            let mut pick = vec![0usize; slots.len()];
            loop {
                if let Some(f) = realize(src, dst, &comps, &obj_map, &slots, &pick) {
                    out.push(f);
                }
                // Advance the generator-image odometer.
                let mut k = slots.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    pick[k] += 1;
                    if pick[k] < slots[k].len() {
                        break;
                    }
                    pick[k] = 0;
                }
                if slots.is_empty() || (k == 0 && pick[0] == 0) {
                    break;
                }
            }
        }

        // Advance the object-map odometer.
        let mut k = n_obj;
        loop {
            if k == 0 {
                break 'obj_maps;
            }
            k -= 1;
            obj_map[k] += 1;
            if obj_map[k] < n_dst_obj {
                break;
            }
            obj_map[k] = 0;
        }
    }

    out.sort();
    out.dedup();
    Ok(out)
}

/// Reconstructs the full arrow map from generator images and checks
/// functoriality exhaustively; `None` when the candidate is not a functor.
fn realize(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    comps: &[Component],
    obj_map: &[usize],
    slots: &[&[usize]],
    pick: &[usize],
) -> Option<Functor> {
    let mut tree_img: Vec<usize> = vec![usize::MAX; src.objects.len()];
    let mut loop_img: HashMap<usize, usize> = HashMap::new();
    let mut slot = 0;
    for comp in comps {
        tree_img[comp.base] = dst.identities[obj_map[comp.base]];
        for &x in comp.members.iter().skip(1) {
            tree_img[x] = slots[slot][pick[slot]];
            slot += 1;
        }
        for &l in &comp.loops {
            loop_img.insert(l, slots[slot][pick[slot]]);
            slot += 1;
        }
    }
    let tree_of: HashMap<usize, usize> = comps
        .iter()
        .flat_map(|c| c.members.iter().zip(&c.tree).map(|(&x, &t)| (x, t)))
        .collect();
    let base_of: HashMap<usize, usize> =
        comps.iter().flat_map(|c| c.members.iter().map(move |&x| (x, c.base))).collect();

    let mut arrows = Vec::with_capacity(src.arrows.len());
    for a in 0..src.arrows.len() {
        let (x, y) = (src.arrows[a].src, src.arrows[a].dst);
        let b = base_of[&x];
        let t_x = tree_of[&x];
        let t_y = tree_of[&y];
        // The loop this arrow induces at the base.
        let la = src
            .compose(src.inverses[t_y], src.compose(a, t_x).expect("composable"))
            .expect("composable");
        let f_la = if la == src.identities[b] {
            dst.identities[obj_map[b]]
        } else {
            loop_img[&la]
        };
        let img = dst
            .compose(tree_img[y], dst.compose(f_la, dst.inverses[tree_img[x]])?)?;
        arrows.push(img);
    }

    // Identities and endpoints.
    for (x, &e) in src.identities.iter().enumerate() {
        if arrows[e] != dst.identities[obj_map[x]] {
            return None;
        }
    }
    for (a, arr) in src.arrows.iter().enumerate() {
        let img = &dst.arrows[arrows[a]];
        if img.src != obj_map[arr.src] || img.dst != obj_map[arr.dst] {
            return None;
        }
    }
    // Composition.
    for g in 0..src.arrows.len() {
        for f in 0..src.arrows.len() {
            if let Some(gf) = src.compose(g, f) {
                if dst.compose(arrows[g], arrows[f]) != Some(arrows[gf]) {
                    return None;
                }
            }
        }
    }
    Some(Functor { objects: obj_map.to_vec(), arrows })
}

// ---------------------------------------------------------------------------
// Natural isomorphism oracle
// ---------------------------------------------------------------------------

/// Does an invertible natural transformation `f ⇒ g` exist? Brute force
/// over component assignments with a naturality check on every arrow.
/// In a groupoid every component is automatically invertible.
pub fn natural_iso_exists(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    f: &Functor,
    g: &Functor,
    examined: &mut usize,
    budget: usize,
) -> Result<bool> {
    let slots: Vec<Vec<usize>> =
        (0..src.objects.len()).map(|x| dst.hom(f.objects[x], g.objects[x])).collect();
    if slots.iter().any(Vec::is_empty) && !src.objects.is_empty() {
        return Ok(false);
    }
    let combos = slots.iter().fold(1usize, |acc, s| acc.saturating_mul(s.len()));
    *examined = examined.saturating_add(combos.max(1));
    if *examined > budget {
        return Err(EngineError::BudgetExceeded {
            src: src.name.clone(),
            dst: dst.name.clone(),
            budget,
        });
    }
    let mut pick = vec![0usize; slots.len()];
    loop {
        let natural = src.arrows.iter().enumerate().all(|(a, arr)| {
            let c_src = slots[arr.src][pick[arr.src]];
            let c_dst = slots[arr.dst][pick[arr.dst]];
            dst.compose(c_dst, f.arrows[a]) == dst.compose(g.arrows[a], c_src)
        });
        if natural {
            return Ok(true);
        }
        let mut k = slots.len();
        loop {
            if k == 0 {
                return Ok(false);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < slots[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// Partition of `functors` by existence of a natural isomorphism. This is
/// the oracle for cylinder homotopy: it never consults a composition table
/// of functor categories, only naturality squares in `dst`.
pub fn natural_iso_classes(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    functors: &[Functor],
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut uf = UnionFind::new(functors.len());
    let mut examined = 0usize;
    for a in 0..functors.len() {
        for b in (a + 1)..functors.len() {
            if uf.same(a, b) {
                continue;
            }
            if natural_iso_exists(src, dst, &functors[a], &functors[b], &mut examined, budget)? {
                uf.union(a, b);
            }
        }
    }
    Ok(uf.classes())
}

// ---------------------------------------------------------------------------
// Bundles and generators
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: BTreeMap<String, String>,
}

/// A category together with a homotopical structure on it.
#[derive(Debug, Clone)]
pub struct InstanceBundle {
    pub cat: FinCategory,
    pub hs: HomotopicalStructure,
    pub provenance: Provenance,
}

/// The degenerate structure `Ŝ = S`, `i = j = id` on every object. All four
/// axioms hold with identity witnesses and the induced relation is equality
/// of morphisms.
pub fn gen_trivial(cat: &FinCategory) -> InstanceBundle {
    let hs = HomotopicalStructure::trivial(cat);
    InstanceBundle {
        cat: cat.clone(),
        hs,
        provenance: Provenance { generator: "trivial".into(), params: BTreeMap::new() },
    }
}

/// A groupoid-cylinder instance plus the functor tables behind it, so the
/// natural-isomorphism oracle can be matched against engine output.
#[derive(Debug, Clone)]
pub struct CylinderInstance {
    pub bundle: InstanceBundle,
    /// Groupoids backing each category object, in object order
    /// (inputs first, then their cylinders).
    pub groupoids: Vec<FiniteGroupoid>,
    /// Functors backing each hom-set, keyed by object names and aligned
    /// with `hom_set` order of the flattened category.
    pub hom_functors: BTreeMap<(String, String), Vec<Functor>>,
}

const INTERVAL_ARROWS: usize = 4; // e0, e1, up, dn

/// Flattens the category of groupoid cylinders: objects are the inputs plus
/// `G×I` for each, morphisms are all functors (brute-force enumerated, at
/// most `max_functors` candidates per hom-set), and the structure is
/// `Ĝ = G×I` with the end inclusions at `0` and `1`.
pub fn gen_groupoid_cylinder(
    inputs: &[FiniteGroupoid],
    max_functors: usize,
) -> Result<CylinderInstance> {
    let interval = FiniteGroupoid::interval();
    let mut all: Vec<FiniteGroupoid> = inputs.to_vec();
    for g in inputs {
        all.push(g.product(&interval, &format!("{}xI", g.name)));
    }
    {
        let mut names: Vec<&str> = all.iter().map(|g| g.name.as_str()).collect();
        names.sort();
        names.dedup();
        if names.len() != all.len() {
            return Err(EngineError::InvalidGroupoid(
                "grpd-cylinder".into(),
                "groupoid names must be distinct and must not collide with cylinder names".into(),
            ));
        }
    }

    let mut hom_functors: BTreeMap<(String, String), Vec<Functor>> = BTreeMap::new();
    let mut fun_lists: Vec<Vec<Vec<Functor>>> = Vec::new();
    for a in &all {
        let mut row = Vec::new();
        for b in &all {
            let funs = enumerate_functors(a, b, max_functors)?;
            hom_functors.insert((a.name.clone(), b.name.clone()), funs.clone());
            row.push(funs);
        }
        fun_lists.push(row);
    }

    let mor_name =
        |a: usize, b: usize, k: usize| format!("{}>{}#{:04}", all[a].name, all[b].name, k);

    let mut morphisms = Vec::new();
    for (a, row) in fun_lists.iter().enumerate() {
        for (b, funs) in row.iter().enumerate() {
            for k in 0..funs.len() {
                morphisms.push(MorphismData {
                    id: mor_name(a, b, k),
                    src: all[a].name.clone(),
                    dst: all[b].name.clone(),
                });
            }
        }
    }

    let mut identities = BTreeMap::new();
    for (a, g) in all.iter().enumerate() {
        let id_fun = Functor::identity(g);
        let k = fun_lists[a][a]
            .iter()
            .position(|f| *f == id_fun)
            .expect("identity functor is enumerated");
        identities.insert(g.name.clone(), mor_name(a, a, k));
    }

    let mut composition = Vec::new();
    for a in 0..all.len() {
        for b in 0..all.len() {
            for c in 0..all.len() {
                let pos: HashMap<&Functor, usize> =
                    fun_lists[a][c].iter().enumerate().map(|(n, f)| (f, n)).collect();
                for (gi, g) in fun_lists[b][c].iter().enumerate() {
                    for (fi, f) in fun_lists[a][b].iter().enumerate() {
                        let composite = f.then(g);
                        let k = *pos.get(&composite).expect("functor composition is enumerated");
                        composition.push((mor_name(b, c, gi), mor_name(a, b, fi), mor_name(a, c, k)));
                    }
                }
            }
        }
    }

    let data = CategoryData {
        objects: all.iter().map(|g| g.name.clone()).collect(),
        morphisms,
        identities,
        composition,
    };
    let cat = FinCategory::from_data(data).expect("cylinder category satisfies the laws");

    // End inclusions: pair with the interval object 0 resp. 1.
    let mut structure_entries = Vec::new();
    for (n, g) in inputs.iter().enumerate() {
        let cyl = n + inputs.len();
        let incl = |end: usize| Functor {
            objects: (0..g.objects.len()).map(|x| x * 2 + end).collect(),
            arrows: (0..g.arrows.len()).map(|u| u * INTERVAL_ARROWS + end).collect(),
        };
        let pos_i = fun_lists[n][cyl]
            .iter()
            .position(|f| *f == incl(0))
            .expect("end inclusion at 0 is enumerated");
        let pos_j = fun_lists[n][cyl]
            .iter()
            .position(|f| *f == incl(1))
            .expect("end inclusion at 1 is enumerated");
        structure_entries.push((
            cat.object(&g.name)?,
            cat.object(&all[cyl].name)?,
            cat.morphism(&mor_name(n, cyl, pos_i))?,
            cat.morphism(&mor_name(n, cyl, pos_j))?,
        ));
    }
    let hs = HomotopicalStructure::new(&cat, &structure_entries)?;

    let mut params = BTreeMap::new();
    params.insert("budget".into(), max_functors.to_string());
    params.insert(
        "groupoids".into(),
        inputs.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(","),
    );
    Ok(CylinderInstance {
        bundle: InstanceBundle {
            cat,
            hs,
            provenance: Provenance { generator: "grpd-cylinder".into(), params },
        },
        groupoids: all,
        hom_functors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hstruct::check_axioms;

    #[test]
    fn interval_and_cyclic_are_valid() {
        let i = FiniteGroupoid::interval();
        assert_eq!(i.objects.len(), 2);
        let z2 = FiniteGroupoid::cyclic("Z2", 2);
        assert_eq!(z2.arrows.len(), 2);
        let prod = z2.product(&i, "Z2xI");
        assert_eq!(prod.objects.len(), 2);
        assert_eq!(prod.arrows.len(), 8);
    }

    #[test]
    fn trivial_groupoid_has_one_endofunctor() {
        let t = FiniteGroupoid::cyclic("T", 1);
        let funs = enumerate_functors(&t, &t, 100).unwrap();
        assert_eq!(funs, vec![Functor::identity(&t)]);
    }

    #[test]
    fn z2_has_two_endofunctors() {
        let z2 = FiniteGroupoid::cyclic("Z2", 2);
        let funs = enumerate_functors(&z2, &z2, 100).unwrap();
        assert_eq!(funs.len(), 2);
        // One sends the flip to the identity, the other is the identity.
        assert_eq!(funs[0].arrows, vec![0, 0]);
        assert_eq!(funs[1].arrows, vec![0, 1]);
    }

    #[test]
    fn interval_to_z2_has_two_functors() {
        let i = FiniteGroupoid::interval();
        let z2 = FiniteGroupoid::cyclic("Z2", 2);
        let funs = enumerate_functors(&i, &z2, 100).unwrap();
        assert_eq!(funs.len(), 2);
    }

    #[test]
    fn interval_endofunctors_are_four_and_all_isomorphic() {
        let i = FiniteGroupoid::interval();
        let funs = enumerate_functors(&i, &i, 100).unwrap();
        assert_eq!(funs.len(), 4);
        let classes = natural_iso_classes(&i, &i, &funs, 10_000).unwrap();
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn z2_endofunctors_fall_into_two_iso_classes() {
        let z2 = FiniteGroupoid::cyclic("Z2", 2);
        let funs = enumerate_functors(&z2, &z2, 100).unwrap();
        let classes = natural_iso_classes(&z2, &z2, &funs, 10_000).unwrap();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn cross_hom_iso_classes_match_first_oracle_run() {
        // Regression values recorded from the oracle itself: in both mixed
        // hom-sets the two functors are naturally isomorphic.
        let z2 = FiniteGroupoid::cyclic("Z2", 2);
        let i = FiniteGroupoid::interval();
        let iz = enumerate_functors(&i, &z2, 100).unwrap();
        assert_eq!(iz.len(), 2);
        assert_eq!(natural_iso_classes(&i, &z2, &iz, 10_000).unwrap(), vec![vec![0, 1]]);
        let zi = enumerate_functors(&z2, &i, 100).unwrap();
        assert_eq!(zi.len(), 2);
        assert_eq!(natural_iso_classes(&z2, &i, &zi, 10_000).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn budget_errors_name_the_hom_set() {
        let i = FiniteGroupoid::interval();
        let err = enumerate_functors(&i, &i, 3).unwrap_err();
        match err {
            EngineError::BudgetExceeded { src, dst, budget } => {
                assert_eq!((src.as_str(), dst.as_str(), budget), ("I", "I", 3));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn trivial_structure_generator_passes_axioms() {
        let cat = FinCategory::from_data(
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
        .unwrap();
        let bundle = gen_trivial(&cat);
        assert!(check_axioms(&bundle.cat, &bundle.hs).pass());
    }

    #[test]
    fn cylinder_instance_over_z2_passes_axioms() {
        let z2 = FiniteGroupoid::cyclic("Z2", 2);
        let inst = gen_groupoid_cylinder(&[z2], 10_000).unwrap();
        assert_eq!(inst.bundle.cat.object_count(), 2);
        let report = check_axioms(&inst.bundle.cat, &inst.bundle.hs);
        assert!(report.pass());
    }
}
