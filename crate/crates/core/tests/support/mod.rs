//! Shared helpers for integration tests: bundled fixtures and random
//! category generators.
#![allow(dead_code)] // each test target uses a different subset
//!
//! Three generator families produce categories whose laws hold by
//! construction, so the exhaustive validator should accept them all:
//! path categories of random DAGs (composition is concatenation),
//! transformation monoids (closure of function tables), and finite
//! preorders (thin categories with forced composition).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homcat_core::fincat::{CategoryData, FinCategory, MorphismData};
use homcat_core::hstruct::HomotopicalStructure;
use homcat_core::instances::{gen_groupoid_cylinder, CylinderInstance, FiniteGroupoid, GroupoidData};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")).join(name)
}

pub fn fixture_category(name: &str) -> FinCategory {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    FinCategory::from_data(CategoryData::from_json(&text).expect("fixture parses"))
        .expect("fixture category valid")
}

pub fn fixture_structure(cat: &FinCategory, name: &str) -> HomotopicalStructure {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    let data = homcat_core::hstruct::StructureData::from_json(&text).expect("fixture parses");
    HomotopicalStructure::from_data(cat, &data).expect("fixture structure valid")
}

pub fn fixture_groupoid(name: &str) -> FiniteGroupoid {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    let data = GroupoidData::from_json(&text).expect("fixture parses");
    FiniteGroupoid::from_data(&data, "G").expect("fixture groupoid valid")
}

/// The bundled cylinder instance over `Z2` and the interval groupoid.
pub fn grp_instance() -> CylinderInstance {
    gen_groupoid_cylinder(
        &[fixture_groupoid("z2.grpd.json"), fixture_groupoid("interval.grpd.json")],
        10_000,
    )
    .expect("bundled instance within budget")
}

// ---------------------------------------------------------------------------
// Random categories
// ---------------------------------------------------------------------------

const MAX_OBJECTS: usize = 8;
const MAX_MORPHISMS: usize = 60;

/// Path category of a random DAG: identities are empty paths, composition
/// is concatenation. Retries until the path count fits the budget.
pub fn random_path_category(seed: u64) -> CategoryData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(2..=MAX_OBJECTS);
        let mut edges: Vec<(usize, usize, String)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(0.3) {
                    edges.push((i, j, format!("e{i}_{j}")));
                    if rng.gen_bool(0.15) {
                        edges.push((i, j, format!("e{i}_{j}b")));
                    }
                }
            }
        }

        // Enumerate paths breadth-first; a path is a list of edge indexes.
        let mut paths: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for v in 0..n {
            paths.push((v, v, Vec::new()));
        }
        let mut queue: VecDeque<usize> = (0..paths.len()).collect();
        let mut overflow = false;
        while let Some(idx) = queue.pop_front() {
            let (src, dst, ref seq) = paths[idx];
            let seq = seq.clone();
            for (e, &(es, ed, _)) in edges.iter().enumerate() {
                if es == dst {
                    let mut next = seq.clone();
                    next.push(e);
                    paths.push((src, ed, next));
                    queue.push_back(paths.len() - 1);
                    if paths.len() > MAX_MORPHISMS {
                        overflow = true;
                        break;
                    }
                }
            }
            if overflow {
                break;
            }
        }
        if overflow {
            continue;
        }

        let name_of = |seq: &[usize], src: usize| -> String {
            if seq.is_empty() {
                format!("id_v{src}")
            } else {
                let parts: Vec<&str> = seq.iter().map(|&e| edges[e].2.as_str()).collect();
                format!("p_{}", parts.join("."))
            }
        };
        let key_of: HashMap<(usize, Vec<usize>), String> = paths
            .iter()
            .map(|(src, _, seq)| ((*src, seq.clone()), name_of(seq, *src)))
            .collect();

        let objects: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
        let morphisms: Vec<MorphismData> = paths
            .iter()
            .map(|(src, dst, seq)| MorphismData {
                id: name_of(seq, *src),
                src: format!("v{src}"),
                dst: format!("v{dst}"),
            })
            .collect();
        let identities: BTreeMap<String, String> =
            (0..n).map(|v| (format!("v{v}"), format!("id_v{v}"))).collect();
        let mut composition = Vec::new();
        for (s1, d1, seq1) in &paths {
            for (s2, _, seq2) in &paths {
                if d1 != s2 {
                    continue;
                }
                let mut whole = seq1.clone();
                whole.extend(seq2);
                let composite = key_of.get(&(*s1, whole)).expect("concatenation is a path");
                composition.push((
                    name_of(seq2, *s2),
                    name_of(seq1, *s1),
                    composite.clone(),
                ));
            }
        }
        return CategoryData { objects, morphisms, identities, composition };
    }
}

/// Closure of random self-maps of a small set, as a one-object category.
pub fn random_transformation_monoid(seed: u64) -> CategoryData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(2..=3usize);
    let gens = rng.gen_range(1..=2usize);
    let identity: Vec<usize> = (0..k).collect();
    let mut elements: Vec<Vec<usize>> = vec![identity.clone()];
    for _ in 0..gens {
        let table: Vec<usize> = (0..k).map(|_| rng.gen_range(0..k)).collect();
        if !elements.contains(&table) {
            elements.push(table);
        }
    }
    // Worklist closure under composition (apply first, then second).
    let mut frontier: Vec<Vec<usize>> = elements.clone();
    while let Some(f) = frontier.pop() {
        for g in elements.clone() {
            for composite in [
                (0..k).map(|x| g[f[x]]).collect::<Vec<usize>>(),
                (0..k).map(|x| f[g[x]]).collect::<Vec<usize>>(),
            ] {
                if !elements.contains(&composite) {
                    elements.push(composite.clone());
                    frontier.push(composite);
                }
            }
        }
    }
    elements.sort();

    let name = |t: &[usize]| -> String {
        if t == identity.as_slice() {
            "id".to_string()
        } else {
            format!("t{}", t.iter().map(|d| d.to_string()).collect::<String>())
        }
    };
    let morphisms: Vec<MorphismData> = elements
        .iter()
        .map(|t| MorphismData { id: name(t), src: "*".into(), dst: "*".into() })
        .collect();
    let mut composition = Vec::new();
    for f in &elements {
        for g in &elements {
            let composite: Vec<usize> = (0..k).map(|x| g[f[x]]).collect();
            composition.push((name(g), name(f), name(&composite)));
        }
    }
    CategoryData {
        objects: vec!["*".into()],
        morphisms,
        identities: [("*".to_string(), "id".to_string())].into(),
        composition,
    }
}

/// A random finite preorder as a thin category.
pub fn random_preorder(seed: u64) -> CategoryData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(2..=MAX_OBJECTS);
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
            for (j, cell) in row.iter_mut().enumerate() {
                if i != j && rng.gen_bool(0.25) {
                    *cell = true;
                }
            }
        }
        for mid in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][mid] && le[mid][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| le[i][j])
            .collect();
        if pairs.len() > MAX_MORPHISMS {
            continue;
        }
        let name = |i: usize, j: usize| format!("le_{i}_{j}");
        let morphisms: Vec<MorphismData> = pairs
            .iter()
            .map(|&(i, j)| MorphismData {
                id: name(i, j),
                src: format!("v{i}"),
                dst: format!("v{j}"),
            })
            .collect();
        let mut composition = Vec::new();
        for &(i, j) in &pairs {
            for &(j2, k) in &pairs {
                if j == j2 {
                    composition.push((name(j, k), name(i, j), name(i, k)));
                }
            }
        }
        return CategoryData {
            objects: (0..n).map(|v| format!("v{v}")).collect(),
            morphisms,
            identities: (0..n).map(|v| (format!("v{v}"), name(v, v))).collect(),
            composition,
        };
    }
}

/// A deterministic mixed batch of `count` random categories.
pub fn random_categories(count: usize) -> Vec<CategoryData> {
    (0..count)
        .map(|n| match n % 3 {
            0 => random_path_category(1000 + n as u64),
            1 => random_transformation_monoid(2000 + n as u64),
            _ => random_preorder(3000 + n as u64),
        })
        .collect()
}
