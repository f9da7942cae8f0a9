//! Finite categorical sample of the matrix model.
//!
//! For each requested dimension `n` the sample has a space object `E{n}`
//! (one block of size `n`) and its cylinder `hatE{n}` (blocks `n, n, n`).
//! Morphisms are the block "row selection" maps: every target block row is
//! either zero or an identity block copied from a source block of equal
//! size. These include `i`, `j`, `p`, `k`, the lifts of `0` and `id`, and
//! the factorization homotopy `[0, I, 0]`, and they are closed under matrix
//! product, so they form a finite category on which the object-level
//! operations (equivalence, contractibility) run unchanged.
//!
//! Composition is computed on the selection patterns, which is exact and
//! agrees with the corresponding matrix products.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{EngineError, Result};
use crate::fincat::{CategoryData, FinCategory, MorphismData};
use crate::hstruct::{HomotopicalStructure, StructureData};

/// One target-block row of a selection pattern: zero, or a copy of the
/// given source block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Row {
    Zero,
    Copy(usize),
}

/// Objects of the sample, identified by their block shape.
#[derive(Debug, Clone)]
struct SampleObject {
    name: String,
    blocks: Vec<usize>,
}

fn pattern_id(src: &str, dst: &str, rows: &[Row]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| match r {
            Row::Zero => "z".to_string(),
            Row::Copy(c) => (c + 1).to_string(),
        })
        .collect();
    format!("{src}>{dst}:{}", body.join("."))
}

/// All selection patterns from `src` to `dst`. Zero-size rows are forced
/// to `Zero` so that equal matrices get one canonical pattern.
fn patterns(src: &[usize], dst: &[usize]) -> Vec<Vec<Row>> {
    let mut out: Vec<Vec<Row>> = vec![Vec::new()];
    for &row_size in dst {
        let mut options = vec![Row::Zero];
        if row_size > 0 {
            for (c, &col_size) in src.iter().enumerate() {
                if col_size == row_size {
                    options.push(Row::Copy(c));
                }
            }
        }
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&o| {
                    let mut next = prefix.clone();
                    next.push(o);
                    next
                })
            })
            .collect();
    }
    out
}

fn compose_patterns(later: &[Row], first: &[Row]) -> Vec<Row> {
    later
        .iter()
        .map(|r| match r {
            Row::Zero => Row::Zero,
            Row::Copy(c) => first[*c],
        })
        .collect()
}

/// The dense matrix a pattern stands for.
pub fn pattern_matrix(rows: &[Row], src_blocks: &[usize], dst_blocks: &[usize]) -> DMatrix<f64> {
    let total_rows: usize = dst_blocks.iter().sum();
    let total_cols: usize = src_blocks.iter().sum();
    let mut m = DMatrix::zeros(total_rows, total_cols);
    let mut row_off = 0;
    for (r, &size) in dst_blocks.iter().enumerate() {
        if let Row::Copy(c) = rows[r] {
            let col_off: usize = src_blocks[..c].iter().sum();
            m.view_mut((row_off, col_off), (size, size)).copy_from(&DMatrix::identity(size, size));
        }
        row_off += size;
    }
    m
}

/// The sampled category and structure over the given dimensions.
/// Dimensions must be distinct (object names encode them).
pub fn sample_category(dims: &[usize]) -> Result<(FinCategory, HomotopicalStructure)> {
    {
        let mut sorted = dims.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != dims.len() {
            return Err(EngineError::Contract("sample dimensions must be distinct".into()));
        }
    }

    let mut objects = Vec::new();
    for &n in dims {
        objects.push(SampleObject { name: format!("E{n}"), blocks: vec![n] });
    }
    for &n in dims {
        objects.push(SampleObject { name: format!("hatE{n}"), blocks: vec![n, n, n] });
    }

    let mut hom: BTreeMap<(usize, usize), Vec<Vec<Row>>> = BTreeMap::new();
    for (a, src) in objects.iter().enumerate() {
        for (b, dst) in objects.iter().enumerate() {
            hom.insert((a, b), patterns(&src.blocks, &dst.blocks));
        }
    }

    let id_of = |a: usize, b: usize, rows: &[Row]| -> String {
        pattern_id(&objects[a].name, &objects[b].name, rows)
    };

    let mut morphisms = Vec::new();
    for (&(a, b), pats) in &hom {
        for rows in pats {
            morphisms.push(MorphismData {
                id: id_of(a, b, rows),
                src: objects[a].name.clone(),
                dst: objects[b].name.clone(),
            });
        }
    }

    let identity_pattern = |a: usize| -> Vec<Row> {
        objects[a]
            .blocks
            .iter()
            .enumerate()
            .map(|(r, &size)| if size > 0 { Row::Copy(r) } else { Row::Zero })
            .collect()
    };
    let identities: BTreeMap<String, String> = (0..objects.len())
        .map(|a| (objects[a].name.clone(), id_of(a, a, &identity_pattern(a))))
        .collect();

    let mut composition = Vec::new();
    for a in 0..objects.len() {
        for b in 0..objects.len() {
            for c in 0..objects.len() {
                for g in &hom[&(b, c)] {
                    for f in &hom[&(a, b)] {
                        let gf = compose_patterns(g, f);
                        composition.push((id_of(b, c, g), id_of(a, b, f), id_of(a, c, &gf)));
                    }
                }
            }
        }
    }

    let data = CategoryData {
        objects: objects.iter().map(|o| o.name.clone()).collect(),
        morphisms,
        identities,
        composition,
    };
    let cat = FinCategory::from_data(data)?;

    // Structure: hat E = hatE with the two end inclusions. In patterns,
    // i = [I; Φ; 0] = rows (copy 0, copy 0, zero) and j = (copy 0, zero,
    // copy 0); both collapse to all-zero rows at dimension 0.
    let end_pattern = |n: usize, middle: bool| -> Vec<Row> {
        if n == 0 {
            vec![Row::Zero; 3]
        } else if middle {
            vec![Row::Copy(0), Row::Copy(0), Row::Zero]
        } else {
            vec![Row::Copy(0), Row::Zero, Row::Copy(0)]
        }
    };
    let mut base = Vec::new();
    let mut hat = BTreeMap::new();
    let mut i_map = BTreeMap::new();
    let mut j_map = BTreeMap::new();
    for (pos, &n) in dims.iter().enumerate() {
        let e = objects[pos].name.clone();
        let e_hat = objects[pos + dims.len()].name.clone();
        i_map.insert(e.clone(), id_of(pos, pos + dims.len(), &end_pattern(n, true)));
        j_map.insert(e.clone(), id_of(pos, pos + dims.len(), &end_pattern(n, false)));
        hat.insert(e.clone(), e_hat);
        base.push(e);
    }
    let hs = HomotopicalStructure::from_data(
        &cat,
        &StructureData { base, hat, i: i_map, j: j_map },
    )?;
    Ok((cat, hs))
}
