//! Finite-dimensional matrix model of the operator-homotopy construction
//! on Banach spaces.
//!
//! A space is real `n`-space with an explicit map `Φ` into its bidual
//! (the identity in the standard model, where finite dimension identifies
//! the two; a singular `Φ` can be injected to exercise the failure
//! branches). The cylinder is the triple direct sum with blocks
//! `(x, x″, y″)`, with
//!
//! ```text
//! i = [I; Φ; 0]     j = [I; 0; Φ]     p = [I 0 0]
//! k = block swap of the two bidual copies
//! ```
//!
//! The pasting witness for maps `H, H* : Ê → F` with `H*·i = H·j` is
//! `H** = H + H* − H·(j·p)`, the lift of `U` is `blockdiag(U, U, U)`, and
//! the factorization criterion says `U ∼ V` exactly when `W·Φ = U − V` is
//! solvable, with the two conversion formulas `H = [V, W, 0]` and
//! `W = H·[0; I; −I]`. Contractibility corresponds to a left inverse `W`
//! of `Φ`, whose associated `P = Φ·W` is a projector onto the column space.
//!
//! Everything here is a pure function over dense matrices; tolerances are
//! scale-aware and centralized below.

pub mod bridge;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{EngineError, Result};

/// Scale-aware solvability tolerance for the factorization criterion:
/// the residual of `W·Φ = U−V` is compared against `tol·(1 + ‖U−V‖_F)`.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-9;

/// Rank decisions drop pivots below `PIVOT_RTOL · (largest pivot)` during
/// the full-pivot elimination.
pub const PIVOT_RTOL: f64 = 1e-10;

/// A model space: dimension plus the explicit map into the bidual.
/// `bidual_map` is square and equal to the identity in the standard model;
/// rectangular or singular values are synthetic test inputs.
#[derive(Debug, Clone)]
pub struct Space {
    pub dim: usize,
    pub bidual_map: DMatrix<f64>,
}

impl Space {
    pub fn standard(n: usize) -> Self {
        Space { dim: n, bidual_map: DMatrix::identity(n, n) }
    }

    pub fn with_bidual_map(phi: DMatrix<f64>) -> Self {
        Space { dim: phi.ncols(), bidual_map: phi }
    }

    /// Structure matrices of the cylinder over this space.
    pub fn kit(&self) -> StructureKit {
        StructureKit::with_phi(self.bidual_map.clone())
    }
}

/// A dense matrix with block shape metadata.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    pub matrix: DMatrix<f64>,
    pub row_blocks: Vec<usize>,
    pub col_blocks: Vec<usize>,
}

impl BlockOperator {
    pub fn new(matrix: DMatrix<f64>, row_blocks: Vec<usize>, col_blocks: Vec<usize>) -> Result<Self> {
        let (rows, cols) = (row_blocks.iter().sum::<usize>(), col_blocks.iter().sum::<usize>());
        if matrix.nrows() != rows || matrix.ncols() != cols {
            return Err(EngineError::ShapeMismatch {
                expected: format!("{rows}×{cols}"),
                got: format!("{}×{}", matrix.nrows(), matrix.ncols()),
            });
        }
        Ok(BlockOperator { matrix, row_blocks, col_blocks })
    }

    /// The `(r, c)` block as an owned matrix.
    pub fn block(&self, r: usize, c: usize) -> DMatrix<f64> {
        let row_off: usize = self.row_blocks[..r].iter().sum();
        let col_off: usize = self.col_blocks[..c].iter().sum();
        self.matrix.view((row_off, col_off), (self.row_blocks[r], self.col_blocks[c])).into()
    }
}

/// The structure matrices for one space: `i`, `j`, `p`, `k` and the
/// composite `j·p` used by the pasting formula.
#[derive(Debug, Clone)]
pub struct StructureKit {
    pub dim: usize,
    pub bidual_dim: usize,
    pub phi: DMatrix<f64>,
    pub i: DMatrix<f64>,
    pub j: DMatrix<f64>,
    pub p: DMatrix<f64>,
    pub k: DMatrix<f64>,
    pub j_of_p: DMatrix<f64>,
}

impl StructureKit {
    /// Standard model at dimension `n`: `Φ = I`.
    pub fn standard(n: usize) -> Self {
        Self::with_phi(DMatrix::identity(n, n))
    }

    /// Kit over an explicit (possibly rectangular or singular) `Φ : n → n″`.
    pub fn with_phi(phi: DMatrix<f64>) -> Self {
        let n = phi.ncols();
        let nb = phi.nrows();
        let total = n + 2 * nb;
        let mut i = DMatrix::zeros(total, n);
        let mut j = DMatrix::zeros(total, n);
        i.view_mut((0, 0), (n, n)).copy_from(&DMatrix::identity(n, n));
        i.view_mut((n, 0), (nb, n)).copy_from(&phi);
        j.view_mut((0, 0), (n, n)).copy_from(&DMatrix::identity(n, n));
        j.view_mut((n + nb, 0), (nb, n)).copy_from(&phi);
        let mut p = DMatrix::zeros(n, total);
        p.view_mut((0, 0), (n, n)).copy_from(&DMatrix::identity(n, n));
        let mut k = DMatrix::zeros(total, total);
        k.view_mut((0, 0), (n, n)).copy_from(&DMatrix::identity(n, n));
        k.view_mut((n, n + nb), (nb, nb)).copy_from(&DMatrix::identity(nb, nb));
        k.view_mut((n + nb, n), (nb, nb)).copy_from(&DMatrix::identity(nb, nb));
        let j_of_p = &j * &p;
        StructureKit { dim: n, bidual_dim: nb, phi, i, j, p, k, j_of_p }
    }

    pub fn cylinder_dim(&self) -> usize {
        self.dim + 2 * self.bidual_dim
    }
}

/// Builds the standard-model structure at dimension `n`.
pub fn build_structure(n: usize) -> StructureKit {
    StructureKit::standard(n)
}

/// Parses the on-disk matrix format: a JSON array of equal-length rows.
pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let nrows = rows.len();
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(EngineError::ShapeMismatch {
            expected: format!("rows of equal length {ncols}"),
            got: "ragged rows".into(),
        });
    }
    Ok(DMatrix::from_fn(nrows, ncols, |r, c| rows[r][c]))
}

pub fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect()
}

fn check_shape(m: &DMatrix<f64>, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.nrows() != rows || m.ncols() != cols {
        return Err(EngineError::ShapeMismatch {
            expected: format!("{rows}×{cols} for {what}"),
            got: format!("{}×{}", m.nrows(), m.ncols()),
        });
    }
    Ok(())
}

/// Pasting witness `H** = H + H* − H·(j·p)` for `H, H* : Ê → F` with
/// `H*·i = H·j` (checked within `tol`, scaled by the operand norms).
/// Satisfies `H**·i = H·i` and `H**·j = H*·j`.
pub fn axiom3_witness(
    h: &DMatrix<f64>,
    h_star: &DMatrix<f64>,
    kit: &StructureKit,
    tol: f64,
) -> Result<DMatrix<f64>> {
    let total = kit.cylinder_dim();
    check_shape(h_star, h.nrows(), h.ncols(), "H*")?;
    check_shape(h, h.nrows(), total, "H")?;
    let pre = (h_star * &kit.i - h * &kit.j).norm();
    let scale = 1.0 + h.norm() + h_star.norm();
    if pre > tol * scale {
        return Err(EngineError::Contract(format!(
            "pasting precondition H*·i = H·j fails: residual {pre:.3e} > {:.3e}",
            tol * scale
        )));
    }
    Ok(h + h_star - h * &kit.j_of_p)
}

/// Lift `Û = blockdiag(U, U, U)` of `U : E → F` in the standard model,
/// where the bidual copy of `U` is `U` itself. Satisfies `Û·i_E = i_F·U`
/// and `Û·j_E = j_F·U`.
pub fn lift_operator(
    u: &DMatrix<f64>,
    kit_src: &StructureKit,
    kit_dst: &StructureKit,
) -> Result<DMatrix<f64>> {
    check_shape(u, kit_dst.dim, kit_src.dim, "U")?;
    for (kit, which) in [(kit_src, "source"), (kit_dst, "target")] {
        if kit.bidual_dim != kit.dim {
            return Err(EngineError::ShapeMismatch {
                expected: format!("square bidual map in the {which} kit"),
                got: format!("{}×{}", kit.bidual_dim, kit.dim),
            });
        }
    }
    let (m, n) = (u.nrows(), u.ncols());
    let mut out = DMatrix::zeros(3 * m, 3 * n);
    for b in 0..3 {
        out.view_mut((b * m, b * n), (m, n)).copy_from(u);
    }
    Ok(out)
}

/// Rank-revealing full-pivot elimination: `A = B·C` with `B` of full column
/// rank and `C` of full row rank, both of rank-many dimensions.
struct FullRankFactors {
    rank: usize,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
}

fn full_pivot_factors(a: &DMatrix<f64>) -> FullRankFactors {
    let (m, n) = a.shape();
    let mut work = a.clone();
    let mut row_perm: Vec<usize> = (0..m).collect();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    let mut largest_pivot = 0.0f64;

    for step in 0..m.min(n) {
        let mut best = (step, step, 0.0f64);
        for r in step..m {
            for c in step..n {
                let v = work[(r, c)].abs();
                if v > best.2 {
                    best = (r, c, v);
                }
            }
        }
        largest_pivot = largest_pivot.max(best.2);
        if best.2 <= PIVOT_RTOL * largest_pivot || best.2 == 0.0 {
            break;
        }
        work.swap_rows(step, best.0);
        work.swap_columns(step, best.1);
        row_perm.swap(step, best.0);
        col_perm.swap(step, best.1);
        let pivot = work[(step, step)];
        for r in (step + 1)..m {
            let factor = work[(r, step)] / pivot;
            work[(r, step)] = factor;
            for c in (step + 1)..n {
                let sub = factor * work[(step, c)];
                work[(r, c)] -= sub;
            }
        }
        rank = step + 1;
    }

    // B = P⁻¹·L on the original row order, C = U·Q⁻¹ on the original
    // column order.
    let mut b = DMatrix::zeros(m, rank);
    for r in 0..m {
        for c in 0..rank.min(r + 1) {
            b[(row_perm[r], c)] = if c == r { 1.0 } else { work[(r, c)] };
        }
        if r < rank {
            b[(row_perm[r], r)] = 1.0;
        }
    }
    let mut c_mat = DMatrix::zeros(rank, n);
    for r in 0..rank {
        for c in r..n {
            c_mat[(r, col_perm[c])] = work[(r, c)];
        }
    }
    FullRankFactors { rank, b, c: c_mat }
}

/// Rank and Moore–Penrose pseudo-inverse via the full-rank factorization
/// `A = B·C`: `A⁺ = Cᵀ(C·Cᵀ)⁻¹(Bᵀ·B)⁻¹Bᵀ`.
pub fn pseudo_inverse(a: &DMatrix<f64>) -> (usize, DMatrix<f64>) {
    let (m, n) = a.shape();
    let f = full_pivot_factors(a);
    if f.rank == 0 {
        return (0, DMatrix::zeros(n, m));
    }
    let cct = &f.c * f.c.transpose();
    let btb = f.b.transpose() * &f.b;
    let cct_inv = cct.try_inverse().expect("C·Cᵀ is invertible at full row rank");
    let btb_inv = btb.try_inverse().expect("Bᵀ·B is invertible at full column rank");
    (f.rank, f.c.transpose() * cct_inv * btb_inv * f.b.transpose())
}

/// Rank by the same elimination used everywhere else.
pub fn rank(a: &DMatrix<f64>) -> usize {
    full_pivot_factors(a).rank
}

/// Decides whether `U − V` factors through `Φ`, i.e. whether some
/// `W : E″ → F` has `W·Φ = U − V`. Returns the minimum-norm `W` when the
/// system is solvable within `tol·(1 + ‖U−V‖)`, and `None` otherwise.
pub fn factor_through_bidual(
    u: &DMatrix<f64>,
    v: &DMatrix<f64>,
    phi: &DMatrix<f64>,
    tol: f64,
) -> Result<Option<DMatrix<f64>>> {
    check_shape(v, u.nrows(), u.ncols(), "V")?;
    if phi.ncols() != u.ncols() {
        return Err(EngineError::ShapeMismatch {
            expected: format!("Φ with {} columns", u.ncols()),
            got: format!("{}×{}", phi.nrows(), phi.ncols()),
        });
    }
    let diff = u - v;
    let (_, pinv) = pseudo_inverse(phi);
    let w = &diff * &pinv;
    let residual = (&w * phi - &diff).norm();
    if residual <= tol * (1.0 + diff.norm()) {
        Ok(Some(w))
    } else {
        Ok(None)
    }
}

/// The homotopy built from a factorization: `H = [V, W, 0]`, which
/// restricts to `H·i = V + W·Φ` and `H·j = V`.
pub fn homotopy_from_factor(v: &DMatrix<f64>, w: &DMatrix<f64>) -> Result<BlockOperator> {
    if w.nrows() != v.nrows() {
        return Err(EngineError::ShapeMismatch {
            expected: format!("W with {} rows", v.nrows()),
            got: format!("{}×{}", w.nrows(), w.ncols()),
        });
    }
    let (m, n, nb) = (v.nrows(), v.ncols(), w.ncols());
    let mut matrix = DMatrix::zeros(m, n + 2 * nb);
    matrix.view_mut((0, 0), (m, n)).copy_from(v);
    matrix.view_mut((0, n), (m, nb)).copy_from(w);
    BlockOperator::new(matrix, vec![m], vec![n, nb, nb])
}

/// Reads the factorization back off a homotopy: `W = H·[0; I; −I]`, the
/// difference of the two bidual blocks. Satisfies `W·Φ = H·i − H·j`
/// exactly in exact arithmetic.
pub fn factor_from_homotopy(h: &BlockOperator) -> Result<DMatrix<f64>> {
    if h.col_blocks.len() != 3 || h.col_blocks[1] != h.col_blocks[2] {
        return Err(EngineError::ShapeMismatch {
            expected: "column blocks (n, n″, n″)".into(),
            got: format!("{:?}", h.col_blocks),
        });
    }
    Ok(h.block(0, 1) - h.block(0, 2))
}

/// Left inverse and projector for a full-column-rank `Φ`:
/// `W = (ΦᵀΦ)⁻¹Φᵀ` and `P = Φ·W`, a projector onto `col(Φ)`.
/// `None` when `Φ` is rank-deficient (then no left inverse exists and the
/// canonical image is not complemented in this model).
pub fn contractibility_projector(phi: &DMatrix<f64>) -> Option<(DMatrix<f64>, DMatrix<f64>)> {
    let n = phi.ncols();
    if rank(phi) < n {
        return None;
    }
    if n == 0 {
        return Some((DMatrix::zeros(0, phi.nrows()), DMatrix::zeros(phi.nrows(), phi.nrows())));
    }
    let gram = phi.transpose() * phi;
    let w = gram.try_inverse().expect("Gram matrix of full-column-rank Φ") * phi.transpose();
    let p = phi * &w;
    Some((w, p))
}

// ---------------------------------------------------------------------------
// Numeric axiom report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct NumericAxiomOutcome {
    pub pass: bool,
    pub max_residual: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct KitNumericReport {
    pub dim: usize,
    pub bidual_dim: usize,
    pub pass: bool,
    pub axiom_i: NumericAxiomOutcome,
    pub axiom_ii: NumericAxiomOutcome,
    pub axiom_iii: NumericAxiomOutcome,
    pub axiom_iv: NumericAxiomOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericAxiomReport {
    pub tol: f64,
    pub kits: Vec<KitNumericReport>,
    pub pass: bool,
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..=1.0))
}

/// Residual check of one kit. Axioms I and II are exact matrix identities;
/// III and IV are exercised on seeded random operators satisfying the
/// respective preconditions. Residuals are scaled by `1 + ‖operands‖`.
pub fn check_kit_numeric(kit: &StructureKit, tol: f64, trials: usize, seed: u64) -> KitNumericReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = kit.dim;
    let nb = kit.bidual_dim;
    let eye = DMatrix::identity(n, n);

    let res_i = ((&kit.p * &kit.i) - &eye).norm().max(((&kit.p * &kit.j) - &eye).norm());
    let res_ii = ((&kit.k * &kit.i) - &kit.j).norm().max(((&kit.k * &kit.j) - &kit.i).norm());

    let mut res_iii = 0.0f64;
    let mut iii_ok = true;
    for t in 0..trials {
        let m = n.max(1) + (t % 2);
        let h = random_matrix(&mut rng, m, kit.cylinder_dim());
        let mut h_star = DMatrix::zeros(m, kit.cylinder_dim());
        let b2 = random_matrix(&mut rng, m, nb);
        let b3 = random_matrix(&mut rng, m, nb);
        let b1 = &h * &kit.j - &b2 * &kit.phi;
        h_star.view_mut((0, 0), (m, n)).copy_from(&b1);
        h_star.view_mut((0, n), (m, nb)).copy_from(&b2);
        h_star.view_mut((0, n + nb), (m, nb)).copy_from(&b3);
        let scale = 1.0 + h.norm() + h_star.norm();
        match axiom3_witness(&h, &h_star, kit, tol) {
            Ok(w) => {
                let r = ((&w * &kit.i) - (&h * &kit.i))
                    .norm()
                    .max(((&w * &kit.j) - (&h_star * &kit.j)).norm())
                    / scale;
                res_iii = res_iii.max(r);
            }
            Err(_) => iii_ok = false,
        }
    }

    let mut res_iv = 0.0f64;
    let mut iv_ok = true;
    if nb == n {
        for t in 0..trials {
            let m = n + (t % 2);
            let kit_dst = StructureKit::standard(m);
            let u = random_matrix(&mut rng, m, n);
            match lift_operator(&u, kit, &kit_dst) {
                Ok(lifted) => {
                    let scale = 1.0 + u.norm();
                    let r = ((&lifted * &kit.i) - (&kit_dst.i * &u))
                        .norm()
                        .max(((&lifted * &kit.j) - (&kit_dst.j * &u)).norm())
                        / scale;
                    res_iv = res_iv.max(r);
                }
                Err(_) => iv_ok = false,
            }
        }
    }

    let outcome = |pass: bool, res: f64, trials: usize| NumericAxiomOutcome {
        pass: pass && res <= tol,
        max_residual: res,
        trials,
    };
    let axiom_i = outcome(true, res_i, 1);
    let axiom_ii = outcome(true, res_ii, 1);
    let axiom_iii = outcome(iii_ok, res_iii, trials);
    let axiom_iv = outcome(iv_ok, res_iv, if nb == n { trials } else { 0 });
    let pass = axiom_i.pass && axiom_ii.pass && axiom_iii.pass && axiom_iv.pass;
    KitNumericReport { dim: n, bidual_dim: nb, pass, axiom_i, axiom_ii, axiom_iii, axiom_iv }
}

const NUMERIC_SEED: u64 = 0x6d6f_6463_6174; // stable across runs

/// Standard-model kits at each dimension, checked at tolerance `tol`.
pub fn check_axioms_numeric(dims: &[usize], tol: f64) -> NumericAxiomReport {
    let kits: Vec<KitNumericReport> = dims
        .iter()
        .map(|&n| check_kit_numeric(&StructureKit::standard(n), tol, 4, NUMERIC_SEED ^ n as u64))
        .collect();
    let pass = kits.iter().all(|k| k.pass);
    NumericAxiomReport { tol, kits, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> DMatrix<f64> {
        DMatrix::from_row_slice(
            rows.len(),
            rows.first().map(|r| r.len()).unwrap_or(0),
            &rows.concat(),
        )
    }

    #[test]
    fn kit_identities_hold_exactly() {
        for n in [0, 1, 2, 5] {
            let kit = Space::standard(n).kit();
            let eye = DMatrix::identity(n, n);
            assert_eq!(&kit.p * &kit.i, eye);
            assert_eq!(&kit.p * &kit.j, eye);
            assert_eq!(&kit.k * &kit.i, kit.j);
            assert_eq!(&kit.k * &kit.j, kit.i);
        }
        // The retraction identities do not need an invertible bidual map.
        let kit = Space::with_bidual_map(mat(&[&[1.0, 0.0], &[0.0, 0.0]])).kit();
        assert_eq!(&kit.p * &kit.i, DMatrix::identity(2, 2));
        assert_eq!(&kit.k * &kit.i, kit.j);
    }

    #[test]
    fn pasting_witness_matches_hand_expansion_at_dim_one() {
        // H = [a b c], H* = [x y z] with x + y = a + c; the witness is
        // [x−c, b+y, c+z].
        let kit = StructureKit::standard(1);
        let (a, b, c) = (2.0, 3.0, 5.0);
        let (x, y, z) = (1.0, 6.0, 4.0);
        assert_eq!(x + y, a + c);
        let h = mat(&[&[a, b, c]]);
        let h_star = mat(&[&[x, y, z]]);
        let w = axiom3_witness(&h, &h_star, &kit, 1e-12).unwrap();
        assert_eq!(w, mat(&[&[x - c, b + y, c + z]]));
        assert_eq!((&w * &kit.i)[(0, 0)], a + b);
        assert_eq!((&w * &kit.j)[(0, 0)], x + z);
    }

    #[test]
    fn pasting_rejects_precondition_violations() {
        let kit = StructureKit::standard(1);
        let h = mat(&[&[1.0, 0.0, 0.0]]);
        let h_star = mat(&[&[5.0, 5.0, 5.0]]); // H*·i = 10 ≠ H·j = 1
        assert!(matches!(
            axiom3_witness(&h, &h_star, &kit, 1e-9),
            Err(EngineError::Contract(_))
        ));
    }

    #[test]
    fn zero_pasting_gives_zero() {
        let kit = StructureKit::standard(2);
        let z = DMatrix::zeros(2, 6);
        let w = axiom3_witness(&z, &z, &kit, 1e-12).unwrap();
        assert_eq!(w, z);
    }

    #[test]
    fn lift_is_block_diagonal_and_intertwines() {
        let kit = StructureKit::standard(2);
        let u = mat(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let lifted = lift_operator(&u, &kit, &kit).unwrap();
        assert_eq!(lifted.nrows(), 6);
        assert!(((&lifted * &kit.i) - (&kit.i * &u)).norm() <= 1e-12);
        assert!(((&lifted * &kit.j) - (&kit.j * &u)).norm() <= 1e-12);
        let id = DMatrix::identity(2, 2);
        assert_eq!(lift_operator(&id, &kit, &kit).unwrap(), DMatrix::identity(6, 6));
        let zero = DMatrix::zeros(2, 2);
        assert_eq!(lift_operator(&zero, &kit, &kit).unwrap(), DMatrix::zeros(6, 6));
    }

    #[test]
    fn identity_phi_always_factors() {
        let u = mat(&[&[2.0, 0.0], &[1.0, -1.0]]);
        let v = DMatrix::zeros(2, 2);
        let phi = DMatrix::identity(2, 2);
        let w = factor_through_bidual(&u, &v, &phi, DEFAULT_SOLVE_TOL).unwrap().unwrap();
        assert_eq!(w, &u - &v);
        // U = V gives the zero factor.
        let w0 = factor_through_bidual(&u, &u, &phi, DEFAULT_SOLVE_TOL).unwrap().unwrap();
        assert_eq!(w0, DMatrix::zeros(2, 2));
    }

    #[test]
    fn singular_phi_blocks_unreachable_differences() {
        let phi = mat(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let u = mat(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let v = DMatrix::zeros(2, 2);
        assert!(factor_through_bidual(&u, &v, &phi, DEFAULT_SOLVE_TOL).unwrap().is_none());
        // A difference inside the row space of Φ still factors.
        let u2 = mat(&[&[3.0, 0.0], &[-1.0, 0.0]]);
        let w = factor_through_bidual(&u2, &v, &phi, DEFAULT_SOLVE_TOL).unwrap().unwrap();
        assert!((&w * &phi - &u2).norm() <= 1e-12);
    }

    #[test]
    fn scalar_factor_homotopy_roundtrip() {
        // Φ = 1, U = 2, V = 0: W = 2, H = [0 2 0].
        let phi = mat(&[&[1.0]]);
        let u = mat(&[&[2.0]]);
        let v = mat(&[&[0.0]]);
        let w = factor_through_bidual(&u, &v, &phi, DEFAULT_SOLVE_TOL).unwrap().unwrap();
        assert_eq!(w, mat(&[&[2.0]]));
        let h = homotopy_from_factor(&v, &w).unwrap();
        assert_eq!(h.matrix, mat(&[&[0.0, 2.0, 0.0]]));
        let kit = StructureKit::standard(1);
        assert_eq!(&h.matrix * &kit.i, u);
        assert_eq!(&h.matrix * &kit.j, v);
        assert_eq!(factor_from_homotopy(&h).unwrap(), w);
    }

    #[test]
    fn factor_from_homotopy_reads_off_blocks() {
        let h = BlockOperator::new(
            mat(&[&[9.0, 1.0, 2.0, 3.0, 4.0, 7.0], &[0.0, 5.0, 6.0, 1.0, 2.0, 3.0]]),
            vec![2],
            vec![2, 2, 2],
        )
        .unwrap();
        let w = factor_from_homotopy(&h).unwrap();
        assert_eq!(w, mat(&[&[2.0 - 4.0, 3.0 - 7.0], &[6.0 - 2.0, 1.0 - 3.0]]));
        // W·Φ = H·i − H·j for the standard kit.
        let kit = StructureKit::standard(2);
        let lhs = &w * &kit.phi;
        let rhs = &h.matrix * &kit.i - &h.matrix * &kit.j;
        assert!((lhs - rhs).norm() <= 1e-12);
    }

    #[test]
    fn projector_from_tall_phi() {
        let phi = mat(&[&[1.0], &[1.0]]);
        let (w, p) = contractibility_projector(&phi).unwrap();
        assert_eq!(w, mat(&[&[0.5, 0.5]]));
        assert_eq!(p, mat(&[&[0.5, 0.5], &[0.5, 0.5]]));
        assert!((&p * &p - &p).norm() <= 1e-12);
    }

    #[test]
    fn projector_absent_for_rank_deficient_phi() {
        let phi = mat(&[&[1.0, 0.0], &[0.0, 0.0]]);
        assert!(contractibility_projector(&phi).is_none());
        let (w, p) = contractibility_projector(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(w, DMatrix::identity(3, 3));
        assert_eq!(p, DMatrix::identity(3, 3));
    }

    #[test]
    fn pseudo_inverse_solves_minimum_norm() {
        let phi = mat(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let (rank, pinv) = pseudo_inverse(&phi);
        assert_eq!(rank, 1);
        assert_eq!(pinv, mat(&[&[1.0, 0.0], &[0.0, 0.0]]));
        let a = mat(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let (rank_a, pinv_a) = pseudo_inverse(&a);
        assert_eq!(rank_a, 2);
        assert!((&a * &pinv_a - DMatrix::identity(2, 2)).norm() <= 1e-12);
    }

    #[test]
    fn numeric_report_passes_on_standard_kits() {
        let report = check_axioms_numeric(&[0, 1, 2, 3], 1e-9);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn corrupted_end_swap_fails_axiom_ii_with_residual() {
        let mut kit = StructureKit::standard(2);
        kit.k = DMatrix::identity(kit.cylinder_dim(), kit.cylinder_dim());
        let report = check_kit_numeric(&kit, 1e-9, 2, 7);
        assert!(report.axiom_i.pass);
        assert!(!report.axiom_ii.pass);
        assert!(report.axiom_ii.max_residual > 1.0);
        assert!(!report.pass);
    }

    #[test]
    fn empty_dimension_is_vacuous() {
        let report = check_axioms_numeric(&[0], 1e-12);
        assert!(report.pass);
        assert_eq!(report.kits[0].axiom_i.max_residual, 0.0);
    }
}
