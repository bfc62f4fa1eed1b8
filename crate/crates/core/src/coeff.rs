//! Scaling and wavelet coefficient blocks between a coarse level and the
//! fine basis grouped on the coarse knots, and the orthogonal matrices built
//! from them.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::mra::{CenteredBasis, KnotGroup};
use crate::mra::scaffold::RANK_TOL;
use crate::piecewise::PiecewisePoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    C,
    D,
    B,
    E,
    F,
    Ghat,
    Gtilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Bar,
    Breve,
}

/// A labeled coefficient matrix between the `rows` functions at `from_knot`
/// and the `cols` fine functions at `to_knot`.
#[derive(Clone, Debug)]
pub struct CoeffBlock {
    pub kind: BlockKind,
    pub flavor: (Flavor, Flavor),
    pub from_knot: f64,
    pub to_knot: f64,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub matrix: DMatrix<f64>,
}

/// Serialized form of a block; empty row or column lists are elided by the
/// caller before writing.
#[derive(Clone, Debug, Serialize)]
pub struct CoeffTable {
    pub knot_class: String,
    pub kind: BlockKind,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl CoeffBlock {
    pub fn is_empty(&self) -> bool {
        self.matrix.nrows() == 0 || self.matrix.ncols() == 0
    }

    pub fn to_table(&self, knot_class: impl Into<String>) -> CoeffTable {
        CoeffTable {
            knot_class: knot_class.into(),
            kind: self.kind,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            values: linalg::matrix_rows(&self.matrix),
        }
    }
}

/// The fine functions seen from coarse knot `i`:
/// `[Φ̆¹_{a₋}; Φ̄¹_a; Φ̆¹_a]`.
#[derive(Clone, Debug)]
pub struct LocalColumns {
    pub breve_prev: Vec<PiecewisePoly>,
    pub bar: Vec<PiecewisePoly>,
    pub breve: Vec<PiecewisePoly>,
    pub breve_prev_labels: Vec<String>,
    pub bar_labels: Vec<String>,
    pub breve_labels: Vec<String>,
}

impl LocalColumns {
    pub fn at(fine: &CenteredBasis, i: usize) -> Self {
        let empty = KnotGroup::default();
        let prev = if i > 0 { &fine.groups[i - 1] } else { &empty };
        let g = &fine.groups[i];
        let prev_label = if i > 0 { fine.knot_label(i - 1) } else { String::new() };
        let here = fine.knot_label(i);
        let lab = |k: &str, fl: &str, names: &[String]| names.iter().map(|n| format!("{k}:{fl}.{n}")).collect();
        LocalColumns {
            breve_prev: prev.breve.clone(),
            bar: g.bar.clone(),
            breve: g.breve.clone(),
            breve_prev_labels: lab(&prev_label, "breve", &prev.breve_names),
            bar_labels: lab(&here, "bar", &g.bar_names),
            breve_labels: lab(&here, "breve", &g.breve_names),
        }
    }

    pub fn all(&self) -> Vec<PiecewisePoly> {
        self.breve_prev.iter().chain(&self.bar).chain(&self.breve).cloned().collect()
    }

    pub fn widths(&self) -> (usize, usize, usize) {
        (self.breve_prev.len(), self.bar.len(), self.breve.len())
    }

    /// Functions `rows · [Φ̆¹_{a₋}; Φ̄¹_a; Φ̆¹_a]`.
    pub fn combine(&self, rows: &DMatrix<f64>) -> Vec<PiecewisePoly> {
        let cols = self.all();
        let refs: Vec<&PiecewisePoly> = cols.iter().collect();
        (0..rows.nrows())
            .map(|r| {
                let c: Vec<f64> = rows.row(r).iter().copied().collect();
                PiecewisePoly::linear_combination(&c, &refs)
            })
            .collect()
    }
}

/// The four blocks of `c_{aa₋}` and `c_{aa}` (or the `d` analogues) that
/// may be nonzero, plus the size of the entries that must vanish.
#[derive(Clone, Debug)]
pub struct KnotBlocks {
    pub knot: f64,
    pub bar_breve_prev: CoeffBlock,
    pub bar_bar: CoeffBlock,
    pub bar_breve: CoeffBlock,
    pub breve_breve: CoeffBlock,
    /// Largest entry of `⟨·, Φ̄¹_{a₋}⟩`, `⟨Φ̆_a, Φ̆¹_{a₋}⟩` and `⟨Φ̆_a, Φ̄¹_a⟩`.
    pub sparsity_error: f64,
}

impl KnotBlocks {
    /// `[c̄˘_{aa₋}  c̄¯_{aa}  c̄˘_{aa}]`.
    pub fn bar_row(&self) -> DMatrix<f64> {
        hcat(&[&self.bar_breve_prev.matrix, &self.bar_bar.matrix, &self.bar_breve.matrix], self.bar_bar.matrix.nrows())
    }

    /// `[0  0  c̆˘_{aa}]`.
    pub fn breve_row(&self, cols: &LocalColumns) -> DMatrix<f64> {
        let (p, b, _) = cols.widths();
        let z = DMatrix::zeros(self.breve_breve.matrix.nrows(), p + b);
        hcat(&[&z, &self.breve_breve.matrix], self.breve_breve.matrix.nrows())
    }
}

fn hcat(blocks: &[&DMatrix<f64>], rows: usize) -> DMatrix<f64> {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut m = DMatrix::zeros(rows, cols);
    let mut off = 0;
    for b in blocks {
        if b.nrows() == rows {
            m.view_mut((0, off), (rows, b.ncols())).copy_from(b);
        }
        off += b.ncols();
    }
    m
}

fn vcat(blocks: &[DMatrix<f64>], cols: usize) -> DMatrix<f64> {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = DMatrix::zeros(rows, cols);
    let mut off = 0;
    for b in blocks {
        m.view_mut((off, 0), (b.nrows(), cols)).copy_from(b);
        off += b.nrows();
    }
    m
}

/// Blocks of one knot for the rows in `group` (a group of `Φ⁰` for `c`, of
/// `Ψ` for `d`) against the fine basis grouped on the same knots.
pub fn knot_blocks(kind: BlockKind, rows: &CenteredBasis, fine: &CenteredBasis, i: usize) -> KnotBlocks {
    let g = &rows.groups[i];
    let cols = LocalColumns::at(fine, i);
    let here = rows.knot_label(i);
    let bar_labels: Vec<String> = g.bar_names.iter().map(|n| format!("{here}:bar.{n}")).collect();
    let breve_labels: Vec<String> = g.breve_names.iter().map(|n| format!("{here}:breve.{n}")).collect();
    let a = rows.window.knots()[i];
    let a_prev = if i > 0 { rows.window.knots()[i - 1] } else { f64::NEG_INFINITY };
    let block = |flavor, to, r: &[PiecewisePoly], rl: &Vec<String>, c: &[PiecewisePoly], cl: &Vec<String>| CoeffBlock {
        kind,
        flavor,
        from_knot: a,
        to_knot: to,
        row_labels: rl.clone(),
        col_labels: cl.clone(),
        matrix: linalg::gram(r, c),
    };
    let empty = KnotGroup::default();
    let prev_bar = if i > 0 { &fine.groups[i - 1].bar } else { &empty.bar };
    let sparsity_error = linalg::max_abs(&linalg::gram(&g.all(), prev_bar))
        .max(linalg::max_abs(&linalg::gram(&g.breve, &cols.breve_prev)))
        .max(linalg::max_abs(&linalg::gram(&g.breve, &cols.bar)));
    KnotBlocks {
        knot: a,
        bar_breve_prev: block((Flavor::Bar, Flavor::Breve), a_prev, &g.bar, &bar_labels, &cols.breve_prev, &cols.breve_prev_labels),
        bar_bar: block((Flavor::Bar, Flavor::Bar), a, &g.bar, &bar_labels, &cols.bar, &cols.bar_labels),
        bar_breve: block((Flavor::Bar, Flavor::Breve), a, &g.bar, &bar_labels, &cols.breve, &cols.breve_labels),
        breve_breve: block((Flavor::Breve, Flavor::Breve), a, &g.breve, &breve_labels, &cols.breve, &cols.breve_labels),
        sparsity_error,
    }
}

/// `c` blocks at coarse knot `i`; `fine` must already be grouped on the
/// coarse knots (see [`crate::mra::scaffold::align_fine`]).
pub fn c_blocks(phi0: &CenteredBasis, fine: &CenteredBasis, i: usize) -> KnotBlocks {
    knot_blocks(BlockKind::C, phi0, fine, i)
}

pub fn d_blocks(psi: &CenteredBasis, fine: &CenteredBasis, i: usize) -> KnotBlocks {
    knot_blocks(BlockKind::D, psi, fine, i)
}

/// Orthonormal row basis of a coefficient matrix whose rows are
/// coefficients of unit-norm functions; rows whose residual is below
/// [`RANK_TOL`] in absolute terms are dropped.
pub fn row_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    let scale = linalg::max_abs(m);
    if m.nrows() == 0 || scale < RANK_TOL {
        return DMatrix::zeros(0, m.ncols());
    }
    let s = (0..m.nrows()).map(|i| m.row(i).norm()).fold(0.0, f64::max);
    linalg::orthonormal_row_basis(m, RANK_TOL / s)
}

/// `c = e·b` with `b` having orthonormal rows spanning the row space of
/// `c`. A zero block gives empty factors.
pub fn be_factor(block: &CoeffBlock) -> (CoeffBlock, CoeffBlock) {
    let b = row_basis(&block.matrix);
    let e = linalg::factor_through_rows(&block.matrix, &b);
    let rank = b.nrows();
    let basis_labels: Vec<String> = (0..rank).map(|j| format!("alpha{j}")).collect();
    let eb = CoeffBlock {
        kind: BlockKind::E,
        row_labels: block.row_labels.clone(),
        col_labels: basis_labels.clone(),
        matrix: e,
        ..block.clone()
    };
    let bb = CoeffBlock { kind: BlockKind::B, row_labels: basis_labels, col_labels: block.col_labels.clone(), matrix: b, ..block.clone() };
    (eb, bb)
}

/// Rows over `[Φ̆¹_{a₋}; Φ̄¹_a; Φ̆¹_a]` spanning `Ŵ_a` and `W̃_a`, each with
/// orthonormal rows. Both are empty when the knot has no bar functions.
pub fn ghat_gtilde(blocks: &KnotBlocks, cols: &LocalColumns) -> (DMatrix<f64>, DMatrix<f64>) {
    let (p, b, n) = cols.widths();
    let width = p + b + n;
    if blocks.bar_bar.matrix.nrows() == 0 {
        return (DMatrix::zeros(0, width), DMatrix::zeros(0, width));
    }
    let cbb = &blocks.bar_bar.matrix;
    let ct = cbb.transpose();
    let lhs = -&ct * &blocks.bar_breve_prev.matrix;
    let mid = DMatrix::identity(b, b) - &ct * cbb;
    let rhs = -&ct * &blocks.bar_breve.matrix;
    let raw = hcat(&[&lhs, &mid, &rhs], b);
    let ghat = row_basis(&raw);

    let x = vcat(&[blocks.bar_row(), ghat.clone()], width);
    let proj = DMatrix::identity(width, width) - x.transpose() * &x;
    let bm = row_basis(&blocks.bar_breve_prev.matrix);
    let bp = row_basis(&blocks.bar_breve.matrix);
    let mut alpha = DMatrix::zeros(bm.nrows() + bp.nrows(), width);
    alpha.view_mut((0, 0), (bm.nrows(), p)).copy_from(&bm);
    alpha.view_mut((bm.nrows(), p + b), (bp.nrows(), n)).copy_from(&bp);
    let gtilde = row_basis(&(alpha * proj));
    (ghat, gtilde)
}

/// Completes `[e_{aa₋}  c̄¯_{aa}  e_{aa}]` to an orthogonal matrix and maps
/// the added rows back to fine coordinates: `[f_{aa₋}b_{aa₋}  d̄¯  f_{aa}b_{aa}]`.
pub fn bar_completion(blocks: &KnotBlocks, cols: &LocalColumns) -> Result<DMatrix<f64>> {
    let (p, b, n) = cols.widths();
    let (em, bm) = be_factor(&blocks.bar_breve_prev);
    let (ep, bp) = be_factor(&blocks.bar_breve);
    let k = blocks.bar_bar.matrix.nrows();
    let (rm, rp) = (bm.matrix.nrows(), bp.matrix.nrows());
    let width = rm + b + rp;
    if k == 0 {
        return Ok(DMatrix::zeros(0, p + b + n));
    }
    let top = hcat(&[&em.matrix, &blocks.bar_bar.matrix, &ep.matrix], k);
    let full = linalg::complete_to_orthogonal(&top, width)?;
    let added = full.rows(k, width - k).into_owned();
    let mut out = DMatrix::zeros(width - k, p + b + n);
    out.view_mut((0, 0), (width - k, p)).copy_from(&(added.columns(0, rm) * &bm.matrix));
    out.view_mut((0, p), (width - k, b)).copy_from(&added.columns(rm, b));
    out.view_mut((0, p + b), (width - k, n)).copy_from(&(added.columns(rm + b, rp) * &bp.matrix));
    Ok(out)
}

/// `M_{[a,b]}` for the knots `lo..=hi` of the coarse window, with its row and
/// column labels and the deviation from a directly computed Gram matrix.
#[derive(Clone, Debug)]
pub struct AssembledM {
    pub matrix: DMatrix<f64>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// `max |M_blocks - ⟨rows, cols⟩|` with the row functions formed directly.
    pub direct_error: f64,
}

impl AssembledM {
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.matrix.nrows();
        linalg::max_abs(&(&self.matrix * self.matrix.transpose() - DMatrix::identity(n, n)))
            .max(linalg::max_abs(&(self.matrix.transpose() * &self.matrix - DMatrix::identity(n, n))))
    }
}

/// Assembles `M_{[a,b]}` block by block. Rows: `α⁺_a`, `Φ̆⁰_a`, then
/// `Φ̄⁰, Φ̆⁰` at each inner knot, `Ψ̆_a`, `Ψ̄, Ψ̆` at each inner knot, and
/// `α⁻_b`. Columns: `Φ̆¹_a`, then `Φ̄¹, Φ̆¹` at each inner knot.
pub fn assemble_m(phi0: &CenteredBasis, fine: &CenteredBasis, psi: &CenteredBasis, lo: usize, hi: usize) -> Result<AssembledM> {
    if hi < lo + 2 || hi >= phi0.groups.len() {
        return Err(Error::Contract(format!("M needs at least three knots inside the window, got indices {lo}..={hi}")));
    }
    // column offsets
    let mut col_fns: Vec<PiecewisePoly> = Vec::new();
    let mut col_labels: Vec<String> = Vec::new();
    let mut bar_off = vec![0; hi + 1];
    let mut breve_off = vec![0; hi + 1];
    for j in lo..hi {
        let c = LocalColumns::at(fine, j);
        if j > lo {
            bar_off[j] = col_fns.len();
            col_fns.extend(c.bar.iter().cloned());
            col_labels.extend(c.bar_labels.iter().cloned());
        }
        breve_off[j] = col_fns.len();
        col_fns.extend(c.breve.iter().cloned());
        col_labels.extend(c.breve_labels.iter().cloned());
    }
    let ncols = col_fns.len();

    let mut rows: Vec<DMatrix<f64>> = Vec::new();
    let mut row_labels: Vec<String> = Vec::new();
    let place = |rows: &mut Vec<DMatrix<f64>>, parts: &[(&DMatrix<f64>, usize)], nrows: usize| {
        let mut m = DMatrix::zeros(nrows, ncols);
        for (blk, off) in parts {
            if blk.nrows() == nrows && blk.ncols() > 0 {
                m.view_mut((0, *off), (nrows, blk.ncols())).copy_from(blk);
            }
        }
        rows.push(m);
    };

    let first = c_blocks(phi0, fine, lo);
    let (_, alpha_plus) = be_factor(&first.bar_breve);
    place(&mut rows, &[(&alpha_plus.matrix, breve_off[lo])], alpha_plus.matrix.nrows());
    row_labels.extend(alpha_plus.row_labels.iter().map(|l| format!("{}:alpha+.{l}", phi0.knot_label(lo))));

    for (basis, kind) in [(phi0, BlockKind::C), (psi, BlockKind::D)] {
        let b0 = knot_blocks(kind, basis, fine, lo);
        place(&mut rows, &[(&b0.breve_breve.matrix, breve_off[lo])], b0.breve_breve.matrix.nrows());
        row_labels.extend(b0.breve_breve.row_labels.iter().cloned());
        for j in lo + 1..hi {
            let bj = knot_blocks(kind, basis, fine, j);
            let k = bj.bar_bar.matrix.nrows();
            place(
                &mut rows,
                &[(&bj.bar_breve_prev.matrix, breve_off[j - 1]), (&bj.bar_bar.matrix, bar_off[j]), (&bj.bar_breve.matrix, breve_off[j])],
                k,
            );
            row_labels.extend(bj.bar_bar.row_labels.iter().cloned());
            place(&mut rows, &[(&bj.breve_breve.matrix, breve_off[j])], bj.breve_breve.matrix.nrows());
            row_labels.extend(bj.breve_breve.row_labels.iter().cloned());
        }
    }

    let last = c_blocks(phi0, fine, hi);
    let (_, alpha_minus) = be_factor(&last.bar_breve_prev);
    place(&mut rows, &[(&alpha_minus.matrix, breve_off[hi - 1])], alpha_minus.matrix.nrows());
    row_labels.extend(alpha_minus.row_labels.iter().map(|l| format!("{}:alpha-.{l}", phi0.knot_label(hi))));

    let matrix = vcat(&rows, ncols);
    if matrix.nrows() != ncols {
        return Err(Error::Consistency(format!("M over knots {lo}..={hi} is {}x{ncols}", matrix.nrows())));
    }

    // the same rows as functions, for the direct Gram cross-check
    let mut row_fns: Vec<PiecewisePoly> = Vec::new();
    let lc = LocalColumns::at(fine, lo);
    row_fns.extend(combine(&alpha_plus.matrix, &lc.breve));
    row_fns.extend(phi0.groups[lo].breve.iter().cloned());
    for j in lo + 1..hi {
        row_fns.extend(phi0.groups[j].all());
    }
    row_fns.extend(psi.groups[lo].breve.iter().cloned());
    for j in lo + 1..hi {
        row_fns.extend(psi.groups[j].all());
    }
    let lh = LocalColumns::at(fine, hi);
    row_fns.extend(combine(&alpha_minus.matrix, &lh.breve_prev));
    let direct = linalg::gram(&row_fns, &col_fns);
    let direct_error = linalg::max_abs(&(direct - &matrix));
    Ok(AssembledM { matrix, row_labels, col_labels, direct_error })
}

fn combine(rows: &DMatrix<f64>, fs: &[PiecewisePoly]) -> Vec<PiecewisePoly> {
    let refs: Vec<&PiecewisePoly> = fs.iter().collect();
    (0..rows.nrows())
        .map(|r| {
            let c: Vec<f64> = rows.row(r).iter().copied().collect();
            PiecewisePoly::linear_combination(&c, &refs)
        })
        .collect()
}

/// Every block-calculus check over a scaffold and its wavelets: worst
/// values per quantity and any count mismatches.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CalculusReport {
    /// Largest entry that must vanish in the `c` and `d` blocks.
    pub sparsity: f64,
    /// Largest `‖Φ_a - c·Φ¹‖` over bar and breve functions.
    pub scaling_residual: f64,
    /// `max |[c̄˘ c̄¯ c̄˘][c̄˘ c̄¯ c̄˘]ᵀ - I|`.
    pub bar_row_orthonormality: f64,
    /// Span distance between `b_{aa}·Φ̆¹_a` and `A⁺_a`.
    pub alpha_plus_span: f64,
    pub ghat_span: f64,
    pub gtilde_span: f64,
    /// Span distance between the completed rows and `W̄_a`, and between the
    /// `d̄` rows and the completion.
    pub completion_span: f64,
    pub count_mismatches: Vec<String>,
    pub m_orthogonality: f64,
    pub m_direct: f64,
    pub m_windows: usize,
}

fn worse(a: &mut f64, b: f64) {
    *a = a.max(b);
}

fn spans(a: &[PiecewisePoly], b: &[PiecewisePoly]) -> f64 {
    if a.is_empty() && b.is_empty() {
        0.0
    } else {
        linalg::span_distance(a, b)
    }
}

/// Runs the block checks at every knot and assembles `M` over every run of
/// `3..=max_len` consecutive knots.
pub fn calculus_report(sc: &crate::mra::WaveletScaffold, psi: &CenteredBasis, max_len: usize) -> Result<CalculusReport> {
    let phi0 = &sc.coarse;
    let fine = &sc.fine;
    let n = phi0.groups.len();
    let mut r = CalculusReport::default();
    let count = |r: &mut CalculusReport, i: usize, what: &str, got: usize, want: usize| {
        if got != want {
            r.count_mismatches.push(format!("knot {}: {what} {got} != {want}", phi0.knot_label(i)));
        }
    };
    for i in 0..n {
        let cols = LocalColumns::at(fine, i);
        let c = c_blocks(phi0, fine, i);
        let d = d_blocks(psi, fine, i);
        worse(&mut r.sparsity, c.sparsity_error.max(d.sparsity_error));
        let g = &phi0.groups[i];
        for (f, h) in cols.combine(&c.bar_row()).iter().zip(&g.bar).chain(cols.combine(&c.breve_row(&cols)).iter().zip(&g.breve)) {
            worse(&mut r.scaling_residual, f.sub(h).norm());
        }
        let row = c.bar_row();
        let k = row.nrows();
        worse(&mut r.bar_row_orthonormality, linalg::max_abs(&(&row * row.transpose() - DMatrix::identity(k, k))));

        let ks = &sc.knots[i];
        let (_, bp) = be_factor(&c.bar_breve);
        let (_, bm) = be_factor(&c.bar_breve_prev);
        let alpha_plus = combine(&bp.matrix, &cols.breve);
        count(&mut r, i, "dim A+", alpha_plus.len(), ks.a_plus.len());
        count(&mut r, i, "dim A-", bm.matrix.nrows(), ks.a_minus.len());
        worse(&mut r.alpha_plus_span, spans(&alpha_plus, &ks.a_plus));

        let (gh, gt) = ghat_gtilde(&c, &cols);
        let (wh, wt) = (cols.combine(&gh), cols.combine(&gt));
        count(&mut r, i, "dim W_hat", wh.len(), ks.w_hat.len());
        count(&mut r, i, "dim W_tilde", wt.len(), ks.w_tilde.len());
        worse(&mut r.ghat_span, spans(&wh, &ks.w_hat));
        worse(&mut r.gtilde_span, spans(&wt, &ks.w_tilde));

        let comp = cols.combine(&bar_completion(&c, &cols)?);
        let dbar = cols.combine(&d.bar_row());
        count(&mut r, i, "dim W_bar", comp.len(), ks.w_bar().len());
        worse(&mut r.completion_span, spans(&comp, &ks.w_bar()).max(spans(&dbar, &comp)));
    }
    for len in 3..=max_len.min(n) {
        for lo in 0..=n - len {
            let m = assemble_m(phi0, fine, psi, lo, lo + len - 1)?;
            worse(&mut r.m_orthogonality, m.orthogonality_error());
            worse(&mut r.m_direct, m.direct_error);
            r.m_windows += 1;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_block_factors_are_empty() {
        let blk = CoeffBlock {
            kind: BlockKind::C,
            flavor: (Flavor::Bar, Flavor::Breve),
            from_knot: 1.0,
            to_knot: 1.0,
            row_labels: vec!["r".into()],
            col_labels: vec!["x".into(), "y".into()],
            matrix: DMatrix::from_row_slice(1, 2, &[1e-15, 0.0]),
        };
        let (e, b) = be_factor(&blk);
        assert_eq!(b.matrix.nrows(), 0);
        assert_eq!(e.matrix.ncols(), 0);
    }

    #[test]
    fn rank_one_factor() {
        let blk = CoeffBlock {
            kind: BlockKind::C,
            flavor: (Flavor::Bar, Flavor::Breve),
            from_knot: 1.0,
            to_knot: 1.0,
            row_labels: vec!["r0".into(), "r1".into()],
            col_labels: vec!["x".into(), "y".into()],
            matrix: DMatrix::from_row_slice(2, 2, &[0.3, 0.4, 0.6, 0.8]),
        };
        let (e, b) = be_factor(&blk);
        assert_eq!(b.matrix.nrows(), 1);
        assert!(linalg::max_abs(&(&e.matrix * &b.matrix - &blk.matrix)) < 1e-12);
        let t = blk.to_table("LS");
        assert_eq!(serde_json::to_value(&t).unwrap()["kind"], "c");
    }
}
