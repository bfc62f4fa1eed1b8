//! Gram matrices, projections and orthonormalization over lists of
//! piecewise polynomials, plus small dense-matrix helpers.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::piecewise::PiecewisePoly;

/// `(i, j) ↦ ⟨F_i, G_j⟩`.
pub fn gram(f: &[PiecewisePoly], g: &[PiecewisePoly]) -> DMatrix<f64> {
    DMatrix::from_fn(f.len(), g.len(), |i, j| f[i].inner_product(&g[j]))
}

/// Largest absolute entry, 0 for an empty matrix.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// `max |⟨F,F⟩ - I|`.
pub fn orthonormality_error(f: &[PiecewisePoly]) -> f64 {
    let g = gram(f, f);
    let n = g.nrows();
    max_abs(&(g - DMatrix::identity(n, n)))
}

/// `f - Σ ⟨f, q⟩ q` for an orthonormal list `q`, applied twice to keep the
/// result orthogonal to working precision.
pub fn residual_orthonormal(f: &PiecewisePoly, q: &[PiecewisePoly]) -> PiecewisePoly {
    if q.is_empty() {
        return f.clone();
    }
    let mut r = f.clone();
    for _ in 0..2 {
        let mut coeffs = vec![1.0];
        let mut fns = vec![&r];
        let c: Vec<f64> = q.iter().map(|e| -e.inner_product(&r)).collect();
        coeffs.extend(c);
        fns.extend(q.iter());
        r = PiecewisePoly::linear_combination(&coeffs, &fns);
    }
    r
}

/// Orthogonal projection of `f` onto the span of an orthonormal list.
pub fn project_orthonormal(f: &PiecewisePoly, q: &[PiecewisePoly]) -> PiecewisePoly {
    f.sub(&residual_orthonormal(f, q))
}

/// Multiplies the function by ±1 so that its first significant coefficient
/// (pieces left to right, Legendre coefficients of the local coordinate,
/// low to high degree) is nonnegative.
pub fn fix_sign(f: PiecewisePoly) -> PiecewisePoly {
    let scale = f
        .pieces()
        .iter()
        .flat_map(|p| p.legendre())
        .fold(0.0_f64, |m, c| m.max(c.abs()));
    let first = f
        .pieces()
        .iter()
        .flat_map(|p| p.legendre())
        .find(|c| c.abs() > 1e-9 * scale)
        .copied();
    match first {
        Some(c) if c < 0.0 => f.scale(-1.0),
        _ => f,
    }
}

fn gram_schmidt(fs: &[PiecewisePoly], drop: impl Fn(f64, f64) -> bool) -> Vec<PiecewisePoly> {
    let mut out: Vec<PiecewisePoly> = Vec::new();
    for f in fs {
        let input = f.norm();
        if input == 0.0 {
            continue;
        }
        let r = residual_orthonormal(f, &out);
        let n = r.norm();
        if drop(n, input) {
            continue;
        }
        out.push(fix_sign(r.scale(1.0 / n)));
    }
    out
}

/// Gram-Schmidt with re-orthogonalization. A vector is dropped when its
/// residual norm is below `tol` times its own norm.
pub fn orthonormalize(fs: &[PiecewisePoly], tol: f64) -> Vec<PiecewisePoly> {
    gram_schmidt(fs, |res, input| res < tol * input)
}

/// Like [`orthonormalize`] but with an absolute drop threshold, for lists
/// whose members come from unit-norm sources so that residual size is
/// meaningful on its own.
pub fn orthonormal_span(fs: &[PiecewisePoly], abs_tol: f64) -> Vec<PiecewisePoly> {
    gram_schmidt(fs, |res, _| res < abs_tol)
}

/// Orthogonal projection onto `span F`; errors if `F` is numerically
/// dependent at relative tolerance `1e-9`.
pub fn project(f: &PiecewisePoly, fs: &[PiecewisePoly]) -> Result<PiecewisePoly> {
    let q = independent_orthonormal(fs)?;
    Ok(project_orthonormal(f, &q))
}

/// `f - P_{span F} f`.
pub fn residual(f: &PiecewisePoly, fs: &[PiecewisePoly]) -> Result<PiecewisePoly> {
    let q = independent_orthonormal(fs)?;
    Ok(residual_orthonormal(f, &q))
}

fn independent_orthonormal(fs: &[PiecewisePoly]) -> Result<Vec<PiecewisePoly>> {
    let mut out: Vec<PiecewisePoly> = Vec::with_capacity(fs.len());
    for (index, f) in fs.iter().enumerate() {
        let input = f.norm();
        let r = residual_orthonormal(f, &out);
        let n = r.norm();
        if input == 0.0 || n < 1e-9 * input {
            return Err(Error::DependentSet { index, residual: n });
        }
        out.push(r.scale(1.0 / n));
    }
    Ok(out)
}

/// Largest relative residual `‖(I - P_Q) f‖ / ‖f‖` over `fs`, for an
/// orthonormal `q`.
pub fn span_residual(fs: &[PiecewisePoly], q: &[PiecewisePoly]) -> f64 {
    fs.iter()
        .filter(|f| !f.is_zero())
        .map(|f| residual_orthonormal(f, q).norm() / f.norm())
        .fold(0.0, f64::max)
}

/// Symmetric span comparison of two lists (each orthonormalized first).
pub fn span_distance(a: &[PiecewisePoly], b: &[PiecewisePoly]) -> f64 {
    let qa = orthonormalize(a, 1e-9);
    let qb = orthonormalize(b, 1e-9);
    span_residual(a, &qb).max(span_residual(b, &qa))
}

/// Cosines of the principal angles between the spans of two orthonormal
/// lists, in decreasing order.
pub fn principal_cosines(q0: &[PiecewisePoly], q1: &[PiecewisePoly]) -> Vec<f64> {
    if q0.is_empty() || q1.is_empty() {
        return Vec::new();
    }
    let g = gram(q0, q1);
    let mut s: Vec<f64> = g.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Dimension of the intersection of two spans given by orthonormal lists:
/// the number of principal cosines above `1 - 1e-9`.
pub fn intersection_dim(q0: &[PiecewisePoly], q1: &[PiecewisePoly]) -> usize {
    principal_cosines(q0, q1).iter().filter(|&&c| c > 1.0 - 1e-9).count()
}

/// Orthonormal basis of the row space, by Gram-Schmidt on the rows with
/// re-orthogonalization. Rows whose residual falls below `tol` times the
/// largest row norm are dropped.
pub fn orthonormal_row_basis(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let scale = (0..m.nrows()).map(|i| m.row(i).norm()).fold(0.0, f64::max);
    let mut rows: Vec<DVector<f64>> = Vec::new();
    for i in 0..m.nrows() {
        let mut v: DVector<f64> = m.row(i).transpose();
        for _ in 0..2 {
            for r in &rows {
                let c = r.dot(&v);
                v -= r * c;
            }
        }
        let n = v.norm();
        if n > tol * scale && n > 0.0 {
            rows.push(v / n);
        }
    }
    stack_rows(&rows, m.ncols())
}

fn stack_rows(rows: &[DVector<f64>], ncols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j])
}

/// Extends a matrix with orthonormal rows to an `n × n` orthogonal matrix by
/// Gram-Schmidt on `e_1, …, e_n` in order, skipping dependent vectors.
pub fn complete_to_orthogonal(m: &DMatrix<f64>, n: usize) -> Result<DMatrix<f64>> {
    if m.ncols() != n || m.nrows() > n {
        return Err(Error::Contract(format!(
            "cannot complete a {}x{} matrix to size {n}",
            m.nrows(),
            m.ncols()
        )));
    }
    let k = m.nrows();
    let dev = max_abs(&(m * m.transpose() - DMatrix::identity(k, k)));
    if dev > 1e-9 {
        return Err(Error::Contract(format!("rows are not orthonormal (deviation {dev:.3e})")));
    }
    let mut rows: Vec<DVector<f64>> = (0..k).map(|i| m.row(i).transpose()).collect();
    for i in 0..n {
        if rows.len() == n {
            break;
        }
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        for _ in 0..2 {
            for r in &rows {
                let c = r.dot(&v);
                v -= r * c;
            }
        }
        let norm = v.norm();
        if norm > 1e-9 {
            rows.push(v / norm);
        }
    }
    if rows.len() != n {
        return Err(Error::Consistency("orthogonal completion fell short".into()));
    }
    Ok(stack_rows(&rows, n))
}

/// Least-squares `e` with `e·b ≈ c` for `b` with orthonormal rows: `e = c·bᵀ`.
pub fn factor_through_rows(c: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    c * b.transpose()
}

/// Row-major nested vectors, the JSON layout for matrices.
pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

pub fn matrix_to_json(m: &DMatrix<f64>) -> serde_json::Value {
    serde_json::json!(matrix_rows(m))
}

pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for row in matrix_rows(m) {
        let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
