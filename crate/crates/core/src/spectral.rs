//! Dense symmetric eigensolving (cyclic Jacobi), spectra, interlacing,
//! quotient matrices and the plex-order bound.

use crate::error::{input_err, resource_err, Result};
use crate::graph::{Graph, VertexSet};

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds from `f(i, j)`; only `i <= j` is sampled, so the result is
    /// symmetric by construction.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> SymMatrix {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        SymMatrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<SymMatrix> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return input_err("matrix rows must be square");
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return input_err(format!("matrix not symmetric at ({i},{j})"));
                }
            }
        }
        Ok(SymMatrix::from_fn(dim, |i, j| rows[i][j]))
    }

    pub fn adjacency(g: &Graph) -> SymMatrix {
        SymMatrix::from_fn(g.n(), |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// All eigenvalues in descending order, by cyclic Jacobi rotations.
    /// Converges when the off-diagonal Frobenius norm drops below
    /// `1e-12` times the Frobenius norm of the input; at most 100 sweeps.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if self.dim == 0 {
            return input_err("empty matrix");
        }
        if self.data.iter().any(|v| !v.is_finite()) {
            return input_err("matrix entries must be finite");
        }
        let n = self.dim;
        let mut a = self.data.clone();
        let norm: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
        let target = 1e-12 * norm;
        let mut converged = norm == 0.0;
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    off += 2.0 * a[i * n + j] * a[i * n + j];
                }
            }
            if off.sqrt() <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // rotate rows p and q
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    // rotate columns p and q
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                }
            }
        }
        if !converged {
            // re-check after the final sweep
            let mut off = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    off += 2.0 * a[i * n + j] * a[i * n + j];
                }
            }
            if off.sqrt() > target {
                return resource_err("Jacobi did not converge within 100 sweeps");
            }
        }
        let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
        eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        Ok(eigs)
    }

    pub fn lambda_min(&self) -> Result<f64> {
        Ok(*self.eigenvalues()?.last().unwrap())
    }
}

/// Multiset of (eigenvalue, multiplicity) pairs, sorted descending.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Spectrum {
    pub pairs: Vec<(f64, usize)>,
}

impl Spectrum {
    /// Groups a descending eigenvalue list; the representative of each
    /// group is the mean of its members.
    pub fn group(eigs: &[f64], tol: f64) -> Result<Spectrum> {
        if tol <= 0.0 {
            return input_err("grouping tolerance must be positive");
        }
        let mut pairs: Vec<(f64, usize)> = Vec::new();
        let mut group: Vec<f64> = Vec::new();
        for &e in eigs {
            if let Some(&last) = group.last() {
                if (last - e).abs() > tol {
                    let mean = group.iter().sum::<f64>() / group.len() as f64;
                    pairs.push((mean, group.len()));
                    group.clear();
                }
            }
            group.push(e);
        }
        if !group.is_empty() {
            let mean = group.iter().sum::<f64>() / group.len() as f64;
            pairs.push((mean, group.len()));
        }
        Ok(Spectrum { pairs })
    }

    pub fn dim(&self) -> usize {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    pub fn lambda_min(&self) -> f64 {
        self.pairs.last().map(|&(v, _)| v).unwrap_or(f64::NAN)
    }

    /// Flat descending eigenvalue list with multiplicities expanded.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim());
        for &(v, m) in &self.pairs {
            out.extend(std::iter::repeat(v).take(m));
        }
        out
    }
}

pub const DEFAULT_GROUP_TOL: f64 = 1e-6;

/// Spectrum of the adjacency matrix of `g`.
pub fn spectrum(g: &Graph, group_tol: f64) -> Result<Spectrum> {
    let eigs = SymMatrix::adjacency(g).eigenvalues()?;
    Spectrum::group(&eigs, group_tol)
}

/// True iff the sorted eigenvalue lists of `g1` and `g2` agree elementwise
/// within `tol`.
pub fn is_cospectral(g1: &Graph, g2: &Graph, tol: f64) -> Result<bool> {
    if tol <= 0.0 {
        return input_err("tolerance must be positive");
    }
    if g1.n() != g2.n() {
        return input_err("cospectrality comparison requires equal vertex counts");
    }
    let e1 = SymMatrix::adjacency(g1).eigenvalues()?;
    let e2 = SymMatrix::adjacency(g2).eigenvalues()?;
    Ok(e1.iter().zip(&e2).all(|(a, b)| (a - b).abs() <= tol))
}

fn validate_partition(g: &Graph, cells: &[VertexSet]) -> Result<()> {
    let mut seen = vec![false; g.n()];
    for cell in cells {
        if cell.is_empty() {
            return input_err("partition cells must be nonempty");
        }
        for v in cell.iter() {
            if v >= g.n() {
                return input_err(format!("vertex {v} out of range"));
            }
            if seen[v] {
                return input_err(format!("vertex {v} appears in two cells"));
            }
            seen[v] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return input_err("cells do not cover all vertices");
    }
    Ok(())
}

fn cross_edge_counts(g: &Graph, cells: &[VertexSet]) -> Vec<Vec<usize>> {
    let r = cells.len();
    let mut cell_of = vec![0usize; g.n()];
    for (i, cell) in cells.iter().enumerate() {
        for v in cell.iter() {
            cell_of[v] = i;
        }
    }
    // m[i][j] = number of edge endpoints from cell i into cell j
    // (for i == j this is twice the internal edge count)
    let mut m = vec![vec![0usize; r]; r];
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            m[cell_of[u]][cell_of[v]] += 1;
        }
    }
    m
}

/// Quotient matrix `B` with `B[i][j]` the average number of neighbors in
/// cell `j` of vertices in cell `i`. Generally nonsymmetric.
pub fn quotient_matrix(g: &Graph, cells: &[VertexSet]) -> Result<Vec<Vec<f64>>> {
    validate_partition(g, cells)?;
    let m = cross_edge_counts(g, cells);
    let r = cells.len();
    let mut b = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in 0..r {
            b[i][j] = m[i][j] as f64 / cells[i].len() as f64;
        }
    }
    Ok(b)
}

/// Eigenvalues of the quotient matrix, via the symmetric similarity
/// `D^{1/2} B D^{-1/2}` with `D` the diagonal of cell sizes. Real by
/// construction; descending order.
pub fn quotient_eigenvalues(g: &Graph, cells: &[VertexSet]) -> Result<Vec<f64>> {
    validate_partition(g, cells)?;
    let m = cross_edge_counts(g, cells);
    let r = cells.len();
    let sym = SymMatrix::from_fn(r, |i, j| {
        m[i][j] as f64 / ((cells[i].len() * cells[j].len()) as f64).sqrt()
    });
    sym.eigenvalues()
}

/// Interlacing check: with `sub` of length m and `sup` of length n >= m,
/// both descending, requires
/// `sup[n-m+i] <= sub[i] <= sup[i]` for all i, within `tol`.
pub fn interlaces(sub_eigs: &[f64], sup_eigs: &[f64], tol: f64) -> Result<bool> {
    let (m, n) = (sub_eigs.len(), sup_eigs.len());
    if m > n {
        return input_err("sub spectrum longer than sup spectrum");
    }
    let sorted_desc = |v: &[f64]| v.windows(2).all(|w| w[0] >= w[1]);
    if !sorted_desc(sub_eigs) || !sorted_desc(sup_eigs) {
        return input_err("eigenvalue lists must be sorted descending");
    }
    for i in 0..m {
        if sub_eigs[i] > sup_eigs[i] + tol || sub_eigs[i] < sup_eigs[n - m + i] - tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Upper bound `n(p+1+theta2)/(n-k+theta2)` on the order of a (p+1)-plex
/// in a k-regular graph on n vertices with second-largest eigenvalue theta2.
pub fn plex_bound(n: usize, k: usize, theta2: f64, p: usize) -> Result<f64> {
    if n <= k || k < 1 {
        return input_err("need n > k >= 1");
    }
    let denom = (n - k) as f64 + theta2;
    if denom <= 0.0 {
        return input_err("nonpositive denominator n - k + theta2");
    }
    Ok(n as f64 * (p as f64 + 1.0 + theta2) / denom)
}

/// Average local degree of a connected regular graph with exactly four
/// distinct eigenvalues `k > l1 > l2 > l3`, from the spectrum alone.
pub fn avg_local_degree_from_spectrum(n: usize, k: usize, l1: f64, l2: f64, l3: f64) -> Result<f64> {
    if k == 0 {
        return input_err("degree k must be positive");
    }
    let kf = k as f64;
    let nf = n as f64;
    Ok(l1 + l2 + l3
        + l1 * l2 * l3 / kf
        + (kf - l1) * (kf - l2) * (kf - l3) / (nf * kf))
}
