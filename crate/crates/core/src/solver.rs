//! Sparse symmetric direct solver: reverse Cuthill-McKee ordering followed by a
//! profile (skyline) LDL^T factorization, the classic column-sweep scheme.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Symmetric matrix assembled from triplets; only one triangle is stored.
#[derive(Debug, Clone)]
pub struct SparseSym {
    pub n: usize,
    /// (row, col, value) with row <= col.
    triplets: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    pub fn new(n: usize) -> Self {
        SparseSym { n, triplets: Vec::new() }
    }

    /// Accumulates `v` at (i, j); the symmetric mirror is implied.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.n && j < self.n);
        if v == 0.0 {
            return;
        }
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.triplets.push((a, b, v));
    }

    /// Row sums of |A| |x|, the scale of the float noise floor of `A x`.
    pub fn abs_mul_vec(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut y = DVector::zeros(self.n);
        for &(i, j, v) in &self.triplets {
            y[i] += v.abs() * x[j].abs();
            if i != j {
                y[j] += v.abs() * x[i].abs();
            }
        }
        y
    }

    /// Symmetric matrix-vector product directly from the triplets.
    pub fn mul_vec(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut y = DVector::zeros(self.n);
        for &(i, j, v) in &self.triplets {
            y[i] += v * x[j];
            if i != j {
                y[j] += v * x[i];
            }
        }
        y
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for &(i, j, v) in &self.triplets {
            m[(i, j)] += v;
            if i != j {
                m[(j, i)] += v;
            }
        }
        m
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j, _) in &self.triplets {
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }
}

/// Reverse Cuthill-McKee permutation: `perm[new] = old`.
fn reverse_cuthill_mckee(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let degree = |v: usize| adj[v].len();

    let bfs = |start: usize, seen: &mut Vec<bool>, out: &mut Vec<usize>| {
        let mark = out.len();
        out.push(start);
        seen[start] = true;
        let mut head = mark;
        while head < out.len() {
            let v = out[head];
            head += 1;
            let mut next: Vec<usize> =
                adj[v].iter().copied().filter(|&u| !seen[u]).collect();
            next.sort_by_key(|&u| (degree(u), u));
            for u in next {
                if !seen[u] {
                    seen[u] = true;
                    out.push(u);
                }
            }
        }
    };

    while order.len() < n {
        // min-degree unvisited start, then one BFS hop to a peripheral node
        let start = (0..n)
            .filter(|&v| !visited[v])
            .min_by_key(|&v| (degree(v), v))
            .unwrap();
        let mut probe = Vec::new();
        let mut seen = visited.clone();
        bfs(start, &mut seen, &mut probe);
        let far = *probe.last().unwrap();
        bfs(far, &mut visited, &mut order);
    }
    order.reverse();
    order
}

/// Profile LDL^T factor of a permuted symmetric matrix.
#[derive(Debug)]
pub struct SkylineFactor {
    n: usize,
    /// perm[new] = old
    perm: Vec<usize>,
    /// first stored row per column
    first: Vec<usize>,
    /// column start offsets into `vals`
    colptr: Vec<usize>,
    /// strict upper entries of the unit factor, packed per column
    vals: Vec<f64>,
    diag: Vec<f64>,
}

/// Factorizes an SPD matrix; fails on a non-positive pivot, reporting the
/// original dof index and the pivot value.
pub fn factorize(a: &SparseSym) -> Result<SkylineFactor> {
    let n = a.n;
    let adj = a.adjacency();
    let perm = reverse_cuthill_mckee(&adj);
    let mut iperm = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        iperm[old] = new;
    }

    // column profiles in the permuted ordering
    let mut first: Vec<usize> = (0..n).collect();
    for &(i, j, _) in &a.triplets {
        let (pi, pj) = (iperm[i], iperm[j]);
        let (r, c) = if pi <= pj { (pi, pj) } else { (pj, pi) };
        if r < first[c] {
            first[c] = r;
        }
    }
    let mut colptr = vec![0usize; n + 1];
    for j in 0..n {
        colptr[j + 1] = colptr[j] + (j - first[j]);
    }
    let mut vals = vec![0.0; colptr[n]];
    let mut diag = vec![0.0; n];
    for &(i, j, v) in &a.triplets {
        let (pi, pj) = (iperm[i], iperm[j]);
        let (r, c) = if pi <= pj { (pi, pj) } else { (pj, pi) };
        if r == c {
            diag[c] += v;
        } else {
            vals[colptr[c] + (r - first[c])] += v;
        }
    }

    // column-sweep factorization in place
    let mut g = vec![0.0; n];
    for j in 0..n {
        let fj = first[j];
        for i in fj..j {
            let fi = first[i];
            let mx = fi.max(fj);
            let mut s = vals[colptr[j] + (i - first[j])];
            if mx < i {
                let ui = &vals[colptr[i] + (mx - fi)..colptr[i] + (i - fi)];
                let gj = &g[mx..i];
                let mut acc = 0.0;
                for (u, gv) in ui.iter().zip(gj) {
                    acc += u * gv;
                }
                s -= acc;
            }
            g[i] = s;
        }
        let mut dj = diag[j];
        for i in fj..j {
            let u = g[i] / diag[i];
            dj -= g[i] * u;
            vals[colptr[j] + (i - fj)] = u;
            g[i] = 0.0;
        }
        if !(dj > 0.0) || !dj.is_finite() {
            return Err(Error::Solver { dof: perm[j], pivot: dj });
        }
        diag[j] = dj;
    }
    // diag currently holds D after the sweep (overwritten column by column)
    Ok(SkylineFactor { n, perm, first, colptr, vals, diag })
}

impl SkylineFactor {
    /// Smallest pivot of the factorization.
    pub fn min_pivot(&self) -> f64 {
        self.diag.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn solve(&self, b: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let mut y = DVector::zeros(n);
        for j in 0..n {
            y[j] = b[self.perm[j]];
        }
        // forward: U^T z = Pb
        for j in 0..n {
            let fj = self.first[j];
            let mut s = y[j];
            for i in fj..j {
                s -= self.vals[self.colptr[j] + (i - fj)] * y[i];
            }
            y[j] = s;
        }
        for j in 0..n {
            y[j] /= self.diag[j];
        }
        // backward: U x = z
        for j in (0..n).rev() {
            let fj = self.first[j];
            let xj = y[j];
            for i in fj..j {
                y[i] -= self.vals[self.colptr[j] + (i - fj)] * xj;
            }
        }
        let mut x = DVector::zeros(n);
        for j in 0..n {
            x[self.perm[j]] = y[j];
        }
        x
    }
}

/// Convenience: factorize and solve in one call.
pub fn solve_spd(a: &SparseSym, b: &DVector<f64>) -> Result<DVector<f64>> {
    Ok(factorize(a)?.solve(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_spd(n: usize, rng: &mut ChaCha8Rng) -> (SparseSym, DMatrix<f64>) {
        // banded random SPD: A = B^T B + n I on a band
        let mut dense = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i.saturating_sub(3)..(i + 4).min(n) {
                let v = rng.random_range(-1.0..1.0);
                dense[(i, j)] += v;
            }
        }
        let spd = dense.transpose() * &dense + DMatrix::identity(n, n) * n as f64;
        let mut sparse = SparseSym::new(n);
        for i in 0..n {
            for j in i..n {
                if spd[(i, j)] != 0.0 {
                    sparse.add(i, j, spd[(i, j)]);
                }
            }
        }
        (sparse, spd)
    }

    #[test]
    fn matches_dense_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [1usize, 2, 5, 30, 120] {
            let (sparse, dense) = random_spd(n, &mut rng);
            let b = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
            let x = solve_spd(&sparse, &b).unwrap();
            let r = &dense * &x - &b;
            assert!(r.norm() <= 1e-9 * b.norm().max(1.0), "residual {}", r.norm());
        }
    }

    #[test]
    fn accumulates_duplicate_triplets() {
        let mut a = SparseSym::new(2);
        a.add(0, 0, 1.0);
        a.add(0, 0, 1.0);
        a.add(0, 1, 0.5);
        a.add(1, 0, 0.5); // mirrored entry
        a.add(1, 1, 3.0);
        let b = DVector::from_vec(vec![1.0, 2.0]);
        let x = solve_spd(&a, &b).unwrap();
        let dense = a.to_dense();
        assert!((dense * &x - b).norm() < 1e-12);
    }

    #[test]
    fn singular_matrix_reports_pivot() {
        let mut a = SparseSym::new(3);
        a.add(0, 0, 1.0);
        a.add(1, 1, 1.0);
        // row 2 left empty -> zero pivot
        match factorize(&a) {
            Err(Error::Solver { dof, pivot }) => {
                assert_eq!(dof, 2);
                assert_eq!(pivot, 0.0);
            }
            other => panic!("expected solver error, got {other:?}"),
        }
    }

    #[test]
    fn indefinite_matrix_is_rejected() {
        let mut a = SparseSym::new(2);
        a.add(0, 0, 1.0);
        a.add(0, 1, 3.0);
        a.add(1, 1, 1.0);
        assert!(factorize(&a).is_err());
    }

    #[test]
    fn rcm_handles_disconnected_blocks() {
        let mut a = SparseSym::new(4);
        a.add(0, 0, 2.0);
        a.add(0, 2, 1.0);
        a.add(2, 2, 2.0);
        a.add(1, 1, 2.0);
        a.add(1, 3, 1.0);
        a.add(3, 3, 2.0);
        let b = DVector::from_vec(vec![1.0, 2.0, 3.0, 4.0]);
        let x = solve_spd(&a, &b).unwrap();
        assert!((a.to_dense() * &x - &b).norm() < 1e-12);
    }
}
