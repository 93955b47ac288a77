//! Exact linear systems over a field, with inconsistency certificates.

use crate::matrix::Mat;
use crate::scalars::{ExtScalar, FieldScalar};

#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<F> {
    /// `A·X = B` holds for `X = particular + Σ t_k·kernel[k]` (kernel vectors
    /// added to any column).
    Solved {
        particular: Mat<F>,
        kernel: Vec<Vec<F>>,
    },
    /// A row combination `y` with `yᵀA = 0` but `yᵀB[:, column] ≠ 0`.
    Inconsistent { combination: Vec<F>, column: usize },
}

impl<F> LinearSolution<F> {
    pub fn is_consistent(&self) -> bool {
        matches!(self, LinearSolution::Solved { .. })
    }
}

/// Solves `A·X = B` exactly. `A` is `m×n`, `B` is `m×k`.
pub fn solve_linear<F: FieldScalar>(a: &Mat<F>, b: &Mat<F>) -> LinearSolution<F> {
    let (m, n, k) = (a.rows(), a.cols(), b.cols());
    assert_eq!(b.rows(), m, "right-hand side has wrong height");
    // working rows: [A | B | I_m]
    let width = n + k + m;
    let mut w: Vec<Vec<F>> = (0..m)
        .map(|r| {
            let mut row = a.row(r);
            row.extend(b.row(r));
            row.extend((0..m).map(|c| if c == r { F::one() } else { F::zero() }));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..n {
        let Some(p) = (prow..m).find(|&r| !w[r][c].is_zero()) else {
            continue;
        };
        w.swap(prow, p);
        let inv = w[prow][c].inv().expect("nonzero pivot");
        for x in w[prow].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m {
            if r == prow || w[r][c].is_zero() {
                continue;
            }
            let f = w[r][c].clone();
            for j in 0..width {
                let v = w[r][j].clone() - f.clone() * w[prow][j].clone();
                w[r][j] = v;
            }
        }
        pivots.push(c);
        prow += 1;
        if prow == m {
            break;
        }
    }
    for row in w.iter().skip(prow) {
        if let Some(col) = (0..k).find(|&j| !row[n + j].is_zero()) {
            return LinearSolution::Inconsistent {
                combination: row[n + k..].to_vec(),
                column: col,
            };
        }
    }
    let mut particular = Mat::zeros(n, k);
    for (i, &c) in pivots.iter().enumerate() {
        for j in 0..k {
            particular.set(c, j, w[i][n + j].clone());
        }
    }
    let mut kernel = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -w[i][free].clone();
        }
        kernel.push(v);
    }
    LinearSolution::Solved { particular, kernel }
}

/// Linear solving over `Q(i, √2)`.
pub fn ext_solve_linear(a: &Mat<ExtScalar>, b: &Mat<ExtScalar>) -> LinearSolution<ExtScalar> {
    solve_linear(a, b)
}
