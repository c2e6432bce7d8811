//! Small dense helpers for numeric checks.

use alloc::vec;
use alloc::vec::Vec;

/// Basis of the kernel of `m` (rows × cols). Pivots below `rel_tol` times
/// the largest entry count as zero; an all-zero matrix has full kernel.
pub fn null_space(m: &[Vec<f64>], cols: usize, rel_tol: f64) -> Vec<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let scale = a.iter().flatten().fold(0.0f64, |s, v| s.max(libm::fabs(*v)));
    let tol = rel_tol * scale;
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, val) = (r..rows)
            .map(|i| (i, libm::fabs(a[i][c])))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol || scale == 0.0 {
            continue;
        }
        a.swap(r, best);
        let p = a[r][c];
        for v in a[r].iter_mut() {
            *v /= p;
        }
        for i in 0..rows {
            if i != r {
                let f = a[i][c];
                if f != 0.0 {
                    for j in 0..cols {
                        a[i][j] -= f * a[r][j];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0.0; cols];
        v[free] = 1.0;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Rank of `m` with the same tolerance convention.
pub fn rank(m: &[Vec<f64>], cols: usize, rel_tol: f64) -> usize {
    cols - null_space(m, cols, rel_tol).len()
}
