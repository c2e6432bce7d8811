//! Numeric oracles written from the definitions, independent of the
//! symbolic engine.

pub fn pfaffian(m: &[Vec<f64>]) -> f64 {
    let k = m.len();
    if k == 0 {
        return 1.0;
    }
    let mut total = 0.0;
    for j in 1..k {
        if m[0][j] == 0.0 {
            continue;
        }
        let keep: Vec<usize> = (1..k).filter(|&x| x != j).collect();
        let minor: Vec<Vec<f64>> = keep.iter().map(|&a| keep.iter().map(|&b| m[a][b]).collect()).collect();
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * m[0][j] * pfaffian(&minor);
    }
    total
}

/// Top coefficient of α∧(dα)ⁿ from α alone: dα by central differences, then
/// n!Σₖ(−1)ᵏαₖ Pf(dα without row and column k).
pub fn top_coefficient_oracle(alpha: &dyn Fn(&[f64]) -> Vec<f64>, p: &[f64]) -> f64 {
    let dim = p.len();
    let h = 1e-6;
    let mut jac = vec![vec![0.0; dim]; dim];
    for k in 0..dim {
        let (mut a, mut b) = (p.to_vec(), p.to_vec());
        a[k] += h;
        b[k] -= h;
        let (fa, fb) = (alpha(&a), alpha(&b));
        for l in 0..dim {
            jac[k][l] = (fa[l] - fb[l]) / (2.0 * h);
        }
    }
    let w: Vec<Vec<f64>> = (0..dim).map(|k| (0..dim).map(|l| jac[k][l] - jac[l][k]).collect()).collect();
    let a = alpha(p);
    let n = (dim - 1) / 2;
    let mut total = 0.0;
    for k in 0..dim {
        let keep: Vec<usize> = (0..dim).filter(|&x| x != k).collect();
        let minor: Vec<Vec<f64>> = keep.iter().map(|&x| keep.iter().map(|&y| w[x][y]).collect()).collect();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * a[k] * pfaffian(&minor);
    }
    (1..=n).product::<usize>() as f64 * total
}

pub fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d
}

pub fn sin_gram(s: &[f64]) -> f64 {
    let n = s.len();
    det((0..n).map(|l| (0..n).map(|k| if k == l { 1.0 } else { s[k].sin() * s[l].sin() }).collect()).collect())
}
