//! Exact linear algebra: fraction-free determinants and Gaussian elimination.

use crate::ring::{Domain, Field};

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det<D: Domain>(mut m: Vec<Vec<D>>) -> D {
    let n = m.len();
    if n == 0 {
        return D::one();
    }
    let mut negate = false;
    let mut prev = D::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return D::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = D::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.negated()
    } else {
        d
    }
}

/// Solves `rows · v = rhs` over a field. Returns one solution (free
/// variables set to zero) or `None` when the system is inconsistent.
pub fn solve<F: Field>(rows: &[Vec<F>], rhs: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut aug: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.resize(ncols, F::zero());
            row.push(b.clone());
            row
        })
        .collect();
    let nrows = aug.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][col].inverse();
        for j in col..=ncols {
            aug[r][j] = aug[r][j].times(&inv);
        }
        for i in 0..nrows {
            if i == r || aug[i][col].is_zero() {
                continue;
            }
            let f = aug[i][col].clone();
            for j in col..=ncols {
                if !aug[r][j].is_zero() {
                    aug[i][j] = aug[i][j].minus(&f.times(&aug[r][j]));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![F::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = aug[i][ncols].clone();
    }
    Some(sol)
}
