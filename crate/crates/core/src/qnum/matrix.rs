//! Exact determinants over ℚ(t).

use super::QRat;

/// Determinant by Gaussian elimination, pivoting on the first nonzero entry
/// of each column. The empty matrix has determinant 1.
pub fn det(m: &[Vec<QRat>]) -> QRat {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "det of a non-square matrix");
    let mut a: Vec<Vec<QRat>> = m.to_vec();
    let mut acc = QRat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return QRat::zero();
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        let piv = a[c][c].clone();
        acc = &acc * &piv;
        let inv = piv.recip().expect("pivot is nonzero");
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c + 1..n {
                if a[c][k].is_zero() {
                    continue;
                }
                let d = &f * &a[c][k];
                a[r][k] = &a[r][k] - &d;
            }
            a[r][c] = QRat::zero();
        }
    }
    acc
}

/// Laplace expansion along the first row; exponential, for cross-checks.
pub fn det_cofactor(m: &[Vec<QRat>]) -> QRat {
    let n = m.len();
    if n == 0 {
        return QRat::one();
    }
    let mut total = QRat::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<QRat>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = &m[0][j] * &det_cofactor(&minor);
        total = if j % 2 == 0 { &total + &t } else { &total - &t };
    }
    total
}
