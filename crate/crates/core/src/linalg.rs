//! Dense exact linear algebra over the rationals and over the integers.

use crate::rat::{dot, int, is_zero, QVec, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<QVec>;

pub fn transpose(m: &[QVec], ncols: usize) -> Mat {
    (0..ncols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[QVec], v: &[Rat]) -> QVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &[QVec], b: &[QVec]) -> Mat {
    let n = b.first().map_or(0, |r| r.len());
    let bt = transpose(b, n);
    a.iter().map(|row| bt.iter().map(|col| dot(row, col)).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| crate::rat::unit(n, i)).collect()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(m: &[QVec], ncols: usize) -> (Mat, Vec<usize>) {
    let mut a: Mat = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rat::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &[QVec], ncols: usize) -> usize {
    rref(m, ncols).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, in increasing column order.
pub fn nullspace(m: &[QVec], ncols: usize) -> Mat {
    let (r, piv) = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &p) in r.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Particular solution of `m x = b` with all free variables zero.
pub fn solve(m: &[QVec], b: &[Rat], ncols: usize) -> Option<QVec> {
    let aug: Mat = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, piv) = rref(&aug, ncols + 1);
    if piv.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &p) in r.iter().zip(&piv) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn det(m: &[QVec]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let prow = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &prow[c];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

pub fn inverse(m: &[QVec]) -> Option<Mat> {
    let n = m.len();
    let aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(crate::rat::unit(n, i));
            r
        })
        .collect();
    let (r, piv) = rref(&aug, 2 * n);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Independent rows spanning the same space as `vs` (a subset, in order).
pub fn independent_subset(vs: &[QVec], ncols: usize) -> Mat {
    let mut kept: Mat = Vec::new();
    for v in vs {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if rank(&trial, ncols) > kept.len() {
            kept = trial;
        }
    }
    kept
}

/// Component of `v` orthogonal (standard dot product) to the span of `basis`.
pub fn reject(v: &[Rat], basis: &[QVec]) -> QVec {
    if basis.is_empty() {
        return v.to_vec();
    }
    let b = independent_subset(basis, v.len());
    let gram: Mat = b.iter().map(|x| b.iter().map(|y| dot(x, y)).collect()).collect();
    let rhs: QVec = b.iter().map(|x| dot(x, v)).collect();
    let c = solve(&gram, &rhs, b.len()).expect("gram of independent rows is invertible");
    let mut out = v.to_vec();
    for (ci, bi) in c.iter().zip(&b) {
        for (o, y) in out.iter_mut().zip(bi) {
            *o -= ci * y;
        }
    }
    out
}

pub fn in_span(v: &[Rat], basis: &[QVec]) -> bool {
    is_zero(&reject(v, basis))
}

/// Row echelon form over the integers with a unimodular transform.
/// Returns `(h, u)` where the rows of `h` are a Z-basis of the row lattice of `gens`
/// and `h[i] = sum_j u[i][j] * gens[j]`.
pub fn integer_row_basis(gens: &[Vec<BigInt>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = gens.len();
    let mut a: Vec<Vec<BigInt>> = gens.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let Some(p) = (r..m).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
            else {
                break;
            };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (ar, ur) = (a[r].clone(), u[r].clone());
                for (x, y) in a[i].iter_mut().zip(&ar) {
                    *x -= &q * y;
                }
                for (x, y) in u[i].iter_mut().zip(&ur) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (r..m).any(|i| !a[i][c].is_zero()) {
            r += 1;
        }
    }
    a.truncate(r);
    u.truncate(r);
    (a, u)
}

/// Integer coordinates of `x` in the independent integer rows `basis`, if any.
pub fn integer_coords(basis: &[Vec<BigInt>], x: &[Rat]) -> Option<Vec<BigInt>> {
    let n = x.len();
    let bq: Mat = basis.iter().map(|b| b.iter().map(|v| Rat::from_integer(v.clone())).collect()).collect();
    let bt = transpose(&bq, n);
    let c = solve(&bt, x, basis.len())?;
    if c.iter().all(|v| v.is_integer()) {
        Some(c.into_iter().map(|v| v.to_integer()).collect())
    } else {
        None
    }
}

pub fn to_bigint_vec(v: &[Rat]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

pub fn from_bigint_vec(v: &[BigInt]) -> QVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Rational `LDL^T` pivots of a symmetric matrix; `None` when a pivot vanishes.
pub fn ldl_pivots(g: &[QVec]) -> Option<Vec<Rat>> {
    let n = g.len();
    let mut a = g.to_vec();
    let mut piv = Vec::with_capacity(n);
    for k in 0..n {
        let p = a[k][k].clone();
        if p.is_zero() {
            return None;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
        piv.push(p);
    }
    Some(piv)
}

pub fn is_positive_definite(g: &[QVec]) -> bool {
    let n = g.len();
    let symmetric = (0..n).all(|i| (0..n).all(|j| g[i][j] == g[j][i]));
    symmetric && ldl_pivots(g).is_some_and(|p| p.iter().all(|x| x.is_positive()))
}

pub fn quad_form(g: &[QVec], v: &[Rat]) -> Rat {
    dot(v, &mat_vec(g, v))
}

pub fn int_mat(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, qvec};

    #[test]
    fn nullspace_and_solve() {
        let m = int_mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero(&mat_vec(&m, v)));
        }
        assert_eq!(solve(&m, &qvec(&[1, 2]), 3), Some(qvec(&[1, 0, 0])));
        assert_eq!(solve(&m, &qvec(&[1, 3]), 3), None);
    }

    #[test]
    fn det_and_inverse() {
        let m = int_mat(&[&[2, 1], &[1, 2]]);
        assert_eq!(det(&m), int(3));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(inv[0][1], frac(-1, 3));
        assert!(inverse(&int_mat(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn integer_basis_tracks_transform() {
        let gens: Vec<Vec<BigInt>> = [[4, 6], [6, 9], [2, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let (h, u) = integer_row_basis(&gens, 2);
        assert_eq!(h.len(), 2);
        for (hi, ui) in h.iter().zip(&u) {
            for c in 0..2 {
                let s: BigInt = ui.iter().zip(&gens).map(|(a, g)| a * &g[c]).sum();
                assert_eq!(s, hi[c]);
            }
        }
        // lattice generated is {(2a, 3b)} + (2,0)Z = 2Z x 3Z
        assert!(integer_coords(&h, &qvec(&[2, 3])).is_some());
        assert!(integer_coords(&h, &qvec(&[1, 3])).is_none());
    }

    #[test]
    fn positive_definite() {
        assert!(is_positive_definite(&int_mat(&[&[2, 1], &[1, 2]])));
        assert!(!is_positive_definite(&int_mat(&[&[1, 1], &[1, 1]])));
        assert!(!is_positive_definite(&int_mat(&[&[1, 2], &[2, 1]])));
    }
}
