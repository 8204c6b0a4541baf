//! Exact dense linear algebra over Z and Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<BigRational>>;

pub fn to_bigint(m: &[Vec<i64>]) -> IMat {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_rational(m: &[Vec<i64>]) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_bigint(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Signature (n_plus, n_minus, n_zero) of a symmetric rational matrix by congruence diagonalization.
pub fn signature(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let mut a = to_rational(m);
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k <- e_k + e_j makes the pivot 2 a_kj
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

pub fn inverse(m: &[Vec<i64>]) -> Option<QMat> {
    inverse_big(&to_bigint(m))
}

pub fn inverse_big(m: &IMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut inv: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        inv.swap(p, k);
        let piv = a[k][k].clone();
        for j in 0..n {
            a[k][j] = &a[k][j] / &piv;
            inv[k][j] = &inv[k][j] / &piv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
                let w = &f * &inv[k][j];
                inv[i][j] -= w;
            }
        }
    }
    Some(inv)
}

/// Smith normal form `U * M * V = D` with unimodular U, V.
pub struct Smith {
    /// Diagonal entries, length min(rows, cols), non-negative, each dividing the next.
    pub diag: Vec<BigInt>,
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
}

pub fn smith(m: &IMat) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);

    // row ops act on a and u (left), and inversely on u_inv (right)
    fn row_swap(a: &mut IMat, u: &mut IMat, ui: &mut IMat, i: usize, j: usize) {
        a.swap(i, j);
        u.swap(i, j);
        for r in ui.iter_mut() {
            r.swap(i, j);
        }
    }
    // row_i += f * row_j
    fn row_add(a: &mut IMat, u: &mut IMat, ui: &mut IMat, i: usize, j: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for c in 0..a[0].len() {
            let x = f * &a[j][c];
            a[i][c] += x;
        }
        for c in 0..u[0].len() {
            let x = f * &u[j][c];
            u[i][c] += x;
        }
        // inverse: col_j -= f * col_i
        for r in ui.iter_mut() {
            let x = f * &r[i];
            r[j] -= x;
        }
    }
    fn row_neg(a: &mut IMat, u: &mut IMat, ui: &mut IMat, i: usize) {
        for x in a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in u[i].iter_mut() {
            *x = -x.clone();
        }
        for r in ui.iter_mut() {
            r[i] = -r[i].clone();
        }
    }
    fn col_swap(a: &mut IMat, v: &mut IMat, i: usize, j: usize) {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
        for r in v.iter_mut() {
            r.swap(i, j);
        }
    }
    // col_i += f * col_j
    fn col_add(a: &mut IMat, v: &mut IMat, i: usize, j: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for r in a.iter_mut() {
            let x = f * &r[j];
            r[i] += x;
        }
        for r in v.iter_mut() {
            let x = f * &r[j];
            r[i] += x;
        }
    }

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // pivot: smallest nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap(&mut a, &mut u, &mut u_inv, t, pi);
        col_swap(&mut a, &mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_add(&mut a, &mut u, &mut u_inv, i, t, &-q);
                if !a[i][t].is_zero() {
                    row_swap(&mut a, &mut u, &mut u_inv, i, t);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_add(&mut a, &mut v, j, t, &-q);
                if !a[t][j].is_zero() {
                    col_swap(&mut a, &mut v, j, t);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: the pivot must divide the whole trailing block
            let mut fix = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => row_add(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            row_neg(&mut a, &mut u, &mut u_inv, t);
        }
        t += 1;
    }
    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    Smith { diag, u, u_inv, v }
}

pub fn mat_vec(m: &IMat, x: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
