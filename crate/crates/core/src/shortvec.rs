//! Exact Fincke-Pohst enumeration of vectors of a given norm in a definite lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::lattice::GramLattice;

pub const DEFAULT_RANK_CAP: usize = 8;
pub const DEFAULT_NORM_CAP: i64 = 100;

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub rank: usize,
    pub norm: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            rank: DEFAULT_RANK_CAP,
            norm: DEFAULT_NORM_CAP,
        }
    }
}

pub fn short_vectors(lattice: &GramLattice, norm: i64) -> Result<Vec<Vec<i64>>> {
    short_vectors_capped(lattice, norm, Caps::default())
}

/// Vectors v with v G v^T = norm, one of each pair ±v (first nonzero entry positive),
/// in lexicographic order.
pub fn short_vectors_capped(lattice: &GramLattice, norm: i64, caps: Caps) -> Result<Vec<Vec<i64>>> {
    let n = lattice.rank();
    if n > caps.rank {
        return Err(Error::RankTooLarge { rank: n, cap: caps.rank });
    }
    if norm.abs() > caps.norm {
        return Err(Error::NormTooLarge { norm, cap: caps.norm });
    }
    if !lattice.is_definite() {
        return Err(Error::IndefiniteLattice);
    }
    let (_, n_minus) = lattice.signature();
    let s = if n_minus > 0 { -1 } else { 1 };
    let target = s * norm;
    if target <= 0 || n == 0 {
        return Ok(Vec::new());
    }
    let gram: Vec<Vec<i64>> = lattice
        .gram()
        .iter()
        .map(|r| r.iter().map(|x| s * x).collect())
        .collect();
    let (diag, mu) = ldl(&gram);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    search(&gram, &diag, &mu, n, &mut x, BigRational::from_integer(target.into()), target, &mut out);
    out.retain(|v| v.iter().find(|c| **c != 0).is_some_and(|c| *c > 0));
    out.sort();
    Ok(out)
}

/// Q(x) = Σ d_i (x_i + Σ_{j>i} mu_ij x_j)^2.
fn ldl(g: &[Vec<i64>]) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = g.len();
    let mut a: Vec<Vec<BigRational>> = g
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer((*x).into())).collect())
        .collect();
    let mut d = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let di = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &a[i][j] / &di;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let t = &mu[i][j] * &a[i][k];
                a[j][k] -= t;
            }
        }
        d.push(di);
    }
    (d, mu)
}

#[allow(clippy::too_many_arguments)]
fn search(
    gram: &[Vec<i64>],
    d: &[BigRational],
    mu: &[Vec<BigRational>],
    level: usize,
    x: &mut Vec<i64>,
    remaining: BigRational,
    target: i64,
    out: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        let norm: i64 = (0..x.len())
            .map(|i| (0..x.len()).map(|j| x[i] * gram[i][j] * x[j]).sum::<i64>())
            .sum();
        if norm == target {
            out.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let c: BigRational = (i + 1..x.len())
        .map(|j| &mu[i][j] * BigRational::from_integer(x[j].into()))
        .sum();
    let t = &remaining / &d[i];
    let r = arith::isqrt(t.floor().to_integer().to_u128().unwrap_or(0)) as i64;
    let centre = (-c.clone()).floor().to_integer().to_i64().unwrap();
    for xi in centre - r - 1..=centre + r + 2 {
        let y = BigRational::from_integer(BigInt::from(xi)) + &c;
        let used = &d[i] * &y * &y;
        if used > remaining {
            continue;
        }
        x[i] = xi;
        search(gram, d, mu, level - 1, x, &remaining - used, target, out);
    }
    x[i] = 0;
}

/// Box enumeration over |x_i| <= bound, for cross-checking.
pub fn short_vectors_naive(lattice: &GramLattice, norm: i64, bound: i64) -> Vec<Vec<i64>> {
    let n = lattice.rank();
    let mut out = Vec::new();
    let mut x = vec![-bound; n];
    if n == 0 {
        return out;
    }
    loop {
        if lattice.norm(&x) == norm && x.iter().find(|c| **c != 0).is_some_and(|c| *c > 0) {
            out.push(x.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if x[k] < bound {
                x[k] += 1;
                break;
            }
            x[k] = -bound;
        }
    }
}

/// A coordinate bound valid for all vectors of |norm| <= n: |x_i| <= sqrt(n (G^{-1})_ii).
pub fn coordinate_bound(lattice: &GramLattice, norm: i64) -> i64 {
    let inv = crate::matrix::inverse(lattice.gram()).expect("non-degenerate");
    (0..lattice.rank())
        .map(|i| {
            let t = (&inv[i][i] * BigRational::from_integer(norm.into())).abs();
            let (q, _) = t.numer().div_rem(t.denom());
            arith::isqrt(q.to_u128().unwrap()) as i64 + 1
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice;

    #[test]
    fn root_counts() {
        assert_eq!(short_vectors(&lattice::a_n(2), 2).unwrap().len(), 3);
        assert_eq!(short_vectors(&lattice::e_n(8), 2).unwrap().len(), 120);
        assert_eq!(short_vectors(&lattice::d_n(4), 2).unwrap().len(), 12);
        let neg = lattice::e_n(6).rescale(-1).unwrap();
        assert_eq!(short_vectors(&neg, -2).unwrap().len(), 36);
        assert!(short_vectors(&neg, 2).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert_eq!(
            short_vectors(&lattice::hyperbolic_plane(), 2),
            Err(Error::IndefiniteLattice)
        );
        assert!(matches!(
            short_vectors(&lattice::e_n(8), 200),
            Err(Error::NormTooLarge { .. })
        ));
        let big = lattice::a_n(9);
        assert!(matches!(short_vectors(&big, 2), Err(Error::RankTooLarge { .. })));
        assert_eq!(
            short_vectors_capped(&big, 2, Caps { rank: 9, norm: 100 }).unwrap().len(),
            45
        );
    }
}
