use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix;

/// An integral lattice given by a non-degenerate symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
    n_plus: usize,
    n_minus: usize,
    det: BigInt,
    even: bool,
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NonSymmetric);
                }
            }
        }
        let det = matrix::det(&gram);
        if n > 0 && det.is_zero() {
            return Err(Error::Degenerate);
        }
        let (n_plus, n_minus, _) = matrix::signature(&gram);
        let even = (0..n).all(|i| gram[i][i] % 2 == 0);
        Ok(GramLattice {
            gram,
            n_plus,
            n_minus,
            det,
            even,
        })
    }

    pub fn zero() -> Self {
        GramLattice::new(Vec::new()).unwrap()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.n_plus, self.n_minus)
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_definite(&self) -> bool {
        self.n_plus == 0 || self.n_minus == 0
    }

    pub fn abs_det(&self) -> BigInt {
        self.det.abs()
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.inner(x, x)
    }

    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut g = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            g[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            g[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        GramLattice {
            gram: g,
            n_plus: self.n_plus + other.n_plus,
            n_minus: self.n_minus + other.n_minus,
            det: &self.det * &other.det,
            even: self.even && other.even,
        }
    }

    /// L(n): the bilinear form multiplied by n.
    pub fn rescale(&self, n: i64) -> Result<GramLattice> {
        if n == 0 {
            return Err(Error::ZeroScale);
        }
        let gram: Vec<Vec<i64>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| x * n).collect())
            .collect();
        let (n_plus, n_minus) = if n > 0 {
            (self.n_plus, self.n_minus)
        } else {
            (self.n_minus, self.n_plus)
        };
        Ok(GramLattice {
            det: &self.det * BigInt::from(n).pow(self.rank() as u32),
            even: self.even || n % 2 == 0,
            gram,
            n_plus,
            n_minus,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "gram": self.gram })
    }
}

/// JSON shape accepted for lattices: an explicit Gram matrix or a registry name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Gram { gram: Vec<Vec<i64>> },
    Named {
        name: String,
        #[serde(default = "one")]
        scale: i64,
    },
}

fn one() -> i64 {
    1
}

impl LatticeSpec {
    pub fn build(&self) -> Result<GramLattice> {
        match self {
            LatticeSpec::Gram { gram } => GramLattice::new(gram.clone()),
            LatticeSpec::Named { name, scale } => named(name)?.rescale(*scale),
        }
    }
}

pub fn a_n(n: usize) -> GramLattice {
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = 2;
        if i + 1 < n {
            g[i][i + 1] = -1;
            g[i + 1][i] = -1;
        }
    }
    GramLattice::new(g).unwrap()
}

pub fn d_n(n: usize) -> GramLattice {
    assert!(n >= 2);
    let mut g = a_n(n).gram;
    if n >= 3 {
        g[n - 1][n - 2] = 0;
        g[n - 2][n - 1] = 0;
        g[n - 1][n - 3] = -1;
        g[n - 3][n - 1] = -1;
    } else {
        g[0][1] = 0;
        g[1][0] = 0;
    }
    GramLattice::new(g).unwrap()
}

/// E6, E7, E8: a chain of n-1 nodes with one more node attached to the third.
pub fn e_n(n: usize) -> GramLattice {
    assert!((6..=8).contains(&n));
    let mut g = a_n(n).gram;
    g[n - 1][n - 2] = 0;
    g[n - 2][n - 1] = 0;
    g[n - 1][2] = -1;
    g[2][n - 1] = -1;
    GramLattice::new(g).unwrap()
}

pub fn hyperbolic_plane() -> GramLattice {
    GramLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
}

pub fn diagonal(entries: &[i64]) -> Result<GramLattice> {
    let n = entries.len();
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = entries[i];
    }
    GramLattice::new(g)
}

fn sum_all(parts: &[GramLattice]) -> GramLattice {
    parts
        .iter()
        .fold(GramLattice::zero(), |acc, l| acc.direct_sum(l))
}

/// Odd unimodular I(p,q) = <1>^p + <-1>^q.
pub fn odd_unimodular(p: usize, q: usize) -> GramLattice {
    let mut d = vec![1; p];
    d.extend(std::iter::repeat(-1).take(q));
    diagonal(&d).unwrap()
}

/// Even unimodular II(p,q), p = q mod 8.
pub fn even_unimodular(p: usize, q: usize) -> Result<GramLattice> {
    if (p as i64 - q as i64).rem_euclid(8) != 0 {
        return Err(Error::BadSignature(format!(
            "II({p},{q}) needs p = q mod 8"
        )));
    }
    let mut parts = Vec::new();
    if p >= q {
        parts.extend(std::iter::repeat(e_n(8)).take((p - q) / 8));
        parts.extend(std::iter::repeat(hyperbolic_plane()).take(q));
    } else {
        parts.extend(std::iter::repeat(e_n(8).rescale(-1)?).take((q - p) / 8));
        parts.extend(std::iter::repeat(hyperbolic_plane()).take(p));
    }
    Ok(sum_all(&parts))
}

/// The Borcherds lattice II(26,2) as E8^3 + U^2.
pub fn borcherds() -> GramLattice {
    let e8 = e_n(8);
    let u = hyperbolic_plane();
    sum_all(&[e8.clone(), e8.clone(), e8, u.clone(), u])
}

/// A2 + E8^2 + U^2, signature (20,2).
pub fn lambda0() -> GramLattice {
    let e8 = e_n(8);
    let u = hyperbolic_plane();
    sum_all(&[a_n(2), e8.clone(), e8, u.clone(), u])
}

/// <d> + E8^2 + U^2 for d = 2, 6.
pub fn lambda_d(d: i64) -> GramLattice {
    let e8 = e_n(8);
    let u = hyperbolic_plane();
    sum_all(&[diagonal(&[d]).unwrap(), e8.clone(), e8, u.clone(), u])
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Looks up a lattice in the registry: A_n, D_n, E6-E8, U, I(p,q), II(p,q),
/// Borcherds, Lambda0, Lambda2, Lambda6. Sums are written with '+', e.g. "E6+A1".
pub fn named(name: &str) -> Result<GramLattice> {
    let name = name.trim();
    if name.contains('+') {
        let parts: Result<Vec<_>> = name.split('+').map(named).collect();
        return Ok(sum_all(&parts?));
    }
    let unknown = || Error::UnknownLattice(name.to_string());
    let flat = name.replace('_', "");
    match flat.as_str() {
        "U" => return Ok(hyperbolic_plane()),
        "B" | "Borcherds" => return Ok(borcherds()),
        "Lambda0" | "L0" => return Ok(lambda0()),
        "Lambda2" | "L2" => return Ok(lambda_d(2)),
        "Lambda6" | "L6" => return Ok(lambda_d(6)),
        _ => {}
    }
    if let Some(rest) = flat.strip_prefix("II") {
        let (p, q) = parse_pair(rest).ok_or_else(unknown)?;
        return even_unimodular(p, q);
    }
    if let Some(rest) = flat.strip_prefix('I') {
        let (p, q) = parse_pair(rest).ok_or_else(unknown)?;
        return Ok(odd_unimodular(p, q));
    }
    let (head, num) = flat.split_at(1);
    let n: usize = num.parse().map_err(|_| unknown())?;
    match head {
        "A" if n >= 1 => Ok(a_n(n)),
        "D" if n >= 2 => Ok(d_n(n)),
        "E" if (6..=8).contains(&n) => Ok(e_n(n)),
        _ => Err(unknown()),
    }
}
