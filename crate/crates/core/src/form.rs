//! Finite quadratic forms on finite abelian groups.
//!
//! A form is stored on a list of cyclic generators g_i of orders d_i (the group is
//! their direct sum) with q(g_i) in Q/2Z and b(g_i, g_j) in Q/Z, all over one common
//! denominator.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::arith::{self, modp, modp128};
use crate::error::{Error, Result};

/// Enumeration cap for brute-force routines (group order).
pub const DEFAULT_CAP: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<i64>,
    den: i64,
    q: Vec<i64>,
    b: Vec<Vec<i64>>,
}

fn reduce_mod(r: Rational64, m: i64) -> Rational64 {
    let (n, d) = (*r.numer(), *r.denom());
    Rational64::new(n.rem_euclid(m * d), d)
}

pub fn q_mod2(r: Rational64) -> Rational64 {
    reduce_mod(r, 2)
}

pub fn b_mod1(r: Rational64) -> Rational64 {
    reduce_mod(r, 1)
}

fn is_integer(r: Rational64) -> bool {
    *r.denom() == 1
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            orders: Vec::new(),
            den: 1,
            q: Vec::new(),
            b: Vec::new(),
        }
    }

    /// Builds a form from generator orders, q-values and the b matrix, checking that
    /// the values are well defined on the cyclic groups. Order-1 generators are dropped.
    pub fn from_parts(
        orders: Vec<i64>,
        q: Vec<Rational64>,
        b: Vec<Vec<Rational64>>,
    ) -> Result<Self> {
        let n = orders.len();
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        if q.len() != n || b.len() != n || b.iter().any(|r| r.len() != n) {
            return bad("generator data has inconsistent lengths");
        }
        if orders.iter().any(|&d| d < 1) {
            return bad("generator orders must be positive");
        }
        for i in 0..n {
            let d = Rational64::from_integer(orders[i]);
            if !is_integer(d * d * q[i] / 2) {
                return bad("q-value is not well defined on its cyclic group");
            }
            if !is_integer(b[i][i] - q[i]) {
                return bad("b(g,g) must equal q(g) mod 1");
            }
            for j in 0..n {
                if !is_integer(b[i][j] - b[j][i]) {
                    return bad("b matrix is not symmetric mod 1");
                }
                if !is_integer(d * b[i][j]) {
                    return bad("b-value is not well defined on its cyclic group");
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| orders[i] > 1).collect();
        let qv: Vec<Rational64> = keep.iter().map(|&i| q_mod2(q[i])).collect();
        let bv: Vec<Vec<Rational64>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| b_mod1(b[i][j])).collect())
            .collect();
        let mut den = 1i64;
        for r in qv.iter().chain(bv.iter().flatten()) {
            den = den.lcm(r.denom());
        }
        Ok(FiniteQuadraticForm {
            orders: keep.iter().map(|&i| orders[i]).collect(),
            den,
            q: qv.iter().map(|r| (r * den).to_integer()).collect(),
            b: bv
                .iter()
                .map(|row| row.iter().map(|r| (r * den).to_integer()).collect())
                .collect(),
        })
    }

    /// Orthogonal sum of cyclic forms (Z/d_i, q_i).
    pub fn diagonal(parts: &[(i64, Rational64)]) -> Result<Self> {
        let n = parts.len();
        let mut b = vec![vec![Rational64::from_integer(0); n]; n];
        for i in 0..n {
            b[i][i] = parts[i].1;
        }
        Self::from_parts(
            parts.iter().map(|p| p.0).collect(),
            parts.iter().map(|p| p.1).collect(),
            b,
        )
    }

    pub fn num_gens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&d| d as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn q_gen(&self, i: usize) -> Rational64 {
        Rational64::new(self.q[i], self.den)
    }

    pub fn b_gen(&self, i: usize, j: usize) -> Rational64 {
        Rational64::new(self.b[i][j], self.den)
    }

    /// Numerator of q(x) over the common denominator, in [0, 2 den).
    pub fn q_num(&self, x: &[i64]) -> i64 {
        let m = 2 * self.den as i128;
        let mut s: i128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as i128;
            s += modp128(xi * xi, m) * self.q[i] as i128;
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    s += modp128(2 * xi * x[j] as i128, m) * self.b[i][j] as i128;
                }
            }
            s %= m;
        }
        modp128(s, m) as i64
    }

    /// Numerator of b(x, y) over the common denominator, in [0, den).
    pub fn b_num(&self, x: &[i64], y: &[i64]) -> i64 {
        let m = self.den as i128;
        let mut s: i128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 {
                    s += modp128(x[i] as i128 * y[j] as i128, m) * self.b[i][j] as i128;
                }
            }
            s %= m;
        }
        modp128(s, m) as i64
    }

    pub fn q_value(&self, x: &[i64]) -> Rational64 {
        Rational64::new(self.q_num(x), self.den)
    }

    pub fn b_value(&self, x: &[i64], y: &[i64]) -> Rational64 {
        Rational64::new(self.b_num(x, y), self.den)
    }

    pub fn reduce(&self, x: &mut [i64]) {
        for (xi, d) in x.iter_mut().zip(&self.orders) {
            *xi = modp(*xi, *d);
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), d)| modp(a + b, *d))
            .collect()
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(a, d)| modp((k as i128 * *a as i128 % *d as i128) as i64, *d))
            .collect()
    }

    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter()
            .zip(&self.orders)
            .fold(1, |acc, (a, d)| acc.lcm(&(d / a.gcd(d))))
    }

    /// Mixed-radix index of an element; the first generator varies slowest.
    pub fn index(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for (a, d) in x.iter().zip(&self.orders) {
            idx = idx * *d as usize + modp(*a, *d) as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Vec<i64> {
        let mut x = vec![0; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let d = self.orders[i] as usize;
            x[i] = (idx % d) as i64;
            idx /= d;
        }
        x
    }

    pub fn check_cap(&self, cap: u64) -> Result<()> {
        let order = self.order();
        if order > cap {
            Err(Error::CapExceeded { order, cap })
        } else {
            Ok(())
        }
    }

    /// All elements in index order. Callers are expected to check the cap.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        (0..self.order() as usize).map(|i| self.element(i)).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let (f1, f2) = (den / self.den, den / other.den);
        let (n, m) = (self.num_gens(), other.num_gens());
        let mut b = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = self.b[i][j] * f1;
            }
        }
        for i in 0..m {
            for j in 0..m {
                b[n + i][n + j] = other.b[i][j] * f2;
            }
        }
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut q: Vec<i64> = self.q.iter().map(|v| v * f1).collect();
        q.extend(other.q.iter().map(|v| v * f2));
        FiniteQuadraticForm { orders, den, q, b }
    }

    pub fn negate(&self) -> Self {
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            den: self.den,
            q: self.q.iter().map(|v| modp(-v, 2 * self.den)).collect(),
            b: self
                .b
                .iter()
                .map(|r| r.iter().map(|v| modp(-v, self.den)).collect())
                .collect(),
        }
    }

    /// The form on the given elements, assumed to be independent cyclic generators
    /// of the stated orders spanning an orthogonal summand or subgroup.
    pub fn restrict(&self, gens: &[Vec<i64>], orders: &[i64]) -> Result<Self> {
        let n = gens.len();
        let q = gens.iter().map(|g| self.q_value(g)).collect();
        let b = (0..n)
            .map(|i| (0..n).map(|j| self.b_value(&gens[i], &gens[j])).collect())
            .collect();
        Self::from_parts(orders.to_vec(), q, b)
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .orders
            .iter()
            .flat_map(|&d| arith::prime_factors(d as u64))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Generators of the p-primary part (one per generator whose order p divides) and their orders.
    pub fn primary_generators(&self, p: u64) -> (Vec<Vec<i64>>, Vec<i64>) {
        let n = self.num_gens();
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for i in 0..n {
            let d = self.orders[i] as u64;
            let v = arith::valuation(d, p);
            if v == 0 {
                continue;
            }
            let pk = p.pow(v);
            let mut g = vec![0; n];
            g[i] = (d / pk) as i64;
            gens.push(g);
            orders.push(pk as i64);
        }
        (gens, orders)
    }

    pub fn primary_part(&self, p: u64) -> Self {
        let (gens, orders) = self.primary_generators(p);
        self.restrict(&gens, &orders)
            .expect("primary part of a valid form is valid")
    }

    /// l_p(A) for every prime dividing |A|.
    pub fn primary_lengths(&self) -> BTreeMap<u64, usize> {
        self.primes()
            .into_iter()
            .map(|p| {
                let l = self.orders.iter().filter(|&&d| d as u64 % p == 0).count();
                (p, l)
            })
            .collect()
    }

    pub fn primary_length(&self, p: u64) -> usize {
        self.orders.iter().filter(|&&d| d as u64 % p == 0).count()
    }

    /// l(A): the minimal number of generators.
    pub fn length(&self) -> usize {
        self.primary_lengths().values().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = FormJson {
            gens: (0..self.num_gens())
                .map(|i| GenJson {
                    order: self.orders[i],
                    q: fmt_ratio(self.q_gen(i)),
                })
                .collect(),
            b: (0..self.num_gens())
                .map(|i| (0..self.num_gens()).map(|j| fmt_ratio(self.b_gen(i, j))).collect())
                .collect(),
        };
        serde_json::to_value(json).expect("form serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let json: FormJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidInput(format!("form JSON: {e}")))?;
        let orders = json.gens.iter().map(|g| g.order).collect();
        let q = json
            .gens
            .iter()
            .map(|g| parse_ratio(&g.q))
            .collect::<Result<Vec<_>>>()?;
        let b = json
            .b
            .iter()
            .map(|r| r.iter().map(|s| parse_ratio(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let form = Self::from_parts(orders, q, b)?;
        form.check_nondegenerate()?;
        Ok(form)
    }

    /// Non-degeneracy of b, checked prime by prime via the Jordan splitting.
    pub fn check_nondegenerate(&self) -> Result<()> {
        for p in self.primes() {
            crate::symbol::jordan_blocks(self, p)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GenJson {
    order: i64,
    q: String,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    gens: Vec<GenJson>,
    b: Vec<Vec<String>>,
}

pub fn fmt_ratio(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Rational64> {
    let bad = || Error::InvalidInput(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}
