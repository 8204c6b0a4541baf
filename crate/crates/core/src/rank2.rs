//! Definite binary forms: Gauss reduction, enumeration by determinant, isometries.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::symbol::Sign;

/// The form sign * ((a, b), (b, c)) with ac - b^2 > 0 and a > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank2Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub sign: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Any,
}

impl Rank2Form {
    /// From raw Gram entries ((a, b), (b, c)), either definite sign.
    pub fn from_gram(a: i64, b: i64, c: i64) -> Result<Self> {
        if a * c - b * b <= 0 {
            return Err(Error::NotDefinite);
        }
        Ok(if a > 0 {
            Rank2Form { a, b, c, sign: Sign::Plus }
        } else {
            Rank2Form { a: -a, b: -b, c: -c, sign: Sign::Minus }
        })
    }

    pub fn det(&self) -> i64 {
        self.a * self.c - self.b * self.b
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let s = self.sign.to_i8() as i64;
        vec![vec![s * self.a, s * self.b], vec![s * self.b, s * self.c]]
    }

    pub fn lattice(&self) -> GramLattice {
        GramLattice::new(self.gram()).expect("definite forms are non-degenerate")
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        -a < 2 * b && 2 * b <= a && a <= c && (a != c || b >= 0)
    }

    /// The unique reduced form in the proper equivalence class.
    pub fn reduce(&self) -> Rank2Form {
        let d = self.det();
        let (mut a, mut b) = (self.a, self.b);
        loop {
            let mut r = b.rem_euclid(a);
            if 2 * r > a {
                r -= a;
            }
            b = r;
            let c = (b * b + d) / a;
            if c < a {
                (a, b) = (c, -b);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            return Rank2Form { a, b, c, sign: self.sign };
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad rank 2 form {text:?}"));
        let t = text.trim();
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest.trim()),
            None => (Sign::Plus, t),
        };
        let body = body
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(body);
        let (ab, c) = body.split_once(' ').ok_or_else(bad)?;
        let (a, b) = ab.split_once('^').ok_or_else(bad)?;
        let p = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
        let (a, b, c) = (p(a)?, p(b)?, p(c)?);
        if a <= 0 || a * c - b * b <= 0 {
            return Err(Error::NotDefinite);
        }
        Ok(Rank2Form { a, b, c, sign })
    }

    /// Integer matrices M (columns are images of the basis) with M^T G M = G.
    pub fn isometries(&self) -> Vec<[[i64; 2]; 2]> {
        let (a, b, c) = (self.a, self.b, self.c);
        let q = |x: i64, y: i64| a * x * x + 2 * b * x * y + c * y * y;
        let ip = |x: (i64, i64), y: (i64, i64)| a * x.0 * y.0 + b * (x.0 * y.1 + x.1 * y.0) + c * x.1 * y.1;
        let vecs_of_norm = |n: i64| -> Vec<(i64, i64)> {
            // a q(x, y) = (a x + b y)^2 + det y^2
            let det = self.det();
            let mut out = Vec::new();
            let ymax = arith::isqrt((a * n / det) as u128) as i64;
            let s = arith::isqrt((a * n) as u128) as i64;
            for y in -ymax..=ymax {
                for x in (-s - b * y).div_euclid(a)..=(s - b * y).div_euclid(a) + 1 {
                    if q(x, y) == n {
                        out.push((x, y));
                    }
                }
            }
            out
        };
        let mut out = Vec::new();
        for v in vecs_of_norm(a) {
            for w in vecs_of_norm(c) {
                if ip(v, w) == b && v.0 * w.1 - v.1 * w.0 != 0 {
                    let m = [[v.0, w.0], [v.1, w.1]];
                    if (v.0 * w.1 - v.1 * w.0).abs() == 1 {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Orders of the elements of the isometry group.
    pub fn automorphism_orders(&self) -> BTreeSet<u32> {
        self.isometries().iter().map(|m| matrix_order(m)).collect()
    }
}

fn matrix_order(m: &[[i64; 2]; 2]) -> u32 {
    let id = [[1, 0], [0, 1]];
    let mut p = *m;
    for k in 1..=12 {
        if p == id {
            return k;
        }
        p = [
            [p[0][0] * m[0][0] + p[0][1] * m[1][0], p[0][0] * m[0][1] + p[0][1] * m[1][1]],
            [p[1][0] * m[0][0] + p[1][1] * m[1][0], p[1][0] * m[0][1] + p[1][1] * m[1][1]],
        ];
    }
    panic!("isometry of a definite binary form has order at most 6")
}

impl fmt::Display for Rank2Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Minus { "-" } else { "" };
        write!(f, "{s}({}^{} {})", self.a, self.b, self.c)
    }
}

impl Serialize for Rank2Form {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All reduced forms of determinant `det` with the given parity and sign, in (a, b, c) order.
pub fn enumerate(det: i64, parity: Parity, sign: Sign) -> Vec<Rank2Form> {
    let mut out = Vec::new();
    if det < 1 {
        return out;
    }
    // a <= c and |2b| <= a give 3a^2 <= 4 det
    let mut a = 1;
    while 3 * a * a <= 4 * det {
        if parity == Parity::Any || a % 2 == 0 {
            for b in (-(a - 1) / 2)..=(a / 2) {
                if (det + b * b) % a != 0 {
                    continue;
                }
                let c = (det + b * b) / a;
                let f = Rank2Form { a, b, c, sign };
                if (parity == Parity::Any || c % 2 == 0) && f.is_reduced() {
                    out.push(f);
                }
            }
        }
        a += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neg(a: i64, b: i64, c: i64) -> Rank2Form {
        Rank2Form { a, b, c, sign: Sign::Minus }
    }

    #[test]
    fn reduction() {
        let f = Rank2Form::from_gram(14, -1, 2).unwrap().reduce();
        assert_eq!((f.a, f.b, f.c), (2, 1, 14));
        let g = Rank2Form::from_gram(6, 3, 6).unwrap();
        assert_eq!(g.reduce(), g);
        assert_eq!(Rank2Form::from_gram(1, 2, 1), Err(Error::NotDefinite));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            enumerate(27, Parity::Even, Sign::Minus),
            vec![neg(2, 1, 14), neg(6, 3, 6)]
        );
        assert_eq!(
            enumerate(3, Parity::Even, Sign::Plus),
            vec![Rank2Form { a: 2, b: 1, c: 2, sign: Sign::Plus }]
        );
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(neg(18, -6, 22).to_string(), "-(18^-6 22)");
        assert_eq!(Rank2Form::parse("-(6^3 6)").unwrap(), neg(6, 3, 6));
        assert_eq!(Rank2Form::parse("2^1 2").unwrap().sign, Sign::Plus);
    }

    #[test]
    fn automorphisms() {
        let a2 = Rank2Form::from_gram(6, 3, 6).unwrap();
        assert!(a2.automorphism_orders().contains(&3));
        assert!(a2.automorphism_orders().contains(&6));
        assert!(Rank2Form::from_gram(6, 0, 6).unwrap().automorphism_orders().contains(&4));
        assert!(!Rank2Form::from_gram(2, 1, 14).unwrap().automorphism_orders().contains(&3));
        // 2b = a makes the form ambiguous, so a reflection joins ±1
        assert_eq!(Rank2Form::from_gram(2, 1, 14).unwrap().isometries().len(), 4);
    }
}
