//! Conway–Sloane genus symbols of finite quadratic forms: Jordan splitting,
//! 2-adic canonical forms, parsing, printing and realization.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::arith::{self, chi8, legendre, mod_inverse, modp};
use crate::error::{Error, Result};
use crate::form::FiniteQuadraticForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(s: i8) -> Sign {
        if s > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One Jordan constituent p^k with rank n and sign; at p = 2 also the type
/// (`oddity: None` means type II).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanConstituent {
    pub prime: u64,
    pub exponent: u32,
    pub rank: usize,
    pub sign: Sign,
    pub oddity: Option<u8>,
}

impl JordanConstituent {
    pub fn scale(&self) -> u64 {
        self.prime.pow(self.exponent)
    }

    pub fn is_odd_type(&self) -> bool {
        self.oddity.is_some()
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::RealizabilityError(m));
        if self.rank == 0 {
            if self.sign == Sign::Minus || self.oddity.is_some() {
                return err(format!("{self}: rank 0 needs sign + and type II"));
            }
            return Ok(());
        }
        if self.prime != 2 {
            if self.oddity.is_some() {
                return err(format!("{self}: oddity only exists at p = 2"));
            }
            return Ok(());
        }
        match self.oddity {
            None if self.rank % 2 == 1 => err(format!("{self}: type II needs even rank")),
            None => Ok(()),
            Some(t) if odd_realization(self.rank, t, self.sign).is_none() => {
                err(format!("{self}: no diagonal 2-adic form has this sign and oddity"))
            }
            Some(_) => Ok(()),
        }
    }
}

impl fmt::Display for JordanConstituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scale())?;
        if self.prime == 2 {
            match self.oddity {
                Some(t) => write!(f, "_{t}")?,
                None => write!(f, "_II")?,
            }
        }
        write!(f, "^{}{}", self.sign.as_char(), self.rank)
    }
}

/// Units θ_i in {1,3,5,7} with Σθ = t mod 8 and χ(Πθ) = sign, if any exist.
pub fn odd_realization(n: usize, t: u8, sign: Sign) -> Option<Vec<i64>> {
    if n == 0 {
        return None;
    }
    // reach[i][s][e]: after i units, sum s mod 8 and character e (0 = +) is reachable
    let mut reach = vec![[[false; 2]; 8]; n + 1];
    reach[0][0][0] = true;
    for i in 0..n {
        for s in 0..8 {
            for e in 0..2 {
                if !reach[i][s][e] {
                    continue;
                }
                for th in [1usize, 3, 5, 7] {
                    let e2 = e ^ usize::from(chi8(th as i64) < 0);
                    reach[i + 1][(s + th) % 8][e2] = true;
                }
            }
        }
    }
    let want_e = usize::from(sign == Sign::Minus);
    let (mut s, mut e) = (t as usize % 8, want_e);
    if !reach[n][s][e] {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let th = [1usize, 3, 5, 7]
            .into_iter()
            .find(|&th| {
                let pe = e ^ usize::from(chi8(th as i64) < 0);
                reach[i][(s + 8 - th) % 8][pe]
            })
            .expect("backtrack follows a reachable state");
        out.push(th as i64);
        e ^= usize::from(chi8(th as i64) < 0);
        s = (s + 8 - th) % 8;
    }
    out.reverse();
    Some(out)
}

/// A block of the Jordan splitting of a p-primary form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanBlock {
    /// Cyclic of order p^k with b(e,e) = u / p^k (odd p), or q(e) = θ / 2^k with θ odd (p = 2).
    Cyclic { exponent: u32, unit: i64 },
    /// Rank 2 even block at p = 2: u(2^k) or v(2^k).
    Even { exponent: u32, v_type: bool },
}

/// Splits the p-primary part of `form` into cyclic and (at p = 2) rank-2 even blocks.
pub fn jordan_blocks(form: &FiniteQuadraticForm, p: u64) -> Result<Vec<JordanBlock>> {
    let (mut basis, _) = form.primary_generators(p);
    let pi = p as i64;
    let mut blocks = Vec::new();
    // p^K * b(x, y) as an integer mod p^K
    let sb = |x: &[i64], y: &[i64], pk: i64| -> i64 {
        let r = form.b_value(x, y) * pk;
        assert!(r.is_integer(), "scaled pairing is integral");
        modp(r.to_integer(), pk)
    };
    // 2^K * q(x) as an integer mod 2^(K+1)
    let sq = |x: &[i64], pk: i64| -> i64 {
        let r = form.q_value(x) * pk;
        assert!(r.is_integer(), "scaled norm is integral");
        modp(r.to_integer(), 2 * pk)
    };
    let sub = |g: &mut Vec<i64>, c: i64, e: &[i64]| {
        let t = form.scale(-c, e);
        *g = form.add(g, &t);
    };
    while !basis.is_empty() {
        let ords: Vec<i64> = basis.iter().map(|x| form.element_order(x)).collect();
        let pk = *ords.iter().max().unwrap();
        if pk == 1 {
            break;
        }
        let k = arith::valuation(pk as u64, p);
        let cand: Vec<usize> = (0..basis.len()).filter(|&i| ords[i] == pk).collect();
        if let Some(&i) = cand.iter().find(|&&i| sb(&basis[i], &basis[i], pk) % pi != 0) {
            let e = basis.remove(i);
            let u = sb(&e, &e, pk);
            let u_inv = mod_inverse(u, pk).unwrap();
            for g in basis.iter_mut() {
                let c = modp((sb(g, &e, pk) as i128 * u_inv as i128 % pk as i128) as i64, pk);
                sub(g, c, &e);
            }
            let unit = if p == 2 { sq(&e, pk) } else { u };
            blocks.push(JordanBlock::Cyclic { exponent: k, unit });
            continue;
        }
        let pair = cand.iter().enumerate().find_map(|(a, &i)| {
            cand[a + 1..]
                .iter()
                .find(|&&j| sb(&basis[i], &basis[j], pk) % pi != 0)
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            return Err(Error::InvalidInput(
                "bilinear form is degenerate".to_string(),
            ));
        };
        if p != 2 {
            let f = basis[j].clone();
            basis[i] = form.add(&basis[i], &f);
            continue;
        }
        let f = basis.remove(j);
        let e = basis.remove(i);
        let (a, bb, c) = (sb(&e, &e, pk), sb(&e, &f, pk), sb(&f, &f, pk));
        let det = modp(a * c - bb * bb, pk);
        let dinv = mod_inverse(det, pk).unwrap();
        for g in basis.iter_mut() {
            let (v1, v2) = (sb(g, &e, pk), sb(g, &f, pk));
            let c1 = modp(dinv * modp(c * v1 - bb * v2, pk) % pk, pk);
            let c2 = modp(dinv * modp(a * v2 - bb * v1, pk) % pk, pk);
            sub(g, c1, &e);
            sub(g, c2, &f);
        }
        let v_type = (sq(&e, pk) / 2) % 2 == 1 && (sq(&f, pk) / 2) % 2 == 1;
        blocks.push(JordanBlock::Even { exponent: k, v_type });
    }
    Ok(blocks)
}

/// Groups Jordan blocks into constituents, one per scale.
fn constituents_from_blocks(p: u64, blocks: &[JordanBlock]) -> Vec<JordanConstituent> {
    let mut by_scale: BTreeMap<u32, (usize, i8, bool, i64)> = BTreeMap::new();
    for blk in blocks {
        match *blk {
            JordanBlock::Cyclic { exponent, unit } => {
                let e = by_scale.entry(exponent).or_insert((0, 1, false, 0));
                e.0 += 1;
                e.2 = true;
                if p == 2 {
                    e.1 *= chi8(unit);
                    e.3 += unit;
                } else {
                    e.1 *= legendre(unit, p as i64);
                }
            }
            JordanBlock::Even { exponent, v_type } => {
                let e = by_scale.entry(exponent).or_insert((0, 1, false, 0));
                e.0 += 2;
                if v_type {
                    e.1 = -e.1;
                }
            }
        }
    }
    by_scale
        .into_iter()
        .map(|(k, (n, s, odd, t))| JordanConstituent {
            prime: p,
            exponent: k,
            rank: n,
            sign: Sign::from_i8(s),
            oddity: if p == 2 && odd { Some(modp(t, 8) as u8) } else { None },
        })
        .collect()
}

/// Canonical invariant of a 2-adic symbol under oddity fusion and sign walking.
fn two_adic_invariant(cs: &[JordanConstituent]) -> Vec<i64> {
    let n = cs.len();
    let mut comp: Vec<Option<usize>> = vec![None; n];
    let mut comp_tot: Vec<i64> = Vec::new();
    for i in 0..n {
        if let Some(t) = cs[i].oddity {
            let joined = i > 0
                && cs[i - 1].is_odd_type()
                && cs[i - 1].exponent + 1 == cs[i].exponent;
            if joined {
                let c = comp[i - 1].unwrap();
                comp[i] = Some(c);
                comp_tot[c] += t as i64;
            } else {
                comp[i] = Some(comp_tot.len());
                comp_tot.push(t as i64);
            }
        }
    }
    // adjacent constituents share a train unless two consecutive scales in between are even
    let connected = |i: usize| -> bool {
        let (a, b) = (&cs[i], &cs[i + 1]);
        match b.exponent - a.exponent {
            1 => a.is_odd_type() || b.is_odd_type(),
            2 => a.is_odd_type() && b.is_odd_type(),
            _ => false,
        }
    };
    let mut signs: Vec<i8> = cs.iter().map(|c| c.sign.to_i8()).collect();
    let mut trains: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 0..n {
        if i + 1 == n || !connected(i) {
            trains.push((start, i));
            start = i + 1;
        }
    }
    for &(s, e) in &trains {
        for i in (s + 1..=e).rev() {
            if signs[i] < 0 {
                signs[i] = 1;
                signs[i - 1] = -signs[i - 1];
                let mut touched: Vec<usize> = [comp[i], comp[i - 1]].into_iter().flatten().collect();
                touched.dedup();
                for c in touched {
                    comp_tot[c] += 4;
                }
            }
        }
    }
    let mut out = Vec::new();
    for c in cs {
        out.extend([c.exponent as i64, c.rank as i64, i64::from(c.is_odd_type())]);
    }
    out.push(-1);
    for &(s, _) in &trains {
        out.extend([s as i64, signs[s] as i64]);
    }
    out.push(-1);
    for t in comp_tot {
        out.push(modp(t, 8));
    }
    out
}

/// Finite forms identify the two lattices that differ at an odd scale-2 constituent.
fn two_adic_key(cs: &[JordanConstituent]) -> Vec<i64> {
    let base = two_adic_invariant(cs);
    match cs.iter().position(|c| c.exponent == 1 && c.is_odd_type()) {
        Some(i) => {
            let mut alt = cs.to_vec();
            alt[i].sign = alt[i].sign.flip();
            alt[i].oddity = alt[i].oddity.map(|t| (t + 4) % 8);
            base.min(two_adic_invariant(&alt))
        }
        None => base,
    }
}

fn constituent_options(c: &JordanConstituent) -> Vec<JordanConstituent> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        if c.is_odd_type() {
            for t in 0..8u8 {
                if odd_realization(c.rank, t, sign).is_some() {
                    out.push(JordanConstituent { sign, oddity: Some(t), ..*c });
                }
            }
        } else {
            out.push(JordanConstituent { sign, oddity: None, ..*c });
        }
    }
    out
}

/// The lexicographically first valid 2-adic symbol (signs + before -, then oddity) in the
/// class of `cs`.
fn canonical_two_adic(cs: &[JordanConstituent]) -> Vec<JordanConstituent> {
    let target = two_adic_key(cs);
    let options: Vec<Vec<JordanConstituent>> = cs.iter().map(constituent_options).collect();
    let mut pick = vec![0usize; cs.len()];
    loop {
        let cand: Vec<JordanConstituent> =
            pick.iter().enumerate().map(|(i, &j)| options[i][j]).collect();
        if two_adic_key(&cand) == target {
            return cand;
        }
        // odometer, last constituent fastest
        let mut i = cs.len();
        loop {
            if i == 0 {
                unreachable!("the input symbol itself is a candidate");
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// A genus symbol of a finite quadratic form, kept in canonical form so that equality
/// of symbols is isomorphism of forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenusSymbol {
    constituents: Vec<JordanConstituent>,
}

impl GenusSymbol {
    pub fn trivial() -> Self {
        GenusSymbol {
            constituents: Vec::new(),
        }
    }

    /// Validates, sorts and canonicalizes a list of constituents.
    pub fn from_constituents(mut cs: Vec<JordanConstituent>) -> Result<Self> {
        for c in &cs {
            c.validate()?;
        }
        cs.retain(|c| c.rank > 0);
        cs.sort_by_key(|c| (c.prime, c.exponent));
        for w in cs.windows(2) {
            if (w[0].prime, w[0].exponent) == (w[1].prime, w[1].exponent) {
                return Err(Error::SyntaxError(format!(
                    "scale {} appears twice",
                    w[0].scale()
                )));
            }
        }
        let mut out = Vec::with_capacity(cs.len());
        let twos: Vec<JordanConstituent> = cs.iter().filter(|c| c.prime == 2).copied().collect();
        if !twos.is_empty() {
            out.extend(canonical_two_adic(&twos));
        }
        out.extend(cs.into_iter().filter(|c| c.prime != 2));
        Ok(GenusSymbol { constituents: out })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cs = Vec::new();
        for tok in text.split_whitespace() {
            if let Some(c) = parse_constituent(tok)? {
                cs.push(c);
            }
        }
        Self::from_constituents(cs)
    }

    pub fn constituents(&self) -> &[JordanConstituent] {
        &self.constituents
    }

    pub fn is_trivial(&self) -> bool {
        self.constituents.is_empty()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.constituents.iter().map(|c| c.prime).collect();
        ps.dedup();
        ps
    }

    pub fn p_part(&self, p: u64) -> impl Iterator<Item = &JordanConstituent> {
        self.constituents.iter().filter(move |c| c.prime == p)
    }

    /// Product of the signs of the p-constituents.
    pub fn sign_product(&self, p: u64) -> i8 {
        self.p_part(p).map(|c| c.sign.to_i8()).product()
    }

    /// Whether the 2-part has an odd constituent of scale 2, i.e. q_2 = q_θ(2) ⊕ q'.
    pub fn has_odd_scale_two(&self) -> bool {
        self.p_part(2).any(|c| c.exponent == 1 && c.is_odd_type())
    }

    pub fn order(&self) -> u64 {
        self.constituents
            .iter()
            .map(|c| c.scale().pow(c.rank as u32))
            .product()
    }

    /// A form with this symbol, built from diagonal and u/v blocks.
    pub fn to_form(&self) -> FiniteQuadraticForm {
        let mut orders = Vec::new();
        let mut q = Vec::new();
        let mut offdiag: Vec<(usize, usize, Rational64)> = Vec::new();
        for c in &self.constituents {
            let pk = c.scale() as i64;
            if c.prime != 2 {
                let p = c.prime as i64;
                for i in 0..c.rank {
                    let mut th = 1;
                    if i + 1 == c.rank && c.sign == Sign::Minus {
                        th = arith::smallest_nonresidue(p);
                    }
                    if th % 2 == 1 {
                        th += pk;
                    }
                    orders.push(pk);
                    q.push(Rational64::new(th, pk));
                }
            } else if let Some(t) = c.oddity {
                for th in odd_realization(c.rank, t, c.sign).expect("validated") {
                    orders.push(pk);
                    q.push(Rational64::new(th, pk));
                }
            } else {
                let blocks = c.rank / 2;
                for i in 0..blocks {
                    let v = i + 1 == blocks && c.sign == Sign::Minus;
                    let d = if v { Rational64::new(2, pk) } else { Rational64::from_integer(0) };
                    let at = orders.len();
                    orders.extend([pk, pk]);
                    q.extend([d, d]);
                    offdiag.push((at, at + 1, Rational64::new(1, pk)));
                }
            }
        }
        let n = orders.len();
        let mut b = vec![vec![Rational64::from_integer(0); n]; n];
        for i in 0..n {
            b[i][i] = q[i];
        }
        for (i, j, v) in offdiag {
            b[i][j] = v;
            b[j][i] = v;
        }
        FiniteQuadraticForm::from_parts(orders, q, b).expect("symbol blocks are well defined")
    }

    pub fn negate(&self) -> Self {
        self.to_form().negate().to_symbol()
    }
}

impl fmt::Display for GenusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constituents.is_empty() {
            return write!(f, "1^+0");
        }
        let parts: Vec<String> = self.constituents.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for GenusSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for GenusSymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GenusSymbol::parse(s)
    }
}

fn parse_constituent(tok: &str) -> Result<Option<JordanConstituent>> {
    let bad = |m: &str| Error::SyntaxError(format!("{tok:?}: {m}"));
    let (left, right) = tok.split_once('^').ok_or_else(|| bad("missing '^'"))?;
    let mut rc = right.chars();
    let sign = match rc.next() {
        Some('+') => Sign::Plus,
        Some('-') => Sign::Minus,
        _ => return Err(bad("expected sign after '^'")),
    };
    let rank_txt = rc.as_str();
    if rank_txt.is_empty() || !rank_txt.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("rank must be a decimal number"));
    }
    let rank: usize = rank_txt.parse().map_err(|_| bad("rank out of range"))?;
    let (scale_txt, ty) = match left.split_once('_') {
        Some((s, t)) => (s, Some(t)),
        None => (left, None),
    };
    if scale_txt.is_empty() || !scale_txt.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("scale must be a decimal number"));
    }
    let scale: u64 = scale_txt.parse().map_err(|_| bad("scale out of range"))?;
    if scale == 1 {
        if rank == 0 && sign == Sign::Plus && ty.is_none() {
            return Ok(None);
        }
        return Err(bad("scale 1 is only allowed as the trivial symbol 1^+0"));
    }
    let (prime, exponent) = arith::prime_power(scale).ok_or_else(|| bad("scale is not a prime power"))?;
    let oddity = match (prime, ty) {
        (2, None) => return Err(bad("2-adic constituents need a type: _II or _t")),
        (2, Some("II")) => None,
        (2, Some(t)) => {
            let t: u8 = t.parse().map_err(|_| bad("oddity must be II or 0..7"))?;
            if t > 7 {
                return Err(bad("oddity must be in 0..7"));
            }
            Some(t)
        }
        (_, Some(_)) => return Err(bad("only 2-adic constituents carry a type")),
        (_, None) => None,
    };
    Ok(Some(JordanConstituent {
        prime,
        exponent,
        rank,
        sign,
        oddity,
    }))
}

impl FiniteQuadraticForm {
    /// The canonical genus symbol.
    pub fn to_symbol(&self) -> GenusSymbol {
        let mut cs = Vec::new();
        for p in self.primes() {
            let blocks = jordan_blocks(self, p).expect("discriminant forms are non-degenerate");
            cs.extend(constituents_from_blocks(p, &blocks));
        }
        GenusSymbol::from_constituents(cs).expect("Jordan constituents are realizable")
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.order() == other.order() && self.to_symbol() == other.to_symbol()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminant::discriminant_form;
    use crate::lattice;

    fn sym(s: &str) -> GenusSymbol {
        GenusSymbol::parse(s).unwrap()
    }

    #[test]
    fn remark_a_constraints() {
        for t in 0..8u8 {
            assert_eq!(odd_realization(1, t, Sign::Plus).is_some(), t == 1 || t == 7);
            assert_eq!(odd_realization(1, t, Sign::Minus).is_some(), t == 3 || t == 5);
            assert_eq!(
                odd_realization(2, t, Sign::Plus).is_some(),
                [0, 2, 6].contains(&t)
            );
            assert_eq!(
                odd_realization(2, t, Sign::Minus).is_some(),
                [2, 4, 6].contains(&t)
            );
        }
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(sym("2_II^-2 3^-1 7^-1").to_string(), "2_II^-2 3^-1 7^-1");
        assert!(sym("1^+0").is_trivial());
        assert!(sym("").is_trivial());
        assert!(matches!(
            GenusSymbol::parse("2_3^+1"),
            Err(Error::RealizabilityError(_))
        ));
        assert!(matches!(GenusSymbol::parse("6^+1"), Err(Error::SyntaxError(_))));
        assert!(matches!(GenusSymbol::parse("2^+1"), Err(Error::SyntaxError(_))));
        assert!(matches!(GenusSymbol::parse("3_1^+1"), Err(Error::SyntaxError(_))));
        assert!(matches!(GenusSymbol::parse("3^+1 3^-1"), Err(Error::SyntaxError(_))));
    }

    #[test]
    fn root_lattice_symbols() {
        let s = |l: &lattice::GramLattice| discriminant_form(l).unwrap().to_symbol().to_string();
        assert_eq!(s(&lattice::a_n(2)), "3^-1");
        assert_eq!(s(&lattice::e_n(6)), "3^+1");
        assert_eq!(s(&lattice::e_n(7)), "2_7^+1");
        assert_eq!(s(&lattice::a_n(1)), "2_1^+1");
        assert_eq!(s(&lattice::e_n(6).direct_sum(&lattice::a_n(1))), "2_1^+1 3^+1");
        assert_eq!(s(&lattice::hyperbolic_plane().rescale(2).unwrap()), "2_II^+2");
    }

    #[test]
    fn scale_two_ambiguity() {
        // <1> + <2> and <3> + <6> as lattices give the same discriminant form
        assert_eq!(sym("2_1^+1"), sym("2_5^-1"));
        assert_ne!(sym("2_1^+1"), sym("2_7^+1"));
        assert_eq!(sym("4_1^+1 8_7^+1"), sym("4_7^+1 8_1^+1"));
    }

    #[test]
    fn symbol_round_trips_through_forms() {
        for text in [
            "3^+2 9^+1",
            "4_5^-1 8_1^+1 3^+1",
            "2_2^+2 3^+3",
            "8_6^-2 3^-1",
            "2_3^-1 4_7^+1 3^-1 5^+1",
            "4_7^-3 3^+1",
            "2_7^+1 8_II^-2 3^-1",
        ] {
            let s = sym(text);
            assert_eq!(s.to_form().to_symbol(), s, "{text}");
            assert_eq!(sym(&s.to_string()), s);
        }
    }
}
