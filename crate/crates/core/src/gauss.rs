//! Milgram signatures from exact Gauss sums in Z[ζ_M].

use num_integer::Integer;
use num_rational::Rational64;

use crate::arith;
use crate::form::FiniteQuadraticForm;

/// Above this order the p-part is summed block by block over its Jordan splitting.
const DIRECT_SUM_LIMIT: u64 = 1 << 16;

/// Elements of Z[x]/(x^M - 1).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cyclo {
    c: Vec<i128>,
}

impl Cyclo {
    fn zero(m: usize) -> Self {
        Cyclo { c: vec![0; m] }
    }

    fn monomial(m: usize, k: usize, coeff: i128) -> Self {
        let mut z = Self::zero(m);
        z.c[k % m] = coeff;
        z
    }

    fn mul(&self, o: &Cyclo) -> Cyclo {
        let m = self.c.len();
        let support: Vec<(usize, i128)> = o
            .c
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != 0)
            .map(|(j, b)| (j, *b))
            .collect();
        let mut out = Self::zero(m);
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for &(j, b) in &support {
                out.c[(i + j) % m] += a * b;
            }
        }
        out
    }

    fn sub(&self, o: &Cyclo) -> Cyclo {
        Cyclo {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    /// Zero in Z[ζ_M] for M = 2^a p^k with a >= 1 and p odd (or p^k = 1).
    ///
    /// Uses Z[ζ_M] = Z[ζ_{2^a}] ⊗ Z[ζ_{p^k}]: the powers ζ_{2^a}^j with j < 2^(a-1) are a basis
    /// of the first factor, and a vector of coefficients on the powers of ζ_{p^k} vanishes
    /// iff it is constant on each coset of p^(k-1) Z / p^k Z.
    fn is_zero(&self) -> bool {
        let m = self.c.len();
        let two = 1usize << m.trailing_zeros();
        let odd = m / two;
        let half = two / 2;
        let mut acc = vec![vec![0i128; odd]; half];
        for (i, &c) in self.c.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let j = i % two;
            let (j, c) = if j >= half { (j - half, -c) } else { (j, c) };
            acc[j][i % odd] += c;
        }
        if odd == 1 {
            return acc.iter().all(|v| v[0] == 0);
        }
        let p = smallest_prime_factor(odd);
        let stride = odd / p;
        acc.iter()
            .all(|v| (0..stride).all(|r| (1..p).all(|t| v[r + t * stride] == v[r])))
    }
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..).find(|d| n % d == 0 || d * d > n).map_or(n, |d| if n % d == 0 { d } else { n })
}

/// sqrt(p) in Z[ζ_M], from the quadratic Gauss sum for odd p and ζ_8 + ζ_8^{-1} for p = 2.
fn sqrt_prime(p: u64, m: usize) -> Cyclo {
    let eighth = m / 8;
    if p == 2 {
        let mut r = Cyclo::monomial(m, eighth, 1);
        r.c[7 * eighth] += 1;
        return r;
    }
    let step = m / p as usize;
    let mut g = Cyclo::zero(m);
    for t in 1..p {
        g.c[t as usize * step] += arith::legendre(t as i64, p as i64) as i128;
    }
    // the Gauss sum is sqrt(p) for p = 1 mod 4 and i sqrt(p) for p = 3 mod 4
    if p % 4 == 3 {
        g = g.mul(&Cyclo::monomial(m, 6 * eighth, 1));
    }
    g
}

/// exp(πi q) as a power of ζ_M, for q in Q/2Z with 2·denominator dividing M.
fn exponent_of(q: Rational64, m: usize) -> usize {
    let k = q * Rational64::from_integer(m as i64 / 2);
    assert!(k.is_integer(), "modulus too small for the value");
    k.to_integer().rem_euclid(m as i64) as usize
}

fn gauss_sum_direct(form: &FiniteQuadraticForm, m: usize) -> Cyclo {
    let mut g = Cyclo::zero(m);
    for idx in 0..form.order() as usize {
        let x = form.element(idx);
        g.c[exponent_of(form.q_value(&x), m)] += 1;
    }
    g
}

fn gauss_sum_blocks(form: &FiniteQuadraticForm, p: u64, m: usize) -> Cyclo {
    let mut g = Cyclo::monomial(m, 0, 1);
    let blocks = crate::symbol::jordan_blocks(form, p).expect("non-degenerate");
    for blk in blocks {
        let part = match blk {
            crate::symbol::JordanBlock::Cyclic { exponent, unit } => {
                let pk = (p as i64).pow(exponent);
                let num = if p == 2 {
                    unit
                } else if unit % 2 == 0 {
                    unit
                } else {
                    unit + pk
                };
                FiniteQuadraticForm::diagonal(&[(pk, Rational64::new(num, pk))]).unwrap()
            }
            crate::symbol::JordanBlock::Even { exponent, v_type } => {
                let pk = 1i64 << exponent;
                let d = if v_type {
                    Rational64::new(2, pk)
                } else {
                    Rational64::from_integer(0)
                };
                let off = Rational64::new(1, pk);
                FiniteQuadraticForm::from_parts(vec![pk, pk], vec![d, d], vec![vec![d, off], vec![off, d]])
                    .unwrap()
            }
        };
        g = g.mul(&gauss_sum_direct(&part, m));
    }
    g
}

/// Signature mod 8 of the p-primary part, from Σ exp(πi q(x)) = sqrt|A_p| · ζ_8^sig.
pub fn primary_signature(form: &FiniteQuadraticForm, p: u64) -> u8 {
    let part = form.primary_part(p);
    let order = part.order();
    if order == 1 {
        return 0;
    }
    let e = arith::valuation(order, p);
    let exp = part.orders().iter().copied().max().unwrap() as usize;
    let m = 8usize.lcm(&(2 * exp));
    let g = if order <= DIRECT_SUM_LIMIT {
        gauss_sum_direct(&part, m)
    } else {
        gauss_sum_blocks(&part, p, m)
    };
    let mut root = Cyclo::monomial(m, 0, (p as i128).pow(e / 2));
    if e % 2 == 1 {
        root = root.mul(&sqrt_prime(p, m));
    }
    let mut unit = Cyclo::monomial(m, 0, 1);
    let step = Cyclo::monomial(m, m / 8, 1);
    for s in 0..8u8 {
        if g.sub(&root.mul(&unit)).is_zero() {
            return s;
        }
        unit = unit.mul(&step);
    }
    unreachable!("Gauss sum of a non-degenerate form is sqrt|A| times an 8th root of unity")
}

impl FiniteQuadraticForm {
    /// The Milgram signature, an element of Z/8.
    pub fn signature_mod8(&self) -> u8 {
        self.primes()
            .into_iter()
            .map(|p| primary_signature(self, p))
            .fold(0, |a, s| (a + s) % 8)
    }
}
