//! Small integer helpers shared by the form and symbol code.

use num_integer::Integer;

pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

pub fn modp128(a: i128, m: i128) -> i128 {
    a.rem_euclid(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

pub fn pow_mod(mut base: i64, mut exp: u64, m: i64) -> i64 {
    let mut acc: i128 = 1 % m as i128;
    let mut b = base.rem_euclid(m) as i128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as i128;
        }
        b = b * b % m as i128;
        exp >>= 1;
    }
    base = acc as i64;
    base
}

/// Legendre symbol (a/p) for an odd prime p; 0 when p | a.
pub fn legendre(a: i64, p: i64) -> i8 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, ((p - 1) / 2) as u64, p) == 1 {
        1
    } else {
        -1
    }
}

/// The character of an odd 2-adic unit: +1 for u = ±1 mod 8, -1 for u = ±3 mod 8.
pub fn chi8(u: i64) -> i8 {
    match u.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => panic!("chi8 of an even number"),
    }
}

pub fn valuation(mut n: u64, p: u64) -> u32 {
    if n == 0 {
        return 0;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `Some((p, k))` when n = p^k with k >= 1.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn smallest_nonresidue(p: i64) -> i64 {
    (2..p).find(|&a| legendre(a, p) == -1).expect("odd prime has a nonresidue")
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(1, |acc, (p, k)| acc * (p - 1) * p.pow(k - 1))
}
