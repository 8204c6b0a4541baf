//! Diagonal actions 1/n(k1,...,k6) on cubic fourfolds and the dimension of their invariant families.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalAction {
    pub order: u32,
    pub weights: [u32; 6],
    /// Weight class of the cubic: g^*F = ζ^{w0} F.
    pub w0: u32,
}

impl DiagonalAction {
    pub fn new(order: u32, weights: [u32; 6], w0: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("order must be positive".into()));
        }
        Ok(DiagonalAction {
            order,
            weights: weights.map(|w| w % order),
            w0: w0 % order,
        })
    }

    pub fn weight_of(&self, monomial: &[u8; 6]) -> u32 {
        let s: u32 = monomial.iter().zip(self.weights).map(|(&e, w)| e as u32 * w).sum();
        s % self.order
    }

    pub fn weight_sum(&self) -> u32 {
        self.weights.iter().sum::<u32>() % self.order
    }
}

/// The 56 cubic monomials in six variables, as exponent vectors in lexicographic order.
pub fn cubic_monomials() -> Vec<[u8; 6]> {
    let mut out = Vec::with_capacity(56);
    for a in 0..6 {
        for b in a..6 {
            for c in b..6 {
                let mut e = [0u8; 6];
                e[a] += 1;
                e[b] += 1;
                e[c] += 1;
                out.push(e);
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// The action is symplectic iff |w| = 2 deg_w(F) mod n, where all monomials of F share one weight.
pub fn symplectic_weight_check(act: &DiagonalAction, monomials: &[[u8; 6]]) -> Result<bool> {
    let mut classes = monomials.iter().map(|m| act.weight_of(m));
    let Some(w) = classes.next() else {
        return Err(Error::InvalidInput("no monomials given".into()));
    };
    if classes.any(|v| v != w) {
        return Err(Error::MixedWeightClasses);
    }
    Ok(act.weight_sum() == (2 * w) % act.order)
}

/// Monomials lying in the prescribed weight class of every generator.
pub fn invariant_monomials(gens: &[DiagonalAction]) -> Vec<[u8; 6]> {
    cubic_monomials()
        .into_iter()
        .filter(|m| gens.iter().all(|g| g.weight_of(m) == g.w0))
        .collect()
}

/// Number of invariant cubic monomials minus the dimension of the centralizer of the group in GL6.
pub fn family_dimension(gens: &[DiagonalAction]) -> usize {
    let count = invariant_monomials(gens).len();
    let mut chars: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for i in 0..6 {
        *chars.entry(gens.iter().map(|g| g.weights[i]).collect()).or_insert(0) += 1;
    }
    let centralizer: usize = chars.values().map(|m| m * m).sum();
    count.saturating_sub(centralizer)
}
