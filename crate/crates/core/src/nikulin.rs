//! Existence and uniqueness criteria for even lattices with a given discriminant form,
//! primitive embeddings into even unimodular lattices, and overlattices that keep a factor primitive.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::form::FiniteQuadraticForm;
use crate::glue::{self, Subgroup};
use crate::symbol::GenusSymbol;

/// Signature together with a discriminant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvariant {
    pub n_plus: usize,
    pub n_minus: usize,
    pub form: FiniteQuadraticForm,
}

impl LatticeInvariant {
    pub fn new(n_plus: usize, n_minus: usize, form: FiniteQuadraticForm) -> Self {
        LatticeInvariant { n_plus, n_minus, form }
    }

    pub fn of_lattice(l: &crate::GramLattice) -> Result<Self> {
        let (p, m) = l.signature();
        Ok(LatticeInvariant::new(p, m, crate::discriminant_form(l)?))
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "signature": [self.n_plus, self.n_minus],
            "symbol": self.form.to_symbol().to_string(),
            "form": self.form.to_json(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Existence {
    pub exists: bool,
    pub failed_condition: Option<u8>,
    pub reason: String,
}

impl Existence {
    fn ok() -> Self {
        Existence {
            exists: true,
            failed_condition: None,
            reason: "all four conditions hold".into(),
        }
    }

    fn fail(cond: u8, reason: String) -> Self {
        Existence {
            exists: false,
            failed_condition: Some(cond),
            reason,
        }
    }
}

/// Whether an even lattice with signature (n_plus, n_minus) and discriminant form q exists.
/// Reports the first failing condition.
pub fn even_lattice_exists(inv: &LatticeInvariant) -> Existence {
    let q = &inv.form;
    let sym = q.to_symbol();
    let sig = q.signature_mod8() as i64;
    let diff = inv.n_plus as i64 - inv.n_minus as i64;
    if (diff - sig).rem_euclid(8) != 0 {
        return Existence::fail(
            1,
            format!("n+ - n- = {diff} but the form has signature {sig} mod 8"),
        );
    }
    let rank = inv.rank();
    if rank < q.length() {
        return Existence::fail(
            2,
            format!("rank {rank} is smaller than the length {} of the group", q.length()),
        );
    }
    let order = q.order();
    for p in q.primes() {
        let lp = q.primary_length(p);
        if p == 2 || rank != lp {
            continue;
        }
        let unit = (order / p.pow(arith::valuation(order, p))) as i64;
        let signed = if inv.n_minus % 2 == 1 { -unit } else { unit };
        let want = sym.sign_product(p);
        if arith::legendre(signed, p as i64) != want {
            return Existence::fail(
                3,
                format!("determinant class at p = {p} does not match the form"),
            );
        }
    }
    if q.primary_length(2) == rank && rank > 0 && !sym.has_odd_scale_two() {
        let unit = (order >> arith::valuation(order, 2)) as i64;
        // up to sign, so (-1)^{n_minus} drops out of the square class test
        if arith::chi8(unit) != sym.sign_product(2) {
            return Existence::fail(
                4,
                "2-adic determinant class does not match the form".to_string(),
            );
        }
    }
    Existence::ok()
}

/// Both hypotheses of the sufficient uniqueness criterion for a primitive embedding
/// into the even unimodular lattice of signature (l1, l2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Uniqueness {
    pub unique: bool,
    pub note: String,
}

pub fn unique_primitive_embedding(inv: &LatticeInvariant, l1: usize, l2: usize) -> Result<Uniqueness> {
    if (l1 as i64 - l2 as i64).rem_euclid(8) != 0 {
        return Err(Error::BadSignature(format!("no even unimodular lattice of signature ({l1},{l2})")));
    }
    let slack = (l1 + l2) as i64 - inv.rank() as i64;
    let holds = l1 > inv.n_plus && l2 > inv.n_minus && slack >= inv.form.length() as i64 + 2;
    Ok(Uniqueness {
        unique: holds,
        note: if holds {
            "unique up to isometry".into()
        } else {
            "criterion silent".into()
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingVerdict {
    pub existence: Existence,
    pub complement: Option<LatticeInvariant>,
}

impl EmbeddingVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "exists": self.existence.exists,
            "failed_condition": self.existence.failed_condition,
            "reason": self.existence.reason,
            "complement": self.complement.as_ref().map(|c| c.to_json()),
        })
    }
}

/// A primitive embedding into II(l1, l2) exists iff the complement invariant
/// ((l1 - n1, l2 - n2), -q) is realized by an even lattice.
pub fn primitive_embedding_into_even_unimodular_exists(
    inv: &LatticeInvariant,
    l1: usize,
    l2: usize,
) -> Result<EmbeddingVerdict> {
    if l1 < inv.n_plus || l2 < inv.n_minus || (l1 as i64 - l2 as i64).rem_euclid(8) != 0 {
        return Err(Error::BadSignature(format!(
            "cannot embed signature ({},{}) into II({l1},{l2})",
            inv.n_plus, inv.n_minus
        )));
    }
    let comp = LatticeInvariant::new(l1 - inv.n_plus, l2 - inv.n_minus, inv.form.negate());
    let existence = even_lattice_exists(&comp);
    Ok(EmbeddingVerdict {
        complement: existence.exists.then_some(comp),
        existence,
    })
}

#[derive(Clone, Debug)]
pub struct SaturationWitness {
    pub glue: Subgroup,
    pub form: FiniteQuadraticForm,
    pub index: u64,
}

impl SaturationWitness {
    pub fn symbol(&self) -> GenusSymbol {
        self.form.to_symbol()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "index": self.index,
            "glue": self.glue.gens,
            "symbol": self.symbol().to_string(),
        })
    }
}

/// Isotropic subgroups H of q_S ⊕ q_R with H ∩ A_S = 0, with the forms on H^⊥/H.
/// Coordinates put the generators of q_S first. The trivial witness is listed first.
pub fn saturations_keeping_primitive(
    q_s: &FiniteQuadraticForm,
    q_r: &FiniteQuadraticForm,
    cap: u64,
) -> Result<Vec<SaturationWitness>> {
    let total = q_s.direct_sum(q_r);
    let ns = q_s.num_gens();
    let subgroups = glue::isotropic_subgroups_where(&total, cap, |x| {
        x.iter().all(|c| *c == 0) || x[ns..].iter().any(|c| *c != 0)
    })?;
    subgroups
        .into_iter()
        .map(|h| {
            let form = glue::complement_quotient(&total, &h.gens)?;
            Ok(SaturationWitness {
                index: h.order,
                glue: h,
                form,
            })
        })
        .collect()
}
