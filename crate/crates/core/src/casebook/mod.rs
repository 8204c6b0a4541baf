//! Classification pipeline over the Leech pair tables: the condition filter, the polarized
//! embedding criterion, transcendental lattices of maximal-rank cases, embedding counts and
//! non-symplectic orders.

mod data;
mod report;
pub mod weights;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use data::{load_fu_cases, load_table, parse_table, record, FuCase, LeechPairRecord, TableId, DATA_ENV};
pub use report::{full_report, render_table, report_json};
pub use weights::{family_dimension, symplectic_weight_check, DiagonalAction};

use crate::discriminant::Discriminant;
use crate::error::{Error, Result};
use crate::form::{FiniteQuadraticForm, DEFAULT_CAP};
use crate::glue;
use crate::iso;
use crate::lattice::{self, GramLattice};
use crate::nikulin::{self, EmbeddingVerdict, LatticeInvariant, SaturationWitness};
use crate::rank2::{self, Parity, Rank2Form};
use crate::symbol::Sign;

/// Signature of the Borcherds lattice.
const TARGET: (usize, usize) = (26, 2);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolarizationRoot {
    /// Cubic fourfolds.
    E6,
    /// K3 surfaces of degree 2.
    E7,
    /// K3 surfaces of degree 4.
    D7,
    /// K3 surfaces of degree 6.
    E6A1,
    /// Elliptic K3 surfaces.
    E8,
}

impl PolarizationRoot {
    pub fn for_k3_degree(d: u32) -> Result<Self> {
        match d {
            0 => Ok(PolarizationRoot::E8),
            2 => Ok(PolarizationRoot::E7),
            4 => Ok(PolarizationRoot::D7),
            6 => Ok(PolarizationRoot::E6A1),
            _ => Err(Error::InvalidInput(format!("no root lattice for degree {d}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PolarizationRoot::E6 => "E6",
            PolarizationRoot::E7 => "E7",
            PolarizationRoot::D7 => "D7",
            PolarizationRoot::E6A1 => "E6+A1",
            PolarizationRoot::E8 => "E8",
        }
    }

    pub fn lattice(self) -> GramLattice {
        lattice::named(self.name()).expect("registry lattice")
    }

    pub fn form(self) -> FiniteQuadraticForm {
        crate::discriminant_form(&self.lattice()).expect("root lattices are even")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub pass: bool,
    /// α_p = rank K - l_p(A_K), for p = 2, 3 and every prime dividing |A_K|.
    pub alpha: BTreeMap<u64, i64>,
}

/// rank K >= 4, α_p >= 2 for p != 3 and α_3 >= 1.
pub fn condition_check_invariant(rank_k: usize, q_k: &FiniteQuadraticForm) -> ConditionResult {
    let mut primes: BTreeSet<u64> = q_k.primes().into_iter().collect();
    primes.extend([2, 3]);
    let alpha: BTreeMap<u64, i64> = primes
        .into_iter()
        .map(|p| (p, rank_k as i64 - q_k.primary_length(p) as i64))
        .collect();
    let pass = rank_k >= 4
        && alpha
            .iter()
            .all(|(&p, &a)| if p == 3 { a >= 1 } else { a >= 2 });
    ConditionResult { pass, alpha }
}

pub fn condition_check(rec: &LeechPairRecord) -> ConditionResult {
    condition_check_invariant(rec.rank_k, &rec.q_k.to_form())
}

#[derive(Clone, Debug)]
pub struct WitnessOutcome {
    pub witness: SaturationWitness,
    pub embedding: EmbeddingVerdict,
}

impl WitnessOutcome {
    pub fn passes(&self) -> bool {
        self.embedding.existence.exists
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.witness.to_json();
        v["embedding"] = self.embedding.to_json();
        v
    }
}

/// One isolated case: a passing witness together with a transcendental lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranscendentalClass {
    /// Position of the witness in the verdict's witness list.
    pub witness: usize,
    pub glue_index: u64,
    pub t: Rank2Form,
    pub embedding_count: Option<usize>,
    pub n_bar: Option<u32>,
    pub total_order: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct CaseVerdict {
    pub record: LeechPairRecord,
    pub root: PolarizationRoot,
    pub condition: ConditionResult,
    pub criterion_pass: bool,
    pub failure: Option<String>,
    pub witnesses: Vec<WitnessOutcome>,
    pub classes: Vec<TranscendentalClass>,
}

impl CaseVerdict {
    pub fn transcendental_lattices(&self) -> Vec<Rank2Form> {
        self.classes.iter().map(|c| c.t).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "table": self.record.table.name(),
            "row": self.record.row,
            "group": self.record.group,
            "order": self.record.order,
            "qK": self.record.q_k.to_string(),
            "root": self.root.name(),
            "condition": self.condition,
            "pass": self.criterion_pass,
            "failure": self.failure,
            "witnesses": self.witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
            "classes": self.classes,
        })
    }
}

fn describe_failure(outcomes: &[WitnessOutcome]) -> String {
    let cond = |w: &WitnessOutcome| w.embedding.existence.failed_condition.unwrap_or(0);
    let trivial = &outcomes[0];
    let mut text = format!(
        "condition {}: {}",
        cond(trivial),
        trivial.embedding.existence.reason
    );
    let others: Vec<String> = outcomes[1..]
        .iter()
        .map(|w| format!("index {} fails condition {}", w.witness.index, cond(w)))
        .collect();
    if others.is_empty() {
        text.push_str("; no saturation");
    } else {
        text.push_str("; saturations: ");
        text.push_str(&others.join(", "));
    }
    text
}

/// Saturations of S ⊕ R keeping S primitive, each tested for a primitive embedding into
/// the Borcherds lattice. Passes iff some witness embeds.
pub fn polarized_criterion(rec: &LeechPairRecord, root: PolarizationRoot) -> Result<CaseVerdict> {
    let condition = condition_check(rec);
    let q_s = rec.q_s();
    let q_r = root.form();
    let rank = rec.rank_s() + root.lattice().rank();
    let mut witnesses = Vec::new();
    for w in nikulin::saturations_keeping_primitive(&q_s, &q_r, DEFAULT_CAP)? {
        let embedding = if rank <= TARGET.0 {
            let inv = LatticeInvariant::new(rank, 0, w.form.clone());
            nikulin::primitive_embedding_into_even_unimodular_exists(&inv, TARGET.0, TARGET.1)?
        } else {
            EmbeddingVerdict {
                existence: nikulin::Existence {
                    exists: false,
                    failed_condition: Some(2),
                    reason: format!("rank {rank} exceeds the positive index {}", TARGET.0),
                },
                complement: None,
            }
        };
        witnesses.push(WitnessOutcome { witness: w, embedding });
    }
    let criterion_pass = witnesses.iter().any(|w| w.passes());
    Ok(CaseVerdict {
        record: rec.clone(),
        root,
        condition,
        failure: (!criterion_pass).then(|| describe_failure(&witnesses)),
        criterion_pass,
        witnesses,
        classes: Vec::new(),
    })
}

/// Rank-2 lattices realizing the complement of a passing witness.
pub fn transcendental_candidates(outcome: &WitnessOutcome) -> Result<Vec<Rank2Form>> {
    let comp = outcome
        .embedding
        .complement
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("witness does not embed".into()))?;
    if comp.rank() != 2 || (comp.n_plus != 0 && comp.n_minus != 0) {
        return Err(Error::NotMaximalRank);
    }
    let sign = if comp.n_minus == 2 { Sign::Minus } else { Sign::Plus };
    let det = comp.form.order() as i64;
    let mut out = Vec::new();
    for t in rank2::enumerate(det, Parity::Even, sign) {
        if crate::discriminant_form(&t.lattice())?.is_isomorphic(&comp.form) {
            out.push(t);
        }
    }
    Ok(out)
}

/// The part of A_S that glues to T inside the polarized lattice: the orthogonal complement of
/// the S-projection of the glue group.
fn glued_part(q_s: &FiniteQuadraticForm, witness: &SaturationWitness) -> FiniteQuadraticForm {
    let ns = q_s.num_gens();
    let proj: Vec<Vec<i64>> = witness.glue.gens.iter().map(|g| g[..ns].to_vec()).collect();
    glue::subgroup_form(q_s, &glue::orthogonal(q_s, &proj))
}

/// Images of the glued part of q_S inside -q_T, up to the isometries of T.
pub fn embedding_class_count(
    rec: &LeechPairRecord,
    witness: &SaturationWitness,
    t: &Rank2Form,
) -> Result<usize> {
    if rec.aut_qs_surjective != Some(true) {
        return Err(Error::AssumptionMissing);
    }
    let q_rel = glued_part(&rec.q_s(), witness);
    let disc = Discriminant::of(&t.lattice())?;
    let auts: Vec<Vec<Vec<i64>>> = t
        .isometries()
        .iter()
        .map(|m| disc.induced(&[vec![m[0][0], m[0][1]], vec![m[1][0], m[1][1]]]))
        .collect();
    Ok(iso::form_embeddings_mod_aut(&q_rel, &disc.form.negate(), &auts, DEFAULT_CAP)?.count)
}

/// All n = 2^k 3^l with φ(n) <= 22 - rank S.
pub fn phi_order_bound(rank_s: usize) -> Result<BTreeSet<u64>> {
    if rank_s > 20 {
        return Err(Error::InvalidInput(format!("rank S = {rank_s} exceeds 20")));
    }
    let bound = (22 - rank_s) as u64;
    let mut out = BTreeSet::new();
    let mut p2 = 1u64;
    while crate::arith::euler_phi(p2) <= bound {
        let mut n = p2;
        while crate::arith::euler_phi(n) <= bound {
            out.insert(n);
            n *= 3;
        }
        p2 *= 2;
    }
    Ok(out)
}

/// Largest admissible order of the non-symplectic quotient for a maximal-rank class, and the
/// total order |G| n̄. An order-3 (order-4) element needs an isometry of T of that order;
/// an involution needs the embedding of S ⊕ R to be non-primitive.
pub fn nonsymplectic_order(rec: &LeechPairRecord, class: &TranscendentalClass) -> Result<(u32, u64)> {
    let rank_t = 2u64;
    let orders = class.t.automorphism_orders();
    let allowed = |n: u64| {
        rank_t % crate::arith::euler_phi(n) == 0
            && (n % 3 != 0 || orders.contains(&3))
            && (n % 4 != 0 || orders.contains(&4))
            && (n % 2 != 0 || class.glue_index > 1)
    };
    let n = phi_order_bound(rec.rank_s())?
        .into_iter()
        .filter(|&n| allowed(n))
        .max()
        .unwrap_or(1);
    Ok((n as u32, rec.order * n))
}

/// Transcendental lattices, embedding counts and non-symplectic orders for a passing
/// maximal-rank verdict. Witnesses related by Aut(q_S) × Aut(q_R) give the same cases.
pub fn analyze_maximal(verdict: &mut CaseVerdict) -> Result<()> {
    let rec = &verdict.record;
    if rec.rank_s() != 20 {
        return Err(Error::NotMaximalRank);
    }
    let passing: Vec<usize> = (0..verdict.witnesses.len())
        .filter(|&i| verdict.witnesses[i].passes())
        .collect();
    let mut by_t: BTreeMap<(u64, Rank2Form), Vec<usize>> = BTreeMap::new();
    for &i in &passing {
        for t in transcendental_candidates(&verdict.witnesses[i])? {
            by_t.entry((verdict.witnesses[i].witness.index, t)).or_default().push(i);
        }
    }
    let q_s = rec.q_s();
    let q_r = verdict.root.form();
    let mut classes = Vec::new();
    // nontrivial glue first, matching the order in which the cases are usually listed
    for ((index, t), ws) in by_t.into_iter().rev() {
        let reps = if ws.len() > 1 {
            let total = q_s.direct_sum(&q_r);
            let auts = iso::direct_sum_automorphisms(
                &q_s,
                &iso::automorphisms(&q_s, DEFAULT_CAP)?,
                &q_r,
                &iso::automorphisms(&q_r, DEFAULT_CAP)?,
            );
            let sets: Vec<Vec<usize>> = ws
                .iter()
                .map(|&i| verdict.witnesses[i].witness.glue.elements.clone())
                .collect();
            iso::orbit_representatives(&total, &sets, &auts)
                .into_iter()
                .map(|k| ws[k])
                .collect()
        } else {
            ws
        };
        let count = match rec.aut_qs_surjective {
            Some(true) => {
                let mut c = 0;
                for &i in &reps {
                    c += embedding_class_count(rec, &verdict.witnesses[i].witness, &t)?;
                }
                Some(c)
            }
            _ => None,
        };
        let mut class = TranscendentalClass {
            witness: reps[0],
            glue_index: index,
            t,
            embedding_count: count,
            n_bar: None,
            total_order: None,
        };
        let (n, total) = nonsymplectic_order(rec, &class)?;
        class.n_bar = Some(n);
        class.total_order = Some(total);
        classes.push(class);
    }
    verdict.classes = classes;
    Ok(())
}

/// The full per-row analysis used by the report.
pub fn analyze_row(rec: &LeechPairRecord, root: PolarizationRoot) -> Result<CaseVerdict> {
    let mut v = polarized_criterion(rec, root)?;
    if !v.condition.pass {
        v.criterion_pass = false;
        v.failure = Some("condition on the fixed lattice fails".into());
        return Ok(v);
    }
    if v.criterion_pass && rec.rank_s() == 20 {
        analyze_maximal(&mut v)?;
    }
    Ok(v)
}
