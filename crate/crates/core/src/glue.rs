//! Isotropic subgroups and the quotients H^⊥/H.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::FiniteQuadraticForm;
use crate::matrix::{self, IMat};

/// A subgroup given by a generating set and its sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    pub order: u64,
    pub gens: Vec<Vec<i64>>,
    #[serde(skip)]
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(form: &FiniteQuadraticForm) -> Self {
        Subgroup {
            order: 1,
            gens: Vec::new(),
            elements: vec![form.index(&vec![0; form.num_gens()])],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.elements.binary_search(&idx).is_ok()
    }
}

/// Sorted indices of the subgroup generated by `gens`.
pub fn span(form: &FiniteQuadraticForm, gens: &[Vec<i64>]) -> Vec<usize> {
    let zero = vec![0; form.num_gens()];
    let mut seen = BTreeSet::from([form.index(&zero)]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = form.add(&x, g);
            if seen.insert(form.index(&y)) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Generators picked greedily in index order, so equal subgroups get equal generators.
pub fn canonical_gens(form: &FiniteQuadraticForm, elements: &[usize]) -> Vec<Vec<i64>> {
    let mut gens: Vec<Vec<i64>> = Vec::new();
    let mut current = span(form, &gens);
    for &idx in elements {
        if current.len() == elements.len() {
            break;
        }
        if current.binary_search(&idx).is_err() {
            gens.push(form.element(idx));
            current = span(form, &gens);
        }
    }
    gens
}

fn make_subgroup(form: &FiniteQuadraticForm, elements: Vec<usize>) -> Subgroup {
    Subgroup {
        order: elements.len() as u64,
        gens: canonical_gens(form, &elements),
        elements,
    }
}

pub fn isotropic_subgroups(form: &FiniteQuadraticForm, cap: u64) -> Result<Vec<Subgroup>> {
    isotropic_subgroups_where(form, cap, |_| true)
}

/// Isotropic subgroups all of whose elements satisfy `keep`. Elements failing `keep` are
/// never added, which prunes the search; the zero element must satisfy it.
pub fn isotropic_subgroups_where(
    form: &FiniteQuadraticForm,
    cap: u64,
    keep: impl Fn(&[i64]) -> bool,
) -> Result<Vec<Subgroup>> {
    form.check_cap(cap)?;
    let order = form.order() as usize;
    let zero_q = |x: &[i64]| form.q_num(x) == 0;
    let candidates: Vec<Vec<i64>> = (1..order)
        .map(|i| form.element(i))
        .filter(|x| zero_q(x) && keep(x))
        .collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let start = vec![0usize];
    found.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        let elems: Vec<Vec<i64>> = h.iter().map(|&i| form.element(i)).collect();
        for x in &candidates {
            if h.binary_search(&form.index(x)).is_ok() {
                continue;
            }
            if elems.iter().any(|e| form.b_num(e, x) != 0) {
                continue;
            }
            // H + <x> is isotropic since x is isotropic and orthogonal to H
            let mut next: BTreeSet<usize> = BTreeSet::new();
            let mut mult = vec![0; form.num_gens()];
            loop {
                for e in &elems {
                    next.insert(form.index(&form.add(e, &mult)));
                }
                mult = form.add(&mult, x);
                if mult.iter().all(|c| *c == 0) {
                    break;
                }
            }
            let next: Vec<usize> = next.into_iter().collect();
            if next.iter().all(|&i| keep(&form.element(i))) && found.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().map(|e| make_subgroup(form, e)).collect();
    out.sort_by(|a, b| (a.order, &a.elements).cmp(&(b.order, &b.elements)));
    Ok(out)
}

pub fn is_isotropic(form: &FiniteQuadraticForm, gens: &[Vec<i64>]) -> bool {
    gens.iter().all(|g| form.q_num(g) == 0)
        && gens
            .iter()
            .all(|g| gens.iter().all(|h| form.b_num(g, h) == 0))
}

/// Elements orthogonal to every generator.
pub fn orthogonal(form: &FiniteQuadraticForm, gens: &[Vec<i64>]) -> Vec<usize> {
    (0..form.order() as usize)
        .filter(|&i| {
            let x = form.element(i);
            gens.iter().all(|g| form.b_num(&x, g) == 0)
        })
        .collect()
}

/// Column basis of the lattice spanned by `cols` together with diag(orders) Z^r.
fn lattice_basis(orders: &[i64], cols: &[Vec<i64>]) -> IMat {
    let r = orders.len();
    let mut m: IMat = vec![Vec::new(); r];
    for c in cols.iter() {
        for i in 0..r {
            m[i].push(BigInt::from(c[i]));
        }
    }
    for (j, d) in orders.iter().enumerate() {
        for i in 0..r {
            m[i].push(if i == j { BigInt::from(*d) } else { BigInt::zero() });
        }
    }
    let s = matrix::smith(&m);
    // column span of M is U^{-1} D Z^r
    (0..r)
        .map(|i| (0..r).map(|j| &s.u_inv[i][j] * &s.diag[j]).collect())
        .collect()
}

fn solve_integer(p: &IMat, v: &[i64]) -> Vec<BigInt> {
    let r = p.len();
    let pq: Vec<Vec<i64>> = p.iter().map(|row| row.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
    let inv = matrix::inverse(&pq).expect("basis of a full-rank lattice");
    (0..r)
        .map(|i| {
            let s: num_rational::BigRational = (0..r)
                .map(|j| &inv[i][j] * num_rational::BigRational::from_integer(v[j].into()))
                .sum();
            assert!(s.is_integer(), "vector lies in the lattice");
            s.to_integer()
        })
        .collect()
}

/// The form induced on H^⊥/H for an isotropic subgroup H given by generators.
pub fn complement_quotient(form: &FiniteQuadraticForm, h_gens: &[Vec<i64>]) -> Result<FiniteQuadraticForm> {
    if !is_isotropic(form, h_gens) {
        return Err(Error::NotIsotropic);
    }
    let perp = orthogonal(form, h_gens);
    Ok(quotient_form(form, &perp, h_gens))
}

/// The form restricted to a subgroup W (sorted element indices), assumed non-degenerate there.
pub fn subgroup_form(form: &FiniteQuadraticForm, w: &[usize]) -> FiniteQuadraticForm {
    quotient_form(form, w, &[])
}

/// W/H with the induced values, for H inside W and isotropic and orthogonal to W.
fn quotient_form(form: &FiniteQuadraticForm, w: &[usize], h_gens: &[Vec<i64>]) -> FiniteQuadraticForm {
    let w_gens = canonical_gens(form, w);
    let orders = form.orders();
    let r = orders.len();
    if r == 0 {
        return FiniteQuadraticForm::trivial();
    }
    let p = lattice_basis(orders, &w_gens);
    let mut cols: Vec<Vec<BigInt>> = h_gens.iter().map(|g| solve_integer(&p, g)).collect();
    for (j, d) in orders.iter().enumerate() {
        let mut e = vec![0; r];
        e[j] = *d;
        cols.push(solve_integer(&p, &e));
    }
    let c: IMat = (0..r).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
    let s = matrix::smith(&c);
    let mut gens = Vec::new();
    let mut gen_orders = Vec::new();
    for i in 0..r {
        if s.diag[i] <= BigInt::one() {
            continue;
        }
        // P U2^{-1} e_i, reduced into A
        let mut g = vec![0i64; r];
        for (row, gi) in g.iter_mut().enumerate() {
            let v: BigInt = (0..r).map(|k| &p[row][k] * &s.u_inv[k][i]).sum();
            *gi = (v % BigInt::from(orders[row])).to_i64().unwrap();
        }
        form.reduce(&mut g);
        gens.push(g);
        gen_orders.push(s.diag[i].to_i64().unwrap());
    }
    form.restrict(&gens, &gen_orders)
        .expect("cyclic generators of a subquotient give a well-defined form")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::GenusSymbol;

    fn sym(s: &str) -> FiniteQuadraticForm {
        GenusSymbol::parse(s).unwrap().to_form()
    }

    #[test]
    fn a2_plus_e6_glue() {
        let q = sym("3^-1").direct_sum(&sym("3^+1"));
        let hs = isotropic_subgroups(&q, 4096).unwrap();
        // <(1,1)> and <(1,2)>, exchanged by -1 on the second summand
        assert_eq!(hs.len(), 3);
        assert!(hs[0].is_trivial());
        assert_eq!((hs[1].order, hs[2].order), (3, 3));
        assert_eq!(hs[1].gens, vec![vec![1, 1]]);
        assert_eq!(hs[2].gens, vec![vec![1, 2]]);
        assert!(complement_quotient(&q, &hs[1].gens).unwrap().is_trivial());
        assert!(complement_quotient(&q, &[]).unwrap().is_isomorphic(&q));
    }

    #[test]
    fn not_isotropic() {
        let q = sym("3^+1");
        assert_eq!(complement_quotient(&q, &[vec![1]]), Err(Error::NotIsotropic));
    }

    #[test]
    fn order_law() {
        let q = sym("2_II^+2 3^+2").direct_sum(&sym("3^-1 9^+1"));
        for h in isotropic_subgroups(&q, 4096).unwrap() {
            let quo = complement_quotient(&q, &h.gens).unwrap();
            assert_eq!(quo.order() * h.order * h.order, q.order());
        }
    }
}
