//! Brute-force isometries between finite quadratic forms.
//!
//! These searches work directly on the group elements. They serve as an
//! independent check on the symbol-based isomorphism test and count embeddings
//! up to a supplied set of automorphisms.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::Serialize;

use crate::error::Result;
use crate::form::FiniteQuadraticForm;
use crate::glue;

struct Target<'a> {
    form: &'a FiniteQuadraticForm,
    elems: Vec<Vec<i64>>,
    q: Vec<Rational64>,
    ord: Vec<i64>,
}

impl<'a> Target<'a> {
    fn new(form: &'a FiniteQuadraticForm) -> Self {
        let elems = form.elements();
        let q = elems.iter().map(|x| form.q_value(x)).collect();
        let ord = elems.iter().map(|x| form.element_order(x)).collect();
        Target { form, elems, q, ord }
    }
}

/// Every assignment of generator images preserving orders, q and b.
/// `visit` returns false to stop the search.
fn search_maps(
    src: &FiniteQuadraticForm,
    dst: &Target,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    fn go(
        src: &FiniteQuadraticForm,
        dst: &Target,
            chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let i = chosen.len();
        if i == src.num_gens() {
            return visit(chosen);
        }
        let mut g = vec![0; src.num_gens()];
        g[i] = 1;
        let d = src.orders()[i];
        let qg = src.q_gen(i);
        for y in 0..dst.elems.len() {
            if dst.ord[y] != d || dst.q[y] != qg {
                continue;
            }
            let consistent = (0..i).all(|j| {
                let mut h = vec![0; src.num_gens()];
                h[j] = 1;
                dst.form.b_value(&dst.elems[y], &dst.elems[chosen[j]]) == src.b_value(&g, &h)
            });
            if !consistent {
                continue;
            }
            chosen.push(y);
            let go_on = go(src, dst, chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    go(src, dst, &mut Vec::new(), visit);
}

fn histogram(form: &FiniteQuadraticForm) -> BTreeMap<(i64, Rational64), usize> {
    let mut h = BTreeMap::new();
    for x in form.elements() {
        *h.entry((form.element_order(&x), form.q_value(&x))).or_insert(0) += 1;
    }
    h
}

/// Isomorphism test by direct search, one primary part at a time.
pub fn is_isomorphic_bruteforce(q1: &FiniteQuadraticForm, q2: &FiniteQuadraticForm, cap: u64) -> Result<bool> {
    q1.check_cap(cap)?;
    q2.check_cap(cap)?;
    if q1.order() != q2.order() || q1.primes() != q2.primes() {
        return Ok(false);
    }
    for p in q1.primes() {
        let (a, b) = (q1.primary_part(p), q2.primary_part(p));
        let mut oa = a.orders().to_vec();
        let mut ob = b.orders().to_vec();
        oa.sort_unstable();
        ob.sort_unstable();
        if oa != ob || histogram(&a) != histogram(&b) {
            return Ok(false);
        }
        // a b-preserving map from a non-degenerate form is injective, hence bijective here
        let target = Target::new(&b);
        let mut found = false;
        search_maps(&a, &target, &mut |_| {
            found = true;
            false
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All automorphisms of a form, each as the list of generator images.
pub fn automorphisms(form: &FiniteQuadraticForm, cap: u64) -> Result<Vec<Vec<Vec<i64>>>> {
    form.check_cap(cap)?;
    let target = Target::new(form);
    let mut out = Vec::new();
    search_maps(form, &target, &mut |imgs| {
        out.push(imgs.iter().map(|&y| target.elems[y].clone()).collect());
        true
    });
    Ok(out)
}

/// Image of an element under the homomorphism with the given generator images.
pub fn apply(form: &FiniteQuadraticForm, images: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    let mut y = vec![0; form.num_gens()];
    for (xi, img) in x.iter().zip(images) {
        y = form.add(&y, &form.scale(*xi, img));
    }
    y
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingCount {
    pub count: usize,
    /// Generators of one image subgroup per orbit.
    pub witnesses: Vec<Vec<Vec<i64>>>,
}

/// Images of isometric embeddings q_small -> q_big, counted up to the group generated by `aut_big`.
pub fn form_embeddings_mod_aut(
    q_small: &FiniteQuadraticForm,
    q_big: &FiniteQuadraticForm,
    aut_big: &[Vec<Vec<i64>>],
    cap: u64,
) -> Result<EmbeddingCount> {
    q_small.check_cap(cap)?;
    q_big.check_cap(cap)?;
    let target = Target::new(q_big);
    let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
    search_maps(q_small, &target, &mut |imgs| {
        let gens: Vec<Vec<i64>> = imgs.iter().map(|&y| target.elems[y].clone()).collect();
        images.insert(glue::span(q_big, &gens));
        true
    });
    let images: Vec<Vec<usize>> = images.into_iter().collect();
    let witnesses: Vec<Vec<Vec<i64>>> = orbit_representatives(q_big, &images, aut_big)
        .into_iter()
        .map(|i| glue::canonical_gens(q_big, &images[i]))
        .collect();
    Ok(EmbeddingCount {
        count: witnesses.len(),
        witnesses,
    })
}

/// Indices of the first member of each orbit of `sets` (sorted element indices)
/// under the group generated by `auts`.
pub fn orbit_representatives(
    form: &FiniteQuadraticForm,
    sets: &[Vec<usize>],
    auts: &[Vec<Vec<i64>>],
) -> Vec<usize> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps = Vec::new();
    for (k, start) in sets.iter().enumerate() {
        if seen.contains(start) {
            continue;
        }
        reps.push(k);
        let mut stack = vec![start.clone()];
        seen.insert(start.clone());
        while let Some(h) = stack.pop() {
            for a in auts {
                let mut img: Vec<usize> = h
                    .iter()
                    .map(|&i| form.index(&apply(form, a, &form.element(i))))
                    .collect();
                img.sort_unstable();
                if seen.insert(img.clone()) {
                    stack.push(img);
                }
            }
        }
    }
    reps
}

/// Automorphisms of q1 ⊕ q2 of the form a1 ⊕ 1 and 1 ⊕ a2; they generate Aut(q1) × Aut(q2).
pub fn direct_sum_automorphisms(
    q1: &FiniteQuadraticForm,
    auts1: &[Vec<Vec<i64>>],
    q2: &FiniteQuadraticForm,
    auts2: &[Vec<Vec<i64>>],
) -> Vec<Vec<Vec<i64>>> {
    let (n1, n2) = (q1.num_gens(), q2.num_gens());
    let unit = |i: usize| {
        let mut e = vec![0; n1 + n2];
        e[i] = 1;
        e
    };
    let mut out = Vec::new();
    for a in auts1 {
        let mut imgs: Vec<Vec<i64>> = a
            .iter()
            .map(|img| {
                let mut v = img.clone();
                v.extend(std::iter::repeat(0).take(n2));
                v
            })
            .collect();
        imgs.extend((n1..n1 + n2).map(unit));
        out.push(imgs);
    }
    for a in auts2 {
        let mut imgs: Vec<Vec<i64>> = (0..n1).map(unit).collect();
        imgs.extend(a.iter().map(|img| {
            let mut v = vec![0; n1];
            v.extend(img);
            v
        }));
        out.push(imgs);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::GenusSymbol;

    fn sym(s: &str) -> FiniteQuadraticForm {
        GenusSymbol::parse(s).unwrap().to_form()
    }

    #[test]
    fn oddity_distinguishes() {
        assert!(!is_isomorphic_bruteforce(&sym("2_1^+1"), &sym("2_7^+1"), 4096).unwrap());
        let q = sym("2_II^-2 3^-1 7^-1");
        let t = q.direct_sum(&FiniteQuadraticForm::trivial());
        assert!(is_isomorphic_bruteforce(&q, &t, 4096).unwrap());
    }

    #[test]
    fn self_embedding_modulo_everything() {
        let q = sym("4_7^+1 3^-1");
        let auts = automorphisms(&q, 4096).unwrap();
        assert_eq!(auts.len(), 4);
        let e = form_embeddings_mod_aut(&q, &q, &auts, 4096).unwrap();
        assert_eq!(e.count, 1);
    }
}
