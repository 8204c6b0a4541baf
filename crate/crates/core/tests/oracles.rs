use proptest::prelude::*;

use latticelab::form::DEFAULT_CAP;
use latticelab::{discriminant_form, iso, lattice, GramLattice};

fn lattice_from(r: usize, d: Vec<i64>, o: Vec<i64>) -> Option<GramLattice> {
    let mut g = vec![vec![0; r]; r];
    let mut k = 0;
    for i in 0..r {
        g[i][i] = d[i];
        for j in i + 1..r {
            g[i][j] = o[k];
            g[j][i] = o[k];
            k += 1;
        }
    }
    GramLattice::new(g).ok()
}

fn small_even_lattice() -> impl Strategy<Value = GramLattice> {
    (1..=3usize)
        .prop_flat_map(|r| {
            (
                Just(r),
                proptest::collection::vec(proptest::sample::select(vec![-6i64, -4, -2, 2, 4, 6]), r),
                proptest::collection::vec(-3i64..=3, r * (r - 1) / 2),
            )
        })
        .prop_filter_map("degenerate or large", |(r, d, o)| {
            lattice_from(r, d, o).filter(|l| discriminant_form(l).is_ok_and(|q| q.order() <= 128))
        })
}

/// Integer matrix with determinant 1 from a product of elementary moves.
fn unimodular(n: usize, moves: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for &(i, j, k) in moves {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for r in 0..n {
            m[r][i] += k * m[r][j];
        }
    }
    m
}

fn transform(l: &GramLattice, m: &[Vec<i64>]) -> GramLattice {
    let n = l.rank();
    let g = l.gram();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for a in 0..n {
                for b in 0..n {
                    s += m[a][i] * g[a][b] * m[b][j];
                }
            }
            out[i][j] = s;
        }
    }
    GramLattice::new(out).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 120, ..ProptestConfig::default() })]

    #[test]
    fn symbols_agree_with_search(a in small_even_lattice(), b in small_even_lattice()) {
        let (qa, qb) = (discriminant_form(&a).unwrap(), discriminant_form(&b).unwrap());
        prop_assert_eq!(qa.is_isomorphic(&qb), iso::is_isomorphic_bruteforce(&qa, &qb, DEFAULT_CAP).unwrap());
        let qn = qa.negate();
        prop_assert_eq!(qa.is_isomorphic(&qn), iso::is_isomorphic_bruteforce(&qa, &qn, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn change_of_basis_keeps_the_form(
        l in small_even_lattice(),
        moves in proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
    ) {
        let m = unimodular(l.rank(), &moves);
        let l2 = transform(&l, &m);
        let (q1, q2) = (discriminant_form(&l).unwrap(), discriminant_form(&l2).unwrap());
        prop_assert!(q1.is_isomorphic(&q2));
        prop_assert!(iso::is_isomorphic_bruteforce(&q1, &q2, DEFAULT_CAP).unwrap());
        let padded = discriminant_form(&l2.direct_sum(&lattice::hyperbolic_plane())).unwrap();
        prop_assert!(iso::is_isomorphic_bruteforce(&q1, &padded, DEFAULT_CAP).unwrap());
    }
}
