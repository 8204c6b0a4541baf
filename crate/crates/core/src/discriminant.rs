//! Discriminant forms A_L = L*/L of even lattices.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::form::FiniteQuadraticForm;
use crate::lattice::GramLattice;
use crate::matrix::{self, IMat};

/// The discriminant form together with the coordinates of its generators in L ⊗ Q,
/// which is what is needed to push lattice isometries down to A_L.
#[derive(Clone, Debug)]
pub struct Discriminant {
    pub form: FiniteQuadraticForm,
    lattice: GramLattice,
    /// Rational coordinates (in the lattice basis) of the kept generators.
    gens: Vec<Vec<BigRational>>,
    /// Maps a dual vector to generator coordinates: c = D V^{-1} v.
    to_coords: Vec<Vec<BigRational>>,
    kept: Vec<usize>,
    orders: Vec<i64>,
}

fn small(x: &BigRational) -> Rational64 {
    Rational64::new(x.numer().to_i64().unwrap(), x.denom().to_i64().unwrap())
}

impl Discriminant {
    pub fn of(lattice: &GramLattice) -> Result<Self> {
        if !lattice.is_even() {
            return Err(Error::OddLattice);
        }
        let n = lattice.rank();
        let g: IMat = matrix::to_bigint(lattice.gram());
        let s = matrix::smith(&g);
        // G = U^{-1} D V^{-1}, so L* = G^{-1} Z^n = V D^{-1} Z^n.
        let v: Vec<Vec<BigRational>> = s
            .v
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let kept: Vec<usize> = (0..n).filter(|&i| s.diag[i] > BigInt::one()).collect();
        let gens: Vec<Vec<BigRational>> = kept
            .iter()
            .map(|&i| {
                let d = BigRational::from_integer(s.diag[i].clone());
                (0..n).map(|r| &v[r][i] / &d).collect()
            })
            .collect();
        let orders: Vec<i64> = kept.iter().map(|&i| s.diag[i].to_i64().unwrap()).collect();
        let gram_q = matrix::to_rational(lattice.gram());
        let ip = |x: &[BigRational], y: &[BigRational]| -> BigRational {
            let mut acc = BigRational::zero();
            for i in 0..n {
                if x[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    acc += &x[i] * &gram_q[i][j] * &y[j];
                }
            }
            acc
        };
        let k = gens.len();
        let mut q = Vec::with_capacity(k);
        let mut b = vec![vec![Rational64::zero(); k]; k];
        for i in 0..k {
            q.push(small(&reduce(ip(&gens[i], &gens[i]), 2)));
            for j in 0..k {
                b[i][j] = small(&reduce(ip(&gens[i], &gens[j]), 1));
            }
        }
        let form = FiniteQuadraticForm::from_parts(orders.clone(), q, b)?;
        let v_inv = matrix::inverse_big(&s.v).expect("unimodular");
        let to_coords = (0..n)
            .map(|i| {
                let d = BigRational::from_integer(s.diag[i].clone());
                v_inv[i].iter().map(|x| x * &d).collect()
            })
            .collect();
        Ok(Discriminant {
            form,
            lattice: lattice.clone(),
            gens,
            to_coords,
            kept,
            orders,
        })
    }

    /// Coordinates in A_L of a dual vector given in the lattice basis.
    pub fn coords_of(&self, v: &[BigRational]) -> Vec<i64> {
        self.kept
            .iter()
            .zip(&self.orders)
            .map(|(&i, &d)| {
                let c: BigRational = self.to_coords[i].iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(c.is_integer(), "vector is not in the dual lattice");
                let c = c.to_integer() % BigInt::from(d);
                c.to_i64().unwrap().rem_euclid(d)
            })
            .collect()
    }

    /// The automorphism of A_L induced by an isometry M of L (columns are images of basis vectors),
    /// as the images of the generators.
    pub fn induced(&self, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = self.lattice.rank();
        self.gens
            .iter()
            .map(|g| {
                let img: Vec<BigRational> = (0..n)
                    .map(|r| {
                        (0..n)
                            .map(|c| BigRational::from_integer(m[r][c].into()) * &g[c])
                            .sum()
                    })
                    .collect();
                self.coords_of(&img)
            })
            .collect()
    }
}

fn reduce(x: BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(m.into());
    let f = (&x / &m).floor();
    x - f * m
}

pub fn discriminant_form(lattice: &GramLattice) -> Result<FiniteQuadraticForm> {
    Ok(Discriminant::of(lattice)?.form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice;

    #[test]
    fn small_examples() {
        assert!(discriminant_form(&lattice::e_n(8)).unwrap().is_trivial());
        let e7 = discriminant_form(&lattice::e_n(7)).unwrap();
        assert_eq!(e7.order(), 2);
        assert_eq!(e7.q_gen(0), Rational64::new(3, 2));
        let a2 = discriminant_form(&lattice::a_n(2)).unwrap();
        assert_eq!(a2.q_gen(0), Rational64::new(2, 3));
        assert_eq!(
            discriminant_form(&lattice::odd_unimodular(1, 0)).unwrap_err(),
            Error::OddLattice
        );
    }

    #[test]
    fn induced_identity() {
        let l = GramLattice::new(vec![vec![12, 0], vec![0, 30]]).unwrap();
        let d = Discriminant::of(&l).unwrap();
        let id = d.induced(&[vec![1, 0], vec![0, 1]]);
        for (i, img) in id.iter().enumerate() {
            let mut e = vec![0; d.form.num_gens()];
            e[i] = 1;
            assert_eq!(img, &e);
        }
    }
}
