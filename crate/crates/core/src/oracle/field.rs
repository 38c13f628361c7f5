use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::symbolic::{mul_mod, Polynomial, Variable};

/// Deterministic primality test for moduli below 2^64 by trial division.
/// Only used on desk-scale moduli.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q.is_multiple_of(2) {
        return q == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A point over the prime field `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPoint {
    q: u64,
    assignment: BTreeMap<Variable, u64>,
}

impl FieldPoint {
    pub fn new(q: u64, assignment: BTreeMap<Variable, u64>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidInput(format!("{q} is not prime")));
        }
        let assignment = assignment.into_iter().map(|(v, x)| (v, x % q)).collect();
        Ok(FieldPoint { q, assignment })
    }

    /// Fixed zeros on `zeros`, uniform nonzero residues on `free`.
    pub fn random<R: Rng>(
        q: u64,
        free: impl IntoIterator<Item = Variable>,
        zeros: impl IntoIterator<Item = Variable>,
        rng: &mut R,
    ) -> Result<Self> {
        let mut assignment: BTreeMap<Variable, u64> =
            free.into_iter().map(|v| (v, rng.gen_range(1..q))).collect();
        assignment.extend(zeros.into_iter().map(|v| (v, 0)));
        Self::new(q, assignment)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn assignment(&self) -> &BTreeMap<Variable, u64> {
        &self.assignment
    }

    pub fn get(&self, v: &Variable) -> u64 {
        self.assignment.get(v).copied().unwrap_or(0)
    }

    pub fn eval(&self, f: &Polynomial) -> Option<u64> {
        f.eval_mod(&self.assignment, self.q)
    }
}

/// Rank of a matrix over `F_q` by Gaussian elimination.
pub fn rank_mod(rows: Vec<Vec<u64>>, q: u64) -> usize {
    independent_rows(rows, q).len()
}

/// Indices of a maximal set of linearly independent rows over `F_q`, in
/// pivot-column order.
pub fn independent_rows(mut rows: Vec<Vec<u64>>, q: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut origin: Vec<usize> = (0..rows.len()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(q)) else {
            continue;
        };
        rows.swap(rank, pivot);
        origin.swap(rank, pivot);
        let inv = crate::symbolic::pow_mod(rows[rank][c], q - 2, q);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, q);
        }
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + q - mul_mod(f, *p, q)) % q;
            }
        }
        rank += 1;
    }
    origin.truncate(rank);
    origin
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(65521));
        assert!(is_prime(2));
        assert!(!is_prime(65535));
        assert!(!is_prime(1));
        assert!(FieldPoint::new(15, BTreeMap::new()).is_err());
    }

    #[test]
    fn values_are_reduced() {
        let mut a = BTreeMap::new();
        a.insert(Variable::plain("x"), 20);
        let p = FieldPoint::new(7, a).unwrap();
        assert_eq!(p.get(&Variable::plain("x")), 6);
        assert_eq!(p.get(&Variable::plain("y")), 0);
    }

    #[test]
    fn rank_over_small_field() {
        // rows (1,2),(2,4) are dependent; (1,2),(3,5) are not mod 7
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], 7), 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![3, 5]], 7), 2);
        assert_eq!(rank_mod(vec![vec![0, 0, 0]], 7), 0);
        assert_eq!(rank_mod(vec![vec![1, 1], vec![1, 0], vec![0, 1]], 5), 2);
    }

    #[test]
    fn independent_rows_skip_dependent_ones() {
        let rows = vec![vec![0, 0], vec![2, 4], vec![1, 2], vec![0, 3]];
        assert_eq!(independent_rows(rows, 7), vec![1, 3]);
    }
}
