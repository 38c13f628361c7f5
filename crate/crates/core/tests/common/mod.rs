#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;
use wedgelab::symbolic::{Monomial, Polynomial, Variable};

pub fn plain_vars(names: &[&str]) -> Vec<Variable> {
    names.iter().map(|n| Variable::plain(*n)).collect()
}

/// Random nonzero polynomial with small integer coefficients.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    vars: &[Variable],
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let mut p = Polynomial::zero();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let deg = rng.gen_range(0..=max_deg);
            let factors: Vec<_> = (0..deg)
                .map(|_| (vars[rng.gen_range(0..vars.len())].clone(), 1))
                .collect();
            let c: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            p.add_term(
                Monomial::from_factors(factors),
                BigRational::from_integer(c.into()),
            );
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Every exponent vector with `1..=r_max` entries in `1..=a_max`.
pub fn exponent_grid(r_max: usize, a_max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        let mut a = vec![1u32; r];
        loop {
            out.push(a.clone());
            let Some(k) = a.iter().rposition(|&x| x < a_max) else {
                break;
            };
            a[k] += 1;
            for x in &mut a[k + 1..] {
                *x = 1;
            }
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
