use std::collections::BTreeSet;

use rand::Rng;

use super::field::{is_prime, FieldPoint};
use crate::components::{MonomialHypersurface, StaircasePrime};
use crate::error::{Error, Result};
use crate::scheme::build_wedge_ideal;

/// Largest tuple grid the brute-force filter will walk.
pub const BRUTE_FORCE_CAP: u64 = 10_000_000;

/// Minimal feasible order tuples by exhaustive search: every
/// `t ∈ {0..m+1}^r` with `Σ a_k t_k ≥ m+1`, then pairwise dominance pruning.
pub fn brute_force_minimal_primes(a: &[u32], m: u32) -> Result<BTreeSet<Vec<u32>>> {
    let side = m as u64 + 2;
    let cells = side
        .checked_pow(a.len() as u32)
        .filter(|c| *c <= BRUTE_FORCE_CAP);
    if cells.is_none() {
        return Err(Error::ScaleExceeded(format!(
            "{side}^{} tuples exceed the cap of {BRUTE_FORCE_CAP}",
            a.len()
        )));
    }
    let target = m as u64 + 1;
    let mut feasible = Vec::new();
    let mut t = vec![0u32; a.len()];
    loop {
        let s: u64 = a.iter().zip(&t).map(|(&x, &y)| x as u64 * y as u64).sum();
        if s >= target {
            feasible.push(t.clone());
        }
        let Some(k) = t.iter().rposition(|&x| x <= m) else {
            break;
        };
        t[k] += 1;
        for x in &mut t[k + 1..] {
            *x = 0;
        }
    }
    let below = |u: &Vec<u32>, v: &Vec<u32>| u != v && u.iter().zip(v).all(|(x, y)| x <= y);
    Ok(feasible
        .iter()
        .filter(|t| !feasible.iter().any(|u| below(u, t)))
        .cloned()
        .collect())
}

/// Evaluates every generator of `W_m(X)` at `trials` random points with the
/// prime's coordinates set to zero and the rest uniform nonzero mod `q`.
pub fn sample_vanishing<R: Rng>(
    hyp: &MonomialHypersurface,
    prime: &StaircasePrime,
    m: u32,
    q: u64,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    if q <= 2 || !is_prime(q) {
        return Err(Error::InvalidInput(format!(
            "modulus {q} must be an odd prime"
        )));
    }
    if prime.t().len() != hyp.rank() || prime.order() != m {
        return Err(Error::InvalidInput(
            "prime does not match the hypersurface".into(),
        ));
    }
    let ideal = build_wedge_ideal(&hyp.affine_input(), m)?;
    let gens = ideal.generators();
    let (zeros, free): (Vec<_>, Vec<_>) = ideal
        .variables()
        .into_iter()
        .partition(|v| prime.contains(v, hyp));
    for _ in 0..trials {
        let point = FieldPoint::random(q, free.iter().cloned(), zeros.iter().cloned(), rng)?;
        if gens.iter().any(|g| point.eval(g) != Some(0)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(items: &[&[u32]]) -> BTreeSet<Vec<u32>> {
        items.iter().map(|t| t.to_vec()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            brute_force_minimal_primes(&[1, 1], 1).unwrap(),
            set(&[&[2, 0], &[1, 1], &[0, 2]])
        );
        assert_eq!(brute_force_minimal_primes(&[2], 1).unwrap(), set(&[&[1]]));
        assert_eq!(
            brute_force_minimal_primes(&[1, 2], 2).unwrap(),
            set(&[&[3, 0], &[1, 1], &[0, 2]])
        );
    }

    #[test]
    fn scale_cap() {
        assert!(matches!(
            brute_force_minimal_primes(&[1; 8], 8),
            Err(Error::ScaleExceeded(_))
        ));
    }

    #[test]
    fn vanishing_on_components_only() {
        let hyp = MonomialHypersurface::in_own_space(vec![1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let good = StaircasePrime::new(2, vec![2, 1]).unwrap();
        assert!(sample_vanishing(&hyp, &good, 2, 65521, 5, &mut rng).unwrap());
        let bad = StaircasePrime::new(2, vec![1, 1]).unwrap();
        assert!(!sample_vanishing(&hyp, &bad, 2, 65521, 5, &mut rng).unwrap());
        let all = StaircasePrime::new(2, vec![3, 3]).unwrap();
        assert!(sample_vanishing(&hyp, &all, 2, 65521, 1, &mut rng).unwrap());
        assert!(sample_vanishing(&hyp, &good, 2, 2, 1, &mut rng).is_err());
    }
}
