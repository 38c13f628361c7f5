use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use wedgelab::components::{enumerate_minimal_primes, MonomialHypersurface, StaircasePrime};
use wedgelab::multiplicity::{conjecture_sweep, Certifier, Outcome, Strategy, Verdict};
use wedgelab::{Error, Execution};

fn reduced(r: usize) -> MonomialHypersurface {
    MonomialHypersurface::in_own_space(vec![1; r]).unwrap()
}

fn is_unit_lower_triangular(a: &[Vec<BigRational>]) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| match i.cmp(&j) {
            std::cmp::Ordering::Equal => x.is_one(),
            std::cmp::Ordering::Less => x.is_zero(),
            std::cmp::Ordering::Greater => true,
        })
    })
}

#[test]
fn two_variable_determinants_are_units() {
    let h = reduced(2);
    for m in 0..=6 {
        let c = Certifier::new(&h, m).unwrap();
        for p in enumerate_minimal_primes(&h, m) {
            let cert = c.certify(&p, Strategy::Paper).unwrap();
            let Outcome::Determinant(d) = cert.outcome else {
                panic!("paper strategy returns a determinant");
            };
            assert!(d.abs().is_one(), "m={m} t={:?}: det {d}", p.t());
        }
    }
}

#[test]
fn three_variable_matrices_are_unit_lower_triangular() {
    let h = reduced(3);
    for m in 0..=6 {
        let c = Certifier::new(&h, m).unwrap();
        for p in enumerate_minimal_primes(&h, m) {
            let a = c.paper_matrix(&p).unwrap();
            assert_eq!(a.len(), p.height());
            assert!(is_unit_lower_triangular(&a), "m={m} t={:?}", p.t());
        }
    }
}

#[test]
fn selected_generators_are_distinct_and_in_range() {
    for r in [2, 3] {
        let h = reduced(r);
        for m in 0..=6 {
            let c = Certifier::new(&h, m).unwrap();
            for p in enumerate_minimal_primes(&h, m) {
                let sel = c.paper_selection(&p).unwrap();
                let ids: BTreeSet<_> = sel.iter().map(|s| s.generator).collect();
                assert_eq!(ids.len(), p.height(), "r={r} m={m} t={:?}", p.t());
                assert!(ids.iter().all(|(i, j)| i + j <= m));
                let pivots: BTreeSet<_> = sel.iter().map(|s| s.pivot.clone()).collect();
                assert_eq!(pivots, p.expand(&h).vars().clone());
            }
        }
    }
}

#[test]
fn strategies_agree_for_two_and_three_variables() {
    for r in [2, 3] {
        let paper = conjecture_sweep(r, 4, Strategy::Paper, Execution::default()).unwrap();
        let random = conjecture_sweep(r, 4, Strategy::randomized(3), Execution::default()).unwrap();
        assert!(paper.all_proven() && random.all_proven());
        let key = |rep: &wedgelab::multiplicity::SweepReport| -> Vec<(u32, StaircasePrime)> {
            rep.rows
                .iter()
                .map(|row| (row.m, row.prime.clone()))
                .collect()
        };
        assert_eq!(key(&paper), key(&random));
    }
}

#[test]
fn fabricated_primes_are_refused() {
    let h = reduced(3);
    let c = Certifier::new(&h, 2).unwrap();
    for t in [vec![1, 1, 0], vec![2, 1, 1], vec![3, 3, 3], vec![1, 1]] {
        let p = StaircasePrime::new(2, t.clone()).unwrap();
        for s in [Strategy::Paper, Strategy::randomized(0)] {
            assert_eq!(c.certify(&p, s), Err(Error::NotMinimalPrime(t.clone())));
        }
    }
    let wrong_order = StaircasePrime::new(1, vec![1, 1, 0]).unwrap();
    assert!(c.certify(&wrong_order, Strategy::randomized(0)).is_err());
}

#[test]
fn randomized_certificate_records_a_full_rank_minor() {
    let h = reduced(4);
    let c = Certifier::new(&h, 3).unwrap();
    let p = StaircasePrime::new(3, vec![1, 1, 1, 1]).unwrap();
    let cert = c.certify(&p, Strategy::randomized(42)).unwrap();
    assert_eq!(cert.verdict, Verdict::MultiplicityOneProven);
    assert_eq!(cert.selected_rows.len(), 4);
    match cert.outcome {
        Outcome::Rank {
            rank,
            height,
            q,
            trials_used,
        } => {
            assert_eq!((rank, height, q), (4, 4, 65521));
            assert!(trials_used >= 1);
        }
        _ => panic!("expected a rank outcome"),
    }
}

#[test]
fn sweep_seeds_are_reproducible() {
    let a = conjecture_sweep(4, 3, Strategy::randomized(5), Execution::Parallel).unwrap();
    let b = conjecture_sweep(4, 3, Strategy::randomized(5), Execution::Sequential).unwrap();
    assert_eq!(a.to_tsv(), b.to_tsv());
    let c = conjecture_sweep(4, 3, Strategy::randomized(6), Execution::Sequential).unwrap();
    assert_ne!(a.to_tsv(), c.to_tsv());
}
