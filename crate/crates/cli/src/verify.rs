use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Failure;
use crate::args::Suite;
use wedgelab::components::{enumerate_minimal_primes, radical_generators, MonomialHypersurface};
use wedgelab::monomial_ideal::{intersect_all, prime_contains};
use wedgelab::multiplicity::{Certifier, Strategy};
use wedgelab::oracle::{brute_force_minimal_primes, quotient_witness_search, sample_vanishing};
use wedgelab::scheme::{build_wedge_ideal, diagonal_check, w1_product_check, AffineIdealInput};
use wedgelab::symbolic::{parse_polynomial, VariableTable};
use wedgelab::{Error, Execution};

type Check = Result<Result<String, String>, Error>;
type Named = (&'static str, Box<dyn Fn() -> Check>);

/// Runs the suite; the flag is false if any check failed.
pub fn run(suite: Suite, seed: u64, budget: usize) -> Result<(String, bool), Failure> {
    let suites: Vec<Named> = vec![
        ("embedded", Box::new(move || embedded(budget))),
        ("enumeration", Box::new(enumeration)),
        ("radical", Box::new(radical)),
        ("vanishing", Box::new(move || vanishing(seed))),
        ("structure", Box::new(structure)),
        ("certificates", Box::new(certificates)),
    ];
    let wanted = match suite {
        Suite::All => None,
        s => Some(format!("{s:?}").to_lowercase()),
    };
    let mut out = String::new();
    let mut ok = true;
    for (name, check) in &suites {
        if wanted.as_deref().is_some_and(|w| w != *name) {
            continue;
        }
        match check()? {
            Ok(detail) => {
                let _ = writeln!(out, "[PASS] {name}: {detail}");
            }
            Err(detail) => {
                ok = false;
                let _ = writeln!(out, "[FAIL] {name}: {detail}");
            }
        }
    }
    Ok((out, ok))
}

fn grid(r_max: usize, a_max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        let mut a = vec![1u32; r];
        loop {
            out.push(a.clone());
            let Some(k) = a.iter().rposition(|&x| x < a_max) else {
                break;
            };
            a[k] += 1;
            a[k + 1..].iter_mut().for_each(|x| *x = 1);
        }
    }
    out
}

fn hyp(a: &[u32]) -> Result<MonomialHypersurface, Error> {
    MonomialHypersurface::in_own_space(a.to_vec())
}

fn embedded(budget: usize) -> Check {
    let xy = hyp(&[1, 1])?;
    let primes: Vec<String> = enumerate_minimal_primes(&xy, 1)
        .iter()
        .map(|p| p.expand(&xy).to_string())
        .collect();
    let gens = build_wedge_ideal(&xy.affine_input(), 1)?.generators();
    let table = VariableTable::open();
    let target = ["x_(0,0)", "y_(0,0)", "x_(0,1)*y_(1,0) - x_(1,0)*y_(0,1)"]
        .iter()
        .map(|s| parse_polynomial(s, &table))
        .collect::<Result<Vec<_>, _>>()?;
    let found = quotient_witness_search(&gens, &target, 2, budget)?;
    Ok(match found {
        Some(h) if primes.len() == 3 => Ok(format!(
            "minimal primes {}; (W_1 : {h}) = (x_(0,0), y_(0,0), x_(0,1)*y_(1,0) - x_(1,0)*y_(0,1))",
            primes.join(" ")
        )),
        Some(_) => Err(format!("expected 3 minimal primes, got {}", primes.len())),
        None => Err("no monomial of degree <= 2 gives the embedded prime".into()),
    })
}

fn enumeration() -> Check {
    let mut cases = 0;
    for a in grid(4, 3) {
        for m in 0..=4 {
            let closed: BTreeSet<Vec<u32>> = enumerate_minimal_primes(&hyp(&a)?, m)
                .into_iter()
                .map(|p| p.t().to_vec())
                .collect();
            if closed != brute_force_minimal_primes(&a, m)? {
                return Ok(Err(format!("a = {a:?}, m = {m}")));
            }
            cases += 1;
        }
    }
    Ok(Ok(format!(
        "{cases} cases agree with the brute-force filter"
    )))
}

fn radical() -> Check {
    let mut cases = 0;
    for a in grid(3, 2) {
        let h = hyp(&a)?;
        for m in 0..=4 {
            let ideals: Vec<_> = enumerate_minimal_primes(&h, m)
                .iter()
                .map(|p| p.expand(&h).as_ideal())
                .collect();
            if intersect_all(&ideals, Execution::default()) != radical_generators(&h, m) {
                return Ok(Err(format!("a = {a:?}, m = {m}")));
            }
            cases += 1;
        }
    }
    Ok(Ok(format!(
        "{cases} cases: radical = intersection of minimal primes"
    )))
}

fn vanishing(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes = 0;
    for a in grid(3, 3) {
        let h = hyp(&a)?;
        for m in 0..=3 {
            let gens = build_wedge_ideal(&h.affine_input(), m)?.generators();
            for p in enumerate_minimal_primes(&h, m) {
                let vp = p.expand(&h);
                if !gens.iter().all(|g| prime_contains(&vp, g))
                    || !sample_vanishing(&h, &p, m, 65521, 5, &mut rng)?
                {
                    return Ok(Err(format!("a = {a:?}, m = {m}, t = {}", p.label())));
                }
                primes += 1;
            }
        }
    }
    Ok(Ok(format!(
        "{primes} components contain and vanish on every generator"
    )))
}

fn structure() -> Check {
    let inputs = ["x*y", "x^2*y - z^3", "x^3 + y^3 + z^3", "x*y - z^2"];
    for text in inputs {
        let input = AffineIdealInput::parse(&[text], None)?;
        for m in 0..=3 {
            if !diagonal_check(&input, m)? {
                return Ok(Err(format!("diagonal identity fails for {text}, m = {m}")));
            }
        }
        if !w1_product_check(&input)? {
            return Ok(Err(format!("W_1 product identity fails for {text}")));
        }
    }
    Ok(Ok(format!(
        "{} inputs satisfy both identities",
        inputs.len()
    )))
}

fn certificates() -> Check {
    let mut n = 0;
    for r in [2, 3] {
        let h = hyp(&vec![1; r])?;
        for m in 0..=6 {
            let c = Certifier::new(&h, m)?;
            for p in enumerate_minimal_primes(&h, m) {
                if !c.certify(&p, Strategy::Paper)?.is_proven() {
                    return Ok(Err(format!("r = {r}, m = {m}, t = {}", p.label())));
                }
                n += 1;
            }
        }
    }
    Ok(Ok(format!(
        "{n} components certified with unit determinant"
    )))
}
