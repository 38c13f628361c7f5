//! Multiplicity-one certificates along components of `W_m(X)` for reduced
//! monomial hypersurfaces.
//!
//! For a minimal prime `P` the scheme has multiplicity one along `V(P)` when
//! the generators span `P/P^2` over the residue field. Each generator's image
//! in `P/P^2` is its linear part: a row indexed by the prime's coordinates
//! whose entries are polynomials in the remaining coordinates. A square
//! minor of size `height(P)` that is nonzero at some point is nonzero as a
//! polynomial, which certifies the spanning.
//!
//! Two strategies are offered. `Paper` uses an explicit choice of
//! `height(P)` generators and an explicit evaluation point for two or three
//! variables and computes an exact determinant. `Randomized` evaluates the
//! linear parts of all generators at seeded random points of a prime field
//! and asks for full column rank.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::components::{enumerate_minimal_primes_with, MonomialHypersurface, StaircasePrime};
use crate::error::{Error, Result};
use crate::monomial_ideal::{prime_contains, VariablePrime};
use crate::oracle::{independent_rows, is_prime, FieldPoint};
use crate::par::Execution;
use crate::scheme::build_wedge_ideal;
use crate::symbolic::{Monomial, Polynomial, Variable};

/// Index `(i, j)` of the generator `g_ij`.
pub type GeneratorId = (u32, u32);

/// Sparse row: prime coordinate → coefficient polynomial.
pub type Row = BTreeMap<Variable, Polynomial>;

/// The image of `g` in `P/P^2`.
///
/// Terms with exactly one prime factor (counted with multiplicity) contribute
/// their cofactor; terms with two or more are dropped.
pub fn linear_part(g: &Polynomial, prime: &VariablePrime) -> Result<Row> {
    if !prime_contains(prime, g) {
        return Err(Error::NotInPrime(g.to_string()));
    }
    let mut row: Row = BTreeMap::new();
    for (m, c) in g.terms() {
        let mut hits = m.factors().iter().filter(|(v, _)| prime.contains_var(v));
        let Some((v, e)) = hits.next() else {
            unreachable!("prime containment checked above")
        };
        if *e > 1 || hits.next().is_some() {
            continue;
        }
        let cofactor = m.div(&Monomial::var(v.clone())).expect("factor divides");
        let entry = row.entry(v.clone()).or_insert_with(Polynomial::zero);
        entry.add_term(cofactor, c.clone());
    }
    row.retain(|_, p| !p.is_zero());
    Ok(row)
}

/// Linear parts of every generator of `W_m(X)` with respect to one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearPart {
    prime: StaircasePrime,
    rows: BTreeMap<GeneratorId, Row>,
}

impl LinearPart {
    pub fn prime(&self) -> &StaircasePrime {
        &self.prime
    }

    pub fn rows(&self) -> &BTreeMap<GeneratorId, Row> {
        &self.rows
    }
}

/// One selected generator together with the prime coordinate it pivots on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectedRow {
    pub generator: GeneratorId,
    pub pivot: Variable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Paper,
    Randomized { q: u64, trials: usize, seed: u64 },
}

impl Strategy {
    pub const DEFAULT_Q: u64 = 65521;
    pub const DEFAULT_TRIALS: usize = 5;

    pub fn randomized(seed: u64) -> Self {
        Strategy::Randomized {
            q: Self::DEFAULT_Q,
            trials: Self::DEFAULT_TRIALS,
            seed,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Paper => "paper",
            Strategy::Randomized { .. } => "random",
        }
    }

    /// The same strategy with its seed replaced by one derived for `prime`.
    pub fn for_prime(self, prime: &StaircasePrime) -> Self {
        match self {
            Strategy::Paper => Strategy::Paper,
            Strategy::Randomized { q, trials, seed } => Strategy::Randomized {
                q,
                trials,
                seed: derive_seed(seed, prime),
            },
        }
    }
}

/// SplitMix64 fold of the global seed, the order and the tuple.
pub fn derive_seed(seed: u64, prime: &StaircasePrime) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let mut h = mix(seed ^ u64::from(prime.order()));
    for &t in prime.t() {
        h = mix(h ^ u64::from(t));
    }
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    MultiplicityOneProven,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::MultiplicityOneProven => "multiplicity_one_proven",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Determinant(BigRational),
    Rank {
        rank: usize,
        height: usize,
        q: u64,
        trials_used: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub prime: StaircasePrime,
    pub strategy: Strategy,
    /// Rows of the certifying minor (all rows tried, when inconclusive).
    pub selected_rows: Vec<GeneratorId>,
    /// Columns of the minor, in the order matching `selected_rows`.
    pub columns: Vec<Variable>,
    /// Values of the coordinates outside the prime at the deciding point.
    pub evaluation: BTreeMap<Variable, BigRational>,
    pub outcome: Outcome,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_proven(&self) -> bool {
        self.verdict == Verdict::MultiplicityOneProven
    }

    pub fn seed(&self) -> Option<u64> {
        match self.strategy {
            Strategy::Paper => None,
            Strategy::Randomized { seed, .. } => Some(seed),
        }
    }
}

/// Generators of `W_m(X)` built once and shared by all primes of `(X, m)`.
#[derive(Clone, Debug)]
pub struct Certifier {
    hyp: MonomialHypersurface,
    m: u32,
    gens: BTreeMap<GeneratorId, Polynomial>,
}

impl Certifier {
    pub fn new(hyp: &MonomialHypersurface, m: u32) -> Result<Self> {
        let ideal = build_wedge_ideal(&hyp.affine_input(), m)?;
        let gens = ideal
            .indexed()
            .iter()
            .map(|(&(_, i, j), g)| ((i, j), g.clone()))
            .collect();
        Ok(Certifier {
            hyp: hyp.clone(),
            m,
            gens,
        })
    }

    pub fn hypersurface(&self) -> &MonomialHypersurface {
        &self.hyp
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn generator(&self, id: GeneratorId) -> Option<&Polynomial> {
        self.gens.get(&id)
    }

    fn check_minimal(&self, prime: &StaircasePrime) -> Result<()> {
        let ok = prime.order() == self.m
            && prime.t().len() == self.hyp.rank()
            && prime.is_minimal(self.hyp.exponents());
        if ok {
            Ok(())
        } else {
            Err(Error::NotMinimalPrime(prime.t().to_vec()))
        }
    }

    pub fn linear_parts(&self, prime: &StaircasePrime) -> Result<LinearPart> {
        self.check_minimal(prime)?;
        let vp = prime.expand(&self.hyp);
        let mut rows = BTreeMap::new();
        for (&id, g) in &self.gens {
            let row = linear_part(g, &vp)?;
            if !row.is_empty() {
                rows.insert(id, row);
            }
        }
        Ok(LinearPart {
            prime: prime.clone(),
            rows,
        })
    }

    /// Coordinates outside the prime, over the `r` equation variables.
    fn free_variables(&self, prime: &StaircasePrime) -> Vec<Variable> {
        let mut out = Vec::new();
        for k in 0..self.hyp.rank() {
            for d in 0..=self.m {
                for i in 0..=d {
                    let v = self.hyp.wedge_var(k, i, d - i);
                    if !prime.contains(&v, &self.hyp) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Selection with the roles x, y, z taken in variable order.
    fn raw_selection(&self, prime: &StaircasePrime) -> Result<Vec<SelectedRow>> {
        self.check_minimal(prime)?;
        let roles = self.paper_roles()?;
        let t = prime.t();
        let tt: Vec<u32> = roles.iter().map(|&k| t[k]).collect();
        let block = |k: usize, tk: u32| -> Vec<(u32, u32, Variable)> {
            (0..tk)
                .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
                .map(|(i, j)| (i, j, self.hyp.wedge_var(k, i, j)))
                .collect()
        };
        let mut rows = Vec::new();
        let mut xs = block(roles[0], tt[0]);
        xs.reverse();
        if roles.len() == 2 {
            let (tx, ty) = (tt[0], tt[1]);
            for (i, j, v) in xs {
                rows.push(SelectedRow {
                    generator: (i, j + ty),
                    pivot: v,
                });
            }
            for (k, l, v) in block(roles[1], ty) {
                rows.push(SelectedRow {
                    generator: (k + tx, l),
                    pivot: v,
                });
            }
        } else {
            let (tx, ty, tz) = (tt[0], tt[1], tt[2]);
            for (i, j, v) in xs {
                rows.push(SelectedRow {
                    generator: (i, j + ty + tz),
                    pivot: v,
                });
            }
            for (k, l, v) in block(roles[1], ty) {
                rows.push(SelectedRow {
                    generator: (k + tx + tz, l),
                    pivot: v,
                });
            }
            for (p, q, v) in block(roles[2], tz) {
                rows.push(SelectedRow {
                    generator: (p + tx, q + ty),
                    pivot: v,
                });
            }
        }
        Ok(rows)
    }

    /// Role order: identity for two variables, ascending `t` for three.
    fn paper_roles(&self) -> Result<Vec<usize>> {
        if !self.hyp.is_reduced() {
            return Err(Error::Unsupported(
                "the explicit selection needs all exponents equal to 1".into(),
            ));
        }
        match self.hyp.rank() {
            2 => Ok(vec![0, 1]),
            3 => Ok(vec![0, 1, 2]),
            r => Err(Error::Unsupported(format!(
                "no explicit selection for {r} variables; use the randomized strategy"
            ))),
        }
    }

    fn sorted_roles(&self, prime: &StaircasePrime) -> Result<Vec<usize>> {
        let mut roles = self.paper_roles()?;
        if roles.len() == 3 {
            roles.sort_by_key(|&k| prime.t()[k]);
        }
        Ok(roles)
    }

    /// Point on the component: `x_(tx,0) = y_(0,ty) = 1`, and for three
    /// variables also `z_(0,tz) = z_(tz,0) = 1`; every other free
    /// coordinate is zero.
    pub fn paper_evaluation(
        &self,
        prime: &StaircasePrime,
    ) -> Result<BTreeMap<Variable, BigRational>> {
        self.check_minimal(prime)?;
        let roles = self.sorted_roles(prime)?;
        let t = prime.t();
        let mut ones = vec![
            self.hyp.wedge_var(roles[0], t[roles[0]], 0),
            self.hyp.wedge_var(roles[1], 0, t[roles[1]]),
        ];
        if let Some(&z) = roles.get(2) {
            ones.push(self.hyp.wedge_var(z, 0, t[z]));
            ones.push(self.hyp.wedge_var(z, t[z], 0));
        }
        Ok(self
            .free_variables(prime)
            .into_iter()
            .map(|v| {
                let val = if ones.contains(&v) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                (v, val)
            })
            .collect())
    }

    /// The selected rows evaluated at the explicit point; row `r`, column
    /// `c` is the coefficient of the `c`-th pivot in the `r`-th row.
    pub fn paper_matrix(&self, prime: &StaircasePrime) -> Result<Vec<Vec<BigRational>>> {
        let selection = self.paper_selection(prime)?;
        let point = self.paper_evaluation(prime)?;
        let parts = self.linear_parts(prime)?;
        let empty = Row::new();
        Ok(selection
            .iter()
            .map(|s| {
                let row = parts.rows.get(&s.generator).unwrap_or(&empty);
                selection
                    .iter()
                    .map(|c| {
                        row.get(&c.pivot)
                            .map_or_else(BigRational::zero, |p| p.eval_rational(&point))
                    })
                    .collect()
            })
            .collect())
    }

    /// The explicit generator choice for two or three variables.
    ///
    /// For three variables the tuple is first sorted ascending (stably) and
    /// the roles x, y, z are assigned to the variables in that order. The
    /// x-block is listed in descending coordinate order, so the evaluated
    /// matrix comes out lower-triangular.
    pub fn paper_selection(&self, prime: &StaircasePrime) -> Result<Vec<SelectedRow>> {
        let roles = self.sorted_roles(prime)?;
        if roles == [0, 1, 2][..roles.len()] {
            return self.raw_selection(prime);
        }
        let names: Vec<&str> = roles.iter().map(|&k| self.hyp.bases()[k].base()).collect();
        let exps = vec![1; roles.len()];
        let permuted = MonomialHypersurface::with_names(self.hyp.ambient(), exps, &names)?;
        let t: Vec<u32> = roles.iter().map(|&k| prime.t()[k]).collect();
        let inner = Certifier {
            hyp: permuted,
            m: self.m,
            gens: self.gens.clone(),
        };
        inner.raw_selection(&StaircasePrime::new(self.m, t)?)
    }

    pub fn certify(&self, prime: &StaircasePrime, strategy: Strategy) -> Result<Certificate> {
        self.check_minimal(prime)?;
        match strategy {
            Strategy::Paper => self.certify_paper(prime),
            Strategy::Randomized { q, trials, seed } => self.certify_random(prime, q, trials, seed),
        }
    }

    fn certify_paper(&self, prime: &StaircasePrime) -> Result<Certificate> {
        let selection = self.paper_selection(prime)?;
        let matrix = self.paper_matrix(prime)?;
        let det = determinant(matrix);
        let verdict = if det.is_zero() {
            Verdict::Inconclusive
        } else {
            Verdict::MultiplicityOneProven
        };
        Ok(Certificate {
            prime: prime.clone(),
            strategy: Strategy::Paper,
            selected_rows: selection.iter().map(|s| s.generator).collect(),
            columns: selection.into_iter().map(|s| s.pivot).collect(),
            evaluation: self.paper_evaluation(prime)?,
            outcome: Outcome::Determinant(det),
            verdict,
        })
    }

    fn certify_random(
        &self,
        prime: &StaircasePrime,
        q: u64,
        trials: usize,
        seed: u64,
    ) -> Result<Certificate> {
        if q <= 2 || !is_prime(q) {
            return Err(Error::InvalidInput(format!(
                "modulus {q} must be an odd prime"
            )));
        }
        let parts = self.linear_parts(prime)?;
        let columns: Vec<Variable> = prime.expand(&self.hyp).vars().iter().cloned().collect();
        let height = columns.len();
        let ids: Vec<GeneratorId> = parts.rows.keys().copied().collect();
        let free = self.free_variables(prime);
        let zeros = columns.iter().cloned();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: Option<(usize, FieldPoint, Vec<usize>)> = None;
        let mut used = 0;
        for _ in 0..trials {
            used += 1;
            let point = FieldPoint::random(q, free.iter().cloned(), zeros.clone(), &mut rng)?;
            let matrix: Vec<Vec<u64>> = ids
                .iter()
                .map(|id| {
                    let row = &parts.rows[id];
                    columns
                        .iter()
                        .map(|c| row.get(c).and_then(|p| point.eval(p)).unwrap_or(0))
                        .collect()
                })
                .collect();
            let pivots = independent_rows(matrix, q);
            let rank = pivots.len();
            if best.as_ref().is_none_or(|b| rank > b.0) {
                best = Some((rank, point, pivots));
            }
            if rank == height {
                break;
            }
        }
        let (rank, point, pivots) = match best {
            Some(b) => b,
            None => (0, FieldPoint::new(q, BTreeMap::new())?, Vec::new()),
        };
        let proven = rank == height;
        let selected_rows = if proven {
            pivots.iter().map(|&i| ids[i]).collect()
        } else {
            ids.clone()
        };
        let evaluation = free
            .iter()
            .map(|v| (v.clone(), BigRational::from_integer(point.get(v).into())))
            .collect();
        Ok(Certificate {
            prime: prime.clone(),
            strategy: Strategy::Randomized { q, trials, seed },
            selected_rows,
            columns,
            evaluation,
            outcome: Outcome::Rank {
                rank,
                height,
                q,
                trials_used: used,
            },
            verdict: if proven {
                Verdict::MultiplicityOneProven
            } else {
                Verdict::Inconclusive
            },
        })
    }
}

pub fn linear_parts(
    hyp: &MonomialHypersurface,
    prime: &StaircasePrime,
    m: u32,
) -> Result<LinearPart> {
    Certifier::new(hyp, m)?.linear_parts(prime)
}

pub fn paper_selection(
    hyp: &MonomialHypersurface,
    prime: &StaircasePrime,
    m: u32,
) -> Result<Vec<SelectedRow>> {
    Certifier::new(hyp, m)?.paper_selection(prime)
}

pub fn paper_evaluation(
    hyp: &MonomialHypersurface,
    prime: &StaircasePrime,
) -> Result<BTreeMap<Variable, BigRational>> {
    Certifier::new(hyp, prime.order())?.paper_evaluation(prime)
}

pub fn certify(
    hyp: &MonomialHypersurface,
    prime: &StaircasePrime,
    m: u32,
    strategy: Strategy,
) -> Result<Certificate> {
    Certifier::new(hyp, m)?.certify(prime, strategy)
}

/// Exact determinant by Gaussian elimination over `Q`.
#[allow(clippy::needless_range_loop)]
pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let d = &f * &a[c][k];
                a[r][k] -= d;
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub m: u32,
    pub prime: StaircasePrime,
    pub strategy: &'static str,
    pub verdict: Verdict,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn all_proven(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.verdict == Verdict::MultiplicityOneProven)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("m\tt-tuple\tstrategy\tverdict\twitness-point-seed\n");
        for r in &self.rows {
            let seed = r.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.m,
                r.prime.label(),
                r.strategy,
                r.verdict,
                seed
            ));
        }
        out
    }
}

/// Certifies every component of `W_m(x_1 ⋯ x_r)` for `m = 0..=m_max`.
/// Randomized seeds are derived per prime from the strategy's seed.
pub fn conjecture_sweep(
    r: usize,
    m_max: u32,
    strategy: Strategy,
    exec: Execution,
) -> Result<SweepReport> {
    if r < 2 {
        return Err(Error::InvalidInput(
            "the sweep needs at least two variables".into(),
        ));
    }
    let hyp = MonomialHypersurface::in_own_space(vec![1; r])?;
    let mut rows = Vec::new();
    for m in 0..=m_max {
        let certifier = Certifier::new(&hyp, m)?;
        let primes = enumerate_minimal_primes_with(&hyp, m, exec);
        let certs = exec.map(&primes, |p| certifier.certify(p, strategy.for_prime(p)));
        for cert in certs {
            let cert = cert?;
            rows.push(SweepRow {
                m,
                strategy: strategy.name(),
                verdict: cert.verdict,
                seed: cert.seed(),
                prime: cert.prime,
            });
        }
    }
    Ok(SweepReport { rows })
}
