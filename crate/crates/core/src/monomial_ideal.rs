//! Square-free monomial ideal combinatorics.
//!
//! Includes a generic minimal-prime engine (minimal transversals of the
//! generator supports) that knows nothing about wedge schemes; it serves
//! as an independent check on the closed-form component enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::symbolic::{Monomial, Polynomial, Variable};

/// A monomial ideal given by a divisibility-minimal generating set.
///
/// The empty generating set is the zero ideal; a generating set containing
/// `1` is the unit ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    gens: BTreeSet<Monomial>,
}

impl MonomialIdeal {
    pub fn zero() -> Self {
        MonomialIdeal::default()
    }

    pub fn unit() -> Self {
        minimalize([Monomial::one()])
    }

    pub fn generators(&self) -> &BTreeSet<Monomial> {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Ideal containment `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains_monomial(g))
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.gens
            .iter()
            .flat_map(|g| g.variables().cloned())
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().rev().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// A prime generated by a set of variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariablePrime {
    vars: BTreeSet<Variable>,
}

impl VariablePrime {
    pub fn new<I: IntoIterator<Item = Variable>>(vars: I) -> Self {
        VariablePrime {
            vars: vars.into_iter().collect(),
        }
    }

    pub fn vars(&self) -> &BTreeSet<Variable> {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    pub fn contains_var(&self, v: &Variable) -> bool {
        self.vars.contains(v)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        m.variables().any(|v| self.vars.contains(v))
    }

    pub fn as_ideal(&self) -> MonomialIdeal {
        minimalize(self.vars.iter().cloned().map(Monomial::var))
    }

    pub fn is_subset(&self, other: &VariablePrime) -> bool {
        self.vars.is_subset(&other.vars)
    }
}

impl fmt::Display for VariablePrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.vars.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Removes every generator divisible by another one.
pub fn minimalize<I: IntoIterator<Item = Monomial>>(gens: I) -> MonomialIdeal {
    let mut all: Vec<Monomial> = gens
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // graded order: a proper divisor always sorts earlier
    all.sort();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in all {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    MonomialIdeal {
        gens: kept.into_iter().collect(),
    }
}

pub fn radical_monomial(ideal: &MonomialIdeal) -> MonomialIdeal {
    minimalize(ideal.gens.iter().map(Monomial::support_monomial))
}

pub fn intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    minimalize(
        a.gens
            .iter()
            .flat_map(|u| b.gens.iter().map(move |v| u.lcm(v))),
    )
}

/// Intersection of many monomial ideals by pairwise tree reduction.
///
/// The empty family intersects to the unit ideal.
pub fn intersect_all(ideals: &[MonomialIdeal], exec: Execution) -> MonomialIdeal {
    let mut layer: Vec<MonomialIdeal> = ideals.to_vec();
    if layer.is_empty() {
        return MonomialIdeal::unit();
    }
    while layer.len() > 1 {
        let pairs: Vec<&[MonomialIdeal]> = layer.chunks(2).collect();
        layer = exec.map(&pairs, |pair| match pair {
            [a, b] => intersect(a, b),
            [a] => a.clone(),
            _ => unreachable!("chunks of two"),
        });
    }
    layer.pop().expect("one ideal left")
}

/// `√(I_1 + … + I_n) = √I_1 + … + √I_n` for monomial ideals.
pub fn sum_radical(ideals: &[MonomialIdeal]) -> MonomialIdeal {
    minimalize(
        ideals
            .iter()
            .flat_map(|i| radical_monomial(i).gens.into_iter()),
    )
}

/// A polynomial lies in a variable prime iff each of its terms does.
pub fn prime_contains(prime: &VariablePrime, f: &Polynomial) -> bool {
    f.terms().all(|(m, _)| prime.contains_monomial(m))
}

/// Minimal primes of a square-free monomial ideal, i.e. the minimal
/// transversals of its generator supports.
pub fn minimal_primes_squarefree(ideal: &MonomialIdeal) -> Result<BTreeSet<VariablePrime>> {
    if let Some(g) = ideal.gens.iter().find(|g| !g.is_squarefree()) {
        return Err(Error::NotSquarefree(g.to_string()));
    }
    if ideal.is_unit() {
        return Ok(BTreeSet::new());
    }
    if ideal.is_empty() {
        return Ok([VariablePrime::default()].into_iter().collect());
    }
    let vars: Vec<Variable> = ideal.variables().into_iter().collect();
    let index: BTreeMap<&Variable, usize> = vars.iter().enumerate().map(|(k, v)| (v, k)).collect();
    let words = vars.len().div_ceil(64);
    let edges: Vec<Bits> = ideal
        .gens
        .iter()
        .map(|g| {
            let mut b = Bits::empty(words);
            for v in g.variables() {
                b.insert(index[v]);
            }
            b
        })
        .collect();
    let mut memo = HashMap::new();
    let covers = transversals(minimal_edges(edges), words, &mut memo);
    Ok(covers
        .iter()
        .map(|c| VariablePrime::new(c.iter().map(|k| vars[k].clone())))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(words: usize) -> Self {
        Bits(vec![0; words])
    }
    fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }
    fn contains(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }
    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }
    fn and_count(&self, other: &Bits) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(move |k| self.contains(*k))
    }
}

fn minimal_edges(mut edges: Vec<Bits>) -> Vec<Bits> {
    edges.sort_by_key(|e| (e.count(), e.clone()));
    edges.dedup();
    let mut kept: Vec<Bits> = Vec::new();
    for e in edges {
        if !kept.iter().any(|k| k.is_subset(&e)) {
            kept.push(e);
        }
    }
    kept.sort();
    kept
}

/// All minimal transversals of a divisibility-minimal edge family.
///
/// Branches on a shortest edge `{v_1..v_k}`: the i-th branch takes `v_i`
/// and forbids `v_1..v_{i-1}`, so branches never overlap. Subproblems are
/// memoized on their residual edge family.
fn transversals(
    edges: Vec<Bits>,
    words: usize,
    memo: &mut HashMap<Vec<Bits>, Vec<Bits>>,
) -> Vec<Bits> {
    if let Some(hit) = memo.get(&edges) {
        return hit.clone();
    }
    if edges.is_empty() {
        return vec![Bits::empty(words)];
    }
    let pivot = edges
        .iter()
        .min_by_key(|e| e.count())
        .expect("nonempty")
        .clone();
    let mut forbidden = Bits::empty(words);
    let mut candidates: BTreeSet<Bits> = BTreeSet::new();
    for v in pivot.iter() {
        let mut residual = Vec::new();
        let mut dead = false;
        for e in &edges {
            if e.contains(v) {
                continue;
            }
            let r = e.minus(&forbidden);
            if r.is_empty() {
                dead = true;
                break;
            }
            residual.push(r);
        }
        if !dead {
            for mut t in transversals(minimal_edges(residual), words, memo) {
                t.insert(v);
                candidates.insert(t);
            }
        }
        forbidden.insert(v);
    }
    // keep transversals in which every vertex has a private edge
    let out: Vec<Bits> = candidates
        .into_iter()
        .filter(|c| {
            c.iter()
                .all(|v| edges.iter().any(|e| e.contains(v) && e.and_count(c) == 1))
        })
        .collect();
    debug_assert!(out.iter().all(|c| edges.iter().all(|e| e.intersects(c))));
    memo.insert(edges, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> Monomial {
        // "x*y^2" style
        Monomial::from_factors(s.split('*').map(|f| match f.split_once('^') {
            Some((v, e)) => (Variable::plain(v), e.parse().unwrap()),
            None => (Variable::plain(f), 1),
        }))
    }

    fn ideal(gens: &[&str]) -> MonomialIdeal {
        minimalize(gens.iter().map(|g| mono(g)))
    }

    fn prime(vars: &[&str]) -> VariablePrime {
        VariablePrime::new(vars.iter().map(|v| Variable::plain(*v)))
    }

    #[test]
    fn radicals() {
        assert_eq!(radical_monomial(&ideal(&["x^2*y"])), ideal(&["x*y"]));
        assert_eq!(radical_monomial(&ideal(&["x^2", "x*y"])), ideal(&["x"]));
        let sf = ideal(&["x*y", "y*z"]);
        assert_eq!(radical_monomial(&sf), sf);
        assert_eq!(
            radical_monomial(&MonomialIdeal::zero()),
            MonomialIdeal::zero()
        );
    }

    #[test]
    fn minimalize_drops_multiples_and_repeats() {
        assert_eq!(ideal(&["x*y", "x*y*z"]).len(), 1);
        let i = minimalize([mono("x"), mono("y"), mono("x")]);
        assert_eq!(i, ideal(&["x", "y"]));
    }

    #[test]
    fn intersections() {
        assert_eq!(intersect(&ideal(&["x"]), &ideal(&["y"])), ideal(&["x*y"]));
        assert_eq!(
            intersect(&ideal(&["x", "y"]), &ideal(&["x"])),
            ideal(&["x"])
        );
        let all = intersect_all(
            &[ideal(&["x", "y"]), ideal(&["y", "z"]), ideal(&["x", "z"])],
            Execution::Sequential,
        );
        assert_eq!(all, ideal(&["x*y", "y*z", "x*z"]));
        assert!(intersect_all(&[], Execution::Sequential).is_unit());
    }

    #[test]
    fn per_term_containment() {
        let p = prime(&["x"]);
        assert!(!prime_contains(&p, &Polynomial::var(Variable::plain("y"))));
        assert!(prime_contains(&p, &Polynomial::zero()));
        let f = &Polynomial::var(Variable::plain("x")) * &Polynomial::var(Variable::plain("y"));
        assert!(prime_contains(&p, &f));
    }

    #[test]
    fn minimal_primes_small() {
        let got = minimal_primes_squarefree(&ideal(&["x*y"])).unwrap();
        assert_eq!(got, [prime(&["x"]), prime(&["y"])].into_iter().collect());
        let got = minimal_primes_squarefree(&ideal(&["x*y", "y*z", "x*z"])).unwrap();
        assert_eq!(
            got,
            [prime(&["x", "y"]), prime(&["y", "z"]), prime(&["x", "z"])]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn minimal_primes_edge_cases() {
        assert!(minimal_primes_squarefree(&MonomialIdeal::unit())
            .unwrap()
            .is_empty());
        let zero = minimal_primes_squarefree(&MonomialIdeal::zero()).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero.iter().next().unwrap().height(), 0);
        assert!(matches!(
            minimal_primes_squarefree(&ideal(&["x^2"])),
            Err(Error::NotSquarefree(_))
        ));
    }

    #[test]
    fn sum_of_radicals() {
        assert_eq!(
            sum_radical(&[ideal(&["x^2"]), ideal(&["y^2"])]),
            ideal(&["x", "y"])
        );
        assert_eq!(sum_radical(&[ideal(&["x^3*y"])]), ideal(&["x*y"]));
    }
}
