//! Closed-form component theory for wedge schemes of monomial schemes.
//!
//! For `X = V(x_1^{a_1} ⋯ x_r^{a_r}) ⊆ A^N` the minimal primes of `W_m(X)`
//! are the staircase primes `(x_k^(i,j) : i + j < t_k)` for the
//! componentwise-minimal tuples `t ∈ {0..m+1}^r` with `Σ a_k t_k ≥ m+1`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial_ideal::{minimalize, sum_radical, MonomialIdeal, VariablePrime};
use crate::par::Execution;
use crate::scheme::AffineIdealInput;
use crate::symbolic::{Monomial, Polynomial, VarKind, Variable};

/// Number of wedge coordinates over `A^n`: `n(m+1)(m+2)/2`.
pub fn wedge_dimension(n: usize, m: u32) -> usize {
    let m = m as usize;
    n * (m + 1) * (m + 2) / 2
}

/// Default coordinate names: `x, y, z, w` up to four variables, otherwise
/// `x1, x2, …` zero-padded so that name order is index order.
pub fn default_names(r: usize) -> Vec<String> {
    if r <= 4 {
        ["x", "y", "z", "w"][..r]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        let width = r.to_string().len();
        (1..=r).map(|k| format!("x{k:0width$}")).collect()
    }
}

/// `x_1^{a_1} ⋯ x_r^{a_r} = 0` inside `A^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialHypersurface {
    ambient: usize,
    exponents: Vec<u32>,
    bases: Vec<Variable>,
}

impl MonomialHypersurface {
    pub fn new(ambient: usize, exponents: Vec<u32>) -> Result<Self> {
        let names = default_names(exponents.len());
        Self::with_names(ambient, exponents, &names)
    }

    pub fn with_names<S: AsRef<str>>(
        ambient: usize,
        exponents: Vec<u32>,
        names: &[S],
    ) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidInput("exponent vector is empty".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidInput("exponents must be positive".into()));
        }
        if ambient < exponents.len() {
            return Err(Error::InvalidInput(format!(
                "ambient dimension {ambient} is smaller than the {} variables of the equation",
                exponents.len()
            )));
        }
        if names.len() != exponents.len() {
            return Err(Error::InvalidInput(
                "one name per exponent is required".into(),
            ));
        }
        let bases: Vec<Variable> = names.iter().map(|n| Variable::plain(n.as_ref())).collect();
        Ok(MonomialHypersurface {
            ambient,
            exponents,
            bases,
        })
    }

    /// The hypersurface with `N = r`.
    pub fn in_own_space(exponents: Vec<u32>) -> Result<Self> {
        Self::new(exponents.len(), exponents)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn bases(&self) -> &[Variable] {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_reduced(&self) -> bool {
        self.exponents.iter().all(|a| *a == 1)
    }

    pub fn equation(&self) -> Polynomial {
        Polynomial::monomial(Monomial::from_factors(
            self.bases
                .iter()
                .cloned()
                .zip(self.exponents.iter().copied()),
        ))
    }

    /// The equation as builder input over the `r` variables it involves.
    pub fn affine_input(&self) -> AffineIdealInput {
        AffineIdealInput::new(self.bases.clone(), vec![self.equation()])
            .expect("monomial hypersurface is a valid input")
    }

    pub fn wedge_var(&self, k: usize, i: u32, j: u32) -> Variable {
        self.bases[k].with_kind(VarKind::Wedge(i, j))
    }
}

/// The prime `(x_k^(i,j) : i + j < t_k)` attached to an order tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StaircasePrime {
    m: u32,
    t: Vec<u32>,
}

impl StaircasePrime {
    pub fn new(m: u32, t: Vec<u32>) -> Result<Self> {
        if let Some(bad) = t.iter().find(|tk| **tk > m + 1) {
            return Err(Error::InvalidInput(format!(
                "order {bad} exceeds the cap m + 1 = {}",
                m + 1
            )));
        }
        Ok(StaircasePrime { m, t })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    /// `Σ t_k (t_k + 1) / 2`.
    pub fn height(&self) -> usize {
        self.t
            .iter()
            .map(|&t| (t as usize) * (t as usize + 1) / 2)
            .sum()
    }

    pub fn is_feasible(&self, exponents: &[u32]) -> bool {
        weighted(exponents, &self.t) > self.m as u64
    }

    pub fn is_minimal(&self, exponents: &[u32]) -> bool {
        is_minimal_tuple(exponents, &self.t, self.m)
    }

    pub fn contains(&self, v: &Variable, hyp: &MonomialHypersurface) -> bool {
        match (
            hyp.bases.iter().position(|b| b.base() == v.base()),
            v.kind(),
        ) {
            (Some(k), VarKind::Wedge(i, j)) => i + j < self.t[k],
            _ => false,
        }
    }

    pub fn expand(&self, hyp: &MonomialHypersurface) -> VariablePrime {
        VariablePrime::new(self.t.iter().enumerate().flat_map(|(k, &tk)| {
            (0..tk).flat_map(move |d| (0..=d).map(move |i| hyp.wedge_var(k, i, d - i)))
        }))
    }

    /// A point of the prime's component: prime coordinates zero, all others one.
    pub fn witness_point(&self, hyp: &MonomialHypersurface) -> BTreeMap<Variable, u64> {
        let mut point = BTreeMap::new();
        for (k, &tk) in self.t.iter().enumerate() {
            for d in 0..=self.m {
                for i in 0..=d {
                    point.insert(hyp.wedge_var(k, i, d - i), u64::from(d >= tk));
                }
            }
        }
        point
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.t.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

fn weighted(a: &[u32], t: &[u32]) -> u64 {
    a.iter().zip(t).map(|(&a, &t)| a as u64 * t as u64).sum()
}

fn is_minimal_tuple(a: &[u32], t: &[u32], m: u32) -> bool {
    let target = m as u64 + 1;
    let s = weighted(a, t);
    s >= target
        && a.iter()
            .zip(t)
            .all(|(&ak, &tk)| tk == 0 || s - (ak as u64) < target)
}

pub fn enumerate_minimal_primes(hyp: &MonomialHypersurface, m: u32) -> Vec<StaircasePrime> {
    enumerate_minimal_primes_with(hyp, m, Execution::default())
}

/// Minimal feasible order tuples, sorted in descending lexicographic order.
pub fn enumerate_minimal_primes_with(
    hyp: &MonomialHypersurface,
    m: u32,
    exec: Execution,
) -> Vec<StaircasePrime> {
    let tuples = if hyp.is_reduced() {
        weak_compositions(m + 1, hyp.rank())
    } else {
        minimal_tuples(&hyp.exponents, m, exec)
    };
    to_primes(tuples, m)
}

fn to_primes(mut tuples: Vec<Vec<u32>>, m: u32) -> Vec<StaircasePrime> {
    tuples.sort_by(|a, b| b.cmp(a));
    tuples
        .into_iter()
        .map(|t| StaircasePrime { m, t })
        .collect()
}

/// The general staircase sweep. Fixing a prefix, a positive entry can only
/// be minimal while the prefix weight stays below `m + 1`.
pub fn minimal_tuples(a: &[u32], m: u32, exec: Execution) -> Vec<Vec<u32>> {
    fn sweep(a: &[u32], m: u32, prefix: &mut Vec<u32>, weight: u64, out: &mut Vec<Vec<u32>>) {
        let target = m as u64 + 1;
        let k = prefix.len();
        if k == a.len() {
            if is_minimal_tuple(a, prefix, m) {
                out.push(prefix.clone());
            }
            return;
        }
        for tk in 0..=m + 1 {
            if tk > 0 && weight >= target {
                break;
            }
            let w = weight + a[k] as u64 * tk as u64;
            prefix.push(tk);
            sweep(a, m, prefix, w, out);
            prefix.pop();
            // larger t_k is never minimal once this one reaches the target
            if w >= target {
                break;
            }
        }
    }
    let first: Vec<u32> = (0..=m + 1).collect();
    exec.map(&first, |&t1| {
        let mut out = Vec::new();
        let w = a[0] as u64 * t1 as u64;
        if t1 > 0 && (w - a[0] as u64) > m as u64 {
            return out;
        }
        let mut prefix = vec![t1];
        sweep(a, m, &mut prefix, w, &mut out);
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

/// All `t ∈ N^parts` with `Σ t = total`.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(left: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            go(left - v, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

type Support = Vec<(u32, u32)>;

/// Square-free parts of the terms of the `g_ij`: for each `x_k` pick `a_k`
/// superscript pairs, with total superscript sum at most `m`.
pub fn radical_generators(hyp: &MonomialHypersurface, m: u32) -> MonomialIdeal {
    // per variable: distinct supports with the least weight realizing them
    let per_var: Vec<Vec<(Support, u32)>> = hyp
        .exponents
        .iter()
        .map(|&a| support_options(a, m))
        .collect();
    let mut acc: Vec<(Vec<Variable>, u32)> = vec![(Vec::new(), 0)];
    for (k, options) in per_var.iter().enumerate() {
        let mut next = Vec::new();
        for (vars, w) in &acc {
            for (set, sw) in options {
                if w + sw > m {
                    continue;
                }
                let mut vs = vars.clone();
                vs.extend(set.iter().map(|&(i, j)| hyp.wedge_var(k, i, j)));
                next.push((vs, w + sw));
            }
        }
        acc = next;
    }
    minimalize(acc.into_iter().map(|(vs, _)| Monomial::squarefree(vs)))
}

fn support_options(a: u32, m: u32) -> Vec<(Vec<(u32, u32)>, u32)> {
    let pairs: Vec<(u32, u32)> = (0..=m)
        .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
        .collect();
    let mut best: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    // nondecreasing index sequences of length a
    fn go(
        pairs: &[(u32, u32)],
        a: u32,
        m: u32,
        from: usize,
        chosen: &mut Vec<usize>,
        weight: u32,
        best: &mut BTreeMap<Vec<usize>, u32>,
    ) {
        if chosen.len() == a as usize {
            let mut set = chosen.clone();
            set.dedup();
            let slot = best.entry(set).or_insert(weight);
            *slot = (*slot).min(weight);
            return;
        }
        for idx in from..pairs.len() {
            let w = weight + pairs[idx].0 + pairs[idx].1;
            if w > m {
                // pairs are sorted by degree
                break;
            }
            chosen.push(idx);
            go(pairs, a, m, idx, chosen, w, best);
            chosen.pop();
        }
    }
    go(&pairs, a, m, 0, &mut Vec::new(), 0, &mut best);
    let all: Vec<(Vec<usize>, u32)> = best.into_iter().collect();
    // a superset realized at no smaller weight never yields a minimal generator
    all.iter()
        .filter(|(set, w)| {
            !all.iter().any(|(other, ow)| {
                other.len() < set.len() && ow <= w && other.iter().all(|o| set.contains(o))
            })
        })
        .map(|(set, w)| (set.iter().map(|&i| pairs[i]).collect(), *w))
        .collect()
}

/// Radical of `W_m` of the monomial scheme cut out by several monomials in
/// shared variables, each given by its exponent vector.
pub fn radical_monomial_scheme(exponents: &[Vec<u32>], m: u32) -> Result<MonomialIdeal> {
    let n = exponents.first().map_or(0, Vec::len);
    if exponents.iter().any(|e| e.len() != n) {
        return Err(Error::InvalidInput(
            "exponent vectors differ in length".into(),
        ));
    }
    let names = default_names(n);
    let mut parts = Vec::with_capacity(exponents.len());
    for e in exponents {
        let support: Vec<usize> = (0..n).filter(|&k| e[k] > 0).collect();
        if support.is_empty() {
            parts.push(MonomialIdeal::unit());
            continue;
        }
        let sub = MonomialHypersurface::with_names(
            support.len(),
            support.iter().map(|&k| e[k]).collect(),
            &support
                .iter()
                .map(|&k| names[k].as_str())
                .collect::<Vec<_>>(),
        )?;
        parts.push(radical_generators(&sub, m));
    }
    Ok(sum_radical(&parts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub t: Vec<u32>,
    pub height: usize,
    pub dim: usize,
}

pub fn component_report(
    prime: &StaircasePrime,
    hyp: &MonomialHypersurface,
    m: u32,
) -> Result<ComponentReport> {
    if prime.t.len() != hyp.rank() || prime.m != m || !prime.is_feasible(&hyp.exponents) {
        return Err(Error::InvalidInput(format!(
            "t = {:?} is not a feasible order tuple for m = {m}",
            prime.t
        )));
    }
    let height = prime.height();
    Ok(ComponentReport {
        t: prime.t.clone(),
        height,
        dim: wedge_dimension(hyp.ambient, m) - height,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LciVerdict {
    /// Largest component dimension.
    pub dim: usize,
    /// `(N-1)(m+1)(m+2)/2`, the dimension of the main component.
    pub expected_dim: usize,
    /// All components have the same dimension.
    pub pure_dimensional: bool,
    /// Exactly one minimal prime.
    pub irreducible: bool,
    /// `dim == expected_dim`; for a reduced hypersurface this is equivalent
    /// to pure dimensionality.
    pub dimension_test: bool,
}

pub fn lci_verdict(hyp: &MonomialHypersurface, m: u32) -> LciVerdict {
    let primes = enumerate_minimal_primes(hyp, m);
    verdict_from(hyp, m, &primes)
}

fn verdict_from(hyp: &MonomialHypersurface, m: u32, primes: &[StaircasePrime]) -> LciVerdict {
    let ambient = wedge_dimension(hyp.ambient, m);
    let dims: Vec<usize> = primes.iter().map(|p| ambient - p.height()).collect();
    let dim = dims.iter().copied().max().unwrap_or(0);
    let expected_dim = wedge_dimension(hyp.ambient - 1, m);
    LciVerdict {
        dim,
        expected_dim,
        pure_dimensional: dims.windows(2).all(|w| w[0] == w[1]),
        irreducible: primes.len() == 1,
        dimension_test: dim == expected_dim,
    }
}

/// Vanishing orders `t_l` of the series `Σ x_l^(i,j) s^i t^j` at a point,
/// capped at `m + 1`.
pub fn order_profile<T: Zero>(
    point: &BTreeMap<Variable, T>,
    hyp: &MonomialHypersurface,
    m: u32,
) -> Result<Vec<u32>> {
    let mut out = vec![m + 1; hyp.rank()];
    for (k, order) in out.iter_mut().enumerate() {
        for d in (0..=m).rev() {
            for i in 0..=d {
                let v = hyp.wedge_var(k, i, d - i);
                let value = point
                    .get(&v)
                    .ok_or_else(|| Error::InvalidInput(format!("point does not assign `{v}`")))?;
                if !value.is_zero() {
                    *order = d;
                }
            }
        }
    }
    Ok(out)
}

/// Whether a point with the given order profile lies on `W_m(X)`.
pub fn profile_on_wedge_scheme(profile: &[u32], hyp: &MonomialHypersurface, m: u32) -> bool {
    weighted(&hyp.exponents, profile) > m as u64
}

/// Machine-readable summary of the component structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeReport {
    pub m: u32,
    pub a: Vec<u32>,
    pub primes: Vec<ComponentReport>,
    pub radical_gens: Vec<String>,
    pub verdict: LciVerdict,
}

impl WedgeReport {
    pub fn build(hyp: &MonomialHypersurface, m: u32, exec: Execution) -> Result<Self> {
        let primes = enumerate_minimal_primes_with(hyp, m, exec);
        let reports = exec
            .map(&primes, |p| component_report(p, hyp, m))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let radical = radical_generators(hyp, m);
        Ok(WedgeReport {
            m,
            a: hyp.exponents.clone(),
            primes: reports,
            radical_gens: radical
                .generators()
                .iter()
                .rev()
                .map(|g| g.to_string())
                .collect(),
            verdict: verdict_from(hyp, m, &primes),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial_ideal::intersect_all;

    fn hyp(a: &[u32]) -> MonomialHypersurface {
        MonomialHypersurface::in_own_space(a.to_vec()).unwrap()
    }

    fn tuples(a: &[u32], m: u32) -> Vec<Vec<u32>> {
        enumerate_minimal_primes(&hyp(a), m)
            .into_iter()
            .map(|p| p.t)
            .collect()
    }

    #[test]
    fn enumerations() {
        assert_eq!(tuples(&[1, 1], 1), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(tuples(&[1, 2], 2), vec![vec![3, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(tuples(&[1, 1, 1], 2).len(), 10);
        assert_eq!(tuples(&[2], 1), vec![vec![1]]);
    }

    #[test]
    fn general_sweep_agrees_with_compositions() {
        for r in 1..=4 {
            for m in 0..=5 {
                let mut general = minimal_tuples(&vec![1; r], m, Execution::Sequential);
                general.sort();
                let mut closed = weak_compositions(m + 1, r);
                closed.sort();
                assert_eq!(general, closed, "r={r} m={m}");
            }
        }
    }

    #[test]
    fn radical_generators_xy() {
        let rad = radical_generators(&hyp(&[1, 1]), 1);
        let printed: Vec<String> = rad
            .generators()
            .iter()
            .rev()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(
            printed,
            [
                "x_(0,0)*y_(0,0)",
                "x_(0,0)*y_(0,1)",
                "x_(0,0)*y_(1,0)",
                "x_(0,1)*y_(0,0)",
                "x_(1,0)*y_(0,0)"
            ]
        );
        let rad = radical_generators(&hyp(&[2]), 1);
        assert_eq!(rad.to_string(), "(x_(0,0))");
        assert_eq!(radical_generators(&hyp(&[1]), 2).len(), 6);
    }

    #[test]
    fn decomposition_matches_radical_for_xy() {
        let h = hyp(&[1, 1]);
        let primes: Vec<MonomialIdeal> = enumerate_minimal_primes(&h, 1)
            .iter()
            .map(|p| p.expand(&h).as_ideal())
            .collect();
        assert_eq!(
            intersect_all(&primes, Execution::Sequential),
            radical_generators(&h, 1)
        );
    }

    #[test]
    fn schemes_of_several_monomials() {
        let single = radical_monomial_scheme(&[vec![1, 1]], 1).unwrap();
        assert_eq!(single, radical_generators(&hyp(&[1, 1]), 1));
        let r = radical_monomial_scheme(&[vec![1, 1, 0], vec![0, 1, 1]], 0).unwrap();
        assert_eq!(r.to_string(), "(x_(0,0)*y_(0,0), y_(0,0)*z_(0,0))");
        let r = radical_monomial_scheme(&[vec![1, 0], vec![0, 1]], 1).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.generators().iter().all(|g| g.degree() == 1));
    }

    #[test]
    fn heights_from_remark_on_xyz() {
        let h = hyp(&[1, 1, 1]);
        let report =
            |t: Vec<u32>| component_report(&StaircasePrime::new(2, t).unwrap(), &h, 2).unwrap();
        assert_eq!(report(vec![3, 0, 0]).height, 6);
        assert_eq!(report(vec![2, 1, 0]).height, 4);
        let r = report(vec![1, 1, 1]);
        assert_eq!((r.height, r.dim), (3, 15));
        assert!(component_report(&StaircasePrime::new(2, vec![1, 1, 0]).unwrap(), &h, 2).is_err());
    }

    #[test]
    fn verdicts() {
        let v = lci_verdict(&hyp(&[1, 1]), 1);
        assert_eq!((v.dim, v.expected_dim), (4, 3));
        assert!(!v.pure_dimensional && !v.irreducible && !v.dimension_test);

        let v = lci_verdict(&hyp(&[1]), 2);
        assert_eq!((v.dim, v.expected_dim), (0, 0));
        assert!(v.pure_dimensional && v.irreducible && v.dimension_test);

        let fat = MonomialHypersurface::new(2, vec![2]).unwrap();
        let v = lci_verdict(&fat, 0);
        assert_eq!((v.dim, v.expected_dim), (1, 1));
        assert!(v.pure_dimensional && v.irreducible);
    }

    #[test]
    fn order_profiles() {
        let h = hyp(&[1, 1]);
        let m = 2;
        let zero: BTreeMap<Variable, u64> = h
            .bases()
            .iter()
            .flat_map(|b| crate::symbolic::wedge_coordinates(b, m))
            .map(|v| (v, 0))
            .collect();
        assert_eq!(order_profile(&zero, &h, m).unwrap(), vec![3, 3]);

        let mut pt: BTreeMap<Variable, u64> = zero.keys().map(|v| (v.clone(), 7)).collect();
        pt.insert(h.wedge_var(0, 0, 0), 0);
        pt.insert(h.wedge_var(0, 1, 0), 1);
        assert_eq!(order_profile(&pt, &h, m).unwrap()[0], 1);

        for p in enumerate_minimal_primes(&h, m) {
            let profile = order_profile(&p.witness_point(&h), &h, m).unwrap();
            assert_eq!(profile, p.t());
            assert!(profile_on_wedge_scheme(&profile, &h, m));
        }
        pt.remove(&h.wedge_var(1, 0, 2));
        assert!(order_profile(&pt, &h, m).is_err());
    }
}
