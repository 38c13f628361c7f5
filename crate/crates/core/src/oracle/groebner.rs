//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are converted to a dense exponent representation over a fixed
//! variable list; the first variable in the list is the most significant.
//! Pairs are processed smallest lcm first and filtered with the coprime
//! leading-monomial criterion and the chain criterion. The number of
//! S-polynomials actually reduced is capped by a caller-supplied budget.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::symbolic::{Monomial, Polynomial, Variable};

pub const DEFAULT_BUDGET: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    /// Block order: grevlex on the first `k` variables, ties broken by
    /// grevlex on the rest. Eliminates the first block.
    Eliminate(usize),
}

type Exp = Vec<u32>;
/// Terms sorted ascending; the leading term is last.
type Poly = Vec<(Exp, BigRational)>;

#[derive(Clone, Debug)]
struct Ring {
    vars: Vec<Variable>,
    order: TermOrder,
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for k in (0..a.len()).rev() {
            if a[k] != b[k] {
                return b[k].cmp(&a[k]);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn sub(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn lm(p: &Poly) -> &Exp {
    &p.last().expect("nonzero polynomial").0
}

impl Ring {
    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.order {
            TermOrder::Grevlex => grevlex(a, b),
            TermOrder::Eliminate(k) => {
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    fn import(&self, f: &Polynomial) -> Poly {
        let mut out: Poly = f
            .terms()
            .map(|(m, c)| {
                let mut e = vec![0; self.vars.len()];
                for (v, k) in m.factors() {
                    let idx = self
                        .vars
                        .iter()
                        .position(|w| w == v)
                        .expect("ring covers every variable");
                    e[idx] = *k;
                }
                (e, c.clone())
            })
            .collect();
        out.sort_by(|a, b| self.cmp(&a.0, &b.0));
        out
    }

    fn export(&self, p: &Poly) -> Polynomial {
        Polynomial::from_terms(p.iter().map(|(e, c)| (self.monomial(e), c.clone())))
    }

    fn monomial(&self, e: &[u32]) -> Monomial {
        Monomial::from_factors(
            self.vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| (v.clone(), k)),
        )
    }

    /// `p - c * x^shift * g`.
    fn sub_scaled(&self, p: &Poly, c: &BigRational, shift: &[u32], g: &Poly) -> Poly {
        let mut out = Vec::with_capacity(p.len() + g.len());
        let mut shifted = g.iter().map(|(e, d)| (add(e, shift), d * c)).peekable();
        let mut left = p.iter().peekable();
        loop {
            match (left.peek(), shifted.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(left.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (e, d) = shifted.next().unwrap();
                    out.push((e, -d));
                }
                (Some((ea, _)), Some((eb, _))) => match self.cmp(ea, eb) {
                    Ordering::Less => out.push(left.next().unwrap().clone()),
                    Ordering::Greater => {
                        let (e, d) = shifted.next().unwrap();
                        out.push((e, -d));
                    }
                    Ordering::Equal => {
                        let (e, a) = left.next().unwrap();
                        let (_, b) = shifted.next().unwrap();
                        let s = a - b;
                        if !s.is_zero() {
                            out.push((e.clone(), s));
                        }
                    }
                },
            }
        }
        out
    }

    /// Full reduction by a list of monic polynomials.
    fn normal_form(&self, f: &Poly, basis: &[Poly]) -> Poly {
        let mut p = f.clone();
        let mut rem: Poly = Vec::new();
        while let Some((e, c)) = p.last().cloned() {
            match basis.iter().find(|g| divides(lm(g), &e)) {
                Some(g) => {
                    let shift = sub(&e, lm(g));
                    p = self.sub_scaled(&p, &c, &shift, g);
                }
                None => {
                    p.pop();
                    rem.push((e, c));
                }
            }
        }
        rem.reverse();
        rem
    }

    fn s_poly(&self, f: &Poly, g: &Poly, l: &[u32]) -> Poly {
        let sf: Poly = f
            .iter()
            .map(|(e, c)| (add(e, &sub(l, lm(f))), c.clone()))
            .collect();
        self.sub_scaled(&sf, &BigRational::one(), &sub(l, lm(g)), g)
    }

    fn buchberger(&self, gens: Vec<Poly>, budget: usize) -> Result<Vec<Poly>> {
        let mut g: Vec<Poly> = gens
            .into_iter()
            .filter(|p| !p.is_empty())
            .map(monic)
            .collect();
        if let Some(u) = g.iter().find(|p| is_constant(p)) {
            return Ok(vec![u.clone()]);
        }
        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
        for j in 0..g.len() {
            for i in 0..j {
                pending.insert((i, j));
            }
        }
        let mut reduced = 0usize;
        while let Some(&(i, j)) = pending.iter().min_by(|a, b| {
            let la = lcm(lm(&g[a.0]), lm(&g[a.1]));
            let lb = lcm(lm(&g[b.0]), lm(&g[b.1]));
            self.cmp(&la, &lb).then_with(|| a.cmp(b))
        }) {
            pending.remove(&(i, j));
            let (li, lj) = (lm(&g[i]), lm(&g[j]));
            if coprime(li, lj) {
                continue;
            }
            let l = lcm(li, lj);
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            let chain = (0..g.len()).any(|k| {
                k != i
                    && k != j
                    && divides(lm(&g[k]), &l)
                    && !pending.contains(&key(i, k))
                    && !pending.contains(&key(j, k))
            });
            if chain {
                continue;
            }
            reduced += 1;
            if reduced > budget {
                return Err(Error::Budget(budget));
            }
            let r = self.normal_form(&self.s_poly(&g[i], &g[j], &l), &g);
            if r.is_empty() {
                continue;
            }
            let r = monic(r);
            if is_constant(&r) {
                return Ok(vec![r]);
            }
            let k = g.len();
            g.push(r);
            for i in 0..k {
                pending.insert((i, k));
            }
        }
        Ok(self.reduce_basis(g))
    }

    /// Minimal, tail-reduced, sorted by leading monomial.
    fn reduce_basis(&self, g: Vec<Poly>) -> Vec<Poly> {
        let mut minimal: Vec<Poly> = Vec::new();
        for (idx, p) in g.iter().enumerate() {
            let redundant = g.iter().enumerate().any(|(other, q)| {
                other != idx && divides(lm(q), lm(p)) && (lm(q) != lm(p) || other < idx)
            });
            if !redundant {
                minimal.push(p.clone());
            }
        }
        let mut out: Vec<Poly> = (0..minimal.len())
            .map(|i| {
                let others: Vec<Poly> = minimal
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                let (head, tail) = minimal[i].split_last().expect("nonzero");
                let mut r = self.normal_form(&tail.to_vec(), &others);
                r.push(head.clone());
                r
            })
            .collect();
        out.sort_by(|a, b| self.cmp(lm(a), lm(b)));
        out
    }

    fn exact_div(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let mut rest = a.clone();
        let mut quotient: Poly = Vec::new();
        let (lb, cb) = b.last().expect("nonzero divisor");
        while let Some((e, c)) = rest.last().cloned() {
            if !divides(lb, &e) {
                return Err(Error::InvalidInput("division is not exact".into()));
            }
            let shift = sub(&e, lb);
            let coef = &c / cb;
            rest = self.sub_scaled(&rest, &coef, &shift, b);
            quotient.push((shift, coef));
        }
        quotient.sort_by(|x, y| self.cmp(&x.0, &y.0));
        Ok(quotient)
    }
}

fn monic(mut p: Poly) -> Poly {
    let lc = p.last().expect("nonzero").1.clone();
    if !lc.is_one() {
        for (_, c) in p.iter_mut() {
            *c = &*c / &lc;
        }
    }
    p
}

fn is_constant(p: &Poly) -> bool {
    p.len() == 1 && p[0].0.iter().all(|&e| e == 0)
}

fn variables_of<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Vec<Variable> {
    let mut vars = BTreeSet::new();
    for p in polys {
        vars.extend(p.variables());
    }
    vars.into_iter().collect()
}

/// A reduced Gröbner basis together with its ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    basis: Vec<Poly>,
}

impl GroebnerBasis {
    /// Grevlex basis over the variables that occur in `gens`.
    pub fn compute(gens: &[Polynomial], budget: usize) -> Result<Self> {
        Self::compute_in(gens, variables_of(gens), TermOrder::Grevlex, budget)
    }

    /// `vars` must cover every variable of `gens`; their listed order is the
    /// significance order.
    pub fn compute_in(
        gens: &[Polynomial],
        vars: Vec<Variable>,
        order: TermOrder,
        budget: usize,
    ) -> Result<Self> {
        let present: BTreeSet<Variable> = vars.iter().cloned().collect();
        if let Some(v) = variables_of(gens)
            .into_iter()
            .find(|v| !present.contains(v))
        {
            return Err(Error::InvalidInput(format!("variable {v} not in the ring")));
        }
        if let TermOrder::Eliminate(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidInput("elimination block too large".into()));
            }
        }
        let ring = Ring { vars, order };
        let imported = gens.iter().map(|g| ring.import(g)).collect();
        let basis = ring.buchberger(imported, budget)?;
        Ok(GroebnerBasis { ring, basis })
    }

    pub fn ordering(&self) -> TermOrder {
        self.ring.order
    }

    pub fn variables(&self) -> &[Variable] {
        &self.ring.vars
    }

    /// Basis elements sorted by leading monomial, each monic.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|p| self.ring.export(p)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|p| self.ring.monomial(lm(p)))
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(is_constant)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    /// Variables missing from the ring are appended as least significant,
    /// which keeps the basis a Gröbner basis of the extended ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let known: HashSet<&Variable> = self.ring.vars.iter().collect();
        let extra: Vec<Variable> = f
            .variables()
            .into_iter()
            .filter(|v| !known.contains(v))
            .collect();
        if extra.is_empty() {
            let r = self.ring.normal_form(&self.ring.import(f), &self.basis);
            return self.ring.export(&r);
        }
        let pad = extra.len();
        let mut vars = self.ring.vars.clone();
        vars.extend(extra);
        let ring = Ring {
            vars,
            order: self.ring.order,
        };
        let basis: Vec<Poly> = self
            .basis
            .iter()
            .map(|p| {
                p.iter()
                    .map(|(e, c)| {
                        let mut e = e.clone();
                        e.extend(std::iter::repeat_n(0, pad));
                        (e, c.clone())
                    })
                    .collect()
            })
            .collect();
        ring.export(&ring.normal_form(&ring.import(f), &basis))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

pub fn groebner_membership(f: &Polynomial, gens: &[Polynomial], budget: usize) -> Result<bool> {
    Ok(GroebnerBasis::compute(gens, budget)?.contains(f))
}

/// Equality of the ideals generated by `a` and `b`, by comparing reduced bases.
pub fn ideals_equal(a: &[Polynomial], b: &[Polynomial], budget: usize) -> Result<bool> {
    let vars = variables_of(a.iter().chain(b));
    let ga = GroebnerBasis::compute_in(a, vars.clone(), TermOrder::Grevlex, budget)?;
    let gb = GroebnerBasis::compute_in(b, vars, TermOrder::Grevlex, budget)?;
    Ok(ga.basis == gb.basis)
}

/// Generators of `(I : f)` as a reduced grevlex basis.
///
/// Computes `I ∩ (f)` by eliminating an auxiliary variable from
/// `T·I + (1 - T)·f`, then divides each generator by `f`.
pub fn ideal_quotient(
    gens: &[Polynomial],
    f: &Polynomial,
    budget: usize,
) -> Result<Vec<Polynomial>> {
    if f.is_zero() {
        return Ok(vec![Polynomial::one()]);
    }
    let aux = Variable::plain("#elim");
    let mut vars = vec![aux.clone()];
    vars.extend(variables_of(gens.iter().chain([f])));
    let t = Polynomial::var(aux);
    let one_minus_t = &Polynomial::one() - &t;
    let mut lifted: Vec<Polynomial> = gens.iter().map(|g| &t * g).collect();
    lifted.push(&one_minus_t * f);
    let elim = GroebnerBasis::compute_in(&lifted, vars.clone(), TermOrder::Eliminate(1), budget)?;
    let ring = Ring {
        vars: vars[1..].to_vec(),
        order: TermOrder::Grevlex,
    };
    let divisor = ring.import(f);
    let mut quotients = Vec::new();
    for p in &elim.basis {
        if lm(p)[0] != 0 {
            continue;
        }
        let q: Poly = p
            .iter()
            .map(|(e, c)| (e[1..].to_vec(), c.clone()))
            .collect();
        let mut q = q;
        q.sort_by(|a, b| ring.cmp(&a.0, &b.0));
        quotients.push(ring.exact_div(&q, &divisor)?);
    }
    let basis = ring.buchberger(quotients, budget)?;
    Ok(basis.iter().map(|p| ring.export(p)).collect())
}

/// Monomials in `vars` of degree at most `max_degree`, degree by degree.
pub fn monomials_up_to(vars: &[Variable], max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![(Monomial::one(), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (m, from) in &layer {
            for (idx, v) in vars.iter().enumerate().skip(*from) {
                next.push((m.mul(&Monomial::var(v.clone())), idx));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

/// First monomial `h` (by degree) with `(I : h) = target`.
pub fn quotient_witness_search(
    gens: &[Polynomial],
    target: &[Polynomial],
    max_degree: u32,
    budget: usize,
) -> Result<Option<Monomial>> {
    let vars = variables_of(gens);
    for h in monomials_up_to(&vars, max_degree) {
        let q = ideal_quotient(gens, &Polynomial::monomial(h.clone()), budget)?;
        if ideals_equal(&q, target, budget)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}
