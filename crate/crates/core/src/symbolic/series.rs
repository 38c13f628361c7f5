use std::collections::BTreeMap;

use super::poly::Polynomial;
use super::variable::{VarKind, Variable};
use crate::error::{Error, Result};

/// An element of `R[s,t]/(s,t)^{m+1}` where `R` is a polynomial ring.
///
/// Coefficients are indexed by `(i, j)` for the monomial `s^i t^j`.
/// Keys with `i + j > m` never exist and zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    m: u32,
    coeffs: BTreeMap<(u32, u32), Polynomial>,
}

impl TruncatedSeries {
    pub fn zero(m: u32) -> Self {
        TruncatedSeries {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(p: Polynomial, m: u32) -> Self {
        let mut s = Self::zero(m);
        s.set(0, 0, p);
        s
    }

    /// `c * s^i t^j`, or zero if `i + j > m`.
    pub fn monomial(c: Polynomial, i: u32, j: u32, m: u32) -> Self {
        let mut s = Self::zero(m);
        s.set(i, j, c);
        s
    }

    /// The generic wedge `x ↦ Σ x^(i,j) s^i t^j`.
    pub fn generic_wedge(base: &Variable, m: u32) -> Self {
        let mut s = Self::zero(m);
        for d in 0..=m {
            for i in 0..=d {
                let v = base.with_kind(VarKind::Wedge(i, d - i));
                s.set(i, d - i, Polynomial::var(v));
            }
        }
        s
    }

    /// The generic jet `x ↦ Σ x^(n) t^n`, stored on the `t` axis.
    pub fn generic_jet(base: &Variable, m: u32) -> Self {
        let mut s = Self::zero(m);
        for n in 0..=m {
            s.set(0, n, Polynomial::var(base.with_kind(VarKind::Jet(n))));
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    fn set(&mut self, i: u32, j: u32, p: Polynomial) {
        if i + j <= self.m && !p.is_zero() {
            self.coeffs.insert((i, j), p);
        } else {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Polynomial {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), Polynomial> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::TruncationMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(i, j), p) in &other.coeffs {
            let sum = &out.coeff(i, j) + p;
            out.set(i, j, sum);
        }
        Ok(out)
    }

    /// Product with truncation applied term by term.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        for (&(p, q), a) in &self.coeffs {
            for (&(u, v), b) in &other.coeffs {
                if p + q + u + v > self.m {
                    continue;
                }
                let slot = acc.entry((p + u, q + v)).or_default();
                *slot = &*slot + &(a * b);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(TruncatedSeries {
            m: self.m,
            coeffs: acc,
        })
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        let mut out = Self::zero(self.m);
        for (&(i, j), p) in &self.coeffs {
            out.set(i, j, p * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(Polynomial::one(), self.m);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

/// Computes `f(images)` in the truncated ring, truncating after every product.
pub fn substitute_truncated(
    f: &Polynomial,
    images: &BTreeMap<Variable, TruncatedSeries>,
    m: u32,
) -> Result<TruncatedSeries> {
    for img in images.values() {
        if img.order() != m {
            return Err(Error::TruncationMismatch {
                left: m,
                right: img.order(),
            });
        }
    }
    // cache powers of each image
    let mut powers: BTreeMap<&Variable, Vec<TruncatedSeries>> = BTreeMap::new();
    let mut out = TruncatedSeries::zero(m);
    for (mono, c) in f.terms() {
        let mut term = TruncatedSeries::constant(Polynomial::constant(c.clone()), m);
        for (v, e) in mono.factors() {
            let img = images
                .get(v)
                .ok_or_else(|| Error::MissingImage(v.to_string()))?;
            let cache = powers
                .entry(v)
                .or_insert_with(|| vec![TruncatedSeries::constant(Polynomial::one(), m)]);
            while cache.len() <= *e as usize {
                let next = cache.last().expect("nonempty").mul(img)?;
                cache.push(next);
            }
            term = term.mul(&cache[*e as usize])?;
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(base: &str, i: u32, j: u32) -> Polynomial {
        Polynomial::var(Variable::wedge(base, i, j))
    }

    fn s(m: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(Polynomial::one(), 1, 0, m)
    }

    fn t(m: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(Polynomial::one(), 0, 1, m)
    }

    #[test]
    fn st_vanishes_at_order_one() {
        assert!(s(1).mul(&t(1)).unwrap().is_zero());
        let st = s(2).mul(&t(2)).unwrap();
        assert_eq!(st.coeffs().len(), 1);
        assert_eq!(st.coeff(1, 1), Polynomial::one());
    }

    #[test]
    fn hand_expansion_m1() {
        let a = TruncatedSeries::constant(w("x", 0, 0), 1)
            .add(&TruncatedSeries::monomial(w("x", 1, 0), 1, 0, 1))
            .unwrap();
        let b = TruncatedSeries::constant(w("y", 0, 0), 1)
            .add(&TruncatedSeries::monomial(w("y", 0, 1), 0, 1, 1))
            .unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.coeffs().len(), 3);
        assert_eq!(c.coeff(0, 0), &w("x", 0, 0) * &w("y", 0, 0));
        assert_eq!(c.coeff(1, 0), &w("x", 1, 0) * &w("y", 0, 0));
        assert_eq!(c.coeff(0, 1), &w("x", 0, 0) * &w("y", 0, 1));
    }

    #[test]
    fn mismatched_orders_error() {
        assert!(matches!(
            s(1).mul(&s(2)),
            Err(Error::TruncationMismatch { left: 1, right: 2 })
        ));
    }

    fn generic(names: &[&str], m: u32) -> BTreeMap<Variable, TruncatedSeries> {
        names
            .iter()
            .map(|n| {
                let v = Variable::plain(*n);
                let img = TruncatedSeries::generic_wedge(&v, m);
                (v, img)
            })
            .collect()
    }

    #[test]
    fn linear_substitution() {
        let x = Polynomial::var(Variable::plain("x"));
        let out = substitute_truncated(&x, &generic(&["x"], 1), 1).unwrap();
        assert_eq!(out.coeffs().len(), 3);
        assert_eq!(out.coeff(0, 1), w("x", 0, 1));
    }

    #[test]
    fn product_substitution_m1() {
        let xy = Polynomial::var(Variable::plain("x")) * Polynomial::var(Variable::plain("y"));
        let out = substitute_truncated(&xy, &generic(&["x", "y"], 1), 1).unwrap();
        assert_eq!(out.coeff(0, 0), &w("x", 0, 0) * &w("y", 0, 0));
        assert_eq!(
            out.coeff(1, 0),
            &(&w("x", 0, 0) * &w("y", 1, 0)) + &(&w("x", 1, 0) * &w("y", 0, 0))
        );
        assert_eq!(
            out.coeff(0, 1),
            &(&w("x", 0, 0) * &w("y", 0, 1)) + &(&w("x", 0, 1) * &w("y", 0, 0))
        );
    }

    #[test]
    fn square_at_order_zero() {
        let x2 = Polynomial::var(Variable::plain("x")).pow(2);
        let out = substitute_truncated(&x2, &generic(&["x"], 0), 0).unwrap();
        assert_eq!(out.coeffs().len(), 1);
        assert_eq!(out.coeff(0, 0), w("x", 0, 0).pow(2));
    }

    #[test]
    fn missing_image() {
        let y = Polynomial::var(Variable::plain("y"));
        assert!(matches!(
            substitute_truncated(&y, &generic(&["x"], 1), 1),
            Err(Error::MissingImage(name)) if name == "y"
        ));
    }
}
