use std::cmp::Ordering;
use std::fmt;

use super::variable::Variable;

/// A power product of variables, stored sparsely as `(variable, exponent)`
/// pairs sorted by variable. Zero exponents are never stored.
///
/// `Ord` is graded lexicographic: total degree first, then the exponent of
/// the smallest variable is the most significant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    pub fn pow_of(v: Variable, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial {
                factors: vec![(v, e)],
            }
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeats and
    /// dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Variable, u32)>>(factors: I) -> Self {
        let mut fs: Vec<(Variable, u32)> = factors.into_iter().filter(|(_, e)| *e > 0).collect();
        fs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Variable, u32)> = Vec::with_capacity(fs.len());
        for (v, e) in fs {
            match merged.last_mut() {
                Some((last, le)) if *last == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    /// Square-free monomial on a set of variables.
    pub fn squarefree<I: IntoIterator<Item = Variable>>(vars: I) -> Self {
        Self::from_factors(vars.into_iter().map(|v| (v, 1))).support_monomial()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: &Variable) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.factors.iter().map(|(v, _)| v)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// The square-free part (product of the distinct variables).
    pub fn support_monomial(&self) -> Monomial {
        Monomial {
            factors: self.factors.iter().map(|(v, _)| (v.clone(), 1)).collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    /// Least common multiple (exponentwise max).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::max)
    }

    fn merge(&self, other: &Monomial, op: impl Fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), op(a[i].1, b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// `self | other`, exponentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        let b = &other.factors;
        for (v, e) in &self.factors {
            while j < b.len() && b[j].0 < *v {
                j += 1;
            }
            if j == b.len() || b[j].0 != *v || b[j].1 < *e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|(v, e)| {
                let r = e - other.exponent(v);
                (r > 0).then(|| (v.clone(), r))
            })
            .collect();
        Some(Monomial { factors })
    }

    /// Applies a variable renaming. The result is re-canonicalized.
    pub fn rename(&self, f: impl Fn(&Variable) -> Variable) -> Monomial {
        Monomial::from_factors(self.factors.iter().map(|(v, e)| (f(v), *e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.factors.iter().zip(&other.factors) {
                match x.0.cmp(&y.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match x.1.cmp(&y.1) {
                        Ordering::Equal => {}
                        ord => return ord,
                    },
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Variable {
        Variable::plain("x")
    }
    fn y() -> Variable {
        Variable::plain("y")
    }

    #[test]
    fn graded_lex() {
        let xy = Monomial::from_factors([(x(), 1), (y(), 1)]);
        let x2 = Monomial::pow_of(x(), 2);
        let y2 = Monomial::pow_of(y(), 2);
        let x1 = Monomial::var(x());
        assert!(x2 > xy && xy > y2 && y2 > x1);
        assert!(x1 > Monomial::var(y()));
        assert!(Monomial::var(y()) > Monomial::one());
    }

    #[test]
    fn divisibility_matches_exponents() {
        let a = Monomial::from_factors([(x(), 1), (y(), 2)]);
        let b = Monomial::from_factors([(x(), 2), (y(), 2)]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), Some(Monomial::var(x())));
        assert_eq!(a.lcm(&Monomial::pow_of(x(), 3)).degree(), 5);
        assert!(Monomial::one().divides(&a));
    }

    #[test]
    fn merges_repeated_factors() {
        let m = Monomial::from_factors([(y(), 1), (x(), 1), (y(), 1), (x(), 0)]);
        assert_eq!(m.to_string(), "x*y^2");
        assert_eq!(m.support_monomial().to_string(), "x*y");
    }
}
