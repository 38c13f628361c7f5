use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::Monomial;
use super::variable::Variable;

/// Exact multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map keyed by graded-lex monomial order and zero
/// coefficients are never stored, so structural equality is ideal-free
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Variable) -> Self {
        Self::term(BigRational::one(), Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(BigRational::one(), m)
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.variables().cloned())
            .collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of polynomials for variables. Variables
    /// absent from `images` are left untouched.
    pub fn substitute(&self, images: &BTreeMap<Variable, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut prod = Polynomial::constant(c.clone());
            for (v, e) in m.factors() {
                match images.get(v) {
                    Some(img) => prod = &prod * &img.pow(*e),
                    None => keep.push((v.clone(), *e)),
                }
            }
            out = &out + &prod.mul_monomial(&Monomial::from_factors(keep));
        }
        out
    }

    pub fn rename(&self, f: impl Fn(&Variable) -> Variable) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    /// Evaluates modulo a prime `q`. Unassigned variables count as zero.
    ///
    /// Returns `None` if some coefficient denominator vanishes mod `q`.
    pub fn eval_mod(&self, point: &BTreeMap<Variable, u64>, q: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut v = rational_mod(c, q)?;
            for (x, e) in m.factors() {
                let base = point.get(x).copied().unwrap_or(0) % q;
                v = mul_mod(v, pow_mod(base, *e as u64, q), q);
                if v == 0 {
                    break;
                }
            }
            acc = (acc + v) % q;
        }
        Some(acc)
    }

    /// Exact evaluation at rational values. Unassigned variables count as zero.
    pub fn eval_rational(&self, point: &BTreeMap<Variable, BigRational>) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in m.factors() {
                match point.get(x) {
                    Some(val) => v *= num_traits::pow(val.clone(), *e as usize),
                    None => {
                        v = BigRational::zero();
                        break;
                    }
                }
            }
            acc += v;
        }
        acc
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, q);
        }
        b = mul_mod(b, b, q);
        e >>= 1;
    }
    acc
}

/// `c mod q` for a rational `c`, or `None` if its denominator is divisible by `q`.
pub(crate) fn rational_mod(c: &BigRational, q: u64) -> Option<u64> {
    let qb = BigInt::from(q);
    let reduce = |n: &BigInt| -> u64 {
        let r = ((n % &qb) + &qb) % &qb;
        r.to_u64().expect("residue fits in u64")
    };
    let num = reduce(c.numer());
    let den = reduce(c.denom());
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, pow_mod(den, q - 2, q), q))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial::var(v)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

/// Prints terms leading-first, e.g. `x^2 - 1/2*x*y + 3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Polynomial {
        Polynomial::var(Variable::plain(name))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = (v("x"), v("y"));
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x^2 - y^2");
    }

    #[test]
    fn additive_identity() {
        let p = &v("x") * &v("y") + Polynomial::integer(3);
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn rational_cancellation() {
        let half_x = v("x").scale(&rat(1, 2));
        let two_x = v("x").scale(&rat(2, 1));
        assert_eq!(&half_x * &two_x, v("x").pow(2));
    }

    #[test]
    fn display_signs_and_fractions() {
        let p = &v("x").pow(2).scale(&rat(-1, 2)) + &Polynomial::integer(-3);
        assert_eq!(p.to_string(), "-1/2*x^2 - 3");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn substitution_and_modular_evaluation() {
        let (x, y) = (v("x"), v("y"));
        let p = &x * &y;
        let mut images = BTreeMap::new();
        images.insert(Variable::plain("x"), &y + &Polynomial::one());
        assert_eq!(p.substitute(&images), &(&y * &y) + &y);

        let mut pt = BTreeMap::new();
        pt.insert(Variable::plain("x"), 3);
        pt.insert(Variable::plain("y"), 5);
        let half = p.scale(&rat(1, 2));
        // 15/2 mod 7 = 1 * 2^{-1} = 4
        assert_eq!(half.eval_mod(&pt, 7), Some(4));
        assert_eq!(Polynomial::constant(rat(1, 7)).eval_mod(&pt, 7), None);
    }
}
