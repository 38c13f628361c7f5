//! Defining ideals of truncated wedge schemes and jet schemes.
//!
//! For `X = Spec k[x_1..x_N]/(f_1..f_d)` every coordinate is replaced by
//! its generic wedge `Σ x^(i,j) s^i t^j` in `k[s,t]/(s,t)^{m+1}`; the
//! coefficients of `s^i t^j` in the images of the `f_k` generate the ideal
//! of `W_m(X)`. The jet construction is the one-parameter analog with
//! `x ↦ Σ x^(n) t^n` modulo `t^{m+1}`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::symbolic::{
    parse_polynomial, substitute_truncated, wedge_coordinates, Branch, Polynomial, TruncatedSeries,
    VarKind, Variable, VariableTable,
};

/// Generators of an ideal in the ambient coordinates `x_1..x_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineIdealInput {
    ambient_vars: Vec<Variable>,
    generators: Vec<Polynomial>,
}

impl AffineIdealInput {
    pub fn new(ambient_vars: Vec<Variable>, generators: Vec<Polynomial>) -> Result<Self> {
        let distinct: BTreeSet<&Variable> = ambient_vars.iter().collect();
        if distinct.len() != ambient_vars.len() {
            return Err(Error::InvalidInput("ambient variables repeat".into()));
        }
        if let Some(v) = ambient_vars.iter().find(|v| v.kind() != VarKind::Plain) {
            return Err(Error::InvalidInput(format!(
                "ambient variable `{v}` carries a superscript"
            )));
        }
        for g in &generators {
            if g.is_zero() {
                return Err(Error::InvalidInput("zero generator".into()));
            }
            if let Some(v) = g.variables().into_iter().find(|v| !distinct.contains(v)) {
                return Err(Error::InvalidInput(format!(
                    "generator `{g}` uses `{v}` outside the ambient variables"
                )));
            }
        }
        Ok(AffineIdealInput {
            ambient_vars,
            generators,
        })
    }

    /// Parses generators, taking the ambient variables to be those that
    /// occur (sorted) unless `vars` is given.
    pub fn parse<S: AsRef<str>>(generators: &[S], vars: Option<&[S]>) -> Result<Self> {
        let table = match vars {
            Some(names) => VariableTable::plain(names),
            None => VariableTable::open(),
        };
        let gens = generators
            .iter()
            .map(|g| parse_polynomial(g.as_ref(), &table))
            .collect::<Result<Vec<_>>>()?;
        let ambient = match vars {
            Some(names) => names.iter().map(|n| Variable::plain(n.as_ref())).collect(),
            None => gens
                .iter()
                .flat_map(|g| g.variables())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        Self::new(ambient, gens)
    }

    pub fn ambient_vars(&self) -> &[Variable] {
        &self.ambient_vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

/// The ideal of `W_m(X)`: one family `g_ij` per source generator.
#[derive(Clone, Debug)]
pub struct WedgeIdeal {
    m: u32,
    source: AffineIdealInput,
    gens: BTreeMap<(usize, u32, u32), Polynomial>,
}

impl WedgeIdeal {
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn source(&self) -> &AffineIdealInput {
        &self.source
    }

    /// `g_ij` of the `k`-th source generator.
    pub fn generator(&self, k: usize, i: u32, j: u32) -> Option<&Polynomial> {
        self.gens.get(&(k, i, j))
    }

    pub fn indexed(&self) -> &BTreeMap<(usize, u32, u32), Polynomial> {
        &self.gens
    }

    /// Coordinates of `W_m(A^N)`.
    pub fn variables(&self) -> Vec<Variable> {
        self.source
            .ambient_vars
            .iter()
            .flat_map(|v| wedge_coordinates(v, self.m))
            .collect()
    }

    /// Nonzero generators with structural duplicates removed, in index order.
    pub fn generators(&self) -> Vec<Polynomial> {
        dedup(self.gens.values())
    }
}

/// The ideal of `J_m(X)`: one family `G_n` per source generator.
#[derive(Clone, Debug)]
pub struct JetIdeal {
    m: u32,
    source: AffineIdealInput,
    gens: BTreeMap<(usize, u32), Polynomial>,
}

impl JetIdeal {
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn source(&self) -> &AffineIdealInput {
        &self.source
    }

    pub fn generator(&self, k: usize, n: u32) -> Option<&Polynomial> {
        self.gens.get(&(k, n))
    }

    pub fn indexed(&self) -> &BTreeMap<(usize, u32), Polynomial> {
        &self.gens
    }

    pub fn variables(&self) -> Vec<Variable> {
        self.source
            .ambient_vars
            .iter()
            .flat_map(|v| (0..=self.m).map(move |n| v.with_kind(VarKind::Jet(n))))
            .collect()
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        dedup(self.gens.values())
    }
}

fn dedup<'a>(polys: impl Iterator<Item = &'a Polynomial>) -> Vec<Polynomial> {
    let mut seen = HashSet::new();
    polys
        .filter(|p| !p.is_zero() && seen.insert((*p).clone()))
        .cloned()
        .collect()
}

pub fn build_wedge_ideal(input: &AffineIdealInput, m: u32) -> Result<WedgeIdeal> {
    build_wedge_ideal_with(input, m, Execution::default())
}

pub fn build_wedge_ideal_with(
    input: &AffineIdealInput,
    m: u32,
    exec: Execution,
) -> Result<WedgeIdeal> {
    let images: BTreeMap<Variable, TruncatedSeries> = input
        .ambient_vars
        .iter()
        .map(|v| (v.clone(), TruncatedSeries::generic_wedge(v, m)))
        .collect();
    let series = exec.map(&input.generators, |f| substitute_truncated(f, &images, m));
    let mut gens = BTreeMap::new();
    for (k, s) in series.into_iter().enumerate() {
        let s = s?;
        for d in 0..=m {
            for i in 0..=d {
                gens.insert((k, i, d - i), s.coeff(i, d - i));
            }
        }
    }
    Ok(WedgeIdeal {
        m,
        source: input.clone(),
        gens,
    })
}

pub fn build_jet_ideal(input: &AffineIdealInput, m: u32) -> Result<JetIdeal> {
    let images: BTreeMap<Variable, TruncatedSeries> = input
        .ambient_vars
        .iter()
        .map(|v| (v.clone(), TruncatedSeries::generic_jet(v, m)))
        .collect();
    let mut gens = BTreeMap::new();
    for (k, f) in input.generators.iter().enumerate() {
        let s = substitute_truncated(f, &images, m)?;
        for n in 0..=m {
            gens.insert((k, n), s.coeff(0, n));
        }
    }
    Ok(JetIdeal {
        m,
        source: input.clone(),
        gens,
    })
}

/// Restricting a wedge along `s ↦ t` gives an arc: substituting
/// `x^(n) ↦ Σ_{i+j=n} x^(i,j)` into `G_n` must give `Σ_{i+j=n} g_ij`.
pub fn diagonal_check(input: &AffineIdealInput, m: u32) -> Result<bool> {
    let wedge = build_wedge_ideal(input, m)?;
    let jet = build_jet_ideal(input, m)?;
    let mut diagonal = BTreeMap::new();
    for v in &input.ambient_vars {
        for n in 0..=m {
            let sum = (0..=n).fold(Polynomial::zero(), |acc, i| {
                &acc + &Polynomial::var(v.with_kind(VarKind::Wedge(i, n - i)))
            });
            diagonal.insert(v.with_kind(VarKind::Jet(n)), sum);
        }
    }
    for k in 0..input.generators.len() {
        for n in 0..=m {
            let lhs = jet.gens[&(k, n)].substitute(&diagonal);
            let rhs = (0..=n).fold(Polynomial::zero(), |acc, i| {
                &acc + &wedge.gens[&(k, i, n - i)]
            });
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Renaming of `W_1` coordinates into the fiber product `J_1 x_X J_1`.
pub fn wedge_to_fiber(v: &Variable) -> Variable {
    match v.kind() {
        VarKind::Wedge(0, 0) => v.with_kind(VarKind::Jet(0)),
        VarKind::Wedge(1, 0) => v.with_kind(VarKind::FiberJet(1, Branch::S)),
        VarKind::Wedge(0, 1) => v.with_kind(VarKind::FiberJet(1, Branch::T)),
        _ => v.clone(),
    }
}

/// Renaming of `J_1` coordinates into one branch of the fiber product.
pub fn jet_to_fiber(v: &Variable, branch: Branch) -> Variable {
    match v.kind() {
        VarKind::Jet(1) => v.with_kind(VarKind::FiberJet(1, branch)),
        _ => v.clone(),
    }
}

/// Generator-level comparison of `W_1(X)` with `J_1(X) x_X J_1(X)`.
pub fn w1_product_check(input: &AffineIdealInput) -> Result<bool> {
    let wedge = build_wedge_ideal(input, 1)?;
    let jet = build_jet_ideal(input, 1)?;
    let lhs: HashSet<Polynomial> = wedge
        .generators()
        .iter()
        .map(|g| g.rename(wedge_to_fiber))
        .collect();
    let rhs: HashSet<Polynomial> = [Branch::S, Branch::T]
        .into_iter()
        .flat_map(|b| {
            jet.generators()
                .into_iter()
                .map(move |g| g.rename(|v| jet_to_fiber(v, b)))
        })
        .collect();
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(gens: &[&str]) -> AffineIdealInput {
        AffineIdealInput::parse(gens, None).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &VariableTable::open()).unwrap()
    }

    #[test]
    fn wedge_of_xy_order_one() {
        let w = build_wedge_ideal(&input(&["x*y"]), 1).unwrap();
        assert_eq!(w.generator(0, 0, 0).unwrap(), &p("x_(0,0)*y_(0,0)"));
        assert_eq!(
            w.generator(0, 1, 0).unwrap(),
            &p("x_(0,0)*y_(1,0) + x_(1,0)*y_(0,0)")
        );
        assert_eq!(
            w.generator(0, 0, 1).unwrap(),
            &p("x_(0,0)*y_(0,1) + x_(0,1)*y_(0,0)")
        );
        assert_eq!(w.variables().len(), 6);
    }

    #[test]
    fn wedge_of_square_order_zero() {
        let w = build_wedge_ideal(&input(&["x^2"]), 0).unwrap();
        assert_eq!(w.generators(), vec![p("x_(0,0)^2")]);
    }

    #[test]
    fn wedge_of_linear_is_coordinates() {
        let w = build_wedge_ideal(&input(&["x"]), 2).unwrap();
        let gens: BTreeSet<String> = w.generators().iter().map(|g| g.to_string()).collect();
        let vars: BTreeSet<String> = w.variables().iter().map(|v| v.to_string()).collect();
        assert_eq!(gens.len(), 6);
        assert_eq!(gens, vars);
    }

    #[test]
    fn jets() {
        let j = build_jet_ideal(&input(&["x*y"]), 1).unwrap();
        assert_eq!(
            j.generators(),
            vec![p("x_(0)*y_(0)"), p("x_(0)*y_(1) + x_(1)*y_(0)")]
        );
        let j = build_jet_ideal(&input(&["x"]), 1).unwrap();
        assert_eq!(j.generators(), vec![p("x_(0)"), p("x_(1)")]);
        let j = build_jet_ideal(&input(&["x^2"]), 1).unwrap();
        assert_eq!(j.generators(), vec![p("x_(0)^2"), p("2*x_(0)*x_(1)")]);
        assert_eq!(j.variables().len(), 2);
    }

    #[test]
    fn structural_identities_on_named_inputs() {
        for gens in [&["x*y"][..], &["x"], &["x^2*y - z^3"], &["x*y", "y^2 - x"]] {
            let inp = input(gens);
            assert!(w1_product_check(&inp).unwrap(), "{gens:?}");
            for m in 0..=3 {
                assert!(diagonal_check(&inp, m).unwrap(), "{gens:?} m={m}");
            }
        }
    }

    #[test]
    fn w1_product_generators_of_xy() {
        let w = build_wedge_ideal(&input(&["x*y"]), 1).unwrap();
        let renamed: Vec<String> = w
            .generators()
            .iter()
            .map(|g| g.rename(wedge_to_fiber).to_string())
            .collect();
        assert_eq!(
            renamed,
            [
                "x_(0)*y_(0)",
                "x_(0)*y_(1,t) + x_(1,t)*y_(0)",
                "x_(0)*y_(1,s) + x_(1,s)*y_(0)"
            ]
        );
    }

    #[test]
    fn validation() {
        assert!(
            AffineIdealInput::new(vec![Variable::plain("x")], vec![Polynomial::zero()]).is_err()
        );
        assert!(AffineIdealInput::new(
            vec![Variable::plain("x"), Variable::plain("x")],
            vec![p("x")]
        )
        .is_err());
        assert!(AffineIdealInput::new(vec![Variable::plain("x")], vec![p("x*y")]).is_err());
        assert!(AffineIdealInput::parse(&["x*q"], Some(&["x", "y"])).is_err());
    }
}
