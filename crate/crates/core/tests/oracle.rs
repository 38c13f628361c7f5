use wedgelab::components::MonomialHypersurface;
use wedgelab::oracle::{
    groebner_membership, ideal_quotient, ideals_equal, quotient_witness_search, GroebnerBasis,
    TermOrder, DEFAULT_BUDGET,
};
use wedgelab::scheme::build_wedge_ideal;
use wedgelab::symbolic::{parse_polynomial, Polynomial, VariableTable};

fn p(s: &str) -> Polynomial {
    parse_polynomial(s, &VariableTable::open()).unwrap()
}

fn ps(items: &[&str]) -> Vec<Polynomial> {
    items.iter().map(|s| p(s)).collect()
}

fn w1_xy() -> Vec<Polynomial> {
    let h = MonomialHypersurface::in_own_space(vec![1, 1]).unwrap();
    build_wedge_ideal(&h.affine_input(), 1)
        .unwrap()
        .generators()
}

fn embedded_prime() -> Vec<Polynomial> {
    ps(&["x_(0,0)", "y_(0,0)", "x_(0,1)*y_(1,0) - x_(1,0)*y_(0,1)"])
}

#[test]
fn embedded_prime_witness_is_pinned() {
    let h = quotient_witness_search(&w1_xy(), &embedded_prime(), 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(h.map(|h| h.to_string()).as_deref(), Some("x_(0,0)*y_(0,1)"));
}

#[test]
fn embedded_prime_quotient_both_ways() {
    let q = ideal_quotient(&w1_xy(), &p("x_(0,0)*y_(0,1)"), DEFAULT_BUDGET).unwrap();
    let target = embedded_prime();
    let gq = GroebnerBasis::compute(&q, DEFAULT_BUDGET).unwrap();
    let gt = GroebnerBasis::compute(&target, DEFAULT_BUDGET).unwrap();
    assert!(target.iter().all(|f| gq.contains(f)));
    assert!(q.iter().all(|f| gt.contains(f)));
}

#[test]
fn membership_examples() {
    let gens = w1_xy();
    assert!(groebner_membership(&p("x_(0,0)*y_(0,0)*x_(1,0)"), &gens, DEFAULT_BUDGET).unwrap());
    assert!(!groebner_membership(&p("x_(0,0)"), &gens, DEFAULT_BUDGET).unwrap());
    assert!(groebner_membership(&p("x_(0,0)*y_(0,0)"), &gens, DEFAULT_BUDGET).unwrap());
    // x01*g10 - x10*g01 = x00*(x01*y10 - x10*y01)
    let f = p("x_(0,0)*x_(0,1)*y_(1,0) - x_(0,0)*x_(1,0)*y_(0,1)");
    assert!(groebner_membership(&f, &gens, DEFAULT_BUDGET).unwrap());
}

#[test]
fn radical_generators_of_w1_xy_have_powers_in_the_ideal() {
    let gens = w1_xy();
    let gb = GroebnerBasis::compute(&gens, DEFAULT_BUDGET).unwrap();
    let radical = [
        "x_(0,0)*y_(0,0)",
        "x_(1,0)*y_(0,0)",
        "x_(0,1)*y_(0,0)",
        "x_(0,0)*y_(1,0)",
        "x_(0,0)*y_(0,1)",
    ];
    let mut exponents = Vec::new();
    for g in radical {
        let g = p(g);
        let e = (1..=3)
            .find(|&e| gb.contains(&g.pow(e)))
            .expect("power within 3");
        exponents.push(e);
    }
    assert_eq!(exponents, [1, 2, 2, 2, 2]);
}

#[test]
fn quotient_examples() {
    let i = w1_xy();
    let q = ideal_quotient(&i, &Polynomial::one(), DEFAULT_BUDGET).unwrap();
    assert!(ideals_equal(&q, &i, DEFAULT_BUDGET).unwrap());
    let q = ideal_quotient(&ps(&["x_(0,0)*y_(0,0)"]), &p("x_(0,0)"), DEFAULT_BUDGET).unwrap();
    assert_eq!(q, ps(&["y_(0,0)"]));
}

#[test]
fn elimination_drops_the_first_block() {
    let gens = ps(&["t - x^2", "t - y^3"]);
    let vars = ["t", "x", "y"].map(|s| p(s).variables().into_iter().next().unwrap());
    let gb = GroebnerBasis::compute_in(
        &gens,
        vars.to_vec(),
        TermOrder::Eliminate(1),
        DEFAULT_BUDGET,
    )
    .unwrap();
    let eliminated: Vec<Polynomial> = gb
        .basis()
        .into_iter()
        .filter(|f| !f.variables().iter().any(|v| v.base() == "t"))
        .collect();
    assert_eq!(eliminated.len(), 1);
    assert!(ideals_equal(&eliminated, &ps(&["x^2 - y^3"]), DEFAULT_BUDGET).unwrap());
}
