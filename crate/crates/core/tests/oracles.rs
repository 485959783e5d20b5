//! Fixed input/output pairs worked out by hand.

use num_traits::{One, Zero};
use pqgrass::cli::{parse_coeff, reduce_str, ParseError};
use pqgrass::coeff::{qnum, CoeffError};
use pqgrass::freealg::presets::preset;
use pqgrass::freealg::{Assignment, Generator};
use pqgrass::matops::{closed_power, delta_left, inverse11, rhat, rtt_residual, sdet, AlgMatrix, SdetForm};
use pqgrass::{Presentation, Rat, RatFunc};

fn c(s: &str) -> RatFunc {
    parse_coeff(s).unwrap()
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[test]
fn coefficient_arithmetic() {
    assert!((c("p") + c("-p")).is_zero());
    assert_eq!(c("p + q^-1").to_string(), "p + q^-1");
    assert_eq!(c("1/(1 - p*q)") + c("-p*q/(1 - p*q)"), RatFunc::one());
    assert_eq!(c("p") * c("q^-1"), c("p*q^-1"));
    assert_eq!(c("p - q^-1") * c("q*p^-1"), c("q - p^-1"));
    assert_eq!(c("(1 - p*q)/(1 + p*q)") * c("1 + p*q"), c("1 - p*q"));
}

#[test]
fn inverses_and_evaluation() {
    assert_eq!(c("p*q").inv().unwrap(), c("p^-1*q^-1"));
    assert_eq!(c("p + q^-1").inv().unwrap() * c("p + q^-1"), RatFunc::one());
    assert!(matches!(RatFunc::zero().inv(), Err(CoeffError::ZeroInverse)));
    assert_eq!(c("p*q^-1").eval(&rat(2, 1), &rat(3, 1)).unwrap(), rat(2, 3));
    assert!(matches!(c("1/(1 - p*q)").eval(&rat(1, 1), &rat(1, 1)), Err(CoeffError::SingularEvaluation { .. })));
    assert!(c("p - q^-1").eval(&rat(3, 1), &rat(1, 3)).unwrap().is_zero());
}

#[test]
fn q_numbers() {
    let t = c("p*q");
    assert!(qnum(0, &t).is_zero());
    assert_eq!(qnum(1, &t), RatFunc::one());
    assert_eq!(qnum(3, &t), c("1 + p*q + p^2*q^2"));
}

#[test]
fn gr2_reductions() {
    let p = preset("gr2").unwrap();
    assert_eq!(reduce_str("delta*alpha", p).unwrap().display(p).to_string(), "-1 * alpha*delta");
    assert!(reduce_str("alpha*alpha", p).unwrap().is_zero());
    assert!(reduce_str("alpha^3", p).unwrap().is_zero());
    assert_eq!(reduce_str("gamma*beta*alpha", p).unwrap(), reduce_str("-q^2*alpha*beta*gamma", p).unwrap());
    assert!(reduce_str("alpha*beta + p^-1*beta*alpha", p).unwrap().is_zero());
    assert_eq!(
        reduce_str("gamma*beta", p).unwrap(),
        reduce_str("-q*p^-1*beta*gamma - (q - p^-1)*alpha*delta", p).unwrap()
    );
}

#[test]
fn gr2_shape() {
    let p = preset("gr2").unwrap();
    assert_eq!(p.ngens(), 4);
    assert!(p.generators().iter().all(|g| g.parity.bit() == 1));
    assert_eq!(p.relations().len(), 10);
}

#[test]
fn plane_rule_orientation() {
    let p = preset("plane_q11_dual").unwrap();
    assert_eq!(reduce_str("y*eta", p).unwrap(), reduce_str("q*eta*y", p).unwrap());
}

#[test]
fn parse_errors() {
    let gr2 = preset("gr2").unwrap();
    assert!(matches!(reduce_str("alpha^-1", gr2), Err(ParseError::NegativePowerOfNonInvertible { .. })));
    assert!(matches!(reduce_str("alpha*zeta", gr2), Err(ParseError::UnknownGenerator { .. })));
    assert!(matches!(reduce_str("alpha beta", gr2), Err(ParseError::Syntax { .. })));
    let loc = preset("gr11_localized").unwrap();
    assert_eq!(reduce_str("b^-1", loc).unwrap(), reduce_str("binv", loc).unwrap());
}

#[test]
fn overlap_toy_systems() {
    let x = Generator::even("x");
    let f = Presentation::free("idem", vec![x.clone()]).unwrap();
    let idem = f.with_relations(vec![reduce_str::<Rat>("x*x - x", &f).unwrap()]).unwrap();
    assert!(idem.overlap_check().passed());

    let g = Presentation::free("inv", vec![x, Generator::even("y")]).unwrap();
    let rels = ["x*y - 1", "y*x - 1"].map(|s| reduce_str::<Rat>(s, &g).unwrap()).to_vec();
    assert!(g.with_relations(rels).unwrap().overlap_check().passed());
}

#[test]
fn specialization() {
    let gr2 = preset("gr2").unwrap();
    let s = gr2.specialize(&Assignment::q_to_p()).unwrap();
    let rel = reduce_str::<Rat>("beta*gamma + gamma*beta - (p - p^-1)*delta*alpha", &s).unwrap();
    assert!(rel.is_zero());
    let at_one = Assignment::new(Some(RatFunc::one()), Some(RatFunc::one()));
    assert_eq!(at_one.apply(&c("p + q^-1")).unwrap(), RatFunc::from_int(2));
}

#[test]
fn localized_reordering() {
    let loc = preset("gr11_localized").unwrap();
    assert_eq!(
        reduce_str("b*cinv", loc).unwrap(),
        reduce_str("q*p^-1*cinv*b - (q - p^-1)*cinv*delta*alpha*cinv", loc).unwrap()
    );
}

#[test]
fn r_matrix_entries() {
    let r1 = rhat(&RatFunc::one());
    assert_eq!(r1.get(0, 0), &c("p + q^-1"));
    assert_eq!(r1.get(1, 1), &c("2"));
    assert_eq!(r1.get(1, 2), &c("q^-1 - p"));
    assert_eq!(r1.get(2, 1), &c("p - q^-1"));
    assert_eq!(r1.get(2, 2), &c("2*p*q^-1"));
    let rm = rhat(&c("-1"));
    assert_eq!(rm.get(1, 1), &c("-2"));
    assert_eq!(rm.get(2, 2), &c("-2*p*q^-1"));
    let r0 = rhat(&RatFunc::zero());
    assert!(r0.get(1, 1).is_zero() && r0.get(2, 2).is_zero());
    assert_eq!(r0.get(3, 3), &c("p + q^-1"));
}

#[test]
fn rtt_vanishes_on_generic_matrices() {
    let gr2 = preset("gr2").unwrap();
    let a = AlgMatrix::generic(gr2, ["alpha", "beta", "gamma", "delta"]).unwrap();
    assert!(rtt_residual(&RatFunc::one(), &a, false).unwrap().is_zero());
    let gr11 = preset("gr11").unwrap();
    let m = AlgMatrix::generic(gr11, ["alpha", "b", "c", "delta"]).unwrap();
    assert!(rtt_residual(&c("-1"), &m, true).unwrap().is_zero());
    assert!(!rtt_residual(&c("-1"), &m, false).unwrap().is_zero());
}

#[test]
fn left_determinant() {
    let gr2 = preset("gr2").unwrap();
    let a = AlgMatrix::generic(gr2, ["alpha", "beta", "gamma", "delta"]).unwrap();
    assert_eq!(delta_left(&a).unwrap(), reduce_str("beta*gamma - q^-1*alpha*delta", gr2).unwrap());
}

#[test]
fn supermatrix_inverse_and_sdet() {
    let loc = preset("gr11_localized").unwrap();
    let a = AlgMatrix::generic(loc, ["alpha", "b", "c", "delta"]).unwrap();
    let inv = inverse11(&a).unwrap();
    assert_eq!(inv.get(0, 0), &reduce_str("-cinv*delta*binv", loc).unwrap());
    let d = sdet(&a, SdetForm::Left).unwrap();
    let b = loc.gen("b").unwrap();
    let twist = loc.mul(&b, &d).unwrap().scale(&c("p*q^-1"));
    assert_eq!(loc.mul(&d, &b).unwrap(), twist);
}

#[test]
fn square_of_the_supermatrix() {
    let gr11 = preset("gr11").unwrap();
    let m2 = closed_power(2).unwrap();
    assert_eq!(m2.a, reduce_str("b*c", gr11).unwrap());
    assert_eq!(m2.b, reduce_str("p^-1*b*alpha + b*delta", gr11).unwrap());
    assert_eq!(m2.c, reduce_str("c*alpha + delta*c", gr11).unwrap());
    assert_eq!(m2.d, reduce_str("c*b", gr11).unwrap());
}

#[test]
fn odd_and_even_power_relations_from_examples() {
    let gr11 = preset("gr11").unwrap();
    let m3 = closed_power(3).unwrap();
    let ab = &gr11.mul(&m3.a, &m3.b).unwrap() - &gr11.mul(&m3.b, &m3.a).unwrap().scale(&c("p^-3"));
    assert!(ab.is_zero());
    let m2 = closed_power(2).unwrap();
    let lhs = &gr11.mul(&m2.a, &m2.d).unwrap() - &gr11.mul(&m2.d, &m2.a).unwrap();
    let rhs = gr11.mul(&m2.c, &m2.b).unwrap().scale(&c("p^2 - q^-2"));
    assert!((&lhs - &rhs).is_zero());
}
