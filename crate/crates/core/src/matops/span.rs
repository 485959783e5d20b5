use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Coeff;
use crate::freealg::{Poly, Presentation, Word};
use crate::verify::{Check, Report};
use crate::{Rat, RatFunc};

use super::MatError;

/// Row-echelon basis of a span of polynomials, treated as coefficient
/// vectors indexed by words. Each row is monic in its pivot (its largest word).
#[derive(Clone, Debug, Default)]
pub struct SpanBasis<C: Coeff> {
    rows: Vec<Poly<C>>,
}

impl<C: Coeff> SpanBasis<C> {
    pub fn new() -> Self {
        SpanBasis { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot word.
    pub fn reduce(&self, v: &Poly<C>) -> Poly<C> {
        let mut v = v.clone();
        for row in &self.rows {
            let pivot = pivot(row);
            let c = v.coefficient(pivot);
            if !c.is_zero() {
                v.add_scaled(row, &-c);
            }
        }
        v
    }

    pub fn contains(&self, v: &Poly<C>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Add `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &Poly<C>) -> bool {
        let r = self.reduce(v);
        let Some((lead, lc)) = r.terms().max_by(|a, b| a.0.cmp(b.0)) else {
            return false;
        };
        let lead = lead.clone();
        let r = r.scale(&lc.inv().expect("nonzero pivot"));
        let at = self.rows.iter().position(|row| pivot(row) < &lead).unwrap_or(self.rows.len());
        self.rows.insert(at, r);
        true
    }

    pub fn from_polys<'a>(it: impl IntoIterator<Item = &'a Poly<C>>) -> Self {
        let mut b = Self::new();
        for v in it {
            b.insert(v);
        }
        b
    }
}

fn pivot<C: Coeff>(row: &Poly<C>) -> &Word {
    row.terms().map(|(w, _)| w).max().expect("nonzero row")
}

fn common_degree(sets: [&[Poly<RatFunc>]; 2]) -> Result<(), MatError> {
    let mut degree = None;
    for p in sets.iter().flat_map(|s| s.iter()).filter(|p| !p.is_zero()) {
        let d = p.homogeneous_degree().ok_or_else(|| MatError::NotHomogeneous("mixed-degree polynomial".into()))?;
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => return Err(MatError::NotHomogeneous(format!("degrees {e} and {d} in one comparison"))),
            _ => {}
        }
    }
    Ok(())
}

fn random_point(rng: &mut ChaCha8Rng, polys: &[&Poly<RatFunc>]) -> Option<(Rat, Rat)> {
    let draw = |rng: &mut ChaCha8Rng| {
        let mut n: i64 = rng.gen_range(-9..=9);
        if n == 0 {
            n = 1;
        }
        Rat::new(BigInt::from(n), BigInt::from(rng.gen_range(1..=7i64)))
    };
    for _ in 0..200 {
        let (p0, q0) = (draw(rng), draw(rng));
        let ok = polys.iter().all(|p| p.terms().all(|(_, c)| c.eval_admissible(&p0, &q0).is_ok()));
        if ok {
            return Some((p0, q0));
        }
    }
    None
}

/// Compare the linear spans of two sets of homogeneous polynomials of a
/// common degree: exact elimination over the coefficient field, mutual
/// membership, then rank agreement at five random admissible points.
pub fn span_equal(
    pres: &Presentation<RatFunc>,
    name: &str,
    s1: &[Poly<RatFunc>],
    s2: &[Poly<RatFunc>],
    seed: u64,
) -> Result<Report, MatError> {
    common_degree([s1, s2])?;
    let mut report = Report::new(format!("span:{name}")).with_seed(seed);
    let (b1, b2) = (SpanBasis::from_polys(s1), SpanBasis::from_polys(s2));
    let reference = format!("span equality, ranks {} and {}", b1.rank(), b2.rank());
    let outside = |basis: &SpanBasis<RatFunc>, set: &[Poly<RatFunc>]| {
        set.iter().map(|v| basis.reduce(v)).find(|r| !r.is_zero()).map(|r| format!("remainder {}", r.display(pres).truncate(32)))
    };
    report.push(Check::from_residual(format!("{name}: first set lies in span of second"), &reference, outside(&b2, s1)));
    report.push(Check::from_residual(format!("{name}: second set lies in span of first"), &reference, outside(&b1, s2)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<&Poly<RatFunc>> = s1.iter().chain(s2).collect();
    for k in 0..5 {
        let check_name = format!("{name}: rank agreement at random point {}", k + 1);
        let Some((p0, q0)) = random_point(&mut rng, &all) else {
            report.push(Check::fail(check_name, "rank agreement", "no admissible point found"));
            continue;
        };
        let eval = |set: &[Poly<RatFunc>]| -> Result<Vec<Poly<Rat>>, MatError> {
            set.iter().map(|p| p.evaluate(&p0, &q0).map_err(MatError::from)).collect()
        };
        let (e1, e2) = (eval(s1)?, eval(s2)?);
        let r1 = SpanBasis::from_polys(&e1).rank();
        let r2 = SpanBasis::from_polys(&e2).rank();
        let ru = SpanBasis::from_polys(e1.iter().chain(&e2)).rank();
        let reference = format!("rank agreement at p = {p0}, q = {q0}");
        let residual = (r1 != r2 || r1 != ru).then(|| format!("ranks {r1}, {r2}, union {ru}"));
        report.push(Check::from_residual(check_name, reference, residual));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::reduce_str;
    use crate::freealg::presets::preset;
    use crate::freealg::Generator;

    fn free4() -> Presentation<RatFunc> {
        Presentation::free("free", ["alpha", "delta", "beta", "gamma"].map(Generator::odd).to_vec()).unwrap()
    }

    #[test]
    fn reflexive_on_preset_relations() {
        let p = preset("gr11").unwrap();
        let r = span_equal(p, "gr11", p.relations(), p.relations(), 7).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn distinct_words_have_distinct_spans() {
        let f = free4();
        let a = vec![reduce_str("alpha*beta", &f).unwrap()];
        let b = vec![reduce_str("beta*alpha", &f).unwrap()];
        let r = span_equal(&f, "ab", &a, &b, 7).unwrap();
        assert!(!r.passed());
        assert!(r.failures().all(|c| c.residual.is_some()));
    }

    #[test]
    fn combinations_stay_in_span() {
        let f = free4();
        let a: Vec<_> = ["alpha*beta + p*beta*alpha", "gamma*gamma"].iter().map(|s| reduce_str(s, &f).unwrap()).collect();
        let b: Vec<_> = ["alpha*beta + p*beta*alpha + q*gamma*gamma", "(p - q)*gamma*gamma"]
            .iter()
            .map(|s| reduce_str(s, &f).unwrap())
            .collect();
        assert!(span_equal(&f, "comb", &a, &b, 1).unwrap().passed());
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let f = free4();
        let a = vec![reduce_str("alpha*beta", &f).unwrap()];
        let b = vec![reduce_str("alpha", &f).unwrap()];
        assert!(matches!(span_equal(&f, "x", &a, &b, 1), Err(MatError::NotHomogeneous(_))));
    }

    #[test]
    fn basis_rank_and_membership() {
        let f = free4();
        let v: Vec<_> = ["alpha*beta", "beta*alpha", "alpha*beta - 2*beta*alpha"].iter().map(|s| reduce_str(s, &f).unwrap()).collect();
        let b = SpanBasis::from_polys(&v);
        assert_eq!(b.rank(), 2);
        assert!(b.contains(&v[2]));
        assert!(!b.contains(&reduce_str("gamma*beta", &f).unwrap()));
    }
}
