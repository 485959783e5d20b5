use std::borrow::Cow;
use std::collections::BTreeMap;
use std::error::Error;
use std::time::Instant;

use num_traits::One;

use crate::cli::reduce_str;
use crate::coeff::qnum;
use crate::freealg::presets::{preset, all_names, PresetError, PresetSource};
use crate::freealg::{derive_endomorphism_relations, Assignment, Convention, EntryMatrix, EntryParity, ReductionStrategy};
use crate::matops::{
    closed_power_in, delta_left, delta_right, grading, inverse11, iterated_power, left_inverse, mat_mul, power_relations_check_in,
    residual_entries, right_inverse, rtt_residual, sdet, span_equal, tensor_graded, tensor_ungraded, AlgMatrix, Grading,
    MatError, SdetForm, Slot,
};
use crate::{Poly, Presentation, RatFunc};

use super::{Check, Report};

/// Seed for the randomized sub-checks unless overridden.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Default `max_n` of the powers suite (exponents `1..=2 max_n`).
pub const DEFAULT_MAX_N: u32 = 3;

type Outcome = Result<Option<String>, Box<dyn Error + Send + Sync>>;

/// The presentations a suite runs against, plus switches used for fault
/// injection.
#[derive(Clone, Debug)]
pub struct Context {
    presets: BTreeMap<String, Cow<'static, Presentation>>,
    pub seed: u64,
    /// Build the supermatrix tensor embeddings with signs.
    pub graded: bool,
}

impl Context {
    /// All built-in presentations, default seed, graded tensors.
    pub fn standard() -> Result<Self, PresetError> {
        let mut presets = BTreeMap::new();
        for name in all_names() {
            presets.insert(name.to_string(), Cow::Borrowed(preset(name)?));
        }
        Ok(Context { presets, seed: DEFAULT_SEED, graded: true })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_graded(mut self, graded: bool) -> Self {
        self.graded = graded;
        self
    }

    /// Replace one presentation.
    pub fn with_preset(mut self, name: &str, pres: Presentation) -> Self {
        self.presets.insert(name.to_string(), Cow::Owned(pres));
        self
    }

    /// Apply a text edit to one relation of a built-in presentation.
    pub fn with_fault(self, fault: &Fault) -> Result<Self, PresetError> {
        let src = PresetSource::embedded(fault.preset)?.mutate(fault.relation, fault.from, fault.to)?;
        let pres = src.build()?;
        Ok(self.with_preset(fault.preset, pres))
    }

    pub fn get(&self, name: &str) -> &Presentation {
        self.presets.get(name).unwrap_or_else(|| panic!("context has no presentation `{name}`"))
    }
}

/// A single-coefficient edit of a built-in presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub preset: &'static str,
    pub relation: usize,
    pub from: &'static str,
    pub to: &'static str,
}

/// Catalogue of deliberate faults; each must make some check fail.
pub const FAULTS: [Fault; 10] = [
    Fault { preset: "gr2", relation: 0, from: "+ p^-1", to: "- p^-1" },
    Fault { preset: "gr2", relation: 1, from: "q^-1", to: "p^-1" },
    Fault { preset: "gr2", relation: 2, from: "+ p^-1", to: "- p^-1" },
    Fault { preset: "gr2", relation: 4, from: "+ delta", to: "- delta" },
    Fault { preset: "gr2", relation: 9, from: "(p - q^-1)", to: "(p + q^-1)" },
    Fault { preset: "gr11", relation: 0, from: "p^-1", to: "p" },
    Fault { preset: "gr11", relation: 3, from: "q^-1", to: "p^-1" },
    Fault { preset: "gr11", relation: 7, from: "p*q^-1", to: "q*p^-1" },
    Fault { preset: "gr11", relation: 7, from: "(p - q^-1)", to: "(q - p^-1)" },
    Fault { preset: "gr11_inverse", relation: 0, from: "p*b'", to: "p^-1*b'" },
];

fn record(report: &mut Report, name: impl Into<String>, reference: impl Into<String>, f: impl FnOnce() -> Outcome) {
    let check = match f() {
        Ok(residual) => Check::from_residual(name, reference, residual),
        Err(e) => Check::fail(name, reference, format!("error: {e}")),
    };
    report.push(check);
}

fn nonzero(p: &Poly, pres: &Presentation) -> Option<String> {
    (!p.is_zero()).then(|| p.display(pres).truncate(32).to_string())
}

fn matrix_residual(m: &AlgMatrix<'_, RatFunc>) -> Option<String> {
    m.witness(32)
}

/// Merge the checks of `sub` into `report`, prefixing names.
fn absorb(report: &mut Report, prefix: &str, sub: Report) {
    for mut c in sub.checks {
        c.name = format!("{prefix}{}", c.name);
        report.push(c);
    }
}

/// One summarising check for the overlap report of `pres`.
fn confluence(report: &mut Report, tag: &str, pres: &Presentation) {
    let r = pres.overlap_check();
    let n = r.checks.len();
    let residual = r.failures().next().map(|c| format!("{}: {}", c.name, c.residual.clone().unwrap_or_default()));
    report.push(Check::from_residual(format!("{tag} overlaps resolve"), format!("diamond condition, {n} check(s)"), residual));
}

fn degeneration(report: &mut Report, tag: &str, two: &Presentation, one: &Presentation) {
    record(report, format!("{tag} at q = p equals the one-parameter algebra"), "rules of the q := p specialization", || {
        let s = two.specialize(&Assignment::q_to_p())?;
        if s.same_rules(one) {
            return Ok(None);
        }
        let diff = s
            .rules()
            .iter()
            .zip(one.rules())
            .find(|(a, b)| a.lhs != b.lhs || a.rhs != b.rhs)
            .map(|(a, _)| format!("first differing rule: {}", a.as_relation().display(&s)))
            .unwrap_or_else(|| format!("{} rules against {}", s.rules().len(), one.rules().len()));
        Ok(Some(diff))
    });
}

/// Compare the span of `make(free)` with the relations of `pres`, where
/// `free` is the free algebra on the same generators.
fn span_checks(
    report: &mut Report,
    name: &str,
    pres: &Presentation,
    seed: u64,
    make: impl FnOnce(&Presentation) -> Result<Vec<Poly>, Box<dyn Error + Send + Sync>>,
) {
    let run = || -> Result<Report, Box<dyn Error + Send + Sync>> {
        let free = free_copy(pres)?;
        let set = make(&free)?;
        Ok(span_equal(&free, name, &set, pres.relations(), seed)?)
    };
    match run() {
        Ok(sub) => absorb(report, "", sub),
        Err(e) => report.push(Check::fail(name, "span equality", format!("error: {e}"))),
    }
}

/// Free algebra on the generators of `pres`, with the same order.
fn free_copy(pres: &Presentation) -> Result<Presentation, crate::freealg::AlgebraError> {
    Presentation::new(format!("{} (free)", pres.label()), pres.generators().to_vec(), pres.order().clone(), Vec::new())
}

/// Identities of the Grassmann matrix algebra.
pub fn suite_gr2(ctx: &Context) -> Report {
    let start = Instant::now();
    let pres = ctx.get("gr2");
    let mut report = Report::new("gr2").with_seed(ctx.seed);
    confluence(&mut report, "gr2", pres);

    record(&mut report, "gr2 has 16 irreducible words", "dimension 16: square-free increasing words", || {
        let levels = pres.irreducible_words(5);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        let total: usize = counts[..5].iter().sum();
        Ok((total != 16 || counts[5] != 0).then(|| format!("irreducible words by length: {counts:?}")))
    });
    record(&mut report, "gr2 generators square to zero", "alpha^2 = beta^2 = gamma^2 = delta^2 = 0", || {
        for g in pres.generators() {
            let x = pres.gen(&g.name)?;
            let sq = pres.mul(&x, &x)?;
            if let Some(r) = nonzero(&sq, pres) {
                return Ok(Some(format!("{}^2 = {r}", g.name)));
            }
        }
        Ok(None)
    });
    record(&mut report, "gr2 reduction of gamma*beta*alpha", "gamma beta alpha = -q^2 alpha beta gamma, by two strategies", || {
        let w = reduce_str::<crate::Rat>("gamma*beta*alpha", &free_copy(pres)?)?;
        let want = reduce_str("-q^2*alpha*beta*gamma", pres)?;
        for s in [ReductionStrategy::Leftmost, ReductionStrategy::Rightmost, ReductionStrategy::Memoized] {
            let got = pres.normal_form_with(&w, s)?;
            if got != want {
                return Ok(Some(format!("{s:?}: {}", got.display(pres))));
            }
        }
        Ok(None)
    });

    let generic = || AlgMatrix::generic(pres, ["alpha", "beta", "gamma", "delta"]);
    record(&mut report, "gr2 left inverse", "A_L^-1 A = Delta_L I", || {
        let a = generic()?;
        let lhs = mat_mul(&left_inverse(&a)?, &a)?;
        Ok(matrix_residual(&lhs.sub(&AlgMatrix::scalar(pres, 2, delta_left(&a)?))?))
    });
    record(&mut report, "gr2 right inverse", "A A_R^-1 = Delta_R I", || {
        let a = generic()?;
        let lhs = mat_mul(&a, &right_inverse(&a)?)?;
        Ok(matrix_residual(&lhs.sub(&AlgMatrix::scalar(pres, 2, delta_right(&a)?))?))
    });
    record(&mut report, "gr2 determinant exchange", "Delta_L A_R^-1 = A_L^-1 Delta_R", || {
        let a = generic()?;
        let lhs = right_inverse(&a)?.left_mul(&delta_left(&a)?)?;
        let rhs = left_inverse(&a)?.right_mul(&delta_right(&a)?)?;
        Ok(matrix_residual(&lhs.sub(&rhs)?))
    });
    record(&mut report, "gr2 RTT at x = 1", "R(1) A1 A2 = -A2 A1 R(1), ungraded", || {
        Ok(matrix_residual(&rtt_residual(&RatFunc::one(), &generic()?, false)?))
    });
    span_checks(&mut report, "gr2 RTT completeness", pres, ctx.seed, |free| {
        let a = AlgMatrix::generic(free, ["alpha", "beta", "gamma", "delta"])?;
        Ok(residual_entries(&rtt_residual(&RatFunc::one(), &a, false)?))
    });
    span_checks(&mut report, "gr2 relations from plane endomorphisms", pres, ctx.seed, |_| {
        let entries = EntryMatrix::new([["alpha", "beta"], ["gamma", "delta"]], EntryParity::AllOdd);
        Ok(derive_endomorphism_relations(ctx.get("plane_p20"), ctx.get("plane_q02"), &entries, Convention::Koszul)?)
    });
    degeneration(&mut report, "gr2", pres, ctx.get("gr2_oneparam"));
    report.finish(start);
    report
}

fn fixture<'a>(pres: &'a Presentation, rows: [[&str; 4]; 4]) -> Result<AlgMatrix<'a, RatFunc>, Box<dyn Error + Send + Sync>> {
    let entries = rows.iter().flatten().map(|s| reduce_str(s, pres)).collect::<Result<Vec<_>, _>>()?;
    Ok(AlgMatrix::new(pres, 4, 4, entries)?)
}

/// `A (x) I` for the supermatrix, written out.
pub const SUPER_FIRST_SLOT: [[&str; 4]; 4] =
    [["alpha", "0", "b", "0"], ["0", "alpha", "0", "b"], ["c", "0", "delta", "0"], ["0", "c", "0", "delta"]];

/// `I (x) A` for the supermatrix with grading signs, written out.
pub const SUPER_SECOND_SLOT: [[&str; 4]; 4] =
    [["-alpha", "-b", "0", "0"], ["-c", "-delta", "0", "0"], ["0", "0", "-alpha", "b"], ["0", "0", "c", "-delta"]];

/// Identities of the Grassmann supermatrix algebra and its localization.
pub fn suite_gr11(ctx: &Context) -> Report {
    let start = Instant::now();
    let pres = ctx.get("gr11");
    let loc = ctx.get("gr11_localized");
    let inv_alg = ctx.get("gr11_inverse");
    let mut report = Report::new("gr11").with_seed(ctx.seed);
    confluence(&mut report, "gr11", pres);
    confluence(&mut report, "gr11_localized", loc);
    confluence(&mut report, "gr11_inverse", inv_alg);

    fn generic(p: &Presentation) -> Result<AlgMatrix<'_, RatFunc>, MatError> {
        AlgMatrix::generic(p, ["alpha", "b", "c", "delta"])
    }
    record(&mut report, "gr11 graded tensor, first slot", "(A1)^{ij}_{kl} = A^i_k d^j_l, written out", || {
        let got = tensor_graded(&generic(pres)?, Slot::First)?;
        Ok(matrix_residual(&got.sub(&fixture(pres, SUPER_FIRST_SLOT)?)?))
    });
    record(&mut report, "gr11 graded tensor, second slot", "(A2)^{ij}_{kl} = (-1)^{i(j+l)} A^j_l d^i_k, written out", || {
        let got = tensor_graded(&generic(pres)?, Slot::Second)?;
        Ok(matrix_residual(&got.sub(&fixture(pres, SUPER_SECOND_SLOT)?)?))
    });
    record(&mut report, "gr11 ungraded second slot differs only by signs", "I (x) A without signs, entrywise up to sign", || {
        let a = generic(pres)?;
        let (g, u) = (tensor_graded(&a, Slot::Second)?, tensor_ungraded(&a, Slot::Second)?);
        let mut flips = 0;
        for (x, y) in g.entries().iter().zip(u.entries()) {
            if x == y {
                continue;
            }
            if *x != -y {
                return Ok(Some(format!("entries {} and {} differ beyond sign", x.display(pres), y.display(pres))));
            }
            flips += 1;
        }
        Ok((flips == 0).then(|| "no sign differences".to_string()))
    });
    record(&mut report, "gr11 RTT at x = -1", "R(-1) A1 A2 = -A2 A1 R(-1), graded", || {
        Ok(matrix_residual(&rtt_residual(&RatFunc::from_int(-1), &generic(pres)?, ctx.graded)?))
    });
    span_checks(&mut report, "gr11 RTT completeness", pres, ctx.seed, |free| {
        Ok(residual_entries(&rtt_residual(&RatFunc::from_int(-1), &generic(free)?, ctx.graded)?))
    });
    span_checks(&mut report, "gr11 relations from superplane endomorphisms", pres, ctx.seed, |_| {
        let entries = EntryMatrix::new([["alpha", "b"], ["c", "delta"]], EntryParity::DiagOdd);
        Ok(derive_endomorphism_relations(ctx.get("plane_p11"), ctx.get("plane_q11_dual"), &entries, Convention::Koszul)?)
    });
    record(&mut report, "gr11 entry parities follow the dual supermatrix pattern", "diagonal odd, off-diagonal even", || {
        let a = generic(loc)?;
        for (label, m) in [("A", a.clone()), ("A^-1", inverse11(&a)?)] {
            let g = grading(&m)?;
            if g != (Grading { parity: 1, graded: true }) {
                return Ok(Some(format!("{label}: {g:?}")));
            }
        }
        Ok(None)
    });

    record(&mut report, "gr11 inverse from the right", "A A^-1 = I", || {
        let a = generic(loc)?;
        Ok(matrix_residual(&mat_mul(&a, &inverse11(&a)?)?.sub(&AlgMatrix::identity(loc, 2))?))
    });
    record(&mut report, "gr11 inverse from the left", "A^-1 A = I", || {
        let a = generic(loc)?;
        Ok(matrix_residual(&mat_mul(&inverse11(&a)?, &a)?.sub(&AlgMatrix::identity(loc, 2))?))
    });
    match generic(loc).and_then(|a| inverse11(&a)) {
        Ok(inv) => {
            // inverse-entry algebra order: alpha', delta', b', c'
            let images = [inv.get(0, 0).clone(), inv.get(1, 1).clone(), inv.get(0, 1).clone(), inv.get(1, 0).clone()];
            for (k, rel) in inv_alg.relations().iter().enumerate() {
                let text = format!("{} = 0 with parameters (p^-1, q^-1)", rel.display(inv_alg));
                record(
                    &mut report,
                    format!("gr11 inverse entries, relation {}", k + 1),
                    text,
                    || Ok(nonzero(&loc.normal_form(&Presentation::substitute(rel, &images))?, loc)),
                );
            }
        }
        Err(e) => report.push(Check::fail("gr11 inverse entries", "entries of A^-1", format!("error: {e}"))),
    }

    record(&mut report, "gr11 superdeterminant forms agree", "c^-1 b - c^-1 alpha c^-1 delta = p q^-1 (b c^-1 - alpha c^-1 delta c^-1)", || {
        let a = generic(loc)?;
        Ok(nonzero(&(&sdet(&a, SdetForm::Left)? - &sdet(&a, SdetForm::Right)?), loc))
    });
    record(&mut report, "gr11 reordering b c^-1", "b c^-1 = q p^-1 c^-1 b - (q - p^-1) c^-1 delta alpha c^-1", || {
        let lhs = reduce_str("b*cinv", loc)?;
        let rhs = reduce_str("q*p^-1*cinv*b - (q - p^-1)*cinv*delta*alpha*cinv", loc)?;
        Ok(nonzero(&(&lhs - &rhs), loc))
    });
    record(&mut report, "gr11 superdeterminant twisted commutation", "D g = p q^-1 g D for g = alpha, delta, b, c", || {
        let d = sdet(&generic(loc)?, SdetForm::Left)?;
        let twist = RatFunc::monomial(crate::Rat::one(), 1, -1);
        for name in ["alpha", "delta", "b", "c"] {
            let g = loc.gen(name)?;
            let r = &loc.mul(&d, &g)? - &loc.mul(&g, &d)?.scale(&twist);
            if let Some(r) = nonzero(&r, loc) {
                return Ok(Some(format!("{name}: {r}")));
            }
        }
        Ok(None)
    });
    record(&mut report, "gr11 superdeterminant is central at q = p", "D g = g D for all generators when q = p", || {
        let one = loc.specialize(&Assignment::q_to_p())?;
        let d = sdet(&generic(&one)?, SdetForm::Left)?;
        for name in ["alpha", "delta", "b", "c"] {
            let g = one.gen(name)?;
            let r = &one.mul(&d, &g)? - &one.mul(&g, &d)?;
            if let Some(r) = nonzero(&r, &one) {
                return Ok(Some(format!("{name}: {r}")));
            }
        }
        Ok(None)
    });
    degeneration(&mut report, "gr11", pres, ctx.get("gr11_oneparam"));
    report.finish(start);
    report
}

/// Closed-form powers of the generic supermatrix and their relations.
pub fn suite_powers(ctx: &Context, max_n: u32) -> Report {
    let start = Instant::now();
    let pres = ctx.get("gr11");
    let mut report = Report::new("powers").with_seed(ctx.seed);
    for (label, t) in [("pq", (1, 1)), ("p^2 q^2", (2, 2)), ("p^-1 q^-1", (-1, -1))] {
        record(&mut report, format!("q-number identity, t = {label}"), "<N>_t (1 - t) = 1 - t^N, N = 0..16", || {
            let t = RatFunc::monomial(crate::Rat::one(), t.0, t.1);
            for n in 0..=16u32 {
                let lhs = qnum(n, &t) * (RatFunc::one() - t.clone());
                let rhs = RatFunc::one() - t.powi(i64::from(n))?;
                if lhs != rhs {
                    return Ok(Some(format!("N = {n}: {lhs} against {rhs}")));
                }
            }
            Ok(None)
        });
    }
    record(&mut report, "power 1: odd formula at n = 1 in the localized algebra", "(bc)^-1 factors collapse to M", || {
        let loc = ctx.get("gr11_localized");
        let lit = closed_power_in(loc, 1, true)?.to_matrix(loc)?;
        Ok(matrix_residual(&lit.sub(&iterated_power(loc, 1)?)?))
    });
    for e in 1..=2 * max_n.max(1) {
        record(&mut report, format!("power {e}: closed form equals repeated product"), format!("M^{e} entrywise"), || {
            let closed = closed_power_in(pres, e, false)?.to_matrix(pres)?;
            Ok(matrix_residual(&closed.sub(&iterated_power(pres, e)?)?))
        });
        match power_relations_check_in(pres, e) {
            Ok(sub) => absorb(&mut report, "", sub),
            Err(err) => report.push(Check::fail(format!("power {e}: relations"), format!("M^{e} relations"), format!("error: {err}"))),
        }
    }
    report.finish(start);
    report
}

/// All suites; passes iff every check passes.
pub fn suite_all(ctx: &Context, max_n: u32) -> Report {
    let start = Instant::now();
    let (a, b, c) = std::thread::scope(|s| {
        let a = s.spawn(|| suite_gr2(ctx));
        let b = s.spawn(|| suite_gr11(ctx));
        let c = s.spawn(|| suite_powers(ctx, max_n));
        (a.join().expect("gr2 suite"), b.join().expect("gr11 suite"), c.join().expect("powers suite"))
    });
    let mut report = Report::new("all").with_seed(ctx.seed);
    for r in [a, b, c] {
        report.extend(r);
    }
    report.finish(start);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn passing(r: &Report) -> BTreeSet<String> {
        r.checks.iter().filter(|c| c.passed()).map(|c| c.name.clone()).collect()
    }

    #[test]
    fn gr2_suite_passes() {
        let r = suite_gr2(&Context::standard().unwrap());
        assert!(r.passed(), "{r}");
        assert_eq!(r.seed, Some(DEFAULT_SEED));
    }

    #[test]
    fn gr11_suite_passes() {
        let r = suite_gr11(&Context::standard().unwrap());
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn ungraded_supermatrix_rtt_fails() {
        let r = suite_gr11(&Context::standard().unwrap().with_graded(false));
        let failed: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"gr11 RTT at x = -1"));
        assert!(r.failures().all(|c| c.name.contains("RTT")));
    }

    #[test]
    fn seed_is_recorded() {
        let r = suite_gr2(&Context::standard().unwrap().with_seed(42));
        assert_eq!(r.seed, Some(42));
    }

    #[test]
    fn every_fault_breaks_a_passing_check() {
        let ctx = Context::standard().unwrap();
        let base = passing(&suite_all(&ctx, 1));
        for fault in &FAULTS {
            let r = suite_all(&ctx.clone().with_fault(fault).unwrap(), 1);
            let caught = r.failures().any(|c| base.contains(&c.name) && c.residual.as_deref().is_some_and(|s| !s.is_empty()));
            assert!(caught, "{fault:?} went unnoticed");
        }
    }

    #[test]
    fn first_power_checks_pass() {
        let r = suite_powers(&Context::standard().unwrap(), 1);
        let power1: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with("power 1")).collect();
        assert!(power1.len() > 8);
        assert!(power1.iter().all(|c| c.passed()));
    }
}

#[cfg(test)]
mod inverse_sign {
    use super::*;

    // The coefficient of delta'*alpha' in the last relation is (p^-1 - q);
    // the opposite sign is not satisfied by the entries of A^-1.
    #[test]
    fn opposite_sign_in_last_inverse_relation_fails() {
        let flipped = Fault { preset: "gr11_inverse", relation: 7, from: "(p^-1 - q)", to: "(q - p^-1)" };
        let r = suite_gr11(&Context::standard().unwrap().with_fault(&flipped).unwrap());
        let c = r.check("gr11 inverse entries, relation 8").unwrap();
        assert!(!c.passed());
        assert!(r.check("gr11 inverse entries, relation 7").unwrap().passed());
    }
}
