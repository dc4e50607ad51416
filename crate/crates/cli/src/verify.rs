//! The `verify-all` table: every invariant suite, keyed by theorem label.

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use commpoly_core::chains::{
    check_conditions, check_integral, check_monic, ChainSpec, ChainType,
};
use commpoly_core::chebyshev::{at_t_plus_inverse, cheb, dickson, second_kind_values, u_special, ChebKind};
use commpoly_core::division::{divides_closed, divrem_cheb_raw, divrem_chain, oracle, SpecialB};
use commpoly_core::exactnum::{gcd, int, is_prime, mult_order, pow_mod, rat, PrimeField};
use commpoly_core::factor::{
    factor_cheb_chain, factor_mono_chain, factor_plan, factored_chain, gcd_closed, plan_degree,
    shifted_cheb_poly, shifted_cheb_residual, shifted_cheb_roots,
};
use commpoly_core::modp::{
    enumerate_commuting, frobenius_identity, measure_phi_shape, measure_psi_shape,
    phi_psi_power_identity, predict_phi_shape, predict_psi_shape, ENUMERATION_BUDGET,
};
use commpoly_core::{FpPoly, Integer, Poly, Rational};

use crate::{CliError, CliResult, Report};

const ROOT_TOLERANCE: f64 = 1e-8;
const FROBENIUS_LIMIT: u64 = 128;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub description: String,
    pub passed: bool,
    pub cases: usize,
    /// First counterexample, or the error that stopped the check.
    pub detail: Option<String>,
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(case());
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.cases += other.cases;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }
}

#[derive(Debug, Clone)]
struct Params {
    n: usize,
    primes: Vec<u64>,
    max_degree: usize,
}

type Body = Box<dyn Fn(&Params) -> commpoly_core::Result<Tally> + Send + Sync>;

struct Check {
    label: String,
    description: String,
    body: Body,
}

fn check(
    label: impl Into<String>,
    description: impl Into<String>,
    body: impl Fn(&Params) -> commpoly_core::Result<Tally> + Send + Sync + 'static,
) -> Check {
    Check {
        label: label.into(),
        description: description.into(),
        body: Box::new(body),
    }
}

fn generic_b() -> Vec<Rational> {
    vec![int(2), int(-3), rat(2, 3), rat(-5, 4), rat(7, 3), rat(3, 2), int(-2)]
}

fn special_cheb() -> [(usize, Rational); 5] {
    [
        (1, int(0)),
        (2, int(1)),
        (3, int(-1)),
        (4, rat(1, 2)),
        (5, rat(-1, 2)),
    ]
}

fn special_mono() -> [(usize, Rational); 3] {
    [(1, int(0)), (2, int(1)), (3, int(-1))]
}

fn sample_a() -> [Rational; 3] {
    [rat(1, 2), int(1), int(2)]
}

fn coprime_primes(p: &Params, n: u64) -> impl Iterator<Item = u64> + '_ {
    p.primes.iter().copied().filter(move |&q| gcd(q, n) == 1)
}

fn divisibility_vs_oracle(ctype: ChainType, bs: Vec<Rational>, p: &Params) -> commpoly_core::Result<Tally> {
    let mut t = Tally::default();
    for b in bs {
        let spec = ChainSpec::new(ctype, int(1), b)?;
        let f = spec.members(p.n);
        for n in 2..=p.n {
            for m in 1..n {
                let observed = f[n - 1].rem(&f[m - 1])?.is_zero();
                let closed = divides_closed(&spec, m, n)?;
                t.record(closed == observed, || format!("{spec}, m={m}, n={n}"));
            }
        }
    }
    Ok(t)
}

fn gcd_vs_oracle(ctype: ChainType, bs: Vec<Rational>, p: &Params) -> commpoly_core::Result<Tally> {
    let mut t = Tally::default();
    for b in bs {
        let spec = ChainSpec::new(ctype, int(1), b)?;
        let f = spec.members(p.n);
        for n in 2..=p.n {
            for m in 1..n {
                let observed = f[m - 1].gcd_monic(&f[n - 1])?;
                let closed = gcd_closed(ctype, spec.b(), m, n)?.to_poly(&spec)?;
                t.record(closed == observed, || format!("{spec}, m={m}, n={n}"));
            }
        }
    }
    Ok(t)
}

fn division_vs_oracle(ctype: ChainType, bs: Vec<Rational>, p: &Params) -> commpoly_core::Result<Tally> {
    let mut t = Tally::default();
    for a in sample_a() {
        for b in &bs {
            let spec = ChainSpec::new(ctype, a.clone(), b.clone())?;
            let f = spec.members(p.n);
            for n in 2..=p.n {
                for m in 1..n {
                    let closed = divrem_chain(&spec, m, n)?;
                    let reference = oracle(&f[n - 1], &f[m - 1])?;
                    t.record(closed.agrees_with(&reference), || format!("{spec}, m={m}, n={n}"));
                }
            }
        }
    }
    Ok(t)
}

fn factorization_certificates(ctype: ChainType, b: Rational, p: &Params) -> commpoly_core::Result<Tally> {
    let mut t = Tally::default();
    let spec = factored_chain(ctype, &b)?;
    for n in 1..=p.n as u64 {
        let fac = match ctype {
            ChainType::Chebyshev => factor_cheb_chain(&b, n)?,
            ChainType::Monomial => factor_mono_chain(&b, n)?,
        };
        let degree_ok = plan_degree(&factor_plan(ctype, &b, n)?)? == n;
        let ok = degree_ok && fac.certifies(&spec.member(n as usize)?);
        t.record(ok, || format!("b={b}, n={n}"));
    }
    Ok(t)
}

fn member_chains() -> Vec<ChainSpec> {
    let mut specs = vec![ChainSpec::chebyshev_canonical(), ChainSpec::monomial_canonical()];
    for (a, b) in [(int(1), int(0)), (rat(-2, 3), rat(5, 4)), (int(3), rat(-1, 2))] {
        for ctype in [ChainType::Chebyshev, ChainType::Monomial] {
            specs.push(ChainSpec::new(ctype, a.clone(), b.clone()).expect("a != 0"));
        }
    }
    specs
}

fn recurrence(ctype: ChainType, p: &Params) -> commpoly_core::Result<Tally> {
    let mut t = Tally::default();
    for spec in member_chains().into_iter().filter(|s| s.ctype() == ctype) {
        for n in 1..=p.n {
            t.record(spec.member(n)? == spec.member_by_recurrence(n)?, || format!("{spec}, n={n}"));
        }
    }
    Ok(t)
}

/// Closed criteria for (i) and (ii) against the members up to degree `n`.
fn closed_criteria(ctype: ChainType, p: &Params) -> commpoly_core::Result<Tally> {
    let mut t = Tally::default();
    let values = [int(1), int(2), int(-3), rat(1, 2), rat(-1, 2), rat(3, 2), rat(1, 3), int(6)];
    for a in &values {
        for b in values.iter().chain([&int(0), &int(4)]) {
            let spec = ChainSpec::new(ctype, a.clone(), b.clone())?;
            let f = spec.members(p.n);
            let monic = f.iter().all(Poly::is_monic);
            let integral = f.iter().all(Poly::is_integral);
            t.record(check_monic(&spec) == monic && check_integral(&spec) == integral, || {
                format!("{spec}: observed monic={monic}, integral={integral}")
            });
        }
    }
    Ok(t)
}

fn shape_checks(kind_psi: bool, case: Option<bool>, p: &Params) -> commpoly_core::Result<Tally> {
    let mut t = Tally::default();
    let lo = if kind_psi { 3 } else { 1 };
    for n in lo..=p.n as u64 {
        for q in coprime_primes(p, n) {
            if let Some(want_split) = case {
                let f = mult_order(q, n)?;
                let split = f % 2 == 0 && pow_mod(q, f / 2, n) == n - 1;
                if split != want_split {
                    continue;
                }
            }
            let (predicted, measured) = if kind_psi {
                (predict_psi_shape(q, n)?, measure_psi_shape(q, n)?)
            } else {
                (predict_phi_shape(q, n)?, measure_phi_shape(q, n)?)
            };
            t.record(predicted == measured, || {
                format!("p={q}, n={n}: predicted {predicted}, measured {measured}")
            });
        }
    }
    Ok(t)
}

fn power_identities(kind_psi: bool, p: &Params) -> commpoly_core::Result<Tally> {
    let mut t = Tally::default();
    let lo = if kind_psi { 3 } else { 1 };
    for n in lo..=p.n as u64 {
        for q in coprime_primes(p, n) {
            for r in 1..=3 {
                let id = phi_psi_power_identity(q, r, n)?;
                let ok = if kind_psi { id.psi } else { id.phi };
                t.record(ok, || format!("p={q}, r={r}, n={n}"));
            }
        }
    }
    Ok(t)
}

fn fp_poly(field: PrimeField, c: &[i64]) -> FpPoly {
    FpPoly::from_i64s(field, c)
}

fn all_checks() -> Vec<Check> {
    let mut v = vec![
        check("Def1.1", "members commute: f_m o f_n = f_n o f_m = f_mn", |p| {
            let mut t = Tally::default();
            for spec in member_chains() {
                let f = spec.members(p.n);
                for m in 1..=p.n {
                    for n in m..=p.n {
                        if m * n > p.max_degree {
                            break;
                        }
                        let (mn, nm) = (f[m - 1].compose(&f[n - 1]), f[n - 1].compose(&f[m - 1]));
                        let ok = mn == nm && mn == spec.member(m * n)?;
                        t.record(ok, || format!("{spec}, m={m}, n={n}"));
                    }
                }
            }
            Ok(t)
        }),
        check("Lemma2.4", "Chebyshev-type recurrence equals direct substitution", |p| {
            recurrence(ChainType::Chebyshev, p)
        }),
        check("Prop2.5", "Chebyshev-type monic and integral criteria", |p| {
            closed_criteria(ChainType::Chebyshev, p)
        }),
        check("Lemma2.7", "U_{k-1}(b) value tables for b in {0, +-1, +-1/2}", |p| {
            let mut t = Tally::default();
            for s in SpecialB::ALL {
                let b = s.value();
                let c = second_kind_values(&b, 4 * p.n);
                for k in 1..=4 * p.n {
                    t.record(u_special(&b, k as u64)? == c[k], || format!("b={b}, k={k}"));
                }
            }
            Ok(t)
        }),
        check("Lemma2.10", "D_n(t + 1/t) = t^n + t^-n and D_n = 2T_n(x/2)", |p| {
            let mut t = Tally::default();
            let half_x = Poly::monomial(rat(1, 2), 1);
            for n in 1..=p.n {
                let d = dickson(n);
                let laurent = &Poly::<Integer>::monomial(Integer::one(), 2 * n) + &Poly::one();
                let twice_t = cheb(ChebKind::First, n).compose(&half_x).scale(&int(2));
                let ok = at_t_plus_inverse(&d) == (laurent, n) && d.to_rational() == twice_t;
                t.record(ok, || format!("n={n}"));
            }
            Ok(t)
        }),
        check("Prop2.3", "T_n / T_m closed form equals long division", |p| {
            let mut t = Tally::default();
            let tn: Vec<_> = (0..=p.n).map(|k| cheb(ChebKind::First, k)).collect();
            for n in 1..=p.n {
                for m in 1..=n {
                    let closed = divrem_cheb_raw(m, n)?;
                    t.record(closed.agrees_with(&oracle(&tn[n], &tn[m])?), || format!("m={m}, n={n}"));
                }
            }
            Ok(t)
        }),
        check("Prop2.6", "Chebyshev-type chain division equals long division", |p| {
            let mut bs: Vec<Rational> = SpecialB::ALL.iter().map(|s| s.value()).collect();
            bs.extend([int(2), int(-3), rat(2, 3)]);
            division_vs_oracle(ChainType::Chebyshev, bs, p)
        }),
    ];

    for (i, b) in special_cheb() {
        v.push(check(
            format!("Cor2.8({i})"),
            format!("Chebyshev-type divisibility table, b={b}"),
            move |p| divisibility_vs_oracle(ChainType::Chebyshev, vec![b.clone()], p),
        ));
    }
    v.push(check("Cor2.8(generic)", "Chebyshev-type: no division for other b", |p| {
        divisibility_vs_oracle(ChainType::Chebyshev, generic_b(), p)
    }));

    v.push(check("Prop2.11", "roots of T_n(x/2) - b for b in (1/2)Z, |b| <= 4", |p| {
        let mut t = Tally::default();
        for twice_b in -8i64..=8 {
            let b = rat(twice_b, 2);
            for n in 1..=p.n {
                let roots = shifted_cheb_roots(&b, n)?;
                let worst = roots
                    .iter()
                    .map(|r| shifted_cheb_residual(&b, n, r.value))
                    .fold(0.0, f64::max);
                let f = shifted_cheb_poly(&b, n);
                let repeated = f.gcd_monic(&f.derivative())?.degree().unwrap_or(0);
                let flagged = roots.iter().filter(|r| r.multiple).count();
                let ok = roots.len() == n && worst < ROOT_TOLERANCE && flagged == 2 * repeated;
                t.record(ok, || format!("b={b}, n={n}: residual {worst:.2e}, {flagged} flagged"));
            }
        }
        Ok(t)
    }));

    for (i, b) in special_cheb() {
        v.push(check(
            format!("Thm2.12({i})"),
            format!("factorization of 2T_n(x/2+b)-2b, b={b}"),
            move |p| factorization_certificates(ChainType::Chebyshev, b.clone(), p),
        ));
    }
    for (i, b) in special_cheb() {
        v.push(check(
            format!("Cor2.13({i})"),
            format!("Chebyshev-type gcd table, b={b}"),
            move |p| gcd_vs_oracle(ChainType::Chebyshev, vec![b.clone()], p),
        ));
    }
    v.push(check("Cor2.13(generic)", "Chebyshev-type: coprime for other b", |p| {
        gcd_vs_oracle(ChainType::Chebyshev, generic_b(), p)
    }));

    v.push(check("Prop3.1", "monomial-type recurrence, monic and integral criteria", |p| {
        let mut t = recurrence(ChainType::Monomial, p)?;
        t.absorb(closed_criteria(ChainType::Monomial, p)?);
        Ok(t)
    }));
    v.push(check("Prop3.2", "monomial-type chain division equals long division", |p| {
        let bs = vec![int(0), int(1), int(-1), int(2), int(-3)];
        division_vs_oracle(ChainType::Monomial, bs, p)
    }));
    for (i, b) in special_mono() {
        v.push(check(
            format!("Cor3.3({i})"),
            format!("monomial-type divisibility table, b={b}"),
            move |p| divisibility_vs_oracle(ChainType::Monomial, vec![b.clone()], p),
        ));
    }
    v.push(check("Cor3.3(generic)", "monomial-type: no division for other b", |p| {
        divisibility_vs_oracle(ChainType::Monomial, generic_b(), p)
    }));
    for (i, b) in [(1, int(1)), (2, int(-1))] {
        v.push(check(
            format!("Eq3.1({i})"),
            format!("factorization of (x+b)^n - b, b={b}"),
            move |p| factorization_certificates(ChainType::Monomial, b.clone(), p),
        ));
    }
    for (i, b) in [(1, int(1)), (2, int(-1))] {
        v.push(check(
            format!("Cor3.4({i})"),
            format!("monomial-type gcd table, b={b}"),
            move |p| gcd_vs_oracle(ChainType::Monomial, vec![b.clone()], p),
        ));
    }
    v.push(check("Cor3.4(generic)", "monomial-type: coprime for other b", |p| {
        gcd_vs_oracle(ChainType::Monomial, generic_b(), p)
    }));

    v.extend([
        check("Prop4.2", "p >= 3: at most one commuting polynomial per degree for a quadratic", |p| {
            let mut t = Tally::default();
            for &q in p.primes.iter().filter(|&&q| q >= 3) {
                let field = PrimeField::new(q)?;
                for f in [fp_poly(field, &[0, 0, 1]), fp_poly(field, &[1, 0, 1]), fp_poly(field, &[2, 1, 1])] {
                    for k in (1..=4).take_while(|&k| u128::from(q).pow(k as u32 + 1) <= ENUMERATION_BUDGET) {
                        let found = enumerate_commuting(&f, k)?;
                        let square = f == fp_poly(field, &[0, 0, 1]);
                        let ok = found.len() <= 1 && (!square || found == [FpPoly::monomial(field, 1, k)]);
                        t.record(ok, || format!("p={q}, f={f}, k={k}: {} found", found.len()));
                    }
                }
            }
            Ok(t)
        }),
        check("Prop4.3", "F_2: at most one monic commuting polynomial per degree for a monic cubic", |_| {
            let mut t = Tally::default();
            let field = PrimeField::new(2)?;
            for low in 0..8i64 {
                let f = fp_poly(field, &[low & 1, (low >> 1) & 1, (low >> 2) & 1, 1]);
                for k in 1..=6 {
                    let found = enumerate_commuting(&f, k)?;
                    t.record(found.len() <= 1, || format!("f={f}, k={k}: {} found", found.len()));
                }
            }
            Ok(t)
        }),
        check("Sec4.1.2", "F_2: the 8 cubics commuting with x^2, paired by x+1", |_| {
            let mut t = Tally::default();
            let field = PrimeField::new(2)?;
            let g = [[0, 0, 0, 1], [1, 0, 0, 1], [0, 0, 1, 1], [0, 1, 0, 1]];
            let h = [[0, 1, 1, 1], [1, 1, 1, 1], [1, 1, 0, 1], [1, 0, 1, 1]];
            let mut expected: Vec<FpPoly> = g.iter().chain(&h).map(|c| fp_poly(field, c)).collect();
            expected.sort_by(|a, b| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()));
            let mut found = enumerate_commuting(&fp_poly(field, &[0, 0, 1]), 3)?;
            found.sort_by(|a, b| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()));
            t.record(found == expected, || format!("{} cubics found", found.len()));
            let lam = fp_poly(field, &[1, 1]);
            for (gi, hi) in g.iter().zip(&h) {
                let conj = lam.compose(&fp_poly(field, gi).compose(&lam)?)?;
                t.record(conj == fp_poly(field, hi), || format!("g={gi:?}"));
            }
            Ok(t)
        }),
        check("Thm4.4(1)", "Phi_n mod p: phi(n)/f factors of degree f", |p| shape_checks(false, None, p)),
        check("Thm4.4(2)", "Phi_{p^r n} = Phi_n^phi(p^r) mod p", |p| power_identities(false, p)),
        check("Prop4.5(1)", "Psi_n mod p with p^(f/2) = -1 mod n", |p| shape_checks(true, Some(true), p)),
        check("Prop4.5(2)", "Psi_n mod p otherwise", |p| shape_checks(true, Some(false), p)),
        check("Prop4.5(3)", "Psi_{p^r n} = Psi_n^phi(p^r) mod p", |p| power_identities(true, p)),
        check("Cor4.6", "F_q = F~_q = x^q mod p for q = p^r", |p| {
            let mut t = Tally::default();
            let limit = FROBENIUS_LIMIT.min(p.max_degree as u64);
            for &q in &p.primes {
                for r in (1..).take_while(|&r| q.pow(r) <= limit) {
                    t.record(frobenius_identity(q, r)?, || format!("p={q}, r={r}"));
                }
            }
            Ok(t)
        }),
        check("Cor1.7", "only F_n and F~_n satisfy (i)-(iii) on the grid; both satisfy (iv)", |p| {
            let mut t = Tally::default();
            let n = p.n.min(12);
            let canonical = [ChainSpec::chebyshev_canonical(), ChainSpec::monomial_canonical()];
            for ctype in [ChainType::Chebyshev, ChainType::Monomial] {
                for a in sample_a() {
                    for b in [int(-1), rat(-1, 2), int(0), rat(1, 2), int(1), int(2)] {
                        let spec = ChainSpec::new(ctype, a.clone(), b)?;
                        let r = check_conditions(&spec, n)?;
                        let first_three = r.monic && r.integral && r.divisibility.holds;
                        let is_canonical = canonical.contains(&spec);
                        let ok = first_three == is_canonical && (!is_canonical || r.gcd.holds);
                        t.record(ok, || format!("{spec}: (i)-(iii) {first_three}, (iv) {}", r.gcd.holds));
                    }
                }
            }
            Ok(t)
        }),
    ]);
    v
}

fn validate(max_n: usize, primes: &[u64]) -> CliResult<()> {
    if max_n < 4 {
        return Err(CliError::Usage(format!("--max-n must be at least 4, got {max_n}")));
    }
    if primes.is_empty() {
        return Err(CliError::Usage("--primes must list at least one prime".into()));
    }
    if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
        return Err(CliError::Core(commpoly_core::Error::NotPrime(q)));
    }
    Ok(())
}

/// Runs every check in parallel; rows come back in table order.
pub fn run_checks(max_n: usize, primes: &[u64], max_degree: usize) -> CliResult<Vec<CheckResult>> {
    validate(max_n, primes)?;
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let params = Params {
        n: max_n,
        primes,
        max_degree,
    };
    Ok(all_checks()
        .into_par_iter()
        .map(|c| {
            let (passed, cases, detail) = match (c.body)(&params) {
                Ok(t) => (t.failure.is_none(), t.cases, t.failure),
                Err(e) => (false, 0, Some(format!("error: {e}"))),
            };
            CheckResult {
                label: c.label,
                description: c.description,
                passed,
                cases,
                detail,
            }
        })
        .collect())
}

pub fn verify_all(max_n: usize, primes: &[u64], max_degree: usize) -> CliResult<Report> {
    let rows = run_checks(max_n, primes, max_degree)?;
    let passed = rows.iter().all(|r| r.passed);
    let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
    let mut lines: Vec<String> = rows
        .iter()
        .map(|r| {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            let mut line = format!("{:<width$}  {verdict}  {:>6}  {}", r.label, r.cases, r.description);
            if let Some(d) = &r.detail {
                line.push_str(&format!("  [{d}]"));
            }
            line
        })
        .collect();
    let failed = rows.iter().filter(|r| !r.passed).count();
    lines.push(format!(
        "{} checks, {failed} failed (max-n {max_n}, primes {primes:?})",
        rows.len()
    ));
    let report = Report::checked(
        json!({ "max_n": max_n, "primes": primes, "results": rows, "passed": passed }),
        lines.join("\n"),
        passed,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_unique_and_include_the_documented_keys() {
        let labels: Vec<String> = all_checks().into_iter().map(|c| c.label).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), labels.len());
        for key in ["Thm2.12(4)", "Cor3.3(3)", "Prop4.5(1)", "Cor1.7", "Sec4.1.2"] {
            assert!(labels.iter().any(|l| l == key), "{key}");
        }
    }

    #[test]
    fn small_run_passes_in_order() {
        let rows = run_checks(8, &[3, 2], 64).unwrap();
        let expected: Vec<String> = all_checks().into_iter().map(|c| c.label).collect();
        assert_eq!(rows.iter().map(|r| r.label.clone()).collect::<Vec<_>>(), expected);
        for r in &rows {
            assert!(r.passed && r.cases > 0, "{} {:?}", r.label, r.detail);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(run_checks(3, &[2], 64).is_err());
        assert!(run_checks(10, &[4], 64).is_err());
        assert!(run_checks(10, &[], 64).is_err());
    }
}
