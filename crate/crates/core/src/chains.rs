//! Chains of commuting polynomials over ℚ and the similarity action.
//!
//! A chain of Chebyshev type is `f_n(x) = (T_n(ax + b) − b) / a` and a chain
//! of monomial type is `f_n(x) = ((ax + b)^n − b) / a`, i.e. the conjugates
//! of `{T_n}` and `{x^n}` by `λ(x) = ax + b`. Indices start at `n = 1`.

use num_integer::Integer as _;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{cheb, ChebKind};
use crate::division::divides_closed;
use crate::exactnum::{int, rat, rational_str};
use crate::factor::{gcd_closed, GcdClosed};
use crate::{Error, Poly, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainType {
    Chebyshev,
    Monomial,
}

impl std::str::FromStr for ChainType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chebyshev" | "cheb" => Ok(Self::Chebyshev),
            "monomial" | "mono" => Ok(Self::Monomial),
            _ => Err(Error::InvalidArgument(format!("unknown chain type {s:?}"))),
        }
    }
}

impl std::fmt::Display for ChainType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Chebyshev => "chebyshev",
            Self::Monomial => "monomial",
        })
    }
}

/// `λ(x) = ax + b` with `a ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimilarityMap {
    a: Rational,
    b: Rational,
}

impl SimilarityMap {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DegenerateSimilarity);
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self {
            a: Rational::one(),
            b: Rational::zero(),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn as_poly(&self) -> Poly<Rational> {
        Poly::linear(self.a.clone(), self.b.clone())
    }

    /// `λ⁻¹(x) = (x − b) / a`
    pub fn inverse(&self) -> Self {
        let a_inv = self.a.recip();
        Self {
            b: -(&self.b * &a_inv),
            a: a_inv,
        }
    }

    /// `λ ∘ μ`, i.e. `x ↦ λ(μ(x))`.
    pub fn after(&self, mu: &Self) -> Self {
        Self {
            a: &self.a * &mu.a,
            b: &self.a * &mu.b + &self.b,
        }
    }
}

/// `λ⁻¹ ∘ f ∘ λ`
pub fn conjugate(f: &Poly<Rational>, lam: &SimilarityMap) -> Poly<Rational> {
    let inner = f.compose(&lam.as_poly());
    lam.inverse().as_poly().compose(&inner)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct ChainSpec {
    ctype: ChainType,
    lambda: SimilarityMap,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    #[serde(rename = "type")]
    ctype: ChainType,
    #[serde(with = "rational_str")]
    a: Rational,
    #[serde(with = "rational_str")]
    b: Rational,
}

impl TryFrom<RawSpec> for ChainSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        ChainSpec::new(raw.ctype, raw.a, raw.b)
    }
}

impl From<ChainSpec> for RawSpec {
    fn from(s: ChainSpec) -> Self {
        RawSpec {
            ctype: s.ctype,
            a: s.lambda.a,
            b: s.lambda.b,
        }
    }
}

impl ChainSpec {
    pub fn new(ctype: ChainType, a: Rational, b: Rational) -> Result<Self> {
        Ok(Self {
            ctype,
            lambda: SimilarityMap::new(a, b)?,
        })
    }

    /// `F_n = 2T_n(x/2 + 1) − 2`
    pub fn chebyshev_canonical() -> Self {
        Self::new(ChainType::Chebyshev, rat(1, 2), int(1)).expect("a != 0")
    }

    /// `F̃_n = (x + 1)^n − 1`
    pub fn monomial_canonical() -> Self {
        Self::new(ChainType::Monomial, int(1), int(1)).expect("a != 0")
    }

    pub fn ctype(&self) -> ChainType {
        self.ctype
    }

    pub fn a(&self) -> &Rational {
        &self.lambda.a
    }

    pub fn b(&self) -> &Rational {
        &self.lambda.b
    }

    pub fn similarity(&self) -> &SimilarityMap {
        &self.lambda
    }

    /// `f_n` by direct substitution into `T_n` or `x^n`.
    pub fn member(&self, n: usize) -> Result<Poly<Rational>> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "chain members are indexed from n = 1".into(),
            ));
        }
        Ok(self.formal_member(n))
    }

    /// `f_1, …, f_max` (index `i` holds `f_{i+1}`).
    pub fn members(&self, max: usize) -> Vec<Poly<Rational>> {
        (1..=max).map(|n| self.formal_member(n)).collect()
    }

    /// The member formula at any `n ≥ 0`. At `n = 0` both families give the
    /// constant `(1 − b)/a`, which the division formulas use.
    pub(crate) fn formal_member(&self, n: usize) -> Poly<Rational> {
        let (a, b) = (&self.lambda.a, &self.lambda.b);
        let lam = self.lambda.as_poly();
        let outer = match self.ctype {
            ChainType::Chebyshev => cheb(ChebKind::First, n).compose(&lam),
            ChainType::Monomial => lam.pow(n as u32),
        };
        (&outer - &Poly::constant(b.clone())).scale(&a.recip())
    }

    /// `f_n` by the three-term (Chebyshev) or two-term (monomial) recurrence,
    /// independent of [`ChainSpec::member`].
    pub fn member_by_recurrence(&self, n: usize) -> Result<Poly<Rational>> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "chain members are indexed from n = 1".into(),
            ));
        }
        let (a, b) = (&self.lambda.a, &self.lambda.b);
        let lam = self.lambda.as_poly();
        let b_minus_1 = b - int(1);
        match self.ctype {
            ChainType::Chebyshev => {
                // f_n = 2(ax+b) f_{n-1} − f_{n-2} + 2bx + 2b(b−1)/a, seeded with
                // f_0 = (1−b)/a and f_1 = x.
                let two_lam = lam.scale(&int(2));
                let tail = Poly::linear(b * int(2), b * &b_minus_1 * int(2) / a);
                let mut prev = Poly::constant(-&b_minus_1 / a);
                let mut cur = Poly::x();
                for _ in 1..n {
                    let next = &(&(&two_lam * &cur) - &prev) + &tail;
                    prev = std::mem::replace(&mut cur, next);
                }
                Ok(cur)
            }
            ChainType::Monomial => {
                // f_n = (ax+b) f_{n-1} + bx + (b²−b)/a
                let tail = Poly::linear(b.clone(), b * &b_minus_1 / a);
                let mut cur = Poly::x();
                for _ in 1..n {
                    cur = &(&lam * &cur) + &tail;
                }
                Ok(cur)
            }
        }
    }
}

impl std::fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, a={}, b={})", self.ctype, self.a(), self.b())
    }
}

/// Condition (i): every member is monic.
pub fn check_monic(spec: &ChainSpec) -> bool {
    match spec.ctype {
        ChainType::Chebyshev => *spec.a() == rat(1, 2),
        ChainType::Monomial => spec.a().is_one(),
    }
}

/// Condition (ii): every member has integer coefficients.
pub fn check_integral(spec: &ChainSpec) -> bool {
    let (a, b) = (spec.a(), spec.b());
    match spec.ctype {
        // a ∈ ½ℤ and (b − 1)/a ∈ ℤ
        ChainType::Chebyshev => (a * int(2)).is_integer() && ((b - int(1)) / a).is_integer(),
        // a, b ∈ ℤ and a | b(b − 1)
        ChainType::Monomial => {
            a.is_integer()
                && b.is_integer()
                && (b.numer() * (b.numer() - 1u32)).is_multiple_of(a.numer())
        }
    }
}

/// All chains over ℚ whose degree-2 member is `f`; empty means `f` is not a
/// chain member. A polynomial can match both types.
pub fn classify_quadratic(f: &Poly<Rational>) -> Result<Vec<ChainSpec>> {
    if f.degree() != Some(2) {
        return Err(Error::WrongDegree {
            expected: 2,
            found: f.degree(),
        });
    }
    let (c0, c1, c2) = (f.coeff(0), f.coeff(1), f.coeff(2));
    let mut out = Vec::new();

    // 2a x² + 4b x + (2b² − b − 1)/a
    let a = &c2 / int(2);
    let b = &c1 / int(4);
    if c0 == (&b * &b * int(2) - &b - int(1)) / &a {
        out.push(ChainSpec::new(ChainType::Chebyshev, a, b)?);
    }

    // a x² + 2b x + (b² − b)/a
    let a = c2;
    let b = &c1 / int(2);
    if c0 == (&b * &b - &b) / &a {
        out.push(ChainSpec::new(ChainType::Monomial, a, b)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub holds: bool,
    /// Every failing `(m, n)`, ordered by `n` and then `m`.
    pub failures: Vec<(usize, usize)>,
}

impl ConditionCheck {
    fn from_failures(failures: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut failures: Vec<_> = failures.into_iter().collect();
        failures.sort_unstable_by_key(|&(m, n)| (n, m));
        Self {
            holds: failures.is_empty(),
            failures,
        }
    }

    /// The failing pair with the smallest `n`, then the smallest `m`.
    pub fn first_failure(&self) -> Option<(usize, usize)> {
        self.failures.first().copied()
    }
}

/// Conditions (i)–(iv) for one chain up to degree `max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub spec: ChainSpec,
    pub max_n: usize,
    /// (i) by the closed criterion on `a`.
    pub monic: bool,
    /// (ii) by the closed criterion on `(a, b)`.
    pub integral: bool,
    /// (iii) `m | n ⇔ f_m | f_n`, by oracle division over all `m < n ≤ max_n`.
    pub divisibility: ConditionCheck,
    /// (iv) `gcd(f_m, f_n) = f_gcd(m,n)` up to a unit, by the Euclidean oracle.
    pub gcd: ConditionCheck,
    /// (iii) as predicted by the closed-form divisibility tables.
    pub divisibility_predicted: ConditionCheck,
    /// (iv) as predicted by the closed-form gcd tables.
    pub gcd_predicted: ConditionCheck,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.monic && self.integral && self.divisibility.holds && self.gcd.holds
    }
}

pub fn check_conditions(spec: &ChainSpec, max_n: usize) -> Result<ConditionReport> {
    if max_n < 4 {
        return Err(Error::InvalidArgument(format!(
            "condition sweep needs max_n >= 4, got {max_n}"
        )));
    }
    let members = spec.members(max_n);
    let f = |k: usize| &members[k - 1];
    let pairs: Vec<(usize, usize)> = (1..=max_n)
        .flat_map(|n| (1..n).map(move |m| (m, n)))
        .collect();

    let cells: Vec<_> = pairs
        .par_iter()
        .map(|&(m, n)| -> Result<_> {
            let divides = f(n).rem(f(m))?.is_zero();
            let div_ok = divides == n.is_multiple_of(m);
            let g = f(m).gcd_monic(f(n))?;
            let gcd_ok = g == f(m.gcd(&n)).monic();
            let div_pred_ok = divides_closed(spec, m, n)? == n.is_multiple_of(m);
            let gcd_pred_ok = gcd_closed(spec.ctype(), spec.b(), m, n)?
                == GcdClosed::Member(m.gcd(&n));
            Ok(((m, n), div_ok, gcd_ok, div_pred_ok, gcd_pred_ok))
        })
        .collect::<Result<_>>()?;

    let failing = |pick: fn(&(bool, bool, bool, bool)) -> bool| {
        ConditionCheck::from_failures(
            cells
                .iter()
                .filter(|(_, a, b, c, d)| !pick(&(*a, *b, *c, *d)))
                .map(|(mn, ..)| *mn),
        )
    };

    Ok(ConditionReport {
        spec: spec.clone(),
        max_n,
        monic: check_monic(spec),
        integral: check_integral(spec),
        divisibility: failing(|t| t.0),
        gcd: failing(|t| t.1),
        divisibility_predicted: failing(|t| t.2),
        gcd_predicted: failing(|t| t.3),
    })
}
