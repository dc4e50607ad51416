//! Closed-form Euclidean division inside a chain and between Chebyshev
//! polynomials, with the divisibility tables that follow from it.
//!
//! The builders here never call [`Poly::divrem`]; [`oracle`] exists so that
//! callers and tests can compare the two.

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chains::{ChainSpec, ChainType};
use crate::chebyshev::{cheb, second_kind_values, ChebKind};
use crate::exactnum::{int, rat};
use crate::{Error, Poly, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivSource {
    ClosedForm,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivRemResult {
    pub quot: Poly<Rational>,
    pub rem: Poly<Rational>,
    pub source: DivSource,
}

impl DivRemResult {
    /// Same quotient and remainder, regardless of how each was obtained.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.quot == other.quot && self.rem == other.rem
    }

    /// `quot·divisor + rem = dividend` and `deg rem < deg divisor`.
    pub fn certifies(&self, dividend: &Poly<Rational>, divisor: &Poly<Rational>) -> bool {
        &(&self.quot * divisor) + &self.rem == *dividend && self.rem.degree() < divisor.degree()
    }
}

/// Schoolbook long division, tagged as the reference result.
pub fn oracle(dividend: &Poly<Rational>, divisor: &Poly<Rational>) -> Result<DivRemResult> {
    let (quot, rem) = dividend.divrem(divisor)?;
    Ok(DivRemResult {
        quot,
        rem,
        source: DivSource::Oracle,
    })
}

/// The values of `b` at which the divisibility and gcd tables are nontrivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialB {
    Zero,
    One,
    MinusOne,
    Half,
    MinusHalf,
}

impl SpecialB {
    pub fn classify(b: &Rational) -> Option<Self> {
        if b.is_zero() {
            Some(Self::Zero)
        } else if *b == int(1) {
            Some(Self::One)
        } else if *b == int(-1) {
            Some(Self::MinusOne)
        } else if *b == rat(1, 2) {
            Some(Self::Half)
        } else if *b == rat(-1, 2) {
            Some(Self::MinusHalf)
        } else {
            None
        }
    }

    pub fn value(self) -> Rational {
        match self {
            Self::Zero => int(0),
            Self::One => int(1),
            Self::MinusOne => int(-1),
            Self::Half => rat(1, 2),
            Self::MinusHalf => rat(-1, 2),
        }
    }

    pub const ALL: [SpecialB; 5] = [
        Self::Zero,
        Self::One,
        Self::MinusOne,
        Self::Half,
        Self::MinusHalf,
    ];
}

fn check_indices(m: usize, n: usize, strict: bool) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("divisor index must be positive".into()));
    }
    if n < m || (strict && n == m) {
        let rel = if strict { "<" } else { "<=" };
        return Err(Error::InvalidArgument(format!(
            "need m {rel} n, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

fn sign(k: usize) -> Rational {
    if k.is_even() {
        int(1)
    } else {
        int(-1)
    }
}

/// `T_n ÷ T_m` for `1 ≤ m ≤ n`.
///
/// With `n/m` odd, `n = (2l − 1)m` and the division is exact:
/// `q = 2Σ_{i<l} (−1)^{i−1} T_{n−(2i−1)m} + (−1)^{l−1}`.
/// Otherwise `l` is the unique index with `|n − 2lm| < m` and
/// `q = 2Σ_{i≤l} (−1)^{i−1} T_{n−(2i−1)m}`, `r = (−1)^l T_{|n−2lm|}`.
pub fn divrem_cheb_raw(m: usize, n: usize) -> Result<DivRemResult> {
    check_indices(m, n, false)?;
    let t = |k: usize| cheb(ChebKind::First, k);
    let exact = n % m == 0 && (n / m).is_odd();
    let l = if exact {
        (n / m).div_ceil(2)
    } else {
        (n + m) / (2 * m)
    };
    let terms = if exact { l - 1 } else { l };
    let mut quot = Poly::zero();
    for i in 1..=terms {
        quot = &quot + &t(n - (2 * i - 1) * m).scale(&(sign(i - 1) * int(2)));
    }
    let rem = if exact {
        quot = &quot + &Poly::constant(sign(l - 1));
        Poly::zero()
    } else {
        t((n as i64 - (2 * l * m) as i64).unsigned_abs() as usize).scale(&sign(l))
    };
    Ok(DivRemResult {
        quot,
        rem,
        source: DivSource::ClosedForm,
    })
}

fn chain_spec(ctype: ChainType, a: &Rational, b: &Rational) -> Result<ChainSpec> {
    ChainSpec::new(ctype, a.clone(), b.clone())
}

/// `f_n ÷ f_m` in the Chebyshev-type chain with parameters `(a, b)`, `m < n`.
///
/// With `k = ⌊n/m⌋` and `c_i = U_{i−1}(b)`:
/// `q = 2a Σ_{i=1}^k c_i f_{n−im} + d`, where `d = 2bΣc_i − c_k` if `m | n`
/// and `d = 2bΣc_i` otherwise. The remainder is the constant
/// `(b c_k − b − c_{k−1})/a` when `m | n`, and otherwise
/// `c_{k+1} f_{n−km} − c_k f_{(k+1)m−n} + (b/a)(c_{k+1} − c_k − 1)`.
pub fn divrem_cheb_chain(a: &Rational, b: &Rational, m: usize, n: usize) -> Result<DivRemResult> {
    check_indices(m, n, true)?;
    let spec = chain_spec(ChainType::Chebyshev, a, b)?;
    let f = |j: usize| spec.formal_member(j);
    let k = n / m;
    let c = second_kind_values(b, k + 1);
    let c_sum: Rational = c[1..=k].iter().sum();

    let two_a = a * int(2);
    let mut quot = Poly::zero();
    for (i, ci) in c.iter().enumerate().take(k + 1).skip(1) {
        if !ci.is_zero() {
            quot = &quot + &f(n - i * m).scale(&(&two_a * ci));
        }
    }
    let divisible = n % m == 0;
    let mut d = b * int(2) * &c_sum;
    if divisible {
        d -= &c[k];
    }
    quot = &quot + &Poly::constant(d);

    let rem = if divisible {
        Poly::constant((b * &c[k] - b - &c[k - 1]) / a)
    } else {
        let hi = f(n - k * m).scale(&c[k + 1]);
        let lo = f((k + 1) * m - n).scale(&c[k]);
        let tail = b / a * (&c[k + 1] - &c[k] - int(1));
        &(&hi - &lo) + &Poly::constant(tail)
    };
    Ok(DivRemResult {
        quot,
        rem,
        source: DivSource::ClosedForm,
    })
}

/// `f_n ÷ f_m` in the monomial-type chain with parameters `(a, b)`, `m ≤ n`:
/// `q = a Σ_{i=1}^k b^{i−1} f_{n−im} + Σ_{i=1}^k b^i` and
/// `r = b^k f_{n−km} + (b^{k+1} − b)/a`.
pub fn divrem_mono_chain(a: &Rational, b: &Rational, m: usize, n: usize) -> Result<DivRemResult> {
    check_indices(m, n, false)?;
    let spec = chain_spec(ChainType::Monomial, a, b)?;
    let f = |j: usize| spec.formal_member(j);
    let k = n / m;
    // b^0, …, b^{k+1}
    let powers: Vec<Rational> = std::iter::successors(Some(Rational::one()), |p| Some(p * b))
        .take(k + 2)
        .collect();

    let mut quot = Poly::zero();
    for i in 1..=k {
        let s = a * &powers[i - 1];
        if !s.is_zero() {
            quot = &quot + &f(n - i * m).scale(&s);
        }
    }
    let geometric: Rational = powers[1..=k].iter().sum();
    quot = &quot + &Poly::constant(geometric);

    let mut rem = Poly::constant((&powers[k + 1] - b) / a);
    if !powers[k].is_zero() {
        rem = &rem + &f(n - k * m).scale(&powers[k]);
    }
    Ok(DivRemResult {
        quot,
        rem,
        source: DivSource::ClosedForm,
    })
}

/// Closed-form division dispatched on the chain type.
pub fn divrem_chain(spec: &ChainSpec, m: usize, n: usize) -> Result<DivRemResult> {
    match spec.ctype() {
        ChainType::Chebyshev => divrem_cheb_chain(spec.a(), spec.b(), m, n),
        ChainType::Monomial => divrem_mono_chain(spec.a(), spec.b(), m, n),
    }
}

/// `f_m | f_n` by table lookup on `b`; the answer does not depend on `a`.
pub fn divides_closed(spec: &ChainSpec, m: usize, n: usize) -> Result<bool> {
    check_indices(m, n, false)?;
    if m == n {
        return Ok(true);
    }
    let q = n / m;
    let multiple = n % m == 0;
    let coprime_to = |k: usize| multiple && q.gcd(&k) == 1;
    let special = SpecialB::classify(spec.b());
    Ok(match spec.ctype() {
        ChainType::Chebyshev => match special {
            Some(SpecialB::Zero | SpecialB::MinusOne) => coprime_to(2),
            Some(SpecialB::One) => multiple,
            Some(SpecialB::Half) => coprime_to(6),
            Some(SpecialB::MinusHalf) => coprime_to(3),
            None => false,
        },
        ChainType::Monomial => match special {
            Some(SpecialB::Zero) => true,
            Some(SpecialB::One) => multiple,
            Some(SpecialB::MinusOne) => coprime_to(2),
            _ => false,
        },
    })
}

/// `true` when `b` lies in the set where [`divides_closed`] can be true.
pub fn has_divisibility(ctype: ChainType, b: &Rational) -> bool {
    match (ctype, SpecialB::classify(b)) {
        (ChainType::Chebyshev, s) => s.is_some(),
        (ChainType::Monomial, Some(SpecialB::Zero | SpecialB::One | SpecialB::MinusOne)) => true,
        _ => false,
    }
}

/// Remainder of `f_n` by `f_m` in the Chebyshev-type chain, obtained from the
/// remainder `R` of `T_n − b` by `T_m − b` as `R(ax + b)/a`.
pub fn rem_by_scaling(a: &Rational, b: &Rational, m: usize, n: usize) -> Result<Poly<Rational>> {
    check_indices(m, n, false)?;
    let shift = Poly::constant(b.clone());
    let tn = &cheb(ChebKind::First, n) - &shift;
    let tm = &cheb(ChebKind::First, m) - &shift;
    let r = tn.rem(&tm)?;
    Ok(r.compose(&Poly::linear(a.clone(), b.clone())).scale(&a.recip()))
}
