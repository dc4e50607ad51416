//! Cyclotomic polynomials, minimal polynomials of `2cos(2π/n)`, and the exact
//! factorizations of the integral chains at the special values of `b`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use num_complex::Complex64;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::chains::{ChainSpec, ChainType};
use crate::chebyshev::{cheb, first_kind_f64, ChebKind};
use crate::division::SpecialB;
use crate::exactnum::{divisors, euler_phi, gcd, int, rat};
use crate::{Error, Integer, Poly, Rational, Result};

static CYCLOTOMIC: RwLock<BTreeMap<u64, Poly<Integer>>> = RwLock::new(BTreeMap::new());

/// Exact quotient by a monic divisor over ℤ.
fn div_monic(num: &Poly<Integer>, den: &Poly<Integer>) -> Poly<Integer> {
    let dd = den.degree().expect("monic divisor");
    debug_assert!(den.is_monic());
    let mut rem = num.coeffs().to_vec();
    let Some(nd) = num.degree().filter(|&d| d >= dd) else {
        return Poly::zero();
    };
    let mut quot = vec![Integer::zero(); nd - dd + 1];
    for shift in (0..=nd - dd).rev() {
        let q = rem[shift + dd].clone();
        if q.is_zero() {
            continue;
        }
        for (j, c) in den.coeffs().iter().enumerate() {
            rem[shift + j] -= &q * c;
        }
        quot[shift] = q;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact division");
    Poly::new(quot)
}

/// `Φ_n`, from `x^n − 1 = Π_{d | n} Φ_d`. Memoized.
pub fn cyclotomic(n: u64) -> Result<Poly<Integer>> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic index must be positive".into()));
    }
    if let Some(p) = CYCLOTOMIC.read().expect("cyclotomic cache poisoned").get(&n) {
        return Ok(p.clone());
    }
    let mut acc = Poly::<Integer>::monomial(Integer::one(), n as usize);
    acc = &acc - &Poly::one();
    for d in divisors(n)? {
        if d < n {
            acc = div_monic(&acc, &cyclotomic(d)?);
        }
    }
    CYCLOTOMIC
        .write()
        .expect("cyclotomic cache poisoned")
        .insert(n, acc.clone());
    Ok(acc)
}

/// `Ψ_n`, the minimal polynomial of `2cos(2π/n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosMinPoly {
    pub n: u64,
    pub poly: Poly<Integer>,
    /// `poly = dickson[0] + Σ_{j≥1} dickson[j]·D_j(X)`.
    pub dickson: Vec<Integer>,
}

impl CosMinPoly {
    /// Evaluates through the Dickson expansion, which stays well conditioned
    /// on `[−2, 2]` where Horner on the monomial form does not.
    pub fn eval_numeric(&self, x: f64) -> f64 {
        let coeff = |j: usize| self.dickson[j].to_f64().unwrap_or(f64::NAN);
        let mut acc = coeff(0);
        let (mut prev, mut cur) = (2.0, x);
        for j in 1..self.dickson.len() {
            acc += coeff(j) * cur;
            let next = x * cur - prev;
            prev = cur;
            cur = next;
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// `Ψ_n`. For `n ≥ 3` the palindromic `Φ_n` of degree `2m` satisfies
/// `x^{−m}Φ_n(x) = a_m + Σ_{j=1}^m a_{m+j} D_j(x + 1/x)`.
pub fn psi(n: u64) -> Result<CosMinPoly> {
    match n {
        0 => Err(Error::InvalidArgument("psi index must be positive".into())),
        1 | 2 => {
            let c = if n == 1 { -2 } else { 2 };
            Ok(CosMinPoly {
                n,
                poly: Poly::from_i64s(&[c, 1]),
                dickson: vec![Integer::from(c), Integer::one()],
            })
        }
        _ => {
            let phi = cyclotomic(n)?;
            let m = phi.degree().expect("nonzero") / 2;
            let e: Vec<Integer> = (m..=2 * m).map(|i| phi.coeff(i)).collect();
            let mut poly = Poly::constant(e[0].clone());
            for (j, ej) in e.iter().enumerate().skip(1) {
                if !ej.is_zero() {
                    poly = &poly + &crate::chebyshev::dickson(j).scale(ej);
                }
            }
            Ok(CosMinPoly { n, poly, dickson: e })
        }
    }
}

/// `c_n = x` or `x(x + 4)` by parity; `c*_n = x` or `1`.
pub fn c_poly(n: u64, starred: bool) -> Result<Poly<Integer>> {
    if n == 0 {
        return Err(Error::InvalidArgument("c_n index must be positive".into()));
    }
    Ok(match (n.is_odd(), starred) {
        (true, _) => Poly::x(),
        (false, false) => Poly::from_i64s(&[0, 4, 1]),
        (false, true) => Poly::one(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// `x + c`
    Linear(i64),
    /// `Ψ_index(x + shift)`
    Psi { index: u64, shift: i64 },
    /// `Φ_index(x + shift)`
    Phi { index: u64, shift: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorTerm {
    pub kind: FactorKind,
    pub mult: u32,
}

fn shifted_arg(shift: i64) -> String {
    match shift {
        0 => "x".into(),
        s if s > 0 => format!("x+{s}"),
        s => format!("x{s}"),
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Linear(c) => f.write_str(&shifted_arg(c)),
            Self::Psi { index, shift } => write!(f, "Psi_{index}({})", shifted_arg(shift)),
            Self::Phi { index, shift } => write!(f, "Phi_{index}({})", shifted_arg(shift)),
        }
    }
}

impl FactorKind {
    /// Degree from `φ` alone, without building the polynomial.
    pub fn degree(&self) -> Result<u64> {
        Ok(match *self {
            Self::Linear(_) => 1,
            Self::Psi { index, .. } if index <= 2 => 1,
            Self::Psi { index, .. } => euler_phi(index)? / 2,
            Self::Phi { index, .. } => euler_phi(index)?,
        })
    }

    pub fn poly(&self) -> Result<Poly<Integer>> {
        Ok(match *self {
            Self::Linear(c) => Poly::from_i64s(&[c, 1]),
            Self::Psi { index, shift } => psi(index)?.poly.shift(&Integer::from(shift)),
            Self::Phi { index, shift } => cyclotomic(index)?.shift(&Integer::from(shift)),
        })
    }
}

fn term(kind: FactorKind, mult: u32) -> FactorTerm {
    FactorTerm { kind, mult }
}

/// The factor list of `f_n` at `a = 1/2` (Chebyshev type) or `a = 1`
/// (monomial type) for a special `b`, before any polynomial is built.
pub fn factor_plan(ctype: ChainType, b: &Rational, n: u64) -> Result<Vec<FactorTerm>> {
    if n == 0 {
        return Err(Error::InvalidArgument("chain index must be positive".into()));
    }
    let special = SpecialB::classify(b).ok_or_else(|| Error::UnsupportedParameter(b.to_string()))?;
    let divs = divisors(n)?;
    let mut plan = Vec::new();
    match (ctype, special) {
        (ChainType::Chebyshev, SpecialB::Zero) => {
            for &k in divs.iter().filter(|&&k| (n / k).is_odd()) {
                plan.push(term(FactorKind::Psi { index: 4 * k, shift: 0 }, 1));
            }
        }
        (ChainType::Chebyshev, SpecialB::One) => {
            plan.push(term(FactorKind::Linear(0), 1));
            if n.is_even() {
                plan.push(term(FactorKind::Linear(4), 1));
            }
            for &k in divs.iter().filter(|&&k| k > 2) {
                plan.push(term(FactorKind::Psi { index: k, shift: 2 }, 2));
            }
        }
        (ChainType::Chebyshev, SpecialB::MinusOne) => {
            if n.is_odd() {
                plan.push(term(FactorKind::Linear(0), 1));
            }
            for &k in divs.iter().filter(|&&k| k > 1 && (n / k).is_odd()) {
                plan.push(term(FactorKind::Psi { index: 2 * k, shift: -2 }, 2));
            }
        }
        (ChainType::Chebyshev, SpecialB::Half) => {
            for &k in divs.iter().filter(|&&k| gcd(n / k, 6) == 1) {
                plan.push(term(FactorKind::Psi { index: 6 * k, shift: 1 }, 1));
            }
        }
        (ChainType::Chebyshev, SpecialB::MinusHalf) => {
            for &k in divs.iter().filter(|&&k| gcd(n / k, 3) == 1) {
                plan.push(term(FactorKind::Psi { index: 3 * k, shift: -1 }, 1));
            }
        }
        (ChainType::Monomial, SpecialB::One) => {
            for &k in &divs {
                plan.push(term(FactorKind::Phi { index: k, shift: 1 }, 1));
            }
        }
        (ChainType::Monomial, SpecialB::MinusOne) => {
            for &k in divisors(2 * n)?.iter().filter(|&&k| (2 * n / k).is_odd()) {
                plan.push(term(FactorKind::Phi { index: k, shift: -1 }, 1));
            }
        }
        (ChainType::Monomial, _) => return Err(Error::UnsupportedParameter(b.to_string())),
    }
    Ok(plan)
}

/// `Σ mult·deg` over a plan.
pub fn plan_degree(plan: &[FactorTerm]) -> Result<u64> {
    plan.iter()
        .try_fold(0u64, |acc, t| Ok(acc + u64::from(t.mult) * t.kind.degree()?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly<Integer>,
    pub mult: u32,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<Factor>,
}

impl Factorization {
    fn from_plan(plan: &[FactorTerm]) -> Result<Self> {
        let factors = plan
            .iter()
            .map(|t| {
                Ok(Factor {
                    poly: t.kind.poly()?,
                    mult: t.mult,
                    label: t.kind.to_string(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            unit: Rational::one(),
            factors,
        })
    }

    /// `unit · Π poly^mult`
    pub fn expand(&self) -> Poly<Rational> {
        let product = self
            .factors
            .iter()
            .fold(Poly::<Integer>::one(), |acc, f| &acc * &f.poly.pow(f.mult));
        product.to_rational().scale(&self.unit)
    }

    /// Exact certificate against the polynomial that was factored.
    pub fn certifies(&self, target: &Poly<Rational>) -> bool {
        self.factors.iter().all(|f| f.poly.is_monic()) && self.expand() == *target
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|f| f.mult as usize * f.poly.degree().unwrap_or(0))
            .sum()
    }
}

/// Factorization of `2T_n(x/2 + b) − 2b` for `b ∈ {0, ±1, ±1/2}`.
pub fn factor_cheb_chain(b: &Rational, n: u64) -> Result<Factorization> {
    Factorization::from_plan(&factor_plan(ChainType::Chebyshev, b, n)?)
}

/// Factorization of `(x + b)^n − b` for `b = ±1`.
pub fn factor_mono_chain(b: &Rational, n: u64) -> Result<Factorization> {
    Factorization::from_plan(&factor_plan(ChainType::Monomial, b, n)?)
}

/// The chain that [`factor_plan`] factors: `a = 1/2` or `a = 1`.
pub fn factored_chain(ctype: ChainType, b: &Rational) -> Result<ChainSpec> {
    let a = match ctype {
        ChainType::Chebyshev => rat(1, 2),
        ChainType::Monomial => int(1),
    };
    ChainSpec::new(ctype, a, b.clone())
}

/// Outcome of the closed-form gcd tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GcdClosed {
    /// `gcd(f_m, f_n)` is `f_d` up to a unit.
    Member(usize),
    Coprime,
}

impl GcdClosed {
    /// The monic gcd inside the given chain.
    pub fn to_poly(self, spec: &ChainSpec) -> Result<Poly<Rational>> {
        match self {
            Self::Member(d) => Ok(spec.member(d)?.monic()),
            Self::Coprime => Ok(Poly::one()),
        }
    }
}

/// `gcd(f_m, f_n)` by table lookup, for either chain type and any `a`.
pub fn gcd_closed(ctype: ChainType, b: &Rational, m: usize, n: usize) -> Result<GcdClosed> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("chain indices must be positive".into()));
    }
    let d = m.gcd(&n);
    let (m1, n1) = (m / d, n / d);
    let both_coprime_to = |k: usize| m1.gcd(&k) == 1 && n1.gcd(&k) == 1;
    let special = SpecialB::classify(b);
    let holds = match ctype {
        ChainType::Chebyshev => match special {
            Some(SpecialB::One) => true,
            Some(SpecialB::Zero | SpecialB::MinusOne) => both_coprime_to(2),
            Some(SpecialB::Half) => both_coprime_to(6),
            Some(SpecialB::MinusHalf) => both_coprime_to(3),
            None => m == n,
        },
        ChainType::Monomial => match special {
            // f_k = a^{k−1}x^k
            Some(SpecialB::Zero) => return Ok(GcdClosed::Member(m.min(n))),
            Some(SpecialB::One) => true,
            Some(SpecialB::MinusOne) => both_coprime_to(2),
            _ => m == n,
        },
    };
    Ok(if holds {
        GcdClosed::Member(d)
    } else {
        GcdClosed::Coprime
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootDescriptor {
    /// Closed form, e.g. `2cos((acos(1)+2*1*pi)/4)`.
    pub form: String,
    pub value: Complex64,
    /// Flagged as a repeated root.
    pub multiple: bool,
}

/// The `n` roots of `T_n(x/2) − b` for `b ∈ ½ℤ`, listed by index `i`.
pub fn shifted_cheb_roots(b: &Rational, n: usize) -> Result<Vec<RootDescriptor>> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if !(b * int(2)).is_integer() {
        return Err(Error::InvalidArgument(format!("{b} is not in (1/2)Z")));
    }
    let bf = b.to_f64().unwrap_or(f64::NAN);
    let nf = n as f64;
    let pi = std::f64::consts::PI;
    let roots = if bf.abs() <= 1.0 {
        let theta = bf.acos();
        (0..n)
            .map(|i| {
                let multiple = match () {
                    _ if *b == int(1) => i != 0 && 2 * i != n,
                    _ if *b == int(-1) => 2 * i + 1 != n,
                    _ => false,
                };
                RootDescriptor {
                    form: format!("2cos((acos({b})+2*{i}*pi)/{n})"),
                    value: Complex64::new(2.0 * ((theta + 2.0 * i as f64 * pi) / nf).cos(), 0.0),
                    multiple,
                }
            })
            .collect()
    } else {
        let big = (bf + (bf * bf - 1.0).sqrt()).abs();
        let (r, r_inv) = (big.powf(1.0 / nf), big.powf(-1.0 / nf));
        (0..n)
            .map(|i| {
                let (phase, form) = if bf > 1.0 {
                    (2.0 * pi * i as f64 / nf, format!("B^(1/{n})z_{n}^{i}+B^(-1/{n})z_{n}^(-{i})"))
                } else {
                    let j = 2 * i + 1;
                    (
                        pi * j as f64 / nf,
                        format!("|B|^(1/{n})z_{}^{j}+|B|^(-1/{n})z_{}^(-{j})", 2 * n, 2 * n),
                    )
                };
                let z = Complex64::from_polar(1.0, phase);
                RootDescriptor {
                    form,
                    value: r * z + r_inv / z,
                    multiple: false,
                }
            })
            .collect()
    };
    Ok(roots)
}

/// `|T_n(x/2) − b|` in double precision.
pub fn shifted_cheb_residual(b: &Rational, n: usize, x: Complex64) -> f64 {
    (first_kind_f64(n, x / 2.0) - b.to_f64().unwrap_or(f64::NAN)).norm()
}

/// `T_n(x/2) − b` over ℚ.
pub fn shifted_cheb_poly(b: &Rational, n: usize) -> Poly<Rational> {
    let half_x = Poly::monomial(rat(1, 2), 1);
    &cheb(ChebKind::First, n).compose(&half_x) - &Poly::constant(b.clone())
}

fn int_divisors(c: &Integer) -> Result<Vec<Integer>> {
    let v = c
        .abs()
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("constant term {c} too large")))?;
    Ok(divisors(v)?
        .into_iter()
        .flat_map(|d| [Integer::from(d), -Integer::from(d)])
        .collect())
}

/// Irreducibility over ℚ of a monic integer polynomial of degree at most 4,
/// by exhausting rational roots and monic quadratic splittings.
pub fn is_irreducible_small(f: &Poly<Integer>) -> Result<bool> {
    let deg = f.degree().ok_or(Error::WrongDegree {
        expected: 1,
        found: None,
    })?;
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if deg > 4 {
        return Err(Error::WrongDegree {
            expected: 4,
            found: Some(deg),
        });
    }
    if deg <= 1 {
        return Ok(deg == 1);
    }
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Ok(false);
    }
    let divs = int_divisors(&c0)?;
    if divs.iter().any(|r| f.eval(r).is_zero()) {
        return Ok(false);
    }
    if deg < 4 {
        return Ok(true);
    }
    // (x² + px + q)(x² + rx + s) with qs = c0, p + r = c3,
    // q + s + pr = c2, ps + qr = c1.
    let (c1, c2, c3) = (f.coeff(1), f.coeff(2), f.coeff(3));
    for q in &divs {
        let s = &c0 / q;
        // p² − c3·p + (c2 − q − s) = 0
        let disc: Integer = &c3 * &c3 - (&c2 - q - &s) * 4;
        if disc.is_negative() {
            continue;
        }
        let root = disc.sqrt();
        if &root * &root != disc {
            continue;
        }
        for two_p in [&c3 + &root, &c3 - &root] {
            if two_p.is_odd() {
                continue;
            }
            let p = two_p / 2;
            let r = &c3 - &p;
            if &p * &s + q * &r == c1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> Poly<Integer> {
        Poly::from_i64s(c)
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), z(&[-1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), z(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), z(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn cyclotomic_degrees_and_product() {
        for n in 1..=60u64 {
            let phi = cyclotomic(n).unwrap();
            assert!(phi.is_monic());
            assert_eq!(phi.degree(), Some(euler_phi(n).unwrap() as usize));
            let product = divisors(n)
                .unwrap()
                .into_iter()
                .fold(Poly::<Integer>::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
            let mut expected = vec![Integer::zero(); n as usize + 1];
            expected[0] = -Integer::one();
            expected[n as usize] = Integer::one();
            assert_eq!(product, Poly::new(expected));
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(3).unwrap().poly, z(&[1, 1]));
        assert_eq!(psi(5).unwrap().poly, z(&[-1, 1, 1]));
        assert_eq!(psi(12).unwrap().poly, z(&[-3, 0, 1]));
        assert_eq!(psi(1).unwrap().poly, z(&[-2, 1]));
        assert_eq!(psi(2).unwrap().poly, z(&[2, 1]));
        assert_eq!(psi(4).unwrap().poly, z(&[0, 1]));
    }

    #[test]
    fn psi_soundness() {
        for n in 1..=60u64 {
            let p = psi(n).unwrap();
            assert!(p.poly.is_monic());
            if n >= 3 {
                assert_eq!(p.degree() as u64, euler_phi(n).unwrap() / 2);
            }
            let root = 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos();
            assert!(p.eval_numeric(root).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn psi_recovers_cyclotomic() {
        // x^m · Ψ_n(x + 1/x) = Φ_n(x)
        for n in 3..=40u64 {
            let p = psi(n).unwrap();
            let (laurent, shift) = crate::chebyshev::at_t_plus_inverse(&p.poly);
            assert_eq!(shift, p.degree());
            assert_eq!(laurent, cyclotomic(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn psi_small_degree_irreducible() {
        for n in 1..=60u64 {
            let p = psi(n).unwrap();
            if p.degree() <= 4 {
                for s in [-2, -1, 0, 1, 2] {
                    let shifted = p.poly.shift(&Integer::from(s));
                    assert!(is_irreducible_small(&shifted).unwrap(), "n = {n}, s = {s}");
                }
            }
        }
    }

    #[test]
    fn irreducibility_checker() {
        assert!(!is_irreducible_small(&z(&[4, 0, 0, 0, 1])).unwrap()); // (x²+2x+2)(x²−2x+2)
        assert!(is_irreducible_small(&z(&[-2, 0, 0, 0, 1])).unwrap());
        assert!(!is_irreducible_small(&z(&[-1, 0, 1])).unwrap());
        assert!(is_irreducible_small(&z(&[1, 1, 1])).unwrap());
        assert!(is_irreducible_small(&z(&[2, 3])).is_err());
        assert!(is_irreducible_small(&z(&[1, 0, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn c_poly_examples() {
        assert_eq!(c_poly(3, false).unwrap(), z(&[0, 1]));
        assert_eq!(c_poly(4, false).unwrap(), z(&[0, 4, 1]));
        assert_eq!(c_poly(4, true).unwrap(), z(&[1]));
        assert_eq!(c_poly(5, true).unwrap(), z(&[0, 1]));
    }

    #[test]
    fn factor_examples() {
        let f = factor_cheb_chain(&int(1), 3).unwrap();
        let labels: Vec<_> = f.factors.iter().map(|f| (f.label.as_str(), f.mult)).collect();
        assert_eq!(labels, vec![("x", 1), ("Psi_3(x+2)", 2)]);
        assert_eq!(f.factors[1].poly, z(&[3, 1]));

        let f = factor_cheb_chain(&int(1), 4).unwrap();
        assert_eq!(f.expand(), Poly::from_i64s(&[0, 16, 20, 8, 1]));

        let f = factor_cheb_chain(&int(0), 3).unwrap();
        let labels: Vec<_> = f.factors.iter().map(|f| f.label.clone()).collect();
        assert_eq!(labels, vec!["Psi_4(x)", "Psi_12(x)"]);
        assert_eq!(f.expand(), Poly::from_i64s(&[0, -3, 0, 1]));

        let f = factor_mono_chain(&int(1), 6).unwrap();
        assert_eq!(f.factors.len(), 4);
        let f = factor_mono_chain(&int(-1), 2).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].poly, z(&[2, -2, 1]));

        assert!(factor_cheb_chain(&int(2), 3).is_err());
        assert!(factor_mono_chain(&rat(1, 2), 3).is_err());
    }

    #[test]
    fn small_index_cases() {
        // n = 1 and n = 2 in every Chebyshev case, where several products are empty.
        for s in SpecialB::ALL {
            let b = s.value();
            let spec = factored_chain(ChainType::Chebyshev, &b).unwrap();
            for n in 1..=2u64 {
                let f = factor_cheb_chain(&b, n).unwrap();
                assert!(f.certifies(&spec.member(n as usize).unwrap()), "b = {b}, n = {n}");
            }
        }
        let f = factor_cheb_chain(&int(-1), 2).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].label, "Psi_4(x-2)");
    }

    #[test]
    fn certificates() {
        for s in SpecialB::ALL {
            let b = s.value();
            let spec = factored_chain(ChainType::Chebyshev, &b).unwrap();
            for n in 1..=30u64 {
                let f = factor_cheb_chain(&b, n).unwrap();
                assert!(f.certifies(&spec.member(n as usize).unwrap()), "b = {b}, n = {n}");
                assert_eq!(f.degree(), n as usize);
            }
        }
        for b in [int(1), int(-1)] {
            let spec = factored_chain(ChainType::Monomial, &b).unwrap();
            for n in 1..=30u64 {
                let f = factor_mono_chain(&b, n).unwrap();
                assert!(f.certifies(&spec.member(n as usize).unwrap()));
            }
        }
    }

    #[test]
    fn degree_bookkeeping() {
        for n in 1..=60u64 {
            for s in SpecialB::ALL {
                let plan = factor_plan(ChainType::Chebyshev, &s.value(), n).unwrap();
                assert_eq!(plan_degree(&plan).unwrap(), n);
            }
            for b in [int(1), int(-1)] {
                let plan = factor_plan(ChainType::Monomial, &b, n).unwrap();
                assert_eq!(plan_degree(&plan).unwrap(), n);
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_closed(ChainType::Chebyshev, &int(1), 4, 6).unwrap(), GcdClosed::Member(2));
        let spec = ChainSpec::chebyshev_canonical();
        assert_eq!(
            GcdClosed::Member(2).to_poly(&spec).unwrap(),
            Poly::from_i64s(&[0, 4, 1])
        );
        assert_eq!(gcd_closed(ChainType::Chebyshev, &int(0), 2, 4).unwrap(), GcdClosed::Coprime);
        assert_eq!(gcd_closed(ChainType::Monomial, &int(5), 3, 6).unwrap(), GcdClosed::Coprime);
    }

    #[test]
    fn gcd_matches_oracle() {
        let mut bs: Vec<Rational> = SpecialB::ALL.iter().map(|s| s.value()).collect();
        bs.extend([int(2), rat(-3, 2), rat(1, 3)]);
        for ctype in [ChainType::Chebyshev, ChainType::Monomial] {
            for a in [rat(1, 2), int(1), int(-3)] {
                for b in &bs {
                    let spec = ChainSpec::new(ctype, a.clone(), b.clone()).unwrap();
                    let f = spec.members(24);
                    for n in 2..=24 {
                        for m in 1..n {
                            let oracle = f[m - 1].gcd_monic(&f[n - 1]).unwrap();
                            let closed = gcd_closed(ctype, b, m, n).unwrap().to_poly(&spec).unwrap();
                            assert_eq!(closed, oracle, "{spec} m={m} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn root_examples() {
        let r = shifted_cheb_roots(&int(1), 2).unwrap();
        assert!((r[0].value.re - 2.0).abs() < 1e-12 && (r[1].value.re + 2.0).abs() < 1e-12);
        assert!(r.iter().all(|d| !d.multiple));

        let r = shifted_cheb_roots(&int(0), 2).unwrap();
        let s2 = 2f64.sqrt();
        assert!((r[0].value.re - s2).abs() < 1e-12 && (r[1].value.re + s2).abs() < 1e-12);

        let r = shifted_cheb_roots(&int(1), 4).unwrap();
        let values: Vec<f64> = r.iter().map(|d| d.value.re).collect();
        for (v, e) in values.iter().zip([2.0, 0.0, -2.0, 0.0]) {
            assert!((v - e).abs() < 1e-9);
        }
        assert_eq!(r.iter().filter(|d| d.multiple).count(), 2);
        assert!(shifted_cheb_roots(&rat(1, 3), 3).is_err());
    }

    #[test]
    fn root_soundness() {
        for twice_b in -8i64..=8 {
            let b = rat(twice_b, 2);
            for n in 1..=30usize {
                let roots = shifted_cheb_roots(&b, n).unwrap();
                assert_eq!(roots.len(), n);
                for r in &roots {
                    let res = shifted_cheb_residual(&b, n, r.value);
                    assert!(res < 1e-8, "b = {b}, n = {n}, {}: {res}", r.form);
                }
                let f = shifted_cheb_poly(&b, n);
                let repeated = f.gcd_monic(&f.derivative()).unwrap().degree().unwrap_or(0);
                let flagged = roots.iter().filter(|r| r.multiple).count();
                assert_eq!(flagged, 2 * repeated, "b = {b}, n = {n}");
            }
        }
    }
}
