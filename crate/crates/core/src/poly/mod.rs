//! Dense univariate polynomials.
//!
//! [`Poly<R>`] covers the characteristic-zero coefficient rings (ℤ via
//! [`Integer`], ℚ via [`Rational`]); [`FpPoly`] covers 𝔽p with a runtime
//! modulus. Coefficients are stored in ascending degree with no trailing
//! zeros, so the zero polynomial is the empty vector and has no degree.
//!
//! Everything here is deliberately schoolbook: this module is the
//! brute-force reference the closed-form results are compared against.

mod fp;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{parse_rational, PrimeField};
use crate::{Error, Integer, Rational, Result};

pub use fp::FpPoly;

/// Coefficient ring of a [`Poly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    /// Coefficients of the product of two nonempty coefficient slices.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &mul_ref(x, y);
            }
        }
        out
    }
}

/// Coefficient ring that is a field (division by nonzero elements).
pub trait FieldCoeff: Coeff + for<'a> DivAssign<&'a Self> {}

impl Coeff for Integer {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Coeff for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    // Clears denominators so the inner loop runs over ℤ.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (da, ia) = over_common_denominator(a);
        let (db, ib) = over_common_denominator(b);
        let den = da * db;
        Integer::convolve(&ia, &ib)
            .into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect()
    }
}

fn over_common_denominator(c: &[Rational]) -> (Integer, Vec<Integer>) {
    let den = c
        .iter()
        .fold(Integer::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let scaled = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (den, scaled)
}

impl FieldCoeff for Rational {}

fn mul_ref<R: Coeff>(a: &R, b: &R) -> R {
    let mut t = a.clone();
    t *= b;
    t
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> Poly<R> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    /// `c · x^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `a·x + b`
    pub fn linear(a: R, b: R) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| mul_ref(a, c)).collect())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))` by Horner accumulation.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc.add_constant(c);
        }
        acc
    }

    /// `self(x + s)`
    pub fn shift(&self, s: &R) -> Self {
        self.compose(&Self::linear(R::one(), s.clone()))
    }

    pub fn eval(&self, x0: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x0;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| mul_ref(c, &R::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    fn add_constant(&mut self, c: &R) {
        if self.coeffs.is_empty() {
            self.coeffs.push(c.clone());
        } else {
            self.coeffs[0] += c;
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl<F: FieldCoeff> Poly<F> {
    /// Euclidean division: `self = quot·den + rem` with `deg rem < deg den`.
    pub fn divrem(&self, den: &Self) -> Result<(Self, Self)> {
        let den_deg = den.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(num_deg) = self.degree().filter(|&d| d >= den_deg) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut lead_inv = F::one();
        lead_inv /= &den.coeffs[den_deg];
        let mut quot = vec![F::zero(); num_deg - den_deg + 1];
        for shift in (0..=num_deg - den_deg).rev() {
            let top = &rem[shift + den_deg];
            if top.is_zero() {
                continue;
            }
            let q = mul_ref(top, &lead_inv);
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[shift + j] -= &mul_ref(&q, d);
            }
            quot[shift] = q;
        }
        rem.truncate(den_deg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, den: &Self) -> Result<Self> {
        Ok(self.divrem(den)?.1)
    }

    /// `true` iff `den` divides `self` exactly.
    pub fn divides(den: &Self, num: &Self) -> Result<bool> {
        Ok(num.rem(den)?.is_zero())
    }

    /// Scalar multiple with leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let mut inv = F::one();
                inv /= lc;
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd_monic(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }
}

impl Poly<Rational> {
    /// The canonical text form: comma-separated ascending coefficients.
    pub fn to_csv(&self) -> String {
        csv(&self.coeffs)
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self::zero());
        }
        s.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// Exact conversion to ℤ[x]; fails on the first non-integral coefficient.
    pub fn to_integer(&self) -> Result<Poly<Integer>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.numer().clone())
                } else {
                    Err(Error::NotIntegral(c.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficientwise image in 𝔽p; every denominator must be prime to p.
    pub fn reduce_mod_p(&self, field: PrimeField) -> Result<FpPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| field.reduce_rational(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpPoly::new(field, coeffs))
    }
}

impl Poly<Integer> {
    pub fn to_rational(&self) -> Poly<Rational> {
        self.map(|c| Rational::from_integer(c.clone()))
    }

    pub fn to_csv(&self) -> String {
        csv(&self.coeffs)
    }

    pub fn reduce_mod_p(&self, field: PrimeField) -> FpPoly {
        FpPoly::new(field, self.coeffs.iter().map(|c| field.reduce_int(c)).collect())
    }

    /// Quotient by a monic divisor when the division is exact.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        let (q, r) = self.to_rational().divrem(&den.to_rational())?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "{den} does not divide {self} exactly"
            )));
        }
        q.to_integer()
    }
}

fn csv<T: fmt::Display>(coeffs: &[T]) -> String {
    coeffs
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl<R: Coeff> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", csv(&self.coeffs))
    }
}

/// Pretty form, highest degree first: `x^2+4x`, `1/2x^2-1`, `-x+3/2`.
impl<R: Coeff + Signed> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Coeff> Add<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;

    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl<R: Coeff> Sub<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;

    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Poly::new(coeffs)
    }
}

impl<R: Coeff> Mul<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        Poly::new(R::convolve(&self.coeffs, &rhs.coeffs))
    }
}

impl<R: Coeff> Neg for &Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Poly<R> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<R: Coeff> $tr<Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: Poly<R>) -> Poly<R> {
                (&self).$m(&rhs)
            }
        }
        impl<R: Coeff> $tr<&Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: &Poly<R>) -> Poly<R> {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<R: Coeff> Neg for Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Poly<R> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    type Q = Poly<Rational>;

    fn q(c: &[i64]) -> Q {
        Q::from_i64s(c)
    }

    #[test]
    fn ring_examples() {
        let xp1 = q(&[1, 1]);
        let xm1 = q(&[-1, 1]);
        assert_eq!(&xp1 * &xm1, q(&[-1, 0, 1]));
        assert_eq!(&xp1 + &Q::zero(), xp1);
        assert_eq!(&q(&[0, 4, 1]) * &Q::x(), q(&[0, 0, 4, 1]));
        assert_eq!(&xp1 - &xp1, Q::zero());
        assert_eq!(Q::zero().degree(), None);
        assert_eq!(q(&[0, 0, 0]).degree(), None);
        assert_eq!(q(&[3]).degree(), Some(0));
        assert_eq!(-q(&[1, -2]), q(&[-1, 2]));
    }

    #[test]
    fn compose_examples() {
        let sq = q(&[0, 0, 1]);
        let xp1 = q(&[1, 1]);
        assert_eq!(sq.compose(&xp1), q(&[1, 2, 1]));
        assert_eq!(xp1.compose(&sq), q(&[1, 0, 1]));
        let t2 = q(&[-1, 0, 2]);
        let t3 = q(&[0, -3, 0, 4]);
        let expected = q(&[-1, 0, 18, 0, -48, 0, 32]);
        assert_eq!(t2.compose(&t3), expected);
        assert_eq!(t3.compose(&t2), expected);
    }

    #[test]
    fn divrem_examples() {
        let (qu, r) = q(&[-1, 0, 1]).divrem(&q(&[-1, 1])).unwrap();
        assert_eq!((qu, r), (q(&[1, 1]), Q::zero()));
        let t4 = q(&[1, 0, -8, 0, 8]);
        let t2 = q(&[-1, 0, 2]);
        assert_eq!(t4.divrem(&t2).unwrap(), (q(&[-2, 0, 4]), q(&[-1])));
        let (qu, r) = q(&[0, 0, 1]).divrem(&q(&[0, 0, 0, 1])).unwrap();
        assert_eq!((qu, r), (Q::zero(), q(&[0, 0, 1])));
        assert_eq!(q(&[1]).divrem(&Q::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            q(&[-1, 0, 1]).gcd_monic(&q(&[-1, 1])).unwrap(),
            q(&[-1, 1])
        );
        // F_4 and F_6 share F_2 = x^2 + 4x.
        let f4 = q(&[0, 16, 20, 8, 1]);
        let f6 = q(&[0, 36, 105, 112, 54, 12, 1]);
        assert_eq!(f4.gcd_monic(&f6).unwrap(), q(&[0, 4, 1]));
        let p = q(&[2, 0, 6]);
        assert_eq!(p.gcd_monic(&p).unwrap(), p.monic());
        assert_eq!(Q::zero().gcd_monic(&Q::zero()), Err(Error::GcdOfZeros));
        assert_eq!(Q::zero().gcd_monic(&p).unwrap(), p.monic());
    }

    #[test]
    fn eval_derivative_reduce() {
        assert_eq!(q(&[0, 4, 1]).eval(&int(-2)), int(-4));
        let t3 = q(&[0, -3, 0, 4]);
        let u2 = q(&[-1, 0, 4]);
        assert_eq!(t3.derivative(), q(&[-3, 0, 12]));
        assert_eq!(t3.derivative(), u2.scale(&int(3)));
        let f3 = q(&[0, 9, 6, 1]);
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f3.reduce_mod_p(f).unwrap(), FpPoly::from_i64s(f, &[0, 0, 0, 1]));
        let half = Q::new(vec![rat(1, 3), int(1)]);
        assert!(matches!(
            half.reduce_mod_p(f),
            Err(Error::DenominatorDivisibleByP { .. })
        ));
    }

    #[test]
    fn pretty_and_csv() {
        assert_eq!(q(&[0, 4, 1]).to_string(), "x^2+4x");
        assert_eq!(q(&[0, 4, 1]).to_csv(), "0,4,1");
        let p = Q::new(vec![int(-1), int(0), rat(1, 2)]);
        assert_eq!(p.to_string(), "1/2x^2-1");
        assert_eq!(Q::from_csv(&p.to_csv()).unwrap(), p);
        assert_eq!(q(&[3, -1]).to_string(), "-x+3");
        assert_eq!(Q::zero().to_string(), "0");
        assert_eq!(Q::from_csv("").unwrap(), Q::zero());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Q> {
        prop::collection::vec(arb_rational(), 0..=max_len).prop_map(Q::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn divrem_reconstructs(num in arb_poly(41), den in arb_poly(41)) {
            prop_assume!(!den.is_zero());
            let (qu, r) = num.divrem(&den).unwrap();
            prop_assert_eq!(&(&qu * &den) + &r, num);
            prop_assert!(r.degree() < den.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(8), b in arb_poly(8), c in arb_poly(4)) {
            let a = &a * &c;
            let b = &b * &c;
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd_monic(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&g).unwrap().is_zero());
            prop_assert!(b.rem(&g).unwrap().is_zero());
            if !c.is_zero() {
                prop_assert!(g.rem(&c.monic()).unwrap().is_zero());
            }
        }

        #[test]
        fn compose_is_associative(a in arb_poly(6), b in arb_poly(6), c in arb_poly(6)) {
            prop_assert_eq!(a.compose(&b.compose(&c)), a.compose(&b).compose(&c));
        }

        #[test]
        fn derivative_is_linear_and_leibniz(a in arb_poly(8), b in arb_poly(8), s in arb_rational()) {
            prop_assert_eq!((&a + &b.scale(&s)).derivative(), &a.derivative() + &b.derivative().scale(&s));
            prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
        }

        #[test]
        fn product_degree_adds(a in arb_poly(10), b in arb_poly(10)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn product_respects_evaluation(a in arb_poly(10), b in arb_poly(10), x0 in arb_rational()) {
            prop_assert_eq!((&a * &b).eval(&x0), a.eval(&x0) * b.eval(&x0));
            let ints = |p: &Q| p.map(|c| c.numer().clone());
            let (ia, ib) = (ints(&a), ints(&b));
            prop_assert_eq!((&ia * &ib).to_rational(), &ia.to_rational() * &ib.to_rational());
        }
    }
}
