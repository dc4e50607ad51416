//! Exact scalars and the elementary number theory the theorems lean on.
//!
//! Big integers and rationals come from `num-bigint` / `num-rational`;
//! `BigRational` is always reduced with a positive denominator, so
//! structural equality is value equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Serde adapter storing a rational as its `"p/q"` string form.
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Euler's totient, by trial-division factorization of `n`.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("euler_phi(0) is undefined".into()));
    }
    let mut m = n;
    let mut phi = n;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            while m % q == 0 {
                m /= q;
            }
            phi -= phi / q;
        }
        q += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    Ok(phi)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("divisors(0) is undefined".into()));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest `f >= 1` with `p^f ≡ 1 (mod n)`.
pub fn mult_order(p: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "multiplicative order needs n >= 2, got {n}"
        )));
    }
    if gcd(p % n, n) != 1 {
        return Err(Error::NotCoprime { p, n });
    }
    let base = p % n;
    let mut acc = base;
    let mut f = 1;
    while acc != 1 {
        acc = ((acc as u128 * base as u128) % n as u128) as u64;
        f += 1;
    }
    Ok(f)
}

/// Deterministic trial division; fine for the desk-scale moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest modulus accepted by [`PrimeField::new`]; keeps products of two
/// residues inside `u64`.
pub const MAX_FIELD_MODULUS: u64 = 1 << 31;

/// The field 𝔽p for a checked prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_FIELD_MODULUS {
            return Err(Error::InvalidArgument(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, value: u64) -> FpElem {
        FpElem {
            value: value % self.p,
            p: self.p,
        }
    }

    /// Image of an integer under ℤ → 𝔽p.
    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.iter_u64_digits().next().unwrap_or(0)
    }

    /// Image of a p-integral rational under ℤ_(p) → 𝔽p.
    pub fn reduce_rational(&self, r: &Rational) -> Result<u64> {
        let den = self.reduce_int(r.denom());
        if den == 0 {
            return Err(Error::DenominatorDivisibleByP {
                den: r.denom().to_string(),
                p: self.p,
            });
        }
        let num = self.reduce_int(r.numer());
        Ok(num * self.inv(den) % self.p)
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Inverse by Fermat; `a` must be nonzero.
    pub(crate) fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        pow_mod(a, self.p - 2, self.p)
    }
}

/// A scalar of 𝔽p tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    p: u64,
}

impl FpElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    fn brute_order(p: u64, n: u64) -> u64 {
        (1..=n).find(|&f| pow_mod(p, f, n) == 1).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), brute_phi(12));
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(7).unwrap(), 6);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn phi_matches_brute_force_and_divisor_sum() {
        for n in 1..=500 {
            assert_eq!(euler_phi(n).unwrap(), brute_phi(n), "n = {n}");
            let s: u64 = divisors(n)
                .unwrap()
                .iter()
                .map(|&d| euler_phi(d).unwrap())
                .sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(5, 12).unwrap(), 2);
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        for p in [3, 5, 7, 11, 101] {
            assert_eq!(mult_order(p, 2).unwrap(), 1);
        }
        assert_eq!(mult_order(2, 4), Err(Error::NotCoprime { p: 2, n: 4 }));
        assert!(mult_order(3, 1).is_err());
    }

    #[test]
    fn order_is_minimal() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for n in 2..200 {
                if gcd(p, n) != 1 {
                    continue;
                }
                let f = mult_order(p, n).unwrap();
                assert_eq!(f, brute_order(p, n));
                assert_eq!(pow_mod(p, f, n), 1);
                assert!((1..f).all(|e| pow_mod(p, e, n) != 1));
            }
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(97).unwrap(), vec![1, 97]);
        assert_eq!(divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert!(divisors(0).is_err());
        for n in 1..300u64 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n).unwrap(), brute);
        }
    }

    #[test]
    fn rational_parsing_and_printing() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4/-8").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("0/5").unwrap(), int(0));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rat(-3, 6).to_string(), "-1/2");
        assert_eq!(rat(8, 4).to_string(), "2");
        assert_eq!(rat(0, 4).to_string(), "0");
        let big = "123456789012345678901234567891/7";
        assert_eq!(parse_rational(big).unwrap().to_string(), big);
    }

    fn small_rational() -> impl proptest::strategy::Strategy<Value = Rational> {
        use proptest::prelude::*;
        (-50i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
    }

    proptest::proptest! {
        #[test]
        fn rationals_form_a_field(x in small_rational(), y in small_rational()) {
            proptest::prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                proptest::prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            let z = &x * &y;
            proptest::prop_assert!(z.denom() > &BigInt::zero());
            proptest::prop_assert_eq!(z.numer().gcd(z.denom()), BigInt::one());
        }
    }

    #[test]
    fn prime_fields() {
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.elem(10).value(), 3);
        assert_eq!(f.reduce_int(&BigInt::from(-1)), 6);
        assert_eq!(f.reduce_rational(&rat(1, 2)).unwrap(), 4);
        assert!(f.reduce_rational(&rat(1, 14)).is_err());
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
