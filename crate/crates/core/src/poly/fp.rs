use std::fmt;

use crate::exactnum::{FpElem, PrimeField};
use crate::{Error, Result};

/// Dense polynomial over 𝔽p. Residues are stored as `u64` in `[0, p)`.
///
/// Binary operations check that both operands share a modulus and return
/// [`Error::ModulusMismatch`] otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Reduces every entry mod p and trims trailing zeros.
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        let mut poly = Self {
            field,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn from_i64s(field: PrimeField, coeffs: &[i64]) -> Self {
        let p = field.modulus() as i64;
        Self::new(
            field,
            coeffs.iter().map(|&c| c.rem_euclid(p) as u64).collect(),
        )
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::new(field, vec![1])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn monomial(field: PrimeField, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: other.modulus(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self {
            field: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = c % f.modulus();
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check(inner)?;
        Ok(self.compose_raw(inner))
    }

    pub fn divrem(&self, den: &Self) -> Result<(Self, Self)> {
        self.check(den)?;
        self.divrem_raw(den)
    }

    pub fn rem(&self, den: &Self) -> Result<Self> {
        Ok(self.divrem(den)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc)),
        }
    }

    pub fn gcd_monic(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem_raw(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, i as u64 % f.modulus()))
                .collect(),
        )
    }

    pub fn eval(&self, x0: FpElem) -> Result<FpElem> {
        if x0.modulus() != self.modulus() {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: x0.modulus(),
            });
        }
        let f = self.field;
        let acc = self
            .coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x0.value()), c));
        Ok(f.elem(acc))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_raw(&base);
            }
        }
        acc
    }

    /// `self^k mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut k: u64, modulus: &Self) -> Result<Self> {
        self.check(modulus)?;
        let mut base = self.divrem_raw(modulus)?.1;
        let mut acc = Self::one(self.field).divrem_raw(modulus)?.1;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_raw(&base).divrem_raw(modulus)?.1;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_raw(&base).divrem_raw(modulus)?.1;
            }
        }
        Ok(acc)
    }

    /// `true` iff `gcd(f, f') = 1`. Nonconstant `f` with `f' = 0` is a p-th power.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd_monic(&d).is_ok_and(|g| g.is_one())
            }
        }
    }

    pub(crate) fn add_raw(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.get(i), other.get(i)))
            .collect();
        Self::new(f, coeffs)
    }

    pub(crate) fn sub_raw(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.get(i), other.get(i)))
            .collect();
        Self::new(f, coeffs)
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let p = self.modulus();
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::new(self.field, out)
    }

    pub(crate) fn compose_raw(&self, inner: &Self) -> Self {
        let f = self.field;
        let mut acc = Self::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_raw(inner).add_raw(&Self::new(f, vec![c]));
        }
        acc
    }

    pub(crate) fn divrem_raw(&self, den: &Self) -> Result<(Self, Self)> {
        let f = self.field;
        let den_deg = den.degree().ok_or(Error::DivisionByZero)?;
        let Some(num_deg) = self.degree().filter(|&d| d >= den_deg) else {
            return Ok((Self::zero(f), self.clone()));
        };
        let lead_inv = f.inv(den.coeffs[den_deg]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; num_deg - den_deg + 1];
        for shift in (0..=num_deg - den_deg).rev() {
            let top = rem[shift + den_deg];
            if top == 0 {
                continue;
            }
            let q = f.mul(top, lead_inv);
            for (j, &d) in den.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(q, d));
            }
            quot[shift] = q;
        }
        rem.truncate(den_deg);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    fn get(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "FpPoly[{}; mod {}]", cs.join(","), self.modulus())
    }
}

/// Pretty form with residues in `[0, p)`: `x^3+x+1`.
impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if i == 0 || c != 1 {
                write!(f, "{c}")?;
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

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = FpPoly::x(fp(2));
        let b = FpPoly::x(fp(3));
        let err = Err(Error::ModulusMismatch { left: 2, right: 3 });
        assert_eq!(a.add(&b), err);
        assert_eq!(a.mul(&b), err);
        assert_eq!(a.compose(&b), err);
        assert_eq!(a.divrem(&b).map(|_| ()), Err(Error::ModulusMismatch { left: 2, right: 3 }));
        assert!(a.eval(fp(3).elem(1)).is_err());
    }

    #[test]
    fn small_arithmetic() {
        let f = fp(5);
        let a = FpPoly::from_i64s(f, &[3, 1]);
        assert_eq!(a.mul(&a).unwrap(), FpPoly::from_i64s(f, &[4, 1, 1]));
        assert_eq!(a.eval(f.elem(2)).unwrap().value(), 0);
        assert_eq!(FpPoly::from_i64s(f, &[-1]).coeffs(), &[4]);
        assert_eq!(a.sub(&a).unwrap(), FpPoly::zero(f));
        let f2 = fp(2);
        assert_eq!(FpPoly::from_i64s(f2, &[0, 0, 1, 0, 1]).derivative(), FpPoly::zero(f2));
        assert_eq!(FpPoly::from_i64s(f2, &[1, 1, 0, 1]).to_string(), "x^3+x+1");
        assert!(FpPoly::from_i64s(f2, &[1, 1, 0, 1]).is_squarefree());
        assert!(!FpPoly::from_i64s(f2, &[0, 0, 1]).is_squarefree());
        assert_eq!(FpPoly::zero(f).divrem(&FpPoly::zero(f)).map(|_| ()), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_mod_matches_plain_power() {
        let f = fp(3);
        let m = FpPoly::from_i64s(f, &[1, 2, 0, 1, 1]);
        let x = FpPoly::x(f);
        for k in 0..40 {
            assert_eq!(x.pow_mod(k, &m).unwrap(), x.pow(k).rem(&m).unwrap());
        }
    }

    fn arb_fp_poly(p: u64, max_len: usize) -> impl Strategy<Value = FpPoly> {
        prop::collection::vec(0..p, 0..=max_len).prop_map(move |c| FpPoly::new(fp(p), c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn divrem_reconstructs_mod_p(
            (num, den) in prop::sample::select(vec![2u64, 3, 5, 7, 11, 97])
                .prop_flat_map(|p| (arb_fp_poly(p, 41), arb_fp_poly(p, 41)))
        ) {
            prop_assume!(!den.is_zero());
            let (q, r) = num.divrem(&den).unwrap();
            prop_assert_eq!(q.mul(&den).unwrap().add(&r).unwrap(), num);
            prop_assert!(r.degree() < den.degree());
        }

        #[test]
        fn gcd_divides_both_mod_p(a in arb_fp_poly(7, 10), b in arb_fp_poly(7, 10)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd_monic(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&g).unwrap().is_zero());
            prop_assert!(b.rem(&g).unwrap().is_zero());
        }
    }
}
