//! Reductions modulo a prime: squarefree parts, distinct-degree factor shapes,
//! the shapes predicted for `Φ_n` and `Ψ_n`, and brute-force enumeration of
//! polynomials commuting with a fixed one.

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::ChainSpec;
use crate::exactnum::{euler_phi, gcd, mult_order, pow_mod, PrimeField};
use crate::factor::{cyclotomic, psi};
use crate::{Error, FpPoly, Result};

/// Largest `p^{k+1}` that [`enumerate_commuting`] will walk.
pub const ENUMERATION_BUDGET: u128 = 1_000_000;

/// Largest `p^r` that [`frobenius_identity`] will expand.
pub const MAX_FROBENIUS_DEGREE: u64 = 1 << 12;

/// Multiset of irreducible factor degrees as sorted `(degree, count)` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FactorShape {
    pub entries: Vec<(usize, usize)>,
}

impl FactorShape {
    pub fn new(mut entries: Vec<(usize, usize)>) -> Self {
        entries.retain(|&(_, c)| c > 0);
        entries.sort_unstable();
        Self { entries }
    }

    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|(d, c)| d * c).sum()
    }
}

impl std::fmt::Display for FactorShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(d, c)| format!("{c}x deg {d}"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Product of the distinct monic irreducible factors of `f`.
pub fn squarefree_part(f: &FpPoly) -> Result<FpPoly> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("squarefree part of zero".into()));
    }
    radical(&f.monic())
}

fn radical(f: &FpPoly) -> Result<FpPoly> {
    if f.degree() == Some(0) {
        return Ok(FpPoly::one(f.field()));
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p) = g(x)^p over 𝔽p
        let p = f.modulus() as usize;
        let g: Vec<u64> = f.coeffs().iter().step_by(p).copied().collect();
        return radical(&FpPoly::new(f.field(), g));
    }
    let c = f.gcd_monic(&df)?;
    let (w, _) = f.divrem(&c)?;
    let rc = radical(&c)?;
    let shared = w.gcd_monic(&rc)?;
    let (rest, _) = rc.divrem(&shared)?;
    Ok(w.mul(&rest)?.monic())
}

/// Distinct-degree factorization shape of a monic squarefree polynomial.
pub fn ddf(f: &FpPoly) -> Result<FactorShape> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("ddf of zero".into()));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let field = f.field();
    let x = FpPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut entries = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree().filter(|&e| e > 0) {
        d += 1;
        if 2 * d > deg {
            entries.push((deg, 1));
            break;
        }
        h = h.pow_mod(field.modulus(), &rest)?;
        let g = rest.gcd_monic(&h.sub(&x)?)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            entries.push((d, gd / d));
            rest = rest.divrem(&g)?.0;
            h = h.rem(&rest)?;
        }
    }
    Ok(FactorShape::new(entries))
}

fn coprime_field(p: u64, n: u64) -> Result<PrimeField> {
    let field = PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("index must be positive".into()));
    }
    if gcd(p, n) != 1 {
        return Err(Error::NotCoprime { p, n });
    }
    Ok(field)
}

/// `φ(n)/f` irreducible factors of degree `f = ord_n(p)`.
pub fn predict_phi_shape(p: u64, n: u64) -> Result<FactorShape> {
    coprime_field(p, n)?;
    if n == 1 {
        return Ok(FactorShape::new(vec![(1, 1)]));
    }
    let f = mult_order(p, n)?;
    let phi = euler_phi(n)?;
    Ok(FactorShape::new(vec![(f as usize, (phi / f) as usize)]))
}

/// With `f = ord_n(p)`: `φ(n)/f` factors of degree `f/2` when `f` is even and
/// `p^{f/2} ≡ −1 (mod n)`, otherwise `φ(n)/(2f)` factors of degree `f`.
pub fn predict_psi_shape(p: u64, n: u64) -> Result<FactorShape> {
    coprime_field(p, n)?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "psi shape prediction needs n >= 3, got {n}"
        )));
    }
    let f = mult_order(p, n)?;
    let phi = euler_phi(n)?;
    let entries = if f % 2 == 0 && pow_mod(p, f / 2, n) == n - 1 {
        vec![((f / 2) as usize, (phi / f) as usize)]
    } else {
        vec![(f as usize, (phi / (2 * f)) as usize)]
    };
    Ok(FactorShape::new(entries))
}

/// DDF shape of `Φ_n mod p`.
pub fn measure_phi_shape(p: u64, n: u64) -> Result<FactorShape> {
    let field = coprime_field(p, n)?;
    ddf(&cyclotomic(n)?.reduce_mod_p(field))
}

/// DDF shape of `Ψ_n mod p`.
pub fn measure_psi_shape(p: u64, n: u64) -> Result<FactorShape> {
    let field = coprime_field(p, n)?;
    ddf(&psi(n)?.poly.reduce_mod_p(field))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerIdentity {
    /// `Φ_{p^r n} ≡ Φ_n^{φ(p^r)}`
    pub phi: bool,
    /// `Ψ_{p^r n} ≡ Ψ_n^{φ(p^r)}`
    pub psi: bool,
}

/// Both sides of the `p`-power identities computed over 𝔽p and compared.
pub fn phi_psi_power_identity(p: u64, r: u32, n: u64) -> Result<PowerIdentity> {
    let field = coprime_field(p, n)?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let pr = p
        .checked_pow(r)
        .and_then(|q| q.checked_mul(n))
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{r}*{n} overflows")))?;
    let e = euler_phi(pr / n)?;
    let phi = cyclotomic(pr)?.reduce_mod_p(field) == cyclotomic(n)?.reduce_mod_p(field).pow(e);
    let psi_ok = psi(pr)?.poly.reduce_mod_p(field) == psi(n)?.poly.reduce_mod_p(field).pow(e);
    Ok(PowerIdentity { phi, psi: psi_ok })
}

/// `G_n`: the member `F_n = 2T_n(x/2 + 1) − 2` reduced mod `p`.
pub fn g_member(p: u64, n: usize) -> Result<FpPoly> {
    let field = PrimeField::new(p)?;
    let f = ChainSpec::chebyshev_canonical().member(n)?;
    Ok(f.to_integer()?.reduce_mod_p(field))
}

/// `F_{p^r} ≡ F̃_{p^r} ≡ x^{p^r} (mod p)`.
pub fn frobenius_identity(p: u64, r: u32) -> Result<bool> {
    let field = PrimeField::new(p)?;
    let q = p
        .checked_pow(r)
        .filter(|&q| r > 0 && q <= MAX_FROBENIUS_DEGREE)
        .ok_or(Error::BudgetExceeded {
            size: u128::from(p).saturating_pow(r),
            budget: u128::from(MAX_FROBENIUS_DEGREE),
        })? as usize;
    let target = FpPoly::monomial(field, 1, q);
    for spec in [ChainSpec::chebyshev_canonical(), ChainSpec::monomial_canonical()] {
        let reduced = spec.member(q)?.to_integer()?.reduce_mod_p(field);
        if reduced != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every `g` of degree exactly `k` over 𝔽p with `g∘f = f∘g`, in increasing
/// order of the base-`p` coefficient word.
pub fn enumerate_commuting(f: &FpPoly, k: usize) -> Result<Vec<FpPoly>> {
    let field = f.field();
    let p = u128::from(field.modulus());
    let size = u32::try_from(k + 1)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .unwrap_or(u128::MAX);
    if size > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            size,
            budget: ENUMERATION_BUDGET,
        });
    }
    let p = field.modulus();
    let lower = p.pow(k as u32);
    let found = (0..(p - 1) * lower)
        .into_par_iter()
        .filter_map(|idx| {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut rest = idx % lower;
            for _ in 0..k {
                coeffs.push(rest % p);
                rest /= p;
            }
            coeffs.push(idx / lower + 1);
            let g = FpPoly::new(field, coeffs);
            (g.compose_raw(f) == f.compose_raw(&g)).then_some(g)
        })
        .collect();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::is_prime;
    use proptest::prelude::*;

    fn fp(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64s(PrimeField::new(p).unwrap(), c)
    }

    fn shape(e: &[(usize, usize)]) -> FactorShape {
        FactorShape::new(e.to_vec())
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&fp(2, &[0, 0, 1])).unwrap(), fp(2, &[0, 1]));
        // (x+3)^2·x
        let f = fp(5, &[0, 9, 6, 1]);
        assert_eq!(squarefree_part(&f).unwrap(), fp(5, &[0, 3, 1]));
        assert_eq!(squarefree_part(&fp(2, &[0, 0, 1, 0, 1])).unwrap(), fp(2, &[0, 1, 1]));
        assert!(squarefree_part(&fp(3, &[])).is_err());
    }

    #[test]
    fn squarefree_mixed_multiplicities() {
        // x^3·(x+1)^4·(x^2+1) over 𝔽3: multiplicities both divisible and not by p
        let x = fp(3, &[0, 1]);
        let x1 = fp(3, &[1, 1]);
        let q = fp(3, &[1, 0, 1]);
        let f = x.pow(3).mul(&x1.pow(4)).unwrap().mul(&q).unwrap();
        let expected = x.mul(&x1).unwrap().mul(&q).unwrap();
        assert_eq!(squarefree_part(&f).unwrap(), expected);
        assert!(squarefree_part(&f.scale(2)).unwrap().is_squarefree());
    }

    #[test]
    fn ddf_examples() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(ddf(&cyclotomic(7).unwrap().reduce_mod_p(f2)).unwrap(), shape(&[(3, 2)]));
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(ddf(&cyclotomic(12).unwrap().reduce_mod_p(f5)).unwrap(), shape(&[(2, 2)]));
        assert_eq!(ddf(&fp(2, &[0, 1, 1])).unwrap(), shape(&[(1, 2)]));
        assert_eq!(ddf(&fp(2, &[0, 0, 1])), Err(Error::NotSquarefree));
        assert_eq!(ddf(&fp(3, &[0, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn prediction_examples() {
        assert_eq!(predict_phi_shape(2, 7).unwrap(), shape(&[(3, 2)]));
        assert_eq!(predict_phi_shape(5, 12).unwrap(), shape(&[(2, 2)]));
        assert_eq!(predict_phi_shape(3, 2).unwrap(), shape(&[(1, 1)]));
        assert_eq!(predict_psi_shape(2, 7).unwrap(), shape(&[(3, 1)]));
        assert_eq!(predict_psi_shape(3, 5).unwrap(), shape(&[(2, 1)]));
        assert_eq!(predict_psi_shape(11, 5).unwrap(), shape(&[(1, 2)]));
        assert!(matches!(predict_phi_shape(3, 6), Err(Error::NotCoprime { .. })));
        assert!(predict_psi_shape(3, 2).is_err());
        assert_eq!(predict_phi_shape(4, 3), Err(Error::NotPrime(4)));
    }

    #[test]
    fn predictions_match_measurements() {
        for p in [2u64, 3, 5, 7, 11] {
            for n in (3..=40u64).filter(|&n| gcd(n, p) == 1) {
                let phi = cyclotomic(n).unwrap().reduce_mod_p(PrimeField::new(p).unwrap());
                assert!(phi.is_squarefree(), "p = {p}, n = {n}");
                assert_eq!(predict_phi_shape(p, n).unwrap(), measure_phi_shape(p, n).unwrap());
                assert_eq!(predict_psi_shape(p, n).unwrap(), measure_psi_shape(p, n).unwrap());
            }
        }
    }

    #[test]
    fn power_identity_examples() {
        assert!(phi_psi_power_identity(2, 1, 3).unwrap().phi);
        assert!(phi_psi_power_identity(3, 1, 1).unwrap().phi);
        // n ≤ 2 falls outside the Ψ pattern; recorded as measured.
        assert!(!phi_psi_power_identity(2, 2, 1).unwrap().psi);
    }

    #[test]
    fn power_identities() {
        for p in [2u64, 3, 5, 7] {
            for r in 1..=3u32 {
                for n in (3..=20u64).filter(|&n| gcd(n, p) == 1) {
                    let id = phi_psi_power_identity(p, r, n).unwrap();
                    assert!(id.phi && id.psi, "p = {p}, r = {r}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn frobenius_examples_and_grid() {
        assert!(frobenius_identity(3, 1).unwrap());
        assert!(frobenius_identity(2, 2).unwrap());
        assert!(frobenius_identity(5, 1).unwrap());
        for p in (2..=128u64).filter(|&p| is_prime(p)) {
            let mut r = 1;
            while p.pow(r) <= 128 {
                assert!(frobenius_identity(p, r).unwrap(), "p = {p}, r = {r}");
                r += 1;
            }
        }
        assert!(matches!(frobenius_identity(2, 20), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn g_member_is_reduction() {
        assert_eq!(g_member(3, 2).unwrap(), fp(3, &[0, 1, 1]));
        assert_eq!(g_member(3, 3).unwrap(), fp(3, &[0, 0, 0, 1]));
    }

    #[test]
    fn commuting_with_square_over_f2() {
        let sq = fp(2, &[0, 0, 1]);
        let found = enumerate_commuting(&sq, 3).unwrap();
        let listed = [
            [0, 0, 0, 1], [0, 1, 1, 1],
            [1, 0, 0, 1], [1, 1, 1, 1],
            [0, 0, 1, 1], [1, 1, 0, 1],
            [0, 1, 0, 1], [1, 0, 1, 1],
        ];
        assert_eq!(found.len(), 8);
        for c in listed {
            assert!(found.contains(&fp(2, &c)));
        }
        // g_i and h_i are conjugate by x + 1
        let lam = fp(2, &[1, 1]);
        for pair in listed.chunks(2) {
            let g = fp(2, &pair[0]);
            let h = fp(2, &pair[1]);
            assert_eq!(lam.compose(&g.compose(&lam).unwrap()).unwrap(), h);
        }
    }

    #[test]
    fn commuting_with_square_over_f3() {
        let sq = fp(3, &[0, 0, 1]);
        for k in 1..=4 {
            let found = enumerate_commuting(&sq, k).unwrap();
            assert_eq!(found, vec![FpPoly::monomial(sq.field(), 1, k)], "k = {k}");
        }
        assert!(matches!(
            enumerate_commuting(&sq, 20),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn at_most_one_for_quadratics() {
        for p in [3u64, 5] {
            let field = PrimeField::new(p).unwrap();
            for c0 in 0..p {
                for c1 in 0..p {
                    for c2 in 1..p {
                        let f = FpPoly::new(field, vec![c0, c1, c2]);
                        for k in 1..=4 {
                            if (p as u128).pow(k as u32 + 1) > ENUMERATION_BUDGET {
                                continue;
                            }
                            let n = enumerate_commuting(&f, k).unwrap().len();
                            assert!(n <= 1, "p = {p}, f = {f}, k = {k}: {n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn at_most_one_monic_for_cubics_over_f2() {
        let field = PrimeField::new(2).unwrap();
        for low in 0..8u64 {
            let f = FpPoly::new(field, vec![low & 1, (low >> 1) & 1, low >> 2, 1]);
            for k in 1..=3 {
                let n = enumerate_commuting(&f, k)
                    .unwrap()
                    .iter()
                    .filter(|g| g.is_monic())
                    .count();
                assert!(n <= 1, "f = {f}, k = {k}: {n}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn squarefree_part_is_radical(
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
            base in prop::collection::vec(0u64..7, 2..5),
            e in 1u64..=9,
        ) {
            let field = PrimeField::new(p).unwrap();
            let g = FpPoly::new(field, base);
            prop_assume!(g.degree().is_some_and(|d| d >= 1));
            let f = g.pow(e);
            let rad = squarefree_part(&f).unwrap();
            prop_assert!(rad.is_squarefree());
            prop_assert!(f.rem(&rad).unwrap().is_zero());
            prop_assert_eq!(squarefree_part(&g).unwrap(), rad.clone());
            if g.is_squarefree() {
                prop_assert_eq!(rad, g.monic());
            }
        }

        #[test]
        fn shape_degrees_add_up(p in prop::sample::select(vec![2u64, 3, 5]), c in prop::collection::vec(0u64..5, 1..9)) {
            let field = PrimeField::new(p).unwrap();
            let mut c = c;
            c.push(1);
            let f = squarefree_part(&FpPoly::new(field, c)).unwrap();
            let s = ddf(&f).unwrap();
            prop_assert_eq!(s.total_degree(), f.degree().unwrap());
        }
    }
}
