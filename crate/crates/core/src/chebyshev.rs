//! Chebyshev polynomials of both kinds and the Dickson normalization.

use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::exactnum::{int, rat};
use crate::{Error, Integer, Poly, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChebKind {
    /// `T_0 = 1, T_1 = x`
    First,
    /// `U_0 = 1, U_1 = 2x`
    Second,
}

static FIRST_KIND: RwLock<Vec<Poly<Rational>>> = RwLock::new(Vec::new());
static SECOND_KIND: RwLock<Vec<Poly<Rational>>> = RwLock::new(Vec::new());

/// `T_n` or `U_n` by the three-term recurrence `P_n = 2x·P_{n-1} − P_{n-2}`.
///
/// Results are memoized per kind up to the largest degree requested so far.
pub fn cheb(kind: ChebKind, n: usize) -> Poly<Rational> {
    let cache = match kind {
        ChebKind::First => &FIRST_KIND,
        ChebKind::Second => &SECOND_KIND,
    };
    if let Some(p) = cache.read().expect("chebyshev cache poisoned").get(n) {
        return p.clone();
    }
    let mut table = cache.write().expect("chebyshev cache poisoned");
    if table.is_empty() {
        table.push(Poly::one());
        table.push(match kind {
            ChebKind::First => Poly::x(),
            ChebKind::Second => Poly::monomial(int(2), 1),
        });
    }
    let two_x = Poly::monomial(int(2), 1);
    while table.len() <= n {
        let k = table.len();
        let next = &(&two_x * &table[k - 1]) - &table[k - 2];
        table.push(next);
    }
    table[n].clone()
}

/// `D_n` with `D_n(t + 1/t) = t^n + t^{-n}`; equivalently `2·T_n(x/2)`.
pub fn dickson(n: usize) -> Poly<Integer> {
    let mut prev = Poly::<Integer>::from_i64s(&[2]);
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::<Integer>::x();
    let x = Poly::<Integer>::x();
    for _ in 1..n {
        let next = &(&x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Rewrites `p(t + 1/t)` as `t^{-d}·P(t)` with `d = deg p`; returns `(P, d)`.
pub fn at_t_plus_inverse(p: &Poly<Integer>) -> (Poly<Integer>, usize) {
    let Some(d) = p.degree() else {
        return (Poly::zero(), 0);
    };
    // t^d · (t + 1/t)^j = (t^2 + 1)^j · t^{d-j}
    let t2p1 = Poly::<Integer>::from_i64s(&[1, 0, 1]);
    let mut out = Poly::zero();
    let mut power = Poly::one();
    for (j, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let term = &power * &Poly::monomial(c.clone(), d - j);
            out = &out + &term;
        }
        power = &power * &t2p1;
    }
    (out, d)
}

/// The values `c_0, …, c_count` with `c_k = U_{k-1}(b)` and `c_0 = U_{-1} = 0`.
pub fn second_kind_values(b: &Rational, count: usize) -> Vec<Rational> {
    let mut c = Vec::with_capacity(count + 1);
    c.push(Rational::zero());
    if count >= 1 {
        c.push(Rational::one());
    }
    let two_b = b * int(2);
    for k in 2..=count {
        let next = &two_b * &c[k - 1] - &c[k - 2];
        c.push(next);
    }
    c
}

/// `U_{k-1}(b)` for `b ∈ {0, ±1, ±1/2}` read off the periodic value tables.
pub fn u_special(b: &Rational, k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("u_special needs k >= 1".into()));
    }
    let v: i64 = if *b == int(1) {
        k as i64
    } else if *b == int(-1) {
        if k % 2 == 1 {
            k as i64
        } else {
            -(k as i64)
        }
    } else if b.is_zero() {
        match k % 4 {
            1 => 1,
            3 => -1,
            _ => 0,
        }
    } else if *b == rat(1, 2) {
        match k % 6 {
            1 | 2 => 1,
            4 | 5 => -1,
            _ => 0,
        }
    } else if *b == rat(-1, 2) {
        match k % 3 {
            1 => 1,
            2 => -1,
            _ => 0,
        }
    } else {
        return Err(Error::UnsupportedParameter(b.to_string()));
    };
    Ok(int(v))
}

/// `T_n(y)` in double precision via the recurrence (stable on `[-1, 1]`).
pub fn first_kind_f64(n: usize, y: num_complex::Complex64) -> num_complex::Complex64 {
    let one = num_complex::Complex64::new(1.0, 0.0);
    if n == 0 {
        return one;
    }
    let (mut prev, mut cur) = (one, y);
    for _ in 1..n {
        let next = 2.0 * y * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}
