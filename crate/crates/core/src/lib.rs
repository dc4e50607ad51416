//! Exact polynomial arithmetic for chains of commuting polynomials.
//!
//! A chain is a family `{f_n}` with `deg f_n = n` whose members pairwise
//! commute under composition. Over ℚ every chain is conjugate, by a linear
//! map `λ(x) = ax + b`, to either the Chebyshev polynomials `T_n` or the
//! monomials `x^n`. This crate builds both families for arbitrary rational
//! `(a, b)` and checks their division, factorization, gcd and mod-p
//! structure against brute-force polynomial arithmetic.
//!
//! Module map:
//!
//! * [`exactnum`]: big integers/rationals, prime fields, divisors, totient, orders
//! * [`poly`]: dense polynomials over ℤ, ℚ and 𝔽p (the oracle for everything else)
//! * [`chebyshev`]: `T_n`, `U_n`, Dickson polynomials, special values of `U_{k-1}`
//! * [`chains`]: chain members, similarity, Conditions (i)-(iv)
//! * [`division`]: closed-form Euclidean division for chains
//! * [`factor`]: cyclotomic and `2cos(2π/n)` minimal polynomials, factorizations, gcds, roots
//! * [`modp`]: reductions mod p, squarefree/distinct-degree factorization, enumeration

pub mod chains;
pub mod chebyshev;
pub mod division;
mod error;
pub mod exactnum;
pub mod factor;
pub mod modp;
pub mod poly;

pub use error::{Error, Result};
pub use exactnum::{Integer, Rational};
pub use poly::{FpPoly, Poly};
