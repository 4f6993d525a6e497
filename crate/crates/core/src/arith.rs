//! Exact integer and rational helpers.
//!
//! Everything here is deterministic trial-division arithmetic on `u64`
//! levels plus arbitrary-precision rationals (`BigRational`, always kept in
//! lowest terms with a positive denominator).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Factors `n` by trial division.
pub fn factor(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

/// Factorization of a value already known to be positive.
pub(crate) fn fac(n: u64) -> Factorization {
    factor(n).expect("positive input")
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    fac(n).primes().collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    fac(n).divisors()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && fac(n).factors() == [(n, 1)]
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && fac(n).is_squarefree()
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factor(n)?;
    Ok(f.factors()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// ψ(n) = ∏_{p | n} (p + 1) for square-free `n`.
pub fn psi_plus(n: u64) -> Result<u64> {
    let f = factor(n)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(n));
    }
    Ok(f.primes().map(|p| p + 1).product())
}

/// Number of prime factors counted with multiplicity.
pub fn nu(n: u64) -> Result<u32> {
    Ok(factor(n)?.factors().iter().map(|&(_, e)| e).sum())
}

/// Index of Γ₀(N) in SL₂(Z).
pub fn index_mu(n: u64) -> Result<u64> {
    let f = factor(n)?;
    Ok(f.primes().fold(n, |acc, p| acc / p * (p + 1)))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Jacobi symbol (a / n) for odd positive `n`.
pub fn jacobi(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadJacobiModulus(n));
    }
    let mut a = a.rem_euclid(n) as u64;
    let mut n = n as u64;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Fractional part in [0, 1).
pub fn frac(t: &Rational) -> Rational {
    t - t.floor()
}

/// B₂(⟨t⟩) = ⟨t⟩² − ⟨t⟩ + 1/6, the periodic second Bernoulli function.
pub fn bernoulli2(t: &Rational) -> Rational {
    let x = frac(t);
    &x * &x - &x + q(1, 6)
}

/// Generator of the fractional ideal spanned by the given rationals
/// (gcd of numerators over lcm of denominators); zero for an empty or all-zero input.
pub fn rational_content<'a, I>(values: I) -> Rational
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    Rational::new(num, den)
}

/// Order of `x` in the group Q / `modulus`·Z (`modulus` > 0).
pub fn order_mod_lattice(x: &Rational, modulus: &Rational) -> BigInt {
    // k·x ∈ modulus·Z  ⇔  k · (x / modulus) ∈ Z
    let ratio = x / modulus;
    ratio.denom().abs()
}

/// Removes every prime in `primes` from `n`.
pub fn strip_primes(n: &BigInt, primes: &[u64]) -> BigInt {
    let mut m = n.abs();
    for &p in primes {
        let p = BigInt::from(p);
        if m.is_zero() {
            break;
        }
        while (&m % &p).is_zero() {
            m /= &p;
        }
    }
    m
}
