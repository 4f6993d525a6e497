//! Quadratic Dirichlet characters of odd square-free conductor.
//!
//! For odd square-free `f` the primitive quadratic character of conductor
//! `f` is unique and equals the Jacobi symbol `(· / f)`. Conductor 1 is the
//! trivial character.
//!
//! The Gauss sum g(χ) is never evaluated numerically; only g(χ)² = χ(−1)·f
//! and rational multiples of g(χ) appear elsewhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{self, bernoulli2, q, qi, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticCharacter {
    conductor: u64,
}

impl QuadraticCharacter {
    pub fn new(conductor: u64) -> Result<Self> {
        if conductor == 0 || conductor.is_multiple_of(2) || !arith::is_squarefree(conductor) {
            return Err(Error::BadConductor(conductor));
        }
        Ok(Self { conductor })
    }

    pub fn trivial() -> Self {
        Self { conductor: 1 }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }

    /// χ(n), zero when `gcd(n, f) > 1`.
    pub fn eval(&self, n: i64) -> i8 {
        arith::jacobi(n, self.conductor as i64).expect("conductor is odd")
    }

    pub fn eval_u(&self, n: u64) -> i8 {
        self.eval((n % self.conductor) as i64)
    }

    fn eval_big(&self, n: &BigInt) -> i8 {
        let f = BigInt::from(self.conductor);
        let r = ((n % &f) + &f) % &f;
        self.eval(r.to_i64().expect("reduced below the conductor"))
    }

    /// χ at a rational argument, extended multiplicatively (χ = χ⁻¹).
    pub fn eval_rational(&self, value: &Rational) -> Result<i8> {
        let num = self.eval_big(value.numer());
        let den = self.eval_big(value.denom());
        if num == 0 || den == 0 {
            return Err(Error::NotCoprime {
                value: value.to_string(),
                conductor: self.conductor,
            });
        }
        Ok(num * den)
    }

    /// χ(−1).
    pub fn parity(&self) -> i8 {
        self.eval(-1)
    }

    /// g(χ)² = χ(−1)·f.
    pub fn gauss_square(&self) -> i64 {
        self.parity() as i64 * self.conductor as i64
    }

    /// d_χ = Σ_{a,b mod f} χ(a)χ(b)·B₂((a+b)/f), summed over all residues.
    pub fn d_chi(&self) -> Rational {
        let f = self.conductor as i64;
        let mut total = Rational::zero();
        for a in 0..f {
            let ca = self.eval(a);
            if ca == 0 {
                continue;
            }
            for b in 0..f {
                let w = ca * self.eval(b);
                if w == 0 {
                    continue;
                }
                total += qi(w as i64) * bernoulli2(&q(a + b, f));
            }
        }
        total
    }

    /// B_{1,χ} = (1/f)·Σ_{a=1}^{f} χ(a)·a for a non-trivial character.
    pub fn b1(&self) -> Result<Rational> {
        if self.is_trivial() {
            return Err(Error::TrivialCharacter);
        }
        let f = self.conductor as i64;
        let s: i64 = (1..=f).map(|a| self.eval(a) as i64 * a).sum();
        Ok(q(s, f))
    }

    /// The product character χ·η, primitive of conductor f_χ·f_η when the
    /// conductors are coprime.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if arith::gcd(self.conductor, other.conductor) != 1 {
            return Err(Error::NotCoprime {
                value: other.conductor.to_string(),
                conductor: self.conductor,
            });
        }
        Self::new(self.conductor * other.conductor)
    }

    /// All quadratic characters whose conductor divides `m` (odd conductors only).
    pub fn dividing(m: u64) -> Vec<Self> {
        arith::divisors(m)
            .into_iter()
            .filter(|&f| f % 2 == 1)
            .filter_map(|f| Self::new(f).ok())
            .collect()
    }
}

impl fmt::Display for QuadraticCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "1")
        } else {
            write!(f, "chi_{}", self.conductor)
        }
    }
}
