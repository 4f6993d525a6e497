//! Twisted L-series of E_{M,L,χ} as truncated Dirichlet series, and the
//! algebraic part of Λ(E, η, 1).

use num_traits::Zero;

use crate::arith::{self, q, qi, Rational};
use crate::characters::QuadraticCharacter;
use crate::eisenstein::{qexp_closed, EisTriple};
use crate::error::{Error, Result};

/// a₁, …, a_N of Σ a_n n^{−s}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCoeffs {
    // index 0 is unused
    coeffs: Vec<Rational>,
}

impl DirichletCoeffs {
    pub fn zero(n: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); n + 1],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> Rational) -> Self {
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k] = f(k as u64);
        }
        out
    }

    /// The Euler polynomial 1 + c·p^{−s}.
    pub fn binomial(n: usize, p: u64, c: Rational) -> Self {
        let mut out = Self::zero(n);
        if n >= 1 {
            out.coeffs[1] = qi(1);
        }
        if (p as usize) <= n {
            out.coeffs[p as usize] = c;
        }
        out
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        assert!(n >= 1, "Dirichlet coefficients start at n = 1");
        &self.coeffs[n]
    }

    /// Truncated Dirichlet convolution.
    pub fn convolve(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let mut out = Self::zero(n);
        for d in 1..=n {
            if self.coeffs[d].is_zero() {
                continue;
            }
            for e in 1..=n / d {
                if !other.coeffs[e].is_zero() {
                    out.coeffs[d * e] += &self.coeffs[d] * &other.coeffs[e];
                }
            }
        }
        out
    }
}

fn check_twist(triple: &EisTriple, eta: &QuadraticCharacter) -> Result<()> {
    if arith::gcd(eta.conductor(), triple.level().d()) != 1 {
        return Err(Error::NotCoprime {
            value: triple.level().d().to_string(),
            conductor: eta.conductor(),
        });
    }
    Ok(())
}

/// a_n(E)·η(n).
pub fn lhs_series(
    triple: &EisTriple,
    eta: &QuadraticCharacter,
    n: usize,
) -> Result<DirichletCoeffs> {
    check_twist(triple, eta)?;
    let e = qexp_closed(triple, n);
    Ok(DirichletCoeffs::from_fn(n, |k| {
        e.coeff(k as usize) * qi(eta.eval_u(k) as i64)
    }))
}

/// ∏_{p | M/f}(1 − χη(p)p^{1−s})·∏_{p | L/f}(1 − χη(p)p^{−s})·L(χη, s−1)·L(χη, s).
pub fn rhs_series(
    triple: &EisTriple,
    eta: &QuadraticCharacter,
    n: usize,
) -> Result<DirichletCoeffs> {
    check_twist(triple, eta)?;
    let psi = triple.chi().product(eta)?;
    let f = triple.f();
    let shifted = DirichletCoeffs::from_fn(n, |k| qi(k as i64 * psi.eval_u(k) as i64));
    let plain = DirichletCoeffs::from_fn(n, |k| qi(psi.eval_u(k) as i64));
    let mut out = shifted.convolve(&plain);
    for p in arith::prime_divisors(triple.m() / f) {
        let c = -qi(psi.eval_u(p) as i64 * p as i64);
        out = out.convolve(&DirichletCoeffs::binomial(n, p, c));
    }
    for p in arith::prime_divisors(triple.l() / f) {
        let c = -qi(psi.eval_u(p) as i64);
        out = out.convolve(&DirichletCoeffs::binomial(n, p, c));
    }
    Ok(out)
}

pub fn verify_factorization(
    triple: &EisTriple,
    eta: &QuadraticCharacter,
    n: usize,
) -> Result<bool> {
    Ok(lhs_series(triple, eta, n)? == rhs_series(triple, eta, n)?)
}

/// Rational multiplier of g(χ) in the algebraic part of Λ(E_{M,L,χ}, η, 1).
pub fn lambda_algebraic(triple: &EisTriple, eta: &QuadraticCharacter) -> Result<Rational> {
    check_twist(triple, eta)?;
    let chi = triple.chi();
    let psi = chi.product(eta)?;
    if psi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    if psi.parity() == 1 {
        return Ok(Rational::zero());
    }
    let f = triple.f();
    let lead = qi((eta.eval(-(f as i64)) * chi.eval_u(eta.conductor())) as i64);
    let mut value = -lead / qi(2 * f as i64);
    for p in arith::prime_divisors(triple.m() / f) {
        value *= qi(1 - psi.eval_u(p) as i64);
    }
    for p in arith::prime_divisors(triple.l() / f) {
        value *= qi(1) - q(psi.eval_u(p) as i64, p as i64);
    }
    let b = psi.b1()?;
    Ok(value * &b * &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::Level;

    fn triple(d: u64, c: u64, m: u64, l: u64, f: u64) -> EisTriple {
        EisTriple::new(Level::new(d, c).unwrap(), m, l, f).unwrap()
    }

    fn chi(f: u64) -> QuadraticCharacter {
        QuadraticCharacter::new(f).unwrap()
    }

    #[test]
    fn lhs_examples() {
        let a = lhs_series(&triple(11, 1, 11, 1, 1), &chi(3), 20).unwrap();
        assert_eq!(*a.coeff(1), qi(1));
        assert_eq!(*a.coeff(2), qi(-3));
        let a = lhs_series(&triple(3, 3, 3, 3, 3), &QuadraticCharacter::trivial(), 20).unwrap();
        assert_eq!(*a.coeff(2), qi(-3));
        assert!(lhs_series(&triple(15, 1, 15, 1, 1), &chi(5), 10).is_err());
    }

    #[test]
    fn rhs_examples() {
        let t = triple(3, 3, 3, 3, 3);
        let b = rhs_series(&t, &chi(5), 20).unwrap();
        assert_eq!(*b.coeff(1), qi(1));
        assert_eq!(*b.coeff(4), qi(7));
        let t = triple(11, 1, 11, 1, 1);
        let triv = QuadraticCharacter::trivial();
        assert_eq!(
            rhs_series(&t, &triv, 30).unwrap().coeff(11),
            lhs_series(&t, &triv, 30).unwrap().coeff(11)
        );
    }

    #[test]
    fn factorization_examples() {
        let t = triple(11, 1, 11, 1, 1);
        assert!(verify_factorization(&t, &chi(3), 60).unwrap());
        assert!(verify_factorization(&t, &QuadraticCharacter::trivial(), 60).unwrap());
        assert!(verify_factorization(&triple(3, 3, 3, 3, 3), &chi(5), 60).unwrap());
    }

    #[test]
    fn lambda_examples() {
        let t = triple(11, 1, 11, 1, 1);
        assert_eq!(lambda_algebraic(&t, &chi(5)).unwrap(), qi(0));
        assert_eq!(lambda_algebraic(&t, &chi(3)).unwrap(), q(1, 9));
        assert_eq!(
            lambda_algebraic(&triple(3, 1, 3, 1, 1), &chi(7)).unwrap(),
            qi(1)
        );
        assert_eq!(
            lambda_algebraic(&t, &QuadraticCharacter::trivial()),
            Err(Error::TrivialCharacter)
        );
    }

    #[test]
    fn convolution_of_unit() {
        let one = DirichletCoeffs::binomial(12, 13, qi(0));
        let s = DirichletCoeffs::from_fn(12, |k| qi(k as i64 * k as i64));
        assert_eq!(one.convolve(&s), s);
    }
}
