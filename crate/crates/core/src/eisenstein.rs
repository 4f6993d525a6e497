//! Weight-two Eisenstein series E_{M,L,χ} on Γ₀(DC) for quadratic χ.
//!
//! Two independent constructions of the q-expansion are provided: the
//! operator path applies [p]⁺ and [p]⁻ to E_χ prime by prime, and the closed
//! path writes the coefficients down as a twisted divisor sum.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, q, qi, Rational};
use crate::characters::QuadraticCharacter;
use crate::error::{Error, Result};
use crate::level::Level;
use crate::qseries::QSeries;

/// A triple (M, L, χ) of H(DC) with χ quadratic, together with its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisTriple {
    level: Level,
    m: u64,
    l: u64,
    f: u64,
}

impl EisTriple {
    pub fn new(level: Level, m: u64, l: u64, f: u64) -> Result<Self> {
        let (d, c) = (level.d(), level.c());
        let invalid = |reason: &str| Error::InvalidTriple {
            d,
            c,
            m,
            l,
            f,
            reason: reason.to_string(),
        };
        if m == 0 || l == 0 || d % m != 0 || d % l != 0 {
            return Err(invalid("M and L must divide D"));
        }
        if m == 1 {
            return Err(invalid("M must differ from 1"));
        }
        let ml = m * l;
        if !ml.is_multiple_of(d) || (d * c) % ml != 0 {
            return Err(invalid("need D | ML | DC"));
        }
        if f == 0 || !arith::gcd(m, l).is_multiple_of(f) {
            return Err(invalid("conductor must divide gcd(M, L)"));
        }
        if QuadraticCharacter::new(f).is_err() {
            return Err(invalid("conductor must be odd and square-free"));
        }
        Ok(Self { level, m, l, f })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn chi(&self) -> QuadraticCharacter {
        QuadraticCharacter::new(self.f).expect("validated on construction")
    }

    /// gcd(M, L).
    pub fn gcd_ml(&self) -> u64 {
        arith::gcd(self.m, self.l)
    }
}

impl fmt::Display for EisTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "E[M={}, L={}, {}] at {}",
            self.m,
            self.l,
            self.chi(),
            self.level
        )
    }
}

/// Valid (M, L) pairs for the level, ordered lexicographically.
fn ml_pairs(level: Level) -> Vec<(u64, u64)> {
    let (d, n) = (level.d(), level.n());
    let divs = arith::divisors(d);
    let mut out = Vec::new();
    for &m in divs.iter().filter(|&&m| m != 1) {
        for &l in &divs {
            if (m * l) % d == 0 && n % (m * l) == 0 {
                out.push((m, l));
            }
        }
    }
    out
}

/// #H(DC), counting every Dirichlet character of conductor dividing gcd(M, L).
pub fn count_h(level: Level) -> u64 {
    ml_pairs(level)
        .into_iter()
        .map(|(m, l)| arith::euler_phi(arith::gcd(m, l)).expect("positive"))
        .sum()
}

/// All triples of H(DC) with χ² = 1, sorted by (M, L, f).
pub fn enumerate_quadratic_triples(level: Level) -> Vec<EisTriple> {
    let mut out = Vec::new();
    for (m, l) in ml_pairs(level) {
        for chi in QuadraticCharacter::dividing(arith::gcd(m, l)) {
            out.push(EisTriple {
                level,
                m,
                l,
                f: chi.conductor(),
            });
        }
    }
    out
}

/// σ_χ(n) = Σ_{d | n} d·χ(d)·χ(n/d).
pub fn sigma_chi(chi: &QuadraticCharacter, n: u64) -> i64 {
    assert!(n >= 1, "σ_χ is defined for n ≥ 1");
    arith::divisors(n)
        .into_iter()
        .map(|d| d as i64 * (chi.eval_u(d) * chi.eval_u(n / d)) as i64)
        .sum()
}

/// Sum of the divisors of n coprime to m.
pub fn sigma_coprime(m: u64, n: u64) -> u64 {
    arith::divisors(n)
        .into_iter()
        .filter(|&d| arith::gcd(d, m) == 1)
        .sum()
}

/// σ_{M,L}(n): zero unless n is prime to gcd(M, L)/f, otherwise
/// (∏_{ℓ | D/M} ℓ^{v_ℓ(n)})·σ_{D/f}(n).
pub fn sigma_ml(d: u64, m: u64, l: u64, f: u64, n: u64) -> u64 {
    if arith::gcd(n, arith::gcd(m, l) / f) > 1 {
        return 0;
    }
    let mut part = 1;
    for ell in arith::prime_divisors(d / m) {
        let mut k = n;
        while k.is_multiple_of(ell) {
            part *= ell;
            k /= ell;
        }
    }
    part * sigma_coprime(d / f, n)
}

/// E_χ to precision n, at level f².
pub fn qexp_echi(chi: &QuadraticCharacter, n: usize) -> QSeries {
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(if chi.is_trivial() {
        q(-1, 24)
    } else {
        Rational::zero()
    });
    coeffs.extend((1..=n as u64).map(|k| qi(sigma_chi(chi, k))));
    let f = chi.conductor();
    QSeries::new(coeffs, f * f)
}

fn check_operator_prime(p: u64, chi: &QuadraticCharacter) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if chi.conductor().is_multiple_of(p) {
        return Err(Error::PrimeDividesConductor {
            p,
            f: chi.conductor(),
        });
    }
    Ok(())
}

fn apply_operator(g: &QSeries, p: u64, weight: Rational) -> QSeries {
    let pu = p as usize;
    let coeffs = (0..=g.precision())
        .map(|n| match g.coeff_div(n, pu) {
            Some(prev) => g.coeff(n) - &weight * prev,
            None => g.coeff(n).clone(),
        })
        .collect();
    QSeries::new(coeffs, g.level() * p)
}

/// [p]⁺_χ: b_n = a_n − p·χ(p)·a_{n/p}.
pub fn apply_plus(g: &QSeries, p: u64, chi: &QuadraticCharacter) -> Result<QSeries> {
    check_operator_prime(p, chi)?;
    let w = qi(p as i64 * chi.eval_u(p) as i64);
    Ok(apply_operator(g, p, w))
}

/// [p]⁻_χ: b_n = a_n − χ(p)·a_{n/p}.
pub fn apply_minus(g: &QSeries, p: u64, chi: &QuadraticCharacter) -> Result<QSeries> {
    check_operator_prime(p, chi)?;
    let w = qi(chi.eval_u(p) as i64);
    Ok(apply_operator(g, p, w))
}

/// E_{M,L,χ} = [L/f]⁻ ∘ [M/f]⁺ (E_χ), primes taken in increasing order.
pub fn qexp_operator(triple: &EisTriple, n: usize) -> Result<QSeries> {
    let chi = triple.chi();
    let f = triple.f();
    let mut g = qexp_echi(&chi, n);
    for p in arith::prime_divisors(triple.m() / f) {
        g = apply_plus(&g, p, &chi)?;
    }
    for p in arith::prime_divisors(triple.l() / f) {
        g = apply_minus(&g, p, &chi)?;
    }
    Ok(g.with_level(triple.level().n()))
}

/// Constant term of E_{M,L,χ} at ∞.
pub fn constant_term(triple: &EisTriple) -> Rational {
    let d = triple.level().d();
    if triple.f() != 1 || triple.l() != 1 {
        return Rational::zero();
    }
    let sign = if arith::nu(d).expect("positive").is_multiple_of(2) {
        1
    } else {
        -1
    };
    q(-1, 24) * qi(sign * arith::euler_phi(d).expect("positive") as i64)
}

/// E_{M,L,χ} from the twisted divisor sum σ_{M,L}(n)·χ(n).
pub fn qexp_closed(triple: &EisTriple, n: usize) -> QSeries {
    let chi = triple.chi();
    let d = triple.level().d();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(constant_term(triple));
    for k in 1..=n as u64 {
        let c = chi.eval_u(k);
        coeffs.push(if c == 0 {
            Rational::zero()
        } else {
            qi(c as i64 * sigma_ml(d, triple.m(), triple.l(), triple.f(), k) as i64)
        });
    }
    QSeries::new(coeffs, triple.level().n())
}

/// Weight-two Hecke operator T_ℓ at the level carried by `g`.
pub fn hecke(g: &QSeries, ell: u64) -> Result<QSeries> {
    if !arith::is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let lu = ell as usize;
    let bad = g.level().is_multiple_of(ell);
    let coeffs = (0..=g.precision() / lu)
        .map(|n| {
            let mut b = g.coeff(lu * n).clone();
            if !bad {
                if let Some(prev) = g.coeff_div(n, lu) {
                    b += prev * qi(ell as i64);
                }
            }
            b
        })
        .collect();
    Ok(QSeries::new(coeffs, g.level()))
}

/// Eigenvalue of T_ℓ on E_{M,L,χ}.
pub fn predicted_eigenvalue(triple: &EisTriple, ell: u64) -> Rational {
    let chi = triple.chi().eval_u(ell) as i64;
    let ell_i = ell as i64;
    let g = triple.gcd_ml();
    if !triple.level().d().is_multiple_of(ell) {
        qi(chi * (1 + ell_i))
    } else if g.is_multiple_of(ell) {
        Rational::zero()
    } else if (triple.m() / g).is_multiple_of(ell) {
        qi(chi)
    } else {
        debug_assert_eq!((triple.l() / g) % ell, 0);
        qi(chi * ell_i)
    }
}

/// Checks T_ℓ·E = λ_ℓ·E on the reduced precision.
pub fn is_eigenform(g: &QSeries, triple: &EisTriple, ell: u64) -> Result<bool> {
    let t = hecke(g, ell)?;
    let lambda = predicted_eigenvalue(triple, ell);
    Ok((0..=t.precision()).all(|n| *t.coeff(n) == &lambda * g.coeff(n)))
}

/// The eigenvalue vector used to separate triples at one level: primes up
/// to `bound` together with every prime dividing D.
pub fn eigen_system(triple: &EisTriple, bound: u64) -> Vec<Rational> {
    let mut primes = arith::primes_up_to(bound);
    for p in arith::prime_divisors(triple.level().d()) {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes
        .into_iter()
        .map(|p| predicted_eigenvalue(triple, p))
        .collect()
}

/// Whether a₁ = 1.
pub fn is_normalized(g: &QSeries) -> bool {
    g.precision() >= 1 && g.coeff(1).is_one()
}
