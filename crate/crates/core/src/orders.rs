//! n_χ as a rational multiple of the Gauss sum, cuspidal-subgroup orders,
//! the predicted Eisenstein-ideal index, and the period lattice generators.
//!
//! Orders are computed exactly as rationals and then reported away from the
//! primes 2, 3 and those of f (plus gcd(L, C) for the index). The full
//! integer `order_thm41` keeps its 2-, 3- and f-parts, which carry no claim.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{self, qi, Rational};
use crate::characters::QuadraticCharacter;
use crate::cusp_constants::{lattice_r, Group};
use crate::eisenstein::EisTriple;
use crate::error::{Error, Result};

/// The number c·g(χ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussCoefficient {
    pub chi: QuadraticCharacter,
    pub c: Rational,
}

impl GaussCoefficient {
    pub fn new(chi: QuadraticCharacter, c: Rational) -> Self {
        Self { chi, c }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.chi, &self.c * k)
    }

    /// (c₁g)(c₂g) = c₁c₂·χ(−1)·f, a rational number.
    pub fn mul_same(&self, other: &Self) -> Result<Rational> {
        if self.chi != other.chi {
            return Err(Error::Inconsistency(format!(
                "Gauss sums of {} and {} do not multiply rationally",
                self.chi, other.chi
            )));
        }
        Ok(&self.c * &other.c * qi(self.chi.gauss_square()))
    }
}

impl Add for &GaussCoefficient {
    type Output = GaussCoefficient;
    fn add(self, rhs: &GaussCoefficient) -> GaussCoefficient {
        assert_eq!(self.chi, rhs.chi, "characters differ");
        GaussCoefficient::new(self.chi, &self.c + &rhs.c)
    }
}

impl Mul<&Rational> for &GaussCoefficient {
    type Output = GaussCoefficient;
    fn mul(self, rhs: &Rational) -> GaussCoefficient {
        self.scale(rhs)
    }
}

/// An order reported away from a set of inverted primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactoredOrder {
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub value: BigInt,
    pub inverted: Vec<u64>,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub raw: Rational,
}

impl FactoredOrder {
    fn from_raw(raw: Rational, mut inverted: Vec<u64>) -> Result<Self> {
        inverted.sort_unstable();
        inverted.dedup();
        let den = arith::strip_primes(raw.denom(), &inverted);
        if !den.is_one() {
            return Err(Error::Inconsistency(format!(
                "denominator of {raw} is not supported on {inverted:?}"
            )));
        }
        let value = arith::strip_primes(raw.numer(), &inverted);
        Ok(Self {
            value,
            inverted,
            raw,
        })
    }
}

/// n_χ = −χ(−1)·(d_χ/4)·g(χ).
pub fn n_chi_gauss(chi: &QuadraticCharacter) -> GaussCoefficient {
    let c = -qi(chi.parity() as i64) * chi.d_chi() / qi(4);
    GaussCoefficient::new(*chi, c)
}

/// A = φ(D/f)·ψ(L/f)·gcd(D/M, C).
pub fn lattice_a(triple: &EisTriple) -> u64 {
    let level = triple.level();
    let (d, f) = (level.d(), triple.f());
    arith::euler_phi(d / f).expect("positive")
        * arith::psi_plus(triple.l() / f).expect("square-free")
        * arith::gcd(d / triple.m(), level.c())
}

/// g(χ)/(f·n_χ) = −χ(−1)·4/(f·d_χ).
fn period_ratio(chi: &QuadraticCharacter) -> Result<Rational> {
    let d = chi.d_chi();
    if d.is_zero() {
        return Err(Error::Inconsistency(format!("d_chi vanishes for {chi}")));
    }
    Ok(-qi(chi.parity() as i64) * qi(4) / (qi(chi.conductor() as i64) * d))
}

/// |(xZ + AZ)/AZ| with x = g(χ)/(f·n_χ); provisional at 2, 3 and the primes of f.
pub fn order_thm41(triple: &EisTriple) -> Result<BigInt> {
    let x = period_ratio(&triple.chi())?;
    Ok(arith::order_mod_lattice(&x, &qi(lattice_a(triple) as i64)))
}

fn primes_of(n: u64) -> Vec<u64> {
    arith::prime_divisors(n)
}

/// A·d_χ with the primes of 6f inverted.
pub fn order_away_6f(triple: &EisTriple) -> Result<FactoredOrder> {
    let raw = qi(lattice_a(triple) as i64) * triple.chi().d_chi();
    FactoredOrder::from_raw(raw, primes_of(6 * triple.f()))
}

/// Order of T₀(DC)/I(E_{M,L,χ}) predicted away from 6·gcd(L, C)·f. The Hecke
/// algebra itself is not computed.
pub fn index_prediction(triple: &EisTriple) -> Result<FactoredOrder> {
    let raw = qi(lattice_a(triple) as i64) * triple.chi().d_chi();
    let g = arith::gcd(triple.l(), triple.level().c());
    FactoredOrder::from_raw(raw, primes_of(6 * g * triple.f()))
}

/// Generators of the Γ₁ period lattice, g(χ)/L and ℛ_{Γ₁}·n_χ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodsReport {
    pub gen1: GaussCoefficient,
    pub gen2: GaussCoefficient,
    /// Order of gen1 in Q·g / gen2·Z.
    pub quotient_order: BigInt,
    /// Order of gen1 modulo the Γ₀ lattice gen2/f, equal to `order_thm41`.
    pub gamma0_order: BigInt,
}

pub fn periods_report(triple: &EisTriple) -> Result<PeriodsReport> {
    let chi = triple.chi();
    let n = n_chi_gauss(&chi);
    let gen1 = GaussCoefficient::new(chi, Rational::new(BigInt::one(), BigInt::from(triple.l())));
    let gen2 = n.scale(&lattice_r(triple, Group::Gamma1));
    if gen2.c.is_zero() {
        return Err(Error::Inconsistency(format!(
            "zero period lattice for {triple}"
        )));
    }
    let quotient_order = arith::order_mod_lattice(&gen1.c, &gen2.c.abs());
    let r0 = &gen2.c / qi(triple.f() as i64);
    let gamma0_order = arith::order_mod_lattice(&gen1.c, &r0.abs());
    let expected = order_thm41(triple)?;
    if gamma0_order != expected {
        return Err(Error::Inconsistency(format!(
            "period quotient {gamma0_order} differs from the cuspidal order {expected} for {triple}"
        )));
    }
    Ok(PeriodsReport {
        gen1,
        gen2,
        quotient_order,
        gamma0_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::level::Level;
    use proptest::prelude::*;

    fn triple(d: u64, c: u64, m: u64, l: u64, f: u64) -> EisTriple {
        EisTriple::new(Level::new(d, c).unwrap(), m, l, f).unwrap()
    }

    fn chi(f: u64) -> QuadraticCharacter {
        QuadraticCharacter::new(f).unwrap()
    }

    #[test]
    fn n_chi_examples() {
        assert_eq!(n_chi_gauss(&QuadraticCharacter::trivial()).c, q(-1, 24));
        assert_eq!(n_chi_gauss(&chi(3)).c, q(-1, 9));
        assert_eq!(n_chi_gauss(&chi(5)).c, q(-1, 5));
    }

    #[test]
    fn thm41_examples() {
        assert_eq!(
            order_thm41(&triple(11, 1, 11, 1, 1)).unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            order_thm41(&triple(23, 1, 23, 1, 1)).unwrap(),
            BigInt::from(11)
        );
        assert_eq!(
            order_thm41(&triple(3, 3, 3, 3, 3)).unwrap(),
            BigInt::from(1)
        );
    }

    /// Order of x in Q/AZ by listing multiples.
    fn order_by_enumeration(x: &Rational, a: u64) -> u64 {
        let a = qi(a as i64);
        (1..).find(|&k| (qi(k) * x / &a).is_integer()).unwrap() as u64
    }

    #[test]
    fn thm41_matches_enumeration() {
        for level in Level::all_up_to(150) {
            for t in crate::eisenstein::enumerate_quadratic_triples(level) {
                let x = period_ratio(&t.chi()).unwrap();
                let expected = order_by_enumeration(&x, lattice_a(&t));
                assert_eq!(order_thm41(&t).unwrap(), BigInt::from(expected), "{t}");
            }
        }
    }

    #[test]
    fn away_6f_examples() {
        let o = order_away_6f(&triple(11, 1, 11, 1, 1)).unwrap();
        assert_eq!((o.value, o.raw), (BigInt::from(5), q(5, 3)));
        let o = order_away_6f(&triple(11, 11, 11, 11, 11)).unwrap();
        assert_eq!((o.value, o.raw), (BigInt::from(5), q(-20, 11)));
        assert_eq!(
            order_away_6f(&triple(3, 3, 3, 3, 3)).unwrap().value,
            BigInt::from(1)
        );
    }

    #[test]
    fn index_examples() {
        for (p, expected) in [(11, 5), (23, 11)] {
            let o = index_prediction(&triple(p, 1, p, 1, 1)).unwrap();
            assert_eq!(o.value, BigInt::from(expected));
        }
        assert_eq!(
            index_prediction(&triple(3, 3, 3, 3, 3)).unwrap().value,
            BigInt::from(1)
        );
    }

    #[test]
    fn periods_examples() {
        let r = periods_report(&triple(11, 1, 11, 1, 1)).unwrap();
        assert_eq!((r.gen1.c, r.gen2.c), (qi(1), q(-5, 12)));
        assert_eq!(r.quotient_order, BigInt::from(5));
        let r = periods_report(&triple(3, 3, 3, 3, 3)).unwrap();
        assert_eq!((r.gen1.c, r.gen2.c), (q(1, 3), q(-1, 3)));
    }

    #[test]
    fn gauss_arithmetic() {
        let g = GaussCoefficient::new(chi(3), qi(2));
        let h = &g + &GaussCoefficient::new(chi(3), qi(1));
        assert_eq!(h.c, qi(3));
        assert_eq!((&g * &q(1, 2)).c, qi(1));
        assert!(g.mul_same(&GaussCoefficient::new(chi(5), qi(1))).is_err());
    }

    proptest! {
        #[test]
        fn gauss_ring_law(
            idx in 0usize..8,
            a in -50i64..50, b in 1i64..50,
            c in -50i64..50, d in 1i64..50,
        ) {
            let conductors = [1u64, 3, 5, 7, 11, 13, 15, 15];
            let x = chi(conductors[idx]);
            let g1 = GaussCoefficient::new(x, q(a, b));
            let g2 = GaussCoefficient::new(x, q(c, d));
            let expected = q(a, b) * q(c, d) * qi(x.parity() as i64 * x.conductor() as i64);
            prop_assert_eq!(g1.mul_same(&g2).unwrap(), expected);
        }
    }
}
