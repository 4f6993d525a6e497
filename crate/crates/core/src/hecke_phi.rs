//! q-expansions of Hecke's weight-two functions φ_x at ∞, with cyclotomic
//! coefficients, and the definitional checks built on them.
//!
//! For x = (a/f, b/f²) the holomorphic part of φ_x is
//!
//! ```text
//! ½·B₂(a/f) − P_x − P_{−x},   P_x = Σ_{k>0, k ≡ a/f (1)} k Σ_{m≥1} e^{2πi m (k z + b/f²)}
//! ```
//!
//! Writing k = k'/f, the term k'/f · ζ_{f²}^{mb} lands on q^{mk'/f}; a
//! `PhiSeries` stores the coefficient of q^{j/f} for j = 1..=J.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{self, bernoulli2, q, qi, Rational};
use crate::characters::QuadraticCharacter;
use crate::cyclotomic::CycloElement;
use crate::eisenstein::{apply_plus, qexp_echi, sigma_chi};
use crate::error::{Error, Result};

/// Truncated expansion in q^{1/f} with coefficients in Q(ζ_{f²}).
///
/// The coefficient of q^{j/f} is `coeffs[j − 1] / den`; the constant term is
/// kept as a separate rational.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSeries {
    f: u64,
    constant: Rational,
    den: i64,
    coeffs: Vec<CycloElement>,
}

impl PhiSeries {
    fn zero(f: u64, precision: usize, den: i64) -> Self {
        let m = (f * f) as usize;
        Self {
            f,
            constant: Rational::zero(),
            den,
            coeffs: vec![CycloElement::zero(m); precision],
        }
    }

    pub fn scale_f(&self) -> u64 {
        self.f
    }

    /// Number of q^{1/f} coefficients (J).
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// Integer numerator of the coefficient of q^{j/f}, `1 ≤ j ≤ J`.
    pub fn numerator(&self, j: usize) -> &CycloElement {
        &self.coeffs[j - 1]
    }

    /// Adds `weight · other`; both series must share scale, precision and denominator.
    fn accumulate(&mut self, other: &PhiSeries, weight: i64) {
        assert_eq!(
            (self.f, self.den, self.coeffs.len()),
            (other.f, other.den, other.coeffs.len())
        );
        self.constant += qi(weight) * &other.constant;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += &b.scale(weight);
        }
    }

    /// Multiplies by `num/den`, keeping the cyclotomic numerators integral.
    fn scale_by(&mut self, num: i64, den: i64) {
        self.constant *= q(num, den);
        self.den *= den;
        for c in &mut self.coeffs {
            *c = c.scale(num);
        }
    }

    /// Integral powers q^n, n = 1..=⌊J/f⌋ — the only claims this series supports.
    pub fn integral_precision(&self) -> usize {
        self.coeffs.len() / self.f as usize
    }

    /// True iff every coefficient of a non-integral power q^{j/f} vanishes.
    pub fn fractional_part_vanishes(&self) -> bool {
        let f = self.f as usize;
        (1..=self.coeffs.len())
            .filter(|j| j % f != 0)
            .all(|j| self.coeffs[j - 1].is_zero_cyclotomic())
    }
}

/// Expansion of φ_{(a/f, b/f²)} to J coefficients in q^{1/f}.
pub fn phi_qexp(f: u64, a: i64, b: i64, precision: usize) -> Result<PhiSeries> {
    if f == 0 {
        return Err(Error::NonPositive(0));
    }
    let fi = f as i64;
    let m2 = fi * fi;
    let a = a.rem_euclid(fi);
    let b = b.rem_euclid(m2);
    if a == 0 && b == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut s = PhiSeries::zero(f, precision, fi);
    s.constant = bernoulli2(&q(a, fi)) / qi(2);
    for j in 1..=precision as i64 {
        let c = &mut s.coeffs[j as usize - 1];
        for m in arith::divisors(j as u64) {
            let m = m as i64;
            let k = j / m;
            if (k - a).rem_euclid(fi) == 0 {
                c.add_monomial(m * b, -k);
            }
            if (k + a).rem_euclid(fi) == 0 {
                c.add_monomial(-m * b, -k);
            }
        }
    }
    Ok(s)
}

/// g(χ) = Σ_{a mod f} χ(a)·ζ_{f²}^{a f}.
pub fn gauss_cyclo(chi: &QuadraticCharacter) -> CycloElement {
    let f = chi.conductor() as i64;
    let mut g = CycloElement::zero((f * f) as usize);
    for a in 0..f {
        let w = chi.eval(a) as i64;
        if w != 0 {
            g.add_monomial(a * f, w);
        }
    }
    g
}

/// g(χ)·E_χ = −½ Σ_{a ∈ (Z/f)^×} Σ_{b ∈ (Z/f²)^×} χ(a)χ(b)·φ_{(a/f, b/f²)},
/// expanded to q^{N} (J = N·f coefficients in q^{1/f}).
pub fn weighted_echi_lhs(chi: &QuadraticCharacter, n: usize) -> Result<PhiSeries> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let f = chi.conductor();
    let fi = f as i64;
    let precision = n * f as usize;
    let mut acc = PhiSeries::zero(f, precision, fi);
    for a in 1..fi {
        let wa = chi.eval(a) as i64;
        if wa == 0 {
            continue;
        }
        for b in 1..fi * fi {
            let wb = chi.eval(b) as i64;
            if wb == 0 {
                continue;
            }
            acc.accumulate(&phi_qexp(f, a, b, precision)?, wa * wb);
        }
    }
    acc.scale_by(-1, 2);
    Ok(acc)
}

/// Compares g(χ)·E_χ built from φ-functions against g(χ) times the closed
/// expansion (a₀ = 0, a_n = σ_χ(n)) in Z[ζ_{f²}], and checks that every
/// fractional power cancels.
pub fn verify_echi_definition(chi: &QuadraticCharacter, n: usize) -> Result<bool> {
    let lhs = weighted_echi_lhs(chi, n)?;
    if !lhs.constant.is_zero() || !lhs.fractional_part_vanishes() {
        return Ok(false);
    }
    let f = chi.conductor() as usize;
    let g = gauss_cyclo(chi);
    for k in 1..=lhs.integral_precision() {
        let expected = g.scale(lhs.den * sigma_chi(chi, k as u64));
        if !lhs.numerator(k * f).eq_cyclotomic(&expected) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// ½·Σ_{b ∈ (Z/p)^×} φ_{(0, b/p)}, realised at scale f = p.
pub fn half_sum_phi_zero_b(p: u64, n: usize) -> Result<PhiSeries> {
    let pi = p as i64;
    let precision = n * p as usize;
    let mut acc = PhiSeries::zero(p, precision, pi);
    for b in 1..pi {
        acc.accumulate(&phi_qexp(p, 0, b * pi, precision)?, 1);
    }
    acc.scale_by(1, 2);
    Ok(acc)
}

/// Checks [p]⁺(E₁) = ½·Σ_{b ∈ (Z/p)^×} φ_{(0, b/p)} to precision `n`.
pub fn verify_p_plus_e1(p: u64, n: usize) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let trivial = QuadraticCharacter::trivial();
    let lhs = apply_plus(&qexp_echi(&trivial, n), p, &trivial)?;
    let rhs = half_sum_phi_zero_b(p, n)?;
    if lhs.coeff(0) != rhs.constant() || !rhs.fractional_part_vanishes() {
        return Ok(false);
    }
    let pu = p as usize;
    for k in 1..=rhs.integral_precision().min(lhs.precision()) {
        let Some(value) = rhs.numerator(k * pu).as_integer() else {
            return Ok(false);
        };
        let expected = lhs.coeff(k) * qi(rhs.den);
        if Rational::from_integer(value) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact rational value of a coefficient known to be rational, e.g. for reports.
pub fn rational_coefficient(series: &PhiSeries, j: usize) -> Option<Rational> {
    let v: BigInt = series.numerator(j).as_integer()?;
    Some(Rational::new(v, BigInt::from(series.den)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(f: u64) -> QuadraticCharacter {
        QuadraticCharacter::new(f).unwrap()
    }

    #[test]
    fn phi_constants() {
        assert_eq!(phi_qexp(2, 0, 2, 4).unwrap().constant(), &q(1, 12));
        assert_eq!(phi_qexp(2, 1, 0, 4).unwrap().constant(), &q(-1, 24));
        assert_eq!(phi_qexp(3, 0, 0, 4), Err(Error::ZeroIndex));
    }

    /// Enumerates (k', m) with m·k' = j directly, independent of the divisor loop.
    fn phi_coefficient_oracle(f: i64, a: i64, b: i64, j: i64) -> CycloElement {
        let mut c = CycloElement::zero((f * f) as usize);
        for k in 1..=j {
            for m in 1..=j {
                if k * m != j {
                    continue;
                }
                if (k - a) % f == 0 {
                    c.add_monomial(m * b, -k);
                }
                if (k + a) % f == 0 {
                    c.add_monomial(-m * b, -k);
                }
            }
        }
        c
    }

    #[test]
    fn phi_first_coefficient() {
        let s = phi_qexp(3, 1, 1, 3).unwrap();
        assert_eq!(s.denominator(), 3);
        assert_eq!(s.numerator(1), &CycloElement::monomial(9, 1, -1));
        for f in 1..=5i64 {
            for a in 0..f {
                for b in 0..f * f {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let s = phi_qexp(f as u64, a, b, 12).unwrap();
                    for j in 1..=12 {
                        assert_eq!(s.numerator(j as usize), &phi_coefficient_oracle(f, a, b, j));
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_sum_examples() {
        assert_eq!(
            gauss_cyclo(&QuadraticCharacter::trivial()),
            CycloElement::from_int(1, 1)
        );
        let g3 = gauss_cyclo(&chi(3));
        let expected = &CycloElement::monomial(9, 3, 1) - &CycloElement::monomial(9, 6, 1);
        assert_eq!(g3, expected);
        assert_eq!((&g3 * &g3).as_integer(), Some(BigInt::from(-3)));
    }

    #[test]
    fn gauss_square_matches_parity() {
        for f in (1..=15u64).step_by(2).filter(|&f| arith::is_squarefree(f)) {
            let c = chi(f);
            let g = gauss_cyclo(&c);
            assert_eq!(
                (&g * &g).as_integer(),
                Some(BigInt::from(c.gauss_square())),
                "f = {f}"
            );
        }
    }

    #[test]
    fn echi_lhs_for_chi3() {
        let lhs = weighted_echi_lhs(&chi(3), 4).unwrap();
        assert!(lhs.constant().is_zero());
        assert!(lhs.numerator(1).is_zero_cyclotomic());
        assert!(lhs.fractional_part_vanishes());
        // coefficient of q¹ is g(χ₃) = ζ₃ − ζ₃²
        let g = gauss_cyclo(&chi(3));
        assert!(lhs.numerator(3).eq_cyclotomic(&g.scale(lhs.denominator())));
        assert_eq!(
            weighted_echi_lhs(&QuadraticCharacter::trivial(), 2),
            Err(Error::TrivialCharacter)
        );
    }

    #[test]
    fn echi_definition_small() {
        assert!(verify_echi_definition(&chi(3), 12).unwrap());
        assert!(verify_echi_definition(&chi(5), 8).unwrap());
        assert!(verify_echi_definition(&chi(7), 4).unwrap());
    }

    #[test]
    fn p_plus_e1() {
        for (p, n) in [(2, 20), (3, 20), (5, 12), (7, 12)] {
            assert!(verify_p_plus_e1(p, n).unwrap(), "p = {p}");
        }
        assert_eq!(verify_p_plus_e1(4, 5), Err(Error::NotPrime(4)));
    }

    #[test]
    fn half_sum_is_rational() {
        let s = half_sum_phi_zero_b(5, 6).unwrap();
        // b₅ = σ(5) − 5·σ(1) = 1
        assert_eq!(rational_coefficient(&s, 25), Some(qi(1)));
        assert_eq!(rational_coefficient(&s, 5), Some(qi(1)));
        assert_eq!(rational_coefficient(&s, 10), Some(qi(3)));
        assert_eq!(s.constant(), &q(4, 24));
    }
}
