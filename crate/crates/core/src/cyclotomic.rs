//! Integer combinations of m-th roots of unity.
//!
//! Elements live in Z[x]/(x^m − 1); two elements are equal as complex
//! numbers iff their difference vanishes modulo the cyclotomic polynomial Φ_m.

use std::collections::HashMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    modulus: usize,
    coeffs: Vec<i64>,
}

impl CycloElement {
    pub fn zero(modulus: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            modulus,
            coeffs: vec![0; modulus],
        }
    }

    pub fn from_int(modulus: usize, c: i64) -> Self {
        Self::monomial(modulus, 0, c)
    }

    /// `c · ζ_m^e`, with `e` read modulo `m`.
    pub fn monomial(modulus: usize, e: i64, c: i64) -> Self {
        let mut z = Self::zero(modulus);
        z.add_monomial(e, c);
        z
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "modulus must be positive");
        Self {
            modulus: coeffs.len(),
            coeffs,
        }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Coefficient vector in the basis 1, ζ, …, ζ^{m−1} (not reduced mod Φ_m).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add_monomial(&mut self, e: i64, c: i64) {
        let i = e.rem_euclid(self.modulus as i64) as usize;
        self.coeffs[i] += c;
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Remainder modulo Φ_m, of degree below φ(m).
    pub fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.modulus);
        let deg = phi.len() - 1;
        let mut r: Vec<BigInt> = self.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        for top in (deg..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let lead = std::mem::take(&mut r[top]);
            let shift = top - deg;
            for (k, &pc) in phi.iter().enumerate().take(deg) {
                if pc != 0 {
                    r[shift + k] -= &lead * pc;
                }
            }
        }
        r.truncate(deg);
        r
    }

    pub fn is_zero_cyclotomic(&self) -> bool {
        self.reduced().iter().all(Zero::is_zero)
    }

    /// Equality as complex numbers.
    pub fn eq_cyclotomic(&self, other: &Self) -> bool {
        assert_eq!(self.modulus, other.modulus, "moduli differ");
        (self - other).is_zero_cyclotomic()
    }

    /// `Some(n)` when the element equals the rational integer `n`.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.reduced();
        if r[1..].iter().all(Zero::is_zero) {
            Some(r[0].clone())
        } else {
            None
        }
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: &CycloElement) -> CycloElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&CycloElement> for CycloElement {
    fn add_assign(&mut self, rhs: &CycloElement) {
        assert_eq!(self.modulus, rhs.modulus, "moduli differ");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self + &(-rhs)
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        self.scale(-1)
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: &CycloElement) -> CycloElement {
        assert_eq!(self.modulus, rhs.modulus, "moduli differ");
        let m = self.modulus;
        let mut out = CycloElement::zero(m);
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in rhs.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                out.coeffs[(i + j) % m] += a * b;
            }
        }
        out
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both ascending, `den` monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (k, &d) in den.iter().enumerate() {
                rem[i + k] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Coefficients of Φ_m, ascending, computed as (x^m − 1) / ∏_{d | m, d < m} Φ_d.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut poly = vec![0i64; m + 1];
    poly[0] = -1;
    poly[m] = 1;
    for d in arith::divisors(m as u64) {
        let d = d as usize;
        if d < m {
            poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(m, poly.clone());
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len() - 1, 48);
        assert_eq!(p105.iter().map(|c| c.abs()).max(), Some(2));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=230usize {
            let phi = arith::euler_phi(m as u64).unwrap() as usize;
            assert_eq!(cyclotomic_polynomial(m).len() - 1, phi, "m = {m}");
        }
    }

    #[test]
    fn root_of_unity_sums_vanish() {
        // Σ_{k} ζ_m^k = 0 for m > 1
        for m in 2..40usize {
            let s = CycloElement::from_coeffs(vec![1; m]);
            assert!(s.is_zero_cyclotomic());
        }
        // ζ_3 + ζ_3² = −1 inside Z[ζ_9]
        let z = &CycloElement::monomial(9, 3, 1) + &CycloElement::monomial(9, 6, 1);
        assert_eq!(z.as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn multiplication_wraps() {
        let z = CycloElement::monomial(5, 3, 2);
        let w = CycloElement::monomial(5, 4, 3);
        assert_eq!(&z * &w, CycloElement::monomial(5, 2, 6));
    }
}
