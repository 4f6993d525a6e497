//! Cusps of X₀(DC) in the normal form [r·s²·t·x / DC].
//!
//! A representative (r, s, t, x) has r | D/C, s and t dividing C with
//! gcd(s, t) = 1, and x prime to D, taken modulo t. The canonical x is the
//! least positive integer of its class coprime to D.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::level::Level;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspRep {
    pub r: u64,
    pub s: u64,
    pub t: u64,
    pub x: u64,
}

impl CuspRep {
    pub fn new(r: u64, s: u64, t: u64, x: u64) -> Self {
        Self { r, s, t, x }
    }

    /// r·s²·t, the index N / gcd(c, N) of the underlying point.
    pub fn rs2t(&self) -> u64 {
        self.r * self.s * self.s * self.t
    }

    /// Checks the representative against a level (x may be non-canonical).
    pub fn validate(&self, level: Level) -> Result<()> {
        let (d, c) = (level.d(), level.c());
        let ok = self.r > 0
            && self.s > 0
            && self.t > 0
            && self.x > 0
            && (d / c) % self.r == 0
            && c % self.s == 0
            && c % self.t == 0
            && arith::gcd(self.s, self.t) == 1
            && arith::gcd(self.x, d) == 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCusp(format!("{self} at {level}")))
        }
    }
}

impl fmt::Display for CuspRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[r={}, s={}, t={}, x={}]",
            self.r, self.s, self.t, self.x
        )
    }
}

/// A point (a : c) of P¹(Q) with gcd(a, c) = 1 and c ≥ 0; ∞ is (1 : 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspPoint {
    a: i64,
    c: u64,
}

impl CuspPoint {
    pub fn new(a: i64, c: i64) -> Result<Self> {
        if a == 0 && c == 0 {
            return Err(Error::InvalidCusp("(0 : 0)".into()));
        }
        let g = a.gcd(&c);
        let (mut a, mut c) = (a / g, c / g);
        if c < 0 || (c == 0 && a < 0) {
            a = -a;
            c = -c;
        }
        Ok(Self { a, c: c as u64 })
    }

    pub fn infinity() -> Self {
        Self { a: 1, c: 0 }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn is_infinity(&self) -> bool {
        self.c == 0
    }
}

impl fmt::Display for CuspPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.a, self.c)
    }
}

/// Σ_{d | N} φ(gcd(d, N/d)).
pub fn cusp_count(n: u64) -> u64 {
    arith::divisors(n)
        .into_iter()
        .map(|d| arith::euler_phi(arith::gcd(d, n / d)).expect("positive"))
        .sum()
}

/// Canonical x for every class of (Z/t)^×.
fn x_candidates(t: u64, d: u64) -> Vec<u64> {
    if t == 1 {
        return vec![1];
    }
    (1..t)
        .filter(|&u| arith::gcd(u, t) == 1)
        .map(|u| {
            (0..)
                .map(|k| u + k * t)
                .find(|&x| arith::gcd(x, d) == 1)
                .expect("a class prime to t meets the units mod D")
        })
        .collect()
}

/// All cusps of X₀(DC), ordered by (t, s, r, x).
pub fn enumerate_cusps(level: Level) -> Vec<CuspRep> {
    let (d, c) = (level.d(), level.c());
    let mut out = Vec::with_capacity(cusp_count(level.n()) as usize);
    for t in arith::divisors(c) {
        let xs = x_candidates(t, d);
        for s in arith::divisors(c)
            .into_iter()
            .filter(|&s| arith::gcd(s, t) == 1)
        {
            for r in arith::divisors(d / c) {
                out.extend(xs.iter().map(|&x| CuspRep { r, s, t, x }));
            }
        }
    }
    out
}

/// Ramification index over X(1) of the cusp on X₀(DC).
pub fn width_gamma0(rep: &CuspRep) -> u64 {
    rep.r * rep.s * rep.s
}

/// Ramification index over X(1) of a cusp of X₁(DC) above `rep`.
pub fn width_gamma1(rep: &CuspRep) -> u64 {
    rep.rs2t()
}

pub fn to_point(rep: &CuspRep, level: Level) -> CuspPoint {
    CuspPoint::new((rep.rs2t() * rep.x) as i64, level.n() as i64).expect("c > 0")
}

/// Inverse of a modulo c (any value when c ≤ 1).
fn inverse_mod(a: i64, c: i64) -> i64 {
    if c <= 1 {
        return 0;
    }
    let e = a.extended_gcd(&c);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(c)
}

/// Γ₀(N)-equivalence: a₁/c₁ ~ a₂/c₂ iff s₁c₂ ≡ s₂c₁ mod gcd(c₁c₂, N),
/// where s_j·a_j ≡ 1 mod c_j.
pub fn equivalent(p1: &CuspPoint, p2: &CuspPoint, n: u64) -> bool {
    let s = |p: &CuspPoint| -> i128 {
        if p.is_infinity() {
            1
        } else {
            inverse_mod(p.a, p.c as i64) as i128
        }
    };
    let (c1, c2) = (p1.c as i128, p2.c as i128);
    let m = (c1 * c2).gcd(&(n as i128));
    (s(p1) * c2 - s(p2) * c1).rem_euclid(m) == 0
}

/// The enumerated representative equivalent to `p`.
pub fn canonicalize(p: &CuspPoint, level: Level) -> Result<CuspRep> {
    let (d, c, n) = (level.d(), level.c(), level.n());
    let g = if p.is_infinity() {
        n
    } else {
        arith::gcd(p.c, n)
    };
    let idx = n / g;
    let (mut r, mut s, mut t) = (1, 1, 1);
    for prime in arith::prime_divisors(d) {
        let mut e = 0;
        let mut k = idx;
        while k % prime == 0 {
            e += 1;
            k /= prime;
        }
        match (c % prime == 0, e) {
            (_, 0) => {}
            (false, 1) => r *= prime,
            (true, 1) => t *= prime,
            (true, 2) => s *= prime,
            _ => unreachable!("index divides N"),
        }
    }
    x_candidates(t, d)
        .into_iter()
        .map(|x| CuspRep { r, s, t, x })
        .find(|rep| equivalent(&to_point(rep, level), p, n))
        .ok_or_else(|| Error::Inconsistency(format!("no representative matches {p} at {level}")))
}

/// Cases of the single-prime level change X₀(DC) → X₀(DC/p) or X₀(DC/p²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionCase {
    /// p | r
    R,
    /// p | s
    S,
    /// p | t
    T,
    /// p | D/(C·r)
    AwayFromC,
    /// p | C/(s·t)
    InCOutsideST,
}

impl ReductionCase {
    pub const ALL: [ReductionCase; 5] = [
        ReductionCase::R,
        ReductionCase::S,
        ReductionCase::T,
        ReductionCase::AwayFromC,
        ReductionCase::InCOutsideST,
    ];

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1..=5 => Ok(Self::ALL[i as usize - 1]),
            _ => Err(Error::Hypothesis(format!(
                "reduction case {i} is not in 1..=5"
            ))),
        }
    }
}

/// Image of the cusp `rep` on the lower level, as a raw representative.
pub fn reduce_level(
    rep: &CuspRep,
    level: Level,
    p: u64,
    case: ReductionCase,
) -> Result<(CuspRep, Level)> {
    rep.validate(level)?;
    let (d, c) = (level.d(), level.c());
    if !arith::is_prime(p) || d % p != 0 {
        return Err(Error::Hypothesis(format!(
            "{p} is not a prime divisor of D = {d}"
        )));
    }
    let CuspRep { r, s, t, x } = *rep;
    let holds = match case {
        ReductionCase::R => r % p == 0,
        ReductionCase::S => s % p == 0,
        ReductionCase::T => t % p == 0,
        ReductionCase::AwayFromC => (d / (c * r)) % p == 0,
        ReductionCase::InCOutsideST => (c / (s * t)) % p == 0,
    };
    if !holds {
        return Err(Error::Hypothesis(format!(
            "{case:?} does not apply to p = {p} at {rep}"
        )));
    }
    let (rep, d2, c2) = match case {
        ReductionCase::R => (CuspRep::new(r / p, s, t, x), d / p, c),
        ReductionCase::S => (CuspRep::new(r, s / p, t, x), d / p, c / p),
        ReductionCase::T => (CuspRep::new(r, s, t / p, p * x), d / p, c / p),
        ReductionCase::AwayFromC => (CuspRep::new(r, s, t, p * x), d / p, c),
        ReductionCase::InCOutsideST => (CuspRep::new(r, s, t, p * p * x), d / p, c / p),
    };
    Ok((rep, Level::new(d2, c2)?))
}

/// A claimed equality between the image of `source` and `target` on `level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositeReduction {
    pub source: CuspPoint,
    pub target: CuspPoint,
    pub level: Level,
}

impl CompositeReduction {
    pub fn holds(&self) -> bool {
        equivalent(&self.source, &self.target, self.level.n())
    }
}

/// [rs²tαx/DC] = [rs²t·(K·(K,C)/α)·x / (DC/(K·(K,C)))] for K | D prime to rst.
pub fn reduce_coprime_block(
    rep: &CuspRep,
    level: Level,
    k: u64,
    alpha: u64,
) -> Result<CompositeReduction> {
    let (d, c) = (level.d(), level.c());
    if d % k != 0 || !k.is_multiple_of(alpha) || arith::gcd(k, rep.r * rep.s * rep.t) != 1 {
        return Err(Error::Hypothesis(format!(
            "K = {k}, α = {alpha} at {rep}, {level}"
        )));
    }
    let kc = arith::gcd(k, c);
    let target_level = Level::new(d / k, c / kc)?;
    let base = rep.rs2t() * rep.x;
    Ok(CompositeReduction {
        source: CuspPoint::new((base * alpha) as i64, level.n() as i64)?,
        target: CuspPoint::new((base * (k * kc / alpha)) as i64, target_level.n() as i64)?,
        level: target_level,
    })
}

/// [rs²tαx/DC] = [rs²(t/K)·(K/α)·x / (DC/K²)] for K | t.
pub fn reduce_t_block(
    rep: &CuspRep,
    level: Level,
    k: u64,
    alpha: u64,
) -> Result<CompositeReduction> {
    let (d, c) = (level.d(), level.c());
    if !rep.t.is_multiple_of(k) || !k.is_multiple_of(alpha) {
        return Err(Error::Hypothesis(format!(
            "K = {k}, α = {alpha} at {rep}, {level}"
        )));
    }
    let target_level = Level::new(d / k, c / k)?;
    let CuspRep { r, s, t, x } = *rep;
    Ok(CompositeReduction {
        source: CuspPoint::new((r * s * s * t * alpha * x) as i64, level.n() as i64)?,
        target: CuspPoint::new(
            (r * s * s * (t / k) * (k / alpha) * x) as i64,
            target_level.n() as i64,
        )?,
        level: target_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(d: u64, c: u64) -> Level {
        Level::new(d, c).unwrap()
    }

    fn pt(a: i64, c: i64) -> CuspPoint {
        CuspPoint::new(a, c).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_cusps(lv(3, 3)),
            vec![
                CuspRep::new(1, 1, 1, 1),
                CuspRep::new(1, 3, 1, 1),
                CuspRep::new(1, 1, 3, 1),
                CuspRep::new(1, 1, 3, 2),
            ]
        );
        assert_eq!(
            enumerate_cusps(lv(11, 1)),
            vec![CuspRep::new(1, 1, 1, 1), CuspRep::new(11, 1, 1, 1)]
        );
        assert_eq!(enumerate_cusps(lv(15, 3)).len(), 8);
    }

    #[test]
    fn count_examples() {
        assert_eq!(cusp_count(9), 4);
        assert_eq!(cusp_count(15), 4);
        assert_eq!(cusp_count(45), 8);
    }

    #[test]
    fn width_examples() {
        assert_eq!(width_gamma0(&CuspRep::new(1, 1, 1, 1)), 1);
        assert_eq!(width_gamma0(&CuspRep::new(1, 3, 1, 1)), 9);
        assert_eq!(width_gamma0(&CuspRep::new(11, 1, 1, 1)), 11);
        assert_eq!(width_gamma1(&CuspRep::new(1, 1, 3, 2)), 3);
        assert_eq!(width_gamma1(&CuspRep::new(1, 3, 1, 1)), 9);
    }

    #[test]
    fn point_examples() {
        let l = lv(3, 3);
        assert_eq!(to_point(&CuspRep::new(1, 1, 1, 1), l), pt(1, 9));
        assert_eq!(to_point(&CuspRep::new(1, 3, 1, 1), l), pt(1, 1));
        assert_eq!(to_point(&CuspRep::new(1, 1, 3, 2), l), pt(2, 3));
        assert_eq!(pt(-2, -6), pt(1, 3));
        assert_eq!(pt(-4, 0), CuspPoint::infinity());
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&pt(1, 11), &pt(2, 11), 11));
        assert!(!equivalent(&pt(0, 1), &pt(1, 11), 11));
        assert!(!equivalent(&pt(1, 3), &pt(2, 3), 9));
        assert!(equivalent(&pt(1, 11), &CuspPoint::infinity(), 11));
        assert!(equivalent(&pt(5, 3), &pt(2, 3), 9));
    }

    #[test]
    fn canonicalize_examples() {
        let l = lv(3, 3);
        assert_eq!(
            canonicalize(&pt(1, 9), l).unwrap(),
            CuspRep::new(1, 1, 1, 1)
        );
        assert_eq!(
            canonicalize(&pt(1, 1), l).unwrap(),
            CuspRep::new(1, 3, 1, 1)
        );
        assert_eq!(
            canonicalize(&pt(5, 3), l).unwrap(),
            CuspRep::new(1, 1, 3, 2)
        );
        assert_eq!(
            canonicalize(&CuspPoint::infinity(), l).unwrap(),
            CuspRep::new(1, 1, 1, 1)
        );
    }

    #[test]
    fn reduction_examples() {
        let (rep, l) =
            reduce_level(&CuspRep::new(1, 3, 1, 1), lv(3, 3), 3, ReductionCase::S).unwrap();
        assert_eq!((rep, l), (CuspRep::new(1, 1, 1, 1), lv(1, 1)));
        let (rep, l) =
            reduce_level(&CuspRep::new(1, 1, 3, 1), lv(3, 3), 3, ReductionCase::T).unwrap();
        assert_eq!((rep, l), (CuspRep::new(1, 1, 1, 3), lv(1, 1)));
        let (rep, l) =
            reduce_level(&CuspRep::new(5, 1, 1, 1), lv(15, 3), 5, ReductionCase::R).unwrap();
        assert_eq!((rep, l), (CuspRep::new(1, 1, 1, 1), lv(3, 3)));
        assert!(reduce_level(&CuspRep::new(1, 1, 1, 1), lv(3, 3), 3, ReductionCase::S).is_err());
        assert!(ReductionCase::from_index(6).is_err());
    }

    #[test]
    fn small_level_invariants() {
        for level in Level::all_up_to(400) {
            let reps = enumerate_cusps(level);
            assert_eq!(reps.len() as u64, cusp_count(level.n()), "{level}");
            let widths: u64 = reps.iter().map(width_gamma0).sum();
            assert_eq!(widths, arith::index_mu(level.n()).unwrap(), "{level}");
            for rep in &reps {
                rep.validate(level).unwrap();
                assert_eq!(canonicalize(&to_point(rep, level), level).unwrap(), *rep);
            }
        }
    }
}
