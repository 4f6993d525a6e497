//! Constant terms a₀(E_{M,L,χ}; [x]) at every cusp, in units of n_χ.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{self, q, qi, Rational};
use crate::cusps::{self, CuspPoint, CuspRep};
use crate::eisenstein::EisTriple;
use crate::error::Result;
use crate::level::Level;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Group {
    Gamma0,
    Gamma1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantEntry {
    pub cusp: CuspRep,
    pub rho: Rational,
    pub width: u64,
}

/// The constant term of a triple at every enumerated cusp.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantVector {
    pub triple: EisTriple,
    pub entries: Vec<ConstantEntry>,
}

impl ConstantVector {
    pub fn closed(triple: &EisTriple) -> Result<Self> {
        let entries = cusps::enumerate_cusps(triple.level())
            .into_iter()
            .map(|cusp| {
                Ok(ConstantEntry {
                    rho: rho_closed(triple, &cusp)?,
                    width: cusps::width_gamma0(&cusp),
                    cusp,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            triple: *triple,
            entries,
        })
    }

    /// Σ width·rho, zero by the residue theorem.
    pub fn residue_sum(&self) -> Rational {
        self.entries
            .iter()
            .map(|e| &e.rho * qi(e.width as i64))
            .sum()
    }
}

/// Whether the closed formula is supported at `rep`.
pub fn in_support(triple: &EisTriple, rep: &CuspRep) -> bool {
    let d = triple.level().d();
    arith::gcd(rep.s, triple.f()) == 1
        && (rep.s * rep.t).is_multiple_of(triple.gcd_ml())
        && (rep.r * rep.s).is_multiple_of(d / triple.m())
}

/// a₀(E_{M,L,χ}; [rs²tx/DC]) / n_χ from the closed formula.
pub fn rho_closed(triple: &EisTriple, rep: &CuspRep) -> Result<Rational> {
    let level = triple.level();
    rep.validate(level)?;
    if !in_support(triple, rep) {
        return Ok(Rational::zero());
    }
    let (d, n) = (level.d(), level.n());
    let (f, l) = (triple.f(), triple.l());
    let chi = triple.chi();
    let CuspRep { r, s, t, x } = *rep;

    let prefactor =
        qi((arith::euler_phi(d / f)? * arith::psi_plus(l / f)?) as i64) * q(f as i64, l as i64);
    let sign = if arith::nu(d / (f * r * s))? % 2 == 0 {
        1
    } else {
        -1
    };
    let arg = q(n as i64, (f * r * s * s * t * x) as i64);
    let chi_val = chi.eval_rational(&arg)?;
    let mut value = prefactor * qi(sign * chi_val as i64) / qi((r * s) as i64);
    for p in arith::prime_divisors(arith::gcd(s, triple.gcd_ml())) {
        value *= q(p as i64 - 1, p as i64);
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Plus(u64),
    Minus(u64),
}

impl Op {
    fn prime(self) -> u64 {
        match self {
            Op::Plus(p) | Op::Minus(p) => p,
        }
    }
}

/// Evaluates the operator recursion on exact cusp points.
struct Recursion {
    ops: Vec<Op>,
    levels: Vec<Level>,
    chi: crate::characters::QuadraticCharacter,
    f: u64,
    memo: HashMap<(usize, CuspRep), Rational>,
}

impl Recursion {
    fn new(triple: &EisTriple) -> Result<Self> {
        let f = triple.f();
        let mut ops: Vec<Op> = arith::prime_divisors(triple.m() / f)
            .into_iter()
            .map(Op::Plus)
            .collect();
        ops.extend(
            arith::prime_divisors(triple.l() / f)
                .into_iter()
                .map(Op::Minus),
        );
        let mut levels = Vec::with_capacity(ops.len() + 1);
        let mut n = f * f;
        levels.push(Level::from_n(n)?);
        for op in &ops {
            n *= op.prime();
            levels.push(Level::from_n(n)?);
        }
        Ok(Self {
            ops,
            levels,
            chi: triple.chi(),
            f,
            memo: HashMap::new(),
        })
    }

    /// a₀ / n_χ of the form after the first `k` operators, at the point `p`.
    /// The chain ends at level M·L, which may properly divide DC.
    fn eval(&mut self, k: usize, p: &CuspPoint) -> Result<Rational> {
        let level = self.levels[k];
        let rep = cusps::canonicalize(p, level)?;
        if let Some(v) = self.memo.get(&(k, rep)) {
            return Ok(v.clone());
        }
        let value = if k == 0 {
            if rep.s == 1 && rep.t == self.f {
                qi(self.chi.eval_u(rep.x) as i64)
            } else {
                Rational::zero()
            }
        } else {
            let op = self.ops[k - 1];
            let prime = op.prime();
            let point = cusps::to_point(&rep, level);
            let divides = point.c().is_multiple_of(prime);
            let shifted = CuspPoint::new(point.a() * prime as i64, point.c() as i64)?;
            let pi = prime as i64;
            let w = match (op, divides) {
                (Op::Plus(_), true) => qi(pi),
                (Op::Plus(_), false) => q(1, pi),
                (Op::Minus(_), true) => Rational::one(),
                (Op::Minus(_), false) => q(1, pi * pi),
            };
            let chi_p = qi(self.chi.eval_u(prime) as i64);
            self.eval(k - 1, &point)? - w * chi_p * self.eval(k - 1, &shifted)?
        };
        self.memo.insert((k, rep), value.clone());
        Ok(value)
    }
}

/// a₀(E_{M,L,χ}; [rs²tx/DC]) / n_χ by peeling the operators [p]^± one prime
/// at a time down to E_χ on X₀(f²).
pub fn rho_recursive(triple: &EisTriple, rep: &CuspRep) -> Result<Rational> {
    rep.validate(triple.level())?;
    let mut rec = Recursion::new(triple)?;
    let k = rec.ops.len();
    rec.eval(k, &cusps::to_point(rep, triple.level()))
}

/// Recursive values at every enumerated cusp, sharing one memo table.
pub fn rho_recursive_all(triple: &EisTriple) -> Result<Vec<(CuspRep, Rational)>> {
    let mut rec = Recursion::new(triple)?;
    let k = rec.ops.len();
    cusps::enumerate_cusps(triple.level())
        .into_iter()
        .map(|rep| {
            let v = rec.eval(k, &cusps::to_point(&rep, triple.level()))?;
            Ok((rep, v))
        })
        .collect()
}

/// width·rho at every cusp.
pub fn delta_vector(triple: &EisTriple) -> Result<Vec<(CuspRep, Rational)>> {
    Ok(ConstantVector::closed(triple)?
        .entries
        .into_iter()
        .map(|e| (e.cusp, e.rho * qi(e.width as i64)))
        .collect())
}

/// Generator of the residue lattice, in units of n_χ.
pub fn lattice_r(triple: &EisTriple, group: Group) -> Rational {
    let level = triple.level();
    let (d, f, l) = (level.d(), triple.f(), triple.l());
    let base = arith::euler_phi(d / f).expect("positive")
        * arith::psi_plus(l / f).expect("square-free")
        * arith::gcd(d / triple.m(), level.c());
    let r0 = qi(base as i64) * q(f as i64, l as i64);
    match group {
        Group::Gamma0 => r0,
        Group::Gamma1 => r0 * qi(f as i64),
    }
}

/// The content of {width·rho}, with Γ₀ or Γ₁ ramification indices.
pub fn residue_content(triple: &EisTriple, group: Group) -> Result<Rational> {
    let v = ConstantVector::closed(triple)?;
    let weighted: Vec<Rational> = v
        .entries
        .iter()
        .map(|e| {
            let w = match group {
                Group::Gamma0 => cusps::width_gamma0(&e.cusp),
                Group::Gamma1 => cusps::width_gamma1(&e.cusp),
            };
            &e.rho * qi(w as i64)
        })
        .collect();
    Ok(arith::rational_content(&weighted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::enumerate_quadratic_triples;

    fn triple(d: u64, c: u64, m: u64, l: u64, f: u64) -> EisTriple {
        EisTriple::new(Level::new(d, c).unwrap(), m, l, f).unwrap()
    }

    fn rep(r: u64, s: u64, t: u64, x: u64) -> CuspRep {
        CuspRep::new(r, s, t, x)
    }

    #[test]
    fn closed_examples() {
        let e = triple(3, 3, 3, 3, 3);
        assert_eq!(rho_closed(&e, &rep(1, 1, 3, 1)).unwrap(), qi(1));
        assert_eq!(rho_closed(&e, &rep(1, 1, 3, 2)).unwrap(), qi(-1));
        assert_eq!(rho_closed(&e, &rep(1, 1, 1, 1)).unwrap(), qi(0));
        let e = triple(11, 1, 11, 1, 1);
        assert_eq!(rho_closed(&e, &rep(1, 1, 1, 1)).unwrap(), qi(-10));
        assert_eq!(rho_closed(&e, &rep(11, 1, 1, 1)).unwrap(), q(10, 11));
    }

    #[test]
    fn recursive_examples() {
        let e = triple(3, 3, 3, 3, 3);
        for r in cusps::enumerate_cusps(e.level()) {
            assert_eq!(rho_recursive(&e, &r).unwrap(), rho_closed(&e, &r).unwrap());
        }
        assert_eq!(
            rho_recursive(&triple(3, 1, 3, 1, 1), &rep(1, 1, 1, 1)).unwrap(),
            qi(-2)
        );
        assert_eq!(
            rho_recursive(&triple(15, 1, 15, 1, 1), &rep(15, 1, 1, 1)).unwrap(),
            q(8, 15)
        );
    }

    #[test]
    fn delta_examples() {
        let d = delta_vector(&triple(11, 1, 11, 1, 1)).unwrap();
        assert_eq!(
            d,
            vec![(rep(1, 1, 1, 1), qi(-10)), (rep(11, 1, 1, 1), qi(10))]
        );
        let d = delta_vector(&triple(3, 3, 3, 3, 3)).unwrap();
        let vals: Vec<Rational> = d.into_iter().map(|(_, v)| v).collect();
        assert_eq!(vals, vec![qi(0), qi(0), qi(1), qi(-1)]);
    }

    #[test]
    fn lattice_examples() {
        let e = triple(3, 3, 3, 3, 3);
        assert_eq!(lattice_r(&e, Group::Gamma0), qi(1));
        assert_eq!(lattice_r(&e, Group::Gamma1), qi(3));
        assert_eq!(residue_content(&e, Group::Gamma1).unwrap(), qi(3));
        assert_eq!(lattice_r(&triple(11, 1, 11, 1, 1), Group::Gamma0), qi(10));
        assert_eq!(lattice_r(&triple(15, 1, 15, 1, 1), Group::Gamma0), qi(8));
    }

    #[test]
    fn small_levels_agree() {
        for level in Level::all_up_to(100) {
            for t in enumerate_quadratic_triples(level) {
                let v = ConstantVector::closed(&t).unwrap();
                assert!(v.residue_sum().is_zero(), "{t}");
                let rec = rho_recursive_all(&t).unwrap();
                for (e, (r, value)) in v.entries.iter().zip(&rec) {
                    assert_eq!(e.cusp, *r);
                    assert_eq!(e.rho, *value, "{t} at {r}");
                }
                assert_eq!(
                    residue_content(&t, Group::Gamma0).unwrap(),
                    lattice_r(&t, Group::Gamma0),
                    "{t}"
                );
            }
        }
    }
}
