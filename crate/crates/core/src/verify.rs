//! Grid checks of every identity the crate relies on. Each check walks a
//! range of levels in parallel and merges failures in level order.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, qi};
use crate::characters::QuadraticCharacter;
use crate::cusp_constants::{self, ConstantVector, Group};
use crate::cusps::{self, CuspPoint, CuspRep, ReductionCase};
use crate::eisenstein::{self, EisTriple};
use crate::error::Result;
use crate::hecke_phi;
use crate::level::Level;
use crate::lfunc;
use crate::orders;

const MAX_REPORTED: usize = 20;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(name: &str, parts: Vec<(usize, Vec<String>)>) -> Self {
        let checked = parts.iter().map(|(n, _)| n).sum();
        let mut failures: Vec<String> = parts.into_iter().flat_map(|(_, f)| f).collect();
        failures.truncate(MAX_REPORTED);
        Self {
            name: name.to_string(),
            checked,
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn new(checks: Vec<CheckOutcome>) -> Self {
        Self {
            ok: checks.iter().all(CheckOutcome::passed),
            checks,
        }
    }
}

/// Bounds for [`run_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub dc_max: u64,
    pub prec: usize,
    pub ell_max: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            dc_max: 400,
            prec: 200,
            ell_max: 20,
        }
    }
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }

    fn done(self) -> (usize, Vec<String>) {
        (self.checked, self.failures)
    }
}

fn over_levels<F>(name: &str, levels: Vec<Level>, per_level: F) -> CheckOutcome
where
    F: Fn(Level, &mut Tally) + Sync,
{
    let parts = levels
        .into_par_iter()
        .map(|level| {
            let mut t = Tally::new();
            per_level(level, &mut t);
            t.done()
        })
        .collect();
    CheckOutcome::collect(name, parts)
}

/// order_away_6f(p, 1, (p, 1, 1)) = prime-to-6 part of (p − 1)/gcd(p − 1, 12).
pub fn check_mazur(p_max: u64) -> CheckOutcome {
    let mut t = Tally::new();
    for p in arith::primes_up_to(p_max) {
        let expected = arith::strip_primes(&BigInt::from((p - 1) / arith::gcd(p - 1, 12)), &[2, 3]);
        let triple = Level::new(p, 1).and_then(|l| EisTriple::new(l, p, 1, 1));
        let got = triple
            .and_then(|t| orders::order_away_6f(&t))
            .map(|o| o.value);
        t.check(got.as_ref() == Ok(&expected), || {
            format!("p = {p}: {got:?} vs {expected}")
        });
    }
    CheckOutcome::collect("mazur", vec![t.done()])
}

/// #H(DC) = #cusps − 1 over square-free D ≤ d_max.
pub fn check_dimension(d_max: u64) -> CheckOutcome {
    over_levels("dimension", Level::all_with_d_up_to(d_max), |level, t| {
        let h = eisenstein::count_h(level);
        let c = cusps::cusp_count(level.n());
        t.check(h + 1 == c, || format!("{level}: #H = {h}, cusps = {c}"));
    })
}

/// Operator and closed q-expansions agree and are normalized.
pub fn check_two_paths(dc_max: u64, prec: usize) -> CheckOutcome {
    over_levels("two_paths", Level::all_up_to(dc_max), |level, t| {
        for e in eisenstein::enumerate_quadratic_triples(level) {
            let a = eisenstein::qexp_operator(&e, prec);
            let b = eisenstein::qexp_closed(&e, prec);
            t.check_result(a.map(|a| a == b && eisenstein::is_normalized(&b)), || {
                format!("{e}")
            });
        }
    })
}

/// T_ℓ E = λ_ℓ E for primes ℓ ≤ ell_max.
pub fn check_eigenvalues(dc_max: u64, prec: usize, ell_max: u64) -> CheckOutcome {
    let primes = arith::primes_up_to(ell_max);
    over_levels("eigenvalues", Level::all_up_to(dc_max), |level, t| {
        let triples = eisenstein::enumerate_quadratic_triples(level);
        for e in &triples {
            let g = eisenstein::qexp_closed(e, prec);
            for &ell in &primes {
                t.check_result(eisenstein::is_eigenform(&g, e, ell), || {
                    format!("{e}, ell = {ell}")
                });
            }
        }
        let systems: Vec<_> = triples
            .iter()
            .map(|e| eisenstein::eigen_system(e, 30))
            .collect();
        for i in 0..systems.len() {
            for j in i + 1..systems.len() {
                t.check(systems[i] != systems[j], || {
                    format!("{} and {} share eigenvalues", triples[i], triples[j])
                });
            }
        }
    })
}

fn constants_for(e: &EisTriple, t: &mut Tally) -> Result<()> {
    let level = e.level();
    let closed = ConstantVector::closed(e)?;
    let recursive = cusp_constants::rho_recursive_all(e)?;
    for (entry, (rep, rho)) in closed.entries.iter().zip(&recursive) {
        t.check(entry.cusp == *rep && entry.rho == *rho, || {
            format!("{e} at {rep}: closed {} vs recursive {rho}", entry.rho)
        });
        let supported = cusp_constants::in_support(e, rep);
        t.check(supported == !rho.is_zero(), || {
            format!("{e} at {rep}: support")
        });
    }
    t.check(closed.residue_sum().is_zero(), || {
        format!("{e}: residue sum")
    });
    for group in [Group::Gamma0, Group::Gamma1] {
        let content = cusp_constants::residue_content(e, group)?;
        let expected = cusp_constants::lattice_r(e, group);
        t.check(content == expected, || {
            format!("{e}: {group:?} content {content} vs {expected}")
        });
    }
    let chi = e.chi();
    for entry in closed.entries.iter().filter(|en| en.cusp.t > 1) {
        for alpha in (2..=2 * entry.cusp.t).filter(|&a| arith::gcd(a, level.d()) == 1) {
            let rep = entry.cusp;
            let twisted = CuspRep::new(rep.r, rep.s, rep.t, alpha * rep.x);
            let canonical = cusps::canonicalize(&cusps::to_point(&twisted, level), level)?;
            let rho = cusp_constants::rho_closed(e, &canonical)?;
            let expected = &entry.rho * qi(chi.eval_u(alpha) as i64);
            t.check(rho == expected, || {
                format!("{e} at {rep}: twist by {alpha}")
            });
        }
    }
    Ok(())
}

/// Closed versus recursive constant terms, residue sums, support, twist
/// covariance and lattice content.
pub fn check_constants(dc_max: u64) -> CheckOutcome {
    over_levels("constants", Level::all_up_to(dc_max), |level, t| {
        for e in eisenstein::enumerate_quadratic_triples(level) {
            if let Err(err) = constants_for(&e, t) {
                t.check(false, || format!("{e}: {err}"));
            }
        }
    })
}

/// Enumeration size, inequivalence, widths and canonicalization.
pub fn check_cusps(dc_max: u64) -> CheckOutcome {
    over_levels("cusps", Level::all_up_to(dc_max), |level, t| {
        let n = level.n();
        let reps = cusps::enumerate_cusps(level);
        t.check(reps.len() as u64 == cusps::cusp_count(n), || {
            format!("{level}: count")
        });
        let widths: u64 = reps.iter().map(cusps::width_gamma0).sum();
        t.check(widths == arith::index_mu(n).unwrap_or(0), || {
            format!("{level}: widths")
        });
        let points: Vec<CuspPoint> = reps.iter().map(|r| cusps::to_point(r, level)).collect();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                t.check(!cusps::equivalent(&points[i], &points[j], n), || {
                    format!("{level}: {} ~ {}", reps[i], reps[j])
                });
            }
            let back = cusps::canonicalize(&points[i], level);
            t.check(back.as_ref() == Ok(&reps[i]), || {
                format!("{level}: canonicalize {}", reps[i])
            });
        }
    })
}

/// Every applicable single-prime reduction and the two composite ones.
pub fn check_reductions(dc_max: u64) -> CheckOutcome {
    over_levels("reductions", Level::all_up_to(dc_max), |level, t| {
        for rep in cusps::enumerate_cusps(level) {
            let source = cusps::to_point(&rep, level);
            for p in arith::prime_divisors(level.d()) {
                for case in ReductionCase::ALL {
                    if let Ok((low, low_level)) = cusps::reduce_level(&rep, level, p, case) {
                        let target = cusps::to_point(&low, low_level);
                        t.check(cusps::equivalent(&source, &target, low_level.n()), || {
                            format!("{level}, {rep}, p = {p}, {case:?}")
                        });
                    }
                }
            }
            for k in arith::divisors(level.d()) {
                for alpha in arith::divisors(k) {
                    if arith::gcd(k, rep.r * rep.s * rep.t) == 1 {
                        let red = cusps::reduce_coprime_block(&rep, level, k, alpha);
                        t.check_result(red.map(|r| r.holds()), || {
                            format!("{level}, {rep}, K = {k}, alpha = {alpha} (coprime block)")
                        });
                    }
                    if rep.t % k == 0 {
                        let red = cusps::reduce_t_block(&rep, level, k, alpha);
                        t.check_result(red.map(|r| r.holds()), || {
                            format!("{level}, {rep}, K = {k}, alpha = {alpha} (t block)")
                        });
                    }
                }
            }
        }
    })
}

/// Definition of E_χ through Hecke functions, and the [p]⁺E₁ identity.
pub fn check_echi(f_max: u64, n_echi: usize, primes: &[u64], n_plus: usize) -> CheckOutcome {
    let conductors: Vec<u64> = (3..=f_max)
        .filter(|&f| QuadraticCharacter::new(f).is_ok())
        .collect();
    let mut parts: Vec<(usize, Vec<String>)> = conductors
        .par_iter()
        .map(|&f| {
            let mut t = Tally::new();
            let chi = QuadraticCharacter::new(f).expect("filtered");
            t.check_result(hecke_phi::verify_echi_definition(&chi, n_echi), || {
                format!("f = {f}")
            });
            t.done()
        })
        .collect();
    let mut t = Tally::new();
    for &p in primes {
        t.check_result(hecke_phi::verify_p_plus_e1(p, n_plus), || {
            format!("[{p}]+ E_1")
        });
    }
    parts.push(t.done());
    CheckOutcome::collect("echi_definition", parts)
}

/// L-series factorization and the vanishing pattern of Λ.
pub fn check_lfunctions(dc_max: u64, n: usize, eta_conductors: &[u64]) -> CheckOutcome {
    over_levels("lfunctions", Level::all_up_to(dc_max), |level, t| {
        for e in eisenstein::enumerate_quadratic_triples(level) {
            for &fe in eta_conductors {
                if arith::gcd(fe, level.d()) != 1 {
                    continue;
                }
                let eta = match QuadraticCharacter::new(fe) {
                    Ok(eta) => eta,
                    Err(_) => continue,
                };
                t.check_result(lfunc::verify_factorization(&e, &eta, n), || {
                    format!("{e}, eta = {eta}")
                });
                let psi = match e.chi().product(&eta) {
                    Ok(psi) if !psi.is_trivial() => psi,
                    _ => continue,
                };
                let vanishes_expected = psi.parity() == 1
                    || arith::prime_divisors(e.m() / e.f())
                        .into_iter()
                        .any(|p| psi.eval_u(p) == 1)
                    || psi.b1().map(|b| b.is_zero()).unwrap_or(true);
                let lam = lfunc::lambda_algebraic(&e, &eta);
                t.check_result(lam.map(|l| l.is_zero() == vanishes_expected), || {
                    format!("{e}, eta = {eta}: vanishing of Lambda")
                });
            }
        }
    })
}

/// d_χ for prime conductors against χ(−1)(p² − 1)/(6p).
pub fn check_d_chi(p_max: u64) -> CheckOutcome {
    let mut t = Tally::new();
    for p in arith::primes_up_to(p_max).into_iter().filter(|&p| p > 2) {
        let chi = QuadraticCharacter::new(p).expect("odd prime");
        let pi = p as i64;
        let expected = qi(chi.parity() as i64) * arith::q(pi * pi - 1, 6 * pi);
        t.check(chi.d_chi() == expected, || format!("p = {p}"));
    }
    CheckOutcome::collect("d_chi", vec![t.done()])
}

/// Agreement of the two order computations away from 6f, and the period
/// lattice consistency.
pub fn check_orders(dc_max: u64) -> CheckOutcome {
    over_levels("orders", Level::all_up_to(dc_max), |level, t| {
        for e in eisenstein::enumerate_quadratic_triples(level) {
            let agree = (|| -> Result<bool> {
                let full = orders::order_thm41(&e)?;
                let away = orders::order_away_6f(&e)?;
                orders::index_prediction(&e)?;
                orders::periods_report(&e)?;
                Ok(arith::strip_primes(&full, &away.inverted) == away.value)
            })();
            t.check_result(agree, || format!("{e}"));
        }
    })
}

/// Spot values of the order table.
pub fn check_order_spots() -> CheckOutcome {
    let mut t = Tally::new();
    for (d, c, m, l, f, expected) in [(11, 11, 11, 11, 11, 5u64), (23, 1, 23, 1, 1, 11)] {
        let got = Level::new(d, c)
            .and_then(|lv| EisTriple::new(lv, m, l, f))
            .and_then(|e| orders::order_away_6f(&e))
            .map(|o| o.value);
        t.check(got == Ok(BigInt::from(expected)), || {
            format!("({d},{c},{m},{l},{f}): {got:?}")
        });
    }
    CheckOutcome::collect("order_spots", vec![t.done()])
}

/// Every check, scaled by `config`.
pub fn run_all(config: &VerifyConfig) -> VerifyReport {
    let dc = config.dc_max;
    VerifyReport::new(vec![
        check_mazur(97),
        check_dimension(dc),
        check_two_paths(dc, config.prec),
        check_eigenvalues(dc, config.prec, config.ell_max),
        check_constants(dc),
        check_cusps(dc),
        check_reductions(dc),
        check_echi(15, 8, &[2, 3, 5, 7], 12),
        check_lfunctions(dc, config.prec.min(100), &[1, 3, 5, 7]),
        check_d_chi(50),
        check_orders(dc),
        check_order_spots(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        let report = run_all(&VerifyConfig {
            dc_max: 40,
            prec: 40,
            ell_max: 11,
        });
        for c in &report.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.failures);
            assert!(c.checked > 0, "{}", c.name);
        }
        assert!(report.ok);
    }
}
