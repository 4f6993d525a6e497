#![allow(dead_code)]

use std::time::{Duration, Instant};

use quadcusp::CuspPoint;

/// Searches Γ₀(N) for a matrix [[α, β], [Nγ, δ]] sending p1 to ±p2, with
/// |γ| ≤ 4B², B the largest of N and the entries of both points. The bottom
/// row fixes δ, and the top row follows from Cramer's rule.
pub fn brute_equivalent(p1: &CuspPoint, p2: &CuspPoint, n: u64) -> bool {
    let (mut p1, mut p2) = (*p1, *p2);
    if p1.is_infinity() && p2.is_infinity() {
        return true;
    }
    if p1.is_infinity() {
        std::mem::swap(&mut p1, &mut p2);
    }
    let n = n as i128;
    let (a1, c1) = (p1.a() as i128, p1.c() as i128);
    let (a2, c2) = (p2.a() as i128, p2.c() as i128);
    if c2 == 0 {
        // γ⁻¹ sends ∞ to a₁/c₁, so its lower-left entry ±c₁ must be a multiple of N
        return c1 % n == 0;
    }
    let b = [n, a1.abs(), c1, a2.abs(), c2].into_iter().max().unwrap();
    let bound = 4 * b * b;
    for gamma in -bound..=bound {
        for eps in [1i128, -1] {
            let rest = eps * c2 - n * gamma * a1;
            if rest % c1 != 0 {
                continue;
            }
            let delta = rest / c1;
            // [[a1, c1], [δ, −Nγ]]·(α, β) = (ε·a2, 1), determinant −ε·c2
            let det = -eps * c2;
            let alpha = eps * a2 * (-n * gamma) - c1;
            let beta = a1 - delta * eps * a2;
            if alpha % det == 0 && beta % det == 0 {
                return true;
            }
        }
    }
    false
}

/// Runs one criterion, prints its PASS/FAIL line, and enforces the time limit.
pub fn criterion<F>(number: u32, name: &str, limit: Duration, body: F)
where
    F: FnOnce() -> Result<(), String>,
{
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let within = elapsed < limit;
    let status = if outcome.is_ok() && within {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "[{status}] criterion {number:>2}: {name} ({:.2?}, limit {:.0?})",
        elapsed, limit
    );
    if let Err(msg) = outcome {
        panic!("criterion {number} failed: {msg}");
    }
    assert!(
        within,
        "criterion {number} took {elapsed:.2?}, limit {limit:.0?}"
    );
}
