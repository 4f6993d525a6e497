use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// The level Γ₀(DC) with D square-free and C | D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Level {
    d: u64,
    c: u64,
}

impl Level {
    pub fn new(d: u64, c: u64) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidLevel {
            d,
            c,
            reason: reason.to_string(),
        };
        if d == 0 || c == 0 {
            return Err(invalid("D and C must be positive"));
        }
        if !arith::is_squarefree(d) {
            return Err(invalid("D must be square-free"));
        }
        if !d.is_multiple_of(c) {
            return Err(invalid("C must divide D"));
        }
        Ok(Self { d, c })
    }

    /// The level of a positive integer N with v_p(N) ≤ 2 for every p.
    pub fn from_n(n: u64) -> Result<Self> {
        let f = arith::factor(n)?;
        let mut d = 1;
        let mut c = 1;
        for &(p, e) in f.factors() {
            match e {
                1 => d *= p,
                2 => {
                    d *= p;
                    c *= p;
                }
                _ => {
                    return Err(Error::InvalidLevel {
                        d: n,
                        c: 1,
                        reason: format!("{p}^{e} divides N; only exponents ≤ 2 occur"),
                    })
                }
            }
        }
        Self::new(d, c)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// N = D·C.
    pub fn n(&self) -> u64 {
        self.d * self.c
    }

    /// Every valid level with N = D·C ≤ `n_max`, ordered by (D, C).
    pub fn all_up_to(n_max: u64) -> Vec<Level> {
        let mut out = Vec::new();
        for d in 1..=n_max {
            if !arith::is_squarefree(d) {
                continue;
            }
            for c in arith::divisors(d) {
                if d * c <= n_max {
                    out.push(Level { d, c });
                }
            }
        }
        out
    }

    /// Every valid level with D ≤ `d_max`, ordered by (D, C).
    pub fn all_with_d_up_to(d_max: u64) -> Vec<Level> {
        (1..=d_max)
            .filter(|&d| arith::is_squarefree(d))
            .flat_map(|d| arith::divisors(d).into_iter().map(move |c| Level { d, c }))
            .collect()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(D={}, C={})", self.d, self.c)
    }
}
