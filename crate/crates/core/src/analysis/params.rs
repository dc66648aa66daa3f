use serde::Serialize;

use crate::complex::{binomial, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::beta1_z2;

/// `(β_1, d, f_0)` solving `(f_0-d-1)(f_0-d-2) = β_1 (d+1)(d+2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ParameterTriple {
    pub beta1: u64,
    pub d: u64,
    pub f0: u64,
}

impl ParameterTriple {
    pub fn satisfies_equation(&self) -> bool {
        let (n, d) = (self.f0 as u128, self.d as u128);
        n >= d + 2 && (n - d - 1) * (n - d - 2) == self.beta1 as u128 * (d + 1) * (d + 2)
    }
}

/// Both sides of `C(f_0-d-1, 2) >= C(d+2, 2) β_1` for a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightReport {
    pub f0: u64,
    pub d: u64,
    pub beta1: u64,
    pub lhs: u128,
    pub rhs: u128,
    pub satisfies_inequality: bool,
    pub is_equality: bool,
}

pub fn tight_neighborly_check(m: &SimplicialComplex, d: usize) -> Result<TightReport> {
    if m.is_empty() || m.dim() != d {
        return Err(Error::Precondition(format!("expected a {d}-dimensional complex, got dimension {}", m.dim())));
    }
    if !m.is_connected() {
        return Err(Error::Precondition("tight-neighborliness bound needs a connected complex".into()));
    }
    let f0 = m.num_vertices() as u64;
    let d = d as u64;
    let beta1 = beta1_z2(m);
    let lhs = binomial(f0.saturating_sub(d + 1), 2) as u128;
    let rhs = binomial(d + 2, 2) as u128 * beta1 as u128;
    Ok(TightReport { f0, d, beta1, lhs, rhs, satisfies_inequality: lhs >= rhs, is_equality: lhs == rhs })
}

/// All `(d, f_0)` with `3 <= d <= d_max` solving the tight-neighborliness
/// equation for the given `β_1`, ascending in `d`.
///
/// With `m = f_0 - d - 2` the equation reads `m(m+1) = K`, so a solution
/// exists iff `4K + 1` is a perfect square.
pub fn parameter_solutions(beta1: u64, d_max: u64) -> Result<Vec<ParameterTriple>> {
    if beta1 < 1 {
        return Err(Error::Range("beta1 must be at least 1".into()));
    }
    if d_max < 3 {
        return Err(Error::Range("d_max must be at least 3".into()));
    }
    let mut out = Vec::new();
    for d in 3..=d_max {
        let disc = beta1
            .checked_mul(d + 1)
            .and_then(|k| k.checked_mul(d + 2))
            .and_then(|k| k.checked_mul(4))
            .and_then(|k| k.checked_add(1))
            .ok_or_else(|| {
                Error::Range(format!("4*beta1*(d+1)*(d+2)+1 overflows 64 bits at d={d}; keep beta1*(d+2)^2 below 2^62"))
            })?;
        let root = disc.isqrt();
        if root * root != disc {
            continue;
        }
        let m = (root - 1) / 2;
        out.push(ParameterTriple { beta1, d, f0: m + d + 2 });
    }
    Ok(out)
}

/// `C(n-d-1, 2) >= d^2 + 3d + 3`.
pub fn corollary_bound_check(n: u64, d: u64) -> bool {
    let lhs = binomial(n.saturating_sub(d + 1), 2) as u128;
    let rhs = (d as u128) * (d as u128) + 3 * d as u128 + 3;
    lhs >= rhs
}
