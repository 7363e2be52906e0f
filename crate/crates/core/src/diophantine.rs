//! Integer solutions of `a·u − b·v = c`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// All solutions `u = u0 + k·du`, `v = v0 + k·dv` for integer `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFamily {
    pub u0: BigInt,
    pub v0: BigInt,
    pub du: BigInt,
    pub dv: BigInt,
}

/// Range of the family parameter `k` admitted by box constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamRange {
    Empty,
    Bounded { lo: BigInt, hi: BigInt },
    Unbounded,
}

impl ParamRange {
    /// Number of admitted parameters; `None` when unbounded.
    pub fn count(&self) -> Option<BigInt> {
        match self {
            ParamRange::Empty => Some(BigInt::zero()),
            ParamRange::Bounded { lo, hi } => Some(hi - lo + 1),
            ParamRange::Unbounded => None,
        }
    }
}

/// Solves `a·u − b·v = c`. Returns `None` when `gcd(a, b)` does not divide
/// `c` or when `a = b = 0`.
pub fn solve_linear(a: &BigInt, b: &BigInt, c: &BigInt) -> Option<LinearFamily> {
    if a.is_zero() && b.is_zero() {
        return None;
    }
    let ext = a.extended_gcd(b);
    let g = ext.gcd;
    let (scale, rem) = c.div_rem(&g);
    if !rem.is_zero() {
        return None;
    }
    // a·x + b·y = g  =>  a·(x·c/g) − b·(−y·c/g) = c
    Some(LinearFamily { u0: ext.x * &scale, v0: -(ext.y * &scale), du: b / &g, dv: a / &g })
}

impl LinearFamily {
    pub fn at(&self, k: &BigInt) -> (BigInt, BigInt) {
        (&self.u0 + k * &self.du, &self.v0 + k * &self.dv)
    }

    /// Parameters `k` with `u_lo ≤ u ≤ u_hi` and `v_lo ≤ v ≤ v_hi`.
    pub fn range_within(&self, (u_lo, u_hi): (&BigInt, &BigInt), (v_lo, v_hi): (&BigInt, &BigInt)) -> ParamRange {
        let mut bounds: (Option<BigInt>, Option<BigInt>) = (None, None);
        for (start, step, lo, hi) in [(&self.u0, &self.du, u_lo, u_hi), (&self.v0, &self.dv, v_lo, v_hi)] {
            if step.is_zero() {
                if start < lo || start > hi {
                    return ParamRange::Empty;
                }
                continue;
            }
            // lo ≤ start + k·step ≤ hi
            let (mut k_lo, mut k_hi) = if step.is_positive() {
                (ceil_div(&(lo - start), step), (hi - start).div_floor(step))
            } else {
                (ceil_div(&(hi - start), step), (lo - start).div_floor(step))
            };
            if let Some(prev) = bounds.0.take() {
                k_lo = k_lo.max(prev);
            }
            if let Some(prev) = bounds.1.take() {
                k_hi = k_hi.min(prev);
            }
            bounds = (Some(k_lo), Some(k_hi));
        }
        match bounds {
            (Some(lo), Some(hi)) if lo > hi => ParamRange::Empty,
            (Some(lo), Some(hi)) => ParamRange::Bounded { lo, hi },
            _ => ParamRange::Unbounded,
        }
    }
}

pub(crate) fn ceil_div(num: &BigInt, den: &BigInt) -> BigInt {
    -((-num).div_floor(den))
}
