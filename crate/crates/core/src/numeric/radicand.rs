use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{GapError, Result};

/// Largest radicand accepted for squarefree canonicalization.
pub const MAX_RADICAND: u64 = 1_000_000_000_000;

/// Splits `d = root^2 * core` with `core` squarefree, by trial division.
///
/// `d = 0` maps to `(1, 0)`.
pub fn squarefree_split(d: &BigInt) -> Result<(BigInt, BigInt)> {
    if d.is_negative() {
        return Err(GapError::InvalidAngle(format!("negative radicand {d}")));
    }
    if d.is_zero() {
        return Ok((1.into(), 0.into()));
    }
    let n = match d.to_u64() {
        Some(n) if n <= MAX_RADICAND => n,
        _ => return Err(GapError::RadicandTooLarge(d.to_string())),
    };
    let (root, core) = split_u64(n);
    Ok((root.into(), core.into()))
}

fn split_u64(mut n: u64) -> (u64, u64) {
    let (mut root, mut core) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            root *= p.pow(e / 2);
            if e % 2 == 1 {
                core *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (root, core * n)
}
