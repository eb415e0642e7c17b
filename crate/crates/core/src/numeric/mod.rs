//! Exact angles and fractional parts.

mod angle;
mod decimal;
mod field;
mod radicand;

use std::cmp::Ordering;

use num_bigint::BigInt;

pub use angle::{parse_angle, Angle, AngleForm};
pub use decimal::{GEOMETRY_DIGITS, REPORT_DIGITS};
pub use field::FieldValue;
pub(crate) use field::surd_sign_i128;
pub use radicand::{squarefree_split, MAX_RADICAND};

use crate::error::Result;

/// `E(v)`.
pub fn floor_value(v: &FieldValue) -> BigInt {
    v.floor()
}

/// `{n * alpha}`.
pub fn frac_point(alpha: &Angle, n: u64) -> FieldValue {
    alpha.value().scale(&BigInt::from(n)).fract()
}

pub fn compare(x: &FieldValue, y: &FieldValue) -> Result<Ordering> {
    x.compare(y)
}

/// `{r1 + r2}` for `r1, r2` in `[0, 1)`: the sum, minus one when it reaches 1.
pub fn frac_add(r1: &FieldValue, r2: &FieldValue) -> Result<FieldValue> {
    let sum = r1.try_add(r2)?;
    if sum.compare(&FieldValue::one())? != Ordering::Less {
        sum.try_sub(&FieldValue::one())
    } else {
        Ok(sum)
    }
}

/// `{r1 - r2}` for `r1, r2` in `[0, 1)`: the difference, plus one when `r1 < r2`.
pub fn frac_sub(r1: &FieldValue, r2: &FieldValue) -> Result<FieldValue> {
    let diff = r1.try_sub(r2)?;
    if r1.compare(r2)? == Ordering::Less {
        diff.try_add(&FieldValue::one())
    } else {
        Ok(diff)
    }
}

/// `min(x, 1 - x)` for `x` in `[0, 1)`.
pub fn norm_dist(x: &FieldValue) -> FieldValue {
    let complement = FieldValue::one()
        .try_sub(x)
        .expect("a rational operand never mixes radicands");
    match x.compare(&complement).expect("same radicand") {
        Ordering::Greater => complement,
        _ => x.clone(),
    }
}
