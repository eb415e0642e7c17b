//! Exact decimal rendering with round-half-even.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::field::FieldValue;

/// Significant digits used in every report.
pub const REPORT_DIGITS: usize = 12;

/// Digits used before handing a value to floating-point geometry.
pub const GEOMETRY_DIGITS: usize = 30;

fn pow10(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

impl FieldValue {
    /// Fixed-notation decimal with exactly `sig` significant digits,
    /// rounded half-to-even. Zero renders as `"0"`.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig > 0, "need at least one significant digit");
        if self.is_zero() {
            return "0".into();
        }
        let negative = self.signum() == Ordering::Less;
        let v = if negative { self.neg() } else { self.clone() };

        // Find k with 10^(sig-1) <= v * 10^k < 10^sig.
        let int_part = v.floor();
        let mut k: i64 = if int_part.is_zero() {
            let mut z = 0i64;
            let mut t = v.clone();
            while t.floor().is_zero() {
                t = t.scale(&BigInt::from(10));
                z += 1;
            }
            z + sig as i64 - 1
        } else {
            sig as i64 - int_part.to_string().len() as i64
        };

        let shifted = |k: i64| {
            if k >= 0 {
                v.scale(&pow10(k as u32))
            } else {
                v.div_int(&pow10((-k) as u32))
            }
        };
        let scaled = shifted(k);
        let mut q = scaled.floor();
        let rem = scaled
            .try_sub(&FieldValue::rational(q.clone(), 1).unwrap())
            .expect("same radicand");
        let half = FieldValue::rational(1, 2).unwrap();
        let round_up = match rem.compare(&half).expect("rational operand") {
            Ordering::Greater => true,
            Ordering::Equal => q.bit(0),
            Ordering::Less => false,
        };
        if round_up {
            q += BigInt::one();
        }
        if q == pow10(sig as u32) {
            q = pow10(sig as u32 - 1);
            k -= 1;
        }

        let digits = q.to_string();
        debug_assert_eq!(digits.len(), sig);
        let body = if k <= 0 {
            format!("{digits}{}", "0".repeat((-k) as usize))
        } else if (k as usize) < sig {
            let point = sig - k as usize;
            format!("{}.{}", &digits[..point], &digits[point..])
        } else {
            format!("0.{}{digits}", "0".repeat(k as usize - sig))
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Nearest `f64`, via a 30-digit exact decimal expansion.
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(GEOMETRY_DIGITS)
            .parse()
            .expect("decimal rendering is a valid float literal")
    }
}
