//! Exact elements `(A + B*sqrt(d)) / C` of a real quadratic field.
//!
//! Values are canonicalized on construction: `C > 0`, `gcd(A, B, C) = 1`, and
//! `B = 0` exactly when `d = 0`. Structural equality is therefore numeric
//! equality. Coefficients that fit in `i64` are stored inline and compared
//! with `i128` intermediates; anything larger (or any intermediate overflow)
//! falls through to `BigInt`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GapError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldValue {
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Small),
    Big(Box<Big>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Small {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Big {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Small {
    fn to_big(self) -> Big {
        Big {
            a: self.a.into(),
            b: self.b.into(),
            c: self.c.into(),
            d: self.d.into(),
        }
    }
}

impl FieldValue {
    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Self {
        FieldValue {
            repr: Repr::Small(Small { a: k, b: 0, c: 1, d: 0 }),
        }
    }

    /// The rational `num / den`.
    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(GapError::InvalidAngle("zero denominator".into()));
        }
        Ok(Self::canonical(num.into(), BigInt::zero(), den, BigInt::zero()))
    }

    /// `(a + b*sqrt(d)) / c` with full canonicalization, including pulling
    /// square factors out of `d`.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(GapError::InvalidAngle("zero denominator".into()));
        }
        let (root, core) = super::radicand::squarefree_split(&d)?;
        Ok(Self::canonical(a, b * root, c, core))
    }

    /// Canonicalizes coefficients. `d` must already be squarefree (or 0/1).
    pub(crate) fn canonical(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!(!c.is_zero() && !d.is_negative());
        let (mut a, mut b, mut c, mut d) = (a, b, c, d);
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        if d.is_one() {
            a += &b;
            b = BigInt::zero();
        }
        if b.is_zero() || d.is_zero() || d.is_one() {
            b = BigInt::zero();
            d = BigInt::zero();
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        match (a.to_i64(), b.to_i64(), c.to_i64(), d.to_i64()) {
            (Some(a), Some(b), Some(c), Some(d)) => FieldValue {
                repr: Repr::Small(Small { a, b, c, d }),
            },
            _ => FieldValue {
                repr: Repr::Big(Box::new(Big { a, b, c, d })),
            },
        }
    }

    fn canonical_i128(a: i128, b: i128, c: i128, d: i128) -> Option<Self> {
        let (mut a, mut b, mut c, mut d) = (a, b, c, d);
        if c < 0 {
            a = a.checked_neg()?;
            b = b.checked_neg()?;
            c = c.checked_neg()?;
        }
        if d == 1 {
            a = a.checked_add(b)?;
            b = 0;
        }
        if b == 0 || d == 0 || d == 1 {
            b = 0;
            d = 0;
        }
        let g = a.gcd(&b).gcd(&c);
        if g > 1 {
            a /= g;
            b /= g;
            c /= g;
        }
        Some(
            match (
                i64::try_from(a),
                i64::try_from(b),
                i64::try_from(c),
                i64::try_from(d),
            ) {
                (Ok(a), Ok(b), Ok(c), Ok(d)) => FieldValue {
                    repr: Repr::Small(Small { a, b, c, d }),
                },
                _ => FieldValue {
                    repr: Repr::Big(Box::new(Big {
                        a: a.into(),
                        b: b.into(),
                        c: c.into(),
                        d: d.into(),
                    })),
                },
            },
        )
    }

    fn big(&self) -> std::borrow::Cow<'_, Big> {
        match &self.repr {
            Repr::Small(s) => std::borrow::Cow::Owned(s.to_big()),
            Repr::Big(b) => std::borrow::Cow::Borrowed(b),
        }
    }

    pub fn a(&self) -> BigInt {
        self.big().a.clone()
    }

    pub fn b(&self) -> BigInt {
        self.big().b.clone()
    }

    pub fn c(&self) -> BigInt {
        self.big().c.clone()
    }

    /// The radicand; 0 for a rational value.
    pub fn d(&self) -> BigInt {
        self.big().d.clone()
    }

    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small(s) => s.d == 0,
            Repr::Big(b) => b.d.is_zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small(s) => s.a == 0 && s.b == 0,
            Repr::Big(b) => b.a.is_zero() && b.b.is_zero(),
        }
    }

    fn radicand_with(&self, other: &FieldValue) -> Result<BigInt> {
        if let (Repr::Small(x), Repr::Small(y)) = (&self.repr, &other.repr) {
            return match (x.d, y.d) {
                (0, d) | (d, 0) => Ok(d.into()),
                (d, e) if d == e => Ok(d.into()),
                (d, e) => Err(GapError::MixedRadicand(d.to_string(), e.to_string())),
            };
        }
        let (d, e) = (self.d(), other.d());
        if d.is_zero() {
            Ok(e)
        } else if e.is_zero() || d == e {
            Ok(d)
        } else {
            Err(GapError::MixedRadicand(d.to_string(), e.to_string()))
        }
    }

    fn combine(&self, other: &FieldValue, negate: bool) -> Result<FieldValue> {
        let d = self.radicand_with(other)?;
        if let (Repr::Small(x), Repr::Small(y)) = (&self.repr, &other.repr) {
            let sign: i128 = if negate { -1 } else { 1 };
            let fast = (|| {
                let a = (x.a as i128 * y.c as i128)
                    .checked_add(sign * (y.a as i128 * x.c as i128))?;
                let b = (x.b as i128 * y.c as i128)
                    .checked_add(sign * (y.b as i128 * x.c as i128))?;
                let c = x.c as i128 * y.c as i128;
                Self::canonical_i128(a, b, c, x.d.max(y.d) as i128)
            })();
            if let Some(v) = fast {
                return Ok(v);
            }
        }
        let (x, y) = (self.big(), other.big());
        let (ya, yb) = if negate {
            (-&y.a, -&y.b)
        } else {
            (y.a.clone(), y.b.clone())
        };
        Ok(Self::canonical(
            &x.a * &y.c + ya * &x.c,
            &x.b * &y.c + yb * &x.c,
            &x.c * &y.c,
            d,
        ))
    }

    /// Exact sum; fails only when both operands are irrational over different radicands.
    pub fn try_add(&self, other: &FieldValue) -> Result<FieldValue> {
        self.combine(other, false)
    }

    pub fn try_sub(&self, other: &FieldValue) -> Result<FieldValue> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> FieldValue {
        let v = self.big();
        Self::canonical(-&v.a, -&v.b, v.c.clone(), v.d.clone())
    }

    /// `k * self`.
    pub fn scale(&self, k: &BigInt) -> FieldValue {
        if let (Repr::Small(s), Some(k)) = (&self.repr, k.to_i64()) {
            let k = k as i128;
            if let Some(v) = Self::canonical_i128(k * s.a as i128, k * s.b as i128, s.c as i128, s.d as i128) {
                return v;
            }
        }
        let v = self.big();
        Self::canonical(&v.a * k, &v.b * k, v.c.clone(), v.d.clone())
    }

    /// `self / k` for a nonzero integer `k`.
    pub fn div_int(&self, k: &BigInt) -> FieldValue {
        assert!(!k.is_zero(), "division by zero");
        let v = self.big();
        Self::canonical(v.a.clone(), v.b.clone(), &v.c * k, v.d.clone())
    }

    /// Sign of the value: `Less` for negative, `Equal` for zero.
    pub fn signum(&self) -> Ordering {
        match &self.repr {
            Repr::Small(s) => surd_sign_i128(s.a as i128, s.b as i128, s.d as i128)
                .unwrap_or_else(|| surd_sign_big(&s.a.into(), &s.b.into(), &s.d.into())),
            Repr::Big(b) => surd_sign_big(&b.a, &b.b, &b.d),
        }
    }

    /// Exact order. Fails when both sides are irrational over different radicands.
    pub fn compare(&self, other: &FieldValue) -> Result<Ordering> {
        let d = self.radicand_with(other)?;
        if let (Repr::Small(x), Repr::Small(y)) = (&self.repr, &other.repr) {
            if x == y {
                return Ok(Ordering::Equal);
            }
            let num_a = x.a as i128 * y.c as i128 - y.a as i128 * x.c as i128;
            let num_b = x.b as i128 * y.c as i128 - y.b as i128 * x.c as i128;
            if let Some(ord) = surd_sign_i128(num_a, num_b, x.d.max(y.d) as i128) {
                return Ok(ord);
            }
        }
        let (x, y) = (self.big(), other.big());
        let num_a = &x.a * &y.c - &y.a * &x.c;
        let num_b = &x.b * &y.c - &y.b * &x.c;
        Ok(surd_sign_big(&num_a, &num_b, &d))
    }

    /// The integer part `E(v)`: the unique `k` with `k <= v < k + 1`.
    pub fn floor(&self) -> BigInt {
        if let Repr::Small(s) = &self.repr {
            if let Some(k) = floor_small(s) {
                return k.into();
            }
        }
        let v = self.big();
        let root_part = floor_surd_big(&v.b, &v.d);
        (&v.a + root_part).div_floor(&v.c)
    }

    /// `{v} = v - E(v)`, always in `[0, 1)`.
    pub fn fract(&self) -> FieldValue {
        let k = self.floor();
        if k.is_zero() {
            return self.clone();
        }
        let v = self.big();
        Self::canonical(&v.a - k * &v.c, v.b.clone(), v.c.clone(), v.d.clone())
    }
}

fn floor_small(s: &Small) -> Option<i128> {
    let root_part: i128 = if s.b == 0 {
        0
    } else {
        let b = s.b as i128;
        let sq = (b.unsigned_abs()).checked_mul(b.unsigned_abs())?.checked_mul(s.d as u128)?;
        // b^2 d is never a perfect square when d is squarefree and > 1.
        let r = sq.sqrt() as i128;
        if b > 0 {
            r
        } else {
            -(r + 1)
        }
    };
    Some(Integer::div_floor(&(s.a as i128 + root_part), &(s.c as i128)))
}

/// `floor(b * sqrt(d))` for squarefree `d > 1` (or `b = 0`).
fn floor_surd_big(b: &BigInt, d: &BigInt) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    let sq = b * b * d;
    let r = sq.sqrt();
    if b.is_positive() {
        r
    } else {
        -(r + BigInt::one())
    }
}

/// Sign of `x + y*sqrt(d)`; `None` if the squared comparison overflows.
pub(crate) fn surd_sign_i128(x: i128, y: i128, d: i128) -> Option<Ordering> {
    let sx = x.cmp(&0);
    let sy = if d == 0 { Ordering::Equal } else { y.cmp(&0) };
    match (sx, sy) {
        (s, Ordering::Equal) | (Ordering::Equal, s) => Some(s),
        (a, b) if a == b => Some(a),
        _ => {
            let xx = x.unsigned_abs().checked_mul(x.unsigned_abs())?;
            let yy = y
                .unsigned_abs()
                .checked_mul(y.unsigned_abs())?
                .checked_mul(d as u128)?;
            // Opposite signs: the term with larger square wins.
            Some(if xx > yy { sx } else { sy })
        }
    }
}

fn surd_sign_big(x: &BigInt, y: &BigInt, d: &BigInt) -> Ordering {
    let sx = x.sign_cmp();
    let sy = if d.is_zero() { Ordering::Equal } else { y.sign_cmp() };
    match (sx, sy) {
        (s, Ordering::Equal) | (Ordering::Equal, s) => s,
        (a, b) if a == b => a,
        _ => {
            if x * x > y * y * d {
                sx
            } else {
                sy
            }
        }
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_negative() {
            Ordering::Less
        } else if self.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for FieldValue {
    /// `A/C` for rationals, `(A+B*sqrt(d))/C` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.big();
        if v.d.is_zero() {
            if v.c.is_one() {
                write!(f, "{}", v.a)
            } else {
                write!(f, "{}/{}", v.a, v.c)
            }
        } else {
            let op = if v.b.is_negative() { '-' } else { '+' };
            write!(f, "({}{}{}*sqrt({}))/{}", v.a, op, v.b.abs(), v.d, v.c)
        }
    }
}

impl fmt::Debug for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldValue({self})")
    }
}
