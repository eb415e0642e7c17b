use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::FieldValue;
use super::radicand::squarefree_split;
use crate::error::{GapError, Result};

/// A rotation angle in turns, reduced into `[0, 1)`.
///
/// Either a rational `p/q` or a real quadratic irrational `(a + b*sqrt(d))/c`
/// with `d` squarefree. A quadratic input whose radicand turns out to be a
/// perfect square becomes rational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle {
    value: FieldValue,
}

/// Borrowed view of an angle's coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AngleForm {
    Rational { p: BigInt, q: BigInt },
    Quadratic { a: BigInt, b: BigInt, c: BigInt, d: BigInt },
}

impl Angle {
    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let q = q.into();
        if q.is_zero() {
            return Err(GapError::InvalidAngle("q = 0".into()));
        }
        Ok(Self::reduced(FieldValue::rational(p, q)?))
    }

    pub fn quadratic(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(GapError::InvalidAngle("c = 0".into()));
        }
        let (root, core) = squarefree_split(&d)?;
        Ok(Self::reduced(FieldValue::canonical(a, b * root, c, core)))
    }

    /// `(sqrt(5) - 1) / 2`.
    pub fn golden() -> Self {
        Self::quadratic(-1, 1, 2, 5).expect("valid constant")
    }

    fn reduced(v: FieldValue) -> Self {
        Angle { value: v.fract() }
    }

    /// The angle as a field element in `[0, 1)`.
    pub fn value(&self) -> &FieldValue {
        &self.value
    }

    pub fn is_rational(&self) -> bool {
        self.value.is_rational()
    }

    /// `q` for a rational angle `p/q`.
    pub fn denominator(&self) -> Option<BigInt> {
        self.is_rational().then(|| self.value.c())
    }

    pub fn form(&self) -> AngleForm {
        let v = &self.value;
        if v.is_rational() {
            AngleForm::Rational { p: v.a(), q: v.c() }
        } else {
            AngleForm::Quadratic { a: v.a(), b: v.b(), c: v.c(), d: v.d() }
        }
    }
}

impl fmt::Display for Angle {
    /// Canonical text that parses back to the same angle.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form() {
            AngleForm::Rational { p, q } => write!(f, "{p}/{q}"),
            AngleForm::Quadratic { .. } => write!(f, "{}", self.value),
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self})")
    }
}

impl FromStr for Angle {
    type Err = GapError;

    fn from_str(s: &str) -> Result<Self> {
        parse_angle(s)
    }
}

/// Parses `p/q`, `(a+b*sqrt(d))/c` or `golden`, then reduces mod 1.
///
/// Whitespace is ignored and U+2212 is accepted as a minus sign. In the surd
/// form the `a` term and the `b*` factor are optional: `(sqrt(2))/1`,
/// `(3*sqrt(2))/4` and `(1-sqrt(3))/2` all parse.
pub fn parse_angle(text: &str) -> Result<Angle> {
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    if cleaned.eq_ignore_ascii_case("golden") {
        return Ok(Angle::golden());
    }
    let mut cur = Cursor { s: &cleaned, pos: 0 };
    let angle = if cur.eat("(") {
        let (a, b) = cur.surd_numerator()?;
        cur.expect("sqrt(")?;
        let d = cur.int()?;
        cur.expect(")")?;
        cur.expect(")")?;
        cur.expect("/")?;
        let c = cur.int()?;
        cur.end()?;
        if c.is_zero() {
            return Err(GapError::InvalidAngle("c = 0".into()));
        }
        Angle::quadratic(a, b, c, d)?
    } else {
        let p = cur.int()?;
        cur.expect("/")?;
        let q = cur.int()?;
        cur.end()?;
        Angle::rational(p, q)?
    };
    Ok(angle)
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn error(&self, what: &str) -> GapError {
        GapError::Parse(format!("{what} at offset {} in `{}`", self.pos, self.s))
    }

    fn digits(&mut self) -> Option<BigInt> {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        let v = self.rest()[..len].parse().ok();
        self.pos += len;
        v
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat("-") {
            Some(true)
        } else if self.eat("+") {
            Some(false)
        } else {
            None
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = self.sign().unwrap_or(false);
        let v = self.digits().ok_or_else(|| self.error("expected integer"))?;
        Ok(if neg { -v } else { v })
    }

    /// Everything between `(` and `sqrt(`: returns `(a, b)`.
    fn surd_numerator(&mut self) -> Result<(BigInt, BigInt)> {
        let sign = self.sign();
        let lead = self.digits();
        let signed = |neg: Option<bool>, v: BigInt| if neg == Some(true) { -v } else { v };
        match lead {
            // `(b*sqrt(d))`
            Some(v) if self.eat("*") => Ok((BigInt::zero(), signed(sign, v))),
            // `(a[+-][b*]sqrt(d))`
            Some(a) => {
                let a = signed(sign, a);
                let neg = self.sign().ok_or_else(|| self.error("expected `+` or `-`"))?;
                let b = match self.digits() {
                    Some(b) => {
                        self.expect("*")?;
                        b
                    }
                    None => BigInt::one(),
                };
                Ok((a, if neg { -b } else { b }))
            }
            // `([+-]sqrt(d))`
            None => Ok((BigInt::zero(), signed(sign, BigInt::one()))),
        }
    }

    fn end(&self) -> Result<()> {
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }
}
