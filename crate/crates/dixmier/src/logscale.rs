//! Signed scalars stored as `(sign, log2 |value|)`.
//!
//! Every quantity that crosses the doubly-exponential scales of the tower
//! and squares constructions (values like 2^(k-2^k), endpoints like 2^(2^k))
//! lives in this type. Exponents are ordinary `f64`; after normalization all
//! results of interest are O(1), so the absolute rounding of a large exponent
//! cancels in the ratios the rest of the crate computes.
//!
//! Operations are pure and values immutable. The one side channel is a
//! thread-local cancellation counter: a subtraction of two nearly identical
//! magnitudes returns exact zero and bumps the counter instead of emitting a
//! garbage exponent.

use std::cell::Cell;
use std::cmp::Ordering;
use std::f64::consts::LN_2;

use crate::error::{Error, Result};

/// Exponent gap below which `sub_pos` treats two magnitudes as identical.
const CANCEL_EPS: f64 = 9.313225746154785e-10; // 2^-30

thread_local! {
    static CANCELLATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Number of cancellations recorded on this thread since the last reset.
pub fn cancellation_count() -> u64 {
    CANCELLATIONS.with(|c| c.get())
}

/// Reset the thread-local cancellation counter.
pub fn reset_cancellation_count() {
    CANCELLATIONS.with(|c| c.set(0));
}

fn note_cancellation() {
    CANCELLATIONS.with(|c| c.set(c.get() + 1));
}

/// A signed real number `sign * 2^exponent`.
///
/// `sign == 0` encodes exact zero; the exponent is ignored (and normalized to
/// zero) in that case. Exponents are never NaN: constructors reject it.
#[derive(Clone, Copy, Debug)]
pub struct LogReal {
    sign: i8,
    exponent: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal { sign: 0, exponent: 0.0 };
    pub const ONE: LogReal = LogReal { sign: 1, exponent: 0.0 };

    /// Positive value with the given base-2 exponent.
    pub fn pos(exponent: f64) -> Self {
        debug_assert!(!exponent.is_nan());
        LogReal { sign: 1, exponent }
    }

    pub fn zero() -> Self {
        Self::ZERO
    }

    /// Build from explicit parts. Rejects NaN exponents and signs outside
    /// {-1, 0, +1}.
    pub fn from_parts(sign: i8, exponent: f64) -> Result<Self> {
        if !matches!(sign, -1 | 0 | 1) {
            return Err(Error::domain(format!("sign must be -1, 0 or +1, got {sign}")));
        }
        if sign == 0 {
            return Ok(Self::ZERO);
        }
        if exponent.is_nan() {
            return Err(Error::domain("exponent must not be NaN"));
        }
        Ok(LogReal { sign, exponent })
    }

    /// Convert an ordinary float. Rejects NaN and infinities.
    pub fn from_real(v: f64) -> Result<Self> {
        if v.is_nan() || v.is_infinite() {
            return Err(Error::domain(format!("cannot represent {v} in log scale")));
        }
        if v == 0.0 {
            return Ok(Self::ZERO);
        }
        let sign = if v > 0.0 { 1 } else { -1 };
        Ok(LogReal { sign, exponent: exact_log2_abs(v) })
    }

    /// Materialize as `f64`. Saturates to ±inf/0 outside the double range.
    pub fn to_real(self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let m = split_exp2(self.exponent);
        if self.sign > 0 {
            m
        } else {
            -m
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Base-2 exponent of the magnitude. Meaningless for zero.
    pub fn exponent(self) -> f64 {
        self.exponent
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        if self.sign == 0 {
            Self::ZERO
        } else {
            LogReal { sign: 1, exponent: self.exponent }
        }
    }

    pub fn neg(self) -> Self {
        LogReal { sign: -self.sign, exponent: self.exponent }
    }

    /// Multiply by 2^k (exact shift of the exponent).
    pub fn shift(self, k: f64) -> Self {
        if self.sign == 0 {
            self
        } else {
            LogReal { sign: self.sign, exponent: self.exponent + k }
        }
    }

    /// Sum. Max-exponent-factored log1p form; commutative to the bit.
    pub fn add(self, other: Self) -> Self {
        match (self.sign, other.sign) {
            (0, _) => other,
            (_, 0) => self,
            (a, b) if a == b => {
                let (hi, lo) = if self.exponent >= other.exponent {
                    (self.exponent, other.exponent)
                } else {
                    (other.exponent, self.exponent)
                };
                LogReal { sign: a, exponent: magnitude_sum_exp(hi, lo) }
            }
            _ => {
                // Opposite signs: magnitude subtraction, sign of the larger.
                let (big, small) = if self.exponent >= other.exponent {
                    (self, other)
                } else {
                    (other, self)
                };
                match magnitude_diff_exp(big.exponent, small.exponent) {
                    None => Self::ZERO,
                    Some(e) => LogReal { sign: big.sign, exponent: e },
                }
            }
        }
    }

    /// `self - other` for `self >= other >= 0`; exact zero when equal.
    pub fn sub_pos(self, other: Self) -> Result<Self> {
        if self.sign < 0 || other.sign < 0 {
            return Err(Error::domain("sub_pos requires nonnegative operands"));
        }
        if other.sign == 0 {
            return Ok(self);
        }
        if self.sign == 0 || self.exponent < other.exponent {
            return Err(Error::domain("sub_pos requires minuend >= subtrahend"));
        }
        Ok(match magnitude_diff_exp(self.exponent, other.exponent) {
            None => Self::ZERO,
            Some(e) => LogReal { sign: 1, exponent: e },
        })
    }

    /// Product: signs multiply, exponents add.
    pub fn mul(self, other: Self) -> Self {
        if self.sign == 0 || other.sign == 0 {
            return Self::ZERO;
        }
        LogReal {
            sign: self.sign * other.sign,
            exponent: self.exponent + other.exponent,
        }
    }

    /// Quotient; division by zero is a domain error.
    pub fn try_div(self, other: Self) -> Result<Self> {
        if other.sign == 0 {
            return Err(Error::domain("division by zero"));
        }
        if self.sign == 0 {
            return Ok(Self::ZERO);
        }
        Ok(LogReal {
            sign: self.sign * other.sign,
            exponent: self.exponent - other.exponent,
        })
    }

    /// Total order consistent with the real values: sign first, then
    /// exponent (reversed for negatives).
    pub fn compare(self, other: Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                1 => self.exponent.total_cmp(&other.exponent),
                _ => other.exponent.total_cmp(&self.exponent),
            },
            ord => ord,
        }
    }
}

/// Exponent of |a| + |b| given exponents hi >= lo.
fn magnitude_sum_exp(hi: f64, lo: f64) -> f64 {
    let d = lo - hi; // <= 0
    hi + (d.exp2()).ln_1p() / LN_2
}

/// Exponent of |a| - |b| given exponents e_a >= e_b; None on (near-)equality.
fn magnitude_diff_exp(e_a: f64, e_b: f64) -> Option<f64> {
    if e_a == e_b {
        return None;
    }
    if e_a - e_b < CANCEL_EPS {
        note_cancellation();
        return None;
    }
    let d = e_b - e_a; // < 0
    Some(e_a + (-d.exp2()).ln_1p() / LN_2)
}

/// log2(|v|) computed from the exact binary split of `v`, so the only
/// rounding left is the final addition of the integer and fractional parts.
fn exact_log2_abs(v: f64) -> f64 {
    let mut a = v.abs();
    let mut shift = 0i32;
    if a < f64::MIN_POSITIVE {
        // Rescale subnormals into the normal range first.
        a *= 2f64.powi(64);
        shift = -64;
    }
    let bits = a.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32 - 1023;
    let mantissa = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | 0x3ff0_0000_0000_0000);
    // mantissa in [1, 2)
    (raw_exp + shift) as f64 + mantissa.log2()
}

/// 2^e with the integer part applied as an exact scale.
fn split_exp2(e: f64) -> f64 {
    if e >= 1100.0 {
        return f64::INFINITY;
    }
    if e <= -1140.0 {
        return 0.0;
    }
    let n = e.round();
    let frac = e - n; // exact: |frac| <= 0.5 and n is the nearest integer
    frac.exp2() * n.exp2()
}

impl PartialEq for LogReal {
    fn eq(&self, other: &Self) -> bool {
        self.compare(*other) == Ordering::Equal
    }
}

impl Eq for LogReal {}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(*other))
    }
}

impl Ord for LogReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(*other)
    }
}

impl std::fmt::Display for LogReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "2^{}", self.exponent),
            _ => write!(f, "-2^{}", self.exponent),
        }
    }
}

impl std::ops::Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: Self) -> LogReal {
        LogReal::add(self, rhs)
    }
}

impl std::ops::Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: Self) -> LogReal {
        LogReal::mul(self, rhs)
    }
}

impl std::ops::Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal::neg(self)
    }
}
