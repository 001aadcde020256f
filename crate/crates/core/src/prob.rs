//! Log-domain probabilities.
//!
//! Every value that flows through a network is stored as its natural
//! logarithm. An exact zero is `-inf`; the amplified reduction networks
//! produce values far below the smallest positive `f64`, so linear storage
//! is not an option.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Div, Mul};

/// A probability stored as its natural logarithm.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct LogProb(f64);

impl LogProb {
    pub const ZERO: LogProb = LogProb(f64::NEG_INFINITY);
    pub const ONE: LogProb = LogProb(0.0);

    /// Wraps a natural-log value. `NaN` is mapped to zero probability.
    pub fn from_ln(ln: f64) -> Self {
        if ln.is_nan() {
            LogProb::ZERO
        } else {
            LogProb(ln)
        }
    }

    pub fn from_linear(p: f64) -> Self {
        if p <= 0.0 || p.is_nan() {
            LogProb::ZERO
        } else {
            LogProb(libm::log(p))
        }
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn log2(self) -> f64 {
        self.0 / core::f64::consts::LN_2
    }

    /// Linear value. Underflows to `0.0` for very small probabilities.
    #[inline]
    pub fn linear(self) -> f64 {
        libm::exp(self.0)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn powi(self, k: u32) -> Self {
        if k == 0 {
            return LogProb::ONE;
        }
        LogProb(self.0 * k as f64)
    }

    /// Total order; `-inf` sorts first.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }

    /// Relative closeness in the linear domain, `|a - b| <= tol * max(a, b)`,
    /// evaluated without leaving log space. Two zeros are close.
    pub fn approx_eq(self, other: LogProb, rel_tol: f64) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            _ => {
                let (hi, lo) = if self.0 >= other.0 { (self.0, other.0) } else { (other.0, self.0) };
                // 1 - exp(lo - hi) <= tol
                -libm::expm1(lo - hi) <= rel_tol
            }
        }
    }
}

impl Mul for LogProb {
    type Output = LogProb;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: LogProb) -> LogProb {
        // -inf + anything finite stays -inf; there is no +inf in this domain.
        LogProb(self.0 + rhs.0)
    }
}

impl Div for LogProb {
    type Output = f64;

    /// Linear ratio `self / rhs`.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: LogProb) -> f64 {
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => f64::NAN,
            (false, true) => f64::INFINITY,
            (true, false) => 0.0,
            _ => libm::exp(self.0 - rhs.0),
        }
    }
}

impl fmt::Debug for LogProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogProb({} = {})", self.0, self.linear())
    }
}

impl fmt::Display for LogProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.linear(), f)
    }
}

/// `ln(sum_i exp(terms_i))`, stable for any mix of finite and `-inf` terms.
pub fn log_sum_exp<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: Clone,
{
    let iter = terms.into_iter();
    let max = iter.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = iter.map(|t| libm::exp(t - max)).sum();
    max + libm::log(sum)
}
