//! Walk parameters and the angle-parameterized coin.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// The parameter tuple `(n, m, l, theta0, theta1, alpha)` that fixes one
/// hash instance.
///
/// * `n` - nodes on the cycle; odd and at least 3 so the conditional shift
///   never closes a short orbit.
/// * `m` - digest bits extracted per node; the digest has `n * m` bits.
/// * `l` - decimal scale exponent: node probabilities are multiplied by
///   `10^l` and floored before the block reduction.
/// * `theta0`, `theta1` - coin angles applied on 0-bits and 1-bits.
/// * `alpha` - mixing angle of the two-term initial state.
///
/// Construction validates every field, so a `WalkParams` value is always
/// usable; downstream code never re-checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    n: usize,
    m: u32,
    l: u32,
    theta0: f64,
    theta1: f64,
    alpha: f64,
}

/// Widest block that fits a `u64` with room for the `2^m` modulus.
pub const MAX_BITS_PER_NODE: u32 = 63;

/// Largest `l` with `10^l` exactly representable in a `u128`.
pub const MAX_SCALE_EXPONENT: u32 = 38;

impl WalkParams {
    pub fn new(n: usize, m: u32, l: u32, theta0: f64, theta1: f64, alpha: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::NodeCountTooSmall(n));
        }
        if n.is_multiple_of(2) {
            return Err(Error::NodeCountEven(n));
        }
        if m == 0 || m > MAX_BITS_PER_NODE {
            return Err(Error::BitsPerNodeOutOfRange(m));
        }
        if l == 0 || l > MAX_SCALE_EXPONENT {
            return Err(Error::ScaleExponentOutOfRange(l));
        }
        if pow10_u128(l) <= 1u128 << m {
            return Err(Error::ScaleTooSmall { l, m });
        }
        check_angle(theta0, "theta0")?;
        check_angle(theta1, "theta1")?;
        check_angle(alpha, "alpha")?;
        Ok(Self {
            n,
            m,
            l,
            theta0,
            theta1,
            alpha,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Total digest length `n * m` in bits.
    pub fn digest_bits(&self) -> usize {
        self.n * self.m as usize
    }

    /// Length of the amplitude vector: eight internal components per node.
    pub fn state_len(&self) -> usize {
        8 * self.n
    }

    /// The decimal scale `10^l`: computed exactly in integer arithmetic,
    /// then rounded once to binary64, so every caller sees one well-defined
    /// constant per `l`.
    pub fn scale(&self) -> f64 {
        pow10_u128(self.l) as f64
    }

    pub(crate) fn coin_qw1m(&self) -> CoinCoefficients {
        CoinCoefficients::from_angle_unchecked(self.theta0)
    }

    pub(crate) fn coin_qw2m(&self) -> CoinCoefficients {
        CoinCoefficients::from_angle_unchecked(self.theta1)
    }
}

fn check_angle(value: f64, name: &'static str) -> Result<()> {
    if value > 0.0 && value < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::AngleOutOfRange { name, value })
    }
}

pub(crate) fn pow10_u128(l: u32) -> u128 {
    10u128.pow(l)
}

/// Entries of the 2x2 coin `[[cos t, sin t], [sin t, -cos t]]` in row-major
/// order `(a, b, c, d)`. Real, symmetric, and orthogonal for any angle:
/// `a^2 + c^2 = 1` and `a*b + c*d = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl CoinCoefficients {
    pub fn from_angle(theta: f64) -> Result<Self> {
        check_angle(theta, "theta")?;
        Ok(Self::from_angle_unchecked(theta))
    }

    pub(crate) fn from_angle_unchecked(theta: f64) -> Self {
        let cos = theta.cos();
        let sin = theta.sin();
        Self {
            a: cos,
            b: sin,
            c: sin,
            d: -cos,
        }
    }
}
