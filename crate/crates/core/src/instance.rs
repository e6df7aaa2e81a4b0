//! Registry of published digest lengths.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};
use std::fmt;

use crate::error::{Error, Result};
use crate::params::WalkParams;

/// A digest length with a registered node/block shape. Every instance
/// shares the constants `l = 8`, `theta0 = pi/4`, `theta1 = pi/3`,
/// `alpha = pi/4`; only `(n, m)` varies, with `n * m` equal to the length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceId {
    Bits296,
    Bits264,
    Bits221,
    Bits200,
    Bits195,
    Bits136,
    Bits120,
}

impl InstanceId {
    pub const ALL: [InstanceId; 7] = [
        InstanceId::Bits296,
        InstanceId::Bits264,
        InstanceId::Bits221,
        InstanceId::Bits200,
        InstanceId::Bits195,
        InstanceId::Bits136,
        InstanceId::Bits120,
    ];

    pub fn from_bits(bits: u32) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.bits() == bits)
            .ok_or(Error::UnsupportedInstance(bits))
    }

    pub fn bits(self) -> u32 {
        let (n, m) = self.shape();
        n as u32 * m
    }

    fn shape(self) -> (usize, u32) {
        match self {
            InstanceId::Bits296 => (37, 8),
            InstanceId::Bits264 => (33, 8),
            InstanceId::Bits221 => (17, 13),
            InstanceId::Bits200 => (25, 8),
            InstanceId::Bits195 => (15, 13),
            InstanceId::Bits136 => (17, 8),
            InstanceId::Bits120 => (15, 8),
        }
    }

    pub fn params(self) -> WalkParams {
        let (n, m) = self.shape();
        WalkParams::new(n, m, 8, FRAC_PI_4, FRAC_PI_3, FRAC_PI_4)
            .expect("registered shapes are valid")
    }

    pub fn name(self) -> String {
        format!("QHFM-{}", self.bits())
    }
}

impl fmt::Display for InstanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
