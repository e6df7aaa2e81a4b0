//! Explicit dense step operators, used as a brute-force cross-check.
//!
//! The stepper in [`crate::walk`] is a hand-derived stencil. This module
//! rebuilds each one-step operator the slow, unarguable way - as the
//! product `S * (I_n (x) D) * (I_4n (x) C)` of a conditional shift, a
//! direction-update permutation, and the coin - and multiplies states by
//! the resulting `8n x 8n` matrix. [`check_equivalence`] then demands that
//! both paths land on the same final amplitudes to near machine precision.
//!
//! Everything is real-valued (the coin is real orthogonal and the rest are
//! permutations), so matrices hold `f64` entries even though they act on
//! complex amplitude vectors. Cost is O(n^2) per step; this path exists to
//! certify the stepper, not to be fast.

use num_complex::Complex64;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::params::{CoinCoefficients, WalkParams};
use crate::walk::AmplitudeState;

/// The labeled form of one basis state `|x, dr2, dr1, c>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLabel {
    /// Node on the cycle, `0..n`.
    pub x: usize,
    /// Direction taken two steps ago (0 = forward, 1 = backward).
    pub dr2: u8,
    /// Direction taken last step.
    pub dr1: u8,
    /// Coin bit.
    pub c: u8,
}

/// Flat index of a labeled basis state: `8x + 4*dr1 + 2*dr2 + c`.
pub fn encode_basis(label: BasisLabel, n: usize) -> Result<usize> {
    if label.x >= n {
        return Err(Error::BasisFieldOutOfRange {
            field: "x",
            value: label.x,
            bound: n,
        });
    }
    for (field, value) in [("dr2", label.dr2), ("dr1", label.dr1), ("c", label.c)] {
        if value > 1 {
            return Err(Error::BasisFieldOutOfRange {
                field,
                value: value as usize,
                bound: 2,
            });
        }
    }
    Ok(8 * label.x + 4 * label.dr1 as usize + 2 * label.dr2 as usize + label.c as usize)
}

/// Inverse of [`encode_basis`].
pub fn decode_basis(index: usize, n: usize) -> Result<BasisLabel> {
    if index >= 8 * n {
        return Err(Error::BasisFieldOutOfRange {
            field: "index",
            value: index,
            bound: 8 * n,
        });
    }
    let j = index % 8;
    Ok(BasisLabel {
        x: index / 8,
        dr2: ((j % 4 - j % 2) / 2) as u8,
        dr1: ((j - j % 4) / 4) as u8,
        c: (j % 2) as u8,
    })
}

/// Dense square matrix with real entries, row-major.
#[derive(Debug, Clone)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<f64>,
}

impl DenseUnitary {
    fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for i in 0..dim {
            out.set(i, i, 1.0);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.dim + col] = value;
    }

    /// `self * rhs`. Dimensions must agree; operators built here always do.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "operator dimensions must match");
        let dim = self.dim;
        let mut out = Self::zero(dim);
        for row in 0..dim {
            for inner in 0..dim {
                let lhs = self.entry(row, inner);
                if lhs == 0.0 {
                    continue;
                }
                for col in 0..dim {
                    out.entries[row * dim + col] += lhs * rhs.entry(inner, col);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for row in 0..self.dim {
            for col in 0..self.dim {
                out.set(col, row, self.entry(row, col));
            }
        }
        out
    }

    /// `max |(U^T U - I)[r][c]|`; zero for an exactly orthogonal matrix.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.transpose().matmul(self);
        let mut worst = 0.0f64;
        for row in 0..self.dim {
            for col in 0..self.dim {
                let want = if row == col { 1.0 } else { 0.0 };
                worst = worst.max((gram.entry(row, col) - want).abs());
            }
        }
        worst
    }

    /// Matrix-vector product against a complex state.
    pub fn apply(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        if state.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: state.len(),
            });
        }
        Ok((0..self.dim)
            .map(|row| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (col, &value) in state.iter().enumerate() {
                    let w = self.entry(row, col);
                    if w != 0.0 {
                        acc += w * value;
                    }
                }
                acc
            })
            .collect())
    }
}

/// Where the direction-update permutation sends internal index `j`. The
/// 0-bit rule rewrites `dr1` from `dr1 xor c xor 1` and keeps the rest; the
/// 1-bit rule rewrites `dr1` from `dr2 xor c xor 1` and shifts the old
/// `dr1` down into `dr2`.
fn direction_target(two_step: bool, j: usize) -> usize {
    if two_step {
        4 * (((j % 4 - j % 2) / 2) ^ (j % 2) ^ 1) + (j - j % 4) / 2 + j % 2
    } else {
        4 * (((j - j % 4) / 4) ^ (j % 2) ^ 1) + j % 4
    }
}

/// The 8x8 direction-update permutation; `two_step` selects the 1-bit rule.
pub fn direction_matrix(two_step: bool) -> DenseUnitary {
    let mut out = DenseUnitary::zero(8);
    for j in 0..8 {
        out.set(direction_target(two_step, j), j, 1.0);
    }
    out
}

/// The conditional shift on the full `8n`-dimensional space: states with
/// `dr1 = 1` (`j >= 4`) move one node forward, the rest one node back.
pub fn shift_matrix(n: usize) -> Result<DenseUnitary> {
    if n < 3 {
        return Err(Error::NodeCountTooSmall(n));
    }
    if n.is_multiple_of(2) {
        return Err(Error::NodeCountEven(n));
    }
    let mut out = DenseUnitary::zero(8 * n);
    for x in 0..n {
        for j in 0..8 {
            // (j - j % 4) / 2 is 0 or 2, so this adds -1 or +1 mod n.
            let tx = (x + (j - j % 4) / 2 + n - 1) % n;
            out.set(8 * tx + j, 8 * x + j, 1.0);
        }
    }
    Ok(out)
}

/// The coin on the full space: one 2x2 block per (node, direction-pair),
/// acting on the coin bit.
pub fn coin_matrix(n: usize, coin: &CoinCoefficients) -> DenseUnitary {
    let mut out = DenseUnitary::zero(8 * n);
    for base in (0..8 * n).step_by(2) {
        out.set(base, base, coin.a);
        out.set(base, base + 1, coin.b);
        out.set(base + 1, base, coin.c);
        out.set(base + 1, base + 1, coin.d);
    }
    out
}

/// One-step operator `S * (I_n (x) D) * (I_4n (x) C)` with an explicit
/// coin; the test hooks use this to inject a corrupted coin on purpose.
pub fn build_step_unitary_with_coin(
    two_step: bool,
    n: usize,
    coin: &CoinCoefficients,
) -> Result<DenseUnitary> {
    let shift = shift_matrix(n)?;
    let mut direction_full = DenseUnitary::zero(8 * n);
    for x in 0..n {
        for j in 0..8 {
            direction_full.set(8 * x + direction_target(two_step, j), 8 * x + j, 1.0);
        }
    }
    Ok(shift.matmul(&direction_full).matmul(&coin_matrix(n, coin)))
}

/// One-step operator for `params`; `two_step` picks the 1-bit step.
pub fn build_step_unitary(two_step: bool, params: &WalkParams) -> DenseUnitary {
    let coin = if two_step {
        CoinCoefficients::from_angle(params.theta1())
    } else {
        CoinCoefficients::from_angle(params.theta0())
    }
    .expect("angles validated by WalkParams");
    build_step_unitary_with_coin(two_step, params.n(), &coin)
        .expect("node count validated by WalkParams")
}

/// Evolve the canonical initial state by dense multiplication only.
pub fn evolve_dense(params: &WalkParams, message: &BitString) -> Vec<Complex64> {
    let u0 = build_step_unitary(false, params);
    let u1 = build_step_unitary(true, params);
    let mut state = AmplitudeState::initial(*params).amplitudes().to_vec();
    for bit in message.iter() {
        let u = if bit { &u1 } else { &u0 };
        state = u.apply(&state).expect("state length fixed at 8n");
    }
    state
}

/// Slot where the two evolution paths disagree the most.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MismatchLocation {
    pub message_index: usize,
    pub node: usize,
    pub internal: usize,
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub messages: usize,
    pub max_abs_diff: f64,
    pub worst: Option<MismatchLocation>,
}

/// Evolve every message through both the stencil stepper and the dense
/// operators (built from `coin0`/`coin1`), comparing final amplitudes.
/// Feeding coins that disagree with the params' angles is the supported way
/// to prove the comparison can fail.
pub fn check_equivalence_with_coins(
    params: &WalkParams,
    coin0: &CoinCoefficients,
    coin1: &CoinCoefficients,
    messages: &[BitString],
) -> EquivalenceReport {
    let n = params.n();
    let u0 = build_step_unitary_with_coin(false, n, coin0).expect("n validated by WalkParams");
    let u1 = build_step_unitary_with_coin(true, n, coin1).expect("n validated by WalkParams");
    let mut max_abs_diff = 0.0f64;
    let mut worst = None;
    for (message_index, message) in messages.iter().enumerate() {
        let fast = crate::walk::evolve(params, message);
        let mut dense = AmplitudeState::initial(*params).amplitudes().to_vec();
        for bit in message.iter() {
            let u = if bit { &u1 } else { &u0 };
            dense = u.apply(&dense).expect("state length fixed at 8n");
        }
        for (slot, (got, want)) in fast.amplitudes().iter().zip(&dense).enumerate() {
            let diff = (got - want).norm();
            if diff > max_abs_diff {
                max_abs_diff = diff;
                worst = Some(MismatchLocation {
                    message_index,
                    node: slot / 8,
                    internal: slot % 8,
                });
            }
        }
    }
    EquivalenceReport {
        messages: messages.len(),
        max_abs_diff,
        worst,
    }
}

/// [`check_equivalence_with_coins`] with the honest coins from `params`.
pub fn check_equivalence(params: &WalkParams, messages: &[BitString]) -> EquivalenceReport {
    let coin0 = CoinCoefficients::from_angle(params.theta0()).expect("validated");
    let coin1 = CoinCoefficients::from_angle(params.theta1()).expect("validated");
    check_equivalence_with_coins(params, &coin0, &coin1, messages)
}
