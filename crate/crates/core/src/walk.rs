//! Amplitude-state evolution of the controlled alternate walk.
//!
//! The walker's state is a vector of `8n` complex amplitudes `A[x][j]`: one
//! slot per node `x` on the cycle and per internal index
//! `j = 4*dr1 + 2*dr2 + c`, where `c` is the coin bit, `dr1` the most
//! recent direction taken, and `dr2` the direction before that. Slots are
//! stored flat at `8*x + j`.
//!
//! Each message bit applies one step. A 0-bit drives the step whose next
//! direction repeats or reverses `dr1`; a 1-bit drives the step keyed on
//! `dr2`. Both reduce to a neighbor-only stencil: the new amplitudes at
//! node `x` are fixed two-term combinations of the old amplitudes at
//! `x - 1` and `x + 1` (mod `n`), so a step costs O(n) time and evolution
//! needs just two `8n` buffers regardless of message length.
//!
//! Results feed a digest, so evaluation order is pinned down: every stencil
//! line is evaluated as written (`coin.a * u + coin.b * v` and the `c`/`d`
//! twin), buffers are swapped rather than updated in place, and the node
//! distribution sums `|A[x][j]|^2` in ascending `j`. Two runs over the same
//! message produce bit-identical amplitudes on any platform with strict
//! IEEE-754 binary64 arithmetic.

use num_complex::Complex64;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::params::{CoinCoefficients, WalkParams};

/// State of the walk: the parameter set plus the flat amplitude vector.
#[derive(Debug, Clone)]
pub struct AmplitudeState {
    params: WalkParams,
    amps: Vec<Complex64>,
}

impl AmplitudeState {
    /// The canonical starting state
    /// `cos(alpha) |x=0, j=2> + sin(alpha) |x=0, j=3>`: the walker sits on
    /// node 0 with `dr2 = 1`, `dr1 = 0`, and the coin mixed by `alpha`.
    pub fn initial(params: WalkParams) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); params.state_len()];
        amps[2] = Complex64::new(params.alpha().cos(), 0.0);
        amps[3] = Complex64::new(params.alpha().sin(), 0.0);
        Self { params, amps }
    }

    /// Wrap an explicit amplitude vector (length must be `8n`).
    pub fn from_amplitudes(params: WalkParams, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != params.state_len() {
            return Err(Error::AmplitudeLength {
                expected: params.state_len(),
                got: amps.len(),
            });
        }
        Ok(Self { params, amps })
    }

    pub fn params(&self) -> &WalkParams {
        &self.params
    }

    /// Flat amplitude slice; slot `8*x + j` holds `A[x][j]`.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, node: usize, internal: usize) -> Complex64 {
        self.amps[8 * node + internal]
    }

    /// Total probability `sum |A|^2`, summed in flat slot order.
    pub fn norm_squared(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// One step keyed on the most recent direction (0-bit step).
    pub fn step_qw1m(&self, coin: &CoinCoefficients) -> Self {
        self.stepped(|src, dst| step_one_memory(self.params.n(), coin, src, dst))
    }

    /// One step keyed on the second-to-last direction (1-bit step).
    pub fn step_qw2m(&self, coin: &CoinCoefficients) -> Self {
        self.stepped(|src, dst| step_two_memory(self.params.n(), coin, src, dst))
    }

    fn stepped(&self, kernel: impl Fn(&[Complex64], &mut [Complex64])) -> Self {
        let mut next = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        kernel(&self.amps, &mut next);
        Self {
            params: self.params,
            amps: next,
        }
    }

    /// Per-node probabilities `p[x] = sum_j |A[x][j]|^2`, inner sum taken
    /// in ascending `j`.
    pub fn position_distribution(&self) -> Vec<f64> {
        (0..self.params.n())
            .map(|x| (0..8).map(|j| self.amps[8 * x + j].norm_sqr()).sum())
            .collect()
    }
}

/// Stencil for the 0-bit step. Each destination `j` at node `x` reads one
/// pair of old slots at a neighbor (destination; source neighbor; sources):
///
/// ```text
/// j=0: x+1, (4,5) via (a,b)     j=4: x-1, (0,1) via (a,b)
/// j=1: x+1, (0,1) via (c,d)     j=5: x-1, (4,5) via (c,d)
/// j=2: x+1, (6,7) via (a,b)     j=6: x-1, (2,3) via (a,b)
/// j=3: x+1, (2,3) via (c,d)     j=7: x-1, (6,7) via (c,d)
/// ```
fn step_one_memory(n: usize, coin: &CoinCoefficients, src: &[Complex64], dst: &mut [Complex64]) {
    let CoinCoefficients { a, b, c, d } = *coin;
    for x in 0..n {
        let out = 8 * x;
        let fwd = 8 * ((x + 1) % n);
        let back = 8 * ((x + n - 1) % n);
        dst[out] = a * src[fwd + 4] + b * src[fwd + 5];
        dst[out + 1] = c * src[fwd] + d * src[fwd + 1];
        dst[out + 2] = a * src[fwd + 6] + b * src[fwd + 7];
        dst[out + 3] = c * src[fwd + 2] + d * src[fwd + 3];
        dst[out + 4] = a * src[back] + b * src[back + 1];
        dst[out + 5] = c * src[back + 4] + d * src[back + 5];
        dst[out + 6] = a * src[back + 2] + b * src[back + 3];
        dst[out + 7] = c * src[back + 6] + d * src[back + 7];
    }
}

/// Stencil for the 1-bit step.
///
/// ```text
/// j=0: x+1, (2,3) via (a,b)     j=4: x-1, (0,1) via (a,b)
/// j=1: x+1, (0,1) via (c,d)     j=5: x-1, (2,3) via (c,d)
/// j=2: x+1, (6,7) via (a,b)     j=6: x-1, (4,5) via (a,b)
/// j=3: x+1, (4,5) via (c,d)     j=7: x-1, (6,7) via (c,d)
/// ```
fn step_two_memory(n: usize, coin: &CoinCoefficients, src: &[Complex64], dst: &mut [Complex64]) {
    let CoinCoefficients { a, b, c, d } = *coin;
    for x in 0..n {
        let out = 8 * x;
        let fwd = 8 * ((x + 1) % n);
        let back = 8 * ((x + n - 1) % n);
        dst[out] = a * src[fwd + 2] + b * src[fwd + 3];
        dst[out + 1] = c * src[fwd] + d * src[fwd + 1];
        dst[out + 2] = a * src[fwd + 6] + b * src[fwd + 7];
        dst[out + 3] = c * src[fwd + 4] + d * src[fwd + 5];
        dst[out + 4] = a * src[back] + b * src[back + 1];
        dst[out + 5] = c * src[back + 2] + d * src[back + 3];
        dst[out + 6] = a * src[back + 4] + b * src[back + 5];
        dst[out + 7] = c * src[back + 6] + d * src[back + 7];
    }
}

/// Bookkeeping from a full evolution.
#[derive(Debug, Clone, Copy)]
pub struct EvolveStats {
    /// Steps applied; equals the message length in bits.
    pub steps: usize,
    /// Complex slots kept alive by the stepper: two buffers of `8n`,
    /// independent of message length.
    pub amplitude_slots: usize,
    /// `|1 - sum |A|^2|` of the final state. Unitary steps keep this at
    /// rounding-noise level; it is reported rather than renormalized away.
    pub norm_error: f64,
}

/// Run the full walk for `message`, starting from the canonical initial
/// state: bit 0 first, one step per bit.
pub fn evolve(params: &WalkParams, message: &BitString) -> AmplitudeState {
    evolve_with_stats(params, message).0
}

/// [`evolve`], also reporting step count, buffer footprint, and norm error.
pub fn evolve_with_stats(
    params: &WalkParams,
    message: &BitString,
) -> (AmplitudeState, EvolveStats) {
    let coin0 = params.coin_qw1m();
    let coin1 = params.coin_qw2m();
    let n = params.n();
    let mut cur = AmplitudeState::initial(*params).amps;
    let mut next = vec![Complex64::new(0.0, 0.0); cur.len()];
    let amplitude_slots = cur.len() + next.len();
    let mut steps = 0;
    for bit in message.iter() {
        if bit {
            step_two_memory(n, &coin1, &cur, &mut next);
        } else {
            step_one_memory(n, &coin0, &cur, &mut next);
        }
        std::mem::swap(&mut cur, &mut next);
        steps += 1;
    }
    let state = AmplitudeState {
        params: *params,
        amps: cur,
    };
    let norm_error = (1.0 - state.norm_squared()).abs();
    (
        state,
        EvolveStats {
            steps,
            amplitude_slots,
            norm_error,
        },
    )
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    use super::*;

    fn params(n: usize) -> WalkParams {
        WalkParams::new(n, 8, 8, FRAC_PI_4, FRAC_PI_3, FRAC_PI_4).unwrap()
    }

    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!(
            (got - want).abs() < tol,
            "got {got}, want {want} (tol {tol})"
        );
    }

    /// Tiny deterministic bit source for seeded message tests.
    fn test_bits(seed: u64, len: usize) -> BitString {
        let mut state = seed;
        BitString::from_bits((0..len).map(|_| {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            (z ^ (z >> 31)) & 1 == 1
        }))
    }

    #[test]
    fn initial_state_has_two_terms() {
        let state = AmplitudeState::initial(params(25));
        assert_eq!(state.amplitudes().len(), 200);
        assert_close(state.amplitude(0, 2).re, FRAC_PI_4.cos(), 1e-15);
        assert_close(state.amplitude(0, 3).re, FRAC_PI_4.sin(), 1e-15);
        let nonzero = state
            .amplitudes()
            .iter()
            .filter(|a| a.norm_sqr() > 0.0)
            .count();
        assert_eq!(nonzero, 2);
        assert_close(state.norm_squared(), 1.0, 1e-15);
    }

    #[test]
    fn initial_state_weights_follow_alpha() {
        let p = WalkParams::new(25, 8, 8, FRAC_PI_4, FRAC_PI_3, FRAC_PI_3).unwrap();
        let state = AmplitudeState::initial(p);
        assert_close(state.amplitude(0, 2).norm_sqr(), 0.25, 1e-15);
        assert_close(state.amplitude(0, 3).norm_sqr(), 0.75, 1e-15);
    }

    /// With theta0 = alpha = pi/4 the first 0-bit step funnels the whole
    /// wave into a single slot: A[1][6] = cos(t)cos(a) + sin(t)sin(a) = 1,
    /// and the would-be partner A[24][3] = sin(t)cos(a) - cos(t)sin(a) = 0.
    #[test]
    fn one_zero_bit_step_concentrates_at_node_one() {
        let p = params(25);
        let state =
            AmplitudeState::initial(p).step_qw1m(&CoinCoefficients::from_angle(FRAC_PI_4).unwrap());
        assert_close(state.amplitude(1, 6).re, 1.0, 1e-15);
        for (i, amp) in state.amplitudes().iter().enumerate() {
            if i != 8 + 6 {
                assert_close(amp.norm_sqr(), 0.0, 1e-30);
            }
        }
        let dist = state.position_distribution();
        assert_close(dist[1], 1.0, 1e-15);
    }

    /// A first 1-bit step splits the wave across the two neighbors of node
    /// 0, with weights set by theta1 = pi/3.
    #[test]
    fn one_one_bit_step_splits_between_neighbors() {
        let p = params(25);
        let state =
            AmplitudeState::initial(p).step_qw2m(&CoinCoefficients::from_angle(FRAC_PI_3).unwrap());
        // cos(pi/4) * (1/2 + sqrt(3)/2) and cos(pi/4) * (sqrt(3)/2 - 1/2)
        assert_close(state.amplitude(24, 0).re, 0.9659258262890683, 1e-12);
        assert_close(state.amplitude(1, 5).re, 0.2588190451025207, 1e-12);
        let dist = state.position_distribution();
        assert_close(dist[24], 0.9330127018922192, 1e-12);
        assert_close(dist[1], 0.0669872981077806, 1e-12);
        assert_close(dist.iter().sum::<f64>(), 1.0, 1e-14);
    }

    #[test]
    fn empty_message_leaves_initial_state() {
        let p = params(15);
        let evolved = evolve(&p, &BitString::new());
        let init = AmplitudeState::initial(p);
        assert_eq!(evolved.amplitudes(), init.amplitudes());
    }

    #[test]
    fn norm_is_conserved_over_long_messages() {
        let p = params(15);
        let msg = test_bits(3, 1000);
        let (state, stats) = evolve_with_stats(&p, &msg);
        assert_eq!(stats.steps, 1000);
        assert!(stats.norm_error < 1e-10, "norm error {}", stats.norm_error);
        assert_close(state.norm_squared(), 1.0, 1e-10);
    }

    #[test]
    fn evolution_is_deterministic() {
        let p = params(17);
        let msg = test_bits(9, 513);
        let once = evolve(&p, &msg);
        let twice = evolve(&p, &msg);
        for (x, y) in once.amplitudes().iter().zip(twice.amplitudes()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn buffer_footprint_is_independent_of_message_length() {
        let p = params(15);
        let (_, short) = evolve_with_stats(&p, &test_bits(1, 64));
        let (_, long) = evolve_with_stats(&p, &test_bits(1, 4096));
        assert_eq!(short.amplitude_slots, 16 * 15);
        assert_eq!(long.amplitude_slots, 16 * 15);
    }

    /// After t steps from the localized start, support extends at most t
    /// nodes from node 0 in either direction along the cycle.
    #[test]
    fn propagation_respects_locality() {
        let p = params(25);
        for t in 1..=5usize {
            let msg = test_bits(t as u64, t);
            let dist = evolve(&p, &msg).position_distribution();
            for (x, &prob) in dist.iter().enumerate() {
                let ring_dist = x.min(25 - x);
                if ring_dist > t {
                    assert_eq!(prob, 0.0, "support leaked to node {x} after {t} steps");
                }
            }
        }
    }

    /// Steps are linear maps: stepping a scaled superposition equals the
    /// scaled superposition of stepped states.
    #[test]
    fn steps_are_linear() {
        let p = params(5);
        let coin = CoinCoefficients::from_angle(FRAC_PI_3).unwrap();
        let u = evolve(&p, &test_bits(4, 40));
        let v = evolve(&p, &test_bits(5, 40));
        let mixed: Vec<Complex64> = u
            .amplitudes()
            .iter()
            .zip(v.amplitudes())
            .map(|(a, b)| 0.25 * a + 0.75 * b)
            .collect();
        let mixed = AmplitudeState::from_amplitudes(p, mixed).unwrap();
        let stepped_mixed = mixed.step_qw2m(&coin);
        let su = u.step_qw2m(&coin);
        let sv = v.step_qw2m(&coin);
        for ((got, a), b) in stepped_mixed
            .amplitudes()
            .iter()
            .zip(su.amplitudes())
            .zip(sv.amplitudes())
        {
            let want = 0.25 * a + 0.75 * b;
            assert!((got - want).norm() < 1e-14);
        }
    }

    #[test]
    fn from_amplitudes_checks_length() {
        let p = params(5);
        let err = AmplitudeState::from_amplitudes(p, vec![Complex64::new(1.0, 0.0); 39]);
        assert_eq!(
            err.unwrap_err(),
            Error::AmplitudeLength {
                expected: 40,
                got: 39
            }
        );
    }
}
