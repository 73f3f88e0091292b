//! The lattice Markov chain.
//!
//! At every vertex the walk has exactly three outgoing edges — ordinate up,
//! ordinate down, and the one-way horizontal edge whose direction is the
//! environment sign at the current level — each taken with probability 1/3.
//! The chain is driven by move tags drawn from a counter RNG keyed by
//! `(seed, step index)`, so the horizontal direction is resolved lazily via
//! the environment and trajectories replay exactly from their seed.

use crate::env::OrientationEnvironment;
use crate::rng::prf;
use crate::{Error, Result, COORD_LIMIT};

/// Default cap on fully recorded trajectories (positions kept in memory).
pub const DEFAULT_RECORD_CAP: u64 = 100_000_000;

/// A lattice vertex `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeState {
    pub x: i64,
    pub y: i64,
}

impl LatticeState {
    pub const ORIGIN: LatticeState = LatticeState { x: 0, y: 0 };

    pub fn is_origin(&self) -> bool {
        *self == Self::ORIGIN
    }
}

/// One of the three outgoing edges of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepTag {
    Up,
    Down,
    Horizontal,
}

impl StepTag {
    /// Uniform tag for the given step index of a seeded walk.
    #[inline]
    pub fn draw(seed: u64, step_index: u64) -> StepTag {
        match (((prf(seed, step_index) as u128) * 3) >> 64) as u64 {
            0 => StepTag::Up,
            1 => StepTag::Down,
            _ => StepTag::Horizontal,
        }
    }
}

/// Applies one move tag to a state. Horizontal moves go in the direction of
/// the environment sign at the current ordinate.
pub fn step(
    state: LatticeState,
    env: &OrientationEnvironment,
    tag: StepTag,
) -> Result<LatticeState> {
    let next = match tag {
        StepTag::Up => LatticeState {
            x: state.x,
            y: state.y + 1,
        },
        StepTag::Down => LatticeState {
            x: state.x,
            y: state.y - 1,
        },
        StepTag::Horizontal => LatticeState {
            x: state.x + env.epsilon(state.y)?.as_i64(),
            y: state.y,
        },
    };
    if next.x.unsigned_abs() >= COORD_LIMIT as u64 || next.y.unsigned_abs() >= COORD_LIMIT as u64 {
        return Err(Error::CoordinateOverflow {
            x: state.x,
            y: state.y,
        });
    }
    Ok(next)
}

/// Streaming walker: holds the current state and the step counter, drawing
/// tags on demand. Memory is `O(1)`; use [`simulate`] to record positions.
#[derive(Debug, Clone)]
pub struct Walker {
    pub state: LatticeState,
    seed: u64,
    step_index: u64,
}

impl Walker {
    pub fn new(seed: u64) -> Self {
        Self {
            state: LatticeState::ORIGIN,
            seed,
            step_index: 0,
        }
    }

    /// Draws the next tag, applies it, and returns `(tag, new state)`.
    #[inline]
    pub fn advance(&mut self, env: &OrientationEnvironment) -> Result<(StepTag, LatticeState)> {
        let tag = StepTag::draw(self.seed, self.step_index);
        self.step_index += 1;
        self.state = step(self.state, env, tag)?;
        Ok((tag, self.state))
    }

    pub fn steps_taken(&self) -> u64 {
        self.step_index
    }
}

/// A fully recorded trajectory: the move tags plus every visited position,
/// anchored at the origin (`positions[0] = (0,0)`,
/// `positions.len() == moves.len() + 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    moves: Vec<StepTag>,
    positions: Vec<LatticeState>,
}

impl Trajectory {
    /// Replays an explicit move sequence through the stepper.
    pub fn from_moves(env: &OrientationEnvironment, moves: &[StepTag]) -> Result<Trajectory> {
        let mut positions = Vec::with_capacity(moves.len() + 1);
        let mut state = LatticeState::ORIGIN;
        positions.push(state);
        for &tag in moves {
            state = step(state, env, tag)?;
            positions.push(state);
        }
        Ok(Trajectory {
            moves: moves.to_vec(),
            positions,
        })
    }

    pub fn moves(&self) -> &[StepTag] {
        &self.moves
    }

    pub fn positions(&self) -> &[LatticeState] {
        &self.positions
    }

    /// Number of moves (one less than the number of positions).
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// How often the chain sits at the origin, counting time 0.
    pub fn origin_visits(&self) -> u64 {
        self.positions.iter().filter(|p| p.is_origin()).count() as u64
    }
}

/// Simulates a seeded walk of `steps` moves with full position recording.
pub fn simulate(env: &OrientationEnvironment, steps: u64, seed: u64) -> Result<Trajectory> {
    simulate_capped(env, steps, seed, DEFAULT_RECORD_CAP)
}

/// As [`simulate`], with an explicit recording cap.
pub fn simulate_capped(
    env: &OrientationEnvironment,
    steps: u64,
    seed: u64,
    cap: u64,
) -> Result<Trajectory> {
    if steps > cap {
        return Err(Error::RecordingCap { steps, cap });
    }
    let mut moves = Vec::with_capacity(steps as usize);
    let mut positions = Vec::with_capacity(steps as usize + 1);
    let mut walker = Walker::new(seed);
    positions.push(walker.state);
    for _ in 0..steps {
        let (tag, state) = walker.advance(env)?;
        moves.push(tag);
        positions.push(state);
    }
    Ok(Trajectory { moves, positions })
}

/// The move sequence of the worked trajectory figure: fifteen moves visiting
/// ordinates 1 down to -2 and back to 0. Used by tests and the verify suite.
pub fn figure_moves() -> Vec<StepTag> {
    use StepTag::{Down, Horizontal as H, Up};
    vec![Up, H, H, Down, Down, Down, H, H, H, H, Up, H, H, H, Up]
}
