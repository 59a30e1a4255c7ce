//! Seeded random instances.
//!
//! Weights are drawn with ChaCha8 (`rand_chacha`) seeded from a `u64`, so the
//! same `GenSpec` yields the same game on every platform.

use celebrity::game::{CelebrityGame, GameError};
use celebrity::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Weights are multiples of `1 / GRID`.
pub const GRID: i128 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub beta: u32,
    pub alpha: Rational,
    pub weight_min: Rational,
    pub weight_max: Rational,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("weight bounds must satisfy 0 < wmin <= wmax, got [{0}, {1}]")]
    Bounds(Rational, Rational),
    #[error("no multiple of 1/{GRID} lies in [{0}, {1}]")]
    EmptyGrid(Rational, Rational),
    #[error(transparent)]
    Game(#[from] GameError),
}

fn ceil_grid(r: Rational) -> i128 {
    let scaled = r.numer() * GRID;
    scaled.div_euclid(r.denom()) + i128::from(scaled.rem_euclid(r.denom()) != 0)
}

fn floor_grid(r: Rational) -> i128 {
    (r.numer() * GRID).div_euclid(r.denom())
}

/// A game with weights drawn uniformly from the grid points in
/// `[weight_min, weight_max]`. Equal bounds give that exact weight even when
/// it is off the grid.
pub fn random_game(spec: &GenSpec) -> Result<CelebrityGame, GenError> {
    let (lo, hi) = (spec.weight_min, spec.weight_max);
    if !lo.is_positive() || lo > hi {
        return Err(GenError::Bounds(lo, hi));
    }
    let weights = if lo == hi {
        vec![lo; spec.n]
    } else {
        let (a, b) = (ceil_grid(lo), floor_grid(hi));
        if a > b {
            return Err(GenError::EmptyGrid(lo, hi));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        (0..spec.n)
            .map(|_| Rational::new(rng.random_range(a..=b), GRID))
            .collect()
    };
    Ok(CelebrityGame::new(weights, spec.alpha, spec.beta)?)
}
