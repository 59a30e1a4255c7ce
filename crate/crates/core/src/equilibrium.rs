//! Nash equilibria: verification, exhaustive enumeration over orientation
//! profiles, and best-response dynamics.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bestresponse::{best_response, exact_minimum, Method, SolverError, DEFAULT_EXACT_LIMIT};
use crate::game::{social_cost, CelebrityGame, StrategyProfile};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// Largest `n` enumerated without an explicit override.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 5;
/// Largest `n` enumerated at all (`3^15` orientation profiles).
pub const MAX_ENUMERATION_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquilibriumError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("schedule names player {player}, but the game has {n} players")]
    InvalidSchedule { player: usize, n: usize },
    #[error("profile has {got} players but the game has {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

/// An improving unilateral deviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub player: usize,
    pub strategy: VertexSet,
    /// Strictly negative.
    pub delta: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NeCertificate {
    IsNe,
    NotNe(Deviation),
}

impl NeCertificate {
    pub fn is_ne(&self) -> bool {
        matches!(self, NeCertificate::IsNe)
    }

    pub fn witness(&self) -> Option<&Deviation> {
        match self {
            NeCertificate::IsNe => None,
            NeCertificate::NotNe(d) => Some(d),
        }
    }
}

/// Checks every unilateral deviation. Cheap moves are scanned first for all
/// players (drop everything, single drops, single adds, single swaps); only
/// then is each player's full strategy space enumerated. The witness is the
/// first improving move in that order.
pub fn is_ne(game: &CelebrityGame, profile: &StrategyProfile) -> Result<NeCertificate, EquilibriumError> {
    is_ne_with_limit(game, profile, DEFAULT_EXACT_LIMIT)
}

pub fn is_ne_with_limit(
    game: &CelebrityGame,
    profile: &StrategyProfile,
    limit: usize,
) -> Result<NeCertificate, EquilibriumError> {
    let n = game.n();
    if profile.n() != n {
        return Err(EquilibriumError::SizeMismatch {
            expected: n,
            got: profile.n(),
        });
    }
    if n > limit {
        return Err(SolverError::InstanceTooLarge { n, limit }.into());
    }
    Ok(match find_deviation(game, profile.strategies()) {
        None => NeCertificate::IsNe,
        Some((player, strategy, delta)) => NeCertificate::NotNe(Deviation {
            player,
            strategy,
            delta: game.scale().to_rational(delta),
        }),
    })
}

/// Adjacency of the outcome graph without `u`'s purchases, written into `buf`.
fn others_adjacency(strategies: &[VertexSet], u: usize, buf: &mut Vec<VertexSet>) {
    buf.clear();
    buf.resize(strategies.len(), VertexSet::EMPTY);
    for (x, s) in strategies.iter().enumerate() {
        if x == u {
            continue;
        }
        for v in s.iter() {
            buf[x].insert(v);
            buf[v].insert(x);
        }
    }
}

fn find_deviation(game: &CelebrityGame, strategies: &[VertexSet]) -> Option<(usize, VertexSet, i128)> {
    let n = strategies.len();
    let adjacency: Vec<Vec<VertexSet>> = (0..n)
        .map(|u| {
            let mut buf = Vec::with_capacity(n);
            others_adjacency(strategies, u, &mut buf);
            buf
        })
        .collect();
    let current: Vec<i128> = (0..n)
        .map(|u| game.scaled_player_cost(&adjacency[u], u, strategies[u]))
        .collect();
    let improves = |u: usize, s: VertexSet| {
        let c = game.scaled_player_cost(&adjacency[u], u, s);
        (c < current[u]).then(|| (u, s, c - current[u]))
    };

    for u in 0..n {
        if !strategies[u].is_empty() {
            if let Some(dev) = improves(u, VertexSet::EMPTY) {
                return Some(dev);
            }
        }
    }
    for u in 0..n {
        for x in strategies[u].iter() {
            if let Some(dev) = improves(u, strategies[u].without(x)) {
                return Some(dev);
            }
        }
    }
    for u in 0..n {
        let outside = VertexSet::full(n).without(u).difference(strategies[u]);
        for y in outside.iter() {
            if let Some(dev) = improves(u, strategies[u].with(y)) {
                return Some(dev);
            }
        }
    }
    for u in 0..n {
        let outside = VertexSet::full(n).without(u).difference(strategies[u]);
        for x in strategies[u].iter() {
            for y in outside.iter() {
                if let Some(dev) = improves(u, strategies[u].without(x).with(y)) {
                    return Some(dev);
                }
            }
        }
    }
    for u in 0..n {
        let (best, cost) = exact_minimum(game, &adjacency[u], u);
        if cost < current[u] {
            return Some((u, best, cost - current[u]));
        }
    }
    None
}

/// A distinct NE outcome graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeGraph {
    pub graph: Graph,
    pub social_cost: Rational,
    /// Indices into [`EquilibriumSet::profiles`] producing this graph.
    pub profiles: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumSet {
    pub game: CelebrityGame,
    pub profiles: Vec<StrategyProfile>,
    /// Distinct outcome graphs in order of first appearance.
    pub graphs: Vec<NeGraph>,
    /// True when no orientation profile outside `profiles` is a NE.
    pub exhaustive: bool,
}

impl EquilibriumSet {
    /// Groups `profiles` by outcome graph. Does not re-verify them.
    pub fn from_profiles(game: CelebrityGame, profiles: Vec<StrategyProfile>, exhaustive: bool) -> Self {
        let mut index: HashMap<Graph, usize> = HashMap::new();
        let mut graphs: Vec<NeGraph> = Vec::new();
        for (i, p) in profiles.iter().enumerate() {
            let g = p.outcome_graph();
            match index.get(&g) {
                Some(&k) => graphs[k].profiles.push(i),
                None => {
                    index.insert(g.clone(), graphs.len());
                    graphs.push(NeGraph {
                        social_cost: social_cost(&game, &g),
                        graph: g,
                        profiles: vec![i],
                    });
                }
            }
        }
        EquilibriumSet {
            game,
            profiles,
            graphs,
            exhaustive,
        }
    }

    pub fn contains_graph(&self, g: &Graph) -> bool {
        self.graphs.iter().any(|ng| &ng.graph == g)
    }

    pub fn worst_cost(&self) -> Option<Rational> {
        self.graphs.iter().map(|g| g.social_cost).max()
    }

    pub fn best_cost(&self) -> Option<Rational> {
        self.graphs.iter().map(|g| g.social_cost).min()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerationOptions {
    /// Permit `n = 6` (about 14 million profiles).
    pub allow_n6: bool,
}

/// Unordered pairs `(u, v)`, `u < v`, in lexicographic order.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// The orientation profile with base-3 code `code`; the first pair is the
/// most significant digit (0: no link, 1: lower endpoint buys, 2: higher
/// endpoint buys).
pub fn decode_orientation(n: usize, code: u64) -> StrategyProfile {
    let mut sets = vec![VertexSet::EMPTY; n];
    decode_into(&pairs(n), code, &mut sets);
    StrategyProfile::from_sets(sets).expect("valid orientation")
}

fn decode_into(pairs: &[(usize, usize)], mut code: u64, sets: &mut [VertexSet]) {
    sets.iter_mut().for_each(|s| *s = VertexSet::EMPTY);
    for &(u, v) in pairs.iter().rev() {
        match code % 3 {
            1 => sets[u].insert(v),
            2 => sets[v].insert(u),
            _ => {}
        }
        code /= 3;
    }
}

/// Enumerates all `3^(n(n-1)/2)` orientation profiles and keeps the NE.
/// Profiles with a doubly bought link are never NE (dropping one copy saves
/// `alpha`), so nothing is lost by skipping them.
pub fn enumerate_ne(game: &CelebrityGame, options: EnumerationOptions) -> Result<EquilibriumSet, SolverError> {
    let n = game.n();
    let limit = if options.allow_n6 {
        MAX_ENUMERATION_LIMIT
    } else {
        DEFAULT_ENUMERATION_LIMIT
    };
    if n > limit {
        return Err(SolverError::InstanceTooLarge { n, limit });
    }
    let pairs = pairs(n);
    let total = 3u64.pow(pairs.len() as u32);
    let profiles: Vec<StrategyProfile> = (0..total)
        .into_par_iter()
        .map_init(
            || vec![VertexSet::EMPTY; n],
            |sets, code| {
                decode_into(&pairs, code, sets);
                find_deviation(game, sets).is_none().then(|| {
                    StrategyProfile::from_sets(sets.clone()).expect("valid orientation")
                })
            },
        )
        .flatten()
        .collect();
    Ok(EquilibriumSet::from_profiles(game.clone(), profiles, true))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    /// Players move in `order`, repeated every round.
    RoundRobin { order: Vec<usize> },
    /// Every round is a fresh ChaCha8 permutation of all players.
    Random { seed: u64 },
}

impl Schedule {
    pub fn round_robin(n: usize) -> Self {
        Schedule::RoundRobin {
            order: (0..n).collect(),
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::RoundRobin { order } => {
                write!(f, "roundrobin(")?;
                for (i, p) in order.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Schedule::Random { seed } => write!(f, "random(seed={seed})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub round: usize,
    pub player: usize,
    pub old: VertexSet,
    pub new: VertexSet,
    pub delta: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynamicsOutcome {
    /// A full round without moves; the profile is a verified NE.
    Converged(StrategyProfile),
    /// A silent round of the greedy responder whose profile is not a NE (or
    /// is too large to verify).
    LocalOptimum(StrategyProfile),
    MaxRoundsReached(StrategyProfile),
}

impl DynamicsOutcome {
    pub fn profile(&self) -> &StrategyProfile {
        match self {
            DynamicsOutcome::Converged(p)
            | DynamicsOutcome::LocalOptimum(p)
            | DynamicsOutcome::MaxRoundsReached(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub schedule: Schedule,
    pub moves: Vec<Move>,
    pub rounds: usize,
    pub outcome: DynamicsOutcome,
}

/// Sequential best-response dynamics. A player switches only on a strict
/// improvement; the run stops after a silent round or `max_rounds` rounds.
pub fn run_dynamics(
    game: &CelebrityGame,
    initial: &StrategyProfile,
    schedule: &Schedule,
    max_rounds: usize,
    responder: Method,
) -> Result<DynamicsTrace, EquilibriumError> {
    let n = game.n();
    if initial.n() != n {
        return Err(EquilibriumError::SizeMismatch {
            expected: n,
            got: initial.n(),
        });
    }
    match responder {
        Method::Beta1 if game.beta() != 1 => return Err(SolverError::WrongBeta(game.beta()).into()),
        Method::Exact if n > DEFAULT_EXACT_LIMIT => {
            return Err(SolverError::InstanceTooLarge {
                n,
                limit: DEFAULT_EXACT_LIMIT,
            }
            .into())
        }
        _ => {}
    }
    if let Schedule::RoundRobin { order } = schedule {
        if let Some(&player) = order.iter().find(|&&p| p >= n) {
            return Err(EquilibriumError::InvalidSchedule { player, n });
        }
    }

    let mut rng = match schedule {
        Schedule::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        Schedule::RoundRobin { .. } => None,
    };
    let mut profile = initial.clone();
    let mut moves = Vec::new();
    for round in 0..max_rounds {
        let order: Vec<usize> = match (schedule, rng.as_mut()) {
            (Schedule::RoundRobin { order }, _) => order.clone(),
            (Schedule::Random { .. }, Some(rng)) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(rng);
                order
            }
            (Schedule::Random { .. }, None) => unreachable!(),
        };
        let mut moved = false;
        for u in order {
            let current = crate::game::player_cost(game, &profile, u).total;
            let br = best_response(game, &profile, u, responder)?;
            if br.cost < current {
                moves.push(Move {
                    round,
                    player: u,
                    old: profile.strategy(u),
                    new: br.strategy,
                    delta: br.cost - current,
                });
                profile = profile.with_strategy(u, br.strategy);
                moved = true;
            }
        }
        if !moved {
            let outcome = match responder {
                Method::Greedy => {
                    let verified = n <= DEFAULT_EXACT_LIMIT
                        && is_ne(game, &profile).map(|c| c.is_ne()).unwrap_or(false);
                    if verified {
                        DynamicsOutcome::Converged(profile)
                    } else {
                        DynamicsOutcome::LocalOptimum(profile)
                    }
                }
                Method::Exact | Method::Beta1 => DynamicsOutcome::Converged(profile),
            };
            return Ok(DynamicsTrace {
                schedule: schedule.clone(),
                moves,
                rounds: round + 1,
                outcome,
            });
        }
    }
    Ok(DynamicsTrace {
        schedule: schedule.clone(),
        moves,
        rounds: max_rounds,
        outcome: DynamicsOutcome::MaxRoundsReached(profile),
    })
}
