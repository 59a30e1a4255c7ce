//! Best responses.
//!
//! Computing a best response is NP-hard once `beta >= 2` (minimum dominating
//! set reduces to it), so the exact solver enumerates every subset of the
//! other players. For `beta = 1` the cost separates per link and sorting by
//! weight suffices. A greedy local search covers larger instances.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::game::{CelebrityGame, StrategyProfile};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// Default cap on `n` for subset enumeration (`2^(n-1)` candidates).
pub const DEFAULT_EXACT_LIMIT: usize = 16;

/// Cap on `n` for [`min_dominating_set`].
pub const DOMINATING_SET_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("instance too large: n = {n} exceeds the limit of {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("the beta = 1 algorithm needs beta = 1, got beta = {0}")]
    WrongBeta(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    Beta1,
    Greedy,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Beta1 => "beta1",
            Method::Greedy => "greedy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub strategy: VertexSet,
    /// `c_u(S_{-u}, strategy)`.
    pub cost: Rational,
    pub method: Method,
}

/// Exact best response with the default size limit.
pub fn best_response_exact(
    game: &CelebrityGame,
    profile: &StrategyProfile,
    u: usize,
) -> Result<BestResponse, SolverError> {
    best_response_exact_with_limit(game, profile, u, DEFAULT_EXACT_LIMIT)
}

/// Minimum of `c_u` over all `2^(n-1)` strategies. Ties go to the smallest
/// set, then to the lexicographically smallest one.
pub fn best_response_exact_with_limit(
    game: &CelebrityGame,
    profile: &StrategyProfile,
    u: usize,
    limit: usize,
) -> Result<BestResponse, SolverError> {
    let n = game.n();
    if n > limit {
        return Err(SolverError::InstanceTooLarge { n, limit });
    }
    let others = profile.adjacency_without(u);
    let (strategy, scaled) = exact_minimum(game, &others, u);
    Ok(BestResponse {
        strategy,
        cost: game.scale().to_rational(scaled),
        method: Method::Exact,
    })
}

/// Scaled minimum cost over every strategy of `u`, with canonical tie-break.
pub(crate) fn exact_minimum(
    game: &CelebrityGame,
    others: &[VertexSet],
    u: usize,
) -> (VertexSet, i128) {
    let n = game.n();
    let candidates = VertexSet::full(n).without(u);
    let mut best = VertexSet::EMPTY;
    let mut best_cost = game.scaled_player_cost(others, u, best);
    // Enumerate subsets of `candidates` in increasing mask order.
    let mut sub = candidates.0;
    while sub != 0 {
        let s = VertexSet(sub);
        let cost = game.scaled_player_cost(others, u, s);
        if cost < best_cost
            || (cost == best_cost && s.canonical_cmp(best) == Ordering::Less)
        {
            best = s;
            best_cost = cost;
        }
        sub = (sub - 1) & candidates.0;
    }
    (best, best_cost)
}

/// Polynomial best response for `beta = 1`.
///
/// With `beta = 1` the cost is `alpha |D|` plus the weight of every player not
/// adjacent to `u`. Players already linked to `u` by their own purchase are
/// never worth buying, so the candidates are the remaining players sorted by
/// weight (descending, index ascending); the answer is the cheapest prefix,
/// shortest on ties.
pub fn best_response_beta1(
    game: &CelebrityGame,
    profile: &StrategyProfile,
    u: usize,
) -> Result<BestResponse, SolverError> {
    if game.beta() != 1 {
        return Err(SolverError::WrongBeta(game.beta()));
    }
    let n = game.n();
    let scale = game.scale();
    let linked = profile.incoming(u);
    let mut candidates: Vec<usize> = (0..n).filter(|&v| v != u && !linked.contains(v)).collect();
    candidates.sort_by(|&a, &b| scale.weights[b].cmp(&scale.weights[a]).then(a.cmp(&b)));

    let mut remaining: i128 = candidates.iter().map(|&v| scale.weights[v]).sum();
    let mut best_k = 0;
    let mut best_cost = remaining;
    for (i, &v) in candidates.iter().enumerate() {
        remaining -= scale.weights[v];
        let cost = scale.alpha * (i as i128 + 1) + remaining;
        if cost < best_cost {
            best_cost = cost;
            best_k = i + 1;
        }
    }
    Ok(BestResponse {
        strategy: candidates[..best_k].iter().copied().collect(),
        cost: scale.to_rational(best_cost),
        method: Method::Beta1,
    })
}

/// Steepest-descent local search from the current strategy over single
/// additions, removals and swaps. The cost is exact for the returned set; the
/// set itself may be only a local optimum.
pub fn best_response_greedy(game: &CelebrityGame, profile: &StrategyProfile, u: usize) -> BestResponse {
    let n = game.n();
    let others = profile.adjacency_without(u);
    let candidates = VertexSet::full(n).without(u);
    let mut current = profile.strategy(u);
    let mut current_cost = game.scaled_player_cost(&others, u, current);
    loop {
        let mut best_move: Option<(VertexSet, i128)> = None;
        let mut consider = |s: VertexSet| {
            let c = game.scaled_player_cost(&others, u, s);
            let better = match best_move {
                None => c < current_cost,
                Some((b, bc)) => c < bc || (c == bc && s.canonical_cmp(b) == Ordering::Less),
            };
            if better {
                best_move = Some((s, c));
            }
        };
        for x in current.iter() {
            consider(current.without(x));
        }
        let outside = candidates.difference(current);
        for y in outside.iter() {
            consider(current.with(y));
        }
        for x in current.iter() {
            for y in outside.iter() {
                consider(current.without(x).with(y));
            }
        }
        match best_move {
            Some((s, c)) => {
                current = s;
                current_cost = c;
            }
            None => break,
        }
    }
    BestResponse {
        strategy: current,
        cost: game.scale().to_rational(current_cost),
        method: Method::Greedy,
    }
}

/// Dispatches on `method`.
pub fn best_response(
    game: &CelebrityGame,
    profile: &StrategyProfile,
    u: usize,
    method: Method,
) -> Result<BestResponse, SolverError> {
    match method {
        Method::Exact => best_response_exact(game, profile, u),
        Method::Beta1 => best_response_beta1(game, profile, u),
        Method::Greedy => Ok(best_response_greedy(game, profile, u)),
    }
}

/// A best-response instance whose answer is a minimum dominating set of the
/// source graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub game: CelebrityGame,
    pub profile: StrategyProfile,
    /// The added isolated player, index `source.n()`.
    pub target_player: usize,
}

/// Adds an isolated player to `source`; all weights 2, `alpha = 3/2`,
/// `beta = 2`; the source edges are bought by their lower endpoint.
///
/// For a one-vertex source the game has two players and keeps `beta = 2`,
/// which behaves like `beta = 1` there.
pub fn build_reduction(source: &Graph) -> ReductionInstance {
    let n = source.n() + 1;
    let weights = vec![Rational::from_integer(2); n];
    let game = CelebrityGame::with_relaxed_beta(weights, Rational::new(3, 2), 2)
        .expect("reduction parameters are valid");
    let mut sets = StrategyProfile::lower_index_buys(source).strategies().to_vec();
    sets.push(VertexSet::EMPTY);
    let profile = StrategyProfile::from_sets(sets).expect("orientation of a simple graph");
    ReductionInstance {
        game,
        profile,
        target_player: n - 1,
    }
}

pub fn is_dominating(g: &Graph, set: VertexSet) -> bool {
    let covered = set
        .iter()
        .fold(set, |acc, v| acc.union(g.neighbors(v)));
    VertexSet::full(g.n()).is_subset(covered)
}

/// A minimum dominating set; among minimum ones the lexicographically
/// smallest.
pub fn min_dominating_set(g: &Graph) -> Result<VertexSet, SolverError> {
    let n = g.n();
    if n > DOMINATING_SET_LIMIT {
        return Err(SolverError::InstanceTooLarge {
            n,
            limit: DOMINATING_SET_LIMIT,
        });
    }
    for k in 0..=n {
        // k-subsets in lexicographic order
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let set: VertexSet = combo.iter().copied().collect();
            if is_dominating(g, set) {
                return Ok(set);
            }
            let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    unreachable!("the full vertex set dominates")
}
