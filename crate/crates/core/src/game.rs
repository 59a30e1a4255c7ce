//! The celebrity-game model.
//!
//! Player `u` pays `alpha` per bought link plus the weight of every player
//! farther than `beta` hops away in the outcome graph. All money is exact.
//!
//! Internally every game carries a [`CostScale`]: the weights and `alpha`
//! multiplied by the least common denominator, so inner loops compare plain
//! integers. Scaled and rational results are interchangeable by construction.

use thiserror::Error;

use crate::graph::{ball_in, Graph, VertexSet, MAX_VERTICES};
use crate::rational::{common_denominator, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least 2 players, got {0}")]
    TooFewPlayers(usize),
    #[error("at most {MAX_VERTICES} players are supported, got {0}")]
    TooManyPlayers(usize),
    #[error("weight of player {player} must be > 0, got {weight}")]
    NonPositiveWeight { player: usize, weight: Rational },
    #[error("alpha must be > 0, got {0}")]
    NonPositiveAlpha(Rational),
    #[error("beta must satisfy 1 <= beta <= n-1 = {max}, got {beta}")]
    BetaOutOfRange { beta: u32, max: usize },
    #[error("parameters are too fine-grained for exact 128-bit arithmetic")]
    ArithmeticRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("profile has {got} strategies but the game has {expected} players")]
    SizeMismatch { expected: usize, got: usize },
    #[error("player {0} cannot buy a link to itself")]
    SelfLink(usize),
    #[error("player {player} buys a link to {target}, outside 0..{n}")]
    TargetOutOfRange { player: usize, target: usize, n: usize },
}

/// Weights and `alpha` over a common denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct CostScale {
    pub denom: i128,
    pub alpha: i128,
    pub weights: Vec<i128>,
}

impl CostScale {
    fn new(weights: &[Rational], alpha: Rational) -> Option<Self> {
        let denom = common_denominator(weights.iter().chain(std::iter::once(&alpha)))?;
        let scale = |r: &Rational| r.numer().checked_mul(denom / r.denom());
        let weights = weights.iter().map(scale).collect::<Option<Vec<_>>>()?;
        let alpha_scaled = scale(&alpha)?;
        // Headroom for the largest derived quantity (n^2 * (W + alpha) with a
        // generous constant factor).
        let total = weights
            .iter()
            .try_fold(alpha_scaled, |acc, w| acc.checked_add(*w))?;
        let n = weights.len() as i128;
        total.checked_mul(n * n * 1024)?;
        Some(CostScale {
            denom,
            alpha: alpha_scaled,
            weights,
        })
    }

    pub fn to_rational(&self, scaled: i128) -> Rational {
        Rational::new(scaled, self.denom)
    }

    pub fn weight_of(&self, set: VertexSet) -> i128 {
        set.iter().map(|v| self.weights[v]).sum()
    }
}

/// An immutable game instance `<V, w, alpha, beta>` on players `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CelebrityGame {
    weights: Vec<Rational>,
    alpha: Rational,
    beta: u32,
    scale: CostScale,
}

impl CelebrityGame {
    pub fn new(weights: Vec<Rational>, alpha: Rational, beta: u32) -> Result<Self, GameError> {
        let n = weights.len();
        if n >= 2 && (beta as usize) > n - 1 {
            return Err(GameError::BetaOutOfRange { beta, max: n - 1 });
        }
        Self::with_relaxed_beta(weights, alpha, beta)
    }

    /// Like [`CelebrityGame::new`] but allows `beta > n - 1`, which behaves
    /// exactly like `beta = n - 1`. Only the hardness reduction needs this.
    pub(crate) fn with_relaxed_beta(
        weights: Vec<Rational>,
        alpha: Rational,
        beta: u32,
    ) -> Result<Self, GameError> {
        let n = weights.len();
        if n < 2 {
            return Err(GameError::TooFewPlayers(n));
        }
        if n > MAX_VERTICES {
            return Err(GameError::TooManyPlayers(n));
        }
        if let Some((player, &weight)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive())
        {
            return Err(GameError::NonPositiveWeight { player, weight });
        }
        if !alpha.is_positive() {
            return Err(GameError::NonPositiveAlpha(alpha));
        }
        if beta < 1 {
            return Err(GameError::BetaOutOfRange { beta, max: n - 1 });
        }
        let scale = CostScale::new(&weights, alpha).ok_or(GameError::ArithmeticRange)?;
        Ok(CelebrityGame {
            weights,
            alpha,
            beta,
            scale,
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, u: usize) -> Rational {
        self.weights[u]
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// `W`, the sum of all weights.
    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn max_weight(&self) -> Rational {
        *self.weights.iter().max().expect("n >= 2")
    }

    pub fn min_weight(&self) -> Rational {
        *self.weights.iter().min().expect("n >= 2")
    }

    pub fn weight_of(&self, set: VertexSet) -> Rational {
        self.scale.to_rational(self.scale.weight_of(set))
    }

    pub(crate) fn scale(&self) -> &CostScale {
        &self.scale
    }

    /// Scaled cost of `u` when `others` is the adjacency of the outcome graph
    /// without `u`'s own purchases and `u` buys `strategy`.
    pub(crate) fn scaled_player_cost(
        &self,
        others: &[VertexSet],
        u: usize,
        strategy: VertexSet,
    ) -> i128 {
        self.scale.alpha * strategy.len() as i128 + self.scaled_far_weight(others, u, strategy)
    }

    /// Scaled weight of the players farther than `beta` from `u`.
    pub(crate) fn scaled_far_weight(
        &self,
        others: &[VertexSet],
        u: usize,
        strategy: VertexSet,
    ) -> i128 {
        let n = self.n();
        // A shortest path from u never re-enters u, so u's own links only
        // matter as the first hop.
        let mut visited = VertexSet::singleton(u);
        let mut frontier = others[u].union(strategy).difference(visited);
        visited = visited.union(frontier);
        let mut level = 1;
        while level < self.beta && !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for x in frontier.iter() {
                next = next.union(others[x]);
            }
            frontier = next.difference(visited);
            visited = visited.union(frontier);
            level += 1;
        }
        self.scale
            .weight_of(VertexSet::full(n).difference(visited))
    }

    /// Scaled weight component of `graph`: sum over ordered far pairs.
    pub(crate) fn scaled_weight_component(&self, graph: &Graph) -> i128 {
        let n = self.n();
        (0..n)
            .map(|u| {
                let near = ball_in(graph.adjacency(), u, self.beta);
                self.scale.weight_of(VertexSet::full(n).difference(near))
            })
            .sum()
    }
}

/// Per-player sets of bought links. Double purchases are representable; see
/// [`StrategyProfile::canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile {
    strategies: Vec<VertexSet>,
}

impl StrategyProfile {
    /// Everyone buys nothing; the outcome is `I_n`.
    pub fn empty(n: usize) -> Self {
        StrategyProfile {
            strategies: vec![VertexSet::EMPTY; n],
        }
    }

    pub fn from_sets(strategies: Vec<VertexSet>) -> Result<Self, ProfileError> {
        let n = strategies.len();
        for (player, s) in strategies.iter().enumerate() {
            if s.contains(player) {
                return Err(ProfileError::SelfLink(player));
            }
            if let Some(target) = s.iter().find(|&t| t >= n) {
                return Err(ProfileError::TargetOutOfRange { player, target, n });
            }
        }
        Ok(StrategyProfile { strategies })
    }

    pub fn from_lists(lists: &[Vec<usize>]) -> Result<Self, ProfileError> {
        let n = lists.len();
        let mut sets = Vec::with_capacity(n);
        for (player, list) in lists.iter().enumerate() {
            if let Some(&target) = list.iter().find(|&&t| t >= n.min(MAX_VERTICES)) {
                return Err(ProfileError::TargetOutOfRange { player, target, n });
            }
            sets.push(list.iter().copied().collect());
        }
        Self::from_sets(sets)
    }

    /// Orients every edge of `graph` so that the lower-indexed endpoint buys.
    pub fn lower_index_buys(graph: &Graph) -> Self {
        let mut profile = StrategyProfile::empty(graph.n());
        for (u, v) in graph.edges() {
            profile.strategies[u].insert(v);
        }
        profile
    }

    pub fn n(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategy(&self, u: usize) -> VertexSet {
        self.strategies[u]
    }

    pub fn strategies(&self) -> &[VertexSet] {
        &self.strategies
    }

    /// `(S_{-u}, new)`.
    pub fn with_strategy(&self, u: usize, new: VertexSet) -> Self {
        debug_assert!(!new.contains(u));
        let mut next = self.clone();
        next.strategies[u] = new;
        next
    }

    pub fn check_against(&self, game: &CelebrityGame) -> Result<(), ProfileError> {
        if self.n() != game.n() {
            return Err(ProfileError::SizeMismatch {
                expected: game.n(),
                got: self.n(),
            });
        }
        Ok(())
    }

    /// True when no pair buys the same link twice.
    pub fn is_orientation(&self) -> bool {
        self.double_purchases().is_empty()
    }

    /// Pairs `(u, v)`, `u < v`, where both endpoints buy the link.
    pub fn double_purchases(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, s) in self.strategies.iter().enumerate() {
            for v in s.iter().filter(|&v| v > u) {
                if self.strategies[v].contains(u) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Drops the higher-indexed buyer's copy of every double purchase.
    pub fn canonicalize(&self) -> Self {
        let mut out = self.clone();
        for (u, v) in self.double_purchases() {
            out.strategies[v].remove(u);
        }
        out
    }

    /// `G[S]`: edge `{u, v}` iff either endpoint bought it.
    pub fn outcome_graph(&self) -> Graph {
        let n = self.n();
        let mut adj = self.strategies.clone();
        for (u, s) in self.strategies.iter().enumerate() {
            for v in s.iter() {
                adj[v].insert(u);
            }
        }
        debug_assert!(n <= MAX_VERTICES);
        Graph::from_adjacency(adj)
    }

    /// Adjacency of `G[S_{-u}, {}]`: every link except the ones `u` buys
    /// (links bought *to* `u` by others remain).
    pub(crate) fn adjacency_without(&self, u: usize) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::EMPTY; self.n()];
        for (x, s) in self.strategies.iter().enumerate() {
            if x == u {
                continue;
            }
            for v in s.iter() {
                adj[x].insert(v);
                adj[v].insert(x);
            }
        }
        adj
    }

    /// Players that bought a link to `u`.
    pub fn incoming(&self, u: usize) -> VertexSet {
        (0..self.n())
            .filter(|&x| x != u && self.strategies[x].contains(u))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostBreakdown {
    /// `alpha * |S_u|`.
    pub link_cost: Rational,
    /// Weight of players farther than `beta` (unreachable counts as far).
    pub distance_penalty: Rational,
    pub total: Rational,
}

/// `c_u(S)`.
pub fn player_cost(game: &CelebrityGame, profile: &StrategyProfile, u: usize) -> CostBreakdown {
    debug_assert_eq!(game.n(), profile.n());
    let others = profile.adjacency_without(u);
    let strategy = profile.strategy(u);
    let scale = game.scale();
    let link = scale.alpha * strategy.len() as i128;
    let far = game.scaled_far_weight(&others, u, strategy);
    CostBreakdown {
        link_cost: scale.to_rational(link),
        distance_penalty: scale.to_rational(far),
        total: scale.to_rational(link + far),
    }
}

/// `C(G) = alpha |E| + W(G, beta)`.
pub fn social_cost(game: &CelebrityGame, graph: &Graph) -> Rational {
    debug_assert_eq!(game.n(), graph.n());
    let scale = game.scale();
    scale.to_rational(
        scale.alpha * graph.edge_count() as i128 + game.scaled_weight_component(graph),
    )
}

/// `W(G, beta)`: sum of `w_u + w_v` over unordered pairs farther than `beta`.
pub fn weight_component(game: &CelebrityGame, graph: &Graph) -> Rational {
    debug_assert_eq!(game.n(), graph.n());
    game.scale()
        .to_rational(game.scaled_weight_component(graph))
}

/// `c_u(S_{-u}, new) - c_u(S)`; negative means `u` gains by switching.
pub fn delta_cost(
    game: &CelebrityGame,
    profile: &StrategyProfile,
    u: usize,
    new_strategy: VertexSet,
) -> Rational {
    debug_assert!(!new_strategy.contains(u));
    let others = profile.adjacency_without(u);
    let before = game.scaled_player_cost(&others, u, profile.strategy(u));
    let after = game.scaled_player_cost(&others, u, new_strategy);
    game.scale().to_rational(after - before)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i128, d: i128) -> Rational {
        Rational::new(p, d)
    }

    fn int(v: i128) -> Rational {
        Rational::from_integer(v)
    }

    fn unit_game(n: usize, alpha: Rational, beta: u32) -> CelebrityGame {
        CelebrityGame::new(vec![int(1); n], alpha, beta).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            CelebrityGame::new(vec![int(1)], int(1), 1),
            Err(GameError::TooFewPlayers(1))
        ));
        assert!(matches!(
            CelebrityGame::new(vec![int(1), int(0)], int(1), 1),
            Err(GameError::NonPositiveWeight { player: 1, .. })
        ));
        assert!(matches!(
            CelebrityGame::new(vec![int(1), int(1)], int(0), 1),
            Err(GameError::NonPositiveAlpha(_))
        ));
        assert!(matches!(
            CelebrityGame::new(vec![int(1), int(1), int(1)], int(1), 3),
            Err(GameError::BetaOutOfRange { beta: 3, max: 2 })
        ));
        assert!(matches!(
            CelebrityGame::new(vec![int(1), int(1)], int(1), 0),
            Err(GameError::BetaOutOfRange { beta: 0, .. })
        ));
        let huge = Rational::new(1, i128::MAX / 3);
        assert!(matches!(
            CelebrityGame::new(vec![huge, Rational::new(1, i128::MAX / 5)], int(1), 1),
            Err(GameError::ArithmeticRange)
        ));
    }

    #[test]
    fn outcome_graph_is_union_of_purchases() {
        let both = StrategyProfile::from_lists(&[vec![1], vec![0]]).unwrap();
        assert_eq!(both.outcome_graph(), Graph::from_edges(2, [(0, 1)]).unwrap());
        assert!(!both.is_orientation());
        let one = StrategyProfile::from_lists(&[vec![1], vec![]]).unwrap();
        assert_eq!(one.outcome_graph(), Graph::from_edges(2, [(0, 1)]).unwrap());
        assert!(StrategyProfile::empty(4).outcome_graph().is_empty_graph());
    }

    #[test]
    fn profile_validation() {
        assert_eq!(
            StrategyProfile::from_lists(&[vec![0], vec![]]),
            Err(ProfileError::SelfLink(0))
        );
        assert!(matches!(
            StrategyProfile::from_lists(&[vec![2], vec![]]),
            Err(ProfileError::TargetOutOfRange { player: 0, target: 2, n: 2 })
        ));
    }

    #[test]
    fn canonicalize_drops_higher_buyer() {
        let p = StrategyProfile::from_lists(&[vec![1, 2], vec![0], vec![0, 1]]).unwrap();
        assert_eq!(p.double_purchases(), vec![(0, 1), (0, 2)]);
        let c = p.canonicalize();
        assert_eq!(c.strategies(), &[set(&[1, 2]), set(&[]), set(&[1])]);
        assert!(c.is_orientation());
        assert_eq!(c.outcome_graph(), p.outcome_graph());
    }

    #[test]
    fn star_center_pays_only_links() {
        let g = unit_game(5, q(3, 2), 1);
        let p = StrategyProfile::lower_index_buys(&Graph::star(5, 0).unwrap());
        let c = player_cost(&g, &p, 0);
        assert_eq!(c.total, q(3, 2).times(4));
        assert_eq!(c.distance_penalty, Rational::ZERO);
    }

    #[test]
    fn leaf_of_three_star_pays_other_leaf() {
        // center 0; leaf 1 buys the center; the other leaf is 2 hops away
        let g = unit_game(3, int(1), 1);
        let p = StrategyProfile::from_lists(&[vec![2], vec![0], vec![]]).unwrap();
        let c = player_cost(&g, &p, 1);
        assert_eq!(c.link_cost, int(1));
        assert_eq!(c.distance_penalty, int(1));
        assert_eq!(c.total, int(2));
    }

    #[test]
    fn isolated_player_pays_everyone_else() {
        let g = CelebrityGame::new(vec![int(1), q(5, 2), int(3)], int(1), 2).unwrap();
        let p = StrategyProfile::empty(3);
        assert_eq!(player_cost(&g, &p, 1).total, g.total_weight() - q(5, 2));
    }

    #[test]
    fn reference_social_costs() {
        let n = 5;
        let g = CelebrityGame::new(
            vec![int(1), int(2), q(1, 3), int(4), q(7, 2)],
            q(5, 4),
            2,
        )
        .unwrap();
        let alpha = g.alpha();
        let w = g.total_weight();
        assert_eq!(social_cost(&g, &Graph::star(n, 2).unwrap()), alpha.times(n - 1));
        assert_eq!(social_cost(&g, &Graph::empty(n).unwrap()), w.times(n - 1));
        assert_eq!(
            social_cost(&g, &Graph::complete(n).unwrap()),
            alpha.times(n * (n - 1) / 2)
        );
    }

    #[test]
    fn star_with_beta_one_pays_leaf_pairs() {
        // C(S_n) = alpha (n-1) + (n-2)(W - w_c) when beta = 1
        let g = CelebrityGame::new(vec![int(2), int(1), q(1, 2), int(3)], int(1), 1).unwrap();
        let c = 3;
        let expected = g.alpha().times(3) + (g.total_weight() - g.weight(c)).times(2);
        assert_eq!(social_cost(&g, &Graph::star(4, c).unwrap()), expected);
    }

    #[test]
    fn weight_component_examples() {
        let g = unit_game(4, int(1), 2);
        assert_eq!(weight_component(&g, &Graph::star(4, 1).unwrap()), Rational::ZERO);
        assert_eq!(weight_component(&g, &Graph::path(4).unwrap()), int(2));
        let w = CelebrityGame::new(vec![int(1), int(2), int(3)], int(1), 1).unwrap();
        assert_eq!(
            weight_component(&w, &Graph::empty(3).unwrap()),
            w.total_weight().times(2)
        );
    }

    #[test]
    fn delta_cost_examples() {
        // star centered at 0 with leaves paying, beta = 2
        let g = CelebrityGame::new(vec![int(3), int(1), int(2), q(1, 2)], int(2), 2).unwrap();
        let p = StrategyProfile::from_lists(&[vec![], vec![0], vec![0], vec![0]]).unwrap();
        assert_eq!(delta_cost(&g, &p, 1, p.strategy(1)), Rational::ZERO);
        // leaf 2 drops its only link: -alpha + (W - w_leaf)
        assert_eq!(
            delta_cost(&g, &p, 2, VertexSet::EMPTY),
            -g.alpha() + g.total_weight() - g.weight(2)
        );
        // adding a link to a player already within beta costs exactly alpha
        assert_eq!(delta_cost(&g, &p, 2, set(&[0, 3])), g.alpha());
    }

    #[test]
    fn incoming_links_count_for_the_receiver() {
        let g = unit_game(3, int(5), 1);
        let p = StrategyProfile::from_lists(&[vec![1], vec![], vec![]]).unwrap();
        // player 1 bought nothing but is adjacent to 0
        assert_eq!(player_cost(&g, &p, 1).total, int(1));
        assert_eq!(p.incoming(1), set(&[0]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_game(max_n: usize) -> impl Strategy<Value = CelebrityGame> {
            (2..=max_n).prop_flat_map(|n| {
                (
                    proptest::collection::vec(1i128..=400, n),
                    1i128..=600,
                    1..=(n as u32 - 1),
                )
                    .prop_map(|(ws, a, beta)| {
                        CelebrityGame::new(
                            ws.into_iter().map(|w| Rational::new(w, 100)).collect(),
                            Rational::new(a, 100),
                            beta,
                        )
                        .unwrap()
                    })
            })
        }

        fn arb_profile(n: usize) -> impl Strategy<Value = StrategyProfile> {
            proptest::collection::vec(any::<u64>(), n).prop_map(move |raw| {
                let sets = raw
                    .into_iter()
                    .enumerate()
                    .map(|(u, bits)| VertexSet(bits & VertexSet::full(n).0).without(u))
                    .collect();
                StrategyProfile::from_sets(sets).unwrap()
            })
        }

        fn game_and_profile(max_n: usize) -> impl Strategy<Value = (CelebrityGame, StrategyProfile)> {
            arb_game(max_n).prop_flat_map(|g| {
                let n = g.n();
                (Just(g), arb_profile(n))
            })
        }

        fn arb_edge_mask(n: usize) -> impl Strategy<Value = Graph> {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        }

        proptest! {
            #[test]
            fn orientation_costs_sum_to_social_cost((g, p) in game_and_profile(8)) {
                let p = p.canonicalize();
                let total: Rational = (0..g.n()).map(|u| player_cost(&g, &p, u).total).sum();
                prop_assert_eq!(total, social_cost(&g, &p.outcome_graph()));
            }

            #[test]
            fn breakdown_is_consistent((g, p) in game_and_profile(8)) {
                for u in 0..g.n() {
                    let c = player_cost(&g, &p, u);
                    prop_assert_eq!(c.total, c.link_cost + c.distance_penalty);
                    prop_assert!(c.link_cost >= Rational::ZERO);
                    prop_assert!(c.distance_penalty >= Rational::ZERO);
                    prop_assert_eq!(c.link_cost, g.alpha().times(p.strategy(u).len()));
                }
            }

            #[test]
            fn penalty_matches_distance_matrix((g, p) in game_and_profile(8)) {
                let d = p.outcome_graph().all_pairs_distances();
                for u in 0..g.n() {
                    let expected: Rational = (0..g.n())
                        .filter(|&v| d.get(u, v).exceeds(g.beta()))
                        .map(|v| g.weight(v))
                        .sum();
                    prop_assert_eq!(player_cost(&g, &p, u).distance_penalty, expected);
                }
            }

            #[test]
            fn cost_ignores_redundant_double_purchases((g, p) in game_and_profile(7), u in 0usize..7) {
                // Making some other player re-buy an existing link changes nothing for u.
                let n = g.n();
                let u = u % n;
                let base = player_cost(&g, &p, u).total;
                let mut sets = p.strategies().to_vec();
                for x in 0..n {
                    if x == u { continue; }
                    for y in p.incoming(x).iter().filter(|&y| y != u) {
                        sets[x].insert(y);
                    }
                }
                let q = StrategyProfile::from_sets(sets).unwrap();
                prop_assert_eq!(q.outcome_graph(), p.outcome_graph());
                prop_assert_eq!(player_cost(&g, &q, u).total, base);
            }

            #[test]
            fn weight_component_monotone_under_insertion(
                (g, graph) in arb_game(6).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_edge_mask(n)) })
            ) {
                let base = weight_component(&g, &graph);
                let n = g.n();
                for u in 0..n {
                    for v in u + 1..n {
                        let mut h = graph.clone();
                        if graph.has_edge(u, v) {
                            h.remove_edge(u, v);
                            prop_assert!(weight_component(&g, &h) >= base);
                        } else {
                            h.add_edge(u, v).unwrap();
                            prop_assert!(weight_component(&g, &h) <= base);
                        }
                    }
                }
                let zero = base == Rational::ZERO;
                let small_diameter = !graph.diameter().exceeds(g.beta());
                prop_assert_eq!(zero, small_diameter);
                prop_assert_eq!(social_cost(&g, &graph), g.alpha().times(graph.edge_count()) + base);
            }
        }
    }
}
