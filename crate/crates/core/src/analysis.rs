//! Social optimum, game classification, prices of anarchy and stability, and
//! a harness that checks the structural results against an enumerated
//! equilibrium set.

use std::fmt;

use thiserror::Error;

use crate::equilibrium::EquilibriumSet;
use crate::game::{social_cost, weight_component, CelebrityGame};
use crate::graph::{Distance, Graph, VertexSet};
use crate::rational::Rational;

/// Largest `n` for which [`brute_force_optima`] runs by default.
pub const BRUTE_FORCE_OPT_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("equilibrium set is not exhaustive")]
    NotExhaustive,
    #[error("equilibrium set is empty")]
    EmptyEquilibriumSet,
    #[error("equilibrium set belongs to a different game")]
    GameMismatch,
    #[error("brute force over graphs supports n <= {limit}, got n = {n}")]
    InstanceTooLarge { n: usize, limit: usize },
}

/// Minimum social cost over all graphs on the players.
pub fn opt_cost(game: &CelebrityGame) -> Rational {
    let n = game.n();
    if game.beta() > 1 {
        return game.alpha().min(game.total_weight()).times(n - 1);
    }
    let alpha = game.alpha();
    let mut total = Rational::ZERO;
    for u in 0..n {
        for v in u + 1..n {
            total += alpha.min(game.weight(u) + game.weight(v));
        }
    }
    total
}

/// A graph attaining [`opt_cost`]. For `beta > 1` this is the star centred at
/// vertex 0 when `alpha < W` and the empty graph otherwise; for `beta = 1` it
/// holds exactly the pairs with `w_u + w_v > alpha`.
pub fn opt_graph(game: &CelebrityGame) -> Graph {
    let n = game.n();
    if game.beta() > 1 {
        return if game.alpha() < game.total_weight() {
            Graph::star(n, 0).expect("valid size")
        } else {
            Graph::empty(n).expect("valid size")
        };
    }
    let mut g = Graph::empty(n).expect("valid size");
    for u in 0..n {
        for v in u + 1..n {
            if game.weight(u) + game.weight(v) > game.alpha() {
                g.add_edge(u, v).expect("valid edge");
            }
        }
    }
    g
}

/// Minimum social cost over every graph on `n <= limit` vertices, together
/// with all graphs attaining it (in enumeration order).
pub fn brute_force_optima(game: &CelebrityGame, limit: usize) -> Result<(Rational, Vec<Graph>), AnalysisError> {
    let n = game.n();
    if n > limit {
        return Err(AnalysisError::InstanceTooLarge { n, limit });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let scale = game.scale();
    let mut best: Option<i128> = None;
    let mut optima = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut adj = vec![VertexSet::EMPTY; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        let g = Graph::from_adjacency(adj);
        let cost = scale.alpha * mask.count_ones() as i128 + game.scaled_weight_component(&g);
        match best {
            Some(b) if cost > b => {}
            Some(b) if cost == b => optima.push(g),
            _ => {
                best = Some(cost);
                optima.clear();
                optima.push(g);
            }
        }
    }
    Ok((scale.to_rational(best.expect("at least one graph")), optima))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameClass {
    /// Some star (equivalently, some connected graph) is a NE graph.
    pub is_star_celebrity: bool,
    /// The empty graph is the only NE graph.
    pub in_unique: bool,
    /// Players with `alpha < w_u`.
    pub celebrities: VertexSet,
    /// Players with `alpha > W - w_u`.
    pub high_weight_players: VertexSet,
}

pub fn classify(game: &CelebrityGame) -> GameClass {
    let alpha = game.alpha();
    let total = game.total_weight();
    let mut celebrities = VertexSet::EMPTY;
    let mut high = VertexSet::EMPTY;
    for u in 0..game.n() {
        if alpha < game.weight(u) {
            celebrities.insert(u);
        }
        if alpha > total - game.weight(u) {
            high.insert(u);
        }
    }
    let below_max = alpha < game.max_weight();
    let is_star_celebrity = below_max || high.len() <= 1;
    GameClass {
        is_star_celebrity,
        in_unique: !is_star_celebrity,
        celebrities,
        high_weight_players: high,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceReport {
    pub opt: Rational,
    pub worst_ne_cost: Rational,
    pub best_ne_cost: Rational,
    pub poa: Rational,
    pub pos: Rational,
}

pub fn price_report(game: &CelebrityGame, eq: &EquilibriumSet) -> Result<PriceReport, AnalysisError> {
    if &eq.game != game {
        return Err(AnalysisError::GameMismatch);
    }
    if !eq.exhaustive {
        return Err(AnalysisError::NotExhaustive);
    }
    let (Some(worst), Some(best)) = (eq.worst_cost(), eq.best_cost()) else {
        return Err(AnalysisError::EmptyEquilibriumSet);
    };
    let opt = opt_cost(game);
    Ok(PriceReport {
        opt,
        worst_ne_cost: worst,
        best_ne_cost: best,
        poa: worst / opt,
        pos: best / opt,
    })
}

/// Identifier `C1` ... `C20` of a harness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckId(pub u8);

impl CheckId {
    pub const COUNT: u8 = 20;

    pub fn all() -> impl Iterator<Item = CheckId> {
        (1..=Self::COUNT).map(CheckId)
    }

    pub fn description(self) -> &'static str {
        match self.0 {
            1 => "every NE graph is connected or empty (beta >= 2)",
            2 => "the NE set is nonempty",
            3 => "the empty graph is a NE graph iff alpha >= w_max",
            4 => "the empty graph is the unique NE graph iff classify says so (beta >= 2)",
            5 => "a star NE graph exists iff the game is a star celebrity game (beta >= 2)",
            6 => "every celebrity has eccentricity <= beta in connected NE graphs",
            7 => "connected NE graphs have diameter <= 2 beta + 1",
            8 => "alpha < w_min gives diameter <= beta; alpha < w_max gives diameter <= 2 beta",
            9 => "NE trees have diameter <= beta + 1, and <= beta when alpha > w_max",
            10 => "NE trees cost at most twice the optimum",
            11 => "a vertex of eccentricity <= beta - 1 forces W(G, beta) <= alpha (n - 1)",
            12 => "W(G, beta) <= max(n alpha, 9 n^2 alpha / beta, n^2 alpha / 2) on connected NE graphs",
            13 => "a player with |S_v| > 6n/beta has >= 3n/beta bridges into S_v",
            14 => "a player with |S_v| > 6n/beta rules out 2-edge-connectivity",
            15 => "beta = 1 NE edges: w_u > alpha or w_v > alpha forces the edge, both below alpha forbids it",
            16 => "beta = 1 optima: w_u + w_v > alpha forces the edge, < alpha forbids it",
            17 => "beta = 1: PoA <= 2 and worst/best NE cost <= 2",
            18 => "every NE graph costs at most (n - 1) W",
            19 => "no NE profile buys a link twice",
            20 => "beta >= 2: PoA = PoS = max(1, W/alpha) for non-star games, PoS = 1 for star games",
            _ => "unknown check",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    Vacuous,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "Pass",
            CheckStatus::Fail => "Fail",
            CheckStatus::Vacuous => "Vacuous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: CheckId,
    pub status: CheckStatus,
    /// Present exactly when `status` is `Fail`.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measurement {
    pub name: &'static str,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// One record per check, ordered by id.
    pub records: Vec<CheckRecord>,
    /// Observed quantities that are recorded but not asserted.
    pub measurements: Vec<Measurement>,
}

impl VerificationReport {
    pub fn status(&self, id: CheckId) -> Option<CheckStatus> {
        self.records.iter().find(|r| r.id == id).map(|r| r.status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == CheckStatus::Fail)
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }
}

/// Accumulates one check: applicable at least once, first violation kept.
struct Tally {
    applied: bool,
    witness: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            applied: false,
            witness: None,
        }
    }

    fn test(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.applied = true;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn record(self, id: u8) -> CheckRecord {
        let status = match (&self.witness, self.applied) {
            (Some(_), _) => CheckStatus::Fail,
            (None, true) => CheckStatus::Pass,
            (None, false) => CheckStatus::Vacuous,
        };
        CheckRecord {
            id: CheckId(id),
            status,
            witness: self.witness,
        }
    }
}

fn vacuous(id: u8) -> CheckRecord {
    Tally::new().record(id)
}

struct GraphStats {
    connected: bool,
    diameter: Distance,
    eccentricity: Vec<Distance>,
    is_tree: bool,
    two_edge_connected: bool,
    weight_component: Rational,
    social_cost: Rational,
}

fn describe_game(game: &CelebrityGame) -> String {
    let weights: Vec<String> = game.weights().iter().map(|w| w.to_string()).collect();
    format!(
        "game n={} alpha={} beta={} weights=[{}]",
        game.n(),
        game.alpha(),
        game.beta(),
        weights.join(" ")
    )
}

fn describe_profile(strategies: &[VertexSet]) -> String {
    strategies
        .iter()
        .enumerate()
        .map(|(u, s)| format!("{u}:{s}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn describe_graph(g: &Graph) -> String {
    format!("graph [{}]", g.edge_list_string())
}

/// Whether `g` satisfies the forced/forbidden edge rule for `beta = 1`
/// equilibria; returns the first offending pair.
fn beta1_ne_violation(game: &CelebrityGame, g: &Graph) -> Option<String> {
    let alpha = game.alpha();
    for u in 0..game.n() {
        for v in u + 1..game.n() {
            let (wu, wv) = (game.weight(u), game.weight(v));
            if (wu > alpha || wv > alpha) && !g.has_edge(u, v) {
                return Some(format!("missing edge {u}-{v} with w_{u}={wu} w_{v}={wv} alpha={alpha}"));
            }
            if wu < alpha && wv < alpha && g.has_edge(u, v) {
                return Some(format!("edge {u}-{v} present with w_{u}={wu} w_{v}={wv} < alpha={alpha}"));
            }
        }
    }
    None
}

fn beta1_opt_violation(game: &CelebrityGame, g: &Graph) -> Option<String> {
    let alpha = game.alpha();
    for u in 0..game.n() {
        for v in u + 1..game.n() {
            let sum = game.weight(u) + game.weight(v);
            if sum > alpha && !g.has_edge(u, v) {
                return Some(format!("missing edge {u}-{v} with w_u+w_v={sum} > alpha={alpha}"));
            }
            if sum < alpha && g.has_edge(u, v) {
                return Some(format!("edge {u}-{v} present with w_u+w_v={sum} < alpha={alpha}"));
            }
        }
    }
    None
}

/// Runs checks C1..C20 against an exhaustive equilibrium set. A check whose
/// hypothesis holds for no graph, profile, or game in scope is `Vacuous`.
pub fn verify_theorems(game: &CelebrityGame, eq: &EquilibriumSet) -> Result<VerificationReport, AnalysisError> {
    if &eq.game != game {
        return Err(AnalysisError::GameMismatch);
    }
    if !eq.exhaustive {
        return Err(AnalysisError::NotExhaustive);
    }
    let n = game.n();
    let nn = n as i128;
    let alpha = game.alpha();
    let beta = game.beta();
    let beta_r = Rational::from_integer(beta as i128);
    let total = game.total_weight();
    let class = classify(game);
    let star = class.is_star_celebrity;
    let multi_hop = beta >= 2;
    let star_scope = multi_hop && star;
    let opt = opt_cost(game);
    let g_desc = describe_game(game);

    let stats: Vec<GraphStats> = eq
        .graphs
        .iter()
        .map(|ng| {
            let g = &ng.graph;
            let eccentricity: Vec<Distance> = (0..n).map(|u| g.eccentricity(u)).collect();
            GraphStats {
                connected: g.is_connected(),
                diameter: eccentricity.iter().copied().max().unwrap_or(Distance::Finite(0)),
                eccentricity,
                is_tree: g.is_tree(),
                two_edge_connected: g.is_two_edge_connected(),
                weight_component: weight_component(game, g),
                social_cost: ng.social_cost,
            }
        })
        .collect();
    let mut graph_of_profile = vec![0usize; eq.profiles.len()];
    for (k, ng) in eq.graphs.iter().enumerate() {
        for &i in &ng.profiles {
            graph_of_profile[i] = k;
        }
    }
    let witness_graph = |k: usize, what: String| format!("{g_desc}; {}; {what}", describe_graph(&eq.graphs[k].graph));
    let graphs = || eq.graphs.iter().enumerate().zip(&stats).map(|((k, ng), s)| (k, &ng.graph, s));
    let empty_is_ne = eq.graphs.iter().any(|ng| ng.graph.is_empty_graph());

    let mut records = Vec::with_capacity(CheckId::COUNT as usize);

    // C1
    if multi_hop {
        let mut t = Tally::new();
        for (k, g, s) in graphs() {
            t.test(s.connected || g.is_empty_graph(), || {
                witness_graph(k, "NE graph is disconnected and not empty".into())
            });
        }
        records.push(t.record(1));
    } else {
        records.push(vacuous(1));
    }

    // C2
    let mut t = Tally::new();
    t.test(!eq.profiles.is_empty(), || format!("{g_desc}; no equilibrium found"));
    records.push(t.record(2));

    // C3
    let mut t = Tally::new();
    let expected = alpha >= game.max_weight();
    t.test(empty_is_ne == expected, || {
        format!(
            "{g_desc}; empty graph NE = {empty_is_ne} but alpha >= w_max is {expected} (w_max={})",
            game.max_weight()
        )
    });
    records.push(t.record(3));

    // C4
    if multi_hop {
        let mut t = Tally::new();
        let unique = eq.graphs.len() == 1 && empty_is_ne;
        t.test(unique == class.in_unique, || {
            format!(
                "{g_desc}; empty graph unique NE = {unique} but classification says {}",
                class.in_unique
            )
        });
        records.push(t.record(4));
    } else {
        records.push(vacuous(4));
    }

    // C5
    if multi_hop {
        let mut t = Tally::new();
        let has_star = eq
            .graphs
            .iter()
            .any(|ng| (0..n).any(|c| ng.graph == Graph::star(n, c).expect("valid size")));
        let has_connected = stats.iter().any(|s| s.connected);
        t.test(has_star == star, || {
            format!("{g_desc}; star NE graph exists = {has_star} but star celebrity game = {star}")
        });
        t.test(has_connected == star, || {
            format!("{g_desc}; connected NE graph exists = {has_connected} but star celebrity game = {star}")
        });
        records.push(t.record(5));
    } else {
        records.push(vacuous(5));
    }

    let two_beta_plus_one = Distance::Finite(2 * beta + 1);

    // C6
    let mut t = Tally::new();
    if star_scope {
        for (k, _, s) in graphs().filter(|(_, _, s)| s.connected) {
            for u in class.celebrities.iter() {
                t.test(!s.eccentricity[u].exceeds(beta), || {
                    witness_graph(k, format!("celebrity {u} has eccentricity {} > beta={beta}", s.eccentricity[u]))
                });
            }
        }
    }
    records.push(t.record(6));

    // C7
    let mut t = Tally::new();
    if star_scope {
        for (k, _, s) in graphs().filter(|(_, _, s)| s.connected) {
            t.test(s.diameter <= two_beta_plus_one, || {
                witness_graph(k, format!("diameter {} > 2*beta+1={two_beta_plus_one}", s.diameter))
            });
        }
    }
    records.push(t.record(7));

    // C8
    let mut t = Tally::new();
    if star_scope && alpha < game.max_weight() {
        let bound = if alpha < game.min_weight() { beta } else { 2 * beta };
        for (k, _, s) in graphs().filter(|(_, _, s)| s.connected) {
            t.test(!s.diameter.exceeds(bound), || {
                witness_graph(k, format!("diameter {} > {bound} with alpha={alpha}", s.diameter))
            });
        }
    }
    records.push(t.record(8));

    // C9
    let mut t = Tally::new();
    if star_scope {
        let bound = if alpha > game.max_weight() { beta } else { beta + 1 };
        for (k, _, s) in graphs().filter(|(_, _, s)| s.is_tree) {
            t.test(!s.diameter.exceeds(bound), || {
                witness_graph(k, format!("NE tree has diameter {} > {bound}", s.diameter))
            });
        }
    }
    records.push(t.record(9));

    // C10
    let mut t = Tally::new();
    if star_scope {
        let bound = opt.times(2);
        for (k, _, s) in graphs().filter(|(_, _, s)| s.is_tree) {
            t.test(s.social_cost <= bound, || {
                witness_graph(k, format!("NE tree cost {} > 2*opt={bound}", s.social_cost))
            });
        }
    }
    records.push(t.record(10));

    // C11
    let mut t = Tally::new();
    if star_scope {
        let bound = alpha.times(n - 1);
        for (k, _, s) in graphs() {
            if s.eccentricity.iter().any(|e| !e.exceeds(beta - 1)) {
                t.test(s.weight_component <= bound, || {
                    witness_graph(
                        k,
                        format!("W(G,beta)={} > alpha(n-1)={bound} with a vertex of eccentricity <= beta-1", s.weight_component),
                    )
                });
            }
        }
    }
    records.push(t.record(11));

    // C12
    let mut t = Tally::new();
    if star_scope {
        let n_r = Rational::from_integer(nn);
        let bound = (n_r * alpha)
            .max(Rational::from_integer(9 * nn * nn) * alpha / beta_r)
            .max(Rational::from_integer(nn * nn) * alpha / Rational::from_integer(2));
        for (k, _, s) in graphs().filter(|(_, _, s)| s.connected) {
            t.test(s.weight_component <= bound, || {
                witness_graph(k, format!("W(G,beta)={} > {bound}", s.weight_component))
            });
        }
    }
    records.push(t.record(12));

    // C13 and C14 share the hypothesis |S_v| * beta > 6n.
    let heavy_buyer = |len: usize| (len as i128) * (beta as i128) > 6 * nn;
    let mut t13 = Tally::new();
    let mut t14 = Tally::new();
    if star_scope {
        for (i, p) in eq.profiles.iter().enumerate() {
            let k = graph_of_profile[i];
            let g = &eq.graphs[k].graph;
            let mut any_heavy = false;
            for v in 0..n {
                let s_v = p.strategy(v);
                if !heavy_buyer(s_v.len()) {
                    continue;
                }
                any_heavy = true;
                let bridges = s_v.iter().filter(|&x| g.is_bridge(v, x)).count();
                t13.test((bridges as i128) * (beta as i128) >= 3 * nn, || {
                    format!(
                        "{g_desc}; profile {}; player {v} buys {} links but only {bridges} are bridges",
                        describe_profile(p.strategies()),
                        s_v.len()
                    )
                });
            }
            if any_heavy {
                t14.test(!stats[k].two_edge_connected, || {
                    format!(
                        "{g_desc}; profile {}; 2-edge-connected despite a player with |S_v| > 6n/beta",
                        describe_profile(p.strategies())
                    )
                });
            }
        }
    }
    records.push(t13.record(13));
    records.push(t14.record(14));

    // C15
    let mut t = Tally::new();
    if beta == 1 {
        for (k, g, _) in graphs() {
            let violation = beta1_ne_violation(game, g);
            t.test(violation.is_none(), || witness_graph(k, violation.clone().unwrap_or_default()));
        }
    }
    records.push(t.record(15));

    // C16
    let mut t = Tally::new();
    if beta == 1 {
        let og = opt_graph(game);
        let og_cost = social_cost(game, &og);
        t.test(og_cost == opt, || {
            format!("{g_desc}; optimal {} costs {og_cost} but opt={opt}", describe_graph(&og))
        });
        let violation = beta1_opt_violation(game, &og);
        t.test(violation.is_none(), || {
            format!("{g_desc}; optimal {}; {}", describe_graph(&og), violation.clone().unwrap_or_default())
        });
        if n <= BRUTE_FORCE_OPT_LIMIT {
            let (min, optima) = brute_force_optima(game, BRUTE_FORCE_OPT_LIMIT)?;
            t.test(min == opt, || format!("{g_desc}; brute-force optimum {min} != opt={opt}"));
            for g in &optima {
                let violation = beta1_opt_violation(game, g);
                t.test(violation.is_none(), || {
                    format!("{g_desc}; optimal {}; {}", describe_graph(g), violation.clone().unwrap_or_default())
                });
            }
        }
    }
    records.push(t.record(16));

    let prices = price_report(game, eq).ok();

    // C17
    let mut t = Tally::new();
    if beta == 1 {
        let two = Rational::from_integer(2);
        match &prices {
            Some(p) => {
                t.test(p.poa <= two, || format!("{g_desc}; PoA={} > 2", p.poa));
                let ratio = p.worst_ne_cost / p.best_ne_cost;
                t.test(ratio <= two, || format!("{g_desc}; worst/best NE cost={ratio} > 2"));
            }
            None => t.test(false, || format!("{g_desc}; no equilibrium to price")),
        }
    }
    records.push(t.record(17));

    // C18
    let mut t = Tally::new();
    let bound = total.times(n - 1);
    for (k, _, s) in graphs() {
        t.test(s.social_cost <= bound, || {
            witness_graph(k, format!("cost {} > (n-1)W={bound}", s.social_cost))
        });
    }
    records.push(t.record(18));

    // C19
    let mut t = Tally::new();
    for p in &eq.profiles {
        t.test(p.is_orientation(), || {
            format!(
                "{g_desc}; profile {}; links bought twice: {:?}",
                describe_profile(p.strategies()),
                p.double_purchases()
            )
        });
    }
    records.push(t.record(19));

    // C20
    let mut t = Tally::new();
    if multi_hop {
        match &prices {
            Some(p) if star => {
                t.test(p.pos == Rational::ONE, || format!("{g_desc}; star game with PoS={} != 1", p.pos));
            }
            Some(p) => {
                let expected = Rational::ONE.max(total / alpha);
                t.test(p.poa == expected && p.pos == expected, || {
                    format!("{g_desc}; PoA={} PoS={} but max(1, W/alpha)={expected}", p.poa, p.pos)
                });
            }
            None => t.test(false, || format!("{g_desc}; no equilibrium to price")),
        }
    }
    records.push(t.record(20));

    let mut measurements = Vec::new();
    if let Some(p) = &prices {
        measurements.push(Measurement {
            name: "poa",
            value: p.poa,
        });
        measurements.push(Measurement {
            name: "poa_times_beta_over_n",
            value: p.poa * beta_r / Rational::from_integer(nn),
        });
    }
    Ok(VerificationReport {
        records,
        measurements,
    })
}
