//! Text formats for instances, profiles, and graphs, and the CSV report
//! writers.

use std::collections::HashSet;
use std::fmt::Write as _;

use celebrity::analysis::{PriceReport, VerificationReport};
use celebrity::equilibrium::EquilibriumSet;
use celebrity::game::{CelebrityGame, StrategyProfile};
use celebrity::graph::Graph;
use celebrity::Rational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid input: {0}")]
    Validation(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Meaningful lines with their 1-based numbers; blank lines and `#` comments
/// are skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses `n = ...`, `alpha = ...`, `beta = ...`, `weights = ...` in any
/// order.
pub fn parse_instance(text: &str) -> Result<CelebrityGame, FormatError> {
    let mut n: Option<usize> = None;
    let mut alpha: Option<Rational> = None;
    let mut beta: Option<u32> = None;
    let mut weights: Option<Vec<Rational>> = None;
    let mut seen = HashSet::new();
    for (line, content) in content_lines(text) {
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        if !seen.insert(key.to_string()) {
            return Err(parse_err(line, format!("duplicate key `{key}`")));
        }
        match key {
            "n" => {
                n = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(line, format!("invalid n `{value}`")))?,
                )
            }
            "alpha" => alpha = Some(value.parse().map_err(|e| parse_err(line, format!("alpha: {e}")))?),
            "beta" => {
                beta = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(line, format!("invalid beta `{value}`")))?,
                )
            }
            "weights" => {
                weights = Some(
                    value
                        .split_whitespace()
                        .map(|w| w.parse::<Rational>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| parse_err(line, format!("weights: {e}")))?,
                )
            }
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }
    let missing = |k: &str| FormatError::Validation(format!("missing key `{k}`"));
    let n = n.ok_or_else(|| missing("n"))?;
    let alpha = alpha.ok_or_else(|| missing("alpha"))?;
    let beta = beta.ok_or_else(|| missing("beta"))?;
    let weights = weights.ok_or_else(|| missing("weights"))?;
    if weights.len() != n {
        return Err(FormatError::Validation(format!(
            "n = {n} but {} weights were given",
            weights.len()
        )));
    }
    CelebrityGame::new(weights, alpha, beta).map_err(|e| FormatError::Validation(e.to_string()))
}

pub fn write_instance(game: &CelebrityGame) -> String {
    let weights: Vec<String> = game.weights().iter().map(|w| w.to_string()).collect();
    format!(
        "n = {}\nalpha = {}\nbeta = {}\nweights = {}\n",
        game.n(),
        game.alpha(),
        game.beta(),
        weights.join(" ")
    )
}

/// Parses one `u: v1 v2 ...` line per player; every player in `0..n` must
/// appear exactly once.
pub fn parse_profile(text: &str, n: usize) -> Result<StrategyProfile, FormatError> {
    let mut lists: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, content) in content_lines(text) {
        let (player, targets) = content
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected `player: targets`"))?;
        let player: usize = player
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("invalid player `{}`", player.trim())))?;
        if player >= n {
            return Err(parse_err(line, format!("player {player} outside 0..{n}")));
        }
        if lists[player].is_some() {
            return Err(parse_err(line, format!("player {player} listed twice")));
        }
        let mut list = Vec::new();
        for t in targets.split_whitespace() {
            let v: usize = t
                .parse()
                .map_err(|_| parse_err(line, format!("invalid target `{t}`")))?;
            if v >= n {
                return Err(parse_err(line, format!("target {v} outside 0..{n}")));
            }
            if list.contains(&v) {
                return Err(parse_err(line, format!("target {v} repeated")));
            }
            list.push(v);
        }
        lists[player] = Some(list);
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(u, l)| l.ok_or_else(|| FormatError::Validation(format!("player {u} missing from profile"))))
        .collect::<Result<Vec<_>, _>>()?;
    StrategyProfile::from_lists(&lists).map_err(|e| FormatError::Validation(e.to_string()))
}

pub fn write_profile(profile: &StrategyProfile) -> String {
    let mut out = String::new();
    for (u, s) in profile.strategies().iter().enumerate() {
        write!(out, "{u}:").unwrap();
        for v in s.iter() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// First line `n`, then one `u v` pair per line.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let n: usize = first
        .parse()
        .map_err(|_| parse_err(line, format!("invalid vertex count `{first}`")))?;
    let mut g = Graph::empty(n).map_err(|e| FormatError::Validation(e.to_string()))?;
    for (line, content) in lines {
        let parts: Vec<&str> = content.split_whitespace().collect();
        let [u, v] = parts.as_slice() else {
            return Err(parse_err(line, "expected `u v`"));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(line, format!("invalid vertex `{s}`")))
        };
        let (u, v) = (parse(u)?, parse(v)?);
        g.add_edge(u, v).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// `check_id,status,witness`.
pub fn verify_csv(report: &VerificationReport) -> String {
    csv_string(
        &["check_id", "status", "witness"],
        report.records.iter().map(|r| {
            vec![
                r.id.to_string(),
                r.status.to_string(),
                r.witness.clone().unwrap_or_default(),
            ]
        }),
    )
}

/// `graph_id,edge_list,social_cost,num_profiles`.
pub fn enumerate_csv(eq: &EquilibriumSet) -> String {
    csv_string(
        &["graph_id", "edge_list", "social_cost", "num_profiles"],
        eq.graphs.iter().enumerate().map(|(i, ng)| {
            vec![
                i.to_string(),
                ng.graph.edge_list_string(),
                ng.social_cost.to_string(),
                ng.profiles.len().to_string(),
            ]
        }),
    )
}

/// `opt,best_ne,worst_ne,pos,poa`.
pub fn poa_csv(report: &PriceReport) -> String {
    csv_string(
        &["opt", "best_ne", "worst_ne", "pos", "poa"],
        [vec![
            report.opt.to_string(),
            report.best_ne_cost.to_string(),
            report.worst_ne_cost.to_string(),
            report.pos.to_string(),
            report.poa.to_string(),
        ]],
    )
}
