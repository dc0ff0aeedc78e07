//! Replayable records of eliminations by counting arguments.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{omega_values, Factored};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::graph::{automorphism_group, SearchOptions, SrgParams};
use crate::homogeneity::{subgraph_census, HomogeneityOptions};

/// The ledger shipped with the crate.
pub const BUILTIN_LEDGER: &str = include_str!("../../data/eliminations.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Eliminated,
    Passes,
}

/// What a record tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Expression {
    /// `omegaI`: the I-th order-3 count `[K1+K2, P3, K3, 3K1]` divides the
    /// order. `omegaI/v`: the count divided by `v` divides the order of a
    /// point stabilizer.
    Omega { index: usize, per_vertex: bool },
    /// `order3_orbits`: the automorphism group of the constructed graph has
    /// one orbit on each isomorphism class of induced subgraphs of order 3.
    /// Its order must equal the record's.
    Order3Orbits,
}

impl FromStr for Expression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expression> {
        if s == "order3_orbits" {
            return Ok(Expression::Order3Orbits);
        }
        let (head, per_vertex) = match s.strip_suffix("/v") {
            Some(h) => (h, true),
            None => (s, false),
        };
        let index = head
            .strip_prefix("omega")
            .and_then(|i| i.parse::<usize>().ok())
            .filter(|i| (1..=4).contains(i))
            .ok_or_else(|| Error::Parse(format!("unknown expression {s:?}")))?;
        Ok(Expression::Omega { index, per_vertex })
    }
}

impl TryFrom<String> for Expression {
    type Error = Error;

    fn try_from(s: String) -> Result<Expression> {
        s.parse()
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Omega { index, per_vertex } => {
                write!(f, "omega{index}{}", if *per_vertex { "/v" } else { "" })
            }
            Expression::Order3Orbits => write!(f, "order3_orbits"),
        }
    }
}

impl From<Expression> for String {
    fn from(e: Expression) -> String {
        e.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EliminationRecord {
    pub label: String,
    /// `[v, k, lambda, mu]`.
    pub params: [u64; 4],
    /// Group order bound, e.g. `2^8*3^3*5*7`.
    pub order_factored: String,
    pub expression: Expression,
    pub expected_verdict: Verdict,
    /// Which case of the classification the record belongs to.
    pub tag: String,
    /// The tested value as originally quoted, compared with the recomputed one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quoted_value: Option<String>,
    /// The group order as originally quoted, when it differs in form from `order_factored`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quoted_order: Option<String>,
    /// Family and arguments as accepted by [`Family::parse`], for `order3_orbits`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl EliminationRecord {
    pub fn srg(&self) -> SrgParams {
        let [v, k, l, mu] = self.params;
        SrgParams::new(v, k, l, mu)
    }
}

/// A record evaluated from its fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayOutcome {
    pub label: String,
    pub tag: String,
    pub expression: String,
    /// Factored value of the expression, or the orbit count of each order-3 class.
    pub value: String,
    pub order: String,
    pub verdict: Verdict,
    pub expected: Verdict,
    pub matches: bool,
    /// Prime powers of the value that the order lacks, as `p^e > p^f`.
    pub excess: Vec<String>,
    pub quoted_value_matches: Option<bool>,
    pub quoted_order_matches: Option<bool>,
}

pub fn load_ledger(json: &str) -> Result<Vec<EliminationRecord>> {
    serde_json::from_str(json).map_err(|e| Error::Parse(format!("ledger: {e}")))
}

pub fn builtin_ledger() -> Result<Vec<EliminationRecord>> {
    load_ledger(BUILTIN_LEDGER)
}

fn parse_order(s: &str) -> Result<Factored> {
    s.parse()
}

fn order3_orbits(rec: &EliminationRecord, order: &Factored) -> Result<(String, Verdict)> {
    let spec = rec
        .construction
        .as_deref()
        .ok_or_else(|| Error::Parse(format!("{}: order3_orbits needs a construction", rec.label)))?;
    let words: Vec<String> = spec.split_whitespace().map(String::from).collect();
    let (name, args) = words
        .split_first()
        .ok_or_else(|| Error::Parse(format!("{}: empty construction", rec.label)))?;
    let g = Family::parse(name, args)?.build()?;
    let p = g.srg_params()?;
    if p != rec.srg() {
        return Err(Error::Construction(format!("{}: {spec} has parameters {p:?}", rec.label)));
    }
    let aut = automorphism_group(&g, &SearchOptions::default())?;
    if !aut.certified {
        return Err(Error::BudgetExceeded(format!("{}: automorphism search", rec.label)));
    }
    if aut.group.order() != order.value() {
        return Err(Error::Violation(format!(
            "{}: automorphism group has order {}, record says {order}",
            rec.label,
            aut.group.order()
        )));
    }
    let census = subgraph_census(&g, &aut.group, 3, &HomogeneityOptions::default())?;
    const NAMES: [&str; 4] = ["3K1", "K1+K2", "P3", "K3"];
    let value: Vec<String> = census.iter().map(|e| format!("{}: {}", NAMES[e.class], e.orbits)).collect();
    let verdict = if census.iter().any(|e| e.orbits > 1) {
        Verdict::Eliminated
    } else {
        Verdict::Passes
    };
    Ok((value.join(", "), verdict))
}

pub fn replay_record(rec: &EliminationRecord) -> Result<ReplayOutcome> {
    let order = parse_order(&rec.order_factored)?;
    let quoted_order_matches = rec
        .quoted_order
        .as_deref()
        .map(|q| parse_order(q).map(|q| q == order))
        .transpose()?;
    let (value, verdict, excess, quoted_value_matches) = match rec.expression {
        Expression::Order3Orbits => {
            let (value, verdict) = order3_orbits(rec, &order)?;
            (value, verdict, Vec::new(), None)
        }
        Expression::Omega { index, per_vertex } => {
            let p = rec.srg();
            let mut x = omega_values(&p)?[index - 1];
            if per_vertex {
                if x % p.v as u128 != 0 {
                    return Err(Error::InvalidParameter(format!("{}: v does not divide the count", rec.label)));
                }
                x /= p.v as u128;
            }
            if x == 0 {
                return Err(Error::InvalidParameter(format!("{}: the count is zero", rec.label)));
            }
            let f = Factored::from_u128(x)?;
            let excess: Vec<String> = f
                .excess_over(&order)
                .into_iter()
                .map(|(p, e, have)| format!("{p}^{e} > {p}^{have}"))
                .collect();
            let verdict = if excess.is_empty() {
                Verdict::Passes
            } else {
                Verdict::Eliminated
            };
            let quoted = rec
                .quoted_value
                .as_deref()
                .map(|q| q.parse::<Factored>().map(|q| q == f))
                .transpose()?;
            (f.to_string(), verdict, excess, quoted)
        }
    };
    Ok(ReplayOutcome {
        label: rec.label.clone(),
        tag: rec.tag.clone(),
        expression: rec.expression.to_string(),
        value,
        order: order.to_string(),
        verdict,
        expected: rec.expected_verdict,
        matches: verdict == rec.expected_verdict,
        excess,
        quoted_value_matches,
        quoted_order_matches,
    })
}

pub fn replay_ledger(records: &[EliminationRecord]) -> Result<Vec<ReplayOutcome>> {
    records.iter().map(replay_record).collect()
}

/// Replays the built-in ledger.
pub fn replay_eliminations() -> Result<Vec<ReplayOutcome>> {
    replay_ledger(&builtin_ledger()?)
}

/// Fails, naming the records, when any recomputed verdict differs from the
/// expected one.
pub fn ensure_all_match(outcomes: &[ReplayOutcome]) -> Result<()> {
    let bad: Vec<&str> = outcomes.iter().filter(|o| !o.matches).map(|o| o.label.as_str()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Violation(format!("recomputed verdicts differ for {}", bad.join(", "))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions_round_trip() {
        for s in ["omega1", "omega4/v", "order3_orbits"] {
            assert_eq!(s.parse::<Expression>().unwrap().to_string(), s);
        }
        assert!("omega5".parse::<Expression>().is_err());
        assert!("omega".parse::<Expression>().is_err());
    }

    #[test]
    fn builtin_ledger_parses() {
        let recs = builtin_ledger().unwrap();
        assert!(recs.len() >= 20);
        for r in &recs {
            assert!(r.order_factored.parse::<Factored>().is_ok(), "{}", r.label);
        }
    }

    #[test]
    fn single_record() {
        let json = r#"[{"label": "u33", "params": [36, 14, 4, 6], "order_factored": "2^6*3^3*7",
            "expression": "omega2", "expected_verdict": "eliminated", "tag": "t", "quoted_value": "2^2*3^4*7"}]"#;
        let recs = load_ledger(json).unwrap();
        let out = replay_ledger(&recs).unwrap();
        assert!(out[0].matches);
        assert_eq!(out[0].quoted_value_matches, Some(true));
        assert_eq!(out[0].excess, vec!["3^4 > 3^3".to_string()]);
        assert!(load_ledger(r#"[{"label": "x"}]"#).is_err());
    }
}
