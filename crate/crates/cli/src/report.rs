//! Analysis reports and their text rendering.

use footprint_core::{Outcome, Predicate, SeparationAlgebra, StatementDoc};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub algebra: AlgebraStats,
    pub results: Vec<QueryResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraStats {
    pub kind: String,
    pub origin: String,
    pub size: usize,
    pub unit: String,
    /// `(σ, σ')` with `σ ≠ u` and `σ • σ' = u`.
    pub negativity: Option<(String, String)>,
    pub well_founded: bool,
    /// Closed walk along the strict substate order, first state repeated last.
    pub descending_cycle: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryResult {
    pub query: String,
    pub target: String,
    pub result: QueryOutcome,
}

/// `fault: true` carries no states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeDoc {
    pub fault: bool,
    pub states: Vec<String>,
}

impl OutcomeDoc {
    pub fn new(alg: &SeparationAlgebra, o: &Outcome) -> Self {
        match o {
            Outcome::Fault => OutcomeDoc { fault: true, states: Vec::new() },
            Outcome::States(p) => OutcomeDoc { fault: false, states: labels(alg, p) },
        }
    }

    fn render(&self) -> String {
        if self.fault {
            "fault".to_string()
        } else {
            braces(&self.states)
        }
    }
}

pub fn labels(alg: &SeparationAlgebra, p: &Predicate) -> Vec<String> {
    alg.labels_of(p).map(str::to_string).collect()
}

/// `f(frame • core)` contains `offending` (or faults) outside `{frame} * f(core)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalityWitness {
    pub frame: String,
    pub core: String,
    pub whole: String,
    pub offending: Option<String>,
}

/// `f({frame} * {state}) = lhs` differs from `{frame} * f(state) = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetconstWitness {
    pub frame: String,
    pub state: String,
    pub lhs: OutcomeDoc,
    pub rhs: OutcomeDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateMismatch {
    pub state: String,
    pub expected: OutcomeDoc,
    pub actual: OutcomeDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationFailure {
    pub path: Vec<usize>,
    pub rule: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QueryOutcome {
    States { states: Vec<String> },
    Locality { holds: bool, counterexample: Option<LocalityWitness> },
    Detconst { holds: bool, counterexample: Option<DetconstWitness> },
    Specification { statements: Vec<StatementDoc> },
    NoFootprintBasis { footprints: Vec<String>, witness: StateMismatch },
    /// `witness`: a state where the limit imposed by the set differs from the function.
    Basis { holds: bool, witness: Option<StateMismatch> },
    /// `witness`: a state where the best local action differs from the function.
    Complete { holds: bool, witness: Option<StateMismatch> },
    /// `witness`: a precondition state whose best-local-action outcome escapes the postcondition.
    Entails { holds: bool, witness: Option<StateMismatch> },
    Derivation {
        valid: bool,
        conclusion: Option<StatementDoc>,
        entailed: Option<bool>,
        failure: Option<DerivationFailure>,
    },
    Error { message: String },
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_statements(ss: &[StatementDoc]) -> String {
    if ss.is_empty() {
        return "{}".to_string();
    }
    let items: Vec<String> = ss.iter().map(|s| format!("({}, {})", braces(&s.pre), braces(&s.post))).collect();
    items.join("\n")
}

fn render_mismatch(m: &StateMismatch, expected: &str, actual: &str) -> String {
    format!("at {}: {expected} {} but {actual} {}", m.state, m.expected.render(), m.actual.render())
}

impl QueryOutcome {
    fn render(&self) -> String {
        match self {
            QueryOutcome::States { states } => format!("{} ({} states)", braces(states), states.len()),
            QueryOutcome::Locality { holds: true, .. } => "local".into(),
            QueryOutcome::Locality { counterexample: cx, .. } => {
                let cx = cx.as_ref().expect("failing verdicts carry a witness");
                let what = cx.offending.as_deref().map_or("faults".to_string(), |o| format!("yields {o}"));
                format!("not local: f({}) {what}, not below {{{}}} * f({})", cx.whole, cx.frame, cx.core)
            }
            QueryOutcome::Detconst { holds: true, .. } => "determinism constancy holds".into(),
            QueryOutcome::Detconst { counterexample: cx, .. } => {
                let cx = cx.as_ref().expect("failing verdicts carry a witness");
                format!(
                    "fails: f({{{}}} * {{{}}}) = {} but {{{}}} * f({}) = {}",
                    cx.frame,
                    cx.state,
                    cx.lhs.render(),
                    cx.frame,
                    cx.state,
                    cx.rhs.render()
                )
            }
            QueryOutcome::Specification { statements } => render_statements(statements),
            QueryOutcome::NoFootprintBasis { footprints, witness } => format!(
                "footprints {} are not a basis; {}",
                braces(footprints),
                render_mismatch(witness, "function gives", "their limit is")
            ),
            QueryOutcome::Basis { holds, witness } => match witness {
                None => format!("basis: {}", yes_no(*holds)),
                Some(w) => format!("basis: no; {}", render_mismatch(w, "function gives", "limit is")),
            },
            QueryOutcome::Complete { holds, witness } => match witness {
                None => format!("complete: {}", yes_no(*holds)),
                Some(w) => format!("complete: no; {}", render_mismatch(w, "function gives", "best local action gives")),
            },
            QueryOutcome::Entails { holds, witness } => match witness {
                None => format!("entailed: {}", yes_no(*holds)),
                Some(w) => format!("entailed: no; {}", render_mismatch(w, "postcondition is", "best local action gives")),
            },
            QueryOutcome::Derivation { valid: true, conclusion, entailed, .. } => {
                let c = conclusion.as_ref().expect("valid derivations carry a conclusion");
                format!(
                    "valid; concludes ({}, {}); entailed: {}",
                    braces(&c.pre),
                    braces(&c.post),
                    yes_no(entailed.unwrap_or(false))
                )
            }
            QueryOutcome::Derivation { failure, .. } => {
                let f = failure.as_ref().expect("invalid derivations carry a failure");
                let path: Vec<String> = f.path.iter().map(usize::to_string).collect();
                format!("invalid {} node at root/{}: {}", f.rule, path.join("/"), f.reason)
            }
            QueryOutcome::Error { message } => format!("error: {message}"),
        }
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let a = &self.algebra;
        let mut rows: Vec<(String, String)> = vec![
            ("tool".into(), format!("{} {}", self.tool, self.version)),
            ("algebra".into(), format!("{} ({})", a.kind, a.origin)),
            ("size".into(), a.size.to_string()),
            ("unit".into(), a.unit.clone()),
            (
                "negativity".into(),
                a.negativity.as_ref().map_or("none".into(), |(x, y)| format!("{x} • {y} = {}", a.unit)),
            ),
            (
                "well-founded".into(),
                match &a.descending_cycle {
                    None => yes_no(a.well_founded).into(),
                    Some(c) => format!("no, cycle {}", c.join(" < ")),
                },
            ),
        ];
        for (i, r) in self.results.iter().enumerate() {
            rows.push((format!("[{}] {} {}", i + 1, r.query, r.target), r.result.render()));
        }
        if let Some(ms) = self.elapsed_ms {
            rows.push(("elapsed".into(), format!("{ms} ms")));
        }
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let pad = " ".repeat(width - k.chars().count());
            let mut lines = v.lines();
            out.push_str(&format!("{k}{pad}  {}\n", lines.next().unwrap_or("")));
            for line in lines {
                out.push_str(&format!("{}  {line}\n", " ".repeat(width)));
            }
        }
        out
    }
}
