//! Inference rules for local Hoare reasoning and a derivation checker.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Predicate, SeparationAlgebra};
use crate::spec::{resolve_labels, Specification, Statement, StatementDoc};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Axiom,
    Frame,
    Consequence,
    Union,
    Intersection,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Axiom => "axiom",
            Rule::Frame => "frame",
            Rule::Consequence => "consequence",
            Rule::Union => "union",
            Rule::Intersection => "intersection",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("consequence side condition violated: {0}")]
    SideConditionViolated(&'static str),
    #[error("intersection over an empty family")]
    EmptyIntersection,
}

/// `(p * r, q * r)`.
pub fn apply_frame(alg: &SeparationAlgebra, s: &Statement, frame: &Predicate) -> Statement {
    Statement::new(alg.star(&s.pre, frame), alg.star(&s.post, frame))
}

/// `(p', q')` from `(p, q)` when `p' ⊆ p` and `q ⊆ q'`.
pub fn apply_consequence(s: &Statement, pre: &Predicate, post: &Predicate) -> Result<Statement, RuleError> {
    if !pre.is_subset(&s.pre) {
        return Err(RuleError::SideConditionViolated("new precondition is not contained in the old one"));
    }
    if !s.post.is_subset(post) {
        return Err(RuleError::SideConditionViolated("old postcondition is not contained in the new one"));
    }
    Ok(Statement::new(pre.clone(), post.clone()))
}

pub fn apply_union<'a>(family: impl IntoIterator<Item = &'a Statement>) -> Statement {
    family.into_iter().fold(Statement::new(Predicate::empty(), Predicate::empty()), |acc, s| {
        Statement::new(acc.pre.union(&s.pre), acc.post.union(&s.post))
    })
}

pub fn apply_intersection<'a>(family: impl IntoIterator<Item = &'a Statement>) -> Result<Statement, RuleError> {
    let mut it = family.into_iter();
    let first = it.next().ok_or(RuleError::EmptyIntersection)?.clone();
    Ok(it.fold(first, |acc, s| Statement::new(acc.pre.intersection(&s.pre), acc.post.intersection(&s.post))))
}

/// A derivation tree. `frame` is set exactly on `Frame` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub premises: Vec<Derivation>,
    pub conclusion: Statement,
    pub frame: Option<Predicate>,
}

impl Derivation {
    pub fn axiom(s: Statement) -> Self {
        Derivation { rule: Rule::Axiom, premises: Vec::new(), conclusion: s, frame: None }
    }

    pub fn frame(alg: &SeparationAlgebra, premise: Derivation, r: Predicate) -> Self {
        let conclusion = apply_frame(alg, &premise.conclusion, &r);
        Derivation { rule: Rule::Frame, premises: vec![premise], conclusion, frame: Some(r) }
    }

    pub fn consequence(premise: Derivation, pre: Predicate, post: Predicate) -> Result<Self, RuleError> {
        let conclusion = apply_consequence(&premise.conclusion, &pre, &post)?;
        Ok(Derivation { rule: Rule::Consequence, premises: vec![premise], conclusion, frame: None })
    }

    pub fn union(premises: Vec<Derivation>) -> Self {
        let conclusion = apply_union(premises.iter().map(|d| &d.conclusion));
        Derivation { rule: Rule::Union, premises, conclusion, frame: None }
    }

    pub fn intersection(premises: Vec<Derivation>) -> Result<Self, RuleError> {
        let conclusion = apply_intersection(premises.iter().map(|d| &d.conclusion))?;
        Ok(Derivation { rule: Rule::Intersection, premises, conclusion, frame: None })
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn to_doc(&self, alg: &SeparationAlgebra) -> DerivationDoc {
        DerivationDoc {
            rule: self.rule,
            premises: self.premises.iter().map(|p| p.to_doc(alg)).collect(),
            conclusion: self.conclusion.to_doc(alg),
            frame: self.frame.as_ref().map(|r| alg.labels_of(r).map(str::to_string).collect()),
        }
    }

    pub fn from_doc(alg: &SeparationAlgebra, doc: &DerivationDoc) -> Result<Self, AlgebraError> {
        Ok(Derivation {
            rule: doc.rule,
            premises: doc.premises.iter().map(|p| Derivation::from_doc(alg, p)).collect::<Result<_, _>>()?,
            conclusion: doc.conclusion.resolve(alg)?,
            frame: doc.frame.as_deref().map(|ls| resolve_labels(alg, ls)).transpose()?,
        })
    }
}

/// Serialized derivation node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationDoc {
    pub rule: Rule,
    #[serde(default)]
    pub premises: Vec<DerivationDoc>,
    pub conclusion: StatementDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<String>>,
}

/// The first invalid node, addressed by premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {rule} node at {}: {reason}", fmt_path(.path))]
pub struct DerivationError {
    pub path: Vec<usize>,
    pub rule: Rule,
    pub reason: String,
}

fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        let parts: Vec<String> = path.iter().map(usize::to_string).collect();
        format!("root/{}", parts.join("/"))
    }
}

/// Validates every node against its rule; returns the root conclusion.
pub fn check_derivation(d: &Derivation, spec: &Specification) -> Result<Statement, DerivationError> {
    let mut path = Vec::new();
    check_node(d, spec, &mut path)?;
    Ok(d.conclusion.clone())
}

fn check_node(d: &Derivation, spec: &Specification, path: &mut Vec<usize>) -> Result<(), DerivationError> {
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, spec, path)?;
        path.pop();
    }
    let fail = |reason: &str| DerivationError { path: path.clone(), rule: d.rule, reason: reason.to_string() };
    let alg = spec.algebra();
    if d.frame.is_some() && d.rule != Rule::Frame {
        return Err(fail("only frame nodes carry a frame predicate"));
    }
    if !alg.owns(&d.conclusion.pre) || !alg.owns(&d.conclusion.post) {
        return Err(fail("conclusion mentions elements of another algebra"));
    }
    let expected = match d.rule {
        Rule::Axiom => {
            if !d.premises.is_empty() {
                return Err(fail("axiom nodes have no premises"));
            }
            if !spec.contains(&d.conclusion) {
                return Err(fail("statement is not in the specification"));
            }
            return Ok(());
        }
        Rule::Frame => {
            let [premise] = d.premises.as_slice() else {
                return Err(fail("frame takes exactly one premise"));
            };
            let Some(r) = &d.frame else {
                return Err(fail("frame node without a frame predicate"));
            };
            if !alg.owns(r) {
                return Err(fail("frame mentions elements of another algebra"));
            }
            apply_frame(alg, &premise.conclusion, r)
        }
        Rule::Consequence => {
            let [premise] = d.premises.as_slice() else {
                return Err(fail("consequence takes exactly one premise"));
            };
            apply_consequence(&premise.conclusion, &d.conclusion.pre, &d.conclusion.post)
                .map_err(|e| fail(&e.to_string()))?
        }
        Rule::Union => apply_union(d.premises.iter().map(|p| &p.conclusion)),
        Rule::Intersection => {
            apply_intersection(d.premises.iter().map(|p| &p.conclusion)).map_err(|e| fail(&e.to_string()))?
        }
    };
    if expected != d.conclusion {
        return Err(fail("conclusion does not follow from the premises"));
    }
    Ok(())
}

/// Builds a derivation of `s` from `spec` by framing every applicable
/// statement onto each precondition state, intersecting, taking the union
/// over the precondition and weakening. `None` when `spec` does not entail `s`.
pub fn derive_via_bla(spec: &Specification, s: &Statement) -> Option<Derivation> {
    let alg = spec.algebra();
    let mut per_state = Vec::with_capacity(s.pre.len());
    for sigma in &s.pre {
        let mut terms = Vec::new();
        for (sub, rest) in alg.splits(sigma) {
            for st in spec.statements().iter().filter(|st| st.pre.contains(sub)) {
                let narrowed = Derivation::consequence(
                    Derivation::axiom(st.clone()),
                    Predicate::singleton(sub),
                    st.post.clone(),
                )
                .expect("singleton of a member is contained in the precondition");
                terms.push(Derivation::frame(alg, narrowed, Predicate::singleton(rest)));
            }
        }
        per_state.push(Derivation::intersection(terms).ok()?);
    }
    let union = Derivation::union(per_state);
    Derivation::consequence(union, s.pre.clone(), s.post.clone()).ok()
}
