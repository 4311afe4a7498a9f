//! Statements, specifications, best local actions, bases and small specifications.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, ElementId, Predicate, SeparationAlgebra};
use crate::local::{local_limit_where, LocalFunction, LocalityCheck, MeetAcc, Outcome};

/// A `(pre, post)` pair. Postconditions are predicates, so `Fault` never appears.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement {
    pub pre: Predicate,
    pub post: Predicate,
}

impl Statement {
    pub fn new(pre: Predicate, post: Predicate) -> Self {
        Statement { pre, post }
    }

    pub fn to_doc(&self, alg: &SeparationAlgebra) -> StatementDoc {
        StatementDoc {
            pre: alg.labels_of(&self.pre).map(str::to_string).collect(),
            post: alg.labels_of(&self.post).map(str::to_string).collect(),
        }
    }

    pub fn display(&self, alg: &SeparationAlgebra) -> String {
        let pre: Vec<&str> = alg.labels_of(&self.pre).collect();
        let post: Vec<&str> = alg.labels_of(&self.post).collect();
        format!("({{{}}}, {{{}}})", pre.join(", "), post.join(", "))
    }
}

/// Label-level form of a statement, used in job files and reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatementDoc {
    pub pre: Vec<String>,
    pub post: Vec<String>,
}

impl StatementDoc {
    pub fn resolve(&self, alg: &SeparationAlgebra) -> Result<Statement, AlgebraError> {
        Ok(Statement { pre: resolve_labels(alg, &self.pre)?, post: resolve_labels(alg, &self.post)? })
    }
}

pub fn resolve_labels(alg: &SeparationAlgebra, labels: &[String]) -> Result<Predicate, AlgebraError> {
    labels.iter().map(|l| alg.require(l)).collect()
}

/// A finite set of statements over one algebra.
#[derive(Clone)]
pub struct Specification {
    algebra: Arc<SeparationAlgebra>,
    statements: BTreeSet<Statement>,
}

impl fmt::Debug for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.statements.iter().map(|s| s.display(&self.algebra)).collect();
        f.debug_list().entries(items).finish()
    }
}

impl PartialEq for Specification {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.id() == other.algebra.id() && self.statements == other.statements
    }
}

impl Eq for Specification {}

impl Specification {
    pub fn new(
        algebra: Arc<SeparationAlgebra>,
        statements: impl IntoIterator<Item = Statement>,
    ) -> Result<Self, AlgebraError> {
        let statements: BTreeSet<Statement> = statements.into_iter().collect();
        for s in &statements {
            for e in s.pre.iter().chain(s.post.iter()) {
                algebra.check(e)?;
            }
        }
        Ok(Specification { algebra, statements })
    }

    pub fn empty(algebra: Arc<SeparationAlgebra>) -> Self {
        Specification { algebra, statements: BTreeSet::new() }
    }

    pub fn from_docs(algebra: Arc<SeparationAlgebra>, docs: &[StatementDoc]) -> Result<Self, AlgebraError> {
        let statements = docs.iter().map(|d| d.resolve(&algebra)).collect::<Result<Vec<_>, _>>()?;
        Self::new(algebra, statements)
    }

    pub fn to_docs(&self) -> Vec<StatementDoc> {
        self.statements.iter().map(|s| s.to_doc(&self.algebra)).collect()
    }

    pub fn algebra(&self) -> &Arc<SeparationAlgebra> {
        &self.algebra
    }

    pub fn statements(&self) -> &BTreeSet<Statement> {
        &self.statements
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn contains(&self, s: &Statement) -> bool {
        self.statements.contains(s)
    }

    pub fn insert(&mut self, s: Statement) {
        self.statements.insert(s);
    }

    /// Union of all preconditions.
    pub fn domain(&self) -> Predicate {
        self.statements.iter().fold(Predicate::empty(), |acc, s| acc.union(&s.pre))
    }

    /// The best local action, `bla[φ]`.
    pub fn bla(&self) -> LocalFunction {
        let action = bla_action(&self.algebra, self.statements.iter());
        LocalFunction::derived(self.algebra.clone(), action, "bla".to_string(), LocalityCheck::Debug)
            .expect("debug sealing never fails")
    }

    /// `bla[φ](σ)` at a single state.
    pub fn bla_at(&self, sigma: ElementId) -> Outcome {
        let alg = &self.algebra;
        let mut acc = MeetAcc::default();
        for (sub, rest) in alg.splits(sigma) {
            for s in self.statements.iter().filter(|s| s.pre.contains(sub)) {
                acc.add_framed(alg, rest, &s.post);
            }
        }
        acc.finish()
    }

    /// Semantic consequence, decided through the best local action.
    pub fn entails(&self, s: &Statement) -> bool {
        satisfies(&self.bla(), s)
    }

    pub fn entails_spec(&self, other: &Specification) -> bool {
        satisfies_spec(&self.bla(), other)
    }

    pub fn is_complete_for(&self, f: &LocalFunction) -> bool {
        is_complete(self, f)
    }

    /// `{({σ}, bla[φ](σ)) | σ ∈ domain(φ)}`.
    pub fn canonicalise(&self) -> Specification {
        let bla = self.bla();
        let domain = self.domain();
        let statements = domain.iter().filter_map(|sigma| {
            bla.apply(sigma)
                .states()
                .map(|q| Statement::new(Predicate::singleton(sigma), q.clone()))
        });
        Specification { algebra: self.algebra.clone(), statements: statements.collect() }
    }
}

/// Raw best-local-action table over an arbitrary statement list.
pub fn bla_action<'a>(
    alg: &SeparationAlgebra,
    statements: impl IntoIterator<Item = &'a Statement>,
) -> Vec<Outcome> {
    let statements: Vec<&Statement> = statements.into_iter().collect();
    let mut by_pre: Vec<Vec<usize>> = vec![Vec::new(); alg.len()];
    for (i, s) in statements.iter().enumerate() {
        for e in &s.pre {
            by_pre[e.index()].push(i);
        }
    }
    alg.elements()
        .map(|sigma| {
            let mut acc = MeetAcc::default();
            for (sub, rest) in alg.splits(sigma) {
                for &i in &by_pre[sub.index()] {
                    acc.add_framed(alg, rest, &statements[i].post);
                }
            }
            acc.finish()
        })
        .collect()
}

/// `f ⊨ (p, q)`: every state of `p` maps below `q`.
pub fn satisfies(f: &LocalFunction, s: &Statement) -> bool {
    let post = Outcome::States(s.post.clone());
    s.pre.iter().all(|sigma| f.apply(sigma).leq(&post))
}

pub fn satisfies_spec(f: &LocalFunction, spec: &Specification) -> bool {
    spec.statements().iter().all(|s| satisfies(f, s))
}

/// `complete(φ, f) ⇔ f = bla[φ]`.
pub fn is_complete(spec: &Specification, f: &LocalFunction) -> bool {
    spec.algebra().id() == f.algebra().id()
        && f.algebra().elements().all(|sigma| &spec.bla_at(sigma) == f.apply(sigma))
}

/// `{({σ}, f(σ)) | σ ∈ set, f(σ) ≠ Fault}`.
pub fn spec_from_set(f: &LocalFunction, set: &Predicate) -> Specification {
    let statements = set.iter().filter_map(|sigma| {
        f.apply(sigma)
            .states()
            .map(|q| Statement::new(Predicate::singleton(sigma), q.clone()))
    });
    Specification { algebra: f.algebra().clone(), statements: statements.collect() }
}

pub fn big_spec(f: &LocalFunction) -> Specification {
    spec_from_set(f, &f.algebra().carrier())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVerdict {
    pub holds: bool,
    /// First state where the limit imposed by the set differs from `f`.
    pub witness: Option<ElementId>,
}

/// `L_{A,f} = f`, checked at every state.
pub fn is_basis(set: &Predicate, f: &LocalFunction) -> BasisVerdict {
    let alg = f.algebra();
    let mut member = vec![false; alg.len()];
    for e in set {
        member[e.index()] = true;
    }
    let witness = alg
        .elements()
        .find(|&sigma| &local_limit_where(alg, f.action(), |e| member[e.index()], sigma) != f.apply(sigma));
    BasisVerdict { holds: witness.is_none(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallSpecResult {
    Spec(Specification),
    NoFootprintBasis { witness: ElementId },
}

/// The footprint specification when the footprints form a basis.
pub fn small_spec(f: &LocalFunction) -> SmallSpecResult {
    let fp = f.footprints();
    let verdict = is_basis(&fp, f);
    match verdict.witness {
        None => SmallSpecResult::Spec(spec_from_set(f, &fp)),
        Some(witness) => SmallSpecResult::NoFootprintBasis { witness },
    }
}
