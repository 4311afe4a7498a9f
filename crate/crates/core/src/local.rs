//! Outcomes, local functions, program combinators and footprints.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, ElementId, Predicate, SeparationAlgebra};

/// A point of the powerset lattice extended with a top element.
///
/// `States(∅)` is divergence; `Fault` is the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Fault,
    States(Predicate),
}

impl Outcome {
    pub fn empty() -> Self {
        Outcome::States(Predicate::empty())
    }

    pub fn single(e: ElementId) -> Self {
        Outcome::States(Predicate::singleton(e))
    }

    pub fn is_fault(&self) -> bool {
        matches!(self, Outcome::Fault)
    }

    pub fn states(&self) -> Option<&Predicate> {
        match self {
            Outcome::Fault => None,
            Outcome::States(p) => Some(p),
        }
    }

    /// `self ⊑ other`.
    pub fn leq(&self, other: &Outcome) -> bool {
        match (self, other) {
            (_, Outcome::Fault) => true,
            (Outcome::Fault, Outcome::States(_)) => false,
            (Outcome::States(a), Outcome::States(b)) => a.is_subset(b),
        }
    }

    /// `self ⊏ other`.
    pub fn strictly_below(&self, other: &Outcome) -> bool {
        self != other && self.leq(other)
    }

    pub fn meet(&self, other: &Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fault, x) | (x, Outcome::Fault) => x.clone(),
            (Outcome::States(a), Outcome::States(b)) => Outcome::States(a.intersection(b)),
        }
    }

    pub fn join(&self, other: &Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fault, _) | (_, Outcome::Fault) => Outcome::Fault,
            (Outcome::States(a), Outcome::States(b)) => Outcome::States(a.union(b)),
        }
    }

    pub fn display(&self, alg: &SeparationAlgebra) -> String {
        match self {
            Outcome::Fault => "fault".to_string(),
            Outcome::States(p) => {
                let labels: Vec<&str> = alg.labels_of(p).collect();
                format!("{{{}}}", labels.join(", "))
            }
        }
    }
}

impl From<Predicate> for Outcome {
    fn from(p: Predicate) -> Self {
        Outcome::States(p)
    }
}

/// Meet of a family; the empty family gives `Fault`.
pub fn intersect<'a, I: IntoIterator<Item = &'a Outcome>>(family: I) -> Outcome {
    let mut acc: Option<Predicate> = None;
    for o in family {
        if let Outcome::States(p) = o {
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => a.intersection(p),
            });
        }
    }
    acc.map_or(Outcome::Fault, Outcome::States)
}

/// Join of a family; the empty family gives divergence.
pub fn join_all<'a, I: IntoIterator<Item = &'a Outcome>>(family: I) -> Outcome {
    let mut acc = Predicate::empty();
    for o in family {
        match o {
            Outcome::Fault => return Outcome::Fault,
            Outcome::States(p) => acc = acc.union(p),
        }
    }
    Outcome::States(acc)
}

/// `p * q` lifted to outcomes.
pub fn star(alg: &SeparationAlgebra, p: &Outcome, q: &Outcome) -> Outcome {
    match (p, q) {
        (Outcome::States(a), Outcome::States(b)) => Outcome::States(alg.star(a, b)),
        _ => Outcome::Fault,
    }
}

/// Running meet of framed outcomes `{rest} * q`; `Fault` is neutral.
#[derive(Default)]
pub(crate) struct MeetAcc(Option<Predicate>);

impl MeetAcc {
    pub(crate) fn add_framed(&mut self, alg: &SeparationAlgebra, rest: ElementId, q: &Predicate) {
        match &mut self.0 {
            None => self.0 = Some(alg.frame(rest, q)),
            Some(acc) => acc.retain(|&e| alg.sub_of(rest, e).is_some_and(|o| q.contains(o))),
        }
    }

    /// Further terms cannot change an empty meet.
    pub(crate) fn is_empty_set(&self) -> bool {
        self.0.as_ref().is_some_and(Predicate::is_empty)
    }

    pub(crate) fn finish(self) -> Outcome {
        self.0.map_or(Outcome::Fault, Outcome::States)
    }
}

/// How aggressively combinator results are re-verified for locality.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum LocalityCheck {
    Off,
    #[default]
    Debug,
    Always,
}

impl FromStr for LocalityCheck {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(LocalityCheck::Off),
            "debug" => Ok(LocalityCheck::Debug),
            "always" => Ok(LocalityCheck::Always),
            other => Err(format!("unknown locality check mode `{other}` (expected off|debug|always)")),
        }
    }
}

impl fmt::Display for LocalityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocalityCheck::Off => "off",
            LocalityCheck::Debug => "debug",
            LocalityCheck::Always => "always",
        })
    }
}

/// `f(frame • core) ⋢ {frame} * f(core)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityCounterexample {
    pub frame: ElementId,
    pub core: ElementId,
    /// An output of `f(frame • core)` missing from the framed outcome,
    /// or `None` when `f(frame • core)` faults.
    pub offending: Option<ElementId>,
}

impl LocalityCounterexample {
    /// True when the pair really violates locality for `action`.
    pub fn replays(&self, alg: &SeparationAlgebra, action: &[Outcome]) -> bool {
        let Ok(Some(whole)) = alg.compose(self.frame, self.core) else {
            return false;
        };
        let framed = star(alg, &Outcome::single(self.frame), &action[self.core.index()]);
        !action[whole.index()].leq(&framed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityVerdict {
    pub holds: bool,
    pub counterexample: Option<LocalityCounterexample>,
}

/// Exhaustive locality check over every separate pair, cores in carrier
/// order, frames in carrier order within each core.
pub fn is_local(alg: &SeparationAlgebra, action: &[Outcome]) -> LocalityVerdict {
    assert_eq!(action.len(), alg.len(), "action must be total over the carrier");
    for core in alg.elements() {
        let Outcome::States(core_out) = &action[core.index()] else {
            continue;
        };
        for frame in alg.elements() {
            let Some(whole) = alg.join(frame, core) else {
                continue;
            };
            let bad = match &action[whole.index()] {
                Outcome::Fault => Some(None),
                Outcome::States(out) => out
                    .iter()
                    .find(|&o| match alg.sub_of(frame, o) {
                        Some(rest) => !core_out.contains(rest),
                        None => true,
                    })
                    .map(Some),
            };
            if let Some(offending) = bad {
                return LocalityVerdict {
                    holds: false,
                    counterexample: Some(LocalityCounterexample { frame, core, offending }),
                };
            }
        }
    }
    LocalityVerdict { holds: true, counterexample: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("`{name}` is not local: {detail}")]
    NotLocal { name: String, detail: String, counterexample: LocalityCounterexample },
    #[error("action has {got} entries but the carrier has {expected}")]
    ActionLength { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A total, locality-checked map from states to outcomes.
#[derive(Clone)]
pub struct LocalFunction {
    algebra: Arc<SeparationAlgebra>,
    action: Vec<Outcome>,
    name: String,
}

impl fmt::Debug for LocalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalFunction").field("name", &self.name).finish_non_exhaustive()
    }
}

impl PartialEq for LocalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.id() == other.algebra.id() && self.action == other.action
    }
}

impl Eq for LocalFunction {}

fn describe(alg: &SeparationAlgebra, action: &[Outcome], cx: &LocalityCounterexample) -> String {
    let whole = alg.join(cx.frame, cx.core).expect("counterexample pair is separate");
    let framed = star(alg, &Outcome::single(cx.frame), &action[cx.core.index()]);
    format!(
        "f({}) = {} is not below {{{}}} * f({}) = {}",
        alg.label(whole),
        action[whole.index()].display(alg),
        alg.label(cx.frame),
        alg.label(cx.core),
        framed.display(alg),
    )
}

impl LocalFunction {
    /// Seals a user-supplied action after a full locality check.
    pub fn new(
        algebra: Arc<SeparationAlgebra>,
        action: Vec<Outcome>,
        name: impl Into<String>,
    ) -> Result<Self, LocalError> {
        let name = name.into();
        if action.len() != algebra.len() {
            return Err(LocalError::ActionLength { expected: algebra.len(), got: action.len() });
        }
        for out in &action {
            if let Outcome::States(p) = out {
                for e in p {
                    algebra.check(e)?;
                }
            }
        }
        let verdict = is_local(&algebra, &action);
        if let Some(cx) = verdict.counterexample {
            let detail = describe(&algebra, &action, &cx);
            return Err(LocalError::NotLocal { name, detail, counterexample: cx });
        }
        Ok(LocalFunction { algebra, action, name })
    }

    pub fn from_fn(
        algebra: Arc<SeparationAlgebra>,
        name: impl Into<String>,
        mut f: impl FnMut(ElementId) -> Outcome,
    ) -> Result<Self, LocalError> {
        let action = algebra.elements().map(&mut f).collect();
        Self::new(algebra, action, name)
    }

    /// Seals a result that is local by construction, re-checking per `mode`.
    pub(crate) fn derived(
        algebra: Arc<SeparationAlgebra>,
        action: Vec<Outcome>,
        name: String,
        mode: LocalityCheck,
    ) -> Result<Self, LocalError> {
        match mode {
            LocalityCheck::Always => Self::new(algebra, action, name),
            LocalityCheck::Debug => {
                debug_assert!(is_local(&algebra, &action).holds, "`{name}` lost locality");
                Ok(LocalFunction { algebra, action, name })
            }
            LocalityCheck::Off => Ok(LocalFunction { algebra, action, name }),
        }
    }

    fn derived_debug(algebra: Arc<SeparationAlgebra>, action: Vec<Outcome>, name: String) -> Self {
        Self::derived(algebra, action, name, LocalityCheck::Debug).expect("debug sealing never fails")
    }

    pub fn algebra(&self) -> &Arc<SeparationAlgebra> {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn action(&self) -> &[Outcome] {
        &self.action
    }

    pub fn apply(&self, sigma: ElementId) -> &Outcome {
        debug_assert_eq!(sigma.algebra(), self.algebra.id());
        &self.action[sigma.index()]
    }

    /// `f(A) = ⊔_{σ∈A} f(σ)`; `Fault` maps to `Fault`.
    pub fn apply_lifted(&self, input: &Outcome) -> Outcome {
        match input {
            Outcome::Fault => Outcome::Fault,
            Outcome::States(p) => join_all(p.iter().map(|e| self.apply(e))),
        }
    }

    pub fn skip(algebra: &Arc<SeparationAlgebra>) -> Self {
        LocalFunction { algebra: algebra.clone(), action: skip_action(algebra), name: "skip".into() }
    }

    pub fn seq(&self, g: &LocalFunction) -> Self {
        self.same_algebra(g);
        let action = seq_action(&self.action, &g.action);
        Self::derived_debug(self.algebra.clone(), action, format!("seq({},{})", self.name, g.name))
    }

    pub fn choice(&self, g: &LocalFunction) -> Self {
        self.same_algebra(g);
        let action = choice_action(&self.action, &g.action);
        Self::derived_debug(self.algebra.clone(), action, format!("choice({},{})", self.name, g.name))
    }

    pub fn kstar(&self) -> Self {
        let action = kstar_action(&self.algebra, &self.action);
        Self::derived_debug(self.algebra.clone(), action, format!("star({})", self.name))
    }

    fn same_algebra(&self, g: &LocalFunction) {
        assert_eq!(self.algebra.id(), g.algebra.id(), "combinator operands come from different algebras");
    }

    /// Pointwise `self ⊑ other`.
    pub fn leq(&self, other: &LocalFunction) -> bool {
        self.action.iter().zip(&other.action).all(|(a, b)| a.leq(b))
    }

    pub fn local_limit(&self, sigma: ElementId) -> Outcome {
        local_limit(&self.algebra, &self.action, sigma)
    }

    pub fn local_limit_by(&self, set: &Predicate, sigma: ElementId) -> Outcome {
        local_limit_by(&self.algebra, &self.action, set, sigma)
    }

    pub fn is_footprint(&self, sigma: ElementId) -> bool {
        self.apply(sigma).strictly_below(&self.local_limit(sigma))
    }

    pub fn footprints(&self) -> Predicate {
        self.algebra.elements().filter(|&s| self.is_footprint(s)).collect()
    }

    pub fn safe_states(&self) -> Predicate {
        self.algebra.elements().filter(|&s| !self.apply(s).is_fault()).collect()
    }

    pub fn min_safe_states(&self) -> Predicate {
        let alg = &self.algebra;
        alg.elements()
            .filter(|&s| {
                !self.apply(s).is_fault()
                    && alg.splits(s).all(|(sub, _)| sub == s || self.apply(sub).is_fault())
            })
            .collect()
    }

    pub fn determinism_constancy(&self) -> DcVerdict {
        let alg = &self.algebra;
        for state in alg.elements() {
            let Outcome::States(out) = self.apply(state) else {
                continue;
            };
            for frame in alg.elements() {
                let whole = alg.join(frame, state).map(|w| self.apply(w));
                if framed_matches(alg, frame, out, whole) {
                    continue;
                }
                let lhs = whole.cloned().unwrap_or_else(Outcome::empty);
                let rhs = Outcome::States(alg.frame(frame, out));
                if lhs != rhs {
                    return DcVerdict {
                        holds: false,
                        counterexample: Some(DcCounterexample { frame, state, lhs, rhs }),
                    };
                }
            }
        }
        DcVerdict { holds: true, counterexample: None }
    }
}

/// `{frame} * out` equals `whole`, where `None` stands for the empty outcome.
fn framed_matches(alg: &SeparationAlgebra, frame: ElementId, out: &Predicate, whole: Option<&Outcome>) -> bool {
    let target = match whole {
        None => None,
        Some(Outcome::Fault) => return false,
        Some(Outcome::States(p)) => Some(p),
    };
    let mut count = 0;
    for o in out {
        if let Some(c) = alg.join(frame, o) {
            if !target.is_some_and(|t| t.contains(c)) {
                return false;
            }
            count += 1;
        }
    }
    count == target.map_or(0, Predicate::len)
}

/// `f({frame} * {state}) ≠ {frame} * f(state)` for a safe `state`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcCounterexample {
    pub frame: ElementId,
    pub state: ElementId,
    pub lhs: Outcome,
    pub rhs: Outcome,
}

impl DcCounterexample {
    pub fn replays(&self, f: &LocalFunction) -> bool {
        let alg = f.algebra();
        let input = Outcome::States(alg.frame(self.frame, &Predicate::singleton(self.state)));
        let lhs = f.apply_lifted(&input);
        let rhs = star(alg, &Outcome::single(self.frame), f.apply(self.state));
        !f.apply(self.state).is_fault() && lhs == self.lhs && rhs == self.rhs && lhs != rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcVerdict {
    pub holds: bool,
    pub counterexample: Option<DcCounterexample>,
}

pub fn skip_action(alg: &SeparationAlgebra) -> Vec<Outcome> {
    alg.elements().map(Outcome::single).collect()
}

pub fn seq_action(f: &[Outcome], g: &[Outcome]) -> Vec<Outcome> {
    f.iter()
        .map(|out| match out {
            Outcome::Fault => Outcome::Fault,
            Outcome::States(p) => join_all(p.iter().map(|e| &g[e.index()])),
        })
        .collect()
}

pub fn choice_action(f: &[Outcome], g: &[Outcome]) -> Vec<Outcome> {
    f.iter().zip(g).map(|(a, b)| a.join(b)).collect()
}

/// `⊔_{n≥0} fⁿ`, evaluated per state as a reachability closure: the result
/// faults when some reachable state faults, and is the reachable set otherwise.
pub fn kstar_action(alg: &SeparationAlgebra, f: &[Outcome]) -> Vec<Outcome> {
    let n = alg.len();
    let mut seen = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    alg.elements()
        .map(|start| {
            let stamp = start.index();
            let mut reached = vec![start];
            seen[stamp] = stamp;
            queue.clear();
            queue.push_back(start);
            while let Some(s) = queue.pop_front() {
                match &f[s.index()] {
                    Outcome::Fault => return Outcome::Fault,
                    Outcome::States(p) => {
                        for t in p {
                            if seen[t.index()] != stamp {
                                seen[t.index()] = stamp;
                                reached.push(t);
                                queue.push_back(t);
                            }
                        }
                    }
                }
            }
            Outcome::States(reached.into_iter().collect())
        })
        .collect()
}

/// `⊓_{σ' ≺ σ} {σ − σ'} * f(σ')`.
pub fn local_limit(alg: &SeparationAlgebra, action: &[Outcome], sigma: ElementId) -> Outcome {
    let mut acc = MeetAcc::default();
    for (sub, rest) in alg.splits(sigma) {
        if sub == sigma {
            continue;
        }
        if let Outcome::States(q) = &action[sub.index()] {
            acc.add_framed(alg, rest, q);
            if acc.is_empty_set() {
                break;
            }
        }
    }
    acc.finish()
}

/// `⊓_{σ' ⪯ σ, σ' ∈ set} {σ − σ'} * f(σ')`.
pub fn local_limit_by(
    alg: &SeparationAlgebra,
    action: &[Outcome],
    set: &Predicate,
    sigma: ElementId,
) -> Outcome {
    local_limit_where(alg, action, |e| set.contains(e), sigma)
}

pub(crate) fn local_limit_where(
    alg: &SeparationAlgebra,
    action: &[Outcome],
    in_set: impl Fn(ElementId) -> bool,
    sigma: ElementId,
) -> Outcome {
    let mut acc = MeetAcc::default();
    for (sub, rest) in alg.splits(sigma) {
        if !in_set(sub) {
            continue;
        }
        if let Outcome::States(q) = &action[sub.index()] {
            acc.add_framed(alg, rest, q);
            if acc.is_empty_set() {
                break;
            }
        }
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_plain_heap, build_zmod, ModelConfig};

    fn ph2() -> Arc<SeparationAlgebra> {
        Arc::new(build_plain_heap(&ModelConfig::plain(&[1, 2], &[7]), 4096).unwrap())
    }

    fn el(alg: &SeparationAlgebra, s: &str) -> ElementId {
        alg.lookup(s).unwrap_or_else(|| panic!("no element {s}"))
    }

    fn set(alg: &SeparationAlgebra, ls: &[&str]) -> Outcome {
        Outcome::States(ls.iter().map(|l| el(alg, l)).collect())
    }

    fn dispose1(alg: &Arc<SeparationAlgebra>) -> LocalFunction {
        let one = el(alg, "1->7");
        LocalFunction::from_fn(alg.clone(), "dispose_loc(1)", |s| match alg.sub_of(one, s) {
            Some(rest) => Outcome::single(rest),
            None => Outcome::Fault,
        })
        .unwrap()
    }

    #[test]
    fn lattice_operations() {
        let alg = ph2();
        let u = set(&alg, &["emp"]);
        assert_eq!(intersect([]), Outcome::Fault);
        assert_eq!(intersect([&Outcome::Fault, &u]), u);
        assert_eq!(join_all([&Outcome::empty(), &u]), u);
        assert_eq!(join_all([]), Outcome::empty());
        assert_eq!(join_all([&u, &Outcome::Fault]), Outcome::Fault);
        assert!(u.leq(&Outcome::Fault));
        assert!(!Outcome::Fault.leq(&u));
        assert!(Outcome::empty().strictly_below(&u));
    }

    #[test]
    fn star_on_outcomes() {
        let alg = ph2();
        let a = set(&alg, &["1->7"]);
        let b = set(&alg, &["2->7"]);
        assert_eq!(star(&alg, &a, &b), set(&alg, &["1->7 * 2->7"]));
        assert_eq!(star(&alg, &a, &a), Outcome::empty());
        assert_eq!(star(&alg, &a, &Outcome::Fault), Outcome::Fault);
    }

    #[test]
    fn dispose_local_limits() {
        let alg = ph2();
        let f = dispose1(&alg);
        assert_eq!(f.apply(el(&alg, "1->7")), &set(&alg, &["emp"]));
        assert_eq!(f.apply(alg.unit()), &Outcome::Fault);
        assert_eq!(f.local_limit(alg.unit()), Outcome::Fault);
        assert_eq!(f.local_limit(el(&alg, "1->7")), Outcome::Fault);
        assert_eq!(f.local_limit(el(&alg, "1->7 * 2->7")), set(&alg, &["2->7"]));
        assert_eq!(f.local_limit(el(&alg, "2->7")), Outcome::Fault);
        assert_eq!(f.footprints(), Predicate::singleton(el(&alg, "1->7")));
    }

    #[test]
    fn constant_unit_is_not_local() {
        let alg = ph2();
        let u = alg.unit();
        let err = LocalFunction::from_fn(alg.clone(), "const", |_| Outcome::single(u)).unwrap_err();
        let LocalError::NotLocal { counterexample, .. } = err else { panic!() };
        assert_eq!(counterexample.frame, el(&alg, "1->7"));
        assert_eq!(counterexample.core, u);
        let action: Vec<Outcome> = alg.elements().map(|_| Outcome::single(u)).collect();
        assert!(counterexample.replays(&alg, &action));
    }

    #[test]
    fn doubling_on_z3_is_not_local() {
        let alg = Arc::new(build_zmod(3).unwrap());
        let action: Vec<Outcome> =
            (0..3).map(|i| Outcome::single(el(&alg, &((2 * i) % 3).to_string()))).collect();
        let v = is_local(&alg, &action);
        assert!(!v.holds);
        assert!(v.counterexample.unwrap().replays(&alg, &action));
    }

    #[test]
    fn local_limit_by_examples() {
        let alg = Arc::new(build_zmod(3).unwrap());
        let adder = LocalFunction::from_fn(alg.clone(), "adder", |s| {
            Outcome::single(el(&alg, &((s.index() + 1) % 3).to_string()))
        })
        .unwrap();
        let zero = Predicate::singleton(el(&alg, "0"));
        assert_eq!(adder.local_limit_by(&zero, el(&alg, "2")), set(&alg, &["0"]));
        assert_eq!(adder.local_limit_by(&Predicate::empty(), el(&alg, "2")), Outcome::Fault);
        for s in alg.elements() {
            assert_eq!(&adder.local_limit_by(&alg.carrier(), s), adder.apply(s));
        }
        assert!(adder.footprints().is_empty());
        let all = set(&alg, &["0", "1", "2"]);
        for s in alg.elements() {
            assert_eq!(adder.kstar().apply(s), &all);
        }
    }

    #[test]
    fn combinator_identities() {
        let alg = ph2();
        let f = dispose1(&alg);
        let skip = LocalFunction::skip(&alg);
        assert_eq!(f.choice(&f), f);
        assert_eq!(skip.kstar(), skip);
        assert_eq!(skip.seq(&f), f);
        assert_eq!(f.seq(&skip), f);
        let ks = f.kstar();
        assert_eq!(ks, skip.choice(&f.seq(&ks)));
        assert_eq!(skip.min_safe_states(), Predicate::singleton(alg.unit()));
    }

    #[test]
    fn lifted_application() {
        let alg = ph2();
        let f = dispose1(&alg);
        assert_eq!(f.apply_lifted(&Outcome::empty()), Outcome::empty());
        assert_eq!(f.apply_lifted(&Outcome::Fault), Outcome::Fault);
        assert_eq!(f.apply_lifted(&set(&alg, &["1->7", "1->7 * 2->7"])), set(&alg, &["emp", "2->7"]));
    }
}
