//! Finite separation algebras.
//!
//! A [`SeparationAlgebra`] is a finite cancellative partial commutative monoid
//! stored as a dense composition table. Element handles ([`ElementId`]) are
//! tagged with the algebra that issued them, so a handle from one algebra is
//! rejected by every checked operation of another.
//!
//! Raw tables enter through [`CompositionTable`] and [`validate`], which checks
//! commutativity, associativity, the unit law and cancellativity exhaustively
//! and reports every violation with a replayable witness.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default hard limit on carrier size.
pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

/// Violations recorded per law before the validator stops collecting.
pub const MAX_VIOLATIONS_PER_LAW: usize = 100;

const UNDEFINED: u32 = u32::MAX;

static NEXT_ALGEBRA: AtomicU32 = AtomicU32::new(1);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u32);

/// Handle to one element of one algebra's carrier.
///
/// Handles order by (issuing algebra, insertion index); within an algebra
/// that is the construction order of the carrier.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId {
    algebra: AlgebraId,
    index: u32,
}

impl ElementId {
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn algebra(self) -> AlgebraId {
        self.algebra
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element handle #{index} was issued by a different algebra")]
    ForeignElement { index: usize },
    #[error("`{sub}` is not a substate of `{whole}`")]
    NotSubstate { sub: String, whole: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("carrier has {size} elements, above the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("composition table violates the separation algebra laws ({} violation(s))", .0.violations.len())]
    LawViolation(ValidationReport),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Structural problems with a raw table; these abort validation outright.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unit `{0}` is not in the carrier")]
    UnitNotInCarrier(String),
    #[error("table entry refers to undeclared element `{0}`")]
    UnknownLabel(String),
    #[error("conflicting table entries for `{0}` • `{1}`")]
    ConflictingEntry(String, String),
    #[error("carrier is empty")]
    EmptyCarrier,
}

/// A finite set of elements of one algebra, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Predicate(Vec<ElementId>);

impl Predicate {
    pub fn empty() -> Self {
        Predicate(Vec::new())
    }

    pub fn singleton(e: ElementId) -> Self {
        Predicate(vec![e])
    }

    /// Builds from a vector that is already sorted and free of duplicates.
    pub(crate) fn from_sorted(v: Vec<ElementId>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Predicate(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = ElementId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    pub fn is_subset(&self, other: &Predicate) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for e in &self.0 {
            for o in it.by_ref() {
                match o.cmp(e) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &Predicate) -> Predicate {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Predicate(out)
    }

    pub fn intersection(&self, other: &Predicate) -> Predicate {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len().min(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Predicate(out)
    }

    pub fn difference(&self, other: &Predicate) -> Predicate {
        Predicate(self.0.iter().copied().filter(|e| !other.contains(*e)).collect())
    }

    pub fn without(&self, e: ElementId) -> Predicate {
        Predicate(self.0.iter().copied().filter(|x| *x != e).collect())
    }

    pub(crate) fn retain(&mut self, keep: impl FnMut(&ElementId) -> bool) {
        self.0.retain(keep);
    }
}

impl FromIterator<ElementId> for Predicate {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut v: Vec<ElementId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Predicate(v)
    }
}

impl<'a> IntoIterator for &'a Predicate {
    type Item = ElementId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, ElementId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Raw, unvalidated composition table over string labels.
///
/// Pairs missing from `entries` are undefined. Entries are not symmetrised:
/// listing `a • b` without `b • a` is a commutativity violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionTable {
    pub elements: Vec<String>,
    pub unit: String,
    #[serde(default)]
    pub entries: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Commutativity,
    Associativity,
    Unit,
    Cancellativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Unit => "unit",
            Law::Cancellativity => "cancellativity",
        };
        f.write_str(s)
    }
}

/// One failed law instance. Witness shapes:
/// commutativity `(a, b)`, associativity `(a, b, c)`, unit `(a)`,
/// cancellativity `(a, b1, b2)` with `a•b1 = a•b2`, `b1 ≠ b2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<String>,
}

impl Violation {
    /// Re-evaluates the law on the witness directly against the raw table.
    /// Returns true when the violation reproduces.
    pub fn replays(&self, table: &CompositionTable) -> bool {
        let mut map: HashMap<(&str, &str), &str> = HashMap::new();
        for (a, b, c) in &table.entries {
            map.insert((a.as_str(), b.as_str()), c.as_str());
        }
        let op = |a: &str, b: &str| map.get(&(a, b)).copied();
        let op2 = |a: Option<&str>, b: Option<&str>| match (a, b) {
            (Some(a), Some(b)) => op(a, b),
            _ => None,
        };
        let w: Vec<&str> = self.witness.iter().map(String::as_str).collect();
        match (self.law, w.as_slice()) {
            (Law::Commutativity, [a, b]) => op(a, b) != op(b, a),
            (Law::Associativity, [a, b, c]) => {
                op2(Some(a), op(b, c)) != op2(op(a, b), Some(c))
            }
            (Law::Unit, [a]) => {
                op(&table.unit, a) != Some(*a) || op(a, &table.unit) != Some(*a)
            }
            (Law::Cancellativity, [a, b1, b2]) => {
                b1 != b2 && op(a, b1).is_some() && op(a, b1) == op(a, b2)
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

struct ResolvedTable {
    n: usize,
    unit: u32,
    table: Vec<u32>,
}

fn resolve(table: &CompositionTable) -> Result<ResolvedTable, TableError> {
    if table.elements.is_empty() {
        return Err(TableError::EmptyCarrier);
    }
    let mut index: HashMap<&str, u32> = HashMap::with_capacity(table.elements.len());
    for (i, label) in table.elements.iter().enumerate() {
        if index.insert(label.as_str(), i as u32).is_some() {
            return Err(TableError::DuplicateLabel(label.clone()));
        }
    }
    let unit = *index
        .get(table.unit.as_str())
        .ok_or_else(|| TableError::UnitNotInCarrier(table.unit.clone()))?;
    let n = table.elements.len();
    let lookup = |s: &String| {
        index
            .get(s.as_str())
            .copied()
            .ok_or_else(|| TableError::UnknownLabel(s.clone()))
    };
    let mut dense = vec![UNDEFINED; n * n];
    for (a, b, c) in &table.entries {
        let (ia, ib, ic) = (lookup(a)?, lookup(b)?, lookup(c)?);
        let slot = &mut dense[ia as usize * n + ib as usize];
        if *slot != UNDEFINED && *slot != ic {
            return Err(TableError::ConflictingEntry(a.clone(), b.clone()));
        }
        *slot = ic;
    }
    Ok(ResolvedTable { n, unit, table: dense })
}

fn check_laws(t: &ResolvedTable) -> Vec<(Law, Vec<u32>)> {
    let n = t.n;
    let op = |a: u32, b: u32| -> Option<u32> {
        let r = t.table[a as usize * n + b as usize];
        (r != UNDEFINED).then_some(r)
    };
    let mut out: BTreeMap<Law, Vec<Vec<u32>>> = BTreeMap::new();
    let mut push = |law: Law, w: Vec<u32>| {
        let v = out.entry(law).or_default();
        if v.len() < MAX_VIOLATIONS_PER_LAW {
            v.push(w);
        }
    };
    let n32 = n as u32;

    for a in 0..n32 {
        for b in a + 1..n32 {
            if op(a, b) != op(b, a) {
                push(Law::Commutativity, vec![a, b]);
            }
        }
    }

    for a in 0..n32 {
        if op(t.unit, a) != Some(a) || op(a, t.unit) != Some(a) {
            push(Law::Unit, vec![a]);
        }
    }

    // Every triple where either bracketing is defined is visited from the
    // defined side, so the sparse scan is exhaustive.
    let rows: Vec<Vec<(u32, u32)>> = (0..n32)
        .map(|a| (0..n32).filter_map(|b| op(a, b).map(|c| (b, c))).collect())
        .collect();
    let mut seen = std::collections::HashSet::new();
    for a in 0..n32 {
        for &(b, ab) in &rows[a as usize] {
            for &(c, abc) in &rows[ab as usize] {
                let rhs = op(b, c).and_then(|bc| op(a, bc));
                if rhs != Some(abc) && seen.insert((a, b, c)) {
                    push(Law::Associativity, vec![a, b, c]);
                }
            }
        }
    }
    for b in 0..n32 {
        for &(c, bc) in &rows[b as usize] {
            for a in 0..n32 {
                if let Some(abc) = op(a, bc) {
                    let lhs = op(a, b).and_then(|ab| op(ab, c));
                    if lhs != Some(abc) && seen.insert((a, b, c)) {
                        push(Law::Associativity, vec![a, b, c]);
                    }
                }
            }
        }
    }

    for a in 0..n32 {
        let mut first: HashMap<u32, u32> = HashMap::new();
        for &(b, c) in &rows[a as usize] {
            if let Some(&b1) = first.get(&c) {
                push(Law::Cancellativity, vec![a, b1, b]);
            } else {
                first.insert(c, b);
            }
        }
    }

    out.into_iter()
        .flat_map(|(law, ws)| ws.into_iter().map(move |w| (law, w)))
        .collect()
}

/// Exhaustively checks the separation algebra laws on a raw table.
pub fn validate(table: &CompositionTable) -> Result<ValidationReport, TableError> {
    let resolved = resolve(table)?;
    let violations: Vec<Violation> = check_laws(&resolved)
        .into_iter()
        .map(|(law, w)| Violation {
            law,
            witness: w.iter().map(|&i| table.elements[i as usize].clone()).collect(),
        })
        .collect();
    Ok(ValidationReport { passed: violations.is_empty(), violations })
}

/// Outcome of the well-foundedness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellFoundedness {
    pub well_founded: bool,
    /// A closed walk `e0 ≺ e1 ≺ … ≺ e0` (first and last entries equal).
    pub cycle: Option<Vec<ElementId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionVerdict {
    pub precise: bool,
    /// `(σ, σp1, σp2)`: two distinct members of the predicate below `σ`.
    pub witness: Option<(ElementId, ElementId, ElementId)>,
}

/// A sealed, validated finite separation algebra.
pub struct SeparationAlgebra {
    id: AlgebraId,
    labels: Vec<String>,
    label_index: HashMap<String, u32>,
    unit: u32,
    table: Vec<u32>,
    /// For each σ: every `(sub, rest)` with `sub • rest = σ`, sorted by `sub`.
    splits: Vec<Vec<(u32, u32)>>,
    origin: String,
}

impl fmt::Debug for SeparationAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeparationAlgebra")
            .field("origin", &self.origin)
            .field("size", &self.len())
            .field("unit", &self.labels[self.unit as usize])
            .finish()
    }
}

impl SeparationAlgebra {
    /// Validates `table` and seals it. Law violations are returned as
    /// [`AlgebraError::LawViolation`] carrying the full report.
    pub fn from_table(table: &CompositionTable, max_elements: usize) -> Result<Self, AlgebraError> {
        if table.elements.len() > max_elements {
            return Err(AlgebraError::TooLarge { size: table.elements.len(), limit: max_elements });
        }
        let resolved = resolve(table)?;
        let report = validate(table)?;
        if !report.passed {
            return Err(AlgebraError::LawViolation(report));
        }
        let origin = table.origin.clone().unwrap_or_else(|| "composition table".to_string());
        Ok(Self::seal(table.elements.clone(), resolved.unit, resolved.table, origin))
    }

    /// Seals a table the caller guarantees to be lawful (model builders).
    pub(crate) fn from_trusted(labels: Vec<String>, unit: u32, table: Vec<u32>, origin: String) -> Self {
        Self::seal(labels, unit, table, origin)
    }

    fn seal(labels: Vec<String>, unit: u32, table: Vec<u32>, origin: String) -> Self {
        let n = labels.len();
        debug_assert_eq!(table.len(), n * n);
        let mut splits: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                let c = table[a * n + b];
                if c != UNDEFINED {
                    splits[c as usize].push((a as u32, b as u32));
                }
            }
        }
        // rows are generated in `a` order already; keep the invariant explicit
        for s in &mut splits {
            s.sort_unstable();
        }
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        let id = AlgebraId(NEXT_ALGEBRA.fetch_add(1, Ordering::Relaxed));
        SeparationAlgebra { id, labels, label_index, unit, table, splits, origin }
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn unit(&self) -> ElementId {
        self.element(self.unit as usize)
    }

    pub(crate) fn element(&self, index: usize) -> ElementId {
        debug_assert!(index < self.len());
        ElementId { algebra: self.id, index: index as u32 }
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = ElementId> + '_ {
        (0..self.len()).map(move |i| self.element(i))
    }

    /// The whole carrier as a predicate.
    pub fn carrier(&self) -> Predicate {
        Predicate::from_sorted(self.elements().collect())
    }

    pub fn label(&self, e: ElementId) -> &str {
        debug_assert_eq!(e.algebra, self.id);
        &self.labels[e.index()]
    }

    pub fn labels_of<'a>(&'a self, p: &'a Predicate) -> impl Iterator<Item = &'a str> + 'a {
        p.iter().map(move |e| self.label(e))
    }

    pub fn lookup(&self, label: &str) -> Option<ElementId> {
        self.label_index.get(label).map(|&i| self.element(i as usize))
    }

    pub fn require(&self, label: &str) -> Result<ElementId, AlgebraError> {
        self.lookup(label).ok_or_else(|| AlgebraError::UnknownElement(label.to_string()))
    }

    pub fn check(&self, e: ElementId) -> Result<ElementId, AlgebraError> {
        if e.algebra == self.id && e.index() < self.len() {
            Ok(e)
        } else {
            Err(AlgebraError::ForeignElement { index: e.index() })
        }
    }

    pub fn owns(&self, p: &Predicate) -> bool {
        p.iter().all(|e| e.algebra == self.id)
    }

    /// Unchecked composition for internal loops.
    #[inline]
    pub(crate) fn join(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        debug_assert!(a.algebra == self.id && b.algebra == self.id);
        let r = self.table[a.index() * self.len() + b.index()];
        (r != UNDEFINED).then_some(ElementId { algebra: self.id, index: r })
    }

    /// All `(sub, sub's complement)` pairs below `σ`, including `(σ, u)`.
    pub(crate) fn splits(&self, sigma: ElementId) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.splits[sigma.index()]
            .iter()
            .map(move |&(s, r)| (self.element(s as usize), self.element(r as usize)))
    }

    /// Number of defined compositions, i.e. the total size of all split lists.
    pub fn defined_pairs(&self) -> usize {
        self.splits.iter().map(Vec::len).sum()
    }

    pub fn compose(&self, a: ElementId, b: ElementId) -> Result<Option<ElementId>, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.join(a, b))
    }

    /// `a # b`.
    pub fn separate(&self, a: ElementId, b: ElementId) -> Result<bool, AlgebraError> {
        Ok(self.compose(a, b)?.is_some())
    }

    /// `a ⪯ b`.
    pub fn is_substate(&self, a: ElementId, b: ElementId) -> Result<bool, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_of(a, b).is_some())
    }

    /// `a ≺ b`.
    pub fn is_strict_substate(&self, a: ElementId, b: ElementId) -> Result<bool, AlgebraError> {
        Ok(a != b && self.is_substate(a, b)?)
    }

    pub(crate) fn sub_of(&self, sub: ElementId, whole: ElementId) -> Option<ElementId> {
        let list = &self.splits[whole.index()];
        list.binary_search_by_key(&(sub.index() as u32), |&(s, _)| s)
            .ok()
            .map(|i| self.element(list[i].1 as usize))
    }

    /// `{σ' | ∃δ. σ' • δ = σ}`.
    pub fn substates(&self, sigma: ElementId) -> Result<Predicate, AlgebraError> {
        self.check(sigma)?;
        Ok(Predicate::from_sorted(self.splits(sigma).map(|(s, _)| s).collect()))
    }

    pub fn strict_substates(&self, sigma: ElementId) -> Result<Predicate, AlgebraError> {
        Ok(self.substates(sigma)?.without(sigma))
    }

    /// `whole − sub`: the unique `δ` with `δ • sub = whole`.
    pub fn subtract(&self, whole: ElementId, sub: ElementId) -> Result<ElementId, AlgebraError> {
        self.check(whole)?;
        self.check(sub)?;
        self.sub_of(sub, whole).ok_or_else(|| AlgebraError::NotSubstate {
            sub: self.label(sub).to_string(),
            whole: self.label(whole).to_string(),
        })
    }

    /// First `(σ, σ')` in carrier order with `σ ≠ u` and `σ • σ' = u`.
    pub fn negativity_witness(&self) -> Option<(ElementId, ElementId)> {
        let u = self.unit();
        self.splits(u).find(|&(s, _)| s != u)
    }

    pub fn well_foundedness(&self) -> WellFoundedness {
        // Edges a -> b for a ≺ b; a cycle exists iff ≺ is not well-founded.
        let n = self.len();
        let mut succ: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (b, list) in self.splits.iter().enumerate() {
            for &(a, _) in list {
                if a as usize != b {
                    succ[a as usize].push(b as u32);
                }
            }
        }
        for s in &mut succ {
            s.sort_unstable();
        }
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut mark = vec![Mark::New; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            let mut path: Vec<u32> = vec![root as u32];
            let mut cursor: Vec<usize> = vec![0];
            mark[root] = Mark::Open;
            while let Some(&top) = path.last() {
                let depth = path.len() - 1;
                let next = succ[top as usize].get(cursor[depth]).copied();
                cursor[depth] += 1;
                match next {
                    None => {
                        mark[top as usize] = Mark::Done;
                        path.pop();
                        cursor.pop();
                    }
                    Some(v) => match mark[v as usize] {
                        Mark::Open => {
                            let start = path.iter().position(|&p| p == v).unwrap();
                            let mut cycle: Vec<ElementId> =
                                path[start..].iter().map(|&i| self.element(i as usize)).collect();
                            cycle.push(self.element(v as usize));
                            return WellFoundedness { well_founded: false, cycle: Some(cycle) };
                        }
                        Mark::New => {
                            mark[v as usize] = Mark::Open;
                            path.push(v);
                            cursor.push(0);
                        }
                        Mark::Done => {}
                    },
                }
            }
        }
        WellFoundedness { well_founded: true, cycle: None }
    }

    pub fn is_well_founded(&self) -> bool {
        self.well_foundedness().well_founded
    }

    pub fn precision(&self, p: &Predicate) -> PrecisionVerdict {
        for sigma in self.elements() {
            let mut below = self.splits(sigma).map(|(s, _)| s).filter(|s| p.contains(*s));
            if let (Some(a), Some(b)) = (below.next(), below.next()) {
                return PrecisionVerdict { precise: false, witness: Some((sigma, a, b)) };
            }
        }
        PrecisionVerdict { precise: true, witness: None }
    }

    pub fn is_precise(&self, p: &Predicate) -> bool {
        self.precision(p).precise
    }

    /// `p * q` on predicates.
    pub fn star(&self, p: &Predicate, q: &Predicate) -> Predicate {
        p.iter()
            .flat_map(|a| q.iter().filter_map(move |b| self.join(a, b)))
            .collect()
    }

    /// `{a} * q`.
    pub fn frame(&self, a: ElementId, q: &Predicate) -> Predicate {
        q.iter().filter_map(|b| self.join(a, b)).collect()
    }

    /// Exports the sealed table in raw form (for re-validation and serialization).
    pub fn to_table(&self) -> CompositionTable {
        let mut entries = Vec::with_capacity(self.defined_pairs());
        for a in self.elements() {
            for b in self.elements() {
                if let Some(c) = self.join(a, b) {
                    entries.push((
                        self.label(a).to_string(),
                        self.label(b).to_string(),
                        self.label(c).to_string(),
                    ));
                }
            }
        }
        CompositionTable {
            elements: self.labels.clone(),
            unit: self.labels[self.unit as usize].clone(),
            entries,
            origin: Some(self.origin.clone()),
        }
    }
}
