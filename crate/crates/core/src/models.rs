//! Concrete separation algebras: plain heaps, heaps with a variable stack,
//! heaps with an explicit free set, and integers modulo `n`, together with
//! their primitive commands.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ElementId, Predicate, SeparationAlgebra};
use crate::local::{is_local, LocalError, LocalFunction, Outcome};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub locations: Vec<i64>,
    pub values: Vec<i64>,
    #[serde(default)]
    pub variables: Vec<String>,
}

impl ModelConfig {
    pub fn plain(locations: &[i64], values: &[i64]) -> Self {
        ModelConfig { locations: locations.to_vec(), values: values.to_vec(), variables: Vec::new() }
    }

    pub fn with_stack(variables: &[&str], locations: &[i64], values: &[i64]) -> Self {
        ModelConfig {
            locations: locations.to_vec(),
            values: values.to_vec(),
            variables: variables.iter().map(|v| v.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid model configuration: {0}")]
    InvalidConfig(String),
    #[error("model would have {size} elements, above the limit of {limit}")]
    TooLarge { size: u128, limit: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown location {0}")]
    UnknownLocation(i64),
    #[error("value {0} is not in the model's value set")]
    UnknownValue(i64),
    #[error("command `{command}` is not available in the {model} model")]
    KindMismatch { command: String, model: String },
    #[error(transparent)]
    NotLocal(#[from] LocalError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    PlainHeap,
    StackHeap,
    FreesetHeap,
    Zmod,
    Table,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::PlainHeap => "plain_heap",
            ModelKind::StackHeap => "stack_heap",
            ModelKind::FreesetHeap => "freeset_heap",
            ModelKind::Zmod => "zmod",
            ModelKind::Table => "table",
        })
    }
}

/// Primitive command descriptors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    DisposeLoc(i64),
    New(String),
    Dispose(String),
    Mutate(String, i64),
    Lookup(String, String),
    Adder(i64),
    Multiplier(i64),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::DisposeLoc(l) => write!(f, "dispose_loc({l})"),
            Command::New(x) => write!(f, "new({x})"),
            Command::Dispose(x) => write!(f, "dispose({x})"),
            Command::Mutate(x, v) => write!(f, "mutate({x},{v})"),
            Command::Lookup(x, y) => write!(f, "lookup({x},{y})"),
            Command::Adder(c) => write!(f, "adder({c})"),
            Command::Multiplier(c) => write!(f, "multiplier({c})"),
        }
    }
}

/// A heap-model state: stack, heap cells, and an optional free set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HeapState {
    pub stack: BTreeMap<String, i64>,
    pub heap: BTreeMap<i64, i64>,
    pub free: Option<BTreeSet<i64>>,
}

impl HeapState {
    pub fn emp() -> Self {
        HeapState::default()
    }

    pub fn var(mut self, x: &str, v: i64) -> Self {
        self.stack.insert(x.to_string(), v);
        self
    }

    pub fn cell(mut self, l: i64, v: i64) -> Self {
        self.heap.insert(l, v);
        self
    }

    pub fn free(mut self, locs: impl IntoIterator<Item = i64>) -> Self {
        self.free = Some(locs.into_iter().collect());
        self
    }
}

impl fmt::Display for HeapState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        parts.extend(self.stack.iter().map(|(x, v)| format!("{x}->{v}")));
        parts.extend(self.heap.iter().map(|(l, v)| format!("{l}->{v}")));
        if let Some(fs) = &self.free {
            let items: Vec<String> = fs.iter().map(i64::to_string).collect();
            parts.push(format!("F{{{}}}", items.join(",")));
        }
        if parts.is_empty() {
            f.write_str("emp")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

const ABSENT: u8 = 0;

/// Slot encoding of a heap state: `0` is absent, `1 + i` is `values[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Slots {
    vars: Vec<u8>,
    locs: Vec<u8>,
    free: Option<u32>,
}

struct HeapLayout {
    kind: ModelKind,
    cfg: ModelConfig,
    states: Vec<Slots>,
    index: HashMap<Slots, u32>,
    /// `loc_value[li]` is the value index of `locations[li]`.
    loc_value: Vec<u8>,
}

impl HeapLayout {
    fn value_index(&self, v: i64) -> Option<u8> {
        self.cfg.values.iter().position(|&x| x == v).map(|i| i as u8)
    }

    fn var_index(&self, x: &str) -> Result<usize, ModelError> {
        self.cfg
            .variables
            .iter()
            .position(|v| v == x)
            .ok_or_else(|| ModelError::UnknownVariable(x.to_string()))
    }

    /// Location index stored in a variable slot, if its value is an address.
    fn address(&self, slot: u8) -> Option<usize> {
        if slot == ABSENT {
            return None;
        }
        let v = self.cfg.values[slot as usize - 1];
        self.cfg.locations.iter().position(|&l| l == v)
    }

    fn decode(&self, s: &Slots) -> HeapState {
        let mut st = HeapState::emp();
        for (i, &slot) in s.vars.iter().enumerate() {
            if slot != ABSENT {
                st.stack.insert(self.cfg.variables[i].clone(), self.cfg.values[slot as usize - 1]);
            }
        }
        for (i, &slot) in s.locs.iter().enumerate() {
            if slot != ABSENT {
                st.heap.insert(self.cfg.locations[i], self.cfg.values[slot as usize - 1]);
            }
        }
        st.free = s.free.map(|mask| {
            (0..self.cfg.locations.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.cfg.locations[i])
                .collect()
        });
        st
    }

    fn encode(&self, st: &HeapState) -> Option<Slots> {
        let mut vars = vec![ABSENT; self.cfg.variables.len()];
        for (x, &v) in &st.stack {
            let i = self.cfg.variables.iter().position(|y| y == x)?;
            vars[i] = self.value_index(v)? + 1;
        }
        let mut locs = vec![ABSENT; self.cfg.locations.len()];
        for (&l, &v) in &st.heap {
            let i = self.cfg.locations.iter().position(|&y| y == l)?;
            locs[i] = self.value_index(v)? + 1;
        }
        let free = match &st.free {
            None => None,
            Some(fs) => {
                let mut mask = 0u32;
                for l in fs {
                    mask |= 1 << self.cfg.locations.iter().position(|y| y == l)?;
                }
                Some(mask)
            }
        };
        Some(Slots { vars, locs, free })
    }

    fn id(&self, alg: &SeparationAlgebra, s: &Slots) -> ElementId {
        alg.element(self.index[s] as usize)
    }
}

fn check_config(cfg: &ModelConfig, kind: ModelKind) -> Result<(), ModelError> {
    let bad = |m: &str| Err(ModelError::InvalidConfig(m.to_string()));
    if cfg.locations.is_empty() {
        return bad("locations must be nonempty");
    }
    if cfg.values.is_empty() {
        return bad("values must be nonempty");
    }
    if cfg.locations.len() > 16 {
        return bad("at most 16 locations are supported");
    }
    if cfg.values.len() > 250 {
        return bad("at most 250 values are supported");
    }
    if cfg.variables.len() > 32 {
        return bad("at most 32 variables are supported");
    }
    let distinct = |n: usize, m: usize| n == m;
    if !distinct(cfg.locations.iter().collect::<BTreeSet<_>>().len(), cfg.locations.len()) {
        return bad("duplicate location");
    }
    if !distinct(cfg.values.iter().collect::<BTreeSet<_>>().len(), cfg.values.len()) {
        return bad("duplicate value");
    }
    if !distinct(cfg.variables.iter().collect::<BTreeSet<_>>().len(), cfg.variables.len()) {
        return bad("duplicate variable");
    }
    if cfg.variables.iter().any(|v| v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || v.starts_with(|c: char| c.is_ascii_digit()) || v == "F" || v == "emp") {
        return bad("variable names must be identifiers other than `F` and `emp`");
    }
    match kind {
        ModelKind::PlainHeap => {
            if !cfg.variables.is_empty() {
                return bad("the plain heap model has no variables");
            }
        }
        _ => {
            if !cfg.locations.iter().all(|l| cfg.values.contains(l)) {
                return bad("values must include every location");
            }
        }
    }
    Ok(())
}

fn expected_size(cfg: &ModelConfig, kind: ModelKind) -> u128 {
    let nv = cfg.values.len() as u128;
    let k = cfg.variables.len() as u32;
    let m = cfg.locations.len() as u32;
    let pow = |b: u128, e: u32| b.checked_pow(e).unwrap_or(u128::MAX);
    let base = pow(nv + 1, k).saturating_mul(pow(nv + 1, m));
    match kind {
        ModelKind::FreesetHeap => pow(nv + 1, k).saturating_mul(pow(nv + 1, m).saturating_add(pow(nv + 2, m))),
        _ => base,
    }
}

/// Ordering key: fewer components first, then slot-wise with absent last.
fn order_key(s: &Slots) -> (usize, Vec<u32>) {
    let count = s.vars.iter().chain(&s.locs).filter(|&&x| x != ABSENT).count() + s.free.is_some() as usize;
    let mut key: Vec<u32> = s
        .vars
        .iter()
        .chain(&s.locs)
        .map(|&x| if x == ABSENT { u32::MAX } else { x as u32 })
        .collect();
    key.push(s.free.unwrap_or(u32::MAX));
    (count, key)
}

fn enumerate_slots(width: usize, nv: u8) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::with_capacity(width)];
    for _ in 0..width {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=nv).map(move |d| {
                    let mut p = prefix.clone();
                    p.push(d);
                    p
                })
            })
            .collect();
    }
    out
}

fn build_heap(cfg: &ModelConfig, kind: ModelKind, limit: usize) -> Result<(SeparationAlgebra, HeapLayout), ModelError> {
    check_config(cfg, kind)?;
    let size = expected_size(cfg, kind);
    if size > limit as u128 {
        return Err(ModelError::TooLarge { size, limit });
    }
    let nv = cfg.values.len() as u8;
    let m = cfg.locations.len();
    let var_parts = enumerate_slots(cfg.variables.len(), nv);
    let loc_parts = enumerate_slots(m, nv);
    let mut states = Vec::with_capacity(size as usize);
    for vars in &var_parts {
        for locs in &loc_parts {
            states.push(Slots { vars: vars.clone(), locs: locs.clone(), free: None });
            if kind == ModelKind::FreesetHeap {
                let occupied: u32 = locs.iter().enumerate().filter(|(_, &x)| x != ABSENT).map(|(i, _)| 1 << i).sum();
                for mask in 0..(1u32 << m) {
                    if mask & occupied == 0 {
                        states.push(Slots { vars: vars.clone(), locs: locs.clone(), free: Some(mask) });
                    }
                }
            }
        }
    }
    debug_assert_eq!(states.len() as u128, size);
    states.sort_by_cached_key(order_key);

    let n = states.len();
    let index: HashMap<Slots, u32> = states.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();

    // Disjoint states compose by slot-wise sum, so a mixed-radix code of the
    // composite is the sum of the operands' codes.
    let radix = nv as u64 + 1;
    let free_radix = (1u64 << m) + 1;
    let code = |s: &Slots| -> u64 {
        let mut c = 0u64;
        for &d in s.vars.iter().chain(&s.locs) {
            c = c * radix + d as u64;
        }
        c * free_radix + s.free.map_or(0, |f| f as u64 + 1)
    };
    let codes: Vec<u64> = states.iter().map(code).collect();
    let by_code: HashMap<u64, u32> = codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let masks: Vec<(u64, u32, Option<u32>)> = states
        .iter()
        .map(|s| {
            let vm = s.vars.iter().enumerate().filter(|(_, &x)| x != ABSENT).map(|(i, _)| 1u64 << i).sum();
            let lm = s.locs.iter().enumerate().filter(|(_, &x)| x != ABSENT).map(|(i, _)| 1u32 << i).sum();
            (vm, lm, s.free)
        })
        .collect();
    let mut table = vec![u32::MAX; n * n];
    for a in 0..n {
        let (va, la, fa) = masks[a];
        for b in 0..n {
            let (vb, lb, fb) = masks[b];
            if va & vb != 0 || la & lb != 0 {
                continue;
            }
            let free = match (fa, fb) {
                (Some(_), Some(_)) => continue,
                (Some(f), None) | (None, Some(f)) => Some(f),
                (None, None) => None,
            };
            if free.is_some_and(|f| f & (la | lb) != 0) {
                continue;
            }
            table[a * n + b] = by_code[&(codes[a] + codes[b])];
        }
    }

    let loc_value = cfg
        .locations
        .iter()
        .map(|l| cfg.values.iter().position(|v| v == l).map_or(u8::MAX, |i| i as u8))
        .collect();
    let layout = HeapLayout { kind, cfg: cfg.clone(), states, index, loc_value };
    let labels: Vec<String> = layout.states.iter().map(|s| layout.decode(s).to_string()).collect();
    let unit = layout.index[&Slots { vars: vec![ABSENT; cfg.variables.len()], locs: vec![ABSENT; m], free: None }];
    let origin = match kind {
        ModelKind::PlainHeap => format!("plain heap L={:?} Val={:?}", cfg.locations, cfg.values),
        ModelKind::StackHeap => format!("stack and heap Var={:?} L={:?} Val={:?}", cfg.variables, cfg.locations, cfg.values),
        _ => format!("heap with free set Var={:?} L={:?} Val={:?}", cfg.variables, cfg.locations, cfg.values),
    };
    let alg = SeparationAlgebra::from_trusted(labels, unit, table, origin);
    Ok((alg, layout))
}

pub fn build_plain_heap(cfg: &ModelConfig, limit: usize) -> Result<SeparationAlgebra, ModelError> {
    build_heap(cfg, ModelKind::PlainHeap, limit).map(|(a, _)| a)
}

pub fn build_stack_heap(cfg: &ModelConfig, limit: usize) -> Result<SeparationAlgebra, ModelError> {
    build_heap(cfg, ModelKind::StackHeap, limit).map(|(a, _)| a)
}

pub fn build_freeset_heap(cfg: &ModelConfig, limit: usize) -> Result<SeparationAlgebra, ModelError> {
    build_heap(cfg, ModelKind::FreesetHeap, limit).map(|(a, _)| a)
}

pub fn build_zmod(n: usize) -> Result<SeparationAlgebra, ModelError> {
    if n < 2 {
        return Err(ModelError::InvalidConfig(format!("modulus must be at least 2, got {n}")));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    Ok(SeparationAlgebra::from_trusted(labels, 0, table, format!("integers mod {n}")))
}

/// A sealed algebra together with the knowledge needed to build its commands.
pub struct Model {
    kind: ModelKind,
    algebra: Arc<SeparationAlgebra>,
    heap: Option<HeapLayout>,
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Model").field("kind", &self.kind).field("algebra", &self.algebra).finish()
    }
}

impl Model {
    pub fn plain_heap(cfg: &ModelConfig, limit: usize) -> Result<Self, ModelError> {
        Self::heap_model(cfg, ModelKind::PlainHeap, limit)
    }

    pub fn stack_heap(cfg: &ModelConfig, limit: usize) -> Result<Self, ModelError> {
        Self::heap_model(cfg, ModelKind::StackHeap, limit)
    }

    pub fn freeset_heap(cfg: &ModelConfig, limit: usize) -> Result<Self, ModelError> {
        Self::heap_model(cfg, ModelKind::FreesetHeap, limit)
    }

    fn heap_model(cfg: &ModelConfig, kind: ModelKind, limit: usize) -> Result<Self, ModelError> {
        let (alg, layout) = build_heap(cfg, kind, limit)?;
        Ok(Model { kind, algebra: Arc::new(alg), heap: Some(layout) })
    }

    pub fn zmod(n: usize) -> Result<Self, ModelError> {
        Ok(Model { kind: ModelKind::Zmod, algebra: Arc::new(build_zmod(n)?), heap: None })
    }

    pub fn table(algebra: SeparationAlgebra) -> Self {
        Model { kind: ModelKind::Table, algebra: Arc::new(algebra), heap: None }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn algebra(&self) -> &Arc<SeparationAlgebra> {
        &self.algebra
    }

    pub fn config(&self) -> Option<&ModelConfig> {
        self.heap.as_ref().map(|h| &h.cfg)
    }

    /// Handle of a heap state, if it belongs to this model's carrier.
    pub fn state(&self, st: &HeapState) -> Option<ElementId> {
        let h = self.heap.as_ref()?;
        let slots = h.encode(st)?;
        h.index.get(&slots).map(|&i| self.algebra.element(i as usize))
    }

    pub fn heap_state(&self, e: ElementId) -> Option<HeapState> {
        let h = self.heap.as_ref()?;
        self.algebra.check(e).ok()?;
        Some(h.decode(&h.states[e.index()]))
    }

    /// All carrier states satisfying a condition, as a predicate.
    pub fn states_where(&self, mut cond: impl FnMut(&HeapState) -> bool) -> Predicate {
        self.algebra
            .elements()
            .filter(|&e| self.heap_state(e).is_some_and(|st| cond(&st)))
            .collect()
    }

    /// The command's action table without a locality check.
    pub fn primitive_action(&self, cmd: &Command) -> Result<Vec<Outcome>, ModelError> {
        let mismatch = || ModelError::KindMismatch { command: cmd.to_string(), model: self.kind.to_string() };
        match (cmd, self.kind) {
            (Command::Adder(c) | Command::Multiplier(c), ModelKind::Zmod) => {
                let n = self.algebra.len() as i64;
                let mul = matches!(cmd, Command::Multiplier(_));
                Ok(self
                    .algebra
                    .elements()
                    .map(|e| {
                        let x = e.index() as i64;
                        let y = if mul { (c * x).rem_euclid(n) } else { (x + c).rem_euclid(n) };
                        Outcome::single(self.algebra.element(y as usize))
                    })
                    .collect())
            }
            (Command::Adder(_) | Command::Multiplier(_), _) => Err(mismatch()),
            (Command::DisposeLoc(l), ModelKind::PlainHeap) => {
                let h = self.heap.as_ref().expect("heap model");
                let li = h.cfg.locations.iter().position(|x| x == l).ok_or(ModelError::UnknownLocation(*l))?;
                Ok(self.map_states(h, |s| {
                    if s.locs[li] == ABSENT {
                        return None;
                    }
                    let mut out = s.clone();
                    out.locs[li] = ABSENT;
                    Some(vec![out])
                }))
            }
            (Command::DisposeLoc(_), _) => Err(mismatch()),
            (_, ModelKind::StackHeap | ModelKind::FreesetHeap) => {
                let h = self.heap.as_ref().expect("heap model");
                self.stack_command(h, cmd)
            }
            _ => Err(mismatch()),
        }
    }

    /// The sealed primitive; fails with [`ModelError::NotLocal`] for non-local commands.
    pub fn primitive(&self, cmd: &Command) -> Result<LocalFunction, ModelError> {
        let action = self.primitive_action(cmd)?;
        Ok(LocalFunction::new(self.algebra.clone(), action, cmd.to_string())?)
    }

    /// Locality verdict of a command, without sealing it.
    pub fn primitive_is_local(&self, cmd: &Command) -> Result<bool, ModelError> {
        Ok(is_local(&self.algebra, &self.primitive_action(cmd)?).holds)
    }

    fn map_states(&self, h: &HeapLayout, mut f: impl FnMut(&Slots) -> Option<Vec<Slots>>) -> Vec<Outcome> {
        h.states
            .iter()
            .map(|s| match f(s) {
                None => Outcome::Fault,
                Some(outs) => Outcome::States(outs.iter().map(|o| h.id(&self.algebra, o)).collect()),
            })
            .collect()
    }

    fn stack_command(&self, h: &HeapLayout, cmd: &Command) -> Result<Vec<Outcome>, ModelError> {
        let freeset = h.kind == ModelKind::FreesetHeap;
        let nv = h.cfg.values.len() as u8;
        let m = h.cfg.locations.len();
        let action = match cmd {
            Command::New(x) => {
                let xi = h.var_index(x)?;
                self.map_states(h, |s| {
                    if s.vars[xi] == ABSENT {
                        return None;
                    }
                    let candidates: Vec<usize> = match (freeset, s.free) {
                        (true, None) => return None,
                        (true, Some(f)) => (0..m).filter(|i| f & (1 << i) != 0).collect(),
                        (false, _) => (0..m).filter(|&i| s.locs[i] == ABSENT).collect(),
                    };
                    let mut outs = Vec::new();
                    for li in candidates {
                        for w in 1..=nv {
                            let mut o = s.clone();
                            o.vars[xi] = h.loc_value[li] + 1;
                            o.locs[li] = w;
                            if freeset {
                                o.free = s.free.map(|f| f & !(1 << li));
                            }
                            outs.push(o);
                        }
                    }
                    Some(outs)
                })
            }
            Command::Dispose(x) => {
                let xi = h.var_index(x)?;
                self.map_states(h, |s| {
                    let li = h.address(s.vars[xi])?;
                    if s.locs[li] == ABSENT {
                        return None;
                    }
                    let mut o = s.clone();
                    o.locs[li] = ABSENT;
                    if freeset {
                        o.free = Some(s.free? | (1 << li));
                    }
                    Some(vec![o])
                })
            }
            Command::Mutate(x, v) => {
                let xi = h.var_index(x)?;
                let vi = h.value_index(*v).ok_or(ModelError::UnknownValue(*v))?;
                self.map_states(h, |s| {
                    let li = h.address(s.vars[xi])?;
                    if s.locs[li] == ABSENT {
                        return None;
                    }
                    let mut o = s.clone();
                    o.locs[li] = vi + 1;
                    Some(vec![o])
                })
            }
            Command::Lookup(x, y) => {
                let xi = h.var_index(x)?;
                let yi = h.var_index(y)?;
                self.map_states(h, |s| {
                    // x and y must be distinct stack components
                    if xi == yi || s.vars[yi] == ABSENT {
                        return None;
                    }
                    let li = h.address(s.vars[xi])?;
                    if s.locs[li] == ABSENT {
                        return None;
                    }
                    let mut o = s.clone();
                    o.vars[yi] = s.locs[li];
                    Some(vec![o])
                })
            }
            _ => unreachable!("handled by primitive_action"),
        };
        Ok(action)
    }
}
