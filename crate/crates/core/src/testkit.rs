//! Fixture models and seeded random generators shared by tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{ElementId, Predicate, SeparationAlgebra};
use crate::local::LocalFunction;
use crate::models::{Command, Model, ModelConfig};
use crate::proof::{Derivation, Rule};
use crate::spec::{big_spec, Specification, Statement};

pub use rand_chacha::ChaCha8Rng as TestRng;

pub fn rng(seed: u64) -> TestRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Plain heap over locations {1,2} and the single value 7.
pub fn ph2() -> Model {
    Model::plain_heap(&ModelConfig::plain(&[1, 2], &[7]), 4096).expect("fixture builds")
}

pub fn tiny_config() -> ModelConfig {
    ModelConfig::with_stack(&["x", "y"], &[1, 2], &[0, 1, 2])
}

/// Stack and heap, variables {x,y}, locations {1,2}, values {0,1,2}.
pub fn h1_tiny() -> Model {
    Model::stack_heap(&tiny_config(), 4096).expect("fixture builds")
}

/// Same configuration as [`h1_tiny`] with free sets.
pub fn h2_tiny() -> Model {
    Model::freeset_heap(&tiny_config(), 4096).expect("fixture builds")
}

pub fn zmod(n: usize) -> Model {
    Model::zmod(n).expect("fixture builds")
}

pub struct Fixture {
    pub name: &'static str,
    pub model: Model,
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture { name: "PH2", model: ph2() },
        Fixture { name: "H1-tiny", model: h1_tiny() },
        Fixture { name: "H2-tiny", model: h2_tiny() },
        Fixture { name: "Z3", model: zmod(3) },
        Fixture { name: "Z5", model: zmod(5) },
    ]
}

/// Every primitive command that is local in the model.
pub fn primitives(model: &Model) -> Vec<LocalFunction> {
    commands(model).iter().filter_map(|c| model.primitive(c).ok()).collect()
}

pub fn commands(model: &Model) -> Vec<Command> {
    use crate::models::ModelKind::*;
    let mut out = Vec::new();
    match model.kind() {
        PlainHeap => {
            let cfg = model.config().expect("heap model");
            out.extend(cfg.locations.iter().map(|&l| Command::DisposeLoc(l)));
        }
        StackHeap | FreesetHeap => {
            let cfg = model.config().expect("heap model");
            for x in &cfg.variables {
                out.push(Command::New(x.clone()));
                out.push(Command::Dispose(x.clone()));
                for &v in &cfg.values {
                    out.push(Command::Mutate(x.clone(), v));
                }
                for y in &cfg.variables {
                    if x != y {
                        out.push(Command::Lookup(x.clone(), y.clone()));
                    }
                }
            }
        }
        Zmod => {
            let n = model.algebra().len() as i64;
            for c in 0..n {
                out.push(Command::Adder(c));
                out.push(Command::Multiplier(c));
            }
        }
        Table => {}
    }
    out
}

pub fn random_element(rng: &mut impl Rng, alg: &SeparationAlgebra) -> ElementId {
    let all: Vec<ElementId> = alg.elements().collect();
    *all.choose(rng).expect("carrier is nonempty")
}

/// A predicate with at most `max_len` members.
pub fn random_predicate(rng: &mut impl Rng, alg: &SeparationAlgebra, max_len: usize) -> Predicate {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| random_element(rng, alg)).collect()
}

pub fn random_subset(rng: &mut impl Rng, p: &Predicate) -> Predicate {
    p.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn random_statement(rng: &mut impl Rng, alg: &SeparationAlgebra) -> Statement {
    let mut pre = random_predicate(rng, alg, 3);
    if pre.is_empty() {
        pre = Predicate::singleton(random_element(rng, alg));
    }
    Statement::new(pre, random_predicate(rng, alg, 4))
}

/// One to four random statements.
pub fn random_spec(rng: &mut impl Rng, model: &Model) -> Specification {
    let alg = model.algebra();
    let n = rng.gen_range(1..=4);
    Specification::new(alg.clone(), (0..n).map(|_| random_statement(rng, alg))).expect("same algebra")
}

/// Restricts `f` at one safe state to a random subset of its outcome and
/// closes the result under locality: `bla(big_spec(f) ∪ {({σ}, S)})`.
pub fn prune(rng: &mut impl Rng, f: &LocalFunction) -> LocalFunction {
    let safe = f.safe_states();
    if safe.is_empty() {
        return f.clone();
    }
    let sigma = safe.as_slice()[rng.gen_range(0..safe.len())];
    let out = f.apply(sigma).states().expect("safe").clone();
    let mut spec = big_spec(f);
    spec.insert(Statement::new(Predicate::singleton(sigma), random_subset(rng, &out)));
    spec.bla()
}

/// A random local function: a primitive, a small program over primitives, or
/// the best local action of a random specification, followed by zero to two
/// pruning steps. The result is sealed through the full locality check.
pub fn random_local_function(rng: &mut impl Rng, model: &Model) -> LocalFunction {
    let prims = primitives(model);
    let alg = model.algebra();
    let base = match rng.gen_range(0..4) {
        0 if !prims.is_empty() => prims.choose(rng).unwrap().clone(),
        1 if !prims.is_empty() => {
            let a = prims.choose(rng).unwrap();
            let b = prims.choose(rng).unwrap();
            match rng.gen_range(0..3) {
                0 => a.seq(b),
                1 => a.choice(b),
                _ => a.kstar(),
            }
        }
        _ => random_spec(rng, model).bla(),
    };
    let mut f = base;
    for _ in 0..rng.gen_range(0..=2) {
        f = prune(rng, &f);
    }
    LocalFunction::new(alg.clone(), f.action().to_vec(), "random").expect("generated functions are local")
}

/// A random valid derivation from `spec` of depth at most `depth`.
pub fn random_derivation(rng: &mut impl Rng, spec: &Specification, depth: usize) -> Derivation {
    let alg = spec.algebra();
    let axioms: Vec<&Statement> = spec.statements().iter().collect();
    if depth == 0 || rng.gen_bool(0.25) {
        return Derivation::axiom((*axioms.choose(rng).expect("nonempty spec")).clone());
    }
    match rng.gen_range(0..4) {
        0 => {
            let premise = random_derivation(rng, spec, depth - 1);
            let mut r = random_predicate(rng, alg, 2);
            if r.is_empty() && rng.gen_bool(0.8) {
                r = Predicate::singleton(random_element(rng, alg));
            }
            Derivation::frame(alg, premise, r)
        }
        1 => {
            let premise = random_derivation(rng, spec, depth - 1);
            let pre = random_subset(rng, &premise.conclusion.pre);
            let post = premise.conclusion.post.union(&random_predicate(rng, alg, 2));
            Derivation::consequence(premise, pre, post).expect("weakening by construction")
        }
        2 => {
            let n = rng.gen_range(1..=3);
            Derivation::union((0..n).map(|_| random_derivation(rng, spec, depth - 1)).collect())
        }
        _ => {
            let n = rng.gen_range(1..=3);
            Derivation::intersection((0..n).map(|_| random_derivation(rng, spec, depth - 1)).collect())
                .expect("nonempty family")
        }
    }
}

fn node_paths(d: &Derivation, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(prefix.clone());
    for (i, p) in d.premises.iter().enumerate() {
        prefix.push(i);
        node_paths(p, prefix, out);
        prefix.pop();
    }
}

fn node_mut<'a>(d: &'a mut Derivation, path: &[usize]) -> &'a mut Derivation {
    path.iter().fold(d, |node, &i| &mut node.premises[i])
}

/// Breaks one rule application in `d`, or returns `None` when no node of
/// the tree can be broken with the available elements.
pub fn mutate_derivation(rng: &mut impl Rng, d: &Derivation, spec: &Specification) -> Option<Derivation> {
    let alg = spec.algebra();
    let mut paths = Vec::new();
    node_paths(d, &mut Vec::new(), &mut paths);
    paths.shuffle(rng);
    for path in paths {
        let mut m = d.clone();
        let node = node_mut(&mut m, &path);
        let outside = |p: &Predicate| alg.elements().find(|e| !p.contains(*e));
        let broken = match node.rule {
            Rule::Axiom => {
                let mut s = node.conclusion.clone();
                match outside(&s.post) {
                    Some(e) => {
                        s.post = s.post.union(&Predicate::singleton(e));
                        !spec.contains(&s) && {
                            node.conclusion = s;
                            true
                        }
                    }
                    None => false,
                }
            }
            Rule::Consequence => {
                let premise = node.premises[0].conclusion.clone();
                if let Some(e) = outside(&premise.pre) {
                    node.conclusion.pre = node.conclusion.pre.union(&Predicate::singleton(e));
                    true
                } else if let Some(e) = premise.post.iter().next() {
                    node.conclusion.post = node.conclusion.post.without(e);
                    true
                } else {
                    false
                }
            }
            Rule::Intersection => {
                node.premises.clear();
                true
            }
            Rule::Frame | Rule::Union => match outside(&node.conclusion.post) {
                Some(e) => {
                    node.conclusion.post = node.conclusion.post.union(&Predicate::singleton(e));
                    true
                }
                None => false,
            },
        };
        if broken {
            return Some(m);
        }
    }
    None
}
