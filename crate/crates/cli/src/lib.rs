//! Batch runner: loads a job file, builds its algebra and programs, runs the
//! queries and assembles an [`AnalysisReport`].

pub mod job;
pub mod report;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use footprint_core::local::is_local;
use footprint_core::spec::{big_spec, is_basis, resolve_labels, small_spec};
use footprint_core::{
    check_derivation, parse_program, AlgebraError, Derivation, DerivationDoc, LocalFunction, LocalityCheck, Model,
    ModelError, Outcome, Predicate, SmallSpecResult, Specification, Statement, ValidationReport,
};
use thiserror::Error;

pub use job::{AlgebraSpec, JobFile, Query};
pub use report::{AnalysisReport, QueryOutcome, QueryResult};
use report::{labels, AlgebraStats, DerivationFailure, DetconstWitness, LocalityWitness, OutcomeDoc, StateMismatch};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_elements: usize,
    pub verify_locality: LocalityCheck,
    pub canonical: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_elements: footprint_core::DEFAULT_MAX_ELEMENTS,
            verify_locality: LocalityCheck::Debug,
            canonical: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("composition table violates the separation algebra laws")]
    LawViolation(ValidationReport),
    #[error("invalid composition table: {0}")]
    Table(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    TooLarge(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::LawViolation(_) | RunError::Table(_) => 1,
            RunError::Parse(_) => 2,
            RunError::TooLarge(_) => 3,
        }
    }
}

pub fn load_job(path: &Path) -> Result<JobFile, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Parse(format!("cannot read job file {}: {e}", path.display())))?;
    parse_job(&text)
}

pub fn parse_job(text: &str) -> Result<JobFile, RunError> {
    serde_json::from_str(text).map_err(|e| RunError::Parse(format!("job file: {e}")))
}

fn model_error(e: ModelError) -> RunError {
    match e {
        ModelError::TooLarge { .. } => RunError::TooLarge(e.to_string()),
        other => RunError::Parse(other.to_string()),
    }
}

fn build_model(spec: &AlgebraSpec, opts: &RunOptions) -> Result<Model, RunError> {
    let limit = opts.max_elements;
    match spec {
        AlgebraSpec::Table(table) => {
            match footprint_core::SeparationAlgebra::from_table(table, limit) {
                Ok(alg) => Ok(Model::table(alg)),
                Err(AlgebraError::LawViolation(report)) => Err(RunError::LawViolation(report)),
                Err(e @ AlgebraError::TooLarge { .. }) => Err(RunError::TooLarge(e.to_string())),
                Err(e) => Err(RunError::Table(e.to_string())),
            }
        }
        AlgebraSpec::PlainHeap(cfg) => Model::plain_heap(cfg, limit).map_err(model_error),
        AlgebraSpec::StackHeap(cfg) => Model::stack_heap(cfg, limit).map_err(model_error),
        AlgebraSpec::FreesetHeap(cfg) => Model::freeset_heap(cfg, limit).map_err(model_error),
        AlgebraSpec::Zmod { n } => {
            if *n > limit {
                return Err(RunError::TooLarge(format!("model would have {n} elements, above the limit of {limit}")));
            }
            Model::zmod(*n).map_err(model_error)
        }
    }
}

struct ProgramEntry {
    function: Result<LocalFunction, String>,
    raw: Vec<Outcome>,
}

enum Plan {
    Program,
    IsBasis(Predicate),
    Entails(Statement),
    Derivation(Derivation),
}

fn resolve_err(what: &str, e: AlgebraError) -> RunError {
    RunError::Parse(format!("{what}: {e}"))
}

/// Builds everything the job declares, then runs its queries in order.
pub fn run(job: &JobFile, base_dir: &Path, opts: &RunOptions) -> Result<AnalysisReport, RunError> {
    let start = Instant::now();
    let model = build_model(&job.algebra, opts)?;
    let alg = model.algebra().clone();

    let mut programs: BTreeMap<&str, ProgramEntry> = BTreeMap::new();
    for (name, src) in &job.programs {
        let prog = parse_program(src).map_err(|e| RunError::Parse(format!("program `{name}`: {e}")))?;
        let raw = prog.evaluate_raw(&model).map_err(|e| RunError::Parse(format!("program `{name}`: {e}")))?;
        let function = match prog.elaborate(&model, opts.verify_locality) {
            Ok(f) => Ok(f.with_name(name.clone())),
            Err(ModelError::NotLocal(e)) => Err(e.to_string()),
            Err(e) => return Err(RunError::Parse(format!("program `{name}`: {e}"))),
        };
        programs.insert(name, ProgramEntry { function, raw });
    }

    let mut specs: BTreeMap<&str, Specification> = BTreeMap::new();
    for (name, docs) in &job.specs {
        let spec = Specification::from_docs(alg.clone(), docs).map_err(|e| resolve_err(&format!("spec `{name}`"), e))?;
        specs.insert(name, spec);
    }

    let mut plans = Vec::with_capacity(job.queries.len());
    for (i, q) in job.queries.iter().enumerate() {
        let ctx = format!("query {} ({})", i + 1, q.name());
        let need_spec = |name: &str| {
            specs.get(name).ok_or_else(|| RunError::Parse(format!("{ctx}: unknown spec `{name}`")))
        };
        let plan = match q {
            Query::Entails { spec, statement } => {
                need_spec(spec)?;
                Plan::Entails(statement.resolve(&alg).map_err(|e| resolve_err(&ctx, e))?)
            }
            Query::CheckDerivation { spec, file } => {
                need_spec(spec)?;
                let path = base_dir.join(file);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| RunError::Parse(format!("{ctx}: cannot read {}: {e}", path.display())))?;
                let doc: DerivationDoc = serde_json::from_str(&text)
                    .map_err(|e| RunError::Parse(format!("{ctx}: {}: {e}", path.display())))?;
                Plan::Derivation(Derivation::from_doc(&alg, &doc).map_err(|e| resolve_err(&ctx, e))?)
            }
            _ => {
                if !programs.contains_key(q.target()) {
                    return Err(RunError::Parse(format!("{ctx}: unknown program `{}`", q.target())));
                }
                match q {
                    Query::IsBasis { set, .. } => {
                        Plan::IsBasis(resolve_labels(&alg, set).map_err(|e| resolve_err(&ctx, e))?)
                    }
                    Query::IsComplete { spec, .. } => {
                        need_spec(spec)?;
                        Plan::Program
                    }
                    _ => Plan::Program,
                }
            }
        };
        plans.push(plan);
    }

    let results = job
        .queries
        .iter()
        .zip(&plans)
        .map(|(q, plan)| QueryResult {
            query: q.name().to_string(),
            target: q.target().to_string(),
            result: answer(&model, q, plan, &programs, &specs),
        })
        .collect();

    let negativity = alg.negativity_witness();
    let wf = alg.well_foundedness();
    let report = AnalysisReport {
        tool: "footprint".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        algebra: AlgebraStats {
            kind: model.kind().to_string(),
            origin: alg.origin().to_string(),
            size: alg.len(),
            unit: alg.label(alg.unit()).to_string(),
            negativity: negativity.map(|(a, b)| (alg.label(a).to_string(), alg.label(b).to_string())),
            well_founded: wf.well_founded,
            descending_cycle: wf.cycle.map(|c| c.iter().map(|&e| alg.label(e).to_string()).collect()),
        },
        results,
        elapsed_ms: (!opts.canonical).then(|| start.elapsed().as_millis() as u64),
    };
    Ok(report)
}

fn mismatch(model: &Model, state: footprint_core::ElementId, expected: &Outcome, actual: &Outcome) -> StateMismatch {
    let alg = model.algebra();
    StateMismatch {
        state: alg.label(state).to_string(),
        expected: OutcomeDoc::new(alg, expected),
        actual: OutcomeDoc::new(alg, actual),
    }
}

fn answer(
    model: &Model,
    q: &Query,
    plan: &Plan,
    programs: &BTreeMap<&str, ProgramEntry>,
    specs: &BTreeMap<&str, Specification>,
) -> QueryOutcome {
    let alg = model.algebra();
    match plan {
        Plan::Entails(statement) => {
            let spec = &specs[q.target()];
            let bla = spec.bla();
            let post = Outcome::States(statement.post.clone());
            let witness = statement
                .pre
                .iter()
                .find(|&s| !bla.apply(s).leq(&post))
                .map(|s| mismatch(model, s, &post, bla.apply(s)));
            return QueryOutcome::Entails { holds: witness.is_none(), witness };
        }
        Plan::Derivation(d) => {
            let spec = &specs[q.target()];
            return match check_derivation(d, spec) {
                Ok(conclusion) => QueryOutcome::Derivation {
                    valid: true,
                    entailed: Some(spec.entails(&conclusion)),
                    conclusion: Some(conclusion.to_doc(alg)),
                    failure: None,
                },
                Err(e) => QueryOutcome::Derivation {
                    valid: false,
                    conclusion: None,
                    entailed: None,
                    failure: Some(DerivationFailure { path: e.path, rule: e.rule.to_string(), reason: e.reason }),
                },
            };
        }
        _ => {}
    }

    let entry = &programs[q.target()];
    if let Query::Locality { .. } = q {
        let verdict = is_local(alg, &entry.raw);
        let counterexample = verdict.counterexample.map(|cx| LocalityWitness {
            frame: alg.label(cx.frame).to_string(),
            core: alg.label(cx.core).to_string(),
            whole: alg.label(alg.compose(cx.frame, cx.core).ok().flatten().expect("separate pair")).to_string(),
            offending: cx.offending.map(|o| alg.label(o).to_string()),
        });
        return QueryOutcome::Locality { holds: verdict.holds, counterexample };
    }
    let f = match &entry.function {
        Ok(f) => f,
        Err(message) => return QueryOutcome::Error { message: message.clone() },
    };
    match (q, plan) {
        (_, Plan::IsBasis(set)) => {
            let verdict = is_basis(set, f);
            let witness = verdict.witness.map(|s| mismatch(model, s, f.apply(s), &f.local_limit_by(set, s)));
            QueryOutcome::Basis { holds: verdict.holds, witness }
        }
        (Query::Footprints { .. }, _) => QueryOutcome::States { states: labels(alg, &f.footprints()) },
        (Query::MinSafe { .. }, _) => QueryOutcome::States { states: labels(alg, &f.min_safe_states()) },
        (Query::Detconst { .. }, _) => {
            let v = f.determinism_constancy();
            let counterexample = v.counterexample.map(|cx| DetconstWitness {
                frame: alg.label(cx.frame).to_string(),
                state: alg.label(cx.state).to_string(),
                lhs: OutcomeDoc::new(alg, &cx.lhs),
                rhs: OutcomeDoc::new(alg, &cx.rhs),
            });
            QueryOutcome::Detconst { holds: v.holds, counterexample }
        }
        (Query::BigSpec { .. }, _) => QueryOutcome::Specification { statements: big_spec(f).to_docs() },
        (Query::SmallSpec { .. }, _) => match small_spec(f) {
            SmallSpecResult::Spec(s) => QueryOutcome::Specification { statements: s.to_docs() },
            SmallSpecResult::NoFootprintBasis { witness } => {
                let fp = f.footprints();
                QueryOutcome::NoFootprintBasis {
                    footprints: labels(alg, &fp),
                    witness: mismatch(model, witness, f.apply(witness), &f.local_limit_by(&fp, witness)),
                }
            }
        },
        (Query::IsComplete { spec, .. }, _) => {
            let bla = specs[spec.as_str()].bla();
            let witness = alg
                .elements()
                .find(|&s| bla.apply(s) != f.apply(s))
                .map(|s| mismatch(model, s, f.apply(s), bla.apply(s)));
            QueryOutcome::Complete { holds: witness.is_none(), witness }
        }
        _ => unreachable!("every query kind is planned"),
    }
}
