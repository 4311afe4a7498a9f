//! Job file format.

use std::collections::BTreeMap;

use footprint_core::{CompositionTable, ModelConfig, StatementDoc};
use serde::{Deserialize, Serialize};

/// One algebra, named programs and specifications, and queries run in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub programs: BTreeMap<String, String>,
    #[serde(default)]
    pub specs: BTreeMap<String, Vec<StatementDoc>>,
    #[serde(default)]
    pub queries: Vec<Query>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraSpec {
    Table(CompositionTable),
    PlainHeap(ModelConfig),
    StackHeap(ModelConfig),
    FreesetHeap(ModelConfig),
    Zmod { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "query", rename_all = "snake_case", deny_unknown_fields)]
pub enum Query {
    Footprints { program: String },
    MinSafe { program: String },
    Locality { program: String },
    Detconst { program: String },
    BigSpec { program: String },
    SmallSpec { program: String },
    IsBasis { program: String, set: Vec<String> },
    IsComplete { program: String, spec: String },
    Entails { spec: String, statement: StatementDoc },
    /// `file` is resolved relative to the job file's directory.
    CheckDerivation { spec: String, file: String },
}

impl Query {
    pub fn name(&self) -> &'static str {
        match self {
            Query::Footprints { .. } => "footprints",
            Query::MinSafe { .. } => "min_safe",
            Query::Locality { .. } => "locality",
            Query::Detconst { .. } => "detconst",
            Query::BigSpec { .. } => "big_spec",
            Query::SmallSpec { .. } => "small_spec",
            Query::IsBasis { .. } => "is_basis",
            Query::IsComplete { .. } => "is_complete",
            Query::Entails { .. } => "entails",
            Query::CheckDerivation { .. } => "check_derivation",
        }
    }

    /// The program or specification the query is about.
    pub fn target(&self) -> &str {
        match self {
            Query::Footprints { program }
            | Query::MinSafe { program }
            | Query::Locality { program }
            | Query::Detconst { program }
            | Query::BigSpec { program }
            | Query::SmallSpec { program }
            | Query::IsBasis { program, .. }
            | Query::IsComplete { program, .. } => program,
            Query::Entails { spec, .. } | Query::CheckDerivation { spec, .. } => spec,
        }
    }
}
