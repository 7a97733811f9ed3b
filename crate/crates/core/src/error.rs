use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex set over universe {found} used with graph of order {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("product order {order} exceeds cap {cap}")]
    ProductTooLarge { order: usize, cap: usize },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("adjacency list line {line}: {message}")]
    AdjacencyList { line: usize, message: String },
    #[error("family spec `{spec}`: {message}")]
    Family { spec: String, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("search exceeded node budget of {max_nodes}")]
    BudgetExceeded { max_nodes: u64 },
    #[error("graph order {order} exceeds solver limit {max_order}")]
    OrderExceeded { order: usize, max_order: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid Roman function: {0}")]
    InvalidRomanFunction(String),
    #[error("Roman function has weight {weight} but the Roman domination number is {optimum}")]
    NotOptimal { weight: usize, optimum: usize },
}

impl SolveError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            SolveError::BudgetExceeded { .. } | SolveError::OrderExceeded { .. }
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("{stage}: {source}")]
    Solve {
        stage: &'static str,
        #[source]
        source: SolveError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("dominating set {0:?} does not dominate the graph")]
    NotDominating(Vec<usize>),
    #[error("dominating set has {found} vertices but the domination number is {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
}

impl AuditError {
    pub fn is_budget(&self) -> bool {
        matches!(self, AuditError::Solve { source, .. } if source.is_budget())
    }

    pub(crate) fn at(stage: &'static str) -> impl FnOnce(SolveError) -> AuditError {
        move |source| AuditError::Solve { stage, source }
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("trace JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported trace schema `{0}`")]
    Schema(String),
    #[error("malformed trace: {0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
