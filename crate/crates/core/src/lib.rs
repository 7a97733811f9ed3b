//! Exact domination (γ) and Roman domination (γ_R) numbers for small graphs,
//! Cartesian products, and instance-level audits of the double-counting
//! argument behind `γ(G)·γ(H) ≤ γ_R(G □ H)`.

pub mod audit;
pub mod corpus;
pub mod domination;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod lemmas;
pub mod oracle;
pub mod product;
pub mod trace;
pub mod vertex_set;

pub use audit::{audit_pair, audit_pair_with, AuditOptions, AuditReport, TieBreak};
pub use domination::{
    gamma_exact, gamma_roman_exact, is_rdf, roman_weight, RomanFunction, SolverBudget, SolverResult,
};
pub use error::{AuditError, GraphError, SolveError, TraceError};
pub use families::Family;
pub use graph::Graph;
pub use graph6::{parse_graph6, write_graph6};
pub use product::{cartesian_product, LabeledProduct};
pub use trace::{verify_trace, ProofTrace, TraceVerification};
pub use vertex_set::VertexSet;
