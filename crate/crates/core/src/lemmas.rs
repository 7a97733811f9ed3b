//! Checkers for the two classical relations between γ and γ_R.

use serde::Serialize;

use crate::domination::{gamma_exact, gamma_roman_exact, is_rdf, RomanFunction, SolverBudget};
use crate::error::SolveError;
use crate::graph::Graph;

/// `γ ≤ γ_R ≤ 2γ` on one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichVerdict {
    pub gamma: usize,
    pub gamma_roman: usize,
    pub holds: bool,
}

impl SandwichVerdict {
    pub fn from_values(gamma: usize, gamma_roman: usize) -> Self {
        Self {
            gamma,
            gamma_roman,
            holds: gamma <= gamma_roman && gamma_roman <= 2 * gamma,
        }
    }
}

pub fn check_lemma1(g: &Graph, budget: SolverBudget) -> Result<SandwichVerdict, SolveError> {
    let gamma = gamma_exact(g, budget)?.value;
    let gamma_roman = gamma_roman_exact(g, budget)?.value;
    Ok(SandwichVerdict::from_values(gamma, gamma_roman))
}

/// Whether `V_2` is a minimum dominating set of `G[V_0 ∪ V_2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwosVerdict {
    /// Order of `G[V_0 ∪ V_2]`.
    pub induced_order: usize,
    /// `γ(G[V_0 ∪ V_2])`; `None` when the induced graph is empty.
    pub induced_gamma: Option<usize>,
    pub twos: usize,
    pub dominates: bool,
    pub minimum: bool,
}

impl TwosVerdict {
    pub fn holds(&self) -> bool {
        self.dominates && self.minimum
    }

    /// Empty `V_0 ∪ V_2` (every vertex labeled 1) satisfies the claim vacuously.
    pub fn is_vacuous(&self) -> bool {
        self.induced_order == 0
    }
}

/// Checks the claim for a minimum-weight RDF `f`, first confirming that `f`
/// really is optimal.
pub fn check_lemma2(
    g: &Graph,
    f: &RomanFunction,
    budget: SolverBudget,
) -> Result<TwosVerdict, SolveError> {
    require_valid(g, f)?;
    let optimum = gamma_roman_exact(g, budget)?.value;
    if f.weight() != optimum {
        return Err(SolveError::NotOptimal {
            weight: f.weight(),
            optimum,
        });
    }
    check_lemma2_unchecked_optimality(g, f, budget)
}

/// As [`check_lemma2`], trusting the caller that `f` is optimal.
pub fn check_lemma2_unchecked_optimality(
    g: &Graph,
    f: &RomanFunction,
    budget: SolverBudget,
) -> Result<TwosVerdict, SolveError> {
    require_valid(g, f)?;
    let support = f.v0().union(f.v2());
    let induced = g.induced_subgraph_allow_empty(&support)?;
    if induced.graph.order() == 0 {
        return Ok(TwosVerdict {
            induced_order: 0,
            induced_gamma: None,
            twos: 0,
            dominates: true,
            minimum: true,
        });
    }
    let twos = induced.project(f.v2());
    let dominates = induced.graph.is_dominating(&twos)?;
    let gamma = gamma_exact(&induced.graph, budget)?.value;
    Ok(TwosVerdict {
        induced_order: induced.graph.order(),
        induced_gamma: Some(gamma),
        twos: twos.len(),
        dominates,
        minimum: twos.len() == gamma,
    })
}

fn require_valid(g: &Graph, f: &RomanFunction) -> Result<(), SolveError> {
    if !is_rdf(g, f)? {
        return Err(SolveError::InvalidRomanFunction(
            "some vertex labeled 0 has no neighbor labeled 2".into(),
        ));
    }
    Ok(())
}
