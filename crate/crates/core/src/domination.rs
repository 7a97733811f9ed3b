//! Exact domination and Roman domination numbers with certificates.

use std::env;

use crate::error::SolveError;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const DEFAULT_MAX_NODES: u64 = 200_000_000;
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Environment variables read by [`SolverBudget::from_env`].
pub const ENV_MAX_NODES: &str = "DOMCHECK_MAX_NODES";
pub const ENV_MAX_ORDER: &str = "DOMCHECK_MAX_ORDER";

/// Caps on search effort. Exceeding either yields an error, never an
/// approximate value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverBudget {
    pub max_nodes: u64,
    pub max_order: usize,
}

impl Default for SolverBudget {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_MAX_NODES,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl SolverBudget {
    pub fn new(max_nodes: u64, max_order: usize) -> Self {
        Self {
            max_nodes,
            max_order,
        }
    }

    /// Defaults overridden by `DOMCHECK_MAX_NODES` / `DOMCHECK_MAX_ORDER` when set
    /// to valid integers.
    pub fn from_env() -> Self {
        let mut budget = Self::default();
        if let Some(v) = env::var(ENV_MAX_NODES)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            budget.max_nodes = v;
        }
        if let Some(v) = env::var(ENV_MAX_ORDER)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            budget.max_order = v;
        }
        budget
    }

    fn admit(&self, g: &Graph) -> Result<(), SolveError> {
        if g.order() > self.max_order {
            return Err(SolveError::OrderExceeded {
                order: g.order(),
                max_order: self.max_order,
            });
        }
        Ok(())
    }
}

/// An ordered partition `(V_0, V_1, V_2)` of the vertex set, i.e. a labeling
/// `f: V -> {0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RomanFunction {
    v0: VertexSet,
    v1: VertexSet,
    v2: VertexSet,
}

impl RomanFunction {
    /// Checks that the three sets partition a common universe.
    pub fn new(v0: VertexSet, v1: VertexSet, v2: VertexSet) -> Result<Self, SolveError> {
        let n = v0.universe();
        if v1.universe() != n || v2.universe() != n {
            return Err(SolveError::InvalidRomanFunction(
                "classes over different universes".into(),
            ));
        }
        if !v0.is_disjoint(&v1) || !v0.is_disjoint(&v2) || !v1.is_disjoint(&v2) {
            return Err(SolveError::InvalidRomanFunction("classes overlap".into()));
        }
        if v0.len() + v1.len() + v2.len() != n {
            return Err(SolveError::InvalidRomanFunction(
                "classes do not cover every vertex".into(),
            ));
        }
        Ok(Self { v0, v1, v2 })
    }

    pub fn from_labels(labels: &[u8]) -> Result<Self, SolveError> {
        let n = labels.len();
        let mut classes = [
            VertexSet::empty(n),
            VertexSet::empty(n),
            VertexSet::empty(n),
        ];
        for (v, &l) in labels.iter().enumerate() {
            let class = classes.get_mut(usize::from(l)).ok_or_else(|| {
                SolveError::InvalidRomanFunction(format!("label {l} at vertex {v}"))
            })?;
            class.insert(v);
        }
        let [v0, v1, v2] = classes;
        Ok(Self { v0, v1, v2 })
    }

    /// The cheapest labeling with `V_2 = twos`: vertices of `N[twos] \ twos`
    /// get 0, everything outside `N[twos]` gets 1.
    pub fn completing(g: &Graph, twos: &VertexSet) -> Result<Self, SolveError> {
        let covered = g.closed_neighborhood_of_set(twos)?;
        Ok(Self {
            v0: covered.difference(twos),
            v1: covered.complement(),
            v2: twos.clone(),
        })
    }

    pub fn order(&self) -> usize {
        self.v0.universe()
    }

    pub fn v0(&self) -> &VertexSet {
        &self.v0
    }

    pub fn v1(&self) -> &VertexSet {
        &self.v1
    }

    pub fn v2(&self) -> &VertexSet {
        &self.v2
    }

    pub fn label(&self, v: usize) -> u8 {
        if self.v2.contains(v) {
            2
        } else if self.v1.contains(v) {
            1
        } else {
            0
        }
    }

    pub fn labels(&self) -> Vec<u8> {
        (0..self.order()).map(|v| self.label(v)).collect()
    }

    /// `|V_1| + 2|V_2|`.
    pub fn weight(&self) -> usize {
        self.v1.len() + 2 * self.v2.len()
    }

    /// `V_1 ∪ V_2`.
    pub fn positive_set(&self) -> VertexSet {
        self.v1.union(&self.v2)
    }
}

pub fn roman_weight(f: &RomanFunction) -> usize {
    f.weight()
}

/// Whether every vertex labeled 0 has a neighbor labeled 2.
pub fn is_rdf(g: &Graph, f: &RomanFunction) -> Result<bool, SolveError> {
    if f.order() != g.order() {
        return Err(SolveError::InvalidRomanFunction(format!(
            "function over {} vertices used with graph of order {}",
            f.order(),
            g.order()
        )));
    }
    let reach = g.open_neighborhood_of_set(f.v2())?;
    Ok(f.v0().is_subset(&reach))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverResult<W> {
    pub value: usize,
    pub witness: W,
    pub nodes_explored: u64,
}

/// Picks the vertex covering the most undominated vertices until everything is
/// dominated; ties go to the smallest id.
pub fn greedy_dominating_set(g: &Graph) -> VertexSet {
    let n = g.order();
    let mut chosen = VertexSet::empty(n);
    let mut undominated = VertexSet::full(n);
    while !undominated.is_empty() {
        let best = (0..n)
            .max_by_key(|&u| {
                (
                    g.closed_neighbors(u).intersection_len(&undominated),
                    std::cmp::Reverse(u),
                )
            })
            .expect("nonempty graph");
        chosen.insert(best);
        undominated.difference_with(g.closed_neighbors(best));
    }
    chosen
}

/// Allowed vertices of `within` sorted by coverage of `target`, descending,
/// ties by ascending id.
fn ranked_candidates(g: &Graph, within: &VertexSet, target: &VertexSet) -> Vec<(usize, usize)> {
    let mut ranked: Vec<(usize, usize)> = within
        .iter()
        .map(|u| (u, g.closed_neighbors(u).intersection_len(target)))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

fn max_coverage(g: &Graph, allowed: &VertexSet, target: &VertexSet) -> usize {
    allowed
        .iter()
        .map(|u| g.closed_neighbors(u).intersection_len(target))
        .max()
        .unwrap_or(0)
}

struct Search<'g, W> {
    g: &'g Graph,
    max_nodes: u64,
    nodes: u64,
    best_value: usize,
    best: W,
}

impl<W> Search<'_, W> {
    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(SolveError::BudgetExceeded {
                max_nodes: self.max_nodes,
            });
        }
        Ok(())
    }
}

/// γ(G) by branch and bound over closed neighborhoods.
///
/// Each node branches on the lowest-indexed undominated vertex `v`: the
/// `k`-th branch puts the `k`-th candidate of `N[v]` (by coverage) into the
/// set and forbids the earlier ones, so branches are disjoint. A node is cut
/// when `|chosen| + ⌈undominated / max coverage⌉` reaches the incumbent,
/// which starts at the greedy solution.
pub fn gamma_exact(g: &Graph, budget: SolverBudget) -> Result<SolverResult<VertexSet>, SolveError> {
    budget.admit(g)?;
    let n = g.order();
    let greedy = greedy_dominating_set(g);
    let mut search = Search {
        g,
        max_nodes: budget.max_nodes,
        nodes: 0,
        best_value: greedy.len(),
        best: greedy,
    };
    let mut chosen = VertexSet::empty(n);
    search.gamma_node(&VertexSet::empty(n), &VertexSet::empty(n), &mut chosen)?;
    Ok(SolverResult {
        value: search.best_value,
        witness: search.best,
        nodes_explored: search.nodes,
    })
}

impl Search<'_, VertexSet> {
    fn gamma_node(
        &mut self,
        dominated: &VertexSet,
        excluded: &VertexSet,
        chosen: &mut VertexSet,
    ) -> Result<(), SolveError> {
        self.tick()?;
        let g = self.g;
        let undominated = dominated.complement();
        let size = chosen.len();
        let Some(v) = undominated.first() else {
            if size < self.best_value {
                self.best_value = size;
                self.best = chosen.clone();
            }
            return Ok(());
        };
        let allowed = excluded.complement();
        let cover = max_coverage(g, &allowed, &undominated);
        if cover == 0 {
            return Ok(());
        }
        if size + undominated.len().div_ceil(cover) >= self.best_value {
            return Ok(());
        }
        let candidates = g.closed_neighbors(v).intersection(&allowed);
        let mut excluded = excluded.clone();
        for (u, _) in ranked_candidates(g, &candidates, &undominated) {
            chosen.insert(u);
            self.gamma_node(&dominated.union(g.closed_neighbors(u)), &excluded, chosen)?;
            chosen.remove(u);
            excluded.insert(u);
        }
        Ok(())
    }
}

/// γ_R(G) by branch and bound over the set `S = V_2`.
///
/// The objective is `2|S| + (n - |N[S]|)`. Each node takes the lowest-indexed
/// vertex `v` that is neither covered by `S` nor already labeled 1, and
/// branches on the candidates of `N[v]` for `S` (coverage-ranked, earlier
/// candidates forbidden in later branches), then finally on labeling `v`
/// with 1, which forbids all of `N[v]`. Every unresolved vertex costs at
/// least `min(1, 2 / c)` where `c` is the best remaining coverage, giving the
/// lower bound used for pruning. The incumbent starts at the better of
/// all-ones and twice the greedy dominating set.
pub fn gamma_roman_exact(
    g: &Graph,
    budget: SolverBudget,
) -> Result<SolverResult<RomanFunction>, SolveError> {
    budget.admit(g)?;
    let n = g.order();
    let greedy = greedy_dominating_set(g);
    let (best_value, best) = if n < 2 * greedy.len() {
        (n, RomanFunction::completing(g, &VertexSet::empty(n))?)
    } else {
        (2 * greedy.len(), RomanFunction::completing(g, &greedy)?)
    };
    let mut search = Search {
        g,
        max_nodes: budget.max_nodes,
        nodes: 0,
        best_value,
        best,
    };
    let mut state = RomanState {
        twos: VertexSet::empty(n),
        ones: VertexSet::empty(n),
        covered: VertexSet::empty(n),
        excluded: VertexSet::empty(n),
    };
    search.roman_node(&mut state)?;
    Ok(SolverResult {
        value: search.best_value,
        witness: search.best,
        nodes_explored: search.nodes,
    })
}

#[derive(Clone)]
struct RomanState {
    twos: VertexSet,
    ones: VertexSet,
    covered: VertexSet,
    excluded: VertexSet,
}

impl RomanState {
    fn cost(&self) -> usize {
        2 * self.twos.len() + self.ones.len()
    }
}

impl Search<'_, RomanFunction> {
    fn roman_node(&mut self, state: &mut RomanState) -> Result<(), SolveError> {
        self.tick()?;
        let g = self.g;
        let unresolved = state.covered.union(&state.ones).complement();
        let cost = state.cost();
        let Some(v) = unresolved.first() else {
            if cost < self.best_value {
                self.best_value = cost;
                self.best = RomanFunction::completing(g, &state.twos)?;
            }
            return Ok(());
        };
        let allowed = state.excluded.complement();
        let cover = max_coverage(g, &allowed, &unresolved);
        let remaining = unresolved.len();
        let bound = if cover <= 2 {
            remaining
        } else {
            (2 * remaining).div_ceil(cover)
        };
        if cost + bound >= self.best_value {
            return Ok(());
        }

        let candidates = g.closed_neighbors(v).intersection(&allowed);
        let saved_excluded = state.excluded.clone();
        for (u, _) in ranked_candidates(g, &candidates, &unresolved) {
            let saved_covered = state.covered.clone();
            state.twos.insert(u);
            state.covered.union_with(g.closed_neighbors(u));
            self.roman_node(state)?;
            state.twos.remove(u);
            state.covered = saved_covered;
            state.excluded.insert(u);
        }

        state.ones.insert(v);
        state.excluded.union_with(g.closed_neighbors(v));
        self.roman_node(state)?;
        state.ones.remove(v);
        state.excluded = saved_excluded;
        Ok(())
    }
}
