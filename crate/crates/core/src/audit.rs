//! Instance-level audit of the double-counting argument for
//! `γ(G)·γ(H) ≤ γ_R(G □ H)`.
//!
//! Given a minimum-weight Roman function `f = (V_0, V_1, V_2)` on `G □ H` and
//! a minimum dominating set `u_1..u_k` of `G`, the audit builds every set the
//! argument uses and checks each inequality on the concrete instance:
//!
//! * blocks `Π_i` with `u_i ∈ Π_i ⊆ N[u_i]` partitioning `V(G)`;
//! * `D_i = (Π_i × V(H)) ∩ (V_1 ∪ V_2)` and its projection `P_i` onto `H`;
//! * `|V(H) − N_H[P_i]| ≥ γ(H) − |P_i|`;
//! * columns `Q_v = {u : (u, v) ∈ V_2}`;
//! * `C = {(i, v) : Π_i × {v} ⊆ N[Q_v × {v}]}` with row fibers `L_i`,
//!   column fibers `R_v` and `N = |C|`;
//! * `γ(G)γ(H) − |V_1| − |V_2| ≤ N ≤ |V_2|`, hence
//!   `γ(G)γ(H) ≤ |V_1| + 2|V_2| = γ_R(G □ H)`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domination::{gamma_exact, gamma_roman_exact, is_rdf, RomanFunction, SolverBudget};
use crate::error::{AuditError, GraphError, SolveError};
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::lemmas::{check_lemma2_unchecked_optimality, SandwichVerdict};
use crate::product::{cartesian_product_capped, LabeledProduct, DEFAULT_PRODUCT_CAP};
use crate::trace::{ProofTrace, TraceInputs};
use crate::vertex_set::VertexSet;

/// How a vertex dominated by several representatives picks its block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    Smallest,
    Largest,
    Seeded(u64),
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::Smallest => write!(f, "smallest"),
            TieBreak::Largest => write!(f, "largest"),
            TieBreak::Seeded(seed) => write!(f, "seeded:{seed}"),
        }
    }
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "smallest" => Ok(TieBreak::Smallest),
            "largest" => Ok(TieBreak::Largest),
            other => other
                .strip_prefix("seeded:")
                .and_then(|seed| seed.parse().ok())
                .map(TieBreak::Seeded)
                .ok_or_else(|| format!("unknown tie-break rule `{other}`")),
        }
    }
}

/// Representatives `u_1..u_k` and blocks `Π_1..Π_k` (0-based here).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatorPartition {
    representatives: Vec<usize>,
    blocks: Vec<VertexSet>,
}

/// Which structural properties a candidate partition satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub covers_disjointly: bool,
    pub representative_in_block: bool,
    pub block_within_closed_neighborhood: bool,
}

impl PartitionCheck {
    pub fn holds(&self) -> bool {
        self.covers_disjointly
            && self.representative_in_block
            && self.block_within_closed_neighborhood
    }
}

impl DominatorPartition {
    /// Wraps recorded data without validation; see [`DominatorPartition::check`].
    pub fn from_parts(representatives: Vec<usize>, blocks: Vec<VertexSet>) -> Self {
        Self {
            representatives,
            blocks,
        }
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn check(&self, g: &Graph) -> PartitionCheck {
        let n = g.order();
        let same_shape = self.representatives.len() == self.blocks.len()
            && self.blocks.iter().all(|b| b.universe() == n)
            && self.representatives.iter().all(|&u| u < n);
        if !same_shape {
            return PartitionCheck {
                covers_disjointly: false,
                representative_in_block: false,
                block_within_closed_neighborhood: false,
            };
        }
        let total: usize = self.blocks.iter().map(VertexSet::len).sum();
        let mut union = VertexSet::empty(n);
        for b in &self.blocks {
            union.union_with(b);
        }
        PartitionCheck {
            covers_disjointly: total == n && union.is_full(),
            representative_in_block: self
                .representatives
                .iter()
                .zip(&self.blocks)
                .all(|(&u, b)| b.contains(u)),
            block_within_closed_neighborhood: self
                .representatives
                .iter()
                .zip(&self.blocks)
                .all(|(&u, b)| b.is_subset(g.closed_neighbors(u))),
        }
    }
}

/// Partition with the smallest-index rule.
pub fn build_partition(
    g: &Graph,
    gamma_set: &[usize],
    gamma: usize,
) -> Result<DominatorPartition, AuditError> {
    build_partition_with(g, gamma_set, gamma, TieBreak::Smallest)
}

/// Assigns each vertex to a block whose representative dominates it.
/// Representatives always claim themselves; other vertices pick among the
/// eligible blocks according to `rule`.
pub fn build_partition_with(
    g: &Graph,
    gamma_set: &[usize],
    gamma: usize,
    rule: TieBreak,
) -> Result<DominatorPartition, AuditError> {
    let set = g.vertex_set(gamma_set.iter().copied())?;
    if set.len() != gamma_set.len() {
        return Err(AuditError::Inconsistent("repeated representative".into()));
    }
    if !g.is_dominating(&set)? {
        return Err(AuditError::NotDominating(gamma_set.to_vec()));
    }
    if gamma_set.len() != gamma {
        return Err(AuditError::WrongSize {
            expected: gamma,
            found: gamma_set.len(),
        });
    }
    let n = g.order();
    let mut blocks = vec![VertexSet::empty(n); gamma_set.len()];
    let mut rng = match rule {
        TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    for u in 0..n {
        let eligible: Vec<usize> = match gamma_set.iter().position(|&r| r == u) {
            Some(i) => vec![i],
            None => (0..gamma_set.len())
                .filter(|&i| g.closed_neighbors(gamma_set[i]).contains(u))
                .collect(),
        };
        let pick = match rule {
            TieBreak::Smallest => eligible[0],
            TieBreak::Largest => eligible[eligible.len() - 1],
            TieBreak::Seeded(_) => {
                let rng = rng.as_mut().expect("seeded rule has an rng");
                eligible[(rng.next_u64() % eligible.len() as u64) as usize]
            }
        };
        blocks[pick].insert(u);
    }
    Ok(DominatorPartition {
        representatives: gamma_set.to_vec(),
        blocks,
    })
}

/// `D_i` (product ids) and its projection `P_i` onto `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSlice {
    pub d: VertexSet,
    pub p: VertexSet,
}

fn check_orders(
    f: &RomanFunction,
    partition: &DominatorPartition,
    product: &LabeledProduct,
) -> Result<(), AuditError> {
    if f.order() != product.graph().order() {
        return Err(AuditError::Inconsistent(format!(
            "Roman function over {} vertices, product has {}",
            f.order(),
            product.graph().order()
        )));
    }
    if partition
        .blocks
        .iter()
        .any(|b| b.universe() != product.g_order())
    {
        return Err(AuditError::Inconsistent(format!(
            "partition blocks do not live on the first factor of order {}",
            product.g_order()
        )));
    }
    Ok(())
}

pub fn compute_slices(
    f: &RomanFunction,
    partition: &DominatorPartition,
    product: &LabeledProduct,
) -> Result<Vec<BlockSlice>, AuditError> {
    check_orders(f, partition, product)?;
    Ok(slices_of(&f.positive_set(), partition, product))
}

/// Slices of an arbitrary product set `d`.
pub fn slices_of(
    d: &VertexSet,
    partition: &DominatorPartition,
    product: &LabeledProduct,
) -> Vec<BlockSlice> {
    partition
        .blocks
        .iter()
        .map(|block| {
            let di = product.row_cylinder(block).intersection(d);
            let mut p = VertexSet::empty(product.h_order());
            for id in &di {
                p.insert(product.decode(id).1);
            }
            BlockSlice { d: di, p }
        })
        .collect()
}

/// `U = V(H) − N_H[P]` and the two facts established about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionBound {
    pub undominated: VertexSet,
    /// `P ∪ U` dominates `H`.
    pub dominates_h: bool,
    /// `|U| ≥ γ(H) − |P|`.
    pub bound_holds: bool,
}

pub fn check_projection_bound(
    h: &Graph,
    p: &VertexSet,
    gamma_h: usize,
) -> Result<ProjectionBound, GraphError> {
    let undominated = h.closed_neighborhood_of_set(p)?.complement();
    let dominates_h = h.is_dominating(&p.union(&undominated))?;
    let bound_holds = undominated.len() + p.len() >= gamma_h;
    Ok(ProjectionBound {
        undominated,
        dominates_h,
        bound_holds,
    })
}

/// `Q_v` as sets of first-factor vertices, one per column `v`.
pub fn compute_columns(
    f: &RomanFunction,
    product: &LabeledProduct,
) -> Result<Vec<VertexSet>, AuditError> {
    if f.order() != product.graph().order() {
        return Err(AuditError::Inconsistent(format!(
            "Roman function over {} vertices, product has {}",
            f.order(),
            product.graph().order()
        )));
    }
    let mut columns = vec![VertexSet::empty(product.g_order()); product.h_order()];
    for id in f.v2() {
        let (u, v) = product.decode(id);
        columns[v].insert(u);
    }
    Ok(columns)
}

/// The pair set `C` with its fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingTable {
    /// `(i, v)` pairs sorted by block then column.
    pub members: Vec<(usize, usize)>,
    /// `|L_i|` per block.
    pub row_counts: Vec<usize>,
    /// `|R_v|` per column.
    pub column_counts: Vec<usize>,
    /// Whether the product-neighborhood membership test agreed with the
    /// factor-level test `Π_i ⊆ N_G[Q_v]` on every pair.
    pub criterion_agreement: bool,
}

impl CountingTable {
    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize, v: usize) -> bool {
        self.members.binary_search(&(i, v)).is_ok()
    }

    /// Rebuilds fibers from a member list.
    pub fn from_members(mut members: Vec<(usize, usize)>, blocks: usize, columns: usize) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut row_counts = vec![0; blocks];
        let mut column_counts = vec![0; columns];
        for &(i, v) in &members {
            row_counts[i] += 1;
            column_counts[v] += 1;
        }
        Self {
            members,
            row_counts,
            column_counts,
            criterion_agreement: true,
        }
    }

    /// `|C| = Σ|L_i| = Σ|R_v|`.
    pub fn identity_holds(&self) -> bool {
        let n = self.n();
        self.row_counts.iter().sum::<usize>() == n && self.column_counts.iter().sum::<usize>() == n
    }
}

/// Computes `C` using the product-neighborhood definition and cross-checks the
/// factor-level criterion.
pub fn compute_c(
    g: &Graph,
    partition: &DominatorPartition,
    columns: &[VertexSet],
    product: &LabeledProduct,
) -> Result<CountingTable, AuditError> {
    if columns.len() != product.h_order() || g.order() != product.g_order() {
        return Err(AuditError::Inconsistent(
            "column data does not match product".into(),
        ));
    }
    let mut members = Vec::new();
    let mut agreement = true;
    for (i, block) in partition.blocks.iter().enumerate() {
        for (v, q) in columns.iter().enumerate() {
            let fiber = product.column_fiber(block, v);
            let reach = product
                .graph()
                .closed_neighborhood_of_set(&product.column_fiber(q, v))?;
            let in_product = fiber.is_subset(&reach);
            let in_factor = block.is_subset(&g.closed_neighborhood_of_set(q)?);
            agreement &= in_product == in_factor;
            if in_product {
                members.push((i, v));
            }
        }
    }
    let mut table = CountingTable::from_members(members, partition.len(), columns.len());
    table.criterion_agreement = agreement;
    Ok(table)
}

/// Result of checking that every column missed by `N_H[P_i]` lands in `L_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCheck {
    /// Pairs `(i, v)` with `v ∉ N_H[P_i]` but `(i, v) ∉ C`.
    pub missing: Vec<(usize, usize)>,
    /// `|L_i| ≥ |V(H) − N_H[P_i]|` for every `i`.
    pub row_bounds_hold: bool,
    /// `Σ_i |V(H) − N_H[P_i]|`.
    pub undominated_total: usize,
    /// `N ≥ Σ_i |V(H) − N_H[P_i]|`.
    pub total_bound_holds: bool,
}

impl MembershipCheck {
    pub fn holds(&self) -> bool {
        self.missing.is_empty() && self.row_bounds_hold && self.total_bound_holds
    }
}

pub fn check_l_membership(undominated: &[VertexSet], table: &CountingTable) -> MembershipCheck {
    let mut missing = Vec::new();
    let mut row_bounds_hold = true;
    for (i, u) in undominated.iter().enumerate() {
        for v in u {
            if !table.contains(i, v) {
                missing.push((i, v));
            }
        }
        row_bounds_hold &= table.row_counts.get(i).copied().unwrap_or(0) >= u.len();
    }
    let undominated_total: usize = undominated.iter().map(VertexSet::len).sum();
    MembershipCheck {
        missing,
        row_bounds_hold,
        undominated_total,
        total_bound_holds: table.n() >= undominated_total,
    }
}

/// A column where `|R_v| > |Q_v|`, with the replacement set
/// `Q_v ∪ {u_j : (j, v) ∉ R_v}` that would beat `γ(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeDefect {
    pub column: usize,
    pub replacement: VertexSet,
    pub dominates: bool,
    pub gamma_g: usize,
}

impl ExchangeDefect {
    /// The replacement is a dominating set smaller than `γ(G)`, i.e. the
    /// claimed `γ(G)` or γ-set is wrong.
    pub fn is_contradiction(&self) -> bool {
        self.dominates && self.replacement.len() < self.gamma_g
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountBounds {
    /// `γ(G)γ(H) − |V_1| − |V_2|`, possibly negative.
    pub lower: i64,
    pub n: usize,
    /// `|V_2|`.
    pub upper: usize,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// Columns with `|R_v| > |Q_v|`.
    pub defects: Vec<ExchangeDefect>,
}

impl CountBounds {
    pub fn exchange_holds(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds && self.exchange_holds()
    }
}

/// Checks `γ(G)γ(H) − |V_1| − |V_2| ≤ N ≤ |V_2|` and `|R_v| ≤ |Q_v|` per
/// column, building the exchange set for every offending column.
pub fn check_n_bounds(
    g: &Graph,
    partition: &DominatorPartition,
    gamma_h: usize,
    ones: usize,
    twos: usize,
    columns: &[VertexSet],
    table: &CountingTable,
) -> Result<CountBounds, GraphError> {
    let gamma_g = partition.len();
    let lower = (gamma_g * gamma_h) as i64 - ones as i64 - twos as i64;
    let n = table.n();
    let mut defects = Vec::new();
    for (v, q) in columns.iter().enumerate() {
        let r = table.column_counts.get(v).copied().unwrap_or(0);
        if r > q.len() {
            let mut replacement = q.clone();
            for (j, &u) in partition.representatives.iter().enumerate() {
                if !table.contains(j, v) {
                    replacement.insert(u);
                }
            }
            let dominates = g.is_dominating(&replacement)?;
            defects.push(ExchangeDefect {
                column: v,
                replacement,
                dominates,
                gamma_g,
            });
        }
    }
    Ok(CountBounds {
        lower,
        n,
        upper: twos,
        lower_holds: n as i64 >= lower,
        upper_holds: n <= twos,
        defects,
    })
}

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub tie_break: TieBreak,
    /// Refuse a supplied Roman function that is not minimum weight.
    pub require_optimal: bool,
    pub product_cap: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            tie_break: TieBreak::Smallest,
            require_optimal: true,
            product_cap: DEFAULT_PRODUCT_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceDescriptor {
    pub label: String,
    pub order: usize,
    pub graph6: String,
}

impl InstanceDescriptor {
    pub fn of(g: &Graph) -> Self {
        let graph6 = write_graph6(g);
        Self {
            label: graph6.clone(),
            order: g.order(),
            graph6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    /// `γ(G)γ(H) ≤ γ_R(G □ H)`.
    pub theorem2: bool,
    /// `γ(G)γ(H) ≤ 2γ(G □ H)`.
    pub theorem1: bool,
    /// `γ(G □ H) ≤ γ_R(G □ H) ≤ 2γ(G □ H)`.
    pub lemma1_product: bool,
    /// `V_2` is a minimum dominating set of `(G □ H)[V_0 ∪ V_2]`.
    pub lemma2_product: bool,
    /// Every step check recorded in the trace.
    pub trace_checks: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.theorem2
            && self.theorem1
            && self.lemma1_product
            && self.lemma2_product
            && self.trace_checks
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub g: InstanceDescriptor,
    pub h: InstanceDescriptor,
    pub gamma_g: usize,
    pub gamma_h: usize,
    pub gamma_product: usize,
    pub gamma_r_product: usize,
    /// `γ(G)γ(H)`.
    pub product_of_gammas: usize,
    /// `2γ(G □ H)`.
    pub clark_suen_bound: usize,
    /// `γ_R(G □ H) − γ(G)γ(H)`.
    pub gap: i64,
    pub verdicts: Verdicts,
    pub tie_break: String,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub solve_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_ref: Option<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.verdicts.all()
    }

    /// `γ_R(G □ H) < 2γ(G □ H)`: the Roman bound is strictly sharper here.
    pub fn strict_improvement(&self) -> bool {
        self.gamma_r_product < self.clark_suen_bound
    }
}

/// Runs the full audit with default options.
pub fn audit_pair(
    g: &Graph,
    h: &Graph,
    budget: SolverBudget,
) -> Result<(AuditReport, ProofTrace), AuditError> {
    audit_pair_with(g, h, budget, &AuditOptions::default())
}

pub fn audit_pair_with(
    g: &Graph,
    h: &Graph,
    budget: SolverBudget,
    options: &AuditOptions,
) -> Result<(AuditReport, ProofTrace), AuditError> {
    audit_inner(g, h, None, budget, options)
}

/// Audits with a caller-supplied Roman function on `G □ H`. With
/// `require_optimal` set (the default), a non-minimum `f` is rejected.
pub fn audit_pair_with_rdf(
    g: &Graph,
    h: &Graph,
    f: RomanFunction,
    budget: SolverBudget,
    options: &AuditOptions,
) -> Result<(AuditReport, ProofTrace), AuditError> {
    audit_inner(g, h, Some(f), budget, options)
}

fn audit_inner(
    g: &Graph,
    h: &Graph,
    supplied: Option<RomanFunction>,
    budget: SolverBudget,
    options: &AuditOptions,
) -> Result<(AuditReport, ProofTrace), AuditError> {
    let start = Instant::now();
    let gamma_g = gamma_exact(g, budget).map_err(AuditError::at("gamma(G)"))?;
    let gamma_h = gamma_exact(h, budget).map_err(AuditError::at("gamma(H)"))?;
    let product = cartesian_product_capped(g, h, options.product_cap)?;
    let pg = product.graph();
    let gamma_p = gamma_exact(pg, budget).map_err(AuditError::at("gamma(GxH)"))?;
    let roman = gamma_roman_exact(pg, budget).map_err(AuditError::at("gamma_R(GxH)"))?;
    let nodes = gamma_g.nodes_explored
        + gamma_h.nodes_explored
        + gamma_p.nodes_explored
        + roman.nodes_explored;

    let f = match supplied {
        Some(f) => {
            if f.order() != pg.order() {
                return Err(AuditError::Inconsistent(format!(
                    "Roman function over {} vertices, product has {}",
                    f.order(),
                    pg.order()
                )));
            }
            if !is_rdf(pg, &f).map_err(AuditError::at("validate f"))? {
                return Err(AuditError::Solve {
                    stage: "validate f",
                    source: SolveError::InvalidRomanFunction(
                        "some vertex labeled 0 has no neighbor labeled 2".into(),
                    ),
                });
            }
            if options.require_optimal && f.weight() != roman.value {
                return Err(AuditError::Solve {
                    stage: "validate f",
                    source: SolveError::NotOptimal {
                        weight: f.weight(),
                        optimum: roman.value,
                    },
                });
            }
            f
        }
        None => roman.witness.clone(),
    };

    let gamma_set = gamma_g.witness.to_vec();
    let partition = build_partition_with(g, &gamma_set, gamma_g.value, options.tie_break)?;
    let trace = ProofTrace::assemble(&TraceInputs {
        g,
        h,
        product: &product,
        f: &f,
        partition: &partition,
        tie_break: options.tie_break,
        gamma_h: gamma_h.value,
        gamma_h_witness: &gamma_h.witness,
        gamma_product: gamma_p.value,
        gamma_product_witness: &gamma_p.witness,
        gamma_r_product: roman.value,
    })?;

    // Only minimum-weight functions are covered by the lemma; a non-optimal
    // experimental f is reported as not applicable (true).
    let optimal = f.weight() == roman.value;
    let lemma2_holds = if optimal {
        check_lemma2_unchecked_optimality(pg, &f, budget)
            .map_err(AuditError::at("lemma 2 on GxH"))?
            .holds()
    } else {
        true
    };

    let product_of_gammas = gamma_g.value * gamma_h.value;
    let clark_suen_bound = 2 * gamma_p.value;
    let verdicts = Verdicts {
        theorem2: product_of_gammas <= roman.value,
        theorem1: product_of_gammas <= clark_suen_bound,
        lemma1_product: SandwichVerdict::from_values(gamma_p.value, roman.value).holds,
        lemma2_product: lemma2_holds,
        trace_checks: trace.checks.all(),
    };
    let report = AuditReport {
        g: InstanceDescriptor::of(g),
        h: InstanceDescriptor::of(h),
        gamma_g: gamma_g.value,
        gamma_h: gamma_h.value,
        gamma_product: gamma_p.value,
        gamma_r_product: roman.value,
        product_of_gammas,
        clark_suen_bound,
        gap: roman.value as i64 - product_of_gammas as i64,
        verdicts,
        tie_break: options.tie_break.to_string(),
        nodes_explored: nodes,
        solve_ms: start.elapsed().as_secs_f64() * 1e3,
        trace_ref: None,
    };
    Ok((report, trace))
}

/// `γ_R(K_2) = 2` yet `γ_R(K_2 □ K_2) = 3`, so `γ_R(G)γ_R(H) ≤ γ_R(G □ H)`
/// fails for `G = H = K_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RomanProductCounterexample {
    pub gamma_r_k2: usize,
    pub gamma_r_k2_square: usize,
    pub gamma_k2_square: usize,
    /// `γ_R(K_2)² > γ_R(K_2 □ K_2)`.
    pub analogue_fails: bool,
    /// `γ(K_2□K_2) ≤ γ_R(K_2□K_2) ≤ 2γ(K_2□K_2)`.
    pub sandwich_holds: bool,
}

pub fn check_remark(budget: SolverBudget) -> Result<RomanProductCounterexample, AuditError> {
    let k2 = Graph::new(2, [(0, 1)])?;
    let square = cartesian_product_capped(&k2, &k2, DEFAULT_PRODUCT_CAP)?;
    let gamma_r_k2 = gamma_roman_exact(&k2, budget)
        .map_err(AuditError::at("gamma_R(K2)"))?
        .value;
    let gamma_r_k2_square = gamma_roman_exact(square.graph(), budget)
        .map_err(AuditError::at("gamma_R(K2xK2)"))?
        .value;
    let gamma_k2_square = gamma_exact(square.graph(), budget)
        .map_err(AuditError::at("gamma(K2xK2)"))?
        .value;
    Ok(RomanProductCounterexample {
        gamma_r_k2,
        gamma_r_k2_square,
        gamma_k2_square,
        analogue_fails: gamma_r_k2 * gamma_r_k2 > gamma_r_k2_square,
        sandwich_holds: SandwichVerdict::from_values(gamma_k2_square, gamma_r_k2_square).holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;
    use crate::product::cartesian_product;

    fn k2() -> Graph {
        Family::Path(2).build().unwrap()
    }

    fn set(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_iter_in(n, members.iter().copied())
    }

    /// The weight-3 witness on K_2 □ K_2: 2 at (0,0), 1 at (1,1).
    fn square_witness(p: &LabeledProduct) -> RomanFunction {
        RomanFunction::new(
            p.set_from_pairs([(0, 1), (1, 0)]).unwrap(),
            p.set_from_pairs([(1, 1)]).unwrap(),
            p.set_from_pairs([(0, 0)]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn partition_examples() {
        let part = build_partition(&k2(), &[0], 1).unwrap();
        assert_eq!(part.blocks(), &[set(2, &[0, 1])]);

        let c4 = Family::Cycle(4).build().unwrap();
        let part = build_partition(&c4, &[0, 2], 2).unwrap();
        assert_eq!(part.blocks(), &[set(4, &[0, 1, 3]), set(4, &[2])]);
        assert!(part.check(&c4).holds());

        let p3 = Family::Path(3).build().unwrap();
        let part = build_partition(&p3, &[1], 1).unwrap();
        assert_eq!(part.blocks(), &[set(3, &[0, 1, 2])]);
    }

    #[test]
    fn partition_rules_differ_but_stay_valid() {
        let c4 = Family::Cycle(4).build().unwrap();
        let largest = build_partition_with(&c4, &[0, 2], 2, TieBreak::Largest).unwrap();
        assert_eq!(largest.blocks(), &[set(4, &[0]), set(4, &[1, 2, 3])]);
        assert!(largest.check(&c4).holds());
        for seed in 0..20 {
            let seeded = build_partition_with(&c4, &[0, 2], 2, TieBreak::Seeded(seed)).unwrap();
            assert!(seeded.check(&c4).holds());
        }
    }

    #[test]
    fn partition_errors() {
        let c4 = Family::Cycle(4).build().unwrap();
        assert!(matches!(
            build_partition(&c4, &[0], 1),
            Err(AuditError::NotDominating(_))
        ));
        assert_eq!(
            build_partition(&c4, &[0, 1, 2], 2).unwrap_err(),
            AuditError::WrongSize {
                expected: 2,
                found: 3
            }
        );
        assert!(build_partition(&c4, &[0, 0, 2], 2).is_err());
    }

    #[test]
    fn tie_break_parsing() {
        for rule in [TieBreak::Smallest, TieBreak::Largest, TieBreak::Seeded(9)] {
            assert_eq!(rule.to_string().parse::<TieBreak>().unwrap(), rule);
        }
        assert!("middle".parse::<TieBreak>().is_err());
    }

    #[test]
    fn slices_on_square_witness() {
        let p = cartesian_product(&k2(), &k2()).unwrap();
        let f = square_witness(&p);
        let part = build_partition(&k2(), &[0], 1).unwrap();
        let slices = compute_slices(&f, &part, &p).unwrap();
        assert_eq!(slices.len(), 1);
        assert_eq!(p.pairs_of(&slices[0].d), vec![(0, 0), (1, 1)]);
        assert_eq!(slices[0].p.to_vec(), vec![0, 1]);
    }

    #[test]
    fn slices_of_empty_d() {
        let p = cartesian_product(&k2(), &k2()).unwrap();
        let zeros = RomanFunction::from_labels(&[0, 0, 0, 0]).unwrap();
        let part = build_partition(&k2(), &[0], 1).unwrap();
        let slices = compute_slices(&zeros, &part, &p).unwrap();
        assert!(slices.iter().all(|s| s.d.is_empty() && s.p.is_empty()));
    }

    #[test]
    fn single_block_slice_is_projection_of_d() {
        let g = Family::Star(4).build().unwrap();
        let h = Family::Path(3).build().unwrap();
        let p = cartesian_product(&g, &h).unwrap();
        let f = gamma_roman_exact(p.graph(), SolverBudget::default())
            .unwrap()
            .witness;
        let part = build_partition(&g, &[0], 1).unwrap();
        let slices = compute_slices(&f, &part, &p).unwrap();
        let d = f.positive_set();
        assert_eq!(slices[0].d, d);
        let proj: std::collections::BTreeSet<usize> = d.iter().map(|id| p.decode(id).1).collect();
        assert_eq!(slices[0].p.to_vec(), proj.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn slices_reject_mismatched_orders() {
        let p = cartesian_product(&k2(), &k2()).unwrap();
        let f = RomanFunction::from_labels(&[1, 1, 1]).unwrap();
        let part = build_partition(&k2(), &[0], 1).unwrap();
        assert!(compute_slices(&f, &part, &p).is_err());
        let c4 = Family::Cycle(4).build().unwrap();
        let other = build_partition(&c4, &[0, 2], 2).unwrap();
        assert!(compute_slices(&square_witness(&p), &other, &p).is_err());
    }

    #[test]
    fn projection_bound_examples() {
        let r = check_projection_bound(&k2(), &VertexSet::empty(2), 1).unwrap();
        assert_eq!(r.undominated.to_vec(), vec![0, 1]);
        assert!(r.dominates_h && r.bound_holds);

        let c4 = Family::Cycle(4).build().unwrap();
        let r = check_projection_bound(&c4, &set(4, &[0]), 2).unwrap();
        assert_eq!(r.undominated.to_vec(), vec![2]);
        assert!(r.dominates_h && r.bound_holds);

        let r = check_projection_bound(&c4, &set(4, &[0, 2]), 2).unwrap();
        assert!(r.undominated.is_empty());
        assert!(r.dominates_h && r.bound_holds);
    }

    #[test]
    fn column_examples() {
        let p = cartesian_product(&k2(), &k2()).unwrap();
        let cols = compute_columns(&square_witness(&p), &p).unwrap();
        assert_eq!(cols, vec![set(2, &[0]), set(2, &[])]);

        let ones = RomanFunction::from_labels(&[1, 1, 1, 1]).unwrap();
        assert!(compute_columns(&ones, &p)
            .unwrap()
            .iter()
            .all(VertexSet::is_empty));

        let g = Family::Path(3).build().unwrap();
        let h = Family::Path(2).build().unwrap();
        let p = cartesian_product(&g, &h).unwrap();
        let twos = p.set_from_pairs((0..3).map(|u| (u, 1))).unwrap();
        let f = RomanFunction::completing(p.graph(), &twos).unwrap();
        let cols = compute_columns(&f, &p).unwrap();
        assert_eq!(cols, vec![set(3, &[]), set(3, &[0, 1, 2])]);
    }

    #[test]
    fn counting_table_on_square_witness() {
        let g = k2();
        let p = cartesian_product(&g, &g).unwrap();
        let part = build_partition(&g, &[0], 1).unwrap();
        let cols = compute_columns(&square_witness(&p), &p).unwrap();
        let table = compute_c(&g, &part, &cols, &p).unwrap();
        assert_eq!(table.members, vec![(0, 0)]);
        assert_eq!(table.n(), 1);
        assert!(table.identity_holds());
        assert!(table.criterion_agreement);
    }

    #[test]
    fn full_and_empty_columns() {
        let g = Family::Cycle(4).build().unwrap();
        let h = k2();
        let p = cartesian_product(&g, &h).unwrap();
        let part = build_partition(&g, &[0, 2], 2).unwrap();
        let cols = vec![VertexSet::full(4), VertexSet::empty(4)];
        let table = compute_c(&g, &part, &cols, &p).unwrap();
        assert_eq!(table.members, vec![(0, 0), (1, 0)]);
        assert_eq!(table.column_counts, vec![2, 0]);
    }

    #[test]
    fn membership_on_square_witness() {
        let g = k2();
        let p = cartesian_product(&g, &g).unwrap();
        let f = square_witness(&p);
        let part = build_partition(&g, &[0], 1).unwrap();
        let slices = compute_slices(&f, &part, &p).unwrap();
        let u = check_projection_bound(&g, &slices[0].p, 1)
            .unwrap()
            .undominated;
        assert!(u.is_empty());
        let cols = compute_columns(&f, &p).unwrap();
        let table = compute_c(&g, &part, &cols, &p).unwrap();
        assert!(check_l_membership(&[u], &table).holds());
    }

    #[test]
    fn membership_detects_missing_pairs() {
        let table = CountingTable::from_members(vec![(0, 0)], 1, 2);
        let check = check_l_membership(&[set(2, &[0, 1])], &table);
        assert_eq!(check.missing, vec![(0, 1)]);
        assert!(!check.row_bounds_hold);
        assert!(!check.holds());
    }

    #[test]
    fn n_bounds_on_square_witness() {
        let g = k2();
        let p = cartesian_product(&g, &g).unwrap();
        let f = square_witness(&p);
        let part = build_partition(&g, &[0], 1).unwrap();
        let cols = compute_columns(&f, &p).unwrap();
        let table = compute_c(&g, &part, &cols, &p).unwrap();
        let b = check_n_bounds(&g, &part, 1, 1, 1, &cols, &table).unwrap();
        assert_eq!((b.lower, b.n, b.upper), (-1, 1, 1));
        assert!(b.holds());
    }

    #[test]
    fn exchange_contradiction_is_exhibited() {
        // Feed a non-minimum "γ-set" {0, 2} of P_3: the column holding the
        // centre as a 2 covers both blocks, and the exchange set {1}
        // dominates P_3 with fewer than two vertices.
        let g = Family::Path(3).build().unwrap();
        let h = Graph::edgeless(1).unwrap();
        let p = cartesian_product(&g, &h).unwrap();
        let f = RomanFunction::from_labels(&[0, 2, 0]).unwrap();
        let part = build_partition(&g, &[0, 2], 2).unwrap();
        let cols = compute_columns(&f, &p).unwrap();
        let table = compute_c(&g, &part, &cols, &p).unwrap();
        assert_eq!(table.column_counts, vec![2]);
        let b = check_n_bounds(&g, &part, 1, 0, 1, &cols, &table).unwrap();
        assert!(!b.exchange_holds());
        assert_eq!(b.defects.len(), 1);
        let defect = &b.defects[0];
        assert_eq!(defect.replacement.to_vec(), vec![1]);
        assert!(defect.is_contradiction());
    }

    #[test]
    fn exchange_defect_from_corrupted_table() {
        let g = k2();
        let part = build_partition(&g, &[0], 1).unwrap();
        let cols = vec![set(2, &[0]), set(2, &[])];
        let corrupted = CountingTable::from_members(vec![(0, 0), (0, 1)], 1, 2);
        let b = check_n_bounds(&g, &part, 1, 1, 1, &cols, &corrupted).unwrap();
        assert_eq!(b.defects.len(), 1);
        assert_eq!(b.defects[0].column, 1);
        assert!(!b.defects[0].is_contradiction());
        assert!(!b.upper_holds);
    }

    #[test]
    fn audit_square() {
        let (report, trace) = audit_pair(&k2(), &k2(), SolverBudget::default()).unwrap();
        assert_eq!(report.product_of_gammas, 1);
        assert_eq!(report.gamma_r_product, 3);
        assert_eq!(report.gamma_product, 2);
        assert!(report.passed());
        assert!(trace.checks.all());
    }

    #[test]
    fn audit_with_trivial_factor_reduces_to_sandwich() {
        let h = Family::Cycle(5).build().unwrap();
        let (report, _) =
            audit_pair(&Graph::edgeless(1).unwrap(), &h, SolverBudget::default()).unwrap();
        assert_eq!(report.product_of_gammas, 2);
        assert_eq!(report.gamma_r_product, 4);
        assert!(report.passed());
    }

    #[test]
    fn audit_rejects_suboptimal_f_by_default() {
        let g = k2();
        let ones = RomanFunction::from_labels(&[1, 1, 1, 1]).unwrap();
        let b = SolverBudget::default();
        let err =
            audit_pair_with_rdf(&g, &g, ones.clone(), b, &AuditOptions::default()).unwrap_err();
        assert!(matches!(
            err,
            AuditError::Solve {
                source: SolveError::NotOptimal {
                    weight: 4,
                    optimum: 3
                },
                ..
            }
        ));
        let lax = AuditOptions {
            require_optimal: false,
            ..AuditOptions::default()
        };
        let (report, trace) = audit_pair_with_rdf(&g, &g, ones, b, &lax).unwrap();
        assert!(trace.checks.conclusion);
        assert!(!trace.checks.weight_consistency);
        assert!(!report.passed());
    }

    #[test]
    fn audit_budget_failure_names_stage() {
        let g = Family::Cycle(5).build().unwrap();
        let tight = SolverBudget::new(1_000_000, 10);
        let err = audit_pair(&g, &g, tight).unwrap_err();
        assert!(err.is_budget());
        assert!(err.to_string().starts_with("gamma(GxH)"));
        let capped = AuditOptions {
            product_cap: 20,
            ..AuditOptions::default()
        };
        assert!(matches!(
            audit_pair_with(&g, &g, SolverBudget::default(), &capped),
            Err(AuditError::Graph(GraphError::ProductTooLarge {
                order: 25,
                cap: 20
            }))
        ));
    }

    #[test]
    fn remark_counterexample() {
        let r = check_remark(SolverBudget::default()).unwrap();
        assert_eq!(
            (r.gamma_r_k2, r.gamma_r_k2_square, r.gamma_k2_square),
            (2, 3, 2)
        );
        assert!(r.analogue_fails);
        assert!(r.sandwich_holds);
    }
}
