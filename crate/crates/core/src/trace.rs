//! Serializable proof traces and their solver-free re-verification.
//!
//! A trace stores both factor graphs (graph6), the Roman function on the
//! product, the dominator partition and every intermediate set extensionally,
//! so [`verify_trace`] can recompute each set from `f` and the partition and
//! re-evaluate every inequality from the recorded numbers alone.
//!
//! Conventions: product vertices are `[u, v]` pairs; blocks and columns are
//! 0-based; every vertex list is sorted ascending.

use serde::{Deserialize, Serialize};

use crate::audit::{
    check_l_membership, check_n_bounds, check_projection_bound, compute_c, compute_columns,
    slices_of, DominatorPartition, TieBreak,
};
use crate::domination::{gamma_exact, gamma_roman_exact, is_rdf, RomanFunction, SolverBudget};
use crate::error::{AuditError, TraceError};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, write_graph6};
use crate::product::{cartesian_product_capped, LabeledProduct};
use crate::vertex_set::VertexSet;

pub const TRACE_SCHEMA: &str = "domcheck.proof-trace/v1";

/// A product vertex `(u, v)`.
pub type Pair = [usize; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub order: usize,
    pub graph6: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdfRecord {
    pub v0: Vec<Pair>,
    pub v1: Vec<Pair>,
    pub v2: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub tie_break: String,
    pub representatives: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub index: usize,
    /// `D_i`.
    pub d: Vec<Pair>,
    /// `P_i`.
    pub p: Vec<usize>,
    /// `V(H) − N_H[P_i]`.
    pub undominated: Vec<usize>,
    pub undominated_count: usize,
    /// `|L_i|`.
    pub l_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRecord {
    pub v: usize,
    /// `Q_v` as first-factor vertices.
    pub q: Vec<usize>,
    /// `|R_v|`.
    pub r_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    /// `γ(G)γ(H)`.
    pub product_of_gammas: usize,
    /// `Σ_i |V(H) − N_H[P_i]|`.
    pub undominated_total: usize,
    /// `γ(G)γ(H) − |V_1| − |V_2|`.
    pub lower_bound: i64,
    /// `|V_2|`.
    pub upper_bound: usize,
    /// `|V_1| + 2|V_2|`.
    pub weight: usize,
    /// `2γ(G □ H)`.
    pub clark_suen_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeDefectRecord {
    pub column: usize,
    pub replacement: Vec<usize>,
    pub dominates: bool,
}

/// Named verdicts for each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceChecks {
    pub partition_valid: bool,
    pub d_dominates_product: bool,
    pub v2_dominates_residual: bool,
    pub slices_partition_d: bool,
    pub projection_dominates_h: bool,
    pub projection_bound: bool,
    pub c_criterion_agreement: bool,
    pub l_membership: bool,
    pub counting_identity: bool,
    pub lower_bound: bool,
    pub exchange_bound: bool,
    pub upper_bound: bool,
    pub weight_consistency: bool,
    pub conclusion: bool,
    pub theorem1: bool,
}

impl TraceChecks {
    pub fn named(&self) -> [(&'static str, bool); 15] {
        [
            ("partition_valid", self.partition_valid),
            ("d_dominates_product", self.d_dominates_product),
            ("v2_dominates_residual", self.v2_dominates_residual),
            ("slices_partition_d", self.slices_partition_d),
            ("projection_dominates_h", self.projection_dominates_h),
            ("projection_bound", self.projection_bound),
            ("c_criterion_agreement", self.c_criterion_agreement),
            ("l_membership", self.l_membership),
            ("counting_identity", self.counting_identity),
            ("lower_bound", self.lower_bound),
            ("exchange_bound", self.exchange_bound),
            ("upper_bound", self.upper_bound),
            ("weight_consistency", self.weight_consistency),
            ("conclusion", self.conclusion),
            ("theorem1", self.theorem1),
        ]
    }

    pub fn all(&self) -> bool {
        self.named().iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub schema: String,
    pub g: GraphRecord,
    pub h: GraphRecord,
    pub gamma_g: usize,
    pub gamma_h: usize,
    pub gamma_product: usize,
    pub gamma_r_product: usize,
    pub gamma_h_witness: Vec<usize>,
    pub gamma_product_witness: Vec<Pair>,
    pub f: RdfRecord,
    pub partition: PartitionRecord,
    pub per_block: Vec<BlockRecord>,
    pub per_column: Vec<ColumnRecord>,
    /// `C` as `[i, v]` pairs.
    pub c: Vec<Pair>,
    /// `N = |C|`.
    pub n: usize,
    pub bounds: BoundsRecord,
    #[serde(default)]
    pub defects: Vec<ExchangeDefectRecord>,
    pub checks: TraceChecks,
}

/// Everything needed to build a trace.
pub struct TraceInputs<'a> {
    pub g: &'a Graph,
    pub h: &'a Graph,
    pub product: &'a LabeledProduct,
    pub f: &'a RomanFunction,
    pub partition: &'a DominatorPartition,
    pub tie_break: TieBreak,
    pub gamma_h: usize,
    pub gamma_h_witness: &'a VertexSet,
    pub gamma_product: usize,
    pub gamma_product_witness: &'a VertexSet,
    pub gamma_r_product: usize,
}

fn pairs(product: &LabeledProduct, set: &VertexSet) -> Vec<Pair> {
    product
        .pairs_of(set)
        .into_iter()
        .map(|(u, v)| [u, v])
        .collect()
}

impl ProofTrace {
    pub fn assemble(inputs: &TraceInputs<'_>) -> Result<Self, AuditError> {
        let TraceInputs {
            g,
            h,
            product,
            f,
            partition,
            ..
        } = *inputs;
        let pg = product.graph();
        let gamma_g = partition.len();
        let d = f.positive_set();
        let slices = slices_of(&d, partition, product);
        if f.order() != pg.order() {
            return Err(AuditError::Inconsistent(
                "Roman function does not match product".into(),
            ));
        }
        let projections = slices
            .iter()
            .map(|s| check_projection_bound(h, &s.p, inputs.gamma_h))
            .collect::<Result<Vec<_>, _>>()?;
        let columns = compute_columns(f, product)?;
        let table = compute_c(g, partition, &columns, product)?;
        let undominated: Vec<VertexSet> =
            projections.iter().map(|p| p.undominated.clone()).collect();
        let membership = check_l_membership(&undominated, &table);
        let bounds = check_n_bounds(
            g,
            partition,
            inputs.gamma_h,
            f.v1().len(),
            f.v2().len(),
            &columns,
            &table,
        )?;

        let product_of_gammas = gamma_g * inputs.gamma_h;
        let weight = f.weight();
        let column_total: usize = columns.iter().map(VertexSet::len).sum();
        let slice_total: usize = slices.iter().map(|s| s.d.len()).sum();
        let checks = TraceChecks {
            partition_valid: partition.check(g).holds(),
            d_dominates_product: pg.is_dominating(&d)?,
            v2_dominates_residual: is_rdf(pg, f).map_err(AuditError::at("trace"))?,
            slices_partition_d: slice_total == d.len(),
            projection_dominates_h: projections.iter().all(|p| p.dominates_h),
            projection_bound: projections.iter().all(|p| p.bound_holds),
            c_criterion_agreement: table.criterion_agreement,
            l_membership: membership.holds(),
            counting_identity: table.identity_holds() && column_total == f.v2().len(),
            lower_bound: bounds.lower_holds,
            exchange_bound: bounds.exchange_holds(),
            upper_bound: bounds.upper_holds,
            weight_consistency: weight == inputs.gamma_r_product,
            conclusion: product_of_gammas <= weight,
            theorem1: product_of_gammas <= 2 * inputs.gamma_product,
        };

        Ok(ProofTrace {
            schema: TRACE_SCHEMA.to_string(),
            g: GraphRecord {
                order: g.order(),
                graph6: write_graph6(g),
            },
            h: GraphRecord {
                order: h.order(),
                graph6: write_graph6(h),
            },
            gamma_g,
            gamma_h: inputs.gamma_h,
            gamma_product: inputs.gamma_product,
            gamma_r_product: inputs.gamma_r_product,
            gamma_h_witness: inputs.gamma_h_witness.to_vec(),
            gamma_product_witness: pairs(product, inputs.gamma_product_witness),
            f: RdfRecord {
                v0: pairs(product, f.v0()),
                v1: pairs(product, f.v1()),
                v2: pairs(product, f.v2()),
            },
            partition: PartitionRecord {
                tie_break: inputs.tie_break.to_string(),
                representatives: partition.representatives().to_vec(),
                blocks: partition.blocks().iter().map(VertexSet::to_vec).collect(),
            },
            per_block: slices
                .iter()
                .zip(&projections)
                .enumerate()
                .map(|(i, (s, p))| BlockRecord {
                    index: i,
                    d: pairs(product, &s.d),
                    p: s.p.to_vec(),
                    undominated: p.undominated.to_vec(),
                    undominated_count: p.undominated.len(),
                    l_size: table.row_counts[i],
                })
                .collect(),
            per_column: columns
                .iter()
                .enumerate()
                .map(|(v, q)| ColumnRecord {
                    v,
                    q: q.to_vec(),
                    r_size: table.column_counts[v],
                })
                .collect(),
            c: table.members.iter().map(|&(i, v)| [i, v]).collect(),
            n: table.n(),
            bounds: BoundsRecord {
                product_of_gammas,
                undominated_total: membership.undominated_total,
                lower_bound: bounds.lower,
                upper_bound: bounds.upper,
                weight,
                clark_suen_bound: 2 * inputs.gamma_product,
            },
            defects: bounds
                .defects
                .iter()
                .map(|d| ExchangeDefectRecord {
                    column: d.column,
                    replacement: d.replacement.to_vec(),
                    dominates: d.dominates,
                })
                .collect(),
            checks,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TraceError> {
        let trace: ProofTrace = serde_json::from_str(text)?;
        if trace.schema != TRACE_SCHEMA {
            return Err(TraceError::Schema(trace.schema));
        }
        Ok(trace)
    }
}

/// One named re-verification step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TraceVerification {
    pub outcomes: Vec<CheckOutcome>,
}

impl TraceVerification {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        let detail = if passed { String::new() } else { detail.into() };
        self.outcomes.push(CheckOutcome {
            name,
            passed,
            detail,
        });
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Also confirm the four recorded optima by re-solving (solver calls).
    pub recheck_optimality: Option<SolverBudget>,
}

fn set_of(universe: usize, members: &[usize]) -> Result<VertexSet, String> {
    VertexSet::try_from_iter(universe, members.iter().copied())
        .map_err(|v| format!("vertex {v} out of range {universe}"))
}

fn product_set(product: &LabeledProduct, members: &[Pair]) -> Result<VertexSet, String> {
    product
        .set_from_pairs(members.iter().map(|&[u, v]| (u, v)))
        .map_err(|e| e.to_string())
}

/// Re-checks a trace from its recorded sets. Structural failures (unparsable
/// graphs, out-of-range members) are reported as failed outcomes, not errors.
pub fn verify_trace(trace: &ProofTrace) -> TraceVerification {
    verify_trace_with(trace, VerifyOptions::default())
}

pub fn verify_trace_with(trace: &ProofTrace, options: VerifyOptions) -> TraceVerification {
    let mut out = TraceVerification::default();
    out.push(
        "schema",
        trace.schema == TRACE_SCHEMA,
        format!("expected `{TRACE_SCHEMA}`, found `{}`", trace.schema),
    );

    let graphs = (|| -> Result<(Graph, Graph, LabeledProduct), String> {
        let g = parse_graph6(&trace.g.graph6).map_err(|e| e.to_string())?;
        let h = parse_graph6(&trace.h.graph6).map_err(|e| e.to_string())?;
        if g.order() != trace.g.order || h.order() != trace.h.order {
            return Err("recorded orders disagree with graph6".into());
        }
        let product = cartesian_product_capped(&g, &h, usize::MAX).map_err(|e| e.to_string())?;
        Ok((g, h, product))
    })();
    let (g, h, product) = match graphs {
        Ok(x) => {
            out.push("graphs", true, "");
            x
        }
        Err(e) => {
            out.push("graphs", false, e);
            return out;
        }
    };
    let pg = product.graph();

    // f and partition, rebuilt from the records
    let f = (|| -> Result<RomanFunction, String> {
        RomanFunction::new(
            product_set(&product, &trace.f.v0)?,
            product_set(&product, &trace.f.v1)?,
            product_set(&product, &trace.f.v2)?,
        )
        .map_err(|e| e.to_string())
    })();
    let f = match f {
        Ok(f) => {
            out.push("f_partition", true, "");
            f
        }
        Err(e) => {
            out.push("f_partition", false, e);
            return out;
        }
    };
    let partition = (|| -> Result<DominatorPartition, String> {
        let blocks = trace
            .partition
            .blocks
            .iter()
            .map(|b| set_of(g.order(), b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DominatorPartition::from_parts(
            trace.partition.representatives.clone(),
            blocks,
        ))
    })();
    let partition = match partition {
        Ok(p) => p,
        Err(e) => {
            out.push("partition_valid", false, e);
            return out;
        }
    };
    let pcheck = partition.check(&g);
    out.push("partition_valid", pcheck.holds(), format!("{pcheck:?}"));
    let ones = f.v1().len();
    let twos = f.v2().len();

    // certificates for the recorded optima
    let reps = set_of(g.order(), &trace.partition.representatives);
    out.push(
        "certificate_gamma_g",
        matches!(&reps, Ok(s) if s.len() == trace.gamma_g
            && trace.partition.representatives.len() == trace.gamma_g
            && g.is_dominating(s).unwrap_or(false)),
        "representatives are not a dominating set of size gamma_g",
    );
    let hw = set_of(h.order(), &trace.gamma_h_witness);
    out.push(
        "certificate_gamma_h",
        matches!(&hw, Ok(s) if s.len() == trace.gamma_h
            && trace.gamma_h_witness.len() == trace.gamma_h
            && h.is_dominating(s).unwrap_or(false)),
        "gamma_h_witness is not a dominating set of size gamma_h",
    );
    let pw = product_set(&product, &trace.gamma_product_witness);
    out.push(
        "certificate_gamma_product",
        matches!(&pw, Ok(s) if s.len() == trace.gamma_product
            && trace.gamma_product_witness.len() == trace.gamma_product
            && pg.is_dominating(s).unwrap_or(false)),
        "gamma_product_witness is not a dominating set of size gamma_product",
    );
    out.push(
        "v2_dominates_residual",
        is_rdf(pg, &f).unwrap_or(false),
        "some vertex labeled 0 has no neighbor labeled 2",
    );
    out.push(
        "d_dominates_product",
        pg.is_dominating(&f.positive_set()).unwrap_or(false),
        "V_1 ∪ V_2 does not dominate the product",
    );
    out.push(
        "weight_consistency",
        f.weight() == trace.gamma_r_product && trace.bounds.weight == f.weight(),
        format!(
            "|V_1| + 2|V_2| = {}, recorded weight {}, recorded gamma_R {}",
            f.weight(),
            trace.bounds.weight,
            trace.gamma_r_product
        ),
    );

    // recorded sets must equal the ones recomputed from f and the partition
    let mut mismatches = Vec::new();
    if pcheck.holds() {
        let d = f.positive_set();
        let slices = slices_of(&d, &partition, &product);
        let columns = compute_columns(&f, &product).expect("orders checked");
        let table = compute_c(&g, &partition, &columns, &product).expect("orders checked");
        if trace.per_block.len() != slices.len() {
            mismatches.push(format!(
                "{} block records for {} blocks",
                trace.per_block.len(),
                slices.len()
            ));
        }
        for (i, (rec, s)) in trace.per_block.iter().zip(&slices).enumerate() {
            let u = h
                .closed_neighborhood_of_set(&s.p)
                .expect("same universe")
                .complement();
            if rec.index != i {
                mismatches.push(format!("per_block[{i}].index"));
            }
            if rec.d != pairs(&product, &s.d) {
                mismatches.push(format!("per_block[{i}].d"));
            }
            if rec.p != s.p.to_vec() {
                mismatches.push(format!("per_block[{i}].p"));
            }
            if rec.undominated != u.to_vec() {
                mismatches.push(format!("per_block[{i}].undominated"));
            }
        }
        if trace.per_column.len() != columns.len() {
            mismatches.push(format!(
                "{} column records for {} columns",
                trace.per_column.len(),
                columns.len()
            ));
        }
        for (v, (rec, q)) in trace.per_column.iter().zip(&columns).enumerate() {
            if rec.v != v {
                mismatches.push(format!("per_column[{v}].v"));
            }
            if rec.q != q.to_vec() {
                mismatches.push(format!("per_column[{v}].q"));
            }
        }
        let c: Vec<Pair> = table.members.iter().map(|&(i, v)| [i, v]).collect();
        if trace.c != c {
            mismatches.push("c".into());
        }
    } else {
        mismatches.push("partition invalid; sets not recomputed".into());
    }
    out.push(
        "recorded_sets",
        mismatches.is_empty(),
        mismatches.join(", "),
    );

    // every inequality, from the recorded numbers and sets
    let h_order = h.order();
    let gamma_h = trace.gamma_h;
    let mut proj_dom = true;
    let mut proj_bound = true;
    let mut membership = true;
    let mut undominated_sets = Vec::new();
    for rec in &trace.per_block {
        let (Ok(p), Ok(u)) = (set_of(h_order, &rec.p), set_of(h_order, &rec.undominated)) else {
            proj_dom = false;
            proj_bound = false;
            continue;
        };
        proj_dom &= h.is_dominating(&p.union(&u)).unwrap_or(false);
        proj_bound &= rec.undominated_count == u.len() && u.len() + p.len() >= gamma_h;
        undominated_sets.push(u);
    }
    out.push(
        "projection_dominates_h",
        proj_dom,
        "some P_i ∪ U_i does not dominate H",
    );
    out.push(
        "projection_bound",
        proj_bound,
        "|V(H) − N_H[P_i]| < γ(H) − |P_i| for some i",
    );

    let blocks = trace.per_block.len();
    let cols = trace.per_column.len();
    let c_in_range = trace.c.iter().all(|&[i, v]| i < blocks && v < cols);
    let members: Vec<(usize, usize)> = trace.c.iter().map(|&[i, v]| (i, v)).collect();
    let recorded_table = if c_in_range {
        Some(crate::audit::CountingTable::from_members(
            members, blocks, cols,
        ))
    } else {
        None
    };
    if let Some(table) = &recorded_table {
        membership &= check_l_membership(&undominated_sets, table).holds();
    } else {
        membership = false;
    }
    out.push(
        "l_membership",
        membership,
        "some (i, v) with v ∉ N_H[P_i] is missing from C",
    );

    let l_total: usize = trace.per_block.iter().map(|b| b.l_size).sum();
    let r_total: usize = trace.per_column.iter().map(|c| c.r_size).sum();
    let q_total: usize = trace.per_column.iter().map(|c| c.q.len()).sum();
    let d_total: usize = trace.per_block.iter().map(|b| b.d.len()).sum();
    let fibers_match = recorded_table.as_ref().is_some_and(|t| {
        trace.c.len() == t.n()
            && trace
                .per_block
                .iter()
                .zip(&t.row_counts)
                .all(|(b, &k)| b.l_size == k)
            && trace
                .per_column
                .iter()
                .zip(&t.column_counts)
                .all(|(c, &k)| c.r_size == k)
    });
    out.push(
        "counting_identity",
        fibers_match
            && trace.n == trace.c.len()
            && l_total == trace.n
            && r_total == trace.n
            && q_total == twos
            && d_total == ones + twos,
        format!(
            "N = {}, |C| = {}, Σ|L_i| = {l_total}, Σ|R_v| = {r_total}, Σ|Q_v| = {q_total} (|V_2| = {twos}), Σ|D_i| = {d_total} (|D| = {})",
            trace.n,
            trace.c.len(),
            ones + twos
        ),
    );

    let pog = trace.gamma_g * gamma_h;
    let lower = pog as i64 - ones as i64 - twos as i64;
    out.push(
        "lower_bound",
        trace.n as i64 >= lower && trace.bounds.lower_bound == lower,
        format!("N = {} < γ(G)γ(H) − |V_1| − |V_2| = {lower}", trace.n),
    );
    let exchange = trace.per_column.iter().all(|c| c.r_size <= c.q.len());
    out.push(
        "exchange_bound",
        exchange && trace.defects.is_empty(),
        "|R_v| > |Q_v| for some v",
    );
    out.push(
        "upper_bound",
        trace.n <= twos && trace.bounds.upper_bound == twos,
        format!("N = {} > |V_2| = {twos}", trace.n),
    );
    out.push(
        "conclusion",
        pog <= ones + 2 * twos && trace.bounds.product_of_gammas == pog,
        format!("γ(G)γ(H) = {pog} > |V_1| + 2|V_2| = {}", ones + 2 * twos),
    );
    out.push(
        "theorem1",
        pog <= 2 * trace.gamma_product && trace.bounds.clark_suen_bound == 2 * trace.gamma_product,
        format!("γ(G)γ(H) = {pog} > 2γ(G□H) = {}", 2 * trace.gamma_product),
    );
    let bad_flags: Vec<&str> = trace
        .checks
        .named()
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| *name)
        .collect();
    out.push(
        "recorded_verdicts",
        bad_flags.is_empty(),
        format!("false flags: {bad_flags:?}"),
    );

    if let Some(budget) = options.recheck_optimality {
        let solved = (|| -> Result<[usize; 4], String> {
            let e = |e: crate::error::SolveError| e.to_string();
            Ok([
                gamma_exact(&g, budget).map_err(e)?.value,
                gamma_exact(&h, budget).map_err(e)?.value,
                gamma_exact(pg, budget).map_err(e)?.value,
                gamma_roman_exact(pg, budget).map_err(e)?.value,
            ])
        })();
        let recorded = [
            trace.gamma_g,
            trace.gamma_h,
            trace.gamma_product,
            trace.gamma_r_product,
        ];
        match solved {
            Ok(values) => out.push(
                "optimality",
                values == recorded,
                format!("solved {values:?}, recorded {recorded:?}"),
            ),
            Err(e) => out.push("optimality", false, e),
        }
    }
    out
}
