//! Named graph families and the `name:params` spec language.
//!
//! `random:n,p,seed` draws each pair `i < j` (lexicographic) independently:
//! a ChaCha8 stream seeded with `seed_from_u64(seed)` yields one `u64` per
//! pair, whose top 53 bits scaled by 2^-53 give a uniform `x` in [0, 1); the
//! edge is present iff `x < p`. ChaCha8 output is platform independent, so
//! a seed fixes the graph bit-for-bit.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// `K_{1, n-1}`: `n` vertices in total, center 0.
    Star(usize),
    Edgeless(usize),
    Petersen,
    Random {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl Family {
    pub fn build(&self) -> Result<Graph, GraphError> {
        let bad = |message: &str| GraphError::Family {
            spec: self.to_string(),
            message: message.to_string(),
        };
        match *self {
            Family::Path(n) => {
                if n == 0 {
                    return Err(bad("order must be at least 1"));
                }
                Graph::new(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(bad("cycles need at least 3 vertices"));
                }
                Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Complete(n) => {
                if n == 0 {
                    return Err(bad("order must be at least 1"));
                }
                Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
            }
            Family::CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return Err(bad("both sides must be nonempty"));
                }
                Graph::new(a + b, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))))
            }
            Family::Star(n) => {
                if n == 0 {
                    return Err(bad("order must be at least 1"));
                }
                Graph::new(n, (1..n).map(|i| (0, i)))
            }
            Family::Edgeless(n) => {
                if n == 0 {
                    return Err(bad("order must be at least 1"));
                }
                Graph::edgeless(n)
            }
            Family::Petersen => {
                let outer = (0..5).map(|i| (i, (i + 1) % 5));
                let spokes = (0..5).map(|i| (i, i + 5));
                let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
                Graph::new(10, outer.chain(spokes).chain(inner))
            }
            Family::Random { n, p, seed } => {
                if n == 0 {
                    return Err(bad("order must be at least 1"));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(bad("edge probability must lie in [0, 1]"));
                }
                Ok(random_graph(n, p, seed))
            }
        }
    }
}

/// Seeded Erdős–Rényi `G(n, p)`; see the module docs for the exact stream.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let x = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if x < p {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are in range")
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            Family::Star(n) => write!(f, "star:{n}"),
            Family::Edgeless(n) => write!(f, "edgeless:{n}"),
            Family::Petersen => write!(f, "petersen"),
            Family::Random { n, p, seed } => write!(f, "random:{n},{p},{seed}"),
        }
    }
}

/// Parses family specs such as `cycle:5`, `complete_bipartite:2,3`,
/// `random:8,0.4,42` or `petersen`. A random spec without a seed
/// (`random:8,0.4`) takes `default_seed`.
pub fn parse_family(spec: &str, default_seed: u64) -> Result<Family, GraphError> {
    let spec = spec.trim();
    let bad = |message: String| GraphError::Family {
        spec: spec.to_string(),
        message,
    };
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let fields: Vec<&str> = if params.is_empty() {
        Vec::new()
    } else {
        params.split(',').map(str::trim).collect()
    };
    let int = |k: usize| -> Result<usize, GraphError> {
        let tok = fields
            .get(k)
            .ok_or_else(|| bad(format!("missing parameter {}", k + 1)))?;
        tok.parse().map_err(|_| bad(format!("bad integer `{tok}`")))
    };
    let arity = |want: &[usize]| -> Result<(), GraphError> {
        if want.contains(&fields.len()) {
            Ok(())
        } else {
            Err(bad(format!(
                "expected {want:?} parameters, got {}",
                fields.len()
            )))
        }
    };
    let family = match name.to_ascii_lowercase().as_str() {
        "path" | "p" => {
            arity(&[1])?;
            Family::Path(int(0)?)
        }
        "cycle" | "c" => {
            arity(&[1])?;
            Family::Cycle(int(0)?)
        }
        "complete" | "k" => {
            arity(&[1])?;
            Family::Complete(int(0)?)
        }
        "complete_bipartite" | "bipartite" => {
            arity(&[2])?;
            Family::CompleteBipartite(int(0)?, int(1)?)
        }
        "star" => {
            arity(&[1])?;
            Family::Star(int(0)?)
        }
        "edgeless" | "empty" => {
            arity(&[1])?;
            Family::Edgeless(int(0)?)
        }
        "petersen" => {
            arity(&[0])?;
            Family::Petersen
        }
        "random" | "gnp" => {
            arity(&[2, 3])?;
            let p: f64 = fields[1]
                .parse()
                .map_err(|_| bad(format!("bad probability `{}`", fields[1])))?;
            let seed = match fields.get(2) {
                Some(tok) => tok.parse().map_err(|_| bad(format!("bad seed `{tok}`")))?,
                None => default_seed,
            };
            Family::Random {
                n: int(0)?,
                p,
                seed,
            }
        }
        other => return Err(bad(format!("unknown family `{other}`"))),
    };
    // Validate parameters eagerly so a bad spec fails at parse time.
    family.build()?;
    Ok(family)
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_family(s, 0)
    }
}

/// Expands an inclusive order range in the first parameter, e.g.
/// `path:2..6` into `path:2`, ..., `path:6`. Specs without a range yield
/// themselves.
pub fn expand_range(spec: &str) -> Result<Vec<String>, GraphError> {
    let spec = spec.trim();
    let Some((name, params)) = spec.split_once(':') else {
        return Ok(vec![spec.to_string()]);
    };
    let (first, rest) = match params.split_once(',') {
        Some((f, r)) => (f, Some(r)),
        None => (params, None),
    };
    let Some((lo, hi)) = first.split_once("..") else {
        return Ok(vec![spec.to_string()]);
    };
    let bad = |message: String| GraphError::Family {
        spec: spec.to_string(),
        message,
    };
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| bad(format!("bad range start `{lo}`")))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| bad(format!("bad range end `{hi}`")))?;
    if lo > hi {
        return Err(bad(format!("empty range {lo}..{hi}")));
    }
    Ok((lo..=hi)
        .map(|n| match rest {
            Some(r) => format!("{name}:{n},{r}"),
            None => format!("{name}:{n}"),
        })
        .collect())
}
