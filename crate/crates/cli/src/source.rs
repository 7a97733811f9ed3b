//! Graph source strings accepted on the command line.
//!
//! * family specs: `cycle:5`, `random:8,0.4,42`, `petersen`; a range in the
//!   first parameter (`path:2..6`) expands to several graphs;
//! * `connected:a..b` / `graphs:a..b`: every connected / every graph with
//!   order in the range, one per isomorphism class;
//! * `g6:<graph6>` or a bare graph6 string;
//! * `file:<path>` (or `@<path>`): `.g6`/`.graph6` files hold one graph6
//!   string per line, anything else is the `n m` + `u v` edge-list format.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use domcheck_core::corpus::all_graphs;
use domcheck_core::families::{expand_range, parse_family};
use domcheck_core::{parse_graph6, Graph};

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

fn read_file(path: &str) -> Result<Vec<NamedGraph>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let ext = Path::new(path)
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("");
    if matches!(ext, "g6" | "graph6") {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(i, line)| {
                let graph = parse_graph6(line).with_context(|| format!("{path}:{}", i + 1))?;
                Ok(NamedGraph {
                    name: line.to_string(),
                    graph,
                })
            })
            .collect()
    } else {
        let graph = Graph::from_adjacency_text(&text).with_context(|| format!("parsing {path}"))?;
        Ok(vec![NamedGraph {
            name: path.to_string(),
            graph,
        }])
    }
}

fn corpus(spec: &str, range: &str, connected: bool) -> Result<Vec<NamedGraph>> {
    let (lo, hi) = match range.split_once("..") {
        Some((lo, hi)) => (
            lo.trim().parse::<usize>()?,
            hi.trim_start_matches('=').trim().parse::<usize>()?,
        ),
        None => {
            let n = range.trim().parse::<usize>()?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        bail!("bad order range in `{spec}`");
    }
    let mut out = Vec::new();
    for n in lo..=hi {
        for graph in all_graphs(n, connected)? {
            out.push(NamedGraph {
                name: domcheck_core::write_graph6(&graph),
                graph,
            });
        }
    }
    Ok(out)
}

/// All graphs named by one source string, in a fixed order.
pub fn expand_source(spec: &str, default_seed: u64) -> Result<Vec<NamedGraph>> {
    let spec = spec.trim();
    if let Some(path) = spec
        .strip_prefix("file:")
        .or_else(|| spec.strip_prefix('@'))
    {
        return read_file(path);
    }
    if let Some(text) = spec.strip_prefix("g6:") {
        let graph = parse_graph6(text)?;
        return Ok(vec![NamedGraph {
            name: text.to_string(),
            graph,
        }]);
    }
    if let Some(range) = spec.strip_prefix("connected:") {
        return corpus(spec, range, true);
    }
    if let Some(range) = spec.strip_prefix("graphs:") {
        return corpus(spec, range, false);
    }
    match expand_range(spec) {
        Ok(specs) => {
            let parsed: Result<Vec<NamedGraph>> = specs
                .iter()
                .map(|s| {
                    let family = parse_family(s, default_seed)?;
                    Ok(NamedGraph {
                        name: family.to_string(),
                        graph: family.build()?,
                    })
                })
                .collect();
            match parsed {
                Ok(graphs) => Ok(graphs),
                Err(family_err) => match parse_graph6(spec) {
                    Ok(graph) => Ok(vec![NamedGraph {
                        name: spec.to_string(),
                        graph,
                    }]),
                    Err(_) => Err(family_err),
                },
            }
        }
        Err(e) => Err(e.into()),
    }
}

/// A source that must name exactly one graph.
pub fn single_source(spec: &str, default_seed: u64) -> Result<NamedGraph> {
    let mut graphs = expand_source(spec, default_seed)?;
    if graphs.len() != 1 {
        bail!(
            "`{spec}` names {} graphs, expected exactly one",
            graphs.len()
        );
    }
    Ok(graphs.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_and_ranges() {
        assert_eq!(single_source("cycle:5", 0).unwrap().graph.size(), 5);
        let paths = expand_source("path:2..6", 0).unwrap();
        assert_eq!(paths.len(), 5);
        assert_eq!(paths[0].name, "path:2");
        let r = single_source("random:6,0.5", 9).unwrap();
        assert_eq!(r.name, "random:6,0.5,9");
    }

    #[test]
    fn graph6_sources() {
        assert_eq!(single_source("g6:A_", 0).unwrap().graph.size(), 1);
        assert_eq!(single_source("A_", 0).unwrap().graph.size(), 1);
        assert!(single_source("not a graph", 0).is_err());
    }

    #[test]
    fn corpora() {
        assert_eq!(expand_source("connected:1..4", 0).unwrap().len(), 10);
        assert_eq!(expand_source("graphs:3", 0).unwrap().len(), 4);
        assert!(single_source("connected:1..4", 0).is_err());
        assert!(expand_source("connected:0..2", 0).is_err());
    }

    #[test]
    fn files() {
        let dir = std::env::temp_dir().join(format!("domcheck-src-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let g6 = dir.join("two.g6");
        fs::write(&g6, "A_\n\nBw\n").unwrap();
        let graphs = expand_source(&format!("file:{}", g6.display()), 0).unwrap();
        assert_eq!(graphs.len(), 2);
        assert_eq!(graphs[1].graph.size(), 3);
        let txt = dir.join("p3.txt");
        fs::write(&txt, "3 2\n0 1\n1 2\n").unwrap();
        let g = single_source(&format!("@{}", txt.display()), 0).unwrap();
        assert_eq!(g.graph.size(), 2);
        fs::remove_dir_all(&dir).unwrap();
    }
}
