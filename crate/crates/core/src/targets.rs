//! Matroid descriptors: `uniform:m,n`, `graphic:<path>` and `pg:n,p`, each
//! optionally followed by `:dual`.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::matroids::{dual, make_graphic, make_pg, make_uniform, Matroid};

/// What an identity or invariant is evaluated on. Graphs keep their vertex
/// set so that graph-level forms (chromatic polynomials, quotients) apply.
#[derive(Clone)]
pub enum Target {
    Matroid {
        matroid: Arc<dyn Matroid>,
        descriptor: String,
    },
    Graph {
        graph: MultiGraph,
        descriptor: String,
    },
}

impl fmt::Debug for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Target({})", self.descriptor())
    }
}

impl Target {
    pub fn matroid(m: impl Matroid + 'static, descriptor: impl Into<String>) -> Self {
        Target::Matroid {
            matroid: Arc::new(m),
            descriptor: descriptor.into(),
        }
    }

    /// Panics if the graph has more edges than a ground set can hold.
    pub fn graph(g: MultiGraph, descriptor: impl Into<String>) -> Self {
        g.check_edge_limit().expect("graph has too many edges for a matroid target");
        Target::Graph {
            graph: g,
            descriptor: descriptor.into(),
        }
    }

    /// Parses a descriptor, reading graph files relative to the current
    /// directory.
    pub fn parse(spec: &str) -> Result<Self> {
        let (body, dualise) = match spec.strip_suffix(":dual") {
            Some(body) => (body, true),
            None => (spec, false),
        };
        let (family, args) = body
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("matroid spec needs a family prefix: {spec:?}")))?;
        let target = match family {
            "uniform" => {
                let (m, n) = two_numbers(args, spec)?;
                Target::matroid(make_uniform(m as usize, n as usize)?, body)
            }
            "pg" => {
                let (n, p) = two_numbers(args, spec)?;
                Target::matroid(make_pg(n as usize, p)?, body)
            }
            "graphic" => {
                let text = std::fs::read_to_string(Path::new(args))
                    .map_err(|e| Error::Io(format!("{args}: {e}")))?;
                let graph = MultiGraph::from_json(&text)?;
                graph.check_edge_limit()?;
                Target::graph(graph, body)
            }
            other => return Err(Error::Parse(format!("unknown matroid family {other:?}"))),
        };
        Ok(if dualise { target.dual() } else { target })
    }

    /// The dual, always as a matroid target.
    pub fn dual(self) -> Self {
        let descriptor = format!("{}:dual", self.descriptor());
        Target::Matroid {
            matroid: Arc::new(dual(self.as_matroid())),
            descriptor,
        }
    }

    pub fn descriptor(&self) -> &str {
        match self {
            Target::Matroid { descriptor, .. } | Target::Graph { descriptor, .. } => descriptor,
        }
    }

    /// The underlying matroid; graphs give their cycle matroid.
    pub fn as_matroid(&self) -> Arc<dyn Matroid> {
        match self {
            Target::Matroid { matroid, .. } => Arc::clone(matroid),
            Target::Graph { graph, .. } => Arc::new(
                make_graphic(graph).expect("graph targets are checked against the edge limit"),
            ),
        }
    }

    pub fn as_graph(&self) -> Option<&MultiGraph> {
        match self {
            Target::Graph { graph, .. } => Some(graph),
            Target::Matroid { .. } => None,
        }
    }
}

fn two_numbers(args: &str, spec: &str) -> Result<(u64, u64)> {
    let bad = || Error::Parse(format!("expected two comma-separated integers in {spec:?}"));
    let (a, b) = args.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete_graph;
    use crate::matroids::same_rank_function;

    #[test]
    fn parses_families() {
        let u = Target::parse("uniform:2,4").unwrap();
        assert_eq!(u.descriptor(), "uniform:2,4");
        assert!(same_rank_function(&u.as_matroid(), &make_uniform(2, 4).unwrap()));
        let d = Target::parse("uniform:1,4:dual").unwrap();
        assert!(same_rank_function(&d.as_matroid(), &make_uniform(3, 4).unwrap()));
        assert_eq!(d.descriptor(), "uniform:1,4:dual");
        let fano = Target::parse("pg:3,2").unwrap();
        assert_eq!(fano.as_matroid().ground_size(), 7);
    }

    #[test]
    fn reads_graph_files() {
        let dir = std::env::temp_dir().join(format!("matpoly-target-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("k4.json");
        std::fs::write(&path, complete_graph(4).to_json()).unwrap();
        let spec = format!("graphic:{}", path.display());
        let g = Target::parse(&spec).unwrap();
        assert_eq!(g.as_graph().unwrap().edge_count(), 6);
        let d = Target::parse(&format!("{spec}:dual")).unwrap();
        assert!(d.as_graph().is_none());
        assert_eq!(d.as_matroid().full_rank(), 3);
        std::fs::remove_dir_all(dir).ok();
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(Target::parse("uniform:4,3"), Err(Error::BadParams(_))));
        assert!(matches!(Target::parse("uniform:2"), Err(Error::Parse(_))));
        assert!(matches!(Target::parse("torus:1,2"), Err(Error::Parse(_))));
        assert!(matches!(Target::parse("pg:2,4"), Err(Error::BadParams(_))));
        assert!(matches!(Target::parse("graphic:/nonexistent/g.json"), Err(Error::Io(_))));
    }
}
