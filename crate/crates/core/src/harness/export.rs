use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::projline::{BitMatrix, ProjectiveLine};
use crate::ring::RingMeta;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Distant,
    Adjacency,
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distant" => Ok(GraphKind::Distant),
            "adjacency" => Ok(GraphKind::Adjacency),
            _ => Err(Error::InvalidParameter(format!("unknown graph '{s}' (distant, adjacency)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            _ => Err(Error::InvalidParameter(format!("unknown graph format '{s}' (dot, json)"))),
        }
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    format: u32,
    graph: &'a str,
    ring: RingMeta,
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

/// The distant or adjacency graph in canonical point order.
pub fn export_graph(line: &ProjectiveLine, kind: GraphKind, format: GraphFormat) -> String {
    let (name, m): (&str, &BitMatrix) = match kind {
        GraphKind::Distant => ("distant", line.distant_matrix()),
        GraphKind::Adjacency => ("adjacency", line.adjacency_matrix()),
    };
    let labels: Vec<String> = line.ids().map(|p| line.format_point(p)).collect();
    match format {
        GraphFormat::Dot => {
            let mut out = format!("graph {name} {{\n");
            for (i, label) in labels.iter().enumerate() {
                writeln!(out, "  {i} [label=\"{}\"];", label.replace('"', "\\\"")).unwrap();
            }
            for (i, j) in m.edges() {
                writeln!(out, "  {i} -- {j};").unwrap();
            }
            out.push_str("}\n");
            out
        }
        GraphFormat::Json => {
            let g = GraphJson { format: 1, graph: name, ring: line.ring().meta(), vertices: labels, edges: m.edges() };
            serde_json::to_string_pretty(&g).expect("serializable") + "\n"
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationSummary {
    pub format: u32,
    pub points: usize,
    pub parallel_classes: usize,
    /// Common class size, if all classes have the same size.
    pub parallel_class_size: Option<usize>,
    pub distant_degree: Option<usize>,
    pub adjacency_degree: Option<usize>,
}

pub fn relation_summary(line: &ProjectiveLine) -> RelationSummary {
    let classes = line.parallel_classes();
    let size = classes.first().map(|c| c.len()).filter(|&s| classes.iter().all(|c| c.len() == s));
    RelationSummary {
        format: 1,
        points: line.len(),
        parallel_classes: classes.len(),
        parallel_class_size: size,
        distant_degree: line.distant_matrix().regular_degree(),
        adjacency_degree: line.adjacency_matrix().regular_degree(),
    }
}

impl std::fmt::Display for RelationSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let degree = |d: Option<usize>| d.map_or_else(|| "irregular".to_string(), |d| d.to_string());
        write!(f, "{} points, ", self.points)?;
        match self.parallel_class_size {
            Some(s) => write!(f, "{} parallel classes of size {s}, ", self.parallel_classes)?,
            None => write!(f, "{} parallel classes, ", self.parallel_classes)?,
        }
        write!(f, "distant degree {}, adjacency degree {}", degree(self.distant_degree), degree(self.adjacency_degree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    #[test]
    fn triangle() {
        let l = ProjectiveLine::new(&FiniteRing::gf(2, 1).unwrap());
        let dot = export_graph(&l, GraphKind::Distant, GraphFormat::Dot);
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("label=\"R(1,0)\""));
        let json: serde_json::Value = serde_json::from_str(&export_graph(&l, GraphKind::Distant, GraphFormat::Json)).unwrap();
        assert_eq!(json["format"], 1);
        assert_eq!(json["edges"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn summaries() {
        let z4 = ProjectiveLine::new(&FiniteRing::zmod(4).unwrap());
        assert!(relation_summary(&z4).to_string().starts_with("6 points, 3 parallel classes of size 2"));
        let m = ProjectiveLine::new(&FiniteRing::matrix(2, &FiniteRing::gf(2, 1).unwrap()).unwrap());
        let s = relation_summary(&m);
        assert_eq!((s.points, s.distant_degree, s.adjacency_degree), (35, Some(16), Some(18)));
    }
}
