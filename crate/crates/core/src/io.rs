//! JSON instance and partition formats.
//!
//! Instances: `{"vertices": [...], "edges": [[a, b], ...]}` for graphs, three-element edges for
//! 3-graphs, and `{"parts": [X, Y, Z], "xy": ..., "xz": ..., "yz": ..., "triples": ...}` for
//! triads. Edges name vertices by label; dense ids follow the order of `vertices`.
//! Output is sorted so equal instances serialize byte-identically.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structures::{default_labels, Bigraph, Graph, Hypergraph3, Label, Triad, Trigraph, VertexPartition};

#[derive(Clone, Debug)]
pub enum Instance {
    Graph(Graph),
    Hypergraph(Hypergraph3),
    Triad { triad: Triad, trigraph: Option<Trigraph> },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Graph(_) => "graph",
            Instance::Hypergraph(_) => "hypergraph",
            Instance::Triad { .. } => "triad",
        }
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Label>>,
    /// Needed only to tell an edgeless 3-graph from an edgeless graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    uniformity: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<Vec<Label>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parts: Option<[Vec<Label>; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xy: Option<Vec<[Label; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xz: Option<Vec<[Label; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    yz: Option<Vec<[Label; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    triples: Option<Vec<[Label; 3]>>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

struct Ids {
    labels: Vec<Label>,
    map: HashMap<Label, usize>,
}

impl Ids {
    fn new(labels: Vec<Label>) -> Result<Ids> {
        let mut map = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if map.insert(l.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex {l}")));
            }
        }
        Ok(Ids { labels, map })
    }

    fn id(&self, l: &Label) -> Result<usize> {
        self.map.get(l).copied().ok_or_else(|| Error::Parse(format!("unknown vertex {l}")))
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let f: InstanceFile = serde_json::from_str(text).map_err(parse_err)?;
    let vertices = match &f.vertices {
        Some(v) => v.clone(),
        None => {
            let mut seen = BTreeSet::new();
            for e in f.edges.iter().flatten() {
                seen.extend(e.iter().cloned());
            }
            for p in f.parts.iter().flatten() {
                seen.extend(p.iter().cloned());
            }
            seen.into_iter().collect()
        }
    };
    let ids = Ids::new(vertices)?;
    let n = ids.labels.len();
    if let Some(parts) = &f.parts {
        let parts: [Vec<usize>; 3] = [
            parts[0].iter().map(|l| ids.id(l)).collect::<Result<_>>()?,
            parts[1].iter().map(|l| ids.id(l)).collect::<Result<_>>()?,
            parts[2].iter().map(|l| ids.id(l)).collect::<Result<_>>()?,
        ];
        let comp = |pairs: &Option<Vec<[Label; 2]>>, l: usize, r: usize| -> Result<Bigraph> {
            let pairs: Vec<(usize, usize)> = pairs
                .iter()
                .flatten()
                .map(|[a, b]| Ok((ids.id(a)?, ids.id(b)?)))
                .collect::<Result<_>>()?;
            Bigraph::from_pairs(parts[l].clone(), parts[r].clone(), pairs)
        };
        let triad = Triad::new(comp(&f.xy, 0, 1)?, comp(&f.xz, 0, 2)?, comp(&f.yz, 1, 2)?)?;
        let trigraph = match &f.triples {
            Some(ts) => {
                let ts: Vec<(usize, usize, usize)> =
                    ts.iter().map(|[a, b, c]| Ok((ids.id(a)?, ids.id(b)?, ids.id(c)?))).collect::<Result<_>>()?;
                Some(Trigraph::from_triples(parts.clone(), ts)?)
            }
            None => None,
        };
        return Ok(Instance::Triad { triad, trigraph });
    }
    let edges = f.edges.unwrap_or_default();
    let arity = match (edges.first().map(Vec::len), f.uniformity) {
        (Some(a), _) => a,
        (None, Some(u)) => u as usize,
        (None, None) => 2,
    };
    if edges.iter().any(|e| e.len() != arity) {
        return Err(Error::Parse("edges of mixed arity".into()));
    }
    match arity {
        2 => {
            let es: Vec<(usize, usize)> = edges.iter().map(|e| Ok((ids.id(&e[0])?, ids.id(&e[1])?))).collect::<Result<_>>()?;
            Ok(Instance::Graph(Graph::from_edges(n, es)?.with_labels(ids.labels)?))
        }
        3 => {
            let es: Vec<[usize; 3]> =
                edges.iter().map(|e| Ok([ids.id(&e[0])?, ids.id(&e[1])?, ids.id(&e[2])?])).collect::<Result<_>>()?;
            Ok(Instance::Hypergraph(Hypergraph3::from_edges(n, es)?.with_labels(ids.labels)?))
        }
        a => Err(Error::Parse(format!("edges must have 2 or 3 vertices, found {a}"))),
    }
}

fn triad_labels(t: &Triad) -> Vec<Label> {
    let n = t.parts().iter().flatten().copied().max().map_or(0, |m| m + 1);
    default_labels(n)
}

/// Deterministic pretty JSON. Triads carry plain integer labels.
pub fn instance_to_json(inst: &Instance) -> String {
    let mut f = InstanceFile::default();
    match inst {
        Instance::Graph(g) => {
            let l = g.labels();
            f.vertices = Some(l.to_vec());
            f.uniformity = Some(2);
            f.edges = Some(g.edges().into_iter().map(|(a, b)| vec![l[a].clone(), l[b].clone()]).collect());
        }
        Instance::Hypergraph(h) => {
            let l = h.labels();
            f.vertices = Some(l.to_vec());
            f.uniformity = Some(3);
            f.edges = Some(h.edges().iter().map(|e| e.iter().map(|&v| l[v].clone()).collect()).collect());
        }
        Instance::Triad { triad, trigraph } => {
            let l = triad_labels(triad);
            let lab = |v: usize| l[v].clone();
            f.vertices = Some(l.clone());
            f.parts = Some(triad.parts().clone().map(|p| p.into_iter().map(lab).collect()));
            let pairs = |b: &Bigraph| {
                let mut ps = b.pairs();
                ps.sort_unstable();
                Some(ps.into_iter().map(|(a, c)| [lab(a), lab(c)]).collect())
            };
            f.xy = pairs(triad.xy());
            f.xz = pairs(triad.xz());
            f.yz = pairs(triad.yz());
            f.triples = trigraph.as_ref().map(|t| {
                let mut ts = t.triples();
                ts.sort_unstable();
                ts.into_iter().map(|(a, b, c)| [lab(a), lab(b), lab(c)]).collect()
            });
        }
    }
    serde_json::to_string_pretty(&f).expect("instance serializes") + "\n"
}

pub fn instance_labels(inst: &Instance) -> Vec<Label> {
    match inst {
        Instance::Graph(g) => g.labels().to_vec(),
        Instance::Hypergraph(h) => h.labels().to_vec(),
        Instance::Triad { triad, .. } => triad_labels(triad),
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionFile {
    parts: Vec<Vec<Label>>,
}

/// `{"parts": [[...], ...]}` over the instance's vertex labels.
pub fn parse_partition(text: &str, labels: &[Label]) -> Result<VertexPartition> {
    let f: PartitionFile = serde_json::from_str(text).map_err(parse_err)?;
    let ids = Ids::new(labels.to_vec())?;
    let parts = f.parts.iter().map(|p| p.iter().map(|l| ids.id(l)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    VertexPartition::new(labels.len(), parts)
}

pub fn partition_to_json(p: &VertexPartition, labels: &[Label]) -> String {
    let f = PartitionFile { parts: p.parts().iter().map(|part| part.iter().map(|&v| labels[v].clone()).collect()).collect() };
    serde_json::to_string_pretty(&f).expect("partition serializes") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip_with_names() {
        let text = r#"{"vertices":["u","v","w"],"edges":[["w","u"],["u","v"]]}"#;
        let inst = parse_instance(text).unwrap();
        let out = instance_to_json(&inst);
        let again = instance_to_json(&parse_instance(&out).unwrap());
        assert_eq!(out, again);
        match inst {
            Instance::Graph(g) => assert_eq!(g.edge_count(), 2),
            _ => panic!("expected a graph"),
        }
    }

    #[test]
    fn hypergraph_and_empty_uniformity() {
        let h = parse_instance(r#"{"vertices":[0,1,2,3],"edges":[[0,1,2]]}"#).unwrap();
        assert_eq!(h.kind(), "hypergraph");
        let e = parse_instance(r#"{"vertices":[0,1,2],"uniformity":3,"edges":[]}"#).unwrap();
        assert_eq!(e.kind(), "hypergraph");
        assert!(parse_instance(r#"{"vertices":[0,1],"edges":[[0,5]]}"#).is_err());
    }

    #[test]
    fn triad_round_trip() {
        let text = r#"{"parts":[[0],[1],[2]],"xy":[[0,1]],"xz":[[0,2]],"yz":[[1,2]],"triples":[[0,1,2]]}"#;
        let inst = parse_instance(text).unwrap();
        let out = instance_to_json(&inst);
        assert_eq!(out, instance_to_json(&parse_instance(&out).unwrap()));
    }

    #[test]
    fn partition_round_trip() {
        let labels = vec![Label::name("a"), Label::name("b"), Label::name("c")];
        let p = parse_partition(r#"{"parts":[["c","a"],["b"]]}"#, &labels).unwrap();
        assert_eq!(p.parts(), &[vec![0, 2], vec![1]]);
        assert_eq!(parse_partition(&partition_to_json(&p, &labels), &labels).unwrap(), p);
    }
}
