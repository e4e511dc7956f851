use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::matrix::LabeledMatrix;

/// A directed edge carrying a strictly positive exact rational label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Label,
}

/// A simple directed graph whose edges carry strictly positive rational
/// labels. A label of zero means "no edge" and is normalized away on
/// construction, so "edge" and "positive label" are synonymous everywhere.
///
/// Vertices are named by arbitrary tokens and addressed by insertion index;
/// edges likewise keep their insertion order. That order is the canonical
/// tie-break for every deterministic choice made downstream (pair selection
/// in the optimizer, witness reporting, serialization).
///
/// Self-loops are allowed here; operations that need acyclicity reject them.
/// Isolated vertices are allowed and semantically inert.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LabeledDigraph {
    names: Vec<String>,
    name_index: BTreeMap<String, usize>,
    edges: Vec<Edge>,
    pair_index: BTreeMap<(usize, usize), usize>,
}

impl LabeledDigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Ensures a vertex with this name exists and returns its index.
    pub fn add_vertex(&mut self, name: &str) -> usize {
        if let Some(&i) = self.name_index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.name_index.insert(name.to_string(), i);
        i
    }

    /// Adds an edge, creating missing vertices. A zero label only ensures
    /// the endpoints exist; a repeated ordered pair is an error.
    pub fn add_edge(&mut self, src: &str, dst: &str, label: Label) -> Result<()> {
        let s = self.add_vertex(src);
        let d = self.add_vertex(dst);
        if label.is_zero() {
            return Ok(());
        }
        if self.pair_index.contains_key(&(s, d)) {
            return Err(Error::DuplicateEdge(src.to_string(), dst.to_string()));
        }
        self.pair_index.insert((s, d), self.edges.len());
        self.edges.push(Edge {
            src: s,
            dst: d,
            label,
        });
        Ok(())
    }

    /// Builds a graph on `vertices` vertices named `0..vertices`, with edges
    /// given by index pairs in insertion order. Zero labels are skipped.
    pub fn from_numbered_edges(
        vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize, Label)>,
    ) -> Self {
        let mut g = Self::new();
        for v in 0..vertices {
            g.add_vertex(&v.to_string());
        }
        for (s, d, label) in edges {
            assert!(s < vertices && d < vertices, "edge endpoint out of range");
            if label.is_zero() {
                continue;
            }
            let prev = g.pair_index.insert((s, d), g.edges.len());
            assert!(prev.is_none(), "duplicate edge ({s}, {d})");
            g.edges.push(Edge {
                src: s,
                dst: d,
                label,
            });
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of the edge `src -> dst`, if present.
    pub fn edge_between(&self, src: usize, dst: usize) -> Option<usize> {
        self.pair_index.get(&(src, dst)).copied()
    }

    /// True when the vertex has no incident edge.
    pub fn is_isolated(&self, v: usize) -> bool {
        self.edges.iter().all(|e| e.src != v && e.dst != v)
    }

    /// Sum of all edge labels; zero for an edgeless graph.
    pub fn weight(&self) -> Label {
        self.edges.iter().map(|e| &e.label).sum()
    }

    /// Product of all edge labels; one for an edgeless graph.
    pub fn content(&self) -> Label {
        self.edges.iter().map(|e| &e.label).product()
    }

    /// Product of the labels of all edges whose endpoint pair is *not* in
    /// `excluded`. Every excluded pair must name an existing edge.
    pub fn exclusive_content(&self, excluded: &[(usize, usize)]) -> Result<Label> {
        let mut skip = BTreeSet::new();
        for &(s, d) in excluded {
            match self.edge_between(s, d) {
                Some(i) => {
                    skip.insert(i);
                }
                None => {
                    let name = |v: usize| {
                        self.names
                            .get(v)
                            .cloned()
                            .unwrap_or_else(|| alloc::format!("#{v}"))
                    };
                    return Err(Error::NotAnEdge(name(s), name(d)));
                }
            }
        }
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !skip.contains(i))
            .map(|(_, e)| &e.label)
            .product())
    }

    /// A topological order of the vertices, or `None` if the graph has a
    /// directed cycle (self-loops included). Among the valid orders, returns
    /// the lexicographically smallest by vertex index.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.names.len();
        let mut indeg = alloc::vec![0usize; n];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut done = alloc::vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n).find(|&v| !done[v] && indeg[v] == 0)?;
            done[next] = true;
            order.push(next);
            for e in &self.edges {
                if e.src == next {
                    indeg[e.dst] -= 1;
                }
            }
        }
        Some(order)
    }

    /// True iff the graph has no directed cycle, self-loops included.
    pub fn is_dag(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Adjacency matrix in vertex insertion order; non-edges become zeros.
    pub fn to_adjacency(&self) -> LabeledMatrix {
        let mut m = LabeledMatrix::zeros(self.names.len());
        for e in &self.edges {
            m.set(e.src, e.dst, e.label.clone());
        }
        m
    }

    /// Rebuilds a graph from an adjacency matrix: entry `(i, j)` becomes the
    /// label of edge `i -> j`, zeros become non-edges. Vertex names default
    /// to `0..dim`; a custom name list must match the dimension. Edges are
    /// inserted in row-major order.
    pub fn from_adjacency(m: &LabeledMatrix, names: Option<&[&str]>) -> Result<Self> {
        let n = m.dim();
        if let Some(names) = names {
            if names.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: names.len(),
                });
            }
        }
        let mut g = Self::new();
        for i in 0..n {
            match names {
                Some(names) => g.add_vertex(names[i]),
                None => g.add_vertex(&i.to_string()),
            };
        }
        for i in 0..n {
            for j in 0..n {
                let label = m.get(i, j);
                if !label.is_zero() {
                    g.pair_index.insert((i, j), g.edges.len());
                    g.edges.push(Edge {
                        src: i,
                        dst: j,
                        label: label.clone(),
                    });
                }
            }
        }
        Ok(g)
    }

    /// The merge move: removes edge `removed` and adds its label onto edge
    /// `survivor`. Vertices are untouched; the surviving edges keep their
    /// relative order.
    pub(crate) fn with_merged_labels(&self, survivor: usize, removed: usize) -> Self {
        assert!(survivor != removed, "merge needs two distinct edges");
        let mut g = Self {
            names: self.names.clone(),
            name_index: self.name_index.clone(),
            edges: Vec::with_capacity(self.edges.len() - 1),
            pair_index: BTreeMap::new(),
        };
        let extra = &self.edges[removed].label;
        for (i, e) in self.edges.iter().enumerate() {
            if i == removed {
                continue;
            }
            let mut e = e.clone();
            if i == survivor {
                e.label += extra;
            }
            g.pair_index.insert((e.src, e.dst), g.edges.len());
            g.edges.push(e);
        }
        g
    }
}
