use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::LabeledDigraph;
use crate::label::Label;

/// A loop-free simple digraph used as the template for copy enumeration,
/// together with its automorphism count.
///
/// Every pattern vertex lies on at least one edge; this keeps a copy fully
/// identified by its edge set, which is what the dedup identity
/// `injective homomorphisms = copies x automorphisms` relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    automorphisms: u64,
    descriptor: String,
}

fn factorial(n: u32) -> u64 {
    assert!(n <= 20, "factorial overflows u64 past 20");
    (1..=n as u64).product()
}

impl Pattern {
    /// The directed path with `k` edges on `k + 1` vertices. Automorphism
    /// group is trivial.
    pub fn path(k: u32) -> Self {
        assert!(k >= 1, "path needs at least one edge");
        Pattern {
            vertex_count: k as usize + 1,
            edges: (0..k as usize).map(|i| (i, i + 1)).collect(),
            automorphisms: 1,
            descriptor: format!("path:{k}"),
        }
    }

    /// The star with `arms` sources all pointing at one sink (arm length 1).
    /// Automorphisms permute the arms: `arms!`.
    pub fn star(arms: u32) -> Self {
        assert!(arms >= 1, "star needs at least one arm");
        let a = arms as usize;
        Pattern {
            vertex_count: a + 1,
            edges: (0..a).map(|i| (i, a)).collect(),
            automorphisms: factorial(arms),
            descriptor: format!("star:{arms}"),
        }
    }

    /// The equidistal star: `arms` disjoint directed paths of `arm_len`
    /// edges, meeting only at the shared sink. Automorphisms permute whole
    /// arms: `arms!`.
    pub fn equistar(arms: u32, arm_len: u32) -> Self {
        assert!(
            arms >= 1 && arm_len >= 1,
            "equistar needs arms >= 1, length >= 1"
        );
        let (a, l) = (arms as usize, arm_len as usize);
        let root = a * l;
        let mut edges = Vec::with_capacity(a * l);
        for arm in 0..a {
            let base = arm * l;
            for i in 0..l - 1 {
                edges.push((base + i, base + i + 1));
            }
            edges.push((base + l - 1, root));
        }
        Pattern {
            vertex_count: root + 1,
            edges,
            automorphisms: factorial(arms),
            descriptor: format!("equistar:{arms}:{arm_len}"),
        }
    }

    /// Builds a pattern from an explicit edge list over vertices
    /// `0..=max_index`. Rejects loops, repeated edges, and vertices that lie
    /// on no edge. The automorphism count is found by exhaustive search.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::PatternEmpty);
        }
        let mut seen = BTreeSet::new();
        let mut max = 0;
        for &(s, d) in edges {
            if s == d {
                return Err(Error::PatternLoop(s));
            }
            if !seen.insert((s, d)) {
                return Err(Error::PatternDuplicateEdge(s, d));
            }
            max = max.max(s).max(d);
        }
        let vertex_count = max + 1;
        let mut touched = alloc::vec![false; vertex_count];
        for &(s, d) in edges {
            touched[s] = true;
            touched[d] = true;
        }
        if let Some(v) = touched.iter().position(|t| !t) {
            return Err(Error::PatternIsolatedVertex(v));
        }
        let mut p = Pattern {
            vertex_count,
            edges: edges.to_vec(),
            automorphisms: 1,
            descriptor: format!("edges({vertex_count}v,{}e)", edges.len()),
        };
        // An injective edge-preserving self-map on equal edge counts is an
        // automorphism, so the copy machinery counts them directly.
        p.automorphisms = crate::copies::count_injective_homs(&p.as_unit_graph(), &p);
        Ok(p)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn automorphism_count(&self) -> u64 {
        self.automorphisms
    }

    /// Short human-readable form, e.g. `path:3` or `star:2`.
    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// The pattern as a labeled digraph with unit labels, vertices named by
    /// index.
    pub fn as_unit_graph(&self) -> LabeledDigraph {
        let mut g = LabeledDigraph::new();
        for v in 0..self.vertex_count {
            g.add_vertex(&v.to_string());
        }
        for &(s, d) in &self.edges {
            g.add_edge(&s.to_string(), &d.to_string(), Label::one())
                .expect("pattern edges are distinct");
        }
        g
    }
}
