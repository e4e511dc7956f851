use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::LabeledDigraph;
use crate::label::Label;
use crate::pattern::Pattern;

/// An embedded copy of a pattern: the set of graph edges it occupies
/// (sorted edge indices, the identity of the copy) plus one witnessing
/// vertex embedding. Two copies are the same copy exactly when their edge
/// sets coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copy {
    pub edge_ids: Vec<usize>,
    pub vertex_map: Vec<usize>,
}

impl Copy {
    /// Product of the labels of the copy's edges.
    pub fn content(&self, g: &LabeledDigraph) -> Label {
        self.edge_ids.iter().map(|&e| &g.edges()[e].label).product()
    }

    /// Product of the labels of the copy's edges, skipping `excluded`.
    pub fn exclusive_content(&self, g: &LabeledDigraph, excluded: usize) -> Label {
        self.edge_ids
            .iter()
            .filter(|&&e| e != excluded)
            .map(|&e| &g.edges()[e].label)
            .product()
    }
}

/// Placement order and per-position adjacency constraints for the
/// backtracking search, chosen so each vertex is pinned by already-placed
/// neighbors whenever its component allows.
struct SearchPlan {
    order: Vec<usize>,
    // constraints[i]: (earlier position j, direction); direction true means
    // the pattern has edge order[i] -> order[j].
    constraints: Vec<Vec<(usize, bool)>>,
}

fn plan(p: &Pattern) -> SearchPlan {
    let n = p.vertex_count();
    let mut degree = alloc::vec![0usize; n];
    for &(s, d) in p.edges() {
        degree[s] += 1;
        degree[d] += 1;
    }
    let mut placed = alloc::vec![false; n];
    let mut placed_neighbors = alloc::vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (placed_neighbors[v], degree[v], core::cmp::Reverse(v)))
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
        for &(s, d) in p.edges() {
            if s == next && !placed[d] {
                placed_neighbors[d] += 1;
            }
            if d == next && !placed[s] {
                placed_neighbors[s] += 1;
            }
        }
    }
    let mut position = alloc::vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut constraints = alloc::vec![Vec::new(); n];
    for &(s, d) in p.edges() {
        let (ps, pd) = (position[s], position[d]);
        if ps > pd {
            constraints[ps].push((pd, true));
        } else {
            constraints[pd].push((ps, false));
        }
    }
    SearchPlan { order, constraints }
}

struct Adjacency {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

fn adjacency(g: &LabeledDigraph) -> Adjacency {
    let n = g.vertex_count();
    let mut out = alloc::vec![Vec::new(); n];
    let mut inc = alloc::vec![Vec::new(); n];
    for e in g.edges() {
        out[e.src].push(e.dst);
        inc[e.dst].push(e.src);
    }
    for v in 0..n {
        out[v].sort_unstable();
        inc[v].sort_unstable();
    }
    Adjacency { out, inc }
}

struct Searcher<'a> {
    g: &'a LabeledDigraph,
    plan: SearchPlan,
    adj: Adjacency,
}

impl Searcher<'_> {
    fn descend(
        &self,
        pos: usize,
        image: &mut [usize],
        assigned: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if pos == self.plan.order.len() {
            visit(image);
            return;
        }
        match self.plan.constraints[pos].first() {
            None => {
                for c in 0..used.len() {
                    self.place(c, pos, image, assigned, used, visit);
                }
            }
            Some(&(j, outward)) => {
                let anchor = assigned[j];
                let candidates = if outward {
                    &self.adj.inc[anchor]
                } else {
                    &self.adj.out[anchor]
                };
                for &c in candidates {
                    self.place(c, pos, image, assigned, used, visit);
                }
            }
        }
    }

    fn place(
        &self,
        c: usize,
        pos: usize,
        image: &mut [usize],
        assigned: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if used[c] {
            return;
        }
        for &(j, outward) in &self.plan.constraints[pos] {
            let other = assigned[j];
            let present = if outward {
                self.g.edge_between(c, other).is_some()
            } else {
                self.g.edge_between(other, c).is_some()
            };
            if !present {
                return;
            }
        }
        image[self.plan.order[pos]] = c;
        assigned[pos] = c;
        used[c] = true;
        self.descend(pos + 1, image, assigned, used, visit);
        used[c] = false;
    }
}

/// Runs the backtracking injective homomorphism search, calling `visit` with
/// the image (indexed by pattern vertex) once per complete embedding.
/// Candidates are tried in ascending vertex order, so the visit sequence is
/// deterministic.
fn for_each_embedding(g: &LabeledDigraph, p: &Pattern, visit: &mut dyn FnMut(&[usize])) {
    let n = p.vertex_count();
    if n > g.vertex_count() {
        return;
    }
    let searcher = Searcher {
        g,
        plan: plan(p),
        adj: adjacency(g),
    };
    let mut image = alloc::vec![usize::MAX; n];
    let mut assigned = alloc::vec![usize::MAX; n]; // by position
    let mut used = alloc::vec![false; g.vertex_count()];
    searcher.descend(0, &mut image, &mut assigned, &mut used, visit);
}

/// Number of injective homomorphisms from the pattern into the graph. Equals
/// copy count times the pattern's automorphism count.
pub fn count_injective_homs(g: &LabeledDigraph, p: &Pattern) -> u64 {
    let mut count = 0;
    for_each_embedding(g, p, &mut |_| count += 1);
    count
}

/// Every subgraph of `g` isomorphic to the pattern, each reported once and
/// sorted by edge set. The witnessing vertex map is the first embedding the
/// search finds for that edge set.
pub fn enumerate_copies(g: &LabeledDigraph, p: &Pattern) -> Vec<Copy> {
    let mut by_edges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for_each_embedding(g, p, &mut |image| {
        let mut ids: Vec<usize> = p
            .edges()
            .iter()
            .map(|&(s, d)| {
                g.edge_between(image[s], image[d])
                    .expect("embedding maps pattern edges onto graph edges")
            })
            .collect();
        ids.sort_unstable();
        by_edges.entry(ids).or_insert_with(|| image.to_vec());
    });
    by_edges
        .into_iter()
        .map(|(edge_ids, vertex_map)| Copy {
            edge_ids,
            vertex_map,
        })
        .collect()
}

/// The content sum over all copies of the pattern: for each copy, the
/// product of its edge labels; zero when there are no copies.
pub fn content_sum(g: &LabeledDigraph, p: &Pattern) -> Label {
    enumerate_copies(g, p)
        .iter()
        .map(|c| c.content(g))
        .fold(Label::zero(), |acc, x| &acc + &x)
}

/// Fast path for path patterns on acyclic graphs: the content sum over
/// length-`k` paths equals the weight of the `k`-th adjacency power, because
/// in a DAG every length-`k` walk is a path and each path subgraph has a
/// unique traversal. Rejects cyclic input, where walks would overcount.
pub fn path_content_sum_via_matrix(g: &LabeledDigraph, k: u32) -> Result<Label> {
    if !g.is_dag() {
        return Err(Error::NotADag);
    }
    Ok(g.to_adjacency().pow(k).weight())
}

/// Copies of a pattern plus, for each graph edge, the bitset of copies
/// through it. Built once per graph; pair checks are word-wise ANDs.
pub struct CopyIncidence {
    pub copies: Vec<Copy>,
    words: usize,
    bits: Vec<u64>, // edge-major: bits[e * words .. (e + 1) * words]
}

impl CopyIncidence {
    pub fn build(g: &LabeledDigraph, p: &Pattern) -> Self {
        Self::from_copies(g.edge_count(), enumerate_copies(g, p))
    }

    /// Builds the incidence index from already-enumerated copies.
    pub fn from_copies(edge_count: usize, copies: Vec<Copy>) -> Self {
        let words = copies.len().div_ceil(64).max(1);
        let mut bits = alloc::vec![0u64; edge_count * words];
        for (ci, c) in copies.iter().enumerate() {
            for &e in &c.edge_ids {
                bits[e * words + ci / 64] |= 1 << (ci % 64);
            }
        }
        CopyIncidence {
            copies,
            words,
            bits,
        }
    }

    fn row(&self, e: usize) -> &[u64] {
        &self.bits[e * self.words..(e + 1) * self.words]
    }

    /// True when at least one copy contains edge `e`.
    pub fn edge_covered(&self, e: usize) -> bool {
        self.row(e).iter().any(|&w| w != 0)
    }

    /// True when some copy contains both edges (for `e == f`, when the edge
    /// lies on any copy at all).
    pub fn share_copy(&self, e: usize, f: usize) -> bool {
        self.row(e)
            .iter()
            .zip(self.row(f))
            .any(|(&a, &b)| a & b != 0)
    }

    /// Sum over copies containing `e` of the copy's `e`-exclusive content.
    /// This is the coefficient of the label of `e` in the content sum.
    pub fn sigma(&self, g: &LabeledDigraph, e: usize) -> Label {
        self.copies
            .iter()
            .filter(|c| c.edge_ids.binary_search(&e).is_ok())
            .map(|c| c.exclusive_content(g, e))
            .fold(Label::zero(), |acc, x| &acc + &x)
    }

    /// First pair of distinct edges (lexicographic by insertion index) that
    /// no copy contains together.
    pub fn uncovered_distinct_pair(&self, edge_count: usize) -> Option<(usize, usize)> {
        for e in 0..edge_count {
            for f in e + 1..edge_count {
                if !self.share_copy(e, f) {
                    return Some((e, f));
                }
            }
        }
        None
    }

    /// Inclusive coverage witness over `edge_count` edges: the first pair
    /// `(e, f)` with `e <= f` sharing no copy, `None` when fully covered.
    pub fn coverage_witness(&self, edge_count: usize) -> Option<(usize, usize)> {
        for e in 0..edge_count {
            for f in e..edge_count {
                if !self.share_copy(e, f) {
                    return Some((e, f));
                }
            }
        }
        None
    }
}

/// Checks that every two edges (the degenerate pair included, i.e. every
/// single edge as well) lie on a common copy; on failure returns the first
/// violating pair in lexicographic order, with `(e, e)` meaning edge `e`
/// lies on no copy at all.
pub fn coverage_witness(g: &LabeledDigraph, p: &Pattern) -> Option<(usize, usize)> {
    CopyIncidence::build(g, p).coverage_witness(g.edge_count())
}

/// True when every two edges of the graph (each single edge included) lie on
/// a common embedded copy of the pattern.
pub fn satisfies_coverage(g: &LabeledDigraph, p: &Pattern) -> bool {
    coverage_witness(g, p).is_none()
}
