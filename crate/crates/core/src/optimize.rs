use alloc::vec::Vec;

use crate::copies::{satisfies_coverage, CopyIncidence};
use crate::error::{Error, Result};
use crate::graph::LabeledDigraph;
use crate::label::Label;
use crate::pattern::Pattern;

/// One merge move: edge `removed` was deleted and its label added onto edge
/// `survivor`. Edges are identified by their endpoint vertex indices, which
/// stay valid across the whole run (vertices are never removed).
///
/// The exact ledger identity holds at every step:
/// `ct_after - ct_before = removed_label * (survivor_sigma - removed_sigma)`,
/// with `survivor_sigma >= removed_sigma`, and the graph weight is unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeStep {
    pub survivor: (usize, usize),
    pub removed: (usize, usize),
    pub removed_label: Label,
    pub survivor_sigma: Label,
    pub removed_sigma: Label,
    pub ct_before: Label,
    pub ct_after: Label,
}

/// The full record of an optimization run, one entry per merge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MergeTrace {
    pub steps: Vec<MergeStep>,
}

/// Result of [`optimize`]: the improved graph, the merge trace, and whether
/// the final graph also satisfies the inclusive coverage property (every
/// edge on some copy, not just every distinct pair on a common copy).
#[derive(Clone, Debug)]
pub struct OptimizeOutcome {
    pub graph: LabeledDigraph,
    pub trace: MergeTrace,
    pub coverage: bool,
}

/// The coefficient of edge `e`'s label in the content sum: the sum, over all
/// copies containing `e`, of the copy's `e`-exclusive content. Zero when no
/// copy passes through `e`.
///
/// Panics if `e` is not an edge index of `g`.
pub fn sigma(g: &LabeledDigraph, p: &Pattern, e: usize) -> Label {
    assert!(e < g.edge_count(), "edge index {e} out of range");
    CopyIncidence::build(g, p).sigma(g, e)
}

/// The canonically first pair of distinct edges that no copy contains
/// together, in lexicographic order on insertion indices; `None` when every
/// distinct pair shares a copy.
pub fn find_uncovered_pair(g: &LabeledDigraph, p: &Pattern) -> Option<(usize, usize)> {
    CopyIncidence::build(g, p).uncovered_distinct_pair(g.edge_count())
}

/// Performs one merge: removes `removed` and adds its label onto
/// `survivor`. The caller orients the pair; the two edges must be distinct,
/// must not lie on a common copy, and the survivor's sigma must be at least
/// the removed edge's sigma. The returned step record carries the exact
/// before/after content sums, and the increment identity and weight
/// conservation are asserted.
pub fn merge_step(
    g: &LabeledDigraph,
    p: &Pattern,
    survivor: usize,
    removed: usize,
) -> Result<(LabeledDigraph, MergeStep)> {
    if survivor == removed {
        return Err(Error::MergeSameEdge);
    }
    let inc = CopyIncidence::build(g, p);
    if inc.share_copy(survivor, removed) {
        return Err(Error::MergeSharesCopy);
    }
    let survivor_sigma = inc.sigma(g, survivor);
    let removed_sigma = inc.sigma(g, removed);
    if survivor_sigma < removed_sigma {
        return Err(Error::MergeSigmaOrder);
    }
    let ct_before = inc
        .copies
        .iter()
        .map(|c| c.content(g))
        .fold(Label::zero(), |acc, x| &acc + &x);
    let merged = g.with_merged_labels(survivor, removed);
    let ct_after = crate::copies::content_sum(&merged, p);

    let removed_label = g.edges()[removed].label.clone();
    let predicted = ct_before.ratio()
        + removed_label.ratio() * (survivor_sigma.ratio() - removed_sigma.ratio());
    assert_eq!(
        ct_after.ratio(),
        &predicted,
        "merge increment identity violated"
    );
    assert_eq!(merged.weight(), g.weight(), "merge must conserve weight");

    let step = MergeStep {
        survivor: (g.edges()[survivor].src, g.edges()[survivor].dst),
        removed: (g.edges()[removed].src, g.edges()[removed].dst),
        removed_label,
        survivor_sigma,
        removed_sigma,
        ct_before,
        ct_after,
    };
    Ok((merged, step))
}

/// Repeatedly merges uncovered pairs until every two distinct edges lie on a
/// common copy. The content sum never decreases, the weight is conserved,
/// and the run takes fewer steps than the initial edge count. Pair selection
/// is the canonically first uncovered pair; the edge with the larger sigma
/// survives, ties keeping the canonically earlier edge.
pub fn optimize(g: &LabeledDigraph, p: &Pattern) -> OptimizeOutcome {
    let mut current = g.clone();
    let mut trace = MergeTrace::default();
    loop {
        let inc = CopyIncidence::build(&current, p);
        let (e, f) = match inc.uncovered_distinct_pair(current.edge_count()) {
            Some(pair) => pair,
            None => break,
        };
        let sigma_e = inc.sigma(&current, e);
        let sigma_f = inc.sigma(&current, f);
        // e precedes f canonically, so a tie keeps e.
        let (survivor, removed) = if sigma_f > sigma_e { (f, e) } else { (e, f) };
        let (merged, step) =
            merge_step(&current, p, survivor, removed).expect("oriented uncovered pair merges");
        trace.steps.push(step);
        current = merged;
    }
    let coverage = satisfies_coverage(&current, p);
    OptimizeOutcome {
        graph: current,
        trace,
        coverage,
    }
}
