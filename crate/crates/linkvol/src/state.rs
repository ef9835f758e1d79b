//! The all-A state of a diagram and the graphs it induces.
//!
//! A-resolving a crossing `X(a,b,c,d)` joins the arc pair `(a,b)` and the
//! pair `(c,d)`; the resulting closed curves are the state circles and each
//! crossing leaves one segment recording which two circles it touches.
//! Contracting circles to vertices gives the state multigraph, and merging
//! parallel edges gives the reduced state graph whose Euler characteristic
//! drives every bound downstream.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagram::{Arc, LinkDiagram, UnionFind};
use crate::error::AnalysisError;
use crate::twist::{TwistRegion, TwistRegionKind};

/// A state circle: the set of arcs it traverses. Circle ids are assigned
/// by ascending smallest arc label, so output is reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateCircle {
    pub id: usize,
    pub arcs: Vec<Arc>,
}

/// The segment a crossing leaves behind in the all-A state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ASegment {
    pub crossing: usize,
    /// Ids of the circles holding the two smoothing arcs, sorted.
    pub circles: [usize; 2],
}

/// The all-A state: circles plus one segment per crossing.
#[derive(Clone, Debug)]
pub struct AllAState {
    pub circles: Vec<StateCircle>,
    pub segments: Vec<ASegment>,
    circle_of_arc: BTreeMap<Arc, usize>,
}

impl AllAState {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of_arc(&self, arc: Arc) -> usize {
        self.circle_of_arc[&arc]
    }

    /// Segment ids incident to each circle.
    pub fn segments_at_circles(&self) -> Vec<Vec<usize>> {
        let mut at = vec![Vec::new(); self.circles.len()];
        for (i, s) in self.segments.iter().enumerate() {
            at[s.circles[0]].push(i);
            if s.circles[1] != s.circles[0] {
                at[s.circles[1]].push(i);
            }
        }
        at
    }
}

/// Compute the all-A state of a diagram.
pub fn all_a_state(diagram: &LinkDiagram) -> AllAState {
    let arcs = diagram.arcs();
    let index: BTreeMap<Arc, usize> = arcs.iter().copied().enumerate().map(|(i, a)| (a, i)).collect();
    let mut uf = UnionFind::new(arcs.len());
    for x in diagram.crossings() {
        uf.union(index[&x.arcs[0]], index[&x.arcs[1]]);
        uf.union(index[&x.arcs[2]], index[&x.arcs[3]]);
    }

    // Group arcs into circles; free unknot circles come last.
    let mut groups: BTreeMap<usize, Vec<Arc>> = BTreeMap::new();
    for (&arc, &i) in &index {
        groups.entry(uf.find(i)).or_default().push(arc);
    }
    let mut circle_sets: Vec<Vec<Arc>> = groups.into_values().collect();
    for &u in diagram.unknot_components() {
        circle_sets.push(vec![u]);
    }
    circle_sets.sort_by_key(|set| set[0]);

    let mut circle_of_arc = BTreeMap::new();
    let circles: Vec<StateCircle> = circle_sets
        .into_iter()
        .enumerate()
        .map(|(id, mut arcs)| {
            arcs.sort_unstable();
            for &a in &arcs {
                circle_of_arc.insert(a, id);
            }
            StateCircle { id, arcs }
        })
        .collect();

    let segments = diagram
        .crossings()
        .iter()
        .enumerate()
        .map(|(ci, x)| {
            let p = circle_of_arc[&x.arcs[0]];
            let q = circle_of_arc[&x.arcs[2]];
            ASegment {
                crossing: ci,
                circles: [p.min(q), p.max(q)],
            }
        })
        .collect();

    AllAState {
        circles,
        segments,
        circle_of_arc,
    }
}

/// The state multigraph: one vertex per circle, one edge per segment.
#[derive(Clone, Debug, Serialize)]
pub struct StateMultigraph {
    pub vertex_count: usize,
    /// (circle, circle, crossing) triples, endpoints sorted.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn build_ga(state: &AllAState) -> StateMultigraph {
    StateMultigraph {
        vertex_count: state.circles.len(),
        edges: state
            .segments
            .iter()
            .map(|s| (s.circles[0], s.circles[1], s.crossing))
            .collect(),
    }
}

/// An edge of the reduced state graph with the crossings it absorbed.
#[derive(Clone, Debug, Serialize)]
pub struct ReducedEdge {
    pub circles: [usize; 2],
    pub crossings: Vec<usize>,
}

/// The reduced state graph: parallel edges merged, loops kept (a loop can
/// only come from a non-A-adequate diagram).
#[derive(Clone, Debug, Serialize)]
pub struct ReducedStateGraph {
    pub vertex_count: usize,
    pub edges: Vec<ReducedEdge>,
}

impl ReducedStateGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The paper-style negative Euler characteristic, e - v.
    pub fn neg_euler_char(&self) -> i64 {
        self.edges.len() as i64 - self.vertex_count as i64
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for e in &self.edges {
            deg[e.circles[0]] += 1;
            if e.circles[1] != e.circles[0] {
                deg[e.circles[1]] += 1;
            } else {
                deg[e.circles[0]] += 1; // a loop contributes 2
            }
        }
        deg
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|e| e.circles[0] == e.circles[1])
    }
}

pub fn reduce_ga(graph: &StateMultigraph) -> ReducedStateGraph {
    let mut merged: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(a, b, crossing) in &graph.edges {
        merged.entry((a, b)).or_default().push(crossing);
    }
    ReducedStateGraph {
        vertex_count: graph.vertex_count,
        edges: merged
            .into_iter()
            .map(|((a, b), mut crossings)| {
                crossings.sort_unstable();
                ReducedEdge {
                    circles: [a, b],
                    crossings,
                }
            })
            .collect(),
    }
}

/// A diagram is A-adequate when no segment joins a circle to itself.
pub fn is_a_adequate(state: &AllAState) -> bool {
    state.segments.iter().all(|s| s.circles[0] != s.circles[1])
}

/// The two-edge loop condition: whenever two circles share two or more
/// segments, all of those segments belong to one short twist region.
pub fn check_telc(state: &AllAState, regions: &[TwistRegion]) -> Result<bool, AnalysisError> {
    let state_crossings: BTreeSet<usize> = state.segments.iter().map(|s| s.crossing).collect();
    let region_crossings: BTreeSet<usize> = regions
        .iter()
        .flat_map(|r| r.crossings.iter().copied())
        .collect();
    if state_crossings != region_crossings {
        return Err(AnalysisError::RegionsMismatch);
    }
    let mut region_of: BTreeMap<usize, usize> = BTreeMap::new();
    for r in regions {
        for &c in &r.crossings {
            region_of.insert(c, r.id);
        }
    }

    let mut shared: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for s in &state.segments {
        shared.entry(s.circles).or_default().push(s.crossing);
    }
    for (_, crossings) in shared {
        if crossings.len() < 2 {
            continue;
        }
        let rid = region_of[&crossings[0]];
        if crossings.iter().any(|c| region_of[c] != rid) {
            return Ok(false);
        }
        if regions[rid].kind != TwistRegionKind::Short {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_to_diagram, BraidWord, Closure};
    use crate::diagram::parse_pd;

    fn right_trefoil() -> LinkDiagram {
        let w = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        braid_to_diagram(&w, Closure::Trace).unwrap()
    }

    #[test]
    fn unknot_state_is_one_circle() {
        let d = LinkDiagram::unknot();
        let h = all_a_state(&d);
        assert_eq!(h.circle_count(), 1);
        assert!(h.segments.is_empty());
    }

    #[test]
    fn right_trefoil_state_is_two_circles_three_parallel_segments() {
        let h = all_a_state(&right_trefoil());
        assert_eq!(h.circle_count(), 2);
        assert_eq!(h.segments.len(), 3);
        let pair = h.segments[0].circles;
        assert!(h.segments.iter().all(|s| s.circles == pair));
    }

    #[test]
    fn table_trefoil_state_is_a_three_cycle() {
        // The usual table PD for the trefoil is the mirror of the braid
        // closure: three circles chained in a cycle.
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let h = all_a_state(&d);
        assert_eq!(h.circle_count(), 3);
        let g = reduce_ga(&build_ga(&h));
        assert_eq!(g.edge_count(), 3);
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn figure_eight_has_four_segments_and_three_circles() {
        let d = parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        let h = all_a_state(&d);
        assert_eq!(h.segments.len(), 4);
        assert_eq!(h.circle_count(), 3);
        let g = build_ga(&h);
        assert_eq!(g.edges.len(), 4);
        let gr = reduce_ga(&g);
        assert_eq!(gr.edge_count(), 3);
        assert_eq!(gr.neg_euler_char(), 0);
    }

    #[test]
    fn reduction_merges_parallel_edges_and_is_idempotent() {
        let h = all_a_state(&right_trefoil());
        let g = build_ga(&h);
        let r = reduce_ga(&g);
        assert_eq!(r.edge_count(), 1);
        assert_eq!(r.edges[0].crossings, vec![0, 1, 2]);
        assert_eq!(r.neg_euler_char(), -1);
        // Feeding the reduced graph back through changes nothing.
        let again = reduce_ga(&StateMultigraph {
            vertex_count: r.vertex_count,
            edges: r
                .edges
                .iter()
                .map(|e| (e.circles[0], e.circles[1], e.crossings[0]))
                .collect(),
        });
        assert_eq!(again.edge_count(), r.edge_count());
    }

    #[test]
    fn singleton_graph_euler() {
        let r = ReducedStateGraph {
            vertex_count: 1,
            edges: vec![],
        };
        assert_eq!(r.neg_euler_char(), -1);
        let r2 = ReducedStateGraph {
            vertex_count: 2,
            edges: vec![ReducedEdge {
                circles: [0, 1],
                crossings: vec![0],
            }],
        };
        assert_eq!(r2.neg_euler_char(), -1);
    }

    #[test]
    fn adequacy_verdicts() {
        assert!(is_a_adequate(&all_a_state(&right_trefoil())));
        // One positive kink, plat-closed: the A-smoothing joins a circle to itself.
        let w = BraidWord::new(2, vec![1]).unwrap();
        let kink = braid_to_diagram(&w, Closure::Plat).unwrap();
        assert!(!is_a_adequate(&all_a_state(&kink)));
    }
}
