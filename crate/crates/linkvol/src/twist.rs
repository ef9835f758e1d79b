//! Twist regions, circle classification, and the counting identities.
//!
//! A twist region is a maximal string of bigon faces in the projection
//! graph. Regions with two or more crossings resolve either short (the
//! segments stay parallel between two circles) or long (the segments chain
//! through small inner circles). The census classifies every state circle
//! as a small inner circle (SIC), a special circle, or a remaining other
//! circle, and the identity checks tie the counts to the reduced state
//! graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagram::{Arc, End, LinkDiagram};
use crate::error::AnalysisError;
use crate::plat::{PlatCrossingInfo, Sign};
use crate::state::{AllAState, ReducedStateGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistRegionKind {
    OneCrossing,
    Short,
    Long,
}

/// A maximal bigon chain before resolution shapes are known.
#[derive(Clone, Debug)]
pub struct RawTwistRegion {
    pub id: usize,
    /// Crossings in chain order.
    pub crossings: Vec<usize>,
    /// Arc pairs of the bigons between consecutive chain crossings; for a
    /// cyclic chain the closing bigon comes last.
    pub bigons: Vec<[Arc; 2]>,
    /// True when the chain closes onto itself with no outward arcs.
    pub cyclic: bool,
    /// False when consecutive crossings are joined by an unexpected number
    /// of parallel arcs; classification rejects such regions.
    pub well_formed: bool,
}

/// A classified twist region.
#[derive(Clone, Debug, Serialize)]
pub struct TwistRegion {
    pub id: usize,
    pub crossings: Vec<usize>,
    pub kind: TwistRegionKind,
    /// Sign for plat-generated diagrams; a region absorbing any negative
    /// crossing counts negative.
    pub sign: Option<Sign>,
    #[serde(skip)]
    pub cyclic: bool,
    /// Small-inner-circle ids produced by a long resolution.
    #[serde(skip)]
    pub inner_circles: Vec<usize>,
    /// First and last circle of an open long chain (equal when the chain
    /// returns to the circle it started from).
    #[serde(skip)]
    pub end_circles: Option<(usize, usize)>,
}

impl TwistRegion {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn self_returning(&self) -> bool {
        matches!(self.end_circles, Some((a, b)) if a == b)
    }
}

/// Detect the maximal bigon chains of the projection graph.
///
/// Bigon faces induce an adjacency on crossings; its connected components
/// are the twist regions and they partition the crossing set. Regions are
/// numbered by ascending smallest crossing id. Detection is total;
/// structurally odd chains are only marked so classification can reject
/// them.
pub fn detect_twist_regions(diagram: &LinkDiagram) -> Vec<RawTwistRegion> {
    let n = diagram.crossing_count();
    let ends = diagram.arc_ends();
    let fs = diagram.faces();

    // Bigon faces: two ends, two distinct crossings, two distinct arcs.
    let mut partner_arcs: BTreeMap<(usize, usize), Vec<[Arc; 2]>> = BTreeMap::new();
    for walk in &fs.faces {
        if walk.len() != 2 {
            continue;
        }
        let (e1, e2) = (walk[0], walk[1]);
        if e1.crossing == e2.crossing {
            continue;
        }
        let a1 = diagram.crossings()[e1.crossing].arcs[e1.slot];
        let a2 = diagram.crossings()[e2.crossing].arcs[e2.slot];
        if a1 == a2 {
            continue;
        }
        let key = (e1.crossing.min(e2.crossing), e1.crossing.max(e2.crossing));
        partner_arcs.entry(key).or_default().push([a1.min(a2), a1.max(a2)]);
    }

    let mut partners: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in partner_arcs.keys() {
        partners[a].insert(b);
        partners[b].insert(a);
    }

    // Connected components of the bigon adjacency.
    let mut component = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut stack = vec![start];
        component[start] = id;
        let mut group = vec![start];
        while let Some(c) = stack.pop() {
            for &d in &partners[c] {
                if component[d] == usize::MAX {
                    component[d] = id;
                    stack.push(d);
                    group.push(d);
                }
            }
        }
        group.sort_unstable();
        members.push(group);
    }

    let arcs_between = |c: usize, d: usize| -> Vec<Arc> {
        let x = diagram.crossings()[c];
        let mut out: Vec<Arc> = x
            .arcs
            .iter()
            .copied()
            .filter(|a| {
                let [p, q] = ends[a];
                (p.crossing == c && q.crossing == d) || (p.crossing == d && q.crossing == c)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };

    let mut regions = Vec::new();
    for group in members {
        let id = regions.len();
        if group.len() == 1 {
            regions.push(RawTwistRegion {
                id,
                crossings: group,
                bigons: Vec::new(),
                cyclic: false,
                well_formed: true,
            });
            continue;
        }

        // Chain order and closure type come from the partner structure:
        // interior crossings have two distinct partners, endpoints one.
        // A two-crossing chain is closed exactly when all four arcs of
        // each crossing run to the other (the standalone torus component).
        let (order, cyclic, mut well_formed): (Vec<usize>, bool, bool) = if group.len() == 2 {
            let between = arcs_between(group[0], group[1]).len();
            match between {
                2 => (group.clone(), false, true),
                4 => (group.clone(), true, true),
                _ => (group.clone(), false, false),
            }
        } else {
            // Two bigon partners already occupy all four slots, so the
            // partner graph is a path or a cycle; walk it.
            debug_assert!(group.iter().all(|&c| partners[c].len() <= 2));
            let endpoints: Vec<usize> = group
                .iter()
                .copied()
                .filter(|&c| partners[c].len() == 1)
                .collect();
            let cyclic = endpoints.is_empty();
            let start = if cyclic { group[0] } else { endpoints[0] };
            let mut order = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            while order.len() < group.len() {
                let next = partners[cur]
                    .iter()
                    .copied()
                    .find(|&d| d != prev)
                    .expect("chain walk stays inside its component");
                order.push(next);
                prev = cur;
                cur = next;
            }
            (order, cyclic, true)
        };

        // Bigon arc pairs between consecutive crossings (+ the closing pair
        // of a cyclic chain). The closed two-crossing chain has no
        // distinguished pairs; its circles are picked during classification.
        let mut bigons = Vec::new();
        if well_formed && !(order.len() == 2 && cyclic) {
            let steps = if cyclic { order.len() } else { order.len() - 1 };
            for i in 0..steps {
                let c = order[i];
                let d = order[(i + 1) % order.len()];
                let arcs = arcs_between(c, d);
                if arcs.len() != 2 {
                    well_formed = false;
                    bigons.clear();
                    break;
                }
                bigons.push([arcs[0], arcs[1]]);
            }
        }

        regions.push(RawTwistRegion {
            id,
            crossings: order,
            bigons,
            cyclic,
            well_formed,
        });
    }

    regions.sort_by_key(|r| *r.crossings.iter().min().unwrap());
    for (i, r) in regions.iter_mut().enumerate() {
        r.id = i;
    }
    regions
}

/// How a crossing's A-smoothing sits relative to its chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SmoothingRole {
    /// Each smoothing pair joins the two arcs of one bigon (or the two
    /// outward arcs) together.
    Turnback,
    /// Each smoothing pair crosses from one bigon side to the other.
    Pass,
}

fn smoothing_role(
    diagram: &LinkDiagram,
    ends: &BTreeMap<Arc, [End; 2]>,
    crossing: usize,
    neighbors: &[usize],
) -> Result<SmoothingRole, ()> {
    let x = diagram.crossings()[crossing];
    // Target of each slot: the chain neighbor its arc runs to, if any.
    let target = |slot: usize| -> Option<usize> {
        let arc = x.arcs[slot];
        let [p, q] = ends[&arc];
        let other = if (p.crossing, p.slot) == (crossing, slot) { q } else { p };
        neighbors.contains(&other.crossing).then_some(other.crossing)
    };
    let pairs = [[target(0), target(1)], [target(2), target(3)]];
    let homogeneous = pairs.iter().all(|p| p[0] == p[1]);
    let mixed = pairs.iter().all(|p| p[0] != p[1]);
    match (homogeneous, mixed) {
        (true, false) => Ok(SmoothingRole::Turnback),
        (false, true) => Ok(SmoothingRole::Pass),
        _ => Err(()),
    }
}

/// Fill in resolution kinds, plat signs, inner circles, and chain ends.
pub fn classify_regions(
    diagram: &LinkDiagram,
    state: &AllAState,
    raw: Vec<RawTwistRegion>,
    plat: Option<&[PlatCrossingInfo]>,
) -> Result<Vec<TwistRegion>, AnalysisError> {
    let ends = diagram.arc_ends();
    let mut out = Vec::with_capacity(raw.len());
    for region in raw {
        if !region.well_formed {
            return Err(AnalysisError::RegionPattern(region.id));
        }
        let sign = plat.map(|info| {
            if region.crossings.iter().any(|&c| info[c].sign == Sign::Negative) {
                Sign::Negative
            } else {
                Sign::Positive
            }
        });

        if region.crossings.len() == 1 {
            out.push(TwistRegion {
                id: region.id,
                crossings: region.crossings,
                kind: TwistRegionKind::OneCrossing,
                sign,
                cyclic: false,
                inner_circles: Vec::new(),
                end_circles: None,
            });
            continue;
        }

        if region.crossings.len() == 2 && region.cyclic {
            // The standalone two-crossing torus component. Its plane picture
            // can be read either way; we record the chain as closing up, so
            // the two-edge loop is never certified as short.
            let circles: BTreeSet<usize> = region
                .crossings
                .iter()
                .flat_map(|&c| state.segments[c].circles)
                .collect();
            debug_assert_eq!(circles.len(), 2);
            let mut it = circles.into_iter();
            let keep_as_oc = it.next().unwrap();
            let inner = it.next().unwrap();
            out.push(TwistRegion {
                id: region.id,
                crossings: region.crossings,
                kind: TwistRegionKind::Long,
                sign,
                cyclic: true,
                inner_circles: vec![inner],
                end_circles: None,
            });
            let _ = keep_as_oc;
            continue;
        }

        let chain = &region.crossings;
        let mut roles = Vec::with_capacity(chain.len());
        for (i, &c) in chain.iter().enumerate() {
            let mut nbrs = Vec::new();
            if region.cyclic {
                nbrs.push(chain[(i + chain.len() - 1) % chain.len()]);
                nbrs.push(chain[(i + 1) % chain.len()]);
            } else {
                if i > 0 {
                    nbrs.push(chain[i - 1]);
                }
                if i + 1 < chain.len() {
                    nbrs.push(chain[i + 1]);
                }
            }
            let role = smoothing_role(diagram, &ends, c, &nbrs)
                .map_err(|_| AnalysisError::RegionPattern(region.id))?;
            roles.push(role);
        }

        let kind = if roles.iter().all(|&r| r == SmoothingRole::Turnback) {
            TwistRegionKind::Long
        } else if roles.iter().all(|&r| r == SmoothingRole::Pass) {
            TwistRegionKind::Short
        } else {
            return Err(AnalysisError::RegionPattern(region.id));
        };

        let mut inner_circles = Vec::new();
        let mut end_circles = None;
        if kind == TwistRegionKind::Long {
            // Every internal bigon closes into one small inner circle.
            let mut inner: Vec<usize> = Vec::new();
            for pair in &region.bigons {
                let ca = state.circle_of_arc(pair[0]);
                let cb = state.circle_of_arc(pair[1]);
                if ca != cb || state.circles[ca].arcs != *pair {
                    return Err(AnalysisError::RegionPattern(region.id));
                }
                inner.push(ca);
            }
            inner.sort_unstable();
            inner.dedup();
            if region.cyclic {
                // The chain closes on itself, so one chain circle plays the
                // role of the other circle; drop the smallest id for
                // determinism.
                inner.remove(0);
            } else {
                // End circles: each end crossing's outward smoothing pair.
                let first = chain[0];
                let last = chain[chain.len() - 1];
                let outward_circle = |c: usize, bigon: &[Arc; 2]| {
                    let x = diagram.crossings()[c];
                    let slot = (0..4)
                        .find(|&s| !bigon.contains(&x.arcs[s]))
                        .expect("an end crossing has outward arcs");
                    state.circle_of_arc(x.arcs[slot])
                };
                let start_circle = outward_circle(first, &region.bigons[0]);
                let end_circle = outward_circle(last, &region.bigons[region.bigons.len() - 1]);
                end_circles = Some((start_circle, end_circle));
            }
            inner_circles = inner;
        }

        out.push(TwistRegion {
            id: region.id,
            crossings: region.crossings,
            kind,
            sign,
            cyclic: region.cyclic,
            inner_circles,
            end_circles,
        });
    }
    Ok(out)
}

/// Hypotheses gating the census interpretation and the volume bounds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HypothesisFlags {
    pub connected: bool,
    pub prime: bool,
    pub a_adequate: bool,
    pub telc: bool,
    pub t_at_least_2: bool,
    /// The two-long-region diagram excluded from the special-circle
    /// characterization.
    pub exceptional: bool,
}

impl HypothesisFlags {
    pub fn main_theorem(&self) -> bool {
        self.connected && self.prime && self.a_adequate && self.telc && self.t_at_least_2
    }

    /// The special-circle count is only meaningful under the main
    /// hypotheses and away from the exceptional diagram.
    pub fn st_defined(&self) -> bool {
        self.main_theorem() && !self.exceptional
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "class")]
pub enum CircleClass {
    SmallInner { region: usize },
    Special,
    RemainingOther,
}

/// Per-circle classes and the counts every identity and bound consumes.
#[derive(Clone, Debug, Serialize)]
pub struct CircleCensus {
    pub classes: Vec<CircleClass>,
    pub t: usize,
    pub t_one: usize,
    pub t_short: usize,
    pub t_long: usize,
    /// Reduced-graph edges coming from long twist regions.
    pub e_long: usize,
    pub sic_count: usize,
    pub oc_count: usize,
    /// Number of special circles; `None` when the gating hypotheses fail.
    pub special_count: Option<usize>,
    /// Raw count of non-SIC circles meeting exactly two twist regions,
    /// reported even when `special_count` is undefined.
    pub two_region_oc_count: usize,
    /// Fewest distinct twist regions any non-SIC circle meets.
    pub min_oc_region_incidence: Option<usize>,
    /// Twist regions by sign, when the diagram came from a plat spec.
    pub t_negative: Option<usize>,
    pub t_positive: Option<usize>,
    /// t = st forces the diagram to be alternating.
    pub forced_alternating: bool,
    pub flags: HypothesisFlags,
}

/// Classify every circle and assemble the census.
pub fn classify_circles(
    state: &AllAState,
    regions: &[TwistRegion],
    flags: HypothesisFlags,
) -> CircleCensus {
    let t = regions.len();
    let t_one = regions
        .iter()
        .filter(|r| r.kind == TwistRegionKind::OneCrossing)
        .count();
    let t_short = regions.iter().filter(|r| r.kind == TwistRegionKind::Short).count();
    let t_long = regions.iter().filter(|r| r.kind == TwistRegionKind::Long).count();

    let mut region_of: BTreeMap<usize, usize> = BTreeMap::new();
    for r in regions {
        for &c in &r.crossings {
            region_of.insert(c, r.id);
        }
    }

    // Reduced edges grouped by circle pair; an edge is long when every
    // crossing it absorbed lies in a long region.
    let mut grouped: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for s in &state.segments {
        grouped.entry(s.circles).or_default().push(s.crossing);
    }
    let e_long = grouped
        .values()
        .filter(|crossings| {
            crossings
                .iter()
                .all(|c| regions[region_of[c]].kind == TwistRegionKind::Long)
        })
        .count();

    let mut classes = vec![CircleClass::RemainingOther; state.circles.len()];
    for r in regions {
        for &circle in &r.inner_circles {
            debug_assert!(matches!(classes[circle], CircleClass::RemainingOther));
            classes[circle] = CircleClass::SmallInner { region: r.id };
        }
    }

    // Distinct twist regions meeting each circle.
    let mut incident: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); state.circles.len()];
    for s in &state.segments {
        let rid = region_of[&s.crossing];
        incident[s.circles[0]].insert(rid);
        incident[s.circles[1]].insert(rid);
    }

    let st_defined = flags.st_defined();
    let mut sic_count = 0;
    let mut oc_count = 0;
    let mut two_region = 0;
    let mut min_incidence: Option<usize> = None;
    let mut special = 0;
    for id in 0..state.circles.len() {
        if matches!(classes[id], CircleClass::SmallInner { .. }) {
            sic_count += 1;
            continue;
        }
        oc_count += 1;
        let meets = incident[id].len();
        min_incidence = Some(min_incidence.map_or(meets, |m| m.min(meets)));
        if meets == 2 {
            two_region += 1;
            if st_defined {
                classes[id] = CircleClass::Special;
                special += 1;
            }
        }
    }

    let (t_negative, t_positive) = if regions.iter().all(|r| r.sign.is_some()) && t > 0 {
        let neg = regions.iter().filter(|r| r.sign == Some(Sign::Negative)).count();
        (Some(neg), Some(t - neg))
    } else {
        (None, None)
    };

    let special_count = st_defined.then_some(special);
    CircleCensus {
        classes,
        t,
        t_one,
        t_short,
        t_long,
        e_long,
        sic_count,
        oc_count,
        special_count,
        two_region_oc_count: two_region,
        min_oc_region_incidence: min_incidence,
        t_negative,
        t_positive,
        forced_alternating: special_count == Some(t),
        flags,
    }
}

/// Walk a state circle and report the crossings whose smoothing joins it
/// passes, in cyclic order. A crossing appears once per smoothing arc the
/// circle owns there.
pub fn circle_crossing_cycle(
    diagram: &LinkDiagram,
    state: &AllAState,
    circle: usize,
) -> Vec<usize> {
    let ends = diagram.arc_ends();
    let start_arc = state.circles[circle].arcs[0];
    let Some(&start_ends) = ends.get(&start_arc) else {
        return Vec::new(); // a crossing-free unknot circle
    };
    let mut seq = Vec::new();
    let mut arc = start_arc;
    let mut entry = start_ends[0];
    loop {
        let [p, q] = ends[&arc];
        let exit = if p == entry { q } else { p };
        // The smoothing pairs slots (0,1) and (2,3), so the mate is s ^ 1.
        let mate = exit.slot ^ 1;
        seq.push(exit.crossing);
        arc = diagram.crossings()[exit.crossing].arcs[mate];
        entry = End {
            crossing: exit.crossing,
            slot: mate,
        };
        if arc == start_arc && entry == start_ends[0] {
            break;
        }
    }
    seq
}

/// Detect the excluded diagram: exactly two long twist regions, each with
/// at least three crossings, whose chains both leave and re-enter one
/// common circle with their four attachments interleaved around it. The
/// separated attachment pattern belongs to composite diagrams and is not
/// exceptional.
pub fn detect_exceptional_diagram(
    diagram: &LinkDiagram,
    state: &AllAState,
    regions: &[TwistRegion],
) -> bool {
    if regions.len() != 2 {
        return false;
    }
    let (a, b) = (&regions[0], &regions[1]);
    if a.kind != TwistRegionKind::Long || b.kind != TwistRegionKind::Long {
        return false;
    }
    if a.cyclic || b.cyclic || a.len() < 3 || b.len() < 3 {
        return false;
    }
    let (Some((a0, a1)), Some((b0, b1))) = (a.end_circles, b.end_circles) else {
        return false;
    };
    if a0 != a1 || b0 != b1 || a0 != b0 {
        return false;
    }
    if state.circle_count() != 1 + (a.len() - 1) + (b.len() - 1) {
        return false;
    }
    let mut region_of: BTreeMap<usize, usize> = BTreeMap::new();
    for r in regions {
        for &c in &r.crossings {
            region_of.insert(c, r.id);
        }
    }
    let pattern: Vec<usize> = circle_crossing_cycle(diagram, state, a0)
        .into_iter()
        .map(|c| region_of[&c])
        .collect();
    pattern.len() == 4 && pattern[0] == pattern[2] && pattern[1] == pattern[3] && pattern[0] != pattern[1]
}

/// One verified counting identity.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub applicable: bool,
    pub lhs: i64,
    pub rhs: i64,
    /// `None` when the gating hypotheses fail.
    pub holds: Option<bool>,
}

fn check(name: &'static str, applicable: bool, lhs: i64, rhs: i64) -> IdentityCheck {
    IdentityCheck {
        name,
        applicable,
        lhs,
        rhs,
        holds: applicable.then_some(lhs == rhs),
    }
}

/// Evaluate the counting identities tying the census to the reduced graph.
/// Failures are reported, never thrown.
pub fn verify_identities(census: &CircleCensus, reduced: &ReducedStateGraph) -> Vec<IdentityCheck> {
    let f = &census.flags;
    let chi_gate = f.connected && f.a_adequate && f.telc;
    let st_gate = f.st_defined();

    let degrees = reduced.degrees();
    let degree_sum: i64 = degrees.iter().map(|&d| d as i64).sum();
    let remaining_oc_degree_sum: i64 = census
        .classes
        .iter()
        .enumerate()
        .filter(|(_, c)| matches!(c, CircleClass::RemainingOther))
        .map(|(id, _)| degrees[id] as i64)
        .sum();
    let st = census.special_count.unwrap_or(0) as i64;

    vec![
        check(
            "neg_chi_equals_t_minus_oc",
            chi_gate,
            reduced.neg_euler_char(),
            census.t as i64 - census.oc_count as i64,
        ),
        check(
            "sic_count_equals_elong_minus_tlong",
            chi_gate,
            census.sic_count as i64,
            census.e_long as i64 - census.t_long as i64,
        ),
        check(
            "edges_split_by_region_kind",
            chi_gate,
            reduced.edge_count() as i64,
            census.t_one as i64 + census.t_short as i64 + census.e_long as i64,
        ),
        check(
            "handshake",
            true,
            degree_sum,
            2 * reduced.edge_count() as i64,
        ),
        check(
            "degree_sum_vs_twist_number",
            st_gate,
            2 * st + remaining_oc_degree_sum,
            2 * census.t as i64,
        ),
        IdentityCheck {
            name: "twist_number_at_least_st",
            applicable: st_gate,
            lhs: census.t as i64,
            rhs: st,
            holds: st_gate.then_some(census.t as i64 >= st),
        },
    ]
}
