//! Planar diagram codes and the combinatorial model of a link diagram.
//!
//! A diagram is a list of crossings, each a 4-tuple of arc labels read
//! counterclockwise starting at the incoming under-strand, plus optional
//! crossing-free unknot circles. The tuple doubles as a rotation system,
//! so planarity of the stated embedding is checked with Euler's formula
//! on the faces it induces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::DiagramError;

/// Arc labels are positive integers; after validation they are dense in `1..=2c`.
pub type Arc = u32;

/// One crossing of a diagram.
///
/// `arcs[0]` and `arcs[2]` form the under-strand, `arcs[1]` and `arcs[3]`
/// the over-strand; slots are listed counterclockwise from the incoming
/// under-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub arcs: [Arc; 4],
}

impl Crossing {
    pub fn new(a: Arc, b: Arc, c: Arc, d: Arc) -> Self {
        Crossing { arcs: [a, b, c, d] }
    }

    /// True when an arc label is repeated inside this crossing (a kink).
    pub fn is_kink(&self) -> bool {
        let a = self.arcs;
        a[0] == a[1] || a[0] == a[2] || a[0] == a[3] || a[1] == a[2] || a[1] == a[3] || a[2] == a[3]
    }

    /// Swap over- and under-strand by shifting the tuple one slot.
    fn mirrored(&self) -> Self {
        let [a, b, c, d] = self.arcs;
        Crossing { arcs: [b, c, d, a] }
    }
}

/// An arc end: which crossing and which of its four slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct End {
    pub crossing: usize,
    pub slot: usize,
}

/// Faces of the projection graph in the embedding given by the PD tuples.
#[derive(Clone, Debug)]
pub struct FaceStructure {
    /// Each face as the cyclic list of arc ends encountered on its boundary walk.
    pub faces: Vec<Vec<End>>,
    /// Face id for every arc end.
    pub face_of_end: BTreeMap<End, usize>,
}

impl FaceStructure {
    /// The two faces bordering an arc (its two ends lie on one face each;
    /// they coincide exactly when the arc borders the same face twice).
    pub fn faces_of_arc(&self, ends: &[End; 2]) -> (usize, usize) {
        (self.face_of_end[&ends[0]], self.face_of_end[&ends[1]])
    }
}

/// A validated link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    /// Arc labels of crossing-free unknot components.
    unknots: Vec<Arc>,
    name: Option<String>,
    components: usize,
}

impl LinkDiagram {
    /// Validate and normalize a diagram.
    ///
    /// Checks that every crossing arc label occurs exactly twice, that
    /// unknot labels are fresh, that a crossing-free diagram is the single
    /// standard unknot, and that every connected component of the stated
    /// embedding satisfies V - E + F = 2. Arc labels are renumbered densely.
    pub fn new(
        crossings: Vec<Crossing>,
        unknots: Vec<Arc>,
        name: Option<String>,
    ) -> Result<Self, DiagramError> {
        if crossings.is_empty() && unknots.len() != 1 {
            return Err(DiagramError::ZeroCrossingMultiComponent);
        }

        let mut counts: BTreeMap<Arc, usize> = BTreeMap::new();
        for x in &crossings {
            for &a in &x.arcs {
                if a == 0 {
                    return Err(DiagramError::Syntax("arc label 0 is not allowed".into()));
                }
                *counts.entry(a).or_insert(0) += 1;
            }
        }
        for (&label, &count) in &counts {
            if count != 2 {
                return Err(DiagramError::ArcCount { label, count });
            }
        }
        let mut seen_unknot = BTreeSet::new();
        for &u in &unknots {
            if counts.contains_key(&u) {
                return Err(DiagramError::UnknotArcClash(u));
            }
            if !seen_unknot.insert(u) {
                return Err(DiagramError::DuplicateUnknotArc(u));
            }
        }

        // Dense relabeling: crossing arcs first (1..=2c), then unknot arcs.
        let mut relabel: BTreeMap<Arc, Arc> = BTreeMap::new();
        for (i, (&old, _)) in counts.iter().enumerate() {
            relabel.insert(old, (i + 1) as Arc);
        }
        let mut next = counts.len() as Arc + 1;
        let mut unknot_sorted = unknots.clone();
        unknot_sorted.sort_unstable();
        for &u in &unknot_sorted {
            relabel.insert(u, next);
            next += 1;
        }
        let crossings: Vec<Crossing> = crossings
            .iter()
            .map(|x| Crossing {
                arcs: [
                    relabel[&x.arcs[0]],
                    relabel[&x.arcs[1]],
                    relabel[&x.arcs[2]],
                    relabel[&x.arcs[3]],
                ],
            })
            .collect();
        let unknots: Vec<Arc> = unknot_sorted.iter().map(|u| relabel[u]).collect();

        let mut diagram = LinkDiagram {
            crossings,
            unknots,
            name,
            components: 0,
        };
        diagram.check_planarity()?;
        diagram.components = diagram.count_components();
        Ok(diagram)
    }

    /// The standard zero-crossing unknot diagram.
    pub fn unknot() -> Self {
        LinkDiagram::new(Vec::new(), vec![1], Some("unknot".into())).expect("unknot is valid")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn unknot_components(&self) -> &[Arc] {
        &self.unknots
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        self.components
    }

    /// True when some crossing repeats an arc label (kink / curl).
    pub fn has_kink(&self) -> bool {
        self.crossings.iter().any(Crossing::is_kink)
    }

    /// Arc labels of the crossing structure, ascending.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut set = BTreeSet::new();
        for x in &self.crossings {
            set.extend(x.arcs.iter().copied());
        }
        set.into_iter().collect()
    }

    /// The two ends of every crossing arc.
    pub fn arc_ends(&self) -> BTreeMap<Arc, [End; 2]> {
        let mut acc: BTreeMap<Arc, Vec<End>> = BTreeMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            for (slot, &a) in x.arcs.iter().enumerate() {
                acc.entry(a).or_default().push(End { crossing: ci, slot });
            }
        }
        acc.into_iter()
            .map(|(a, ends)| {
                debug_assert_eq!(ends.len(), 2);
                (a, [ends[0], ends[1]])
            })
            .collect()
    }

    fn other_end(&self, ends: &BTreeMap<Arc, [End; 2]>, e: End) -> End {
        let arc = self.crossings[e.crossing].arcs[e.slot];
        let [p, q] = ends[&arc];
        if p == e {
            q
        } else {
            p
        }
    }

    /// Trace the faces of the stated embedding.
    ///
    /// From an end we cross to the arc's other end and turn one slot
    /// counterclockwise; the orbits of that walk are the faces.
    pub fn faces(&self) -> FaceStructure {
        let ends_map = self.arc_ends();
        let mut face_of_end: BTreeMap<End, usize> = BTreeMap::new();
        let mut faces: Vec<Vec<End>> = Vec::new();
        for ci in 0..self.crossings.len() {
            for slot in 0..4 {
                let start = End { crossing: ci, slot };
                if face_of_end.contains_key(&start) {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let mut cur = start;
                loop {
                    face_of_end.insert(cur, id);
                    walk.push(cur);
                    let across = self.other_end(&ends_map, cur);
                    cur = End {
                        crossing: across.crossing,
                        slot: (across.slot + 1) % 4,
                    };
                    if cur == start {
                        break;
                    }
                }
                faces.push(walk);
            }
        }
        FaceStructure { faces, face_of_end }
    }

    /// Connected components of the projection graph (crossings joined by arcs).
    fn projection_components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.crossings.len()];
        let ends = self.arc_ends();
        let mut next = 0;
        for start in 0..self.crossings.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(c) = stack.pop() {
                for slot in 0..4 {
                    let o = self.other_end(&ends, End { crossing: c, slot });
                    if comp[o.crossing] == usize::MAX {
                        comp[o.crossing] = next;
                        stack.push(o.crossing);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    fn check_planarity(&self) -> Result<(), DiagramError> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let comp = self.projection_components();
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        let ends = self.arc_ends();
        let fs = self.faces();
        for k in 0..ncomp {
            let v = comp.iter().filter(|&&c| c == k).count() as i64;
            let e = ends
                .values()
                .filter(|ends| comp[ends[0].crossing] == k)
                .count() as i64;
            let f = fs
                .faces
                .iter()
                .filter(|walk| comp[walk[0].crossing] == k)
                .count() as i64;
            if v - e + f != 2 {
                return Err(DiagramError::NonPlanar(v - e + f));
            }
        }
        Ok(())
    }

    fn count_components(&self) -> usize {
        // Strands pass straight through a crossing: 0-2 under, 1-3 over.
        let arcs = self.arcs();
        let mut uf = UnionFind::new(arcs.len());
        let index: BTreeMap<Arc, usize> = arcs.iter().copied().enumerate().map(|(i, a)| (a, i)).collect();
        for x in &self.crossings {
            uf.union(index[&x.arcs[0]], index[&x.arcs[2]]);
            uf.union(index[&x.arcs[1]], index[&x.arcs[3]]);
        }
        uf.class_count() + self.unknots.len()
    }

    /// True when the projection graph is connected and no crossing-free
    /// circle sits alongside crossings.
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.unknots.len() == 1;
        }
        if !self.unknots.is_empty() {
            return false;
        }
        let comp = self.projection_components();
        comp.iter().all(|&c| c == 0)
    }

    /// Decide diagrammatic primeness by 2-edge cuts of the projection graph.
    ///
    /// A connected 4-valent plane graph is bridgeless, so every 2-edge cut
    /// is a pair of arcs bordering the same two faces (a dual 2-cycle).
    /// The diagram is composite exactly when removing such a pair splits
    /// the crossings into two nonempty sides.
    pub fn is_prime(&self) -> Result<bool, DiagramError> {
        if !self.is_connected() {
            return Err(DiagramError::Disconnected);
        }
        if self.crossings.is_empty() {
            return Err(DiagramError::NoCrossings);
        }
        let ends = self.arc_ends();
        let fs = self.faces();
        let mut by_face_pair: BTreeMap<(usize, usize), Vec<Arc>> = BTreeMap::new();
        for (&arc, ends2) in &ends {
            if ends2[0].crossing == ends2[1].crossing {
                continue; // loop arcs never participate in a 2-edge cut
            }
            let (f, g) = fs.faces_of_arc(ends2);
            if f == g {
                continue;
            }
            let key = (f.min(g), f.max(g));
            by_face_pair.entry(key).or_default().push(arc);
        }
        for group in by_face_pair.values() {
            for i in 0..group.len() {
                for j in i + 1..group.len() {
                    if self.cut_separates(&ends, group[i], group[j]) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Does removing arcs {e, f} disconnect the crossing set?
    fn cut_separates(&self, ends: &BTreeMap<Arc, [End; 2]>, e: Arc, f: Arc) -> bool {
        let n = self.crossings.len();
        if n < 2 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(c) = stack.pop() {
            for slot in 0..4 {
                let arc = self.crossings[c].arcs[slot];
                if arc == e || arc == f {
                    continue;
                }
                let o = self.other_end(ends, End { crossing: c, slot });
                if !seen[o.crossing] {
                    seen[o.crossing] = true;
                    reached += 1;
                    stack.push(o.crossing);
                }
            }
        }
        reached < n
    }

    /// The mirror diagram: every crossing swaps over- and under-strand.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self.crossings.iter().map(Crossing::mirrored).collect();
        let name = self.name.as_ref().map(|n| format!("{n}-mirror"));
        LinkDiagram::new(crossings, self.unknots.clone(), name)
            .expect("mirror of a valid diagram is valid")
    }

    /// Render the diagram in PD text form. Deterministic byte-for-byte.
    pub fn serialize_pd(&self) -> String {
        let mut out = String::new();
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let [a, b, c, d] = x.arcs;
            write!(out, "X({a},{b},{c},{d})").unwrap();
        }
        for (i, u) in self.unknots.iter().enumerate() {
            if i > 0 || !self.crossings.is_empty() {
                out.push(' ');
            }
            write!(out, "U({u})").unwrap();
        }
        out
    }
}

/// Parse the PD grammar: whitespace-separated `X(a,b,c,d)` and `U(a)` terms,
/// `#` line comments. Empty input denotes the standard unknot diagram.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut crossings = Vec::new();
    let mut unknots = Vec::new();
    for line in text.lines() {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        for token in line.split_whitespace() {
            if let Some(rest) = token.strip_prefix("X(") {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| DiagramError::Syntax(format!("unterminated term {token:?}")))?;
                let nums: Vec<Arc> = inner
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<Arc>()
                            .map_err(|_| DiagramError::Syntax(format!("bad arc label in {token:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                if nums.len() != 4 {
                    return Err(DiagramError::Syntax(format!(
                        "X term needs 4 labels, got {} in {token:?}",
                        nums.len()
                    )));
                }
                crossings.push(Crossing::new(nums[0], nums[1], nums[2], nums[3]));
            } else if let Some(rest) = token.strip_prefix("U(") {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| DiagramError::Syntax(format!("unterminated term {token:?}")))?;
                let u = inner
                    .trim()
                    .parse::<Arc>()
                    .map_err(|_| DiagramError::Syntax(format!("bad arc label in {token:?}")))?;
                unknots.push(u);
            } else {
                return Err(DiagramError::Syntax(format!("unrecognized term {token:?}")));
            }
        }
    }
    if crossings.is_empty() && unknots.is_empty() {
        return Ok(LinkDiagram::unknot());
    }
    LinkDiagram::new(crossings, unknots, None)
}

/// Small union-find over dense indices.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Keep the smaller root so representatives are order-stable.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    pub fn class_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}
