//! Braid words and their closures as link diagrams.
//!
//! Strands run top to bottom. The generator `i` (written `+i`) crosses the
//! strand entering at position `i` over the strand at `i + 1`; its inverse
//! (`-i`) crosses it under. With the PD slot convention this makes the
//! A-resolution of a positive crossing the identity smoothing and the
//! A-resolution of a negative crossing the turnback smoothing, so negative
//! twist regions resolve long and positive ones short.

use crate::diagram::{Crossing, LinkDiagram};
use crate::error::DiagramError;

/// A word in the braid group on `strands` strands. Letters are signed
/// generator indices; the word may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, DiagramError> {
        if strands < 2 {
            return Err(DiagramError::TooFewStrands(strands));
        }
        for &l in &letters {
            let idx = l.unsigned_abs() as usize;
            if l == 0 || idx >= strands {
                return Err(DiagramError::GeneratorRange {
                    index: idx,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }
}

/// How to close a braid into a link diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Join top position i to bottom position i around the side.
    Trace,
    /// Cap positions (2i-1, 2i) at top and bottom with nested arcs.
    Plat,
}

/// Intermediate arc bookkeeping: the frontier holds the arc id currently
/// occupying each strand position.
struct Builder {
    crossings: Vec<Crossing>,
    next_arc: u32,
}

impl Builder {
    fn fresh(&mut self) -> u32 {
        let a = self.next_arc;
        self.next_arc += 1;
        a
    }
}

/// Build the diagram of a braid word under the requested closure.
///
/// The crossing at letter k gets id k, so twist-region bookkeeping can
/// refer back to positions in the word.
pub fn braid_to_diagram(word: &BraidWord, closure: Closure) -> Result<LinkDiagram, DiagramError> {
    let n = word.strands();
    if closure == Closure::Plat && n % 2 != 0 {
        return Err(DiagramError::OddStrands(n));
    }
    if word.letters().is_empty() && n >= 2 {
        // Every closure of the empty word is a disjoint union of circles.
        return Err(DiagramError::EmptyClosure(n));
    }

    let mut b = Builder {
        crossings: Vec::with_capacity(word.letters().len()),
        next_arc: 1,
    };
    let top: Vec<u32> = (0..n).map(|_| b.fresh()).collect();
    let mut frontier = top.clone();

    for &letter in word.letters() {
        let i = letter.unsigned_abs() as usize - 1; // left strand position
        let (tl, tr) = (frontier[i], frontier[i + 1]);
        let bl = b.fresh();
        let br = b.fresh();
        // Downward strands: a positive letter puts the NE-SW strand on top,
        // so the under-strand runs tl -> br and the tuple starts at tl.
        let x = if letter > 0 {
            Crossing::new(tl, bl, br, tr)
        } else {
            Crossing::new(tr, tl, bl, br)
        };
        b.crossings.push(x);
        frontier[i] = bl;
        frontier[i + 1] = br;
    }

    // Closures identify frontier arcs with top arcs. Collapse the
    // identifications with a relabeling pass.
    let mut alias: Vec<u32> = (0..b.next_arc).collect();
    fn root(alias: &mut [u32], mut a: u32) -> u32 {
        while alias[a as usize] != a {
            let up = alias[alias[a as usize] as usize];
            alias[a as usize] = up;
            a = up;
        }
        a
    }
    let merge = |alias: &mut Vec<u32>, a: u32, c: u32| {
        let ra = root(alias, a);
        let rc = root(alias, c);
        if ra != rc {
            let (lo, hi) = (ra.min(rc), ra.max(rc));
            alias[hi as usize] = lo;
        }
    };
    match closure {
        Closure::Trace => {
            for i in 0..n {
                merge(&mut alias, top[i], frontier[i]);
            }
        }
        Closure::Plat => {
            for i in (0..n).step_by(2) {
                merge(&mut alias, top[i], top[i + 1]);
                merge(&mut alias, frontier[i], frontier[i + 1]);
            }
        }
    }

    let crossings: Vec<Crossing> = b
        .crossings
        .iter()
        .map(|x| {
            Crossing::new(
                root(&mut alias, x.arcs[0]),
                root(&mut alias, x.arcs[1]),
                root(&mut alias, x.arcs[2]),
                root(&mut alias, x.arcs[3]),
            )
        })
        .collect();

    // A strand pair (plat) or strand (trace) never visited by a crossing
    // closes into a free circle.
    let mut used: Vec<bool> = vec![false; b.next_arc as usize];
    for x in &crossings {
        for &a in &x.arcs {
            used[a as usize] = true;
        }
    }
    let mut unknots = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..n {
        let r = root(&mut alias, top[i]);
        if !used[r as usize] && seen.insert(r) {
            unknots.push(r);
        }
    }

    LinkDiagram::new(crossings, unknots, None)
}
