//! Special plat closures: a grid of twist regions on 2n strands.
//!
//! A spec has m = 2k+1 rows. Odd rows hold n-1 twist regions, the j-th
//! between strand positions (2j, 2j+1); even rows hold n regions between
//! positions (2j-1, 2j). Entry `a[i][j]` counts the crossings of that
//! region with sign: negative entries twist left (their A-resolution is
//! long), positive entries twist right (short resolution).

use std::fmt::Write as _;

use serde::Serialize;

use crate::braid::{braid_to_diagram, BraidWord, Closure};
use crate::diagram::LinkDiagram;
use crate::error::DiagramError;

/// Sign of a twist region or plat entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

/// Sign-pattern classification of a plat spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlatClass {
    /// n >= 3, odd rows <= -3, even rows <= -2.
    StronglyNegative,
    /// n >= 3, odd rows <= -3 or >= 1, even rows <= -2, some entry positive.
    MixedSign,
    /// n = 2: the closure is a two-bridge diagram.
    TwoBridge,
    /// Anything else with valid row shapes.
    Other,
}

/// Parameters of a special 2n-plat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlatSpec {
    n: usize,
    k: usize,
    rows: Vec<Vec<i32>>,
}

impl PlatSpec {
    /// Validate row shapes: 2k+1 rows, row i holding n-1 (i odd) or n
    /// (i even) nonzero entries, with rows numbered from 1.
    pub fn new(n: usize, k: usize, rows: Vec<Vec<i32>>) -> Result<Self, DiagramError> {
        if n < 2 {
            return Err(DiagramError::PlatSpec(format!("need n >= 2, got {n}")));
        }
        if k < 1 {
            return Err(DiagramError::PlatSpec(format!("need k >= 1, got {k}")));
        }
        let m = 2 * k + 1;
        if rows.len() != m {
            return Err(DiagramError::PlatSpec(format!(
                "expected {m} rows, got {}",
                rows.len()
            )));
        }
        for (idx, row) in rows.iter().enumerate() {
            let i = idx + 1;
            let want = if i % 2 == 1 { n - 1 } else { n };
            if row.len() != want {
                return Err(DiagramError::PlatSpec(format!(
                    "row {i} needs {want} entries, got {}",
                    row.len()
                )));
            }
            if row.iter().any(|&a| a == 0) {
                return Err(DiagramError::PlatSpec(format!("row {i} contains a zero entry")));
            }
        }
        Ok(PlatSpec { n, k, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of rows, m = 2k+1.
    pub fn row_count(&self) -> usize {
        2 * self.k + 1
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.rows
    }

    pub fn crossing_total(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|a| a.unsigned_abs() as usize)
            .sum()
    }

    /// Grid count of twist regions, (k+1)(n-1) + kn. The diagram's twist
    /// number can be smaller when +1 corner regions merge into neighbors.
    pub fn grid_region_count(&self) -> usize {
        (self.k + 1) * (self.n - 1) + self.k * self.n
    }

    pub fn is_strongly_negative(&self) -> bool {
        self.n >= 3 && self.row_entries_ok(|a| a <= -3, |a| a <= -2)
    }

    pub fn is_mixed_sign(&self) -> bool {
        self.n >= 3
            && self.row_entries_ok(|a| a <= -3 || a >= 1, |a| a <= -2)
            && self.rows.iter().flatten().any(|&a| a > 0)
    }

    fn row_entries_ok(&self, odd: impl Fn(i32) -> bool, even: impl Fn(i32) -> bool) -> bool {
        self.rows.iter().enumerate().all(|(idx, row)| {
            let pred: &dyn Fn(i32) -> bool = if (idx + 1) % 2 == 1 { &odd } else { &even };
            row.iter().all(|&a| pred(a))
        })
    }

    pub fn classify(&self) -> PlatClass {
        if self.n == 2 {
            PlatClass::TwoBridge
        } else if self.is_strongly_negative() {
            PlatClass::StronglyNegative
        } else if self.is_mixed_sign() {
            PlatClass::MixedSign
        } else {
            PlatClass::Other
        }
    }

    /// Counts of (negative, positive) entries.
    pub fn sign_counts(&self) -> (usize, usize) {
        let neg = self.rows.iter().flatten().filter(|&&a| a < 0).count();
        let pos = self.rows.iter().flatten().filter(|&&a| a > 0).count();
        (neg, pos)
    }

    /// Parse the plat file format: first line `n k`, then 2k+1 rows of
    /// signed integers. `#` starts a comment. A `;` may stand in for a
    /// newline so specs can travel in single-line payloads.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let cleaned = text.replace(';', "\n");
        let mut lines = cleaned
            .lines()
            .map(|l| match l.find('#') {
                Some(p) => &l[..p],
                None => l,
            })
            .filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| DiagramError::PlatSpec("empty spec".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| DiagramError::PlatSpec("bad n in header".into()))?;
        let k: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| DiagramError::PlatSpec("bad k in header".into()))?;
        if it.next().is_some() {
            return Err(DiagramError::PlatSpec("header must be exactly `n k`".into()));
        }
        let mut rows = Vec::new();
        for line in lines {
            let row: Vec<i32> = line
                .split_whitespace()
                .map(|s| {
                    s.parse::<i32>()
                        .map_err(|_| DiagramError::PlatSpec(format!("bad entry {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        PlatSpec::new(n, k, rows)
    }

    /// Inverse of `parse`, newline-separated and byte-deterministic.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}", self.n, self.k);
        for row in &self.rows {
            out.push('\n');
            for (i, a) in row.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write!(out, "{a}").unwrap();
            }
        }
        out
    }
}

/// Where a plat crossing came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlatCrossingInfo {
    /// 1-based row.
    pub row: usize,
    /// 1-based column within the row.
    pub col: usize,
    pub sign: Sign,
}

/// A generated plat diagram together with per-crossing provenance.
#[derive(Clone, Debug)]
pub struct PlatDiagram {
    pub diagram: LinkDiagram,
    /// Indexed by crossing id.
    pub crossings: Vec<PlatCrossingInfo>,
    pub class: PlatClass,
    pub spec: PlatSpec,
}

/// Realize the plat closure of a spec.
pub fn plat_closure(spec: &PlatSpec) -> Result<PlatDiagram, DiagramError> {
    let n = spec.n();
    let strands = 2 * n;
    let mut letters = Vec::with_capacity(spec.crossing_total());
    let mut info = Vec::with_capacity(spec.crossing_total());
    for (idx, row) in spec.rows().iter().enumerate() {
        let i = idx + 1;
        for (jdx, &a) in row.iter().enumerate() {
            let j = jdx + 1;
            // Odd rows sit between positions (2j, 2j+1): generator 2j.
            // Even rows sit between (2j-1, 2j): generator 2j-1.
            let generator = if i % 2 == 1 { 2 * j } else { 2 * j - 1 } as i32;
            let (letter, sign) = if a < 0 {
                (-generator, Sign::Negative)
            } else {
                (generator, Sign::Positive)
            };
            for _ in 0..a.unsigned_abs() {
                letters.push(letter);
                info.push(PlatCrossingInfo { row: i, col: j, sign });
            }
        }
    }
    let word = BraidWord::new(strands, letters)?;
    let diagram = braid_to_diagram(&word, Closure::Plat)?;
    Ok(PlatDiagram {
        diagram,
        crossings: info,
        class: spec.classify(),
        spec: spec.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn minimal_strongly_negative() -> PlatSpec {
        PlatSpec::new(
            3,
            1,
            vec![vec![-3, -3], vec![-2, -2, -2], vec![-3, -3]],
        )
        .unwrap()
    }

    #[test]
    fn minimal_spec_counts() {
        let s = minimal_strongly_negative();
        assert_eq!(s.crossing_total(), 18);
        assert_eq!(s.grid_region_count(), 7);
        assert_eq!(s.classify(), PlatClass::StronglyNegative);
    }

    #[test]
    fn closure_realizes_the_grid() {
        let p = plat_closure(&minimal_strongly_negative()).unwrap();
        assert_eq!(p.diagram.crossing_count(), 18);
        assert!(p.diagram.is_connected());
        assert_eq!(p.crossings.len(), 18);
    }

    #[test]
    fn two_bridge_spec_is_flagged() {
        let s = PlatSpec::new(2, 1, vec![vec![-3], vec![-2, -2], vec![-3]]).unwrap();
        assert_eq!(s.classify(), PlatClass::TwoBridge);
        let p = plat_closure(&s).unwrap();
        assert!(p.diagram.is_connected());
    }

    #[test]
    fn mixed_sign_classification() {
        let s = PlatSpec::new(
            3,
            1,
            vec![vec![1, -3], vec![-2, -2, -2], vec![-3, -3]],
        )
        .unwrap();
        assert_eq!(s.classify(), PlatClass::MixedSign);
        // -1 in an odd row is neither strongly negative nor mixed-sign.
        let other = PlatSpec::new(
            3,
            1,
            vec![vec![-1, -3], vec![-2, -2, -2], vec![-3, -3]],
        )
        .unwrap();
        assert_eq!(other.classify(), PlatClass::Other);
    }

    #[test]
    fn row_shape_validation() {
        assert!(PlatSpec::new(3, 1, vec![vec![-3], vec![-2, -2, -2], vec![-3, -3]]).is_err());
        assert!(PlatSpec::new(3, 1, vec![vec![-3, 0], vec![-2, -2, -2], vec![-3, -3]]).is_err());
        assert!(PlatSpec::new(1, 1, vec![vec![], vec![-2], vec![]]).is_err());
    }

    #[test]
    fn spec_text_roundtrip() {
        let s = minimal_strongly_negative();
        let text = s.serialize();
        assert_eq!(PlatSpec::parse(&text).unwrap(), s);
        let oneline = text.replace('\n', ";");
        assert_eq!(PlatSpec::parse(&oneline).unwrap(), s);
    }
}
