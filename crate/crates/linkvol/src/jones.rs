//! Brute-force Kauffman bracket and the stable coefficient check.
//!
//! The bracket is the sum over all 2^c resolutions of
//! A^(a-b) (-A^2 - A^-2)^(circles - 1), with exact integer coefficients.
//! For an A-adequate diagram the all-A resolution realizes the maximal
//! A-degree c + 2(|s_A| - 1) alone, so the coefficient four below the top
//! is well defined; its magnitude must equal 1 + (-chi) of the reduced
//! state graph, which is what the verifier compares.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{LinkDiagram, UnionFind};
use crate::error::AnalysisError;
use crate::state::{all_a_state, build_ga, is_a_adequate, reduce_ga};

/// Exact Laurent polynomial in one variable. Zero coefficients are never
/// stored. i128 coefficients leave ample headroom: every state contributes
/// at most 2^c across all monomials, so magnitudes stay below 4^c.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, i128>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::default();
        p.add_term(0, 1);
        p
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: i128) {
        if coefficient == 0 {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert(0);
        *slot += coefficient;
        if *slot == 0 {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coefficient(&self, exponent: i64) -> i128 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Substitute A -> A^-1.
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }
}

/// Default cap on the 2^c state enumeration.
pub const DEFAULT_CROSSING_LIMIT: usize = 20;

/// Count the circles left after resolving every crossing according to the
/// bitmask (bit set = B-resolution at that crossing).
fn resolved_circle_count(diagram: &LinkDiagram, arcs: &[u32], index: &BTreeMap<u32, usize>, mask: u64) -> usize {
    let mut uf = UnionFind::new(arcs.len());
    for (ci, x) in diagram.crossings().iter().enumerate() {
        let a = x.arcs;
        if mask >> ci & 1 == 0 {
            // A-resolution joins (slot0, slot1) and (slot2, slot3).
            uf.union(index[&a[0]], index[&a[1]]);
            uf.union(index[&a[2]], index[&a[3]]);
        } else {
            // B-resolution joins (slot1, slot2) and (slot3, slot0).
            uf.union(index[&a[1]], index[&a[2]]);
            uf.union(index[&a[3]], index[&a[0]]);
        }
    }
    uf.class_count() + diagram.unknot_components().len()
}

/// Circle partition of an arbitrary resolution, used as an independent
/// tracer for the all-B state in tests.
pub fn resolved_circle_partition(diagram: &LinkDiagram, mask: u64) -> Vec<Vec<u32>> {
    let arcs = diagram.arcs();
    let index: BTreeMap<u32, usize> = arcs.iter().copied().enumerate().map(|(i, a)| (a, i)).collect();
    let mut uf = UnionFind::new(arcs.len());
    for (ci, x) in diagram.crossings().iter().enumerate() {
        let a = x.arcs;
        if mask >> ci & 1 == 0 {
            uf.union(index[&a[0]], index[&a[1]]);
            uf.union(index[&a[2]], index[&a[3]]);
        } else {
            uf.union(index[&a[1]], index[&a[2]]);
            uf.union(index[&a[3]], index[&a[0]]);
        }
    }
    let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (&arc, &i) in &index {
        groups.entry(uf.find(i)).or_default().push(arc);
    }
    let mut out: Vec<Vec<u32>> = groups.into_values().collect();
    for &u in diagram.unknot_components() {
        out.push(vec![u]);
    }
    out.sort_by_key(|g| g[0]);
    out
}

/// The full state sum, exact in the bracket variable A.
pub fn kauffman_bracket(
    diagram: &LinkDiagram,
    limit: usize,
) -> Result<LaurentPolynomial, AnalysisError> {
    let c = diagram.crossing_count();
    if c > limit || c > 63 {
        return Err(AnalysisError::OracleLimit { count: c, limit });
    }
    let arcs = diagram.arcs();
    let index: BTreeMap<u32, usize> = arcs.iter().copied().enumerate().map(|(i, a)| (a, i)).collect();

    // Binomial rows for expanding (-A^2 - A^-2)^k exactly.
    let max_circles = arcs.len().max(1) + diagram.unknot_components().len();
    let mut binomial: Vec<Vec<i128>> = vec![vec![1]];
    for k in 1..=max_circles {
        let prev = &binomial[k - 1];
        let mut row = vec![1i128; k + 1];
        for i in 1..k {
            row[i] = prev[i - 1] + prev[i];
        }
        binomial.push(row);
    }

    let mut bracket = LaurentPolynomial::zero();
    for mask in 0u64..1u64 << c {
        let b = mask.count_ones() as i64;
        let a = c as i64 - b;
        let circles = resolved_circle_count(diagram, &arcs, &index, mask);
        let k = circles - 1;
        // (-A^2 - A^-2)^k = (-1)^k sum_i C(k, i) A^(2k - 4i)
        let sign = if k % 2 == 0 { 1i128 } else { -1i128 };
        for (i, &binom) in binomial[k].iter().enumerate() {
            bracket.add_term(a - b + 2 * k as i64 - 4 * i as i64, sign * binom);
        }
    }
    Ok(bracket)
}

/// Result of the stable-coefficient comparison.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct StableCoefficientCheck {
    /// 1 + (-chi) from the reduced state graph.
    pub expected: i64,
    /// Bracket coefficient magnitude four below the top A-degree.
    pub observed: i64,
    pub max_degree: i64,
    pub matches: bool,
}

/// Magnitude of the bracket coefficient one step below the extreme term.
///
/// Adjacent bracket degrees sit four apart, and A-adequacy pins the top
/// degree at c + 2(|s_A| - 1), so the stable coefficient is read at
/// max-degree minus 4.
pub fn stable_beta_prime(diagram: &LinkDiagram, limit: usize) -> Result<u64, AnalysisError> {
    let state = all_a_state(diagram);
    if !is_a_adequate(&state) {
        return Err(AnalysisError::NotAdequate);
    }
    let bracket = kauffman_bracket(diagram, limit)?;
    let c = diagram.crossing_count() as i64;
    let expected_top = c + 2 * (state.circle_count() as i64 - 1);
    debug_assert_eq!(bracket.max_degree(), Some(expected_top));
    debug_assert_eq!(bracket.coefficient(expected_top).unsigned_abs(), 1);
    Ok(bracket.coefficient(expected_top - 4).unsigned_abs() as u64)
}

/// Compare the combinatorial prediction 1 + (-chi) against the bracket.
pub fn verify_stable_coefficient(
    diagram: &LinkDiagram,
    limit: usize,
) -> Result<StableCoefficientCheck, AnalysisError> {
    if !diagram.is_connected() {
        return Err(AnalysisError::Diagram(crate::error::DiagramError::Disconnected));
    }
    let state = all_a_state(diagram);
    if !is_a_adequate(&state) {
        return Err(AnalysisError::NotAdequate);
    }
    let reduced = reduce_ga(&build_ga(&state));
    let expected = 1 + reduced.neg_euler_char();
    let observed = stable_beta_prime(diagram, limit)? as i64;
    let c = diagram.crossing_count() as i64;
    Ok(StableCoefficientCheck {
        expected,
        observed,
        max_degree: c + 2 * (state.circle_count() as i64 - 1),
        matches: expected == observed,
    })
}
