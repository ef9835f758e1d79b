//! Volume bounds from the circle census.
//!
//! All formulas are linear in the twist counts with coefficients built
//! from v3 and v8, the volumes of the regular ideal tetrahedron and
//! octahedron. The constants come from the Lobachevsky function's Fourier
//! series rather than hard-coded literals; the well-known decimal
//! expansions serve as test anchors only.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::AnalysisError;
use crate::plat::PlatClass;
use crate::twist::CircleCensus;

/// Reference digits for the two constants, used as cross-checks.
pub const REFERENCE_V3: f64 = 1.0149416064096536;
pub const REFERENCE_V8: f64 = 3.663862376708876;

/// Lobachevsky function via its uniformly convergent Fourier series,
/// sum of sin(2n theta)/(2 n^2). Summed smallest term first with Kahan
/// compensation; with six million terms the tail is below 1e-12 for the
/// angles used here.
pub fn lobachevsky(theta: f64) -> f64 {
    const TERMS: u32 = 6_000_000;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in (1..=TERMS).rev() {
        let nf = n as f64;
        let term = (2.0 * nf * theta).sin() / (nf * nf);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    0.5 * sum
}

/// The two hyperbolic volume constants.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HyperbolicConstants {
    /// Volume of the regular ideal tetrahedron, 3 L(pi/3).
    pub v3: f64,
    /// Volume of the regular ideal octahedron, 8 L(pi/4).
    pub v8: f64,
}

/// Series-derived constants, computed once per process.
pub fn constants() -> &'static HyperbolicConstants {
    static CELL: OnceLock<HyperbolicConstants> = OnceLock::new();
    CELL.get_or_init(|| {
        let v3 = 3.0 * lobachevsky(std::f64::consts::PI / 3.0);
        let v8 = 8.0 * lobachevsky(std::f64::consts::PI / 4.0);
        debug_assert!((v3 - REFERENCE_V3).abs() < 1e-10);
        debug_assert!((v8 - REFERENCE_V8).abs() < 1e-10);
        HyperbolicConstants { v3, v8 }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// One evaluated (or gated-off) bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub strict: bool,
    /// Present only when every hypothesis is satisfied.
    pub value: Option<f64>,
    pub hypotheses: Vec<Hypothesis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub satisfied: bool,
}

impl BoundEntry {
    pub fn applicable(&self) -> bool {
        self.value.is_some()
    }

    fn new(
        name: &'static str,
        kind: BoundKind,
        strict: bool,
        value: f64,
        hypotheses: Vec<Hypothesis>,
    ) -> Self {
        let ok = hypotheses.iter().all(|h| h.satisfied);
        BoundEntry {
            name,
            kind,
            strict,
            value: ok.then_some(value),
            hypotheses,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn hyp(name: &'static str, satisfied: bool) -> Hypothesis {
    Hypothesis { name, satisfied }
}

fn census_hypotheses(census: &CircleCensus) -> Vec<Hypothesis> {
    let f = &census.flags;
    vec![
        hyp("connected", f.connected),
        hyp("prime", f.prime),
        hyp("a_adequate", f.a_adequate),
        hyp("telc", f.telc),
        hyp("t_at_least_2", f.t_at_least_2),
    ]
}

// Pure formula evaluations. Keeping them separate from the gating lets the
// regression tests pin the arithmetic directly.

pub fn main_theorem_values(t: usize, st: usize) -> (f64, f64) {
    let c = constants();
    (
        c.v8 / 3.0 * (t as f64 - st as f64),
        10.0 * c.v3 * (t as f64 - 1.0),
    )
}

/// Replacement lower bound when t = st forces an alternating diagram.
pub fn alternating_lower(t: usize) -> f64 {
    constants().v8 / 2.0 * (t as f64 - 2.0)
}

/// The sharpest lower bound the engine knows: v8 times the negative Euler
/// characteristic of the reduced state graph.
pub fn chi_lower_bound(chi_neg: i64) -> f64 {
    constants().v8 * chi_neg as f64
}

pub fn corollary_m_values(m: usize, t: usize) -> (f64, f64) {
    let c = constants();
    (
        (m as f64 - 2.0) / m as f64 * c.v8 * t as f64,
        10.0 * c.v3 * (t as f64 - 1.0),
    )
}

pub fn strongly_negative_values(t: usize) -> (f64, f64) {
    let c = constants();
    (
        4.0 * c.v8 / 5.0 * (t as f64 - 1.0) + c.v8 / 5.0,
        10.0 * c.v3 * (t as f64 - 1.0),
    )
}

/// Lower bound in t_neg alone, plus the t-based variant available when
/// negative regions dominate.
pub fn mixed_sign_values(t: usize, t_neg: usize) -> (f64, f64, f64) {
    let c = constants();
    (
        c.v8 / 3.0 * (2.0 * t_neg as f64 - 1.0) - 2.0 * c.v8 / 3.0,
        c.v8 / 3.0 * (t as f64 - 1.0) - 2.0 * c.v8 / 3.0,
        10.0 * c.v3 * (t as f64 - 1.0),
    )
}

pub fn two_bridge_values(t_alt: usize) -> (f64, f64) {
    let c = constants();
    // 2.7066 is quoted verbatim from the two-bridge volume estimate.
    (
        2.0 * c.v3 * t_alt as f64 - 2.7066,
        2.0 * c.v8 * (t_alt as f64 - 1.0),
    )
}

/// Stable-coefficient bound families for the upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JonesFamily {
    Generic,
    MIncident,
    StronglyNegative,
    MixedSignBalanced,
}

pub fn jones_lower(beta_prime: i64) -> f64 {
    constants().v8 * (beta_prime as f64 - 1.0)
}

pub fn jones_upper(
    family: JonesFamily,
    beta_prime: i64,
    st: Option<usize>,
    m: Option<usize>,
) -> Result<f64, AnalysisError> {
    let c = constants();
    let b = beta_prime as f64 - 1.0;
    match family {
        JonesFamily::Generic => {
            let st = st.ok_or_else(|| {
                AnalysisError::BoundPremise("generic family needs a special-tangle count".into())
            })?;
            Ok(30.0 * c.v3 * b + 10.0 * c.v3 * (st as f64 - 1.0))
        }
        JonesFamily::MIncident => {
            let m = m.ok_or_else(|| {
                AnalysisError::BoundPremise("m-incident family needs m".into())
            })?;
            if m < 3 {
                return Err(AnalysisError::BoundPremise(format!("need m >= 3, got {m}")));
            }
            Ok(m as f64 / (m as f64 - 2.0) * 10.0 * c.v3 * b - 10.0 * c.v3)
        }
        JonesFamily::StronglyNegative => Ok(25.0 * c.v3 / 2.0 * b - 5.0 * c.v3 / 2.0),
        JonesFamily::MixedSignBalanced => Ok(30.0 * c.v3 * b + 20.0 * c.v3),
    }
}

// Gated entry builders driven by a census.

/// Twist-number bounds under the main hypothesis set. When t = st the
/// diagram is alternating and the octahedral alternating bound replaces
/// the twist lower bound.
pub fn main_theorem_bounds(census: &CircleCensus) -> Vec<BoundEntry> {
    let mut hyps = census_hypotheses(census);
    hyps.push(hyp("st_defined", census.flags.st_defined()));
    let st = census.special_count.unwrap_or(0);
    let (lower, upper) = main_theorem_values(census.t, st);

    let lower_entry = if census.special_count.is_some() && census.t == st {
        BoundEntry::new(
            "twist_lower_alternating",
            BoundKind::Lower,
            false,
            alternating_lower(census.t),
            hyps.clone(),
        )
        .with_note("t = st forces an alternating diagram; octahedral alternating bound used")
    } else {
        BoundEntry::new("twist_lower", BoundKind::Lower, false, lower, hyps.clone())
    };
    let upper_entry = BoundEntry::new("twist_upper", BoundKind::Upper, true, upper, hyps);
    vec![lower_entry, upper_entry]
}

/// The chi-based lower bound, gated on the same hypotheses but not
/// needing a special-tangle count.
pub fn chi_bound_entry(census: &CircleCensus, chi_neg: i64) -> BoundEntry {
    BoundEntry::new(
        "chi_lower",
        BoundKind::Lower,
        false,
        chi_lower_bound(chi_neg),
        census_hypotheses(census),
    )
}

/// Bounds available when every other circle meets at least m >= 3 twist
/// regions; st is forced to zero there.
pub fn corollary_m_bounds(census: &CircleCensus, m: usize) -> Result<Vec<BoundEntry>, AnalysisError> {
    if m < 3 {
        return Err(AnalysisError::BoundPremise(format!("need m >= 3, got {m}")));
    }
    let min = census.min_oc_region_incidence.unwrap_or(0);
    if min < m {
        return Err(AnalysisError::MIncidence { m, min });
    }
    let mut hyps = census_hypotheses(census);
    hyps.push(hyp("every_oc_meets_m_regions", true));
    let (lower, upper) = corollary_m_values(m, census.t);
    Ok(vec![
        BoundEntry::new("m_incident_lower", BoundKind::Lower, false, lower, hyps.clone())
            .with_note(format!("m = {m}; st forced to 0")),
        BoundEntry::new("m_incident_upper", BoundKind::Upper, true, upper, hyps),
    ])
}

pub fn strongly_negative_bounds(
    census: &CircleCensus,
    class: Option<PlatClass>,
) -> Result<Vec<BoundEntry>, AnalysisError> {
    if class != Some(PlatClass::StronglyNegative) {
        return Err(AnalysisError::BoundPremise(
            "diagram is not a strongly negative plat".into(),
        ));
    }
    let hyps = vec![hyp("strongly_negative_plat", true)];
    let (lower, upper) = strongly_negative_values(census.t);
    Ok(vec![
        BoundEntry::new("strongly_negative_lower", BoundKind::Lower, false, lower, hyps.clone()),
        BoundEntry::new("strongly_negative_upper", BoundKind::Upper, true, upper, hyps),
    ])
}

pub fn mixed_sign_bounds(
    census: &CircleCensus,
    class: Option<PlatClass>,
) -> Result<Vec<BoundEntry>, AnalysisError> {
    if class != Some(PlatClass::MixedSign) {
        return Err(AnalysisError::BoundPremise("diagram is not a mixed-sign plat".into()));
    }
    let (Some(t_neg), Some(t_pos)) = (census.t_negative, census.t_positive) else {
        return Err(AnalysisError::BoundPremise("twist-region signs unavailable".into()));
    };
    if t_neg + t_pos != census.t {
        return Err(AnalysisError::InconsistentSignCounts {
            t_neg,
            t_pos,
            t: census.t,
        });
    }
    let hyps = vec![hyp("mixed_sign_plat", true)];
    let (lower_neg, lower_t, upper) = mixed_sign_values(census.t, t_neg);
    let mut out = vec![
        BoundEntry::new("mixed_sign_lower", BoundKind::Lower, false, lower_neg, hyps.clone())
            .with_note(format!("in terms of t_neg = {t_neg}")),
    ];
    if t_neg >= t_pos {
        let mut entry = BoundEntry::new(
            "mixed_sign_lower_balanced",
            BoundKind::Lower,
            false,
            lower_t,
            vec![hyp("mixed_sign_plat", true), hyp("t_neg_at_least_t_pos", true)],
        );
        entry = entry.with_note("t_neg >= t_pos; the t_neg bound is at least as sharp");
        out.push(entry);
    }
    out.push(BoundEntry::new("mixed_sign_upper", BoundKind::Upper, true, upper, hyps));
    Ok(out)
}

/// Two-bridge bounds in terms of the twist number of a reduced alternating
/// diagram of the same link, which the caller must supply.
pub fn two_bridge_bounds(
    t_alt: usize,
    class: Option<PlatClass>,
) -> Result<Vec<BoundEntry>, AnalysisError> {
    if class != Some(PlatClass::TwoBridge) {
        return Err(AnalysisError::NotTwoBridge);
    }
    let hyps = vec![hyp("two_bridge_plat", true)];
    let (lower, upper) = two_bridge_values(t_alt);
    let mut lower_entry =
        BoundEntry::new("two_bridge_lower", BoundKind::Lower, true, lower, hyps.clone());
    if lower < 0.0 {
        lower_entry = lower_entry.with_note("formula value is negative; reported unclamped");
    }
    Ok(vec![
        lower_entry,
        BoundEntry::new("two_bridge_upper", BoundKind::Upper, true, upper, hyps),
    ])
}

/// Bounds in terms of the stable coefficient, beta' = 1 + (-chi).
pub fn jones_bounds(
    chi_neg: i64,
    st: Option<usize>,
    m: Option<usize>,
    family: JonesFamily,
) -> Result<Vec<BoundEntry>, AnalysisError> {
    let beta = 1 + chi_neg;
    let upper = jones_upper(family, beta, st, m)?;
    let family_hyp = match family {
        JonesFamily::Generic => hyp("main_theorem_hypotheses", true),
        JonesFamily::MIncident => hyp("every_oc_meets_m_regions", true),
        JonesFamily::StronglyNegative => hyp("strongly_negative_plat", true),
        JonesFamily::MixedSignBalanced => hyp("mixed_sign_plat_balanced", true),
    };
    Ok(vec![
        BoundEntry::new(
            "jones_lower",
            BoundKind::Lower,
            false,
            jones_lower(beta),
            vec![family_hyp.clone()],
        ),
        BoundEntry::new("jones_upper", BoundKind::Upper, true, upper, vec![family_hyp]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_reference_digits() {
        let c = constants();
        assert!((c.v3 - REFERENCE_V3).abs() < 1e-12, "v3 = {}", c.v3);
        assert!((c.v8 - REFERENCE_V8).abs() < 1e-12, "v8 = {}", c.v8);
        assert!((c.v8 / 3.0 - 1.221287458902958).abs() < 1e-10);
    }

    #[test]
    fn four_decimal_truncations() {
        let c = constants();
        assert_eq!((c.v3 * 1e4).trunc(), 10149.0);
        assert_eq!((c.v8 * 1e4).trunc(), 36638.0);
    }

    #[test]
    fn main_theorem_small_cases() {
        let c = constants();
        let (lo, up) = main_theorem_values(2, 0);
        assert!((lo - 2.0 * c.v8 / 3.0).abs() < 1e-12);
        assert!((up - 10.0 * c.v3).abs() < 1e-12);
        assert_eq!(alternating_lower(2), 0.0);
    }

    #[test]
    fn chi_lower_examples() {
        let c = constants();
        assert_eq!(chi_lower_bound(0), 0.0);
        assert!((chi_lower_bound(1) - c.v8).abs() < 1e-12);
        assert!((chi_lower_bound(5) - 5.0 * c.v8).abs() < 1e-12);
    }

    #[test]
    fn corollary_values() {
        let c = constants();
        let (lo, _) = corollary_m_values(3, 6);
        assert!((lo - 2.0 * c.v8).abs() < 1e-12);
        let (lo5, _) = corollary_m_values(5, 7);
        assert!((lo5 - 21.0 * c.v8 / 5.0).abs() < 1e-12);
        // Larger m sharpens the bound toward v8 t.
        let mut prev = 0.0;
        for m in 3..60 {
            let (lo, _) = corollary_m_values(m, 7);
            assert!(lo > prev);
            prev = lo;
        }
        assert!(prev < c.v8 * 7.0);
    }

    #[test]
    fn strongly_negative_value_examples() {
        let c = constants();
        let (lo, up) = strongly_negative_values(7);
        assert!((lo - 5.0 * c.v8).abs() < 1e-12);
        assert!((up - 60.0 * c.v3).abs() < 1e-12);
        let (lo12, _) = strongly_negative_values(12);
        assert!((lo12 - 9.0 * c.v8).abs() < 1e-12);
    }

    #[test]
    fn mixed_sign_value_examples() {
        let c = constants();
        let (lo_neg, lo_t, _) = mixed_sign_values(7, 6);
        assert!((lo_neg - 3.0 * c.v8).abs() < 1e-12);
        assert!(lo_neg >= lo_t);
        // With t_neg = t_pos the two lower bounds coincide.
        let (a, b, _) = mixed_sign_values(8, 4);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn two_bridge_value_examples() {
        let c = constants();
        let (lo, up) = two_bridge_values(2);
        assert!((lo - (4.0 * c.v3 - 2.7066)).abs() < 1e-12);
        assert!((up - 2.0 * c.v8).abs() < 1e-12);
        let (lo1, _) = two_bridge_values(1);
        assert!(lo1 < 0.0);
        let (lo10, up10) = two_bridge_values(10);
        assert!((lo10 - (20.0 * c.v3 - 2.7066)).abs() < 1e-12);
        assert!((up10 - 18.0 * c.v8).abs() < 1e-12);
    }

    #[test]
    fn jones_families() {
        let c = constants();
        // beta' = 6, st = 0: 150 v3 - 10 v3.
        let up = jones_upper(JonesFamily::Generic, 6, Some(0), None).unwrap();
        assert!((up - 140.0 * c.v3).abs() < 1e-10);
        assert_eq!(jones_lower(1), 0.0);
        // Strongly negative with beta' = 6 reproduces 10 v3 (t-1) at t = 7.
        let up_sn = jones_upper(JonesFamily::StronglyNegative, 6, None, None).unwrap();
        assert!((up_sn - 60.0 * c.v3).abs() < 1e-9);
        assert!(jones_upper(JonesFamily::MIncident, 6, None, Some(2)).is_err());
        assert!(jones_upper(JonesFamily::Generic, 6, None, None).is_err());
    }

    #[test]
    fn jones_lower_reproduces_chi_lower_bitwise() {
        for chi in 0..40i64 {
            assert_eq!(jones_lower(1 + chi).to_bits(), chi_lower_bound(chi).to_bits());
        }
    }

    #[test]
    fn evaluation_is_deterministic() {
        let a = main_theorem_values(9, 2);
        let b = main_theorem_values(9, 2);
        assert_eq!(a.0.to_bits(), b.0.to_bits());
        assert_eq!(a.1.to_bits(), b.1.to_bits());
    }
}
