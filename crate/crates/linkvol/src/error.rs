use thiserror::Error;

/// Errors raised while building or validating a link diagram.
#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("pd syntax error: {0}")]
    Syntax(String),
    #[error("arc label {label} occurs {count} times, want exactly 2")]
    ArcCount { label: u32, count: usize },
    #[error("unknot arc label {0} also appears in a crossing")]
    UnknotArcClash(u32),
    #[error("unknot arc label {0} is repeated")]
    DuplicateUnknotArc(u32),
    #[error("incidence structure is not planar (component has V-E+F = {0}, want 2)")]
    NonPlanar(i64),
    #[error("a diagram without crossings must be a single unknot circle")]
    ZeroCrossingMultiComponent,
    #[error("braid generator index {index} out of range for {strands} strands")]
    GeneratorRange { index: usize, strands: usize },
    #[error("plat closure needs an even strand count, got {0}")]
    OddStrands(usize),
    #[error("a braid word needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("closing an empty word on {0} strands would give a crossing-free multi-circle diagram")]
    EmptyClosure(usize),
    #[error("plat spec: {0}")]
    PlatSpec(String),
    #[error("diagram must be connected for this operation")]
    Disconnected,
    #[error("diagram must have at least one crossing for this operation")]
    NoCrossings,
}

/// Errors raised by the state-graph, twist, bound, and oracle layers.
#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("twist region {0} matches neither a short nor a long resolution pattern")]
    RegionPattern(usize),
    #[error("twist regions do not match the state's crossing set")]
    RegionsMismatch,
    #[error("crossing count {count} exceeds the oracle limit {limit}")]
    OracleLimit { count: usize, limit: usize },
    #[error("operation requires an A-adequate diagram")]
    NotAdequate,
    #[error("twist sign counts {t_neg}+{t_pos} do not sum to t = {t}")]
    InconsistentSignCounts { t_neg: usize, t_pos: usize, t: usize },
    #[error("m-incidence premise fails: m = {m} but some circle meets only {min} regions")]
    MIncidence { m: usize, min: usize },
    #[error("two-bridge bounds require an n = 2 plat diagram")]
    NotTwoBridge,
    #[error("bound premise not satisfied: {0}")]
    BoundPremise(String),
}

/// Errors raised by the corpus runner.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("record {id}: unknown kind {kind:?} (want pd or plat)")]
    BadKind { id: String, kind: String },
    #[error("record {id}: {msg}")]
    BadRecord { id: String, msg: String },
}
