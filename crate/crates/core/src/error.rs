use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlphaError {
    #[error("zero denominator in rational α")]
    ZeroDenominator,
    #[error("α = {0} is outside the open interval (π/3, 2π/3)")]
    OutOfRange(String),
    #[error("α = {deg}° is within 1e-9 rad of {s}π/{t}; use the rational form `{s}/{t}`")]
    AmbiguousDecimal { deg: f64, s: i64, t: i64 },
    #[error("cannot parse α from `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("α is symbolic and has no numeric value")]
    NoNumericValue,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PatchError {
    #[error("tile overlaps the interior of tile {other}")]
    Overlap { other: usize },
    #[error("edge-to-edge violation: {0}")]
    EdgeMismatch(String),
    #[error("vertex {vertex} closes with star {word}, which is not in the atlas")]
    AtlasViolation { vertex: usize, word: String },
    #[error("disk of radius {radius} around vertex {center} is not covered by the patch")]
    IncompleteCoverage { center: usize, radius: f64 },
    #[error("no vertex with index {0}")]
    NoSuchVertex(usize),
    #[error("patch is not valid: {0}")]
    NotValidated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("no filling chosen for dodecagon cell ({0}, {1})")]
    MissingChoice(i64, i64),
    #[error("filling index {index} out of range for cell ({i}, {j})")]
    BadChoice { i: i64, j: i64, index: usize },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Alpha {
        line: usize,
        #[source]
        source: AlphaError,
    },
    #[error("missing `shield-patch 1` header")]
    MissingHeader,
    #[error("missing `alpha` line")]
    MissingAlpha,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    /// The node or time budget ran out; `partial` holds the canonical keys
    /// found so far, which form a verified subset of the full answer.
    #[error("search budget exhausted after {nodes} nodes ({} partial results)", partial.len())]
    BudgetExceeded { nodes: u64, partial: Vec<String> },
    #[error("search center must be a vertex of the seed unless the seed is empty")]
    BadCenter,
}
