use thiserror::Error;

pub type Result<T, E = GbnnError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum GbnnError {
    #[error("invalid network configuration: {clusters} clusters of {neurons} neurons (need at least 2 clusters and 1 neuron)")]
    InvalidConfig { clusters: usize, neurons: usize },

    #[error("invalid reinforcement factor {0} (must be finite and non-negative)")]
    InvalidGamma(f64),

    #[error("expected {expected} clusters, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("symbol {symbol} in cluster {cluster} is out of range (alphabet size {neurons})")]
    SymbolOutOfRange {
        cluster: usize,
        symbol: usize,
        neurons: usize,
    },

    #[error("cluster index {cluster} is out of range ({clusters} clusters)")]
    ClusterOutOfRange { cluster: usize, clusters: usize },

    #[error("cluster {0} appears more than once")]
    DuplicateCluster(usize),

    #[error("bad magic bytes, not a network file")]
    BadMagic,

    #[error("unsupported network format version {0}")]
    UnsupportedVersion(u8),

    #[error("truncated network file: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("network dimensions overflow: {clusters} x {neurons}")]
    DimensionOverflow { clusters: u64, neurons: u64 },

    #[error("corrupt network payload: {0}")]
    CorruptPayload(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no erased cluster has two or more active neurons")]
    NoEligibleCluster,

    #[error("the random baseline is a decoding rule, not an escape step")]
    NotAnEscapeHeuristic,

    #[error("erased cluster {0} has no active neuron")]
    EmptyErasedCluster(usize),

    #[error("brute-force enumeration would visit {tuples} tuples (cap {cap})")]
    BruteForceCapExceeded { tuples: u128, cap: u128 },

    #[error("scenario erases {erased} of {clusters} clusters; at least one must stay known")]
    InfeasibleScenario { erased: usize, clusters: usize },

    #[error("unknown method {0:?}")]
    UnknownMethod(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
