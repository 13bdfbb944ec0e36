use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph with {n} vertices{}", line_suffix(*.line))]
    VertexOutOfRange {
        line: Option<usize>,
        vertex: usize,
        n: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex set is not a separator")]
    NotASeparator,

    #[error("no separator exists: edge {}-{} joins the two sides", .edge.0, .edge.1)]
    NoSeparatorExists { edge: (usize, usize) },

    #[error("vertex set is not independent: edge {}-{}", .edge.0, .edge.1)]
    NotIndependent { edge: (usize, usize) },

    #[error("terminal expansion undefined: a side holds no terminals")]
    UndefinedExpansion,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("instance too large for exhaustive search: n = {n}, cap = {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("no certified construction: achieved alpha = {alpha:.6}, beta = {beta:.6}")]
    Infeasible { alpha: f64, beta: f64 },

    #[error("numerical certification failed: {0}")]
    Numerical(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn line_suffix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
