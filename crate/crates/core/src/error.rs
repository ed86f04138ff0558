use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong outside of normal "did not solve" outcomes.
///
/// Stochastic failure to find a solution is *not* an error; it is reported
/// through [`crate::solver::SolveOutcome::solved`].
#[derive(Debug, Error)]
pub enum Error {
    /// A problem name that is not in the model registry.
    #[error("unknown problem `{0}` (expected one of: magic-square, all-interval, partition, costas)")]
    UnknownProblem(String),

    /// A size a model cannot be built at.
    #[error("invalid size {size} for {problem}: {reason}")]
    InvalidSize {
        problem: &'static str,
        size: usize,
        reason: &'static str,
    },

    /// Solver or pool parameters outside their documented ranges.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A benchmark specification that cannot be executed.
    #[error("invalid run spec: {0}")]
    InvalidRunSpec(String),

    /// An unrecognized report format name.
    #[error("unknown report format `{0}` (expected table, csv, or structured)")]
    UnknownFormat(String),

    /// Report text that does not parse back into report data.
    #[error("malformed report: {0}")]
    MalformedReport(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("report serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_name_the_offending_input() {
        let e = Error::UnknownProblem("knapsack".into());
        assert!(e.to_string().contains("knapsack"));

        let e = Error::InvalidSize {
            problem: "magic-square",
            size: 2,
            reason: "no magic square of order below 3 exists",
        };
        let msg = e.to_string();
        assert!(msg.contains("magic-square") && msg.contains('2'));
    }
}
