use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the pipeline.
///
/// Variants are grouped by exit class (see [`Error::exit_code`]):
/// configuration mistakes the caller can fix without touching data,
/// data problems (unreadable or undecodable input), and analysis
/// failures (a table that cannot support the requested statistic).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed manifest contents.
    #[error("manifest {path}:{line}: {reason}")]
    Manifest {
        path: PathBuf,
        /// 1-based line number.
        line: usize,
        reason: String,
    },

    /// A parameter was rejected before any data was read.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// File could not be read or written.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Bytes that are not valid in the declared encoding.
    #[error("{path}: invalid byte sequence for encoding {encoding}")]
    Decode { path: PathBuf, encoding: &'static str },

    /// An operation that needs at least one ranked entry got none.
    #[error("frequency table is empty")]
    EmptyTable,

    /// drop_top(k) with k >= number of ranked entries.
    #[error("cannot drop top {k} of {unique} ranked entries")]
    DropExceedsTable { k: usize, unique: usize },

    /// A rank window reaching outside the view it is applied to.
    #[error("rank window [{lo}, {hi}] outside available ranks [{min}, {max}]")]
    WindowOutOfRange {
        lo: usize,
        hi: usize,
        min: usize,
        max: usize,
    },

    /// Correlation over fewer than two points.
    #[error("rank window [{lo}, {hi}] spans fewer than two ranks")]
    WindowTooSmall { lo: usize, hi: usize },

    /// Pearson correlation against a zero-variance vector.
    #[error("correlation undefined: {side} values have zero variance")]
    ZeroVariance { side: &'static str },

    /// Zero is the only u64 without a leading digit.
    #[error("leading digit undefined for zero count")]
    ZeroCount,

    /// Digit statistics over an empty histogram.
    #[error("digit histogram is empty")]
    EmptyHistogram,

    /// An error tagged with the corpus and pipeline stage it came from.
    #[error("corpus {label:?}, stage {stage}: {source}")]
    Stage {
        label: String,
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Process exit code class: 1 usage/config, 2 data, 3 analysis.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Manifest { .. } | Error::InvalidParam(_) => 1,
            Error::Io { .. } | Error::Decode { .. } => 2,
            Error::EmptyTable
            | Error::DropExceedsTable { .. }
            | Error::WindowOutOfRange { .. }
            | Error::WindowTooSmall { .. }
            | Error::ZeroVariance { .. }
            | Error::ZeroCount
            | Error::EmptyHistogram => 3,
            Error::Stage { source, .. } => source.exit_code(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_class() {
        assert_eq!(Error::InvalidParam("x".into()).exit_code(), 1);
        assert_eq!(
            Error::Manifest {
                path: "m.tsv".into(),
                line: 3,
                reason: "bad".into()
            }
            .exit_code(),
            1
        );
        assert_eq!(
            Error::Io {
                path: "f".into(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "gone")
            }
            .exit_code(),
            2
        );
        assert_eq!(
            Error::Decode {
                path: "f".into(),
                encoding: "windows-1251"
            }
            .exit_code(),
            2
        );
        assert_eq!(Error::EmptyTable.exit_code(), 3);
        assert_eq!(Error::DropExceedsTable { k: 5, unique: 3 }.exit_code(), 3);
    }

    #[test]
    fn stage_wrapper_keeps_inner_class_and_context() {
        let e = Error::Stage {
            label: "wp".into(),
            stage: "zipf-fit".into(),
            source: Box::new(Error::WindowTooSmall { lo: 4, hi: 4 }),
        };
        assert_eq!(e.exit_code(), 3);
        let msg = e.to_string();
        assert!(msg.contains("wp"), "{msg}");
        assert!(msg.contains("zipf-fit"), "{msg}");
    }
}
