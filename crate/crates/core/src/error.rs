//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("cannot read config {0}: {1}")]
    Io(String, String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Error)]
pub enum ArtifactError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed artifact {path}: {reason}")]
    Malformed { path: String, reason: String },
    #[error("artifact {path} was produced under config hash {found}, expected {expected}")]
    HashMismatch {
        path: String,
        found: String,
        expected: String,
    },
    #[error("seed sets differ: {0}")]
    SeedMismatch(String),
    #[error("missing prerequisite artifact: {artifact} ({hint})")]
    MissingPrerequisite { artifact: String, hint: String },
}

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("scenario horizon {scenario} does not match configured horizon {expected}")]
    HorizonMismatch { scenario: usize, expected: usize },
    #[error("episode is finished; call reset before stepping")]
    EpisodeDone,
    #[error("normalization bounds not loaded")]
    MissingBounds,
}

#[derive(Debug, Error)]
pub enum LearnerError {
    #[error("non-finite value in {0}; halting update")]
    NonFinite(&'static str),
    #[error("behavior probability is zero for a taken action")]
    ZeroBehaviorProb,
    #[error("environment error: {0}")]
    Env(#[from] EnvError),
}
