use mwlattice::bitangents::BitangentError;
use mwlattice::classifier::ClassifyError;
use mwlattice::dihedral::DihedralError;
use mwlattice::lattice::LatticeError;
use mwlattice::matroid::MatroidError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OTHER: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const CORRUPT_CHECKPOINT: i32 = 3;
    pub const RESOURCE_GUARD: i32 = 4;
    pub const VERIFICATION: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    ResourceGuard(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
    #[error(transparent)]
    Bitangent(#[from] BitangentError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

fn matroid_code(e: &MatroidError) -> i32 {
    match e {
        MatroidError::CircuitGuard(_) | MatroidError::IsoGuard(_) => exit::RESOURCE_GUARD,
        MatroidError::Math(_)
        | MatroidError::Lattice(_)
        | MatroidError::NotInGround(_)
        | MatroidError::BadField(_) => exit::USAGE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Lattice(_) => exit::USAGE,
            CliError::ResourceGuard(_) => exit::RESOURCE_GUARD,
            CliError::Classify(e) => match e {
                ClassifyError::CorruptCheckpoint { .. } => exit::CORRUPT_CHECKPOINT,
                ClassifyError::BadLevel(_) | ClassifyError::Lattice(_) => exit::USAGE,
                ClassifyError::Matroid(m) => matroid_code(m),
                _ => exit::OTHER,
            },
            CliError::Matroid(e) => matroid_code(e),
            CliError::Dihedral(e) => match e {
                DihedralError::KernelTooLarge { .. } | DihedralError::PrimeBoundTooLarge(_) => {
                    exit::RESOURCE_GUARD
                }
                _ => exit::USAGE,
            },
            CliError::Bitangent(e) => match e {
                BitangentError::VerificationFailed { .. } | BitangentError::InconsistentSystem(_) => {
                    exit::VERIFICATION
                }
                BitangentError::SamplingExhausted(_) => exit::OTHER,
                _ => exit::USAGE,
            },
            CliError::Io { .. } | CliError::ThreadPool(_) => exit::OTHER,
            CliError::Json(_) => exit::USAGE,
        }
    }
}
