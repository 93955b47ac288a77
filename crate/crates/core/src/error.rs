use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gram matrix is not Hermitian at ({row}, {col})")]
    NonHermitian { row: usize, col: usize },
    #[error("gram matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{0} is not a unit of Z[i]")]
    NotUnit(String),
    #[error("anti-isometry is not involutive")]
    NotInvolutive,
    #[error("matrix is not an anti-isometry of the lattice")]
    NotAntiIsometry,
    #[error("lattice is not definite")]
    Indefinite,
    #[error("vector is not time-like (q = {0})")]
    NotTimelike(String),
    #[error("illegal Coxeter angle: c = {0}")]
    IllegalAngle(String),
    #[error("Vinberg algorithm did not stop below height {ceiling}: {diagnostics}")]
    NonTermination {
        ceiling: String,
        diagnostics: String,
    },
    #[error("vectors do not lie in the outer lattice")]
    NotInLattice,
    #[error("vectors are not of full rank")]
    NotFullRank,
    #[error("isometry does not stabilize the fixed subspace: {0}")]
    NotStabilizing(String),
    #[error("malformed pairing: {0}")]
    MalformedPairing(String),
    #[error("scale factor mismatch at root {0}")]
    ScaleMismatch(usize),
    #[error("malformed cycle type: {0}")]
    MalformedCycleType(String),
    #[error("invariants {0:?} match no known octic type")]
    UnknownInvariants((usize, usize)),
    #[error("W-model bijection search failed")]
    SearchFailed,
    #[error("stabilizer image is not dihedral")]
    NotDihedral,
    #[error("no isometry maps {0}")]
    MissingWitness(String),
    #[error("data file error: {0}")]
    Data(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
