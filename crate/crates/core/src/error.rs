use thiserror::Error;

/// Violations of the root datum axioms, each naming the offending indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("dimension: {0}")]
    Dimension(String),
    #[error("pairing: <root {index}, coroot {index}> = {value}, expected 2")]
    Pairing { index: usize, value: String },
    #[error("reflection: s_{reflection} sends root {root} outside the root set")]
    RootReflection { reflection: usize, root: usize },
    #[error("reflection: s_{reflection} sends coroot {coroot} outside the coroot set or breaks the root/coroot pairing")]
    CorootReflection { reflection: usize, coroot: usize },
    #[error("negation: root {0} has no negative partner with the negated coroot")]
    Negation(usize),
    #[error("reduced: root {double} is twice root {root}")]
    NonReduced { root: usize, double: usize },
    #[error("distinct: roots {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("gamma: {0}")]
    Gamma(String),
}

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("homomorphism is not well-defined: relation {relation} of the source is not sent into the relations of the target")]
    NotWellDefined { relation: usize },
    #[error("maps {index} and {next} are not composable")]
    NotComposable { index: usize, next: usize },
    #[error("not exact at {0}")]
    NotExact(String),
    #[error("diagram does not commute at {0}")]
    NotCommutative(String),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(i64),
    #[error("invalid finite group: {0}")]
    InvalidGroup(String),
    #[error("invalid Gamma-module: {0}")]
    InvalidModule(String),
    #[error("homomorphism is not equivariant at group element {element}")]
    NotEquivariant { element: usize },
    #[error("dual of non-lattice: {0}")]
    DualOfNonLattice(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("root datum axiom violated: {0}")]
    Axiom(#[from] AxiomError),
    #[error("not central: generator {generator} pairs non-integrally with root {root}")]
    NotCentral { generator: usize, root: usize },
    #[error("not an embedding of mu_1: {0}")]
    NotEmbedding(String),
    #[error("invalid resolution: {0}")]
    InvalidResolution(String),
    #[error("invalid group homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid exact sequence of groups: {0}")]
    InvalidSes(String),
    #[error("unknown catalog group: {0}")]
    UnknownGroup(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
