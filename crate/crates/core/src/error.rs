use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("inconsistent rotation: {0}")]
    InconsistentRotation(String),
    #[error("embedding fails Euler's formula on a component (V={v}, E={e}, F={f})")]
    NonPlanarEmbedding { v: usize, e: usize, f: usize },
    #[error("input graph must be connected")]
    DisconnectedInput,
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("edge set is not a matching: {0}")]
    NotAMatching(String),
    #[error("bag references vertex {0} outside the host graph")]
    ForeignVertexInBag(usize),
    #[error("decomposition has no bags")]
    EmptyDecomposition,
    #[error("invalid gadget spec: {0}")]
    InvalidSpec(String),
    #[error("family does not match the graph: {0}")]
    StaleFamily(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("input decomposition invalid: {0}")]
    InvalidInputDecomposition(String),
    #[error("no bag contains the kept family members and their common neighbors")]
    BagForFamilyMissing,
    #[error("instance with {n} vertices exceeds the exact-solver cap {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("self-loops are not accepted here")]
    SelfLoopInput,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
